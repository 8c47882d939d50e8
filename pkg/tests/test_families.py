import numpy as np
import pytest

from subdeg.errors import DomainError, SpecSyntaxError
from subdeg.families import (
    C2npxC2,
    C2nPlus1xC2,
    CpByCqn,
    CpnByC4,
    CpnByQ2m,
    CqmCpnByC4,
    CqmCpnByQ2r,
    Cyclic,
    Dicyclic,
    Dihedral,
    Dihedral2,
    DirectProduct,
    ElementaryAbelian,
    Hamiltonian,
    ModularP3,
    Quaternion2,
    Semidihedral2,
    construct,
    declared_order,
    parse_spec,
    spec_string,
)
from subdeg.groupcore import census, exponent, group_degrees

ALL_FAMILY_SAMPLES = [
    Cyclic(1),
    Cyclic(12),
    ElementaryAbelian(2, 0),
    ElementaryAbelian(2, 3),
    ElementaryAbelian(3, 2),
    Dihedral(1),
    Dihedral(7),
    Dihedral2(2),
    Dihedral2(5),
    Quaternion2(3),
    Quaternion2(5),
    Semidihedral2(4),
    Semidihedral2(5),
    Dicyclic(1),
    Dicyclic(7),
    C2nPlus1xC2(0),
    C2nPlus1xC2(3),
    C2npxC2(1, 3),
    C2npxC2(2, 5),
    Hamiltonian(0, ()),
    Hamiltonian(1, (Cyclic(3),)),
    Hamiltonian(0, (Cyclic(9), Cyclic(3))),
    ModularP3(3),
    ModularP3(5),
    CpByCqn(7, 3, 1, 1),
    CpByCqn(5, 2, 2, 1),
    CpByCqn(5, 2, 2, 2),
    CpnByC4(3, 2),
    CpnByQ2m(3, 1, 3),
    CpnByQ2m(3, 1, 4),
    CqmCpnByC4(3, 1, 5, 1),
    CqmCpnByQ2r(3, 1, 5, 1, 3),
    DirectProduct(Cyclic(4), Cyclic(9)),
]


class TestConstruction:
    @pytest.mark.parametrize("spec", ALL_FAMILY_SAMPLES, ids=spec_string)
    def test_order_matches_declaration(self, spec):
        assert construct(spec).order == declared_order(spec)

    @pytest.mark.parametrize("spec", ALL_FAMILY_SAMPLES, ids=spec_string)
    def test_meta_recorded(self, spec):
        assert construct(spec).meta == spec

    def test_dicyclic_two_is_quaternion(self):
        a = census(construct(Dicyclic(2)))
        b = census(construct(Quaternion2(3)))
        assert a.by_order == b.by_order == {1: 1, 2: 1, 4: 3, 8: 1}
        assert (a.total, a.cyclic) == (b.total, b.cyclic)

    def test_modular_counts(self):
        c = census(construct(ModularP3(3)))
        assert construct(ModularP3(3)).order == 27
        assert (c.total, c.cyclic) == (10, 8)

    @pytest.mark.parametrize("p", [3, 5])
    def test_modular_structure(self, p):
        G = construct(ModularP3(p))
        assert exponent(G) == p * p
        T = G.table
        assert not np.array_equal(T, T.T)  # nonabelian
        central = [g for g in range(G.order)
                   if np.array_equal(T[g, :], T[:, g])]
        assert len(central) == p

    def test_dicyclic_c4_counts(self):
        c = census(construct(CpnByC4(3, 1)))
        assert (c.total, c.cyclic, c.normal) == (8, 7, 5)

    def test_hamiltonian_all_subgroups_normal(self):
        spec = Hamiltonian(0, (Cyclic(3),))
        G = construct(spec)
        assert G.order == 24
        assert group_degrees(G).ndeg == 1

    @pytest.mark.parametrize("k", range(2, 9))
    def test_dicyclic_unique_involution(self, k):
        G = construct(Dicyclic(k))
        assert int((G.orders() == 2).sum()) == 1

    def test_semidirect_is_nonabelian(self):
        T = construct(CpByCqn(7, 3, 1, 1)).table
        assert not np.array_equal(T, T.T)


class TestSpecValidation:
    def test_rejects_trivialized_action(self):
        with pytest.raises(DomainError, match="s"):
            CpByCqn(7, 3, 1, 0)

    def test_rejects_action_order_above_n(self):
        with pytest.raises(DomainError, match="s"):
            CpByCqn(7, 3, 1, 2)

    def test_rejects_incompatible_action(self):
        # 3^2 does not divide 7-1
        with pytest.raises(DomainError, match="p-1"):
            CpByCqn(7, 3, 2, 2)

    def test_rejects_equal_primes(self):
        with pytest.raises(DomainError, match="distinct"):
            CpByCqn(3, 3, 1, 1)

    def test_semidihedral_range(self):
        with pytest.raises(DomainError, match="n >= 4"):
            Semidihedral2(3)

    def test_quaternion_range(self):
        with pytest.raises(DomainError, match="n >= 3"):
            Quaternion2(2)

    def test_q2m_range(self):
        with pytest.raises(DomainError, match="m >= 3"):
            CpnByQ2m(3, 1, 2)

    def test_modular_rejects_two(self):
        with pytest.raises(DomainError, match="odd prime"):
            ModularP3(2)

    def test_c2np_rejects_even_prime(self):
        with pytest.raises(DomainError, match="odd prime"):
            C2npxC2(1, 2)

    def test_hamiltonian_rejects_even_part(self):
        with pytest.raises(DomainError, match="even order"):
            Hamiltonian(0, (Cyclic(6),))

    def test_dicyclic_families_reject_even_prime(self):
        with pytest.raises(DomainError, match="odd prime"):
            CpnByC4(2, 1)
        with pytest.raises(DomainError, match="odd prime"):
            CqmCpnByC4(3, 1, 2, 1)


class TestSpecStrings:
    @pytest.mark.parametrize("spec", ALL_FAMILY_SAMPLES, ids=spec_string)
    def test_round_trip(self, spec):
        assert parse_spec(spec_string(spec)) == spec

    @pytest.mark.parametrize("text,spec", [
        ("Q(16)", Quaternion2(4)),
        ("SD(32)", Semidihedral2(5)),
        ("Dic(6)", Dicyclic(6)),
        ("D(2,5)", Dihedral(5)),
        ("D(16)", Dihedral2(4)),
        ("M(5)", ModularP3(5)),
        ("Ham(n=1;C3)", Hamiltonian(1, (Cyclic(3),))),
        ("Ham(n=0;C(9);C3)", Hamiltonian(0, (Cyclic(9), Cyclic(3)))),
        ("C(12)xC(2)", DirectProduct(Cyclic(12), Cyclic(2))),
        ("PQ(7,3,1,1)", CpByCqn(7, 3, 1, 1)),
        ("CxC2(8)", C2nPlus1xC2(1)),
        ("CxC2(12)", C2npxC2(2, 3)),
        ("E(3,2)", ElementaryAbelian(3, 2)),
        ("C12", Cyclic(12)),
        ("C(2)xC(3)xC(5)", DirectProduct(DirectProduct(Cyclic(2), Cyclic(3)), Cyclic(5))),
    ])
    def test_documented_examples(self, text, spec):
        assert parse_spec(text) == spec

    @pytest.mark.parametrize("text", [
        "Q(7)",          # not a 2-power order
        "Zzz(3)",        # unknown name
        "C(3",           # missing close paren
        "C(3)y",         # trailing junk
        "CxC2(15)",      # odd order has no such family
        "D(3,5)",        # two-argument dihedral must start with 2
        "Ham(3)",        # Ham needs n=...
        "Q(16,2)",       # wrong arity
        "C(!)",          # bad character
    ])
    def test_errors_cite_token(self, text):
        with pytest.raises(SpecSyntaxError):
            parse_spec(text)

    def test_error_position_reported(self):
        with pytest.raises(SpecSyntaxError) as exc:
            parse_spec("C(3)zzz(2)")
        assert exc.value.position == 4

    def test_labels_reproducible(self):
        assert construct(Dihedral(2)).labels == ["1", "y", "x", "x y"]
        assert construct(Cyclic(3)).labels == ["0", "1", "2"]
        assert construct(ElementaryAbelian(2, 2)).labels == [
            "(0,0)", "(0,1)", "(1,0)", "(1,1)"]
        assert construct(Dicyclic(1)).labels == ["1", "b", "a", "a b"]
