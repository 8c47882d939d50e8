"""Closed-form catalog for the degree functions of the named families, the
stated asymptotic limits, and a verifier that pits every formula against the
brute-force lattice census.

A family the catalog does not cover evaluates to an empty result (no error);
the oracle side is always available through :func:`verify` for constructible
groups. Provenance strings are stable catalog rule names.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from . import groupcore
from .errors import DomainError, ResourceLimitError
from .families import (
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
    FamilySpec,
    Hamiltonian,
    ModularP3,
    Quaternion2,
    Semidihedral2,
    construct,
    declared_order,
    spec_string,
)
from .numtheory import b_coeff, elem_abelian_subgroup_count, is_prime, sigma, tau

_FUNCTIONS = ("alpha", "beta", "cdeg", "ndeg")


@dataclass(frozen=True)
class DegreeFormulaResult:
    """Catalog values for one family instance; a function is None when the
    catalog has no closed form for it."""

    spec: FamilySpec
    alpha: Optional[Fraction] = None
    beta: Optional[Fraction] = None
    cdeg: Optional[Fraction] = None
    ndeg: Optional[Fraction] = None
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        for name in _FUNCTIONS:
            value = getattr(self, name)
            if value is None:
                continue
            if value <= 0:
                raise DomainError(f"{name} formula produced {value} <= 0")
            # beta may exceed 1 (e.g. elementary abelian 2-groups)
            if name != "beta" and value > 1:
                raise DomainError(f"{name} formula produced {value} > 1")
        if self.alpha is not None and self.beta is not None and self.cdeg is not None:
            assert self.cdeg == self.alpha / self.beta

    @property
    def covered(self) -> bool:
        return any(getattr(self, name) is not None for name in _FUNCTIONS)

    def values(self) -> dict[str, Optional[Fraction]]:
        return {name: getattr(self, name) for name in _FUNCTIONS}


def _result(spec, alpha=None, beta=None, cdeg=None, ndeg=None, prov=()):
    return DegreeFormulaResult(spec=spec, alpha=alpha, beta=beta, cdeg=cdeg,
                               ndeg=ndeg, provenance=tuple(prov))


def evaluate(spec: FamilySpec) -> DegreeFormulaResult:
    """Every function the catalog covers for this family, in exact rationals;
    uncovered functions stay None."""
    if isinstance(spec, DirectProduct):
        return _evaluate_product(spec)

    match spec:
        case Cyclic(n):
            t = Fraction(tau(n), n)
            return _result(spec, alpha=t, beta=t, cdeg=Fraction(1), ndeg=Fraction(1),
                           prov=("cyclic-divisor-count", "abelian-all-normal"))
        case ElementaryAbelian(p, k):
            order = p**k
            total = elem_abelian_subgroup_count(k, p)
            cyc = 1 + (p**k - 1) // (p - 1)
            return _result(spec,
                           alpha=Fraction(cyc, order),
                           beta=Fraction(total, order),
                           cdeg=Fraction(cyc, total),
                           ndeg=Fraction(1),
                           prov=("elementary-abelian-subspaces", "abelian-all-normal"))
        case Dihedral(n):
            t, s = tau(n), sigma(n)
            return _result(spec,
                           alpha=Fraction(n + t, 2 * n),
                           beta=Fraction(s + t, 2 * n),
                           cdeg=Fraction(n + t, s + t),
                           prov=("dihedral-divisor-count",))
        case Dihedral2(n):
            return _two_group_result(spec, 2 ** (n - 1) + n, 2**n + n - 1, 2**n,
                                     "dihedral-2-power")
        case Quaternion2(n):
            return _two_group_result(spec, 2 ** (n - 2) + n, 2 ** (n - 1) + n - 1,
                                     2**n, "quaternion-2-power")
        case Semidihedral2(n):
            return _two_group_result(spec, 3 * 2 ** (n - 3) + n,
                                     3 * 2 ** (n - 2) + n - 1, 2**n,
                                     "semidihedral-2-power")
        case Dicyclic(k):
            return _result(spec, beta=Fraction(tau(2 * k) + sigma(k), 4 * k),
                           prov=("dicyclic-divisor-sum",))
        case C2nPlus1xC2(n):
            return _result(spec,
                           alpha=Fraction(n + 2, 2 ** (n + 1)),
                           beta=Fraction(3 * n + 5, 2 ** (n + 2)),
                           cdeg=Fraction(2 * (n + 2), 3 * n + 5),
                           ndeg=Fraction(1),
                           prov=("cyclic-2power-times-c2", "abelian-all-normal"))
        case C2npxC2(n, p):
            return _result(spec,
                           alpha=Fraction(2 * (n + 1), 2**n * p),
                           beta=Fraction(3 * n + 2, 2**n * p),
                           cdeg=Fraction(2 * (n + 1), 3 * n + 2),
                           ndeg=Fraction(1),
                           prov=("cyclic-2power-p-times-c2", "abelian-all-normal"))
        case Hamiltonian(n, parts):
            alpha_a, beta_a = _odd_part_degrees(parts)
            alpha = Fraction(5, 8) * alpha_a
            beta = beta_a * Fraction(b_coeff(n), 2 ** (n + 3))
            return _result(spec, alpha=alpha, beta=beta, cdeg=alpha / beta,
                           ndeg=Fraction(1),
                           prov=("hamiltonian-product", "hamiltonian-all-normal"))
        case ModularP3(p):
            return _result(spec,
                           alpha=Fraction(2 * p + 2, p**3),
                           beta=Fraction(2 * p + 4, p**3),
                           cdeg=Fraction(p + 1, p + 2),
                           prov=("modular-p3-counts",))
        case CpByCqn():
            return _result(spec)  # no closed form in the catalog
        case CpnByC4(p, n):
            s = sigma(p**n)
            lattice = 2 * (n + 1) + s
            return _result(spec,
                           alpha=Fraction(p**n + 2 * (n + 1), 4 * p**n),
                           beta=Fraction(lattice, 4 * p**n),
                           cdeg=Fraction(p**n + 2 * (n + 1), lattice),
                           ndeg=Fraction(2 * n + 3, lattice),
                           prov=("dicyclic-c4-table",))
        case CpnByQ2m(p, n, m):
            s = sigma(p**n)
            beta = Fraction(m * (n + 1) + s * (2 ** (m - 1) - 1), 2**m * p**n)
            if m != 3:
                return _result(spec, beta=beta, prov=("dicyclic-q2m-count",))
            lattice = 3 * ((n + 1) + s)
            return _result(spec,
                           alpha=Fraction(2 * p**n + 3 * (n + 1), 8 * p**n),
                           beta=beta,
                           cdeg=Fraction(2 * p**n + 3 * (n + 1), lattice),
                           ndeg=Fraction(3 * n + 6, lattice),
                           prov=("dicyclic-q8-table",))
        case CqmCpnByC4(p, n, q, m):
            count = 2 * (n + 1) * (m + 1) + sigma(p**n) * sigma(q**m)
            return _result(spec, beta=Fraction(count, 4 * q**m * p**n),
                           prov=("dicyclic-pq-c4-count",))
        case CqmCpnByQ2r(p, n, q, m, r):
            count = r * (n + 1) * (m + 1) + (2 ** (r - 1) - 1) * sigma(p**n) * sigma(q**m)
            return _result(spec, beta=Fraction(count, 2**r * q**m * p**n),
                           prov=("dicyclic-pq-q2r-count",))
    raise DomainError(f"unknown family spec {spec!r}")


def _two_group_result(spec, cyclic_count, total_count, order, rule):
    alpha = Fraction(cyclic_count, order)
    beta = Fraction(total_count, order)
    return _result(spec, alpha=alpha, beta=beta,
                   cdeg=Fraction(cyclic_count, total_count), prov=(rule,))


def _flatten(spec: FamilySpec) -> list[FamilySpec]:
    if isinstance(spec, DirectProduct):
        return _flatten(spec.left) + _flatten(spec.right)
    return [spec]


def _is_c2_power_part(part: FamilySpec) -> bool:
    return part == Cyclic(2) or (
        isinstance(part, ElementaryAbelian) and part.p == 2)


def _evaluate_product(spec: DirectProduct) -> DegreeFormulaResult:
    parts = _flatten(spec)

    # products of equal-prime cyclics are elementary abelian
    if all(isinstance(part, Cyclic) for part in parts):
        orders = {part.n for part in parts}
        if len(orders) == 1:
            (p,) = orders
            if is_prime(p):
                inner = evaluate(ElementaryAbelian(p, len(parts)))
                return dataclasses.replace(inner, spec=spec)

    # C_m x C_2 patterns with even m reach the dedicated abelian families
    if len(parts) == 2:
        cycs = sorted((part.n for part in parts if isinstance(part, Cyclic)))
        if len(cycs) == 2 and cycs[0] == 2 and cycs[1] % 2 == 0:
            m = cycs[1]
            if m & (m - 1) == 0:
                inner = evaluate(C2nPlus1xC2(m.bit_length() - 2))
                return dataclasses.replace(inner, spec=spec)
            n2 = (m & -m).bit_length() - 1
            rest = m >> n2
            if is_prime(rest):
                inner = evaluate(C2npxC2(n2, rest))
                return dataclasses.replace(inner, spec=spec)

    # a dihedral factor times any 2-power elementary abelian rank keeps its
    # alpha value unchanged
    dihedrals = [p for p in parts if isinstance(p, (Dihedral, Dihedral2))]
    if len(dihedrals) == 1 and all(
            _is_c2_power_part(p) for p in parts if p is not dihedrals[0]):
        inner = evaluate(dihedrals[0])
        return _result(spec, alpha=inner.alpha,
                       prov=inner.provenance + ("dihedral-times-c2-rank",))

    # generic route: multiplicativity over coprime orders
    left = evaluate(spec.left)
    right = evaluate(spec.right)
    if gcd(declared_order(spec.left), declared_order(spec.right)) != 1:
        return _result(spec)
    values = {}
    for name in _FUNCTIONS:
        lv, rv = getattr(left, name), getattr(right, name)
        values[name] = lv * rv if lv is not None and rv is not None else None
    if not any(v is not None for v in values.values()):
        return _result(spec)
    return _result(spec, prov=tuple(dict.fromkeys(
        left.provenance + right.provenance + ("coprime-multiplicativity",))),
        **values)


def _odd_part_degrees(parts: tuple) -> tuple[Fraction, Fraction]:
    """(alpha, beta) of the odd abelian factor: closed forms when the factor
    is cyclic/elementary abelian/coprime-composite, lattice census otherwise."""
    if not parts:
        return Fraction(1), Fraction(1)
    spec = parts[0]
    for part in parts[1:]:
        spec = DirectProduct(spec, part)
    res = evaluate(spec)
    if res.alpha is not None and res.beta is not None:
        return res.alpha, res.beta
    d = groupcore.group_degrees(construct(spec))
    return d.alpha, d.beta


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitEntry:
    """A stated asymptotic value: ``function`` of the family tends to ``value``
    as the ``vary`` parameter grows, the other parameters held fixed (their
    values are read from ``spec``; the ``vary`` slot in ``spec`` is ignored)."""

    spec: FamilySpec
    function: str
    vary: str
    value: Fraction
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if not 0 <= self.value <= 1:
            raise DomainError(f"limit value {self.value} outside [0, 1]")


def limit(spec: FamilySpec, function: str, vary: str = "n") -> Optional[LimitEntry]:
    """The cataloged limit of ``function`` for this family as ``vary`` grows,
    or None when no limit is on record."""
    if function not in _FUNCTIONS:
        raise DomainError(f"unknown degree function {function!r}")
    value = _limit_value(spec, function, vary)
    if value is None:
        return None
    return LimitEntry(spec=spec, function=function, vary=vary,
                      value=value, provenance=(_limit_rule(spec),))


def _limit_rule(spec: FamilySpec) -> str:
    return f"limit:{type(spec).__name__}"


def _limit_value(spec, function, vary) -> Optional[Fraction]:
    F = Fraction
    match spec:
        case Dihedral2(_) if vary == "n":
            return {"alpha": F(1, 2), "beta": F(1), "cdeg": F(1, 2)}.get(function)
        case Quaternion2(_) if vary == "n":
            return {"alpha": F(1, 4), "beta": F(1, 2), "cdeg": F(1, 2)}.get(function)
        case Semidihedral2(_) if vary == "n":
            return {"alpha": F(3, 8), "beta": F(3, 4), "cdeg": F(1, 2)}.get(function)
        case Dihedral(_) if vary == "n":
            return {"alpha": F(1, 2)}.get(function)
        case C2nPlus1xC2(_) if vary == "n":
            return {"alpha": F(0), "beta": F(0), "cdeg": F(2, 3)}.get(function)
        case C2npxC2() if vary == "n":
            return {"alpha": F(0), "beta": F(0), "cdeg": F(2, 3)}.get(function)
        case Hamiltonian(_, (ElementaryAbelian(p, _),)) if vary == "m" and p % 2:
            return {"alpha": F(5, 8 * (p - 1))}.get(function)
        case ModularP3(_) if vary == "p":
            return {"alpha": F(0), "beta": F(0), "cdeg": F(1)}.get(function)
        case CpnByC4(p, _) if vary == "n":
            return {"alpha": F(1, 4), "beta": F(p, 4 * (p - 1)),
                    "cdeg": F(p - 1, p), "ndeg": F(0)}.get(function)
        case CpnByQ2m(p, _, m):
            if vary == "n":
                entries = {"beta": F(p, p - 1) * (F(1, 2) - F(1, 2**m))}
                if m == 3:
                    entries.update({"alpha": F(1, 4),
                                    "cdeg": F(2 * (p - 1), 3 * p),
                                    "ndeg": F(0)})
                return entries.get(function)
            if vary == "m":
                return {"beta": F(sigma(p**spec.n), 2 * p**spec.n)}.get(function)
            return None
        case CqmCpnByC4(p, _, q, m):
            if vary == "n":
                return {"beta": F(p, 4 * (p - 1) * (q - 1)) * F(q ** (m + 1) - 1, q**m)
                        }.get(function)
            if vary == "m":
                n = spec.n
                return {"beta": F(q, 4 * (p - 1) * (q - 1)) * F(p ** (n + 1) - 1, p**n)
                        }.get(function)
            return None
        case CqmCpnByQ2r(p, _, q, m, r):
            if vary == "n":
                return {"beta": F(2 ** (r - 1) - 1, 2**r) * F(p, p - 1)
                        * F(q ** (m + 1) - 1, q**m * (q - 1))}.get(function)
            if vary == "m":
                n = spec.n
                return {"beta": F((2 ** (r - 1) - 1) * (p ** (n + 1) - 1) * q,
                                  2**r * p**n * (p - 1) * (q - 1))}.get(function)
            if vary == "r":
                n, mm = spec.n, spec.m
                return {"beta": F(sigma(p**n) * sigma(q**mm), 2 * q**mm * p**n)
                        }.get(function)
            return None
        case DirectProduct():
            parts = _flatten(spec)
            dihedrals = [x for x in parts if isinstance(x, (Dihedral, Dihedral2))]
            if vary == "n" and len(dihedrals) == 1 and all(
                    _is_c2_power_part(x) for x in parts if x is not dihedrals[0]):
                return {"alpha": F(1, 2)}.get(function)
            return None
    return None


def _with_vary(spec: FamilySpec, vary: str, value: int) -> FamilySpec:
    if isinstance(spec, Hamiltonian) and vary == "m":
        if len(spec.odd_part) != 1 or not isinstance(spec.odd_part[0], ElementaryAbelian):
            raise DomainError(
                "varying m requires a single elementary abelian odd part")
        part = dataclasses.replace(spec.odd_part[0], k=value)
        return dataclasses.replace(spec, odd_part=(part,))
    if isinstance(spec, DirectProduct):
        parts = _flatten(spec)
        dihedrals = [x for x in parts if isinstance(x, (Dihedral, Dihedral2))]
        if vary == "n" and len(dihedrals) == 1:
            new_parts = [dataclasses.replace(x, n=value) if x is dihedrals[0] else x
                         for x in parts]
            out = new_parts[0]
            for part in new_parts[1:]:
                out = DirectProduct(out, part)
            return out
        raise DomainError(f"cannot vary {vary!r} in a product spec")
    if not hasattr(spec, vary):
        raise DomainError(f"family {type(spec).__name__} has no parameter {vary!r}")
    return dataclasses.replace(spec, **{vary: value})


def limit_convergence_probe(entry: LimitEntry,
                            values: list[int]) -> list[tuple[int, Fraction]]:
    """Exact gaps |formula - limit| at each parameter value (ascending).

    No decay rate is asserted; the caller inspects or exports the sequence.
    """
    out = []
    for v in values:
        spec_v = _with_vary(entry.spec, entry.vary, v)
        res = evaluate(spec_v)
        val = getattr(res, entry.function)
        if val is None:
            raise DomainError(
                f"no {entry.function} formula at {spec_string(spec_v)}")
        out.append((v, abs(val - entry.value)))
    return out


# ---------------------------------------------------------------------------
# verification against the lattice oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FunctionComparison:
    function: str
    formula: Optional[Fraction]
    oracle: Optional[Fraction]
    match: Optional[bool]


@dataclass(frozen=True)
class VerificationReport:
    spec: FamilySpec
    order: int
    comparisons: tuple[FunctionComparison, ...]
    oracle_skipped: bool = False
    skip_reason: Optional[str] = None
    provenance: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return (not self.oracle_skipped
                and all(c.match is not False for c in self.comparisons))

    def to_dict(self) -> dict:
        return {
            "spec": spec_string(self.spec),
            "order": self.order,
            "oracle_skipped": self.oracle_skipped,
            "skip_reason": self.skip_reason,
            "pass": self.passed,
            "provenance": list(self.provenance),
            "comparisons": [
                {
                    "function": c.function,
                    "formula": None if c.formula is None else str(c.formula),
                    "oracle": None if c.oracle is None else str(c.oracle),
                    "match": c.match,
                }
                for c in self.comparisons
            ],
        }


def verify(spec: FamilySpec, cap: Optional[int] = None) -> VerificationReport:
    """Evaluate the catalog and the lattice oracle side by side; the report
    passes iff every cataloged function matches the census exactly. When the
    group exceeds the enumeration cap the oracle side is skipped and flagged.
    """
    res = evaluate(spec)
    order = declared_order(spec)
    try:
        oracle = groupcore.group_degrees(construct(spec), cap)
    except ResourceLimitError as exc:
        comparisons = tuple(
            FunctionComparison(name, getattr(res, name), None, None)
            for name in _FUNCTIONS)
        return VerificationReport(spec=spec, order=order, comparisons=comparisons,
                                  oracle_skipped=True, skip_reason=str(exc),
                                  provenance=res.provenance)
    comparisons = []
    for name in _FUNCTIONS:
        formula = getattr(res, name)
        oracle_value = getattr(oracle, name)
        match = None if formula is None else formula == oracle_value
        comparisons.append(FunctionComparison(name, formula, oracle_value, match))
    return VerificationReport(spec=spec, order=order,
                              comparisons=tuple(comparisons),
                              provenance=res.provenance)
