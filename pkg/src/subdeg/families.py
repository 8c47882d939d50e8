"""Constructors for the named group families: each ``FamilySpec`` turns into a
concrete :class:`~subdeg.groupcore.FiniteGroup` realizing the family's
presentation, with reproducible normal-form element labels.

Spec strings (CLI grammar)
--------------------------
::

    spec      := atom ("x" atom)*          products fold left
    atom      := NAME "(" args ")" | "C" DIGITS
    C(n)                  cyclic of order n          (C12 == C(12))
    E(p,k)                elementary abelian of rank k over the prime p
    D(m)                  dihedral 2-group of order m = 2^n
    D(2,n)                dihedral group of order 2n
    Q(m)                  generalized quaternion of order m = 2^n, n >= 3
    SD(m)                 semidihedral of order m = 2^n, n >= 4
    Dic(k)                dicyclic of order 4k
    CxC2(m)               C_m x C_2 for m = 2^(n+1) or m = 2^n * p (odd p)
    M(p)                  the modular group of order p^3, odd prime p
    PQ(p,q,n,s)           C_p : C_{q^n}, the generator acting with order q^s
    Ham(n=K;S1;S2;...)    Q8 x C2^K x (S1 x S2 x ...), odd abelian parts
    DicC4(p,n)            C_{p^n} : C_4            (order 4 p^n, dicyclic)
    DicQ(p,n,m)           C_{p^n} : Q_{2^m}        (order 2^m p^n, dicyclic)
    DicPQC4(p,n,q,m)      C_{q^m} : (C_{p^n} : C_4)
    DicPQQ(p,n,q,m,r)     C_{q^m} : (C_{p^n} : Q_{2^r})

Parse errors cite the offending token and its offset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from . import groupcore
from .errors import DomainError, SpecSyntaxError
from .groupcore import FiniteGroup
from .numtheory import is_prime


# ---------------------------------------------------------------------------
# family specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cyclic:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Cyclic requires order >= 1, got {self.n}")


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int
    k: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"ElementaryAbelian requires a prime, got p={self.p}")
        if self.k < 0:
            raise DomainError(f"ElementaryAbelian requires rank >= 0, got {self.k}")


@dataclass(frozen=True)
class Dihedral:
    """Dihedral group of order 2n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Dihedral requires n >= 1, got {self.n}")


@dataclass(frozen=True)
class Dihedral2:
    """Dihedral 2-group of order 2^n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Dihedral2 requires n >= 1, got {self.n}")


@dataclass(frozen=True)
class Quaternion2:
    """Generalized quaternion group of order 2^n, n >= 3."""

    n: int

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"Quaternion2 requires n >= 3, got {self.n}")


@dataclass(frozen=True)
class Semidihedral2:
    """Semidihedral group of order 2^n, n >= 4."""

    n: int

    def __post_init__(self):
        if self.n < 4:
            raise DomainError(f"Semidihedral2 requires n >= 4, got {self.n}")


@dataclass(frozen=True)
class Dicyclic:
    """Dicyclic group of order 4k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"Dicyclic requires k >= 1, got {self.k}")


@dataclass(frozen=True)
class C2nPlus1xC2:
    """C_{2^(n+1)} x C_2, order 2^(n+2)."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"C2nPlus1xC2 requires n >= 0, got {self.n}")


@dataclass(frozen=True)
class C2npxC2:
    """C_{2^n p} x C_2 for an odd prime p, order 2^(n+1) p."""

    n: int
    p: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"C2npxC2 requires n >= 1, got {self.n}")
        if not is_prime(self.p) or self.p == 2:
            raise DomainError(f"C2npxC2 requires an odd prime, got p={self.p}")


@dataclass(frozen=True)
class Hamiltonian:
    """Q8 x C2^n x A with A the direct product of the odd-order parts."""

    n: int
    odd_part: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"Hamiltonian requires n >= 0, got {self.n}")
        object.__setattr__(self, "odd_part", tuple(self.odd_part))
        for part in self.odd_part:
            if declared_order(part) % 2 == 0:
                raise DomainError(
                    f"Hamiltonian odd part {spec_string(part)} has even order "
                    f"{declared_order(part)}")


@dataclass(frozen=True)
class ModularP3:
    """The nonabelian group of order p^3 and exponent p^2 (odd prime p):
    a cyclic p^2 part extended by an order-p automorphism a -> a^(1+p)."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise DomainError(f"ModularP3 requires an odd prime, got p={self.p}")


@dataclass(frozen=True)
class CpByCqn:
    """C_p : C_{q^n}, the generator of C_{q^n} acting as the smallest
    automorphism of multiplicative order q^s modulo p."""

    p: int
    q: int
    n: int
    s: int

    def __post_init__(self):
        if not is_prime(self.p) or not is_prime(self.q):
            raise DomainError(f"CpByCqn requires primes, got p={self.p}, q={self.q}")
        if self.p == self.q:
            raise DomainError(f"CpByCqn requires distinct primes, got p=q={self.p}")
        if not 1 <= self.s <= self.n:
            raise DomainError(
                f"CpByCqn requires 1 <= s <= n (a trivialized action is rejected),"
                f" got s={self.s}, n={self.n}")
        if (self.p - 1) % self.q**self.s != 0:
            raise DomainError(
                f"CpByCqn requires q^s | p-1, got q^s={self.q ** self.s},"
                f" p-1={self.p - 1}")


def _require_odd_prime(cls: str, name: str, value: int) -> None:
    if not is_prime(value) or value == 2:
        raise DomainError(f"{cls} requires an odd prime {name}, got {name}={value}")


@dataclass(frozen=True)
class CpnByC4:
    """C_{p^n} : C_4 with inversion action; realized as the dicyclic group of
    order 4 p^n."""

    p: int
    n: int

    def __post_init__(self):
        _require_odd_prime("CpnByC4", "p", self.p)
        if self.n < 1:
            raise DomainError(f"CpnByC4 requires n >= 1, got {self.n}")


@dataclass(frozen=True)
class CpnByQ2m:
    """C_{p^n} : Q_{2^m}; realized as the dicyclic group of order 2^m p^n."""

    p: int
    n: int
    m: int

    def __post_init__(self):
        _require_odd_prime("CpnByQ2m", "p", self.p)
        if self.n < 1:
            raise DomainError(f"CpnByQ2m requires n >= 1, got {self.n}")
        if self.m < 3:
            raise DomainError(f"CpnByQ2m requires m >= 3, got {self.m}")


@dataclass(frozen=True)
class CqmCpnByC4:
    """C_{q^m} : (C_{p^n} : C_4); realized as the dicyclic group of order
    4 p^n q^m."""

    p: int
    n: int
    q: int
    m: int

    def __post_init__(self):
        _require_odd_prime("CqmCpnByC4", "p", self.p)
        _require_odd_prime("CqmCpnByC4", "q", self.q)
        if self.p == self.q:
            raise DomainError(f"CqmCpnByC4 requires p != q, got p=q={self.p}")
        if self.n < 1 or self.m < 1:
            raise DomainError(
                f"CqmCpnByC4 requires n, m >= 1, got n={self.n}, m={self.m}")


@dataclass(frozen=True)
class CqmCpnByQ2r:
    """C_{q^m} : (C_{p^n} : Q_{2^r}); realized as the dicyclic group of order
    2^r p^n q^m."""

    p: int
    n: int
    q: int
    m: int
    r: int

    def __post_init__(self):
        _require_odd_prime("CqmCpnByQ2r", "p", self.p)
        _require_odd_prime("CqmCpnByQ2r", "q", self.q)
        if self.p == self.q:
            raise DomainError(f"CqmCpnByQ2r requires p != q, got p=q={self.p}")
        if self.n < 1 or self.m < 1:
            raise DomainError(
                f"CqmCpnByQ2r requires n, m >= 1, got n={self.n}, m={self.m}")
        if self.r < 3:
            raise DomainError(f"CqmCpnByQ2r requires r >= 3, got {self.r}")


@dataclass(frozen=True)
class DirectProduct:
    left: "FamilySpec"
    right: "FamilySpec"


FamilySpec = Union[
    Cyclic, ElementaryAbelian, Dihedral, Dihedral2, Quaternion2, Semidihedral2,
    Dicyclic, C2nPlus1xC2, C2npxC2, Hamiltonian, ModularP3, CpByCqn,
    CpnByC4, CpnByQ2m, CqmCpnByC4, CqmCpnByQ2r, DirectProduct,
]


def declared_order(spec: FamilySpec) -> int:
    """The family's order as declared by its parameters (no table built)."""
    match spec:
        case Cyclic(n):
            return n
        case ElementaryAbelian(p, k):
            return p**k
        case Dihedral(n):
            return 2 * n
        case Dihedral2(n) | Quaternion2(n) | Semidihedral2(n):
            return 2**n
        case Dicyclic(k):
            return 4 * k
        case C2nPlus1xC2(n):
            return 2 ** (n + 2)
        case C2npxC2(n, p):
            return 2 ** (n + 1) * p
        case Hamiltonian(n, parts):
            order = 2 ** (n + 3)
            for part in parts:
                order *= declared_order(part)
            return order
        case ModularP3(p):
            return p**3
        case CpByCqn(p, q, n, _):
            return p * q**n
        case CpnByC4(p, n):
            return 4 * p**n
        case CpnByQ2m(p, n, m):
            return 2**m * p**n
        case CqmCpnByC4(p, n, q, m):
            return 4 * p**n * q**m
        case CqmCpnByQ2r(p, n, q, m, r):
            return 2**r * p**n * q**m
        case DirectProduct(left, right):
            return declared_order(left) * declared_order(right)
    raise DomainError(f"unknown family spec {spec!r}")


# ---------------------------------------------------------------------------
# table builders
# ---------------------------------------------------------------------------

def _cyclic_table(n: int) -> np.ndarray:
    ar = np.arange(n, dtype=np.int64)
    return np.add.outer(ar, ar) % n


def _split_metacyclic_table(m: int, k: int, t: int) -> np.ndarray:
    """C_m : C_k with the generator of C_k acting by multiplication with t
    (t^k = 1 mod m). Element (a, b) is a*k + b; the product rule is
    (a, b)(c, d) = (a + t^b c mod m, b + d mod k)."""
    assert pow(t, k, m) == 1 % m
    tb = np.array([pow(t, b, m) for b in range(k)], dtype=np.int64)
    a = np.arange(m, dtype=np.int64)[:, None, None, None]
    b = np.arange(k, dtype=np.int64)[None, :, None, None]
    c = np.arange(m, dtype=np.int64)[None, None, :, None]
    d = np.arange(k, dtype=np.int64)[None, None, None, :]
    table = ((a + tb[None, :, None, None] * c) % m) * k + (b + d) % k
    return table.reshape(m * k, m * k)


def _dicyclic_table(k: int) -> np.ndarray:
    """Order 4k: a of order 2k, b^2 = a^k, b a b^{-1} = a^{-1}; element
    a^i b^j is 2i + j."""
    two_k = 2 * k
    i = np.arange(two_k, dtype=np.int64)[:, None, None, None]
    j = np.arange(2, dtype=np.int64)[None, :, None, None]
    l = np.arange(two_k, dtype=np.int64)[None, None, :, None]
    d = np.arange(2, dtype=np.int64)[None, None, None, :]
    # j = 0: (i+l, d); j = 1, d = 0: (i-l, 1); j = 1, d = 1: (i-l+k, 0)
    plain = ((i + l) % two_k) * 2 + d
    twist = np.where(
        d == 0,
        ((i - l) % two_k) * 2 + 1,
        ((i - l + k) % two_k) * 2,
    )
    table = np.where(j == 0, plain, twist)
    return table.reshape(4 * k, 4 * k)


def _elementary_abelian_table(p: int, k: int) -> np.ndarray:
    n = p**k
    if k == 0:
        return np.zeros((1, 1), dtype=np.int64)
    digits = [(np.arange(n, dtype=np.int64) // p ** (k - 1 - pos)) % p for pos in range(k)]
    table = np.zeros((n, n), dtype=np.int64)
    for dp in digits:
        table = table * p + (dp[:, None] + dp[None, :]) % p
    return table


def _power_label(sym: str, exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return sym
    return f"{sym}^{exp}"


def _two_part_labels(m: int, k: int, first: str, second: str) -> list[str]:
    out = []
    for a in range(m):
        for b in range(k):
            word = (_power_label(first, a) + " " + _power_label(second, b)).strip()
            out.append(word or "1")
    return out


def _dicyclic_labels(k: int) -> list[str]:
    out = []
    for i in range(2 * k):
        for j in range(2):
            word = (_power_label("a", i) + " " + _power_label("b", j)).strip()
            out.append(word or "1")
    return out


def _vector_labels(p: int, k: int) -> list[str]:
    n = p**k
    out = []
    for i in range(n):
        digits = [(i // p ** (k - 1 - pos)) % p for pos in range(k)]
        out.append("(" + ",".join(map(str, digits)) + ")")
    return out


def _smallest_automorphism_of_order(p: int, order: int) -> int:
    """Smallest t in 2..p-1 whose multiplicative order modulo p is exactly
    ``order`` (caller guarantees order | p-1)."""
    for t in range(2, p):
        if pow(t, order, p) != 1:
            continue
        for f in {order // f for f in _prime_factors(order)}:
            if pow(t, f, p) == 1:
                break
        else:
            return t
    raise DomainError(f"no automorphism of order {order} modulo {p}")


def _prime_factors(n: int) -> set[int]:
    out = set()
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.add(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.add(n)
    return out


@lru_cache(maxsize=None)
def construct(spec: FamilySpec) -> FiniteGroup:
    """Build the Cayley table realizing ``spec``. Groups are cached, so
    repeated construction (and census work) is shared."""
    match spec:
        case Cyclic(n):
            return FiniteGroup(_cyclic_table(n), labels=[str(i) for i in range(n)],
                               meta=spec)
        case ElementaryAbelian(p, k):
            return FiniteGroup(_elementary_abelian_table(p, k),
                               labels=_vector_labels(p, k), meta=spec)
        case Dihedral(n):
            return FiniteGroup(_split_metacyclic_table(n, 2, (n - 1) % n),
                               labels=_two_part_labels(n, 2, "x", "y"), meta=spec)
        case Dihedral2(n):
            half = 2 ** (n - 1)
            return FiniteGroup(_split_metacyclic_table(half, 2, half - 1),
                               labels=_two_part_labels(half, 2, "x", "y"), meta=spec)
        case Quaternion2(n):
            # the presentation's x has order 2^(n-1) and y^2 = x^(2^(n-2)),
            # i.e. the dicyclic table with k = 2^(n-2)
            k = 2 ** (n - 2)
            return FiniteGroup(_dicyclic_table(k),
                               labels=_two_part_labels(2 * k, 2, "x", "y"), meta=spec)
        case Semidihedral2(n):
            half = 2 ** (n - 1)
            return FiniteGroup(_split_metacyclic_table(half, 2, 2 ** (n - 2) - 1),
                               labels=_two_part_labels(half, 2, "x", "y"), meta=spec)
        case Dicyclic(k):
            return FiniteGroup(_dicyclic_table(k), labels=_dicyclic_labels(k),
                               meta=spec)
        case C2nPlus1xC2(n):
            G = groupcore.direct_product(construct(Cyclic(2 ** (n + 1))),
                                         construct(Cyclic(2)), meta=spec)
            return G
        case C2npxC2(n, p):
            return groupcore.direct_product(construct(Cyclic(2**n * p)),
                                            construct(Cyclic(2)), meta=spec)
        case Hamiltonian(n, parts):
            G = construct(Quaternion2(3))
            if n:
                G = groupcore.direct_product(G, construct(ElementaryAbelian(2, n)))
            for part in parts:
                G = groupcore.direct_product(G, construct(part))
            return FiniteGroup(G.table, labels=G.labels, meta=spec)
        case ModularP3(p):
            return FiniteGroup(_split_metacyclic_table(p * p, p, 1 + p),
                               labels=_two_part_labels(p * p, p, "a", "b"), meta=spec)
        case CpByCqn(p, q, n, s):
            t = _smallest_automorphism_of_order(p, q**s)
            return FiniteGroup(_split_metacyclic_table(p, q**n, t),
                               labels=_two_part_labels(p, q**n, "a", "b"), meta=spec)
        case CpnByC4(p, n):
            return FiniteGroup(_dicyclic_table(p**n),
                               labels=_dicyclic_labels(p**n), meta=spec)
        case CpnByQ2m(p, n, m):
            k = 2 ** (m - 2) * p**n
            return FiniteGroup(_dicyclic_table(k), labels=_dicyclic_labels(k),
                               meta=spec)
        case CqmCpnByC4(p, n, q, m):
            k = p**n * q**m
            return FiniteGroup(_dicyclic_table(k), labels=_dicyclic_labels(k),
                               meta=spec)
        case CqmCpnByQ2r(p, n, q, m, r):
            k = 2 ** (r - 2) * p**n * q**m
            return FiniteGroup(_dicyclic_table(k), labels=_dicyclic_labels(k),
                               meta=spec)
        case DirectProduct(left, right):
            return groupcore.direct_product(construct(left), construct(right),
                                            meta=spec)
    raise DomainError(f"unknown family spec {spec!r}")


# ---------------------------------------------------------------------------
# spec-string syntax
# ---------------------------------------------------------------------------

def spec_string(spec: FamilySpec) -> str:
    """Canonical text form; ``parse_spec(spec_string(s)) == s`` for specs whose
    products fold left."""
    match spec:
        case Cyclic(n):
            return f"C({n})"
        case ElementaryAbelian(p, k):
            return f"E({p},{k})"
        case Dihedral(n):
            return f"D(2,{n})"
        case Dihedral2(n):
            return f"D({2 ** n})"
        case Quaternion2(n):
            return f"Q({2 ** n})"
        case Semidihedral2(n):
            return f"SD({2 ** n})"
        case Dicyclic(k):
            return f"Dic({k})"
        case C2nPlus1xC2(n):
            return f"CxC2({2 ** (n + 1)})"
        case C2npxC2(n, p):
            return f"CxC2({2 ** n * p})"
        case Hamiltonian(n, parts):
            inner = "".join(";" + spec_string(part) for part in parts)
            return f"Ham(n={n}{inner})"
        case ModularP3(p):
            return f"M({p})"
        case CpByCqn(p, q, n, s):
            return f"PQ({p},{q},{n},{s})"
        case CpnByC4(p, n):
            return f"DicC4({p},{n})"
        case CpnByQ2m(p, n, m):
            return f"DicQ({p},{n},{m})"
        case CqmCpnByC4(p, n, q, m):
            return f"DicPQC4({p},{n},{q},{m})"
        case CqmCpnByQ2r(p, n, q, m, r):
            return f"DicPQQ({p},{n},{q},{m},{r})"
        case DirectProduct(left, right):
            return f"{spec_string(left)}x{spec_string(right)}"
    raise DomainError(f"unknown family spec {spec!r}")


_KNOWN_NAMES = ("DicPQC4", "DicPQQ", "DicC4", "DicQ", "CxC2", "Dic", "Ham",
                "SD", "PQ", "C", "D", "E", "M", "Q")

_TOKEN_RE = re.compile(r"\s*([A-Za-z0-9]+|[(),;=])")


def _split_run(run: str, offset: int, out: list[tuple[str, int]]) -> None:
    """Break an alphanumeric run into family names (longest match), 'x'
    product separators, and digit strings."""
    i = 0
    while i < len(run):
        if run[i] == "x":
            out.append(("x", offset + i))
            i += 1
            continue
        if run[i].isdigit():
            m = re.match(r"\d+", run[i:])
            out.append((m.group(), offset + i))
            i += len(m.group())
            continue
        name = next((nm for nm in _KNOWN_NAMES if run.startswith(nm, i)), None)
        if name is None:
            if run[i].islower():
                # bare lowercase letters (e.g. the n of Ham(n=...)) surface as
                # single tokens and are validated in context
                out.append((run[i], offset + i))
                i += 1
                continue
            raise SpecSyntaxError("unknown family name", position=offset + i,
                                  token=run[i:])
        out.append((name, offset + i))
        i += len(name)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SpecSyntaxError("unexpected character", position=pos,
                                  token=text[pos])
        piece, start = m.group(1), m.start(1)
        if piece[0].isalnum():
            _split_run(piece, start, tokens)
        else:
            tokens.append((piece, start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def _peek(self):
        return self.tokens[self.idx] if self.idx < len(self.tokens) else (None, len(self.text))

    def _next(self):
        tok = self._peek()
        self.idx += 1
        return tok

    def _expect(self, value: str):
        tok, pos = self._next()
        if tok != value:
            raise SpecSyntaxError(f"expected {value!r}", position=pos, token=tok)

    def _int(self) -> int:
        tok, pos = self._next()
        if tok is None or not tok.isdigit():
            raise SpecSyntaxError("expected an integer", position=pos, token=tok)
        return int(tok)

    def parse(self) -> FamilySpec:
        spec = self._product()
        tok, pos = self._peek()
        if tok is not None:
            raise SpecSyntaxError("trailing input after spec", position=pos, token=tok)
        return spec

    def _product(self) -> FamilySpec:
        spec = self._atom()
        while True:
            tok, _ = self._peek()
            if tok != "x":
                return spec
            self._next()
            spec = DirectProduct(spec, self._atom())

    def _atom(self) -> FamilySpec:
        tok, pos = self._next()
        if tok not in _KNOWN_NAMES:
            raise SpecSyntaxError("expected a family name", position=pos, token=tok)
        name = tok
        nxt, npos = self._peek()
        if nxt is not None and nxt.isdigit():
            # shorthand: C3 == C(3)
            if name != "C":
                raise SpecSyntaxError(
                    f"shorthand {name}{nxt} not recognized; write {name}(...)",
                    position=npos, token=nxt)
            self._next()
            return Cyclic(int(nxt))
        self._expect("(")
        try:
            spec = self._atom_body(name, pos)
        except DomainError as exc:
            if isinstance(exc, SpecSyntaxError):
                raise
            raise SpecSyntaxError(str(exc), position=pos, token=name) from None
        self._expect(")")
        return spec

    def _int_args(self) -> list[int]:
        args = [self._int()]
        while self._peek()[0] == ",":
            self._next()
            args.append(self._int())
        return args

    def _atom_body(self, name: str, pos: int) -> FamilySpec:
        if name == "Ham":
            ntok, npos = self._next()
            if ntok != "n":
                raise SpecSyntaxError("Ham arguments start with n=<int>",
                                      position=npos, token=ntok)
            self._expect("=")
            rank = self._int()
            parts = []
            while self._peek()[0] == ";":
                self._next()
                parts.append(self._product())
            return Hamiltonian(rank, tuple(parts))

        args = self._int_args()

        def arity(*counts):
            if len(args) not in counts:
                raise SpecSyntaxError(
                    f"{name} takes {' or '.join(map(str, counts))} argument(s),"
                    f" got {len(args)}", position=pos, token=name)

        if name == "C":
            arity(1)
            return Cyclic(args[0])
        if name == "E":
            arity(2)
            return ElementaryAbelian(args[0], args[1])
        if name == "D":
            arity(1, 2)
            if len(args) == 2:
                if args[0] != 2:
                    raise SpecSyntaxError(
                        "two-argument dihedral form is D(2,n)", position=pos, token=name)
                return Dihedral(args[1])
            return Dihedral2(_exponent_of_two(name, args[0], pos))
        if name == "Q":
            arity(1)
            return Quaternion2(_exponent_of_two(name, args[0], pos))
        if name == "SD":
            arity(1)
            return Semidihedral2(_exponent_of_two(name, args[0], pos))
        if name == "Dic":
            arity(1)
            return Dicyclic(args[0])
        if name == "CxC2":
            arity(1)
            return _cxc2_from_order(args[0], pos)
        if name == "M":
            arity(1)
            return ModularP3(args[0])
        if name == "PQ":
            arity(4)
            return CpByCqn(*args)
        if name == "DicC4":
            arity(2)
            return CpnByC4(*args)
        if name == "DicQ":
            arity(3)
            return CpnByQ2m(*args)
        if name == "DicPQC4":
            arity(4)
            return CqmCpnByC4(*args)
        if name == "DicPQQ":
            arity(5)
            return CqmCpnByQ2r(*args)
        raise SpecSyntaxError(f"unknown family name {name!r}", position=pos, token=name)


def _exponent_of_two(name: str, order: int, pos: int) -> int:
    if order < 2 or order & (order - 1):
        raise SpecSyntaxError(f"{name} takes a 2-power order, got {order}",
                              position=pos, token=name)
    return order.bit_length() - 1


def _cxc2_from_order(m: int, pos: int) -> FamilySpec:
    if m >= 2 and m & (m - 1) == 0:
        return C2nPlus1xC2(m.bit_length() - 2)
    n = 0
    rest = m
    while rest % 2 == 0:
        rest //= 2
        n += 1
    if n >= 1 and is_prime(rest):
        return C2npxC2(n, rest)
    raise SpecSyntaxError(
        f"CxC2 takes an order of the form 2^(n+1) or 2^n*p (odd prime p), got {m};"
        " use the product syntax C(m)xC(2) for other groups",
        position=pos, token="CxC2")


def parse_spec(text: str) -> FamilySpec:
    """Parse the CLI family-spec grammar; errors cite the offending token."""
    return _Parser(text).parse()
