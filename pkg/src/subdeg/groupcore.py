"""Concrete finite groups as Cayley tables, exhaustive subgroup-lattice
enumeration, and the census (total / cyclic / normal / nilpotent counts, plus
counts by order) from which all five degree functions are computed exactly.

This module is the brute-force oracle the closed-form catalog is checked
against, so it trusts nothing: every table is validated on construction
(identity, inverses, Latin-square rows/columns, associativity -- exhaustive up
to order 256, sampled deterministically above).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError, TableFormatError
from .numtheory import factorize

#: largest group order enumerate_subgroups/census accept by default
DEFAULT_ENUMERATION_CAP = 512

#: absolute ceiling on table construction (and on any cap override)
HARD_ORDER_LIMIT = 2048

_EXHAUSTIVE_ASSOC_LIMIT = 256
_ASSOC_SAMPLE_COUNT = 100_000
_ASSOC_SAMPLE_SEED = 0x5D


class FiniteGroup:
    """A finite group given by its full multiplication table.

    table[i][j] is the index of the product of elements i and j. Instances
    are immutable after construction and safe to share across threads;
    enumeration results are cached on the instance.
    """

    __slots__ = ("order", "table", "identity", "inverses", "labels", "meta",
                 "_element_orders", "_lattice", "_census")

    def __init__(self, table, labels: Optional[Sequence[str]] = None, meta=None):
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DomainError(f"table must be square, got shape {arr.shape}")
        n = int(arr.shape[0])
        if n < 1:
            raise DomainError("table must have at least one element")
        if n > HARD_ORDER_LIMIT:
            raise ResourceLimitError(
                f"group order {n} exceeds the hard order limit {HARD_ORDER_LIMIT}",
                cap=HARD_ORDER_LIMIT, requested=n)
        if arr.min() < 0 or arr.max() >= n:
            bad = np.argwhere((arr < 0) | (arr >= n))[0]
            i, j = int(bad[0]), int(bad[1])
            raise DomainError(
                f"table[{i}][{j}] = {int(arr[i, j])} is not an element index in 0..{n - 1}")
        table32 = arr.astype(np.int32)
        identity, inverses = _validate_group_axioms(table32)
        if labels is not None:
            labels = list(labels)
            if len(labels) != n:
                raise DomainError(
                    f"labels has {len(labels)} entries for a group of order {n}")
        table32.setflags(write=False)
        inverses.setflags(write=False)
        self.order = n
        self.table = table32
        self.identity = int(identity)
        self.inverses = inverses
        self.labels = labels
        self.meta = meta
        self._element_orders = None
        self._lattice = None
        self._census = None

    def __repr__(self) -> str:
        tag = f" meta={self.meta!r}" if self.meta is not None else ""
        return f"<FiniteGroup order={self.order}{tag}>"

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    def orders(self) -> np.ndarray:
        """Array of element orders (cached)."""
        if self._element_orders is None:
            T = self.table
            e = self.identity
            out = np.ones(self.order, dtype=np.int32)
            for g in range(self.order):
                k, x = 1, g
                while x != e:
                    x = int(T[x, g])
                    k += 1
                out[g] = k
            out.setflags(write=False)
            self._element_orders = out
        return self._element_orders


def _validate_group_axioms(T: np.ndarray) -> tuple[int, np.ndarray]:
    """Check Latin-square structure, identity, inverses, associativity.

    Returns (identity index, inverses array); raises DomainError with the
    offending row/column/triple otherwise.
    """
    n = T.shape[0]
    ar = np.arange(n, dtype=np.int32)

    rows_ok = (np.sort(T, axis=1) == ar[None, :]).all(axis=1)
    if not rows_ok.all():
        raise DomainError(f"table row {int(np.argmin(rows_ok))} is not a permutation of 0..{n - 1}")
    cols_ok = (np.sort(T, axis=0) == ar[:, None]).all(axis=0)
    if not cols_ok.all():
        raise DomainError(f"table column {int(np.argmin(cols_ok))} is not a permutation of 0..{n - 1}")

    left_ids = np.nonzero((T == ar[None, :]).all(axis=1))[0]
    right_ids = np.nonzero((T == ar[:, None]).all(axis=0))[0]
    both = np.intersect1d(left_ids, right_ids)
    if both.size != 1:
        raise DomainError("table has no two-sided identity element")
    e = int(both[0])

    inverses = np.argmax(T == e, axis=1).astype(np.int32)
    if not (T[ar, inverses] == e).all() or not (T[inverses, ar] == e).all():
        bad = int(np.argmin(T[ar, inverses] == e))
        raise DomainError(f"element {bad} has no two-sided inverse")

    if n <= _EXHAUSTIVE_ASSOC_LIMIT:
        for i in range(n):
            left = T[T[i], :]        # (i*j)*k for all j, k
            right = T[i, T]          # i*(j*k)
            if not np.array_equal(left, right):
                j, k = map(int, np.argwhere(left != right)[0])
                raise DomainError(
                    f"associativity fails at (i,j,k)=({i},{j},{k}):"
                    f" ({i}*{j})*{k} != {i}*({j}*{k})")
    else:
        rng = np.random.default_rng(_ASSOC_SAMPLE_SEED)
        i, j, k = rng.integers(0, n, size=(3, _ASSOC_SAMPLE_COUNT))
        left = T[T[i, j], k]
        right = T[i, T[j, k]]
        if not np.array_equal(left, right):
            b = int(np.argmin(left == right))
            raise DomainError(
                f"associativity fails at (i,j,k)=({int(i[b])},{int(j[b])},{int(k[b])})")
    return e, inverses


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as its strictly sorted element-index list."""

    elements: tuple[int, ...]
    parent_order: int

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class SubgroupCensus:
    group_order: int
    total: int
    cyclic: int
    normal: int
    nilpotent: int
    by_order: dict[int, int]


@dataclass(frozen=True)
class Degrees:
    alpha: Fraction
    beta: Fraction
    cdeg: Fraction
    ndeg: Fraction
    jdeg: Fraction


def element_order(G: FiniteGroup, g: int) -> int:
    """Smallest k >= 1 with g^k = identity; always divides the group order."""
    if not 0 <= g < G.order:
        raise DomainError(f"element index {g} out of range for order {G.order}")
    return int(G.orders()[g])


def exponent(G: FiniteGroup) -> int:
    """lcm of all element orders."""
    return lcm(*map(int, G.orders()))


def _closure(T: np.ndarray, n: int, seed_mask: np.ndarray) -> np.ndarray:
    """Multiplicative closure of a nonempty element set (a subgroup, since the
    ambient group is finite). Sorted unique array.

    Membership is tracked in a boolean mask so no sorting happens; after the
    first full product pass only frontier products are formed.
    """
    mask = seed_mask
    elems = np.flatnonzero(mask)
    frontier = elems
    first = True
    while True:
        if first:
            prods = T[elems[:, None], elems[None, :]].ravel()
            first = False
        else:
            prods = np.concatenate([
                T[frontier[:, None], elems[None, :]].ravel(),
                T[elems[:, None], frontier[None, :]].ravel(),
            ])
        cand = prods[~mask[prods]]
        if cand.size == 0:
            return elems
        fresh = np.zeros(n, dtype=bool)
        fresh[cand] = True
        mask |= fresh
        frontier = np.flatnonzero(fresh)
        elems = np.flatnonzero(mask)


class _Lattice:
    __slots__ = ("arrays", "keysets", "by_size")

    def __init__(self, arrays: list[np.ndarray]):
        self.arrays = arrays
        self.keysets = [frozenset(map(int, a)) for a in arrays]
        self.by_size: dict[int, list[int]] = {}
        for idx, a in enumerate(arrays):
            self.by_size.setdefault(int(a.size), []).append(idx)


def _resolve_cap(cap: Optional[int]) -> int:
    if cap is None:
        return DEFAULT_ENUMERATION_CAP
    if cap > HARD_ORDER_LIMIT:
        raise DomainError(
            f"enumeration cap {cap} exceeds the hard maximum {HARD_ORDER_LIMIT}")
    if cap < 1:
        raise DomainError(f"enumeration cap must be >= 1, got {cap}")
    return cap


def _lattice(G: FiniteGroup, cap: Optional[int]) -> _Lattice:
    limit = _resolve_cap(cap)
    if G.order > limit:
        raise ResourceLimitError(
            f"group order {G.order} exceeds the enumeration cap {limit}",
            cap=limit, requested=G.order)
    if G._lattice is not None:
        return G._lattice

    T = G.table
    n = G.order
    e = G.identity
    seen: dict[bytes, np.ndarray] = {}
    queue: list[np.ndarray] = []

    def _add(arr: np.ndarray) -> None:
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        key = arr.tobytes()
        if key not in seen:
            seen[key] = arr
            queue.append(arr)

    # seeds: every cyclic subgroup <g>; kept around to jump-start extensions,
    # since <H, g> = <H union <g>>
    cyclic_of: list[np.ndarray] = []
    cyc_ids = np.zeros(n, dtype=np.int32)
    cyc_keys: dict[bytes, int] = {}
    for g in range(n):
        elems = [e]
        x = g
        while x != e:
            elems.append(x)
            x = int(T[x, g])
        arr = np.asarray(sorted(elems), dtype=np.int32)
        cyclic_of.append(arr)
        cyc_ids[g] = cyc_keys.setdefault(arr.tobytes(), g)
        _add(arr)

    # extend each known subgroup by one representative per outside coset
    # (<H, g> = <H, hg>, so the minimum of each coset H*g suffices), further
    # deduplicated by the representative's cyclic subgroup
    # (<H, g> = <H union <g>>)
    qi = 0
    while qi < len(queue):
        H = queue[qi]
        qi += 1
        if H.size == n:
            continue
        member = np.zeros(n, dtype=bool)
        member[H] = True
        outside = np.flatnonzero(~member)
        coset_mins = T[H[:, None], outside[None, :]].min(axis=0)
        reps = np.unique(coset_mins)
        _, keep = np.unique(cyc_ids[reps], return_index=True)
        for rep in reps[keep]:
            seed_mask = member.copy()
            seed_mask[cyclic_of[rep]] = True
            _add(_closure(T, n, seed_mask))

    arrays = sorted(seen.values(), key=lambda a: (a.size, a.tolist()))
    lat = _Lattice(arrays)
    G._lattice = lat
    return lat


def enumerate_subgroups(G: FiniteGroup, cap: Optional[int] = None) -> list[Subgroup]:
    """All subgroups of G, deterministically sorted by size then element list.

    Raises ResourceLimitError when the order exceeds the enumeration cap
    (default 512, overridable up to the hard limit).
    """
    lat = _lattice(G, cap)
    return [Subgroup(tuple(map(int, a)), G.order) for a in lat.arrays]


def _require_subgroup(G: FiniteGroup, H: Subgroup) -> np.ndarray:
    if H.parent_order != G.order:
        raise DomainError(
            f"subgroup has parent order {H.parent_order}, group has order {G.order}")
    arr = np.asarray(H.elements, dtype=np.int32)
    if arr.size == 0 or (np.diff(arr) <= 0).any():
        raise DomainError("subgroup elements must be strictly sorted and nonempty")
    if arr[0] < 0 or arr[-1] >= G.order:
        raise DomainError("subgroup contains out-of-range element indices")
    if G.identity not in H.elements:
        raise DomainError("subgroup does not contain the identity")
    if G.order % arr.size != 0:
        raise DomainError(
            f"subgroup size {arr.size} does not divide the group order {G.order}")
    prods = np.unique(G.table[np.ix_(arr, arr)])
    if prods.size != arr.size or not np.array_equal(prods, arr):
        raise DomainError("element set is not closed under the group operation")
    return arr


def _conjugates_match(T: np.ndarray, inverses: np.ndarray,
                      sub: np.ndarray, within: np.ndarray) -> bool:
    """True iff x * sub * x^{-1} = sub (as a set) for every x in `within`."""
    left = T[np.ix_(within, sub)]                 # x * s
    conj = T[left, inverses[within][:, None]]     # (x * s) * x^{-1}
    conj.sort(axis=1)
    return bool((conj == sub[None, :]).all())


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    """True iff g H g^{-1} = H for every g in G."""
    sub = _require_subgroup(G, H)
    every = np.arange(G.order, dtype=np.int32)
    return _conjugates_match(G.table, G.inverses, sub, every)


def _is_nilpotent_array(G: FiniteGroup, lat: _Lattice, sub: np.ndarray,
                        subset: frozenset) -> bool:
    size = int(sub.size)
    fac = factorize(size)
    if len(fac) <= 1:
        return True  # p-groups (and the trivial subgroup) are nilpotent
    for p, exp_ in fac.items():
        pe = p**exp_
        sylow = None
        for idx in lat.by_size.get(pe, ()):
            if lat.keysets[idx] <= subset:
                sylow = lat.arrays[idx]
                break
        # a Sylow subgroup always exists in the complete lattice
        assert sylow is not None
        if not _conjugates_match(G.table, G.inverses, sylow, sub):
            return False
    return True


def is_nilpotent_subgroup(G: FiniteGroup, H: Subgroup) -> bool:
    """True iff every Sylow subgroup of H is normal in H (equivalently, H is
    the direct product of its Sylow subgroups)."""
    sub = _require_subgroup(G, H)
    lat = _lattice(G, None if G.order <= DEFAULT_ENUMERATION_CAP else G.order)
    return _is_nilpotent_array(G, lat, sub, frozenset(map(int, sub)))


def census(G: FiniteGroup, cap: Optional[int] = None) -> SubgroupCensus:
    """Exhaustive subgroup census: total, cyclic, normal, nilpotent counts and
    the count of subgroups of each order."""
    if G._census is not None:
        _lattice(G, cap)  # still enforce the caller's cap contract
        return G._census
    lat = _lattice(G, cap)
    T = G.table
    inv = G.inverses
    orders = G.orders()
    every = np.arange(G.order, dtype=np.int32)

    total = len(lat.arrays)
    cyclic = 0
    normal = 0
    nilpotent = 0
    by_order: Counter[int] = Counter()
    for idx, sub in enumerate(lat.arrays):
        size = int(sub.size)
        by_order[size] += 1
        if int(orders[sub].max()) == size:
            cyclic += 1
        if _conjugates_match(T, inv, sub, every):
            normal += 1
        if _is_nilpotent_array(G, lat, sub, lat.keysets[idx]):
            nilpotent += 1

    result = SubgroupCensus(
        group_order=G.order,
        total=total,
        cyclic=cyclic,
        normal=normal,
        nilpotent=nilpotent,
        by_order=dict(sorted(by_order.items())),
    )
    G._census = result
    return result


def degrees(c: SubgroupCensus) -> Degrees:
    """The five degree functions of a census, as reduced exact rationals."""
    alpha = Fraction(c.cyclic, c.group_order)
    beta = Fraction(c.total, c.group_order)
    cdeg = Fraction(c.cyclic, c.total)
    ndeg = Fraction(c.normal, c.total)
    jdeg = Fraction(c.nilpotent, c.total)
    # the quotient identity holds by construction; guard against count bugs
    assert cdeg == alpha / beta
    return Degrees(alpha=alpha, beta=beta, cdeg=cdeg, ndeg=ndeg, jdeg=jdeg)


def group_degrees(G: FiniteGroup, cap: Optional[int] = None) -> Degrees:
    return degrees(census(G, cap))


def direct_product(G: FiniteGroup, H: FiniteGroup, meta=None) -> FiniteGroup:
    """Component-wise product group of order |G|*|H|; element (a, b) is
    encoded as a*|H| + b and labelled "(la,lb)"."""
    n1, n2 = G.order, H.order
    if n1 * n2 > HARD_ORDER_LIMIT:
        raise ResourceLimitError(
            f"product order {n1 * n2} exceeds the hard order limit {HARD_ORDER_LIMIT}",
            cap=HARD_ORDER_LIMIT, requested=n1 * n2)
    T1 = G.table.astype(np.int64)
    T2 = H.table.astype(np.int64)
    big = T1[:, None, :, None] * n2 + T2[None, :, None, :]
    table = big.reshape(n1 * n2, n1 * n2)
    labels = [f"({G.label(a)},{H.label(b)})" for a in range(n1) for b in range(n2)]
    return FiniteGroup(table, labels=labels, meta=meta)


# ---------------------------------------------------------------------------
# Cayley-table document format (CLI ingestion)
# ---------------------------------------------------------------------------
#
# A JSON object with fields:
#   order  : positive integer
#   table  : row-major list of `order` lists of `order` element indices
#   labels : optional list of `order` display strings

def parse_group_document(text: str) -> FiniteGroup:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TableFormatError(
            f"invalid JSON: {exc.msg}",
            location=f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise TableFormatError("document must be a JSON object", location="$")

    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise TableFormatError("must be a positive integer", location="order")

    table = doc.get("table")
    if not isinstance(table, list) or len(table) != order:
        raise TableFormatError(
            f"must be a list of {order} rows", location="table")
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != order:
            raise TableFormatError(
                f"must be a list of {order} element indices", location=f"table[{i}]")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < order:
                raise TableFormatError(
                    f"value {v!r} is not an element index in 0..{order - 1}",
                    location=f"table[{i}][{j}]")

    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != order or \
                not all(isinstance(s, str) for s in labels):
            raise TableFormatError(
                f"must be a list of {order} strings", location="labels")

    try:
        return FiniteGroup(table, labels=labels)
    except ResourceLimitError:
        raise
    except DomainError as exc:
        raise TableFormatError(str(exc), location="table") from None


def load_group(path) -> FiniteGroup:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_group_document(text)


def dump_group_document(G: FiniteGroup) -> str:
    doc = {"order": G.order, "table": G.table.tolist()}
    if G.labels is not None:
        doc["labels"] = list(G.labels)
    return json.dumps(doc, indent=2, sort_keys=True)
