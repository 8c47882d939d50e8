"""Independent brute-force oracles used only by the tests.

Everything here is deliberately naive (sets, dicts, plain loops) and shares no
code with the package, so a bug would have to appear twice to go unnoticed.
"""

from fractions import Fraction
from itertools import product
from math import gcd, isqrt


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def tau_oracle(n):
    return len(divisors(n))


def sigma_oracle(n):
    return sum(divisors(n))


def phi_oracle(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def primes_oracle(count):
    out = []
    candidate = 2
    while len(out) < count:
        if all(candidate % p for p in range(2, isqrt(candidate) + 1)):
            out.append(candidate)
        candidate += 1
    return out


def subspace_count_oracle(n, k, q):
    """Number of k-dimensional subspaces of F_q^n by enumerating spans of all
    k-tuples of vectors. Feasible for q^n up to a few hundred."""
    vectors = list(product(range(q), repeat=n))

    def add(u, v):
        return tuple((a + b) % q for a, b in zip(u, v))

    def scale(c, u):
        return tuple((c * a) % q for a in u)

    def span(gens):
        out = {tuple([0] * n)}
        for g in gens:
            current = list(out)
            for c in range(1, q):
                cg = scale(c, g)
                for v in current:
                    out.add(add(v, cg))
        # iterate to a fixpoint (sums of the newly added multiples)
        changed = True
        while changed:
            changed = False
            items = list(out)
            for u in items:
                for v in items:
                    w = add(u, v)
                    if w not in out:
                        out.add(w)
                        changed = True
        return frozenset(out)

    spans = {span(gens) for gens in product(vectors, repeat=k)}
    return sum(1 for s in spans if len(s) == q**k)


# -- tiny group tables, written independently of the package constructors ----

def cyclic_table(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def direct_table(t1, t2):
    n1, n2 = len(t1), len(t2)
    size = n1 * n2
    out = [[0] * size for _ in range(size)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    out[a1 * n2 + a2][b1 * n2 + b2] = t1[a1][b1] * n2 + t2[a2][b2]
    return out


def dicyclic_table(k):
    n = 4 * k
    out = [[0] * n for _ in range(n)]
    for i in range(2 * k):
        for j in range(2):
            for l in range(2 * k):
                for m in range(2):
                    if j == 0:
                        ii, jj = (i + l) % (2 * k), m
                    else:
                        ii, jj = (i - l) % (2 * k), 1 + m
                        if jj == 2:
                            ii, jj = (ii + k) % (2 * k), 0
                    out[i * 2 + j][l * 2 + m] = ii * 2 + jj
    return out


def metacyclic_table(m, k, t):
    assert pow(t, k, m) == 1 % m
    size = m * k
    out = [[0] * size for _ in range(size)]
    for a in range(m):
        for b in range(k):
            tb = pow(t, b, m)
            for c in range(m):
                for d in range(k):
                    out[a * k + b][c * k + d] = ((a + tb * c) % m) * k + (b + d) % k
    return out


def census_oracle(table):
    """Complete subgroup census of a small Cayley table by breadth-first
    closure over plain frozensets."""
    n = len(table)
    identity = next(i for i in range(n)
                    if all(table[i][j] == j == table[j][i] for j in range(n)))
    inverse = [next(j for j in range(n) if table[i][j] == identity)
               for i in range(n)]

    def close(seed):
        elems = set(seed)
        frontier = list(elems)
        while frontier:
            fresh = []
            current = list(elems)
            for a in frontier:
                for b in current:
                    for x in (table[a][b], table[b][a]):
                        if x not in elems:
                            elems.add(x)
                            fresh.append(x)
            frontier = fresh
        return frozenset(elems)

    subgroups = set()
    queue = []
    for g in range(n):
        h = close({identity, g})
        if h not in subgroups:
            subgroups.add(h)
            queue.append(h)
    qi = 0
    while qi < len(queue):
        H = queue[qi]
        qi += 1
        for g in range(n):
            if g not in H:
                K = close(H | {g})
                if K not in subgroups:
                    subgroups.add(K)
                    queue.append(K)

    def elem_order(g):
        k, x = 1, g
        while x != identity:
            x = table[x][g]
            k += 1
        return k

    orders = [elem_order(g) for g in range(n)]

    def conjugate(S, g):
        return frozenset(table[table[g][s]][inverse[g]] for s in S)

    def is_normal_in(S, within):
        return all(conjugate(S, g) == S for g in within)

    def prime_power_parts(size):
        parts = {}
        rest = size
        f = 2
        while f * f <= rest:
            while rest % f == 0:
                parts[f] = parts.get(f, 0) + 1
                rest //= f
            f += 1
        if rest > 1:
            parts[rest] = parts.get(rest, 0) + 1
        return parts

    def is_nilpotent(H):
        parts = prime_power_parts(len(H))
        if len(parts) <= 1:
            return True
        for p, e in parts.items():
            sylow = next(S for S in subgroups if len(S) == p**e and S <= H)
            if not is_normal_in(sylow, H):
                return False
        return True

    total = len(subgroups)
    cyclic = sum(1 for H in subgroups if max(orders[h] for h in H) == len(H))
    normal = sum(1 for H in subgroups if is_normal_in(H, range(n)))
    nilpotent = sum(1 for H in subgroups if is_nilpotent(H))
    by_order = {}
    for H in subgroups:
        by_order[len(H)] = by_order.get(len(H), 0) + 1
    return {
        "order": n,
        "total": total,
        "cyclic": cyclic,
        "normal": normal,
        "nilpotent": nilpotent,
        "by_order": dict(sorted(by_order.items())),
        "alpha": Fraction(cyclic, n),
        "beta": Fraction(total, n),
        "cdeg": Fraction(cyclic, total),
        "ndeg": Fraction(normal, total),
        "jdeg": Fraction(nilpotent, total),
    }
