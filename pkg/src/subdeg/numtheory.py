"""Exact arithmetic groundwork: divisor functions, primes, q-binomials, and
the subgroup-count coefficients used by the closed-form catalog.

Every degree value in this package is an ``ExactRational`` (an alias of
``fractions.Fraction``): always reduced, positive denominator, value-ordered.
Decimal strings are a presentation concern only; see :func:`decimal_str`.
"""

from __future__ import annotations

import threading
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt

from .errors import DomainError, ResourceLimitError

ExactRational = Fraction

#: default significant digits used when rendering exact values as decimals
DEFAULT_DECIMAL_DIGITS = 12

#: hard ceiling for the prime sieve (largest prime value ever sieved)
DEFAULT_SIEVE_CAP = 10_000_000


def _check_positive(n: int, name: str = "n") -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")
    return n


def is_prime(n: int) -> bool:
    if not isinstance(n, int) or n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {p: exponent} by trial division. n >= 1."""
    _check_positive(n)
    out: dict[int, int] = {}
    while n % 2 == 0:
        out[2] = out.get(2, 0) + 1
        n //= 2
    f = 3
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def tau(n: int) -> int:
    """Number of divisors. Multiplicative; tau(q^k) = k+1 for prime q."""
    _check_positive(n)
    t = 1
    for e in factorize(n).values():
        t *= e + 1
    return t


def sigma(n: int) -> int:
    """Sum of divisors. Multiplicative; sigma(p^k) = (p^(k+1)-1)/(p-1)."""
    _check_positive(n)
    s = 1
    for p, e in factorize(n).items():
        s *= (p ** (e + 1) - 1) // (p - 1)
    return s


def phi(n: int) -> int:
    """Euler totient. phi(p) = p-1 for prime p."""
    _check_positive(n)
    t = n
    for p in factorize(n):
        t -= t // p
    return t


class PrimeSieve:
    """Growable Eratosthenes sieve with a hard value cap.

    The shared module-level instance memoizes behind a lock so concurrent
    callers see one deterministic prime sequence.
    """

    def __init__(self, cap: int = DEFAULT_SIEVE_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._limit = 0
        self._primes: list[int] = []

    def _grow_to(self, limit: int) -> None:
        # caller holds the lock
        if limit > self.cap:
            raise ResourceLimitError(
                f"prime sieve limit {limit} exceeds the configured cap {self.cap}",
                cap=self.cap,
                requested=limit,
            )
        if limit <= self._limit:
            return
        flags = bytearray([1]) * limit
        flags[0:2] = b"\x00\x00"
        for i in range(2, isqrt(limit - 1) + 1):
            if flags[i]:
                flags[i * i :: i] = b"\x00" * len(flags[i * i :: i])
        self._primes = [i for i in range(limit) if flags[i]]
        self._limit = limit

    def nth(self, i: int) -> int:
        """The i-th prime, 1-based: nth(1) = 2."""
        _check_positive(i, "i")
        with self._lock:
            limit = max(self._limit, 1024)
            while len(self._primes) < i:
                if limit >= self.cap:
                    raise ResourceLimitError(
                        f"prime index {i} needs primes beyond the sieve cap {self.cap}"
                        f" (only {len(self._primes)} primes below it)",
                        cap=self.cap,
                        requested=i,
                    )
                limit = min(limit * 2, self.cap)
                self._grow_to(limit)
            return self._primes[i - 1]

    def below(self, bound: int) -> list[int]:
        """All primes p < bound, ascending. bound must respect the cap."""
        _check_positive(bound, "bound")
        with self._lock:
            self._grow_to(bound)
            # self._limit >= bound, so slice by value
            primes = self._primes
        # bisect not worth importing for a tail scan; primes are dense enough
        out = []
        for p in primes:
            if p >= bound:
                break
            out.append(p)
        return out


_SIEVE = PrimeSieve()


def nth_prime(i: int) -> int:
    """The i-th prime (nth_prime(1) = 2), from the shared sieve."""
    return _SIEVE.nth(i)


def primes_below(bound: int) -> list[int]:
    """All primes < bound from the shared sieve (bound capped at the sieve cap)."""
    return _SIEVE.below(bound)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """The q-binomial coefficient: number of k-dimensional subspaces of an
    n-dimensional space over the field with q elements. 0 when k > n."""
    if q < 2:
        raise DomainError(f"q must be >= 2, got {q}")
    if k < 0 or n < 0:
        raise DomainError(f"n and k must be nonnegative, got n={n}, k={k}")
    if k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def elem_abelian_subgroup_count(alpha: int, p: int) -> int:
    """Total number of subgroups of the elementary abelian group of rank
    ``alpha`` over the prime ``p`` (sum of q-binomials over all ranks).

    ``alpha = -1`` returns 0: the extension convention required so the
    ``b_coeff`` formula evaluates at every n >= 0.
    """
    if not is_prime(p):
        raise DomainError(f"p must be prime, got {p}")
    if alpha < -1:
        raise DomainError(f"alpha must be >= -1, got {alpha}")
    if alpha == -1:
        return 0
    return sum(gaussian_binomial(alpha, k, p) for k in range(alpha + 1))


def b_coeff(n: int) -> int:
    """Subgroup-count coefficient of the Hamiltonian family: the lattice of
    Q8 x C2^n x A has exactly ``b_coeff(n) * |L(A)|`` subgroups for any
    abelian A of odd order.

    Empty sums (n < 2) contribute 0, and the rank -1 count is 0; both are
    pinned by the oracle values b(0) = |L(Q8)| = 6 and b(1) = |L(Q8xC2)| = 19.
    """
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    a = lambda r: elem_abelian_subgroup_count(r, 2)  # noqa: E731
    total = 2 ** (n + 2) + 1
    total += 8 * sum(
        (2 ** (n - r) - 2 ** (2 * r + 1) + 2**r) * a(r) for r in range(0, n - 1)
    )
    total += 2 ** (n + 2) * a(n - 1)
    total += a(n)
    return total


def parse_exact(text: str) -> Fraction:
    """Parse an exact rational from 'a/b', integer, or decimal notation.

    Decimal strings are parsed exactly ('0.8' -> 4/5); no float rounding is
    ever involved.
    """
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not an exact rational: {text!r} ({exc})") from None


def decimal_str(value: Fraction, digits: int = DEFAULT_DECIMAL_DIGITS) -> str:
    """Render an exact rational to ``digits`` significant digits.

    Presentation only; correctly rounded via decimal division at the target
    precision.
    """
    _check_positive(digits, "digits")
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    return str(d)
