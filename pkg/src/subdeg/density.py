"""Constructive density explorer: approximate any target in (0, 1] by a finite
product of (p+1)/(p+2) factors over distinct odd primes p, each factor being
the cyclicity degree of the modular group of order p^3.

The greedy scan keeps the running product at or above the target, so the error
contract is one-sided: 0 <= product - target <= epsilon on success. All
comparisons are exact; no floating point enters the decision path.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .numtheory import DEFAULT_DECIMAL_DIGITS, decimal_str, is_prime, primes_below

#: largest prime value the greedy scan will consider by default; the stop
#: bound p + 1 > 1/epsilon says how large it must be for a given epsilon
DEFAULT_PRIME_BOUND = 1_000_000


def cdeg_mp(p: int) -> Fraction:
    """Cyclicity degree (p+1)/(p+2) of the modular group of order p^3;
    defined for odd primes only."""
    if not is_prime(p) or p == 2:
        raise DomainError(f"cdeg_mp requires an odd prime, got {p}")
    return Fraction(p + 1, p + 2)


@dataclass(frozen=True)
class DensityApproximation:
    target: Fraction
    epsilon: Fraction
    primes: tuple[int, ...]
    product: Fraction
    error: Fraction
    steps: int  # primes examined by the scan (included or not)

    def __post_init__(self):
        assert self.error == self.product - self.target

    def to_dict(self, digits: int = DEFAULT_DECIMAL_DIGITS,
                exact: bool = True) -> dict:
        """Serializable report. ``exact=False`` omits the fraction strings
        (partial results at large prime bounds can exceed practical digit
        counts)."""
        out = {
            "target": str(self.target),
            "epsilon": str(self.epsilon),
            "primes": list(self.primes),
            "prime_count": len(self.primes),
            "steps": self.steps,
            "product_decimal": decimal_str(self.product, digits),
            "error_decimal": decimal_str(self.error, digits),
        }
        if exact:
            out["product"] = str(self.product)
            out["error"] = str(self.error)
        return out


def approximate(target: Fraction, epsilon: Fraction,
                prime_bound: int = DEFAULT_PRIME_BOUND) -> DensityApproximation:
    """Greedy construction: scan odd primes in increasing order, keep p iff the
    product stays >= target, stop once product - target <= epsilon.

    Termination for an unbounded prime stream: whenever a prime p gets
    excluded, product < target*(p+2)/(p+1), so the gap is below target/(p+1);
    once p + 1 > 1/epsilon the scan is done. ``prime_bound`` caps the prime
    VALUES considered; exhausting it raises ResourceLimitError carrying the
    best approximation so far in ``partial``.
    """
    target = Fraction(target)
    epsilon = Fraction(epsilon)
    if not 0 < target <= 1:
        raise DomainError(f"target must lie in (0, 1], got {target}")
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon}")

    product = Fraction(1)
    included: list[int] = []
    steps = 0
    if product - target > epsilon:
        for p in primes_below(prime_bound):
            if p == 2:
                continue
            steps += 1
            candidate = product * Fraction(p + 1, p + 2)
            if candidate >= target:
                product = candidate
                included.append(p)
            if product - target <= epsilon:
                break
        else:
            best = DensityApproximation(
                target=target, epsilon=epsilon, primes=tuple(included),
                product=product, error=product - target, steps=steps)
            raise ResourceLimitError(
                f"prime bound {prime_bound} exhausted after {steps} primes;"
                f" best error {float(best.error):.6g} > epsilon {float(epsilon):.6g}",
                cap=prime_bound, partial=best)
    return DensityApproximation(
        target=target, epsilon=epsilon, primes=tuple(included),
        product=product, error=product - target, steps=steps)


def log_divergence_partial(n_terms: int, digits: int = 30,
                           ) -> list[tuple[Fraction, Decimal]]:
    """Diagnostics behind the density argument: for N = 1..n_terms, the exact
    partial product of (p+1)/(p+2) over the first N odd primes, paired with
    the partial sum of ln((p+2)/(p+1)) at ``digits`` decimal precision.

    The sums grow strictly (every term is the log of a ratio above 1), which
    is the testable content; divergence itself is asymptotic.
    """
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    # upper bound on the n-th odd prime value, grown on demand
    bound = 64
    odd_primes: list[int] = []
    while len(odd_primes) < n_terms:
        bound *= 4
        odd_primes = [p for p in primes_below(bound) if p != 2]
    odd_primes = odd_primes[:n_terms]

    out = []
    product = Fraction(1)
    with localcontext() as ctx:
        ctx.prec = digits
        total = Decimal(0)
        for p in odd_primes:
            product *= Fraction(p + 1, p + 2)
            total += (Decimal(p + 2) / Decimal(p + 1)).ln()
            out.append((product, total))
    return out
