"""
Integer factorization on top of sympy's factorint: trial division up to a bound, then rho and friends.
"""
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict
from sympy import divisors, factorint, isprime

from ..config import settings
from ..exceptions import Zero


class Factorization(BaseModel):
    """Signed prime factorization; primes ascending, exponents >= 1."""

    model_config = ConfigDict(frozen=True)

    sign: int
    prime_powers: Tuple[Tuple[int, int], ...]

    def value(self) -> int:
        result = self.sign
        for prime, exponent in self.prime_powers:
            result *= prime ** exponent
        return result

    def exponent(self, prime: int) -> int:
        for q, e in self.prime_powers:
            if q == prime:
                return e
        return 0

    def __str__(self) -> str:
        body = " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.prime_powers) or "1"
        return body if self.sign > 0 else f"-({body})"


def is_probable_prime(n: int) -> bool:
    """sympy's isprime: deterministic Miller-Rabin below 2^64, strong BPSW beyond."""
    return n >= 2 and bool(isprime(n))


@lru_cache(maxsize=65536)
def _factorize_positive(n: int, trial_bound: int) -> Tuple[Tuple[int, int], ...]:
    found: Dict[int, int] = {}
    # limit stops factorint after trial division; leftover keys may be composite
    for factor, exponent in factorint(n, limit=trial_bound).items():
        factor = int(factor)
        if is_probable_prime(factor):
            found[factor] = found.get(factor, 0) + int(exponent)
            continue
        for q, e in factorint(factor).items():
            found[int(q)] = found.get(int(q), 0) + int(e) * int(exponent)
    return tuple(sorted(found.items()))


def factorize(N: int, trial_bound: Optional[int] = None) -> Factorization:
    """Complete prime factorization of a nonzero integer."""
    if N == 0:
        raise Zero("cannot factor 0")
    if trial_bound is None:
        trial_bound = settings.trial_division_bound
    return Factorization(sign=1 if N > 0 else -1, prime_powers=_factorize_positive(abs(N), trial_bound))


def divisors_with_power(N: int, k: int) -> List[int]:
    """All c >= 1 with c^k dividing N, ascending."""
    if N == 0:
        raise Zero("every integer power divides 0")
    core = 1
    for prime, exponent in factorize(N).prime_powers:
        core *= prime ** (exponent // k)
    return [int(c) for c in divisors(core)]
