"""Integer bookkeeping: non-divisors and the two-cycle winding decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoPlan


def smallest_nondivisor(length: int) -> int:
    """Least ``k >= 3`` that does not divide ``length``."""
    if length < 1:
        raise ValueError(f"length must be positive, got {length}")
    k = 3
    while length % k == 0:
        k += 1
    return k


def is_prime_power(k: int) -> bool:
    if k < 2:
        return False
    p = 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            return k == 1
        p += 1
    return True


@dataclass(frozen=True)
class WindingPlan:
    """``length = r*(t+2) + (a-r)*(t+1)``: r laps of the long cycle, a-r of the short."""

    length: int
    t: int
    a: int
    r: int

    @property
    def short_laps(self) -> int:
        return self.a - self.r

    @property
    def long_laps(self) -> int:
        return self.r


def winding_plan(length: int, t: int) -> WindingPlan:
    """Write ``length = a(t+1) + r`` with ``a = length // (t+1)``.

    Raises NoPlan when ``r > a``: there are then too few short laps to
    absorb the remainder as long laps.
    """
    if t < 1:
        raise ValueError(f"t must be at least 1, got {t}")
    a, r = divmod(length, t + 1)
    if r > a:
        raise NoPlan(f"length {length} with t={t}: remainder {r} exceeds {a} laps")
    return WindingPlan(length, t, a, r)
