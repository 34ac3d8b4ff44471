"""Lower bounds on single-erasure repair bandwidth of RS codes.

Node i contributes b_i subsymbols and a repair scheme must satisfy
sum_i q^(-b_i) <= T with T = ((r-1)(q^ell-1) + (n-1)) / q^ell.  Relaxing b_i to
reals gives the fractional bound (n-1) * b_ave with b_ave = log_q((n-1)/T);
keeping b_i integral forces a mix of floor(b_ave) and ceil(b_ave) downloads.

Every comparison is done in exact integer/rational arithmetic; floats are only
produced for display.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "BoundError",
    "BoundReport",
    "integral_lower_bound",
    "optimal_profile",
    "brute_force_minimum",
    "is_feasible",
    "fractional_bound_bits_ceil",
]


class BoundError(ValueError):
    pass


def _prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _validate(q: int, ell: int, n: int, r: int) -> None:
    for name, v in (("q", q), ("ell", ell), ("n", n), ("r", r)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise BoundError(f"{name} must be an integer, got {v!r}")
    if not _prime_power(q):
        raise BoundError(f"q={q} is not a prime power")
    if ell < 1:
        raise BoundError(f"ell must be >= 1, got {ell}")
    if not 2 <= n <= q**ell:
        raise BoundError(f"need 2 <= n <= q^ell = {q**ell}, got n={n}")
    if not 1 <= r < n:
        raise BoundError(f"need 1 <= r < n, got r={r}, n={n}")


def _budget(q: int, ell: int, n: int, r: int) -> int:
    """T * q^ell, an integer."""
    return (r - 1) * (q**ell - 1) + (n - 1)


def is_feasible(q: int, ell: int, n: int, r: int, profile) -> bool:
    """sum q^(-b_i) <= T, checked as sum q^(ell-b_i) <= T q^ell."""
    if len(profile) != n - 1 or any(not 0 <= b <= ell for b in profile):
        return False
    return sum(q ** (ell - b) for b in profile) <= _budget(q, ell, n, r)


def _floor_log(q: int, x: Fraction) -> int:
    """Largest integer b with q^b <= x, for x >= 1."""
    b = 0
    while q ** (b + 1) <= x:
        b += 1
    return b


def fractional_bound_bits_ceil(q: int, ell: int, n: int, r: int) -> int:
    """Smallest integer B with B >= (n-1) log2((n-1)/T), decided exactly."""
    _validate(q, ell, n, r)
    x = Fraction((n - 1) * q**ell, _budget(q, ell, n, r)) ** (n - 1)
    B = max(0, math.floor((n - 1) * math.log2((n - 1) * q**ell / _budget(q, ell, n, r))) - 1)
    while 2**B < x:
        B += 1
    while B > 0 and 2 ** (B - 1) >= x:
        B -= 1
    return B


@dataclass(frozen=True)
class BoundReport:
    q: int
    ell: int
    n: int
    r: int
    T: Fraction
    b_ave: float
    b_ave_integral: bool
    t: int
    integral_bound_subsymbols: int
    fractional_bound_subsymbols: float
    fractional_bits_ceil: int
    bits_per_subsymbol: float
    per_node_profile: tuple[int, ...]

    @property
    def integral_bound_bits(self) -> float:
        return self.integral_bound_subsymbols * self.bits_per_subsymbol

    @property
    def fractional_bound_bits(self) -> float:
        return self.fractional_bound_subsymbols * self.bits_per_subsymbol

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "ell": self.ell,
            "n": self.n,
            "r": self.r,
            "T": f"{self.T.numerator}/{self.T.denominator}",
            "b_ave": self.b_ave,
            "b_ave_integral": self.b_ave_integral,
            "t": self.t,
            "bound_subsymbols": self.integral_bound_subsymbols,
            "bound_bits": self.integral_bound_bits,
            "fractional_subsymbols": self.fractional_bound_subsymbols,
            "fractional_bits": self.fractional_bound_bits,
            "fractional_bits_at_least": self.fractional_bits_ceil,
            "profile": list(self.per_node_profile),
        }


def integral_lower_bound(q: int, ell: int, n: int, r: int) -> BoundReport:
    """Minimum total download over integral profiles, in closed form."""
    _validate(q, ell, n, r)
    Q = q**ell
    budget = _budget(q, ell, n, r)
    T = Fraction(budget, Q)
    ratio = Fraction(n - 1) / T  # q^b_ave, lies in (1, q^ell]
    f = _floor_log(q, ratio)
    integral = ratio == q**f
    if integral:
        c = f
        t = n - 1
    else:
        c = f + 1
        # t nodes at floor(b_ave), the rest at ceil(b_ave)
        num = T - Fraction(n - 1, q**c)
        den = Fraction(1, q**f) - Fraction(1, q**c)
        t = math.floor(num / den)
    bound = t * f + (n - 1 - t) * c
    profile = (f,) * t + (c,) * (n - 1 - t)
    if not is_feasible(q, ell, n, r, profile):
        raise AssertionError(f"closed-form profile infeasible for {(q, ell, n, r)}")
    b_ave = math.log(float(ratio), q)
    if integral:
        b_ave = float(f)
    frac = (n - 1) * b_ave
    return BoundReport(
        q,
        ell,
        n,
        r,
        T,
        b_ave,
        integral,
        t,
        bound,
        frac,
        fractional_bound_bits_ceil(q, ell, n, r),
        math.log2(q),
        profile,
    )


def optimal_profile(q: int, ell: int, n: int, r: int) -> list[int]:
    """Per-node download sizes attaining the integral bound."""
    return list(integral_lower_bound(q, ell, n, r).per_node_profile)


def brute_force_minimum(q: int, ell: int, n: int, r: int, full_product: bool = False):
    """Minimum of sum b_i over b in {0..ell}^(n-1) with sum q^(-b_i) <= T.

    The constraint and objective are symmetric, so multisets suffice; pass
    full_product=True to walk the whole product space instead.  Returns
    (minimum, one minimizing profile sorted ascending).
    """
    _validate(q, ell, n, r)
    budget = _budget(q, ell, n, r)
    weight = [q ** (ell - b) for b in range(ell + 1)]
    it = (
        itertools.product(range(ell + 1), repeat=n - 1)
        if full_product
        else itertools.combinations_with_replacement(range(ell + 1), n - 1)
    )
    best = None
    arg = None
    for prof in it:
        if sum(weight[b] for b in prof) <= budget:
            s = sum(prof)
            if best is None or s < best:
                best, arg = s, tuple(sorted(prof))
    return best, arg
