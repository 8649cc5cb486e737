"""Counting bounds: descent-constrained Dyck words, gamma_d certificates, gbar_k.

Everything is exact (integers and fractions); floats only appear in
reporting helpers, always rounded in the safe direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from .errors import ContractError

Rational = Fraction | int


def _frac(x) -> Fraction:
    # Fraction(str) keeps decimal literals like "1.27575" exact
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def phi(d: int, x) -> Fraction:
    """1 + x**d / (1 - x), the weight series of ascent steps, for 0 < x < 1."""
    x = _frac(x)
    if not 0 < x < 1:
        raise ContractError(f"x must lie in (0, 1), got {x}")
    return 1 + x**d / (1 - x)


def tau_polynomial(d: int, x) -> Fraction:
    """(1-x)^2 + (1-d) x^d + (d-2) x^(d+1); its root in (0,1) minimises phi(x)/x."""
    x = _frac(x)
    return (1 - x) ** 2 + (1 - d) * x**d + (d - 2) * x ** (d + 1)


def _initial_bracket(d: int) -> tuple[Fraction, Fraction]:
    lo, hi = Fraction(1, d), 1 - Fraction(1, d * d)
    if tau_polynomial(d, lo) >= 0 and tau_polynomial(d, hi) < 0:
        return lo, hi
    eps = Fraction(1, 10**6)
    return eps, 1 - eps


def tau_root(d: int, eps=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Exact bracket [lo, hi] of width <= eps around the root of ``tau_polynomial`` in (0, 1).

    P(lo) >= 0 >= P(hi); a degenerate bracket means the root was hit exactly.
    """
    if d < 2:
        raise ContractError(f"d must be >= 2, got {d}")
    eps = _frac(eps)
    if eps <= 0:
        raise ContractError("eps must be positive")
    lo, hi = _initial_bracket(d)
    if tau_polynomial(d, lo) == 0:
        return lo, lo
    while hi - lo > eps:
        mid = (lo + hi) / 2
        val = tau_polynomial(d, mid)
        if val == 0:
            return mid, mid
        if val > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _ratio(d: int, x: Fraction) -> Fraction:
    return phi(d, x) / x


@dataclass(frozen=True)
class GammaBound:
    """Exact bounds lower <= gamma_d <= upper.

    ``upper`` is phi_d(x*)/x* at the rational ``x_star``. Since phi_d(x)/x
    decreases before the root and increases after it, its minimum is at least
    phi_d(tau_lo)/tau_hi, which is ``lower``.
    """

    d: int
    tau_lo: Fraction
    tau_hi: Fraction
    x_star: Fraction
    upper: Fraction
    lower: Fraction

    @property
    def width(self) -> Fraction:
        return self.tau_hi - self.tau_lo

    def certifies(self, claim) -> bool:
        """True when gamma_d <= claim follows exactly from this bound."""
        return self.upper <= _frac(claim)

    def refutes(self, claim) -> bool:
        """True when gamma_d > claim follows exactly from this bound."""
        return self.lower > _frac(claim)

    def upper_decimal(self, places: int = 5) -> Decimal:
        return round_rational(self.upper, places, up=True)

    def lower_decimal(self, places: int = 5) -> Decimal:
        return round_rational(self.lower, places, up=False)


def gamma_upper(d: int, eps=Fraction(1, 10**12)) -> GammaBound:
    """Certified rational upper bound on gamma_d = min over (0,1) of phi_d(x)/x.

    phi_d(x)/x tends to infinity at both ends of (0, 1) and its only stationary
    point is the root of ``tau_polynomial``, so its value at any rational point
    bounds the minimum from above. The bracket is refined until the value at
    the midpoint is within eps of the values at both bracket ends.
    """
    eps = _frac(eps)
    width = Fraction(1, 2**20)
    while True:
        lo, hi = tau_root(d, width)
        x = (lo + hi) / 2
        u = _ratio(d, x)
        if lo == hi or (abs(_ratio(d, lo) - u) <= eps and abs(_ratio(d, hi) - u) <= eps):
            return GammaBound(d, lo, hi, x, u, min(u, phi(d, lo) / hi))
        width /= 2**16


def round_rational(x: Rational, places: int, up: bool) -> Decimal:
    """Decimal with ``places`` digits after the point, rounded up or down exactly."""
    x = Fraction(x)
    scale = 10**places
    n = x.numerator * scale
    v = -((-n) // x.denominator) if up else n // x.denominator
    with localcontext() as ctx:
        ctx.prec = 200
        return Decimal(v).scaleb(-places)


# -- closed-form bound on g_k ----------------------------------------------------


def gbar_core(k: int, ell: int) -> Fraction:
    """(ell // 2) ** (k - 1) / (k - 1)!, the quantity whose ell-th root is gbar_k(ell)."""
    if k < 2 or ell < 2:
        raise ContractError(f"need k >= 2 and ell >= 2, got k={k}, ell={ell}")
    return Fraction((ell // 2) ** (k - 1), math.factorial(k - 1))


def root_upper(x: Rational, n: int, places: int = 12) -> Decimal:
    """Smallest decimal with ``places`` digits whose n-th power is >= x."""
    return _root_bound(Fraction(x), n, places, up=True)


def root_lower(x: Rational, n: int, places: int = 12) -> Decimal:
    """Largest decimal with ``places`` digits whose n-th power is <= x."""
    return _root_bound(Fraction(x), n, places, up=False)


def _root_bound(x: Fraction, n: int, places: int, up: bool) -> Decimal:
    if x < 0 or n < 1:
        raise ContractError("root of a negative number or non-positive degree")
    scale = 10**places
    # integer r with (r/scale)^n compared exactly against x
    guess = int(float(x) ** (1.0 / n) * scale) if x else 0
    r = max(guess - 2, 0)

    def above(v: int) -> bool:
        return Fraction(v, scale) ** n >= x

    if up:
        while r > 0 and above(r - 1):
            r -= 1
        while not above(r):
            r += 1
    else:
        r += 4
        while Fraction(r, scale) ** n > x:
            r -= 1
        while Fraction(r + 1, scale) ** n <= x:
            r += 1
    with localcontext() as ctx:
        ctx.prec = 200
        return Decimal(r).scaleb(-places)


def gbar(k: int, ell: int, places: int = 12) -> Decimal:
    """gbar_k(ell) rounded up to ``places`` decimals (an upper bound)."""
    return root_upper(gbar_core(k, ell), ell, places)


def gbar_below(k: int, ell: int, bound) -> bool:
    """Exact test gbar_k(ell) < bound."""
    return gbar_core(k, ell) < _frac(bound) ** ell


def gbar_le(k1: int, ell1: int, k2: int, ell2: int) -> bool:
    """Exact test gbar_k1(ell1) <= gbar_k2(ell2)."""
    return gbar_core(k1, ell1) ** ell2 <= gbar_core(k2, ell2) ** ell1


# -- descent-constrained Dyck words ------------------------------------------------


def _check_dyck_args(t: int, d: int) -> None:
    if t < 0:
        raise ContractError(f"t must be >= 0, got {t}")
    if d < 1:
        raise ContractError(f"d must be >= 1, got {d}")


def _dyck_rows(t_max: int, d: int):
    """Yield, for z = 0..t_max, the row ``total[o]`` of valid words with z zeros and o ones.

    Words are built from alternating blocks: runs of 0's (any length >= 1)
    and runs of 1's (length >= d), never dipping below height 0. ``ends0[o]``
    counts words ending with a 0, ``ends1[o]`` words that are empty or end with
    a complete run of 1's.
    """
    prev0: list[int] = []
    prev1: list[int] = []
    for z in range(t_max + 1):
        ends0 = [0] * (z + 1)
        for o in range(z):
            ends0[o] = (prev0[o] if o < len(prev0) else 0) + (prev1[o] if o < len(prev1) else 0)
        # prefix sums of ends0 to close a run of >= d ones in O(1)
        acc = [0] * (z + 2)
        for o in range(z + 1):
            acc[o + 1] = acc[o] + ends0[o]
        ends1 = [0] * (z + 1)
        if z == 0:
            ends1[0] = 1
        for o in range(d, z + 1):
            ends1[o] = acc[o - d + 1]
        yield z, [a + b for a, b in zip(ends0, ends1)]
        prev0, prev1 = ends0, ends1


def partial_dyck_count(t: int, r: int, d: int) -> int:
    """Words with t 0's and t-r 1's, every prefix has #0 >= #1, every run of 1's has length >= d."""
    _check_dyck_args(t, d)
    if not 0 <= r <= t:
        raise ContractError(f"need 0 <= r <= t, got r={r}, t={t}")
    return _partial_dyck_row(t, d)[t - r]


@lru_cache(maxsize=64)
def _partial_dyck_row(t: int, d: int) -> tuple[int, ...]:
    row: list[int] = []
    for _, row in _dyck_rows(t, d):
        pass
    return tuple(row)


def dyck_count(t: int, d: int) -> int:
    """Dyck words of length 2t whose descents all have length >= d."""
    return partial_dyck_count(t, 0, d)


def dyck_counts(t_max: int, d: int) -> list[int]:
    """[C_{0,d}, C_{1,d}, ..., C_{t_max,d}] in one pass."""
    _check_dyck_args(t_max, d)
    return [row[z] for z, row in _dyck_rows(t_max, d)]


def dyck_ratio(t: int, d: int, places: int = 12) -> tuple[Decimal, Decimal]:
    """Decimal bracket [lo, hi] around C_{t+1,d} / C_{t,d}."""
    counts = dyck_counts(t + 1, d)
    x = Fraction(counts[t + 1], counts[t])
    return round_rational(x, places, up=False), round_rational(x, places, up=True)

