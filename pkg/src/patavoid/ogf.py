"""Truncated power series and the sweep over 4-variable multiplicity tuples.

For multiplicities (a_1, ..., a_k) the series
prod_i x^a_i / (1 - x^a_i) has coefficient b_l equal to the number of
length tuples (l_1, ..., l_k), l_i >= 1, with sum a_i l_i = l.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from ._backend import g4_sweep_table
from .errors import ContractError


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact integer coefficients c_0 .. c_order."""

    coefficients: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_multiply(self, other)

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int], order: int) -> TruncatedSeries:
        coeffs = [int(c) for c in coefficients[: order + 1]]
        coeffs += [0] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_coefficients([1], order)

    @classmethod
    def geometric(cls, a: int, order: int) -> TruncatedSeries:
        """x^a / (1 - x^a) = x^a + x^2a + ..."""
        if a < 1:
            raise ContractError(f"exponent must be >= 1, got {a}")
        return cls(tuple(1 if n and n % a == 0 else 0 for n in range(order + 1)))


def series_multiply(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    if s1.order != s2.order:
        raise ContractError(f"order mismatch: {s1.order} vs {s2.order}")
    c1, c2 = s1.coefficients, s2.coefficients
    out = [0] * (s1.order + 1)
    for i, x in enumerate(c1):
        if x:
            for j in range(s1.order + 1 - i):
                out[i + j] += x * c2[j]
    return TruncatedSeries(tuple(out))


def _check_multiplicities(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if not a or min(a) < 1:
        raise ContractError(f"multiplicities must be positive, got {a}")
    return a


def pattern_ogf(a: Sequence[int], order: int = 100) -> TruncatedSeries:
    """prod_i x^a_i / (1 - x^a_i) truncated after x^order."""
    a = _check_multiplicities(a)
    if order < sum(a):
        raise ContractError(f"order {order} < sum of multiplicities {sum(a)}: every coefficient would be 0")
    coeffs = [1] + [0] * order
    for ai in a:
        # multiply by x^ai / (1 - x^ai): out[n] = coeffs[n - ai] + out[n - ai]
        out = [0] * (order + 1)
        for n in range(ai, order + 1):
            out[n] = coeffs[n - ai] + out[n - ai]
        coeffs = out
    return TruncatedSeries(tuple(coeffs))


def h_bruteforce(a: Sequence[int], ell: int) -> int:
    """Count tuples (l_i >= 1) with sum a_i * l_i == ell by nested enumeration."""
    a = _check_multiplicities(a)
    count = 0
    stack = [(0, ell)]
    while stack:
        i, rest = stack.pop()
        if i == len(a) - 1:
            count += rest >= a[i] and rest % a[i] == 0
            continue
        tail = sum(a[i + 1:])
        for li in range(1, (rest - tail) // a[i] + 1):
            stack.append((i + 1, rest - a[i] * li))
    return count


# -- sweep -------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    size: int
    multiset: tuple[int, int, int, int]
    ell: int
    b: int

    @property
    def value(self) -> float:
        return self.b ** (1 / self.ell) if self.b else 0.0

    def beats(self, other: SweepRow) -> bool:
        """Exact b^(1/ell) comparison, ties broken by size, multiset, then ell."""
        left, right = self.b**other.ell, other.b**self.ell
        if left != right:
            return left > right
        return (self.size, self.multiset, self.ell) < (other.size, other.multiset, other.ell)


@dataclass(frozen=True)
class SweepReport:
    """Best multiset per (|p|, ell) cell, and the overall argmax of b_ell^(1/ell)."""

    len_min: int
    len_max: int
    order: int
    best: SweepRow
    table: tuple[SweepRow, ...]

    @property
    def max_value(self) -> float:
        return self.best.value

    @property
    def argmax(self) -> tuple[int, tuple[int, int, int, int], int]:
        return self.best.size, self.best.multiset, self.best.ell

    def max_value_bracket(self, places: int = 12):
        from .bounds import root_lower, root_upper

        return root_lower(self.best.b, self.best.ell, places), root_upper(self.best.b, self.best.ell, places)

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["size", "multiset", "ell", "b", "root"])
        for row in self.table:
            out.writerow([row.size, " ".join(map(str, row.multiset)), row.ell, row.b, f"{row.value:.12f}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "len_min": self.len_min,
            "len_max": self.len_max,
            "order": self.order,
            "argmax": {"size": self.best.size, "multiset": list(self.best.multiset), "ell": self.best.ell},
            "b": self.best.b,
            "max_value": self.best.value,
            "table": [[r.size, list(r.multiset), r.ell, r.b] for r in self.table],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _sweep_chunk(args):
    return g4_sweep_table(*args)


def g4_sweep(
    len_min: int = 24,
    len_max: int = 99,
    order: int = 100,
    *,
    size_min: int | None = None,
    size_max: int | None = None,
    jobs: int = 1,
) -> SweepReport:
    """Maximise b_ell^(1/ell) over multisets a_1 <= ... <= a_4 (a_i >= 2) and lengths ell.

    Pattern lengths run over [size_min, size_max] (default [len_min, len_max])
    and ell over [max(len_min, |p|), len_max]. b_ell only depends on the
    multiset, so ordered tuples are not enumerated. Floats rank the cells;
    the winner is then confirmed against its closest rivals with exact integer
    comparisons and its coefficient recomputed with big integers.
    """
    size_min = len_min if size_min is None else size_min
    size_max = len_max if size_max is None else size_max
    if len_max > order:
        raise ContractError(f"len_max {len_max} exceeds series order {order}")
    if size_min < 8 or size_max < size_min or len_max < len_min:
        raise ContractError("need 8 <= size_min <= size_max and len_min <= len_max")
    sizes = list(range(size_min, size_max + 1))
    if jobs > 1 and len(sizes) > 1:
        chunks = [sizes[i::jobs] for i in range(jobs)]
        tasks = [(s, s, len_min, len_max) for chunk in chunks for s in chunk]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_chunk, tasks))
    else:
        parts = [g4_sweep_table(size_min, size_max, len_min, len_max)]
    cells = {}
    for part in parts:
        cells.update(part)
    table = tuple(
        SweepRow(size, tuple(multiset), ell, b) for (size, ell), (b, multiset) in sorted(cells.items())
    )
    if not table:
        raise ContractError("empty sweep range")
    top = max(row.value for row in table)
    contenders = [row for row in table if row.value >= top * (1 - 1e-9)]
    best = contenders[0]
    for row in contenders[1:]:
        if row.beats(best):
            best = row
    exact = pattern_ogf(best.multiset, order)[best.ell]
    if exact != best.b:
        raise AssertionError(f"sweep kernel gave b={best.b}, exact series gives {exact}")
    return SweepReport(len_min, len_max, order, best, table)


def first_method_bound(ell: int, k: int = 4) -> int:
    """binom(ell // 2, k - 1), the count bound on prefix-sum sets used by the closed form."""
    return math.comb(ell // 2, k - 1)


def root_at_most(b: int, ell: int, bound) -> bool:
    """Exact test b ** (1 / ell) <= bound for a decimal string or rational ``bound``."""
    return b <= Fraction(str(bound)) ** ell
