"""Closed-form bounds and recurrences on C_k(n), checked against exact counts.

All integer-valued formulas are evaluated with Python ints; real-valued bounds
are floats in the log2 scale (``log2 C_k(n)``). The doubly exponential naive
upper bound ``2**((k**(n+1) - 1) / (k - 1))`` is only ever handled through its
exponent.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from simcon.enumeration import EnumerationReport

Number = Union[int, float]

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"

BOUND_IDS = (
    "naive-eq1", "naive-eq2", "kppps-even", "kppps-odd", "main-lower",
    "main-upper", "prop3", "prop6", "eq5-c2", "kppps-rec-lower", "kppps-rec-upper",
)


class NotApplicable(ValueError):
    """(k, n) lies outside the validity domain of a formula."""


class MissingEntriesError(KeyError):
    def __init__(self, missing: Iterable[Tuple[int, int]]):
        self.missing = sorted(set(missing))
        cells = ", ".join(f"C_{k}({n})" for k, n in self.missing)
        super().__init__(f"count table lacks exact values for {cells}")


# -- count table ----------------------------------------------------------------

PUBLISHED = "published"
COMPUTED = "computed"


@dataclass(frozen=True)
class Entry:
    value: int
    provenance: str
    exact: bool = True


def _published_cells() -> Dict[Tuple[int, int], Entry]:
    cells: Dict[Tuple[int, int], Entry] = {}
    for k in range(1, 9):
        cells[k, 0] = Entry(1, PUBLISHED)
        cells[k, 1] = Entry(2**k, PUBLISHED)
    for n in range(0, 12):
        cells[1, n] = Entry(n + 1, PUBLISHED)
    rows = {
        2: [16, 152, 2326, 52132, 1602420, 64529264],
        3: [68, 5312, 1395588, 1031153002],
        4: [312, 334202],
        5: [1560, 38450477],
        6: [8528],
        7: [50864],
        8: [329248],
        9: [2298592],
        10: [17203264],
        11: [137289920],
    }
    for n, values in rows.items():
        for k, value in enumerate(values, start=2):
            cells[k, n] = Entry(value, PUBLISHED)
    # cells printed with ">=": lower bounds only
    for (k, n), value in {(8, 2): 173 * 10**7, (6, 3): 23 * 10**7,
                          (4, 4): 73 * 10**7, (3, 6): 39 * 10**7}.items():
        cells[k, n] = Entry(value, PUBLISHED, exact=False)
    return cells


PUBLISHED_TABLE: Mapping[Tuple[int, int], Entry] = _published_cells()


@dataclass(frozen=True)
class CountTable:
    """Exact values of C_k(n), keyed by (k, n)."""

    entries: Mapping[Tuple[int, int], Entry] = field(default_factory=dict)

    @classmethod
    def published(cls) -> "CountTable":
        return cls(dict(PUBLISHED_TABLE))

    def with_computed(self, *reports: EnumerationReport) -> "CountTable":
        entries = dict(self.entries)
        for r in reports:
            if r.exact:
                entries[r.k, r.n] = Entry(r.total_classes, COMPUTED)
        return CountTable(entries)

    def exact(self, k: int, n: int) -> Optional[int]:
        entry = self.entries.get((k, n))
        if entry is not None and entry.exact:
            return entry.value
        # closed forms hold everywhere, not only in the printed range
        if k == 1:
            return n + 1
        if n == 0:
            return 1
        if n == 1:
            return 2**k
        return None

    def require(self, cells: Iterable[Tuple[int, int]]) -> Dict[Tuple[int, int], int]:
        found, missing = {}, []
        for k, n in cells:
            value = self.exact(k, n)
            if value is None:
                missing.append((k, n))
            else:
                found[k, n] = value
        if missing:
            raise MissingEntriesError(missing)
        return found

    def exact_cells(self) -> List[Tuple[int, int]]:
        return sorted(key for key, e in self.entries.items() if e.exact)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "n", "value", "provenance", "exactness"])
        for (k, n), e in sorted(self.entries.items()):
            writer.writerow([k, n, e.value, e.provenance, "exact" if e.exact else "lower-bound"])
        return buf.getvalue()


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True)
class BoundsReport:
    k: int
    n: int
    bound_id: str
    lower: Optional[Number]
    upper: Optional[Number]
    exact_value: Optional[int]
    # None when no exact value is available to check against
    satisfied: Optional[str]
    margin: Optional[float]
    scale: str = "log2"
    detail: str = ""

    def to_json(self) -> dict:
        def num(v):
            return str(v) if isinstance(v, int) else v
        return {
            "k": self.k,
            "n": self.n,
            "bound_id": self.bound_id,
            "lower": num(self.lower),
            "upper": num(self.upper),
            "exact_value": num(self.exact_value),
            "satisfied": self.satisfied,
            "margin": self.margin,
            "scale": self.scale,
            "detail": self.detail,
        }


def _na(k: int, n: int, bound_id: str, why: str) -> BoundsReport:
    return BoundsReport(k, n, bound_id, None, None, None, NOT_APPLICABLE, None, detail=why)


def _verdict(ok: bool) -> str:
    return HOLDS if ok else VIOLATED


def _lookup(k: int, n: int, table: Optional[CountTable]) -> Optional[int]:
    return (table or CountTable.published()).exact(k, n)


def naive_bounds(k: int, n: int, table: Optional[CountTable] = None) -> List[BoundsReport]:
    """``(k^(n+1)-1)/(k-1) <= C_k(n) <= 2^((k^(n+1)-1)/(k-1))``.

    The upper bound is carried as its exponent.
    """
    if k < 2:
        why = "closed form needs k >= 2"
        return [_na(k, n, "naive-eq1", why), _na(k, n, "naive-eq2", why)]
    short_words = (k ** (n + 1) - 1) // (k - 1)
    c = _lookup(k, n, table)
    lower = BoundsReport(k, n, "naive-eq1", short_words, None, c, None, None, scale="count")
    upper = BoundsReport(k, n, "naive-eq2", None, short_words, c, None, None,
                         detail="upper is the exponent of 2")
    if c is None:
        return [lower, upper]
    lo_ok = short_words <= c
    # c <= 2**E  <=>  bit_length(c - 1) <= E
    hi_ok = (c - 1).bit_length() <= short_words
    return [
        BoundsReport(k, n, "naive-eq1", short_words, None, c, _verdict(lo_ok),
                     float(c - short_words), scale="count"),
        BoundsReport(k, n, "naive-eq2", None, short_words, c, _verdict(hi_ok),
                     short_words - math.log2(c), detail="upper is the exponent of 2"),
    ]


def _sandwich(k, n, bound_id, lower, upper, c, strict_lower=True, strict_upper=True):
    if c is None:
        return BoundsReport(k, n, bound_id, lower, upper, None, None, None)
    v = math.log2(c)
    lo_ok = v > lower if strict_lower else v >= lower
    hi_ok = v < upper if strict_upper else v <= upper
    margin = min(v - lower, upper - v)
    return BoundsReport(k, n, bound_id, lower, upper, c, _verdict(lo_ok and hi_ok), margin)


def kppps_bounds(k: int, n: int, table: Optional[CountTable] = None) -> BoundsReport:
    """Bounds on log2 C_k(n) that are exponential in n for fixed k."""
    bound_id = "kppps-even" if n % 2 == 0 else "kppps-odd"
    if k <= 1 or n < 1:
        return _na(k, n, bound_id, "needs k > 1 and n >= 1")
    c = _lookup(k, n, table)
    ratio = k**n / 3 ** (n * n)
    if n % 2 == 0:
        lg = math.log2(k)
        return _sandwich(k, n, bound_id, ratio * lg, 3**n * k**n * lg, c,
                         strict_lower=False)
    return _sandwich(k, n, bound_id, ratio, float(3**n * k**n), c)


def main_lower(k: int, n: int) -> float:
    return (n / k) ** (k - 1) * math.log2(n / k)


def main_upper(k: int, n: int) -> float:
    return k * ((n + 2 * k - 3) / (k - 1)) ** (k - 1) * math.log2(n) * math.log2(k)


def main_bounds(k: int, n: int, table: Optional[CountTable] = None) -> List[BoundsReport]:
    """``(n/k)^(k-1) log2(n/k) < log2 C_k(n) < k((n+2k-3)/(k-1))^(k-1) log2 n log2 k``."""
    if k <= 1 or n <= 1:
        why = "needs k > 1 and n > 1"
        return [_na(k, n, "main-lower", why), _na(k, n, "main-upper", why)]
    c = _lookup(k, n, table)
    lo, hi = main_lower(k, n), main_upper(k, n)
    if c is None:
        return [BoundsReport(k, n, "main-lower", lo, None, None, None, None),
                BoundsReport(k, n, "main-upper", None, hi, None, None, None)]
    v = math.log2(c)
    return [
        BoundsReport(k, n, "main-lower", lo, None, c, _verdict(v > lo), v - lo),
        BoundsReport(k, n, "main-upper", None, hi, c, _verdict(v < hi), hi - v),
    ]


def prop3_lower(k: int, n: int, table: CountTable) -> int:
    """``sum_{p=0..n} C_{k-1}(n-p)^(p+1)``, a lower bound on C_k(n)."""
    if k < 2:
        raise NotApplicable("needs k >= 2")
    c = table.require((k - 1, q) for q in range(n + 1))
    return sum(c[k - 1, n - p] ** (p + 1) for p in range(n + 1))


def prop6_upper(k: int, n: int, table: CountTable) -> int:
    """``1 + sum_{m=0..n-1} k^(m+1) C_{k-1}(n-m+1)^m C_{k-1}(n-m)``."""
    if k < 2:
        raise NotApplicable("needs k >= 2")
    cells = {(k - 1, n - m) for m in range(n)} | {(k - 1, n - m + 1) for m in range(1, n)}
    c = table.require(cells)
    total = 1
    for m in range(n):
        factor = c[k - 1, n - m + 1] ** m if m else 1
        total += k ** (m + 1) * factor * c[k - 1, n - m]
    return total


def c2_upper(n: int) -> int:
    """``2 (n^(2n) - 1)/(n - 1)``, summed as ``2 sum_{m<2n} n^m``."""
    if n < 2:
        raise NotApplicable("needs n >= 2")
    return 2 * sum(n**m for m in range(2 * n))


def _integer_report(k, n, bound_id, value, c, is_lower) -> BoundsReport:
    lower, upper = (value, None) if is_lower else (None, value)
    if c is None:
        return BoundsReport(k, n, bound_id, lower, upper, None, None, None, scale="count")
    ok = value <= c if is_lower else c <= value
    margin = math.log2(c) - math.log2(value) if is_lower else math.log2(value) - math.log2(c)
    return BoundsReport(k, n, bound_id, lower, upper, c, _verdict(ok), margin,
                        scale="count", detail="margin in log2 units")


def prop3_report(k: int, n: int, table: CountTable) -> BoundsReport:
    try:
        value = prop3_lower(k, n, table)
    except NotApplicable as exc:
        return _na(k, n, "prop3", str(exc))
    return _integer_report(k, n, "prop3", value, table.exact(k, n), True)


def prop6_report(k: int, n: int, table: CountTable) -> BoundsReport:
    try:
        value = prop6_upper(k, n, table)
    except NotApplicable as exc:
        return _na(k, n, "prop6", str(exc))
    return _integer_report(k, n, "prop6", value, table.exact(k, n), False)


def eq5_report(k: int, n: int, table: CountTable) -> BoundsReport:
    if k != 2:
        return _na(k, n, "eq5-c2", "binary alphabet only")
    try:
        value = c2_upper(n)
    except NotApplicable as exc:
        return _na(k, n, "eq5-c2", str(exc))
    return _integer_report(k, n, "eq5-c2", value, table.exact(2, n), False)


def kppps_recurrence_check(table: CountTable) -> List[BoundsReport]:
    """``C_{k+l}(n+2) >= C_k(n)^(l+2)`` and ``C_k(n+2) <= (k+1)^(2k) C_k(n)^(2k-1)``
    on every triple whose cells are exact in ``table``."""
    exact = {cell: table.exact(*cell) for cell in table.exact_cells()}
    reports = []
    for (k, n), base in sorted(exact.items()):
        for (k2, n2), target in sorted(exact.items()):
            if n2 != n + 2:
                continue
            ell = k2 - k
            if ell >= 1:
                rhs = base ** (ell + 2)
                reports.append(BoundsReport(
                    k2, n2, "kppps-rec-lower", rhs, None, target, _verdict(target >= rhs),
                    math.log2(target) - math.log2(rhs), scale="count",
                    detail=f"k={k} l={ell} n={n}"))
            elif ell == 0:
                rhs = (k + 1) ** (2 * k) * base ** (2 * k - 1)
                reports.append(BoundsReport(
                    k2, n2, "kppps-rec-upper", None, rhs, target, _verdict(target <= rhs),
                    math.log2(rhs) - math.log2(target), scale="count",
                    detail=f"k={k} n={n}"))
    return reports


WHICH = ("all", "naive", "kppps", "main", "prop3", "prop6", "eq5")


def bounds_for(k: int, n: int, table: Optional[CountTable] = None,
               which: str = "all") -> List[BoundsReport]:
    table = table or CountTable.published()
    out: List[BoundsReport] = []
    if which in ("all", "naive"):
        out += naive_bounds(k, n, table)
    if which in ("all", "kppps"):
        out.append(kppps_bounds(k, n, table))
    if which in ("all", "main"):
        out += main_bounds(k, n, table)
    for name, bound_id, fn in (("prop3", "prop3", prop3_report),
                               ("prop6", "prop6", prop6_report),
                               ("eq5", "eq5-c2", eq5_report)):
        if which in ("all", name):
            try:
                out.append(fn(k, n, table))
            except MissingEntriesError as exc:
                out.append(BoundsReport(k, n, bound_id, None, None, table.exact(k, n),
                                        None, None, detail=str(exc)))
    return out


def format_reports(reports: Iterable[BoundsReport]) -> str:
    """Aligned text table."""
    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, float):
            return f"{v:.6g}"
        return str(v)

    header = ("k", "n", "bound", "lower", "upper", "exact", "status", "margin")
    rows = [header] + [
        (str(r.k), str(r.n), r.bound_id, cell(r.lower), cell(r.upper),
         cell(r.exact_value), r.satisfied or "unchecked", cell(r.margin))
        for r in reports
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    return "\n".join(
        "  ".join(v.rjust(w) if i not in (2, 6) else v.ljust(w)
                  for i, (v, w) in enumerate(zip(row, widths))).rstrip()
        for row in rows
    )


def reports_json(reports: Iterable[BoundsReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True)


# -- appendix inequality ---------------------------------------------------------


def F(k: int, x: float) -> float:
    return ((x + 2 * k - 1) / k) ** k


def G(k: int, x: float, y: float) -> float:
    return (y + 1) * F(k, x - y + 1)


def g_argmax(k: int, x: float) -> float:
    return (k + x) / (k + 1)


@dataclass
class AppendixCheck:
    k: int
    n: int
    ok: bool
    rhs: float
    values: List[float]
    y_max: float

    def __bool__(self) -> bool:
        return self.ok


def appendix_inequality_check(k: int, n: int) -> AppendixCheck:
    """``(m+1)((n-m+2k-2)/(k-1))^(k-1) <= ((n+2k-1)/k)^k`` for m = 0..n-1.

    The left side is ``G(k-1, n, m)``, maximized over real m at ``g_argmax(k-1, n)``.
    """
    if k < 2 or n < 2:
        raise NotApplicable("needs k >= 2 and n >= 2")
    rhs = F(k, n)
    values = [(m + 1) * ((n - m + 2 * k - 2) / (k - 1)) ** (k - 1) for m in range(n)]
    return AppendixCheck(k, n, all(v <= rhs for v in values), rhs, values, g_argmax(k - 1, n))


def g_is_unimodal(k: int, x: float, samples: int = 200) -> bool:
    """G(k, x, .) strictly increases on [0, y_max) and strictly decreases on (y_max, x]."""
    y_max = g_argmax(k, x)
    ys = sorted({x * i / samples for i in range(samples + 1)})  # x = 0 collapses to one point
    rising = [y for y in ys if y < y_max]
    falling = [y for y in ys if y > y_max]
    if y_max <= x:
        rising.append(y_max)
        falling.insert(0, y_max)
    up = all(G(k, x, a) < G(k, x, b) for a, b in zip(rising, rising[1:]))
    down = all(G(k, x, a) > G(k, x, b) for a, b in zip(falling, falling[1:]))
    return up and down


def side_inequality(k: int, n: int) -> bool:
    """``log2 n + n < ((n+2k-1)/k)^k log2 n``, used when closing the upper-bound induction."""
    return math.log2(n) + n < F(k, n) * math.log2(n)
