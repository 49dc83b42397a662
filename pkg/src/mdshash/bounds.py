"""Lower bounds on the number of functions N of a hash family.

For each kind of family there is an older bound and a Singleton-derived
bound; a threshold epsilon_i(n, m) marks where the second overtakes the
first:

    kind     older bound                                  newer bound                          threshold
    U        n(m-1) / (n(em-1) + m^2(1-e))                (log_m n - 1) / e                    eps1
    DeltaU   n(m-1) / (m - n + me(n-1))                   (log_2 n + m - 1) / (m - 2 + 2e)     eps3
    SU       1 + n(m-1)^2 / (me(n-1) + m - n)             m log_2 n / (m - 2(1-e))             eps4

Values are exact Fractions whenever epsilon is a Fraction and every
logarithm involved is an integer (n a power of the base); otherwise floats.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Real
from typing import Iterable, Iterator

from .config import DEFAULT_LIMITS, Limits
from .errors import (
    BadParams,
    Inapplicable,
    NegativeDiscriminant,
    OutOfRange,
    RangeTooLarge,
    ThresholdInapplicable,
)

SLACK = 1e-12
EQUAL_RTOL = 1e-9


class Kind(str, Enum):
    U = "U"
    DELTA = "DeltaU"
    SU = "SU"

    @classmethod
    def parse(cls, text) -> Kind:
        if isinstance(text, Kind):
            return text
        key = str(text).strip().lower().replace("-", "").replace("_", "")
        aliases = {"u": cls.U, "du": cls.DELTA, "deltau": cls.DELTA, "delta": cls.DELTA, "su": cls.SU}
        try:
            return aliases[key]
        except KeyError:
            raise BadParams(f"unknown family kind {text!r} (use u, du or su)") from None


Number = Fraction | float


def as_eps(eps) -> Number:
    """Fractions, ints and fraction strings become Fractions; floats stay floats."""
    if isinstance(eps, float):
        return eps
    if isinstance(eps, (str, int, Fraction)):
        try:
            return Fraction(eps)
        except (ValueError, ZeroDivisionError):
            raise BadParams(f"cannot read epsilon {eps!r} as a fraction") from None
    if isinstance(eps, Real):
        return float(eps)
    raise BadParams(f"epsilon must be a number, got {type(eps).__name__}")


def _check_nm(n: int, m: int) -> None:
    if int(n) != n or int(m) != m or not n > m >= 2:
        raise BadParams(f"need integers n > m >= 2, got n={n}, m={m}")


def _check_query(n: int, m: int, eps) -> Number:
    _check_nm(n, m)
    e = as_eps(eps)
    if not 0 < e <= 1:
        raise BadParams(f"epsilon must lie in (0, 1], got {eps}")
    return e


def exact_log(n: int, base: int) -> int | None:
    """t with base**t == n, or None."""
    t, x = 0, 1
    while x < n:
        x *= base
        t += 1
    return t if x == n else None


def log_value(n: int, base: int) -> Number:
    t = exact_log(n, base)
    if t is not None:
        return Fraction(t)
    return math.log(n) / math.log(base) if base != 2 else math.log2(n)


def plotkin_eps_floor(n: int, m: int) -> Fraction:
    """Smallest epsilon any epsilon-U (N; n, m) family can have."""
    _check_nm(n, m)
    return Fraction(n - m, m * (n - 1))


def eps_floor(kind, n: int, m: int) -> Fraction:
    kind = Kind.parse(kind)
    if kind is Kind.U:
        return plotkin_eps_floor(n, m)
    _check_nm(n, m)
    return Fraction(1, m)


def bound_old(kind, n: int, m: int, eps) -> Number:
    kind = Kind.parse(kind)
    e = _check_query(n, m, eps)
    if kind is Kind.U:
        den = n * (e * m - 1) + m * m * (1 - e)
    else:
        den = m - n + m * e * (n - 1)
    if den <= 0:
        raise Inapplicable(f"{kind.value} older bound has non-positive denominator at eps={eps}")
    value = n * (m - 1) / den if kind is not Kind.SU else 1 + n * (m - 1) ** 2 / den
    return value


def bound_new(kind, n: int, m: int, eps) -> Number:
    kind = Kind.parse(kind)
    e = _check_query(n, m, eps)
    if kind is Kind.U:
        return (log_value(n, m) - 1) / e
    if kind is Kind.DELTA:
        den = m - 2 + 2 * e
        num = log_value(n, 2) + m - 1
    else:
        den = m - 2 * (1 - e)
        num = m * log_value(n, 2)
    if den <= 0:
        raise Inapplicable(f"{kind.value} newer bound has non-positive denominator at eps={eps}")
    return num / den


@dataclass(frozen=True)
class ThresholdSet:
    n: int
    m: int
    eps1: Number | None
    eps2: Fraction
    eps3: Number
    eps4: float | None
    eps1_applicable: bool
    eps3_applicable: bool
    eps4_applicable: bool
    quad_coeffs: tuple[float, float, float]
    discriminant: float

    def for_kind(self, kind) -> tuple[Number | None, bool]:
        kind = Kind.parse(kind)
        if kind is Kind.U:
            return self.eps1, self.eps1_applicable
        if kind is Kind.DELTA:
            return self.eps3, self.eps3_applicable
        return self.eps4, self.eps4_applicable and self.eps4 is not None


def eps1(n: int, m: int) -> Number:
    _check_nm(n, m)
    L = log_value(n, m)
    den = (m * n - m * m) * L + m * m + n - 2 * m * n
    if den == 0:
        raise Inapplicable(f"eps1 undefined at n={n}, m={m}")
    return (n - m * m) * (L - 1) / den


def eps3(n: int, m: int) -> Number:
    _check_nm(n, m)
    L = log_value(n, 2)
    return (n * (m - 1) * (m - 2) + (L + m - 1) * (n - m)) / (m * (n - 1) * (L + m - 1) - 2 * n * (m - 1))


def eps4_quadratic(n: int, m: int) -> tuple[float, float, float]:
    """Coefficients (a, b, c) of a x^2 - b x + c = 0 whose smaller root is eps4."""
    L = float(log_value(n, 2))
    a = 2.0 * (n - 1)
    b = m * (n - 1) * (L - 3) + 6 * n - 2 * m - 4
    c = (m - 2) * (n * m - 2 * n + 1) + (n - m) * L
    return a, float(b), float(c)


def eps4(n: int, m: int) -> float:
    _check_nm(n, m)
    a, b, c = eps4_quadratic(n, m)
    disc = b * b - 4 * a * c
    if disc < 0:
        raise NegativeDiscriminant(f"eps4 quadratic has discriminant {disc} < 0 at n={n}, m={m}")
    return (b - math.sqrt(disc)) / (2 * a)


def thresholds(n: int, m: int) -> ThresholdSet:
    _check_nm(n, m)
    a, b, c = eps4_quadratic(n, m)
    disc = b * b - 4 * a * c
    try:
        e1 = eps1(n, m)
    except Inapplicable:
        e1 = None
    return ThresholdSet(
        n=n,
        m=m,
        eps1=e1,
        eps2=plotkin_eps_floor(n, m),
        eps3=eps3(n, m),
        eps4=(b - math.sqrt(disc)) / (2 * a) if disc >= 0 else None,
        eps1_applicable=n > m * m,
        eps3_applicable=n > m,
        eps4_applicable=n > 2**m,
        quad_coeffs=(a, b, c),
        discriminant=disc,
    )


def integral_adjust(raw: Number, eps, kind, m: int | None = None) -> int:
    """Least N >= raw (and >= 1) with eps*N integral, or eps*N/m for SU."""
    kind = Kind.parse(kind)
    e = as_eps(eps)
    if isinstance(e, float):
        raise BadParams("integrality adjustment needs an exact rational epsilon")
    if kind is Kind.SU and m is None:
        raise BadParams("SU integrality adjustment needs the range size m")
    if isinstance(raw, Fraction):
        start = math.ceil(raw)
    else:
        if not math.isfinite(raw):
            raise BadParams(f"raw bound must be finite, got {raw}")
        start = math.ceil(raw - SLACK * max(1.0, abs(raw)))
    # scale*N is integral exactly when the reduced denominator divides N
    d = (e if kind is not Kind.SU else e / m).denominator
    return -(-max(1, start) // d) * d


@dataclass(frozen=True)
class BoundReport:
    kind: Kind
    n: int
    m: int
    eps: Number
    old_raw: Number | None
    new_raw: Number | None
    old_N: int | None
    new_N: int | None
    threshold: Number | None
    floor: Fraction
    dominant: str
    regime: str
    boundary: bool

    def as_dict(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "kind": self.kind.value,
            "n": self.n,
            "m": self.m,
            "eps": str(self.eps),
            "old_raw": num(self.old_raw),
            "new_raw": num(self.new_raw),
            "old_N": self.old_N,
            "new_N": self.new_N,
            "threshold": num(self.threshold),
            "floor": str(self.floor),
            "dominant": self.dominant,
            "regime": self.regime,
            "boundary": self.boundary,
        }


def _try(fn, *args):
    try:
        return fn(*args)
    except Inapplicable:
        return None


def evaluate(kind, n: int, m: int, eps, require_threshold: bool = True) -> BoundReport:
    """Evaluate both bounds for one query.

    ``dominant`` compares the raw values (``equal`` within 1e-9 relative);
    ``regime`` says which side of the threshold epsilon falls on, with the
    threshold itself counted in the newer bound's regime. Without an
    applicable threshold, ``regime`` is "none" unless one is required.
    """
    kind = Kind.parse(kind)
    e = _check_query(n, m, eps)
    floor = eps_floor(kind, n, m)
    if e < floor - SLACK:
        raise OutOfRange(f"eps={eps} is below the {kind.value} floor {floor} for n={n}, m={m}")
    threshold, ok = thresholds(n, m).for_kind(kind)
    if not ok:
        if require_threshold:
            hyp = {Kind.U: "n > m^2", Kind.DELTA: "n > m", Kind.SU: "n > 2^m"}[kind]
            raise ThresholdInapplicable(f"{kind.value} threshold needs {hyp}; got n={n}, m={m}")
        threshold = None

    old = _try(bound_old, kind, n, m, e)
    new = _try(bound_new, kind, n, m, e)
    if old is None:
        dominant = "old_inapplicable"
    elif new is None:
        dominant = "new_inapplicable"
    elif math.isclose(old, new, rel_tol=EQUAL_RTOL):
        dominant = "equal"
    else:
        dominant = "new" if new > old else "old"

    exact = not isinstance(e, float)
    if threshold is None:
        regime, boundary = "none", False
    else:
        regime = "new" if e >= threshold - SLACK else "old"
        boundary = abs(e - threshold) <= SLACK
    return BoundReport(
        kind=kind,
        n=n,
        m=m,
        eps=e,
        old_raw=old,
        new_raw=new,
        old_N=integral_adjust(old, e, kind, m) if exact and old is not None else None,
        new_N=integral_adjust(new, e, kind, m) if exact and new is not None else None,
        threshold=threshold,
        floor=floor,
        dominant=dominant,
        regime=regime,
        boundary=boundary,
    )


def compare(kind, n: int, m: int, eps) -> BoundReport:
    """Dominance verdict; requires the kind's threshold hypothesis to hold."""
    return evaluate(kind, n, m, eps, require_threshold=True)


SWEEP_COLUMNS = ("kind", "n", "m", "eps", "old_raw", "new_raw", "old_N", "new_N", "threshold", "dominant")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return f"{float(x):.12g}"


def _sweep_row(kind: Kind, n: int, m: int, eps: Fraction) -> dict:
    row = dict.fromkeys(SWEEP_COLUMNS, "")
    row.update(kind=kind.value, n=str(n), m=str(m), eps=str(eps))
    try:
        rep = compare(kind, n, m, eps)
    except OutOfRange:
        row["dominant"] = "out_of_range"
        threshold, ok = thresholds(n, m).for_kind(kind)
        row["threshold"] = _fmt(threshold) if ok else ""
        return row
    except ThresholdInapplicable:
        row["dominant"] = "no_threshold"
        return row
    row.update(
        old_raw=_fmt(rep.old_raw),
        new_raw=_fmt(rep.new_raw),
        old_N=_fmt(rep.old_N),
        new_N=_fmt(rep.new_N),
        threshold=_fmt(rep.threshold),
        dominant=rep.dominant,
    )
    return row


def sweep(
    kind,
    ns: Iterable[int],
    ms: Iterable[int],
    eps_grid: Iterable,
    limits: Limits = DEFAULT_LIMITS,
    workers: int = 1,
) -> Iterator[dict]:
    """Rows of the dominance table, n-major then m then eps.

    Pairs with n <= m are not valid queries and produce no rows.
    """
    kind = Kind.parse(kind)
    ns, ms = list(ns), list(ms)
    grid = [as_eps(e) for e in eps_grid]
    if any(isinstance(e, float) for e in grid):
        raise BadParams("sweep epsilons must be exact fractions")
    total = len(ns) * len(ms) * len(grid)
    if total > limits.sweep_rows:
        raise RangeTooLarge(f"sweep would produce {total} rows; cap is {limits.sweep_rows}")
    cells = [(n, m) for n in ns for m in ms if n > m >= 2]

    def row_block(cell):
        n, m = cell
        return [_sweep_row(kind, n, m, e) for e in grid]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(row_block, cells))
    else:
        blocks = map(row_block, cells)
    for block in blocks:
        yield from block
