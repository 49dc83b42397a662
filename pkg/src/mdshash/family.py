"""Hash families, exhaustive epsilon measurement, and code <-> family maps.

A family is stored as an N x n integer table whose entry (i, a) is h_i(a).
All three measurements return the least epsilon for which the family has
the property, as an exact Fraction, together with the lexicographically
smallest witness attaining the worst case.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .codes import Code, GenericCode, LinearCode
from .config import DEFAULT_LIMITS, Limits
from .errors import AllOnesNotInCode, BadParams, NoGroup, NotPrimePower, TooLarge
from .field import field_create, prime_power

GROUPS = ("zm", "gf")


class DuplicateWords(UserWarning):
    """Two domain points have identical columns, so the family is not a code."""


@dataclass(frozen=True, eq=False)
class HashFamily:
    table: np.ndarray
    m: int
    group: str | None = "zm"

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] < 1:
            raise BadParams("family table must be a non-empty N x n matrix")
        N, n = t.shape
        if self.m < 2 or n < self.m:
            raise BadParams(f"need n >= m >= 2, got n={n}, m={self.m}")
        if t.min() < 0 or t.max() >= self.m:
            raise BadParams(f"table entries must lie in 0..{self.m - 1}")
        if self.group is not None and self.group not in GROUPS:
            raise BadParams(f"unknown range group {self.group!r}")
        if self.group == "gf":
            try:
                prime_power(self.m)
            except NotPrimePower:
                raise BadParams(f"gf group needs a prime-power range size, got m={self.m}") from None
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def N(self) -> int:
        return self.table.shape[0]

    @property
    def n(self) -> int:
        return self.table.shape[1]

    def sub_table(self) -> np.ndarray:
        if self.group is None:
            raise NoGroup("family has no group structure on its range")
        if self.group == "gf":
            return field_create(self.m).sub_table
        r = np.arange(self.m)
        return (r[:, None] - r[None, :]) % self.m

    def with_group(self, group: str | None) -> HashFamily:
        return HashFamily(self.table, self.m, group)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HashFamily)
            and self.m == other.m
            and self.group == other.group
            and np.array_equal(self.table, other.table)
        )

    def __repr__(self) -> str:
        return f"HashFamily(N={self.N}, n={self.n}, m={self.m}, group={self.group})"


@dataclass(frozen=True)
class EpsilonReport:
    kind: str
    epsilon: Fraction
    count: int
    N: int
    n: int
    m: int
    witness: tuple[int, ...]
    balanced: bool | None = None
    group: str | None = None

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "epsilon": str(self.epsilon),
            "count": self.count,
            "N": self.N,
            "n": self.n,
            "m": self.m,
            "witness": list(self.witness),
            "balanced": self.balanced,
            "group": self.group,
        }


# -- direct pair scans -------------------------------------------------------

def _scan_u(t: np.ndarray, lo: int, hi: int, m: int, sub=None):
    best, wit = -1, None
    for a1 in range(lo, hi):
        agree = np.count_nonzero(t[:, a1 + 1 :] == t[:, a1 : a1 + 1], axis=0)
        j = int(np.argmax(agree))
        if agree[j] > best:
            best, wit = int(agree[j]), (a1, a1 + 1 + j)
    return best, wit


def _scan_delta(t: np.ndarray, lo: int, hi: int, m: int, sub=None):
    best, wit = -1, None
    n = t.shape[1]
    for a1 in range(lo, hi):
        r = n - a1 - 1
        diff = sub[t[:, a1 : a1 + 1], t[:, a1 + 1 :]] + m * np.arange(r)
        counts = np.bincount(diff.ravel(), minlength=r * m).reshape(r, m)
        per_pair = counts.max(axis=1)
        j = int(np.argmax(per_pair))
        if per_pair[j] > best:
            b = int(np.argmax(counts[j]))
            best, wit = int(per_pair[j]), (a1, a1 + 1 + j, b)
    return best, wit


def _scan_su(t: np.ndarray, lo: int, hi: int, m: int, sub=None):
    best, wit = -1, None
    n = t.shape[1]
    mm = m * m
    for a1 in range(lo, hi):
        r = n - a1 - 1
        joint = t[:, a1 : a1 + 1] * m + t[:, a1 + 1 :] + mm * np.arange(r)
        counts = np.bincount(joint.ravel(), minlength=r * mm).reshape(r, mm)
        per_pair = counts.max(axis=1)
        j = int(np.argmax(per_pair))
        if per_pair[j] > best:
            cell = int(np.argmax(counts[j]))
            best, wit = int(per_pair[j]), (a1, a1 + 1 + j, cell // m, cell % m)
    return best, wit


def _pair_scan(fam: HashFamily, scan, workers: int, sub=None):
    n = fam.n
    rows = n - 1
    if workers <= 1 or rows < 2:
        return scan(fam.table, 0, rows, fam.m, sub)
    edges = np.linspace(0, rows, min(workers, rows) + 1).astype(int)
    chunks = [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda c: scan(fam.table, c[0], c[1], fam.m, sub), chunks))
    # max count, ties broken by the smallest witness
    return min(parts, key=lambda p: (-p[0], p[1]))


# -- projection search for epsilon-U on large domains -------------------------

def _first_dup_pair(proj: np.ndarray, m: int):
    n, t = proj.shape
    if t == 0:
        return (0, 1)
    if m**t < 2**62:
        key = proj @ (m ** np.arange(t, dtype=np.int64))
    else:
        key = np.unique(proj, axis=0, return_inverse=True)[1].ravel()
    order = np.argsort(key, kind="stable")
    sk = key[order]
    same = np.flatnonzero(sk[1:] == sk[:-1])
    if same.size == 0:
        return None
    # first adjacent equal pair in each run holds the run's two smallest indices
    head = same[(same == 0) | (sk[same - 1] != sk[same])]
    a1, a2 = order[head], order[head + 1]
    best = int(np.argmin(a1 * n + a2))
    return int(a1[best]), int(a2[best])


def _projection_search(fam: HashFamily, limits: Limits, sub=None):
    """Largest |S| such that the columns restricted to the coordinate set S
    are not all distinct, with the smallest colliding pair.

    With ``sub`` given, each restricted column is first shifted by its value
    at min(S), so two columns collide exactly when their difference is
    constant on S; this turns the search into the Delta-U count.
    """
    words = fam.table.T
    N, n = fam.N, fam.n
    spent = 0
    for size in range(N, -1, -1):
        found = None
        for S in combinations(range(N), size):
            spent += max(size, 1) * n
            if spent > limits.event_budget:
                raise TooLarge(
                    f"projection search exceeded {limits.event_budget} events; raise event_budget"
                )
            proj = words[:, list(S)]
            if sub is not None and size:
                proj = sub[proj, proj[:, :1]]
            pair = _first_dup_pair(proj, fam.m)
            if pair is not None and (found is None or pair < found):
                found = pair
        if found is not None:
            return size, found
    raise AssertionError("unreachable: the empty projection always collides")


def _check_budget(events: int, limits: Limits, what: str) -> None:
    if events > limits.event_budget:
        raise TooLarge(f"{what} needs {events} counting events, budget is {limits.event_budget}")


def measure_epsilon_u(
    fam: HashFamily, limits: Limits = DEFAULT_LIMITS, method: str = "auto", workers: int = 1
) -> EpsilonReport:
    pairs = fam.n * (fam.n - 1) // 2
    direct_cost = pairs * fam.N
    if method == "auto":
        method = "pairs" if direct_cost <= limits.event_budget else "projection"
    if method == "pairs":
        _check_budget(direct_cost, limits, "epsilon-U pair scan")
        count, wit = _pair_scan(fam, _scan_u, workers)
    elif method == "projection":
        count, wit = _projection_search(fam, limits)
    else:
        raise BadParams(f"unknown method {method!r}")
    return EpsilonReport("U", Fraction(count, fam.N), count, fam.N, fam.n, fam.m, wit, group=fam.group)


def measure_epsilon_delta(
    fam: HashFamily, limits: Limits = DEFAULT_LIMITS, method: str = "auto", workers: int = 1
) -> EpsilonReport:
    sub = fam.sub_table()
    direct_cost = fam.n * (fam.n - 1) // 2 * fam.N * fam.m
    if method == "auto":
        method = "pairs" if direct_cost <= limits.event_budget else "projection"
    if method == "pairs":
        _check_budget(direct_cost, limits, "epsilon-Delta-U scan")
        count, wit = _pair_scan(fam, _scan_delta, workers, sub)
    elif method == "projection":
        count, (a1, a2) = _projection_search(fam, limits, sub)
        diff = sub[fam.table[:, a1], fam.table[:, a2]]
        wit = (a1, a2, int(np.argmax(np.bincount(diff, minlength=fam.m))))
    else:
        raise BadParams(f"unknown method {method!r}")
    return EpsilonReport("DeltaU", Fraction(count, fam.N), count, fam.N, fam.n, fam.m, wit, group=fam.group)


def is_balanced(fam: HashFamily) -> bool:
    if fam.N % fam.m:
        return False
    target = fam.N // fam.m
    for a in range(fam.n):
        if np.any(np.bincount(fam.table[:, a], minlength=fam.m) != target):
            return False
    return True


def measure_epsilon_su(
    fam: HashFamily, limits: Limits = DEFAULT_LIMITS, workers: int = 1
) -> EpsilonReport:
    _check_budget(fam.n * (fam.n - 1) // 2 * fam.N * fam.m**2, limits, "epsilon-SU scan")
    count, wit = _pair_scan(fam, _scan_su, workers)
    return EpsilonReport(
        "SU", Fraction(count * fam.m, fam.N), count, fam.N, fam.n, fam.m, wit,
        balanced=is_balanced(fam), group=fam.group,
    )


# -- conversions --------------------------------------------------------------

def _range_group(q: int) -> str:
    try:
        prime_power(q)
    except NotPrimePower:
        return "zm"
    return "gf"


def code_to_family(code: Code, limits: Limits = DEFAULT_LIMITS) -> HashFamily:
    """Functions are coordinates, domain points are codewords in code order."""
    words = code.codewords(limits)
    return HashFamily(words.T.copy(), code.q, _range_group(code.q))


def family_to_code(fam: HashFamily) -> GenericCode:
    """Codewords are the columns (h_1(a), ..., h_N(a)).

    Repeated columns are dropped with a DuplicateWords warning; the
    indices of the dropped domain points are kept on ``code.dropped``.
    """
    words = fam.table.T
    _, first = np.unique(words, axis=0, return_index=True)
    keep = np.sort(first)
    dropped = tuple(int(a) for a in np.setdiff1d(np.arange(fam.n), keep))
    if dropped:
        warnings.warn(
            f"{len(dropped)} domain point(s) duplicate an earlier column; dropped {dropped}",
            DuplicateWords,
            stacklevel=2,
        )
    code = GenericCode(fam.m, words[keep])
    code.dropped = dropped
    return code


def coset_representatives(code: LinearCode, limits: Limits = DEFAULT_LIMITS, pick: str = "min") -> np.ndarray:
    """One representative per coset of {lambda * e} in the code, sorted.

    ``pick`` selects the lexicographically smallest ("min") or largest
    ("max") member of each coset.
    """
    f = code.field
    words = code.codewords(limits)
    best = words.copy()
    rows = np.arange(len(words))
    for lam in range(1, f.q):
        cand = f.add_table[words, lam]
        diff = cand != best
        col = np.argmax(diff, axis=1)
        c, b = cand[rows, col], best[rows, col]
        better = diff.any(axis=1) & ((c < b) if pick == "min" else (c > b))
        best[better] = cand[better]
    return np.unique(best, axis=0)


def code_to_delta_family(code: LinearCode, limits: Limits = DEFAULT_LIMITS, pick: str = "min") -> HashFamily:
    """Delta-U family on the cosets of the all-ones subcode."""
    if not code.contains(np.ones(code.length, dtype=np.int64)):
        raise AllOnesNotInCode(f"{code!r} does not contain the all-ones word")
    reps = coset_representatives(code, limits, pick)
    assert len(reps) == code.q ** (code.dim - 1)
    return HashFamily(reps.T.copy(), code.q, "gf")


def affine_family(q: int) -> HashFamily:
    """{x -> a*x + b : a, b in GF(q)} on domain GF(q); function index a*q + b."""
    f = field_create(q)
    a = np.repeat(np.arange(q), q)
    b = np.tile(np.arange(q), q)
    x = np.arange(q)
    table = f.add_table[f.mul_table[a[:, None], x[None, :]], b[:, None]]
    return HashFamily(table, q, "gf")
