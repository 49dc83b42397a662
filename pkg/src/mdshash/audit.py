"""Check a measured family against every lower bound that applies to it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import SLACK, Kind, bound_new, bound_old, eps_floor
from .config import DEFAULT_LIMITS, Limits
from .errors import Inapplicable
from .family import (
    EpsilonReport,
    HashFamily,
    is_balanced,
    measure_epsilon_delta,
    measure_epsilon_su,
    measure_epsilon_u,
)


@dataclass(frozen=True)
class BoundCheck:
    kind: str
    name: str
    value: Fraction | float | None
    ok: bool | None  # None: the bound is vacuous for this family
    note: str = ""

    def line(self) -> str:
        status = {True: "pass", False: "FAIL", None: "n/a"}[self.ok]
        val = "" if self.value is None else f" {float(self.value):.6g}"
        note = f" ({self.note})" if self.note else ""
        return f"{status:4} {self.kind}:{self.name}{val}{note}"


def _satisfies(N: int, raw) -> bool:
    if isinstance(raw, Fraction):
        return N >= raw
    return N >= raw - SLACK * max(1.0, abs(raw))


def bound_checks(kind, N: int, n: int, m: int, eps: Fraction, balanced: bool | None = None) -> list[BoundCheck]:
    """Floor and raw-bound checks for one measured epsilon.

    Bounds are only defined for n > m; SU bounds additionally need the
    family to be balanced.
    """
    kind = Kind.parse(kind)
    k = kind.value
    if n <= m:
        return [BoundCheck(k, "floor", None, None, "n <= m: floor and bounds are vacuous")]
    if kind is Kind.SU and not balanced:
        return [BoundCheck(k, "floor", None, None, "not balanced: family is not SU")]

    floor = eps_floor(kind, n, m)
    checks = [BoundCheck(k, "floor", floor, eps >= floor)]
    if eps <= 0:
        return checks
    for name, fn in (("old", bound_old), ("singleton", bound_new)):
        try:
            raw = fn(kind, n, m, eps)
        except Inapplicable as exc:
            checks.append(BoundCheck(k, name, None, None, str(exc)))
            continue
        checks.append(BoundCheck(k, name, raw, _satisfies(N, raw)))
    return checks


def audit_family(
    fam: HashFamily, kinds=("U", "DeltaU", "SU"), limits: Limits = DEFAULT_LIMITS
) -> list[tuple[EpsilonReport | None, list[BoundCheck]]]:
    """Measure each requested kind and check the family's N against its bounds.

    DeltaU is skipped for families without a range group; SU is not
    measured for unbalanced families (the report slot is None).
    """
    out = []
    for kind in (Kind.parse(k) for k in kinds):
        if kind is Kind.U:
            rep = measure_epsilon_u(fam, limits)
        elif kind is Kind.DELTA:
            if fam.group is None:
                continue
            rep = measure_epsilon_delta(fam, limits)
        else:
            if not is_balanced(fam):
                out.append((None, [BoundCheck("SU", "floor", None, None, "not balanced: family is not SU")]))
                continue
            rep = measure_epsilon_su(fam, limits)
        out.append((rep, bound_checks(kind, fam.N, fam.n, fam.m, rep.epsilon, rep.balanced)))
    return out


def all_pass(checks: list[BoundCheck]) -> bool:
    return all(c.ok is not False for c in checks)
