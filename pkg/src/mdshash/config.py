from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    """Enumeration budgets for the brute-force routines.

    ``code_enum_cap`` bounds codeword enumeration for linear codes and
    pairwise comparisons for explicit codes. ``event_budget`` bounds the
    number of elementary counting events in an epsilon measurement.
    """

    code_enum_cap: int = 2**20
    event_budget: int = 10**8
    sweep_rows: int = 10**6


DEFAULT_LIMITS = Limits()
