"""Named families built from MDS codes.

Each builder returns ``(code, family)`` so callers can keep both.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .codes import GenericCode, LinearCode, parity_code, parity_mds_with_allones, rs_code, subcode_select
from .config import DEFAULT_LIMITS, Limits
from .errors import BadParams
from .family import HashFamily, code_to_delta_family, code_to_family


def rs_family(q: int, k: int, n: int, limits: Limits = DEFAULT_LIMITS) -> tuple[LinearCode, HashFamily]:
    """(k-1)/n - U (n; q^k, q): functions are evaluation points, domain the
    polynomials of degree < k."""
    code = rs_code(q, k, n)
    return code, code_to_family(code, limits)


def parity_family(q: int, n: int, limits: Limits = DEFAULT_LIMITS) -> tuple[LinearCode, HashFamily]:
    code = parity_mds_with_allones(q, n)
    return code, code_to_family(code, limits)


def subfamily_size(q: int, i: int) -> tuple[int, int]:
    """(length, size) of the parity subcode: (q^(i+1), (2q-1) q^(q^(i+1)-3))."""
    if q < 2 or i < 1:
        raise BadParams(f"need q >= 2 and i >= 1, got q={q}, i={i}")
    length = q ** (i + 1)
    return length, (2 * q - 1) * q ** (length - 3)


def subfamily(q: int, i: int, limits: Limits = DEFAULT_LIMITS) -> tuple[GenericCode, HashFamily]:
    """(1 - 2/q^(i+1)) - U family from a subcode of the sum-zero parity code."""
    length, size = subfamily_size(q, i)
    parent = parity_code(q, np.ones(length, dtype=np.int64))
    code = subcode_select(parent, size, limits)
    return code, code_to_family(code, limits)


def subfamily_eps(q: int, i: int) -> Fraction:
    return 1 - Fraction(2, q ** (i + 1))


def delta_family(q: int, n: int, limits: Limits = DEFAULT_LIMITS, pick: str = "min") -> tuple[LinearCode, HashFamily]:
    """(1 - 2/n) - Delta-U (n; q^(n-2), q) family on cosets of the all-ones
    word in an [n, n-1, 2] code."""
    code = parity_mds_with_allones(q, n)
    return code, code_to_delta_family(code, limits, pick)
