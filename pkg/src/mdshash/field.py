"""Table-backed arithmetic over GF(q) for prime powers q <= 1024.

Elements are the integers 0..q-1. For q = p^e the label of an element is
the base-p integer formed by its coefficients in the polynomial basis
{1, x, ..., x^(e-1)} modulo a fixed irreducible polynomial, so 0 and 1 are
the additive and multiplicative identities for every q.

The irreducible polynomial is the smallest monic degree-e irreducible when
polynomials are ordered by that same base-p encoding (x^2+x+1 for GF(4),
x^2+1 for GF(9)). This keeps labels stable across runs and file formats.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .errors import BadParams, DivisionByZero, NotPrimePower

MAX_ORDER = 1024


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p**e, or raise NotPrimePower."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    return p, e


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # coefficient lists are low-to-high; den is monic
    num = list(num)
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % p
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    rem = [c % p for c in num[:d]]
    return rem


def _is_irreducible(poly: list[int], p: int) -> bool:
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> list[int]:
    for code in range(p**e):
        low = [(code // p**j) % p for j in range(e)]
        poly = low + [1]
        if e == 1 or (poly[0] != 0 and _is_irreducible(poly, p)):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FiniteField:
    """GF(q) with dense lookup tables.

    Instances are immutable once built; the tables are marked read-only so
    sharing one field across threads is safe.
    """

    def __init__(self, q: int):
        self.p, self.e = prime_power(q)
        if q > MAX_ORDER:
            raise BadParams(f"field order must satisfy 2 <= q <= {MAX_ORDER}, got {q}")
        self.q = q
        self.modulus = tuple(_smallest_irreducible(self.p, self.e))
        self._build_tables()

    def _build_tables(self) -> None:
        q, p, e = self.q, self.p, self.e
        labels = np.arange(q)
        digits = np.stack([(labels // p**j) % p for j in range(e)], axis=1)
        weights = p ** np.arange(e)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        if e == 1:
            mul = np.outer(labels, labels) % p
        else:
            mul = self._mul_via_logs()

        inv = np.zeros(q, dtype=np.int64)
        nz_rows, nz_cols = np.nonzero(mul == 1)
        inv[nz_rows] = nz_cols

        self.add_table = add.astype(np.int64)
        self.neg_table = neg.astype(np.int64)
        self.sub_table = self.add_table[:, self.neg_table]
        self.mul_table = mul.astype(np.int64)
        self.inv_table = inv
        for t in (self.add_table, self.neg_table, self.sub_table, self.mul_table, self.inv_table):
            t.setflags(write=False)

    def _poly_mul_label(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        da = [(a // p**j) % p for j in range(e)]
        db = [(b // p**j) % p for j in range(e)]
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        rem = _poly_mod(prod, list(self.modulus), p) if len(prod) > e else prod
        rem = rem + [0] * (e - len(rem))
        return sum(c * p**j for j, c in enumerate(rem))

    def _mul_via_logs(self) -> np.ndarray:
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._poly_mul_label(x, g)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError("no primitive element found")
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[exp_arr[: q - 1]] = np.arange(q - 1)
        mul = exp_arr[log[:, None] + log[None, :]]
        mul[0, :] = 0
        mul[:, 0] = 0
        return mul

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.q:
                raise BadParams(f"{x} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        self._check(a)
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.q})")
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def field_create(q: int) -> FiniteField:
    return FiniteField(q)


def field_arith(f: FiniteField, op: str, a: int, b: int | None = None) -> int:
    if op == "inv":
        return f.inv(a)
    if op == "neg":
        return f.neg(a)
    if b is None:
        raise BadParams(f"operation {op!r} needs two operands")
    try:
        fn = {"add": f.add, "sub": f.sub, "mul": f.mul}[op]
    except KeyError:
        raise BadParams(f"unknown field operation {op!r}") from None
    return fn(a, b)
