"""q-ary codes: Reed-Solomon, sum-zero parity codes, subcodes, and
brute-force distance certification.

Codeword order is always lexicographic in the message vector (first
message symbol most significant), which is also the domain order of the
hash families built from these codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice, product

import numpy as np

from .config import DEFAULT_LIMITS, Limits
from .errors import BadParams, NoSuchVector, TooLarge, TooSmall
from .field import FiniteField, field_create


@dataclass(frozen=True)
class CodeParams:
    N: int
    K: int
    D: int
    q: int

    @property
    def singleton_ok(self) -> bool:
        return self.K <= singleton_max_size(self.N, self.D, self.q)


def _rref_rank(mat: np.ndarray, f: FiniteField) -> int:
    a = np.array(mat, dtype=np.int64, copy=True)
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        a[rank] = f.mul_table[f.inv_table[a[rank, c]], a[rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] = f.sub_table[a[r], f.mul_table[a[r, c], a[rank]]]
        rank += 1
        if rank == rows:
            break
    return rank


def encode(messages: np.ndarray, generator: np.ndarray, f: FiniteField) -> np.ndarray:
    """Multiply message rows by the generator matrix over GF(q)."""
    messages = np.atleast_2d(messages)
    if f.e == 1:
        return (messages @ generator) % f.q
    out = np.zeros((messages.shape[0], generator.shape[1]), dtype=np.int64)
    for j in range(generator.shape[0]):
        out = f.add_table[out, f.mul_table[messages[:, j : j + 1], generator[j][None, :]]]
    return out


class LinearCode:
    """An [N, k] code over GF(q) given by a full-rank k x N generator."""

    def __init__(self, field: FiniteField, generator, name: str = ""):
        g = np.array(generator, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] < 1:
            raise BadParams("generator must be a non-empty 2-D matrix")
        if g.min() < 0 or g.max() >= field.q:
            raise BadParams(f"generator entries must lie in 0..{field.q - 1}")
        if _rref_rank(g, field) != g.shape[0]:
            raise BadParams("generator rows are linearly dependent")
        g.setflags(write=False)
        self.field = field
        self.generator = g
        self.name = name
        self._words: np.ndarray | None = None

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @property
    def dim(self) -> int:
        return self.generator.shape[0]

    @property
    def size(self) -> int:
        return self.q**self.dim

    def messages(self, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
        if self.size > limits.code_enum_cap:
            raise TooLarge(f"{self.size} codewords exceeds enumeration cap {limits.code_enum_cap}")
        k = self.dim
        return np.indices((self.q,) * k).reshape(k, -1).T

    def codewords(self, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
        if self._words is None:
            words = encode(self.messages(limits), self.generator, self.field)
            words.setflags(write=False)
            self._words = words
        return self._words

    def contains(self, word) -> bool:
        w = np.asarray(word, dtype=np.int64).reshape(1, -1)
        if w.shape[1] != self.length:
            return False
        return _rref_rank(np.vstack([self.generator, w]), self.field) == self.dim

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"LinearCode{label}[N={self.length}, k={self.dim}, q={self.q}]"


class GenericCode:
    """An explicit list of distinct length-N words over a q-ary alphabet."""

    def __init__(self, q: int, words, name: str = ""):
        w = np.array(words, dtype=np.int64)
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
            raise BadParams("codewords must form a non-empty K x N array")
        if w.min() < 0 or w.max() >= q:
            raise BadParams(f"codeword symbols must lie in 0..{q - 1}")
        if len(np.unique(w, axis=0)) != len(w):
            raise BadParams("codewords must be distinct")
        w.setflags(write=False)
        self.q = q
        self.words = w
        self.name = name
        self.dropped: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return self.words.shape[1]

    @property
    def size(self) -> int:
        return self.words.shape[0]

    def codewords(self, limits: Limits = DEFAULT_LIMITS) -> np.ndarray:
        return self.words

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"GenericCode{label}(N={self.length}, K={self.size}, q={self.q})"


Code = LinearCode | GenericCode


def rs_code(q: int, k: int, n: int) -> LinearCode:
    """Reed-Solomon code: evaluations of polynomials of degree < k at the
    first n field elements."""
    if not 1 < k < n:
        raise BadParams(f"need 1 < k < n, got k={k}, n={n}")
    if n > q:
        raise BadParams(f"need n <= q (extended RS is not built), got n={n}, q={q}")
    f = field_create(q)
    points = np.arange(n)
    rows = [np.ones(n, dtype=np.int64)]
    for _ in range(1, k):
        rows.append(f.mul_table[rows[-1], points])
    return LinearCode(f, np.stack(rows), name=f"RS(q={q},k={k},n={n})")


def parity_code(q: int, check) -> LinearCode:
    """The [n, n-1] code {x : sum_i check_i x_i = 0}; check must be all nonzero."""
    f = field_create(q)
    v = np.asarray(check, dtype=np.int64)
    n = len(v)
    if n < 2:
        raise BadParams("parity code needs length >= 2")
    if np.any(v == 0) or np.any(v >= q):
        raise BadParams("check vector entries must be nonzero field elements")
    last_inv = f.inv(int(v[-1]))
    g = np.zeros((n - 1, n), dtype=np.int64)
    g[np.arange(n - 1), np.arange(n - 1)] = 1
    g[:, -1] = f.neg_table[f.mul_table[v[:-1], last_inv]]
    code = LinearCode(f, g, name=f"parity(q={q},v={tuple(int(x) for x in v)})")
    code.check = tuple(int(x) for x in v)
    return code


def find_allones_check(q: int, n: int) -> tuple[int, ...]:
    """Lexicographically first v in (GF(q)*)^n whose entries sum to zero."""
    f = field_create(q)
    if n < 2:
        raise BadParams("length must be >= 2")
    for prefix in product(range(1, q), repeat=n - 1):
        s = 0
        for x in prefix:
            s = int(f.add_table[s, x])
        last = int(f.neg_table[s])
        if last != 0:
            return prefix + (last,)
    raise NoSuchVector(f"no all-nonzero vector of length {n} over GF({q}) sums to zero")


def parity_mds_with_allones(q: int, n: int) -> LinearCode:
    """An [n, n-1, 2] MDS code over GF(q) containing the all-ones word."""
    return parity_code(q, find_allones_check(q, n))


def min_distance(code: Code, limits: Limits = DEFAULT_LIMITS) -> int:
    if isinstance(code, LinearCode):
        words = code.codewords(limits)
        weights = np.count_nonzero(words[1:], axis=1)
        return int(weights.min())
    K = code.size
    if K < 2:
        raise TooSmall("minimum distance needs at least two codewords")
    if K * (K - 1) // 2 > limits.code_enum_cap:
        raise TooLarge(f"{K * (K - 1) // 2} pairwise comparisons exceeds cap {limits.code_enum_cap}")
    w = code.words
    best = code.length
    for i in range(K - 1):
        d = np.count_nonzero(w[i + 1 :] != w[i], axis=1).min()
        best = min(best, int(d))
    return best


def code_params(code: Code, limits: Limits = DEFAULT_LIMITS) -> CodeParams:
    return CodeParams(code.length, code.size, min_distance(code, limits), code.q)


def singleton_max_size(N: int, D: int, q: int) -> int:
    if not 1 <= D <= N or q < 2:
        raise BadParams(f"need 1 <= D <= N and q >= 2, got N={N}, D={D}, q={q}")
    return q ** (N - D + 1)


def is_mds(code: Code, limits: Limits = DEFAULT_LIMITS) -> bool:
    D = min_distance(code, limits)
    return code.size == singleton_max_size(code.length, D, code.q)


def subcode_select(code: LinearCode, size: int, limits: Limits = DEFAULT_LIMITS) -> GenericCode:
    """The first `size` codewords in message order."""
    if size < 2:
        raise TooSmall("a subcode needs at least two codewords")
    if size > code.size:
        raise TooLarge(f"subcode size {size} exceeds code size {code.size}")
    if size > limits.code_enum_cap:
        raise TooLarge(f"subcode size {size} exceeds enumeration cap {limits.code_enum_cap}")
    msgs = np.array(list(islice(product(range(code.q), repeat=code.dim), size)), dtype=np.int64)
    words = encode(msgs, code.generator, code.field)
    return GenericCode(code.q, words, name=f"subcode({size}) of {code.name or 'code'}")


def repetition_code(q: int, n: int) -> LinearCode:
    return LinearCode(field_create(q), np.ones((1, n), dtype=np.int64), name=f"rep(q={q},n={n})")
