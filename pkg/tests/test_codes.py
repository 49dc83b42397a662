from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mdshash.codes import (
    GenericCode,
    LinearCode,
    code_params,
    find_allones_check,
    is_mds,
    min_distance,
    parity_code,
    parity_mds_with_allones,
    repetition_code,
    rs_code,
    singleton_max_size,
    subcode_select,
)
from mdshash.config import Limits
from mdshash.errors import BadParams, NoSuchVector, TooLarge, TooSmall
from mdshash.field import field_create


def hamming(u, v):
    return sum(a != b for a, b in zip(u, v))


def brute_distance(words):
    return min(hamming(u, v) for u, v in combinations(words, 2))


def rs_words_oracle(q, k, n):
    """Prime q only: evaluate every polynomial of degree < k with plain ints."""
    return [
        tuple(sum(c * x**j for j, c in enumerate(coeffs)) % q for x in range(n))
        for coeffs in product(range(q), repeat=k)
    ]


def test_rs_3_2_3_generator_and_distance():
    c = rs_code(3, 2, 3)
    assert c.generator.tolist() == [[1, 1, 1], [0, 1, 2]]
    words = [tuple(w) for w in c.codewords()]
    assert len(words) == 9
    assert brute_distance(words) == 2 == min_distance(c)
    assert is_mds(c)


def test_rs_5_2_5_distance():
    c = rs_code(5, 2, 5)
    assert brute_distance([tuple(w) for w in c.codewords()]) == 4
    assert min_distance(c) == 4


def test_rs_bad_params():
    with pytest.raises(BadParams):
        rs_code(3, 3, 3)
    with pytest.raises(BadParams):
        rs_code(3, 2, 4)


@pytest.mark.parametrize("q", [3, 5, 7])
def test_rs_codewords_match_oracle(q):
    for n in range(3, q + 1):
        for k in range(2, n):
            if q**k > 5000:
                continue
            got = {tuple(w) for w in rs_code(q, k, n).codewords()}
            assert got == set(rs_words_oracle(q, k, n))


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_rs_distance_is_n_minus_k_plus_1(q):
    for n in range(3, q + 1):
        for k in range(2, n):
            c = rs_code(q, k, n)
            assert min_distance(c) == n - k + 1
            assert c.size == singleton_max_size(n, n - k + 1, q)


def test_parity_allones_3_3():
    c = parity_mds_with_allones(3, 3)
    assert c.check == (1, 1, 1)
    assert c.contains([1, 1, 1])


def test_parity_allones_3_4():
    c = parity_mds_with_allones(3, 4)
    assert c.check == (1, 1, 2, 2)
    words = [tuple(w) for w in c.codewords()]
    assert len(words) == 27
    assert brute_distance(words) == 2
    assert all(sum(v * x for v, x in zip(c.check, w)) % 3 == 0 for w in words)
    assert is_mds(c)


def test_parity_allones_none_over_gf2_odd():
    with pytest.raises(NoSuchVector):
        parity_mds_with_allones(2, 3)


def test_allones_check_is_lexicographically_first():
    for q, n in [(3, 4), (3, 5), (4, 3), (5, 4), (2, 4)]:
        f = field_create(q)
        expect = None
        for v in product(range(1, q), repeat=n):
            s = 0
            for x in v:
                s = f.add(s, x)
            if s == 0:
                expect = v
                break
        assert find_allones_check(q, n) == expect


@pytest.mark.parametrize("q,n", [(3, 3), (3, 4), (4, 3), (4, 5), (5, 6), (8, 4), (9, 3), (2, 6)])
def test_parity_allones_properties(q, n):
    c = parity_mds_with_allones(q, n)
    assert c.contains(np.ones(n, dtype=int))
    assert min_distance(c) == 2
    assert is_mds(c)


def test_min_distance_small_codes():
    assert min_distance(GenericCode(2, [[0, 0, 0], [1, 1, 1]])) == 3
    assert min_distance(repetition_code(2, 3)) == 3
    full = LinearCode(field_create(3), np.eye(3, dtype=int))
    assert min_distance(full) == 1


def test_is_mds_three_word_code():
    c = GenericCode(2, [[0, 0, 0], [1, 1, 0], [0, 1, 1]])
    assert min_distance(c) == 2
    assert not is_mds(c)
    assert is_mds(repetition_code(2, 3))


def test_subcode_parameters():
    parent = parity_code(2, [1, 1, 1, 1])
    sub = subcode_select(parent, 6)
    p = code_params(sub)
    assert (p.N, p.K, p.D, p.q) == (4, 6, 2, 2)
    words = [tuple(w) for w in sub.words]
    assert brute_distance(words) == 2


def test_subcode_edge_sizes():
    parent = parity_code(2, [1, 1, 1, 1])
    whole = subcode_select(parent, 8)
    assert {tuple(w) for w in whole.words} == {tuple(w) for w in parent.codewords()}
    with pytest.raises(TooSmall):
        subcode_select(parent, 1)
    with pytest.raises(TooLarge):
        subcode_select(parent, 9)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 2, 3), (5, 3, 5), (4, 2, 4), (7, 3, 6)]), st.data())
def test_subcode_never_decreases_distance(params, data):
    c = rs_code(*params)
    size = data.draw(st.integers(2, c.size))
    assert min_distance(subcode_select(c, size)) >= min_distance(c)


def test_singleton_values():
    assert singleton_max_size(4, 2, 2) == 8
    assert singleton_max_size(5, 4, 5) == 25
    assert singleton_max_size(3, 3, 2) == 2
    assert singleton_max_size(40, 1, 7) == 7**40
    with pytest.raises(BadParams):
        singleton_max_size(3, 4, 2)


def test_enumeration_caps():
    with pytest.raises(TooLarge):
        min_distance(rs_code(7, 6, 7), Limits(code_enum_cap=1000))
    big = GenericCode(2, [list(map(int, f"{i:012b}")) for i in range(200)])
    with pytest.raises(TooLarge):
        min_distance(big, Limits(code_enum_cap=100))


def test_dependent_generator_rejected():
    with pytest.raises(BadParams):
        LinearCode(field_create(3), [[1, 2, 0], [2, 1, 0]])


def test_generic_code_rejects_duplicates():
    with pytest.raises(BadParams):
        GenericCode(2, [[0, 1], [0, 1]])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda q: st.tuples(st.just(q), st.integers(2, 5))), st.data())
def test_random_linear_codes_meet_singleton(qn, data):
    q, n = qn
    f = field_create(q)
    k = data.draw(st.integers(1, n))
    rows = data.draw(
        st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k)
    )
    try:
        c = LinearCode(f, rows)
    except BadParams:
        return
    p = code_params(c)
    assert p.singleton_ok
    words = [tuple(w) for w in c.codewords()]
    if len(words) <= 200:
        assert brute_distance(words) == p.D
