import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from leefcc.errors import BudgetExhausted, ConstructionError, VerificationError
from leefcc.matrices import DistanceMatrix, constant_matrix, lee_weight_matrix
from leefcc.search import (IrregularCode, bound_report, exact_min_length,
                           greedy_construct, gv_upper_bound, hamming_chain_bound,
                           nl_two_2t, plotkin_lower_bound,
                           averaging_lower_bound, column_distance_cap)

from conftest import brute_lee


def brute_min_length(D, m, max_r=4):
    """Smallest r admitting any M-tuple of words meeting D, by full enumeration."""
    M = len(D)
    for r in range(max_r + 1):
        space = list(itertools.product(range(m), repeat=r))
        for words in itertools.product(space, repeat=M):
            if all(brute_lee(words[i], words[j], m) >= D[i][j]
                   for i in range(M) for j in range(i + 1, M)):
                return r
    return None


def random_matrix(rng, M, top):
    a = np.zeros((M, M), dtype=int)
    for i in range(M):
        for j in range(i + 1, M):
            a[i, j] = a[j, i] = rng.randint(0, top)
    return DistanceMatrix(a)


def test_plotkin_examples():
    assert plotkin_lower_bound([[0, 3], [3, 0]], 4) == Fraction(3, 2)
    for m in range(2, 9):
        for t in (1, 2, 3):
            p = plotkin_lower_bound([[0, 2 * t], [2 * t, 0]], m)
            assert p == Fraction(2 * t, m // 2)
            assert math.ceil(p) == nl_two_2t(m, t)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6])
def test_plotkin_specialisations(M):
    rng = random.Random(M)
    D = random_matrix(rng, M, 5)
    s = D.upper_sum()
    sq = M * M if M % 2 == 0 else M * M - 1
    assert plotkin_lower_bound(D, 2) == Fraction(4 * s, sq)
    assert plotkin_lower_bound(D, 4) == Fraction(2 * s, sq)


@pytest.mark.parametrize("M", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("m", [3, 4, 7])
def test_plotkin_regular_distance(M, m):
    d = 3
    p = plotkin_lower_bound(constant_matrix(M, d), m)
    regular = Fraction(2 * d * (M - 1), M * (m // 2))
    if M % 2 == 0:
        assert p == regular
    else:
        assert p >= regular


def test_gv_examples():
    assert gv_upper_bound([[0, 3], [3, 0]], 4) == 2
    assert gv_upper_bound(np.zeros((3, 3), dtype=int), 5) == 0
    for m in range(2, 8):
        assert gv_upper_bound([[0, 1], [1, 0]], m) == 1


def test_exact_examples():
    res = exact_min_length([[0, 3], [3, 0]], 4)
    assert res.length == 2 and res.code.is_valid()
    D3 = [[0, 2, 1], [2, 0, 2], [1, 2, 0]]
    assert brute_min_length(D3, 2) == 3
    assert exact_min_length(D3, 2).length == 3
    assert IrregularCode([(0, 0, 0), (1, 1, 0), (0, 1, 1)], DistanceMatrix(D3), 2).is_valid()
    assert exact_min_length(np.zeros((4, 4), dtype=int), 3).length == 0


@pytest.mark.parametrize("m", range(2, 9))
@pytest.mark.parametrize("t", [1, 2, 3])
def test_two_word_closed_form(m, t):
    res = exact_min_length([[0, 2 * t], [2 * t, 0]], m)
    assert res.length == nl_two_2t(m, t)
    assert brute_lee(*res.code.codewords, m) >= 2 * t


def test_nl_two_2t_values():
    for t in range(1, 6):
        assert nl_two_2t(2, t) == 2 * t
        assert nl_two_2t(4, t) == t
    assert nl_two_2t(3, 2) == 4


def test_exact_against_enumeration():
    rng = random.Random(11)
    for _ in range(25):
        m = rng.choice([2, 3, 4])
        M = rng.choice([2, 3])
        D = random_matrix(rng, M, 3)
        res = exact_min_length(D, m)
        assert res.length == brute_min_length(D.tolist(), m, max_r=5)
        res.code.certify()


def test_bracket_and_certification():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.choice([3, 4, 5])
        D = random_matrix(rng, rng.randint(2, 5), 5)
        res = exact_min_length(D, m)
        assert math.ceil(averaging_lower_bound(D, m)) <= res.length <= gv_upper_bound(D, m)
        if m % 2 == 0:
            assert math.ceil(plotkin_lower_bound(D, m)) <= res.length
        res.code.certify()


def test_plotkin_overshoots_for_odd_modulus():
    # three words of length 2 over Z_5 meet these requirements
    D = [[0, 4, 3], [4, 0, 2], [3, 2, 0]]
    code = IrregularCode([(0, 0), (2, 2), (1, 3)], DistanceMatrix(D), 5)
    code.certify()
    assert math.ceil(plotkin_lower_bound(D, 5)) == 3
    assert exact_min_length(D, 5).length == 2
    assert math.ceil(averaging_lower_bound(D, 5)) <= 2


@pytest.mark.parametrize("m", range(2, 10))
def test_column_cap_against_enumeration(m):
    for M in range(2, 7):
        best = max(sum(brute_lee((a,), (b,), m) for a in col for b in col)
                   for col in itertools.combinations_with_replacement(range(m), M))
        cap = column_distance_cap(M, m)
        assert best <= cap
        if m % 2 == 0:
            assert best == cap


@pytest.mark.parametrize("m", [2, 4, 6])
def test_averaging_matches_plotkin_for_even_modulus(m):
    rng = random.Random(m)
    for _ in range(10):
        D = random_matrix(rng, rng.randint(2, 6), 6)
        assert averaging_lower_bound(D, m) == plotkin_lower_bound(D, m)


def test_monotone_under_principal_submatrices():
    rng = random.Random(8)
    for _ in range(10):
        m = rng.choice([3, 4, 5])
        D = random_matrix(rng, 5, 4)
        full = exact_min_length(D, m).length
        for size in (2, 3, 4):
            for rows in itertools.combinations(range(5), size):
                assert exact_min_length(D.submatrix(rows), m).length <= full


def test_result_independent_of_workers():
    D = lee_weight_matrix(3, 2, 4)
    a = exact_min_length(D, 4)
    b = exact_min_length(D, 4, workers=2)
    assert a.length == b.length
    b.code.certify()


def test_budget_exhaustion_brackets():
    D = lee_weight_matrix(4, 3, 4)
    with pytest.raises(BudgetExhausted) as info:
        exact_min_length(D, 4, budget=5)
    assert info.value.lower <= info.value.upper == gv_upper_bound(D, 4)


def test_greedy_examples():
    code = greedy_construct([[0, 3], [3, 0]], 2, 4)
    first = next(v for v in itertools.product(range(4), repeat=2)
                 if brute_lee((0, 0), v, 4) >= 3)
    assert code.codewords == [(0, 0), first]
    assert first <= (2, 1)
    with pytest.raises(ConstructionError) as info:
        greedy_construct([[0, 1], [1, 0]], 0, 3)
    assert info.value.index == 2


def test_greedy_succeeds_at_gv():
    rng = random.Random(21)
    for _ in range(50):
        m = rng.choice([2, 3, 4, 5])
        D = random_matrix(rng, rng.randint(1, 5), 4)
        greedy_construct(D, gv_upper_bound(D, m), m).certify()


def test_certify_reports_violation():
    code = IrregularCode([(0, 0), (1, 0)], DistanceMatrix([[0, 2], [2, 0]]), 4)
    with pytest.raises(VerificationError) as info:
        code.certify()
    assert info.value.witness == (0, 1, 1, 2)


def test_hamming_chain_bound():
    assert round(hamming_chain_bound(100, 10), 1) == 446.7
    with pytest.raises(ValueError):
        hamming_chain_bound(10, 9)
    with pytest.raises(ValueError):
        hamming_chain_bound(101, 10)
    v = hamming_chain_bound(10**4, 100)
    assert 0 < v < math.inf


def test_hamming_metric_search():
    # binary: Lee and Hamming coincide
    D = constant_matrix(4, 3)
    assert exact_min_length(D, 2, metric="hamming").length == exact_min_length(D, 2).length == 5
    # ternary: two words at Hamming distance 3 need 3 symbols
    assert exact_min_length(constant_matrix(2, 3), 3, metric="hamming").length == 3


def test_bound_report():
    rep = bound_report([[0, 4], [4, 0]], 3)
    rep.check()
    assert rep.exact == rep.closed_form == 4
