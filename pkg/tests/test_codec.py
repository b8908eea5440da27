import itertools
import json
import random
from collections import Counter

import numpy as np
import pytest

from leefcc.codec import (FcEncoder, LeeBallSampler, brute_force_optimal_redundancy,
                          build_from_dcode, build_image_encoder, build_local_encoder,
                          check_coloring, cubic_lower_bound, decode_function_value,
                          inject_errors,
                          min_redundancy_by_encoder_search, optimal_encoder,
                          redundancy_bounds, simulate, simulation_csv, tau_coloring,
                          verify_fclmc)
from leefcc.errors import (DecodingFault, UncorrectableError, VerificationError)
from leefcc.functions import FunctionSpec, lemma_ij_representative, locality_lambda
from leefcc.lee import vector_array
from leefcc.matrices import (constant_matrix, full_message_matrix, image_matrix,
                             lee_weight_matrix, message_matrix)
from leefcc.search import exact_min_length, nl_two_2t

from conftest import brute_ball, brute_lee


def random_table(m, k, n_vals, seed):
    rng = random.Random(seed)
    return FunctionSpec.from_table(m, k, [rng.randrange(n_vals) for _ in range(m**k)])


def projection(m, k):
    return FunctionSpec.from_callable(m, k, lambda u: u[0])


def brute_certified(enc):
    """Pairwise check written directly from the definition."""
    msgs = list(itertools.product(range(enc.m), repeat=enc.k))
    for u, v in itertools.combinations(msgs, 2):
        if enc.f(u) != enc.f(v) and brute_lee(enc.encode(u), enc.encode(v), enc.m) < 2 * enc.t + 1:
            return False
    return True


# verification

def test_classical_lee_code_certifies_any_function():
    # u -> (u, 2u) over Z_5 has minimum Lee distance 3
    for seed in range(5):
        f = random_table(5, 1, 3, seed)
        enc = FcEncoder(f, 1, [(2 * u % 5,) for u in range(5)], 1)
        assert verify_fclmc(enc) and brute_certified(enc)


def test_classical_code_certifies_any_function():
    # full-length repetition over Z_2 gives minimum distance 3 for k = 1
    f = random_table(2, 1, 2, seed=4)
    enc = FcEncoder(f, 1, [(0, 0), (1, 1)], 2)
    assert verify_fclmc(enc).certified


def test_zero_redundancy_fails_at_distance_one():
    f = FunctionSpec.lee_weight(3, 2)
    enc = FcEncoder(f, 1, [()] * 9, 0)
    verdict = verify_fclmc(enc)
    assert not verdict and not enc.certified
    u, v, d = verdict.counterexample
    assert d == 1 and f(u) != f(v)
    assert brute_lee(u, v, 3) == 1


def test_verify_matches_definition_on_random_encoders():
    rng = random.Random(5)
    for _ in range(20):
        m, k, r = rng.choice([2, 3]), 2, rng.randint(0, 3)
        f = random_table(m, k, 3, rng.randrange(1000))
        p = [tuple(rng.randrange(m) for _ in range(r)) for _ in range(m**k)]
        enc = FcEncoder(f, 1, p, r)
        assert bool(verify_fclmc(enc)) == brute_certified(enc)


# builders

def test_build_from_exact_witness():
    f = FunctionSpec.lee_weight(2, 2)
    res = exact_min_length(full_message_matrix(f, 1), 2)
    enc = build_from_dcode(f, 1, res.code)
    assert enc.r == 3 and enc.certified and brute_certified(enc)


def test_build_from_dcode_with_message_order():
    f = FunctionSpec.lee_weight(3, 2)
    msgs = [tuple(x) for x in vector_array(3, 2).tolist()][::-1]
    res = exact_min_length(message_matrix(f, 1, msgs), 3)
    enc = build_from_dcode(f, 1, res.code, msgs)
    assert enc.certified
    assert enc.redundancy(msgs[0]) == res.code.codewords[0]


def test_constant_function_needs_no_redundancy():
    f = FunctionSpec.from_table(3, 2, [0] * 9)
    assert build_from_dcode(f, 1, [()] * 9).r == 0
    assert build_image_encoder(f, 1, [()]).r == 0
    assert brute_force_optimal_redundancy(f, 1) == 0
    assert tau_coloring(f, 2).n_colors == 1


def test_mismatched_code_rejected_with_pair():
    f = FunctionSpec.lee_weight(2, 2)
    code = list(exact_min_length(full_message_matrix(f, 1), 2).code.codewords)
    # collapse two words with different weights onto each other
    code[1] = code[0]
    with pytest.raises(VerificationError) as err:
        build_from_dcode(f, 1, code)
    assert err.value.witness[:2] == (0, 1)


def test_image_encoder_for_lee_weight():
    for m, k, t in [(3, 2, 1), (4, 2, 1), (5, 2, 1)]:
        f = FunctionSpec.lee_weight(m, k)
        res = exact_min_length(lee_weight_matrix(k, t, m), m)
        enc = build_image_encoder(f, t, res.code)
        assert enc.certified and enc.r == res.length
        assert brute_certified(enc)


def test_image_encoder_two_values_distance_one():
    f = projection(2, 2)
    t = 2
    # repetition of length 2t is a code of minimum Lee distance 2t
    enc = build_image_encoder(f, t, [(0,) * 2 * t, (1,) * 2 * t])
    assert enc.certified


def test_every_builder_output_certifies():
    f = random_table(3, 2, 3, seed=9)
    t = 1
    enc = optimal_encoder(f, t)
    assert verify_fclmc(enc) and brute_certified(enc)
    img = exact_min_length(image_matrix(f, t), 3).code
    assert verify_fclmc(build_image_encoder(f, t, img))


# colouring

def test_tau_projection_is_binary():
    f = projection(2, 3)
    col = tau_coloring(f, 2)
    assert col.n_colors == 2
    assert check_coloring(f, col) is None


@pytest.mark.parametrize("m,k,t", [(3, 2, 1), (4, 2, 1), (4, 3, 1), (5, 2, 1), (3, 3, 2)])
def test_tau_lee_weight_bounded(m, k, t):
    f = FunctionSpec.lee_weight(m, k)
    col = tau_coloring(f, 2 * t)
    assert check_coloring(f, col) is None
    assert col.n_colors <= 4 * t + 1
    assert col.n_colors <= locality_lambda(f, 2 * t)


def test_tau_random_tables_valid():
    for seed in range(10):
        f = random_table(3, 2, 4, seed)
        col = tau_coloring(f, 2)
        assert check_coloring(f, col) is None
        assert col.n_colors <= col.lam


def test_local_encoder_locally_binary_is_optimal():
    for m, t in [(2, 1), (3, 1), (4, 2), (5, 2)]:
        f = FunctionSpec.from_callable(m, 2, lambda u: int(u[0] == 0))
        col = tau_coloring(f, 2 * t)
        code = exact_min_length(constant_matrix(2, 2 * t), m).code
        enc = build_local_encoder(f, t, col, code)
        assert enc.r == nl_two_2t(m, t)
        assert enc.r == brute_force_optimal_redundancy(f, t)


def test_local_encoder_lee_weight_z4():
    f = FunctionSpec.lee_weight(4, 2)
    col = tau_coloring(f, 2)
    res = exact_min_length(constant_matrix(5, 2), 4)
    enc = build_local_encoder(f, 1, col, res.code)
    assert enc.r <= res.length
    assert brute_certified(enc)


def test_local_encoder_rejects_small_code():
    f = FunctionSpec.lee_weight(4, 2)
    col = tau_coloring(f, 2)
    with pytest.raises(ValueError):
        build_local_encoder(f, 1, col, [(0,), (2,)])
    with pytest.raises(VerificationError):
        build_local_encoder(f, 1, col, [(0,), (1,), (2,), (3,), (0,)])


# redundancy

@pytest.mark.parametrize("m,k,t,expected", [(2, 2, 1, 3), (3, 2, 1, 2)])
def test_optimal_redundancy_values(m, k, t, expected):
    f = FunctionSpec.lee_weight(m, k)
    assert brute_force_optimal_redundancy(f, t) == expected
    assert min_redundancy_by_encoder_search(f, t) == expected


@pytest.mark.parametrize("m,k,t,seed", [(2, 2, 1, 1), (3, 2, 1, 2), (2, 3, 1, 3), (4, 1, 1, 4)])
def test_equality_with_encoder_search(m, k, t, seed):
    f = random_table(m, k, 3, seed)
    assert brute_force_optimal_redundancy(f, t) == min_redundancy_by_encoder_search(f, t)


def test_sandwich_and_image_dominance():
    rng = random.Random(17)
    for _ in range(12):
        m, k, t = rng.choice([2, 3, 4]), rng.choice([1, 2]), 1
        f = random_table(m, k, rng.randint(2, 3), rng.randrange(10**6))
        if f.eta < 2:
            continue
        r = brute_force_optimal_redundancy(f, t)
        upper = exact_min_length(constant_matrix(f.eta, 2 * t), m).length
        assert nl_two_2t(m, t) <= r <= upper
        assert exact_min_length(image_matrix(f, t), m).length >= r


def test_image_optimum_equals_lee_weight_redundancy():
    for m, k, t in [(2, 2, 1), (3, 2, 1), (4, 2, 1), (5, 2, 1)]:
        f = FunctionSpec.lee_weight(m, k)
        # representatives reproduce the image matrix
        reps = [lemma_ij_representative(m, k, i) for i in range(k * (m // 2) + 1)]
        assert message_matrix(f, t, reps) == lee_weight_matrix(k, t, m)
        assert (exact_min_length(image_matrix(f, t), m).length
                == brute_force_optimal_redundancy(f, t))


def test_cubic_bound_value():
    assert cubic_lower_bound(2, 4) == 2.5


def test_cubic_bound_overshoots_for_odd_modulus():
    # a single parity symbol 0,2,4,1,3 indexed by weight separates the image
    f = FunctionSpec.lee_weight(5, 2)
    assert cubic_lower_bound(1, 5) > 1
    assert min_redundancy_by_encoder_search(f, 1) == 1
    enc = build_image_encoder(f, 1, [(0,), (2,), (4,), (1,), (3,)])
    assert enc.r == 1
    assert redundancy_bounds(f, 1).lower == 1


@pytest.mark.parametrize("m,k,t", [(4, 4, 2), (4, 3, 1), (3, 2, 1), (5, 3, 1), (6, 2, 2)])
def test_redundancy_bounds_bracket(m, k, t):
    f = FunctionSpec.lee_weight(m, k)
    b = redundancy_bounds(f, t)
    b.check()
    if k <= 2:
        assert b.lower <= brute_force_optimal_redundancy(f, t) <= b.upper


def test_redundancy_bounds_example():
    b = redundancy_bounds(FunctionSpec.lee_weight(4, 4), 2)
    assert b.values["cubic_lower"][0] == 2.5
    assert b.lower == b.upper == 3


def test_two_valued_bounds():
    f = projection(3, 2)
    b = redundancy_bounds(f, 1)
    assert b.lower == b.upper == nl_two_2t(3, 1)


def test_large_t_bracket_sane():
    f = FunctionSpec.lee_weight(3, 1)
    redundancy_bounds(f, 3).check()


# channel

def test_inject_zero_is_identity():
    assert inject_errors((1, 2, 3), 0, 5, seed=1) == (1, 2, 3)


def test_inject_weight_within_radius():
    rng = random.Random(2)
    for _ in range(200):
        c = tuple(rng.randrange(5) for _ in range(4))
        out = inject_errors(c, 2, 5, seed=rng)
        assert brute_lee(c, out, 5) <= 2


def test_inject_deterministic():
    assert inject_errors((0,) * 6, 3, 7, seed=42) == inject_errors((0,) * 6, 3, 7, seed=42)


@pytest.mark.parametrize("n,t,m", [(2, 1, 5), (3, 1, 4), (2, 2, 5), (3, 2, 3)])
def test_sampler_unrank_is_ball_bijection(n, t, m):
    s = LeeBallSampler(n, t, m)
    ball = brute_ball((0,) * n, t, m)
    assert s.size == len(ball)
    assert sorted(s.unrank(i) for i in range(s.size)) == sorted(ball)


@pytest.mark.parametrize("n,t,m", [(3, 1, 5), (2, 2, 7)])
def test_sampler_uniform(n, t, m):
    s = LeeBallSampler(n, t, m)
    assert s.size <= 50
    rng = random.Random(123)
    draws = 100_000
    counts = Counter(s.sample(rng) for _ in range(draws))
    p = 1 / s.size
    mean, sd = draws * p, (draws * p * (1 - p)) ** 0.5
    assert set(counts) == set(brute_ball((0,) * n, t, m))
    assert all(abs(c - mean) <= 5 * sd for c in counts.values())


def test_decode_without_errors():
    f = FunctionSpec.lee_weight(3, 2)
    enc = optimal_encoder(f, 1)
    for u in itertools.product(range(3), repeat=2):
        assert decode_function_value(enc.encode(u), enc) == f(u)


def test_decode_requires_certified():
    f = FunctionSpec.lee_weight(2, 2)
    enc = FcEncoder(f, 1, [(0,)] * 4, 1)
    with pytest.raises(ValueError):
        decode_function_value((0, 0, 0), enc)


def test_decoder_fault_on_forged_certificate():
    f = FunctionSpec.lee_weight(2, 2)
    enc = FcEncoder(f, 1, [()] * 4, 0)
    enc.certified = True
    with pytest.raises(DecodingFault):
        decode_function_value((0, 0), enc)


def test_uncorrectable():
    f = FunctionSpec.lee_weight(5, 1)
    enc = build_image_encoder(f, 1, [(0, 0, 0), (2, 2, 0), (4, 4, 2)])
    # (0, 2, 4, 1) is at distance >= 2 from every encoding
    with pytest.raises(UncorrectableError):
        decode_function_value((0, 2, 4, 1), enc)


def test_simulation_all_correct():
    f = random_table(3, 2, 3, seed=8)
    enc = optimal_encoder(f, 1)
    rows = simulate(enc, 500, seed=3)
    assert len(rows) == 500 and all(r[3] for r in rows)
    assert all(r[1] <= 1 for r in rows)
    assert simulate(enc, 500, seed=3) == rows
    text = simulation_csv(rows)
    assert text.splitlines()[0] == "trial,errors_injected_weight,recovered,correct"


# serialisation

def test_encoder_json_roundtrip(tmp_path):
    f = random_table(3, 2, 3, seed=1)
    enc = optimal_encoder(f, 1)
    path = tmp_path / "enc.json"
    enc.save(path)
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1 and doc["r"] == enc.r and len(doc["p"]) == 9
    back = FcEncoder.load(path)
    assert not back.certified
    assert back.p == enc.p and back.f.values.tolist() == f.values.tolist()
    assert verify_fclmc(back)


def test_encoder_codewords_layout():
    f = FunctionSpec.lee_weight(3, 2)
    enc = optimal_encoder(f, 1)
    E = enc.codewords
    assert E.shape == (9, 2 + enc.r)
    assert np.array_equal(E[:, :2], vector_array(3, 2))
