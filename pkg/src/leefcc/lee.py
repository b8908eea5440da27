"""Lee-metric primitives over Z_m.

Vectors are plain tuples of residues in ``0..m-1``; the modulus travels
alongside them as an explicit argument.  The symmetric representation
(``-m//2 .. m//2``) is only ever used as a view when computing weights.
"""
import itertools
from functools import lru_cache
from math import comb

import numpy as np

from .errors import CapacityError, DimensionError

ZmVector = tuple  # tuple[int, ...]

# largest space size m**r we agree to count in
MAX_SPACE = 2**63
# largest total Lee weight n * (m // 2)
MAX_WEIGHT = 2**31


def check_modulus(m):
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise ValueError(f"modulus must be an integer >= 2, got {m!r}")
    return int(m)


def half_modulus(m):
    """Largest Lee weight of a single symbol, ``floor(m/2)``."""
    return check_modulus(m) // 2


def check_vector(u, m, n=None):
    """Return ``u`` as a tuple, validating residues and (optionally) length."""
    u = tuple(int(x) for x in u)
    if n is not None and len(u) != n:
        raise DimensionError(f"expected length {n}, got {len(u)}")
    for x in u:
        if not 0 <= x < m:
            raise DimensionError(f"entry {x} is not a residue mod {m}")
    return u


def check_capacity(n, m):
    if n * (m // 2) > MAX_WEIGHT:
        raise CapacityError(f"length {n} over Z_{m} exceeds the weight width")
    if m**n > MAX_SPACE:
        raise CapacityError(f"Z_{m}^{n} has more than 2^63 elements")


def lee_weight(x, m):
    m = check_modulus(m)
    x = int(x) % m
    return min(x, m - x)


def vector_weight(u, m):
    return sum(lee_weight(x, m) for x in u)


def lee_distance(u, v, m):
    """Lee distance between two vectors of equal length over Z_m."""
    m = check_modulus(m)
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    total = 0
    for a, b in zip(u, v):
        x = (a - b) % m
        total += min(x, m - x)
    return total


def hamming_distance(u, v):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a != b for a, b in zip(u, v))


def symbol_weight_counts(m):
    """Number of residues of each Lee weight ``0..m//2``."""
    m = check_modulus(m)
    h = m // 2
    counts = [1] + [2] * h
    if m % 2 == 0:
        counts[h] = 1
    return counts


def ball_volume_formula(r, rho):
    """Closed-form Lee ball size, only valid while ``rho < m/2``."""
    return sum(2**j * comb(r, j) * comb(rho, j) for j in range(min(r, rho) + 1))


@lru_cache(maxsize=4096)
def _weight_distribution(r, m):
    dist = [1]
    per_symbol = symbol_weight_counts(m)
    for _ in range(r):
        new = [0] * (len(dist) + len(per_symbol) - 1)
        for w, c in enumerate(dist):
            for s, cs in enumerate(per_symbol):
                new[w + s] += c * cs
        dist = new
    return tuple(dist)


def weight_distribution(r, m):
    """Exact count of vectors in Z_m^r of each Lee weight ``0..r*(m//2)``."""
    m = check_modulus(m)
    if r < 0:
        raise ValueError("length must be nonnegative")
    check_capacity(r, m)
    return list(_weight_distribution(r, m))


def ball_volume_dp(r, rho, m):
    if rho < 0:
        return 0
    return sum(weight_distribution(r, m)[: rho + 1])


def ball_volume(r, rho, m):
    """Size of a Lee ball of radius ``rho`` in Z_m^r.

    Uses the closed form when ``rho < m/2`` and the exact weight-distribution
    convolution otherwise.  A negative radius gives the empty ball.
    """
    m = check_modulus(m)
    if r < 0:
        raise ValueError("length must be nonnegative")
    check_capacity(r, m)
    if rho < 0:
        return 0
    if 2 * rho < m:
        return ball_volume_formula(r, rho)
    return ball_volume_dp(r, rho, m)


def hamming_ball_volume(r, rho, m):
    if rho < 0:
        return 0
    check_capacity(r, m)
    return sum(comb(r, j) * (m - 1) ** j for j in range(min(r, rho) + 1))


def enumerate_ball(center, rho, m):
    """All vectors within Lee distance ``rho`` of ``center``, in lexicographic order."""
    m = check_modulus(m)
    center = check_vector(center, m)
    n = len(center)
    if rho < 0:
        return []
    wt = [lee_weight(x, m) for x in range(m)]
    out = []
    prefix = []

    def rec(i, left):
        if i == n:
            out.append(tuple(prefix))
            return
        c = center[i]
        for x in range(m):
            w = wt[(x - c) % m]
            if w <= left:
                prefix.append(x)
                rec(i + 1, left - w)
                prefix.pop()

    rec(0, rho)
    return out


def all_vectors(m, n):
    """Z_m^n in lexicographic order, leftmost coordinate most significant."""
    return list(itertools.product(range(m), repeat=n))


def vector_index(u, m):
    idx = 0
    for x in u:
        idx = idx * m + x
    return idx


def index_vector(idx, m, n):
    out = [0] * n
    for i in range(n - 1, -1, -1):
        idx, out[i] = divmod(idx, m)
    return tuple(out)


def vector_array(m, n):
    """Z_m^n as an ``(m**n, n)`` integer array in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * n).reshape(n, -1).T
    return np.ascontiguousarray(grids, dtype=np.int64)


def distance_matrix(a, b, m, metric="lee"):
    """Pairwise distances between the rows of ``a`` and ``b`` (numpy arrays)."""
    diff = (a[:, None, :] - b[None, :, :]) % m
    if metric == "lee":
        return np.minimum(diff, m - diff).sum(axis=2)
    if metric == "hamming":
        return (diff != 0).sum(axis=2)
    raise ValueError(f"unknown metric {metric!r}")
