"""
Lee weights, distances and balls
================================

The Lee weight of a residue x in Z_m is its distance to 0 around the cycle,
min(x, m - x).  Vectors add the weights of their coordinates.
"""
import numpy as np

from leefcc import ball_volume, ball_volume_dp, ball_volume_formula, enumerate_ball
from leefcc.lee import lee_distance, lee_weight, vector_array

# per-symbol weights over Z_7
m = 7
print("weights in Z_7:", [lee_weight(x, m) for x in range(m)])

# distance between two words over Z_5
print("d_L((0,1,4), (3,1,1)) =", lee_distance((0, 1, 4), (3, 1, 1), 5))

# a radius-2 ball around the origin of Z_5^2, listed in lexicographic order
pts = enumerate_ball((0, 0), 2, 5)
print(len(pts), "points:", pts)

# below half the modulus the ball size has a closed form; above it we count
for rho in range(6):
    closed = ball_volume_formula(3, rho) if 2 * rho < m else None
    print(f"V(3, {rho}) over Z_7: dp={ball_volume_dp(3, rho, m)} closed={closed}")

# the whole space is one big ball once rho reaches r * floor(m/2)
print(ball_volume(3, 9, m) == m**3)

# weight distribution of Z_4^3, straight from a numpy table
vecs = vector_array(4, 3)
w = np.minimum(vecs, 4 - vecs).sum(axis=1)
print("weight histogram of Z_4^3:", np.bincount(w))
