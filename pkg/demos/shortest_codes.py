"""
Shortest codes for irregular distance requirements
==================================================

Given a requirement matrix D, find the shortest length r with codewords
C_1..C_M in Z_m^r such that d_L(C_i, C_j) >= D_ij.  The exact search is
bracketed by an averaging lower bound and a Gilbert-Varshamov style upper
bound, and the greedy construction always succeeds at the upper end.
"""
import math

from leefcc import (averaging_lower_bound, exact_min_length, greedy_construct,
                    gv_upper_bound, plotkin_lower_bound)
from leefcc.matrices import constant_matrix, lee_weight_matrix

D = lee_weight_matrix(4, 2, 4)
res = exact_min_length(D, 4)
print("exact length", res.length, "after", res.nodes, "nodes")
for word in res.code.codewords:
    print("  ", word)
print("bounds:", plotkin_lower_bound(D, 4), "<=", res.length, "<=", gv_upper_bound(D, 4))

greedy = greedy_construct(D, gv_upper_bound(D, 4), 4)
print("greedy witness at the GV length:", greedy.codewords[:3], "...")

# two words at distance 2t need ceil(2t / floor(m/2)) coordinates
for m in range(2, 9):
    print(m, [exact_min_length(constant_matrix(2, 2 * t), m).length for t in (1, 2, 3)])

# For odd moduli the classic averaging estimate assumes each coordinate can
# put two antipodal symbols to work.  Z_5 has no antipodes, and three
# symbols like {0, 2, 3} beat that estimate.
D = [[0, 4, 3], [4, 0, 2], [3, 2, 0]]
print("classic estimate", math.ceil(plotkin_lower_bound(D, 5)),
      "modulus-aware", math.ceil(averaging_lower_bound(D, 5)),
      "exact", exact_min_length(D, 5).length)
