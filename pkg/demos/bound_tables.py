"""
Bound tables
============

Sweep the closed forms, averaging bounds, exact search and GV values over a
grid, the way the command line `table` subcommand does.
"""
import math

from leefcc import cubic_lower_bound, exact_min_length, gv_upper_bound, nl_two_2t
from leefcc.matrices import lee_weight_matrix
from leefcc.search import averaging_lower_bound

print(" m  t  N(2,2t)")
for m in range(2, 9):
    for t in (1, 2, 3):
        print(f"{m:2d} {t:2d} {nl_two_2t(m, t):6d}")

# For the Lee weight function the image-level optimum is the optimal
# redundancy.  Note the m = 5 rows: the cubic estimate asks for 2 symbols
# where 1 suffices, because it leans on the antipodal argument that only
# works for even m.
print("\nLee weight function, image-level optimum")
print(" m  k  t  cubic  averaging  exact  gv")
for m in (3, 4, 5, 6):
    for k in (2, 3, 4):
        t = 1
        D = lee_weight_matrix(k, t, m)
        cubic = cubic_lower_bound(t, m) if k > math.ceil((t + 1) / (m // 2)) else None
        cubic = f"{float(cubic):.2f}" if cubic is not None else "-"
        print(f"{m:2d} {k:2d} {t:2d} {cubic:>6s} {float(averaging_lower_bound(D, m)):9.2f}"
              f" {exact_min_length(D, m).length:6d} {gv_upper_bound(D, m):3d}")
