"""
Function-correcting encoders
============================

Three ways to protect only the value f(u) against t Lee errors:
the optimal encoder from the full message matrix, an encoder driven by one
codeword per function value, and an encoder driven by a colouring of the
messages that keeps nearby conflicting messages apart.
"""
from leefcc import FunctionSpec, redundancy_bounds
from leefcc.codec import (build_image_encoder, build_local_encoder, optimal_encoder,
                          tau_coloring, verify_fclmc)
from leefcc.matrices import constant_matrix, image_matrix
from leefcc.search import exact_min_length

f = FunctionSpec.lee_weight(3, 2)
t = 1

opt = optimal_encoder(f, t)
print("optimal redundancy", opt.r)
for u in [(0, 0), (1, 0), (1, 1), (2, 2)]:
    print("  ", u, "->", opt.encode(u))

img = build_image_encoder(f, t, exact_min_length(image_matrix(f, t), f.m).code)
print("image encoder redundancy", img.r)

col = tau_coloring(f, 2 * t)
code = exact_min_length(constant_matrix(col.n_colors, 2 * t), f.m).code
loc = build_local_encoder(f, t, col, code)
print("colouring uses", col.n_colors, "colours; local encoder redundancy", loc.r)

# certification is exhaustive over all pairs with different values
print(all(verify_fclmc(e) for e in (opt, img, loc)))

# a bracket on the optimum without building anything
b = redundancy_bounds(FunctionSpec.lee_weight(4, 4), 2)
print("Lee weight on Z_4^4, t=2:", b.lower, "<= r <=", b.upper)
for name, (value, prov) in b.values.items():
    print(f"   {name:12s} {str(value):8s} {prov}")
