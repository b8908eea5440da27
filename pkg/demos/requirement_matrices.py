"""
Function models and requirement matrices
========================================

A function on Z_m^k tells us which messages must be kept apart.  Two
messages with different values at distance d need 2t + 1 - d more units of
distance from the redundancy part, and nothing if d is already large.
"""
from leefcc import FunctionSpec
from leefcc.functions import image_distances, lemma_ij_representative, locality_lambda
from leefcc.matrices import full_message_matrix, image_matrix, lee_weight_matrix

f = FunctionSpec.lee_weight(4, 4)
print("image size of the Lee weight on Z_4^4:", f.eta)

# distances between value classes are just |i - j|
print(image_distances(f)[:4, :4])

# a chain of messages with weights 0..8 realising those distances
print([lemma_ij_representative(4, 4, i) for i in range(9)])

# the image-level matrix for t = 2
print(lee_weight_matrix(4, 2, 4).entries)
assert lee_weight_matrix(4, 2, 4) == image_matrix(f, 2)

# a random table function has a message-level matrix of order m^k
g = FunctionSpec.from_table(3, 2, [0, 1, 1, 2, 0, 2, 1, 1, 0])
D = full_message_matrix(g, 1)
print("message matrix order", D.order, "requirement sum", D.upper_sum())

# locality: how many values can a radius-rho ball see?
for rho in (1, 2):
    print("rho", rho, "lambda(lee_weight)", locality_lambda(f, rho),
          "lambda(table)", locality_lambda(g, rho))
