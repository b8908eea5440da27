"""
Through the channel
===================

Send encodings through a channel that adds an error drawn uniformly from
the Lee ball of radius t, then recover f(u) by scanning all encodings.
"""
import random
from collections import Counter

from leefcc import FunctionSpec
from leefcc.codec import (LeeBallSampler, decode_function_value, optimal_encoder,
                          simulate, simulation_csv)

f = FunctionSpec.from_table(3, 2, [0, 1, 1, 2, 0, 2, 1, 1, 0])
enc = optimal_encoder(f, 1)
print("redundancy", enc.r)

# the sampler unranks a uniform index into the ball, so every error is equally likely
s = LeeBallSampler(3, 1, 5)
rng = random.Random(0)
counts = Counter(s.sample(rng) for _ in range(7000))
print("ball size", s.size, "min/max hits", min(counts.values()), max(counts.values()))

rows = simulate(enc, 1000, seed=7)
print("correct:", sum(r[3] for r in rows), "of", len(rows))
print(simulation_csv(rows[:5]))

received = tuple((a + b) % 3 for a, b in zip(enc.encode((1, 2)), (0, 0, 1) + (0,) * (enc.r - 1)))
print("f(1,2) =", f((1, 2)), "decoded", decode_function_value(received, enc))
