"""Synthesize a few Clifford+T products and print their gate words."""

import random

from exactsynth.frontend import diag_gate_rep, quaternion_of_unitary
from exactsynth.rings import FieldElem, RingElem
from exactsynth.synthesis import complexity, exact_synthesis_chain, exact_synthesis_greedy, get_context

ctx = get_context("clifford-t")
F = ctx.order.ring
half_root2 = FieldElem(RingElem(0, 1, F), 2)

# T = diag(1, e^{i pi/4}) in unnormalized form
T, beta = quaternion_of_unitary(diag_gate_rep(half_root2, half_root2, ctx.config.D_value, ctx.config.b_value),
                                ctx.order)
print("T ->", T, "(scaled by", beta, ")")
print(exact_synthesis_greedy(ctx, T).serialize())

rng = random.Random(1)
H, S = ctx.unit("H"), ctx.unit("S")
for _ in range(3):
    q = ctx.alg.one()
    for _ in range(rng.randint(5, 15)):
        q = q * rng.choice([T, H, S])
    w1 = exact_synthesis_greedy(ctx, q)
    w2 = exact_synthesis_chain(ctx, q)
    print(f"mu {complexity(ctx, q)}  greedy {' '.join(w1.gen_labels())}  chain {' '.join(w2.gen_labels())}")
    assert w1.evaluate(ctx) == q == w2.evaluate(ctx)
