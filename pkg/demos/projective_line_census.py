"""Count primitive right ideals of norm P^n through canonical words."""

from exactsynth.synthesis import get_context, primitive_ideal_census

for name, top in (("clifford-t", 6), ("v-basis", 3)):
    ctx = get_context(name)
    for P in ctx.S1:
        for n in range(1, top + 1):
            got, want = primitive_ideal_census(ctx, P, n)
            print(f"{name:10s} P={P} n={n}: {got} ideals, |P^1(R/P^n)| = {want}")
