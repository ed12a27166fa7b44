import json

import pytest
from hypothesis import given, settings, strategies as st

from exactsynth.frontend import load_config
from exactsynth.ideals import ideal_from_generators, primitive_ideal
from exactsynth.rings import QQ, RingElem, prime_ideal, projective_line_size, valuation
from exactsynth.synthesis import (
    GateWord,
    NormNotSupported,
    SynthesisContext,
    Token,
    UnknownLabel,
    canonical_check,
    canonical_words,
    complexity,
    count_chains,
    evaluate_labels,
    exact_synthesis_chain,
    exact_synthesis_greedy,
    exact_synthesis_stage1,
    get_context,
    primitive_ideal_census,
    primitive_repr,
    synthesize,
    two_sided_decompose,
    unit_decompose,
    word_from_json,
)

NAMES = ["v-basis", "clifford-t"]


def letters(name):
    ctx = get_context(name)
    return st.lists(st.sampled_from([g.label for g in ctx.generators] + sorted(ctx.unit_generators)), max_size=14)


def product(ctx, word):
    q = ctx.alg.one()
    for a in word:
        q = q * (ctx.unit(a) if a in ctx.unit_generators else ctx.generator(a).q)
    return q


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_round_trip_both_routes(name, data):
    ctx = get_context(name)
    q = product(ctx, data.draw(letters(name)))
    mu = complexity(ctx, q)
    trace = []
    w1 = exact_synthesis_greedy(ctx, q, trace)
    w2 = exact_synthesis_chain(ctx, q)
    assert w1.evaluate(ctx) == q == w2.evaluate(ctx)
    assert w1.mu(ctx) == mu == w2.mu(ctx)
    assert all(b == a - 1 for a, b in zip(trace, trace[1:]))
    # one prime: both routes read the same maximal-ideal chain
    assert w1.gen_labels() == w2.gen_labels()
    assert canonical_check(ctx, w1)


def test_v_basis_examples(vctx):
    A = vctx.alg
    w = synthesize(vctx, A.parse("1+2*i"))
    assert w.serialize() == "GEN V1+\nCENTRAL 1+0*w\n"
    w = synthesize(vctx, A.parse("(1+2*i)*(1+2*j)"), method="chain")
    assert w.gen_labels() == ["V1+", "V2+"]
    # (1+2i)^2 = -3 + 4i
    w = synthesize(vctx, A.parse("-3+4*i"))
    assert w.gen_labels() == ["V1+", "V1+"]
    w = synthesize(vctx, A.parse("5*(1+2*k)"))
    assert w.gen_labels() == ["V3+"] and w.tokens[-1] == Token("CENTRAL", RingElem(5, 0, QQ))


def test_complexity_values(vctx, tctx):
    assert complexity(vctx, vctx.alg.parse("1+2*i")) == 1
    assert complexity(vctx, vctx.alg.parse("5")) == 0
    assert complexity(tctx, tctx.alg.parse("(1+w) - i")) == 1
    assert complexity(tctx, tctx.alg.one()) == 0


def test_t_gate_is_g0(tctx):
    qT = tctx.alg.parse("1 + w/2 - (w/2)*i")
    w = synthesize(tctx, qT)
    assert w.gen_labels() == ["G0"]
    assert w.evaluate(tctx) == qT


def test_norm_outside_S(vctx, tctx):
    with pytest.raises(NormNotSupported, match="norm not supported"):
        synthesize(vctx, vctx.alg.parse("1+i+j"))
    with pytest.raises(NormNotSupported) as info:
        synthesize(vctx, vctx.alg.parse("1+i"))
    assert info.value.prime == prime_ideal(2, QQ)
    with pytest.raises(ValueError):
        synthesize(vctx, vctx.alg.parse("(1+i)/2"))
    with pytest.raises(ValueError):
        synthesize(vctx, vctx.alg.parse("1+2*i"), method="other")


def test_unit_decomposition(vctx, tctx):
    for ctx in (vctx, tctx):
        assert len(ctx._unit_table) == len(ctx.order.units) // 2
        for u in ctx.order.units:
            labels, lam = unit_decompose(ctx, u)
            x = ctx.alg.one()
            for a in labels:
                x = x * ctx.unit(a)
            assert x * lam == u
    labels, lam = unit_decompose(vctx, vctx.alg.parse("i"))
    assert labels == ["Z"] and lam == 1
    with pytest.raises(ValueError):
        unit_decompose(vctx, vctx.alg.parse("1+2*i"))


def test_stage_one_and_primitive_repr(vctx):
    q = vctx.alg.parse("3*(1+2*i)*(1-2*j)")
    gens, rem = exact_synthesis_stage1(vctx, q)
    assert [g.label for g in gens] == ["V1+", "V2-"]
    assert vctx.order.normalizes(rem)
    g = primitive_repr(vctx, q)
    assert g.nrd() == 25


def test_canonical_census(tctx, vctx):
    p2 = tctx.S1[0]
    for n in range(1, 5):
        got, want = primitive_ideal_census(tctx, p2, n)
        assert got == want == 3 * 2 ** (n - 1)
    got, want = primitive_ideal_census(vctx, vctx.S1[0], 2)
    assert got == want == 30
    assert projective_line_size(prime_ideal(5, QQ), 2) == 30


def test_cancelling_pair_is_not_canonical(vctx):
    assert not canonical_check(vctx, ["V1+", "V1-"])
    assert canonical_check(vctx, ["V1+", "V1+"])
    assert ["V1+", "V1-"] not in [list(w) for w in canonical_words(vctx, 2)]
    I = ideal_from_generators(vctx.order, [evaluate_labels(vctx, ["V1+", "V2+"])])
    assert count_chains(vctx, I) == 1


def test_word_serialisation(vctx):
    w = synthesize(vctx, vctx.alg.parse("(1+2*i)*(1+2*j)*(1+i+j+k)/2*7"))
    again = GateWord.parse(w.serialize(), QQ)
    assert again == w
    assert word_from_json(json.loads(json.dumps(w.to_json())), QQ) == w
    with pytest.raises(ValueError, match="line 1"):
        GateWord.parse("FOO x\n", QQ)
    with pytest.raises(UnknownLabel):
        GateWord.parse("GEN nope\n", QQ).evaluate(vctx)


def test_clifford_t_v_mixed(tvctx):
    A = tvctx.alg
    for text in ("1+2*j", "3+4*k", "(1+2*i)*(1+2*j)"):
        q = tvctx.generator("G1").q * A.parse(text) * tvctx.generator("G2").q
        n = primitive_ideal(ideal_from_generators(tvctx.order, [q])).nrd()
        want = sum(valuation(n, P) for P in tvctx.S1)
        for method in ("greedy", "chain"):
            w = synthesize(tvctx, q, method)
            assert w.evaluate(tvctx) == q
            assert w.mu(tvctx) == want == complexity(tvctx, q)


def _ramified_config(tmp_path):
    d = load_config("v-basis").to_dict()
    d["name"] = "hurwitz-2-5"
    d["primes"] = [{"p": 2, "ramified": True}, {"p": 5, "ramified": False}]
    d["generators"]["Q2"] = ["1", "1", "0", "0"]
    path = tmp_path / "h25.json"
    path.write_text(json.dumps(d))
    return SynthesisContext(load_config(str(path)))


def test_ramified_prime_in_S(tmp_path):
    ctx = _ramified_config(tmp_path)
    A = ctx.alg
    ram, units, alpha = two_sided_decompose(ctx, A.parse("1+i"))
    assert [g.label for g in ram] == ["Q2"] and units == [] and alpha == 1
    q = A.parse("(1+2*j)*(1+i)*(1-2*k)")
    for method in ("greedy", "chain"):
        w = synthesize(ctx, q, method)
        assert w.evaluate(ctx) == q
        assert w.gen_labels() == ["V2+", "V2+", "Q2"]
        assert w.mu(ctx) == 2
    # (1+i)^2 = 2i: the two-sided prime squares to the central 2
    w = synthesize(ctx, A.parse("(1+i)*(1+j)"))
    assert w.gen_labels() == [] and w.tokens[-1] == Token("CENTRAL", RingElem(2, 0, QQ))


def test_indefinite_config_refused():
    from exactsynth.quaternion import IndefiniteAlgebraError

    with pytest.raises(IndefiniteAlgebraError):
        SynthesisContext(load_config("fibonacci"))
