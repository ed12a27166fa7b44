"""Command line entry point: synth, verify, generators, units, graph, selftest."""

from __future__ import annotations

import argparse
import json
import random
import sys

from .frontend import ConfigError, UnitaryRep, kappa, load_config, rescale_integral
from .ideals import (
    field_ideal_gcd,
    ideal_from_generators,
    ideal_product,
    is_primitive,
    left_ideal_from_generators,
    primitive_ideal,
    unit_lattice,
)
from .order_graph import ClassNumberError, class_number_witness, graph_report
from .quaternion import IndefiniteAlgebraError, format_quaternion
from .rings import format_ring_literal, parse_field_literal, projective_line_size
from .synthesis import (
    GateWord,
    NormNotSupported,
    SynthesisContext,
    SynthesisError,
    UnknownLabel,
    canonical_check,
    canonical_label,
    canonical_words,
    complexity,
    count_chains,
    evaluate_labels,
    exact_synthesis_chain,
    exact_synthesis_greedy,
    primitive_ideal_census,
)

EXIT_USAGE = 2
EXIT_CLASS = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _config(args):
    name = args.config or args.gateset
    if name is None:
        raise CliError("no gate set: pass --gateset NAME or --config FILE")
    try:
        return load_config(name)
    except (ConfigError, OSError, ValueError) as exc:
        raise CliError(f"config: {exc}") from exc


def _context(cfg):
    try:
        return SynthesisContext(cfg)
    except IndefiniteAlgebraError as exc:
        raise CliError(str(exc)) from exc
    except ClassNumberError as exc:
        raise CliError(f"class number guard: {exc}", EXIT_CLASS) from exc
    except ConfigError as exc:
        raise CliError(f"config: {exc}") from exc


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        sys.stdout.write(text if text.endswith("\n") or not text else text + "\n")


def _input_quaternion(args, cfg):
    alg = cfg.algebra()
    if args.q is not None and args.unitary is not None:
        raise CliError("pass only one of --q and --unitary")
    try:
        if args.q is not None:
            q = alg.parse(args.q)
        elif args.unitary is not None:
            parts = [s.strip() for s in args.unitary.split(",")]
            if len(parts) != 4:
                raise CliError("--unitary takes four comma-separated coordinates x1,x2,y1,y2")
            ring = cfg.ring
            xs = [parse_field_literal(s, ring) for s in parts]
            q = kappa(UnitaryRep(*xs, cfg.D_value, cfg.b_value), alg)
        else:
            raise CliError("pass --q or --unitary")
    except CliError:
        raise
    except Exception as exc:
        raise CliError(f"cannot parse input: {exc}") from exc
    if q.is_zero():
        raise CliError("input is zero")
    return q


# commands ------------------------------------------------------------------

def cmd_synth(args):
    cfg = _config(args)
    ctx = _context(cfg)
    q = _input_quaternion(args, cfg)
    beta = None
    if not ctx.order.contains(q):
        q, beta = rescale_integral(q, ctx.order)
    try:
        mu = complexity(ctx, q)
        word = exact_synthesis_chain(ctx, q) if args.method == "chain" else exact_synthesis_greedy(ctx, q)
    except NormNotSupported as exc:
        raise CliError(str(exc)) from exc
    except ClassNumberError as exc:
        raise CliError(f"class number guard: {exc}", EXIT_CLASS) from exc
    if args.check:
        if word.evaluate(ctx) != q:
            raise CliError("check failed: word does not evaluate to the input", 1)
    payload = {"word": word.to_json(), "mu": mu, "quaternion": format_quaternion(q)}
    if beta is not None:
        payload["rescaled_by"] = format_ring_literal(beta)
    _emit(args, payload, word.serialize())
    return 0


def cmd_verify(args):
    cfg = _config(args)
    ctx = _context(cfg)
    try:
        text = sys.stdin.read() if args.word in (None, "-") else open(args.word).read()
    except OSError as exc:
        raise CliError(f"cannot read word: {exc}") from exc
    try:
        word = GateWord.parse(text, cfg.ring)
        q = word.evaluate(ctx)
    except UnknownLabel as exc:
        raise CliError(str(exc.args[0])) from exc
    except ValueError as exc:
        raise CliError(f"cannot parse word: {exc}") from exc
    try:
        mu = complexity(ctx, q)
    except NormNotSupported as exc:
        raise CliError(str(exc)) from exc
    payload = {"quaternion": format_quaternion(q), "mu": mu, "canonical": canonical_check(ctx, word)}
    _emit(args, payload, f"quaternion {format_quaternion(q)}\nmu {mu}\n")
    return 0


def cmd_generators(args):
    ctx = _context(_config(args))
    rows = []
    for g in ctx.generators:
        row = {"label": g.label, "quaternion": format_quaternion(g.q), "nrd": str(g.q.nrd()),
               "prime": str(g.prime), "ramified": g.ramified}
        if not g.ramified:
            lab = canonical_label(ctx, g)
            row["left"] = [lab.left[0], [format_ring_literal(x) for x in lab.left[1]]]
            row["right"] = [lab.right[0], [format_ring_literal(x) for x in lab.right[1]]]
        rows.append(row)
    text = "".join(f"{r['label']}\t{r['quaternion']}\tnrd {r['nrd']}\n" for r in rows)
    _emit(args, {"generators": rows}, text)
    return 0


def cmd_units(args):
    ctx = _context(_config(args))
    gens = {k: format_quaternion(v) for k, v in ctx.unit_generators.items()}
    n_units = len(ctx.order.units)
    payload = {"unit_generators": gens, "units": n_units, "projective_units": n_units // 2}
    text = "".join(f"{k}\t{v}\n" for k, v in gens.items())
    text += f"units of reduced norm 1: {n_units}\nprojective units: {n_units // 2}\n"
    _emit(args, payload, text)
    return 0


def cmd_graph(args):
    ctx = _context(_config(args))
    rep = graph_report(ctx)
    payload = {
        "m": rep["m"],
        "neighbors": [[str(P), n] for P, n in rep["neighbors"]],
        "depth": rep["depth"] if rep["depth"] != float("inf") else "INFINITE",
        "generator_count": len(rep["generators"]),
        "generators": [format_quaternion(q) for q in rep["generators"]],
    }
    lines = [f"m {payload['m']}"]
    lines += [f"neighbors {P} {n}" for P, n in payload["neighbors"]]
    lines.append(f"depth {payload['depth']}")
    lines.append(f"|G(S)| {payload['generator_count']}")
    lines += [f"generator {g}" for g in payload["generators"]]
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


# selftest -------------------------------------------------------------------

def _random_word(ctx, rng, max_len):
    alphabet = [g.label for g in ctx.generators] + sorted(ctx.unit_generators)
    q = ctx.alg.one()
    for _ in range(rng.randint(0, max_len)):
        a = rng.choice(alphabet)
        q = q * (ctx.unit(a) if a in ctx.unit_generators else ctx.generator(a).q)
    return q


def selftest_checks(ctx, samples=40, census_depth=3, seed=0):
    """List of (name, ok, detail) for a quick version of the acceptance suite."""
    O = ctx.order
    out = []
    rng = random.Random(seed)

    def depths(P):
        # keep each census to about a thousand words
        return [n for n in range(1, census_depth + 1) if n == 1 or projective_line_size(P, n) <= 1000]

    counts = [(P, len(ctx.generators_of(P)), P.norm + 1) for P in ctx.S1]
    ok = all(a == b for _, a, b in counts)
    for P in ctx.S1:
        for n in depths(P):
            got, want = primitive_ideal_census(ctx, P, n)
            ok = ok and got == want
    out.append(("projective-line-counts", ok, ", ".join(f"{P}:{a}" for P, a, _ in counts)))

    n_units = len(O.units)
    out.append(("unit-group", n_units > 0 and len(ctx._unit_table) == n_units // 2, f"{n_units} units"))

    fails = descents = 0
    for _ in range(samples):
        q = _random_word(ctx, rng, 12)
        mu = complexity(ctx, q)
        trace = []
        w1 = exact_synthesis_greedy(ctx, q, trace)
        w2 = exact_synthesis_chain(ctx, q)
        if not (w1.evaluate(ctx) == q == w2.evaluate(ctx) and w1.mu(ctx) == mu == w2.mu(ctx)):
            fails += 1
        descents += sum(1 for a, b in zip(trace, trace[1:]) if b >= a)
    out.append(("round-trip", fails == 0, f"{fails} failures in {samples}"))
    out.append(("monotone-descent", descents == 0, f"{descents} violations"))

    ok = True
    for P in ctx.S1:
        for n in depths(P):
            words = canonical_words(ctx, n, [P])
            keys = {evaluate_labels(ctx, w).projective_key() for w in words}
            ok = ok and len(keys) == len(words) == projective_line_size(P, n)
            if n <= 2 and len(words) <= 100:
                for w in words:
                    I = ideal_from_generators(O, [evaluate_labels(ctx, w)])
                    ok = ok and count_chains(ctx, I) == 1
    out.append(("unique-factorization", ok, ""))

    ok = True
    whole = unit_lattice(O)
    for g in ctx.generators:
        I = g.ideal
        if not g.ramified:
            ok = ok and I.intersect_center() == g.prime.generator
        ok = ok and I.conj() * I == whole.scale(I.nrd())
    for _ in range(samples):
        x, y = _random_word(ctx, rng, 6), _random_word(ctx, rng, 6)
        I = ideal_from_generators(O, [x])
        J = left_ideal_from_generators(O, [y])
        ok = ok and ideal_product(I, J).nrd() == field_ideal_gcd([I.nrd() * J.nrd()], O.ring)
    out.append(("norm-laws", ok, ""))

    depth_ok = ctx.tree_depth == 1
    wit = class_number_witness(ctx, 2)
    out.append(("structure", O.is_maximal() and depth_ok and wit is None, wit or f"tree depth {ctx.tree_depth}"))

    if len(ctx.S1) >= 2:
        P1, P2 = ctx.S1[0], ctx.S1[1]
        ok = True
        for _ in range(samples):
            a = evaluate_labels(ctx, rng.choice(canonical_words(ctx, 2, [P1])))
            b = evaluate_labels(ctx, rng.choice(canonical_words(ctx, 1, [P2])))
            I = ideal_from_generators(O, [a * b])
            ok = ok and is_primitive(I, O) and primitive_ideal(I) == I
        out.append(("mixed-prime-primitivity", ok, ""))
    else:
        out.append(("mixed-prime-primitivity", None, "single prime in S1"))
    return out


def cmd_selftest(args):
    cfg = _config(args)
    if not cfg.is_definite():
        names = ["projective-line-counts", "unit-group", "round-trip", "monotone-descent",
                 "unique-factorization", "norm-laws", "structure", "mixed-prime-primitivity"]
        results = [(n, None, "indefinite algebra") for n in names]
    else:
        ctx = _context(cfg)
        results = selftest_checks(ctx)
    failed = False
    for name, ok, detail in results:
        status = "SKIPPED" if ok is None else ("PASS" if ok else "FAIL")
        failed = failed or ok is False
        if args.format == "json":
            print(json.dumps({"criterion": name, "status": status, "detail": detail}))
        else:
            print(f"{status} {name} {detail}".rstrip())
    return 1 if failed else 0


# parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="exactsynth", description="Exact synthesis of single-qubit unitaries over quaternion orders")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--gateset", help="built-in gate set name")
    src.add_argument("--config", help="path to a JSON gate-set configuration")
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", parents=[common], help="decompose a quaternion or unitary into a gate word")
    s.add_argument("--q", help="quaternion literal, e.g. '1+2*i'")
    s.add_argument("--unitary", help="unitary coordinates x1,x2,y1,y2")
    s.add_argument("--method", choices=("greedy", "chain"), default="greedy")
    s.add_argument("--check", action="store_true", help="re-evaluate the word and compare exactly")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("verify", parents=[common], help="evaluate a gate word")
    v.add_argument("word", nargs="?", help="word file, one token per line ('-' for stdin)")
    v.set_defaults(func=cmd_verify)

    for name, fn, hlp in (("generators", cmd_generators, "list leaf and ramified generators"),
                          ("units", cmd_units, "list unit generators"),
                          ("graph", cmd_graph, "adjacency and spanning-tree report"),
                          ("selftest", cmd_selftest, "run the self-checks on a gate set")):
        c = sub.add_parser(name, parents=[common], help=hlp)
        c.set_defaults(func=fn)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SynthesisError as exc:
        print(f"error: internal: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
