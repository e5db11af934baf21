"""Command-line entry point: ``acs <subcommand> ...``.

Exit codes: 0 success, 1 verification or precondition failure, 2 usage error,
3 I/O error. JSON goes to stdout unless ``--out`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from acs import ACSError
from acs.cfrac import (
    cf_expand,
    end_selection_ray,
    f_step,
    parse_expansion,
    parse_surd,
    tail_equivalent,
)
from acs.colorings import (
    coloring_to_json,
    edge_list_coloring,
    matching_to_json,
    perfect_matching,
    strongly_unfriendly,
    verify_edge_coloring,
    verify_matching,
    verify_strongly_unfriendly,
)
from acs.core import (
    closure,
    genset_from_json,
    genset_to_json,
    is_non_complementing,
    is_non_expanding,
    minimize_good_generating,
    preset,
    system_from_json,
    system_to_json,
)
from acs.decomp import (
    decomposition_from_json,
    decomposition_to_json,
    end_selection_decomposition,
    layer_colors,
    normalize_lengths,
    path_decomposition,
    verify_path_decomposition,
)
from acs.graphs import (
    ActionGraph,
    build_net,
    cayley_ball,
    graph_from_json,
    graph_to_json,
    net_to_json,
    to_dot,
    vertex_cap,
)
from acs.psl2 import psl2_demo
from acs.realize import (
    realization_from_json,
    realization_to_json,
    realize_along_decomposition,
    realize_single_orbit,
    report_to_json,
    verify_realization,
)
from acs.words import Presentation, bad_words_by_length, format_word

OK, FAILED, USAGE, IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


# -- input/output helpers ----------------------------------------------------------

def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def _emit(args, data) -> None:
    text = data if isinstance(data, str) else json.dumps(data, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as e:
            raise InputError(f"cannot write {args.out}: {e.strerror}") from e
    else:
        sys.stdout.write(text)


def _system(args):
    """(system, seed genset) from --preset or --system/--genset files."""
    if getattr(args, "preset", None):
        return preset(args.preset, args.n)
    if getattr(args, "system", None):
        system = system_from_json(_read_json(args.system))
        seed = genset_from_json(_read_json(args.genset)) if getattr(args, "genset", None) else system.pairs()
        return system, seed
    if getattr(args, "genset", None):
        if args.n is None:
            raise UsageError("--genset needs --n")
        pairs = genset_from_json(_read_json(args.genset))
        return closure(args.n, pairs), pairs
    raise UsageError("give --preset, --system or --genset")


def _presentation(args) -> Presentation:
    """Presentation of a minimized genset; a --genset file is taken as is."""
    if getattr(args, "preset", None):
        system, seed = preset(args.preset, args.n)
        pairs = minimize_good_generating(system, seed)
        return Presentation.from_pairs(system.n, pairs)
    if not getattr(args, "genset", None) or args.n is None:
        raise UsageError("give --preset or --genset with --n")
    return Presentation.from_pairs(args.n, genset_from_json(_read_json(args.genset)))


def _graph(args):
    return graph_from_json(_read_json(args.graph))


def _action_graph(args) -> ActionGraph:
    g = _graph(args)
    if not isinstance(g, ActionGraph):
        raise UsageError(f"{args.graph} has no arcs")
    return g


def _plain(g):
    return g.graph if isinstance(g, ActionGraph) else g


def _cap(args) -> int:
    cap = args.vertex_cap if getattr(args, "vertex_cap", None) is not None else vertex_cap()
    if cap < 1:
        raise UsageError("vertex cap must be positive")
    return cap


def _witness(w) -> Optional[dict]:
    return None if w is None else {"V": list(w.V), "W": list(w.W)}


# -- subcommands ---------------------------------------------------------------

def cmd_closure(args) -> int:
    system, _ = _system(args)
    _emit(args, system_to_json(system))
    return OK


def cmd_check(args) -> int:
    system, _ = _system(args)
    ok, witness = is_non_expanding(system)
    out = {"nonComplementing": is_non_complementing(system), "nonExpanding": ok}
    if witness is not None:
        out["witness"] = _witness(witness)
    _emit(args, out)
    return OK


def cmd_genset(args) -> int:
    system, seed = _system(args)
    _emit(args, genset_to_json(minimize_good_generating(system, seed)))
    return OK


def cmd_badwords(args) -> int:
    if args.max_len < 1:
        raise UsageError("--max-len must be positive")
    p = _presentation(args)
    found = bad_words_by_length(p, args.max_len)
    records = []
    bound = None
    for length, item in enumerate(found, start=1):
        if item is None:
            bound = length if bound is None else bound
            continue
        word, k, m = item
        records.append({"length": length, "word": format_word(word), "k": k, "m": m})
    _emit(args, {"bound": bound, "words": records})
    return OK


def cmd_graph(args) -> int:
    if args.action == "ball":
        if args.radius is None or args.radius < 0:
            raise UsageError("ball needs a non-negative --radius")
        _emit(args, graph_to_json(cayley_ball(_presentation(args), args.radius, _cap(args))))
    elif args.action == "net":
        if args.n is None:
            raise UsageError("net needs --n")
        _emit(args, net_to_json(build_net(_plain(_graph(args)), args.n)))
    else:
        g = _graph(args)
        colors = layer_colors(decomposition_from_json(_read_json(args.decomp))) if args.decomp else None
        _emit(args, to_dot(g, colors))
    return OK


def cmd_decomp(args) -> int:
    g = _plain(_graph(args))
    if args.ends:
        pd = end_selection_decomposition(g, [int(v) for v in _read_json(args.ends)], args.n)
    else:
        pd = path_decomposition(g, args.n)
    if args.normalize:
        pd = normalize_lengths(pd, args.n)
    _emit(args, decomposition_to_json(pd))
    err = verify_path_decomposition(g, pd)
    if err:
        print(f"acs: decomposition check failed: {err}", file=sys.stderr)
        return FAILED
    return OK


def cmd_realize(args) -> int:
    ag = _action_graph(args)
    p = _presentation(args)
    if args.decomp:
        pd = decomposition_from_json(_read_json(args.decomp))
        seed = None
        if args.seed:
            seed = {int(v): int(k) for v, k in _read_json(args.seed).items()}
        r = realize_along_decomposition(ag, p, pd, seed)
    else:
        r = realize_single_orbit(ag, p)
    _emit(args, realization_to_json(r))
    report = verify_realization(ag, p, r)
    if not report.ok:
        print(f"acs: realization has {report.count()} violations", file=sys.stderr)
        return FAILED
    return OK


def cmd_verify_realization(args) -> int:
    ag = _action_graph(args)
    p = _presentation(args)
    report = verify_realization(ag, p, realization_from_json(_read_json(args.realization)))
    _emit(args, report_to_json(report))
    return OK if report.ok else FAILED


def _edge_key(text: str) -> tuple[int, int]:
    u, v = (int(x) for x in text.split("-"))
    return (u, v) if u < v else (v, u)


def cmd_color(args) -> int:
    g = _plain(_graph(args))
    pd = decomposition_from_json(_read_json(args.decomp))
    if args.kind == "unfriendly":
        c = strongly_unfriendly(g, pd, 5 if args.strict5 else 4)
        report = verify_strongly_unfriendly(g, c)
        _emit(args, {"coloring": coloring_to_json(c), "strongViolations": report.strong,
                     "plainViolations": report.plain})
        return OK if report.ok else FAILED
    if args.kind == "matching":
        m = perfect_matching(g, pd, args.min_degree)
        _emit(args, matching_to_json(m))
        err = verify_matching(g, m)
    else:
        if args.lists:
            lists = {_edge_key(k): set(v) for k, v in _read_json(args.lists).items()}
        else:
            d = max((g.degree(v) for v in g.vertices), default=0)
            lists = {e: set(range(d)) for e in g.edges}
        col = edge_list_coloring(g, pd, lists)
        _emit(args, coloring_to_json(col))
        err = verify_edge_coloring(g, col, lists)
    if err:
        print(f"acs: check failed: {err}", file=sys.stderr)
        return FAILED
    return OK


def cmd_cfrac(args) -> int:
    if args.action == "expand":
        _emit(args, {"x": str(parse_surd(args.x)), "expansion": str(cf_expand(parse_surd(args.x)))})
    elif args.action == "step":
        y = f_step(parse_surd(args.x))
        _emit(args, {"x": str(parse_surd(args.x)), "f": str(y), "expansion": str(cf_expand(y))})
    elif args.action == "tail-eq":
        e1, e2 = (_expansion(t) for t in (args.x, args.y))
        _emit(args, {"tailEquivalent": tail_equivalent(e1, e2)})
    else:
        if args.steps < 0:
            raise UsageError("--steps must be non-negative")
        ray = end_selection_ray(parse_surd(args.x), args.steps)
        _emit(args, {"orbit": [{"x": str(y), "expansion": str(cf_expand(y))} for y in ray]})
    return OK


def _expansion(text: str):
    """An expansion ``a0;[..];(..)`` or a surd to expand."""
    return parse_expansion(text) if ";" in text else cf_expand(parse_surd(text))


def cmd_psl2_demo(args) -> int:
    system, seed = _system(args)
    genset = minimize_good_generating(system, seed)
    seeds = [parse_surd(s) for s in args.seeds]
    results = psl2_demo(system, genset, seeds, args.radius, _cap(args))
    out = []
    for res in results:
        out.append({
            "seed": str(res.seed),
            "method": res.method,
            "vertices": len(res.ball.points),
            "end": res.end,
            "report": report_to_json(res.report),
        })
    _emit(args, {"genset": genset_to_json(genset), "radius": args.radius, "results": out})
    return OK if all(res.report.ok for res in results) else FAILED


# -- parser --------------------------------------------------------------------

def _system_opts(sp, genset_help="generating set JSON [[S,T],...]"):
    sp.add_argument("--preset", choices=["divisibility", "paradoxical"])
    sp.add_argument("--n", type=int, help="number of pieces")
    sp.add_argument("--system", help="system JSON {n, classes}")
    sp.add_argument("--genset", help=genset_help)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acs", description="Abstract systems of congruences toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.set_defaults(func=func)
        return sp

    _system_opts(add("closure", cmd_closure, help="close a generating set into a system"))
    _system_opts(add("check", cmd_check, help="report complementing and expanding properties"))
    _system_opts(add("genset", cmd_genset, help="minimized good generating set"), "seed generating set JSON")

    sp = add("badwords", cmd_badwords, help="bad words by length and the bound r")
    _system_opts(sp)
    sp.add_argument("--max-len", type=int, default=12)

    sp = add("graph", cmd_graph, help="Cayley balls, nets and DOT export")
    sp.add_argument("action", choices=["ball", "net", "export"])
    _system_opts(sp)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--graph", help="graph JSON (net, export)")
    sp.add_argument("--decomp", help="decomposition JSON to color layers (export)")
    sp.add_argument("--vertex-cap", type=int)

    sp = add("decomp", cmd_decomp, help="path decomposition of an acyclic graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--ends", help="JSON list of boundary vertices to select as ends")
    sp.add_argument("--normalize", action="store_true", help="cut paths to length at most 2n")

    sp = add("realize", cmd_realize, help="realize a system on an action graph")
    _system_opts(sp)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--decomp", help="decomposition JSON; without it the single-orbit method is used")
    sp.add_argument("--seed", help="JSON {vertex: piece} for layer-0 endpoints")

    sp = add("verify-realization", cmd_verify_realization, help="check a realization")
    _system_opts(sp)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--realization", required=True)

    sp = add("color", cmd_color, help="colorings and matchings from a decomposition")
    sp.add_argument("kind", choices=["unfriendly", "matching", "edgelist"])
    sp.add_argument("--graph", required=True)
    sp.add_argument("--decomp", required=True)
    sp.add_argument("--strict5", action="store_true", help="require paths of length at least 5")
    sp.add_argument("--min-degree", type=int, default=3)
    sp.add_argument("--lists", help='JSON {"u-v": [colors]}; default 0..d-1 for every edge')

    sp = add("cfrac", cmd_cfrac, help="continued fractions of quadratic surds")
    sp.add_argument("action", choices=["expand", "step", "tail-eq", "orbit"])
    sp.add_argument("x", help="surd such as (1+sqrt(5))/2, or an expansion a0;[..];(..) for tail-eq")
    sp.add_argument("y", nargs="?")
    sp.add_argument("--steps", type=int, default=8)

    sp = add("psl2-demo", cmd_psl2_demo, help="realize a system on orbit balls in the modular group")
    _system_opts(sp)
    sp.add_argument("--seeds", nargs="+", required=True)
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--vertex-cap", type=int)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    if args.command == "cfrac" and args.action == "tail-eq" and args.y is None:
        print("acs: tail-eq needs two arguments", file=sys.stderr)
        return USAGE
    try:
        return args.func(args)
    except InputError as e:
        print(f"acs: {e}", file=sys.stderr)
        return IO
    except UsageError as e:
        print(f"acs: {e}", file=sys.stderr)
        return USAGE
    except ACSError as e:
        print(f"acs: {e}", file=sys.stderr)
        return FAILED
    except (ValueError, KeyError, TypeError) as e:
        print(f"acs: bad input: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
