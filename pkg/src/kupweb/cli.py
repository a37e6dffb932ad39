"""Command-line front end.

Output is JSON by default (``--text`` for a short human-readable form).
Exit status: 0 on success, 1 on domain errors (bad Gauss codes, invalid
graphs, failed checks), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import braid, g2, parity, penrose, sl3
from .canon import canonical_key, lookup
from .diagram import (FREE, REIDEMEISTER, VIRTUAL, ChordDiagram, GaussCodeError, MoveKind,
                      intersection_graph, is_irreducibly_odd, odd_chords, odd_writhe, parse_gauss)
from .framed import to_framed_graph
from .fuzz import fuzz_invariant
from .poly import GraphPolynomial
from .statesum import ENV_THREADS, thread_cap
from .web import Web

INVARIANTS = ("sl3", "g2", "parity", "penrose", "odd-writhe")
FUZZABLE = ("sl3", "g2", "parity-virtual", "parity-flat", "parity-free", "odd-writhe")


class DomainError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _code(text: str) -> ChordDiagram:
    try:
        return parse_gauss(text)
    except GaussCodeError as exc:
        raise DomainError(f"invalid Gauss code {text!r}: {exc}") from exc


def _graph(arg: str) -> Web:
    """A web from inline JSON or a JSON file.

    Accepts the web export format or ``{"rotation": {v: [neighbours...]}}``
    with counterclockwise neighbour lists.
    """
    text = arg if arg.lstrip().startswith("{") else _read(arg)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid graph JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        if "rotation" in data:
            return penrose.web_from_rotation(data["rotation"], data.get("kind", "tri"))
        return Web.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"invalid graph: {exc}") from exc


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from exc


def _poly_json(p: GraphPolynomial, graphs: bool) -> dict:
    out = p.to_json()
    if graphs:
        out["graphs"] = {k: lookup(k)[0].to_json() for k in sorted(p.keys_used())}
    return out


def _sl3_value(d: ChordDiagram, at_a, threads):
    if d.level != VIRTUAL or at_a is not None:
        return sl3.free_bracket(d, 1 if at_a is None else at_a, threads=threads)
    return sl3.bracket(d, threads=threads)


def _invariant(name: str, d: ChordDiagram, args) -> GraphPolynomial | int:
    if name == "sl3":
        return _sl3_value(d, getattr(args, "at_A", None), args.threads)
    if name == "g2":
        return g2.g2_free(d, threads=args.threads)
    if name == "parity":
        mode = getattr(args, "mode", "virtual")
        return parity.parity_bracket(d, mode, a=getattr(args, "at_A", None) or 1, threads=args.threads)
    if name == "odd-writhe":
        return odd_writhe(d)
    raise DomainError(f"{name} is not a diagram invariant")


# ------------------------------------------------------------- subcommands

def cmd_parse(args) -> tuple[dict, str]:
    d = _code(args.code)
    out = d.to_json()
    out["text"] = d.to_text()
    out["odd_chords"] = odd_chords(d)
    return out, f"{d.level} diagram, {d.n_chords} crossing(s), {len(d.circles)} component(s): {d}"


def cmd_invariant(args) -> tuple[dict, str]:
    if args.name == "penrose":
        web = _graph(args.target)
        value = penrose.penrose_bracket(web)
        out = {"invariant": "penrose", "value": value,
               "edge_3_colorings": penrose.count_edge_3_colorings(web)}
        return out, str(value)
    d = _code(args.target)
    if args.name == "odd-writhe":
        if d.level != VIRTUAL:
            raise DomainError("the odd writhe needs signed crossings")
        j = odd_writhe(d)
        return {"invariant": "odd-writhe", "value": j, "odd_chords": odd_chords(d)}, str(j)
    try:
        value = _invariant(args.name, d, args)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    out = {"invariant": args.name, "code": d.to_text(), "bracket": _poly_json(value, args.graphs)}
    text = [str(value)]
    if args.name == "sl3":
        out["classicality"] = sl3.classicality_flag(value)
        if d.level == VIRTUAL:
            out["odd_writhe"] = odd_writhe(d)
            text.append(f"odd writhe {out['odd_writhe']}")
        if args.both_orientations:
            rev = sl3.reorient(d, [True] * len(d.circles))
            other = _sl3_value(rev, args.at_A, args.threads)
            out["reversed"] = {"code": rev.to_text(), "bracket": _poly_json(other, args.graphs),
                               "equal": other == value}
            text.append(f"reversed: {other}")
    if args.name == "parity":
        out["mode"] = args.mode
    return out, "\n".join(text)


def cmd_certify(args) -> tuple[dict, str]:
    d = _code(args.code)
    if args.kind == "sl3-minimal":
        rep = sl3.minimality_report(d).to_json()
    elif args.kind == "g2-minimal":
        rep = g2.g2_minimality(d, check_survival=not args.no_survival).to_json()
    else:
        rep = _parity_odd_report(d)
    text = "certificates: " + (", ".join(rep["certificates"]) or "none")
    return {"certificate": args.kind, "code": d.to_text(), **rep}, text


def _parity_odd_report(d: ChordDiagram) -> dict:
    if len(d.circles) != 1:
        raise DomainError("parity-odd certificates are defined for knots")
    odd = odd_chords(d)
    irr = is_irreducibly_odd(intersection_graph(d)) if d.n_chords else False
    own = canonical_key(to_framed_graph(d.as_free())).key
    terms = parity.free_mod2_bracket(d)
    rep = {"odd_chords": odd, "irreducibly_odd": irr, "free_mod2_bracket": sorted(terms),
           "self_key": own, "certificates": [], "conclusions": []}
    if terms == frozenset([own]):
        rep["certificates"].append("bracket-is-itself")
        rep["conclusions"] += ["minimal crossing number among equivalent free knots", "non-trivial"]
    if irr:
        rep["certificates"].append("irreducibly-odd")
    return rep


def cmd_compare(args) -> tuple[dict, str]:
    d1, d2 = _code(args.code1), _code(args.code2)
    names = []
    if d1.level == d2.level == VIRTUAL:
        names += ["sl3", "odd-writhe", "parity"]
    elif FREE not in (d1.level, d2.level):
        names += ["sl3", "parity"]
    names.append("g2")
    results = {}
    mode = "virtual" if d1.level == d2.level == VIRTUAL else "flat"
    for name in names:
        ns = argparse.Namespace(threads=args.threads, mode=mode)
        if name == "g2" and max(d1.n_chords, d2.n_chords) > args.g2_limit:
            results[name] = {"skipped": f"more than {args.g2_limit} crossings"}
            continue
        v1, v2 = _invariant(name, d1, ns), _invariant(name, d2, ns)
        results[name] = {"equal": v1 == v2}
    differ = sorted(n for n, r in results.items() if r.get("equal") is False)
    out = {"code1": d1.to_text(), "code2": d2.to_text(), "invariants": results,
           "distinguished_by": differ}
    text = "distinguished by " + ", ".join(differ) if differ else "not distinguished"
    return out, text


def cmd_braid(args) -> tuple[dict, str]:
    try:
        b = braid.BraidWord.parse(args.strands, args.word)
    except braid.BraidError as exc:
        raise DomainError(str(exc)) from exc
    tr = braid.closure_trace(b, normalized=args.normalized)
    out = {"strands": b.n, "word": str(b), "closure": braid.closure_diagram(b).to_text(),
           "trace": _poly_json(tr, args.graphs)}
    return out, str(tr)


def cmd_fuzz(args) -> tuple[dict, str]:
    d = _code(args.code)
    inv = args.invariant
    kinds = REIDEMEISTER
    if inv in ("g2", "parity-free"):
        # free-level invariants also ignore switches, Z-moves and virtualization
        kinds = REIDEMEISTER + (MoveKind.SWITCH, MoveKind.Z, MoveKind.VIRTUALIZE)
    elif inv == "parity-flat":
        if d.level == FREE:
            raise DomainError("flat fuzzing needs O/U data")
        d = d.at_level("flat")
    elif d.level != VIRTUAL:
        raise DomainError(f"{inv} fuzzing needs a signed diagram")
    fn = {
        "sl3": lambda x: sl3.bracket(x),
        "g2": lambda x: g2.g2_free(x),
        "parity-virtual": lambda x: parity.parity_bracket(x, "virtual"),
        "parity-flat": lambda x: parity.parity_bracket(x, "flat"),
        "parity-free": lambda x: parity.parity_bracket(x, "free"),
        "odd-writhe": odd_writhe,
    }[inv]
    res = fuzz_invariant(fn, [d], args.trials, args.moves, args.seed, kinds, args.max_crossings)
    out = {"invariant": inv, "seed": res.seed, "stable": res.stable, "orbits": res.orbits,
           "moves_applied": res.moves_applied}
    if not res.stable:
        out["start"] = res.start
        out["counterexample"] = res.counterexample
        out["values"] = [str(v) for v in res.values]
        return out, "COUNTEREXAMPLE (seed %d)\n%s" % (res.seed, "\n".join(res.counterexample))
    return out, f"INVARIANT STABLE (seed {res.seed}, {res.moves_applied} moves)"


def cmd_export(args) -> tuple[dict | str, str]:
    d = _code(args.code)
    if args.what == "json":
        return d.to_json(), json.dumps(d.to_json(), sort_keys=True)
    web = to_framed_graph(d, rigid=d.level != FREE)
    dot = web.to_dot("diagram")
    return dot, dot


def cmd_colorings(args) -> tuple[dict, str]:
    web = _graph(args.graph)
    try:
        n = penrose.count_edge_3_colorings(web)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    return {"edge_3_colorings": n}, str(n)


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kupweb", description="Graph-valued bracket invariants of virtual knots.")
    p.add_argument("--threads", type=int, default=None,
                   help=f"cap on worker processes (default: ${ENV_THREADS} or 1)")
    p.add_argument("--text", action="store_true", help="human-readable output instead of JSON")
    p.add_argument("--graphs", action="store_true", help="include the graph of every key in JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="validate a Gauss code and print its normal form")
    s.add_argument("code")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("invariant", help="compute an invariant")
    s.add_argument("name", choices=INVARIANTS)
    s.add_argument("target", help="Gauss code, or graph JSON for penrose")
    s.add_argument("--mode", choices=parity.MODES, default="virtual")
    s.add_argument("--at-A", dest="at_A", type=int, choices=(1, -1), default=None)
    s.add_argument("--both-orientations", action="store_true")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("certify", help="minimality and non-triviality certificates")
    s.add_argument("kind", choices=("sl3-minimal", "g2-minimal", "parity-odd"))
    s.add_argument("code")
    s.add_argument("--no-survival", action="store_true",
                   help="skip the bracket computation that confirms the G2 witness survives")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("compare", help="check which invariants tell two diagrams apart")
    s.add_argument("code1")
    s.add_argument("code2")
    s.add_argument("--g2-limit", type=int, default=6)
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("braid", help="virtual braid operations")
    bsub = s.add_subparsers(dest="braid_command", required=True)
    t = bsub.add_parser("trace", help="graph-valued trace of a braid closure")
    t.add_argument("--strands", type=int, required=True)
    t.add_argument("--normalized", action="store_true")
    t.add_argument("word")
    t.set_defaults(func=cmd_braid)

    s = sub.add_parser("fuzz", help="random move sequences against an invariant")
    s.add_argument("code")
    s.add_argument("--invariant", choices=FUZZABLE, default="sl3")
    s.add_argument("--moves", type=int, default=25)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-crossings", type=int, default=6)
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("export", help="export a diagram")
    s.add_argument("what", choices=("dot", "json"))
    s.add_argument("code")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("colorings", help="edge 3-colourings of a trivalent graph")
    csub = s.add_subparsers(dest="colorings_command", required=True)
    t = csub.add_parser("count")
    t.add_argument("graph", help="graph JSON or a path to it")
    t.set_defaults(func=cmd_colorings)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        args.threads = thread_cap(args.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        data, text = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.text:
        print(text)
    elif isinstance(data, str):
        print(data)
    else:
        print(json.dumps(data, sort_keys=True, indent=2))
    if args.command == "fuzz" and not data["stable"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
