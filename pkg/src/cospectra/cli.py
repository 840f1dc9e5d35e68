"""Command-line interface.

Exit codes: 0 success / true verdict, 1 false verdict, 2 usage or input
error, 3 resource budget exceeded, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from . import graph as gr
from .census import (
    census_entries,
    cross_invariant_scan,
    enumerate_graphs,
    isomorphic,
    spectral_census,
    write_census,
)
from .cellular import algebra_isomorphic, coherent_config, structure_constants
from .config import RunConfig, load_config
from .errors import CospectraError, InputError, InvariantError, ParseError, ResourceError
from .graph6 import parse_graph6, write_graph6
from .logic import (
    FormulaBuilder,
    dag_size,
    evaluate,
    extension_axiom,
    format_formula,
    has_extension_property,
    parse_formula,
    width,
)
from .spectral import charpoly, spectrum_float, trace_powers, walk_count
from .sympower import k_walk_count_dp, symmetric_power
from .wl import joint_refinement, wlk_stable

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3, 4


# graph arguments -------------------------------------------------------------

def _ints(args: list[str], count: int, name: str) -> list[int]:
    if len(args) != count:
        raise InputError(f"{name} takes {count} integer argument(s)")
    try:
        return [int(a) for a in args]
    except ValueError:
        raise InputError(f"{name}: arguments must be integers") from None


_GENERATORS = {
    "empty": (1, gr.edgeless),
    "edgeless": (1, gr.edgeless),
    "complete": (1, gr.complete),
    "cycle": (1, gr.cycle),
    "path": (1, gr.path),
    "bipartite": (2, gr.complete_bipartite),
    "star": (1, lambda m: gr.complete_bipartite(1, m)),
    "paley": (1, gr.paley),
    "cubic_paley": (1, gr.cubic_paley),
    "shrikhande": (0, gr.shrikhande),
    "rook4x4": (0, gr.rook_4x4),
    "rook_4x4": (0, gr.rook_4x4),
}


def parse_generator(expr: str) -> gr.Graph:
    """``name[:a[,b]]`` terms joined by ``+`` (disjoint union), e.g. ``cycle:4+complete:1``."""
    result = None
    for term in expr.split("+"):
        name, _, rest = term.strip().partition(":")
        if name not in _GENERATORS:
            raise InputError(f"unknown generator {name!r}; known: {', '.join(sorted(_GENERATORS))}")
        arity, make = _GENERATORS[name]
        args = [a for a in rest.split(",") if a.strip()] if rest else []
        g = make(*_ints(args, arity, name))
        result = g if result is None else gr.disjoint_union(result, g)
    return result


def _looks_like_generator(text: str) -> bool:
    head = text.split("+", 1)[0].split(":", 1)[0].strip()
    return head in _GENERATORS and (":" in text or "+" in text or text.strip() in _GENERATORS)


def _parse_graph_text(text: str) -> gr.Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty graph input", 0)
    if lines[0].strip().isdigit():
        return gr.parse_edge_list(text)
    if len(lines) > 1:
        raise InputError("expected a single graph6 line")
    return parse_graph6(lines[0].strip())


def read_graph(arg: str) -> gr.Graph:
    """A generator expression, '-' for stdin, a file (graph6 or edge list) or literal graph6."""
    if arg == "-":
        return _parse_graph_text(sys.stdin.read())
    if _looks_like_generator(arg):
        return parse_generator(arg)
    if os.path.isfile(arg):
        with open(arg, encoding="ascii") as fh:
            return _parse_graph_text(fh.read())
    return parse_graph6(arg)


# output ----------------------------------------------------------------------

def emit(cfg: RunConfig, command: str, result: dict, out=None) -> None:
    out = out or sys.stdout
    if cfg.format == "json":
        doc = {"tool": "cospectra", "version": __version__, "command": command,
               "config": cfg.as_dict(), "result": result}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
        return
    out.write(f"# cospectra {__version__} {command} seed={cfg.seed}\n")
    for key in sorted(result):
        value = result[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key:<24} {value}\n")


def _verdict(flag: bool) -> int:
    return EXIT_OK if flag else EXIT_FALSE


# commands --------------------------------------------------------------------

def cmd_gen(a, cfg):
    g = read_graph(a.graph)
    if a.edges:
        sys.stdout.write(gr.write_edge_list(g))
        return EXIT_OK
    emit(cfg, "gen", {"graph6": write_graph6(g), "n": g.n, "edges": g.num_edges})
    return EXIT_OK


def cmd_spectrum(a, cfg):
    g = read_graph(a.graph)
    emit(cfg, "spectrum", {
        "charpoly": list(charpoly(g).coeffs),
        "charpoly_text": str(charpoly(g)),
        "traces": trace_powers(g, g.n) if g.n else [],
        "eigenvalues": [round(x, 10) + 0.0 for x in spectrum_float(g)],
    })
    return EXIT_OK


def cmd_cospec(a, cfg):
    g, h = read_graph(a.g1), read_graph(a.g2)
    pg, ph = charpoly(g), charpoly(h)
    same = pg == ph
    emit(cfg, "cospec", {"cospectral": same, "charpoly_g1": list(pg.coeffs),
                         "charpoly_g2": list(ph.coeffs), "text_g1": str(pg), "text_g2": str(ph)})
    return _verdict(same)


def cmd_walks(a, cfg):
    g = read_graph(a.graph)
    if (a.source is None) != (a.target is None):
        raise InputError("give both --from and --to, or neither")
    if a.source is None:
        result = {"length": a.length, "closed_walks": trace_powers(g, a.length)[-1] if a.length else g.n}
    else:
        result = {"length": a.length, "from": a.source, "to": a.target,
                  "walks": walk_count(g, a.source, a.target, a.length)}
    emit(cfg, "walks", result)
    return EXIT_OK


def _assignment(pairs: list[str]) -> dict[str, int]:
    out = {}
    for item in pairs:
        var, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"assignment {item!r} must look like var=vertex")
        try:
            out[var.strip()] = int(val)
        except ValueError:
            raise InputError(f"assignment {item!r}: vertex must be an integer") from None
    return out


def _formula_info(f) -> dict:
    return {"width": width(f), "free": sorted(f.free), "dag_size": dag_size(f)}


def cmd_logic(a, cfg):
    if a.logic_cmd == "eval":
        g = read_graph(a.graph)
        f = parse_formula(a.formula)
        value = evaluate(g, f, _assignment(a.assign))
        emit(cfg, "logic eval", {"value": value, **_formula_info(f)})
        return _verdict(value)
    if a.logic_cmd in ("psi", "phi"):
        b = FormulaBuilder(cfg.node_cap)
        f = b.psi(a.length, a.k) if a.logic_cmd == "psi" else b.phi(a.length, a.k)
        result = _formula_info(f)
        if a.show:
            result["formula"] = format_formula(f)
        emit(cfg, f"logic {a.logic_cmd}", result)
        return EXIT_OK
    if a.logic_cmd == "ext-axiom":
        f = extension_axiom(a.r, a.s)
        emit(cfg, "logic ext-axiom", {"formula": format_formula(f), **_formula_info(f)})
        return EXIT_OK
    g = read_graph(a.graph)
    value = has_extension_property(g, a.k)
    emit(cfg, "logic ext-prop", {"k": a.k, "value": value})
    return _verdict(value)


def cmd_wl(a, cfg):
    if a.wl_cmd == "refine":
        g = read_graph(a.graph)
        col = wlk_stable(g, a.k, cfg.tuple_cap)
        emit(cfg, "wl refine", {"k": a.k, "rounds": col.rounds, "class_counts": list(col.class_counts),
                                "histogram": [list(p) for p in col.histogram]})
        return EXIT_OK
    g, h = read_graph(a.g1), read_graph(a.g2)
    res = joint_refinement(g, h, a.k, cfg.tuple_cap)
    emit(cfg, "wl equiv", {"k": a.k, "equivalent": res.equivalent, "rounds": res.rounds})
    return _verdict(res.equivalent)


def cmd_sympower(a, cfg):
    g = read_graph(a.graph)
    if a.sym_cmd == "walks":
        emit(cfg, "sympower walks", {"k": a.k, "length": a.length,
                                     "closed_k_walks": k_walk_count_dp(g, a.k, a.length)})
        return EXIT_OK
    p = symmetric_power(g, a.k)
    emit(cfg, "sympower build", {"k": a.k, "n": p.n, "graph6": write_graph6(p)})
    return EXIT_OK


def cmd_cellular(a, cfg):
    if a.cell_cmd == "config":
        c = coherent_config(read_graph(a.graph), cfg.tuple_cap)
        result = {"classes": c.rank, "diagonal": list(c.diagonal), "transpose": list(c.transpose),
                  "adjacency": list(c.adjacency), "sizes": list(c.sizes)}
        if a.tensor:
            result["p"] = structure_constants(c).tolist()
        emit(cfg, "cellular config", result)
        return EXIT_OK
    value = algebra_isomorphic(read_graph(a.g1), read_graph(a.g2), cfg.tuple_cap)
    emit(cfg, "cellular iso", {"algebra_isomorphic": value})
    return _verdict(value)


def _census_n(a, cfg) -> int:
    if a.n > cfg.census_max_n and a.import_path is None:
        raise ResourceError(f"n = {a.n} exceeds census_max_n = {cfg.census_max_n}; use --import")
    return a.n


def cmd_census(a, cfg):
    n = _census_n(a, cfg)
    if a.census_cmd == "run":
        entries = census_entries(enumerate_graphs(n, a.import_path), cfg.map)
        text = write_census(entries)
        if a.output:
            with open(a.output, "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if a.census_cmd == "spectral":
        classes, s = spectral_census(n, a.import_path, cfg.map)
        emit(cfg, "census spectral", {
            "n": n, "graphs": s.graphs, "ds": s.ds, "ds_fraction": round(s.ds_fraction, 6),
            "classes": s.classes, "cospectral_class_sizes": s.cospectral_class_sizes,
            "cospectral_classes": [list(c.members) for c in classes if c.size > 1],
        })
        return EXIT_OK
    report = cross_invariant_scan(n, a.import_path, cfg.map, max_witnesses=a.witnesses)
    emit(cfg, "census scan", report.as_dict())
    return EXIT_OK


def cmd_iso(a, cfg):
    value = isomorphic(read_graph(a.g1), read_graph(a.g2))
    emit(cfg, "iso", {"isomorphic": value})
    return _verdict(value)


def cmd_verify(a, cfg):
    from .acceptance import run_all

    results = run_all(seed=cfg.seed, out=sys.stdout if cfg.format == "table" else None)
    if cfg.format == "json":
        emit(cfg, "verify", {"criteria": [r.as_dict() for r in results],
                             "passed": all(r.passed for r in results)})
    return _verdict(all(r.passed for r in results))


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--format", choices=["json", "table"], default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--tuple-cap", type=int, default=None)
    common.add_argument("--node-cap", type=int, default=None)
    common.add_argument("--census-max-n", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="cospectra", parents=[common],
                                description="Exact spectral, logical and WL graph comparisons.")
    p.add_argument("--version", action="version", version=f"cospectra {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    sp = add("gen", cmd_gen, help="build a graph and print its graph6")
    sp.add_argument("graph")
    sp.add_argument("--edges", action="store_true", help="print an edge list instead")

    add("spectrum", cmd_spectrum, help="characteristic polynomial and eigenvalues").add_argument("graph")

    sp = add("cospec", cmd_cospec, help="exit 0 iff the graphs are co-spectral")
    sp.add_argument("g1")
    sp.add_argument("g2")

    sp = add("iso", cmd_iso, help="exit 0 iff the graphs are isomorphic")
    sp.add_argument("g1")
    sp.add_argument("g2")

    sp = add("walks", cmd_walks, help="walk counts")
    sp.add_argument("graph")
    sp.add_argument("-l", "--length", type=int, required=True)
    sp.add_argument("--from", dest="source", type=int)
    sp.add_argument("--to", dest="target", type=int)

    lp = add("logic", cmd_logic, help="counting logic").add_subparsers(dest="logic_cmd", required=True)
    sp = lp.add_parser("eval", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("formula")
    sp.add_argument("assign", nargs="*", help="var=vertex")
    for name in ("psi", "phi"):
        sp = lp.add_parser(name, parents=[common])
        sp.add_argument("length", type=int)
        sp.add_argument("k", type=int)
        sp.add_argument("--show", action="store_true", help="include the formula text")
    sp = lp.add_parser("ext-axiom", parents=[common])
    sp.add_argument("r", type=int)
    sp.add_argument("s", type=int)
    sp = lp.add_parser("ext-prop", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("k", type=int)

    wp = add("wl", cmd_wl, help="Weisfeiler-Leman refinement").add_subparsers(dest="wl_cmd", required=True)
    sp = wp.add_parser("refine", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("-k", type=int, default=1)
    sp = wp.add_parser("equiv", parents=[common])
    sp.add_argument("g1")
    sp.add_argument("g2")
    sp.add_argument("-k", type=int, default=1)

    sp_ = add("sympower", cmd_sympower, help="symmetric powers").add_subparsers(dest="sym_cmd", required=True)
    sp = sp_.add_parser("build", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("-k", type=int, required=True)
    sp = sp_.add_parser("walks", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("-l", "--length", type=int, required=True)

    cp = add("cellular", cmd_cellular, help="coherent configurations").add_subparsers(dest="cell_cmd", required=True)
    sp = cp.add_parser("config", parents=[common])
    sp.add_argument("graph")
    sp.add_argument("-p", "--tensor", action="store_true", help="include structure constants")
    sp = cp.add_parser("iso", parents=[common])
    sp.add_argument("g1")
    sp.add_argument("g2")

    np_ = add("census", cmd_census, help="small-graph census").add_subparsers(dest="census_cmd", required=True)
    for name in ("run", "spectral", "scan"):
        sp = np_.add_parser(name, parents=[common])
        sp.add_argument("-n", type=int, required=True)
        sp.add_argument("--import", dest="import_path", help="graph6 file with the n-vertex graphs")
        if name == "run":
            sp.add_argument("-o", "--output", help="TSV file (default stdout)")
        if name == "scan":
            sp.add_argument("--witnesses", type=int, default=10, help="max witness pairs per region")

    add("verify", cmd_verify, help="run the acceptance suite")
    return p


def _config(a) -> RunConfig:
    return load_config(a.config, {
        "format": a.format, "workers": a.workers, "tuple_cap": a.tuple_cap,
        "node_cap": a.node_cap, "census_max_n": a.census_max_n, "seed": a.seed,
    })


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return a.func(a, _config(a))
    except ResourceError as exc:
        print(f"cospectra: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as exc:
        print(f"cospectra: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CospectraError, OSError) as exc:
        print(f"cospectra: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
