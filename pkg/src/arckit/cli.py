"""``arckit`` command-line front end.

Exit codes: 0 on success, 2 when a check or verification fails, 1 on usage,
parse or size-cap errors.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import claims
from .arcs import (
    CircularArcModel,
    check_normalized,
    format_model,
    normalize,
    parse_arc_model,
    parse_chord_model,
    parse_model,
    to_chord_model,
)
from .conformal import build_gc, conformality_violations, is_module_consistent
from .decomposition import (
    DEFAULT_JOIN_CAP,
    DEFAULT_MODULE_CAP,
    build_md_tree,
    find_join,
)
from .dot import graph_to_dot, md_tree_to_dot, model_to_dot
from .enumeration import (
    DEFAULT_ARC_CAP,
    DEFAULT_CHORD_CAP,
    enumerate_chord_models,
    enumerate_conformal_models,
    enumerate_normalized_models,
)
from .errors import ArcKitError, FixtureInvalid, ParseError, SizeCapExceeded
from .graph import format_graph, parse_graph

ENV_ENUM_CAP = "ARCKIT_ENUM_CAP"
FORMATS = ("text", "json", "dot")


@dataclass
class Config:
    """Run-time settings.  ``enum_cap`` of None means the per-search default."""

    module_scan_cap: int = DEFAULT_MODULE_CAP
    join_scan_cap: int = DEFAULT_JOIN_CAP
    enum_cap: int | None = None
    output_format: str = "text"

    def __post_init__(self):
        for name in ("module_scan_cap", "join_scan_cap", "enum_cap"):
            val = getattr(self, name)
            if val is None and name == "enum_cap":
                continue
            if not isinstance(val, int) or isinstance(val, bool) or val < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {val!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"output_format must be one of {FORMATS}, got {self.output_format!r}")

    @classmethod
    def from_mapping(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    def cap_for(self, kind: str) -> int:
        if self.enum_cap is not None:
            return self.enum_cap
        return DEFAULT_ARC_CAP if kind == "normalized" else DEFAULT_CHORD_CAP


class UsageError(Exception):
    pass


# --- helpers -------------------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _model(path: str, kind: str = "any"):
    parser = {"arc": parse_arc_model, "chord": parse_chord_model, "any": parse_model}[kind]
    try:
        return parser(_read(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _out(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# --- subcommands ---------------------------------------------------------------------


def cmd_gc(args, cfg: Config) -> int:
    gc = build_gc(_graph(args.graph))
    if cfg.output_format == "dot":
        _out(args, graph_to_dot(gc, "G_c"))
    elif cfg.output_format == "json":
        _out(args, _json({"vertices": list(gc.vertices), "edges": gc.sorted_edges()}))
    else:
        _out(args, format_graph(gc))
    return 0


def _tree_dict(node) -> dict:
    out = {"kind": str(node.kind), "vertices": sorted(node.vertices)}
    if node.children:
        out["children"] = [_tree_dict(c) for c in node.children]
    return out


def cmd_mdtree(args, cfg: Config) -> int:
    tree = build_md_tree(_graph(args.graph), cap=cfg.module_scan_cap)
    if args.dot and args.dot != "-":
        Path(args.dot).write_text(md_tree_to_dot(tree))
    elif args.dot or cfg.output_format == "dot":
        _out(args, md_tree_to_dot(tree))
    elif cfg.output_format == "json":
        _out(args, _json(_tree_dict(tree)))
    else:
        _out(args, tree.render() + "\n")
    return 0


def cmd_join(args, cfg: Config) -> int:
    j = find_join(_graph(args.graph), cap=cfg.join_scan_cap)
    if cfg.output_format == "json":
        parts = None if j is None else {f"V{i}": sorted(p) for i, p in enumerate(j.parts)}
        _out(args, _json({"join": parts}))
    elif j is None:
        _out(args, "no join\n")
    else:
        _out(args, "".join(f"V{i}: {' '.join(sorted(p))}\n" for i, p in enumerate(j.parts)))
    return 0


def cmd_normalize(args, cfg: Config) -> int:
    g = _graph(args.graph)
    m = normalize(_model(args.model, "arc"), g)
    _out(args, format_model(m))
    return 0


def cmd_check_normalized(args, cfg: Config) -> int:
    g = _graph(args.graph)
    bad = check_normalized(_model(args.model, "arc"), g)
    if cfg.output_format == "json":
        _out(args, _json({"normalized": not bad, "violations": [str(v) for v in bad]}))
    elif bad:
        _out(args, "".join(f"{v}\n" for v in bad))
    else:
        _out(args, "normalized\n")
    return 2 if bad else 0


def cmd_to_chords(args, cfg: Config) -> int:
    _out(args, format_model(to_chord_model(_model(args.model, "arc"))))
    return 0


def cmd_conformal(args, cfg: Config) -> int:
    g = _graph(args.graph)
    bad = conformality_violations(_model(args.model, "chord"), g)
    if bad:
        _out(args, "not conformal at: " + " ".join(bad) + "\n")
        return 2
    _out(args, "conformal\n")
    return 0


def cmd_consistent(args, cfg: Config) -> int:
    model = _model(args.model)
    if isinstance(model, CircularArcModel):
        model = to_chord_model(model)
    module = [v for v in args.module.split(",") if v]
    w = is_module_consistent(model, module)
    if w is None:
        _out(args, "inconsistent\n")
        return 2
    _out(args, f"consistent: runs {w.arc_a[0]}..{w.arc_a[1]} and {w.arc_b[0]}..{w.arc_b[1]}\n")
    return 0


def cmd_enumerate(args, cfg: Config) -> int:
    g = _graph(args.graph)
    cap = args.cap if args.cap is not None else cfg.cap_for(args.kind)
    search = {
        "chords": enumerate_chord_models,
        "normalized": enumerate_normalized_models,
        "conformal": enumerate_conformal_models,
    }[args.kind]
    res = search(g, cap=cap, budget=args.budget)
    if res.cap_hit:
        print(f"warning: search budget of {args.budget} nodes exhausted", file=sys.stderr)
    if cfg.output_format == "json":
        _out(args, _json({
            "kind": args.kind,
            "classes": res.classes,
            "labeled": res.labeled_count,
            "search_space_size": res.search_space_size,
            "cap_hit": res.cap_hit,
            "models": [] if args.count_only else [str(m) for m in res.models],
        }))
    elif args.count_only:
        _out(args, f"{res.classes}\n")
    else:
        _out(args, "".join(format_model(m) for m in res.models))
    return 2 if res.cap_hit else 0


def cmd_verify_claims(args, cfg: Config) -> int:
    names = claims.CLAIMS if args.claim == "all" else (
        claims.DEFAULT_CLAIMS if args.claim is None else (args.claim,)
    )
    reports = []
    status = 0
    for name in names:
        try:
            if name == "H1":
                rep = claims.verify_h1_on_primes(sample_count=args.samples, seed=args.seed)
            else:
                rep = claims.VERIFIERS[name]()
        except FixtureInvalid as exc:
            print(f"error: {exc}", file=sys.stderr)
            if exc.report is None:
                return 2
            rep = exc.report
        reports.append(rep)
        if not rep.ok:
            status = 2
    if args.json:
        text = claims.reports_to_json(reports, timing=not args.no_timing)
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text)
    if args.json != "-":
        for rep in reports:
            print(rep.render())
    return status


def cmd_export_dot(args, cfg: Config) -> int:
    if args.model:
        _out(args, model_to_dot(_model(args.model)))
    elif args.graph and args.what == "mdtree":
        _out(args, md_tree_to_dot(build_md_tree(_graph(args.graph), cap=cfg.module_scan_cap)))
    elif args.graph and args.what == "gc":
        _out(args, graph_to_dot(build_gc(_graph(args.graph)), "G_c"))
    elif args.graph:
        _out(args, graph_to_dot(_graph(args.graph)))
    else:
        raise UsageError("export-dot needs -g GRAPH or -m MODEL")
    return 0


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arckit", description="Circular-arc model toolkit.")
    ap.add_argument("--config", help="JSON file with Config fields")
    ap.add_argument("--format", dest="output_format", choices=FORMATS)
    ap.add_argument("--module-cap", type=int, help="vertex cap for module scans")
    ap.add_argument("--join-cap", type=int, help="vertex cap for join search")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_, graph=False, model=False):
        p = sub.add_parser(name, help=help_)
        if graph:
            p.add_argument("-g", "--graph", required=True, help="graph file ('-' for stdin)")
        if model:
            flags = ("-m", "-d", "--model") if model == "chord" else ("-m", "--model")
            p.add_argument(*flags, dest="model", required=True, help="model file ('-' for stdin)")
        p.add_argument("-o", "--output", help="write the result here instead of stdout")
        p.set_defaults(func=fn)
        return p

    add("gc", cmd_gc, "print G_c of a graph", graph=True)
    p = add("mdtree", cmd_mdtree, "modular decomposition tree", graph=True)
    p.add_argument("--dot", nargs="?", const="-", metavar="OUT", help="emit DOT (to OUT if given)")
    add("join", cmd_join, "find a join (split) of a graph", graph=True)
    add("normalize", cmd_normalize, "turn an arc model into a normalized one", graph=True, model=True)
    add("check-normalized", cmd_check_normalized, "list normalization violations", graph=True, model=True)
    add("to-chords", cmd_to_chords, "chord model of an arc model", model=True)
    add("conformal", cmd_conformal, "check a chord model of G_c for conformality", graph=True, model="chord")
    p = add("consistent", cmd_consistent, "check module consistency in a model", model="chord")
    p.add_argument("--module", required=True, help="comma-separated vertices")
    p = add("enumerate", cmd_enumerate, "exhaustive model search", graph=True)
    p.add_argument("kind", choices=("chords", "normalized", "conformal"))
    p.add_argument("--cap", type=int, help=f"vertex cap (env {ENV_ENUM_CAP} sets the default)")
    p.add_argument("--budget", type=int, help="stop after this many search nodes")
    p.add_argument("--count-only", action="store_true")
    p = sub.add_parser("verify-claims", help="run the claim verifiers on the shipped fixtures")
    p.add_argument("--claim", choices=claims.CLAIMS + ("all",))
    p.add_argument("--json", metavar="OUT", help="write the JSON report here ('-' for stdout)")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms from JSON")
    p.add_argument("--samples", type=int, default=50, help="H1 sample count")
    p.add_argument("--seed", type=int, default=0, help="H1 sampling seed")
    p.set_defaults(func=cmd_verify_claims)
    p = sub.add_parser("export-dot", help="DOT drawing of a graph, G_c, MD tree or model")
    p.add_argument("-g", "--graph")
    p.add_argument("-m", "--model")
    p.add_argument("--what", choices=("graph", "gc", "mdtree"), default="graph")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_dot)
    return ap


def load_config(args, environ=os.environ) -> Config:
    data: dict = {}
    if args.config:
        try:
            data = json.loads(_read(args.config))
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.config}: invalid JSON ({exc.msg})") from exc
        if not isinstance(data, dict):
            raise UsageError(f"{args.config}: expected a JSON object")
    env = environ.get(ENV_ENUM_CAP)
    if env is not None:
        try:
            data["enum_cap"] = int(env)
        except ValueError:
            raise UsageError(f"{ENV_ENUM_CAP} must be an integer, got {env!r}") from None
    for key, val in (
        ("output_format", args.output_format),
        ("module_scan_cap", args.module_cap),
        ("join_scan_cap", args.join_cap),
    ):
        if val is not None:
            data[key] = val
    try:
        return Config.from_mapping(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        cfg = load_config(args)
        if getattr(args, "cap", None) is not None and args.cap < 1:
            raise UsageError("--cap must be >= 1")
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"arckit: error: {exc}", file=sys.stderr)
        return 1
    except SizeCapExceeded as exc:
        print(f"arckit: {exc}", file=sys.stderr)
        return 1
    except ArcKitError as exc:
        print(f"arckit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"arckit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
