"""Command-line front end.

Exit codes: 0 when everything passes, 1 when a check finds a violation,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import families
from .errors import EdgeListParseError, SuperDomError, TheoremViolation
from .graph import (
    Graph,
    VertexSet,
    emit_edge_list,
    is_tree,
    parse_edge_list,
    path_graph,
    star_graph,
    subdivide,
    tree_from_canonical,
)
from .harness import CHECKS, verify_all
from .solvers import gamma_sp, gamma_sp_witness, gamma_t_witness, gamma_witness
from .subdivision import subdivision_number
from .transform import normalize_for_leaf

PARAMS = ("gamma", "gamma_t", "gamma_sp")
_WITNESS = {"gamma": gamma_witness, "gamma_t": gamma_t_witness, "gamma_sp": gamma_sp_witness}

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------- input


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph", nargs="?", help="edge-list file ('-' for stdin)")
    p.add_argument("--path", type=int, metavar="N", help="use the path on N vertices")
    p.add_argument("--star", type=int, metavar="K", help="use the star K_{1,K}")


def _load_graph(args) -> Graph:
    given = [x is not None for x in (args.graph, args.path, args.star)]
    if sum(given) != 1:
        raise UsageError("give exactly one of: a graph file, --path N, --star K")
    if args.path is not None:
        if args.path < 1:
            raise UsageError("--path needs N >= 1")
        return path_graph(args.path)
    if args.star is not None:
        if args.star < 1:
            raise UsageError("--star needs K >= 1")
        return star_graph(args.star)
    if args.graph == "-":
        return parse_edge_list(sys.stdin.read())
    path = Path(args.graph)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except EdgeListParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise UsageError("input is not a tree")


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad {what}: {text!r}") from None


def _edge_list(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        uv = part.replace("-", " ").split()
        if len(uv) != 2:
            raise UsageError(f"bad edge {part!r}; use u-v")
        out.append(tuple(_int_list(" ".join(uv), "edge")))
    return out


# --------------------------------------------------------------------------- output


def _emit(args, rows: list[dict], text_lines: list[str], payload=None) -> str:
    """Render one result in the requested format; all formats share ``rows``."""
    if args.format == "json":
        return json.dumps(rows if payload is None else payload, sort_keys=True, indent=2) + "\n"
    if args.format == "csv":
        buf = io.StringIO()
        cols = list(rows[0]) if rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def _write(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out and args.command != "family":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_set(s) -> str:
    return "{" + ", ".join(str(v) for v in s) + "}"


def _fmt_edges(es) -> str:
    return "[" + ", ".join(f"{u}-{v}" for u, v in es) + "]"


# --------------------------------------------------------------------------- commands


def cmd_compute(args) -> int:
    g = _load_graph(args)
    params = PARAMS if args.params in (None, "all") else tuple(_split(args.params))
    bad = [p for p in params if p not in PARAMS]
    if bad:
        raise UsageError(f"unknown parameter {bad[0]!r}; choose from {', '.join(PARAMS)}")
    rows = []
    for p in params:
        w = _WITNESS[p](g)
        rows.append({"param": p, "value": len(w), "witness": list(w)})
    lines = [f"n={g.n} m={g.m}"] + [f"{r['param']}={r['value']} witness={_fmt_set(r['witness'])}" for r in rows]
    payload = {"n": g.n, "m": g.m, "params": rows}
    _write(args, _emit(args, rows, lines, payload))
    return EXIT_OK


def _classify_row(t: Graph) -> dict:
    res = subdivision_number(t)
    return {
        "n": t.n,
        "gamma_sp": res.base_gamma_sp,
        "sd": res.sd,
        "witness_edges": [list(e) for e in res.witness_edges],
        "new_gamma_sp": res.new_gamma_sp,
        "class": res.class_label,
        "in_U": res.sd == 2,
        "in_U_closure": _in_u_closure(t),
    }


def _in_u_closure(t: Graph) -> bool | None:
    if t.n > families.FAMILY_BUDGET["U_family"]:
        return None
    return families.certify_U(t) is not None


def _yes_no(x) -> str:
    return "n/a" if x is None else ("yes" if x else "no")


def cmd_classify(args) -> int:
    t = _load_graph(args)
    _require_tree(t)
    if t.n < 2:
        raise UsageError("classification needs a tree of order >= 2")
    r = _classify_row(t)
    lines = [
        f"n={r['n']} gamma_sp={r['gamma_sp']}",
        f"sd={r['sd']} witness_edges={_fmt_edges(r['witness_edges'])} new_gamma_sp={r['new_gamma_sp']}",
        f"class={r['class']}",
        f"in_U={'yes' if r['in_U'] else 'no'}",
        f"in_U_closure={_yes_no(r['in_U_closure'])}",
    ]
    _write(args, _emit(args, [r], lines, r))
    return EXIT_OK


def cmd_subdivide(args) -> int:
    g = _load_graph(args)
    es = _edge_list(args.edges)
    h = subdivide(g, es)
    before, after = gamma_sp(g), gamma_sp(h)
    r = {
        "edges": [list(e) for e in es],
        "gamma_sp_before": before,
        "gamma_sp_after": after,
        "increased": after > before,
        "edge_list": emit_edge_list(h),
    }
    lines = [
        f"subdivided={_fmt_edges(es)}",
        f"gamma_sp_before={before} gamma_sp_after={after} increased={'yes' if after > before else 'no'}",
        emit_edge_list(h).rstrip("\n"),
    ]
    _write(args, _emit(args, [r], lines, r))
    return EXIT_OK


def cmd_transform(args) -> int:
    t = _load_graph(args)
    _require_tree(t)
    s = VertexSet.of(t.n, _int_list(args.set, "set")) if args.set else gamma_sp_witness(t)
    out = normalize_for_leaf(t, s, args.leaf)
    r = {"leaf": args.leaf, "input_set": list(s), "output_set": list(out), "size": len(out)}
    lines = [
        f"leaf={args.leaf}",
        f"input_set={_fmt_set(s)}",
        f"output_set={_fmt_set(out)} size={len(out)}",
    ]
    _write(args, _emit(args, [r], lines, r))
    return EXIT_OK


def _family_build(args) -> int:
    path = Path(args.target)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    cert = families.FamilyCertificate.from_json(text)
    g = cert.replay()
    r = {"family": cert.family, "n": g.n, "edge_list": emit_edge_list(g)}
    _write_family(args, _emit(args, [r], [emit_edge_list(g).rstrip("\n")], r))
    return EXIT_OK


def _family_recognize(args) -> int:
    fam = families.family_name(args.target)
    t = _load_graph(args)
    _require_tree(t)
    cert = families.certify(fam, t)
    r = {"family": fam, "member": cert is not None, "certificate": cert.to_dict() if cert else None}
    lines = [f"{fam}: {'yes' if cert else 'no'}"]
    if cert is not None:
        if fam == "Corona":
            h = parse_edge_list(cert.base["edge_list"])
            lines.append(f"H: n={h.n} edges={_fmt_edges(h.edges)}")
        lines.append("certificate=" + cert.to_json())
    _write_family(args, _emit(args, [r], lines, r))
    return EXIT_OK


def _family_enumerate(args) -> int:
    fam = families.family_name(args.target)
    if args.n is None:
        raise UsageError("family enumerate needs N")
    forms = sorted(families.enumerate_family(fam, args.n), key=lambda f: (len(f), f))
    graphs = [tree_from_canonical(f) for f in forms]
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for f, g in zip(forms, graphs):
            (d / f"{f.hex()}.txt").write_text(emit_edge_list(g))
    rows = [{"family": fam, "n": g.n, "form": f.hex(), "edge_list": emit_edge_list(g)} for f, g in zip(forms, graphs)]
    lines = [f"{fam} n<={args.n}: {len(forms)} trees"]
    lines += [f"n={g.n} edges={_fmt_edges(g.edges)}" for g in graphs]
    payload = {"family": fam, "n_max": args.n, "count": len(forms), "trees": rows}
    sys.stdout.write(_emit(args, rows, lines, payload))
    return EXIT_OK


def _write_family(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_family(args) -> int:
    if args.action == "build":
        return _family_build(args)
    if args.action == "recognize":
        return _family_recognize(args)
    return _family_enumerate(args)


def _split(text: str) -> list[str]:
    return [x for x in text.replace(",", " ").split() if x]


def cmd_verify(args) -> int:
    ids = list(args.ids)
    if args.theorems:
        ids += _split(args.theorems)
    if args.all:
        if ids:
            raise UsageError("--all cannot be combined with theorem ids")
        ids = list(CHECKS)
    if not ids:
        raise UsageError("name at least one theorem id or pass --all")
    unknown = [t for t in ids if t not in CHECKS]
    if unknown:
        raise UsageError(f"unknown theorem id {unknown[0]!r}; valid ids: {', '.join(CHECKS)}")
    reports = verify_all(args.nmax, workers=args.workers, theorem_ids=ids)
    rows = []
    for rep in reports:
        d = rep.to_dict()
        if args.no_timing:
            d["elapsed_ms"] = 0.0
        rows.append(d)
    lines = []
    for d in rows:
        lines.append(
            f"{d['theorem_id']}: {d['verdict'].upper()} n={d['n_min']}..{d['n_max']} "
            f"checked={d['instances_checked']} skipped={d['skipped_precondition']} "
            f"violations={len(d['violations'])} elapsed_ms={d['elapsed_ms']}"
        )
        for v in d["violations"]:
            lines.append(f"  {v['detail']}: {v['tree'].rstrip().replace(chr(10), '; ')}")
    if args.format == "csv":
        flat = [{**d, "violations": len(d["violations"])} for d in rows]
        text = _emit(args, flat, lines)
    else:
        text = _emit(args, rows, lines)
    _write(args, text)
    return EXIT_VIOLATION if any(d["verdict"] == "fail" for d in rows) else EXIT_OK


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output to this file (directory for family enumerate)")

    p = argparse.ArgumentParser(prog="superdom", description="Super domination in trees.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="domination parameters with witnesses")
    _add_graph_args(c)
    c.add_argument("--params", help="comma-separated subset of gamma,gamma_t,gamma_sp (default all)")
    c.set_defaults(func=cmd_compute)

    c = sub.add_parser("classify", parents=[common], help="subdivision number and class of a tree")
    _add_graph_args(c)
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("subdivide", parents=[common], help="subdivide edges and compare gamma_sp")
    _add_graph_args(c)
    c.add_argument("--edges", required=True, help="edges to subdivide, e.g. '0-1,2-3'")
    c.set_defaults(func=cmd_subdivide)

    c = sub.add_parser("transform", parents=[common], help="move a leaf out of a minimum set")
    _add_graph_args(c)
    c.add_argument("--leaf", type=int, required=True)
    c.add_argument("--set", help="minimum super dominating set (default: the solver's witness)")
    c.set_defaults(func=cmd_transform)

    c = sub.add_parser("family", parents=[common], help="build, recognize or enumerate a family")
    c.add_argument("action", choices=("build", "recognize", "enumerate"))
    c.add_argument("target", help="certificate file for build, family name otherwise")
    c.add_argument("n", nargs="?", type=int, help="order bound for enumerate")
    c.add_argument("--graph", dest="graph", help="edge-list file for recognize")
    c.add_argument("--path", type=int, metavar="N")
    c.add_argument("--star", type=int, metavar="K")
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("verify", parents=[common], help="exhaustive checks over small trees")
    c.add_argument("ids", nargs="*", help="theorem ids")
    c.add_argument("--all", action="store_true")
    c.add_argument("--theorems", help="comma-separated theorem ids")
    c.add_argument("--nmax", type=int, default=10)
    c.add_argument("--workers", type=int, default=None, help="process count (default SUPERDOM_THREADS)")
    c.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for reproducible output")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"violation: {str(exc).splitlines()[0]}", file=sys.stderr)
        return EXIT_VIOLATION
    except families.CertificateError as exc:
        step = getattr(exc, "step", None)
        where = f" at step {step}" if step is not None else ""
        print(f"error: invalid certificate{where}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, SuperDomError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
