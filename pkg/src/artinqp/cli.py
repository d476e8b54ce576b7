"""Command-line front end.

Exit codes: 0 for a QP verdict or success, 3 for a NOT QP verdict, 2 for
invalid input, 1 when a certificate fails re-verification.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from typing import Sequence

from . import __version__
from .alexander import alexander_matrix, cocyclic_matrix
from .charvar.obstruction import ObstructionWitness, verify_obstruction
from .charvar.rank import depth_from_rank, generic_rank, rank_on_torus
from .charvar.torus import (
    TorsionTorus, TorusSyntaxError, format_constraint, parse_constraint, parse_torus_file,
)
from .graph import NAME_RE, GraphError, LabeledGraph, validate_graph
from .presentation import TorsionError, artin_presentation, cocyclic_presentation
from .qpdecide import QP, NotQP, decide_qp

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_NOT_QP = 3


class InputError(Exception):
    pass


def parse_graph_file(text: str) -> LabeledGraph:
    """``vertex <name>`` and ``edge <a> <b> <label>`` lines; ``#`` comments."""
    vertices: list[str] = []
    vlines: dict = {}
    edges: list = []
    elines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        kw = body[0]
        if kw == "vertex":
            if len(body) != 2:
                raise GraphError("syntax", f"vertex needs one name at line {lineno}", lineno)
            name = body[1]
            if not NAME_RE.match(name):
                raise GraphError("bad name", f"bad vertex name {name!r} at line {lineno}", lineno)
            if name in vlines:
                raise GraphError("duplicate vertex", f"duplicate vertex at line {lineno}", lineno)
            vlines[name] = lineno
            vertices.append(name)
        elif kw == "edge":
            if len(body) != 4:
                raise GraphError("syntax", f"edge needs two names and a label at line {lineno}",
                                 lineno)
            try:
                label = int(body[3])
            except ValueError:
                raise GraphError("bad label", f"non-integer label at line {lineno}", lineno)
            edges.append((body[1], body[2], label))
            elines.append(lineno)
        else:
            raise GraphError("syntax", f"unknown keyword {kw!r} at line {lineno}", lineno)
    return validate_graph(vertices, edges, elines)


def graph_digest(g: LabeledGraph) -> str:
    return hashlib.sha256(g.to_text().encode()).hexdigest()


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def _load_graph(path: str) -> LabeledGraph:
    return parse_graph_file(_read(path))


def _cocyclic_args(g: LabeledGraph, spec):
    if spec is None:
        return None
    u, k = spec
    if u not in g.vertices:
        raise InputError(f"vertex {u!r} not in graph")
    try:
        k = int(k)
    except ValueError:
        raise InputError(f"index {k!r} is not an integer")
    if k < 2:
        raise InputError("co-cyclic index must be >= 2")
    return u, k


def _matrix(g: LabeledGraph, cocyc):
    if cocyc is None:
        return alexander_matrix(artin_presentation(g))
    return cocyclic_matrix(g, *cocyc)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# subcommands

def cmd_present(args, out) -> int:
    g = _load_graph(args.graph)
    cocyc = _cocyclic_args(g, args.cocyclic)
    if cocyc is None:
        p = artin_presentation(g)
        out.write(p.to_text(annotate=args.annotate))
    else:
        p = cocyclic_presentation(g, *cocyc)
        out.write(p.to_text(annotate=True))
    return EXIT_OK


def cmd_alexander(args, out) -> int:
    g = _load_graph(args.graph)
    m = _matrix(g, _cocyclic_args(g, args.cocyclic))
    if args.json:
        out.write(_dump(m.to_json_obj()))
        return EXIT_OK
    if not m.nrows:
        out.write("note: 0 relators (empty matrix)\n")
    out.write(m.render())
    for name in sorted(m.blocks):
        r, c = m.blocks[name]
        if not r or not c:
            continue
        out.write(f"block {name}: rows {list(r)} columns {list(c)}\n")
    return EXIT_OK


def cmd_rank(args, out) -> int:
    g = _load_graph(args.graph)
    m = _matrix(g, _cocyclic_args(g, args.cocyclic))
    n = m.ncols
    r = generic_rank(m)
    out.write(f"generic: rank {r}; corank {n - r}; depth {depth_from_rank(n, r)}\n")
    if args.torus is None:
        return EXIT_OK
    try:
        blocks = parse_torus_file(_read(args.torus), m.nvars)
    except TorusSyntaxError as exc:
        raise InputError(str(exc))
    for idx, (t, line) in enumerate(blocks, 1):
        head = f"torus {idx} (line {line})"
        if not t.nonempty:
            out.write(f"{head}: empty torus (inconsistent constraints)\n")
            continue
        rt = rank_on_torus(m, t)
        out.write(f"{head}: dim {t.dimension}; rank {rt}; corank {n - rt}; "
                  f"depth {depth_from_rank(n, rt)}\n")
    return EXIT_OK


def _witness_obj(w: ObstructionWitness) -> dict:
    def tori(ts):
        return [[format_constraint(a, q) for a, q in t.constraints] for t in ts]
    obj = {"u": w.u, "k": w.k, "arity": w.tori1[0].n,
           "tori1": tori(w.tori1), "tori2": tori(w.tori2)}
    if w.ideals:
        i1, i2, pinned = w.ideals
        obj["ideals"] = {"I1": list(i1), "I2": list(i2), "pinned": list(pinned)}
    return obj


def certificate(g: LabeledGraph, verdict, jobs: int = 1) -> dict:
    cert = {
        "tool": "artinqp",
        "version": __version__,
        "graph": g.to_text(),
        "graph_sha256": graph_digest(g),
    }
    if isinstance(verdict, QP):
        cert["verdict"] = "QP"
        cert["factors"] = [{"kind": str(k), "vertices": list(v)}
                           for k, v in zip(verdict.factors, verdict.factor_vertices)]
        return cert
    cert["verdict"] = "NotQP"
    cert["pattern"] = {"kind": verdict.pattern.kind, "params": list(verdict.pattern.params),
                       "display": verdict.pattern.display,
                       "theorem": verdict.pattern.theorem}
    cert["embedding"] = dict(sorted(verdict.embedding.items()))
    cert["factor_vertices"] = list(verdict.factor_vertices)
    if verdict.witness is None:
        cert["witness"] = None
        return cert
    cert["witness"] = _witness_obj(verdict.witness)
    cert["verification"] = verify_obstruction(g, verdict.witness, jobs=jobs).to_json_obj()
    return cert


def cmd_decide(args, out) -> int:
    g = _load_graph(args.graph)
    verdict = decide_qp(g)
    code = EXIT_OK if isinstance(verdict, QP) else EXIT_NOT_QP
    if args.json:
        out.write(_dump(certificate(g, verdict, args.jobs)))
        return code
    line = verdict.text()
    if args.verify and isinstance(verdict, NotQP):
        if verdict.witness is None:
            line += f"; no tabulated witness ({verdict.pattern.theorem})"
        else:
            line += "; " + verify_obstruction(g, verdict.witness, jobs=args.jobs).summary()
    out.write(line + "\n")
    return code


def witness_from_obj(obj: dict) -> ObstructionWitness:
    n = int(obj["arity"])

    def torus(lines):
        rows = []
        for text in lines:
            exps, q = parse_constraint(text)
            a = [0] * n
            for i, e in exps.items():
                if i >= n:
                    raise InputError(f"variable t{i} outside the witness arity")
                a[i] = e
            rows.append((tuple(a), q))
        return TorsionTorus(n, tuple(rows))

    return ObstructionWitness(obj["u"], int(obj["k"]),
                              tuple(torus(t) for t in obj["tori1"]),
                              tuple(torus(t) for t in obj["tori2"]))


def check_certificate(cert: dict, jobs: int = 1) -> list[str]:
    """Problems found when re-deriving a certificate (empty when it holds)."""
    problems = []
    g = parse_graph_file(cert["graph"])
    if graph_digest(g) != cert.get("graph_sha256"):
        problems.append("graph hash mismatch")
    verdict = decide_qp(g)
    tag = "QP" if isinstance(verdict, QP) else "NotQP"
    if tag != cert.get("verdict"):
        problems.append(f"verdict mismatch: recomputed {tag}")
    if tag == "QP" or cert.get("witness") is None:
        return problems
    w = witness_from_obj(cert["witness"])
    fresh = verify_obstruction(g, w, jobs=jobs).to_json_obj()
    old = cert.get("verification")
    if old != fresh:
        problems.append("verification ranks differ from the certificate")
    elif not fresh["passed"]:
        problems.append("witness does not pass verification")
    return problems


def cmd_check_cert(args, out) -> int:
    try:
        cert = json.loads(_read(args.certificate))
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not valid JSON: {exc.msg} at line {exc.lineno}")
    try:
        problems = check_certificate(cert, args.jobs)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise InputError(f"malformed certificate: {exc}")
    if problems:
        for p in problems:
            out.write(f"certificate FAILED: {p}\n")
        return EXIT_FAILED
    out.write(f"certificate OK: {cert['verdict']}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="artinqp",
                                 description="Quasi-projectivity of even Artin groups.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_cocyclic(p):
        p.add_argument("--cocyclic", nargs=2, metavar=("VERTEX", "K"),
                       help="use the index-K co-cyclic subgroup at VERTEX")

    p = sub.add_parser("present", help="print the Artin or co-cyclic presentation")
    p.add_argument("graph")
    with_cocyclic(p)
    p.add_argument("--annotate", action="store_true", help="tag each relator")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("alexander", help="print the Alexander matrix")
    p.add_argument("graph")
    with_cocyclic(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("rank", help="generic rank and ranks on tori")
    p.add_argument("graph")
    with_cocyclic(p)
    p.add_argument("--torus", metavar="FILE", help="torus constraint file")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("decide", help="decide quasi-projectivity")
    p.add_argument("graph")
    p.add_argument("--verify", action="store_true", help="re-check the obstruction witness")
    p.add_argument("--json", action="store_true", help="emit a certificate")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("check-cert", help="re-verify a certificate")
    p.add_argument("certificate")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check_cert)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    if hasattr(out, "reconfigure"):
        out.reconfigure(encoding="utf-8")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (GraphError, InputError, TorsionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
