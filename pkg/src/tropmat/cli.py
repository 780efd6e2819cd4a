"""Command-line front end.

Exit status: 0 on success, 1 when a check fails (a JSON report is printed),
2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable

from . import io
from .axioms import Tom, check_all, find_elimination, is_general_position, topes, vertices
from .convexity import (
    ConstructNode,
    TheoremViolation,
    constructibility_witness,
    convex_hull,
    covectors_complete,
    dist,
    elimination_chain,
    eliminate_via_connectivity,
    halfspace_covectors,
    m_of,
    maximal_members,
)
from .core import NdType, from_mask, full_mask, parse_subset
from .ops import contraction, deletion, dual_tom
from .realize import realize_tom
from .render import render_svg, types_dot
from .subdivision import (
    MixedSubdivision,
    blow_up,
    blow_up_nonfine,
    census,
    d_placing,
    dual_subdivision,
    from_tom,
    n_placing,
    regular_mixed_subdivision,
    to_tom,
    verify_subdivision,
)


class CheckFailed(Exception):
    def __init__(self, report: dict):
        super().__init__("check failed")
        self.report = report


# --- argument parsing helpers ----------------------------------------------------


def _read(path: str, option: str) -> Any:
    p = Path(path)
    if not p.is_file():
        raise io.SchemaError(option, f"cannot read file {path}")
    try:
        return io.load_json(p)
    except io.SchemaError as exc:
        raise io.SchemaError(option, str(exc)) from exc


def _wrap(option: str, fn: Callable[[Any], Any], raw: Any) -> Any:
    try:
        return fn(raw)
    except io.SchemaError as exc:
        raise io.SchemaError(f"{option} {exc.field}", str(exc).split(": ", 1)[1]) from exc


def load_tom(args) -> Tom:
    if getattr(args, "tom", None):
        return _wrap("--tom", io.tom_from_json, _read(args.tom, "--tom"))
    return to_tom(load_subdivision(args))


def load_subdivision(args) -> MixedSubdivision:
    if getattr(args, "subdivision", None):
        return _wrap("--subdivision", io.subdivision_from_json, _read(args.subdivision, "--subdivision"))
    if getattr(args, "tom", None):
        return from_tom(load_tom(args))
    raise io.SchemaError("--subdivision", "missing")


def load_weights(args):
    return _wrap("--weights", io.weights_from_json, _read(args.weights, "--weights"))


def parse_type(text: str, n: int, d: int, option: str) -> NdType:
    try:
        A = NdType.parse(text, d)
    except ValueError as exc:
        raise io.SchemaError(option, str(exc)) from exc
    if A.n != n:
        raise io.SchemaError(option, f"{text} has {A.n} entries, expected {n}")
    return A


def parse_perm(text: str, k: int, option: str) -> tuple[int, ...]:
    try:
        p = tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise io.SchemaError(option, f"cannot parse {text!r}") from exc
    if sorted(p) != list(range(1, k + 1)):
        raise io.SchemaError(option, f"{text} is not a permutation of 1..{k}")
    return p


def parse_index(value: int, k: int, option: str) -> int:
    if not 1 <= value <= k:
        raise io.SchemaError(option, f"{value} outside 1..{k}")
    return value


def parse_halfspaces(text: str, n: int, d: int, option: str, proper: bool) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise io.SchemaError(option, f"expected {n} comma-separated subsets")
    try:
        out = tuple(parse_subset(p) for p in parts)
    except ValueError as exc:
        raise io.SchemaError(option, f"cannot parse {text!r}") from exc
    top = full_mask(d)
    for k, s in enumerate(out, 1):
        if s == 0 or s & ~top or (proper and s == top):
            kind = "proper nonempty" if proper else "nonempty"
            raise io.SchemaError(option, f"entry {k} must be a {kind} subset of 1..{d}")
    return out


def parse_partitions(text: str, n: int, d: int, option: str) -> tuple[tuple[int, ...], ...]:
    parts = text.split(";")
    if len(parts) != n:
        raise io.SchemaError(option, f"expected {n} ';'-separated partitions")
    out = []
    top = full_mask(d)
    for k, part in enumerate(parts, 1):
        try:
            blocks = [parse_subset(b) for b in part.split("|")]
        except ValueError as exc:
            raise io.SchemaError(option, f"cannot parse partition {k}") from exc
        union = 0
        for b in blocks:
            if b == 0 or b & union or b & ~top:
                raise io.SchemaError(option, f"partition {k} has empty or overlapping blocks")
            union |= b
        if union != top:
            raise io.SchemaError(option, f"partition {k} does not cover 1..{d}")
        out.append(tuple(sorted(blocks)))
    return tuple(out)


# --- output ------------------------------------------------------------------------


def emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json" or text is None:
        print(io.dumps(payload))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def write_or_emit(args, payload: dict, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(io.dumps(payload) + "\n")
        text += f"\nwritten to {args.out}"
    emit(args, payload, text)


def write_dot(args, types) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(types_dot(types))


def _types_text(types) -> str:
    return "\n".join(str(A) for A in sorted(types))


def _subdivision_text(S: MixedSubdivision) -> str:
    return f"maximal cells of {S.n}Δ^{S.d - 1} ({len(S.maximal_cells)}):\n" + _types_text(S.maximal_cells)


def _certify(S: MixedSubdivision) -> tuple[bool, dict]:
    rep = verify_subdivision(S)
    axioms = check_all(to_tom(S)) if rep.passed else []
    ok = rep.passed and all(r.passed for r in axioms)
    return ok, {
        "subdivision": io.subdivision_to_json(S),
        "verify": io.subdivision_report_to_json(rep),
        "axioms": io.axiom_report_to_json(axioms)["axioms"],
        "passed": ok,
    }


def _node_json(node: ConstructNode) -> dict:
    def masks(xs):
        return [list(from_mask(x)) for x in xs]

    out: dict[str, Any] = {
        "I": masks(node.I),
        "J": [masks(Ji) for Ji in node.J],
        "dimension": node.dimension,
        "checks": dict(sorted(node.checks.items())),
    }
    if node.split is not None:
        s = node.split
        out["split"] = {
            "k": s["k"],
            "l": s["l"],
            "a": s["a"],
            "b": s["b"],
            "I1": masks(s["I1"]),
            "I2": masks(s["I2"]),
            "J0": [masks(Ji) for Ji in s["J0"]],
        }
        out["left"] = _node_json(node.left) if node.left else None
        out["right"] = _node_json(node.right) if node.right else None
        out["meet"] = _node_json(node.meet) if node.meet else None
    return out


def _node_text(node: ConstructNode, depth: int = 0) -> list[str]:
    pad = "  " * depth
    ok = "ok" if all(node.checks.values()) else "FAIL"
    if node.is_leaf():
        return [f"{pad}leaf dim={node.dimension} [{ok}]"]
    s = node.split
    lines = [f"{pad}split k={s['k']} a={s['a']} b={s['b']} dim={node.dimension} [{ok}]"]
    for child in (node.left, node.right, node.meet):
        if child is not None:
            lines += _node_text(child, depth + 1)
    return lines


# --- verbs -------------------------------------------------------------------------


def cmd_check(args) -> int:
    if args.subdivision:
        S = load_subdivision(args)
        ok, payload = _certify(S)
        if args.geometric:
            geo = verify_subdivision(S, geometric=True)
            payload["geometric"] = io.subdivision_report_to_json(geo)
            ok = ok and geo.passed
            payload["passed"] = ok
        write_dot(args, S.maximal_cells)
        if not ok:
            raise CheckFailed(payload)
        emit(args, payload, "subdivision verified; all four axioms pass")
        return 0
    M = load_tom(args)
    reports = check_all(M)
    payload = io.axiom_report_to_json(reports)
    write_dot(args, vertices(M))
    if not payload["passed"]:
        raise CheckFailed(payload)
    emit(args, payload, "\n".join(f"{r.axiom}: pass" for r in reports))
    return 0


def cmd_realize(args) -> int:
    W = load_weights(args)
    M = realize_tom(W, args.method)
    write_dot(args, vertices(M))
    text = f"{len(M.types)} types, {len(vertices(M))} vertices, {len(topes(M))} topes"
    if not args.out:
        text += "\n" + _types_text(M.types)
    write_or_emit(args, io.tom_to_json(M), text)
    return 0


def cmd_subdivide(args) -> int:
    S = regular_mixed_subdivision(load_weights(args)) if args.weights else from_tom(load_tom(args))
    rep = verify_subdivision(S)
    write_dot(args, S.maximal_cells)
    if not rep.passed:
        raise CheckFailed({"subdivision": io.subdivision_to_json(S), "verify": io.subdivision_report_to_json(rep)})
    write_or_emit(args, io.subdivision_to_json(S), _subdivision_text(S))
    return 0


def cmd_dual(args) -> int:
    if args.subdivision:
        S = dual_subdivision(load_subdivision(args))
        write_or_emit(args, io.subdivision_to_json(S), _subdivision_text(S))
    else:
        M = dual_tom(load_tom(args))
        write_or_emit(args, io.tom_to_json(M), f"dual with parameters ({M.n},{M.d})\n" + _types_text(M.types))
    return 0


def cmd_delete(args) -> int:
    M = load_tom(args)
    if M.n < 2:
        raise io.SchemaError("--i", "deletion would empty the tuple")
    R = deletion(M, parse_index(args.i, M.n, "--i"))
    write_or_emit(args, io.tom_to_json(R), _types_text(R.types))
    return 0


def cmd_contract(args) -> int:
    M = load_tom(args)
    if M.d < 2:
        raise io.SchemaError("--j", "contraction needs d >= 2")
    R = contraction(M, parse_index(args.j, M.d, "--j"))
    write_or_emit(args, io.tom_to_json(R), _types_text(R.types))
    return 0


def _placed(args, S: MixedSubdivision) -> int:
    rep = verify_subdivision(S)
    if not rep.passed:
        raise CheckFailed({"subdivision": io.subdivision_to_json(S), "verify": io.subdivision_report_to_json(rep)})
    write_or_emit(args, io.subdivision_to_json(S), _subdivision_text(S))
    return 0


def cmd_place_n(args) -> int:
    S = load_subdivision(args)
    return _placed(args, n_placing(S, parse_perm(args.perm, S.d, "--perm")))


def cmd_place_d(args) -> int:
    S = load_subdivision(args)
    return _placed(args, d_placing(S, parse_perm(args.perm, S.n, "--perm")))


def cmd_blowup(args) -> int:
    S = load_subdivision(args)
    i = parse_index(args.i, S.n, "--i")
    if args.with_:
        S2 = _wrap("--with", io.subdivision_from_json, _read(args.with_, "--with"))
        if S2.d != S.d:
            raise io.SchemaError("--with d", f"must equal {S.d}")
        return _placed(args, blow_up(S, i, S2))
    if not args.perm:
        raise io.SchemaError("--perm", "missing (or pass --with)")
    return _placed(args, blow_up_nonfine(S, i, parse_perm(args.perm, S.d, "--perm")))


def _members(args) -> tuple[Tom, NdType, NdType]:
    M = load_tom(args)
    A = parse_type(args.a, M.n, M.d, "--a")
    B = parse_type(args.b, M.n, M.d, "--b")
    for opt, X in (("--a", A), ("--b", B)):
        if X not in M.types:
            raise io.SchemaError(opt, f"{X} is not a member")
    return M, A, B


def cmd_hull(args) -> int:
    M, A, B = _members(args)
    H = convex_hull(M, A, B)
    payload = {"A": io.type_to_json(A), "B": io.type_to_json(B), "hull": [io.type_to_json(C) for C in sorted(H)]}
    emit(args, payload, f"hull of {A} and {B} ({len(H)} cells):\n" + _types_text(H))
    return 0


def cmd_eliminate(args) -> int:
    M, A, B = _members(args)
    j = parse_index(args.j, M.n, "--j")
    S = from_tom(M)
    brute = find_elimination(M.types, A, B, j)
    try:
        C = eliminate_via_connectivity(S, A, B, j)
    except TheoremViolation as exc:
        raise CheckFailed({"passed": False, "error": str(exc), "brute_force": io.jsonable(brute)}) from exc
    chain = elimination_chain(M, A, B)
    ok = all(
        len(dist(s.A, s.C)) < len(dist(s.A, s.B)) and len(dist(s.C, s.B)) < len(dist(s.A, s.B)) for s in chain
    )
    payload = {
        "passed": ok and brute is not None,
        "C": io.type_to_json(C),
        "brute_force": io.jsonable(brute),
        "chain": [{"A": io.type_to_json(s.A), "B": io.type_to_json(s.B), "position": s.position, "C": io.type_to_json(s.C)} for s in chain],
    }
    if not payload["passed"]:
        raise CheckFailed(payload)
    emit(args, payload, f"C = {C}\nchain of {len(chain)} eliminations, dist decreases at every step")
    return 0


def cmd_mij(args) -> int:
    M = load_tom(args)
    I = parse_halfspaces(args.I, M.n, M.d, "--I", proper=False)
    J = parse_partitions(args.J, M.n, M.d, "--J")
    members = m_of(M, I, J)
    maximal = maximal_members(members)
    payload: dict[str, Any] = {
        "members": [io.type_to_json(A) for A in sorted(members)],
        "maximal": [io.type_to_json(A) for A in sorted(maximal)],
    }
    text = f"{len(members)} members, maximal:\n" + _types_text(maximal)
    if args.witness:
        if not members:
            raise io.SchemaError("--I", "M(I, J) is empty, nothing to construct")
        if not is_general_position(M):
            raise io.SchemaError("--tom", "constructibility needs general position")
        root = constructibility_witness(M, I, J)
        payload["witness"] = _node_json(root)
        payload["passed"] = root.all_checks_pass()
        if not payload["passed"]:
            raise CheckFailed(payload)
        text += "\n" + "\n".join(_node_text(root))
    emit(args, payload, text)
    return 0


def cmd_covectors(args) -> int:
    M = load_tom(args)
    try:
        positions = tuple(int(t) for t in args.positions.split(","))
    except ValueError as exc:
        raise io.SchemaError("--positions", f"cannot parse {args.positions!r}") from exc
    for p in positions:
        parse_index(p, M.n, "--positions")
    I = parse_halfspaces(args.I, M.n, M.d, "--I", proper=True)
    L = halfspace_covectors(M, positions, I)
    complete = covectors_complete(L, len(positions))
    gp = is_general_position(M)
    payload = {
        "covectors": ["".join(v) for v in sorted(L)],
        "zero_present": ("0",) * len(positions) in L,
        "complete": complete,
        "general_position": gp,
        "passed": complete or not gp,
    }
    if not payload["passed"]:
        raise CheckFailed(payload)
    emit(args, payload, " ".join(payload["covectors"]))
    return 0


def cmd_census(args) -> int:
    for opt, v in (("--n", args.n), ("--d", args.d)):
        if not 1 <= v <= 4:
            raise io.SchemaError(opt, f"{v} outside 1..4")
    found = census(args.n, args.d)
    results = [_certify(S) for S in found]
    ok = all(r for r, _ in results)
    payload = {"n": args.n, "d": args.d, "count": len(found), "passed": ok, "subdivisions": [p for _, p in results]}
    if not ok:
        raise CheckFailed(payload)
    lines = [f"{len(found)} mixed subdivisions of {args.n}Δ^{args.d - 1}, all certified"]
    lines += ["  " + " ".join(str(A) for A in sorted(S.maximal_cells)) for S in found]
    emit(args, payload, "\n".join(lines))
    return 0


def cmd_render(args) -> int:
    S = regular_mixed_subdivision(load_weights(args)) if args.weights else load_subdivision(args)
    if S.d != 3:
        raise io.SchemaError("d", f"rendering needs d = 3, got {S.d}")
    svg = render_svg(S, labels=args.labels)
    if args.out:
        Path(args.out).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    parser = argparse.ArgumentParser(prog="tropmat", description="Tropical oriented matroids and mixed subdivisions.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name: str, fn, help: str, inputs: tuple[str, ...] = ("tom", "subdivision"), out=False, dot=False):
        p = sub.add_parser(name, parents=[common], help=help)
        group = p.add_mutually_exclusive_group(required=True)
        for kind in inputs:
            group.add_argument(f"--{kind}", metavar="FILE")
        if out:
            p.add_argument("--out", metavar="FILE")
        if dot:
            p.add_argument("--dot", metavar="FILE", help="write type graphs as DOT")
        p.set_defaults(func=fn)
        return p

    p = verb("check", cmd_check, "check the four axioms (or verify a subdivision)", dot=True)
    p.add_argument("--geometric", action="store_true", help="also run the exact overlap oracle")
    p = verb("realize", cmd_realize, "types of a weight matrix arrangement", ("weights",), out=True, dot=True)
    p.add_argument("--method", choices=("vertices", "sweep"), default="vertices")
    verb("subdivide", cmd_subdivide, "regular mixed subdivision or the subdivision of a TOM", ("weights", "tom"), out=True, dot=True)
    verb("dual", cmd_dual, "dual TOM or subdivision", out=True)
    p = verb("delete", cmd_delete, "delete a position", out=True)
    p.add_argument("--i", type=int, required=True)
    p = verb("contract", cmd_contract, "contract a coordinate", out=True)
    p.add_argument("--j", type=int, required=True)
    for name, fn in (("place-n", cmd_place_n), ("place-d", cmd_place_d)):
        p = verb(name, fn, f"{name.split('-')[1]}-placing extension", out=True)
        p.add_argument("--perm", required=True, help="comma-separated permutation")
    p = verb("blowup", cmd_blowup, "blow up a position", out=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--perm", help="permutation for the placing blow-up")
    p.add_argument("--with", dest="with_", metavar="FILE", help="fine subdivision to blow up with")
    for name, fn, helptext in (("hull", cmd_hull, "combinatorial convex hull"), ("eliminate", cmd_eliminate, "elimination through the hull")):
        p = verb(name, fn, helptext)
        p.add_argument("--a", required=True, help="type such as 12,3")
        p.add_argument("--b", required=True)
        if name == "eliminate":
            p.add_argument("--j", type=int, required=True)
    p = verb("mij", cmd_mij, "the subcomplex M(I, J)")
    p.add_argument("--I", required=True, help="comma-separated subsets, one per position")
    p.add_argument("--J", required=True, help="';' between positions, '|' between blocks")
    p.add_argument("--witness", action="store_true", help="build and check the constructibility tree")
    p = verb("covectors", cmd_covectors, "sign vectors of a halfspace system")
    p.add_argument("--positions", required=True)
    p.add_argument("--I", required=True)
    p = sub.add_parser("census", parents=[common], help="enumerate all mixed subdivisions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_census)
    p = verb("render", cmd_render, "SVG of the dual arrangement (d = 3)", ("subdivision", "weights", "tom"), out=True)
    p.add_argument("--labels", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(io.dumps(exc.report))
        return 1
    except io.SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
