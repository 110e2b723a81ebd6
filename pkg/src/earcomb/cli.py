"""Command line front end.

Exit status: 0 when every requested check passes, 1 when a certificate or
inequality fails, 2 when the input does not validate.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .ced import all_rank_sets, verify_ced
from .combinat import dominates, fmt_set
from .complex import verify_shelling
from .errors import EarcombError, HypothesisViolation
from .formats import dumps, read_complex, read_matroid, read_poset
from .pipelines import BooleanPipeline, FacePosetPipeline, GeometricPipeline, inequality_checks
from .poset import flag_h, flag_h_by_descents, verify_el_labeling
from .report import (
    jsonable,
    artifact_ears,
    decomposition_artifact,
    dominance_table,
    mark,
    report_inequalities,
    summary,
    witness_json,
)
from .topology import certify_ball_or_sphere, reduced_homology

EXIT_OK, EXIT_FAILED, EXIT_INVALID = 0, 1, 2


class UsageError(EarcombError):
    pass


def parse_set(text: str) -> frozenset:
    text = text.strip()
    if text in ("", "{}", "empty"):
        return frozenset()
    try:
        return frozenset(int(t) for t in text.strip("{}").split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse rank set {text!r}") from exc


def parse_rank_sets(text: str, d: int) -> list:
    if text == "all":
        return all_rank_sets(d)
    S = parse_set(text)
    if not S:
        raise UsageError("rank set must be nonempty")
    return [S]


def parse_indices(text: str) -> list:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse index list {text!r}") from exc


def _emit(args, report: dict, lines: list):
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
        print("\n".join(lines))
    else:
        sys.stdout.write(text)
        print("\n".join(lines), file=sys.stderr)


def _run_decompositions(pipeline, sets) -> tuple:
    runs = []
    lines = []
    for S in sets:
        dec = pipeline.run(S)
        art = decomposition_artifact(dec, inequality_checks(dec))
        runs.append(art)
        lines.append(summary(art))
    report = {"runs": runs, "passed": all(a["passed"] for a in runs)}
    return report, lines


def cmd_boolean(args):
    if args.d < 1:
        raise UsageError("--d must be at least 1")
    pipe = BooleanPipeline(args.d)
    return _run_decompositions(pipe, parse_rank_sets(args.S, args.d))


def cmd_geometric(args):
    pipe = GeometricPipeline(read_matroid(args.input))
    return _run_decompositions(pipe, parse_rank_sets(args.S, pipe.seq.d))


def _explore(K, S) -> tuple:
    from .faceposet import face_rank_selection

    X = face_rank_selection(K, S)
    H = reduced_homology(X)
    report = {
        "explore": True,
        "S": sorted(S),
        "dim": X.dim,
        "facets": len(X.facets),
        "connected": X.dim >= 0 and H.betti[0] == 0 and H.minus_one == 0,
        "acyclic": H.is_acyclic,
        "betti": list(H.betti),
        "torsion": [list(t) for t in H.torsion],
    }
    report["tree"] = X.dim == 1 and report["acyclic"]
    report["passed"] = True
    lines = [
        f"explore S={fmt_set(S)}: order complex of dim {X.dim} with {len(X.facets)} facets",
        f"connected: {str(report['connected']).lower()} acyclic: {str(report['acyclic']).lower()} tree: {str(report['tree']).lower()}",
        "no decomposition is claimed for this rank set",
    ]
    return report, lines


def cmd_faceposet(args):
    K, file_order = read_complex(args.input)
    order = None
    if args.shelling:
        idx = parse_indices(args.shelling)
        if sorted(idx) != list(range(len(file_order))):
            raise UsageError(f"--shelling must list each facet index 0..{len(file_order) - 1} once")
        order = [file_order[i] for i in idx]
    d = K.dim + 1
    if args.S == "all":
        sets = all_rank_sets(d)
    else:
        S = parse_set(args.S)
        if d in S:
            if not args.allow_explore:
                raise UsageError(
                    f"rank {d} in S: no decomposition is known to exist there; pass --allow-explore to inspect the order complex"
                )
            return _explore(K, S)
        sets = parse_rank_sets(args.S, d)
    pipe = FacePosetPipeline(K, order)
    return _run_decompositions(pipe, sets)


def cmd_dominance(args):
    d = args.d
    if args.table:
        rows = dominance_table(d)
        return {"d": d, "pairs": rows, "passed": True}, rows
    if args.T is None or args.S is None:
        raise UsageError("dominance needs --T and --S, or --table")
    T, S = parse_set(args.T), parse_set(args.S)
    if any(not 1 <= i < d for i in T | S):
        raise UsageError(f"T and S must lie in [1, {d - 1}]")
    ok, witness = dominates(T, S, d)
    report = {"d": d, "T": sorted(T), "S": sorted(S), "dominates": ok, "witness": witness_json(witness), "passed": True}
    lines = [f"dominates: {str(ok).lower()}"]
    if witness:
        lines += [f"  {''.join(map(str, p))} -> {''.join(map(str, q))}" for p, q in sorted(witness.items())]
    return report, lines


def _verify_decomposition(art):
    delta, ears, P = artifact_ears(art)
    rep = verify_ced(delta, ears)
    report = {
        "kind": "decomposition",
        "union": rep.union_ok,
        "sphere": rep.sphere_ok,
        "ball": rep.ball_ok,
        "boundary": rep.boundary_ok,
        "polytopality": rep.polytopality,
        "failures": jsonable(rep.failures),
        "certificates": rep.certificates,
        "passed": rep.passed,
    }
    lines = [
        f"re-verified {len(ears)} ears: " + " ".join(
            f"{k}={mark(report[k])}" for k in ("union", "sphere", "ball", "boundary")
        ),
        "PASS" if rep.passed else "FAIL",
    ]
    return report, lines


def _verify_poset(source):
    P, labels = read_poset(source)
    P.require_bounded()
    report = {"kind": "poset", "d": P.d, "elements": len(P.rank)}
    fh = flag_h(P)
    report["flag_h"] = {",".join(map(str, sorted(T))): v for T, v in fh.items()}
    report["h_vector"] = [sum(v for T, v in fh.items() if len(T) == i) for i in range(P.d)]
    lines = [f"poset of rank {P.d} with {len(P.rank)} elements"]
    ok = True
    if labels is not None:
        el = verify_el_labeling(P, labels)
        report["el"] = el
        lines.append(f"EL-labeling {mark(el)}")
        if el:
            agree = flag_h_by_descents(P, labels) == fh
            report["flag_h_descents_agree"] = agree
            lines.append(f"flag h by descents agrees {mark(agree)}")
            ok = agree
        else:
            ok = False
    lines += report_inequalities({**report, "h_vector": report["h_vector"]})
    report["passed"] = ok
    return report, lines


def _verify_complex(source, shelling):
    K, file_order = read_complex(source)
    report = {"kind": "complex", "dim": K.dim, "facets": len(K.facets)}
    H = reduced_homology(K)
    report["betti"] = list(H.betti)
    lines = [f"complex of dim {K.dim} with {len(K.facets)} facets, reduced betti {tuple(H.betti)}"]
    if shelling:
        idx = parse_indices(shelling)
        order = [file_order[i] for i in idx]
        verify_shelling(K, order)
        cert = certify_ball_or_sphere(K, order)
        report["certificate"] = cert.value
        lines.append(f"shelling ✓ certificate {cert.value}")
    report["passed"] = True
    return report, lines


def cmd_verify(args):
    import json

    try:
        data = json.loads(Path(args.input).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from exc
    if isinstance(data, dict) and "runs" in data:
        reports, lines = [], []
        for art in data["runs"]:
            r, l = _verify_decomposition(art)
            reports.append(r)
            lines += l
        return {"runs": reports, "passed": all(r["passed"] for r in reports)}, lines
    if isinstance(data, dict) and "ears" in data:
        return _verify_decomposition(data)
    if isinstance(data, dict) and "elements" in data:
        return _verify_poset(data)
    if isinstance(data, dict) and "facets" in data:
        return _verify_complex(data, args.shelling)
    raise UsageError("input is neither a decomposition, a poset nor a complex")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="earcomb", description="Build and verify convex-ear decompositions of rank-selected posets.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here (default: stdout, summary on stderr)")

    b = sub.add_parser("boolean", help="rank selections of the Boolean lattice B_d")
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--S", default="all", help="comma list such as 1,3, or 'all'")
    common(b)
    b.set_defaults(func=cmd_boolean)

    g = sub.add_parser("geometric", help="lattice of flats of a matroid given by its bases")
    g.add_argument("input")
    g.add_argument("--S", default="all")
    common(g)
    g.set_defaults(func=cmd_geometric)

    f = sub.add_parser("faceposet", help="face poset of a shellable complex, facets identified")
    f.add_argument("input")
    f.add_argument("--shelling", help="facet indices (file order) in shelling order")
    f.add_argument("--S", default="all")
    f.add_argument("--allow-explore", action="store_true", help="allow S containing the top rank; reports the order complex only")
    common(f)
    f.set_defaults(func=cmd_faceposet)

    dm = sub.add_parser("dominance", help="strict dominance of descent classes")
    dm.add_argument("--d", type=int, required=True)
    dm.add_argument("--T")
    dm.add_argument("--S")
    dm.add_argument("--table", action="store_true", help="list every dominating pair")
    common(dm)
    dm.set_defaults(func=cmd_dominance)

    v = sub.add_parser("verify", help="re-verify a decomposition report, or check a poset or complex")
    v.add_argument("input")
    v.add_argument("--shelling")
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, lines = args.func(args)
    except HypothesisViolation as exc:
        _emit(args, {"passed": False, "error": "hypothesis", "message": str(exc)}, [f"FAIL: {exc}"])
        return EXIT_FAILED
    except EarcombError as exc:
        _emit(args, {"passed": False, "error": type(exc).__name__, "message": str(exc)}, [f"invalid input: {exc}"])
        return EXIT_INVALID
    _emit(args, report, lines)
    return EXIT_OK if report["passed"] else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
