"""Inequality tables, the decomposition artifact, and text summaries."""

from __future__ import annotations

from .ced import Ear, delta_of
from .combinat import dominance_pairs, dominates, fmt_set, is_m_vector
from .complex import SimplicialComplex, f_vector
from .errors import EarcombError
from .formats import poset_to_json, read_poset
from .poset import RankedPoset

OK, BAD = "✓", "✗"


def mark(ok) -> str:
    if ok is None:
        return "skipped"
    return OK if ok else BAD


def _sub(T) -> str:
    return ",".join(str(i) for i in sorted(T)) or "∅"


def h_rows(h) -> list:
    """``h_i <= h_{i+1}`` and ``h_i <= h_{d-i}`` for ``i < d/2`` as dict rows."""
    d = len(h) - 1
    rows = []
    for i in range(d + 1):
        if 2 * i >= d:
            break
        for j in (i + 1, d - i):
            rows.append({"check": f"h_{i}≤h_{j}", "lhs": h[i], "rhs": h[j], "ok": h[i] <= h[j]})
    return rows


def g_vector(h) -> list:
    d = len(h) - 1
    return [h[0] if i == 0 else h[i] - h[i - 1] for i in range(d // 2 + 1)]


def flag_rows(flag, d: int) -> list:
    """``h_T <= h_S`` for every pair where ``S`` strictly dominates ``T``."""
    rows = []
    for T, S in dominance_pairs(d):
        rows.append({"check": f"h_{{{_sub(T)}}}≤h_{{{_sub(S)}}}", "lhs": flag[T], "rhs": flag[S], "ok": flag[T] <= flag[S]})
    return rows


def format_row(row) -> str:
    return f"{row['check']}: {row['lhs']}≤{row['rhs']} {mark(row['ok'])}"


def report_inequalities(report: dict) -> list:
    """Text table for a report dict holding ``h_vector`` and optionally ``flag_h``."""
    h = report["h_vector"]
    lines = [format_row(r) for r in h_rows(h)]
    g = g_vector(h)
    lines.append(f"g={tuple(g)} M-vector {mark(is_m_vector(g))}")
    if "flag_h" in report:
        flag = {frozenset(int(t) for t in k.split(",") if t): v for k, v in report["flag_h"].items()}
        lines.extend(format_row(r) for r in flag_rows(flag, report["d"]))
    return lines


def dominance_table(d: int) -> list:
    """Every ordered pair ``(T, S)`` of distinct subsets of ``[d-1]`` with the matcher's verdict."""
    from .combinat import rank_subsets

    rows = []
    subsets = rank_subsets(d - 1)
    for T in subsets:
        for S in subsets:
            if T != S:
                ok, _ = dominates(T, S, d)
                if ok:
                    rows.append(f"{fmt_set(T)} ◁ {fmt_set(S)}")
    return rows


def witness_json(witness) -> list:
    if witness is None:
        return None
    return [[list(p), list(q)] for p, q in sorted(witness.items())]


# --------------------------------------------------------------------------
# decomposition artifact


def _name(P: RankedPoset, x) -> str:
    n = P.name(x)
    if isinstance(n, (frozenset, set)):
        return fmt_set(n)
    return str(n)


def _flag_json(flag) -> dict:
    return {",".join(str(i) for i in sorted(T)): v for T, v in flag.items()}


def jsonable(x):
    if isinstance(x, (frozenset, set)):
        return sorted(jsonable(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    return x


def decomposition_artifact(dec, checks: dict) -> dict:
    """Everything needed to re-verify ``dec`` plus its vectors and check results."""
    P = dec.seq.ambient
    union = dec.ears.union
    ears = []
    for k, (e, cert) in enumerate(zip(dec.ears.ears, dec.report.certificates)):
        ears.append({
            "position": k,
            "piece": e.piece,
            "index": e.index,
            "descent_chain": list(e.descent_chain),
            "facets": [sorted(f) for f in e.facets],
            "labels": [list(e.labels[f]) for f in e.facets],
            "sphere": [sorted(f) for f in e.sphere.facets] if e.sphere is not None else None,
            "certificate": cert,
        })
    rows = h_rows(checks["h_vector"])
    out = {
        "pipeline": dec.pipeline,
        "d": dec.d,
        "S": sorted(dec.S),
        "ambient": poset_to_json(P),
        "names": {str(x): _name(P, x) for x in P.rank},
        "pieces": [sorted(s) for s in dec.seq.element_sets],
        "ears": ears,
        "dropped": [list(t) for t in dec.ears.dropped],
        "ced": {
            "union": dec.report.union_ok,
            "sphere": dec.report.sphere_ok,
            "ball": dec.report.ball_ok,
            "boundary": dec.report.boundary_ok,
            "polytopality": dec.report.polytopality,
            "failures": jsonable(dec.report.failures),
        },
        "vectors": {
            "f": list(f_vector(union)),
            "h": checks["h_vector"],
            "g": checks["g_vector"],
        },
        "inequalities": rows,
        "m_vector": checks["m_vector"],
        "two_cm": checks["two_cm"],
        "checks": {k: jsonable(v) for k, v in sorted(dec.extras.items())},
    }
    for key in ("flagstuff", "flag_recurrence", "switch_lemma"):
        if key in checks:
            out["checks"][key] = checks[key]
    if "flag_h" in checks:
        out["vectors"]["flag_h"] = _flag_json(checks["flag_h"])
        out["flag_inequalities"] = flag_rows(checks["flag_h"], dec.d)
    out["passed"] = artifact_passed(out)
    return out


def artifact_passed(art: dict) -> bool:
    ced = art["ced"]
    ok = ced["union"] and ced["sphere"] and ced["ball"] and ced["boundary"]
    ok = ok and all(r["ok"] for r in art["inequalities"]) and art["m_vector"]
    ok = ok and art["two_cm"] is not False
    ok = ok and all(v is not False for v in art["checks"].values())
    ok = ok and all(r["ok"] for r in art.get("flag_inequalities", []))
    return bool(ok)


def artifact_ears(art: dict):
    """Rebuild ``(delta, ears)`` from an artifact for independent re-verification."""
    try:
        P, _ = read_poset(art["ambient"])
        S = frozenset(art["S"])
        ears = []
        for e in art["ears"]:
            facets = tuple(frozenset(f) for f in e["facets"])
            labels = {f: tuple(w) for f, w in zip(facets, e["labels"])}
            sphere = SimplicialComplex(e["sphere"]) if e.get("sphere") is not None else None
            ears.append(Ear(facets, e["piece"], e["index"], tuple(e["descent_chain"]), labels, sphere))
    except (KeyError, TypeError) as exc:
        raise EarcombError(f"malformed decomposition artifact ({exc!r})") from exc
    return delta_of(P, S), ears, P


def summary(art: dict) -> str:
    ced = art["ced"]
    lines = [
        f"{art['pipeline']} d={art['d']} S={fmt_set(art['S'])}: {len(art['ears'])} ears"
        + (f" ({len(art['dropped'])} empty dropped)" if art["dropped"] else ""),
        "CED: " + " ".join(
            f"{k}={mark(ced[k])}" for k in ("union", "sphere", "ball", "boundary")
        ) + f" polytopality={ced['polytopality']}",
        f"f={tuple(art['vectors']['f'])} h={tuple(art['vectors']['h'])}",
    ]
    lines.extend(format_row(r) for r in art["inequalities"])
    lines.append(f"g={tuple(art['vectors']['g'])} M-vector {mark(art['m_vector'])}")
    lines.append(f"2-CM {mark(art['two_cm'])}")
    for k, v in sorted(art["checks"].items()):
        if isinstance(v, bool):
            lines.append(f"{k} {mark(v)}")
    bad_flags = [r for r in art.get("flag_inequalities", []) if not r["ok"]]
    if "flag_inequalities" in art:
        lines.append(f"flag inequalities: {len(art['flag_inequalities']) - len(bad_flags)}/{len(art['flag_inequalities'])} {mark(not bad_flags)}")
    lines.append("PASS" if art["passed"] else "FAIL")
    return "\n".join(lines)

