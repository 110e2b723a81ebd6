"""JSON input formats and the decomposition artifact.

Inputs::

    complex  {"vertices": [ints], "facets": [[ints]]}
    matroid  {"ground": n, "bases": [[ints]]}        ground set is 1..n
    poset    {"elements": [{"id": i, "rank": r}], "covers": [[i, j]],
              "labels": {"i,j": int}}                 labels optional

Everything is written with sorted keys so equal inputs give equal bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialComplex
from .errors import EarcombError
from .geomlat import Matroid
from .poset import RankedPoset


def _load(source):
    if isinstance(source, (str, Path)):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise EarcombError(f"cannot read {source}: {exc}") from exc
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise EarcombError(f"{source}: invalid JSON ({exc})") from exc
    return source


def _ints(xs, what):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise EarcombError(f"{what} must be a list of integers")
    return xs


def read_complex(source):
    """Returns ``(complex, facets in file order)``."""
    data = _load(source)
    if not isinstance(data, dict) or "facets" not in data:
        raise EarcombError('complex JSON needs a "facets" list')
    if not isinstance(data["facets"], list):
        raise EarcombError('"facets" must be a list')
    facets = [frozenset(_ints(f, "each facet")) for f in data["facets"]]
    verts = _ints(data.get("vertices", []), '"vertices"')
    stray = set().union(*facets) - set(verts) if verts else set()
    if stray:
        raise EarcombError(f"facet vertices {sorted(stray)} missing from the vertex list")
    return SimplicialComplex(facets, vertices=verts or None), facets


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "vertices": sorted(set().union(*K.facets)) if K.facets else [],
        "facets": [sorted(f) for f in K.facets],
    }


def read_matroid(source) -> Matroid:
    data = _load(source)
    if not isinstance(data, dict) or "ground" not in data or "bases" not in data:
        raise EarcombError('matroid JSON needs "ground" and "bases"')
    n = data["ground"]
    if not isinstance(n, int) or n < 0:
        raise EarcombError('"ground" must be a nonnegative integer')
    if not isinstance(data["bases"], list):
        raise EarcombError('"bases" must be a list')
    return Matroid(n, [_ints(B, "each basis") for B in data["bases"]])


def matroid_to_json(M: Matroid) -> dict:
    return {"ground": M.n, "bases": [sorted(B) for B in M.bases]}


def read_poset(source):
    """Returns ``(poset, labeling or None)``."""
    data = _load(source)
    if not isinstance(data, dict) or "elements" not in data or "covers" not in data:
        raise EarcombError('poset JSON needs "elements" and "covers"')
    rank = {}
    for e in data["elements"]:
        try:
            rank[int(e["id"])] = int(e["rank"])
        except (KeyError, TypeError, ValueError) as exc:
            raise EarcombError(f"bad element entry {e!r}") from exc
    covers = []
    for c in data["covers"]:
        if not isinstance(c, list) or len(c) != 2:
            raise EarcombError(f"bad cover entry {c!r}")
        covers.append((int(c[0]), int(c[1])))
    P = RankedPoset(rank, covers)
    labels = None
    if data.get("labels") is not None:
        labels = {}
        for key, value in data["labels"].items():
            try:
                x, y = (int(t) for t in key.split(","))
            except ValueError as exc:
                raise EarcombError(f'label key {key!r} is not "id,id"') from exc
            if (x, y) not in P.covers:
                raise EarcombError(f"label on ({x}, {y}), which is not a cover")
            labels[(x, y)] = int(value)
        missing = P.covers - set(labels)
        if missing:
            raise EarcombError(f"cover {sorted(missing)[0]} has no label")
    return P, labels


def poset_to_json(P: RankedPoset, labels=None) -> dict:
    out = {
        "elements": [{"id": x, "rank": r} for x, r in sorted(P.rank.items())],
        "covers": [list(c) for c in sorted(P.covers)],
    }
    if labels is not None:
        out["labels"] = {f"{x},{y}": labels[(x, y)] for x, y in sorted(labels)}
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
