"""JSON formats and canonical (bit-exact round-trip) save/load.

References to other files are plain strings resolved relative to the
referring file; inline objects are plain dicts.  All writers emit the same
canonical encoding, so save(load(p)) reproduces p byte for byte whenever p
was written by this module.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import FiniteStarSemigroup, Relation, ShapeError, StarMorphism, validate_star_semigroup
from .groupoid import OrderedGroupoidWithMediator, validate_groupoid
from .site import Presheaf, as_inverse, validate_presheaf
from .ssets import SSetStructure, make_sset


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _write(path, obj):
    Path(path).write_text(dumps(obj))


def _read(path):
    return json.loads(Path(path).read_text())


# semigroups ----------------------------------------------------------------


def semigroup_to_dict(X: FiniteStarSemigroup) -> dict:
    out = {
        "order": X.order,
        "mul": [list(row) for row in X.mul],
        "star": list(X.star),
    }
    if X.name is not None:
        out["name"] = X.name
    return out


def semigroup_from_dict(d: dict) -> FiniteStarSemigroup:
    return validate_star_semigroup(
        d["order"], d["mul"], d["star"], d.get("name")
    )


def save_semigroup(X: FiniteStarSemigroup, path):
    _write(path, semigroup_to_dict(X))


def load_semigroup(path) -> FiniteStarSemigroup:
    return semigroup_from_dict(_read(path))


def _resolve_ref(ref, base_dir) -> FiniteStarSemigroup:
    if isinstance(ref, str):
        return load_semigroup(Path(base_dir) / ref)
    if isinstance(ref, dict):
        return semigroup_from_dict(ref)
    raise ShapeError(f"bad semigroup reference {ref!r}")


# morphisms -----------------------------------------------------------------


def morphism_to_dict(f: StarMorphism, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref or semigroup_to_dict(f.source),
        "target": target_ref or semigroup_to_dict(f.target),
        "map": list(f.map),
    }


def morphism_from_dict(d: dict, base_dir=".") -> StarMorphism:
    source = _resolve_ref(d["source"], base_dir)
    target = _resolve_ref(d["target"], base_dir)
    return StarMorphism(source, target, d["map"])


def save_morphism(f: StarMorphism, path, source_ref=None, target_ref=None):
    _write(path, morphism_to_dict(f, source_ref, target_ref))


def load_morphism(path) -> StarMorphism:
    path = Path(path)
    return morphism_from_dict(_read(path), path.parent)


# presheaves ----------------------------------------------------------------


def presheaf_to_dict(P: Presheaf, base_ref=None) -> dict:
    return {
        "base": base_ref or semigroup_to_dict(P.base.semigroup),
        "fibers": {str(e): list(labels) for e, labels in sorted(P.fibers.items())},
        "transitions": {
            f"{s},{e}": list(tr) for (s, e), tr in sorted(P.transitions.items())
        },
    }


def presheaf_from_dict(d: dict, base_dir=".") -> Presheaf:
    base = as_inverse(_resolve_ref(d["base"], base_dir))
    fibers = {int(e): tuple(labels) for e, labels in d["fibers"].items()}
    transitions = {}
    for key, tr in d["transitions"].items():
        s, e = key.split(",")
        transitions[(int(s), int(e))] = tuple(tr)
    return validate_presheaf(base, fibers, transitions)


def save_presheaf(P: Presheaf, path, base_ref=None):
    _write(path, presheaf_to_dict(P, base_ref))


def load_presheaf(path) -> Presheaf:
    path = Path(path)
    return presheaf_from_dict(_read(path), path.parent)


# groupoids -----------------------------------------------------------------


def groupoid_to_dict(G: OrderedGroupoidWithMediator) -> dict:
    out = {
        "objects": G.n_objects,
        "morphisms": G.n_morphisms,
        "dom": list(G.dom),
        "cod": list(G.cod),
        "identity": list(G.identity),
        "inverse": list(G.inverse),
        "compose": [list(row) for row in G.compose],
        "order": [
            [1 if G.order.leq(i, j) else 0 for j in range(G.n_morphisms)]
            for i in range(G.n_morphisms)
        ],
        "mediator": (None if G.mediator is None
                     else [list(row) for row in G.mediator]),
    }
    if G.name is not None:
        out["name"] = G.name
    return out


def groupoid_from_dict(d: dict) -> OrderedGroupoidWithMediator:
    n = d["morphisms"]
    rows = tuple(
        sum(1 << j for j in range(n) if d["order"][i][j]) for i in range(n)
    )
    G = OrderedGroupoidWithMediator(
        n_objects=d["objects"],
        n_morphisms=n,
        dom=tuple(d["dom"]),
        cod=tuple(d["cod"]),
        identity=tuple(d["identity"]),
        inverse=tuple(d["inverse"]),
        compose=tuple(tuple(row) for row in d["compose"]),
        order=Relation(n, rows),
        mediator=(None if d.get("mediator") is None
                  else tuple(tuple(row) for row in d["mediator"])),
        name=d.get("name"),
    )
    validate_groupoid(G)
    return G


def save_groupoid(G: OrderedGroupoidWithMediator, path):
    _write(path, groupoid_to_dict(G))


def load_groupoid(path) -> OrderedGroupoidWithMediator:
    return groupoid_from_dict(_read(path))


# S-sets --------------------------------------------------------------------


def sset_to_dict(A: SSetStructure, base_ref=None) -> dict:
    return {
        "carrier": A.size,
        "star": list(A.star),
        "base": base_ref or semigroup_to_dict(A.base),
        "map": list(A.smap),
        "action": [list(row) for row in A.action],
    }


def sset_from_dict(d: dict, base_dir=".") -> SSetStructure:
    base = _resolve_ref(d["base"], base_dir)
    return make_sset(d["carrier"], d["star"], base, d["map"], d["action"])


def save_sset(A: SSetStructure, path, base_ref=None):
    _write(path, sset_to_dict(A, base_ref))


def load_sset(path) -> SSetStructure:
    path = Path(path)
    return sset_from_dict(_read(path), path.parent)


# generic loader ------------------------------------------------------------


def load_any(path):
    """Detect the object kind from its keys and load it."""
    path = Path(path)
    d = _read(path)
    if "mul" in d:
        return semigroup_from_dict(d)
    if "fibers" in d:
        return presheaf_from_dict(d, path.parent)
    if "compose" in d:
        return groupoid_from_dict(d)
    if "action" in d and "carrier" in d:
        return sset_from_dict(d, path.parent)
    if "map" in d:
        return morphism_from_dict(d, path.parent)
    raise ShapeError(f"unrecognized file format: {sorted(d)}")


# F-hat dump ----------------------------------------------------------------


def fhat_to_dict(fh, include_product=False) -> dict:
    out = {
        "base": semigroup_to_dict(fh.base),
        "fibers": {
            str(r): sorted(
                x for x in fh.f.source.elements if fh.f.map[x] == r
            )
            for r in fh.base.elements
        },
        "carrier": [[r, sorted(A)] for (r, A) in fh.elements],
    }
    if include_product:
        out["product"] = [list(row) for row in fh.algebra.product]
    return out
