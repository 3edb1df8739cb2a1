"""JSON wire formats: paths, cancellations, collapsing maps, pair lists.

All numbers travel as exact rational strings "p/q" in lowest terms; parse
errors carry the position of the offending field.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .coincidence import CoincidenceSet
from .errors import DocumentError
from .params import IntervalFamily, OpenInterval, normalize_family
from .paths import DiscretePath, PathHandle, PolylinePath
from .reduction import CollapsingMap, ReductionResult

_RATIONAL = re.compile(r"^-?\d+/\d+$")


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(raw, where: str) -> Fraction:
    if not isinstance(raw, str) or not _RATIONAL.match(raw):
        raise DocumentError(where, f"expected a rational string 'p/q', got {raw!r}")
    num, den = raw.split("/")
    if int(den) == 0:
        raise DocumentError(where, f"invalid rational {raw!r}: zero denominator")
    return Fraction(int(num), int(den))


def parse_param(raw, where: str) -> Fraction:
    t = parse_rational(raw, where)
    if not 0 <= t <= 1:
        raise DocumentError(where, f"parameter {raw!r} outside [0,1]")
    return t


def path_to_doc(path: PathHandle) -> dict:
    if isinstance(path, PolylinePath):
        return {
            "kind": "polyline",
            "dim": path.dim,
            "vertices": [
                {"t": format_rational(t), "p": [format_rational(c) for c in p]}
                for t, p in path.breakpoints
            ],
        }
    return {"kind": "discrete", "labels": list(path.labels)}


def path_from_doc(doc, where: str = "path") -> PathHandle:
    if not isinstance(doc, dict):
        raise DocumentError(where, "expected an object")
    kind = doc.get("kind")
    if kind == "polyline":
        dim = doc.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise DocumentError(f"{where}.dim", f"expected a positive integer, got {dim!r}")
        raw = doc.get("vertices")
        if not isinstance(raw, list):
            raise DocumentError(f"{where}.vertices", "expected an array")
        bps = []
        for k, item in enumerate(raw):
            at = f"{where}.vertices[{k}]"
            if not isinstance(item, dict):
                raise DocumentError(at, "expected an object with 't' and 'p'")
            t = parse_param(item.get("t"), f"{at}.t")
            coords = item.get("p")
            if not isinstance(coords, list) or len(coords) != dim:
                raise DocumentError(f"{at}.p", f"expected {dim} coordinates")
            p = tuple(
                parse_rational(c, f"{at}.p[{i}]") for i, c in enumerate(coords)
            )
            bps.append((t, p))
        try:
            return PolylinePath(tuple(bps))
        except ValueError as exc:
            raise DocumentError(f"{where}.vertices", str(exc)) from exc
    if kind == "discrete":
        raw = doc.get("labels")
        if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
            raise DocumentError(f"{where}.labels", "expected an array of strings")
        try:
            return DiscretePath(tuple(raw))
        except ValueError as exc:
            raise DocumentError(f"{where}.labels", str(exc)) from exc
    raise DocumentError(f"{where}.kind", f"expected 'polyline' or 'discrete', got {kind!r}")


def family_to_doc(family: IntervalFamily) -> dict:
    return {
        "intervals": [
            [format_rational(iv.lo), format_rational(iv.hi)] for iv in family
        ]
    }


def family_from_doc(doc, where: str = "cancellation") -> IntervalFamily:
    if not isinstance(doc, dict) or not isinstance(doc.get("intervals"), list):
        raise DocumentError(where, "expected an object with an 'intervals' array")
    ivs = []
    for k, item in enumerate(doc["intervals"]):
        at = f"{where}.intervals[{k}]"
        if not isinstance(item, list) or len(item) != 2:
            raise DocumentError(at, "expected a pair of rational strings")
        lo = parse_param(item[0], f"{at}[0]")
        hi = parse_param(item[1], f"{at}[1]")
        try:
            ivs.append(OpenInterval(lo, hi))
        except ValueError as exc:
            raise DocumentError(at, str(exc)) from exc
    return normalize_family(ivs)


def map_to_doc(gamma: CollapsingMap) -> dict:
    return {
        "vertices": [
            [format_rational(t), format_rational(y)] for t, y in gamma.vertices
        ]
    }


def map_from_doc(doc, where: str = "collapsing_map") -> CollapsingMap:
    if not isinstance(doc, dict) or not isinstance(doc.get("vertices"), list):
        raise DocumentError(where, "expected an object with a 'vertices' array")
    verts = []
    for k, item in enumerate(doc["vertices"]):
        at = f"{where}.vertices[{k}]"
        if not isinstance(item, list) or len(item) != 2:
            raise DocumentError(at, "expected a pair of rational strings")
        verts.append((parse_param(item[0], f"{at}[0]"), parse_param(item[1], f"{at}[1]")))
    try:
        return CollapsingMap(tuple(verts))
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from exc


def pairs_to_doc(pairs: list[tuple[Fraction, Fraction]]) -> dict:
    return {"pairs": [[format_rational(a), format_rational(b)] for a, b in pairs]}


def pairs_from_doc(doc, where: str = "pairs") -> list[tuple[Fraction, Fraction]]:
    if not isinstance(doc, dict) or not isinstance(doc.get("pairs"), list):
        raise DocumentError(where, "expected an object with a 'pairs' array")
    out = []
    for k, item in enumerate(doc["pairs"]):
        at = f"{where}.pairs[{k}]"
        if not isinstance(item, list) or len(item) != 2:
            raise DocumentError(at, "expected a pair of rational strings")
        out.append((parse_param(item[0], f"{at}[0]"), parse_param(item[1], f"{at}[1]")))
    return out


def coincidence_to_doc(cs: CoincidenceSet) -> dict:
    return {
        "points": [[format_rational(s), format_rational(t)] for s, t in cs.points],
        "segments": [
            [
                [format_rational(p[0]), format_rational(p[1])],
                [format_rational(q[0]), format_rational(q[1])],
            ]
            for p, q in cs.segments
        ],
    }


def reduction_to_doc(result: ReductionResult) -> dict:
    return {
        "arc": path_to_doc(result.beta),
        "cancellation": family_to_doc(result.cancellation.family),
        "collapsing_map": map_to_doc(result.gamma),
    }


def load_doc(path: str | Path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise DocumentError(str(p), f"cannot read file: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{p}:{exc.lineno}:{exc.colno}", exc.msg) from exc


def dump_doc(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")
