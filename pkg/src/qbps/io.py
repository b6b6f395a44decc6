"""JSON readers and writers for the file formats used by the command line."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .gamma import CycleData, EffectiveCone, GammaClass, KahlerParam
from .potential import SuperPotential
from .quiver import Quiver
from .stability import StabilityXi

__all__ = [
    "InputError",
    "load_json",
    "parse_json",
    "quiver_from_json",
    "quiver_to_json",
    "ext_from_json",
    "stability_from_json",
    "potential_from_json",
    "gamma_from_json",
    "kahler_from_json",
    "cone_from_json",
    "cycle_from_json",
    "parse_vector",
    "parse_matrix",
]


class InputError(ValueError):
    """Malformed user input; carries a location when one is known."""

    def __init__(self, msg: str, source: str = "<input>", line: int | None = None, column: int | None = None):
        loc = source
        if line is not None:
            loc += f":{line}:{column}"
        super().__init__(f"{loc}: {msg}")
        self.source, self.line, self.column = source, line, column


def parse_json(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, source, exc.lineno, exc.colno) from None


def load_json(path, kind: str):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {kind} file: {exc.strerror}", str(p)) from None
    return parse_json(text, str(p))


def _need(d, key: str, source: str):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing key {key!r}", source)
    return d[key]


def _frac(x, source: str, what: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{what} must be an integer or a rational string, got {x!r}", source)
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{what}: cannot parse rational {x!r}", source) from None


def _intlist(x, source: str, what: str) -> tuple:
    if not isinstance(x, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in x):
        raise InputError(f"{what} must be a list of integers", source)
    return tuple(x)


def quiver_from_json(d, source: str = "<quiver>") -> Quiver:
    if isinstance(d, dict) and "ext" in d and "vertices" not in d:
        from .quiver import ext_quiver
        return ext_quiver(ext_from_json(d, source))
    verts = _need(d, "vertices", source)
    edges = _need(d, "edges", source)
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise InputError("'vertices' and 'edges' must be lists", source)
    out = []
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or "src" not in e or "dst" not in e:
            raise InputError(f"edge {i} must be an object with 'src' and 'dst'", source)
        out.append((e["src"], e["dst"]))
    try:
        return Quiver(tuple(str(v) for v in verts), tuple(out))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def quiver_to_json(Q: Quiver) -> dict:
    return {"vertices": list(Q.vertices), "edges": [{"src": s, "dst": t} for s, t in Q.edges]}


def ext_from_json(d, source: str = "<ext>") -> list:
    ext = _need(d, "ext", source)
    if not isinstance(ext, list) or not all(isinstance(r, list) for r in ext):
        raise InputError("'ext' must be a matrix (list of lists)", source)
    return [list(_intlist(r, source, "ext row")) for r in ext]


def stability_from_json(d, source: str = "<stability>") -> StabilityXi:
    xs = _need(d, "xi", source)
    if not isinstance(xs, list):
        raise InputError("'xi' must be a list", source)
    pairs = []
    for i, z in enumerate(xs):
        pairs.append((_frac(_need(z, "re", source), source, f"xi[{i}].re"),
                      _frac(_need(z, "im", source), source, f"xi[{i}].im")))
    try:
        return StabilityXi(tuple(pairs))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def potential_from_json(d, quiver: Quiver, source: str = "<potential>") -> SuperPotential:
    terms = []
    for i, t in enumerate(_need(d, "terms", source)):
        terms.append((_intlist(_need(t, "word", source), source, f"terms[{i}].word"),
                      _frac(_need(t, "coeff", source), source, f"terms[{i}].coeff")))
    growth = d.get("growth")
    try:
        return SuperPotential(quiver, tuple(terms), None if growth is None else _frac(growth, source, "growth"))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def gamma_from_json(d, source: str = "<gamma>") -> GammaClass:
    beta = _intlist(_need(d, "beta", source), source, "beta")
    m = _need(d, "m", source)
    if not isinstance(m, int):
        raise InputError("'m' must be an integer", source)
    if "rank" in d and d["rank"] != len(beta):
        raise InputError(f"rank {d['rank']} does not match beta of length {len(beta)}", source)
    return GammaClass(beta, m)


def kahler_from_json(d, source: str = "<kahler>") -> KahlerParam:
    B = [_frac(x, source, "B") for x in _need(d, "B", source)]
    w = [_frac(x, source, "omega") for x in _need(d, "omega", source)]
    try:
        return KahlerParam(tuple(B), tuple(w))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def cone_from_json(d, source: str = "<cone>") -> EffectiveCone:
    gens = _need(d, "generators", source)
    try:
        return EffectiveCone(tuple(_intlist(g, source, "generator") for g in gens))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def cycle_from_json(d, source: str = "<cycle>") -> CycleData:
    comps = []
    for i, c in enumerate(_need(d, "components", source)):
        a = _need(c, "mult", source)
        comps.append((a, _intlist(_need(c, "class", source), source, f"components[{i}].class")))
    try:
        return CycleData(tuple(comps))
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def parse_vector(text: str, what: str = "vector", rational: bool = False) -> tuple:
    parts = [p.strip() for p in text.strip().strip("()[]").split(",")]
    try:
        if rational:
            return tuple(Fraction(p) for p in parts)
        return tuple(int(p) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse {what} {text!r}", f"<{what}>") from None


def parse_matrix(text: str, what: str = "matrix") -> list:
    d = parse_json(text, f"<{what}>")
    if not isinstance(d, list) or not all(isinstance(r, list) for r in d):
        raise InputError(f"{what} must be a JSON list of lists", f"<{what}>")
    return [list(_intlist(r, f"<{what}>", f"{what} row")) for r in d]
