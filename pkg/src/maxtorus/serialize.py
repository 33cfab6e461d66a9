"""JSON schemas for the exact data types.

Rationals travel as strings "p/q" (denominator omitted when 1), Gaussian
rationals as {"re", "im"}, symbol-extended scalars as
{"const": "p/q", "sym": {"1": "p/q", ...}}.  Fans, simplicial complexes,
subspaces, and normality certificates use the fixed schemas below; ray and
vertex indices are 1-based everywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Union

from .fans import Fan, SimplicialComplex
from .normality import NormalityCertificate
from .quotient import ComplexSubspace, SymbolicSubspace
from .rationals import GaussianRational, SymbolicVector, format_rational, parse_rational


class SchemaError(ValueError):
    """Raised when a JSON document does not match the expected schema."""


def _expect(cond: bool, message: str):
    if not cond:
        raise SchemaError(message)


def rational_to_json(x: Fraction) -> str:
    return format_rational(x)


def rational_from_json(data) -> Fraction:
    _expect(isinstance(data, (str, int)), f"expected rational string, got {data!r}")
    try:
        return parse_rational(str(data))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad rational {data!r}: {exc}") from None


def gauss_to_json(x: GaussianRational) -> dict:
    return {"re": format_rational(x.re), "im": format_rational(x.im)}


def gauss_from_json(data) -> GaussianRational:
    _expect(isinstance(data, dict) and {"re", "im"} <= set(data), f"expected Gaussian rational, got {data!r}")
    return GaussianRational(rational_from_json(data["re"]), rational_from_json(data["im"]))


def symbolic_scalar_to_json(vec: SymbolicVector, j: int) -> dict:
    const = vec.coefficient(j, 0)
    sym = {
        str(s): format_rational(c)
        for s, c in vec.coords[j]
        if s != 0
    }
    return {"const": format_rational(const), "sym": sym}


def symbolic_scalar_from_json(data) -> dict:
    _expect(isinstance(data, dict), f"expected symbolic scalar object, got {data!r}")
    coeffs = {}
    if "const" in data:
        coeffs[0] = rational_from_json(data["const"])
    for key, val in data.get("sym", {}).items():
        try:
            idx = int(key)
        except ValueError:
            raise SchemaError(f"bad symbol index {key!r}") from None
        _expect(idx >= 1, f"symbol indices start at 1, got {idx}")
        coeffs[idx] = rational_from_json(val)
    return coeffs


# fans and complexes --------------------------------------------------------


def fan_to_json(fan: Fan) -> dict:
    return {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
    }


def fan_from_json(data) -> Fan:
    _expect(isinstance(data, dict), "fan document must be an object")
    _expect({"dim", "rays", "max_cones"} <= set(data), "fan needs dim, rays, max_cones")
    dim = data["dim"]
    _expect(isinstance(dim, int) and dim >= 0, "dim must be a non-negative integer")
    rays = data["rays"]
    _expect(isinstance(rays, list), "rays must be a list")
    for r in rays:
        _expect(
            isinstance(r, list) and len(r) == dim and all(isinstance(x, int) for x in r),
            f"each ray must be a length-{dim} integer vector",
        )
    cones = data["max_cones"]
    _expect(isinstance(cones, list), "max_cones must be a list")
    for c in cones:
        _expect(
            isinstance(c, list) and all(isinstance(i, int) and i >= 1 for i in c),
            "each cone must be a list of 1-based ray indices",
        )
    try:
        return Fan(dim, tuple(tuple(r) for r in rays), tuple(tuple(c) for c in cones))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def complex_to_json(k: SimplicialComplex) -> dict:
    return {"vertices": k.vertices, "facets": [list(f) for f in k.facets]}


def complex_from_json(data) -> SimplicialComplex:
    _expect(isinstance(data, dict), "complex document must be an object")
    _expect({"vertices", "facets"} <= set(data), "complex needs vertices, facets")
    m = data["vertices"]
    _expect(isinstance(m, int) and m >= 0, "vertices must be a non-negative integer")
    facets = data["facets"]
    _expect(isinstance(facets, list), "facets must be a list")
    for f in facets:
        _expect(
            isinstance(f, list) and all(isinstance(i, int) for i in f),
            "each facet must be a list of vertex indices",
        )
    try:
        return SimplicialComplex(m, tuple(tuple(f) for f in facets))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


# subspaces -----------------------------------------------------------------


def subspace_to_json(h: Union[ComplexSubspace, SymbolicSubspace]) -> dict:
    if isinstance(h, SymbolicSubspace):
        return {
            "m": h.ambient,
            "symbols": h.symbols,
            "basis": [
                [
                    {"re": symbolic_scalar_to_json(re, j), "im": symbolic_scalar_to_json(im, j)}
                    for j in range(h.ambient)
                ]
                for re, im in h.basis
            ],
        }
    return {
        "m": h.ambient,
        "basis": [[gauss_to_json(x) for x in v] for v in h.basis],
    }


def subspace_from_json(data) -> Union[ComplexSubspace, SymbolicSubspace]:
    _expect(isinstance(data, dict), "subspace document must be an object")
    _expect("m" in data and "basis" in data, "subspace needs m and basis")
    m = data["m"]
    _expect(isinstance(m, int) and m >= 0, "m must be a non-negative integer")
    basis = data["basis"]
    _expect(isinstance(basis, list), "basis must be a list")
    symbolic = "symbols" in data or any(
        isinstance(v, list) and v and isinstance(v[0], dict) and isinstance(v[0].get("re"), dict)
        for v in basis
    )
    if not symbolic:
        vectors = []
        for v in basis:
            _expect(isinstance(v, list) and len(v) == m, f"each basis vector must have {m} entries")
            vectors.append(tuple(gauss_from_json(x) for x in v))
        try:
            return ComplexSubspace(m, tuple(vectors))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    n_symbols = data.get("symbols", 0)
    _expect(isinstance(n_symbols, int) and n_symbols >= 0, "symbols must be a non-negative integer")
    vectors = []
    for v in basis:
        _expect(isinstance(v, list) and len(v) == m, f"each basis vector must have {m} entries")
        re_coords, im_coords = [], []
        for entry in v:
            _expect(
                isinstance(entry, dict) and "re" in entry and "im" in entry,
                "symbolic entries need re and im parts",
            )
            re_coords.append(symbolic_scalar_from_json(entry["re"]))
            im_coords.append(symbolic_scalar_from_json(entry["im"]))
        vectors.append((SymbolicVector(m, re_coords), SymbolicVector(m, im_coords)))
    return SymbolicSubspace(m, n_symbols, tuple(vectors))


# certificates --------------------------------------------------------------


def certificate_to_json(cert: NormalityCertificate) -> dict:
    return {
        "b": [format_rational(x) for x in cert.b],
        "vertices": {
            ",".join(str(i) for i in cone): [format_rational(x) for x in u]
            for cone, u in cert.vertices
        },
    }


def certificate_from_json(data) -> NormalityCertificate:
    _expect(isinstance(data, dict), "certificate document must be an object")
    _expect("b" in data, "certificate needs b")
    b = tuple(rational_from_json(x) for x in data["b"])
    vertices = []
    for key, val in data.get("vertices", {}).items():
        try:
            cone = tuple(int(s) for s in key.split(","))
        except ValueError:
            raise SchemaError(f"bad cone key {key!r}") from None
        vertices.append((cone, tuple(rational_from_json(x) for x in val)))
    return NormalityCertificate(b, tuple(sorted(vertices)))


# file helpers --------------------------------------------------------------


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def dump_json(obj, path: str = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
