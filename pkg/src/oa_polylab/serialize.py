"""JSON wire formats.

Complex numbers are `[re, im]` pairs everywhere.  An element embeds its
algebra; a polynomial embeds its elements:

    element:    {"algebra": {"blocks": [{"dim": n, "weight": w}, ...]},
                 "blocks": [[[[re, im], ...], ...], ...]}
    polynomial: {"m": 2, "q": 1.0, "d": 1,
                 "monomials": [{"coeff": [re, im], "coord": 0,
                                "factors": [<element>, ...]}]}

``dumps_canonical`` renders with sorted keys and no NaN/Infinity tokens
so identical inputs produce identical bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .algebra import Element, TracialAlgebra
from .errors import StructuralError, UsageError
from .polynomials import HomPolynomial, QNormedCodomain, TraceMonomial
from .representation import RepresentationReport
from .rigidity import CounterexampleWitness


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def algebra_to_obj(algebra: TracialAlgebra) -> dict:
    return {"blocks": [{"dim": d, "weight": w} for d, w in algebra.blocks]}


def algebra_from_obj(obj) -> TracialAlgebra:
    try:
        blocks = [(entry["dim"], entry["weight"]) for entry in obj["blocks"]]
    except (TypeError, KeyError) as exc:
        raise StructuralError(f"malformed algebra object: {exc}") from exc
    return TracialAlgebra(tuple(blocks))


def element_to_obj(x: Element) -> dict:
    blocks = []
    for mat in x.blocks:
        blocks.append([[_pair(z) for z in row] for row in mat])
    return {"algebra": algebra_to_obj(x.algebra), "blocks": blocks}


def element_from_obj(obj, algebra: TracialAlgebra | None = None) -> Element:
    try:
        declared = algebra_from_obj(obj["algebra"])
        raw = obj["blocks"]
    except (TypeError, KeyError) as exc:
        raise StructuralError(f"malformed element object: {exc}") from exc
    if algebra is not None and algebra != declared:
        raise StructuralError("element algebra does not match the expected algebra")
    mats = []
    for dim, rows in zip(declared.dims, raw):
        mat = np.zeros((dim, dim), dtype=np.complex128)
        if len(rows) != dim:
            raise StructuralError(f"expected {dim} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise StructuralError(f"expected {dim} entries per row, got {len(row)}")
            for j, pair in enumerate(row):
                re, im = pair
                mat[i, j] = complex(float(re), float(im))
        mats.append(mat)
    if len(raw) != declared.n_blocks:
        raise StructuralError("wrong number of blocks")
    return Element(declared, mats, copy=False)


def spectral_data_to_obj(data) -> dict:
    """Element JSON of the diagonalizing unitary plus the eigenvalue arrays."""
    return {
        "unitary": element_to_obj(data.unitary),
        "eigenvalues": [[float(v) for v in vals] for vals in data.eigenvalues],
    }


def polynomial_to_obj(P: HomPolynomial) -> dict:
    return {
        "m": P.m,
        "q": P.codomain.q,
        "d": P.codomain.d,
        "monomials": [
            {
                "coeff": _pair(mono.coeff),
                "coord": mono.coord,
                "factors": [element_to_obj(f) for f in mono.factors],
            }
            for mono in P.monomials
        ],
    }


def polynomial_from_obj(obj, algebra: TracialAlgebra | None = None) -> HomPolynomial:
    try:
        m = int(obj["m"])
        codomain = QNormedCodomain(int(obj["d"]), float(obj["q"]))
        raw_monos = obj["monomials"]
    except (TypeError, KeyError) as exc:
        raise StructuralError(f"malformed polynomial object: {exc}") from exc
    monos = []
    for raw in raw_monos:
        try:
            re, im = raw["coeff"]
            coord = int(raw["coord"])
            factors = [element_from_obj(f, algebra) for f in raw["factors"]]
        except (TypeError, KeyError, ValueError) as exc:
            raise StructuralError(f"malformed monomial: {exc}") from exc
        monos.append(TraceMonomial(complex(float(re), float(im)), coord, factors))
    return HomPolynomial(m, codomain, monos)


def _finite(v: float):
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return float(v)


def witness_to_obj(w: CounterexampleWitness) -> dict:
    return {
        "x": element_to_obj(w.x),
        "y": element_to_obj(w.y),
        "residual": float(w.residual),
        "gadget": w.gadget,
    }


def representation_report_to_obj(rep: RepresentationReport) -> dict:
    return {
        "zeta": [element_to_obj(z) for z in rep.zeta],
        "max_residual": float(rep.max_residual),
        "uniqueness_gap": float(rep.uniqueness_gap),
        "norms": {
            "p": float(rep.p),
            "m": int(rep.m),
            "r": _finite(rep.r),
            "per_coordinate": [float(v) for v in rep.zeta_norms],
        },
    }


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc
