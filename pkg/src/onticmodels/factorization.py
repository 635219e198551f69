"""Ontological factorizations D = M P of MUB outcome-probability tables.

A data table holds one d-outcome distribution per (measurement, preparation)
pair.  An ontological model supplies response matrices M^(x) over Omega
ontic states; a preparation enters as a weight column w with D^(x) column
= M^(x) w.  For the deterministic models built from ontic vertex sets the
response matrices are 0/1 and read directly off the vertex coordinates;
the trivial indeterministic model instead copies the table itself
(Omega = number of preparations, M = D, P = identity).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import simplex
from .mub import build_mub
from .polytope import Facet, VPolytope, hull_facets, ontic_digits, ontic_label
from .qstate import ProbabilityVector

STOCHASTIC_TOL = 1e-12
DECOMPOSE_TOL = 1e-9


class InfeasibleDecompositionError(ValueError):
    """Point is not a convex combination of the model's vertices."""

    def __init__(self, facet: Facet, value: float):
        self.facet = facet
        self.value = value
        super().__init__(
            f"point violates facet c={facet.c} f={facet.f}: c.p = {value}"
        )


@dataclass(frozen=True)
class DataTable:
    """m measurement blocks of shape (d, s): outcome distributions per column."""

    dim: int
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        s = self.n_preparations
        for x, block in enumerate(self.blocks, 1):
            if block.shape != (self.dim, s):
                raise ValueError(f"block {x} has shape {block.shape}, expected {(self.dim, s)}")
            if block.min() < -STOCHASTIC_TOL:
                raise ValueError(f"block {x} has a negative entry")
            sums = block.sum(axis=0)
            if np.abs(sums - 1.0).max() > STOCHASTIC_TOL:
                raise ValueError(f"block {x} columns do not sum to 1: {sums}")

    @property
    def n_measurements(self) -> int:
        return len(self.blocks)

    @property
    def n_preparations(self) -> int:
        return self.blocks[0].shape[1]


@dataclass(frozen=True)
class OntologicalModel:
    """Response-function side of a factorization, plus provenance.

    `vertices` ties the model to polytope geometry when it came from one
    (deterministic models); the trivial model has none.
    """

    dim: int
    omega: int
    labels: tuple[str, ...]
    matrices: tuple[np.ndarray, ...]
    deterministic: bool
    vertices: tuple[tuple[int, ...], ...] | None = None
    seed: int | None = None
    convention_id: str = ""


def _response_matrices(d: int, v: VPolytope) -> tuple[np.ndarray, ...]:
    """d+1 response matrices of shape (d, Omega) read off ontic vertices.

    Column j of M^(x) is the one-hot indicator of the outcome vertex j
    assigns to basis x; the omitted outcome maps to row d-1 (0-based).
    """
    mats = [np.zeros((d, len(v.vertices)), dtype=int) for _ in range(d + 1)]
    for j, vert in enumerate(v.vertices):
        digits = ontic_digits(d, vert)
        for x in range(d + 1):
            mats[x][digits[x], j] = 1
    return tuple(mats)


def deterministic_measurement_matrices(
    d: int, v: VPolytope, seed: int | None = None
) -> OntologicalModel:
    """Deterministic (0/1 response) model over an ontic vertex set."""
    labels = v.labels
    if labels is None:
        labels = tuple(ontic_label(d, ontic_digits(d, vert)) for vert in v.vertices)
    return OntologicalModel(
        dim=d,
        omega=len(v.vertices),
        labels=labels,
        matrices=_response_matrices(d, v),
        deterministic=True,
        vertices=tuple(tuple(int(x) for x in vert) for vert in v.vertices),
        seed=seed,
        convention_id=build_mub(d).convention_id,
    )


def model_vertex_polytope(model: OntologicalModel) -> VPolytope:
    if model.vertices is None:
        raise ValueError("model carries no vertex set")
    return VPolytope(
        (model.dim + 1) * (model.dim - 1), model.vertices, model.labels
    )


def prune_model(model: OntologicalModel, indices) -> OntologicalModel:
    """Drop the ontic states at the given 1-based indices."""
    drop = {int(i) for i in indices}
    bad = [i for i in drop if not 1 <= i <= model.omega]
    if bad:
        raise IndexError(f"ontic indices {sorted(bad)} out of range 1..{model.omega}")
    keep = [j for j in range(model.omega) if j + 1 not in drop]
    return OntologicalModel(
        dim=model.dim,
        omega=len(keep),
        labels=tuple(model.labels[j] for j in keep),
        matrices=tuple(m[:, keep] for m in model.matrices),
        deterministic=model.deterministic,
        vertices=None
        if model.vertices is None
        else tuple(model.vertices[j] for j in keep),
        seed=model.seed,
        convention_id=model.convention_id,
    )


def trivial_indeterministic_of(table: DataTable) -> tuple[OntologicalModel, np.ndarray]:
    """One ontic state per preparation: M^(x) = D^(x), P = identity.

    Returns the model together with its preparation matrix P.  This
    always factorizes the table with residual exactly zero; the model is
    deterministic only in the degenerate case of an already 0/1 table.
    """
    deterministic = all(
        bool(np.isin(block, (0.0, 1.0)).all()) for block in table.blocks
    )
    model = OntologicalModel(
        dim=table.dim,
        omega=table.n_preparations,
        labels=tuple(str(j + 1) for j in range(table.n_preparations)),
        matrices=tuple(block.copy() for block in table.blocks),
        deterministic=deterministic,
    )
    return model, np.eye(table.n_preparations)


def probvec_to_table_column(p) -> DataTable:
    """Expand a flat probability vector into a one-preparation DataTable.

    Accepts a ProbabilityVector or any sequence of d^2-1 probabilities
    (the dimension is implied by the length).
    """
    if not isinstance(p, ProbabilityVector):
        entries = tuple(float(x) for x in p)
        d = math.isqrt(len(entries) + 1)
        if (d + 1) * (d - 1) != len(entries):
            raise ValueError(f"no dimension stores {len(entries)} probabilities")
        p = ProbabilityVector(d, entries)
    d = p.dim
    blocks = []
    for kappa in range(1, d + 2):
        col = list(p.block(kappa)) + [p.omitted(kappa)]
        blocks.append(np.array(col, dtype=float).reshape(d, 1))
    return DataTable(d, tuple(blocks))


def decompose_state(p, v: VPolytope, tol: float = DECOMPOSE_TOL) -> np.ndarray:
    """Convex weights over v's vertices reproducing probability vector p.

    Runs exact phase-1 simplex (Bland's rule) on the float entries taken
    as exact rationals; accepts total infeasibility up to tol, so points
    on the boundary survive roundoff.  On failure raises
    InfeasibleDecompositionError naming the most violated facet.
    """
    entries = p.entries if isinstance(p, ProbabilityVector) else tuple(p)
    if len(entries) != v.dim:
        raise ValueError(f"point dimension {len(entries)} != {v.dim}")
    exact = [Fraction(float(x)) for x in entries]
    feasible, weights, _ = simplex.convex_combination(
        v.vertices, exact, tol=Fraction(tol)
    )
    if not feasible:
        hull = hull_facets(v)
        worst = min(
            hull.facets, key=lambda facet: float(facet.evaluate(entries)) - facet.f
        )
        raise InfeasibleDecompositionError(
            worst, float(worst.evaluate(entries))
        )
    return np.array([float(w) for w in weights])


def factorization_residual(
    model: OntologicalModel, weights: np.ndarray, table: DataTable
) -> float:
    """max |D^(x) - M^(x) P| over all entries; weights has shape (Omega, s)."""
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (model.omega, table.n_preparations):
        raise ValueError(
            f"weights shape {weights.shape}, expected {(model.omega, table.n_preparations)}"
        )
    worst = 0.0
    for block, m in zip(table.blocks, model.matrices):
        worst = max(worst, float(np.abs(block - m @ weights).max()))
    return worst


# ---------------------------------------------------------------------------
# model JSON
# ---------------------------------------------------------------------------


def model_to_jsonable(model: OntologicalModel) -> dict:
    def cell(x):
        xf = float(x)
        return int(xf) if xf.is_integer() else xf

    return {
        "dim": model.dim,
        "omega": model.omega,
        "labels": list(model.labels),
        "vertices": None
        if model.vertices is None
        else [list(vert) for vert in model.vertices],
        "measurement_matrices": [
            [[cell(x) for x in row] for row in m] for m in model.matrices
        ],
        "deterministic": model.deterministic,
        "provenance": {"seed": model.seed, "convention_id": model.convention_id},
    }


def model_from_jsonable(obj: dict) -> OntologicalModel:
    try:
        dim = int(obj["dim"])
        omega = int(obj["omega"])
        labels = tuple(str(x) for x in obj["labels"])
        raw_vertices = obj["vertices"]
        vertices = (
            None
            if raw_vertices is None
            else tuple(tuple(int(x) for x in vert) for vert in raw_vertices)
        )
        matrices = tuple(np.array(m, dtype=float) for m in obj["measurement_matrices"])
        deterministic = bool(obj["deterministic"])
        prov = obj["provenance"]
        seed = prov["seed"]
        convention = str(prov["convention_id"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed model object: {exc}") from exc
    model = OntologicalModel(
        dim=dim,
        omega=omega,
        labels=labels,
        matrices=matrices,
        deterministic=deterministic,
        vertices=vertices,
        seed=None if seed is None else int(seed),
        convention_id=convention,
    )
    validate_model(model)
    return model


def validate_model(model: OntologicalModel) -> None:
    """Internal consistency: shapes, stochasticity, flag, vertex agreement."""
    if len(model.labels) != model.omega:
        raise ValueError("label count does not match omega")
    if len(model.matrices) != model.dim + 1:
        raise ValueError(
            f"expected {model.dim + 1} measurement matrices, got {len(model.matrices)}"
        )
    for x, m in enumerate(model.matrices, 1):
        if m.shape != (model.dim, model.omega):
            raise ValueError(f"matrix {x} has shape {m.shape}")
        if m.min() < -STOCHASTIC_TOL:
            raise ValueError(f"matrix {x} has a negative entry")
        if model.omega and np.abs(m.sum(axis=0) - 1.0).max() > STOCHASTIC_TOL:
            raise ValueError(f"matrix {x} is not column-stochastic")
    integral = all(bool(np.isin(m, (0.0, 1.0)).all()) for m in model.matrices)
    if model.deterministic != integral:
        raise ValueError("deterministic flag does not match matrix entries")
    if model.vertices is not None:
        poly = model_vertex_polytope(model)
        expected = _response_matrices(model.dim, poly)
        for m, e in zip(model.matrices, expected):
            if not np.array_equal(m.astype(int), e):
                raise ValueError("measurement matrices do not match vertices")


def write_model(path: str | Path, model: OntologicalModel) -> None:
    Path(path).write_text(json.dumps(model_to_jsonable(model), indent=1) + "\n")


def read_model(path: str | Path) -> OntologicalModel:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed model file {path}: {exc}") from exc
    return model_from_jsonable(obj)
