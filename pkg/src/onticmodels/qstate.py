"""Quantum states and their MUB outcome probabilities.

A state is a d x d density matrix; measuring the d+1 MUBs yields
(d+1)*d outcome probabilities of which d^2-1 are independent.  The
flat probability vector keeps outcomes 1..d-1 per basis (basis-major),
the last outcome of each basis being implied by normalization.  That
vector is the coordinate system the ontic polytopes live in.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .mub import ProjectorList
from .rng import SplitMix64

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
ENTRY_TOL = 1e-12


@dataclass(frozen=True)
class QuantumState:
    """Validated density matrix, optionally remembering a pure amplitude vector."""

    dim: int
    rho: np.ndarray
    psi: np.ndarray | None = None


@dataclass(frozen=True)
class ProbabilityVector:
    """Flat basis-major vector of d^2-1 stored outcome probabilities."""

    dim: int
    entries: tuple[float, ...]

    def __post_init__(self):
        d = self.dim
        if len(self.entries) != (d + 1) * (d - 1):
            raise ValueError(
                f"expected {(d + 1) * (d - 1)} entries for dim {d}, got {len(self.entries)}"
            )
        for p in self.entries:
            if not -ENTRY_TOL <= p <= 1.0 + ENTRY_TOL:
                raise ValueError(f"stored probability {p} outside [0, 1]")

    def block(self, kappa: int) -> tuple[float, ...]:
        """Stored outcomes of 1-based basis kappa."""
        d = self.dim
        return self.entries[(kappa - 1) * (d - 1) : kappa * (d - 1)]

    def omitted(self, kappa: int) -> float:
        """Implied probability of the omitted d-th outcome of basis kappa."""
        return 1.0 - sum(self.block(kappa))

    def as_array(self) -> np.ndarray:
        return np.array(self.entries)


def state_from_rho(dim: int, rho: np.ndarray) -> QuantumState:
    """Validate and wrap a density matrix.

    Rejects matrices that are non-Hermitian (1e-12), non-unit-trace
    (1e-12) or not positive semidefinite (eigenvalues below -1e-10).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim, dim):
        raise ValueError(f"rho shape {rho.shape} does not match dim {dim}")
    if np.abs(rho - rho.conj().T).max() > HERMITICITY_TOL:
        raise ValueError("rho is not Hermitian")
    if abs(rho.trace() - 1.0) > TRACE_TOL:
        raise ValueError(f"rho has trace {rho.trace()}, expected 1")
    if float(np.linalg.eigvalsh(rho).min()) < -PSD_TOL:
        raise ValueError("rho is not positive semidefinite")
    return QuantumState(dim, rho)


def state_from_psi(dim: int, psi: np.ndarray) -> QuantumState:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (dim,):
        raise ValueError(f"psi shape {psi.shape} does not match dim {dim}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"psi has norm {norm}, expected 1")
    return QuantumState(dim, np.outer(psi, psi.conj()), psi)


def random_pure_state(d: int, seed: int) -> QuantumState:
    """Haar-random pure state: normalized vector of complex standard normals.

    Deterministic for a given seed; use :func:`onticmodels.rng.derive_seed`
    to spawn independent per-draw seeds from one master seed.
    """
    gen = SplitMix64(seed)
    amplitudes = []
    for _ in range(d):
        re, im = gen.gauss_pair()
        amplitudes.append(complex(re, im))
    psi = np.array(amplitudes)
    psi /= np.linalg.norm(psi)
    return QuantumState(d, np.outer(psi, psi.conj()), psi)


def born_probabilities(state: QuantumState, proj: ProjectorList) -> ProbabilityVector:
    """Tr(rho P_i) for every stored projector, as a ProbabilityVector.

    Also checks the implied d-th outcome of every basis lands in [0, 1]
    (within 1e-12), which any genuine quantum state satisfies.
    """
    if state.dim != proj.dim:
        raise ValueError(f"state dim {state.dim} != projector dim {proj.dim}")
    entries = tuple(
        float(np.trace(state.rho @ p).real) for p in proj.stored
    )
    vec = ProbabilityVector(state.dim, entries)
    for kappa in range(1, state.dim + 2):
        implied = vec.omitted(kappa)
        if not -ENTRY_TOL <= implied <= 1.0 + ENTRY_TOL:
            raise AssertionError(
                f"implied probability {implied} for basis {kappa} outside [0, 1]"
            )
    return vec


def purity_sphere_residual(state: QuantumState, proj: ProjectorList) -> float:
    """Residual of the purity identity linking probabilities and Tr(rho^2).

    Over all (d+1)*d outcome probabilities (stored plus implied) of a
    complete MUB set, sum(p^2) equals Tr(rho^2) + 1; the returned value
    is sum(p^2) - Tr(rho^2) - 1 and should vanish to float precision.
    """
    vec = born_probabilities(state, proj)
    total = 0.0
    for kappa in range(1, state.dim + 2):
        block = vec.block(kappa)
        total += sum(p * p for p in block) + vec.omitted(kappa) ** 2
    purity = float(np.trace(state.rho @ state.rho).real)
    return total - purity - 1.0


def bloch_radius(state: QuantumState, proj: ProjectorList) -> float:
    """Distance of a qubit's probability vector from the cube center (1/2,1/2,1/2).

    Equals half the Bloch vector length: 1/2 for pure states, 0 for the
    maximally mixed state.  Defined for d=2 only.
    """
    if state.dim != 2:
        raise ValueError(f"bloch_radius is defined for dim 2 only, got {state.dim}")
    vec = born_probabilities(state, proj)
    return math.sqrt(sum((p - 0.5) ** 2 for p in vec.entries))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def state_to_jsonable(state: QuantumState) -> dict:
    if state.psi is not None:
        return {
            "dim": state.dim,
            "psi": [[float(c.real), float(c.imag)] for c in state.psi],
        }
    return {
        "dim": state.dim,
        "rho": [
            [[float(c.real), float(c.imag)] for c in row] for row in state.rho
        ],
    }


def state_from_jsonable(obj: dict) -> QuantumState:
    try:
        d = int(obj["dim"])
        if "psi" in obj:
            psi = np.array([complex(re, im) for re, im in obj["psi"]])
            return state_from_psi(d, psi)
        rho = np.array(
            [[complex(re, im) for re, im in row] for row in obj["rho"]]
        )
        return state_from_rho(d, rho)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed state object: {exc}") from exc


def write_state(path: str | Path, state: QuantumState) -> None:
    Path(path).write_text(json.dumps(state_to_jsonable(state), indent=1) + "\n")


def read_state(path: str | Path) -> QuantumState:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed state file {path}: {exc}") from exc
    return state_from_jsonable(obj)
