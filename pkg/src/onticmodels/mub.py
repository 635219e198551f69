"""Complete sets of mutually unbiased bases (MUBs) for prime dimension.

A dimension-d system admits d+1 pairwise unbiased orthonormal bases when
d is prime.  Measuring all of them is tomographically complete, which is
what makes the probability-vector geometry in :mod:`onticmodels.polytope`
well defined.  The constructions here are fixed once and for all; the
``convention_id`` travels with every serialized artifact so downstream
results can name the convention they were computed in.

Basis and outcome indices are 1-based in the public API (basis kappa runs
1..d+1, outcomes 1..d) to match the probability layout used everywhere
else in the package.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MUB_TOLERANCE = 1e-12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


@dataclass(frozen=True)
class MubSet:
    """d+1 orthonormal bases of C^d, stored as rows of (d+1, d, d) array.

    ``bases[k, m]`` is the m-th vector of basis k+1.  Instances are not
    validated on construction; :func:`verify_mub` reports deviations.
    """

    dim: int
    convention_id: str
    bases: np.ndarray

    def vector(self, kappa: int, outcome: int) -> np.ndarray:
        """Vector for 1-based (basis, outcome)."""
        return self.bases[kappa - 1, outcome - 1]


@dataclass(frozen=True)
class MubReport:
    """Deviation summary produced by :func:`verify_mub`."""

    dim: int
    orthonormality_deviation: float
    unbiasedness_deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return (
            self.orthonormality_deviation <= self.tolerance
            and self.unbiasedness_deviation <= self.tolerance
        )


def _qubit_bases() -> np.ndarray:
    """X, Y, Z eigenbases, outcome-0 eigenvector first in each."""
    s = 1.0 / math.sqrt(2.0)
    return np.array(
        [
            [[s, s], [s, -s]],
            [[s, 1j * s], [s, -1j * s]],
            [[1.0, 0.0], [0.0, 1.0]],
        ],
        dtype=complex,
    )


def _qutrit_bases() -> np.ndarray:
    """The fixed qutrit convention used by every d=3 artifact in this package.

    Basis 1 is the computational basis in the cyclic order e2, e3, e1;
    bases 2..4 are phase bases with entries in {1, w, w^2}/sqrt(3),
    w = exp(2*pi*i/3).  The vectors are pinned verbatim, global phases
    included, so serialized bases are reproducible byte for byte.
    """
    w = cmath.exp(2j * cmath.pi / 3)
    s = 1.0 / math.sqrt(3.0)
    b1 = [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    b2 = [[s, s, s], [s * w, s, s * w**2], [s * w**2, s, s * w]]
    b3 = [[s * w, s, s], [s, s * w, s], [s, s, s * w]]
    b4 = [[s * w**2, s, s], [s, s * w**2, s], [s, s, s * w**2]]
    return np.array([b1, b2, b3, b4], dtype=complex)


def _prime_bases(d: int) -> np.ndarray:
    """Computational basis plus d quadratic-phase Fourier bases (odd prime d).

    Basis a (a = 0..d-1) has vectors v_m with components
    w^(a*j^2 + m*j)/sqrt(d); the quadratic Gauss sum makes distinct bases
    unbiased for odd prime d.
    """
    w = cmath.exp(2j * cmath.pi / d)
    s = 1.0 / math.sqrt(d)
    bases = [np.eye(d, dtype=complex)]
    for a in range(d):
        vecs = [
            [s * w ** ((a * j * j + m * j) % d) for j in range(d)]
            for m in range(d)
        ]
        bases.append(np.array(vecs, dtype=complex))
    return np.array(bases, dtype=complex)


def build_mub(d: int) -> MubSet:
    """Construct the package's canonical d+1 MUBs for prime d.

    Parameters
    ----------
    d : int
        Hilbert space dimension; must be prime.

    Returns
    -------
    MubSet
        Validated basis set; construction raises if the result misses
        orthonormality or unbiasedness beyond 1e-12.
    """
    if not is_prime(d):
        raise ValueError(f"dimension {d} not supported: prime required")
    if d == 2:
        mub = MubSet(2, "pauli-xyz", _qubit_bases())
    elif d == 3:
        mub = MubSet(3, "qutrit-fixed", _qutrit_bases())
    else:
        mub = MubSet(d, "fourier-quadratic", _prime_bases(d))
    report = verify_mub(mub)
    if not report.ok:
        raise AssertionError(f"internal MUB construction failed validation: {report}")
    return mub


def verify_mub(mub: MubSet) -> MubReport:
    """Measure worst-case orthonormality and unbiasedness deviations."""
    d = mub.dim
    ortho = 0.0
    for k in range(d + 1):
        gram = mub.bases[k] @ mub.bases[k].conj().T
        ortho = max(ortho, float(np.abs(gram - np.eye(d)).max()))
    unbias = 0.0
    for k in range(d + 1):
        for l in range(k + 1, d + 1):
            overlaps = np.abs(mub.bases[k] @ mub.bases[l].conj().T) ** 2
            unbias = max(unbias, float(np.abs(overlaps - 1.0 / d).max()))
    return MubReport(d, ortho, unbias, MUB_TOLERANCE)


# ---------------------------------------------------------------------------
# projectors and the basis-major probability layout
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProjectorList:
    """Rank-1 projectors of a MubSet in the flat basis-major layout.

    The flat list stores outcomes 1..d-1 for each basis in order, giving
    (d+1)(d-1) = d^2-1 entries; the d-th outcome of each basis is implied
    by completeness and retrievable via :meth:`omitted`.
    """

    dim: int
    convention_id: str
    stored: tuple[np.ndarray, ...]
    _full: tuple[tuple[np.ndarray, ...], ...]

    def __len__(self) -> int:
        return len(self.stored)

    def __getitem__(self, i: int) -> np.ndarray:
        return self.stored[i]

    def flat_index(self, kappa: int, outcome: int) -> int:
        """Flat position of 1-based (basis, outcome); outcome must be < d."""
        d = self.dim
        if not (1 <= kappa <= d + 1 and 1 <= outcome <= d - 1):
            raise IndexError(f"no stored slot for basis {kappa}, outcome {outcome}")
        return (kappa - 1) * (d - 1) + (outcome - 1)

    def basis_outcome(self, i: int) -> tuple[int, int]:
        """Inverse of :meth:`flat_index`."""
        d = self.dim
        if not 0 <= i < (d + 1) * (d - 1):
            raise IndexError(i)
        return i // (d - 1) + 1, i % (d - 1) + 1

    def projector(self, kappa: int, outcome: int) -> np.ndarray:
        """Projector for any 1-based (basis, outcome), including outcome d."""
        return self._full[kappa - 1][outcome - 1]

    def omitted(self, kappa: int) -> np.ndarray:
        return self._full[kappa - 1][self.dim - 1]


def projectors(mub: MubSet) -> ProjectorList:
    """Flatten a MubSet into its stored projector list."""
    d = mub.dim
    full = tuple(
        tuple(np.outer(mub.bases[k, m], mub.bases[k, m].conj()) for m in range(d))
        for k in range(d + 1)
    )
    stored = tuple(full[k][m] for k in range(d + 1) for m in range(d - 1))
    return ProjectorList(d, mub.convention_id, stored, full)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def mub_to_jsonable(mub: MubSet) -> dict:
    return {
        "dim": mub.dim,
        "convention_id": mub.convention_id,
        "bases": [
            [[[float(c.real), float(c.imag)] for c in vec] for vec in basis]
            for basis in mub.bases
        ],
    }


def mub_from_jsonable(obj: dict) -> MubSet:
    try:
        d = int(obj["dim"])
        convention = str(obj["convention_id"])
        raw = obj["bases"]
        bases = np.array(
            [[[complex(re, im) for re, im in vec] for vec in basis] for basis in raw],
            dtype=complex,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed MUB object: {exc}") from exc
    if bases.shape != (d + 1, d, d):
        raise ValueError(f"MUB shape {bases.shape} does not match dim {d}")
    return MubSet(d, convention, bases)


def write_mub(path: str | Path, mub: MubSet) -> None:
    Path(path).write_text(json.dumps(mub_to_jsonable(mub), indent=1) + "\n")


def read_mub(path: str | Path) -> MubSet:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed MUB file {path}: {exc}") from exc
    return mub_from_jsonable(obj)
