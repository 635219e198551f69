"""Minimum-eigenvalue certification of facets against all quantum states.

A facet sum_i c_i p_i >= f holds for every quantum state iff the
Hermitian operator C = sum_i c_i P_i (P_i the stored MUB projectors)
satisfies lambda_min(C) >= f, because Tr(rho C) ranges over exactly
[lambda_min, lambda_max] as rho ranges over states.  So one eigenvalue
computation certifies or refutes a facet, and the ground eigenstate is
a violation witness whenever the bound fails.

Eigenvalues come from cyclic Jacobi rotations on the 2d x 2d real
symmetric embedding [[A, -B], [B, A]] of C = A + iB; each eigenvalue of
C appears twice and an embedding eigenvector (x; y) lifts to x + iy.
Simple, dependency-free, and accurate to ~1e-13 at the d <= 5 sizes
used here.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .mub import ProjectorList
from .polytope import Facet, HPolytope, VPolytope, hull_facets
from .qstate import ProbabilityVector, QuantumState, born_probabilities, state_from_psi

EPSILON = 1e-9
HERMITICITY_TOL = 1e-10
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60

STATUS_STRICT = "strict"
STATUS_SATURATED = "saturated"
STATUS_VIOLATED = "violated"


@dataclass(frozen=True)
class Certificate:
    """Outcome of certifying one facet.

    margin = lambda_min - f.  `witness` is present exactly when the
    status is violated; it is the ground eigenstate, and
    `witness_probabilities` its Born vector, which lies strictly outside
    the facet.
    """

    facet: Facet
    lambda_min: float
    margin: float
    status: str
    witness: QuantumState | None = None
    witness_probabilities: ProbabilityVector | None = None


@dataclass(frozen=True)
class CertificationReport:
    facets: tuple[Certificate, ...]
    ok: bool
    min_margin: float | None


def facet_operator(facet: Facet, proj: ProjectorList) -> np.ndarray:
    """C = sum_i c_i P_i over the stored projector list."""
    if len(facet.c) != len(proj):
        raise ValueError(
            f"facet has {len(facet.c)} coefficients, projector list has {len(proj)}"
        )
    op = np.zeros((proj.dim, proj.dim), dtype=complex)
    for coeff, p in zip(facet.c, proj.stored):
        if coeff:
            op += coeff * p
    return op


def _jacobi_eigensystem(sym: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi on a real symmetric matrix: (eigenvalues, column vectors).

    Sweeps until the off-diagonal Frobenius norm drops below 1e-13
    (relative to the matrix scale when that scale exceeds 1).
    """
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    vecs = np.eye(n)
    threshold = JACOBI_OFF_TOL * max(1.0, float(np.linalg.norm(a)))
    # entries this small cannot keep the off-diagonal norm above threshold
    # on their own, so skipping them never stalls convergence
    skip = threshold / (2.0 * n)
    for _ in range(JACOBI_MAX_SWEEPS):
        # measure the off-diagonal mass entry-wise: subtracting the diagonal
        # from the full Frobenius norm would cancel catastrophically near
        # convergence and report a floor of ~sqrt(eps) * scale instead of 0
        off_diag = a - np.diag(np.diag(a))
        off = float(np.linalg.norm(off_diag))
        if off < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < skip:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1.0e8:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp, vq = vecs[:, p].copy(), vecs[:, q].copy()
                vecs[:, p] = c * vp - s * vq
                vecs[:, q] = s * vp + c * vq
    else:
        raise ArithmeticError("Jacobi iteration failed to converge")
    return np.diag(a).copy(), vecs


def hermitian_eigensystem(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending, deduplicated from the embedding) and vectors.

    Returns (d eigenvalues, d x d column matrix of complex eigenvectors
    forming an orthonormal basis).  Rejects input that is not Hermitian
    within 1e-10.
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    if h.shape != (d, d) or float(np.abs(h - h.conj().T).max()) > HERMITICITY_TOL:
        raise ValueError("matrix is not Hermitian")
    re, im = h.real, h.imag
    embed = np.block([[re, -im], [im, re]])
    eigs, vecs = _jacobi_eigensystem(embed)
    order = np.argsort(eigs, kind="stable")
    # The embedding doubles every eigenvalue (psi and i*psi give independent
    # real vectors), so keep one complex representative per pair.  Within a
    # degenerate cluster the pairs interleave arbitrarily, so Gram-Schmidt
    # against the already-kept vectors decides which candidates are new
    # complex directions rather than rotations of kept ones.
    scale = max(1.0, float(np.linalg.norm(embed)))
    values = np.empty(d)
    vectors = np.empty((d, d), dtype=complex)
    kept = 0
    for idx in order:
        if kept == d:
            break
        psi = vecs[:d, idx] + 1j * vecs[d:, idx]
        for col in range(kept):
            if abs(values[col] - eigs[idx]) > JACOBI_OFF_TOL * scale * 10:
                continue
            psi = psi - (vectors[:, col].conj() @ psi) * vectors[:, col]
        norm = float(np.linalg.norm(psi))
        if norm < 0.5:  # same complex ray as a kept vector, not a new direction
            continue
        values[kept] = eigs[idx]
        vectors[:, kept] = psi / norm
        kept += 1
    if kept != d:
        raise ArithmeticError("eigenvector pairing failed on embedded spectrum")
    return values, vectors


def min_eigenvalue(h: np.ndarray) -> float:
    """Smallest eigenvalue of a Hermitian matrix (absolute accuracy ~1e-13)."""
    values, _ = hermitian_eigensystem(h)
    return float(values[0])


def certify_facet(facet: Facet, proj: ProjectorList, epsilon: float = EPSILON) -> Certificate:
    """Certificate for one facet: strict, saturated or violated at tolerance epsilon."""
    op = facet_operator(facet, proj)
    values, vectors = hermitian_eigensystem(op)
    lam = float(values[0])
    margin = lam - facet.f
    if margin < -epsilon:
        psi = vectors[:, 0]
        witness = state_from_psi(proj.dim, psi)
        return Certificate(
            facet,
            lam,
            margin,
            STATUS_VIOLATED,
            witness,
            born_probabilities(witness, proj),
        )
    status = STATUS_SATURATED if margin <= epsilon else STATUS_STRICT
    return Certificate(facet, lam, margin, status)


def certify_facets(
    facets, proj: ProjectorList, epsilon: float = EPSILON
) -> CertificationReport:
    """Certify a facet collection in canonical order."""
    certs = tuple(
        certify_facet(facet, proj, epsilon)
        for facet in sorted(facets, key=Facet.key)
    )
    ok = all(c.status != STATUS_VIOLATED for c in certs)
    min_margin = min((c.margin for c in certs), default=None)
    return CertificationReport(certs, ok, min_margin)


def certify_polytope(
    v: VPolytope, proj: ProjectorList, epsilon: float = EPSILON
) -> CertificationReport:
    """Hull the vertex set and certify every facet."""
    return certify_facets(hull_facets(v).facets, proj, epsilon)


def violation_witness(cert: Certificate) -> tuple[QuantumState, ProbabilityVector]:
    """Witness state and probability vector of a violated certificate."""
    if cert.status != STATUS_VIOLATED:
        raise ValueError(f"certificate has status {cert.status!r}, not violated")
    assert cert.witness is not None and cert.witness_probabilities is not None
    return cert.witness, cert.witness_probabilities


# ---------------------------------------------------------------------------
# report serialization
# ---------------------------------------------------------------------------


def report_to_jsonable(report: CertificationReport) -> dict:
    return {
        "facets": [
            {
                "c": list(c.facet.c),
                "f": c.facet.f,
                "lambda_min": c.lambda_min,
                "margin": c.margin,
                "status": c.status,
            }
            for c in report.facets
        ],
        "pass": report.ok,
        "min_margin": report.min_margin,
    }


def write_report(path: str | Path, report: CertificationReport) -> None:
    Path(path).write_text(json.dumps(report_to_jsonable(report), indent=1) + "\n")
