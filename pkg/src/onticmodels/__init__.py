"""Ontological models of MUB statistics and their compression.

The package walks the whole pipeline: build mutually unbiased bases
(`mub`), map quantum states to independent outcome probabilities
(`qstate`), handle 0/1 ontic polytopes exactly (`polytope`), certify
facets against all quantum states via minimax eigenvalues (`certifier`),
factorize data tables through ontic models (`factorization`), compress
models by seeded greedy vertex removal (`search`), and report campaigns
with figures (`report`).  `cli` exposes everything as a command line.
"""

__version__ = "0.1.0"

from .certifier import (
    Certificate,
    CertificationReport,
    certify_facet,
    certify_facets,
    certify_polytope,
    facet_operator,
    min_eigenvalue,
    violation_witness,
)
from .factorization import (
    DataTable,
    InfeasibleDecompositionError,
    OntologicalModel,
    decompose_state,
    deterministic_measurement_matrices,
    factorization_residual,
    model_vertex_polytope,
    probvec_to_table_column,
    prune_model,
    read_model,
    trivial_indeterministic_of,
    write_model,
)
from .mub import MubSet, ProjectorList, build_mub, projectors, read_mub, verify_mub, write_mub
from .polytope import (
    DegenerateVertexSetError,
    Facet,
    HPolytope,
    UnboundedPolyhedronError,
    VPolytope,
    canonicalize,
    contains,
    enumerate_vertices,
    hull_facets,
    initial_ontic_polytope,
    read_fct,
    read_vtx,
    remove_vertex,
    trivial_inequalities,
    write_fct,
    write_vtx,
)
from .qstate import (
    ProbabilityVector,
    QuantumState,
    bloch_radius,
    born_probabilities,
    purity_sphere_residual,
    random_pure_state,
    read_state,
    state_from_psi,
    state_from_rho,
    write_state,
)
from .search import (
    CampaignReport,
    SearchConfig,
    SearchTrace,
    UncertifiedInputError,
    compress,
    is_minimal,
    multi_seed,
    write_trace,
)

__all__ = [
    "__version__",
    "Certificate",
    "CertificationReport",
    "certify_facet",
    "certify_facets",
    "certify_polytope",
    "facet_operator",
    "min_eigenvalue",
    "violation_witness",
    "DataTable",
    "InfeasibleDecompositionError",
    "OntologicalModel",
    "decompose_state",
    "deterministic_measurement_matrices",
    "factorization_residual",
    "model_vertex_polytope",
    "probvec_to_table_column",
    "prune_model",
    "read_model",
    "trivial_indeterministic_of",
    "write_model",
    "MubSet",
    "ProjectorList",
    "build_mub",
    "projectors",
    "read_mub",
    "verify_mub",
    "write_mub",
    "DegenerateVertexSetError",
    "Facet",
    "HPolytope",
    "UnboundedPolyhedronError",
    "VPolytope",
    "canonicalize",
    "contains",
    "enumerate_vertices",
    "hull_facets",
    "initial_ontic_polytope",
    "read_fct",
    "read_vtx",
    "remove_vertex",
    "trivial_inequalities",
    "write_fct",
    "write_vtx",
    "ProbabilityVector",
    "QuantumState",
    "bloch_radius",
    "born_probabilities",
    "purity_sphere_residual",
    "random_pure_state",
    "read_state",
    "state_from_psi",
    "state_from_rho",
    "write_state",
    "CampaignReport",
    "SearchConfig",
    "SearchTrace",
    "UncertifiedInputError",
    "compress",
    "is_minimal",
    "multi_seed",
    "write_trace",
]
