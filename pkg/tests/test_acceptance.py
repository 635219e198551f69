"""Acceptance gate: the eight headline claims, each printing one line.

Run with `pytest -v`: the per-test PASSED/FAILED column is the per-criterion
verdict, and each test also prints a `criterion N: PASS/FAIL` line with the
measured numbers (shown with -rA or on failure).
"""
import math
import time

import numpy as np

from onticmodels.certifier import (
    STATUS_SATURATED,
    STATUS_VIOLATED,
    certify_facet,
    certify_polytope,
)
from onticmodels.factorization import (
    decompose_state,
    deterministic_measurement_matrices,
    factorization_residual,
    probvec_to_table_column,
    trivial_indeterministic_of,
)
from onticmodels.polytope import (
    Facet,
    enumerate_vertices,
    hull_facets,
    remove_vertex,
    trivial_inequalities,
)
from onticmodels.qstate import (
    bloch_radius,
    born_probabilities,
    purity_sphere_residual,
    random_pure_state,
)
from onticmodels.search import SearchConfig, compress, is_minimal, multi_seed


def _verdict(n: int, ok: bool, detail: str) -> None:
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {n}: {detail}"


def test_criterion_1_reference_lambda_regression(table1, table1_lambda, proj3):
    t0 = time.perf_counter()
    worst = 0.0
    for facet, ref in zip(table1.facets, table1_lambda):
        lam = certify_facet(facet, proj3).lambda_min
        worst = max(worst, abs(lam - ref))
    elapsed = time.perf_counter() - t0
    ok = len(table1.facets) == 39 and worst <= 5e-5 and elapsed < 5.0
    _verdict(
        1,
        ok,
        f"39 facet operators, worst |lambda - reference| = {worst:.3e} "
        f"(tolerance 5e-5), {elapsed:.2f}s",
    )


def test_criterion_2_initial_polytope_facets(initial3, proj3):
    h = hull_facets(initial3)
    keys = {f.key() for f in h.facets}
    expected = {f.key() for f in trivial_inequalities(3)}
    nonneg = sum(1 for f in h.facets if f.f == 0)
    sums = sum(1 for f in h.facets if f.f == -1)
    report = certify_polytope(initial3, proj3)
    saturated = all(c.status == STATUS_SATURATED for c in report.facets)
    ok = (
        len(h.facets) == 12
        and keys == expected
        and nonneg == 8
        and sums == 4
        and report.ok
        and saturated
    )
    _verdict(
        2,
        ok,
        f"{len(h.facets)} facets ({nonneg} nonnegativity + {sums} block sums), "
        f"all certified saturated = {saturated}",
    )


def test_criterion_3_vertex_recovery(qutrit51, model33):
    verts = enumerate_vertices(qutrit51)
    ontic = all(
        set(v) <= {0, 1}
        and all(sum(v[2 * k : 2 * k + 2]) <= 1 for k in range(4))
        for v in verts.vertices
    )
    back = hull_facets(model33)
    round_trip = {f.key() for f in back.facets} == {f.key() for f in qutrit51.facets}
    ok = len(verts.vertices) == 33 and ontic and round_trip
    _verdict(
        3,
        ok,
        f"51 inequalities -> {len(verts.vertices)} one-hot-or-zero vertices, "
        f"hull reproduces all 51 facets = {round_trip}",
    )


def test_criterion_4_minimality_of_the_33_state_model(model33, proj3):
    t0 = time.perf_counter()
    minimal, counterexample = is_minimal(model33, proj3, epsilon=1e-6)
    elapsed = time.perf_counter() - t0
    ok = minimal and counterexample is None and elapsed < 300.0
    _verdict(
        4,
        ok,
        f"all 33 single-vertex removals leak a quantum state "
        f"(epsilon 1e-6), {elapsed:.1f}s",
    )


def test_criterion_5_qubit_floor(cube, proj2):
    corner_lambda = -(3.0 + math.sqrt(3.0)) / 2.0
    all_leak = True
    for idx in range(8):
        reduced = hull_facets(remove_vertex(cube, idx + 1))
        certs = [certify_facet(g, proj2) for g in reduced.facets]
        if not any(c.status == STATUS_VIOLATED for c in certs):
            all_leak = False
    # removing the all-ones corner must expose the known facet exactly
    target = None
    for g in hull_facets(remove_vertex(cube, cube.vertices.index((1, 1, 1)) + 1)).facets:
        if g == Facet((-1, -1, -1), -2):
            target = certify_facet(g, proj2)
    corner_delta = abs(target.lambda_min - corner_lambda) if target else math.inf
    corner_ok = corner_delta <= 1e-9
    omegas = set()
    for seed in range(10):
        final, _ = compress(cube, proj2, SearchConfig(seed=seed))
        omegas.add(len(final.vertices))
    ok = all_leak and corner_ok and omegas == {8}
    _verdict(
        5,
        ok,
        f"each of 8 removals violates a facet; corner facet (-1,-1,-1|-2) "
        f"lambda_min within {corner_delta:.1e} of -(3+sqrt(3))/2; "
        f"compress at d=2 gives omega {sorted(omegas)} for 10 seeds",
    )


def test_criterion_6_search_soundness(initial3, proj3):
    seeds = list(range(1, 51))
    cfg = SearchConfig(seed=0)
    report = multi_seed(initial3, proj3, seeds, cfg)  # re-verifies every model
    sound = all(r.certified and r.minimal for r in report.results)
    reproducible = True
    for r in report.results:
        final, _ = compress(initial3, proj3, SearchConfig(seed=r.seed))
        if final.labels != r.model.labels or final.vertices != r.model.vertices:
            reproducible = False
    sizes = dict(report.histogram)
    best = min(sizes)
    note = ""
    if best < 33:
        note = " [flag: exceeds the best published size]"
    elif best > 36:
        note = " [flag: investigate the search strategy]"
    ok = len(report.results) == 50 and sound and reproducible
    _verdict(
        6,
        ok,
        f"50 seeds all certified+minimal, bit-reproducible = {reproducible}, "
        f"size distribution {sizes}, best {best} (seed {report.best_seed}){note}",
    )


def test_criterion_7_quantum_geometry(proj2, proj3):
    worst_purity = 0.0
    worst_radius = 0.0
    for seed in range(1000):
        q2 = random_pure_state(2, seed=seed)
        q3 = random_pure_state(3, seed=70_000 + seed)
        worst_purity = max(
            worst_purity,
            purity_sphere_residual(q2, proj2),
            purity_sphere_residual(q3, proj3),
        )
        worst_radius = max(worst_radius, abs(bloch_radius(q2, proj2) - 0.5))
    ok = worst_purity <= 1e-9 and worst_radius <= 1e-12
    _verdict(
        7,
        ok,
        f"1000 states per dimension: worst purity-sphere residual "
        f"{worst_purity:.2e} (<= 1e-9), worst |Bloch radius - 1/2| "
        f"{worst_radius:.2e} (<= 1e-12)",
    )


def test_criterion_8_factorization_contract(model33, proj3):
    model = deterministic_measurement_matrices(3, model33)
    worst = 0.0
    for seed in range(100):
        state = random_pure_state(3, seed=40_000 + seed)
        p = born_probabilities(state, proj3)
        w = decompose_state(p, model33)
        for x, m in enumerate(model.matrices, 1):
            produced = m @ w
            stated = list(p.block(x)) + [p.omitted(x)]
            worst = max(worst, float(np.abs(produced - np.array(stated)).max()))
    # the one-state-per-preparation construction on the published column
    table = probvec_to_table_column((0.93, 0.73, 0.59))
    trivial_model, weights = trivial_indeterministic_of(table)
    trivial_residual = factorization_residual(trivial_model, weights, table)
    ok = worst <= 1e-8 and trivial_residual == 0.0
    _verdict(
        8,
        ok,
        f"100 decompositions reproduce Born statistics within {worst:.2e} "
        f"(<= 1e-8); trivial construction residual {trivial_residual!r} (exactly 0)",
    )
