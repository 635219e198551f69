"""Exact polytope geometry: hulls, vertex enumeration, files, and errors."""
from fractions import Fraction

import numpy as np
import pytest

from onticmodels import dd
from onticmodels.polytope import (
    DegenerateVertexSetError,
    Facet,
    HPolytope,
    UnboundedPolyhedronError,
    VPolytope,
    attach_ontic_labels,
    canonicalize,
    contains,
    enumerate_vertices,
    hull_facets,
    initial_ontic_polytope,
    ontic_digits,
    ontic_label,
    ontic_vertex,
    read_fct,
    read_vtx,
    remove_vertex,
    trivial_inequalities,
    write_fct,
    write_vtx,
)
from onticmodels.rng import SplitMix64


def shuffled(items, seed):
    rng = SplitMix64(seed)
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = rng.randrange(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def affine_rank(points) -> int:
    base = points[0]
    rows = [
        tuple(Fraction(a) - Fraction(b) for a, b in zip(p, base)) for p in points[1:]
    ]
    return dd.row_rank(rows) if rows else 0


# ---------------------------------------------------------------------------
# initial polytopes and labels
# ---------------------------------------------------------------------------


def test_cube_vertices_and_labels(cube):
    assert cube.dim == 3
    assert len(cube.vertices) == 8
    # state 1 answers outcome 0 everywhere: all listed probabilities are 1
    assert cube.vertices[0] == (1, 1, 1) and cube.labels[0] == "000"
    # state 5 has binary digits 100: outcome 1 for the third basis only
    assert cube.vertices[4] == (1, 1, 0) and cube.labels[4] == "100"
    assert cube.vertices[7] == (0, 0, 0) and cube.labels[7] == "111"
    assert set(cube.vertices) == {(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)}


def test_initial3_shape_and_labels(initial3):
    assert initial3.dim == 8
    assert len(initial3.vertices) == 81
    assert len(set(initial3.vertices)) == 81
    assert initial3.labels[0] == "0000"
    assert initial3.labels[80] == "2222"
    for vert, label in zip(initial3.vertices, initial3.labels):
        digits = ontic_digits(3, vert)
        assert ontic_label(3, digits) == label
        assert ontic_vertex(3, digits) == vert
        blocks = [vert[2 * k : 2 * k + 2] for k in range(4)]
        assert all(sum(b) <= 1 and set(b) <= {0, 1} for b in blocks)


def test_ontic_digits_rejects_non_ontic():
    with pytest.raises(ValueError):
        ontic_digits(3, (1, 1, 0, 0, 0, 0, 0, 0))


def test_initial_polytope_rejects_tiny_dimension():
    with pytest.raises(ValueError):
        initial_ontic_polytope(1)


# ---------------------------------------------------------------------------
# hull facets
# ---------------------------------------------------------------------------


def test_cube_hull_is_the_six_box_facets(cube):
    h = hull_facets(cube)
    expected = {
        Facet((1, 0, 0), 0).key(), Facet((0, 1, 0), 0).key(), Facet((0, 0, 1), 0).key(),
        Facet((-1, 0, 0), -1).key(), Facet((0, -1, 0), -1).key(), Facet((0, 0, -1), -1).key(),
    }
    assert {f.key() for f in h.facets} == expected
    assert {f.key() for f in h.facets} == {f.key() for f in trivial_inequalities(2)}


def test_initial3_hull_is_the_twelve_trivial_facets(initial3):
    h = hull_facets(initial3)
    assert len(h.facets) == 12
    assert {f.key() for f in h.facets} == {f.key() for f in trivial_inequalities(3)}
    nonneg = [f for f in h.facets if f.f == 0]
    sums = [f for f in h.facets if f.f == -1]
    assert len(nonneg) == 8 and len(sums) == 4
    for f in sums:
        assert sorted(f.c) == [-1, -1, 0, 0, 0, 0, 0, 0]


def test_hull_facets_ignores_vertex_order(cube, initial3):
    for poly, seed in ((cube, 1), (initial3, 2)):
        mixed = VPolytope(poly.dim, tuple(shuffled(poly.vertices, seed)))
        assert {f.key() for f in hull_facets(mixed).facets} == {
            f.key() for f in hull_facets(poly).facets
        }


def test_hull_facets_are_supporting_and_tight(cube, initial3, model33):
    for poly in (cube, initial3, model33):
        h = hull_facets(poly)
        for facet in h.facets:
            values = [facet.evaluate(v) for v in poly.vertices]
            assert min(values) >= facet.f  # supporting
            tight = [v for v, val in zip(poly.vertices, values) if val == facet.f]
            assert affine_rank(tight) == poly.dim - 1  # genuinely a facet


def test_cube_hull_cross_checked_against_qhull(cube):
    scipy_spatial = pytest.importorskip("scipy.spatial")
    hull = scipy_spatial.ConvexHull(np.array(cube.vertices, dtype=float))
    planes = set()
    for eq in hull.equations:  # n.x + offset <= 0
        n, off = eq[:-1], eq[-1]
        scale = max(abs(x) for x in n)
        planes.add(tuple(round(x / scale, 9) for x in list(n) + [off]))
    ours = set()
    for f in hull_facets(cube).facets:  # c.x >= f  ->  -c.x + f <= 0
        n = [-x for x in f.c]
        scale = max(abs(x) for x in n)
        ours.add(tuple(round(x / scale, 9) for x in n + [f.f]))
    assert ours == planes


def test_degenerate_vertex_set_reports_affine_rank():
    flat = VPolytope(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)))
    with pytest.raises(DegenerateVertexSetError) as err:
        hull_facets(flat)
    assert err.value.affine_rank == 2
    assert err.value.dim == 3
    with pytest.raises(DegenerateVertexSetError):
        hull_facets(VPolytope(2, ((0, 0), (1, 1))))


# ---------------------------------------------------------------------------
# vertex enumeration
# ---------------------------------------------------------------------------


def test_cube_vertices_from_six_inequalities(cube):
    v = enumerate_vertices(hull_facets(cube))
    assert set(v.vertices) == set(cube.vertices)


def test_initial3_round_trip(initial3):
    v = enumerate_vertices(hull_facets(initial3))
    assert set(v.vertices) == set(initial3.vertices)


def test_qutrit51_vertices_are_the_33_states(qutrit51, model33):
    assert len(model33.vertices) == 33
    ontic = set(initial_ontic_polytope(3).vertices)
    for vert in model33.vertices:
        assert vert in ontic
    h = hull_facets(model33)
    assert {f.key() for f in h.facets} == {f.key() for f in qutrit51.facets}


def test_enumerate_vertices_cross_checked_against_halfspaces(qutrit51, model33):
    scipy_spatial = pytest.importorskip("scipy.spatial")
    interior = np.full(8, 1.0 / 3.0)
    for f in qutrit51.facets:
        assert f.evaluate(interior) > f.f + 1e-9
    halfspaces = np.array(
        [[-c for c in f.c] + [f.f] for f in qutrit51.facets], dtype=float
    )
    hs = scipy_spatial.HalfspaceIntersection(halfspaces, interior)
    unique = {tuple(round(x, 6) for x in pt) for pt in hs.intersections}
    assert unique == {tuple(float(x) for x in v) for v in model33.vertices}


def test_unbounded_system_raises_with_certifying_ray():
    h = HPolytope(2, (Facet((1, 0), 0), Facet((0, 1), 0)))
    with pytest.raises(UnboundedPolyhedronError) as err:
        enumerate_vertices(h)
    ray = err.value.ray
    assert any(x != 0 for x in ray)
    assert all(f.evaluate(ray) >= 0 for f in h.facets)


# ---------------------------------------------------------------------------
# membership, removal, canonical form
# ---------------------------------------------------------------------------


def test_contains_exact_and_float_paths(cube):
    assert contains(cube, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    assert contains(cube, (0.5, 0.5, 0.5))
    for vert in cube.vertices:
        assert contains(cube, vert)
    assert not contains(cube, (Fraction(3, 2), Fraction(1, 2), Fraction(1, 2)))
    assert not contains(cube, (1.2, 0.5, 0.5))
    with pytest.raises(ValueError):
        contains(cube, (0.5, 0.5))


def test_contains_after_corner_removal(cube):
    p2 = remove_vertex(cube, 1)  # drops coordinates (1, 1, 1)
    assert not contains(p2, (0.9, 0.9, 0.9))
    assert contains(p2, (0.5, 0.5, 0.5))


def test_remove_vertex_is_one_based(cube):
    without_first = remove_vertex(cube, 1)
    assert (1, 1, 1) not in without_first.vertices
    assert without_first.labels == cube.labels[1:]
    without_last = remove_vertex(cube, 8)
    assert (0, 0, 0) not in without_last.vertices
    for bad in (0, 9, -1):
        with pytest.raises(IndexError):
            remove_vertex(cube, bad)
    # removing then re-adding restores the original set
    restored = set(without_first.vertices) | {(1, 1, 1)}
    assert restored == set(cube.vertices)


def test_canonicalize_examples():
    assert canonicalize((-2, -2, -2), -4) == Facet((-1, -1, -1), -2)
    assert canonicalize((Fraction(1, 3), Fraction(2, 3)), Fraction(1, 3)) == Facet(
        (1, 2), 1
    )
    assert canonicalize((0, 4, -6), 2) == Facet((0, 2, -3), 1)
    # all-zero normals keep gcd 1 by convention rather than erroring
    assert canonicalize((0, 0, 0), 2) == Facet((0, 0, 0), 1)


def test_table1_row_one_rederived_from_the_33_states(model33, table1):
    h = hull_facets(model33)
    keys = {f.key() for f in h.facets}
    assert Facet((-2, -1, -2, -1, 1, -1, -1, -2), -5).key() in keys
    for f in table1.facets:
        assert f.key() in keys


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def test_vtx_round_trip(tmp_path, cube):
    path = tmp_path / "cube.vtx"
    write_vtx(path, cube, comment="unit cube")
    back = read_vtx(path)
    assert back.dim == 3
    assert back.vertices == cube.vertices
    assert path.read_text().startswith("# unit cube\n")


def test_fct_round_trip_and_empty_file(tmp_path, qutrit51):
    path = tmp_path / "q.fct"
    write_fct(path, qutrit51, comment="qutrit facets")
    back = read_fct(path)
    assert back.dim == 8
    assert {f.key() for f in back.facets} == {f.key() for f in qutrit51.facets}
    empty = tmp_path / "empty.fct"
    empty.write_text("# nothing here\n")
    assert read_fct(empty).facets == ()


def test_malformed_files_are_rejected(tmp_path):
    ragged = tmp_path / "ragged.vtx"
    ragged.write_text("1 0 1\n0 1\n")
    with pytest.raises(ValueError):
        read_vtx(ragged)
    words = tmp_path / "words.fct"
    words.write_text("one two three four\n")
    with pytest.raises(ValueError):
        read_fct(words)


def test_shipped_fixture_matches_generated_facets(fixtures_dir, model33):
    shipped = read_fct(fixtures_dir / "qutrit51.fct")
    regenerated = hull_facets(model33)
    assert {f.key() for f in shipped.facets} == {f.key() for f in regenerated.facets}
