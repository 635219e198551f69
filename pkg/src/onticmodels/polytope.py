"""Exact 0/1 ontic-state polytopes: vertex/facet representations and conversions.

The ambient space is the flat probability layout of :mod:`onticmodels.qstate`:
D = d^2-1 coordinates, basis-major, one block of d-1 stored outcomes per
basis.  An ontic state assigns a definite outcome to every basis, so its
coordinate vector is 0/1 with at most one 1 per block (all-zero block =
the omitted outcome fires).  Facets are integer inequalities
sum_i c_i p_i >= f in primitive form.

Conversions in both directions run on the exact double description core
in :mod:`onticmodels.dd`; no floating point enters any V/H computation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import dd
from . import simplex

CONTAINS_TOL = 1e-9


class DegenerateVertexSetError(ValueError):
    """Vertex set does not affinely span the ambient space."""

    def __init__(self, affine_rank: int, dim: int):
        self.affine_rank = affine_rank
        self.dim = dim
        super().__init__(
            f"vertex set has affine rank {affine_rank}, facet enumeration "
            f"needs full rank {dim}"
        )


class UnboundedPolyhedronError(ValueError):
    """Facet system admits a recession direction; carries a certifying ray."""

    def __init__(self, ray: tuple[int, ...]):
        self.ray = ray
        super().__init__(f"polyhedron is unbounded along ray {ray}")


@dataclass(frozen=True)
class Facet:
    """Integer inequality sum_i c_i * p_i >= f."""

    c: tuple[int, ...]
    f: int

    def evaluate(self, point):
        return sum(ci * pi for ci, pi in zip(self.c, point))

    def key(self) -> tuple:
        return (*self.c, self.f)


@dataclass(frozen=True)
class VPolytope:
    """Finite vertex list with optional ontic labels, exact coordinates."""

    dim: int
    vertices: tuple[tuple, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertices")
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError(f"vertex {v} has wrong dimension, expected {self.dim}")
        if self.labels is not None and len(self.labels) != len(self.vertices):
            raise ValueError("label count does not match vertex count")

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class HPolytope:
    """Finite facet list, canonically sorted."""

    dim: int
    facets: tuple[Facet, ...]

    def __len__(self) -> int:
        return len(self.facets)


def canonicalize(c, f) -> Facet:
    """Normalize a rational inequality to primitive integer form.

    Scales by the positive lcm of denominators, then divides out the gcd;
    the inequality orientation (>= f) is preserved.
    """
    vec = dd.rational_to_primitive(tuple(Fraction(x) for x in c) + (Fraction(f),))
    return Facet(vec[:-1], vec[-1])


# ---------------------------------------------------------------------------
# ontic vertex sets
# ---------------------------------------------------------------------------


def ontic_vertex(d: int, digits: tuple[int, ...]) -> tuple[int, ...]:
    """Coordinates of the ontic state with the given per-basis outcome digits.

    digits[k] in 0..d-1 is the outcome of basis k+1; digit d-1 is the
    omitted outcome, encoded as an all-zero block.
    """
    coords = []
    for t in digits:
        coords.extend(1 if t == i else 0 for i in range(d - 1))
    return tuple(coords)


def ontic_digits(d: int, coords) -> tuple[int, ...]:
    """Inverse of :func:`ontic_vertex`; raises if coords is not an ontic vertex."""
    digits = []
    for k in range(d + 1):
        block = coords[k * (d - 1) : (k + 1) * (d - 1)]
        ones = [i for i, x in enumerate(block) if x == 1]
        if any(x not in (0, 1) for x in block) or len(ones) > 1:
            raise ValueError(f"block {block} is not one-hot-or-zero")
        digits.append(ones[0] if ones else d - 1)
    return tuple(digits)


def ontic_label(d: int, digits: tuple[int, ...]) -> str:
    """Digit-string label, most significant basis first (basis d+1 .. 1)."""
    return "".join(str(t) for t in reversed(digits))


def initial_ontic_polytope(d: int) -> VPolytope:
    """All d^(d+1) deterministic outcome assignments as labeled 0/1 vertices.

    Vertex j (j = 1..d^(d+1)) carries the base-d digits of j-1, least
    significant digit = basis 1.
    """
    if d < 2:
        raise ValueError(f"dimension {d} not supported")
    vertices = []
    labels = []
    for j in range(d ** (d + 1)):
        digits = tuple((j // d**k) % d for k in range(d + 1))
        vertices.append(ontic_vertex(d, digits))
        labels.append(ontic_label(d, digits))
    return VPolytope((d + 1) * (d - 1), tuple(vertices), tuple(labels))


def trivial_inequalities(d: int) -> list[Facet]:
    """Facets of the initial polytope: positivity plus per-basis block sums.

    Per basis: p_i >= 0 for each stored outcome and -sum_i p_i >= -1
    (the implied outcome's positivity); (d+1)*d inequalities total.
    """
    dim = (d + 1) * (d - 1)
    facets = []
    for k in range(d + 1):
        base = k * (d - 1)
        for i in range(d - 1):
            unit = tuple(1 if j == base + i else 0 for j in range(dim))
            facets.append(Facet(unit, 0))
        block = tuple(-1 if base <= j < base + d - 1 else 0 for j in range(dim))
        facets.append(Facet(block, -1))
    return sorted(facets, key=Facet.key)


def attach_ontic_labels(v: VPolytope, d: int) -> VPolytope:
    labels = tuple(ontic_label(d, ontic_digits(d, vert)) for vert in v.vertices)
    return VPolytope(v.dim, v.vertices, labels)


def remove_vertex(v: VPolytope, index: int) -> VPolytope:
    """Copy of v without the vertex at the given 1-based index.

    Indices are 1-based to line up with ontic state numbering (vertex j
    of the initial polytope is the j-th in label order).
    """
    if not 1 <= index <= len(v.vertices):
        raise IndexError(f"vertex index {index} out of range 1..{len(v.vertices)}")
    i = index - 1
    vertices = v.vertices[:i] + v.vertices[i + 1 :]
    labels = None
    if v.labels is not None:
        labels = v.labels[:i] + v.labels[i + 1 :]
    return VPolytope(v.dim, vertices, labels)


# ---------------------------------------------------------------------------
# representation conversion
# ---------------------------------------------------------------------------


def hull_facets(v: VPolytope) -> HPolytope:
    """Complete irredundant facet list of conv(vertices), exact.

    Facets of the polytope are the extreme rays of the polar-side cone
    {(c, f) : c . vertex - f >= 0 for every vertex}; each comes out as a
    primitive integer Facet.  Requires the vertices to affinely span the
    ambient space.

    Rows are fed to the cone core in sorted vertex order, so the result
    is a pure function of the vertex *set*.
    """
    rows = sorted(
        dd.rational_to_primitive(tuple(vert) + (-1,)) for vert in v.vertices
    )
    try:
        rays = dd.extreme_rays(rows)
    except dd.NotPointedError as exc:
        raise DegenerateVertexSetError(exc.rank - 1, v.dim) from None
    facets = [Facet(r[:-1], r[-1]) for r in rays]
    return HPolytope(v.dim, tuple(sorted(facets, key=Facet.key)))


def enumerate_vertices(h: HPolytope) -> VPolytope:
    """All vertices of {p : c . p >= f for every facet}, exact.

    Vertices are the extreme rays of the homogenization cone
    {(x0, p) : c . p - f*x0 >= 0, x0 >= 0} with x0 > 0, scaled to x0 = 1.
    A ray with x0 = 0 (or a lineality direction) certifies unboundedness
    and is raised with the error.
    """
    dim = h.dim
    rows = [(1,) + (0,) * dim]
    rows.extend((-facet.f,) + facet.c for facet in h.facets)
    try:
        rays = dd.extreme_rays(rows)
    except dd.NotPointedError as exc:
        # the x0 >= 0 row forces direction[0] == 0, so the tail is a ray of
        # the recession cone
        raise UnboundedPolyhedronError(exc.direction[1:]) from None
    for r in rays:
        if r[0] == 0:
            raise UnboundedPolyhedronError(r[1:])
    vertices = []
    for r in rays:
        x0 = r[0]
        vert = tuple(
            int(q) if q.denominator == 1 else q
            for q in (Fraction(x, x0) for x in r[1:])
        )
        vertices.append(vert)
    return VPolytope(dim, tuple(sorted(vertices)))


def contains(v: VPolytope, point, tol: float = CONTAINS_TOL) -> bool:
    """Membership of a point in conv(vertices).

    Exact LP feasibility for rational input; facet evaluation within tol
    for float input.
    """
    if len(point) != v.dim:
        raise ValueError(f"point dimension {len(point)} != {v.dim}")
    if all(isinstance(x, (int, Fraction)) for x in point):
        feasible, _, _ = simplex.convex_combination(v.vertices, point)
        return feasible
    hull = hull_facets(v)
    return all(
        float(facet.evaluate(point)) >= facet.f - tol for facet in hull.facets
    )


# ---------------------------------------------------------------------------
# .vtx / .fct files: ASCII, '#' comments, LF line endings
# ---------------------------------------------------------------------------


def write_vtx(path: str | Path, v: VPolytope, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    for vert in v.vertices:
        if any(not isinstance(x, int) for x in vert):
            raise ValueError(f"vertex {vert} is not integral; .vtx files hold integers")
        lines.append(" ".join(str(x) for x in vert))
    Path(path).write_text("\n".join(lines) + "\n")


def read_vtx(path: str | Path) -> VPolytope:
    vertices = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vertices.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-integer vertex entry") from None
    if not vertices:
        raise ValueError(f"{path}: no vertices")
    widths = {len(v) for v in vertices}
    if len(widths) != 1:
        raise ValueError(f"{path}: inconsistent vertex dimensions {sorted(widths)}")
    return VPolytope(widths.pop(), tuple(vertices))


def write_fct(path: str | Path, h: HPolytope, comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {part}" for part in comment.splitlines())
    for facet in h.facets:
        lines.append(" ".join(str(x) for x in (*facet.c, facet.f)))
    Path(path).write_text("\n".join(lines) + "\n")


def read_fct(path: str | Path) -> HPolytope:
    facets = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(x) for x in line.split()]
        except ValueError:
            raise ValueError(f"{path}:{lineno}: non-integer facet entry") from None
        if len(nums) < 2:
            raise ValueError(f"{path}:{lineno}: facet needs at least c and f")
        facets.append(Facet(tuple(nums[:-1]), nums[-1]))
    widths = {len(facet.c) for facet in facets}
    if len(widths) > 1:
        raise ValueError(f"{path}: inconsistent facet dimensions {sorted(widths)}")
    dim = widths.pop() if widths else 0
    return HPolytope(dim, tuple(facets))
