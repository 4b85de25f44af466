"""Exact rational polyhedral kernel.

Convex hulls, Minkowski sums, normal fans and deterministic simplicial
refinement, all over arbitrary-precision integers and rationals. No floating
point enters any predicate, so results are reproducible byte for byte:
input points are deduplicated and sorted lexicographically, and the
incremental (placing) insertion order is fixed by that sort.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .linalg import (
    det_int,
    dot,
    primitive_vector,
    rank_fraction,
    scale_to_integer,
    solve_rectangular,
    vec_gcd,
)


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Incremental exact convex hull (beneath-beyond with placing order)
# ---------------------------------------------------------------------------


@dataclass
class HullResult:
    """Full-dimensional hull of integer points in dimension d >= 1."""

    points: list            # all (deduplicated, lex-sorted) input points
    vertex_ids: list        # indices of hull vertices, sorted lex by point
    facets: list            # (normal, offset, frozenset of boundary point ids)
    triangulation: list     # d-simplices (point id tuples) tiling the hull


def _facet_normal(points, ids, d):
    """Primitive normal of the hyperplane through d affinely independent points."""
    base = points[ids[0]]
    rows = [tuple(points[i][j] - base[j] for j in range(d)) for i in ids[1:]]
    normal = []
    for j in range(d):
        minor = [[row[jj] for jj in range(d) if jj != j] for row in rows]
        normal.append((-1) ** j * det_int(minor))
    if all(x == 0 for x in normal):
        return None, None
    normal = tuple(normal)
    offset = dot(normal, base)
    g = gcd(vec_gcd(normal), abs(offset))
    if g > 1:
        normal = tuple(x // g for x in normal)
        offset //= g
    return normal, offset


def _orient(normal, offset, ref_scaled, scale):
    # Outer orientation: interior reference strictly beneath the facet.
    side = dot(normal, ref_scaled) - offset * scale
    if side > 0:
        return tuple(-x for x in normal), -offset
    if side == 0:
        raise GeometryError("reference point on facet hyperplane")
    return normal, offset


def convex_hull_fulldim(points, want_triangulation=False, insertion_reverse=False):
    """Exact hull of full-dimensional integer point sets (dim >= 1)."""
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    d = len(pts[0])

    if d == 1:
        lo, hi = pts[0], pts[-1]
        ids = sorted({0, len(pts) - 1})
        facets = [((-1,), -lo[0], frozenset({0})),
                  ((1,), hi[0], frozenset({len(pts) - 1}))]
        tri = [(i, i + 1) for i in range(len(pts) - 1)] if want_triangulation else []
        return HullResult(pts, ids, facets, tri)

    sequence = list(range(len(pts)))
    if insertion_reverse:
        sequence.reverse()

    # Greedy initial simplex: first affinely independent set in placing order.
    simplex = [sequence[0]]
    for i in sequence[1:]:
        rows = [tuple(pts[j][c] - pts[simplex[0]][c] for c in range(d)) for j in simplex[1:]]
        cand = tuple(pts[i][c] - pts[simplex[0]][c] for c in range(d))
        if rank_fraction(rows + [cand]) > len(rows):
            simplex.append(i)
        if len(simplex) == d + 1:
            break
    if len(simplex) < d + 1:
        raise GeometryError("points are not full-dimensional")

    ref_scaled = tuple(sum(pts[i][j] for i in simplex) for j in range(d))
    scale = d + 1

    facets = {}
    ridges = {}
    next_id = [0]
    triangulation = [tuple(simplex)] if want_triangulation else []

    def add_facet(ids):
        normal, offset = _facet_normal(pts, ids, d)
        if normal is None:
            raise GeometryError("degenerate facet")
        normal, offset = _orient(normal, offset, ref_scaled, scale)
        fid = next_id[0]
        next_id[0] += 1
        facets[fid] = (normal, offset, tuple(sorted(ids)))
        for ridge in combinations(sorted(ids), d - 1):
            ridges.setdefault(ridge, set()).add(fid)
        return fid

    def remove_facet(fid):
        _, _, ids = facets.pop(fid)
        for ridge in combinations(ids, d - 1):
            ridges[ridge].discard(fid)
            if not ridges[ridge]:
                del ridges[ridge]

    for subset in combinations(simplex, d):
        add_facet(subset)

    in_simplex = set(simplex)
    for i in sequence:
        if i in in_simplex:
            continue
        p = pts[i]
        visible = [fid for fid, (n, b, _) in facets.items() if dot(n, p) > b]
        if not visible:
            continue
        visible_set = set(visible)
        horizon = []
        for fid in visible:
            _, _, ids = facets[fid]
            for ridge in combinations(ids, d - 1):
                others = ridges[ridge] - visible_set
                if others:
                    horizon.append(ridge)
            if want_triangulation:
                triangulation.append(tuple(sorted(ids + (i,))))
        for fid in visible:
            remove_facet(fid)
        for ridge in horizon:
            add_facet(ridge + (i,))

    # Merge simplicial facets sharing a hyperplane into true facets.
    merged = {}
    for normal, offset, ids in facets.values():
        merged.setdefault((normal, offset), set()).update(ids)

    true_facets = []
    boundary_ids = set()
    for (normal, offset), ids in sorted(merged.items()):
        true_facets.append((normal, offset, frozenset(ids)))
        boundary_ids.update(ids)

    vertex_ids = []
    for i in sorted(boundary_ids):
        normals = [n for n, b, ids in true_facets if i in ids]
        if rank_fraction(normals) == d:
            vertex_ids.append(i)

    return HullResult(pts, vertex_ids, true_facets, triangulation)


# ---------------------------------------------------------------------------
# Lattice polytopes of any intrinsic dimension
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of integer points, tracked in exact arithmetic.

    ``vertices`` are lex-sorted; ``dim`` is the intrinsic dimension. Facet
    data lives in intrinsic coordinates (a fixed coordinate subset of the
    ambient space restricted to the affine hull).
    """

    points: tuple
    vertices: tuple
    dim: int
    _base: tuple = field(repr=False)
    _directions: tuple = field(repr=False)          # basis of affine hull directions
    _coords: tuple = field(repr=False)              # ambient coordinate subset used
    _facets: tuple = field(repr=False)              # (normal, offset) intrinsic, outer
    _facet_vertices: tuple = field(repr=False)      # per facet: vertex tuples (ambient)

    @property
    def ambient_dim(self):
        return len(self.points[0])

    def _intrinsic(self, point):
        """Intrinsic coordinates of an ambient point, or None if off the hull's
        affine span."""
        diff = tuple(a - b for a, b in zip(point, self._base))
        if self.dim == 0:
            return () if all(x == 0 for x in diff) else None
        if self._directions and solve_rectangular(
                tuple(zip(*self._directions)), diff) is None:
            return None
        return tuple(diff[c] for c in self._coords)

    def facet_inequalities(self):
        """Outer facet pairs (normal, offset) in intrinsic coordinates."""
        return self._facets

    def contains(self, point, strict=False):
        q = self._intrinsic(point)
        if q is None:
            return False
        for normal, offset in self._facets:
            s = dot(normal, q)
            if s > offset or (strict and s == offset):
                return False
        return True

    def vertex_count(self):
        return len(self.vertices)

    def edge_count(self):
        """Number of 1-faces, via vertex/facet incidence."""
        if self.dim < 1:
            return 0
        if self.dim == 1:
            return 1
        vmap = {v: {i for i, verts in enumerate(self._facet_vertices) if v in verts}
                for v in self.vertices}
        count = 0
        for u, w in combinations(self.vertices, 2):
            common = vmap[u] & vmap[w]
            if not common:
                continue
            face = set(self.vertices)
            for i in common:
                face &= set(self._facet_vertices[i])
            if face == {u, w}:
                count += 1
        return count

    def facet_count(self):
        return len(self._facets)

    def dilate(self, factor):
        if factor < 0:
            raise GeometryError("dilation factor must be nonnegative")
        return convex_hull([tuple(factor * x for x in v) for v in self.vertices])


def convex_hull(points):
    """Exact convex hull of integer points; handles any intrinsic dimension."""
    if not points:
        raise GeometryError("empty point set")
    pts = sorted(set(tuple(int(x) for x in p) for p in points))
    ambient = len(pts[0])
    if any(len(p) != ambient for p in pts):
        raise GeometryError("inconsistent ambient dimension")
    base = pts[0]

    # Affine hull: greedy basis of difference vectors, in lex order.
    directions = []
    coords = []
    for p in pts[1:]:
        diff = tuple(a - b for a, b in zip(p, base))
        if rank_fraction(directions + [diff]) > len(directions):
            directions.append(diff)
    dim = len(directions)

    if dim == 0:
        return LatticePolytope(tuple(pts), (base,), 0, base, (), (), (), ())

    # Pick a coordinate subset on which the direction space projects bijectively.
    matrix = list(zip(*directions))   # ambient x dim
    chosen = []
    for c in range(ambient):
        if rank_fraction([matrix[j] for j in chosen + [c]]) > len(chosen):
            chosen.append(c)
        if len(chosen) == dim:
            break
    coords = tuple(chosen)

    intrinsic_pts = [tuple(p[c] - base[c] for c in coords) for p in pts]
    hull = convex_hull_fulldim(intrinsic_pts)
    back = {tuple(q): p for q, p in zip(intrinsic_pts, pts)}
    vertices = tuple(sorted(back[hull.points[i]] for i in hull.vertex_ids))
    facet_pairs = tuple((n, b) for n, b, _ in hull.facets)
    facet_vertices = tuple(
        tuple(sorted(back[hull.points[i]] for i in ids if back[hull.points[i]] in vertices))
        for n, b, ids in hull.facets)
    return LatticePolytope(tuple(pts), vertices, dim, base, tuple(directions),
                           coords, facet_pairs, facet_vertices)


def minkowski_sum(A: LatticePolytope, B: LatticePolytope) -> LatticePolytope:
    if A.ambient_dim != B.ambient_dim:
        raise GeometryError("ambient dimension mismatch")
    sums = {tuple(a + b for a, b in zip(u, v)) for u in A.vertices for v in B.vertices}
    return convex_hull(sums)


def minkowski_sum_list(polys):
    polys = list(polys)
    if not polys:
        raise GeometryError("empty Minkowski sum")
    acc = polys[0]
    for p in polys[1:]:
        acc = minkowski_sum(acc, p)
    return acc


def relative_interior_contains(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """True iff Q lies in the relative interior of P (within P's affine hull)."""
    if P.ambient_dim != Q.ambient_dim:
        raise GeometryError("ambient dimension mismatch")
    for v in Q.vertices:
        q = P._intrinsic(v)
        if q is None:
            return False
        for normal, offset in P.facet_inequalities():
            if dot(normal, q) >= offset:
                return False
    return True


# ---------------------------------------------------------------------------
# Fans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalCone:
    """Polyhedral cone spanned by primitive integer generators."""

    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators",
                           tuple(tuple(int(x) for x in g) for g in self.generators))

    @property
    def dim_ambient(self):
        return len(self.generators[0])

    def is_simplicial(self):
        n = self.dim_ambient
        return len(self.generators) == n and det_int(self.generators) != 0

    @property
    def orientation(self):
        return 1 if det_int(self.generators) > 0 else -1

    def _facet_normals(self):
        # Facets of the cone are the offset-zero facets of conv({0} U generators).
        n = self.dim_ambient
        if len(self.generators) == n:
            normals = []
            for j in range(n):
                rows = [g for i, g in enumerate(self.generators) if i != j]
                normal = []
                for c in range(n):
                    minor = [[row[cc] for cc in range(n) if cc != c] for row in rows]
                    normal.append((-1) ** c * det_int(minor))
                normal = primitive_vector(normal)
                if dot(normal, self.generators[j]) < 0:
                    normal = tuple(-x for x in normal)
                normals.append(normal)
            return tuple(normals)
        origin = tuple(0 for _ in range(n))
        hull = convex_hull_fulldim(list(self.generators) + [origin])
        inner = []
        for normal, offset, _ in hull.facets:
            if offset == 0:
                inner.append(tuple(-x for x in normal))
        return tuple(inner)

    def contains(self, y, strict=False):
        """Exact membership; ``strict`` tests the topological interior."""
        for normal in self._facet_normals():
            s = dot(normal, y)
            if s < 0 or (strict and s == 0):
                return False
        return True

    def interior_point(self):
        return tuple(sum(g[j] for g in self.generators)
                     for j in range(self.dim_ambient))


@dataclass(frozen=True)
class PolyhedralFan:
    """Fan given by primitive rays and maximal cones as ray index sets."""

    rays: tuple
    maximal_cones: tuple
    complete_flag: bool = True
    parent_cones: tuple = None    # set by simplicial_refine

    def __post_init__(self):
        object.__setattr__(self, "rays",
                           tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "maximal_cones",
                           tuple(tuple(sorted(c)) for c in self.maximal_cones))

    @property
    def dim(self):
        return len(self.rays[0])

    def cone(self, i) -> RationalCone:
        return RationalCone(tuple(self.rays[j] for j in self.maximal_cones[i]))

    def cones(self):
        return [self.cone(i) for i in range(len(self.maximal_cones))]

    def is_simplicial(self):
        return all(self.cone(i).is_simplicial() for i in range(len(self.maximal_cones)))

    def locate(self, y):
        """Indices of maximal cones containing y (several on shared faces)."""
        return [i for i in range(len(self.maximal_cones)) if self.cone(i).contains(y)]


def normal_fan(P: LatticePolytope) -> PolyhedralFan:
    """Normal fan of a full-dimensional polytope, max convention.

    The maximal cone attached to a vertex v is {y : y.v >= y.w for all w in P},
    so rays are the primitive outer facet normals.
    """
    if P.dim != P.ambient_dim:
        raise GeometryError("normal_fan requires a full-dimensional polytope")
    if P.dim == 0:
        raise GeometryError("0-dimensional polytope has no normal fan")
    ray_list = sorted(primitive_vector(n) for n, b in P.facet_inequalities())
    ray_index = {r: i for i, r in enumerate(ray_list)}
    cones = []
    for v in P.vertices:
        incident = []
        for (n, b), verts in zip(P.facet_inequalities(), P._facet_vertices):
            if v in verts:
                incident.append(ray_index[primitive_vector(n)])
        cones.append(tuple(sorted(incident)))
    cones.sort()
    return PolyhedralFan(tuple(ray_list), tuple(cones), True)


def _triangulate_cone(rays, placing_order="lex"):
    """Placing triangulation of a pointed full-dimensional cone over its rays.

    Rays are rescaled onto a rational cross-section hyperplane and the
    (n-1)-dimensional point set is triangulated by placing in lexicographic
    (or, for cross-checks, reverse-lexicographic) order. Returns tuples of
    indices into ``rays``.
    """
    n = len(rays[0])
    cone = RationalCone(tuple(rays))
    if cone.is_simplicial():
        return [tuple(range(len(rays)))]
    functional = tuple(sum(col) for col in zip(*cone._facet_normals()))
    weights = [dot(functional, r) for r in rays]
    if any(w <= 0 for w in weights):
        raise GeometryError("cone is not pointed")
    denom = 1
    for w in weights:
        denom = denom * w // gcd(denom, w)
    section = [tuple(x * (denom // w) for x in r) for r, w in zip(rays, weights)]

    # Drop to affine coordinates within the cross-section hyperplane.
    base = section[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in section[1:]]
    matrix = list(zip(*diffs))
    chosen = []
    for c in range(n):
        if rank_fraction([matrix[j] for j in chosen + [c]]) > len(chosen):
            chosen.append(c)
        if len(chosen) == n - 1:
            break
    if len(chosen) != n - 1:
        raise GeometryError("cross-section is not full-dimensional")
    flat = [tuple(p[c] - base[c] for c in chosen) for p in section]

    reverse = placing_order == "revlex"
    hull = convex_hull_fulldim(flat, want_triangulation=True,
                               insertion_reverse=reverse)
    lookup = {}
    for i, q in enumerate(flat):
        lookup.setdefault(tuple(q), i)
    id_to_ray = [lookup[tuple(q)] for q in hull.points]
    return [tuple(sorted(id_to_ray[i] for i in simplex))
            for simplex in hull.triangulation]


def simplicial_refine(F: PolyhedralFan, placing_order="lex") -> PolyhedralFan:
    """Triangulate every non-simplicial maximal cone over its own rays.

    Deterministic: rays sorted lexicographically and placed incrementally
    (``placing_order="revlex"`` reverses the insertion, giving an alternative
    triangulation for invariance checks). No new rays are introduced; the
    union of the children equals each parent cone.
    """
    new_cones = []
    parents = []
    for ci, cone_ids in enumerate(F.maximal_cones):
        rays = [F.rays[i] for i in cone_ids]
        for simplex in _triangulate_cone(rays, placing_order):
            new_cones.append(tuple(sorted(cone_ids[i] for i in simplex)))
            parents.append(ci)
    order = sorted(range(len(new_cones)), key=lambda i: new_cones[i])
    return PolyhedralFan(F.rays,
                         tuple(new_cones[i] for i in order),
                         F.complete_flag,
                         tuple(parents[i] for i in order))
