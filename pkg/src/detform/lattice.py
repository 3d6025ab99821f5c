"""Exact lattice polytope geometry: hulls, facets, faces, point enumeration.

All arithmetic is integer or exact rational; nothing here touches floats.
Points are plain integer tuples, ordered lexicographically ascending wherever
an order matters (this fixes every index used downstream).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .errors import DegenerateSpan, EmptyInput, NoInteriorPoint, ParseError
from .linalg import QQ, integer_row_rank, nullspace_dense

Point = tuple[int, ...]


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _add(u: Point, v: Point) -> Point:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Point, v: Point) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def _primitive(vec) -> Point:
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(int(x) // g for x in vec)


def affine_rank(points: list[Point]) -> int:
    """Dimension of the affine span of the given integer points."""
    if not points:
        return -1
    base = points[0]
    return integer_row_rank([list(_sub(p, base)) for p in points[1:]])


@dataclass(frozen=True)
class Facet:
    """One facet inequality <m, normal> >= -offset plus its vertex set."""

    normal: Point
    offset: int
    vertex_ids: tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    vertex_ids: tuple[int, int]
    facet_ids: tuple[int, int]


@dataclass(frozen=True)
class Polytope:
    """Full-dimensional lattice polytope with its facet and face data.

    Facets are sorted by (normal, offset); vertices lexicographically. In
    dimension 3 the edge list and per-facet boundary cycles are populated so
    the boundary surface can be treated as a polygonal cell complex.
    """

    dim: int
    points: tuple[Point, ...]
    vertices: tuple[Point, ...]
    facets: tuple[Facet, ...]
    edges: tuple[Edge, ...] = field(default=())
    facet_cycles: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    def facet_index(self, normal: Point) -> int:
        """Index of the facet with the given primitive inner normal."""
        for i, f in enumerate(self.facets):
            if f.normal == tuple(normal):
                return i
        raise KeyError(f"no facet with normal {normal}")

    def facet_edge_ids(self, facet_id: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if facet_id in e.facet_ids]


def convex_hull_with_facets(points) -> Polytope:
    """Exact convex hull of integer points, with facet inequalities and faces.

    Facet normals are found by enumerating hyperplanes spanned by point
    subsets and keeping the supporting ones; this is exact and adequate for
    the point-set sizes in scope, in any ambient dimension.
    """
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if not pts:
        raise EmptyInput("no points given")
    dims = {len(p) for p in pts}
    if len(dims) != 1:
        raise ParseError(f"mixed point dimensions {sorted(dims)}")
    n = dims.pop()
    if affine_rank(pts) < n:
        raise DegenerateSpan(f"points span a flat of dimension {affine_rank(pts)} < {n}")

    seen: dict[tuple[Point, int], None] = {}
    for subset in itertools.combinations(range(len(pts)), n):
        base = pts[subset[0]]
        diffs = [list(_sub(pts[i], base)) for i in subset[1:]]
        null = nullspace_dense(diffs, n)
        if len(null) != 1:
            continue
        d = _common_denominator(null[0])
        normal = _primitive([int(QQ(x) * d) for x in null[0]])
        level = _dot(base, normal)
        lo = hi = False
        for p in pts:
            d = _dot(p, normal)
            if d < level:
                lo = True
            elif d > level:
                hi = True
            if lo and hi:
                break
        if lo and hi:
            continue
        if lo:
            normal = tuple(-c for c in normal)
            level = -level
        seen.setdefault((normal, -level), None)

    verts_on: dict[tuple[Point, int], list[int]] = {}
    facet_keys = sorted(seen)
    point_facets: list[list[int]] = [[] for _ in pts]
    for fi, (normal, offset) in enumerate(facet_keys):
        on = [i for i, p in enumerate(pts) if _dot(p, normal) == -offset]
        verts_on[(normal, offset)] = on
        for i in on:
            point_facets[i].append(fi)

    vertex_ids = [
        i for i, fids in enumerate(point_facets)
        if len(fids) >= n and integer_row_rank([list(facet_keys[f][0]) for f in fids]) == n
    ]
    vertices = tuple(pts[i] for i in vertex_ids)
    vid_of = {pts[i]: k for k, i in enumerate(vertex_ids)}

    facets = tuple(
        Facet(normal, offset,
              tuple(sorted(vid_of[pts[i]] for i in verts_on[(normal, offset)] if pts[i] in vid_of)))
        for normal, offset in facet_keys
    )

    edges: tuple[Edge, ...] = ()
    cycles: tuple[tuple[int, ...], ...] = ()
    if n == 3:
        edges, cycles = _build_face_complex(facets)

    return Polytope(n, tuple(pts), vertices, facets, edges, cycles)


def _common_denominator(values) -> int:
    d = 1
    for v in values:
        q = QQ(v)
        d = d * int(q.denominator) // gcd(d, int(q.denominator))
    return d


def _build_face_complex(facets: tuple[Facet, ...]):
    """Edges (ridges) and per-facet boundary cycles of a 3-polytope."""
    pair_to_facets: dict[tuple[int, int], list[int]] = {}
    for fi, fj in itertools.combinations(range(len(facets)), 2):
        common = sorted(set(facets[fi].vertex_ids) & set(facets[fj].vertex_ids))
        if len(common) == 2:
            pair_to_facets.setdefault((common[0], common[1]), []).append(fi)
            pair_to_facets[(common[0], common[1])].append(fj)
    edges = []
    for pair in sorted(pair_to_facets):
        incident = sorted(set(pair_to_facets[pair]))
        if len(incident) != 2:
            raise DegenerateSpan(f"ridge {pair} lies in {len(incident)} facets")
        edges.append(Edge(pair, (incident[0], incident[1])))

    cycles = []
    for fi, facet in enumerate(facets):
        nbrs: dict[int, list[int]] = {v: [] for v in facet.vertex_ids}
        for e in edges:
            if fi in e.facet_ids:
                a, b = e.vertex_ids
                nbrs[a].append(b)
                nbrs[b].append(a)
        for v, ns in nbrs.items():
            if len(ns) != 2:
                raise DegenerateSpan(f"facet {fi} is not a simple polygon at vertex {v}")
        start = min(nbrs)
        cycle = [start, min(nbrs[start])]
        while len(cycle) < len(nbrs):
            prev, cur = cycle[-2], cycle[-1]
            nxt = nbrs[cur][0] if nbrs[cur][0] != prev else nbrs[cur][1]
            cycle.append(nxt)
        cycles.append(tuple(cycle))
    return tuple(edges), tuple(cycles)


def lattice_points_scaled(Q: Polytope, k: int) -> list[Point]:
    """All integer points of k*Q in lexicographic ascending order."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return _enumerate(Q, k, strict=())


def points_off_facets(Q: Polytope, k: int, selection) -> list[Point]:
    """Integer points of k*Q lying on none of the selected facets."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return _enumerate(Q, k, strict=tuple(selection))


def interior_points(Q: Polytope, k: int) -> list[Point]:
    """Integer points strictly inside k*Q."""
    return _enumerate(Q, k, strict=tuple(range(Q.num_facets)))


def _enumerate(Q: Polytope, k: int, strict: tuple[int, ...]) -> list[Point]:
    lo = [k * min(v[j] for v in Q.vertices) for j in range(Q.dim)]
    hi = [k * max(v[j] for v in Q.vertices) for j in range(Q.dim)]
    strict_set = set(strict)
    checks = [(f.normal, k * f.offset, i in strict_set) for i, f in enumerate(Q.facets)]
    out = []
    for m in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        for normal, bound, is_strict in checks:
            d = _dot(m, normal)
            if d < -bound or (is_strict and d == -bound):
                break
        else:
            out.append(m)
    return out


def divisor_of_linear(Q: Polytope, u) -> tuple[int, ...]:
    """Coefficient vector of the principal divisor of the monomial x^u."""
    return tuple(_dot(u, f.normal) for f in Q.facets)


def interior_rational_point(Q: Polytope) -> tuple:
    """Canonical strictly interior point: the vertex centroid."""
    n = len(Q.vertices)
    return tuple(QQ(sum(v[j] for v in Q.vertices), n) for j in range(Q.dim))


def polar_dual_vertices(Q: Polytope) -> list[tuple]:
    """Vertices of the polar dual, one per facet, after centering Q.

    Q is translated by its vertex centroid so the origin is interior; the
    vertex dual to facet i is normal_i / (offset_i + <centroid, normal_i>).
    """
    t = interior_rational_point(Q)
    out = []
    for f in Q.facets:
        shifted = QQ(f.offset) + sum(QQ(tc) * nc for tc, nc in zip(t, f.normal))
        if shifted <= 0:
            raise NoInteriorPoint("centroid is not strictly interior")
        out.append(tuple(QQ(c) / shifted for c in f.normal))
    return out


def translate(Q: Polytope, v) -> Polytope:
    """Hull of the translated point set."""
    return convex_hull_with_facets([_add(p, tuple(v)) for p in Q.points])


def parse_support(text: str) -> list[Point]:
    """Parse a support file: one point per line, '#' comments, blanks skipped."""
    points: list[Point] = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pt = tuple(int(tok) for tok in line.split())
        except ValueError:
            raise ParseError(f"line {lineno}: expected whitespace-separated integers")
        if dim is None:
            dim = len(pt)
        elif len(pt) != dim:
            raise ParseError(f"line {lineno}: point has {len(pt)} coordinates, expected {dim}")
        points.append(pt)
    if not points:
        raise EmptyInput("support file contains no points")
    return points


def load_support(path) -> list[Point]:
    with open(path, encoding="utf-8") as fh:
        return parse_support(fh.read())
