"""Quality triangular meshes for doubly connected planar domains.

The generator is a force-based relaxation over a Delaunay triangulation
(truss smoothing in the style of Persson & Strang): boundary vertices are
fixed where `boundary_polylines` placed them, interior points start on a
density-matched grid and repel each other until edge lengths track the
graded size field.  Interior points that drift too close to a boundary are
deleted; triangles whose centroid falls outside the region (inside the
hole) are discarded.  Everything is deterministic for a fixed spec and h:
seeding uses a low-discrepancy sequence instead of a random generator.

Boundary edges are recovered by index: vertex 0..n_outer-1 is the outer
polyline, the next n_inner the hole polyline, so a boundary edge joins
cyclically consecutive indices and its tag follows from the range it lies
in.  Both circles and convex outer polygons are always present as Delaunay
edges, so the recovery is a checked invariant rather than a repair step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import Delaunay

from .domains import (
    Disk,
    DomainSpec,
    Ellipse,
    GRADE_FRACTION,
    MIN_SIZE_DIVISOR,
    boundary_polylines,
    region_signed_distance,
    size_field,
)

__all__ = [
    "Mesh",
    "MeshError",
    "mesh_area",
    "mesh_min_angle",
    "read_mesh",
    "triangulate",
    "validate_mesh",
    "write_mesh",
]

OUTER = "outer"
INNER = "inner"

# Relaxation parameters (edge-length overshoot, pseudo-time step, move
# tolerances for retriangulation and convergence, boundary standoff).
FSCALE = 1.2
DELTA_T = 0.2
TTOL = 0.1
PTOL = 2e-3
ESCAPE_FRACTION = 0.3
SEED_MARGIN = 0.45
MAX_ITER = 1500

MIN_ANGLE_DEG = 20.0

_WEYL = 0.6180339887498949  # frac(golden ratio), for seedless rejection


class MeshError(Exception):
    """Raised when a mesh cannot be built or violates an invariant."""


@dataclass(eq=False)
class Mesh:
    """Conforming triangulation of a doubly connected planar region."""

    vertices: np.ndarray  # (nv, 2) float
    triangles: np.ndarray  # (nt, 3) int, counterclockwise
    boundary_edges: np.ndarray  # (nb, 2) int
    boundary_tags: np.ndarray  # (nb,) str, "outer" or "inner"
    h: float  # target edge length the mesh was built for

    @property
    def vertex_count(self):
        return len(self.vertices)

    @property
    def triangle_count(self):
        return len(self.triangles)


def _triangle_signed_areas(vertices, triangles):
    p0 = vertices[triangles[:, 0]]
    d1 = vertices[triangles[:, 1]] - p0
    d2 = vertices[triangles[:, 2]] - p0
    return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])


def mesh_area(mesh: Mesh) -> float:
    """Total area of the triangulation."""
    return float(np.sum(_triangle_signed_areas(mesh.vertices, mesh.triangles)))


def mesh_min_angle(mesh: Mesh) -> float:
    """Smallest interior angle over all triangles, in degrees."""
    v = mesh.vertices
    t = mesh.triangles
    angles = []
    for k in range(3):
        a = v[t[:, (k + 1) % 3]] - v[t[:, k]]
        b = v[t[:, (k + 2) % 3]] - v[t[:, k]]
        num = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
        den = np.hypot(a[:, 0], a[:, 1]) * np.hypot(b[:, 0], b[:, 1])
        angles.append(np.degrees(np.arccos(np.clip(num / den, -1.0, 1.0))))
    return float(np.min(np.column_stack(angles)))


def _sorted_edges(triangles):
    edges = np.vstack(
        [triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]]
    )
    return np.sort(edges, axis=1)


def _hex_grid(xmin, xmax, ymin, ymax, spacing):
    dy = spacing * math.sqrt(3.0) / 2.0
    rows = []
    y = ymin
    row = 0
    while y <= ymax + 1e-12:
        offset = 0.5 * spacing if row % 2 else 0.0
        xs = np.arange(xmin + offset, xmax + spacing, spacing)
        rows.append(np.column_stack([xs, np.full(xs.shape, y)]))
        y += dy
        row += 1
    return np.vstack(rows)


def _bounding_box(spec: DomainSpec):
    outer = spec.outer
    if isinstance(outer, Disk):
        r = outer.radius
        return -r, r, -r, r
    if isinstance(outer, Ellipse):
        return -outer.a, outer.a, -outer.b, outer.b
    return (
        -0.5 * outer.width,
        0.5 * outer.width,
        -0.5 * outer.height,
        0.5 * outer.height,
    )


def _seed_points(spec: DomainSpec, h: float):
    """Interior starting points with density matched to the size field.

    A coarse hexagonal grid covers the ungraded bulk (where the size field
    equals h).  Where the field drops below h, a fine grid at the smallest
    target size is thinned by low-discrepancy rejection so the local point
    density approaches 1/fh^2.
    """
    xmin, xmax, ymin, ymax = _bounding_box(spec)
    coarse = _hex_grid(xmin, xmax, ymin, ymax, h)
    fh = size_field(spec, h, coarse)
    sd = region_signed_distance(spec, coarse)
    keep = (fh >= h * (1.0 - 1e-9)) & (sd < -SEED_MARGIN * fh)
    seeds = [coarse[keep]]

    fh_min = max(h / MIN_SIZE_DIVISOR, min(h, GRADE_FRACTION * spec.clearance))
    if fh_min < h * (1.0 - 1e-9):
        probe = _hex_grid(xmin, xmax, ymin, ymax, h / 2.0)
        graded = size_field(spec, h, probe) < h * (1.0 - 1e-9)
        if np.any(graded):
            gx, gy = probe[graded, 0], probe[graded, 1]
            fine = _hex_grid(
                gx.min() - h, gx.max() + h, gy.min() - h, gy.max() + h, fh_min
            )
            fh_f = size_field(spec, h, fine)
            sd_f = region_signed_distance(spec, fine)
            cand = (fh_f < h * (1.0 - 1e-9)) & (sd_f < -SEED_MARGIN * fh_f)
            fine, fh_f = fine[cand], fh_f[cand]
            u = np.mod(np.arange(1, len(fine) + 1) * _WEYL, 1.0)
            seeds.append(fine[u < (fh_min / fh_f) ** 2])
    return np.vstack(seeds)


def _region_triangles(spec, pts, simplices, geps):
    """Keep simplices whose centroid lies inside the region."""
    centroids = pts[simplices].mean(axis=1)
    inside = region_signed_distance(spec, centroids) < -geps
    return simplices[inside]


def _delaunay_pass(spec, pts, geps):
    tri = Delaunay(pts)
    simplices = _region_triangles(spec, pts, tri.simplices, geps)
    if len(simplices) == 0:
        raise MeshError("triangulation produced no interior triangles")
    bars = np.unique(_sorted_edges(simplices), axis=0)
    return simplices, bars


def _relax(spec, h, pts, n_fixed):
    """Move interior points until bar lengths track the size field."""
    geps = 1e-3 * h
    last = None  # positions at the most recent triangulation
    bars = None
    simplices = None
    fh_pts = size_field(spec, h, pts)

    for _ in range(MAX_ITER):
        interior = pts[n_fixed:]
        escaped = (
            region_signed_distance(spec, interior)
            > -ESCAPE_FRACTION * fh_pts[n_fixed:]
        )
        moved = (
            last is None
            or np.max(np.hypot(*(pts - last).T) / fh_pts) > TTOL
        )
        if moved or np.any(escaped):
            if np.any(escaped):
                keep = np.concatenate([np.ones(n_fixed, bool), ~escaped])
                pts = pts[keep]
            simplices, bars = _delaunay_pass(spec, pts, geps)
            last = pts.copy()
            fh_pts = size_field(spec, h, pts)
            mids = 0.5 * (pts[bars[:, 0]] + pts[bars[:, 1]])
            h_bars = size_field(spec, h, mids)

        vec = pts[bars[:, 0]] - pts[bars[:, 1]]
        lengths = np.maximum(np.hypot(vec[:, 0], vec[:, 1]), 1e-300)
        scale = math.sqrt(np.sum(lengths**2) / np.sum(h_bars**2))
        want = h_bars * FSCALE * scale
        push = np.maximum(want - lengths, 0.0) / lengths
        force = vec * push[:, None]
        total = np.zeros_like(pts)
        np.add.at(total, bars[:, 0], force)
        np.add.at(total, bars[:, 1], -force)
        total[:n_fixed] = 0.0
        pts = pts + DELTA_T * total

        step = DELTA_T * np.hypot(total[n_fixed:, 0], total[n_fixed:, 1])
        if len(step) == 0 or np.max(step / fh_pts[n_fixed:]) < PTOL:
            break

    # Final cleanup: drop any interior point that ended too close to a
    # boundary, then triangulate the settled cloud.
    interior = pts[n_fixed:]
    fh_pts = size_field(spec, h, pts)
    escaped = (
        region_signed_distance(spec, interior) > -ESCAPE_FRACTION * fh_pts[n_fixed:]
    )
    if np.any(escaped):
        pts = pts[np.concatenate([np.ones(n_fixed, bool), ~escaped])]
    simplices, _ = _delaunay_pass(spec, pts, geps)
    return pts, simplices


def _orient_ccw(vertices, triangles):
    areas = _triangle_signed_areas(vertices, triangles)
    flip = areas < 0
    triangles[np.ix_(flip, [1, 2])] = triangles[np.ix_(flip, [2, 1])]
    return triangles


def _canonical_order(triangles):
    """Roll each triangle so its smallest index leads; sort rows."""
    rolled = np.empty_like(triangles)
    lead = np.argmin(triangles, axis=1)
    for shift in range(3):
        rows = lead == shift
        rolled[rows] = np.roll(triangles[rows], -shift, axis=1)
    order = np.lexsort((rolled[:, 2], rolled[:, 1], rolled[:, 0]))
    return rolled[order]


def _cycle_edges(start, count):
    idx = np.arange(start, start + count)
    nxt = np.concatenate([idx[1:], idx[:1]])
    return np.column_stack([idx, nxt])


def triangulate(spec: DomainSpec, h: float) -> Mesh:
    """Mesh the region between the outer boundary and the hole.

    Deterministic for fixed inputs.  Raises MeshError for degenerate
    geometry (gap between hole and outer boundary below h/10) and
    ValueError when h cannot resolve the boundary curves.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    if spec.clearance < h / 10.0:
        raise MeshError(
            "degenerate geometry: hole-to-boundary clearance "
            f"{spec.clearance:.6g} is below h/10 = {h / 10.0:.6g}"
        )
    outer_poly, inner_poly = boundary_polylines(spec, h)
    n_out, n_in = len(outer_poly), len(inner_poly)
    fixed = np.vstack([outer_poly, inner_poly])
    pts = np.vstack([fixed, _seed_points(spec, h)])

    pts, simplices = _relax(spec, h, pts, n_fixed=n_out + n_in)
    triangles = _canonical_order(_orient_ccw(pts, simplices))

    edges = _sorted_edges(triangles)
    unique, counts = np.unique(edges, axis=0, return_counts=True)
    if np.any(counts > 2):
        raise MeshError("non-manifold edge in triangulation")
    boundary = unique[counts == 1]

    expected = np.sort(
        np.vstack([_cycle_edges(0, n_out), _cycle_edges(n_out, n_in)]), axis=1
    )
    key = boundary[:, 0] * len(pts) + boundary[:, 1]
    expected_key = expected[:, 0] * len(pts) + expected[:, 1]
    if not np.array_equal(np.sort(key), np.sort(expected_key)):
        raise MeshError("triangulation does not conform to the boundary polylines")

    boundary_edges = np.vstack([_cycle_edges(0, n_out), _cycle_edges(n_out, n_in)])
    boundary_tags = np.array([OUTER] * n_out + [INNER] * n_in)

    mesh = Mesh(
        vertices=pts,
        triangles=triangles,
        boundary_edges=boundary_edges,
        boundary_tags=boundary_tags,
        h=float(h),
    )
    validate_mesh(mesh)
    return mesh


def validate_mesh(mesh: Mesh) -> None:
    """Check every structural invariant; raise MeshError on a violation."""
    v, t = mesh.vertices, mesh.triangles
    if v.ndim != 2 or v.shape[1] != 2 or not np.all(np.isfinite(v)):
        raise MeshError("vertices must be a finite (nv, 2) array")
    if t.ndim != 2 or t.shape[1] != 3:
        raise MeshError("triangles must be an (nt, 3) array")
    if t.min(initial=0) < 0 or t.max(initial=-1) >= len(v):
        raise MeshError("triangle vertex index out of range")
    used = np.zeros(len(v), bool)
    used[t.ravel()] = True
    if not used.all():
        raise MeshError("mesh has vertices not used by any triangle")
    areas = _triangle_signed_areas(v, t)
    if np.any(areas <= 0):
        raise MeshError("triangles must be counterclockwise with positive area")

    edges = _sorted_edges(t)
    unique, counts = np.unique(edges, axis=0, return_counts=True)
    if np.any(counts > 2):
        raise MeshError("non-manifold edge")
    boundary = unique[counts == 1]

    tagged = np.sort(mesh.boundary_edges, axis=1)
    if len(tagged) != len(boundary):
        raise MeshError("boundary edge list does not match the triangulation")
    stride = len(v)
    if not np.array_equal(
        np.sort(boundary[:, 0] * stride + boundary[:, 1]),
        np.sort(tagged[:, 0] * stride + tagged[:, 1]),
    ):
        raise MeshError("boundary edge list does not match the triangulation")
    tags = set(np.unique(mesh.boundary_tags))
    if not tags == {OUTER, INNER}:
        raise MeshError(f"boundary tags must partition into outer/inner, got {tags}")
    if len(mesh.boundary_tags) != len(mesh.boundary_edges):
        raise MeshError("each boundary edge needs exactly one tag")

    # Every boundary vertex joins exactly two boundary edges (closed loops).
    bverts, bcounts = np.unique(mesh.boundary_edges.ravel(), return_counts=True)
    if np.any(bcounts != 2):
        raise MeshError("boundary edges do not form closed loops")

    loops = _boundary_loops(mesh.boundary_edges)
    if len(loops) != 2:
        raise MeshError(f"boundary must form exactly two loops, got {len(loops)}")
    loop_area = []
    for loop_vertices, loop_edges in loops:
        loop_tags = set(mesh.boundary_tags[loop_edges])
        if len(loop_tags) != 1:
            raise MeshError("a boundary loop carries mixed tags")
        poly = v[loop_vertices]
        area = 0.5 * np.sum(
            poly[:, 0] * np.roll(poly[:, 1], -1) - np.roll(poly[:, 0], -1) * poly[:, 1]
        )
        loop_area.append((abs(area), loop_tags.pop()))
    loop_area.sort()
    if [tag for _, tag in loop_area] != [INNER, OUTER]:
        raise MeshError("outer tag must belong to the enclosing boundary loop")

    euler = len(v) - len(unique) + len(t)
    if euler != 0:
        raise MeshError(f"Euler characteristic {euler} != 0 (annulus topology)")

    angle = mesh_min_angle(mesh)
    if angle < MIN_ANGLE_DEG - 1e-9:
        raise MeshError(f"minimum triangle angle {angle:.3f} deg below 20 deg")


def _boundary_loops(edges):
    """Split boundary edges into closed loops.

    Returns a list of (vertex index list, edge index array) pairs; assumes
    every vertex has degree 2 (checked by the caller).
    """
    adjacency: dict = {}
    for k, (i, j) in enumerate(edges):
        adjacency.setdefault(int(i), []).append((int(j), k))
        adjacency.setdefault(int(j), []).append((int(i), k))
    seen = set()
    loops = []
    for start in range(len(edges)):
        if start in seen:
            continue
        i0, j0 = int(edges[start][0]), int(edges[start][1])
        loop_vertices = [i0]
        loop_edges = [start]
        seen.add(start)
        cur = j0
        while cur != i0:
            loop_vertices.append(cur)
            following = [(w, k) for w, k in adjacency[cur] if k not in seen]
            if not following:
                raise MeshError("boundary loop is not closed")
            w, k = following[0]
            seen.add(k)
            loop_edges.append(k)
            cur = w
        loops.append((loop_vertices, np.array(loop_edges, dtype=int)))
    return loops


def write_mesh(mesh: Mesh, path) -> None:
    """Write the plain-text mesh format (see `read_mesh`)."""
    lines = ["# steklov mesh v1", f"# h {mesh.h!r}"]
    lines.append(f"#vertices {mesh.vertex_count}")
    for i, (x, y) in enumerate(mesh.vertices):
        lines.append(f"{i} {float(x)!r} {float(y)!r}")
    lines.append(f"#triangles {mesh.triangle_count}")
    for i, j, k in mesh.triangles:
        lines.append(f"{i} {j} {k}")
    lines.append(f"#boundary {len(mesh.boundary_edges)}")
    for (i, j), tag in zip(mesh.boundary_edges, mesh.boundary_tags):
        lines.append(f"{i} {j} {tag}")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def read_mesh(path) -> Mesh:
    """Read the plain-text mesh format written by `write_mesh`.

    Floats are written with shortest round-trip precision, so a
    write/read/write cycle reproduces the file byte for byte.
    """
    with open(path) as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    h = None
    for ln in lines[:4]:
        if ln.startswith("# h "):
            h = float(ln[4:])
            break
    if h is None:
        raise MeshError("mesh file is missing the '# h' header line")
    body = [ln for ln in lines if not ln.startswith("# ")]

    def read_section(idx, name):
        head = body[idx].split()
        if body[idx].split()[0] != name:
            raise MeshError(f"expected section {name!r}, got {body[idx]!r}")
        return int(head[1]), idx + 1

    nv, at = read_section(0, "#vertices")
    verts = np.empty((nv, 2))
    for row in range(nv):
        tok = body[at + row].split()
        if int(tok[0]) != row:
            raise MeshError("vertex indices must be consecutive from 0")
        verts[row] = (float(tok[1]), float(tok[2]))
    nt, at = read_section(at + nv, "#triangles")
    tris = np.empty((nt, 3), dtype=int)
    for row in range(nt):
        tris[row] = [int(x) for x in body[at + row].split()]
    nb, at = read_section(at + nt, "#boundary")
    edges = np.empty((nb, 2), dtype=int)
    tags = []
    for row in range(nb):
        tok = body[at + row].split()
        edges[row] = (int(tok[0]), int(tok[1]))
        tags.append(tok[2])
    if at + nb != len(body):
        raise MeshError("trailing content after #boundary section")
    return Mesh(
        vertices=verts,
        triangles=tris,
        boundary_edges=edges,
        boundary_tags=np.array(tags),
        h=h,
    )
