"""P1 finite elements for Steklov-type eigenvalue problems on holed domains.

The eigenvalue sits in the boundary condition, so the discrete problem is
reduced to the boundary before solving: the stiffness matrix (discrete
Dirichlet energy) is Schur-complemented onto the vertices that carry the
spectral condition, which yields the discrete Dirichlet-to-Neumann matrix.
Its eigenpairs against the boundary mass matrix discretize the Rayleigh
quotient of Dirichlet energy over boundary L2 norm.

Two problems share the pipeline and differ only in which vertices carry
the spectral condition: the pure Steklov problem uses every boundary
vertex, the mixed Steklov-Neumann problem only the outer ones (the hole
is a natural boundary, eliminated together with the interior).

Boundary vertex counts stay in the low thousands at the mesh sizes this
package targets, so the reduced eigenproblem is solved densely: Cholesky
factorization of the boundary mass matrix, reduction to a standard
symmetric problem, and a full symmetric eigensolve (LAPACK, via
`scipy.linalg.eigh`).  Assembly is vectorized over triangles and edges
with a fixed accumulation order, so repeated runs are bit-identical.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.linalg import LinAlgError, eigh
from scipy.sparse.linalg import splu

from steklov.closed_form import PROBLEMS, AnnulusSpec, enumerate_spectrum
from steklov.domains import Disk, DomainSpec
from steklov.meshing import INNER, OUTER, Mesh, triangulate


class FemError(RuntimeError):
    """A structural invariant of the discrete problem failed."""


def assemble_stiffness(mesh):
    """P1 stiffness matrix (sparse CSR, symmetric positive semidefinite).

    Row sums vanish to roundoff: constants are discretely harmonic.
    """
    tris = mesh.triangles
    p = mesh.vertices[tris]
    # edge vector opposite vertex i; grad of the i-th hat function is the
    # perpendicular of e_i over twice the area, so the element matrix is
    # (e_i . e_j) / (4 A)
    e = p[:, [2, 0, 1], :] - p[:, [1, 2, 0], :]
    doubled_area = e[:, 2, 0] * e[:, 0, 1] - e[:, 2, 1] * e[:, 0, 0]
    if np.any(doubled_area <= 0.0):
        raise ValueError("mesh contains a degenerate or inverted triangle")
    local = np.einsum("tid,tjd->tij", e, e) / (2.0 * doubled_area)[:, None, None]
    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    nv = mesh.vertex_count
    K = sparse.coo_matrix((local.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()
    kernel = np.abs(K @ np.ones(nv)).max()
    if kernel > 1e-12 * max(1.0, np.abs(K.data).max()):
        raise FemError(f"stiffness row sums do not vanish ({kernel:.3e})")
    return K

def assemble_boundary_mass(mesh, steklov_tag="both"):
    """Boundary mass matrix over the tagged edges (sparse CSR, full size).

    Each edge of length e contributes e/6 * [[2, 1], [1, 2]] to its two
    endpoints.  `steklov_tag` selects which boundary carries the spectral
    condition: "both" for the pure Steklov problem, "outer" for the mixed
    problem (hole edges then contribute nothing and their rows are zero).
    """
    if steklov_tag not in ("outer", "both"):
        raise ValueError(f"steklov_tag must be 'outer' or 'both', got {steklov_tag!r}")
    edges = mesh.boundary_edges
    if steklov_tag == "outer":
        edges = edges[mesh.boundary_tags == OUTER]
    ends = mesh.vertices[edges]
    lengths = np.hypot(ends[:, 1, 0] - ends[:, 0, 0], ends[:, 1, 1] - ends[:, 0, 1])
    weights = lengths[:, None] / 6.0 * np.array([2.0, 1.0, 1.0, 2.0])
    rows = edges[:, [0, 0, 1, 1]].ravel()
    cols = edges[:, [0, 1, 0, 1]].ravel()
    nv = mesh.vertex_count
    return sparse.coo_matrix((weights.ravel(), (rows, cols)), shape=(nv, nv)).tocsr()

def steklov_vertex_set(mesh, problem):
    """Sorted vertex indices carrying the spectral boundary condition."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    edges = mesh.boundary_edges
    if problem == "steklov_neumann":
        edges = edges[mesh.boundary_tags == OUTER]
    return np.unique(edges)

def dtn_schur(K, steklov_vertices):
    """Schur complement of the stiffness matrix onto the Steklov vertices.

    Returns the dense symmetric discrete Dirichlet-to-Neumann matrix
    S = K_bb - K_bi K_ii^{-1} K_ib; interior (and Neumann-boundary)
    vertices are eliminated through a sparse LU factorization.  Constants
    stay in the kernel because the harmonic extension of a constant is
    the constant itself.
    """
    K = sparse.csr_matrix(K)
    nv = K.shape[0]
    b = np.unique(np.asarray(steklov_vertices, dtype=int))
    if b.size == 0:
        raise ValueError("empty Steklov vertex set")
    if b[0] < 0 or b[-1] >= nv:
        raise ValueError("Steklov vertex index out of range")
    interior = np.setdiff1d(np.arange(nv), b, assume_unique=True)
    S = K[b][:, b].toarray()
    if interior.size:
        K_ib = K[interior][:, b].toarray()
        K_ii = sparse.csc_matrix(K[interior][:, interior])
        S -= K_ib.T @ splu(K_ii).solve(K_ib)
    S = 0.5 * (S + S.T)
    kernel = np.abs(S @ np.ones(b.size)).max()
    if kernel > 1e-9 * max(1.0, np.abs(S).max()):
        raise FemError(
            f"Dirichlet-to-Neumann matrix lost the constant kernel ({kernel:.3e})")
    return S


@dataclass(eq=False)
class EigenSolution:
    """Eigenpairs of the discrete Dirichlet-to-Neumann problem.

    Eigenvalues ascend and start at the zero mode; eigenvector columns are
    boundary traces on `steklov_vertices`, orthonormal in the boundary
    mass inner product.
    """

    problem: str
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    steklov_vertices: np.ndarray = None
    mesh: Mesh = None
    h: float = None
    spec: DomainSpec = None

    def clusters(self, rtol=1e-3):
        """Indices grouped into near-multiple clusters.

        Adjacent eigenvalues whose gap is below `rtol` relative to their
        magnitude land in one group; discretization splits exact multiple
        eigenvalues by about the squared mesh size, so the groups recover
        the continuous multiplicities on fine meshes.
        """
        vals = self.eigenvalues
        groups = [[0]]
        for i in range(1, len(vals)):
            scale = max(abs(vals[i - 1]), abs(vals[i]))
            if vals[i] - vals[i - 1] <= rtol * scale:
                groups[-1].append(i)
            else:
                groups.append([i])
        return groups

    def as_dict(self):
        return {
            "problem": self.problem,
            "spec": None if self.spec is None else self.spec.as_dict(),
            "h": self.h,
            "eigenvalues": [float(f"{v:.17g}") for v in self.eigenvalues],
            "clusters": self.clusters(),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)

def solve_eigs(S, M, k, problem="steklov", steklov_vertices=None,
               mesh=None, h=None, spec=None):
    """First k eigenpairs of S v = lambda M v, ascending, M-orthonormal.

    S must be symmetric positive semidefinite and M symmetric positive
    definite on the same vertex set; both are made dense if needed.  The
    solve verifies the structural invariants (kernel mode at zero, ordered
    nonnegative spectrum, M-orthonormal vectors) and raises FemError on
    violation rather than returning a questionable spectrum.
    """
    S = np.asarray(S.toarray() if sparse.issparse(S) else S, dtype=float)
    M = np.asarray(M.toarray() if sparse.issparse(M) else M, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape != M.shape:
        raise ValueError("S and M must be square matrices of one size")
    n = S.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be between 1 and {n}, got {k}")
    try:
        vals, vecs = eigh(S, M, subset_by_index=[0, k - 1])
    except LinAlgError as exc:
        raise FemError(
            "generalized eigensolve failed; the boundary mass matrix is "
            "not positive definite") from exc
    scale = max(abs(vals[0]), abs(vals[-1]), 1e-300)
    if vals[0] < -1e-9 * scale:
        raise FemError(f"negative eigenvalue {vals[0]:.3e}: S is not PSD")
    if k > 1 and not abs(vals[0]) < 1e-8 * abs(vals[1]):
        raise FemError(
            f"zero mode missing: lowest eigenvalues {vals[0]:.3e}, {vals[1]:.3e}")
    residual = np.abs(vecs.T @ M @ vecs - np.eye(k)).max()
    if residual > 1e-8:
        raise FemError(f"eigenvectors not M-orthonormal ({residual:.3e})")
    return EigenSolution(problem, vals, vecs, steklov_vertices=steklov_vertices,
                         mesh=mesh, h=h, spec=spec)

def solve_on_mesh(mesh, problem, k, spec=None):
    """Assemble and solve one eigenvalue problem on an existing mesh."""
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    tag = "both" if problem == "steklov" else "outer"
    K = assemble_stiffness(mesh)
    M = assemble_boundary_mass(mesh, tag)
    b = steklov_vertex_set(mesh, problem)
    S = dtn_schur(K, b)
    M_bb = M[b][:, b].toarray()
    return solve_eigs(S, M_bb, k, problem=problem, steklov_vertices=b,
                      mesh=mesh, h=mesh.h, spec=spec)

def solve_steklov(spec, h, k):
    """First k Steklov eigenvalues of the holed domain at mesh size h."""
    return solve_on_mesh(triangulate(spec, h), "steklov", k, spec=spec)

def solve_mixed_sn(spec, h, k):
    """First k mixed eigenvalues: spectral outer boundary, Neumann hole."""
    return solve_on_mesh(triangulate(spec, h), "steklov_neumann", k, spec=spec)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    eigenvalues: tuple
    error: float = None
    order: float = None


@dataclass(frozen=True)
class ConvergenceStudy:
    """Eigenvalue refinement table for one domain and problem.

    `reference` is the exact eigenvalue when the domain is a concentric
    annulus (closed form), else None; `extrapolated` eliminates the
    leading error term from the last three levels, and `observed_order`
    is the fitted convergence rate of the tracked eigenvalue.
    """

    problem: str
    index: int
    rows: tuple
    reference: float
    extrapolated: float
    observed_order: float

    def as_dict(self):
        return {
            "problem": self.problem,
            "index": self.index,
            "rows": [
                {"h": r.h, "eigenvalues": list(r.eigenvalues),
                 "error": r.error, "order": r.order}
                for r in self.rows
            ],
            "reference": self.reference,
            "extrapolated": self.extrapolated,
            "observed_order": self.observed_order,
        }


def _concentric_reference(spec, problem, count):
    """Closed-form eigenvalues when the domain is a concentric annulus."""
    if not (isinstance(spec.outer, Disk) and spec.hole_center == (0.0, 0.0)):
        return None
    annulus = AnnulusSpec(2, spec.hole_radius, spec.outer.radius)
    flat = []
    for line in enumerate_spectrum(annulus, problem, count):
        flat.extend([line.value] * line.multiplicity)
    return flat[:count]


def _richardson(h_list, values):
    """(extrapolated value, observed order) from the last three levels.

    Assumes error = C h^p and a fixed refinement ratio.  Returns the
    finest value and no order when the differences do not behave (sign
    change or stagnation), rather than inventing a rate.
    """
    h0, h1, h2 = h_list[-3:]
    v0, v1, v2 = values[-3:]
    r = h0 / h1
    if abs(h1 / h2 - r) > 1e-9 * r:
        raise ValueError("refinement ratio must be fixed across levels")
    d0, d1 = v1 - v0, v2 - v1
    if d1 == 0.0 or d0 / d1 <= 1.0:
        return v2, None
    p = math.log(d0 / d1) / math.log(r)
    return v2 + (v2 - v1) / (r**p - 1.0), p

def convergence_study(spec, problem, h_list, k=6, index=1):
    """Refine the mesh over `h_list` and track eigenvalue `index`.

    Needs at least three strictly descending mesh sizes with a fixed
    refinement ratio.  On a concentric annulus every level is compared
    against the closed form and the observed order is the least-squares
    slope of the error; otherwise the order comes from the extrapolation
    differences alone.
    """
    h_list = [float(h) for h in h_list]
    if len(h_list) < 3:
        raise ValueError("need at least three refinement levels")
    if any(b >= a for a, b in zip(h_list, h_list[1:])):
        raise ValueError("mesh sizes must be strictly descending")
    if not 0 <= index < k:
        raise ValueError("tracked eigenvalue index must lie below k")
    reference = _concentric_reference(spec, problem, k)
    tracked, rows = [], []
    for h in h_list:
        sol = solve_on_mesh(triangulate(spec, h), problem, k, spec=spec)
        tracked.append(float(sol.eigenvalues[index]))
        error = order = None
        if reference is not None:
            error = abs(tracked[-1] - reference[index])
            if rows and rows[-1].error and error > 0.0:
                order = (math.log(rows[-1].error / error)
                         / math.log(h_list[len(rows) - 1] / h))
        rows.append(ConvergenceRow(h, tuple(map(float, sol.eigenvalues)),
                                   error, order))
    extrapolated, rich_order = _richardson(h_list, tracked)
    if reference is not None:
        errors = [r.error for r in rows]
        slope = np.polyfit(np.log(h_list), np.log(errors), 1)[0]
        observed = float(slope)
    else:
        observed = rich_order
    return ConvergenceStudy(problem, index, tuple(rows),
                            None if reference is None else reference[index],
                            extrapolated, observed)
