"""Tests for the P1 eigenvalue pipeline."""

import json

import numpy as np
import pytest
from test_meshing import hand_ring_mesh

from steklov.closed_form import AnnulusSpec, enumerate_spectrum, steklov_eigenvalue
from steklov.domains import Disk, DomainSpec
from steklov.fem_solver import (
    ConvergenceStudy,
    EigenSolution,
    FemError,
    _richardson,
    assemble_boundary_mass,
    assemble_stiffness,
    convergence_study,
    dtn_schur,
    solve_eigs,
    solve_mixed_sn,
    solve_on_mesh,
    solve_steklov,
    steklov_vertex_set,
)
from steklov.meshing import Mesh, triangulate

ANNULUS = DomainSpec(Disk(5.0), (0.0, 0.0), 1.0)


def single_triangle_mesh(vertices):
    return Mesh(
        np.asarray(vertices, dtype=float),
        np.array([[0, 1, 2]]),
        np.array([[0, 1], [1, 2], [2, 0]]),
        np.array(["outer", "outer", "outer"]),
        h=1.0,
    )


def flat_spectrum(problem, count):
    vals = []
    for line in enumerate_spectrum(AnnulusSpec(2, 1.0, 5.0), problem, count):
        vals.extend([line.value] * line.multiplicity)
    return np.array(vals[:count])


@pytest.fixture(scope="module")
def coarse_mesh():
    return triangulate(ANNULUS, 0.5)


@pytest.fixture(scope="module")
def fine_solutions():
    mesh = triangulate(ANNULUS, 0.25)
    return (
        solve_on_mesh(mesh, "steklov", 6, spec=ANNULUS),
        solve_on_mesh(mesh, "steklov_neumann", 6, spec=ANNULUS),
    )


def test_stiffness_reference_triangle():
    mesh = single_triangle_mesh([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    K = assemble_stiffness(mesh).toarray()
    want = np.array([[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]])
    assert np.allclose(K, want, atol=1e-15)


def test_stiffness_kernel_and_psd(coarse_mesh):
    K = assemble_stiffness(coarse_mesh)
    ones = np.ones(coarse_mesh.vertex_count)
    assert np.abs(K @ ones).max() < 1e-12
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = rng.standard_normal(coarse_mesh.vertex_count)
        assert x @ (K @ x) >= -1e-12 * (x @ x)


def test_stiffness_rejects_degenerate_triangle():
    mesh = single_triangle_mesh([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    with pytest.raises(ValueError, match="degenerate"):
        assemble_stiffness(mesh)


def test_boundary_mass_single_edge_block():
    mesh = single_triangle_mesh([[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]])
    mesh = Mesh(
        mesh.vertices,
        mesh.triangles,
        np.array([[0, 1]]),
        np.array(["outer"]),
        h=1.0,
    )
    M = assemble_boundary_mass(mesh).toarray()
    assert np.allclose(M[:2, :2], [[1.0, 0.5], [0.5, 1.0]], atol=1e-15)
    assert np.all(M[2] == 0.0) and np.all(M[:, 2] == 0.0)


def test_boundary_mass_total_and_neumann_rows(coarse_mesh):
    ends = coarse_mesh.vertices[coarse_mesh.boundary_edges]
    lengths = np.hypot(*(ends[:, 1] - ends[:, 0]).T)
    inner = coarse_mesh.boundary_tags == "inner"

    both = assemble_boundary_mass(coarse_mesh, "both")
    assert both.sum() == pytest.approx(lengths.sum(), rel=1e-13)
    outer_only = assemble_boundary_mass(coarse_mesh, "outer")
    assert outer_only.sum() == pytest.approx(lengths[~inner].sum(), rel=1e-13)
    inner_verts = np.unique(coarse_mesh.boundary_edges[inner])
    assert np.abs(outer_only[inner_verts].toarray()).max() == 0.0

    with pytest.raises(ValueError, match="steklov_tag"):
        assemble_boundary_mass(coarse_mesh, "inner")


def test_steklov_vertex_sets(coarse_mesh):
    all_bnd = np.unique(coarse_mesh.boundary_edges)
    outer_bnd = np.unique(
        coarse_mesh.boundary_edges[coarse_mesh.boundary_tags == "outer"]
    )
    assert np.array_equal(steklov_vertex_set(coarse_mesh, "steklov"), all_bnd)
    assert np.array_equal(
        steklov_vertex_set(coarse_mesh, "steklov_neumann"), outer_bnd
    )
    assert len(outer_bnd) < len(all_bnd)


def test_dtn_without_interior_is_plain_stiffness_block():
    mesh = hand_ring_mesh()
    K = assemble_stiffness(mesh)
    b = steklov_vertex_set(mesh, "steklov")
    assert b.size == mesh.vertex_count
    S = dtn_schur(K, b)
    assert np.allclose(S, K.toarray(), atol=1e-14)


def test_dtn_matches_dense_elimination(coarse_mesh):
    K = assemble_stiffness(coarse_mesh)
    b = steklov_vertex_set(coarse_mesh, "steklov")
    S = dtn_schur(K, b)
    dense = K.toarray()
    i = np.setdiff1d(np.arange(coarse_mesh.vertex_count), b)
    manual = dense[np.ix_(b, b)] - dense[np.ix_(b, i)] @ np.linalg.solve(
        dense[np.ix_(i, i)], dense[np.ix_(i, b)]
    )
    assert np.allclose(S, manual, atol=1e-10)
    assert np.abs(S @ np.ones(b.size)).max() < 1e-9
    assert np.allclose(S, S.T, atol=0.0)


def test_solve_eigs_two_by_two():
    S = np.array([[1.0, -1.0], [-1.0, 1.0]])
    sol = solve_eigs(S, np.eye(2), 2)
    assert np.allclose(sol.eigenvalues, [0.0, 2.0], atol=1e-14)
    v0 = sol.eigenvectors[:, 0]
    assert abs(v0[0] - v0[1]) < 1e-12


def test_solve_eigs_input_validation():
    S = np.array([[1.0, -1.0], [-1.0, 1.0]])
    with pytest.raises(ValueError, match="k must be"):
        solve_eigs(S, np.eye(2), 3)
    with pytest.raises(ValueError, match="square"):
        solve_eigs(S, np.eye(3), 1)
    with pytest.raises(FemError, match="positive definite"):
        solve_eigs(S, np.diag([1.0, -1.0]), 2)


def test_coarse_annulus_near_closed_form(coarse_mesh):
    sol = solve_on_mesh(coarse_mesh, "steklov", 4)
    sigma_11 = steklov_eigenvalue(AnnulusSpec(2, 1.0, 5.0), 1, 1)
    assert abs(sol.eigenvalues[1] - sigma_11) / sigma_11 < 0.05
    assert abs(sol.eigenvalues[2] - sigma_11) / sigma_11 < 0.05


def test_first_five_eigenvalues_track_closed_form(fine_solutions):
    for sol, problem in zip(fine_solutions, ("steklov", "steklov_neumann")):
        exact = flat_spectrum(problem, 6)
        got = sol.eigenvalues
        assert got[0] == pytest.approx(0.0, abs=1e-10)
        rel = np.abs(got[1:] - exact[1:]) / exact[1:]
        assert rel.max() < 0.02


def test_solution_invariants(fine_solutions):
    for sol in fine_solutions:
        w = sol.eigenvalues
        assert np.all(np.diff(w) >= 0.0)
        assert abs(w[0]) < 1e-8 * w[1]
        M = assemble_boundary_mass(
            sol.mesh, "both" if sol.problem == "steklov" else "outer"
        )
        b = sol.steklov_vertices
        gram = sol.eigenvectors.T @ M[b][:, b].toarray() @ sol.eigenvectors
        assert np.abs(gram - np.eye(len(w))).max() < 1e-8


def test_mixed_problem_sees_only_outer_boundary(fine_solutions):
    sn = fine_solutions[1]
    outer = steklov_vertex_set(sn.mesh, "steklov_neumann")
    assert np.array_equal(sn.steklov_vertices, outer)
    # the double mixed eigenvalue splits only by discretization
    mu1, mu2 = sn.eigenvalues[1], sn.eigenvalues[2]
    assert abs(mu2 - mu1) / mu1 < 1e-2


def test_eigensolution_clusters():
    sol = EigenSolution(
        "steklov",
        np.array([0.0, 0.17829, 0.17831, 0.398, 0.52, 0.5201]),
        np.zeros((6, 6)),
    )
    assert sol.clusters() == [[0], [1, 2], [3], [4, 5]]
    assert sol.clusters(rtol=1e-6) == [[0], [1], [2], [3], [4], [5]]


def test_eigensolution_json_round_trip(fine_solutions):
    sol = fine_solutions[0]
    data = json.loads(sol.to_json())
    assert data["problem"] == "steklov"
    assert data["spec"] == ANNULUS.as_dict()
    assert data["h"] == 0.25
    assert np.allclose(data["eigenvalues"], sol.eigenvalues, rtol=0.0, atol=0.0)
    assert data["clusters"] == sol.clusters()


def test_solve_wrappers_agree(coarse_mesh):
    direct = solve_steklov(ANNULUS, 0.5, 3)
    on_mesh = solve_on_mesh(coarse_mesh, "steklov", 3, spec=ANNULUS)
    assert np.array_equal(direct.eigenvalues, on_mesh.eigenvalues)
    mixed = solve_mixed_sn(ANNULUS, 0.5, 3)
    assert mixed.problem == "steklov_neumann"
    assert mixed.eigenvalues[1] != pytest.approx(direct.eigenvalues[1], rel=1e-3)


def test_richardson_recovers_quadratic_model():
    h = [0.4, 0.2, 0.1]
    exact = 0.7
    vals = [exact + 3.0 * hh**2 for hh in h]
    extrapolated, order = _richardson(h, vals)
    assert extrapolated == pytest.approx(exact, abs=1e-12)
    assert order == pytest.approx(2.0, abs=1e-9)
    # stagnating values fall back to the finest level without an order
    flat_ext, flat_order = _richardson(h, [0.7, 0.7, 0.7])
    assert flat_ext == 0.7 and flat_order is None
    with pytest.raises(ValueError, match="ratio"):
        _richardson([0.4, 0.2, 0.15], vals)


def test_convergence_study_validation():
    with pytest.raises(ValueError, match="three"):
        convergence_study(ANNULUS, "steklov", [0.5, 0.25])
    with pytest.raises(ValueError, match="descending"):
        convergence_study(ANNULUS, "steklov", [0.25, 0.5, 0.125])
    with pytest.raises(ValueError, match="index"):
        convergence_study(ANNULUS, "steklov", [0.5, 0.25, 0.125], k=4, index=4)


def test_convergence_study_on_annulus():
    study = convergence_study(ANNULUS, "steklov", [0.8, 0.4, 0.2], k=4)
    assert isinstance(study, ConvergenceStudy)
    sigma_11 = steklov_eigenvalue(AnnulusSpec(2, 1.0, 5.0), 1, 1)
    assert study.reference == pytest.approx(sigma_11, rel=1e-12)
    errors = [row.error for row in study.rows]
    assert errors[0] > errors[1] > errors[2]
    assert study.observed_order > 1.5
    assert abs(study.extrapolated - sigma_11) < abs(
        study.rows[-1].eigenvalues[1] - sigma_11
    )
    table = study.as_dict()
    assert [row["h"] for row in table["rows"]] == [0.8, 0.4, 0.2]
