"""Steklov and mixed Steklov-Neumann spectra on annuli and holed planar domains."""

from steklov.analysis import GridSpec, VerificationReport
from steklov.closed_form import (
    AnnulusSpec,
    RadialProfile,
    SpectralLine,
    enumerate_spectrum,
    multiplicity,
    quad_coeffs,
    radial_eval,
    sigma_21_closed,
    sn_eigenvalue,
    sn_profile,
    steklov_eigenvalue,
    steklov_profile,
)
from steklov.domains import (
    Disk,
    DomainSpec,
    Ellipse,
    Rectangle,
    volume_matched_outer_radius,
)
from steklov.experiments import (
    SweepResult,
    SweepSpec,
    TableArtifact,
    reproduce_table,
    run_sweep,
    verify_integral_lemmas,
    verify_lemmas,
)
from steklov.fem_solver import (
    ConvergenceStudy,
    EigenSolution,
    FemError,
    assemble_boundary_mass,
    assemble_stiffness,
    convergence_study,
    dtn_schur,
    solve_eigs,
    solve_mixed_sn,
    solve_on_mesh,
    solve_steklov,
)
from steklov.golden import golden_table
from steklov.meshing import Mesh, MeshError, read_mesh, triangulate, write_mesh
from steklov.quadrature import (
    boundary_integral,
    make_integrand,
    quadrature_integrals,
    volume_integral,
)

__all__ = [
    "AnnulusSpec",
    "ConvergenceStudy",
    "Disk",
    "DomainSpec",
    "EigenSolution",
    "Ellipse",
    "FemError",
    "GridSpec",
    "Mesh",
    "MeshError",
    "RadialProfile",
    "Rectangle",
    "SpectralLine",
    "SweepResult",
    "SweepSpec",
    "TableArtifact",
    "VerificationReport",
    "assemble_boundary_mass",
    "assemble_stiffness",
    "boundary_integral",
    "convergence_study",
    "dtn_schur",
    "enumerate_spectrum",
    "golden_table",
    "make_integrand",
    "multiplicity",
    "quad_coeffs",
    "quadrature_integrals",
    "radial_eval",
    "read_mesh",
    "reproduce_table",
    "run_sweep",
    "sigma_21_closed",
    "sn_eigenvalue",
    "sn_profile",
    "solve_eigs",
    "solve_mixed_sn",
    "solve_on_mesh",
    "solve_steklov",
    "steklov_eigenvalue",
    "steklov_profile",
    "triangulate",
    "verify_integral_lemmas",
    "verify_lemmas",
    "volume_integral",
    "volume_matched_outer_radius",
    "write_mesh",
]
