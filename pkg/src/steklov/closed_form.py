"""Exact spectra of the Steklov and mixed Steklov-Neumann problems on annuli.

Separation of variables on the spherical shell {r_inner < |x| < r_outer} in
R^n reduces both eigenvalue problems to one scalar ODE per spherical-harmonic
degree l.  Every routine here works with that reduction: per-degree
eigenvalues in closed form, spherical-harmonic multiplicities, radial
profiles of the eigenfunctions, and enumeration of the ordered spectrum.

Conventions.  The spectral parameter sits on the boundary condition
du/dnu = sigma * u, with the outward normal; on the inner sphere of the
mixed problem the condition is du/dnu = 0.  Eigenvalues scale like 1/length,
so everything is computed on the normalized annulus (1, L), L the radii
ratio, and divided by r_inner afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb
from typing import Literal

import numpy as np

Problem = Literal["steklov", "steklov_neumann"]

PROBLEMS = ("steklov", "steklov_neumann")


@dataclass(frozen=True)
class AnnulusSpec:
    """Concentric spherical shell in R^n with radii 0 < r_inner < r_outer."""

    n: int
    r_inner: float
    r_outer: float

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.n}")
        if not (0.0 < self.r_inner < self.r_outer):
            raise ValueError(
                f"radii must satisfy 0 < r_inner < r_outer, got "
                f"({self.r_inner}, {self.r_outer})"
            )

    @property
    def ratio(self) -> float:
        """Radii ratio L = r_outer / r_inner > 1."""
        return self.r_outer / self.r_inner


@dataclass(frozen=True)
class SpectralLine:
    """One eigenvalue with its spherical-harmonic degree and multiplicity."""

    l: int
    branch: int
    value: float
    multiplicity: int


def multiplicity(n: int, l: int) -> int:
    """Dimension of the space of spherical harmonics of degree l on S^{n-1}.

    dim H_l = (2l + n - 2) / (l + n - 2) * C(l + n - 2, l) for l >= 1,
    and 1 for l = 0.  The division is exact in the integers.
    """
    if n < 2:
        raise ValueError("dimension must be >= 2")
    if l < 0:
        raise ValueError("degree must be >= 0")
    if l == 0:
        return 1
    num = (2 * l + n - 2) * comb(l + n - 2, l)
    den = l + n - 2
    assert num % den == 0
    return num // den


def quad_coeffs(n: int, L: float, l: int) -> tuple[float, float, float]:
    """Coefficients (A, B, C) of the per-degree quadratic A*s^2 + B*s + C = 0.

    Imposing du/dnu = s*u on both spheres of the normalized annulus (1, L)
    for the degree-l radial solution a*r^l + b*r^-(l+n-2) and eliminating
    (a, b) yields this quadratic in s.  It degenerates for l = 0 in the
    plane (the second radial solution is log r there), which is rejected.
    """
    _check_degree_args(n, L, l)
    if l == 0 and n == 2:
        raise ValueError("l = 0 in dimension 2 is a logarithmic mode; "
                         "the quadratic in sigma degenerates")
    m = 2 * l + n - 2
    Lm = L**m
    A = L * (Lm - 1.0)
    B = -(l * Lm + (l + n - 2) * Lm * L + l * L + (l + n - 2))
    C = l * (l + n - 2) * (Lm - 1.0)
    return A, B, C


def _check_degree_args(n, L, l):
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n}")
    if not isinstance(l, int) or l < 0:
        raise ValueError(f"degree must be an integer >= 0, got {l}")
    if not L > 1.0:
        raise ValueError(f"radii ratio must exceed 1, got {L}")


def _steklov_normalized(n: int, L: float, l: int, branch: int) -> float:
    """Steklov eigenvalue of degree l on the normalized annulus (1, L)."""
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch}")
    if l == 0:
        if branch == 1:
            return 0.0
        if n == 2:
            # logarithmic radial solution 1 - s*log r
            return (1.0 + L) / (L * math.log(L))
        return (n - 2) * (1.0 + L ** (n - 1)) / (L ** (n - 1) - L)
    # Quadratic scaled by L^-(2l+n-2) so large L and l cannot overflow.
    m = 2 * l + n - 2
    q = L ** (-m)
    a = L * (1.0 - q)
    b = -(l + (l + n - 2) * L + (l * L + (l + n - 2)) * q)
    c = l * (l + n - 2) * (1.0 - q)
    disc = b * b - 4.0 * a * c
    assert disc > 0.0
    root2 = (-b + math.sqrt(disc)) / (2.0 * a)  # -b > 0: no cancellation
    if branch == 2:
        return root2
    return c / (a * root2)


def steklov_eigenvalue(spec: AnnulusSpec, l: int, branch: int) -> float:
    """Degree-l Steklov eigenvalue of the annulus, branch 1 (lower) or 2.

    For l = 0 branch 1 is the zero mode.  Branch 1 roots come from the
    stable pairing root1 = C / (A * root2) so no digits are lost to
    cancellation for any ratio.
    """
    _check_degree_args(spec.n, spec.ratio, l)
    return _steklov_normalized(spec.n, spec.ratio, l, branch) / spec.r_inner


def sigma_21_closed(spec: AnnulusSpec) -> float:
    """Lower degree-2 Steklov eigenvalue in explicit radical form.

    Equals steklov_eigenvalue(spec, 2, 1); kept as an independent closed
    form because the ordered spectrum's second distinct nonzero value is
    exactly this number.  Evaluated as 4n(t-1)/(P + sqrt(P^2 - 8Ln(t-1)^2)),
    t = L^{n+2}, which avoids the subtractive cancellation of the textbook
    (P - sqrt(...))/(2L(t-1)) arrangement.
    """
    n, L = spec.n, spec.ratio
    t = L ** (n + 2)
    P = t * (2.0 + L * n) + (n + 2.0 * L)
    disc = P * P - 8.0 * L * n * (t - 1.0) ** 2
    assert disc > 0.0
    sigma = 4.0 * n * (t - 1.0) / (P + math.sqrt(disc))
    return sigma / spec.r_inner


def sn_eigenvalue(spec: AnnulusSpec, l: int) -> float:
    """Degree-l eigenvalue of the mixed problem: spectral condition on the
    outer sphere, Neumann on the inner.

    mu_l = l(l+n-2) (rho^{2l+n-2} - 1) /
           ( r_outer ( (l+n-2) rho^{2l+n-2} + l ) ),   rho = r_outer/r_inner.

    One branch per degree; mu_0 = 0.
    """
    _check_degree_args(spec.n, spec.ratio, l)
    if l == 0:
        return 0.0
    n = spec.n
    rho = spec.ratio
    m = 2 * l + n - 2
    q = rho ** (-m)  # scaled by rho^-m to keep large degrees finite
    return l * (l + n - 2) * (1.0 - q) / (spec.r_outer * ((l + n - 2) + l * q))


@dataclass(frozen=True)
class RadialProfile:
    """Radial factor f(r) of a separated eigenfunction f(r) * Y_l(omega).

    Normalized so the r^l coefficient is 1 (the constant solution for the
    zero modes).  `coef` multiplies the decaying solution r^-(l+n-2); for
    the planar l = 0 Steklov mode the second solution is log r instead and
    `log_mode` is set.  Radii and eigenvalue are in physical units.
    """

    problem: Problem
    n: int
    l: int
    branch: int
    r_inner: float
    eigenvalue: float
    coef: float
    log_mode: bool = False


def steklov_profile(spec: AnnulusSpec, l: int, branch: int) -> RadialProfile:
    """Radial profile of the (l, branch) Steklov eigenfunction.

    In the normalized variable t = r/r_inner the profile is
    t^l + c * t^-(l+n-2) with c = (l + s)/(l + n - 2 - s), where s is the
    normalized eigenvalue.  That inner-condition arrangement of c is exact
    for branch 1 (s stays strictly below l + n - 2: the quadratic is
    negative there, so the roots straddle it) but loses all digits on
    branch 2 for large ratios, where s approaches l + n - 2 from above.
    Branch 2 therefore uses the equivalent arrangement solved from the
    outer condition, c = -L^{2l+n-2} (sL - l)/(sL + l + n - 2), whose
    denominator never cancels.  The parametrization breaks down only if s
    hits l + n - 2 exactly; that is signalled rather than papered over.
    """
    sigma = steklov_eigenvalue(spec, l, branch)
    s_norm = sigma * spec.r_inner
    n = spec.n
    if l == 0 and n == 2:
        # f(t) = 1 - s*log(t); covers both the zero mode (s = 0) and branch 2
        return RadialProfile("steklov", n, l, branch, spec.r_inner,
                             sigma, -s_norm, log_mode=True)
    if l == 0 and branch == 1:
        return RadialProfile("steklov", n, l, branch, spec.r_inner,
                             sigma, 0.0)
    p = l + n - 2
    if branch == 1:
        den = p - s_norm
        if den <= 1e-13 * p:
            raise ValueError(
                f"radial profile undefined: eigenvalue coincides with "
                f"l+n-2 = {p} (degree {l}, branch {branch})")
        coef = (l + s_norm) / den
    else:
        L = spec.ratio
        coef = -(L ** (2 * l + n - 2)) * (s_norm * L - l) / (s_norm * L + p)
    return RadialProfile("steklov", n, l, branch, spec.r_inner,
                         sigma, coef)


def sn_profile(spec: AnnulusSpec, l: int) -> RadialProfile:
    """Radial profile of the degree-l mixed-problem eigenfunction.

    f(r) = r^l + l r_inner^{2l+n-2} / ((l+n-2) r^{l+n-2}) in physical r;
    its derivative vanishes at r_inner by construction.  Degree 0 is the
    constant zero mode.  Stored in the normalized variable t = r/r_inner,
    where the coefficient is simply l/(l+n-2).
    """
    mu = sn_eigenvalue(spec, l)
    if l == 0:
        log_mode = spec.n == 2
        return RadialProfile("steklov_neumann", spec.n, l, 1, spec.r_inner,
                             mu, 0.0, log_mode=log_mode)
    coef = l / (l + spec.n - 2)
    return RadialProfile("steklov_neumann", spec.n, l, 1, spec.r_inner,
                         mu, coef)


def radial_eval(profile: RadialProfile, r):
    """Evaluate (f(r), f'(r)) of a radial profile at r >= r_inner.

    Accepts scalars or arrays.  Derivative is with respect to physical r.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r < profile.r_inner * (1.0 - 1e-12)):
        raise ValueError("radius below the inner radius of the annulus")
    t = r / profile.r_inner
    l, n, c = profile.l, profile.n, profile.coef
    if profile.log_mode:
        # f = 1 + c*log(t), relevant only for l = 0 in the plane
        val = 1.0 + c * np.log(t)
        der = c / t / profile.r_inner
    else:
        p = l + n - 2
        val = t**l + c * t ** (-p)
        der = (l * t ** (l - 1) - p * c * t ** (-p - 1)) / profile.r_inner
    if val.ndim == 0:
        return float(val), float(der)
    return val, der


def enumerate_spectrum(spec: AnnulusSpec, problem: Problem,
                       k: int) -> list[SpectralLine]:
    """First k eigenvalues (counted with multiplicity) in ascending order.

    Returns the per-degree lines whose cumulative multiplicity first
    reaches k, sorted by value.  The degree cutoff is grown (doubled) until
    the smallest candidate beyond it provably exceeds the k-th value: the
    lower Steklov branch is increasing in l, and the mixed-problem curve is
    checked for monotonicity on each enumeration rather than assumed.
    """
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    l_max = max(4, 2 * k)
    while True:
        lines = _all_lines(spec, problem, l_max)
        lines.sort(key=lambda ln: ln.value)
        total = 0
        cut = None
        for i, ln in enumerate(lines):
            total += ln.multiplicity
            if total >= k:
                cut = i
                break
        if cut is not None:
            v_k = lines[cut].value
            if problem == "steklov":
                tail_min = steklov_eigenvalue(spec, l_max, 1)
            else:
                tail_min = sn_eigenvalue(spec, l_max)
            if tail_min >= v_k:
                return lines[:cut + 1]
        if l_max > 1 << 20:
            raise RuntimeError("degree cutoff grew without bound")
        l_max *= 2


def _all_lines(spec, problem, l_max):
    lines = []
    if problem == "steklov":
        for l in range(l_max + 1):
            for branch in (1, 2):
                lines.append(SpectralLine(
                    l, branch, steklov_eigenvalue(spec, l, branch),
                    multiplicity(spec.n, l)))
    else:
        mus = [sn_eigenvalue(spec, l) for l in range(l_max + 1)]
        for l in range(1, l_max):
            if mus[l + 1] <= mus[l]:
                raise RuntimeError(
                    "mixed-problem eigenvalue curve is not increasing in the "
                    f"degree at l = {l}; enumeration cutoff would be unsound")
        lines = [SpectralLine(l, 1, mus[l], multiplicity(spec.n, l))
                 for l in range(l_max + 1)]
    return lines
