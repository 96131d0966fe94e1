"""Tour of the closed-form annulus spectra.

Prints the first spectrum lines of the Steklov and mixed Steklov-Neumann
problems on concentric annuli in several dimensions, showing the branch
structure (two roots per angular degree for Steklov, one nonzero family
for the mixed problem) and the multiplicities coming from the spherical
harmonic spaces.
"""

from steklov import (
    AnnulusSpec,
    enumerate_spectrum,
    sn_eigenvalue,
    steklov_eigenvalue,
)


def show_spectrum(spec, problem, k=8):
    print(f"\n{problem} spectrum, n={spec.n}, radii ({spec.r_inner:g}, "
          f"{spec.r_outer:g}):")
    print(f"  {'value':>12}  {'mult':>4}  {'degree':>6}  {'branch':>6}")
    for line in enumerate_spectrum(spec, problem, k):
        print(f"  {line.value:12.8f}  {line.multiplicity:4d}  "
              f"{line.l:6d}  {line.branch:6d}")


def main():
    benchmark = AnnulusSpec(2, 1.0, 5.0)
    print("Benchmark annulus: unit hole inside the radius-5 disk.")
    print(f"  first nonzero Steklov value  sigma_11 = "
          f"{steklov_eigenvalue(benchmark, 1, 1):.10f}")
    print(f"  first nonzero mixed value    mu_1     = "
          f"{sn_eigenvalue(benchmark, 1):.10f}  (= 24/130)")

    show_spectrum(benchmark, "steklov")
    show_spectrum(benchmark, "steklov_neumann")

    print("\nThe same structure persists in higher dimensions: the sorted")
    print("Steklov spectrum starts with the degree-1 lower branch "
          "(multiplicity n),")
    print("then the degree-2 lower branch (multiplicity (n+2)(n-1)/2).")
    for n in (3, 4, 5):
        spec = AnnulusSpec(n, 1.0, 2.0)
        lines = enumerate_spectrum(spec, "steklov", 3 * n)
        nonzero = [ln for ln in lines if ln.value > 1e-12]
        first, second = nonzero[0], nonzero[1]
        print(f"  n={n}: sigma_11={first.value:.6f} (x{first.multiplicity}), "
              f"next={second.value:.6f} (x{second.multiplicity}, "
              f"degree {second.l})")


if __name__ == "__main__":
    main()
