"""Tour of the fading-law catalog: densities, autocorrelations, validation.

Run:  python3 demos/01_fading_models.py
"""

import numpy as np

import fadelab as fl


def main():
    print("=" * 70)
    print("Fading-law catalog")
    print("=" * 70)
    for name, model in fl.catalog().items():
        lags = fl.autocorr_lags(model, 4)
        lag_str = "  ".join(f"{v.real:+.4f}" for v in lags)
        print(f"{name:22s} R(0..4) = {lag_str}")

    print()
    print("Spectral densities at a few frequencies:")
    xs = np.array([0.0, 0.1, 0.25, 0.45])
    for name in ("memoryless", "ar1_a0.8", "bandlimited_lc0.25"):
        model = fl.catalog()[name]
        vals = fl.density(model, xs)
        print(f"{name:22s} f({', '.join(f'{x:.2f}' for x in xs)}) = "
              + "  ".join(f"{v:.4f}" for v in vals))

    print()
    print("Validation report for bandlimited(0.25):")
    rep = fl.validate(fl.bandlimited(0.25))
    for key, val in rep.to_dict().items():
        print(f"  {key}: {val}")

    print()
    print("A spectral line plus white remainder keeps unit total mass:")
    mixed = fl.line_plus_residual([(0.0, 0.3)], fl.memoryless())
    rep = fl.validate(mixed)
    print(f"  jump mass {rep.jump_mass_total}, unit mass ok: {rep.unit_mass_ok}, "
          f"density part at 0.2: {fl.density(mixed, 0.2):.3f}")

    print()
    print("Tabulated models interpolate and renormalize:")
    xs = np.linspace(-0.5, 0.5, 801)
    table = fl.tabulated_density(xs, fl.density(fl.ar1(0.5), xs))
    print(f"  R(1) from table: {fl.autocorr(table, 1).real:.6f}  (closed form 0.5)")
    print(f"  square-integrability verdict: {table.density_square_integrable}")


if __name__ == "__main__":
    main()
