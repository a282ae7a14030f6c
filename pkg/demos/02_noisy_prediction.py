"""Noisy one-step prediction and the memory parameter.

Predicting the current fading sample from its past, observed through
complex Gaussian noise of variance delta2, has closed-form error
exp{ integral log(f + delta2) } - delta2.  As the observations get very
noisy the error climbs back to 1 at a slope set by the memory parameter
phi, here recovered three independent ways.

Run:  python3 demos/02_noisy_prediction.py
"""

import numpy as np

import fadelab as fl


def main():
    model = fl.ar1(0.5)
    print("Model: first-order autoregression, a = 0.5")
    print()
    print("noise delta2   closed form     finite past n=256")
    for d2 in (0.1, 0.5, 1.0, 4.0, 10.0):
        closed = fl.noisy_pred_error(model, d2).error
        finite = fl.finite_past_pred_error(model, d2, 256).error
        print(f"{d2:12.2f}   {closed:.10f}   {finite:.10f}")

    print()
    print("Finite-past error falls monotonically toward the closed form:")
    closed = fl.noisy_pred_error(model, 1.0).error
    for n in (1, 2, 4, 16, 64, 256):
        err = fl.finite_past_pred_error(model, 1.0, n).error
        print(f"  n = {n:4d}: {err:.8f}   (gap {err - closed:.2e})")

    print()
    print("Memory parameter three ways:")
    print(f"  density route : {fl.phi_integral(model):.8f}")
    print(f"  lag series    : {fl.phi_series(model):.8f}")
    est = fl.phi_via_limit(model)
    print(f"  noisy limit   : {est.value:.8f} (indicator {est.indicator:.2e})")
    print(f"  analytic      : {1 / 3:.8f}")

    print()
    print("Band-limited fading is perfectly predictable from a clean past:")
    bl = fl.bandlimited(0.25)
    print(f"  noiseless error: {fl.noiseless_pred_error(bl).error}")
    print(f"  but with delta2 = 1: {fl.noisy_pred_error(bl, 1.0).error:.6f}")


if __name__ == "__main__":
    main()
