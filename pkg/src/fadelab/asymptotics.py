"""Memory parameter, capacity asymptote, and block-scheme coefficients.

The memory parameter phi of a fading law with square-integrable density f
admits two equivalent expressions,

    phi = (1/2) integral f^2 - 1/2  =  sum_{nu >= 1} |R(nu)|^2,

and controls the small-SNR curvature of capacity under a peak constraint:
C / SNR^2 tends to (2 phi + 1)^2 / 8 for phi < 1/2 ("quickly forgetting",
optimal duty cycle phi + 1/2) and to phi for phi >= 1/2 ("slowly
forgetting", optimal duty cycle 1).  Fading with spectral lines instead
has capacity scaling linearly in SNR, with slope the total jump mass.

The achievable side uses on-off block-constant-magnitude inputs with IID
signs; its per-symbol second-order coefficient is
(alpha - alpha^2 + alpha S(b)/b) / 2 with the block memory sum
S(b) = sum_{i != j <= b} |R(i - j)|^2, and S(b)/b -> 2 phi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quadrature, spectra
from .errors import (
    ConditionTwelveFails,
    Diverges,
    DomainError,
    NoDensity,
    QuadratureFailure,
)

REGIME_QUICKLY_FORGETTING = "quickly_forgetting"
REGIME_SLOWLY_FORGETTING = "slowly_forgetting"
REGIME_SPECTRAL_LINE = "spectral_line"

#: partial sums past this value without stagnating are declared divergent
SERIES_CEILING = 1e4

#: consecutive negligible terms required to stop a generic series
_STAGNATION_RUN = 20

_ALPHA_GRID = np.linspace(0.0, 1.0, 10001)


@dataclass(frozen=True)
class CapacityAsymptote:
    """Small-SNR capacity summary of one fading law.

    For density regimes, ``kappa`` is the limit of C/SNR^2 and
    ``alpha_star`` the optimal duty cycle; for the spectral-line regime both
    are None and ``linear_slope`` carries the limit of C/SNR instead (the
    total jump mass, reported, not derived here).
    """

    regime: str
    phi: float | None
    kappa: float | None
    alpha_star: float | None
    linear_slope: float | None = None


@dataclass(frozen=True)
class SchemeCoefficients:
    """Per-symbol second-order coefficients of one (b, alpha) design point."""

    b: int
    alpha: float
    s_of_b: float
    block_coeff: float
    iid_coeff: float


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (0.0 <= alpha <= 1.0):
        raise DomainError(f"duty cycle must lie in [0, 1], got {alpha}")
    return alpha


def _require_verdict_yes(model: spectra.FadingModel):
    if model.jumps or not model.has_density:
        raise NoDensity("memory parameter is undefined for spectra with lines")
    if model.density_square_integrable != spectra.VERDICT_YES:
        raise ConditionTwelveFails(
            "square-integrability verdict is "
            f"{model.density_square_integrable!r}; refusing phi",
            verdict=model.density_square_integrable)


def phi_integral(model: spectra.FadingModel) -> float:
    """phi from the density: half the squared-density integral minus 1/2."""
    _require_verdict_yes(model)
    val = 0.5 * spectra.density_square_integral(model) - 0.5
    return max(val, 0.0)


def _lag_range(model: spectra.FadingModel, start: int, stop: int) -> np.ndarray:
    """R(start), ..., R(stop - 1) without recomputing earlier lags."""
    k = model.kind
    ms = np.arange(start, stop)
    if k is spectra.ModelKind.MEMORYLESS:
        out = np.zeros(ms.size, dtype=complex)
        out[ms == 0] = 1.0
        return out
    if k is spectra.ModelKind.AR1:
        return np.asarray(model.a, dtype=complex) ** ms
    if k is spectra.ModelKind.BAND_LIMITED:
        return np.sinc(2.0 * model.lambda_c * ms).astype(complex)
    if k is spectra.ModelKind.TABULATED_DENSITY:
        return np.asarray(quadrature.pl_fourier(model.grid, model.values, ms), dtype=complex)
    if k is spectra.ModelKind.TABULATED_AUTOCORR:
        out = np.zeros(ms.size, dtype=complex)
        inside = ms < model.values.size
        out[inside] = model.values[ms[inside]]
        return out
    out = np.zeros(ms.size, dtype=complex)
    for loc, mass in model.jumps:
        out += mass * np.exp(2j * np.pi * loc * ms)
    if model.residual is not None:
        out += spectra.residual_weight(model) * _lag_range(model.residual, start, stop)
    return out


def phi_series(model: spectra.FadingModel, tol: float = 1e-7,
               ceiling: float = SERIES_CEILING) -> float:
    """phi as the lag series sum_{nu >= 1} |R(nu)|^2.

    Truncated by a model-supplied tail bound where one exists (geometric for
    ar1, 1/(c^2 N) for the band-limited sinc); otherwise by a stagnation
    rule with a cross-check against the density route.  Partial sums that
    pass ``ceiling`` without stagnating raise :class:`Diverges`.
    """
    tol = float(tol)
    if tol <= 0.0:
        raise DomainError("tol must be > 0")
    k = model.kind

    if k is spectra.ModelKind.MEMORYLESS:
        return 0.0

    if k is spectra.ModelKind.AR1:
        r2 = abs(model.a) ** 2
        if r2 == 0.0:
            return 0.0
        # tail after N terms: r2^{N+1} / (1 - r2) <= tol
        n_terms = int(np.ceil(np.log(tol * (1.0 - r2)) / np.log(r2))) + 1
        n_terms = max(n_terms, 1)
        powers = r2 ** np.arange(1, n_terms + 1)
        total = float(np.sum(powers))
        if total > ceiling:
            raise Diverges(f"partial sum exceeded {ceiling:g}")
        return total

    if k is spectra.ModelKind.BAND_LIMITED:
        c = 2.0 * np.pi * model.lambda_c
        n_target = int(np.ceil(1.0 / (c * c * tol)))
        total = 0.0
        chunk = 1_000_000
        start = 1
        while start <= n_target:
            stop = min(start + chunk, n_target + 1)
            nu = np.arange(start, stop)
            total += float(np.sum(np.sinc(2.0 * model.lambda_c * nu) ** 2))
            if total > ceiling:
                raise Diverges(f"partial sum exceeded {ceiling:g}")
            start = stop
        return total

    if k is spectra.ModelKind.TABULATED_AUTOCORR:
        total = float(np.sum(np.abs(model.values[1:]) ** 2))
        if total > ceiling:
            raise Diverges(f"partial sum exceeded {ceiling:g}")
        return total

    # generic route: stagnation plus (when available) a density cross-check
    total = 0.0
    quiet = 0
    start = 1
    chunk = 512
    max_lag = 2_000_000
    while start <= max_lag:
        terms = np.abs(_lag_range(model, start, start + chunk)) ** 2
        for t in terms:
            total += float(t)
            if total > ceiling:
                raise Diverges(f"partial sum exceeded {ceiling:g}")
            if t < tol * max(abs(total), 1.0):
                quiet += 1
                if quiet >= _STAGNATION_RUN:
                    break
            else:
                quiet = 0
        if quiet >= _STAGNATION_RUN:
            break
        start += chunk
    else:
        raise Diverges("series did not stagnate within the lag budget")

    if model.has_density and model.density_square_integrable == spectra.VERDICT_YES:
        other = phi_integral(model)
        if abs(total - other) > 1e-4:
            raise QuadratureFailure(
                f"series ({total:.8g}) and density ({other:.8g}) routes disagree")
    return total


def kappa_of_phi(phi: float) -> float:
    """Limit of C/SNR^2 as a function of the memory parameter."""
    phi = float(phi)
    if phi < 0.0:
        raise DomainError("phi must be >= 0")
    if phi < 0.5:
        return (2.0 * phi + 1.0) ** 2 / 8.0
    return phi


def alpha_star_of_phi(phi: float) -> float:
    """Asymptotically optimal duty cycle."""
    phi = float(phi)
    if phi < 0.0:
        raise DomainError("phi must be >= 0")
    return phi + 0.5 if phi < 0.5 else 1.0


def upper_bound_g(phi: float, alpha: float) -> float:
    """Upper-bound coefficient of SNR^2: (alpha - alpha^2)/2 + phi*alpha."""
    alpha = _check_alpha(alpha)
    phi = float(phi)
    if phi < 0.0:
        raise DomainError("phi must be >= 0")
    return (alpha - alpha * alpha) / 2.0 + phi * alpha


def capacity_asymptote(model: spectra.FadingModel) -> CapacityAsymptote:
    """Classify the regime and evaluate the small-SNR capacity summary.

    Density models require a "yes" square-integrability verdict; phi is
    computed from the density and cross-checked against the lag series to
    1e-6.  Models with spectral lines report the linear regime with slope
    equal to the total jump mass.
    """
    if model.jumps:
        return CapacityAsymptote(
            regime=REGIME_SPECTRAL_LINE, phi=None, kappa=None,
            alpha_star=None, linear_slope=spectra.jump_mass_total(model))
    phi = phi_integral(model)
    phi_s = phi_series(model)
    if abs(phi - phi_s) > 1e-6:
        raise QuadratureFailure(
            f"phi routes disagree: density {phi:.9g} vs series {phi_s:.9g}")
    regime = REGIME_SLOWLY_FORGETTING if phi >= 0.5 else REGIME_QUICKLY_FORGETTING
    return CapacityAsymptote(
        regime=regime, phi=phi, kappa=kappa_of_phi(phi),
        alpha_star=alpha_star_of_phi(phi), linear_slope=None)


def s_of_b_table(model: spectra.FadingModel, b_max: int) -> np.ndarray:
    """S(1), ..., S(b_max) via the recursion S(b+1) = S(b) + 2 sum_{eta<=b} |R(eta)|^2."""
    b_max = int(b_max)
    if b_max < 1:
        raise DomainError("b must be >= 1")
    if b_max == 1:
        return np.zeros(1)
    r2 = np.abs(spectra.autocorr_lags(model, b_max - 1)[1:]) ** 2
    out = np.empty(b_max)
    out[0] = 0.0
    out[1:] = 2.0 * np.cumsum(np.cumsum(r2))
    return out


def s_of_b(model: spectra.FadingModel, b: int) -> float:
    """Block memory sum S(b) = sum over i != j within a block of |R(i-j)|^2."""
    return float(s_of_b_table(model, int(b))[-1])


def block_coefficient(model: spectra.FadingModel, b: int, alpha: float) -> float:
    """Per-symbol second-order coefficient of the on-off block scheme."""
    alpha = _check_alpha(alpha)
    s = s_of_b(model, b)
    return 0.5 * (alpha - alpha * alpha + alpha * s / int(b))


def iid_coefficient(model: spectra.FadingModel, b: int, alpha: float) -> float:
    """Per-symbol second-order coefficient of IID on-off inputs at the same
    duty cycle (independent amplitudes give the alpha^2 cross moment)."""
    alpha = _check_alpha(alpha)
    s = s_of_b(model, b)
    return 0.5 * (alpha - alpha * alpha + alpha * alpha * s / int(b))


def scheme_coefficients(model: spectra.FadingModel, b: int, alpha: float) -> SchemeCoefficients:
    alpha = _check_alpha(alpha)
    b = int(b)
    s = s_of_b(model, b)
    return SchemeCoefficients(
        b=b, alpha=alpha, s_of_b=s,
        block_coeff=0.5 * (alpha - alpha * alpha + alpha * s / b),
        iid_coeff=0.5 * (alpha - alpha * alpha + alpha * alpha * s / b))


def _maximize_quadratic(objective, candidates) -> tuple[float, float]:
    """Max of a quadratic-in-alpha objective over [0, 1].

    Closed-form stationary candidates are decisive; the uniform grid is a
    safety net only.
    """
    best_alpha, best_val = None, -np.inf
    for cand in candidates:
        if cand is None:
            continue
        cand = min(max(float(cand), 0.0), 1.0)
        val = objective(cand)
        if val > best_val + 1e-15:
            best_alpha, best_val = cand, val
    grid_vals = objective(_ALPHA_GRID)
    gi = int(np.argmax(grid_vals))
    if grid_vals[gi] > best_val + 1e-12:
        best_alpha, best_val = float(_ALPHA_GRID[gi]), float(grid_vals[gi])
    return float(best_val), float(best_alpha)


def asymptotic_block_max(phi: float) -> tuple[float, float]:
    """(value, argmax) of the large-b block coefficient over the duty cycle.

    The objective is (alpha - alpha^2)/2 + phi*alpha; the value equals the
    capacity curvature and the argmax the optimal duty cycle.
    """
    phi = float(phi)
    return _maximize_quadratic(
        lambda a: (a - a * a) / 2.0 + phi * a,
        candidates=(phi + 0.5, 0.0, 1.0))


def asymptotic_iid_max(phi: float) -> tuple[float, float]:
    """(value, argmax) of the large-b IID coefficient over the duty cycle.

    The objective is (alpha - alpha^2)/2 + phi*alpha^2, whose interior
    stationary point 1/(2(1 - 2 phi)) is clamped into [0, 1].
    """
    phi = float(phi)
    interior = None
    if phi < 0.5:
        interior = 1.0 / (2.0 * (1.0 - 2.0 * phi))
    return _maximize_quadratic(
        lambda a: (a - a * a) / 2.0 + phi * a * a,
        candidates=(interior, 0.0, 1.0))
