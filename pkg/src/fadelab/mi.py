"""Per-block mutual information at small SNR: exact second-order
coefficients and seeded Monte Carlo estimation.

For a finite-support input law on b symbols, the coefficient of SNR^2 in
the per-block mutual information is

    (1/(2 A^4)) * sum_{ij} |R(i-j)|^2 (E[|X_i|^2 |X_j|^2] - |E[X_i X_j^*]|^2)

which for the on-off block scheme collapses to (b(alpha - alpha^2) +
alpha S(b)) / 2.  The Monte Carlo estimator draws (x, y) from the true
joint law and averages log p(y|x) - log p(y), with p(y) the exact finite
Gaussian mixture; support points whose conditional covariances coincide
(global sign flips) are merged first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.special import logsumexp

from . import spectra
from .errors import BlockTooLarge, DomainError, IllConditioned
from .simulate import BlockScheme, rng_stream, _cn

#: mixture enumeration cap on the block length
BLOCK_CAP = 12

#: internal batch size for vectorized sampling (fixed: results must not
#: depend on it)
_CHUNK = 1 << 18

_LOG_PI = float(np.log(np.pi))


@dataclass(frozen=True, eq=False)
class DiscreteInputLaw:
    """Finite-support law on complex b-vectors."""

    support: np.ndarray        # (K, b) complex
    probabilities: np.ndarray  # (K,) positive, summing to one

    def __post_init__(self):
        sup = np.asarray(self.support, dtype=complex)
        p = np.asarray(self.probabilities, dtype=float)
        if sup.ndim != 2 or p.ndim != 1 or sup.shape[0] != p.size:
            raise DomainError("support must be (K, b) with K matching the probabilities")
        if np.any(p <= 0.0):
            raise DomainError("probabilities must be strictly positive")
        if abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"probabilities sum to {p.sum():.15g}, expected 1")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "probabilities", p)

    @property
    def block_length(self) -> int:
        return self.support.shape[1]

    @property
    def peak_amplitude(self) -> float:
        return float(np.max(np.abs(self.support))) if self.support.size else 0.0


@dataclass(frozen=True)
class MIEstimate:
    """Monte Carlo per-block mutual information estimate, in nats."""

    block_length: int
    snr: float
    duty_cycle: float
    estimate: float
    std_error: float
    n_samples: int
    seed: int
    n_partitions: int = 1


@dataclass(frozen=True)
class FitResult:
    """Weighted least-squares extraction of the SNR^2 coefficient."""

    coefficient: float
    std_error: float
    cubic_coefficient: float
    n_points: int


def scheme_to_law(scheme: BlockScheme) -> DiscreteInputLaw:
    """Enumerate the block scheme as a finite-support law.

    Support is the zero block plus amplitude times every sign pattern;
    probabilities are 1 - alpha and alpha / 2^b.  Zero-probability atoms are
    dropped.  Verified moments: E[X_k X_j^*] = alpha A^2 1{k=j} and
    E[|X_k|^2 |X_j|^2] = alpha A^4 for all k, j in a block.
    """
    b = scheme.block_length
    if b > BLOCK_CAP:
        raise BlockTooLarge(f"block length {b} exceeds the enumeration cap {BLOCK_CAP}")
    alpha = scheme.duty_cycle
    amp = scheme.amplitude
    rows, probs = [], []
    if alpha < 1.0:
        rows.append(np.zeros(b, dtype=complex))
        probs.append(1.0 - alpha)
    if alpha > 0.0:
        p_each = alpha / 2 ** b
        for signs in itertools.product((1.0, -1.0), repeat=b):
            rows.append(amp * np.asarray(signs, dtype=complex))
            probs.append(p_each)
    return DiscreteInputLaw(support=np.array(rows), probabilities=np.array(probs))


def cond_covariance(x: np.ndarray, model: spectra.FadingModel, sigma2: float) -> np.ndarray:
    """Conditional output covariance given the input block x.

    Entry (i, j) is R(i-j) x_i conj(x_j) plus sigma2 on the diagonal;
    Hermitian positive definite for sigma2 > 0.
    """
    sigma2 = float(sigma2)
    if sigma2 <= 0.0:
        raise DomainError("noise variance must be > 0")
    x = np.asarray(x, dtype=complex)
    b = x.size
    t = spectra.toeplitz_cov(model, b)
    return t * np.outer(x, np.conj(x)) + sigma2 * np.eye(b)


def law_moments(law: DiscreteInputLaw) -> tuple[np.ndarray, np.ndarray]:
    """Second-moment matrix E[X X^H] and fourth-moment table E[|X_i|^2 |X_j|^2]."""
    p = law.probabilities
    x = law.support
    ax2 = np.abs(x) ** 2
    m = np.einsum("k,ki,kj->ij", p, x, np.conj(x))
    q = np.einsum("k,ki,kj->ij", p, ax2, ax2)
    return m, q


def second_order_coeff_exact(law: DiscreteInputLaw, model: spectra.FadingModel) -> float:
    """Exact per-block coefficient of SNR^2 for a finite-support law.

    A variance-like difference of |R|^2-weighted moments; non-negative for
    every law by Cauchy-Schwarz per entry.  For the on-off block scheme it
    equals b times the per-symbol block coefficient.
    """
    a4 = law.peak_amplitude ** 4
    if a4 == 0.0:
        return 0.0
    b = law.block_length
    r = spectra.autocorr_lags(model, b - 1)
    t = scipy.linalg.toeplitz(r, np.conj(r))
    abs_t2 = np.abs(t) ** 2
    m, q = law_moments(law)
    first = float(np.sum(abs_t2 * q))
    second = float(np.sum(abs_t2 * np.abs(m) ** 2))
    return (first - second) / (2.0 * a4)


class _Mixture:
    """Cholesky-factored covariance classes of a law under one channel."""

    def __init__(self, law: DiscreteInputLaw, model: spectra.FadingModel, sigma2: float):
        b = law.block_length
        if b > BLOCK_CAP:
            raise BlockTooLarge(f"block length {b} exceeds the enumeration cap {BLOCK_CAP}")
        keys: dict[bytes, int] = {}
        chols: list[np.ndarray] = []
        logdets: list[float] = []
        weights: list[float] = []
        class_of_row = np.empty(law.support.shape[0], dtype=int)
        for idx, row in enumerate(law.support):
            key = _canonical_key(row)
            if key not in keys:
                cov = cond_covariance(row, model, sigma2)
                chol = np.linalg.cholesky(cov)
                keys[key] = len(chols)
                chols.append(chol)
                logdets.append(2.0 * float(np.sum(np.log(np.real(np.diag(chol))))))
                weights.append(0.0)
            ci = keys[key]
            class_of_row[idx] = ci
            weights[ci] += float(law.probabilities[idx])
        self.b = b
        self.chols = chols
        self.logdets = np.asarray(logdets)
        self.weights = np.asarray(weights)
        self.log_weights = np.log(self.weights)
        self.class_of_row = class_of_row

    @property
    def n_classes(self) -> int:
        return len(self.chols)

    def class_logpdfs(self, y: np.ndarray) -> np.ndarray:
        """(n_classes, m) conditional log densities for a batch of outputs."""
        y = np.atleast_2d(y)
        out = np.empty((self.n_classes, y.shape[0]))
        for ci, chol in enumerate(self.chols):
            z = scipy.linalg.solve_triangular(chol, y.T, lower=True, check_finite=False)
            quad = np.sum(np.abs(z) ** 2, axis=0)
            out[ci] = -quad - self.b * _LOG_PI - self.logdets[ci]
        return out

    def mixture_logpdf(self, y: np.ndarray) -> np.ndarray:
        lp = self.class_logpdfs(y)
        return logsumexp(lp + self.log_weights[:, None], axis=0)


def _canonical_key(x: np.ndarray) -> bytes:
    """Hashable key identifying the conditional covariance of x.

    The covariance depends on x only through x_i conj(x_j), so a global
    phase is removed before rounding.
    """
    mags = np.abs(x)
    if np.all(mags == 0.0):
        return b"zero"
    first = int(np.argmax(mags > 0.0))
    phase = x[first] / mags[first]
    canon = np.round(x * np.conj(phase), 12) + (0.0 + 0.0j)  # flush -0.0
    return canon.tobytes()


def log_output_density(y: np.ndarray, law: DiscreteInputLaw,
                       model: spectra.FadingModel, sigma2: float) -> float:
    """log of the exact output mixture density at one output block y."""
    mix = _Mixture(law, model, sigma2)
    y = np.asarray(y, dtype=complex).reshape(1, -1)
    if y.shape[1] != law.block_length:
        raise DomainError("output block length does not match the law")
    return float(mix.mixture_logpdf(y)[0])


def _merge_moments(n1, mean1, m2_1, n2, mean2, m2_2):
    """Chan-style pooling of (count, mean, sum of squared deviations)."""
    if n2 == 0:
        return n1, mean1, m2_1
    if n1 == 0:
        return n2, mean2, m2_2
    delta = mean2 - mean1
    n = n1 + n2
    mean = mean1 + delta * n2 / n
    m2 = m2_1 + m2_2 + delta * delta * n1 * n2 / n
    return n, mean, m2


def mi_monte_carlo(scheme: BlockScheme, model: spectra.FadingModel, sigma2: float,
                   n_samples: int, seed: int, n_partitions: int = 1) -> MIEstimate:
    """Monte Carlo estimate of the per-block mutual information in nats.

    Draws (x, y) from the joint law (y sampled directly from its conditional
    Gaussian) and averages log p(y|x) - log p(y).  Sampling is split into
    ``n_partitions`` sub-streams with fixed sizes; the merged estimate is
    deterministic for a fixed (seed, n_partitions).
    """
    n_samples = int(n_samples)
    if n_samples < 10_000:
        raise DomainError("need at least 1e4 samples for a meaningful standard error")
    n_partitions = int(n_partitions)
    if n_partitions < 1:
        raise DomainError("n_partitions must be >= 1")
    law = scheme_to_law(scheme)
    mix = _Mixture(law, model, sigma2)

    base = n_samples // n_partitions
    sizes = [base + (1 if i < n_samples % n_partitions else 0)
             for i in range(n_partitions)]

    tot_n, tot_mean, tot_m2 = 0, 0.0, 0.0
    for pi, n_p in enumerate(sizes):
        if n_p == 0:
            continue
        rng = rng_stream(seed, "mi", pi)
        counts = rng.multinomial(n_p, mix.weights / mix.weights.sum())
        for ci, m_c in enumerate(counts):
            left = int(m_c)
            chol_t = mix.chols[ci].T
            while left > 0:
                m = min(left, _CHUNK)
                xi = _cn(rng, (m, mix.b))
                y = xi @ chol_t
                lp = mix.class_logpdfs(y)
                ratio = lp[ci] - logsumexp(lp + mix.log_weights[:, None], axis=0)
                c_n = ratio.size
                c_mean = float(ratio.mean())
                c_m2 = float(np.sum((ratio - c_mean) ** 2))
                tot_n, tot_mean, tot_m2 = _merge_moments(
                    tot_n, tot_mean, tot_m2, c_n, c_mean, c_m2)
                left -= m

    var = tot_m2 / (tot_n - 1) if tot_n > 1 else 0.0
    std_error = float(np.sqrt(var / tot_n))
    return MIEstimate(
        block_length=scheme.block_length,
        snr=scheme.amplitude ** 2 / float(sigma2),
        duty_cycle=scheme.duty_cycle,
        estimate=float(tot_mean),
        std_error=std_error,
        n_samples=n_samples,
        seed=int(seed),
        n_partitions=n_partitions,
    )


def _as_points(points) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    snrs, ests, errs = [], [], []
    for p in points:
        if isinstance(p, MIEstimate):
            snrs.append(p.snr)
            ests.append(p.estimate)
            errs.append(p.std_error)
        else:
            s, e, se = p
            snrs.append(float(s))
            ests.append(float(e))
            errs.append(float(se))
    return np.asarray(snrs), np.asarray(ests), np.asarray(errs)


def fit_coefficient(points) -> FitResult:
    """Extract the SNR^2 coefficient from estimates at several small SNRs.

    Weighted least squares of the estimates against SNR^2 with an SNR^3
    nuisance term absorbing the leading bias.  Points are MIEstimate objects
    or (snr, estimate, std_error) triples; zero standard errors fall back to
    an unweighted fit.
    """
    snr, est, err = _as_points(points)
    uniq = np.unique(snr)
    if uniq.size < 3:
        raise DomainError("need at least 3 distinct SNR values")
    if np.any(snr > 0.5):
        raise DomainError("fit is only meaningful for SNR <= 0.5")
    if uniq.max() / uniq.min() < 2.0:
        raise IllConditioned("SNR values must span at least a factor of 2")

    design = np.column_stack([snr ** 2, snr ** 3])
    weighted = np.all(err > 0.0)
    w = 1.0 / err ** 2 if weighted else np.ones_like(snr)
    sw = np.sqrt(w)
    beta, *_ = np.linalg.lstsq(design * sw[:, None], est * sw, rcond=None)
    gram_inv = np.linalg.inv(design.T @ (design * w[:, None]))
    if weighted:
        cov = gram_inv
    else:
        resid = est - design @ beta
        dof = snr.size - 2
        mse = float(resid @ resid) / dof if dof > 0 else 0.0
        cov = mse * gram_inv
    return FitResult(
        coefficient=float(beta[0]),
        std_error=float(np.sqrt(max(cov[0, 0], 0.0))),
        cubic_coefficient=float(beta[1]),
        n_points=int(snr.size),
    )
