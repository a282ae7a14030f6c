"""Sample-path synthesis: fading, on-off block inputs, channel application.

All randomness flows through counter-based Philox streams derived from one
64-bit master seed by fixed labels (fading, additive noise, block
amplitudes, symbol signs, estimator sampling), so each component is
independently reproducible and identical (model, n, seed) triples yield
bit-identical output.

Fading synthesis: the first-order autoregression uses its exact recursion
from a stationary start; other density models use circulant spectral
synthesis of length >= 8 n; spectral lines contribute complex exponentials
with a single Gaussian amplitude each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft
import scipy.signal

from . import spectra
from .errors import DomainError, EmbeddingFailure, TooShort

STREAM_LABELS = {
    "fading": 1,
    "noise": 2,
    "amplitude": 3,
    "sign": 4,
    "mi": 5,
}

#: circulant length multiplier over the requested path length
EMBED_FACTOR = 8

#: circulant eigenvalues in [-EMBED_CLIP, 0) are clipped to zero
EMBED_CLIP = 1e-8


def rng_stream(seed: int, label: str, index: int = 0) -> np.random.Generator:
    """Philox generator for one named stream of a master seed."""
    key = STREAM_LABELS[label]
    ss = np.random.SeedSequence(int(seed), spawn_key=(key, int(index)))
    return np.random.Generator(np.random.Philox(ss))


def _cn(rng: np.random.Generator, size) -> np.ndarray:
    """IID standard circularly symmetric complex Gaussians."""
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return (re + 1j * im) * np.sqrt(0.5)


@dataclass(frozen=True)
class BlockScheme:
    """On-off block-constant-magnitude input design.

    Per block of ``block_length`` symbols one amplitude is drawn: the peak
    ``amplitude`` with probability ``duty_cycle``, zero otherwise; each
    symbol independently carries a +-1 sign.  Every emitted symbol satisfies
    |x| <= amplitude surely.
    """

    amplitude: float
    duty_cycle: float
    block_length: int
    phase_alphabet: str = "binary_real"

    def __post_init__(self):
        if self.amplitude <= 0.0:
            raise DomainError("peak amplitude must be > 0")
        if not (0.0 <= self.duty_cycle <= 1.0):
            raise DomainError("duty cycle must lie in [0, 1]")
        if int(self.block_length) < 1:
            raise DomainError("block length must be >= 1")
        if self.phase_alphabet != "binary_real":
            raise DomainError("only the binary_real phase alphabet is implemented")
        object.__setattr__(self, "block_length", int(self.block_length))


@dataclass(frozen=True, eq=False)
class ChannelTrace:
    """One simulated channel run: y = h * x + z, sample by sample."""

    x: np.ndarray
    h: np.ndarray
    z: np.ndarray
    y: np.ndarray
    sigma2: float
    seed: int
    peak_amplitude: float
    snr: float
    model: str


def _circulant_path(eigenvalues: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    big_n = eigenvalues.size
    xi = _cn(rng, big_n)
    coef = np.sqrt(eigenvalues) * xi
    path = scipy.fft.ifft(coef) * np.sqrt(big_n)
    return np.ascontiguousarray(path[:n])


def _embed_length(n: int) -> int:
    return scipy.fft.next_fast_len(EMBED_FACTOR * n)


def _synthesize(model: spectra.FadingModel, n: int, rng: np.random.Generator) -> np.ndarray:
    k = model.kind

    if k is spectra.ModelKind.MEMORYLESS:
        return _cn(rng, n)

    if k is spectra.ModelKind.AR1:
        a = model.a
        h0 = _cn(rng, 1)[0]
        if n == 1:
            return np.array([h0])
        v = _cn(rng, n - 1)
        drive = np.sqrt(1.0 - abs(a) ** 2) * v
        rest, _ = scipy.signal.lfilter([1.0], [1.0, -a], drive, zi=np.array([a * h0]))
        return np.concatenate([[h0], rest])

    if k is spectra.ModelKind.LINE_PLUS_RESIDUAL:
        ks = np.arange(n)
        h = np.zeros(n, dtype=complex)
        for loc, mass in model.jumps:
            g = _cn(rng, 1)[0]
            h += np.sqrt(mass) * g * np.exp(2j * np.pi * loc * ks)
        if model.residual is not None:
            h += np.sqrt(spectra.residual_weight(model)) * _synthesize(model.residual, n, rng)
        return h

    big_n = _embed_length(n)
    if k is spectra.ModelKind.TABULATED_AUTOCORR:
        # circulant row from the exact lags; the truncated table may imply a
        # slightly indefinite spectrum, hence the clipping policy
        r = model.values
        m = min(r.size - 1, big_n // 2)
        row = np.zeros(big_n, dtype=complex)
        row[:m + 1] = r[:m + 1]
        if m >= 1:
            row[big_n - m:] = np.conj(r[1:m + 1][::-1])
        eig = np.real(scipy.fft.fft(row))
        lo = float(eig.min())
        if lo < -EMBED_CLIP:
            raise EmbeddingFailure(
                f"circulant eigenvalue {lo:.3e} below the clipping floor -{EMBED_CLIP:g}")
        eig = np.maximum(eig, 0.0)
    else:
        # sample the density at the circulant frequencies; normalization pins
        # the synthesized variance at exactly one
        freqs = np.fft.fftfreq(big_n, d=1.0)
        eig = np.asarray(spectra.density(model, freqs), dtype=float)
        mean = float(eig.mean())
        if mean <= 0.0:
            raise EmbeddingFailure("density sampled to zero everywhere on the synthesis grid")
        eig = eig / mean
    return _circulant_path(eig, n, rng)


def gen_fading(model: spectra.FadingModel, n: int, seed: int) -> np.ndarray:
    """Stationary fading path of length n for the given master seed."""
    n = int(n)
    if n < 1:
        raise DomainError("path length must be >= 1")
    return _synthesize(model, n, rng_stream(seed, "fading"))


def gen_inputs(scheme: BlockScheme, n: int, seed: int) -> np.ndarray:
    """Input path x_k = U_{floor(k/b)} * D_k of length n.

    U are IID on-off block amplitudes, D are IID +-1 signs, independent of
    each other; the peak constraint holds surely.
    """
    n = int(n)
    if n < 1:
        raise DomainError("input length must be >= 1")
    b = scheme.block_length
    n_blocks = -(-n // b)
    rng_u = rng_stream(seed, "amplitude")
    rng_d = rng_stream(seed, "sign")
    u = scheme.amplitude * (rng_u.random(n_blocks) < scheme.duty_cycle)
    d = rng_d.integers(0, 2, size=n) * 2 - 1
    x = u[np.arange(n) // b] * d
    return x.astype(complex)


def apply_channel(x: np.ndarray, model: spectra.FadingModel, sigma2: float,
                  seed: int) -> ChannelTrace:
    """Pass inputs through the channel with freshly drawn fading and noise."""
    sigma2 = float(sigma2)
    if sigma2 <= 0.0:
        raise DomainError("noise variance must be > 0")
    x = np.asarray(x, dtype=complex)
    n = x.size
    h = gen_fading(model, n, seed)
    z = np.sqrt(sigma2) * _cn(rng_stream(seed, "noise"), n)
    y = h * x + z
    peak = float(np.max(np.abs(x))) if n else 0.0
    return ChannelTrace(x=x, h=h, z=z, y=y, sigma2=sigma2, seed=int(seed),
                        peak_amplitude=peak, snr=peak * peak / sigma2,
                        model=spectra.model_label(model))


@dataclass(frozen=True, eq=False)
class AutocorrEstimate:
    """Biased lag estimates (1/n) sum h_{k+m} conj(h_k) with jackknife errors."""

    lags: np.ndarray
    values: np.ndarray
    std_errors: np.ndarray
    n: int


def empirical_autocorr(h: np.ndarray, m_max: int, n_blocks: int = 50) -> AutocorrEstimate:
    """Estimate R(m) for m = 0..m_max from one path.

    Standard errors come from a delete-one-block jackknife over ``n_blocks``
    contiguous segments of the lag products, which stays honest under the
    serial dependence of the path.
    """
    h = np.asarray(h)
    n = h.size
    m_max = int(m_max)
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    if n < 10 * max(m_max, 1):
        raise TooShort(f"need at least {10 * max(m_max, 1)} samples, got {n}")

    lags = np.arange(m_max + 1)
    values = np.empty(m_max + 1, dtype=complex)
    errors = np.empty(m_max + 1)
    for m in lags:
        prod = h[m:] * np.conj(h[:n - m]) if m else (h * np.conj(h)).astype(complex)
        values[m] = prod.sum() / n
        blocks = np.array_split(prod, n_blocks)
        sums = np.array([b.sum() for b in blocks])
        sizes = np.array([b.size for b in blocks])
        total, count = prod.sum(), prod.size
        loo = (total - sums) / (count - sizes)
        mean_loo = loo.mean()
        var = (n_blocks - 1) / n_blocks * np.sum(np.abs(loo - mean_loo) ** 2)
        errors[m] = np.sqrt(var) * (count / n)
    return AutocorrEstimate(lags=lags, values=values, std_errors=errors, n=n)


def trace_to_csv(trace: ChannelTrace, fh) -> None:
    """Write a trace in the columnar text format.

    The header comment carries the model, noise variance, peak amplitude and
    seed; columns are k,re_x,im_x,re_h,im_h,re_y,im_y.
    """
    fh.write(f"# model={trace.model} sigma2={trace.sigma2:.12g} "
             f"A={trace.peak_amplitude:.12g} snr={trace.snr:.12g} "
             f"seed={trace.seed} n={trace.x.size}\n")
    fh.write("k,re_x,im_x,re_h,im_h,re_y,im_y\n")
    for k in range(trace.x.size):
        row = (trace.x[k].real, trace.x[k].imag,
               trace.h[k].real, trace.h[k].imag,
               trace.y[k].real, trace.y[k].imag)
        fh.write(str(k) + "," + ",".join(f"{v:.12g}" for v in row) + "\n")
