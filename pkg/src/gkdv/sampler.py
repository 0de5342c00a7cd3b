"""Random initial data: Wiener samples and importance-weighted Gibbs ensembles.

Random numbers come from numpy's ``PCG64`` bit generator seeded through
``SeedSequence(seed, spawn_key=(stream_id,))``.  A draw of ``M`` fields with
``N`` modes takes one ``standard_normal((M, N, 2))`` block in C order; the
last axis holds the real and imaginary parts, each scaled by ``sqrt(1/2)``.
Sample ``i`` of an ensemble is therefore identical to row ``i`` of the block,
whatever the ensemble size.

Gibbs weights are taken with respect to the Wiener measure.  The Wiener
density in the coordinates ``c_n`` is ``exp(-sum_{n>=1} n^2 |c_n|^2)``, which
is ``exp(-(1/2 pi) * 1/2 int u_x^2)``.  The matching potential weight is
therefore ``exp(-(1/20) * (1/2 pi) int u^5)``: with this normalisation the
weighted measure is ``exp(-H(u) / 2 pi)`` times Lebesgue measure, a function
of the conserved Hamiltonian, and hence invariant under the truncated flow.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .spectral import SpectralField, modes, power_integral, sobolev_norms

__all__ = [
    "WienerSpec",
    "GibbsEnsemble",
    "EnsembleError",
    "InsufficientESS",
    "WeightClampWarning",
    "MIN_ESS",
    "LOG_WEIGHT_CAP",
    "make_rng",
    "wiener_coeffs",
    "sample_wiener",
    "log_gibbs_weights",
    "gibbs_weights",
    "gibbs_weight",
    "sample_gibbs_ensemble",
    "sample_gibbs",
    "effective_sample_size",
    "TailCurve",
    "tail_check",
]

log = logging.getLogger(__name__)

MIN_ESS = 10.0
LOG_WEIGHT_CAP = 700.0


class EnsembleError(ValueError):
    """The ensemble carries no usable weight."""


class InsufficientESS(RuntimeError):
    """Weighted statistics refused because the effective sample size is too small."""

    def __init__(self, ess: float, minimum: float = MIN_ESS):
        super().__init__(f"effective sample size {ess:.3g} is below {minimum:g}; "
                         "importance weights are degenerate")
        self.ess = ess
        self.minimum = minimum


class WeightClampWarning(RuntimeWarning):
    """A Gibbs weight overflowed and was clamped."""


@dataclass(frozen=True)
class WienerSpec:
    """Truncation ``N`` plus the seed and substream defining a reproducible draw."""

    N: int
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.stream_id < 0:
            raise ValueError("stream_id must be nonnegative")


def make_rng(spec: WienerSpec) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed, spawn_key=(spec.stream_id,))))


def wiener_coeffs(spec: WienerSpec, M: int) -> np.ndarray:
    """``(M, N)`` array of ``c_n = g_n / n`` with standard complex Gaussians ``g_n``."""
    z = make_rng(spec).standard_normal((M, spec.N, 2)) * np.sqrt(0.5)
    g = z[..., 0] + 1j * z[..., 1]
    return g / modes(spec.N)


def sample_wiener(spec: WienerSpec) -> SpectralField:
    """One Wiener sample, determined by ``(seed, stream_id, N)``."""
    return SpectralField(wiener_coeffs(spec, 1)[0])


def log_gibbs_weights(c: np.ndarray, B: float = np.inf) -> np.ndarray:
    """``-(1/20) * (1/2 pi) int u^5``, and ``-inf`` outside the ball ``||u||_2 <= B``."""
    c = np.asarray(c)
    logw = -power_integral(c, 5) / (20.0 * 2.0 * np.pi)
    outside = sobolev_norms(c, 0.0) > B
    return np.where(outside, -np.inf, logw)


def gibbs_weights(c: np.ndarray, B: float = np.inf) -> np.ndarray:
    """Exponentiated log weights, clamped at ``exp(700)`` with a warning."""
    logw = np.atleast_1d(log_gibbs_weights(c, B))
    over = logw > LOG_WEIGHT_CAP
    if np.any(over):
        msg = f"{int(over.sum())} Gibbs weight(s) exceeded exp({LOG_WEIGHT_CAP:g}) and were clamped"
        log.warning(msg)
        warnings.warn(msg, WeightClampWarning, stacklevel=2)
        logw = np.minimum(logw, LOG_WEIGHT_CAP)
    return np.exp(logw)


def gibbs_weight(f: SpectralField, B: float) -> float:
    """Gibbs density of one field relative to the Wiener measure."""
    if not B > 0:
        raise ValueError("cutoff B must be positive")
    return float(gibbs_weights(f.coeffs[None, :], B)[0])


def effective_sample_size(w: np.ndarray) -> float:
    w = np.asarray(w, dtype=float)
    s = w.sum()
    if s <= 0:
        return 0.0
    return float(s * s / np.sum(w * w))


@dataclass(frozen=True, eq=False)
class GibbsEnsemble:
    """Wiener samples ``coeffs`` (shape ``(M, N)``) with Gibbs importance weights."""

    coeffs: np.ndarray
    weights: np.ndarray
    B: float
    seed: int = 0
    stream_id: int = 0
    log_weights: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        w = np.array(self.weights, dtype=float)
        if c.ndim != 2 or w.shape != (c.shape[0],):
            raise ValueError("coeffs must be (M, N) with one weight per sample")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise ValueError("weights must be finite and nonnegative")
        if not np.any(w > 0):
            raise EnsembleError("every weight is zero; the cutoff excludes the whole ensemble")
        for a in (c, w):
            a.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "weights", w)

    @property
    def N(self) -> int:
        return self.coeffs.shape[1]

    @property
    def M(self) -> int:
        return self.coeffs.shape[0]

    @property
    def samples(self) -> list[SpectralField]:
        return [SpectralField(c) for c in self.coeffs]

    @property
    def ess(self) -> float:
        return effective_sample_size(self.weights)

    def require_ess(self, minimum: float = MIN_ESS) -> None:
        if self.ess < minimum:
            raise InsufficientESS(self.ess, minimum)

    def weighted_mean(self, values: np.ndarray, check: bool = True) -> tuple[float, float]:
        """Self-normalised estimate of a Gibbs expectation and its delta-method standard error."""
        if check:
            self.require_ess()
        values = np.asarray(values, dtype=float)
        w = self.weights / self.weights.sum()
        mean = float(np.sum(w * values))
        se = float(np.sqrt(np.sum(w * w * (values - mean) ** 2)))
        return mean, se

    def expectation(self, F: Callable[[np.ndarray], np.ndarray]) -> tuple[float, float]:
        """Estimate ``E_mu[F]`` for a vectorised observable acting on ``(M, N)`` arrays."""
        return self.weighted_mean(F(self.coeffs))

    def wiener_mean(self, F: Callable[[np.ndarray], np.ndarray]) -> tuple[float, float]:
        """Unweighted mean and standard error, i.e. the Wiener expectation."""
        v = np.asarray(F(self.coeffs), dtype=float)
        return float(v.mean()), float(v.std(ddof=1) / np.sqrt(len(v))) if len(v) > 1 else 0.0


def sample_gibbs_ensemble(spec: WienerSpec, B: float, M: int) -> GibbsEnsemble:
    """``M`` Wiener samples with weights ``exp(-(1/2 pi)(1/20) int u^5) 1{||u||_2 <= B}``."""
    if M < 1:
        raise ValueError("need at least one sample")
    if not B > 0:
        raise ValueError("cutoff B must be positive")
    c = wiener_coeffs(spec, M)
    logw = log_gibbs_weights(c, B)
    with warnings.catch_warnings():
        warnings.simplefilter("always", WeightClampWarning)
        w = gibbs_weights(c, B)
    return GibbsEnsemble(c, w, float(B), spec.seed, spec.stream_id, log_weights=logw)


def sample_gibbs(spec: WienerSpec, B: float, pool: int = 1000) -> SpectralField:
    """One approximate Gibbs draw by importance resampling from ``pool`` Wiener samples.

    The pool is the ensemble of ``sample_gibbs_ensemble(spec, B, pool)``;
    the index is drawn with probabilities proportional to the unclamped
    weights from a child stream of the same seed, so the draw is
    reproducible.
    """
    ens = sample_gibbs_ensemble(spec, B, pool)
    logw = ens.log_weights
    p = np.exp(logw - np.max(logw))
    p /= p.sum()
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(spec.seed, spawn_key=(spec.stream_id, 1))))
    return SpectralField(ens.coeffs[int(rng.choice(len(p), p=p))])


@dataclass(frozen=True)
class TailCurve:
    """Empirical ``log P(||u||_{H^s} > K)`` against ``K^2`` with its fitted slope."""

    K: np.ndarray
    log_tail: np.ndarray
    slope: float
    flagged: bool
    note: str = ""


def tail_check(spec: WienerSpec, s: float, samples: int, levels: int = 12, min_exceed: int = 20) -> TailCurve:
    """Gaussian tail of Sobolev norms of Wiener data, ``s < 1/2``.

    Levels ``K`` run from the median of the sampled norms up to the level
    exceeded by ``min_exceed`` samples.  The slope of ``log P(norm > K)``
    against ``K^2`` is negative for a Gaussian tail.
    """
    if not s < 0.5:
        raise ValueError("the tail estimate needs s < 1/2")
    norms = np.sort(sobolev_norms(wiener_coeffs(spec, samples), s))
    if samples < 2:
        return TailCurve(norms[:1], np.zeros(1), float("nan"), True, "one sample: slope undefined")
    top = max(samples - min_exceed, samples // 2 + 1)
    lo, hi = norms[samples // 2], norms[min(top, samples - 1)]
    K = np.linspace(lo, hi, levels) if hi > lo else np.array([lo])
    exceed = samples - np.searchsorted(norms, K, side="right")
    keep = exceed > 0
    K, exceed = K[keep], exceed[keep]
    logp = np.log(exceed / samples)
    if len(K) < 2:
        return TailCurve(K, logp, float("nan"), True, "fewer than two tail levels")
    slope = float(np.polyfit(K ** 2, logp, 1)[0])
    return TailCurve(K, logp, slope, False)
