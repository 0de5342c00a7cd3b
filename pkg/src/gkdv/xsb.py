"""Discrete Bourgain-space norms and smoothing diagnostics.

A uniformly sampled trajectory ``c_n(t_k)``, ``t_k = k dt``, ``k < K``, is
multiplied by a window and transformed in time with

    h(n, tau_m) = dt * sum_k w_k c_n(t_k) exp(-i tau_m t_k),   tau_m = 2 pi m / (K dt),

so that linear waves ``exp(i n^3 t)`` sit at ``tau = n^3`` and the dispersive
weight is ``<tau - n^3>``.  With ``dtau = 2 pi / (K dt)`` the norms are

    X^{s,b}:  sum_{n != 0} sum_m <n>^{2s} <tau_m - n^3>^{2b} |h|^2 dtau
    Y^{s,b}:  2 pi sum_{n != 0} <n>^{2s} ( (1/2 pi) sum_m <tau_m - n^3>^b |h| dtau )^2

(each under a square root).  For ``s = b = 0`` and a box window the X norm
is exactly the discrete ``L^2_{x,t}`` norm, and ``Y^{s,0}`` dominates
``max_k ||w_k u(t_k)||_{H^s}``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy import integrate as spi

from .flow import FlowConfig, Trajectory, duhamel_part, integrate
from .spectral import bracket, modes, sobolev_norms

__all__ = [
    "SpaceTimeSpectrum",
    "XsbSpec",
    "ResolutionWarning",
    "spacetime_spectrum",
    "xsb_norm",
    "linear_window_ratios",
    "cutoff_equivalence_check",
    "parseval_check",
    "SmoothingTable",
    "smoothing_diagnostic",
    "data_norm_slope",
    "CalculusCheck",
    "calculus_inequality_check",
]

WINDOWS = ("hann", "box")


class ResolutionWarning(UserWarning):
    """The time sampling cannot resolve the highest linear frequency."""


@dataclass(frozen=True, eq=False)
class SpaceTimeSpectrum:
    """``coeffs[j, m]`` is ``h(n_j, tau_m)`` for ``n_j`` in ``-N..-1, 1..N``."""

    coeffs: np.ndarray
    n: np.ndarray
    tau: np.ndarray
    window: str
    T_w: float

    @property
    def N(self) -> int:
        return int(np.max(np.abs(self.n)))

    @property
    def dtau(self) -> float:
        return 2.0 * np.pi / self.T_w

    def scaled(self, factor: float) -> "SpaceTimeSpectrum":
        return replace(self, coeffs=self.coeffs * factor)


@dataclass(frozen=True)
class XsbSpec:
    s: float
    b: float
    kind: str = "X"

    def __post_init__(self):
        if self.kind not in ("X", "Y", "Z"):
            raise ValueError("norm kind must be X, Y or Z")


def _window(name: str, K: int) -> np.ndarray:
    if name == "box":
        return np.ones(K)
    if name == "hann":
        # periodic Hann: exact partition of unity under half-overlap, zero at t = 0
        return 0.5 - 0.5 * np.cos(2 * np.pi * np.arange(K) / K)
    raise ValueError(f"window must be one of {WINDOWS}")


def spacetime_spectrum(traj: Trajectory, window: str = "hann", min_samples: int = 64) -> SpaceTimeSpectrum:
    """Windowed time DFT of every mode of a uniformly sampled trajectory."""
    K = len(traj)
    if K < min_samples:
        raise ValueError(f"need at least {min_samples} time samples, got {K}")
    dt = traj.dt_out
    if not np.allclose(np.diff(traj.times), dt, rtol=1e-9, atol=0):
        raise ValueError("trajectory must be uniformly sampled")
    N = traj.N
    nyquist = np.pi / dt
    if N ** 3 > nyquist:
        warnings.warn(f"linear frequency {N ** 3} exceeds the sampling limit {nyquist:.4g}; "
                      f"modes above {int(nyquist ** (1 / 3))} alias in tau", ResolutionWarning, stacklevel=2)
    w = _window(window, K)[:, None]
    pos = traj.states * w
    full = np.concatenate([np.conj(pos[:, ::-1]), pos], axis=1)
    n = np.concatenate([-modes(N)[::-1], modes(N)]).astype(int)
    h = dt * np.fft.fftshift(np.fft.fft(full, axis=0), axes=0).T
    m = np.arange(-(K // 2), K - K // 2)
    T_w = K * dt
    tau = 2 * np.pi * m / T_w
    return SpaceTimeSpectrum(h, n, tau, window, T_w)


def _weights(sp: SpaceTimeSpectrum, s: float, b: float) -> np.ndarray:
    sigma = sp.tau[None, :] - (sp.n.astype(float) ** 3)[:, None]
    return (bracket(sp.n)[:, None] ** s) * bracket(sigma) ** b


def xsb_norm(sp: SpaceTimeSpectrum, spec: XsbSpec) -> float:
    """X, Y or Z = X^{s,b} + Y^{s,b-1/2} norm of a space-time spectrum."""
    if spec.kind == "Z":
        return xsb_norm(sp, XsbSpec(spec.s, spec.b, "X")) + xsb_norm(sp, XsbSpec(spec.s, spec.b - 0.5, "Y"))
    dtau = sp.dtau
    if spec.kind == "X":
        w = _weights(sp, spec.s, spec.b)
        return float(np.sqrt(np.sum((w * np.abs(sp.coeffs)) ** 2) * dtau))
    w = _weights(sp, 0.0, spec.b)
    l1 = np.sum(w * np.abs(sp.coeffs), axis=1) * dtau / (2 * np.pi)
    return float(np.sqrt(2 * np.pi * np.sum(bracket(sp.n) ** (2 * spec.s) * l1 ** 2)))


def parseval_check(traj: Trajectory) -> float:
    """Relative gap between the box-window ``X^{0,0}`` norm and ``(dt sum_k ||u(t_k)||_2^2)^{1/2}``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResolutionWarning)
        x = xsb_norm(spacetime_spectrum(traj, "box", min_samples=1), XsbSpec(0.0, 0.0))
    direct = np.sqrt(traj.dt_out * 4 * np.pi * np.sum(np.abs(traj.states) ** 2))
    if direct == 0:
        return float(x)
    return float(abs(x - direct) / direct)


def _linear_trajectory(N: int, mode: int, amplitude: complex, T: float, dt: float) -> Trajectory:
    K = int(round(T / dt))
    t = dt * np.arange(K)
    states = np.zeros((K, N), complex)
    states[:, mode - 1] = amplitude * np.exp(1j * mode ** 3 * t)
    return Trajectory(t, states, FlowConfig(N=N, dt=dt, T=T, nonlin_coeff=0.0, max_dt=np.inf))


def linear_window_ratios(N: int, s: float, b: float, T: float = 2 * np.pi, dt: float | None = None,
                         window: str = "hann") -> np.ndarray:
    """``||w(t) S(t) phi||_{X^{s,b}} / ||phi||_{H^s}`` for ``phi`` on a single mode ``n = 1..N/2``."""
    top = max(1, N // 2)
    if dt is None:
        dt = 0.5 * np.pi / top ** 3
    out = []
    for n in range(1, top + 1):
        amp = 1.0 / np.sqrt(4 * np.pi * bracket(n) ** (2 * s))
        traj = _linear_trajectory(N, n, amp, T, dt)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ResolutionWarning)
            sp = spacetime_spectrum(traj, window)
        out.append(xsb_norm(sp, XsbSpec(s, b, "X")))
    return np.array(out)


def cutoff_equivalence_check(traj: Trajectory, s: float, b: float) -> float:
    """Ratio of the sharp-cutoff (box) X^{s,b} norm to the smooth-window (hann) proxy."""
    if not b < 0.5:
        raise ValueError("the cutoff comparison needs b < 1/2")
    if not np.any(traj.states):
        return 1.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResolutionWarning)
        sharp = xsb_norm(spacetime_spectrum(traj, "box"), XsbSpec(s, b))
        smooth = xsb_norm(spacetime_spectrum(traj, "hann"), XsbSpec(s, b))
    return sharp / smooth


# ---------------------------------------------------------------------------
# nonlinear smoothing
# ---------------------------------------------------------------------------

def data_norm_slope(Ns: Sequence[int], s: float) -> float:
    """Log-log slope in ``N`` of ``(E ||P_N u0||_{H^s}^2)^{1/2}`` under the Wiener measure."""
    Ns = np.asarray(Ns, dtype=float)
    vals = []
    for N in Ns.astype(int):
        n = modes(N)
        vals.append(np.sqrt(4 * np.pi * np.sum(bracket(n) ** (2 * s) / n ** 2)))
    return float(np.polyfit(np.log(Ns), np.log(vals), 1)[0])


@dataclass(frozen=True)
class SmoothingTable:
    Ns: tuple[int, ...]
    duhamel: np.ndarray
    data: np.ndarray
    duhamel_slope: float
    data_slope: float
    analytic_slope: float
    s: float

    def rows(self):
        for N, d, u in zip(self.Ns, self.duhamel, self.data):
            yield int(N), float(d), float(u)


def _slope(Ns, vals) -> float:
    vals = np.asarray(vals, dtype=float)
    if len(Ns) < 2 or np.any(vals <= 0):
        return float("nan")
    return float(np.polyfit(np.log(Ns), np.log(vals), 1)[0])


def smoothing_diagnostic(samples: np.ndarray, Ns: Sequence[int], delta: float, T: float,
                         cfg: FlowConfig | None = None) -> SmoothingTable:
    """Median sizes of the data and of the Duhamel part in ``H^{1/2 + delta}``.

    ``samples`` is an ``(M, N_max)`` coefficient array (or anything with a
    ``coeffs`` attribute) with ``N_max >= max(Ns)``.  For each ``N`` the
    samples are truncated to ``P_N``, evolved together to time ``T``, and the
    median over samples of ``max_t ||D(t)||`` is recorded next to the median
    of ``||P_N u0||``.  Runs are adaptive (see ``FlowConfig.adaptive``):
    rough data at large ``N`` concentrate and need far smaller steps than
    the output grid.
    """
    if not 0 < delta < 0.25:
        raise ValueError("delta must lie in (0, 1/4)")
    Ns = [int(N) for N in Ns]
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("truncations must increase")
    c = np.asarray(getattr(samples, "coeffs", samples), dtype=complex)
    if c.ndim == 1:
        c = c[None, :]
    if c.shape[1] < Ns[-1]:
        raise ValueError("samples carry fewer modes than the largest truncation")
    s = 0.5 + delta
    template = cfg or FlowConfig(N=Ns[-1], dt=min(1e-4, 0.5 / Ns[-1]), T=T)
    duh, data = [], []
    for N in Ns:
        c0 = c[:, :N]
        run = replace(template, N=N, T=T, adaptive=True)
        times, states = integrate(c0, run)
        traj_d = states - c0[:, None, :] * np.exp(1j * modes(N) ** 3 * times[:, None])
        duh.append(float(np.median(np.max(sobolev_norms(traj_d, s), axis=1))))
        data.append(float(np.median(sobolev_norms(c0, s))))
    return SmoothingTable(tuple(Ns), np.array(duh), np.array(data), _slope(Ns, duh), _slope(Ns, data),
                          data_norm_slope(Ns, s), s)


# ---------------------------------------------------------------------------
# calculus inequality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CalculusCheck:
    a: np.ndarray
    integrals: np.ndarray
    ratios: np.ndarray
    alpha: float
    max_ratio: float
    warnings: tuple[str, ...] = ()


def calculus_inequality_check(delta1: float, delta2: float, a_values: Sequence[float]) -> CalculusCheck:
    """``max_a <a>^alpha int dtheta / (<theta>^d1 <a - theta>^d2)``, ``alpha = d1 - (1 - d2)_+``."""
    if not (0 < delta1 <= delta2 and delta1 + delta2 > 1):
        raise ValueError("need 0 < delta1 <= delta2 and delta1 + delta2 > 1")
    alpha = delta1 - max(1.0 - delta2, 0.0)
    a_values = np.asarray(a_values, dtype=float)
    ints, notes = [], []

    def f(th, a):
        return 1.0 / (bracket(th) ** delta1 * bracket(a - th) ** delta2)

    for a in a_values:
        lo, hi = min(0.0, a), max(0.0, a)
        pieces = [(-np.inf, lo), (hi, np.inf)]
        if hi > lo:
            mid = 0.5 * (lo + hi)
            pieces += [(lo, mid), (mid, hi)]
        total = 0.0
        for p, q in pieces:
            with warnings.catch_warnings():
                warnings.simplefilter("error", spi.IntegrationWarning)
                try:
                    val, _ = spi.quad(f, p, q, args=(a,), limit=500, epsabs=0, epsrel=1e-10)
                except spi.IntegrationWarning as exc:
                    warnings.simplefilter("ignore", spi.IntegrationWarning)
                    val, _ = spi.quad(f, p, q, args=(a,), limit=2000)
                    notes.append(f"a={a:g} on [{p}, {q}]: {exc}")
            total += val
        ints.append(total)
    ints = np.array(ints)
    ratios = ints * bracket(a_values) ** alpha
    return CalculusCheck(a_values, ints, ratios, alpha, float(ratios.max()), tuple(notes))
