"""Gauge transformation between the ungauged and gauged truncated flows.

If ``u`` solves ``u_t + u_xxx = P_N(u^3 u_x)`` then ``v(x, t) = u(x - alpha(t), t)``
with ``alpha' = (1/2 pi) int u^3 dx`` solves the gauged equation
``v_t + v_xxx = P_N((v^3 - mean(v^3)) v_x)``.  Translations commute with
``P_N`` and with pointwise products, so at every truncation this is an exact
conjugacy of the two ODE systems; only quadrature of ``alpha`` in time
separates the discrete trajectories.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .flow import FlowConfig, Trajectory
from .spectral import SpectralField, as_coeffs, modes, power_integral

__all__ = [
    "GaugeRecord",
    "cubic_mean",
    "gauge_shift",
    "translate",
    "apply_gauge",
]

DIRECTIONS = ("forward", "inverse")


@dataclass(frozen=True, eq=False)
class GaugeRecord:
    """Accumulated shift ``alpha(t_k)`` (raw, in units of torus length)."""

    times: np.ndarray
    alpha: np.ndarray
    direction: str = "forward"

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")

    @property
    def alpha_mod(self) -> np.ndarray:
        """Shift reduced to ``[0, 2 pi)`` for use as a translation."""
        return np.mod(self.alpha, 2 * np.pi)


def cubic_mean(c) -> np.ndarray:
    """``(1/2 pi) int u^3 dx`` for fields or coefficient batches."""
    return power_integral(as_coeffs(c), 3) / (2.0 * np.pi)


def gauge_shift(traj: Trajectory, direction: str = "forward") -> GaugeRecord:
    """Trapezoid-rule integral of ``mean(u^3)`` along the trajectory."""
    m = np.atleast_1d(cubic_mean(traj.states))
    if len(traj) == 1:
        alpha = np.zeros(1)
    else:
        alpha = cumulative_trapezoid(m, traj.times, initial=0.0)
    return GaugeRecord(traj.times, alpha, direction)


def translate(f, a):
    """``u(x) -> u(x - a)``, i.e. ``c_n -> exp(-i n a) c_n``.

    ``a`` may be an array broadcasting against the leading axes of a batch.
    """
    c = as_coeffs(f)
    a = np.asarray(a, dtype=float)
    out = c * np.exp(-1j * modes(c.shape[-1]) * a[..., None])
    return SpectralField(out) if isinstance(f, SpectralField) else out


def apply_gauge(traj: Trajectory, direction: str = "forward") -> Trajectory:
    """Map an ungauged trajectory to the gauged one (``forward``) or back (``inverse``).

    The shift is always accumulated from the input trajectory.  Since
    ``int v^3 = int u^3`` under translation, both directions see the same
    ``alpha`` and the roundtrip is the identity to rounding error.
    """
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}")
    rec = gauge_shift(traj, direction)
    sign = 1.0 if direction == "forward" else -1.0
    states = translate(traj.states, sign * rec.alpha_mod)
    variant = "gauged" if direction == "forward" else "ungauged"
    cfg = traj.config
    config = replace(cfg, variant=variant, nonlin_coeff=1.0 if variant == "gauged" else 0.25) \
        if cfg.nonlin_coeff != 0 else replace(cfg, variant=variant)
    return Trajectory(traj.times, states, config, traj.initial)
