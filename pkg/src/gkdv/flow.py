"""Time evolution of the frequency-truncated quartic gKdV system.

In Fourier variables the truncated gauged equation
``u_t + u_xxx = P_N( (u^3 - mean(u^3)) u_x )`` reads

    dc_n/dt = i n^3 c_n + lam * [ (u^3 - mean(u^3)) u_x ]_n,    1 <= n <= N,

with ``lam = 1``.  The ungauged variant drops the mean and uses
``lam = 1/4`` on ``d/dx (u^4)``, which is the same as coefficient 1 on
``u^3 u_x``.

The default integrator is integrating-factor RK4: the linear phase
``exp(i n^3 t)`` is applied exactly and RK4 acts on the rotating-frame
variable.  ``GL4``, the two-stage Gauss-Legendre collocation method, is
offered as well; it preserves every quadratic invariant of the vector field,
so the L2 norm is kept to the tolerance of its stage iteration.  Everything
works on batches ``(..., N)`` so whole ensembles move together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .spectral import (
    SpectralField,
    analyze,
    as_coeffs,
    modes,
    padded_size,
    sobolev_norms,
    synthesize,
)

__all__ = [
    "FlowConfig",
    "FlowError",
    "Trajectory",
    "CauchyRate",
    "dt_max",
    "stable_dt",
    "step_rates",
    "linear_propagate",
    "linear_phase",
    "nonlinear_coeffs",
    "nonlinear_term",
    "vector_field",
    "integrate",
    "evolve",
    "evolve_batch",
    "duhamel_part",
    "cauchy_rate",
]

VARIANTS = ("gauged", "ungauged")
INTEGRATORS = ("IFRK4", "GL4")
ALLOWED_COEFFS = (0.0, 0.25, 1.0)


class FlowError(RuntimeError):
    """The integration produced a non-finite state."""

    def __init__(self, step: int):
        super().__init__(f"non-finite state at step {step}")
        self.step = step


def dt_max(N: int) -> float:
    """Default step budget ``0.5 / N``."""
    return 0.5 / N


COURANT = 0.25
MAX_SUBSTEPS = 1 << 20


class _TooStiff(Exception):
    pass


def step_rates(c: np.ndarray, cfg: "FlowConfig") -> np.ndarray:
    """Per-state stiffness of the nonlinear term, shaped like the batch of ``c``.

    Linearising ``u^3 u_x`` about a state gives transport with speed ``u^3``
    on modes up to ``N`` plus multiplication by ``3 u^2 u_x``; the rate is the
    largest pointwise value of ``N |u|^3 + 3 u^2 |u_x|``.  The second term
    takes over once a solution concentrates into a narrow spike.
    """
    c = np.asarray(c, dtype=complex)
    N = c.shape[-1]
    M = padded_size(4 * N + 1)
    u = synthesize(c, M)
    ux = synthesize(1j * modes(N) * c, M)
    u2 = u * u
    return abs(cfg.cubic_coeff) * np.max(u2 * (N * np.abs(u) + 3 * np.abs(ux)), axis=-1)


def stable_dt(c: np.ndarray, cfg: "FlowConfig", courant: float | None = None) -> float:
    """Largest step keeping ``dt * step_rates`` below ``courant`` for every state in ``c``.

    RK4 is stable up to about 2.8 on the imaginary axis, but concentrating
    solutions are only resolved accurately well inside that, hence the
    default of one half.  Rough data with many modes need far smaller steps
    than the ``0.5 / N`` budget.
    """
    if cfg.cubic_coeff == 0:
        return math.inf
    courant = cfg.courant if courant is None else courant
    rate = float(np.max(step_rates(c, cfg)))
    return courant / rate if rate > 0 else math.inf


@dataclass(frozen=True)
class FlowConfig:
    """Parameters of one truncated flow.

    ``nonlin_coeff`` defaults to 1 for the gauged variant and to 1/4 for
    the ungauged one, where it multiplies ``d/dx (u^4)``.  The value 0 gives
    the linear flow and is used by control experiments.

    With ``adaptive`` set, every schedule step is split per state into
    enough substeps that ``substep * step_rates <= courant``; output times
    are unchanged.
    """

    N: int
    dt: float = 1e-3
    T: float = 1.0
    integrator: str = "IFRK4"
    nonlin_coeff: float | None = None
    variant: str = "gauged"
    output_stride: int | None = None
    max_dt: float | None = None
    adaptive: bool = False
    courant: float = COURANT

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if not (np.isfinite(self.dt) and self.dt > 0):
            raise ValueError("dt must be positive")
        if not (np.isfinite(self.T) and self.T >= 0):
            raise ValueError("horizon T must be nonnegative")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {INTEGRATORS}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.nonlin_coeff is None:
            object.__setattr__(self, "nonlin_coeff", 1.0 if self.variant == "gauged" else 0.25)
        if float(self.nonlin_coeff) not in ALLOWED_COEFFS:
            raise ValueError(f"nonlinearity coefficient must be one of {ALLOWED_COEFFS}")
        limit = dt_max(self.N) if self.max_dt is None else self.max_dt
        if self.dt > limit * (1 + 1e-12):
            raise ValueError(f"dt={self.dt} exceeds the step budget {limit} for N={self.N}")
        if not (np.isfinite(self.courant) and self.courant > 0):
            raise ValueError("courant number must be positive")
        if self.output_stride is not None and self.output_stride < 1:
            raise ValueError("output stride must be at least 1")

    @property
    def cubic_coeff(self) -> float:
        """Coefficient in front of ``u^3 u_x`` (gauged: of its mean-free part)."""
        lam = float(self.nonlin_coeff)
        return lam if self.variant == "gauged" else 4.0 * lam

    def schedule(self) -> tuple[int, int, float]:
        """``(steps, stride, dt_eff)`` so that ``steps * dt_eff == T`` exactly.

        ``dt_eff <= dt`` and ``steps`` is a multiple of the output stride.
        """
        if self.T == 0:
            return 0, 1, self.dt
        steps = math.ceil(self.T / self.dt - 1e-9)
        stride = self.output_stride or math.ceil(steps / 1024)
        steps = stride * math.ceil(steps / stride)
        return steps, stride, self.T / steps

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States ``c(t_k)`` on a uniform output grid, ``states.shape == (K, N)``."""

    times: np.ndarray
    states: np.ndarray
    config: FlowConfig
    initial: SpectralField | None = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        s = np.asarray(self.states, dtype=complex)
        if s.ndim != 2 or s.shape[0] != t.shape[0]:
            raise ValueError("states must be (len(times), N)")
        if t.size and t[0] != 0:
            raise ValueError("trajectories start at t = 0")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("times must increase")
        for a in (t, s):
            a.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", s)

    @property
    def N(self) -> int:
        return self.states.shape[1]

    @property
    def dt_out(self) -> float:
        return float(self.times[1] - self.times[0]) if len(self.times) > 1 else 0.0

    def __len__(self) -> int:
        return len(self.times)

    def field(self, k: int) -> SpectralField:
        return SpectralField(self.states[k])

    @property
    def fields(self) -> list[SpectralField]:
        return [SpectralField(s) for s in self.states]

    @property
    def final(self) -> SpectralField:
        return self.field(-1)

    def with_states(self, states: np.ndarray, **changes) -> "Trajectory":
        config = replace(self.config, **changes) if changes else self.config
        return Trajectory(self.times, states, config, self.initial)


# ---------------------------------------------------------------------------
# right-hand side
# ---------------------------------------------------------------------------

def linear_phase(N: int, t: float) -> np.ndarray:
    """Multipliers ``exp(i n^3 t)`` for ``n = 1..N``."""
    return np.exp(1j * modes(N) ** 3 * t)


def linear_propagate(f, t: float):
    """Free evolution ``c_n -> exp(i n^3 t) c_n``; accepts a field or an array."""
    c = as_coeffs(f)
    out = c * linear_phase(c.shape[-1], t)
    return SpectralField(out) if isinstance(f, SpectralField) else out


def nonlinear_coeffs(c: np.ndarray, cubic_coeff: float = 1.0, gauged: bool = True) -> np.ndarray:
    """``cubic_coeff * P_N(w u_x)`` with ``w = u^3 - mean(u^3)`` (gauged) or ``u^3``.

    The grid of ``5N + 1`` points rounded up to a power of two resolves the
    degree ``4N`` product on modes ``<= N`` without aliasing.
    """
    c = np.asarray(c, dtype=complex)
    N = c.shape[-1]
    if cubic_coeff == 0:
        return np.zeros_like(c)
    M = padded_size(5 * N + 1)
    u = synthesize(c, M)
    ux = synthesize(1j * modes(N) * c, M)
    w = u * u * u
    if gauged:
        w = w - np.mean(w, axis=-1, keepdims=True)
    out, _ = analyze(w * ux, N)
    return cubic_coeff * out


def nonlinear_term(f: SpectralField, cfg: FlowConfig) -> SpectralField:
    """Nonlinear part of the vector field at ``f`` for the configured variant."""
    if f.max_mode > cfg.N:
        raise ValueError(f"field has {f.max_mode} modes, flow is truncated at {cfg.N}")
    c = f.resized(cfg.N).coeffs
    return SpectralField(nonlinear_coeffs(c, cfg.cubic_coeff, cfg.variant == "gauged"))


def vector_field(c: np.ndarray, cfg: FlowConfig) -> np.ndarray:
    """Full right-hand side ``i n^3 c_n + nonlinear part`` on batches."""
    c = np.asarray(c, dtype=complex)
    return 1j * modes(c.shape[-1]) ** 3 * c + nonlinear_coeffs(c, cfg.cubic_coeff, cfg.variant == "gauged")


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def _ifrk4_stages(c, E_half, h, F):
    E = E_half * E_half
    k1 = F(c)
    ch = E_half * c
    k2 = F(ch + (h / 2) * E_half * k1)
    k3 = F(ch + (h / 2) * k2)
    k4 = F(E * c + h * E_half * k3)
    return E * c + (h / 6) * (E * k1 + 2 * E_half * (k2 + k3) + k4)


def _ifrk4_stepper(cfg: FlowConfig, h: float):
    a = cfg.cubic_coeff
    gauged = cfg.variant == "gauged"
    E_half = linear_phase(cfg.N, h / 2)

    def F(x):
        return nonlinear_coeffs(x, a, gauged)

    return lambda c: _ifrk4_stages(c, E_half, h, F)


_GL4_A = np.array([[0.25, 0.25 - np.sqrt(3) / 6], [0.25 + np.sqrt(3) / 6, 0.25]])


def _gl4_stepper(cfg: FlowConfig, h: float, tol: float = 1e-14, max_iter: int = 60):
    # The stiff diagonal part i n^3 is inverted exactly mode by mode; only
    # the nonlinearity is iterated, which is a contraction for the step
    # budgets in use.
    a = cfg.cubic_coeff
    gauged = cfg.variant == "gauged"
    lam = 1j * modes(cfg.N) ** 3
    inv = np.linalg.inv(np.eye(2)[None] - h * lam[:, None, None] * _GL4_A[None])

    def F(x):
        return nonlinear_coeffs(x, a, gauged)

    def step(c):
        Y = np.stack([c, c], axis=-2)
        NY = F(Y)
        scale = max(1.0, float(np.max(np.abs(c))))
        for _ in range(max_iter):
            rhs = c[..., None, :] + h * np.einsum("ij,...jn->...in", _GL4_A, NY)
            Y_new = np.einsum("nij,...jn->...in", inv, rhs)
            delta = float(np.max(np.abs(Y_new - Y)))
            Y = Y_new
            NY = F(Y)
            if delta <= tol * scale:
                break
        else:
            if delta > 1e-10 * scale:
                raise FlowError(-1)
        K = lam * Y + NY
        return c + 0.5 * h * (K[..., 0, :] + K[..., 1, :])

    return step


def _substeps(c: np.ndarray, cfg: FlowConfig, h: float) -> np.ndarray:
    """Substep count per state (flattened batch) keeping ``h / k * rate <= cfg.courant``."""
    rates = np.atleast_1d(step_rates(c, cfg)).ravel()
    k = np.ceil(h * rates / cfg.courant - 1e-12)
    if not np.all(k <= MAX_SUBSTEPS):
        raise _TooStiff
    return np.maximum(1, k).astype(np.int64)


def _ifrk4_lockstep(c: np.ndarray, cfg: FlowConfig, h: float) -> np.ndarray:
    """One schedule step of length ``h`` where each state takes its own substeps.

    All states still in flight advance together, each with its own step
    ``h / k``; the integrating-factor phases are gathered per state.
    """
    shape = c.shape
    flat = c.reshape(-1, cfg.N).copy()
    k = _substeps(flat, cfg, h)
    uniq, inv = np.unique(k, return_inverse=True)
    hk = (h / k)[:, None]
    E_half = np.exp(1j * modes(cfg.N)[None, :] ** 3 * (h / uniq)[:, None] / 2)[inv]
    a, gauged = cfg.cubic_coeff, cfg.variant == "gauged"

    def F(x):
        return nonlinear_coeffs(x, a, gauged)

    for i in range(int(k.max())):
        idx = np.nonzero(k > i)[0]
        if len(idx) == len(k):
            flat = _ifrk4_stages(flat, E_half, hk, F)
        else:
            flat[idx] = _ifrk4_stages(flat[idx], E_half[idx], hk[idx], F)
    return flat.reshape(shape)


def integrate(c0: np.ndarray, cfg: FlowConfig, record: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Integrate batched initial data ``(..., N)``.

    Returns ``(times, states)`` with states shaped ``(..., K, N)`` when
    ``record`` is true, otherwise only the final state ``(..., N)`` and the
    single final time.
    """
    c = np.array(c0, dtype=complex)
    if c.shape[-1] != cfg.N:
        raise ValueError(f"initial data has {c.shape[-1]} modes, expected {cfg.N}")
    steps, stride, h = cfg.schedule()
    make = _gl4_stepper if cfg.integrator == "GL4" else _ifrk4_stepper
    steppers = {1: make(cfg, h)}

    def stepper(k):
        if k not in steppers:
            steppers[k] = make(cfg, h / k)
        return steppers[k]

    out = [c.copy()] if record else None
    adaptive = cfg.adaptive and cfg.cubic_coeff != 0
    for step in range(1, steps + 1):
        if not adaptive:
            c = steppers[1](c)
        elif cfg.integrator == "IFRK4":
            try:
                c = _ifrk4_lockstep(c, cfg, h)
            except _TooStiff:
                raise FlowError(step) from None
        else:
            flat = c.reshape(-1, cfg.N)
            try:
                k = _substeps(flat, cfg, h)
            except _TooStiff:
                raise FlowError(step) from None
            for kk in np.unique(k):
                idx = k == kk
                sub, fn = flat[idx], stepper(int(kk))
                for _ in range(int(kk)):
                    sub = fn(sub)
                flat[idx] = sub
            c = flat.reshape(c.shape)
        if not np.all(np.isfinite(c)):
            raise FlowError(step)
        if record and step % stride == 0:
            out.append(c.copy())
    if not record:
        return np.array([steps * h]), c
    times = h * stride * np.arange(len(out))
    return times, np.stack(out, axis=-2)


def evolve(f: SpectralField, cfg: FlowConfig) -> Trajectory:
    """Trajectory of ``P_N f`` under the configured truncated flow."""
    if f.max_mode > cfg.N:
        f = f.resized(cfg.N)
    c0 = f.resized(cfg.N).coeffs
    times, states = integrate(c0, cfg, record=True)
    return Trajectory(times, states, cfg, f)


def evolve_batch(c0: np.ndarray, cfg: FlowConfig) -> np.ndarray:
    """Time-``T`` states of a batch of initial data ``(M, N)``."""
    return integrate(c0, cfg, record=False)[1]


def duhamel_part(traj: Trajectory) -> Trajectory:
    """Nonlinear remainder ``u(t_k) - S(t_k) u(0)``."""
    c0 = traj.states[0]
    free = c0[None, :] * np.exp(1j * modes(traj.N)[None, :] ** 3 * traj.times[:, None])
    return traj.with_states(traj.states - free)


# ---------------------------------------------------------------------------
# truncation convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CauchyRate:
    """Successive truncation differences and their log-log slope."""

    Ns: tuple[int, ...]
    errors: np.ndarray
    slope: float
    converged: bool = False
    details: dict = field(default_factory=dict)


def _linear_fit(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(x, y, 1)[0])


def cauchy_rate(u0: SpectralField, Ns: Sequence[int], s: float, T: float, cfg: FlowConfig | None = None,
                floor: float = 1e-12) -> CauchyRate:
    """Decay rate of ``e_N`` in ``N`` for consecutive truncations ``N < N'``.

    ``e_N = max_k || Phi^{N'} P_{N'} u0 - Phi^N P_N u0 - S(t_k)(P_{N'} - P_N) u0 ||_{H^s}``.
    All runs share one output step, the smaller of the template ``dt`` and
    the budget of the largest truncation, so that their output times
    coincide; the runs are adaptive underneath.
    """
    Ns = [int(n) for n in Ns]
    if len(Ns) < 3:
        raise ValueError("need at least three truncations for a rate")
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("truncations must increase")
    template = cfg or FlowConfig(N=Ns[-1], dt=dt_max(Ns[-1]), T=T)
    Nmax = Ns[-1]
    c_full = u0.resized(Nmax).coeffs
    dt = min(template.dt, dt_max(Nmax))
    runs = {}
    for N in Ns:
        run_cfg = replace(template, N=N, dt=dt, T=T, max_dt=None, adaptive=True)
        times, states = integrate(c_full[:N], run_cfg)
        pad = np.zeros((states.shape[0], Nmax), complex)
        pad[:, :N] = states
        runs[N] = pad
    phases = np.exp(1j * modes(Nmax)[None, :] ** 3 * times[:, None])
    errors = []
    for N, N2 in zip(Ns, Ns[1:]):
        band = np.zeros(Nmax, complex)
        band[N:N2] = c_full[N:N2]
        diff = runs[N2] - runs[N] - phases * band[None, :]
        errors.append(float(np.max(sobolev_norms(diff, s))))
    errors = np.array(errors)
    scale = max(float(sobolev_norms(c_full, s)), 1.0)
    if np.all(errors <= floor * scale):
        return CauchyRate(tuple(Ns), errors, float("nan"), converged=True)
    slope = _linear_fit(np.log(Ns[:-1]), np.log(np.maximum(errors, 1e-300)))
    return CauchyRate(tuple(Ns), errors, slope, details={"dt": dt})
