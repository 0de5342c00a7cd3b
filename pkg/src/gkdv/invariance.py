"""Conservation laws, phase-space volume and Monte Carlo invariance of the Gibbs measure."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .flow import FlowConfig, Trajectory, integrate, vector_field
from .sampler import GibbsEnsemble
from .spectral import SpectralField, as_coeffs, modes, power_integral

__all__ = [
    "hamiltonian",
    "hamiltonians",
    "l2_norms",
    "ConservationReport",
    "conservation_report",
    "vector_field_divergence",
    "jacobian_det",
    "Observable",
    "parse_observable",
    "parse_observables",
    "DEFAULT_OBSERVABLES",
    "ObservableResult",
    "InvarianceReport",
    "invariance_test",
    "scale_map",
]


def hamiltonians(c: np.ndarray) -> np.ndarray:
    """``H = 1/2 int u_x^2 + 1/20 int u^5`` on coefficient batches."""
    c = np.asarray(c)
    kinetic = 2.0 * np.pi * np.sum(modes(c.shape[-1]) ** 2 * np.abs(c) ** 2, axis=-1)
    return kinetic + power_integral(c, 5) / 20.0


def hamiltonian(f: SpectralField) -> float:
    return float(hamiltonians(f.coeffs))


def l2_norms(c: np.ndarray) -> np.ndarray:
    return np.sqrt(4.0 * np.pi * np.sum(np.abs(np.asarray(c)) ** 2, axis=-1))


def _relative_drift(q: np.ndarray) -> float:
    q0 = q[0]
    scale = abs(q0) if q0 != 0 else 1.0
    return float(np.max(np.abs(q - q0)) / scale)


@dataclass(frozen=True)
class ConservationReport:
    times: np.ndarray
    l2: np.ndarray
    H: np.ndarray
    l2_drift: float
    H_drift: float

    def rows(self):
        for t, a, b in zip(self.times, self.l2, self.H):
            yield float(t), float(a), float(b)


def conservation_report(traj: Trajectory) -> ConservationReport:
    """L2 norm and Hamiltonian along a trajectory with their maximal relative drifts."""
    l2 = l2_norms(traj.states)
    H = hamiltonians(traj.states)
    return ConservationReport(traj.times, l2, H, _relative_drift(l2), _relative_drift(H))


def _real_coordinates(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag], axis=-1)


def _complex_coordinates(x: np.ndarray) -> np.ndarray:
    N = x.shape[-1] // 2
    return x[..., :N] + 1j * x[..., N:]


def vector_field_divergence(N: int, f: SpectralField, cfg: FlowConfig | None = None, h: float = 1e-5) -> float:
    """Trace of the Jacobian of the full vector field in ``(a_n, b_n)`` coordinates.

    ``c_n = a_n + i b_n``; every column uses one central difference, and all
    ``4N`` perturbed states go through the vector field as one batch.
    """
    if f.max_mode > N:
        raise ValueError("field has more modes than the truncation")
    cfg = cfg or FlowConfig(N=N)
    x0 = _real_coordinates(f.resized(N).coeffs)
    eye = np.eye(2 * N)
    X = np.concatenate([x0 + h * eye, x0 - h * eye])
    V = _real_coordinates(vector_field(_complex_coordinates(X), cfg))
    diag = (V[:2 * N] - V[2 * N:]).diagonal() / (2 * h)
    return float(np.sum(diag))


def jacobian_det(N: int, f: SpectralField, t: float, cfg: FlowConfig | None = None, h: float = 1e-6) -> float:
    """Determinant of ``D Phi^N(t)`` at ``f`` by central differences in real coordinates."""
    if N > 6:
        raise ValueError("Jacobian determinants are limited to N <= 6")
    if f.max_mode > N:
        raise ValueError("field has more modes than the truncation")
    if t == 0:
        return 1.0
    cfg = replace(cfg or FlowConfig(N=N), N=N, T=t)
    x0 = _real_coordinates(f.resized(N).coeffs)
    eye = np.eye(2 * N)
    X = np.concatenate([x0 + h * eye, x0 - h * eye])
    _, end = integrate(_complex_coordinates(X), cfg, record=False)
    Y = _real_coordinates(end)
    J = ((Y[:2 * N] - Y[2 * N:]) / (2 * h)).T
    return float(np.linalg.det(J))


# ---------------------------------------------------------------------------
# observables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Observable:
    """A named vectorised function of coefficient batches ``(..., N)``."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False)

    def __call__(self, c: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(c)), dtype=float)


_TOKEN = re.compile(r"\s*(?:(?P<num>[-+]?\d+(?:\.\d*)?(?:[eE][-+]?\d+)?)|(?P<name>[a-z_][a-z0-9_]*)|(?P<op>[(),]))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse observable at {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def _mode(k: float, c: np.ndarray) -> np.ndarray:
    k = int(k)
    if k < 1 or k > c.shape[-1]:
        raise ValueError(f"mode {k} outside 1..{c.shape[-1]}")
    return c[..., k - 1]


_FUNCTIONS = {
    "re": (1, lambda c, k: _mode(k, c).real),
    "im": (1, lambda c, k: _mode(k, c).imag),
    "abs2": (1, lambda c, k: np.abs(_mode(k, c)) ** 2),
    "l2": (1, lambda c, K: 4.0 * np.pi * np.sum(np.abs(c[..., :int(K)]) ** 2, axis=-1)),
}
_UNARY = {"cos": np.cos, "sin": np.sin}


def parse_observable(text: str) -> Observable:
    """Parse expressions such as ``cos(re(1))``, ``clamp(abs2(2), 10)`` or ``clamp(l2(2), 25)``.

    ``re(k)``, ``im(k)`` and ``abs2(k)`` read the mode ``c_k``; ``l2(K)`` is
    ``||P_K u||_2^2``.  ``clamp(x, c)`` is ``min(x, c)``; ``cos`` and ``sin``
    keep observables bounded.
    """
    toks = list(_tokens(text))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (expected and tok[1] != expected):
            raise ValueError(f"malformed observable {text!r}")
        pos += 1
        return tok

    def number():
        kind, val = take()
        if kind != "num":
            raise ValueError(f"expected a number in {text!r}")
        return float(val)

    def expr():
        kind, name = take()
        if kind != "name":
            raise ValueError(f"expected a function name in {text!r}")
        take("(")
        if name in _FUNCTIONS:
            _, fn = _FUNCTIONS[name]
            k = number()
            take(")")
            return lambda c: fn(c, k)
        if name in _UNARY:
            inner = expr()
            take(")")
            op = _UNARY[name]
            return lambda c: op(inner(c))
        if name == "clamp":
            inner = expr()
            take(",")
            cap = number()
            take(")")
            return lambda c: np.minimum(inner(c), cap)
        raise ValueError(f"unknown function {name!r}")

    fn = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in observable {text!r}")
    return Observable(text.strip(), fn)


def parse_observables(spec: str | Sequence[str]) -> list[Observable]:
    """Semicolon-separated list (or sequence) of observable expressions."""
    items = spec.split(";") if isinstance(spec, str) else list(spec)
    return [parse_observable(s) for s in items if s.strip()]


DEFAULT_OBSERVABLES = ("cos(re(1))", "clamp(abs2(2), 10)", "sin(im(3))")


# ---------------------------------------------------------------------------
# Monte Carlo invariance
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ObservableResult:
    name: str
    mean_t0: float
    mean_tT: float
    stderr_t0: float
    stderr_tT: float
    z: float
    z_paired: float


@dataclass(frozen=True)
class InvarianceReport:
    observables: list[ObservableResult]
    N: int
    B: float
    M: int
    T: float
    seed: int
    ess: float
    threshold: float = 3.0
    perturbed: bool = False

    @property
    def max_abs_z(self) -> float:
        return max(abs(o.z) for o in self.observables)

    @property
    def passed(self) -> bool:
        return all(abs(o.z) <= self.threshold for o in self.observables)

    @property
    def bonferroni_note(self) -> str:
        k = len(self.observables)
        p = math.erfc(self.threshold / math.sqrt(2))
        return (f"{k} observables at |z| <= {self.threshold:g}: per-test two-sided level {p:.2e}, "
                f"family-wise level at most {min(1.0, k * p):.2e}")

    def to_dict(self) -> dict:
        return {
            "N": self.N, "B": self.B, "M": self.M, "T": self.T, "seed": self.seed,
            "ess": self.ess, "threshold": self.threshold, "perturbed": self.perturbed,
            "passed": self.passed, "note": self.bonferroni_note,
            "observables": [o.__dict__ for o in self.observables],
        }


def scale_map(factor: float) -> Callable[[np.ndarray], np.ndarray]:
    """Non-measure-preserving pre-map ``c -> factor * c`` for negative controls."""
    return lambda c: factor * c


def _z(delta: float, se: float) -> float:
    if delta == 0:
        return 0.0
    return delta / se if se > 0 else math.copysign(math.inf, delta)


def invariance_test(ensemble: GibbsEnsemble, T: float, cfg: FlowConfig | None = None,
                    observables: Sequence[Observable | str] = DEFAULT_OBSERVABLES,
                    premap: Callable[[np.ndarray], np.ndarray] | None = None,
                    threshold: float = 3.0) -> InvarianceReport:
    """Compare weighted means of observables at ``t = 0`` and ``t = T``.

    Every sample is evolved by the truncated flow (after ``premap`` if one is
    given, which is how negative controls are built) and keeps its time-zero
    weight.  ``z`` uses the two-sample standard error from the specification
    of the test; ``z_paired`` uses the standard error of the per-sample
    difference, which is much smaller because the two means are correlated.
    """
    ensemble.require_ess()
    obs = [o if isinstance(o, Observable) else parse_observable(o) for o in observables]
    cfg = replace(cfg or FlowConfig(N=ensemble.N), N=ensemble.N, T=T)
    c0 = ensemble.coeffs
    start = premap(c0) if premap is not None else c0
    cT = integrate(start, cfg, record=False)[1] if T > 0 else np.array(start)
    results = []
    for o in obs:
        a, b = o(c0), o(cT)
        m0, s0 = ensemble.weighted_mean(a)
        mT, sT = ensemble.weighted_mean(b)
        md, sd = ensemble.weighted_mean(b - a)
        z = _z(mT - m0, math.hypot(s0, sT))
        results.append(ObservableResult(o.name, m0, mT, s0, sT, z, _z(md, sd)))
    return InvarianceReport(results, ensemble.N, ensemble.B, ensemble.M, T, ensemble.seed,
                            ensemble.ess, threshold, premap is not None)
