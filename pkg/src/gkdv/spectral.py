"""Mean-zero real fields on the torus stored as truncated Fourier series.

A field of maximal mode ``N`` is the trigonometric polynomial

    u(x) = sum_{0 < |n| <= N} c_n exp(i n x),   c_{-n} = conj(c_n),

and only ``c_1 ... c_N`` are stored.  Conventions used everywhere in the
package:

* ``||u||_2^2 = 2 pi sum_{n != 0} |c_n|^2``
* ``<n> = 1 + |n|``
* ``||u||_{H^s}^2 = 2 pi sum_{n != 0} <n>^{2s} |c_n|^2``

The array-level helpers (``synthesize``, ``analyze``, ``product_coeffs``,
``power_integral``) take coefficient arrays of shape ``(..., N)`` so that
whole ensembles are handled with one FFT call.  The :class:`SpectralField`
wrapper is the single-field value type used by the public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "AliasingError",
    "SpectralField",
    "GridField",
    "NormSpec",
    "as_coeffs",
    "bracket",
    "modes",
    "padded_size",
    "synthesize",
    "analyze",
    "product_coeffs",
    "power_integral",
    "full_spectrum",
    "to_grid",
    "from_grid",
    "project_N",
    "derivative",
    "sobolev_norm",
    "sobolev_norms",
    "power_product",
    "integral_of_power",
]


class AliasingError(ValueError):
    """A grid is too coarse to represent the requested modes or products."""


def modes(N: int) -> np.ndarray:
    """Positive wavenumbers ``1..N`` as a float array."""
    return np.arange(1, N + 1, dtype=float)


def bracket(x):
    """Japanese bracket ``<x> = 1 + |x|``."""
    return 1.0 + np.abs(x)


def padded_size(min_points: int) -> int:
    """Smallest power of two that is at least ``min_points``."""
    m = 1
    while m < min_points:
        m *= 2
    return m


# ---------------------------------------------------------------------------
# array-level transforms
# ---------------------------------------------------------------------------

def synthesize(c: np.ndarray, M: int) -> np.ndarray:
    """Grid values ``u(2 pi j / M)`` for coefficient arrays of shape ``(..., N)``."""
    c = np.asarray(c, dtype=complex)
    N = c.shape[-1]
    if M < 2 * N + 1:
        raise AliasingError(f"grid of {M} points cannot carry {N} modes (need {2 * N + 1})")
    spec = np.zeros(c.shape[:-1] + (M // 2 + 1,), dtype=complex)
    spec[..., 1:N + 1] = c * M
    return np.fft.irfft(spec, n=M, axis=-1)


def analyze(values: np.ndarray, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Coefficients ``c_1..c_N`` and the mean of real grid values ``(..., M)``."""
    values = np.asarray(values)
    if np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise ValueError("grid values must be real")
        values = values.real
    M = values.shape[-1]
    if M < 2 * N + 1:
        raise AliasingError(f"grid of {M} points cannot resolve {N} modes")
    spec = np.fft.rfft(values, axis=-1) / M
    return spec[..., 1:N + 1], spec[..., 0].real


def product_coeffs(factors: Sequence[np.ndarray], K: int, M: int | None = None) -> np.ndarray:
    """Modes ``1..K`` of the pointwise product of the given coefficient arrays.

    The product is formed on a grid of ``M`` points.  With ``k`` factors of
    maximal mode ``N`` the product has modes up to ``kN``; reading modes up
    to ``K`` without aliasing needs ``M > kN + K``.  ``M`` defaults to the
    next power of two above ``max((k+1)N, kN + K) + 1``; an explicit ``M``
    that is too small raises :class:`AliasingError`.
    """
    factors = [np.asarray(f, dtype=complex) for f in factors]
    N = max(f.shape[-1] for f in factors)
    k = len(factors)
    need = max((k + 1) * N, k * N + K) + 1
    if M is None:
        M = padded_size(need)
    elif M < need:
        raise AliasingError(f"{k}-fold product of {N} modes needs {need} grid points, got {M}")
    prod = synthesize(factors[0], M)
    for f in factors[1:]:
        prod = prod * synthesize(f, M)
    c, _ = analyze(prod, min(K, M // 2 - 1))
    if c.shape[-1] < K:
        c = np.concatenate([c, np.zeros(c.shape[:-1] + (K - c.shape[-1],), complex)], axis=-1)
    return c


def power_integral(c: np.ndarray, p: int) -> np.ndarray:
    """``int_T u^p dx`` for coefficient arrays ``(..., N)``; exact for ``p >= 1``."""
    c = np.asarray(c, dtype=complex)
    N = c.shape[-1]
    M = padded_size(p * N + 1)
    u = synthesize(c, M)
    acc = u
    for _ in range(p - 1):
        acc = acc * u
    return 2.0 * np.pi * np.mean(acc, axis=-1)


def full_spectrum(c: np.ndarray) -> np.ndarray:
    """Coefficients indexed ``-N..N`` (index ``N`` is mode 0) for brute-force sums."""
    c = np.asarray(c, dtype=complex)
    zero = np.zeros(c.shape[:-1] + (1,), complex)
    return np.concatenate([np.conj(c[..., ::-1]), zero, c], axis=-1)


def as_coeffs(f) -> np.ndarray:
    """Coefficient array of a :class:`SpectralField` or array-like."""
    if isinstance(f, SpectralField):
        return f.coeffs
    return np.asarray(f, dtype=complex)


# ---------------------------------------------------------------------------
# value types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SpectralField:
    """Real mean-zero field represented by its coefficients ``c_1..c_N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, copy=True).reshape(-1)
        if c.size == 0:
            raise ValueError("a field needs at least one mode")
        if not np.all(np.isfinite(c)):
            raise ValueError("field coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def zeros(cls, N: int) -> "SpectralField":
        return cls(np.zeros(N, complex))

    @classmethod
    def from_modes(cls, N: int, values: dict[int, complex]) -> "SpectralField":
        """Field with ``c_n = values[n]`` and every other mode zero."""
        c = np.zeros(N, complex)
        for n, v in values.items():
            if not 1 <= n <= N:
                raise ValueError(f"mode {n} outside 1..{N}")
            c[n - 1] = v
        return cls(c)

    def coeff(self, n: int) -> complex:
        """``c_n`` for any integer ``n``, including negative and out-of-range modes."""
        if n == 0 or abs(n) > self.max_mode:
            return 0j
        v = self.coeffs[abs(n) - 1]
        return complex(v if n > 0 else np.conj(v))

    def resized(self, N: int) -> "SpectralField":
        """Same field viewed with maximal mode ``N`` (truncating or zero padding)."""
        c = np.zeros(N, complex)
        m = min(N, self.max_mode)
        c[:m] = self.coeffs[:m]
        return SpectralField(c)

    def allclose(self, other: "SpectralField", atol: float = 1e-12) -> bool:
        N = max(self.max_mode, other.max_mode)
        return bool(np.allclose(self.resized(N).coeffs, other.resized(N).coeffs, rtol=0, atol=atol))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectralField):
            return NotImplemented
        return self.max_mode == other.max_mode and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def __add__(self, other: "SpectralField") -> "SpectralField":
        N = max(self.max_mode, other.max_mode)
        return SpectralField(self.resized(N).coeffs + other.resized(N).coeffs)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "SpectralField":
        if np.iscomplexobj(scalar) and np.imag(scalar) != 0:
            raise TypeError("only real scalars keep the field real")
        return SpectralField(self.coeffs * float(np.real(scalar)))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return (-1.0) * self

    def __repr__(self) -> str:
        return f"SpectralField(N={self.max_mode}, coeffs={np.array2string(self.coeffs, precision=4)})"


@dataclass(frozen=True, eq=False)
class GridField:
    """Real samples of a field on the uniform grid ``x_j = 2 pi j / M``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, copy=True)
        if np.iscomplexobj(v):
            if np.any(v.imag != 0):
                raise ValueError("grid values must be real")
            v = v.real
        v = v.astype(float).reshape(-1)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def grid_size(self) -> int:
        return self.values.shape[0]

    @property
    def x(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.grid_size) / self.grid_size


@dataclass(frozen=True)
class NormSpec:
    """Sobolev exponent; the bracket is always ``<n> = 1 + |n|``."""

    s: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.s):
            raise ValueError("Sobolev exponent must be finite")


# ---------------------------------------------------------------------------
# operations on SpectralField
# ---------------------------------------------------------------------------

def to_grid(f: SpectralField, M: int) -> GridField:
    """Synthesize ``f`` on ``M`` equispaced points (``M >= 2N + 1``)."""
    return GridField(synthesize(f.coeffs, M))


def from_grid(g: GridField, N: int) -> tuple[SpectralField, float]:
    """Project grid samples onto modes ``1..N``; the discarded mean is returned too."""
    c, mean = analyze(g.values, N)
    return SpectralField(c), float(mean)


def project_N(f: SpectralField, K: int) -> SpectralField:
    """Zero every mode above ``K``; the maximal mode of ``f`` is kept."""
    if K < 1:
        raise ValueError("cutoff must be at least 1")
    c = np.array(f.coeffs)
    c[K:] = 0
    return SpectralField(c)


def derivative(f: SpectralField) -> SpectralField:
    """``d/dx``: ``c_n -> i n c_n``."""
    return SpectralField(1j * modes(f.max_mode) * f.coeffs)


def sobolev_norms(c: np.ndarray, s: float) -> np.ndarray:
    """``H^s`` norms of coefficient arrays of shape ``(..., N)``."""
    c = np.asarray(c)
    w = bracket(modes(c.shape[-1])) ** (2.0 * s)
    return np.sqrt(4.0 * np.pi * np.sum(w * np.abs(c) ** 2, axis=-1))


def sobolev_norm(f: SpectralField, spec: NormSpec | float = NormSpec()) -> float:
    """``sqrt(2 pi sum_{n != 0} <n>^{2s} |c_n|^2)``."""
    s = spec.s if isinstance(spec, NormSpec) else float(spec)
    return float(sobolev_norms(f.coeffs, s))


def power_product(fields: Iterable[SpectralField], out_cutoff: int, grid_size: int | None = None) -> SpectralField:
    """Exact Fourier coefficients, modes ``1..K``, of the product of 2 to 5 fields.

    The mean of the product is removed.  ``grid_size`` forces a particular
    padded grid and is rejected when it would alias.
    """
    fields = list(fields)
    if not 2 <= len(fields) <= 5:
        raise ValueError("power_product takes between 2 and 5 factors")
    return SpectralField(product_coeffs([f.coeffs for f in fields], out_cutoff, grid_size))


def integral_of_power(f: SpectralField, p: int) -> float:
    """``int_T u^p dx`` for ``2 <= p <= 5``."""
    if not 2 <= p <= 5:
        raise ValueError("power must lie between 2 and 5")
    return float(power_integral(f.coeffs, p))
