"""Frequency combinatorics of the quartic interaction.

Tuples ``(n; n1, n2, n3, n4)`` with ``n = n1 + n2 + n3 + n4`` and no zero
entry index the convolution sum of the nonlinearity.  The module classifies
them, checks the algebraic identities of the resonance function
``Omega = n^3 - n1^3 - n2^3 - n3^3 - n4^3`` exactly in integer arithmetic,
and counts the index sets that appear in the probabilistic estimates by
brute-force enumeration.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConstraintError",
    "DegenerateError",
    "BudgetError",
    "FrequencyTuple",
    "REGIONS",
    "RegionLabel",
    "ZetaClass",
    "resonance_fn",
    "kdv_factorization_check",
    "zeta_events",
    "zeta_classify",
    "Zeta2Bound",
    "verify_zeta2_lower_bound",
    "region_classify",
    "quad_roots",
    "RootSweep",
    "root_count_sweep",
    "wick_nonzero",
    "dyadic_block",
    "CountResult",
    "count_resonant_tuples",
    "lemma_configurations",
    "LemmaSweep",
    "counting_lemma_sweep",
    "CancellationResult",
    "cancellation_terms",
    "cancellation_identity_check",
    "matrix_norm_bound",
    "spectral_norm",
]


class ConstraintError(ValueError):
    """A tuple violates the convolution constraint or has a zero entry."""


class DegenerateError(ValueError):
    """The quadratic for ``n1`` degenerates because ``n1 + n2 = 0``."""


class BudgetError(ValueError):
    """An enumeration would exceed its size budget."""


@dataclass(frozen=True)
class FrequencyTuple:
    """``(n; n1..n4)`` with optional dispersive weights ``(sigma, sigma1..sigma4)``."""

    n: int
    parts: tuple[int, int, int, int]
    sigmas: tuple[float, float, float, float, float] | None = None

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if len(parts) != 4:
            raise ConstraintError("a quartic interaction has four parts")
        if int(self.n) == 0 or 0 in parts:
            raise ConstraintError("frequencies must be nonzero")
        if int(self.n) != sum(parts):
            raise ConstraintError(f"n = {self.n} differs from the sum of parts {sum(parts)}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "parts", parts)
        if self.sigmas is not None:
            sig = tuple(float(x) for x in self.sigmas)
            if len(sig) != 5:
                raise ValueError("weights are (sigma, sigma1, ..., sigma4)")
            object.__setattr__(self, "sigmas", sig)

    @property
    def n_max(self) -> int:
        return max(abs(self.n), *(abs(p) for p in self.parts))

    @property
    def sigma_max(self) -> float:
        if self.sigmas is None:
            raise ValueError("tuple carries no dispersive weights")
        return max(abs(s) for s in self.sigmas)


def resonance_fn(t: FrequencyTuple) -> int:
    """``n^3 - n1^3 - n2^3 - n3^3 - n4^3`` as an exact Python integer."""
    return t.n ** 3 - sum(p ** 3 for p in t.parts)


def kdv_factorization_check(n: int, n1: int, n2: int) -> tuple[int, int]:
    """Both sides of ``n^3 - n1^3 - n2^3 = 3 n n1 n2`` for ``n = n1 + n2``."""
    n, n1, n2 = int(n), int(n1), int(n2)
    if 0 in (n, n1, n2):
        raise ConstraintError("frequencies must be nonzero")
    if n != n1 + n2:
        raise ConstraintError("need n = n1 + n2")
    return n ** 3 - n1 ** 3 - n2 ** 3, 3 * n * n1 * n2


# ---------------------------------------------------------------------------
# zeta classification
# ---------------------------------------------------------------------------

ZETA_EVENTS = ("n=n1", "n=n2", "n=n3", "n=n4", "n1=-n2", "n1=-n3", "n1=-n4")


def _event_flags(n, n1, n2, n3, n4):
    return (n == n1, n == n2, n == n3, n == n4, n1 == -n2, n1 == -n3, n1 == -n4)


def zeta_events(t: FrequencyTuple) -> tuple[str, ...]:
    """Which of the seven coincidences ``n = n_k`` and ``n1 = -n_j`` hold."""
    flags = _event_flags(t.n, *t.parts)
    return tuple(name for name, on in zip(ZETA_EVENTS, flags) if on)


@dataclass(frozen=True)
class ZetaClass:
    """``label`` is ``zeta1``, ``zeta2`` or ``excluded``; ``multiplicity`` counts zeta2 copies."""

    label: str
    events: tuple[str, ...]
    multiplicity: int


def zeta_classify(t: FrequencyTuple) -> ZetaClass:
    """Place a tuple in the gauged convolution sum.

    The gauged nonlinearity keeps the tuples on which none of the seven
    coincidences hold (``zeta1``).  Writing the restriction by
    inclusion-exclusion over the events, a tuple with ``k >= 2``
    coincidences comes back with net weight ``k - 1`` (``zeta2``).  A tuple
    with exactly one coincidence has total weight zero: its term is
    removed by the gauge and never reappears, so it is ``excluded``.
    """
    ev = zeta_events(t)
    if not ev:
        return ZetaClass("zeta1", ev, 0)
    if len(ev) == 1:
        return ZetaClass("excluded", ev, 0)
    return ZetaClass("zeta2", ev, len(ev) - 1)


@dataclass(frozen=True)
class Zeta2Bound:
    max_n: int
    count: int
    min_ratio: float
    argmin: tuple[int, ...]


def verify_zeta2_lower_bound(max_n: int, budget: int = 64) -> Zeta2Bound:
    """Minimum of ``|Omega| / n_max^2`` over all zeta2 tuples with entries in ``[-max_n, max_n]``."""
    if max_n > budget:
        raise BudgetError(f"max_n={max_n} exceeds the enumeration budget {budget}")
    vals = np.array([k for k in range(-max_n, max_n + 1) if k != 0], dtype=np.int64)
    n3, n4 = np.meshgrid(vals, vals, indexing="ij")
    n3, n4 = n3.ravel(), n4.ravel()
    best, arg, count = math.inf, (), 0
    for n1 in vals:
        for n2 in vals:
            n = n1 + n2 + n3 + n4
            ok = (n != 0) & (np.abs(n) <= max_n)
            flags = _event_flags(n, n1, n2, n3, n4)
            k = sum(np.asarray(f, dtype=np.int64) for f in flags)
            sel = ok & (k >= 2)
            if not np.any(sel):
                continue
            nn, a, b = n[sel], n3[sel], n4[sel]
            omega = nn ** 3 - n1 ** 3 - n2 ** 3 - a ** 3 - b ** 3
            nmax = np.maximum.reduce([np.abs(nn), np.full_like(nn, abs(n1)), np.full_like(nn, abs(n2)),
                                      np.abs(a), np.abs(b)])
            ratio = np.abs(omega) / nmax.astype(float) ** 2
            count += int(sel.sum())
            j = int(np.argmin(ratio))
            if ratio[j] < best:
                best, arg = float(ratio[j]), (int(nn[j]), int(n1), int(n2), int(a[j]), int(b[j]))
    return Zeta2Bound(max_n, count, best, arg)


# ---------------------------------------------------------------------------
# region partition
# ---------------------------------------------------------------------------

REGIONS = ("A-1", "A0", "A1", "A2", "A3", "A4")


@dataclass(frozen=True)
class RegionLabel:
    region: str
    c_low: float
    c_high: float


def region_classify(t: FrequencyTuple, c_low: float = 1.0, c_high: float = 1.0) -> RegionLabel:
    """First region in the order A-1, A0, ..., A4 that contains the weighted tuple.

    A-1 holds when every weight is below ``c_low * n_max^2``; otherwise the
    first weight at least ``c_high * n_max^2`` names the region.  If none
    reaches that threshold (possible when ``c_low < c_high``) the largest
    weight decides, so the labelling is total.
    """
    if t.sigmas is None:
        raise ValueError("region classification needs dispersive weights")
    scale = t.n_max ** 2
    mags = [abs(s) for s in t.sigmas]
    if max(mags) < c_low * scale:
        return RegionLabel("A-1", c_low, c_high)
    for k, m in enumerate(mags):
        if m >= c_high * scale:
            return RegionLabel(REGIONS[k + 1], c_low, c_high)
    return RegionLabel(REGIONS[int(np.argmax(mags)) + 1], c_low, c_high)


# ---------------------------------------------------------------------------
# quadratic root count
# ---------------------------------------------------------------------------

def quad_roots(n: int, n3: int, n4: int, mu: int) -> list[int]:
    """Integer ``n1`` with ``mu = n^3 - n1^3 - (n - n1 - n3 - n4)^3 - n3^3 - n4^3``.

    With ``a = n - n3 - n4 = n1 + n2`` the condition is the quadratic
    ``3a n1^2 - 3a^2 n1 + (mu - n^3 + n3^3 + n4^3 + a^3) = 0``, solved with an
    exact integer discriminant.  Roots are returned sorted, without
    filtering out ``n1 = 0`` or ``n2 = 0``.
    """
    n, n3, n4, mu = int(n), int(n3), int(n4), int(mu)
    a = n - n3 - n4
    if a == 0:
        raise DegenerateError("n - n3 - n4 = n1 + n2 = 0: the equation is not quadratic in n1")
    A, B, C = 3 * a, -3 * a * a, mu - n ** 3 + n3 ** 3 + n4 ** 3 + a ** 3
    disc = B * B - 4 * A * C
    if disc < 0:
        return []
    r = math.isqrt(disc)
    if r * r != disc:
        return []
    roots = set()
    for num in (-B + r, -B - r):
        if num % (2 * A) == 0:
            roots.add(num // (2 * A))
    return sorted(roots)


@dataclass(frozen=True)
class RootSweep:
    bound: int
    max_roots: int
    checked: int
    witness: tuple[int, int, int, int] | None


def root_count_sweep(bound: int = 50) -> RootSweep:
    """Exhaustive forward check over ``|n|, |n1|, |n3|, |n4| <= bound`` with ``n1 + n2 != 0``.

    For each ``(n, n3, n4)`` every ``n1`` in range is evaluated and the
    number of ``n1`` sharing the same value of ``mu`` is recorded; the
    maximum must not exceed two.  Rows of ``mu`` are sorted so that a run of
    equal values shows up as equal neighbours.
    """
    vals = np.arange(-bound, bound + 1, dtype=np.int64)
    n3, n4 = (g.ravel() for g in np.meshgrid(vals, vals, indexing="ij"))
    worst, witness, checked = 0, None, 0
    for n in vals:
        a = n - n3 - n4
        sel = a != 0
        aa, b3, b4 = a[sel, None], n3[sel], n4[sel]
        mu = n ** 3 - vals ** 3 - (aa - vals) ** 3 - (b3 ** 3 + b4 ** 3)[:, None]
        checked += mu.size
        srt = np.sort(mu, axis=1)
        same = srt[:, 1:] == srt[:, :-1]
        # longest run of equal neighbours in each row
        run = np.zeros(len(srt), dtype=np.int64)
        cur = np.zeros(len(srt), dtype=np.int64)
        for j in range(same.shape[1]):
            cur = np.where(same[:, j], cur + 1, 0)
            run = np.maximum(run, cur)
        i = int(np.argmax(run))
        if run[i] + 1 > worst:
            worst = int(run[i]) + 1
            vals_i, cnt = np.unique(mu[i], return_counts=True)
            witness = (int(n), int(b3[i]), int(b4[i]), int(vals_i[np.argmax(cnt)]))
    return RootSweep(bound, worst, checked, witness)


# ---------------------------------------------------------------------------
# counting lemmas
# ---------------------------------------------------------------------------

def _signature(plus: Iterable[int], minus: Iterable[int]) -> Counter:
    net = Counter()
    for k in plus:
        net[abs(k)] += 1 if k > 0 else -1
    for k in minus:
        net[abs(k)] -= 1 if k > 0 else -1
    return Counter({k: v for k, v in net.items() if v})


def wick_nonzero(plus: Iterable[int], minus: Iterable[int]) -> bool:
    """Whether ``E[prod_{p} g_p * prod_{m} conj(g_m)]`` is nonzero.

    The ``g_k`` are independent standard complex Gaussians for ``k > 0``
    and ``g_{-k} = conj(g_k)``.  The moment is nonzero exactly when every
    ``g_k`` appears as often as its conjugate.
    """
    return not _signature(plus, minus)


def dyadic_block(N: int) -> np.ndarray:
    """Integers ``k`` with ``N <= |k| < 2N``."""
    pos = np.arange(N, 2 * N, dtype=np.int64)
    return np.concatenate([-pos[::-1], pos])


def _star_tuples(sizes: Sequence[int]):
    """All ``(n, n1..n4)`` in the dyadic blocks, in the gauged sum, with no two of
    ``{-n, n1, .., n4}`` summing to zero; returns the arrays and ``Omega``."""
    N, N1, N2, N3, N4 = sizes
    grids = np.meshgrid(dyadic_block(N1), dyadic_block(N2), dyadic_block(N3), dyadic_block(N4), indexing="ij")
    n1, n2, n3, n4 = (g.ravel() for g in grids)
    n = n1 + n2 + n3 + n4
    ok = (np.abs(n) >= N) & (np.abs(n) < 2 * N)
    parts = (n1, n2, n3, n4)
    for p in parts:
        ok &= n != p
    for i in range(4):
        for j in range(i + 1, 4):
            ok &= parts[i] + parts[j] != 0
    n, n1, n2, n3, n4 = (x[ok] for x in (n, n1, n2, n3, n4))
    omega = n ** 3 - n1 ** 3 - n2 ** 3 - n3 ** 3 - n4 ** 3
    return n, n1, n2, n3, n4, omega


@dataclass(frozen=True)
class CountResult:
    lemma: str
    sizes: tuple[int, int, int, int, int]
    count: int
    bound: int
    fixed: tuple[int, int] | None
    mu_limit: int
    groups: int = 0

    @property
    def holds(self) -> bool:
        return self.count < self.bound


def _count_2ci(n, n1, n2, n3, n4, omega, fixed):
    # S(n, mu) pairs (n1, n2, n3) and (m1, m2, m3) sharing n, n4 and mu.
    # Without cancelling pairs inside a triple the Wick condition says the
    # two triples are the same multiset, so the count is a sum of squared
    # multiplicities over (n, n4, mu, sorted triple).
    if fixed is not None:
        sel = (n == fixed[0]) & (omega == fixed[1])
        n, n1, n2, n3, n4, omega = (x[sel] for x in (n, n1, n2, n3, n4, omega))
    if len(n) == 0:
        return 0, None, 0
    tri = np.sort(np.stack([n1, n2, n3], axis=1), axis=1)
    key = np.column_stack([n, omega, n4, tri])
    uniq, counts = np.unique(key, axis=0, return_counts=True)
    outer, inv = np.unique(uniq[:, :2], axis=0, return_inverse=True)
    totals = np.zeros(len(outer), dtype=np.int64)
    np.add.at(totals, inv.ravel(), counts.astype(np.int64) ** 2)
    j = int(np.argmax(totals))
    return int(totals[j]), (int(outer[j, 0]), int(outer[j, 1])), len(outer)


def _count_1bi_group(entries) -> int:
    # entries: dict n -> dict n3 -> list of (n1, n2)
    total = 0
    rows = sorted(entries)
    for a in rows:
        for b in rows:
            if a == b:
                continue
            cols = sorted(set(entries[a]) & set(entries[b]))
            for c3 in cols:
                for m3 in cols:
                    for p1 in entries[a][c3]:
                        for p2 in entries[b][c3]:
                            for p3 in entries[a][m3]:
                                for p4 in entries[b][m3]:
                                    if wick_nonzero(p1 + p4, p2 + p3):
                                        total += 1
    return total


def _count_1bi(n, n1, n2, n3, n4, omega, fixed):
    if fixed is not None:
        sel = (n4 == fixed[0]) & (omega == fixed[1])
        n, n1, n2, n3, n4, omega = (x[sel] for x in (n, n1, n2, n3, n4, omega))
    if len(n) == 0:
        return 0, None, 0
    # only (n4, mu) groups containing two different n can contribute
    key = np.column_stack([n4, omega])
    pairs = np.unique(np.column_stack([key, n]), axis=0)
    gk, gcount = np.unique(pairs[:, :2], axis=0, return_counts=True)
    live = {tuple(k) for k in gk[gcount >= 2].tolist()}
    groups = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    for a, b, c, d, e, w in zip(n.tolist(), n1.tolist(), n2.tolist(), n3.tolist(), n4.tolist(), omega.tolist()):
        if (e, w) in live:
            groups[(e, w)][a][d].append((b, c))
    best, arg = 0, None
    for g, entries in groups.items():
        c = _count_1bi_group(entries)
        if c > best:
            best, arg = c, g
    return best, arg, len(gk)


def count_resonant_tuples(lemma: str, sizes: Sequence[int], fixed: tuple[int, int] | None = None,
                          budget: int = 16, ordered: bool = True) -> CountResult:
    """Size of the index set of a counting lemma at dyadic sizes ``(N, N1, N2, N3, N4)``.

    ``lemma="2ci"`` counts ``S(n, mu)`` and compares with
    ``min(N1 N2, N1 N3, N2 N3)``; ``lemma="1bi"`` counts ``S(n4, mu)`` and
    compares with ``(N^0)^3``.  ``fixed`` pins ``(n, mu)`` or ``(n4, mu)``; by
    default the maximum over all admissible values is returned, with
    ``|mu| < (N^0)^2`` and ``|mu| < 3 (N^0)^2`` respectively.  Membership in a
    starred set means: dyadic blocks ``N_i <= |n_i| < 2 N_i``, the gauged sum
    (no coincidence ``n = n_k``, ``n1 = -n_j``), no two of
    ``{-n, n1, .., n4}`` summing to zero, and ``Omega = mu``.  With
    ``ordered`` (the default) the symmetry of the nonlinearity in its last
    three slots is used to keep only ``|n2| >= |n3| >= |n4|``; without it
    every permutation of a triple is counted separately.
    """
    lemma = lemma.lower().lstrip("l")
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != 5:
        raise ValueError("sizes are (N, N1, N2, N3, N4)")
    if any(s < 1 or s & (s - 1) for s in sizes):
        raise ValueError("dyadic sizes must be powers of two")
    if max(sizes) > budget:
        raise BudgetError(f"dyadic sizes above {budget} exceed the enumeration budget")
    N, N1, N2, N3, N4 = sizes
    N0 = max(sizes)
    n, n1, n2, n3, n4, omega = _star_tuples(sizes)
    if ordered:
        keep = (np.abs(n2) >= np.abs(n3)) & (np.abs(n3) >= np.abs(n4))
        n, n1, n2, n3, n4, omega = (x[keep] for x in (n, n1, n2, n3, n4, omega))
    if lemma == "2ci":
        limit = N0 ** 2
        bound = min(N1 * N2, N1 * N3, N2 * N3)
        sel = np.abs(omega) < limit
        count, arg, groups = _count_2ci(*(x[sel] for x in (n, n1, n2, n3, n4, omega)), fixed)
    elif lemma == "1bi":
        limit = 3 * N0 ** 2
        bound = N0 ** 3
        sel = np.abs(omega) < limit
        count, arg, groups = _count_1bi(*(x[sel] for x in (n, n1, n2, n3, n4, omega)), fixed)
    else:
        raise ValueError("lemma must be '1bi' or '2ci'")
    return CountResult("L" + lemma, sizes, count, bound, arg, limit, groups)


def lemma_configurations(lemma: str, budget: int = 16) -> list[tuple[int, int, int, int, int]]:
    """Dyadic size tuples ``(N, N1, .., N4)`` up to ``budget`` that fall in the lemma's case.

    Both cases assume ``N2 >= N3 >= N4``.  ``2ci`` lives where the fourth
    largest size is strictly below the largest one; ``1bi`` lives where
    ``N3`` is the largest size.
    """
    lemma = lemma.lower().lstrip("l")
    sizes = [1 << k for k in range(int(math.log2(budget)) + 1)]
    out = []
    for cfg in itertools.product(sizes, repeat=5):
        _, _, N2, N3, N4 = cfg
        if not N2 >= N3 >= N4:
            continue
        top = sorted(cfg, reverse=True)
        if lemma == "2ci" and top[3] < top[0]:
            out.append(cfg)
        elif lemma == "1bi" and N3 == top[0]:
            out.append(cfg)
    return out


@dataclass(frozen=True)
class LemmaSweep:
    lemma: str
    configurations: int
    nonempty: int
    violations: list[CountResult]
    worst: CountResult | None

    @property
    def holds(self) -> bool:
        return not self.violations


def counting_lemma_sweep(lemma: str, budget: int = 16) -> LemmaSweep:
    """Run ``count_resonant_tuples`` at every configuration of ``lemma_configurations``."""
    results = [count_resonant_tuples(lemma, cfg, budget=budget) for cfg in lemma_configurations(lemma, budget)]
    live = [r for r in results if r.count]
    worst = max(live, key=lambda r: r.count / r.bound, default=None)
    return LemmaSweep("L" + lemma.lower().lstrip("l"), len(results), len(live),
                      [r for r in results if not r.holds], worst)


# ---------------------------------------------------------------------------
# cancellation identity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CancellationResult:
    samples: int
    max_residual: float
    resampled: int
    max_residual_as_printed: float


def cancellation_terms(n, n2, n3, n4, tau, tau234, tau5, tau678):
    """Left side, exact combined fraction, and the printed combined fraction.

    With ``s = n2 + n3 + n4`` and ``sigma = tau - n^3`` the two paired
    denominators are ``tau - tau678 - (n + s)^3`` and
    ``tau - tau234 - (n - s)^3``.  Works with ``Fraction``, ``mpmath`` or
    float inputs.
    """
    s = n2 + n3 + n4
    n1 = n - s
    sigma = tau - n ** 3
    d1 = tau - tau678 - (n + s) ** 3
    d2 = tau - tau234 - (n - s) ** 3
    lhs = 1 / d1 + 1 / d2
    exact = (2 * sigma - tau234 - tau678 - 6 * n * s ** 2) / (
        (sigma - tau678 - (n + s) ** 3 + n ** 3) * (sigma - tau234 - (n - s) ** 3 + n ** 3))
    printed_num = -6 * n * (n - n1) ** 2 + tau - tau5 - 2 * sigma
    printed_den = (3 * n * n1 * (n - n1) + sigma - tau678) * (3 * n * n1 * (n - n1) - sigma + tau234)
    return lhs, exact, printed_num / printed_den


def cancellation_identity_check(samples: int = 10_000, seed: int = 0, max_freq: int = 50,
                                tau_scale: float = 1e4, min_den: float = 1e-6) -> CancellationResult:
    """Relative residual of the combined-fraction identity on random admissible inputs.

    Integer frequencies have ``n2 + n3 + n4 != 0``; times ``tau234``,
    ``tau5``, ``tau678`` are random dyadic rationals and
    ``tau = tau234 + tau5 + tau678``.  Both sides are evaluated in exact
    rational arithmetic and compared after conversion to floats; the
    residual of the printed variant is reported alongside.
    """
    rng = np.random.default_rng(seed)
    worst, worst_printed, redraws, done = 0.0, 0.0, 0, 0
    while done < samples:
        n, n2, n3, n4 = (int(v) for v in rng.integers(-max_freq, max_freq + 1, size=4))
        if 0 in (n, n2, n3, n4) or n2 + n3 + n4 in (0, n):
            continue
        t234, t5, t678 = (Fraction(int(v), 1 << 10) for v in
                          rng.integers(-int(tau_scale) << 10, (int(tau_scale) << 10) + 1, size=3))
        tau = t234 + t5 + t678
        s = n2 + n3 + n4
        d1 = tau - t678 - (n + s) ** 3
        d2 = tau - t234 - (n - s) ** 3
        if abs(d1) < min_den or abs(d2) < min_den:
            redraws += 1
            continue
        lhs, exact, printed = cancellation_terms(n, n2, n3, n4, tau, t234, t5, t678)
        r = abs(float((lhs - exact) / lhs)) if lhs != 0 else abs(float(exact))
        worst = max(worst, r)
        if lhs != 0:
            worst_printed = max(worst_printed, abs(float((lhs - printed) / lhs)))
        done += 1
    return CancellationResult(samples, worst, redraws, worst_printed)


# ---------------------------------------------------------------------------
# matrix norm lemma
# ---------------------------------------------------------------------------

def spectral_norm(A: np.ndarray, tol: float = 1e-10, max_iter: int = 10_000, seed: int = 0) -> tuple[float, bool]:
    """Largest singular value by power iteration on ``A* A``; returns ``(norm, converged)``."""
    A = np.asarray(A, dtype=complex)
    if not np.any(A):
        return 0.0, True
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(A.shape[1]) + 1j * rng.standard_normal(A.shape[1])
    x /= np.linalg.norm(x)
    lam = 0.0
    AH = A.conj().T
    for _ in range(max_iter):
        y = AH @ (A @ x)
        new = float(np.linalg.norm(y))
        if new == 0:
            return 0.0, True
        x = y / new
        if abs(new - lam) <= tol * new:
            return math.sqrt(new), True
        lam = new
    return math.sqrt(lam), False


def matrix_norm_bound(A: np.ndarray, tol: float = 1e-10) -> tuple[float, float]:
    """``sup |a_nn| + (sum_{n != n'} |a_nn'|^2)^{1/2}`` and the spectral norm of ``A``."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("matrix must be square")
    if A.shape[0] > 512:
        raise BudgetError("matrix dimension above 512")
    diag = np.abs(np.diag(A))
    off = A - np.diag(np.diag(A))
    bound = float(diag.max() + np.sqrt(np.sum(np.abs(off) ** 2)))
    norm, ok = spectral_norm(A, tol)
    if not ok:
        raise RuntimeError("power iteration did not converge")
    return bound, norm
