"""Counting functions n(c,t), exact step-function integrals, and growth estimates.

n(c,t) counts zeros (with multiplicity) in the closed disc |z - c| <= t.  It
is a nondecreasing right-continuous step function of t, so integrals of
[n(b,t) - n(x,t)]/t reduce to a closed-form log term per zero; no quadrature
is involved anywhere in this module.
"""

from __future__ import annotations

import math
import threading
import weakref
from dataclasses import dataclass, field

import numpy as np

from .zero_model import ZeroSequence

__all__ = [
    "CountingProfile",
    "GrowthEstimate",
    "LindelofTrace",
    "AngularDensity",
    "DivergentIntegralError",
    "profile",
    "count_disc",
    "count_square",
    "imaginary_inverse_sum",
    "lindelof_sums",
    "growth_check",
    "angular_density",
    "step_integral",
]


class DivergentIntegralError(ValueError):
    """A step integral down to t = 0 hit a zero sitting at one of the centers."""

    def __init__(self, message: str, zero: complex):
        super().__init__(message)
        self.zero = zero


@dataclass(frozen=True, eq=False)
class CountingProfile:
    """Sorted distances (with multiplicities) from a center point."""

    center: complex
    distances: np.ndarray = field(repr=False)   # strictly ascending, merged
    multiplicities: np.ndarray = field(repr=False)
    cumulative: np.ndarray = field(repr=False)
    total: int

    @property
    def events(self) -> list[tuple[float, int]]:
        return [(float(d), int(m)) for d, m in zip(self.distances, self.multiplicities)]

    def count(self, t: float) -> int:
        return count_disc(self, t)


_profile_cache: "weakref.WeakKeyDictionary[ZeroSequence, dict]" = weakref.WeakKeyDictionary()
_profile_lock = threading.Lock()


def profile(seq: ZeroSequence, c: complex = 0j) -> CountingProfile:
    """Distance profile of seq about c; cached per (seq, c)."""
    c = complex(c)
    with _profile_lock:
        per_seq = _profile_cache.setdefault(seq, {})
        cached = per_seq.get(c)
    if cached is not None:
        return cached
    dists = np.abs(seq.positions - c)
    if dists.size:
        uniq, inverse = np.unique(dists, return_inverse=True)
        mults = np.zeros(uniq.size, dtype=np.int64)
        np.add.at(mults, inverse, seq.multiplicities.astype(np.int64))
        cumulative = np.cumsum(mults)
    else:
        uniq = np.empty(0)
        mults = np.empty(0, dtype=np.int64)
        cumulative = np.empty(0, dtype=np.int64)
    prof = CountingProfile(
        center=c,
        distances=uniq,
        multiplicities=mults,
        cumulative=cumulative,
        total=int(cumulative[-1]) if cumulative.size else 0,
    )
    with _profile_lock:
        prof = _profile_cache.setdefault(seq, {}).setdefault(c, prof)
    return prof


def count_disc(prof: CountingProfile, t: float) -> int:
    """n(center, t): zeros with distance <= t (closed disc)."""
    t = float(t)
    if t < 0:
        raise ValueError(f"disc radius must be >= 0, got {t}")
    idx = int(np.searchsorted(prof.distances, t, side="right"))
    return int(prof.cumulative[idx - 1]) if idx else 0


def _counts_at(prof: CountingProfile, ts: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(prof.distances, ts, side="right")
    padded = np.concatenate([[0], prof.cumulative])
    return padded[idx]


def count_square(seq: ZeroSequence, c: complex, t: float) -> int:
    """Square-window count: zeros with |Re(a-c)| <= t and |Im(a-c)| <= t."""
    t = float(t)
    if t < 0:
        raise ValueError(f"square half-side must be >= 0, got {t}")
    if not len(seq):
        return 0
    rel = seq.positions - complex(c)
    inside = (np.abs(rel.real) <= t) & (np.abs(rel.imag) <= t)
    return int(seq.multiplicities[inside].sum())


def imaginary_inverse_sum(seq: ZeroSequence) -> float:
    """Sum of multiplicity * |Im(1/a)| over the stored zeros."""
    if not seq.origin_excluded:
        raise ValueError("sum of |Im(1/a)| requires 0 not in the zero set")
    if not len(seq):
        return 0.0
    inv = 1.0 / seq.positions
    return math.fsum(seq.multiplicities * np.abs(inv.imag))


@dataclass(frozen=True)
class LindelofTrace:
    """Partial sums of 1/a over |a| < R at each sampled radius."""

    radii: tuple[float, ...]
    partial_sums: tuple[complex, ...]
    converged: bool
    final_value: complex
    boundary_ties: int = 0


def lindelof_sums(seq: ZeroSequence, radii) -> LindelofTrace:
    """Partial sums with strict |a| < R; the convergence verdict is an
    oscillation test: max pairwise spread over the last quarter of radii
    below 1e-3 * (1 + |final|).  Raw sums are returned so callers can
    re-judge."""
    rs = np.asarray(radii, dtype=float)
    if rs.size == 0:
        raise ValueError("at least one radius is required")
    if np.any(np.diff(rs) <= 0):
        raise ValueError("radii must be strictly ascending")
    if not seq.origin_excluded:
        raise ValueError("partial sums of 1/a require 0 not in the zero set")
    dists = np.abs(seq.positions)
    order = np.argsort(dists, kind="stable")
    sorted_d = dists[order]
    terms = (seq.multiplicities / seq.positions)[order]
    csum = np.concatenate([[0j], np.cumsum(terms)])
    idx = np.searchsorted(sorted_d, rs, side="left")   # strict |a| < R
    partial = csum[idx]
    ties = int(seq.multiplicities[np.isin(dists, rs)].sum()) if dists.size else 0
    final = complex(partial[-1])
    tail = partial[-max(2, math.ceil(rs.size / 4)):]
    spread = float(np.abs(tail[:, None] - tail[None, :]).max()) if tail.size > 1 else 0.0
    converged = spread < 1e-3 * (1.0 + abs(final))
    return LindelofTrace(
        radii=tuple(float(r) for r in rs),
        partial_sums=tuple(complex(s) for s in partial),
        converged=bool(converged),
        final_value=final,
        boundary_ties=ties,
    )


@dataclass(frozen=True)
class GrowthEstimate:
    """Truncation-level evidence for linear counting growth and small annulus
    increments.  Sup/max over a truncation can never certify the limits, so
    trend slopes over the top decade of radii are reported instead of
    booleans."""

    linear_ratio_sup: float
    annulus_increment_max_ratio: float
    sample_radii: tuple[float, ...]
    ratio_trend_slope: float | None = None
    increment_trend_slope: float | None = None


def _decade_slope(radii: np.ndarray, values: np.ndarray) -> float | None:
    top = radii >= radii.max() / 10.0
    if top.sum() < 2:
        return None
    return float(np.polyfit(np.log10(radii[top]), values[top], 1)[0])


def growth_check(seq: ZeroSequence, radii) -> GrowthEstimate:
    """Sampled ratios n(0,t)/t and [n(0,t+1)-n(0,t)]/t with top-decade trends."""
    rs = np.asarray(radii, dtype=float)
    if rs.size == 0:
        raise ValueError("at least one radius is required")
    if np.any(rs <= 0):
        raise ValueError("radii must be positive")
    R = seq.truncation_radius
    if R > 0 and rs.max() > R - 1:
        raise ValueError(
            f"radius {rs.max()} exceeds completeness guarantee {R} - 1 for annulus counts"
        )
    prof = profile(seq, 0j)
    n_t = _counts_at(prof, rs).astype(float)
    n_t1 = _counts_at(prof, rs + 1.0).astype(float)
    ratios = n_t / rs
    increments = (n_t1 - n_t) / rs
    return GrowthEstimate(
        linear_ratio_sup=float(ratios.max()) if rs.size else 0.0,
        annulus_increment_max_ratio=float(increments.max()) if rs.size else 0.0,
        sample_radii=tuple(float(r) for r in rs),
        ratio_trend_slope=_decade_slope(rs, ratios),
        increment_trend_slope=_decade_slope(rs, increments),
    )


@dataclass(frozen=True)
class AngularDensity:
    """Pair of sector densities about the positive and negative real axes.

    Iterating yields exactly the two densities; zeros landing exactly on the
    boundary circle |a| = R are excluded from both counts and reported in
    boundary_ties.
    """

    right_density: float
    left_density: float
    boundary_ties: int = 0

    def __iter__(self):
        return iter((self.right_density, self.left_density))


def angular_density(seq: ZeroSequence, alpha: float, R: float) -> AngularDensity:
    """R^-1 * card{0 < |a| < R, |arg a| <= alpha} and the mirror count about pi."""
    alpha = float(alpha)
    R = float(R)
    if not 0 < alpha <= math.pi / 2:
        raise ValueError(f"alpha must lie in (0, pi/2], got {alpha}")
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    if seq.truncation_radius > 0 and R > seq.truncation_radius:
        raise ValueError(f"R = {R} exceeds completeness radius {seq.truncation_radius}")
    if not len(seq):
        return AngularDensity(0.0, 0.0, 0)
    dists = np.abs(seq.positions)
    inside = (dists > 0) & (dists < R)
    args = np.angle(seq.positions[inside])
    mult = seq.multiplicities[inside]
    right = float(mult[np.abs(args) <= alpha].sum()) / R
    left = float(mult[(math.pi - np.abs(args)) <= alpha].sum()) / R
    ties = int(seq.multiplicities[dists == R].sum())
    return AngularDensity(right, left, ties)


def step_integral(seq: ZeroSequence, b: complex, x: complex, t_lo: float, t_hi: float) -> float:
    """Exact value of the integral of [n(b,t) - n(x,t)]/t over [t_lo, t_hi].

    Event-wise closed form: a zero at distances d_b, d_x from the two centers
    contributes multiplicity * (log clamp(d_x) - log clamp(d_b)) with
    clamp(d) = min(max(d, t_lo), t_hi).  Pass t_hi = inf for the effective
    full range (every clamp is then max(d, t_lo); the result is the closed
    form over the stored zeros and the completeness precondition is waived).

    The pairwise log differences are totalled with exact (fsum) summation,
    which makes the value independent of event order; the antisymmetry in
    (b, x) and reflection symmetries therefore hold bit-exactly.
    """
    b = complex(b)
    x = complex(x)
    t_lo = float(t_lo)
    t_hi = float(t_hi)
    if t_lo < 0:
        raise ValueError(f"t_lo must be >= 0, got {t_lo}")
    if not t_lo < t_hi:
        raise ValueError(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    R = seq.truncation_radius
    if R > 0 and math.isfinite(t_hi):
        limit = R - max(abs(b), abs(x))
        if t_hi > limit:
            raise ValueError(
                f"t_hi = {t_hi} exceeds the completeness guarantee {limit} "
                f"(radius {R} minus the larger center offset)"
            )
    if not len(seq):
        return 0.0
    d_b = np.abs(seq.positions - b)
    d_x = np.abs(seq.positions - x)
    if t_lo == 0.0:
        for dist, name, center in ((d_b, "b", b), (d_x, "x", x)):
            hit = np.nonzero(dist == 0.0)[0]
            if hit.size:
                z = complex(seq.positions[hit[0]])
                raise DivergentIntegralError(
                    f"integral from t = 0 diverges: center {name} = {center} "
                    f"coincides with the zero at {z}",
                    zero=z,
                )
    c_b = np.clip(d_b, t_lo, t_hi)
    c_x = np.clip(d_x, t_lo, t_hi)
    terms = seq.multiplicities * (np.log(c_x) - np.log(c_b))
    return math.fsum(terms)
