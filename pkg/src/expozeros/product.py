"""Canonical products accumulated in log space, and their counting-side identities.

A product over millions of factors (1 - z/a) over/underflows long before it
finishes, so values are carried as (log-magnitude, argument).  Log-magnitudes
and raw argument radians are totalled with exact (fsum) summation; arguments
are normalized to (-pi, pi] once at the end.  Factors that are exactly real
contribute their pi's through an integer counter, so conjugate-symmetric
sequences evaluated at real points come out with argument exactly 0 or pi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .counting import step_integral
from .zero_model import ZeroSequence

__all__ = [
    "LogComplex",
    "ProductEvaluation",
    "TailCorrection",
    "wrap_angle",
    "evaluate_product",
    "log_modulus_via_counting",
    "derivative_at_multiple_zero",
    "circle_average",
    "jensen_identity_check",
    "finite_difference_log_derivative",
    "tail_correction",
]

TAIL_COMPLETE = "complete"
TAIL_TRUNCATED = "truncated"


def wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    r = math.remainder(theta, 2.0 * math.pi)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class LogComplex:
    """A complex value stored as (log|value|, arg value); log_magnitude = -inf
    encodes an exact zero (argument 0 by convention)."""

    log_magnitude: float
    argument: float = 0.0

    def __post_init__(self):
        lm = float(self.log_magnitude)
        arg = 0.0 if lm == -math.inf else wrap_angle(float(self.argument))
        object.__setattr__(self, "log_magnitude", lm)
        object.__setattr__(self, "argument", arg)

    @property
    def is_zero(self) -> bool:
        return self.log_magnitude == -math.inf

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        return cmath.rect(math.exp(self.log_magnitude), self.argument)

    @classmethod
    def from_complex(cls, w: complex) -> "LogComplex":
        w = complex(w)
        if w == 0:
            return cls(-math.inf, 0.0)
        return cls(math.log(abs(w)), cmath.phase(w))


@dataclass(frozen=True)
class ProductEvaluation:
    value: LogComplex
    radius_used: float
    factor_count: int
    tail_flag: str
    # smallest log|1 - z/a| seen; near-zeros show up here instead of being
    # special-cased (exact zeros use exact coordinate equality)
    min_factor_log_magnitude: float = math.inf


def evaluate_product(seq: ZeroSequence, z: complex, R: float | None = None) -> ProductEvaluation:
    """Product of (1 - z/a)^multiplicity over |a| < R, in log space.

    Truncation is by ascending |a| with strict |a| < R; that ordering is what
    makes symmetric (conditionally convergent) truncations behave.  If z is
    exactly a stored position inside R the value is an exact zero.
    """
    z = complex(z)
    if not seq.origin_excluded:
        raise ValueError("canonical product requires 0 not in the zero set")
    R0 = seq.truncation_radius
    if R is None:
        R = R0 if R0 > 0 else math.inf
    R = float(R)
    if R0 > 0 and R > R0:
        raise ValueError(f"evaluation radius {R} exceeds completeness radius {R0}")
    pos = seq.positions
    mult = seq.multiplicities
    inside = np.abs(pos) < R
    pos = pos[inside]
    mult = mult[inside]
    count = int(mult.sum())
    flag = TAIL_COMPLETE if (R0 == 0.0 and count == seq.total_multiplicity) else TAIL_TRUNCATED
    if pos.size == 0:
        return ProductEvaluation(LogComplex(0.0, 0.0), R, 0, flag)
    if np.any(pos == z):
        return ProductEvaluation(LogComplex(-math.inf, 0.0), R, count, flag, -math.inf)
    w = 1.0 - z / pos
    absw = np.abs(w)
    with np.errstate(divide="ignore"):
        log_terms = mult * np.log(absw)
    log_magnitude = math.fsum(log_terms)
    is_real = w.imag == 0.0
    pi_count = int(mult[is_real & (w.real < 0.0)].sum())
    arg_terms = mult[~is_real] * np.arctan2(w.imag[~is_real], w.real[~is_real])
    theta = math.fsum(arg_terms) + (pi_count & 1) * math.pi
    return ProductEvaluation(
        LogComplex(log_magnitude, wrap_angle(theta)),
        R,
        count,
        flag,
        float(np.log(absw.min())) if absw.min() > 0 else -math.inf,
    )


def log_modulus_via_counting(seq: ZeroSequence, z: complex) -> float:
    """log|product| via the counting side: the full-range step integral of
    [n(0,t) - n(z,t)]/t, i.e. sum of m * (log|a - z| - log|a|).  Returns -inf
    exactly when z is a stored zero position."""
    z = complex(z)
    if not seq.origin_excluded:
        raise ValueError("counting-side log-modulus requires 0 not in the zero set")
    if not len(seq):
        return 0.0
    if np.any(seq.positions == z):
        return -math.inf
    return step_integral(seq, 0.0, z, 0.0, math.inf)


def _unit_disc_term(seq: ZeroSequence) -> float:
    """Integral over (0,1] of n(0,t)/t: sum of m * max(0, -log|a|)."""
    if not len(seq):
        return 0.0
    d0 = np.abs(seq.positions)
    return math.fsum(seq.multiplicities * -np.log(np.minimum(d0, 1.0)))


def derivative_at_multiple_zero(seq: ZeroSequence, z0: complex) -> float:
    """log of |l-th derivative / l!| of the product at an l-fold zero z0.

    Two exact event-wise integrals: [n(0,t) - n(z0,t)]/t over [1, inf) plus
    [n(0,t) - n(z0,t) + l]/t over (0, 1]; the l zeros sitting at z0 cancel
    the +l term so the second integrand vanishes near t = 0.
    """
    z0 = complex(z0)
    if not seq.origin_excluded:
        raise ValueError("derivative formula requires 0 not in the zero set")
    pos = seq.positions
    mult = seq.multiplicities
    self_mask = pos == z0
    if not np.any(self_mask):
        raise ValueError(f"z0 = {z0} is not a zero position of the sequence")
    d0 = np.abs(pos)
    dx = np.abs(pos - z0)
    upper = mult * (np.log(np.maximum(dx, 1.0)) - np.log(np.maximum(d0, 1.0)))
    lower_origin = mult * -np.log(np.minimum(d0, 1.0))
    others = ~self_mask
    with np.errstate(divide="ignore"):
        lower_center = mult[others] * np.log(np.minimum(dx[others], 1.0))
    return math.fsum(upper) + math.fsum(lower_origin) + math.fsum(lower_center)


def _log_abs_at_points(seq: ZeroSequence, points: np.ndarray) -> np.ndarray:
    """log|product| at an array of points (complete stored product)."""
    total = np.zeros(points.shape, dtype=float)
    with np.errstate(divide="ignore"):
        for z in seq.zeros:
            total += z.multiplicity * np.log(np.abs(1.0 - points / z.position))
    return total


def circle_average(seq: ZeroSequence, z: complex, radius: float, nodes: int = 4096) -> float:
    """Trapezoidal average of log|product| over the circle |w - z| = radius.

    The node count is rounded up to a power of two; for a periodic integrand
    the trapezoid rule is the plain node average.  If some node lands within
    1e-9 of a zero all nodes are rotated by half a step (the log singularity
    is integrable; rotation keeps the rule stable).
    """
    z = complex(z)
    radius = float(radius)
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    nodes = int(nodes)
    if nodes < 16:
        raise ValueError(f"need at least 16 quadrature nodes, got {nodes}")
    if not seq.origin_excluded:
        raise ValueError("circle average requires 0 not in the zero set")
    n = 1 << (nodes - 1).bit_length()
    step = 2.0 * math.pi / n
    offset = 0.0
    near = [
        p for p in seq.positions
        if abs(abs(p - z) - radius) <= 1e-9 + radius * 1e-12
    ]
    shift = step / 2.0
    for _ in range(50):
        collision = False
        for p in near:
            angle = cmath.phase(p - z)
            k = round((angle - offset) / step)
            node = z + radius * cmath.exp(1j * (offset + k * step))
            if abs(p - node) < 1e-9:
                collision = True
                break
        if not collision:
            break
        offset += shift
        shift /= 2.0
    theta = offset + step * np.arange(n)
    points = z + radius * np.exp(1j * theta)
    values = _log_abs_at_points(seq, points)
    return math.fsum(values) / n


def jensen_identity_check(seq: ZeroSequence, z: complex, nodes: int = 65536) -> float:
    """|circle average - exact counting side| for the unit-circle identity:
    the average of log|product| on |w - z| = 1 equals the step integral of
    [n(0,t) - n(z,t)]/t over [1, inf) plus the integral of n(0,t)/t over (0,1]."""
    z = complex(z)
    left = circle_average(seq, z, 1.0, nodes)
    right = step_integral(seq, 0.0, z, 1.0, math.inf) + _unit_disc_term(seq)
    return abs(left - right)


def finite_difference_log_derivative(seq: ZeroSequence, z0: complex,
                                     h: float | None = None) -> float:
    """Diagnostic oracle for derivative_at_multiple_zero that never touches
    the counting side: log of |l-th derivative / l!| at an l-fold zero,
    estimated from product values by an l-th central finite difference with
    one Richardson extrapolation step."""
    z0 = complex(z0)
    match = [z for z in seq.zeros if z.position == z0]
    if not match:
        raise ValueError(f"z0 = {z0} is not a zero position of the sequence")
    order = match[0].multiplicity
    others = np.abs(seq.positions[seq.positions != z0] - z0)
    sep = float(others.min()) if others.size else 1.0
    if h is None:
        h = 0.02 * min(sep, 1.0 + abs(z0) / 4.0)

    def stencil(step: float) -> complex:
        total = 0j
        for m in range(order + 1):
            point = z0 + (order / 2.0 - m) * step
            total += (-1) ** m * math.comb(order, m) * evaluate_product(seq, point).value.to_complex()
        return total / (math.factorial(order) * step ** order)

    coarse = stencil(h)
    fine = stencil(h / 2.0)
    c = (4.0 * fine - coarse) / 3.0
    return math.log(abs(c)) if c != 0 else -math.inf


@dataclass(frozen=True)
class TailCorrection:
    """First-order log-product correction for stored zeros outside the
    evaluation radius: sum of log(1 - z/a) over R <= |a| is approximately
    -z * sum(1/a), with a second-order bound from sum(1/|a|^2)."""

    log_correction: complex
    second_order_bound: float
    zero_count: int


def tail_correction(seq: ZeroSequence, z: complex, R: float) -> TailCorrection:
    z = complex(z)
    R = float(R)
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    if not seq.origin_excluded:
        raise ValueError("tail correction requires 0 not in the zero set")
    pos = seq.positions
    mult = seq.multiplicities
    tail = np.abs(pos) >= R
    count = int(mult[tail].sum())
    if count == 0:
        return TailCorrection(0j, 0.0, 0)
    inv = mult[tail] / pos[tail]
    first = -z * complex(inv.sum())
    ratio = abs(z) / float(np.abs(pos[tail]).min())
    inv_sq = float((mult[tail] / np.abs(pos[tail]) ** 2).sum())
    if ratio >= 1.0:
        bound = math.inf
    else:
        bound = abs(z) ** 2 * inv_sq / (2.0 * (1.0 - ratio))
    return TailCorrection(first, bound, count)
