"""Reference zero-set generators and the concave-density integral decomposition.

Generators produce ZeroSequence objects with a positive truncation radius and
a provenance tag.  Root finding follows one recipe throughout: bracketed
bisection to width 1e-9, then 3 Newton steps, all vectorized over the target
indices (both r/log^2 r and the concave alpha are monotone on the brackets).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .zero_model import Zero, ZeroSequence

__all__ = [
    "AlphaSpec",
    "IntDecomposition",
    "integer_lattice",
    "scaled_lattice",
    "footnote_sequence",
    "alpha_sequence",
    "int_decomposition",
    "register_alpha",
    "build_alpha",
    "build_generator",
    "GENERATORS",
]

E_SQUARED = math.exp(2.0)


def _bisect_newton(f, fprime, targets, lo: float, hi: float,
                   width: float = 1e-9, newton_steps: int = 3) -> np.ndarray:
    """Solve f(r) = k for each k in targets; f must be increasing on [lo, hi]."""
    t = np.asarray(targets, dtype=float)
    lo_arr = np.full_like(t, lo)
    hi_arr = np.full_like(t, hi)
    while float(np.max(hi_arr - lo_arr)) > width:
        mid = 0.5 * (lo_arr + hi_arr)
        below = f(mid) < t
        lo_arr = np.where(below, mid, lo_arr)
        hi_arr = np.where(below, hi_arr, mid)
    r = 0.5 * (lo_arr + hi_arr)
    for _ in range(newton_steps):
        r = r - (f(r) - t) / fprime(r)
        r = np.clip(r, lo_arr, hi_arr)
    return r


def integer_lattice(R: float) -> ZeroSequence:
    """Simple zeros at every nonzero integer k with |k| < R (symmetric)."""
    R = float(R)
    if not R > 1:
        raise ValueError(f"R must exceed 1, got {R}")
    ks = np.arange(1, int(math.floor(R)) + 1, dtype=float)
    ks = ks[ks < R]
    zeros = [Zero(complex(s * k, 0.0)) for k in ks for s in (1.0, -1.0)]
    return ZeroSequence(tuple(zeros), truncation_radius=R, provenance=f"lattice(R={R:g})")


def scaled_lattice(h: float, R: float) -> ZeroSequence:
    """Simple zeros at h*k for nonzero integers k with |h*k| < R."""
    h = float(h)
    R = float(R)
    if h <= 0:
        raise ValueError(f"spacing h must be positive, got {h}")
    if R <= h:
        return ZeroSequence((), truncation_radius=R, provenance=f"scaled(h={h:g},R={R:g})")
    ks = np.arange(1, int(math.floor(R / h)) + 1, dtype=float)
    ks = ks[h * ks < R]
    zeros = [Zero(complex(s * h * k, 0.0)) for k in ks for s in (1.0, -1.0)]
    return ZeroSequence(tuple(zeros), truncation_radius=R, provenance=f"scaled(h={h:g},R={R:g})")


def _footnote_count(r):
    with np.errstate(divide="ignore", invalid="ignore"):
        return r / np.log(r) ** 2


def _footnote_count_prime(r):
    logr = np.log(r)
    return (logr - 2.0) / logr ** 3


def footnote_sequence(R: float) -> ZeroSequence:
    """Negative real zeros with exactly floor(r / log^2 r) of them in [-r, 0)
    for every r in [e^2, R).

    The k-th zero sits at -r_k with r_k the smallest r >= e^2 where
    r/log^2 r reaches k.  r/log^2 r has a flat minimum at r = e^2, so the
    first zero is pinned to -e^2 and brackets for k >= 2 start just above.
    """
    R = float(R)
    if not R > E_SQUARED:
        raise ValueError(f"R must exceed e^2 = {E_SQUARED:.6f}, got {R}")
    k_max = int(math.floor(R / math.log(R) ** 2))
    radii = [E_SQUARED]
    if k_max >= 2:
        roots = _bisect_newton(
            _footnote_count,
            _footnote_count_prime,
            np.arange(2, k_max + 1),
            E_SQUARED * (1.0 + 1e-12),
            R,
        )
        radii.extend(float(r) for r in roots if r < R)
    zeros = tuple(Zero(complex(-r, 0.0)) for r in radii)
    return ZeroSequence(zeros, truncation_radius=R, provenance=f"footnote(R={R:g})")


# --- concave counting density a(t) = t + c*log(1+t) -------------------------

@dataclass(frozen=True)
class AlphaSpec:
    """Strictly increasing concave density with alpha(0) = 0, slope in
    (1, 1 + c] decaying like c/t, and alpha(t) - t -> infinity; c must be
    positive (c = 0 would degenerate to the integer lattice and break the
    separation alpha(t) >= t + 1 + eps)."""

    c: float = 1.0
    description: str = "alpha(t) = t + c*log(1+t)"

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"alpha coefficient c must be positive, got {self.c}")
        object.__setattr__(self, "c", float(self.c))

    def alpha(self, t):
        return t + self.c * np.log1p(t)

    def alpha_prime(self, t):
        return 1.0 + self.c / (1.0 + t)


_ALPHA_FAMILIES = {"log": lambda c=1.0: AlphaSpec(c=float(c))}


def register_alpha(name: str, factory) -> None:
    """Register an alternative concave density family for CLI addressing."""
    _ALPHA_FAMILIES[name] = factory


def build_alpha(name: str = "log", **params) -> AlphaSpec:
    try:
        factory = _ALPHA_FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown alpha family {name!r}; registered: {sorted(_ALPHA_FAMILIES)}")
    return factory(**params)


def alpha_sequence(spec: AlphaSpec, N: int) -> ZeroSequence:
    """Symmetric real zeros {+-a_k, k = 1..N} with alpha(a_k) = k."""
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    a = _bisect_newton(spec.alpha, spec.alpha_prime, np.arange(1, N + 1), 0.0, float(N))
    spacing = float(a[-1] - a[-2]) if N >= 2 else float(a[0])
    radius = float(a[-1]) + spacing / 2.0
    zeros = tuple(Zero(complex(s * v, 0.0)) for v in a for s in (1.0, -1.0))
    return ZeroSequence(
        zeros,
        truncation_radius=radius,
        provenance=f"alpha(c={spec.c:g},N={N})",
    )


@dataclass(frozen=True)
class IntDecomposition:
    """Three-part split of the base-vs-x counting integral for the concave
    density: the unbounded-from-above part over [1, x], the bounded-below
    middle part over [1, x-1], and the nonnegative (by concavity) far part
    over [x, t_max]."""

    x: float
    first: float
    second: float
    third: float
    bounded_term_note: str = (
        "fractional-part integrals omitted; they stay uniformly bounded in x"
    )


def int_decomposition(spec: AlphaSpec, x: float, t_max: float) -> IntDecomposition:
    """Compute the decomposition at x, truncating the far integral at t_max.

    The first integrand has jump discontinuities where alpha crosses an
    integer, so that piece is integrated exactly segment by segment; the two
    smooth pieces use adaptive quadrature.
    """
    x = float(x)
    t_max = float(t_max)
    if x <= 2:
        raise ValueError(f"x must exceed 2, got {x}")
    if t_max <= 2 * x:
        raise ValueError(f"t_max = {t_max} must exceed 2*x = {2 * x} for a meaningful far integral")

    k_lo = int(math.floor(spec.alpha(1.0))) + 1
    k_hi = int(math.floor(spec.alpha(x)))
    if k_hi >= k_lo:
        breakpoints = _bisect_newton(
            spec.alpha, spec.alpha_prime, np.arange(k_lo, k_hi + 1), 1.0, x
        )
        edges = np.concatenate([[1.0], breakpoints, [x]])
        levels = np.arange(k_lo - 1, k_hi + 1, dtype=float)
    else:
        edges = np.array([1.0, x])
        levels = np.array([float(k_lo - 1)])
    first = 2.0 * (math.fsum(levels * np.log(edges[1:] / edges[:-1])) - (x - 1.0))

    def mid_integrand(t):
        return (spec.alpha(x - t) - spec.alpha(x + t) + 2.0 * t) / t

    second, _ = integrate.quad(mid_integrand, 1.0, x - 1.0, limit=200)

    def far_integrand(t):
        return (2.0 * spec.alpha(t) - spec.alpha(t - x) - spec.alpha(t + x)) / t

    third_near, _ = integrate.quad(far_integrand, x, 4.0 * x, limit=200)
    third_far, _ = integrate.quad(far_integrand, 4.0 * x, t_max, limit=200)
    third = third_near + third_far

    return IntDecomposition(x=x, first=first, second=second, third=third)


# --- CLI-addressable generator registry --------------------------------------

def _gen_lattice(R: float = 100.0, **_ignored) -> ZeroSequence:
    return integer_lattice(R)


def _gen_scaled(h: float = 1.0, R: float = 100.0, **_ignored) -> ZeroSequence:
    return scaled_lattice(h, R)


def _gen_footnote(R: float = 1e4, **_ignored) -> ZeroSequence:
    return footnote_sequence(R)


def _gen_alpha(c: float = 1.0, N: float = 1000, R: float | None = None, **_ignored) -> ZeroSequence:
    # N may arrive as a float from the CLI parameter parser
    return alpha_sequence(AlphaSpec(c=float(c)), int(N))


GENERATORS = {
    "lattice": _gen_lattice,
    "scaled": _gen_scaled,
    "footnote": _gen_footnote,
    "alpha": _gen_alpha,
}


def build_generator(name: str, **params) -> ZeroSequence:
    """Build a catalog sequence by name with keyword parameters."""
    try:
        factory = GENERATORS[name]
    except KeyError:
        raise ValueError(f"unknown generator {name!r}; available: {sorted(GENERATORS)}")
    return factory(**params)
