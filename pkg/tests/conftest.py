"""Shared helpers for the test suite: random sequence builders and the
brute-force oracles the closed forms are checked against."""

import math

import numpy as np

from expozeros import Zero, ZeroSequence


def random_sequence(rng, n_max=200, r_min=1.0, r_max=50.0, mult_max=3,
                    radius=0.0, n_min=1):
    """Random finite sequence with moduli in [r_min, r_max]."""
    n = int(rng.integers(n_min, n_max + 1))
    moduli = rng.uniform(r_min, r_max, n)
    angles = rng.uniform(-math.pi, math.pi, n)
    mults = rng.integers(1, mult_max + 1, n)
    zeros = tuple(
        Zero(complex(m * math.cos(a), m * math.sin(a)), int(k))
        for m, a, k in zip(moduli, angles, mults)
    )
    return ZeroSequence(zeros, truncation_radius=radius)


def random_symmetric_sequence(rng, n_pairs=40, r_min=1.0, r_max=30.0):
    """Conjugate-and-reflection symmetric sequence of simple real zeros."""
    vals = rng.uniform(r_min, r_max, int(rng.integers(2, n_pairs + 1)))
    zeros = tuple(Zero(complex(s * v, 0.0)) for v in vals for s in (1.0, -1.0))
    return ZeroSequence(zeros)


def random_conjugate_sequence(rng, n_max=40, r_min=1.0, r_max=30.0):
    """Conjugate-symmetric sequence (real zeros plus conjugate pairs)."""
    zeros = []
    for _ in range(int(rng.integers(2, n_max + 1))):
        m = int(rng.integers(1, 3))
        if rng.random() < 0.4:
            zeros.append(Zero(complex(rng.uniform(-r_max, r_max), 0.0), m))
        else:
            w = complex(rng.uniform(-r_max, r_max), rng.uniform(0.1, r_max))
            zeros.append(Zero(w, m))
            zeros.append(Zero(w.conjugate(), m))
    seq = ZeroSequence(tuple(z for z in zeros if abs(z.position) >= r_min))
    if not len(seq):
        return ZeroSequence((Zero(2 + 1j), Zero(2 - 1j), Zero(-3 + 0j)))
    return seq


def draw_point(rng, seq, scale, min_dist=0.01):
    """A point with |z| <= scale at distance >= min_dist from every zero."""
    pos = seq.positions
    while True:
        z = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
        if abs(z) > scale:
            continue
        if pos.size and float(np.abs(pos - z).min()) < min_dist:
            continue
        return z


def _brute_counts(seq, c, ts):
    """n(c, t) at an array of t values, by direct distance counting."""
    d = np.abs(seq.positions - c)
    order = np.argsort(d, kind="stable")
    dd = d[order]
    cm = np.concatenate([[0], np.cumsum(seq.multiplicities[order])])
    return cm[np.searchsorted(dd, ts, side="right")]


def riemann_step_integral(seq, b, x, t_lo, t_hi, panels=10 ** 6):
    """Brute-force oracle for the step integral: evaluate both counting
    functions at panel midpoints of a fine partition (refined at every event
    distance so no panel straddles a jump) and weight each panel by its
    exact integral of dt/t.  Never uses the per-event closed form."""
    b = complex(b)
    x = complex(x)
    edges = np.linspace(t_lo, t_hi, panels + 1)
    events = np.concatenate([np.abs(seq.positions - b), np.abs(seq.positions - x)])
    events = events[(events > t_lo) & (events < t_hi)]
    edges = np.unique(np.concatenate([edges, events]))
    mids = 0.5 * (edges[:-1] + edges[1:])
    diff = (
        _brute_counts(seq, b, mids).astype(float)
        - _brute_counts(seq, x, mids).astype(float)
    )
    mask = diff != 0.0
    if not mask.any():
        return 0.0
    weights = np.log(edges[1:][mask]) - np.log(edges[:-1][mask])
    return float(np.sum(diff[mask] * weights))
