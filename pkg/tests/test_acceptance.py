"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete.  Tolerances are fixed here, not configurable.
"""

import math
import time

import numpy as np
import pytest

from conftest import draw_point, random_sequence, riemann_step_integral
from expozeros import (
    SATISFIED,
    VIOLATED,
    AlphaSpec,
    Zero,
    ZeroSequence,
    alpha_sequence,
    angular_density,
    check_D,
    classify,
    derivative_at_multiple_zero,
    evaluate_product,
    footnote_sequence,
    int_decomposition,
    integer_lattice,
    jensen_identity_check,
    log_modulus_via_counting,
    phi,
    scaled_lattice,
    step_integral,
    type_bound,
)

E2 = math.exp(2.0)
E3 = math.exp(3.0)

_RANK = {"evidence_satisfied": 2, "inconclusive": 1, "evidence_violated": 0}


def report(number, name, ok, detail):
    print(f"ACCEPTANCE {number} [{name}]: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"acceptance criterion {number} failed: {detail}"


def test_acceptance_1_log_modulus_identity():
    rng = np.random.default_rng(42)
    start = time.monotonic()
    worst = 0.0
    for _ in range(500):
        seq = random_sequence(rng, n_max=200, r_min=1.0, r_max=50.0, mult_max=3)
        for _ in range(20):
            z = draw_point(rng, seq, 10.0, min_dist=0.01)
            lhs = evaluate_product(seq, z).value.log_magnitude
            rhs = log_modulus_via_counting(seq, z)
            worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
    elapsed = time.monotonic() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    report(1, "product vs counting log-modulus", ok,
           f"max scaled residual {worst:.3e} <= 1e-9, {elapsed:.1f} s < 10 s")


def test_acceptance_2_multiple_zero_formula():
    def fd_oracle(seq, z0, h=1e-3):
        # independent product-side oracle: central second difference of the
        # reconstructed complex product, one Richardson step
        def g(z):
            return evaluate_product(seq, z).value.to_complex()

        def estimate(step):
            return (g(z0 + step) + g(z0 - step)) / (2.0 * step * step)

        value = (4.0 * estimate(h / 2.0) - estimate(h)) / 3.0
        return math.log(abs(value))

    pinned = ZeroSequence((Zero(1 + 0j, 2), Zero(-1 + 0j)))
    counting = derivative_at_multiple_zero(pinned, 1.0)
    exact_ok = counting == pytest.approx(math.log(2.0), abs=1e-15)
    fd_ok = abs(counting - fd_oracle(pinned, 1 + 0j)) <= 1e-5

    rng = np.random.default_rng(43)
    worst = 0.0
    for _ in range(100):
        points = []
        while len(points) < int(rng.integers(2, 15)):
            z = complex(rng.uniform(-12, 12), rng.uniform(-12, 12))
            if abs(z) < 0.7 or (points and min(abs(z - p) for p in points) < 0.5):
                continue
            points.append(z)
        seq = ZeroSequence((Zero(points[0], 2),) + tuple(Zero(p) for p in points[1:]))
        got = derivative_at_multiple_zero(seq, points[0])
        worst = max(worst, abs(got - fd_oracle(seq, points[0])) / (1.0 + abs(got)))
    ok = exact_ok and fd_ok and worst <= 1e-4
    report(2, "multiple-zero derivative formula", ok,
           f"pinned case exactly log 2 and within 1e-5 of finite differences; "
           f"100 random double zeros worst {worst:.3e} <= 1e-4")


def test_acceptance_3_jensen_combination():
    rng = np.random.default_rng(44)
    worst16 = 0.0
    worst_ratio = math.inf
    for _ in range(100):
        center = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        # one zero planted near the circle keeps the node-doubling measurable;
        # every zero stays >= 0.1 from the circle and off the origin
        side = 1.0 if rng.random() < 0.5 else -1.0
        angle = rng.uniform(0, 2 * math.pi)
        planted = center + (1.0 + side * rng.uniform(0.1, 0.18)) * complex(
            math.cos(angle), math.sin(angle)
        )
        points = [planted] if abs(planted) > 0.2 else []
        while len(points) < int(rng.integers(5, 40)):
            z = complex(rng.uniform(-15, 15), rng.uniform(-15, 15))
            if abs(z) < 0.2 or abs(abs(z - center) - 1.0) < 0.4:
                continue
            points.append(z)
        seq = ZeroSequence(tuple(Zero(p, int(rng.integers(1, 3))) for p in points))
        worst16 = max(worst16, jensen_identity_check(seq, center, 1 << 16))
        r64 = jensen_identity_check(seq, center, 64)
        r128 = jensen_identity_check(seq, center, 128)
        worst_ratio = min(worst_ratio, r64 / max(r128, 1e-300))
    ok = worst16 < 1e-6 and worst_ratio >= 3.0
    report(3, "circle average vs counting integrals", ok,
           f"max residual {worst16:.3e} < 1e-6 at 2^16 nodes; "
           f"min doubling ratio {worst_ratio:.1f} >= 3")


def test_acceptance_4_step_integral_vs_brute_force():
    rng = np.random.default_rng(45)
    worst = 0.0
    for _ in range(100):
        seq = random_sequence(rng, n_max=50, r_min=0.5, r_max=25.0)
        b = draw_point(rng, seq, 5.0, min_dist=1e-3)
        x = draw_point(rng, seq, 5.0, min_dist=1e-3)
        t_lo = 0.0 if rng.random() < 0.5 else float(rng.uniform(0.01, 2.0))
        t_hi = float(rng.uniform(t_lo + 1.0, 40.0))
        closed = step_integral(seq, b, x, t_lo, t_hi)
        oracle = riemann_step_integral(seq, b, x, t_lo, t_hi, panels=10 ** 6)
        worst = max(worst, abs(closed - oracle))
    ok = worst <= 1e-6
    report(4, "closed form vs 1e6-panel brute force", ok,
           f"max abs deviation {worst:.3e} <= 1e-6 over 100 instances")


def test_acceptance_5_footnote_counterexample():
    start = time.monotonic()
    seq = footnote_sequence(1e6)
    rng = np.random.default_rng(46)
    dists = np.abs(seq.positions)
    counts_ok = all(
        int(np.sum(dists <= r)) == math.floor(r / math.log(r) ** 2)
        for r in rng.uniform(E2, 1e6, 100)
    )
    margins = []
    for x in (E3, 100.0, 1000.0):
        computed = log_modulus_via_counting(seq, complex(x))
        bound = 1.0 + x / (2.0 * math.log(x))
        margins.append(computed - bound)
    elapsed = time.monotonic() - start
    ok = counts_ok and all(m >= 0.0 for m in margins) and elapsed < 60.0
    report(5, "slow-density counterexample", ok,
           f"counts match floor(r/log^2 r) at 100 radii: {counts_ok}; "
           f"log-modulus margins over the bound {['%.2f' % m for m in margins]}; "
           f"{elapsed:.1f} s < 60 s")


def test_acceptance_6_concave_density_decomposition():
    spec = AlphaSpec(1.0)
    K = spec.c * math.pi ** 2 / 4.0  # single constant across all tested x
    rows = {}
    for x in (1e2, 1e3, 1e4):
        rows[x] = int_decomposition(spec, x, max(1e5, 20.0 * x))
    third_ok = all(d.third >= 0.0 for d in rows.values())
    second_ok = all(d.second >= -K for d in rows.values())
    firsts = [rows[x].first for x in (1e2, 1e3, 1e4)]
    increasing = firsts[0] < firsts[1] < firsts[2]
    ratio = firsts[1] / firsts[0]
    ratio_ok = abs(ratio - 2.25) <= 0.15 * 2.25
    ok = third_ok and second_ok and increasing and ratio_ok
    report(6, "concave-density integral decomposition", ok,
           f"third >= 0: {third_ok}; second >= -{K:.4f}: {second_ok}; "
           f"first increasing: {increasing}; first(1e3)/first(1e2) = {ratio:.3f} "
           f"within 15% of 2.25")


def test_acceptance_7_reference_classification():
    seq = integer_lattice(1e4)
    d_rep = check_D(seq, np.linspace(0.0, 1.0, 17))
    d_err = abs(d_rep.extremum_value - math.log(4.0 / math.pi))
    right, left = angular_density(seq, math.pi / 4, 1000.0)
    ang_err = max(abs(right - 1.0), abs(left - 1.0))
    ys = [250.0, -250.0, 500.0, -500.0, 1000.0, -1000.0]
    t_rep = type_bound(seq, 0.5, ys, math.pi)
    type_err = abs(t_rep.extremum_value - math.pi) / math.pi
    ok = d_err <= 1e-3 and ang_err <= 1e-2 and type_err <= 0.05
    report(7, "reference lattice values", ok,
           f"base-1 sup off log(4/pi) by {d_err:.2e} <= 1e-3; "
           f"sector density off 1 by {ang_err:.2e} <= 1e-2; "
           f"type estimate off pi by {type_err:.2%} <= 5%")


def test_acceptance_8_base_point_invariance():
    rng = np.random.default_rng(47)
    worst = 0.0
    for _ in range(50):
        seq = random_sequence(rng, n_max=120, r_min=1.0, r_max=30.0)
        b1 = draw_point(rng, seq, 5.0, min_dist=0.05).real
        b2 = draw_point(rng, seq, 5.0, min_dist=0.05).real
        xs = [draw_point(rng, seq, 8.0, min_dist=0.05).real for _ in range(10)]
        deltas = [phi(seq, b1, x) - phi(seq, b2, x) for x in xs]
        spread = max(deltas) - min(deltas)
        worst = max(worst, spread / (1.0 + max(abs(d) for d in deltas)))
    ok = worst <= 1e-12
    report(8, "base-point invariance of the profile", ok,
           f"max scaled spread {worst:.3e} <= 1e-12 over 50 base-point pairs")


def test_acceptance_9_inclusion_closure():
    sequences = {
        "integer lattice": integer_lattice(1000.0),
        "scaled lattice": scaled_lattice(0.5, 500.0),
        "slow-density counterexample": footnote_sequence(1e6),
        "concave-density example": alpha_sequence(AlphaSpec(1.0), 1200),
        "empty": ZeroSequence(()),
    }
    details = []
    closure_ok = True
    for name, seq in sequences.items():
        rep = classify(seq)
        verdicts = {k: rep.reports[k].verdict for k in ("C", "B", "D")}
        for inner, outer in (("B", "C"), ("D", "B"), ("D", "C")):
            if verdicts[inner] == SATISFIED and verdicts[outer] == VIOLATED:
                closure_ok = False
        details.append(f"{name}: C={verdicts['C']} B={verdicts['B']} D={verdicts['D']}")
        if name == "integer lattice":
            assert verdicts["C"] == SATISFIED and verdicts["B"] == SATISFIED
        if name == "slow-density counterexample":
            assert all(v == VIOLATED for v in verdicts.values())
        if name == "concave-density example":
            assert verdicts["B"] == VIOLATED
        if name == "empty":
            assert all(v == SATISFIED for v in verdicts.values())
    report(9, "verdicts respect the inclusion chain", closure_ok, "; ".join(details))
