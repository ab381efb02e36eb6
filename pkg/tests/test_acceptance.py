"""End-to-end acceptance checks, one test per criterion.

Each test pins the tolerances and ranges it must meet and asserts its own
runtime budget where one applies. The conftest hook prints a PASS/FAIL line
per criterion after the run.
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest
from scipy.integrate import dblquad

from pinchlab import (
    Schedule,
    bump,
    classify_schedule,
    compacted_surface,
    cylinder_volume,
    harmonic_sum,
    is_in_gamma,
    min_hyperbolic_trace,
    pinch_ladder,
    plancherel_integral,
    plancherel_sum,
    sandwich_bounds,
    surface_data,
    transform_profile,
    vanishing_series,
    witness_matrix,
)

mp.mp.dps = 50


def test_criterion_01_congruence_golden_table():
    start = time.perf_counter()
    golden = {3: (24, 0, 4), 5: (120, 0, 12), 7: (336, 3, 24), 11: (1320, 26, 60)}
    for n, (d, g, b) in golden.items():
        sd = surface_data(n)
        assert (sd.index_d, sd.genus, sd.cusps) == (d, g, b)
        surf = compacted_surface(n, 0.01)
        assert surf.volume == math.pi * (d / 6.0)
        assert sd.area == surf.volume
    assert time.perf_counter() - start < 1.0


def test_criterion_02_systole_search():
    start = time.perf_counter()
    for n in (3, 4, 5, 6, 7):
        found = min_hyperbolic_trace(n, 10 * n * n)
        assert found == n * n - 2
        w = witness_matrix(n)
        assert is_in_gamma(w, n)
        assert abs(w.a + w.d) == found
    assert time.perf_counter() - start < 300.0


def test_criterion_03_spectral_identity():
    start = time.perf_counter()
    for s in (0.5, 1.0, 4.0):
        value = plancherel_integral(transform_profile(bump(s)))
        assert abs(float(value) - math.exp(-1.0)) <= 1e-6
        assert value.radius <= 1e-6
    assert time.perf_counter() - start < 60.0


def test_criterion_04_reciprocal_schedule():
    start = time.perf_counter()
    schedule = Schedule.from_rule("reciprocal", range(3, 2001), "reciprocal")
    report = classify_schedule(schedule, 1.0, 2000)
    assert len(report.rows) == 1998
    assert all(row.valid for row in report.rows)
    for row in report.rows:
        expected = 3.0 / (2.0 * math.pi * row.level)
        assert abs(row.bs_ratio - expected) <= 1e-12 * expected
    norms = [row.pl_norm for row in report.rows]
    tail = norms[len(norms) // 2 :]
    assert all(b < a for a, b in zip(tail, tail[1:]))
    assert norms[-1] <= 1e-2
    assert report.plancherel_verdict == "vanishing"
    assert time.perf_counter() - start < 120.0


def test_criterion_05_exponential_schedule():
    start = time.perf_counter()
    schedule = Schedule.from_rule("exponential", range(3, 21), "exponential")
    report = classify_schedule(schedule, 1.0, 18)
    assert len(report.rows) == 18
    ratios = [row.bs_ratio for row in report.rows if row.valid]
    for row in report.rows:
        if not row.valid:
            continue
        assert row.pl_norm >= 0.4
        assert row.pl_sum_radius <= 1e-9 * row.pl_sum
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < 0.025
    assert time.perf_counter() - start < 300.0


def test_criterion_06_superexponential_schedule():
    schedule = Schedule.from_rule("superexponential", range(3, 11), "superexponential")
    report = classify_schedule(schedule, 1.0, 8)
    norms = [row.pl_norm for row in report.rows if row.valid]
    assert len(norms) >= 4
    assert all(b > a for a, b in zip(norms, norms[1:]))
    assert report.plancherel_verdict == "divergent"


def test_criterion_07_sandwich_grid():
    for n in (5, 7, 11):
        pairs = surface_data(n).cusps // 2
        for t in (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
            for r in (1.0, 2.0, 5.0):
                ladder = pinch_ladder(t, r, pairs)
                value = plancherel_sum(ladder, r)
                lower, upper = sandwich_bounds(n, t, r)
                assert lower <= float(value) <= upper
                assert ladder.count <= 10**7
                k = np.arange(1, ladder.count + 1, dtype=float)
                naive = pairs * float(np.sum(t / np.sinh(0.5 * k * t)))
                assert abs(float(value) - naive) <= 1e-9 * naive


def test_criterion_08_cylinder_quadrature():
    for l in (0.01, 0.1, 1.0, 2.0):
        for r in (math.asinh(1.0), 1.0, 3.0):
            closed = cylinder_volume(l, r)
            w = float(mp.asinh(mp.sinh(r) / mp.sinh(mp.mpf(l) / 2)))
            area, quad_err = dblquad(
                lambda rho, s: l * math.cosh(rho), 0.0, 2.0 * math.pi,
                -w, w, epsabs=1e-12, epsrel=1e-12,
            )
            assert abs(closed - area) <= 1e-9 * closed + quad_err


def test_criterion_09_harmonic_asymptotics():
    gamma = float(mp.euler)
    for n in (10, 10**3, 10**6):
        assert abs(harmonic_sum(n) - math.log(n) - gamma) <= 1.0 / (2.0 * n)


def test_criterion_10_vanishing_series():
    # a bump whose kernel support radius is about 1
    big_s = 2.0 * math.cosh(1.05) - 2.0
    phi = bump(big_s)
    profile = transform_profile(phi)
    sup_g = profile.g(0.0)
    inner_radius = 1.0
    floor_g = profile.g(inner_radius)
    assert floor_g > 0.0

    reciprocal = Schedule.from_rule("reciprocal", range(3, 2001), "reciprocal")
    rows = vanishing_series(reciprocal, phi, 2000)
    assert all(row.valid for row in rows)
    values = [row.normalized for row in rows]
    assert values[-1] <= 1e-2 * sup_g
    tail = values[len(values) // 2 :]
    assert all(b < a for a, b in zip(tail, tail[1:]))

    exponential = Schedule.from_rule("exponential", range(3, 21), "exponential")
    for row in vanishing_series(exponential, phi, 18):
        if not row.valid:
            continue
        lower, _ = sandwich_bounds(row.level, row.pinch, inner_radius)
        volume = compacted_surface(row.level, row.pinch).volume
        assert row.normalized >= 0.5 * floor_g * lower / volume * (1.0 - 1e-9)
