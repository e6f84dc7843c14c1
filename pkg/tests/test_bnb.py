import math

import numpy as np
import pytest

from circlecolor.bnb import first_fit, solve_chromatic, solve_stacks
from circlecolor.instances import generate_one
from circlecolor.intervals import build_graph, normalize, topological_order, validate_coloring
from circlecolor.oracle import chromatic_exact, fractional_chromatic_exact


def test_first_fit_edgeless():
    g = build_graph(normalize([(1, 2), (3, 4), (5, 6)]))
    coloring = first_fit(g)
    assert set(coloring.colors.values()) == {1}


def test_first_fit_p3(p3):
    g = build_graph(p3)
    coloring = first_fit(g, [1, 2, 3])
    assert coloring.colors == {1: 1, 2: 2, 3: 1}


def test_first_fit_c5(c5, c5_graph):
    coloring = first_fit(c5_graph, topological_order(c5))
    assert coloring.num_colors <= 3
    assert validate_coloring(c5_graph, coloring)


def test_solve_chromatic_c5(c5, c5_graph):
    report = solve_chromatic(c5)
    assert report.chromatic_number == 3
    assert report.fractional_chromatic == pytest.approx(2.5, abs=1e-6)
    assert report.coloring.num_colors == 3
    assert validate_coloring(c5_graph, report.coloring)
    assert report.coloring.certificate is not None


def test_solve_chromatic_single():
    report = solve_chromatic(normalize([(1, 2)]))
    assert report.chromatic_number == 1
    assert report.fractional_chromatic == pytest.approx(1.0, abs=1e-6)


def test_solve_chromatic_matches_oracle():
    rng = np.random.default_rng(41)
    for k in range(60):
        rep = generate_one(int(rng.integers(1, 13)), 555, k)
        g = build_graph(rep)
        report = solve_chromatic(rep)
        assert report.chromatic_number == chromatic_exact(g), k
        assert validate_coloring(g, report.coloring)
        assert report.coloring.num_colors == report.chromatic_number


def test_root_lp_is_fractional_chromatic():
    rng = np.random.default_rng(42)
    for k in range(30):
        rep = generate_one(int(rng.integers(1, 13)), 556, k)
        g = build_graph(rep)
        report = solve_chromatic(rep)
        want = fractional_chromatic_exact(g)
        assert report.fractional_chromatic == pytest.approx(want, abs=1e-6), k


def test_report_invariants():
    rng = np.random.default_rng(43)
    for k in range(25):
        rep = generate_one(int(rng.integers(1, 13)), 557, k)
        report = solve_chromatic(rep)
        assert math.ceil(report.fractional_chromatic - 1e-6) <= report.chromatic_number
        assert report.root_gap == pytest.approx(
            report.chromatic_number - report.fractional_chromatic)
        assert report.nodes_explored >= 1
        for phase in ("build", "root_lp", "search", "decode"):
            assert phase in report.timings


def test_stacks_reaches_chromatic_with_big_height():
    rng = np.random.default_rng(44)
    for k in range(15):
        rep = generate_one(int(rng.integers(1, 9)), 558, k)
        chi = solve_chromatic(rep).chromatic_number
        assert solve_stacks(rep, rep.n).chromatic_number == chi


def test_node_log(c5):
    lines = []
    solve_chromatic(c5, log=lines.append)
    # C5's root LP is fractional (2.5), so branching happens and logs appear
    assert lines
    assert all(ln.startswith("node depth=") for ln in lines)
