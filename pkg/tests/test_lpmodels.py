import json

import numpy as np
import pytest

from circlecolor.bnb import solve_ip
from circlecolor.errors import VertexNotBranchingError
from circlecolor.instances import generate_one
from circlecolor.intervals import build_clique_matrix, build_dag, build_graph, normalize
from circlecolor.lpmodels import (
    build_as,
    build_cg,
    build_cl,
    build_dlc,
    build_fcp,
    build_isd,
    build_lc,
    export_model,
    metadata_sidecar,
    parse_lp_text,
    parse_mps,
    write_lp_text,
    write_mps,
)
from circlecolor.mwis import max_weight_chain, solve_mwis
from circlecolor.simplex import solve_lp


def _core(rep):
    return build_dag(rep), build_clique_matrix(rep)


def test_cg_single_vertex():
    rep = normalize([(1, 2)])
    dag, m = _core(rep)
    model = build_cg(rep, dag, m)
    assert sorted(v.name for v in model.variables) == ["c", "x_0_1"]
    value, _, _ = solve_ip(model)
    assert value == 1


def test_cg_c5_shape_and_relaxation(c5):
    dag, m = _core(c5)
    model = build_cg(c5, dag, m)
    assert len(model.variables) == 8  # 7 arcs + c
    sol = solve_lp(model.relaxed())
    assert sol.objective == pytest.approx(2.5, abs=1e-6)


def test_cg_p3_integer_optimum(p3):
    dag, m = _core(p3)
    value, _, _ = solve_ip(build_cg(p3, dag, m))
    assert value == 2


def test_lc_examples(p3):
    dag, m = _core(p3)
    values = {v: 1.0 for v in p3.vertices}
    sol = solve_lp(build_lc(0, p3, dag, m, values))
    want, _ = max_weight_chain(p3, p3.vertices, values)
    assert sol.objective == pytest.approx(want, abs=1e-9)
    zero = solve_lp(build_lc(0, p3, dag, m, {v: 0.0 for v in p3.vertices}))
    assert zero.objective == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(VertexNotBranchingError):
        build_lc(1, p3, dag, m, values)


def test_lc_dlc_strong_duality():
    rng = np.random.default_rng(21)
    for k in range(50):
        rep = generate_one(int(rng.integers(2, 11)), 321, k)
        dag, m = _core(rep)
        values = {v: float(rng.integers(-5, 6)) for v in rep.vertices}
        for i in [0] + sorted(dag.branching):
            lc = solve_lp(build_lc(i, rep, dag, m, values))
            dlc = solve_lp(build_dlc(i, rep, dag, m, values))
            assert lc.objective == pytest.approx(dlc.objective, abs=1e-6)


def test_isd_examples(nested, c5):
    single = normalize([(1, 2)])
    dag, m = _core(single)
    assert solve_lp(build_isd(single, dag, m, {1: 5.0})).objective == pytest.approx(5.0)
    dag, m = _core(nested)
    assert solve_lp(build_isd(nested, dag, m, {1: 1.0, 2: 1.0})).objective == pytest.approx(2.0)
    dag, m = _core(c5)
    w = {v: 1.0 for v in c5.vertices}
    assert solve_lp(build_isd(c5, dag, m, w)).objective == pytest.approx(2.0)


def test_isd_equals_dp_on_random():
    rng = np.random.default_rng(22)
    for k in range(40):
        rep = generate_one(int(rng.integers(1, 31)), 322, k)
        dag, m = _core(rep)
        w = {v: float(rng.integers(-5, 6)) for v in rep.vertices}
        value, _, _ = solve_mwis(rep, w)
        sol = solve_lp(build_isd(rep, dag, m, w))
        assert sol.objective == pytest.approx(value, abs=1e-6)


def test_fcp_examples(c5):
    dag, m = _core(c5)
    assert solve_lp(build_fcp(c5, dag, m)).objective == pytest.approx(2.5, abs=1e-6)
    single = normalize([(1, 2)])
    dag, m = _core(single)
    assert solve_lp(build_fcp(single, dag, m)).objective == pytest.approx(1.0, abs=1e-6)


def test_fcp_is_dual_of_cg_relaxation():
    rng = np.random.default_rng(23)
    for k in range(100):
        rep = generate_one(int(rng.integers(1, 31)), 323, k)
        dag, m = _core(rep)
        fcp = solve_lp(build_fcp(rep, dag, m))
        cg = solve_lp(build_cg(rep, dag, m).relaxed())
        assert fcp.objective == pytest.approx(cg.objective, abs=1e-6)


def test_cl_examples(p3, c5, c5_graph):
    g3 = build_graph(p3)
    value, _, _ = solve_ip(build_cl(g3, 2))
    assert value == 2
    edgeless = build_graph(normalize([(1, 2), (3, 4)]))
    value, _, _ = solve_ip(build_cl(edgeless, 1))
    assert value == 1
    value, _, _ = solve_ip(build_cl(c5_graph, 3))
    assert value == 3


def test_as_examples(p3, c5_graph):
    single = build_graph(normalize([(1, 2)]))
    value, _, _ = solve_ip(build_as(single))
    assert value == 1
    value, _, _ = solve_ip(build_as(build_graph(p3)))
    assert value == 2
    value, _, _ = solve_ip(build_as(c5_graph))
    assert value == 3


def test_lp_text_single_vertex_golden():
    rep = normalize([(1, 2)])
    dag, m = _core(rep)
    text = write_lp_text(build_cg(rep, dag, m))
    assert "Minimize" in text
    assert text.count("=") >= 1
    again = parse_lp_text(text)
    value, _, _ = solve_ip(again)
    assert value == 1


def test_mps_column_count_c5(c5):
    dag, m = _core(c5)
    model = build_cg(c5, dag, m)
    mps = write_mps(model)
    cols = {ln.split()[0] for ln in _section(mps, "COLUMNS") if "MARKER" not in ln}
    assert len(cols) == 8


def _section(mps: str, name: str):
    lines = mps.splitlines()
    out, active = [], False
    for ln in lines:
        if not ln.startswith(" "):
            active = ln.strip() == name
            continue
        if active:
            out.append(ln)
    return out


def test_round_trip_random_models():
    rng = np.random.default_rng(24)
    for k in range(20):
        rep = generate_one(int(rng.integers(1, 9)), 324, k)
        dag, m = _core(rep)
        model = build_cg(rep, dag, m)
        direct = solve_lp(model.relaxed()).objective
        for fmt in ("lp", "mps"):
            data = export_model(model, fmt).decode()
            again = parse_lp_text(data) if fmt == "lp" else parse_mps(data)
            assert solve_lp(again.relaxed()).objective == pytest.approx(direct, abs=1e-6)
            iv, _, _ = solve_ip(again, no_branch=frozenset(["c"]))
            dv, _, _ = solve_ip(model, no_branch=frozenset(["c"]))
            assert iv == dv


def test_metadata_sidecar(c5):
    dag, m = _core(c5)
    model = build_cg(c5, dag, m)
    meta = json.loads(metadata_sidecar(model))
    assert meta["metadata"]["formulation"] == "CG"
    assert len(meta["metadata"]["arcs"]) == 7
    names = {v.name for v in model.variables}
    for name, (i, j) in meta["metadata"]["arcs"].items():
        assert name in names
        assert 0 <= i <= 5 and 1 <= j <= 5
