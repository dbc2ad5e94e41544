import os
import pathlib

import pytest

import batchkit as bk

DATA = pathlib.Path(os.environ.get("BATCHKIT_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture
def two_layer():
    return bk.load_code_file(str(DATA / "codes" / "two_layer.code"))


def test_field():
    f = bk.PrimeField(7)
    assert f.mul(3, 5) == 1
    assert f.inv(3) == 5
    with pytest.raises(ValueError):
        bk.PrimeField(6)


def test_matrix_rank_distance(two_layer):
    g = two_layer.generator
    assert (g.rows, g.cols) == (4, 9)
    assert bk.rank(g) == 4
    assert bk.row_weights(g) == [4, 4, 4, 4]
    assert bk.min_distance(g) == 4


def test_encode_plan_decode(two_layer):
    x = [1, 0, 1, 1]
    y = bk.encode(two_layer, x)
    assert y == [1, 0, 1, 1, 1, 0, 0, 1, 1]
    res = bk.plan_request(two_layer, [0, 0, 1, 1])
    assert res and res.status == bk.PlanStatus.feasible
    res.plan.validate(two_layer)
    assert [s.support for s in res.plan.sets] == [[0], [3, 6], [1], [4, 7]]
    assert bk.decode(two_layer, res.plan, y) == [(0, 1), (0, 1), (1, 0), (1, 0)]


def test_verify_and_certify(two_layer):
    assert bk.verify_batch(two_layer, 4).holds()
    fail = bk.verify_batch(two_layer, 5)
    assert fail.verdict == bk.BatchVerdict.fails
    assert len(fail.witness) == 5
    assert bk.certify_max_m(two_layer) == 4
    with pytest.raises(bk.GuardError):
        bk.verify_batch(two_layer, 4, cap=10)


def test_even_weight_infeasible():
    c = bk.LinearBatchCode(bk.Matrix([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]))
    assert bk.plan_request(c, [1, 2]).status == bk.PlanStatus.infeasible
    assert bk.certify_max_m(c) == 1
    assert bk.min_distance(c.generator) == 2


def test_constructions(two_layer):
    composed = bk.compose(bk.subcube_code(4, 1), bk.subcube_code(2, 1))
    assert composed == two_layer
    assert composed.claimed_m == 4
    cat = bk.concat_codes(bk.subcube_code(2, 1), bk.subcube_code(2, 1))
    assert bk.certify_max_m(cat) >= 4
    ext = bk.extend_one(bk.subcube_code(2, 1), [1, 0, 1])
    assert (ext.n, ext.length) == (3, 5)


def test_bounds():
    r = bk.check_bounds(9, 4, 4)
    assert [(b["name"], b["capacity"], b["demand"]) for b in r["finite"]] == [
        ("sphere-packing", 32, 10),
        ("plotkin", 72, 60),
        ("griesmer", 9, 8),
    ]
    assert r["finite_satisfied"]
    assert bk.max_m_by_finite_bounds(9, 4) >= 4
    assert bk.binary_entropy(0.5) == pytest.approx(1.0)


def test_simulation(two_layer):
    tr = bk.simulate(two_layer, [1, 0, 1, 1], [0, 0, 1, 1])
    assert tr["wall_steps"] == 1
    assert max(tr["per_server_load"]) == 1
    stats = bk.workload_stats(two_layer, 4, 50, 7)
    assert stats["feasible_count"] == 50 and stats["max_load"] == 1


def test_file_round_trip(two_layer):
    text = bk.serialize_code_file(two_layer)
    assert bk.parse_code_file(text) == two_layer
    with pytest.raises(bk.ParseError):
        bk.parse_code_file("2 2 3 3 1\n1\n2\n3\n1 0 2\n0 1 1\n")
