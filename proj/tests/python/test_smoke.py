import math
import os

import pytest

import bingham_moments as bm


@pytest.fixture(scope="module")
def tiny():
    return bm.generate_tables(tiny=True)


@pytest.fixture(scope="module")
def evaluator():
    if not os.environ.get("BINGHAM_TABLES"):
        pytest.skip("BINGHAM_TABLES not set")
    return bm.Evaluator(bm.load_tables())


def test_uniform_moments(evaluator):
    res = evaluator.moments([0, 0, 0, 0, 0, 0])
    assert res["log_z"] == pytest.approx(math.log(4 * math.pi), abs=1e-8)
    assert res["moments"][(2, 0, 0)] == pytest.approx(1 / 3, abs=6.1e-8)
    assert res["moments"][(2, 2, 0)] == pytest.approx(1 / 15, abs=6.1e-8)
    assert res["moments"][(1, 0, 1)] == 0.0


def test_matrix_and_entry_forms_agree(evaluator):
    b = [[-5.0, 1.0, 0.5], [1.0, -2.0, 0.0], [0.5, 0.0, 3.0]]
    flat = [-5.0, -2.0, 3.0, 1.0, 0.5, 0.0]
    assert evaluator.moments(b) == evaluator.moments(flat)
    m = evaluator.second_moments(b)
    assert sum(m[i][i] for i in range(3)) == pytest.approx(1.0, abs=1e-9)


def test_against_oracle(evaluator):
    b = [-12.0, -3.0, 0.0, 0.0, 0.0, 0.0]
    approx = evaluator.moments(b)["moments"]
    exact = bm.oracle_moments(b)["moments"]
    for key in [(2, 0, 0), (0, 2, 0), (4, 0, 0), (2, 2, 0)]:
        assert approx[key] == pytest.approx(exact[key], abs=5e-8)
    assert evaluator.z_diag(0, 0, -12.0, -3.0) == pytest.approx(
        bm.oracle_z(0, 0, -12.0, -3.0), abs=6.1e-8
    )


def test_derivative_and_shift(evaluator):
    assert evaluator.moment_derivative(2, 0, "b1", 0.0, 0.0) == pytest.approx(4 / 45, abs=1e-7)
    b = [-4.0, -9.0, -1.0, 1.5, -0.5, 2.0]
    shifted = [v + 7.0 if i < 3 else v for i, v in enumerate(b)]
    assert evaluator.log_partition(shifted) - evaluator.log_partition(b) == pytest.approx(
        7.0, abs=1e-10
    )


def test_bound_and_suggestions():
    assert bm.theorem1_bound(30, 5, 4, 0)["bound"] == pytest.approx(6.038e-8, rel=1e-3)
    assert bm.suggest_params(5e-7) == (20.0, 6, 6)


def test_errors(tiny, tmp_path):
    ev = bm.Evaluator(tiny)
    with pytest.raises(ValueError):
        ev.moments([float("nan"), 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        ev.moments([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(bm.TableError):
        bm.load_tables(str(tmp_path / "missing.bmt"))
    path = tmp_path / "tiny.bmt"
    tiny.save(str(path))
    assert bm.load_tables(str(path)).checksum == tiny.checksum
