"""Smoke test for the Python extension: `python python/smoke.py` or pytest."""

import json

import resint

RING = "ZZ/32003 [x,y] grevlex"


def test_residual_intersection():
    assert resint.residual_intersection(RING, ["x", "y"], ["x^2", "y^2"]) == ["x^2", "x*y", "y^2"]


def test_disguised_cyclic():
    assert resint.disguised(RING, ["x", "y"], ["x^2", "y^2"]) == ["x^2", "x*y", "y^2"]


def test_koszul_annihilator_regular_sequence():
    assert resint.koszul_annihilator(RING, ["x", "y"], 0) == ["x", "y"]
    assert resint.koszul_annihilator(RING, ["x", "y"], 1) == ["1"]


def test_run_session():
    src = "ring R = ZZ/32003 [x,y] grevlex;\nideal I = x, y;\nideal a = x^2, y^2;\ntask residual I a nochain;\n"
    reports = json.loads(resint.run(src))
    assert len(reports) == 1
    r = reports[0]
    assert r["schema"] == "resint.report/1"
    assert r["status"] == "ok"
    assert r["result"]["j"] == ["x^2", "x*y", "y^2"]


def test_errors_raise():
    try:
        resint.run("ideal I = x;")
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"ok  {name}")
