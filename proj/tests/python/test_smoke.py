import pytest

import hibi_dfr


def test_builtin_names():
    names = hibi_dfr.builtin_names()
    assert "diamond" in names
    assert "fig1-q" in names


def test_ideals_and_classify():
    assert len(hibi_dfr.ideals("diamond")) == 7
    assert hibi_dfr.classify("diamond")["verdict"] == "NotCovered"
    assert hibi_dfr.classify("fig1-q")["verdict"] == "Covered"
    assert hibi_dfr.classify("elements: a b\ncovers: a<b\n")["verdict"] == "Covered"


def test_certify():
    assert hibi_dfr.certify("diamond", 2, 3)["kind"] == "Certificate"
    refuted = hibi_dfr.certify("diamond", 3, 3)
    assert refuted["kind"] == "Refutation"
    assert refuted["witness"]["index"] == 336


def test_solve_and_validate():
    alpha = [[2, 0], [1, 0], [2, 2], [0, 0], [0, 0]]
    delta = hibi_dfr.solve("diamond", alpha, 3)
    assert delta == [[0, 0], [0, 0], [0, 1], [0, 0], [0, 0]]
    assert hibi_dfr.validate("diamond", alpha, 3, delta) == []
    bad = [[0, 0], [0, 0], [0, 1], [0, 0], [-1, 1]]
    assert hibi_dfr.validate("diamond", alpha, 3, bad)


def test_fold():
    x = [(1, 2), (-3, 4), (5, 3)]
    t = hibi_dfr.fold(x)
    k = len(x)
    ys = [n / d - s for (n, d), s in zip(x, t)]
    assert all(-1 < y <= 1 - 1 / (2 * k) + 1e-12 for y in ys)


def test_reproduce_c():
    assert hibi_dfr.reproduce_c(3)["kind"] == "Infeasible"
    assert hibi_dfr.reproduce_c(5)["kind"] == "Feasible"
    with pytest.raises(hibi_dfr.HibiError):
        hibi_dfr.reproduce_c(2)


def test_run_command():
    status, report, _ = hibi_dfr.run("certify", "--builtin", "diamond", "--n", "3", "--q", "3")
    assert status == 1
    assert report["verdict"]["kind"] == "Refutation"
    status, report, err = hibi_dfr.run("certify", "--builtin", "nope", "--n", "2", "--q", "3")
    assert status == 2
    assert report is None
    assert "error" in err
