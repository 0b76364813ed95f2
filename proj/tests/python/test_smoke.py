import cmath
import json
import os
import pathlib

import numpy as np
import pytest

import qsl2

CORPUS = pathlib.Path(os.environ.get("QSL2_CORPUS", pathlib.Path(__file__).resolve().parents[2] / "corpus"))


def read(name):
    return (CORPUS / name).read_text()


def test_root_data():
    ctx = qsl2.make_root_data(1, 5)
    assert ctx.t == pytest.approx(cmath.exp(1j * cmath.pi / 10))
    assert ctx.eps == pytest.approx(ctx.t**2)
    with pytest.raises(qsl2.ConfigError):
        qsl2.make_root_data(2, 5)


def test_rep_relations():
    ctx = qsl2.make_root_data(1, 3)
    rep = qsl2.build_rep(qsl2.Color(0.37 + 0.12j, 1), ctx)
    E, F, K = np.asarray(rep.E), np.asarray(rep.F), np.asarray(qsl2.act_K(rep, ctx))
    eps = ctx.eps
    assert rep.dim == 3
    assert np.allclose(K @ E @ np.linalg.inv(K), eps**2 * E)
    lhs = E @ F - F @ E
    rhs = (K - np.linalg.inv(K)) / (eps - 1 / eps)
    assert np.allclose(lhs, rhs, atol=1e-10)
    assert abs(qsl2.qdim(rep, ctx)) < 1e-9


def test_nongeneric_color_rejected():
    ctx = qsl2.make_root_data(1, 3)
    with pytest.raises(qsl2.DomainError):
        qsl2.build_rep(qsl2.Color(1.0, 0), ctx)


def test_sprime_closed_form_without_rho():
    ctx = qsl2.make_root_data(1, 3)
    cu, cv = qsl2.Color(-0.61 + 0.21j, 1), qsl2.Color(0.3 + 0.1j, 2)
    u, v = qsl2.build_rep(cu, ctx), qsl2.build_rep(cv, ctx)
    assert qsl2.sprime(u, v, ctx, rho=False) == pytest.approx(qsl2.sprime_formula(cu, cv, ctx), rel=1e-9)


def test_unknot_colored_by_reference_is_one():
    out = qsl2.invariant(read("unknot_self.tangle"))
    assert out["invariant"] == pytest.approx(1.0, abs=1e-10)


def test_hopf_cut_independence():
    text = read("hopf.tangle")
    a = qsl2.invariant(text, cut=0)["invariant"]
    b = qsl2.invariant(text, cut=1)["invariant"]
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


def test_theta_edges_agree():
    coupons = json.loads(read("theta.json"))
    values = [qsl2.invariant(read(f"theta_edge{i}.tangle"), coupons=coupons)["invariant"] for i in (1, 2, 3)]
    for v in values[1:]:
        assert abs(v - values[0]) <= 1e-8 * max(1.0, abs(values[0]))


def test_parse_error_is_raised():
    with pytest.raises(qsl2.ParseError):
        qsl2.invariant("ctx m=1 l=3\nbraid n=2 word=[1,3\n")


def test_run_checks_passes():
    report = qsl2.run_checks(l=3, seed=3)
    assert report["pass"], [c["check"] for c in report["checks"] if not c["pass"]]
