import cmath
import math

import pytest

import sibuya


def test_stokes_closed_form():
    # -iC(0) = 2 cos(pi / (m + 2))
    for m in (2, 3, 4):
        c = sibuya.stokes(m, [0.0] * m)
        want = 2.0 * math.cos(math.pi / (m + 2))
        assert abs(-1j * c - want) < 1e-8 * want


def test_f0_closed_form():
    # f0(m, 0) = Gamma(nu) (m+2)^(nu - 1/2) / sqrt(pi), nu = 1/(m+2)
    for m in (2, 3, 5):
        nu = 1.0 / (m + 2)
        want = math.gamma(nu) * (m + 2) ** (nu - 0.5) / math.sqrt(math.pi)
        got = sibuya.f0(m, [0.0] * m)
        assert abs(got - want) < 1e-8 * want
        mant, log_scale = sibuya.f0_log(m, [0.0] * m)
        assert abs(mant * cmath.exp(log_scale) - want) < 1e-8 * want


def test_connection_residual():
    d = sibuya.connection(3, [0.2, -0.1, 0.4])
    assert d["unit_coeff_residual"] < 1e-8


def test_origin_data_conjugation():
    a = [0.1 + 0.2j, -0.3, 0.05]
    u = sibuya.origin_data(3, a)
    v = sibuya.origin_data(3, [z.conjugate() for z in a])
    fu = u["value"] * cmath.exp(u["log_scale"])
    fv = v["value"] * cmath.exp(v["log_scale"])
    assert abs(fu.conjugate() - fv) < 1e-8 * abs(fu)


def test_harmonic_spectrum():
    recs = sibuya.spectrum(2, [0.0], 0.0, 6.0, grid=32, enforce=True)
    lams = [r.lam.real for r in recs if not r.tangency]
    assert len(lams) == 3
    for got, want in zip(lams, (1.0, 3.0, 5.0)):
        assert abs(got - want) < 1e-6
    assert all(r.is_simple and r.winding == 1 for r in recs)
    assert sibuya.winding(2, [0.0], 0.2 - 1j, 5.5 + 1j) == 3


def test_dc_dlambda_sign():
    # -iC decreases through its first harmonic zero
    dc = sibuya.dc_dlambda(2, [0.0, 1.0])
    assert (-1j * dc).real < 0.0


def test_hypothesis():
    r = sibuya.hypothesis(4, [1.0, -0.5, -2.0])
    assert r["accepted"] and r["j"] == 2
    r = sibuya.hypothesis(3, [-1.0, 1.0])
    assert not r["accepted"] and r["violating_k"] == 2


def test_exceptions():
    with pytest.raises(ValueError):
        sibuya.stokes(3, [0.0])  # wrong arity
    with pytest.raises(ValueError):
        sibuya.spectrum(2, [0.0], 5.0, 1.0)  # inverted window
    with pytest.raises(ValueError):
        sibuya.stokes(2, [0.0, 0.0], rel_tol=-1.0)
    assert issubclass(sibuya.InputError, ValueError)
    assert issubclass(sibuya.NumericsError, ArithmeticError)
    assert issubclass(sibuya.VerificationError, RuntimeError)


def test_verify_selection():
    rep = sibuya.verify(seed=9, selection=["hypothesis"])
    assert rep["all_pass"]
    assert all(e["name"].startswith("hypothesis") for e in rep["entries"])


def test_f0_negative_zeros():
    recs = sibuya.f0_negative_zeros(2, -8.0, -0.5, grid=32)
    lams = sorted(r.lam.real for r in recs if not r.tangency)
    assert abs(lams[-1] + 3.0) < 1e-7  # zeros at -(4n+3)
    assert all(l < 0 for l in lams)
