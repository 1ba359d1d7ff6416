import cmath
import math
from pathlib import Path

import pytest

import regge

MEDIA = Path(__file__).resolve().parents[2] / "examples_media"


def bump_step(flux=0.3, v0=0.3):
    return regge.Medium({
        "r0": 0.5,
        "R": 2.0,
        "V": {"kind": "step", "params": [v0], "support": [0.5, 2.0]},
        "B": {"kind": "bump", "params": [1.0], "support": [0.5, 1.5], "flux_over_2pi": flux},
    })


def test_bessel_half_order():
    b = regge.bessel(0.5, 1.3)
    assert abs(b["J"] - math.sqrt(2 / (math.pi * 1.3)) * math.sin(1.3)) < 1e-13
    assert abs(b["H1"] * b["dH2"] - b["dH1"] * b["H2"] + 4j / (math.pi * 1.3)) < 1e-12


def test_gamma_imaginary_axis():
    for y in (1.0, 2.0, 5.0):
        g = regge.gamma(1j * y)
        assert abs(abs(g) ** 2 * y * math.sinh(math.pi * y) / math.pi - 1) < 1e-10


def test_zero_medium_is_hard_disk():
    q = regge.Medium({"r0": 0.5, "R": 2.0})
    assert q.flux == 0.0
    r, f, _ = regge.jost_solve(q, "+", 0.5, grid=256)
    assert max(abs(v - cmath.exp(1j * x)) for x, v in zip(r, f)) < 1e-10


def test_phase_shifts_and_flux():
    q = bump_step(0.3)
    data = regge.phase_shifts(q, -40, 40)
    assert len(data["records"]) == 81
    s40 = complex(*data["records"][-1]["sigma"])
    assert abs(s40 - cmath.exp(0.3j * math.pi)) < 1e-12
    est = regge.recover_flux(q)
    assert abs(est["flux_over_2pi_mod2"] - 0.3) < 1e-3
    assert abs(abs(regge.sigma(q, 7.0)) - 1) < 1e-10


def test_discriminator():
    a, b = bump_step(0.3), bump_step(0.3, 0.5)
    rep = regge.discriminate(a, b)
    assert rep["max_rel"] < 1e-6
    assert regge.discriminate(a, a)["max_abs"] <= 1e-7
    with pytest.raises(regge.FluxMismatch):
        regge.discriminate(a, bump_step(0.4))


def test_verify_and_forced_failure():
    assert regge.verify(grid=256)["pass"]
    bad = regge.verify(bump_step(), tolerance=1e-30, grid=256)
    assert not bad["pass"]
    assert {g["group"] for g in bad["groups"]} >= {"specfun", "wronskian", "discriminator_identity"}


def test_load_and_errors():
    q = regge.Medium.load(str(MEDIA / "aharonov_bohm.json"))
    assert abs(q.flux - 0.7) < 1e-12
    with pytest.raises(regge.ConfigError):
        regge.Medium('{"r0": 0.5')
    with pytest.raises(regge.ConfigError):
        regge.Medium({"R": 2.0})


def test_cam_scan():
    scan = regge.cam_scan(bump_step(), [2 + 1j, 3 - 0.5j])
    assert len(scan["points"]) + len(scan["excluded"]) == 2
