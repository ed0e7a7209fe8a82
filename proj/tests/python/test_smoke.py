import math

import pytest

import curveflow as cf


def test_dictionary_round_trip():
    problem = cf.SolitonProblem.power_flow(0.5, 1.0, 0.0)
    energy = cf.energy_from_flow(problem)
    assert energy == cf.CurvatureEnergy.power(0.5, 0.0)
    back = cf.flow_from_energy(energy, 0.25)
    assert back.p == 0.5 and back.b == 0.0
    assert back.V == (0.0, 1.0)


def test_grim_reaper_pipeline():
    energy = cf.CurvatureEnergy.entropy(0.0)
    profile = cf.integrate_profile(energy, 1.0, 5.0)
    worst = max(abs(k - 1.0 / math.cosh(s)) for s, k in zip(profile.s, profile.kappa))
    assert worst < 1e-6
    curve = cf.reconstruct_curve(profile)
    assert cf.soliton_residual(curve, cf.flow_from_energy(energy, 1.0)) < 1e-7
    assert abs(cf.first_variation(curve, energy, 0.7, 1.0, 1.0)) < 1e-4


def test_soliton_metadata_and_errors():
    meta = cf.soliton(p=1.0, b=0.0, d=1.0)
    assert meta["lambda"] == 0.0
    assert meta["residuals"]["soliton"] < 1e-7
    assert cf.soliton(b=0.0, log=True)["lambda"] == 1.0
    with pytest.raises(cf.DegenerateEnergy):
        cf.soliton(p=0.0, b=1.0)
    with pytest.raises(cf.NoSolitonError):
        cf.soliton(p=2.0, b=1.0, d=0.1)


def test_verify_reference_curves():
    catenary = cf.reference("catenary", 1.0, 3.0)
    report = cf.verify(catenary, p=0.5)
    assert report["verdict"] == "PASS"
    assert abs(report["d_estimate"] - 0.25) < 1e-3
    circle = cf.reference("circle", 1.0, samples=512)
    assert cf.verify(circle, p=1.0)["verdict"] == "FAIL"
    with pytest.raises(cf.DomainError):
        cf.reference("spiral")


def test_csv_round_trip():
    curve = cf.reference("cycloid", 1.0, 2.0, samples=101)
    back = cf.curve_from_csv(curve.to_csv())
    assert back.points == curve.points
    assert back.kappas == curve.kappas
    with pytest.raises(cf.ParseError):
        cf.curve_from_csv("x,y\n")
