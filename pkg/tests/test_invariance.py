import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gkdv.flow import FlowConfig, evolve
from gkdv.invariance import (DEFAULT_OBSERVABLES, conservation_report, hamiltonian, hamiltonians, invariance_test,
                             jacobian_det, l2_norms, parse_observable, parse_observables, scale_map,
                             vector_field_divergence)
from gkdv.sampler import InsufficientESS, WienerSpec, sample_gibbs, sample_gibbs_ensemble, sample_wiener
from gkdv.spectral import SpectralField
from strategies import fields

COS = SpectralField.from_modes(4, {1: 1.0})


# -- Hamiltonian -----------------------------------------------------------------

def test_hamiltonian_examples():
    assert hamiltonian(COS) == pytest.approx(2 * math.pi)
    assert hamiltonian(SpectralField.zeros(3)) == 0
    assert hamiltonian(2 * COS) == pytest.approx(8 * math.pi)


def test_hamiltonian_potential_term():
    # 2cos x + 2cos 2x: int u^5 = 2 pi * #{t in {1,-1,2,-2}^5 : sum t = 0} = 2 pi * 100
    f = SpectralField.from_modes(2, {1: 1.0, 2: 1.0})
    kinetic = 2 * math.pi * (1 + 4)
    assert hamiltonian(f) == pytest.approx(kinetic + 2 * math.pi * 100 / 20)


@given(fields(1, 6))
def test_hamiltonian_batch_agrees(f):
    batch = np.stack([f.coeffs, 2 * f.coeffs])
    np.testing.assert_allclose(hamiltonians(batch), [hamiltonian(f), hamiltonian(2 * f)], rtol=1e-12, atol=1e-12)


# -- conservation ------------------------------------------------------------------

def test_zero_trajectory_has_no_drift():
    r = conservation_report(evolve(SpectralField.zeros(4), FlowConfig(N=4, T=0.1)))
    assert r.l2_drift == 0 and r.H_drift == 0
    assert len(list(r.rows())) == len(r.times)


def test_drift_shrinks_at_fourth_order():
    f = sample_wiener(WienerSpec(8, 2))
    coarse, fine = (conservation_report(evolve(f, FlowConfig(N=8, T=1.0, dt=dt))).H_drift for dt in (2e-3, 1e-3))
    assert 4 <= coarse / fine <= 64


def test_gl4_conserves_both_on_a_gibbs_sample():
    f = sample_gibbs(WienerSpec(8, 0), 4.0, 200)
    r = conservation_report(evolve(f, FlowConfig(N=8, T=0.5, dt=5e-4, integrator="GL4")))
    assert r.l2_drift <= 1e-9 and r.H_drift <= 1e-6


# -- divergence and Liouville --------------------------------------------------------

def test_divergence_one_mode_vanishes():
    assert abs(vector_field_divergence(1, sample_wiener(WienerSpec(1, 0)))) < 1e-10


def test_linear_divergence_is_zero():
    f = sample_wiener(WienerSpec(4, 1))
    assert vector_field_divergence(4, f, FlowConfig(N=4, nonlin_coeff=0.0)) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize("N", [2, 4, 8])
def test_full_divergence_is_zero(N):
    assert abs(vector_field_divergence(N, sample_wiener(WienerSpec(N, 3)))) < 1e-6


def test_divergence_needs_fitting_field():
    with pytest.raises(ValueError):
        vector_field_divergence(2, SpectralField.zeros(3))


def test_jacobian_examples():
    g = sample_gibbs(WienerSpec(4, 1), 4.0, 200)
    assert jacobian_det(4, g, 0.0) == 1.0
    assert jacobian_det(4, g, 0.1, FlowConfig(N=4, nonlin_coeff=0.0, dt=1e-3)) == pytest.approx(1, abs=1e-8)
    assert abs(jacobian_det(4, g, 0.1, FlowConfig(N=4, dt=1e-4)) - 1) <= 1e-5


def test_jacobian_dimension_cap():
    with pytest.raises(ValueError):
        jacobian_det(7, SpectralField.zeros(7), 0.1)


# -- observables ------------------------------------------------------------------

def test_parser_values():
    c = np.array([[1 + 2j, 3 - 1j, 0.5j]])
    assert parse_observable("re(1)")(c)[0] == 1
    assert parse_observable("im(2)")(c)[0] == -1
    assert parse_observable("abs2(2)")(c)[0] == pytest.approx(10)
    assert parse_observable("clamp(abs2(2), 4.5)")(c)[0] == 4.5
    assert parse_observable("l2(2)")(c)[0] == pytest.approx(4 * math.pi * 15)
    assert parse_observable("cos(re(1))")(c)[0] == pytest.approx(math.cos(1))
    assert parse_observable(" sin( im(3) ) ")(c)[0] == pytest.approx(math.sin(0.5))
    assert [o.name for o in parse_observables("re(1); abs2(3)")] == ["re(1)", "abs2(3)"]


@pytest.mark.parametrize("text", ["", "re", "re(1", "re(1))", "exp(re(1))", "clamp(re(1))", "re(x)", "abs2(1) 2"])
def test_parser_rejects(text):
    with pytest.raises(ValueError):
        parse_observable(text)


def test_mode_out_of_range():
    with pytest.raises(ValueError):
        parse_observable("re(5)")(np.zeros((1, 4), complex))


# -- Monte Carlo invariance ----------------------------------------------------------

@pytest.fixture(scope="module")
def small_ensemble():
    return sample_gibbs_ensemble(WienerSpec(6, 0), 4.0, 400)


def test_zero_horizon_gives_zero_z(small_ensemble):
    r = invariance_test(small_ensemble, 0.0)
    assert all(o.z == 0 and o.z_paired == 0 for o in r.observables)
    assert r.passed and "family-wise" in r.bonferroni_note


def test_linear_flow_keeps_mode_moduli(small_ensemble):
    r = invariance_test(small_ensemble, 0.5, FlowConfig(N=6, nonlin_coeff=0.0, dt=1e-3), ["abs2(1)", "l2(3)"])
    for o in r.observables:
        assert abs(o.mean_tT - o.mean_t0) < 1e-12 * (1 + abs(o.mean_t0))
        assert abs(o.z) < 1e-8


def test_flow_keeps_weighted_means(small_ensemble):
    r = invariance_test(small_ensemble, 0.2, FlowConfig(N=6, dt=1e-3), list(DEFAULT_OBSERVABLES))
    assert r.passed, r.to_dict()


def test_negative_control_detected():
    ens = sample_gibbs_ensemble(WienerSpec(8, 0), 4.0, 10_000)
    r = invariance_test(ens, 0.0, observables=["clamp(l2(2), 25)"], premap=scale_map(1.1))
    assert r.perturbed and abs(r.observables[0].z) > 3


def test_ess_guard():
    ens = sample_gibbs_ensemble(WienerSpec(8, 0), 20.0, 10_000)
    with pytest.raises(InsufficientESS):
        invariance_test(ens, 1.0)


def test_report_dict_roundtrips_through_json(small_ensemble):
    import json
    d = json.loads(json.dumps(invariance_test(small_ensemble, 0.0).to_dict()))
    assert d["M"] == 400 and len(d["observables"]) == 3


@given(st.floats(0.5, 2.0))
def test_l2_norms_homogeneous(a):
    c = sample_wiener(WienerSpec(5, 1)).coeffs
    assert l2_norms(a * c) == pytest.approx(a * l2_norms(c))
