"""Unit tests for the interferometer circuit, detection and closed forms."""

import math

import numpy as np
import pytest

from ges4.hilbert import PAULIS, HilbertSpace, Operator, StateVector, basis_state, embed, inner, tensor
from ges4.circuit import (
    ATOMIC_SPACE,
    BRANCHES,
    BRANCH_DOUBLE_PRIME,
    BRANCH_PRIME,
    FULL_SPACE,
    PHOTONIC_SPACE,
    DetectionOutcome,
    PhysicalParams,
    SchemeParams,
    atom_photon_unitary,
    beam_splitter,
    check_branch,
    closed_form_chi,
    closed_form_pair,
    detect,
    evolve,
    gamma_factors,
    ges_target_state,
    initial_state,
    mz_circuit,
    phase_from_physical,
    photon_branch,
    prepare_ges,
)

PI = math.pi


def test_scheme_params_broadcast_and_validation():
    p = SchemeParams(phi=PI / 2, thetas=0.3)
    assert p.thetas == (0.3,) * 4
    p = SchemeParams(phi=5 * PI / 2)  # reduced mod 2*pi
    assert abs(p.phi - PI / 2) < 1e-12
    with pytest.raises(ValueError):
        SchemeParams(phi=float("inf"))
    with pytest.raises(ValueError):
        SchemeParams(phi=0.0, thetas=(0.1, 0.2))
    with pytest.raises(ValueError):
        SchemeParams(phi=0.0, eta=1.5)


def test_check_branch():
    assert check_branch("prime") == "prime"
    with pytest.raises(ValueError):
        check_branch("third")


def test_beam_splitter_action():
    bs = beam_splitter()
    assert bs.is_unitary
    out = bs @ basis_state(PHOTONIC_SPACE, "10")
    expected = np.zeros(4, dtype=complex)
    expected[2] = 1.0 / math.sqrt(2)        # |10>
    expected[1] = -1.0j / math.sqrt(2)      # |01>
    np.testing.assert_allclose(out.amp, expected, atol=1e-15)
    # photon-number conservation fixes the empty and doubly occupied states
    for label in ("00", "11"):
        fixed = bs @ basis_state(PHOTONIC_SPACE, label)
        np.testing.assert_allclose(fixed.amp, basis_state(PHOTONIC_SPACE, label).amp,
                                   atol=1e-15)


def test_atom_photon_unitary_phase_table():
    phi = 0.71
    u = atom_photon_unitary(2, phi)
    assert u.is_unitary
    # upper mode occupied, q2 in |0>: phase exp(-i phi)
    psi = basis_state(FULL_SPACE, "100000")
    out = u @ psi
    assert abs(inner(psi, out) - np.exp(-1j * phi)) < 1e-12
    # upper mode occupied, q2 in |1>: no phase
    psi = basis_state(FULL_SPACE, "100100")
    assert abs(inner(psi, u @ psi) - 1.0) < 1e-12
    # lower mode occupied, q2 in |1>: phase exp(-i phi)
    psi = basis_state(FULL_SPACE, "010100")
    assert abs(inner(psi, u @ psi) - np.exp(-1j * phi)) < 1e-12
    # other qubits do not matter
    psi = basis_state(FULL_SPACE, "101011")
    assert abs(inner(psi, u @ psi) - np.exp(-1j * phi)) < 1e-12
    with pytest.raises(ValueError):
        atom_photon_unitary(5, phi)


def test_mz_circuit_unitary(rng):
    for _ in range(10):
        phi = float(rng.uniform(0, 2 * PI))
        assert mz_circuit(phi).is_unitary


def test_initial_state_product_form():
    thetas = (0.3, 0.7, 0.1, 1.2)
    psi = initial_state(thetas)
    assert abs(psi.norm - 1.0) < 1e-12
    # photon in the upper mode only
    assert photon_branch(psi, 1, 0).norm > 0.99999999
    amp = psi.amplitude("100000")
    expected = math.prod(math.cos(t) for t in thetas)
    assert abs(amp - expected) < 1e-12
    with pytest.raises(ValueError):
        initial_state((0.1, 0.2))


def test_evolve_stays_in_one_photon_sector(rng):
    for _ in range(5):
        params = SchemeParams(phi=float(rng.uniform(0, 2 * PI)),
                              thetas=tuple(rng.uniform(0, PI / 2, size=4)))
        psi = evolve(params)
        leak = photon_branch(psi, 0, 0).norm ** 2 + photon_branch(psi, 1, 1).norm ** 2
        assert leak < 1e-24


def test_evolve_matches_closed_form(rng):
    # the closed-form branch pair reproduces the circuit output up to the
    # common prefactor -i exp(-2 i phi)
    for _ in range(25):
        params = SchemeParams(phi=float(rng.uniform(0, 2 * PI)),
                              thetas=tuple(rng.uniform(0, PI / 2, size=4)))
        psi = evolve(params)
        phase = -1j * np.exp(-2j * params.phi)
        for branch, (n_u, n_l) in ((BRANCH_PRIME, (0, 1)),
                                   (BRANCH_DOUBLE_PRIME, (1, 0))):
            got = photon_branch(psi, n_u, n_l)
            want = closed_form_chi(params, branch)
            np.testing.assert_allclose(got.amp, phase * want.amp, atol=1e-12)


def test_closed_form_pair_norm_identity(rng):
    for _ in range(20):
        params = SchemeParams(phi=float(rng.uniform(0, 2 * PI)),
                              thetas=tuple(rng.uniform(0, PI / 2, size=4)))
        prime, dprime = closed_form_pair(params)
        assert abs(prime.norm ** 2 + dprime.norm ** 2 - 1.0) < 1e-12


def test_photon_branch_reconstructs_full_state(rng):
    params = SchemeParams(phi=1.1, thetas=tuple(rng.uniform(0, PI / 2, size=4)))
    psi = evolve(params)
    rebuilt = np.zeros(FULL_SPACE.dim, dtype=complex)
    for n_u in (0, 1):
        for n_l in (0, 1):
            base = (n_u * 2 + n_l) * ATOMIC_SPACE.dim
            rebuilt[base:base + ATOMIC_SPACE.dim] = photon_branch(psi, n_u, n_l).amp
    np.testing.assert_allclose(rebuilt, psi.amp, atol=1e-15)


def test_gamma_factors():
    g1, g2 = gamma_factors((PI / 8,) * 4)
    assert abs(g1 - 0.625) < 1e-12
    assert abs(g2 - 0.375) < 1e-12
    g1, g2 = gamma_factors((PI / 4,) * 4)
    assert abs(g1 - 0.5) < 1e-12 and abs(g2 - 0.5) < 1e-12
    # complementary for any angles
    rng = np.random.default_rng(7)
    for _ in range(20):
        g1, g2 = gamma_factors(tuple(rng.uniform(0, PI / 2, size=4)))
        assert abs(g1 + g2 - 1.0) < 1e-12


def test_branch_norms_equal_gammas(rng):
    for _ in range(20):
        thetas = tuple(rng.uniform(0, PI / 2, size=4))
        params = SchemeParams(phi=PI / 2, thetas=thetas)
        g1, g2 = gamma_factors(thetas)
        assert abs(closed_form_chi(params, BRANCH_PRIME).norm ** 2 - g1) < 1e-12
        assert abs(closed_form_chi(params, BRANCH_DOUBLE_PRIME).norm ** 2 - g2) < 1e-12


def test_ges_target_state_sign_tables():
    sq8 = 1.0 / math.sqrt(8.0)
    prime = ges_target_state(BRANCH_PRIME)
    for bits, sign in (("0000", 1), ("1111", 1), ("0110", -1), ("1100", -1),
                       ("1010", -1), ("0011", -1), ("0101", -1), ("1001", -1)):
        assert abs(prime.amplitude(bits) - sign * sq8) < 1e-15
    dprime = ges_target_state(BRANCH_DOUBLE_PRIME)
    for bits, sign in (("1110", 1), ("0111", 1), ("1101", 1), ("1011", 1),
                       ("0010", -1), ("0100", -1), ("1000", -1), ("0001", -1)):
        assert abs(dprime.amplitude(bits) - sign * sq8) < 1e-15
    assert abs(prime.norm - 1.0) < 1e-12


def test_detection_outcome_parsing():
    assert DetectionOutcome.from_string("d2") is DetectionOutcome.D2_CLICK_D1_NULL
    assert DetectionOutcome.from_string("NONE") is DetectionOutcome.NO_CLICK
    with pytest.raises(ValueError):
        DetectionOutcome.from_string("d3")


def test_detect_probability_table():
    psi = evolve(SchemeParams(phi=PI / 2))
    for eta in (0.0, 0.25, 0.5, 0.8, 1.0):
        probs = {o: detect(psi, o, eta)[1] for o in DetectionOutcome}
        assert abs(probs[DetectionOutcome.D1_CLICK_D2_NULL] - eta / 2) < 1e-12
        assert abs(probs[DetectionOutcome.D2_CLICK_D1_NULL] - eta / 2) < 1e-12
        assert abs(probs[DetectionOutcome.NO_CLICK] - (1.0 - eta)) < 1e-12
        assert probs[DetectionOutcome.DOUBLE_CLICK] < 1e-15
        assert abs(sum(probs.values()) - 1.0) < 1e-12


def test_detect_click_states_are_eta_independent():
    psi = evolve(SchemeParams(phi=PI / 2))
    ref, _ = detect(psi, DetectionOutcome.D2_CLICK_D1_NULL, 1.0)
    for eta in (0.25, 0.5, 0.8):
        state, _ = detect(psi, DetectionOutcome.D2_CLICK_D1_NULL, eta)
        np.testing.assert_allclose(state.amp, ref.amp, atol=1e-12)


def test_detect_no_click_is_mixed_at_partial_efficiency():
    psi = evolve(SchemeParams(phi=PI / 2))
    state, prob = detect(psi, DetectionOutcome.NO_CLICK, 0.5)
    assert state is None          # both branches survive; not a pure state
    assert abs(prob - 0.5) < 1e-12
    # at full efficiency a no-click never happens
    state, prob = detect(psi, DetectionOutcome.NO_CLICK, 1.0)
    assert state is None and prob < 1e-15


def test_detect_post_state_matches_target():
    psi = evolve(SchemeParams(phi=PI / 2))
    state, prob = detect(psi, DetectionOutcome.D2_CLICK_D1_NULL, 1.0)
    assert abs(prob - 0.5) < 1e-12
    np.testing.assert_allclose(state.amp, ges_target_state(BRANCH_PRIME).amp,
                               atol=1e-12)
    state, _ = detect(psi, DetectionOutcome.D1_CLICK_D2_NULL, 1.0)
    assert abs(abs(inner(state, ges_target_state(BRANCH_DOUBLE_PRIME))) - 1.0) < 1e-12


def test_detect_input_validation():
    psi = evolve(SchemeParams(phi=PI / 2))
    with pytest.raises(ValueError):
        detect(psi, DetectionOutcome.D2_CLICK_D1_NULL, 1.5)
    with pytest.raises(ValueError):
        detect(StateVector(FULL_SPACE, 2.0 * psi.amp),
               DetectionOutcome.D2_CLICK_D1_NULL, 1.0)
    # a state outside the one-photon sector is rejected
    atoms = tensor(basis_state(PHOTONIC_SPACE, "00"),
                   basis_state(ATOMIC_SPACE, "0000"))
    with pytest.raises(ValueError):
        detect(atoms, DetectionOutcome.D2_CLICK_D1_NULL, 1.0)


def test_prepare_ges_both_outcomes_agree(target_prime):
    params = SchemeParams(phi=PI / 2)
    for outcome in (DetectionOutcome.D1_CLICK_D2_NULL,
                    DetectionOutcome.D2_CLICK_D1_NULL):
        prepared = prepare_ges(params, outcome=outcome)
        np.testing.assert_allclose(prepared.state.amp, target_prime.amp, atol=1e-12)
        assert abs(prepared.probability - 1.0) < 1e-12
    # default outcome at the symmetric point ties to d2
    assert prepare_ges(params).outcome is DetectionOutcome.D2_CLICK_D1_NULL


def test_prepare_ges_success_probability_scales_linearly(target_prime):
    for eta in (0.25, 0.5, 0.8):
        prepared = prepare_ges(SchemeParams(phi=PI / 2, eta=eta))
        assert abs(prepared.probability - eta) < 1e-12
        np.testing.assert_allclose(prepared.state.amp, target_prime.amp, atol=1e-12)


def test_prepare_ges_sigma_y_map(target_prime, target_dprime):
    # sigma^y on q4 carries the d1-conditioned state onto the d2 one
    sy4 = embed(Operator(HilbertSpace.of(("q4", 2)), PAULIS[2]), ["q4"],
                ATOMIC_SPACE)
    mapped = sy4 @ target_dprime
    assert abs(abs(inner(mapped, target_prime)) - 1.0) < 1e-12


def test_prepare_ges_rejects_non_click_outcomes():
    with pytest.raises(ValueError):
        prepare_ges(SchemeParams(phi=PI / 2), outcome=DetectionOutcome.NO_CLICK)


def test_prepare_ges_warns_off_operating_point():
    with pytest.warns(UserWarning):
        prepare_ges(SchemeParams(phi=1.0))


def test_phase_from_physical():
    p = PhysicalParams(dipole=2.0, tau=3.0, detuning=4.0, hbar=1.0, field=5.0)
    assert abs(phase_from_physical(p) - 2.0**2 * 5.0**2 * 3.0 / 4.0) < 1e-12
    # field derived from omega, volume, epsilon0
    p = PhysicalParams(dipole=1.0, tau=1.0, detuning=1.0, hbar=1.0,
                       omega=2.0, volume=1.0, epsilon0=1.0)
    assert abs(phase_from_physical(p) - 1.0) < 1e-12
    with pytest.raises(ValueError):
        phase_from_physical(PhysicalParams(dipole=1.0, tau=1.0, detuning=1.0))
    with pytest.raises(ValueError):
        PhysicalParams(dipole=1.0, tau=1.0, detuning=0.0)
