"""End-to-end self-checks that re-derive every published number independently.

Each check re-computes one family of results twice — once through the circuit
simulation and once through a closed form or an algebraic identity — and
reports the worst deviation.  ``run_all_checks`` collects the results together
with a *discrepancy log*: a machine-readable record of every place where the
toolkit's computed values disagree with figures that circulate alongside the
protocol (detector success probability, one normalization denominator, one
decomposition, one entropy spot value, and the phase freedom of the generated
basis).  The log is part of the output on purpose: the disagreements are
reproducible facts about the mathematics, not bugs, and hiding them would make
the passing checks less trustworthy.

The report is deterministic for a fixed seed — no timestamps, no environment
data — so two runs with the same seed serialize to byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .hilbert import Operator, StateVector, embed, inner
from .circuit import (
    ATOMIC_SPACE,
    BRANCHES,
    BRANCH_PRIME,
    BRANCH_DOUBLE_PRIME,
    FULL_SPACE,
    PHOTONIC_SPACE,
    DetectionOutcome,
    SchemeParams,
    atom_photon_unitary,
    beam_splitter,
    closed_form_chi,
    detect,
    evolve,
    gamma_factors,
    ges_target_state,
    initial_state,
    mz_circuit,
    photon_branch,
    prepare_ges,
)
from .measures import (
    FORMULA_CUT,
    FORMULA_PAIR,
    SINGLE_CUTS,
    bipartition_entropy,
    calibrate_closed_forms,
    concurrence_closed_form,
    entropy_closed_form,
    measure_report,
)
from .basis import (
    ALL_INDICES,
    CANONICAL_EXPANSIONS,
    D4_EXPANSION_VARIANT,
    canonical_state,
    compare_generated,
    decompose,
    explicit_basis,
)

__all__ = [
    "CheckResult",
    "VerificationReport",
    "run_all_checks",
    "report_to_json",
    "FAULT_MODES",
    "ENTROPY_SPOT_PI_8",
]

# Known fault injections, used as negative controls by the test suite: a build
# with a deliberately broken circuit must fail the oracle-equivalence check.
FAULT_MODES = ("conjugate_bs",)

# Entropy of the chi' branch across the {q1,q2}|{q3,q4} cut at theta = pi/8,
# phi = pi/2.  Equals the binary-like entropy at delta = 0.8 and is confirmed
# by the numerical reduced density matrix to 1e-15.  A spot value of 0.8813
# (the entropy at delta = 0.4) also circulates; see the discrepancy log.
ENTROPY_SPOT_PI_8 = 0.4689955935892811

_D1 = DetectionOutcome.D1_CLICK_D2_NULL
_D2 = DetectionOutcome.D2_CLICK_D1_NULL


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single verification check."""

    name: str
    passed: bool
    measured: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} (measured {self.measured:.3e})"


@dataclass(frozen=True)
class VerificationReport:
    """All check results plus the structured discrepancy log."""

    seed: int
    checks: tuple
    discrepancy_log: dict

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list:
        out = [c.line() for c in self.checks]
        n_pass = sum(c.passed for c in self.checks)
        out.append(f"{n_pass}/{len(self.checks)} checks passed")
        return out


def _phase_str(z: complex) -> str:
    """Render a unit phase factor as one of '1', '-1', '1j', '-1j' or a+bj."""
    for label, value in (("1", 1.0), ("-1", -1.0), ("1j", 1j), ("-1j", -1j)):
        if abs(z - value) <= 1e-9:
            return label
    return f"{z.real:+.6f}{z.imag:+.6f}j"


def _faulty_circuit(phi: float) -> Operator:
    """The interferometer with a conjugated beam splitter (fault injection)."""
    bs_bad = Operator(PHOTONIC_SPACE, beam_splitter().mat.conj())
    bs_full = embed(bs_bad, ["U", "L"], FULL_SPACE)
    op = bs_full
    for qubit in (1, 2, 3, 4):
        op = atom_photon_unitary(qubit, phi) @ op
    return bs_full @ op


def _check_unitarity(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(25):
        phi = float(rng.uniform(0.0, 2.0 * np.pi))
        u = mz_circuit(phi).mat
        dev = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
        worst = max(worst, dev)
    return CheckResult(
        "circuit_unitarity",
        worst <= 1e-12,
        worst,
        "U^dag U = 1 for 25 random phases",
    )


def _check_photon_conservation(rng: np.random.Generator) -> CheckResult:
    # Total photon number operator on the two modes.
    n_single = np.diag([0.0, 1.0]).astype(complex)
    eye2 = np.eye(2, dtype=complex)
    n_tot = np.kron(n_single, eye2) + np.kron(eye2, n_single)
    n_full = embed(Operator(PHOTONIC_SPACE, n_tot), ["U", "L"], FULL_SPACE).mat
    worst = 0.0
    for _ in range(10):
        phi = float(rng.uniform(0.0, 2.0 * np.pi))
        u = mz_circuit(phi).mat
        dev = float(np.max(np.abs(u @ n_full - n_full @ u)))
        worst = max(worst, dev)
    return CheckResult(
        "photon_number_conservation",
        worst <= 1e-12,
        worst,
        "[U, N_photon] = 0 for 10 random phases",
    )


def _check_oracle_equivalence(
    rng: np.random.Generator, fault: Optional[str]
) -> CheckResult:
    """Circuit output vs the closed-form branch pair, up to one global phase."""
    worst = 0.0
    for _ in range(200):
        phi = float(rng.uniform(0.0, 2.0 * np.pi))
        thetas = tuple(float(t) for t in rng.uniform(0.0, np.pi / 2.0, size=4))
        params = SchemeParams(phi=phi, thetas=thetas)
        if fault == "conjugate_bs":
            final = _faulty_circuit(phi) @ initial_state(thetas)
        else:
            final = evolve(params)
        chi_p = closed_form_chi(params, BRANCH_PRIME)
        chi_dp = closed_form_chi(params, BRANCH_DOUBLE_PRIME)
        # Expected output: a single photon split over |01> and |10>, each
        # component carrying its branch, under one common prefactor.
        got_p = photon_branch(final, 0, 1)
        got_dp = photon_branch(final, 1, 0)
        phase = -1j * np.exp(-2j * phi)
        dev = float(
            max(
                np.max(np.abs(got_p.amp - phase * chi_p.amp)),
                np.max(np.abs(got_dp.amp - phase * chi_dp.amp)),
            )
        )
        worst = max(worst, dev)
    return CheckResult(
        "oracle_equivalence",
        worst <= 1e-12,
        worst,
        "circuit output matches closed-form branches for 200 random draws",
    )


def _check_branch_norms(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(50):
        thetas = tuple(float(t) for t in rng.uniform(0.0, np.pi / 2.0, size=4))
        params = SchemeParams(phi=np.pi / 2.0, thetas=thetas)
        g1, g2 = gamma_factors(thetas)
        n_p = closed_form_chi(params, BRANCH_PRIME).norm ** 2
        n_dp = closed_form_chi(params, BRANCH_DOUBLE_PRIME).norm ** 2
        dev = max(abs(n_p - g1), abs(n_dp - g2), abs(n_p + n_dp - 1.0))
        worst = max(worst, float(dev))
    return CheckResult(
        "branch_normalization",
        worst <= 1e-12,
        worst,
        "|chi'|^2 = Gamma_1, |chi''|^2 = Gamma_2, sum = 1 at phi = pi/2",
    )


def _check_ges_preparation() -> CheckResult:
    params = SchemeParams(phi=np.pi / 2.0)
    worst = 0.0
    final = evolve(params)
    ref = ges_target_state(BRANCH_PRIME)
    for outcome, branch in ((_D2, BRANCH_PRIME), (_D1, BRANCH_DOUBLE_PRIME)):
        state, prob = detect(final, outcome, eta=1.0)
        worst = max(worst, abs(prob - 0.5))
        if state is None:
            return CheckResult("ges_preparation", False, 1.0,
                               f"outcome {outcome.value} produced no pure state")
        target = ges_target_state(branch)
        worst = max(worst, float(1.0 - abs(inner(target, state))))
        prepared = prepare_ges(params, outcome=outcome)
        worst = max(worst, float(np.max(np.abs(prepared.state.amp - ref.amp))))
        worst = max(worst, abs(prepared.probability - 1.0))
    return CheckResult(
        "ges_preparation",
        worst <= 1e-12,
        worst,
        "both detector outcomes yield the target state with probability 1/2",
    )


def _check_genuineness() -> CheckResult:
    worst = 0.0
    for branch in BRANCHES:
        report = measure_report(ges_target_state(branch))
        if not report.is_genuine:
            return CheckResult("target_state_genuineness", False, 1.0,
                               f"{branch} branch failed the criterion")
        worst = max(worst, max(report.pairwise_concurrence.values()))
        for entropies in (report.pair_entropy, report.single_entropy):
            worst = max(worst, max(abs(1.0 - s) for s in entropies.values()))
    return CheckResult(
        "target_state_genuineness",
        worst <= 1e-10,
        float(worst),
        "all pairwise concurrences vanish and all 7 cut entropies equal 1",
    )


def _check_closed_forms(seed: int) -> CheckResult:
    cal = calibrate_closed_forms(n_samples=40, seed=seed + 101)
    ok = True
    worst = 0.0
    for branch in BRANCHES:
        worst = max(worst, cal["pair_max_dev"][branch]["".join(FORMULA_PAIR)])
        worst = max(worst, cal["cut_max_dev"][branch][str(FORMULA_CUT)])
        if cal["matching_pairs"][branch] != ["".join(FORMULA_PAIR)]:
            ok = False
        if cal["matching_cuts"][branch] != [str(FORMULA_CUT)]:
            ok = False
    # Spot values at theta_i = pi/8.
    thetas = (np.pi / 8.0,) * 4
    spots = (
        abs(concurrence_closed_form(thetas, BRANCH_PRIME) - 0.2),
        abs(concurrence_closed_form(thetas, BRANCH_DOUBLE_PRIME) - 1.0 / 3.0),
        abs(entropy_closed_form(thetas, BRANCH_PRIME) - ENTROPY_SPOT_PI_8),
        abs(entropy_closed_form(thetas, BRANCH_DOUBLE_PRIME) - 1.0),
    )
    worst = max(worst, *map(float, spots))
    return CheckResult(
        "closed_form_measures",
        ok and worst <= 1e-9,
        worst,
        "formulas match numerics on the (q3,q4) pair and the q1q2|q3q4 cut",
    )


def _check_basis() -> CheckResult:
    basis = explicit_basis()
    worst = max(basis.orthonormality_deviation(), basis.completeness_deviation())
    n_genuine = sum(
        measure_report(basis.state(idx.family, idx.component)).is_genuine
        for idx in ALL_INDICES
    )
    return CheckResult(
        "basis_orthonormal_complete_genuine",
        worst <= 1e-12 and n_genuine == 16,
        float(worst),
        f"Gram and completeness deviations; {n_genuine}/16 elements genuine",
    )


def _check_generated_basis() -> tuple:
    rows = compare_generated()
    worst = max(r["max_dev_after_alignment"] for r in rows)
    all_match = all(r["matches_up_to_phase"] for r in rows)
    phases = {r["index"]: _phase_str(r["phase"]) for r in rows}
    check = CheckResult(
        "generated_basis_matches_explicit",
        all_match and worst <= 1e-12,
        float(worst),
        "circuit-generated elements equal the explicit table up to unit phases",
    )
    return check, phases


def _check_decompositions() -> CheckResult:
    basis = explicit_basis()
    worst = 0.0
    for name, expected in CANONICAL_EXPANSIONS.items():
        dec = decompose(canonical_state(name), basis)
        # Align one common phase so the largest coefficient matches its
        # (real, possibly negative) expected value.
        key = max(expected, key=lambda k: abs(expected[k]))
        pivot = dec.coefficient(*key)
        phase = pivot / abs(pivot) * (-1.0 if expected[key] < 0 else 1.0)
        for idx in ALL_INDICES:
            got = dec.coefficient(idx.family, idx.component) / phase
            want = expected.get((idx.family, idx.component), 0.0)
            worst = max(worst, float(abs(got - want)))
    return CheckResult(
        "canonical_decompositions",
        worst <= 1e-12,
        worst,
        "GHZ/W/cluster/Dicke expansions match their coefficient tables",
    )


def _d4_variant_entry() -> dict:
    """Characterize the alternative Dicke expansion that circulates."""
    basis = explicit_basis()
    variant = np.zeros(16, dtype=complex)
    for (family, component), coeff in D4_EXPANSION_VARIANT.items():
        variant += coeff * basis.state(family, component).amp
    d4 = canonical_state("d4").amp
    overlap = abs(np.vdot(d4, variant))
    # The variant reconstructs the Dicke state with the |1100> amplitude
    # negated; index 12 = 0b1100 in the first-qubit-most-significant order.
    flipped = d4.copy()
    flipped[12] = -flipped[12]
    dev_flipped = float(np.max(np.abs(variant - flipped)))
    return {
        "agrees": bool(overlap >= 1.0 - 1e-12),
        "computed_coefficients": {
            f"phi_{f}_{c}": float(v)
            for (f, c), v in sorted(CANONICAL_EXPANSIONS["d4"].items())
        },
        "variant_coefficients": {
            f"phi_{f}_{c}": float(v)
            for (f, c), v in sorted(D4_EXPANSION_VARIANT.items())
        },
        "variant_norm": float(np.linalg.norm(variant)),
        "variant_overlap_with_dicke": float(overlap),
        "variant_deviation_from_flipped_1100": dev_flipped,
        "note": (
            "the circulated six-term expansion has unit norm but overlap 2/3 "
            "with the Dicke state; it reconstructs the Dicke state with the "
            "|1100> amplitude negated.  The four-term expansion above is the "
            "unique exact one."
        ),
    }


def _check_parseval(rng: np.random.Generator) -> CheckResult:
    basis = explicit_basis()
    worst = 0.0
    for _ in range(100):
        raw = rng.normal(size=16) + 1j * rng.normal(size=16)
        state = StateVector(ATOMIC_SPACE, raw / np.linalg.norm(raw))
        dec = decompose(state, basis)
        total = sum(abs(c) ** 2 for c in dec.coefficients.values())
        worst = max(worst, float(abs(total - 1.0)), float(dec.residual))
    return CheckResult(
        "parseval_completeness",
        worst <= 1e-12,
        worst,
        "coefficients of 100 random states carry all the norm",
    )


def _check_detection(rng: np.random.Generator) -> tuple:
    """POVM completeness, eta-independence, and the success-probability log."""
    etas = (0.0, 0.25, 0.5, 0.8, 1.0)
    worst = 0.0
    final = evolve(SchemeParams(phi=np.pi / 2.0))
    reference = {}
    for outcome in (_D1, _D2):
        state, _ = detect(final, outcome, eta=1.0)
        reference[outcome] = state
    success = {}
    for eta in etas:
        probs = {}
        for outcome in DetectionOutcome:
            state, prob = detect(final, outcome, eta=eta)
            probs[outcome] = prob
            if eta > 0.0 and outcome in reference and state is not None:
                fidelity = abs(inner(reference[outcome], state))
                worst = max(worst, float(1.0 - fidelity))
        worst = max(worst, float(abs(sum(probs.values()) - 1.0)))
        worst = max(worst, float(probs[DetectionOutcome.DOUBLE_CLICK]))
        success[eta] = probs[_D1] + probs[_D2]
    # POVM completeness away from the symmetric point.
    for _ in range(10):
        thetas = tuple(float(t) for t in rng.uniform(0.0, np.pi / 2.0, size=4))
        state = evolve(SchemeParams(phi=np.pi / 2.0, thetas=thetas))
        eta = float(rng.uniform(0.0, 1.0))
        total = sum(detect(state, o, eta=eta)[1] for o in DetectionOutcome)
        worst = max(worst, float(abs(total - 1.0)))
    check = CheckResult(
        "detector_model",
        worst <= 1e-12,
        worst,
        "POVM outcomes are complete and click-conditioned states ignore eta",
    )
    log_entry = {
        "agrees": False,
        "computed_success_probability": {f"{eta:g}": float(p)
                                         for eta, p in success.items()},
        "linear_reference": {f"{eta:g}": float(eta) for eta in etas},
        "quadratic_reference": {f"{eta:g}": float(eta) ** 2 for eta in etas},
        "note": (
            "a single photon reaches a single detector, so the total heralding "
            "probability scales as eta, not eta^2; the computed values match "
            "the linear reference."
        ),
    }
    return check, log_entry


def _one_vs_three_entry(rng: np.random.Generator) -> dict:
    worst = 0.0
    for _ in range(25):
        thetas = tuple(float(t) for t in rng.uniform(0.1, 1.4, size=4))
        params = SchemeParams(phi=np.pi / 2.0, thetas=thetas)
        for branch in BRANCHES:
            chi = closed_form_chi(params, branch)
            if chi.norm < 1e-6:
                continue
            state = chi.normalized()
            formula = entropy_closed_form(thetas, branch)
            for cut in SINGLE_CUTS:
                dev = abs(bipartition_entropy(state, cut) - formula)
                worst = max(worst, float(dev))
    at_pi4 = bipartition_entropy(ges_target_state(BRANCH_PRIME), SINGLE_CUTS[0])
    return {
        "agrees": False,
        "max_deviation_single_cut_vs_two_two_formula": worst,
        "value_at_theta_pi_4": float(at_pi4),
        "note": (
            "the closed-form entropy describes the {q1,q2}|{q3,q4} cut only; "
            "single-qubit cuts generically deviate from it by O(1), although "
            "all seven cuts coincide at 1 for the theta = pi/4 target states."
        ),
    }


def _entropy_spot_entry() -> dict:
    thetas = (np.pi / 8.0,) * 4
    params = SchemeParams(phi=np.pi / 2.0, thetas=thetas)
    chi = closed_form_chi(params, BRANCH_PRIME).normalized()
    numeric = bipartition_entropy(chi, FORMULA_CUT)
    formula = entropy_closed_form(thetas, BRANCH_PRIME)
    return {
        "agrees": False,
        "computed": float(formula),
        "numerical_check": float(numeric),
        "circulated_value": 0.8813,
        "note": (
            "at theta = pi/8 the formula gives delta = (0.5+0.5)/1.25 = 0.8 "
            "and S = 0.46900, confirmed by the reduced density matrix; the "
            "circulated 0.8813 equals the entropy at delta = 0.4, which arises "
            "from squaring the numerator terms, and matches no cut of the state."
        ),
    }


def run_all_checks(seed: int = 0, fault: Optional[str] = None) -> VerificationReport:
    """Run every verification check and assemble the report.

    ``fault`` injects a known defect (see ``FAULT_MODES``) so the suite can be
    shown to actually catch broken builds; ``None`` verifies the real code.
    """
    if fault is not None and fault not in FAULT_MODES:
        raise ValueError(f"unknown fault mode {fault!r}; expected one of {FAULT_MODES}")
    rng = np.random.default_rng(seed)
    checks = [
        _check_unitarity(rng),
        _check_photon_conservation(rng),
        _check_oracle_equivalence(rng, fault),
        _check_branch_norms(rng),
        _check_ges_preparation(),
        _check_genuineness(),
        _check_closed_forms(seed),
        _check_basis(),
    ]
    generated_check, phases = _check_generated_basis()
    checks.append(generated_check)
    checks.append(_check_decompositions())
    checks.append(_check_parseval(rng))
    detection_check, success_entry = _check_detection(rng)
    checks.append(detection_check)

    cal = calibrate_closed_forms(n_samples=40, seed=seed + 101)
    discrepancy_log = {
        "success_probability_scaling": success_entry,
        "chi_double_prime_normalization": {
            "agrees": False,
            "note": (
                "the chi'' branch normalizes by 1/sqrt(Gamma_2); the "
                "denominator 1/sqrt(Gamma_1) sometimes quoted for it would "
                "leave the branch unnormalized whenever Gamma_1 != Gamma_2, "
                "as the branch_normalization check demonstrates."
            ),
        },
        "closed_form_calibration": {
            "agrees": True,
            "matching_pairs": cal["matching_pairs"],
            "matching_cuts": cal["matching_cuts"],
            "pair_max_dev": cal["pair_max_dev"],
            "cut_max_dev": cal["cut_max_dev"],
            "note": (
                "the concurrence formula describes exactly the (q3,q4) pair "
                "and the entropy formula exactly the {q1,q2}|{q3,q4} cut; no "
                "other pair or cut matches for generic angles."
            ),
        },
        "generated_basis_phases": {
            "agrees": True,
            "phases": phases,
            "note": (
                "circuit-generated basis elements match the explicit tables "
                "up to the listed unit phase factors, which drop out of every "
                "physical quantity."
            ),
        },
        "one_vs_three_entropy": _one_vs_three_entry(rng),
        "dicke_expansion": _d4_variant_entry(),
        "entropy_spot_theta_pi_8": _entropy_spot_entry(),
    }
    return VerificationReport(seed=seed, checks=tuple(checks),
                              discrepancy_log=discrepancy_log)


def report_to_json(report: VerificationReport) -> str:
    """Serialize a report deterministically (same seed, same bytes)."""
    payload = {
        "seed": report.seed,
        "all_passed": report.all_passed,
        "checks": [
            {
                "name": c.name,
                "passed": c.passed,
                "measured": c.measured,
                "detail": c.detail,
            }
            for c in report.checks
        ],
        "discrepancy_log": report.discrepancy_log,
    }
    return json.dumps(payload, indent=2, sort_keys=True)
