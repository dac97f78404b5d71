"""Mach-Zehnder + four-cavity circuit, detection, and closed-form branch states.

A single photon enters a 50/50 beam splitter, each arm (modes U and L)
traverses four cavities hosting one atomic qubit each, and the arms recombine
on a second splitter. A dispersive interaction imprints a phase phi on the
photon conditioned on each atomic state, so detecting the output photon
post-selects an entangled four-qubit state.

Photonic modes are truncated at one photon per mode (dimension-4 sector).
Truncation is exact here: every circuit generator conserves total photon
number, so the one-photon input never leaks into |00> or |11>.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .hilbert import (
    STRUCT_TOL,
    EIG_TOL,
    PAULIS,
    HilbertSpace,
    StateVector,
    Operator,
    basis_state,
    canonical_phase,
    embed,
    tensor,
    unitary_exp,
)

MODE_LABELS = ("U", "L")
QUBIT_LABELS = ("q1", "q2", "q3", "q4")

PHOTONIC_SPACE = HilbertSpace.of(("U", 2), ("L", 2))
ATOMIC_SPACE = HilbertSpace.of(*((q, 2) for q in QUBIT_LABELS))
FULL_SPACE = HilbertSpace.of(("U", 2), ("L", 2), *((q, 2) for q in QUBIT_LABELS))

BRANCH_PRIME = "prime"                  # photon exits in mode L (detector D2)
BRANCH_DOUBLE_PRIME = "double_prime"    # photon exits in mode U (detector D1)
BRANCHES = (BRANCH_PRIME, BRANCH_DOUBLE_PRIME)

# Truncated single-mode ladder operators.
_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_RAISE = _LOWER.conj().T
_NUMBER = _RAISE @ _LOWER

# Basis strings of the four-qubit space grouped by excitation number; the
# closed-form branch states attach one trigonometric weight per group.
_STRINGS_W0_W4 = ("0000", "1111")
_STRINGS_W1 = ("0010", "0100", "1000", "0001")
_STRINGS_W3 = ("1110", "0111", "1101", "1011")
_STRINGS_W2 = ("0110", "1100", "1010", "0011", "0101", "1001")

# The two target entangled states produced at phi = pi/2, theta_i = pi/4,
# written as sign patterns over their eight supporting basis strings.
_TARGET_SIGNS = {
    BRANCH_PRIME: {
        "0000": 1, "1111": 1, "0110": -1, "1100": -1,
        "1010": -1, "0011": -1, "0101": -1, "1001": -1,
    },
    BRANCH_DOUBLE_PRIME: {
        "1110": 1, "0111": 1, "1101": 1, "1011": 1,
        "0010": -1, "0100": -1, "1000": -1, "0001": -1,
    },
}


def check_branch(branch: str) -> str:
    if branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}, got {branch!r}")
    return branch


class DetectionOutcome(Enum):
    """Joint readout of the two output detectors (D1 on mode U, D2 on mode L)."""

    D1_CLICK_D2_NULL = "d1"
    D2_CLICK_D1_NULL = "d2"
    NO_CLICK = "none"
    DOUBLE_CLICK = "double"

    @classmethod
    def from_string(cls, s: str) -> "DetectionOutcome":
        for outcome in cls:
            if outcome.value == s.lower():
                return outcome
        raise ValueError(f"unknown outcome {s!r}; expected one of "
                         f"{[o.value for o in cls]}")


# Outcome -> (weights on mode U occupations, weights on mode L occupations).
# A detector of efficiency eta reports null on |n> with weight (1-eta)^n and
# a click with the complementary weight.
def _povm_weights(outcome: DetectionOutcome, eta: float):
    null = np.array([1.0, 1.0 - eta])
    click = np.array([0.0, eta])
    table = {
        DetectionOutcome.D1_CLICK_D2_NULL: (click, null),
        DetectionOutcome.D2_CLICK_D1_NULL: (null, click),
        DetectionOutcome.NO_CLICK: (null, null),
        DetectionOutcome.DOUBLE_CLICK: (click, click),
    }
    return table[outcome]


@dataclass(frozen=True)
class SchemeParams:
    """Protocol knobs: interaction phase, atomic angles, detector efficiency.

    `thetas` accepts a single angle (applied to all four qubits) or an
    explicit sequence of four. `phi` is reduced modulo 2*pi on construction;
    every generator is 2*pi-periodic in it.
    """

    phi: float
    thetas: tuple[float, float, float, float] = (math.pi / 4,) * 4
    eta: float = 1.0

    def __post_init__(self):
        phi = float(self.phi)
        if not math.isfinite(phi):
            raise ValueError("phi must be finite")
        object.__setattr__(self, "phi", phi % (2.0 * math.pi))

        raw = self.thetas
        if isinstance(raw, (int, float)):
            th = (float(raw),) * 4
        else:
            th = tuple(float(t) for t in raw)
        if len(th) != 4 or not all(math.isfinite(t) for t in th):
            raise ValueError("thetas must be one finite angle or four finite angles")
        object.__setattr__(self, "thetas", th)

        eta = float(self.eta)
        if not (0.0 <= eta <= 1.0):
            raise ValueError("eta must lie in [0, 1]")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True)
class PhysicalParams:
    """Physical inputs determining the dispersive phase shift.

    If `field` (per-photon electric field) is omitted it is derived from
    omega, volume and epsilon0 as sqrt(hbar*omega / (2*epsilon0*volume)).
    """

    dipole: float
    tau: float
    detuning: float
    hbar: float = 1.0
    field: Optional[float] = None
    omega: Optional[float] = None
    volume: Optional[float] = None
    epsilon0: Optional[float] = None

    def __post_init__(self):
        if self.detuning == 0.0:
            raise ValueError("detuning must be nonzero")
        if self.tau < 0.0:
            raise ValueError("tau must be nonnegative")
        for name in ("dipole", "tau", "detuning", "hbar"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


def phase_from_physical(p: PhysicalParams) -> float:
    """Dispersive phase shift d^2 E^2 tau / (hbar^2 Delta)."""
    field = p.field
    if field is None:
        missing = [n for n in ("omega", "volume", "epsilon0") if getattr(p, n) is None]
        if missing:
            raise ValueError(f"field not given and cannot be derived; missing {missing}")
        field = math.sqrt(p.hbar * p.omega / (2.0 * p.epsilon0 * p.volume))
    return p.dipole**2 * field**2 * p.tau / (p.hbar**2 * p.detuning)


def beam_splitter() -> Operator:
    """50/50 splitter exp[-i (pi/4)(a_U^+ a_L + a_L^+ a_U)] on the photonic sector.

    Maps |10> to (|10> - i|01>)/sqrt(2); conserves photon number, so |00> and
    |11> are fixed points of the truncated generator.
    """
    gen = (math.pi / 4.0) * (np.kron(_RAISE, _LOWER) + np.kron(_LOWER, _RAISE))
    return unitary_exp(Operator(PHOTONIC_SPACE, gen))


def atom_photon_unitary(qubit_index: int, phi: float) -> Operator:
    """Dispersive cavity interaction exp[-i phi (n_U |0><0|_i + n_L |1><1|_i)].

    The photon picks up phase phi from cavity i when either the upper mode is
    occupied with the atom in |0>, or the lower mode is occupied with the atom
    in |1>. Acts as identity on the other three qubits.
    """
    if qubit_index not in (1, 2, 3, 4):
        raise ValueError("qubit_index must be in 1..4")
    qubit = QUBIT_LABELS[qubit_index - 1]
    qubit_space = HilbertSpace.of((qubit, 2))
    p0 = Operator(qubit_space, np.diag([1.0, 0.0]).astype(complex))
    p1 = Operator(qubit_space, np.diag([0.0, 1.0]).astype(complex))
    n_u = Operator(HilbertSpace.of(("U", 2)), _NUMBER)
    n_l = Operator(HilbertSpace.of(("L", 2)), _NUMBER)
    gen = (embed(tensor(n_u, p0), ["U", qubit], FULL_SPACE).mat
           + embed(tensor(n_l, p1), ["L", qubit], FULL_SPACE).mat)
    return unitary_exp(Operator(FULL_SPACE, float(phi) * gen))


def mz_circuit(phi: float) -> Operator:
    """Full interferometer: splitter, four cavity interactions, splitter."""
    bs = embed(beam_splitter(), ["U", "L"], FULL_SPACE)
    u = bs
    for i in (1, 2, 3, 4):
        u = atom_photon_unitary(i, phi) @ u
    return bs @ u


def initial_state(thetas: Sequence[float]) -> StateVector:
    """|10>_photon tensor prod_i (cos(theta_i)|0> + sin(theta_i)|1>)."""
    th = tuple(float(t) for t in thetas)
    if len(th) != 4:
        raise ValueError("four angles required")
    psi = basis_state(PHOTONIC_SPACE, "10")
    for q, t in zip(QUBIT_LABELS, th):
        qubit = StateVector(HilbertSpace.of((q, 2)),
                            np.array([math.cos(t), math.sin(t)], dtype=complex))
        psi = tensor(psi, qubit)
    return psi


def evolve(params: SchemeParams) -> StateVector:
    """Run the circuit on the standard input state.

    The output has support only on the one-photon sector and splits as
    |01> (x) chi' + |10> (x) chi'' up to a global phase.
    """
    return mz_circuit(params.phi) @ initial_state(params.thetas)


def photon_branch(psi: StateVector, n_u: int, n_l: int) -> StateVector:
    """Unnormalized four-qubit component of a full-space state at |n_U n_L>."""
    if psi.space != FULL_SPACE:
        raise ValueError("state must live on the full photonic+atomic space")
    base = (n_u * 2 + n_l) * ATOMIC_SPACE.dim
    return StateVector(ATOMIC_SPACE, psi.amp[base:base + ATOMIC_SPACE.dim])


def _string_amplitude(bits: str, thetas: Sequence[float]) -> float:
    amp = 1.0
    for bit, t in zip(bits, thetas):
        amp *= math.cos(t) if bit == "0" else math.sin(t)
    return amp


def closed_form_pair(params: SchemeParams) -> tuple[StateVector, StateVector]:
    """Both closed-form branch states (chi', chi''), unnormalized.

    Writing z for the excitation number of a basis string, the weights are
    cos(2phi), cos(phi), 1, cos(phi), cos(2phi) on chi' and sin(2phi),
    sin(phi), 0, -sin(phi), -sin(2phi) on chi'' for z = 0..4. The branch
    weights already satisfy ||chi'||^2 + ||chi''||^2 = 1 (asserted), which
    fixes the discarded global factor of the raw circuit output.
    """
    phi, th = params.phi, params.thetas
    prime = np.zeros(ATOMIC_SPACE.dim, dtype=complex)
    dprime = np.zeros(ATOMIC_SPACE.dim, dtype=complex)

    def put(strings, w_prime, w_dprime):
        for bits in strings:
            idx = ATOMIC_SPACE.index_of([int(c) for c in bits])
            a = _string_amplitude(bits, th)
            prime[idx] += w_prime * a
            dprime[idx] += w_dprime * a

    put(("0000",), math.cos(2 * phi), math.sin(2 * phi))
    put(("1111",), math.cos(2 * phi), -math.sin(2 * phi))
    put(_STRINGS_W1, math.cos(phi), math.sin(phi))
    put(_STRINGS_W3, math.cos(phi), -math.sin(phi))
    put(_STRINGS_W2, 1.0, 0.0)

    total = float(np.linalg.norm(prime)**2 + np.linalg.norm(dprime)**2)
    assert abs(total - 1.0) <= STRUCT_TOL, f"branch weights sum to {total}, not 1"
    return StateVector(ATOMIC_SPACE, prime), StateVector(ATOMIC_SPACE, dprime)


def closed_form_chi(params: SchemeParams, branch: str) -> StateVector:
    """Closed-form four-qubit branch state (unnormalized).

    `branch` selects "prime" (the |01> photonic component, detector D2) or
    "double_prime" (the |10> component, detector D1). Serves as an
    independent oracle for the circuit evolution.
    """
    check_branch(branch)
    prime, dprime = closed_form_pair(params)
    return prime if branch == BRANCH_PRIME else dprime


def gamma_factors(thetas: Sequence[float]) -> tuple[float, float]:
    """Branch probabilities (Gamma_1, Gamma_2) at phi = pi/2.

    Gamma_1 = (1 + prod cos 2theta_i)/2 is the D2-click weight and Gamma_2
    its complement.
    """
    prod = 1.0
    for t in thetas:
        prod *= math.cos(2.0 * float(t))
    return (1.0 + prod) / 2.0, (1.0 - prod) / 2.0


def ges_target_state(branch: str) -> StateVector:
    """The entangled target state for a branch at phi=pi/2, theta_i=pi/4."""
    check_branch(branch)
    amp = np.zeros(ATOMIC_SPACE.dim, dtype=complex)
    for bits, sign in _TARGET_SIGNS[branch].items():
        amp[ATOMIC_SPACE.index_of([int(c) for c in bits])] = sign / math.sqrt(8.0)
    return StateVector(ATOMIC_SPACE, amp)


def detect(state: StateVector, outcome: DetectionOutcome, eta: float
           ) -> tuple[Optional[StateVector], float]:
    """Apply the two-detector POVM and condition on one outcome.

    Returns (post_state, probability). The post state is the normalized
    four-qubit conditional state with a canonical global phase; it is None
    when the outcome has probability below 1e-14 or when the conditional
    state is mixed (e.g. a no-click at 0 < eta < 1 leaves both photonic
    branches alive), which a state vector cannot represent. Click-conditioned
    states are independent of eta.
    """
    if not (0.0 <= eta <= 1.0):
        raise ValueError("eta must lie in [0, 1]")
    if not state.is_normalized:
        raise ValueError("state must be normalized")
    leak = (photon_branch(state, 0, 0).norm**2 + photon_branch(state, 1, 1).norm**2)
    if leak > STRUCT_TOL:
        raise ValueError("state lies outside the one-photon photonic sector")

    w_u, w_l = _povm_weights(outcome, eta)
    probability = 0.0
    weighted = []
    for n_u in (0, 1):
        for n_l in (0, 1):
            w = w_u[n_u] * w_l[n_l]
            if w == 0.0:
                continue
            branch = photon_branch(state, n_u, n_l)
            probability += w * branch.norm**2
            if branch.norm > 0.0:
                weighted.append(math.sqrt(w) * branch.amp)

    if probability < 1e-14 or not weighted:
        return None, float(probability)

    stack = np.array(weighted)
    s = np.linalg.svd(stack, compute_uv=False)
    if len(s) > 1 and s[1] > EIG_TOL:
        return None, float(probability)   # conditional state is mixed
    _, _, vh = np.linalg.svd(stack)
    post = canonical_phase(vh[0])
    return StateVector(ATOMIC_SPACE, post), float(probability)


class PreparedGes(NamedTuple):
    state: StateVector
    outcome: DetectionOutcome
    probability: float


def prepare_ges(params: SchemeParams,
                outcome: Optional[DetectionOutcome] = None) -> PreparedGes:
    """Deterministic entangled-state preparation.

    Evolves, detects, and — when detector D1 fires — applies sigma^y on the
    fourth qubit, which maps the D1-conditioned state onto the D2-conditioned
    one. At theta_i = pi/4 the returned state therefore always equals the
    target entangled state regardless of which detector clicked, and the
    success probability is the sum of both click probabilities (eta).

    `outcome` forces a specific click branch; by default the more probable
    one is used (ties go to D2). The reported probability is always the
    combined click probability.
    """
    if abs(params.phi - math.pi / 2.0) > 1e-9:
        warnings.warn("prepare_ges expects phi = pi/2; the conditioned states "
                      "are entangled targets only there", stacklevel=2)
    psi = evolve(params)
    post_d1, p_d1 = detect(psi, DetectionOutcome.D1_CLICK_D2_NULL, params.eta)
    post_d2, p_d2 = detect(psi, DetectionOutcome.D2_CLICK_D1_NULL, params.eta)
    total = p_d1 + p_d2

    if outcome is None:
        outcome = (DetectionOutcome.D1_CLICK_D2_NULL if p_d1 > p_d2
                   else DetectionOutcome.D2_CLICK_D1_NULL)
    if outcome not in (DetectionOutcome.D1_CLICK_D2_NULL,
                       DetectionOutcome.D2_CLICK_D1_NULL):
        raise ValueError("preparation conditions on a click outcome (d1 or d2)")

    post = post_d1 if outcome is DetectionOutcome.D1_CLICK_D2_NULL else post_d2
    if post is None:
        raise ValueError(f"outcome {outcome.value} has zero probability at these parameters")

    if outcome is DetectionOutcome.D1_CLICK_D2_NULL:
        sy4 = embed(Operator(HilbertSpace.of(("q4", 2)), PAULIS[2]),
                    ["q4"], ATOMIC_SPACE)
        post = StateVector(ATOMIC_SPACE, canonical_phase((sy4 @ post).amp))
    return PreparedGes(post, outcome, float(total))
