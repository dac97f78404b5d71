"""Entanglement measures and their closed-form comparators.

Numerical side: Wootters concurrence for arbitrary two-qubit density matrices
and von Neumann entropy of arbitrary reductions. Closed-form side: the
protocol's analytic expressions for the concurrence of one qubit pair and the
entropy of one two-two cut of the post-selected branch states at phi = pi/2.

Which pair and which cut the closed forms describe is not guessed: the
formulas are asymmetric in the theta indices, so `calibrate_closed_forms`
measures all candidates against the numerical oracle. The result (frozen in
FORMULA_PAIR and FORMULA_CUT below) is re-checked by the verification suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .hilbert import (
    EIG_TOL,
    PAULIS,
    DensityMatrix,
    StateVector,
    density_matrix,
    partial_trace,
)
from .circuit import (
    ATOMIC_SPACE,
    BRANCH_PRIME,
    QUBIT_LABELS,
    SchemeParams,
    check_branch,
    closed_form_chi,
)

# Genuine multipartite entanglement signature: every pairwise concurrence
# vanishes while every bipartition is maximally entangled.
GENUINE_CONCURRENCE_TOL = 1e-10
GENUINE_ENTROPY_TOL = 1e-10

_YY = np.kron(PAULIS[2], PAULIS[2])

PAIRS = (("q1", "q2"), ("q1", "q3"), ("q1", "q4"),
         ("q2", "q3"), ("q2", "q4"), ("q3", "q4"))


class DegenerateBranchError(ValueError):
    """A closed form was requested for a branch of zero post-selection probability."""


class ClosedFormInconsistencyError(ValueError):
    """A closed-form expression produced a value outside its valid range."""


@dataclass(frozen=True)
class Bipartition:
    """A split of the four qubits into two nonempty complementary groups."""

    side_a: tuple[str, ...]
    side_b: tuple[str, ...]

    def __post_init__(self):
        a, b = set(self.side_a), set(self.side_b)
        if not a or not b or (a | b) != set(QUBIT_LABELS) or (a & b):
            raise ValueError(f"sides must partition {QUBIT_LABELS}: got {self.side_a} | {self.side_b}")

    @classmethod
    def of(cls, *side_a: str) -> "Bipartition":
        a = tuple(q for q in QUBIT_LABELS if q in side_a)
        if len(a) != len(side_a):
            raise ValueError(f"unknown qubit label in {side_a}")
        b = tuple(q for q in QUBIT_LABELS if q not in side_a)
        return cls(a, b)

    def __str__(self) -> str:
        return "".join(self.side_a) + "|" + "".join(self.side_b)


PAIR_CUTS = (Bipartition.of("q1", "q2"),
             Bipartition.of("q1", "q3"),
             Bipartition.of("q1", "q4"))
SINGLE_CUTS = tuple(Bipartition.of(q) for q in QUBIT_LABELS)

# Empirical calibration result (see calibrate_closed_forms): the closed-form
# concurrence describes the (q3, q4) pair and the closed-form entropy the
# q1q2|q3q4 cut, for both branches.
FORMULA_PAIR = ("q3", "q4")
FORMULA_CUT = Bipartition.of("q1", "q2")


@dataclass(frozen=True)
class MeasureReport:
    """All pairwise concurrences and bipartition entropies of a four-qubit state."""

    pairwise_concurrence: dict
    pair_entropy: dict
    single_entropy: dict
    is_genuine: bool

    def as_dict(self) -> dict:
        return {
            "pairwise_concurrence": {"".join(k): v for k, v in self.pairwise_concurrence.items()},
            "pair_entropy": {str(k): v for k, v in self.pair_entropy.items()},
            "single_entropy": dict(self.single_entropy),
            "is_genuine": self.is_genuine,
        }


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Equals max(0, sqrt(mu_1) - sqrt(mu_2) - sqrt(mu_3) - sqrt(mu_4)) with
    mu_k the descending eigenvalues of rho (sy x sy) rho* (sy x sy),
    conjugation in the computational basis. Computed as the singular values
    of sqrt(rho) (sy x sy) sqrt(rho)*, which has the same spectrum but keeps
    every step backward-stable (the direct eigenvalue route loses ~1e-8).
    """
    if rho.space.dim != 4:
        raise ValueError("concurrence is defined for two-qubit (4x4) density matrices")
    w, v = np.linalg.eigh(rho.mat)
    if float(w.min()) < -EIG_TOL:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    lam = np.linalg.svd(sqrt_rho @ _YY @ sqrt_rho.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _cos2_product(thetas: Sequence[float]) -> tuple[list[float], float]:
    x = [math.cos(2.0 * float(t)) for t in thetas]
    return x, x[0] * x[1] * x[2] * x[3]


def _branch_denominator(thetas: Sequence[float], branch: str) -> float:
    _, prod = _cos2_product(thetas)
    sign = 1.0 if branch == BRANCH_PRIME else -1.0
    den = 1.0 + sign * prod
    if abs(den) < 1e-12:
        raise DegenerateBranchError(
            f"branch {branch!r} has zero post-selection probability at these angles")
    return den


def concurrence_closed_form(thetas: Sequence[float], branch: str) -> float:
    """Closed-form concurrence of the calibrated qubit pair at phi = pi/2.

    lambda = |cos2theta_1 cos2theta_2 sin2theta_3 sin2theta_4| /
    (1 +- prod_i cos2theta_i), the sign following the branch.
    """
    check_branch(branch)
    x, _ = _cos2_product(thetas)
    den = _branch_denominator(thetas, branch)
    num = abs(x[0] * x[1]
              * math.sin(2.0 * float(thetas[2])) * math.sin(2.0 * float(thetas[3])))
    return max(0.0, num / den)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """-Tr rho log2 rho with the 0 log 0 := 0 convention."""
    p = np.linalg.eigvalsh(rho.mat)
    if float(p.min()) < -EIG_TOL:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    p = p[p > 1e-15]
    return float(max(0.0, -np.sum(p * np.log2(p))))


def bipartition_entropy(state: StateVector, cut: Bipartition) -> float:
    """Entanglement entropy of a pure four-qubit state across a cut.

    Computed from the side_a reduction; the side_b value is recomputed and
    required to agree (Schmidt symmetry) as a self-check.
    """
    rho = density_matrix(state)
    s_a = von_neumann_entropy(partial_trace(rho, list(cut.side_a)))
    s_b = von_neumann_entropy(partial_trace(rho, list(cut.side_b)))
    assert abs(s_a - s_b) <= EIG_TOL, f"Schmidt symmetry violated: {s_a} vs {s_b}"
    return s_a


def _binary_like_entropy(delta: float) -> float:
    # S = 1 - (1/2)[(1+d)log2(1+d) + (1-d)log2(1-d)], extended continuously
    # to |d| = 1 where it reaches 0.
    def xlog2x(x: float) -> float:
        return x * math.log2(x) if x > 0.0 else 0.0
    d = min(abs(delta), 1.0)
    return 1.0 - 0.5 * (xlog2x(1.0 + d) + xlog2x(1.0 - d))


def entropy_closed_form(thetas: Sequence[float], branch: str) -> float:
    """Closed-form entropy of the calibrated two-two cut at phi = pi/2.

    Uses delta = (cos2theta_3 cos2theta_4 +- cos2theta_1 cos2theta_2) /
    (1 +- prod_i cos2theta_i). A delta outside [-1, 1] by more than 1e-12
    raises ClosedFormInconsistencyError (it would not describe a density
    matrix spectrum); overshoot within 1e-12 is roundoff and treated as
    |delta| = 1 via the continuous extension.
    """
    check_branch(branch)
    x, _ = _cos2_product(thetas)
    den = _branch_denominator(thetas, branch)
    sign = 1.0 if branch == BRANCH_PRIME else -1.0
    delta = (x[2] * x[3] + sign * x[0] * x[1]) / den
    if abs(delta) > 1.0 + 1e-12:
        raise ClosedFormInconsistencyError(
            f"delta = {delta} lies outside [-1, 1]; the closed form does not "
            f"describe a valid spectrum at these angles")
    return _binary_like_entropy(delta)


def measure_report(state: StateVector) -> MeasureReport:
    """Full entanglement signature of a normalized four-qubit state."""
    if state.space != ATOMIC_SPACE:
        raise ValueError("state must live on the four-qubit space")
    if not state.is_normalized:
        raise ValueError("state must be normalized")
    rho = density_matrix(state)
    pairwise = {pair: concurrence(partial_trace(rho, list(pair))) for pair in PAIRS}
    pair_ent = {cut: bipartition_entropy(state, cut) for cut in PAIR_CUTS}
    single_ent = {cut.side_a[0]: bipartition_entropy(state, cut) for cut in SINGLE_CUTS}
    genuine = (all(c <= GENUINE_CONCURRENCE_TOL for c in pairwise.values())
               and all(s >= 1.0 - GENUINE_ENTROPY_TOL for s in pair_ent.values())
               and all(s >= 1.0 - GENUINE_ENTROPY_TOL for s in single_ent.values()))
    return MeasureReport(pairwise, pair_ent, single_ent, genuine)


def calibrate_closed_forms(n_samples: int = 40, seed: int = 20260823,
                           match_tol: float = 1e-11) -> dict:
    """Identify which pair/cut the closed forms describe, by measurement.

    Draws random theta away from degeneracies, builds both branch states at
    phi = pi/2, and records the worst deviation of every pair's concurrence
    from the closed-form lambda and of every two-two cut's entropy from the
    closed-form S(delta). A candidate "matches" when its worst deviation
    stays below match_tol.
    """
    rng = np.random.default_rng(seed)
    pair_dev = {branch: {pair: 0.0 for pair in PAIRS} for branch in ("prime", "double_prime")}
    cut_dev = {branch: {str(cut): 0.0 for cut in PAIR_CUTS} for branch in ("prime", "double_prime")}

    for _ in range(n_samples):
        th = tuple(rng.uniform(0.1, 1.4, size=4))
        for branch in ("prime", "double_prime"):
            chi = closed_form_chi(SchemeParams(math.pi / 2.0, th), branch)
            state = chi.normalized()
            rho = density_matrix(state)
            lam = concurrence_closed_form(th, branch)
            s_closed = entropy_closed_form(th, branch)
            for pair in PAIRS:
                c = concurrence(partial_trace(rho, list(pair)))
                pair_dev[branch][pair] = max(pair_dev[branch][pair], abs(c - lam))
            for cut in PAIR_CUTS:
                s = bipartition_entropy(state, cut)
                cut_dev[branch][str(cut)] = max(cut_dev[branch][str(cut)], abs(s - s_closed))

    matching_pairs = {
        branch: [pair for pair, dev in devs.items() if dev <= match_tol]
        for branch, devs in pair_dev.items()
    }
    matching_cuts = {
        branch: [cut for cut, dev in devs.items() if dev <= match_tol]
        for branch, devs in cut_dev.items()
    }
    return {
        "n_samples": n_samples,
        "seed": seed,
        "pair_max_dev": {b: {"".join(p): d for p, d in devs.items()} for b, devs in pair_dev.items()},
        "cut_max_dev": cut_dev,
        "matching_pairs": {b: ["".join(p) for p in ps] for b, ps in matching_pairs.items()},
        "matching_cuts": matching_cuts,
        "formula_pair": "".join(FORMULA_PAIR),
        "formula_cut": str(FORMULA_CUT),
    }
