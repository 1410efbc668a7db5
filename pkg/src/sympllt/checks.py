"""Numeric checkers for the factorization error and structure-loss bounds.

Every checker returns BoundCheckResult values with verdict ``holds`` iff

    lhs <= rhs * (1 + slack) + floor.

First-order bounds carry a multiplicative slack of 1e-6 plus an additive
floor sized to the quantities the bound drops: second-order remainder
terms where a perturbation enters, and the floating-point noise of the
measured left-hand side where the true value is at or near zero.  Floors
make verdicts deterministic; a bound is reported Skipped (never Violated)
when its own hypothesis fails.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dense import EPS, condition_number, frobenius_norm, matmul, spectral_norm
from .errors import FactorError
from .factor import (
    cholesky_lower,
    require_symmetric,
    reverse_cholesky_upper,
    spd_inverse,
    spd_solve,
    upper_substitute,
)
from .symplectic import (
    BlockPartition,
    algorithm_w1,
    algorithm_w2,
    distance_to_symplecticity,
    gamma,
    omega,
    schur_complement,
    shared_blocks,
)

SLACK = 1e-6

HOLDS = "holds"
VIOLATED = "violated"
SKIPPED = "skipped"


@dataclass(frozen=True)
class BoundCheckResult:
    bound_id: str
    lhs: float
    rhs: float
    slack: float
    floor: float
    verdict: str
    reason: str = ""
    context: str = field(default="", compare=False)

    @classmethod
    def compare(cls, bound_id, lhs, rhs, slack, floor):
        ok = lhs <= rhs * (1.0 + slack) + floor
        return cls(bound_id, float(lhs), float(rhs), slack, float(floor),
                   HOLDS if ok else VIOLATED)

    @classmethod
    def skip(cls, bound_id, reason):
        return cls(bound_id, math.nan, math.nan, 0.0, 0.0, SKIPPED, reason)

    @property
    def holds(self):
        return self.verdict == HOLDS

    def with_context(self, name):
        return BoundCheckResult(self.bound_id, self.lhs, self.rhs, self.slack,
                                self.floor, self.verdict, self.reason, name)

    def describe(self):
        if self.verdict == SKIPPED:
            return f"{self.bound_id}: skipped ({self.reason})"
        return (f"{self.bound_id}: {self.verdict}  lhs={self.lhs:.4e}  "
                f"rhs={self.rhs:.4e}  floor={self.floor:.4e}")


def check_w2_backward(p, l22_perturbation=0.0):
    """Backward-stability bound for the Schur-complement route:

        ||a - L2 L2^T|| <= 4 n gamma_{n+2} ||a||.

    ``l22_perturbation`` is a fault-injection hook that rescales the
    computed lower-right block before the residual is formed, for testing
    that the check actually fires.
    """
    n = p.n
    if (n + 2) * EPS >= 1.0 or 4 * n * gamma(n + 2) >= 1.0:
        return BoundCheckResult.skip("w2-backward", "4 n gamma_{n+2} is not below 1")
    f = algorithm_w2(p)
    if l22_perturbation:
        f = replace(f, l22=f.l22 * (1.0 + l22_perturbation))
    lhs = spectral_norm(f.residual(p))
    rhs = 4.0 * n * gamma(n + 2) * spectral_norm(p.assemble())
    return BoundCheckResult.compare("w2-backward", lhs, rhs, 0.0, 0.0)


def check_w1_error_bound(p):
    """Factorization-error bound for the structure-enforcing route:

        ||a - L1 L1^T|| <= d (1 + 3 n g k11) + 8 n g k11 ||a||,

    with d the measured distance to symplecticity, k11 the condition
    number of the leading block and g = gamma_{n+1}.
    """
    n = p.n
    f = algorithm_w1(p)
    lhs = spectral_norm(f.residual(p))
    dist = distance_to_symplecticity(f, p)
    k11 = condition_number(p.a11)
    norm_a = spectral_norm(p.assemble())
    g = gamma(n + 1)
    rhs = dist * (1.0 + 3.0 * n * g * k11) + 8.0 * n * g * k11 * norm_a
    floor = 100.0 * n * EPS * norm_a
    return BoundCheckResult.compare("w1-error-bound", lhs, rhs, SLACK, floor)


def check_omega_factor_bounds(p):
    """Structure-loss bounds relating the two computed factors.

    (i)   ||omega(L1)|| <= ||inv(a11)|| ||omega(a)||
    (ii)  ||omega(L2)|| <= ||omega(L1)|| + ||l11^T u22 - I||
    (iii) ||l11^T u22 - I|| <= sqrt(2n) rho, skipped for rho > 1/2,

    where rho is the spectral norm of the symmetric similarity
    l11^T (s - inv(a11)) l11.  The floor carries an ||a|| term (~ ||L||^2)
    because on exactly structure-preserving inputs the computed residuals
    are pure rounding noise at that scale.
    """
    n = p.n
    f1 = algorithm_w1(p)
    f2 = algorithm_w2(p)
    omega_a = spectral_norm(omega(p.assemble()))
    omega_l1 = spectral_norm(omega(f1.assemble()))
    omega_l2 = spectral_norm(omega(f2.assemble()))
    inv_a11 = matmul(f1.l22, np.ascontiguousarray(f1.l22.T))
    norm_inv_a11 = spectral_norm(inv_a11)
    eye = np.eye(n)
    mix = spectral_norm(matmul(np.ascontiguousarray(f1.l11.T), f2.l22) - eye)

    floor = 100.0 * n * EPS * max(1.0, norm_inv_a11 * omega_a,
                                  spectral_norm(p.assemble()))
    results = [
        BoundCheckResult.compare("omega-factor-amplification", omega_l1,
                                 norm_inv_a11 * omega_a, SLACK, floor),
        BoundCheckResult.compare("omega-factor-ordering", omega_l2,
                                 omega_l1 + mix, SLACK, floor),
    ]
    s = schur_complement(p, f1.l21)
    drift = s - inv_a11
    sim = matmul(matmul(np.ascontiguousarray(f1.l11.T), drift), f1.l11)
    rho = spectral_norm(0.5 * (sim + sim.T))
    if rho > 0.5:
        results.append(BoundCheckResult.skip(
            "factor-inverse-consistency", f"spectral radius {rho:.3e} above 1/2"))
    else:
        results.append(BoundCheckResult.compare(
            "factor-inverse-consistency", mix, math.sqrt(2.0 * n) * rho, SLACK, floor))
    return results


def check_condition_bounds(p):
    """Condition-number identities and bounds for SPD input.

    (1) kappa(a) <= ||a||^2 / (1 - ||omega(a)||), skipped at ||omega|| >= 1
    (2) kappa(L2)^2 = kappa(a) (checked as a two-sided agreement)
    (3) ||inv(a11) a12||^2 <= ||inv(a11)|| ||a22||
    (4) kappa(L1 L1^T) <= kappa(a)/(1 - rho) (1 + d/||a||), skipped at rho >= 1

    Floors are relative and include a 10 n eps kappa term: the smallest
    eigenvalue behind any condition number measured in floating point is
    only determined to a relative eps*kappa, which dominates the 1e-6
    slack once kappa exceeds ~1e10.
    """
    n = p.n
    a = p.assemble()
    f1 = algorithm_w1(p)
    f2 = algorithm_w2(p)
    norm_a = spectral_norm(a)
    omega_a = spectral_norm(omega(a))
    kappa_a = condition_number(a)
    noise = 1e-8 + 10.0 * n * EPS * kappa_a
    results = []

    if omega_a >= 1.0:
        results.append(BoundCheckResult.skip(
            "condition-from-structure-loss", f"||omega(a)|| = {omega_a:.3e} >= 1"))
    else:
        rhs = norm_a ** 2 / (1.0 - omega_a)
        results.append(BoundCheckResult.compare(
            "condition-from-structure-loss", kappa_a, rhs, SLACK, rhs * noise))

    kappa_l2_sq = condition_number(f2.assemble()) ** 2
    lhs = max(kappa_l2_sq, kappa_a)
    rhs = min(kappa_l2_sq, kappa_a)
    results.append(BoundCheckResult.compare(
        "condition-factor-squared", lhs, rhs, SLACK, rhs * noise))

    coupling = spd_solve(p.a11, p.a12)
    lhs = spectral_norm(coupling) ** 2
    inv_a11 = matmul(f1.l22, np.ascontiguousarray(f1.l22.T))
    rhs = spectral_norm(inv_a11) * spectral_norm(p.a22)
    k11 = condition_number(p.a11)
    results.append(BoundCheckResult.compare(
        "coupling-norm", lhs, rhs, SLACK, rhs * (1e-8 + 10.0 * n * EPS * k11)))

    s = schur_complement(p, f1.l21)
    dist = distance_to_symplecticity(f1, p)
    drift = inv_a11 - s
    u22 = f2.l22
    half = upper_substitute(u22, drift)
    sim = upper_substitute(u22, np.ascontiguousarray(half.T))
    rho = spectral_norm(0.5 * (sim + sim.T))
    if rho >= 1.0:
        results.append(BoundCheckResult.skip(
            "condition-of-enforced-product", f"spectral radius {rho:.3e} >= 1"))
    else:
        lhs = condition_number(f1.assemble()) ** 2
        rhs = kappa_a / (1.0 - rho) * (1.0 + dist / norm_a)
        results.append(BoundCheckResult.compare(
            "condition-of-enforced-product", lhs, rhs, SLACK, rhs * noise))
    return results


_PERTURBATION_KINDS = ("cholesky", "reverse-cholesky", "l2-form")


def perturbation_experiment(a, e, kind):
    """Factor perturbation bound: for symmetric E with ||inv(a)|| ||E|| < 1,

        ||dL||_F / ||L||_2 <= 2^-1/2 kappa(a) / (1 - ||inv(a)|| ||E||)
                              * ||E||_F / ||a||_2,

    where L is the factor of the selected kind and dL = L(a+E) - L(a).
    """
    if kind not in _PERTURBATION_KINDS:
        raise ValueError(f"unknown perturbation kind {kind!r}")
    bound_id = f"{kind}-perturbation"
    a = require_symmetric(a, "perturbation_experiment")
    e = require_symmetric(e, "perturbation_experiment")
    try:
        norm_inv_a = spectral_norm(spd_inverse(a))
    except FactorError as exc:
        return BoundCheckResult.skip(bound_id, f"not positive definite: {exc}")
    damp = norm_inv_a * spectral_norm(e)
    if damp >= 1.0:
        return BoundCheckResult.skip(
            bound_id, f"||inv(a)|| ||e|| = {damp:.3e} is not below 1")
    try:
        before = _perturbation_factor(a, kind)
        after = _perturbation_factor(a + e, kind)
    except FactorError as exc:
        return BoundCheckResult.skip(bound_id, f"not positive definite: {exc}")
    delta = after - before
    norm_l = spectral_norm(before)
    lhs = frobenius_norm(delta) / norm_l
    kappa_a = condition_number(a)
    rhs = (kappa_a / (1.0 - damp)) * frobenius_norm(e) / spectral_norm(a) / math.sqrt(2.0)
    n = a.shape[0] // 2
    floor = 100.0 * n * EPS * kappa_a * frobenius_norm(before) / norm_l
    return BoundCheckResult.compare(bound_id, lhs, rhs, SLACK, floor)


def _perturbation_factor(a, kind):
    if kind == "cholesky":
        return cholesky_lower(a)
    if kind == "reverse-cholesky":
        return reverse_cholesky_upper(a)
    return algorithm_w2(BlockPartition.from_matrix(a)).assemble()


def check_schur_perturbation(p, e):
    """First-order perturbation bounds for the leading-block inverse and
    the Schur complement under a small symmetric perturbation e:

        ||inv(a11+e11) - inv(a11)|| <= ||inv(a11)||^2 ||e11||
        ||s(a+e) - s(a)|| <= ||e22|| + ||w||^2 ||e11|| + 2 ||w|| ||e12||

    The floor adds the exact Neumann remainders of the dropped
    second-order terms so the checks stay rigorous when e is not tiny
    relative to the leading block's smallest eigenvalue.
    """
    ids = ("leading-inverse-perturbation", "schur-perturbation")
    e = require_symmetric(e, "check_schur_perturbation")
    a = p.assemble()
    norm_a = spectral_norm(a)
    norm_e = spectral_norm(e)
    if norm_e > 1e-6 * norm_a:
        reason = f"||e|| = {norm_e:.3e} above 1e-6 ||a||"
        return [BoundCheckResult.skip(i, reason) for i in ids]
    try:
        cholesky_lower(a + e)
    except FactorError as exc:
        reason = f"perturbed matrix not positive definite: {exc}"
        return [BoundCheckResult.skip(i, reason) for i in ids]

    n = p.n
    pe = BlockPartition.from_matrix(a + e)
    e11, e12, e22 = e[:n, :n], e[:n, n:], e[n:, n:]
    ne11, ne12, ne22 = spectral_norm(e11), spectral_norm(e12), spectral_norm(e22)

    inv_a11 = spd_inverse(p.a11)
    inv_p11 = spd_inverse(pe.a11)
    norm_inv = spectral_norm(inv_a11)
    coupling = spd_solve(p.a11, p.a12)
    norm_w = spectral_norm(coupling)

    q = norm_inv * ne11  # contraction factor of the Neumann series
    if q > 0.5:
        # the dropped remainder is no longer subordinate to the bound itself
        reason = f"||inv(a11)|| ||e11|| = {q:.3e} above 1/2"
        return [BoundCheckResult.skip(i, reason) for i in ids]
    base_floor = (10.0 * (norm_e / norm_a) ** 2 * norm_a * max(1.0, norm_w ** 2)
                  + 100.0 * n * EPS * norm_a)
    results = []

    lhs = spectral_norm(inv_p11 - inv_a11)
    rhs = norm_inv ** 2 * ne11
    tail_inv = norm_inv * q * q / (1.0 - q)
    results.append(BoundCheckResult.compare(
        ids[0], lhs, rhs, SLACK, base_floor + tail_inv))

    _, l21 = shared_blocks(p)
    _, l21p = shared_blocks(pe)
    s = schur_complement(p, l21)
    sp = schur_complement(pe, l21p)
    lhs = spectral_norm(sp - s)
    rhs = ne22 + norm_w ** 2 * ne11 + 2.0 * norm_w * ne12
    norm_a12 = spectral_norm(p.a12)
    delta_inv = norm_inv * q / (1.0 - q)
    tail_schur = (norm_a12 ** 2 * norm_inv * q * q / (1.0 - q)
                  + norm_inv * ne12 ** 2
                  + 2.0 * ne12 * delta_inv * (norm_a12 + ne12))
    results.append(BoundCheckResult.compare(
        ids[1], lhs, rhs, SLACK, base_floor + tail_schur))
    return results
