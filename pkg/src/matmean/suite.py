"""Randomized and fixed-instance checkers for every comparison theorem.

Each checker evaluates one instance and returns a CheckReport whose worst
normalized margin decides failure (margin < -tol).  Margins are normalized
by 1 + max|dominating side| so one tolerance knob covers all scales.
run_suite drives a deterministic instance stream over every checker and
aggregates the reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidWeightsError, MatrixFormatError
from .exact import direction_one_data, direction_two_data
from .linalg import (
    HermitianMatrix,
    PDMatrix,
    haar_unitary,
    hermitian_part,
    principal_sqrt,
    random_pd_from_rng,
)
from .majorization import (
    SpectrumVector,
    ky_fan_sums,
    log_majorization,
    spectrum,
    weak_majorization,
)
from .matio import matrix_to_dict
from .means import (
    MeanWeights,
    bw_geodesic,
    geometric_mean,
    heron_kubo,
    heron_spectral,
    spectral_mean,
    wasserstein_expression,
)
from .report import CheckReport
from .schur import pinching_map

DEFAULT_EPS_SEQUENCE = (1e-2, 1e-4, 1e-6, 1e-8)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 42
    trials: int = 1000
    dims: tuple[int, ...] = (1, 2, 3, 4, 5, 6, 7, 8)
    cond_max: float = 1e4
    tol: float = 1e-8
    weight_grid: tuple[tuple[float, float], ...] = (
        (1.0, 1.0), (0.5, 0.5), (1.0, 0.25), (0.3, 0.9), (2.0, 0.5),
    )
    c_fractions: tuple[float, ...] = (0.0, 0.5, 1.0)
    t_grid: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidWeightsError(f"trials must be >= 1, got {self.trials}")
        if not self.dims:
            raise InvalidWeightsError("dims must be nonempty")
        if any(d < 1 for d in self.dims):
            raise InvalidWeightsError("every dimension must be at least 1")
        if self.tol <= 0:
            raise InvalidWeightsError(f"tol must be positive, got {self.tol}")
        if any(not 0.0 <= f <= 1.0 for f in self.c_fractions):
            raise InvalidWeightsError("c_fractions must lie in [0, 1]")
        if any(not 0.0 <= t <= 1.0 for t in self.t_grid):
            raise InvalidWeightsError("t_grid must lie in [0, 1]")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "cond_max": self.cond_max,
            "tol": self.tol,
            "weight_grid": [list(w) for w in self.weight_grid],
            "c_fractions": list(self.c_fractions),
            "t_grid": list(self.t_grid),
        }


@dataclass
class RunReport:
    config: SuiteConfig
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(report.ok for report in self.checks)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "checks": [report.to_dict() for report in sorted(self.checks, key=lambda r: r.check_name)],
            "ok": self.ok,
        }

    def by_name(self, name: str) -> CheckReport:
        for report in self.checks:
            if report.check_name == name:
                return report
        raise KeyError(name)


# ---------------------------------------------------------------------------
# margin helpers
# ---------------------------------------------------------------------------

def _wm_margin(lhs: SpectrumVector, rhs: SpectrumVector) -> float:
    """Worst normalized Ky Fan margin of lhs prec_w rhs."""
    margins = ky_fan_sums(rhs) - ky_fan_sums(lhs)
    scale = 1.0 + float(np.abs(rhs.values).max())
    return float(margins.min()) / scale


def _eq_margin(gap: float, scale: float) -> float:
    """Margin form of an equality constraint |gap| <= tol * scale."""
    return -abs(gap) / scale


def _trace_eq_margin(lhs: SpectrumVector, rhs: SpectrumVector) -> float:
    gap = float(rhs.values.sum() - lhs.values.sum())
    return _eq_margin(gap, 1.0 + abs(float(rhs.values.sum())))


# ---------------------------------------------------------------------------
# individual theorem checkers
# ---------------------------------------------------------------------------

def check_spectral_heron(A: PDMatrix, B: PDMatrix, a: float, b: float, c: float,
                         tol: float, context: dict | None = None) -> CheckReport:
    """Spectral Heron expression is weakly majorized by the Wasserstein one
    for 0 <= c <= 2ab; at the endpoint c = 2ab it is a true majorization."""
    two_ab = 2.0 * a * b
    if not 0.0 <= c <= two_ab * (1.0 + 1e-12):
        raise InvalidWeightsError(f"need 0 <= c <= 2ab = {two_ab}, got c = {c}")
    report = CheckReport("spectral_heron", tol)
    H = heron_spectral(A, B, MeanWeights(a, b, c))
    W = wasserstein_expression(A, B, a, b)
    sH, sW = spectrum(H), spectrum(W)
    margin = _wm_margin(sH, sW)
    if c >= two_ab * (1.0 - 1e-12) and two_ab > 0.0:
        margin = min(margin, _trace_eq_margin(sH, sW))
    report.record(margin, context)
    return report


def check_sharpness_scalar(a: float, b: float, c_over: float) -> CheckReport:
    """Above the endpoint coefficient the comparison already fails in
    dimension 1, with exact margin c - 2ab (verified in rational
    arithmetic so 'exact' is meaningful for float inputs)."""
    from fractions import Fraction

    fa, fb, fc = Fraction(a), Fraction(b), Fraction(c_over)
    if not fc > 2 * fa * fb:
        raise InvalidWeightsError(f"need c > 2ab, got c = {c_over}, 2ab = {2 * a * b}")
    report = CheckReport("sharpness_scalar", 0.0)
    heron_scalar = fa * fa + fb * fb + fc
    wasserstein_scalar = (fa + fb) ** 2
    exact_margin = heron_scalar - wasserstein_scalar
    identity_holds = exact_margin == fc - 2 * fa * fb
    failure_confirmed = heron_scalar > wasserstein_scalar
    report.record(float(exact_margin) if (identity_holds and failure_confirmed) else -1.0,
                  {"seed_offset": None, "a": a, "b": b, "c_over": c_over})
    report.diagnostics["exact_margin"] = str(exact_margin)
    return report


def check_weighted_corollary(A: PDMatrix, B: PDMatrix, t: float, c: float,
                             tol: float, context: dict | None = None) -> CheckReport:
    """Weighted form: (1-t)^2 A + t^2 B + c (A natural B) against the
    geodesic point, for 0 <= c <= 2t(1-t)."""
    limit = 2.0 * t * (1.0 - t)
    if not 0.0 <= c <= limit * (1.0 + 1e-12):
        raise InvalidWeightsError(f"need 0 <= c <= 2t(1-t) = {limit}, got c = {c}")
    report = CheckReport("weighted_corollary", tol)
    H = heron_spectral(A, B, MeanWeights(1.0 - t, t, c))
    W = bw_geodesic(A, B, t)
    sH, sW = spectrum(H), spectrum(W)
    margin = _wm_margin(sH, sW)
    if limit > 0.0 and c >= limit * (1.0 - 1e-12):
        margin = min(margin, _trace_eq_margin(sH, sW))
    report.record(margin, context)
    return report


def check_spreading(A: PDMatrix, B: PDMatrix, a: float, b: float,
                    tol: float, context: dict | None = None) -> CheckReport:
    """At the endpoint coefficient the spectral Heron expression is
    spectrally less spread: top-k sums smaller, bottom-k sums larger,
    trace equal, determinant at least as large."""
    if a <= 0 or b <= 0:
        raise InvalidWeightsError(f"need a, b > 0, got a={a}, b={b}")
    report = CheckReport("spreading", tol)
    H = heron_spectral(A, B, MeanWeights.sharp(a, b))
    W = wasserstein_expression(A, B, a, b)
    sH, sW = spectrum(H), spectrum(W)
    margins = [_wm_margin(sH, sW)]
    # bottom-k sums: Heron side dominates
    bottom_H = np.cumsum(sH.values[::-1])
    bottom_W = np.cumsum(sW.values[::-1])
    scale = 1.0 + float(np.abs(sW.values).max())
    margins.append(float((bottom_H - bottom_W).min()) / scale)
    margins.append(_trace_eq_margin(sH, sW))
    # determinants compared in the log domain
    logdet_H = float(np.log(sH.values).sum())
    logdet_W = float(np.log(sW.values).sum())
    margins.append((logdet_H - logdet_W) / (1.0 + abs(logdet_W)))
    report.record(min(margins), context)
    return report


def check_equality_iff_commuting(A: PDMatrix, B: PDMatrix, a: float, b: float,
                                 tol: float, context: dict | None = None) -> CheckReport:
    """Both endpoint Heron expressions equal the Wasserstein expression
    exactly when A and B commute; otherwise they stay separated by a
    data-dependent positive amount."""
    if a <= 0 or b <= 0:
        raise InvalidWeightsError(f"need a, b > 0, got a={a}, b={b}")
    report = CheckReport("equality_iff_commuting", tol)
    comm = float(np.linalg.norm(A.mat @ B.mat - B.mat @ A.mat))
    comm_scale = float(np.linalg.norm(A.mat)) * float(np.linalg.norm(B.mat))
    W = wasserstein_expression(A, B, a, b)
    w_norm = W.frobenius()
    diff_nat = (heron_spectral(A, B, MeanWeights.sharp(a, b)) - W).frobenius()
    diff_kubo = (heron_kubo(A, B, a, b) - W).frobenius()
    if comm <= tol * comm_scale:
        margin = _eq_margin(max(diff_nat, diff_kubo), w_norm)
    elif comm >= 1e-3 * comm_scale:
        floor = 1e-6 * w_norm
        margin = (min(diff_nat, diff_kubo) - floor) / w_norm
    else:
        # gray zone between clearly commuting and clearly noncommuting:
        # nothing sharp to assert
        margin = 0.0
    report.record(margin, context)
    return report


def check_pinching(C: PDMatrix, R: PDMatrix, tol: float,
                   context: dict | None = None,
                   rng: np.random.Generator | None = None) -> CheckReport:
    """The nonlinear pinching map contracts in weak majorization; its four
    structural hypotheses (monotone, homogeneous, unital,
    trace-subpreserving) are spot-checked on the same instance."""
    report = CheckReport("pinching", tol)
    n = C.dim
    Phi = pinching_map(C, R)
    margins = [_wm_margin(spectrum(Phi), spectrum(C))]

    # unitality
    Phi_eye = pinching_map(PDMatrix(np.eye(n)), R)
    margins.append(_eq_margin(float(np.linalg.norm(Phi_eye.mat - np.eye(n))), 1.0 + math.sqrt(n)))
    # positive homogeneity at alpha = 2
    Phi2 = pinching_map(PDMatrix(2.0 * C.mat), R)
    margins.append(_eq_margin(float(np.linalg.norm(Phi2.mat - 2.0 * Phi.mat)),
                              1.0 + 2.0 * Phi.frobenius()))
    # trace-subpreservation
    margins.append((C.trace() - Phi.trace()) / (1.0 + C.trace()))
    # order preservation on a random dominated pair C1 <= C
    if rng is None:
        rng = np.random.default_rng(0)
    bump = random_pd_from_rng(n, 10.0, rng)
    C1 = PDMatrix(C.mat - (0.5 * C.min_eigenvalue_witness) * bump.mat / bump.eig().eigenvalues[0])
    Phi1 = pinching_map(C1, R)
    gap_vals = np.linalg.eigvalsh(Phi.mat - Phi1.mat)
    margins.append(float(gap_vals[0]) / (1.0 + float(np.abs(gap_vals).max())))
    # trace identity linking the spectral mean of the two compressions
    S = PDMatrix(np.eye(n) - R.mat)
    P = PDMatrix(hermitian_part(R.mat @ C.mat @ R.mat))
    Q = PDMatrix(hermitian_part(S.mat @ C.mat @ S.mat))
    lhs_tr = spectral_mean(P, Q).trace()
    rhs_tr = float(np.trace(R.mat @ S.mat @ C.mat).real)
    margins.append(_eq_margin(lhs_tr - rhs_tr, 1.0 + abs(rhs_tr)))

    report.record(min(margins), context)
    return report


def check_kubo_heron(A: PDMatrix, B: PDMatrix, a: float, b: float, c: float,
                     tol: float, context: dict | None = None) -> CheckReport:
    """Heron expression with geometric cross term, coefficient up to 2ab,
    is weakly majorized by the Wasserstein expression."""
    two_ab = 2.0 * a * b
    if not 0.0 <= c <= two_ab * (1.0 + 1e-12):
        raise InvalidWeightsError(f"need 0 <= c <= 2ab = {two_ab}, got c = {c}")
    report = CheckReport("kubo_heron", tol)
    H = heron_kubo(A, B, a, b, c)
    W = wasserstein_expression(A, B, a, b)
    report.record(_wm_margin(spectrum(H), spectrum(W)), context)
    return report


def check_endpoints(A: PDMatrix, B: PDMatrix, a: float, b: float,
                    tol: float, context: dict | None = None) -> CheckReport:
    """Order of the extreme eigenvalues, the trace, and the (n-1)-sum
    between the sharp geometric Heron and Wasserstein expressions."""
    if a < 0 or b < 0:
        raise InvalidWeightsError(f"need a, b >= 0, got a={a}, b={b}")
    report = CheckReport("endpoints", tol)
    H = heron_kubo(A, B, a, b)
    W = wasserstein_expression(A, B, a, b)
    sH, sW = spectrum(H), spectrum(W)
    scale = 1.0 + float(np.abs(sW.values).max())
    margins = [
        (float(sH.values[-1]) - float(sW.values[-1])) / scale,   # smallest eigenvalue
        (float(sW.values[0]) - float(sH.values[0])) / scale,     # largest eigenvalue
        (float(sW.values.sum()) - float(sH.values.sum())) / scale,
    ]
    n = len(sH)
    if n > 1:
        margins.append((float(sW.values[:-1].sum()) - float(sH.values[:-1].sum())) / scale)
    report.record(min(margins), context)
    return report


def check_log_majorization_means(P: PDMatrix, Q: PDMatrix, tol: float,
                                 context: dict | None = None) -> CheckReport:
    """The geometric mean is log-majorized by the spectral mean; in
    particular its trace is no larger."""
    report = CheckReport("log_majorization_means", tol)
    G = geometric_mean(P, Q)
    N = spectral_mean(P, Q)
    sG, sN = spectrum(G), spectrum(N)
    verdict = log_majorization(sG, sN, tol)
    log_scale = 1.0 + float(np.abs(np.log(sN.values)).max())
    prefix = min(verdict.per_k_margins[:-1]) / log_scale if len(sG) > 1 else 0.0
    total = _eq_margin(verdict.trace_gap, log_scale)
    trace_margin = (float(sN.values.sum()) - float(sG.values.sum())) / (1.0 + float(sN.values.sum()))
    report.record(min(prefix, total, trace_margin), context)
    return report


def check_quadratic_lifting(C: PDMatrix, D: PDMatrix, tol: float,
                            context: dict | None = None) -> CheckReport:
    """If lambda(D) prec_w lambda(C), the congruence by C^{1/2} lifts the
    comparison to lambda(C^{1/2} D C^{1/2}) prec_w lambda(C^2)."""
    report = CheckReport("quadratic_lifting", tol)
    sC, sD = spectrum(C), spectrum(D)
    hypothesis = weak_majorization(sD, sC, tol)
    if not hypothesis.holds:
        raise InvalidWeightsError("instance violates the hypothesis lambda(D) prec_w lambda(C)")
    Ch = principal_sqrt(C)
    lifted = PDMatrix(hermitian_part(Ch.mat @ D.mat @ Ch.mat))
    C2 = PDMatrix(hermitian_part(C.mat @ C.mat))
    report.record(_wm_margin(spectrum(lifted), spectrum(C2)), context)
    return report


def _bly_margin(A: PDMatrix, B: PDMatrix, a: float, b: float) -> float:
    """Worst normalized Ky Fan margin of the sharp geometric Heron
    expression against (a A^{1/2} + b B^{1/2})^2."""
    H = heron_kubo(A, B, a, b)
    T = a * principal_sqrt(A).mat + b * principal_sqrt(B).mat
    rhs = PDMatrix(hermitian_part(T @ T))
    return _wm_margin(spectrum(H), spectrum(rhs))


def check_bly(A: PDMatrix, B: PDMatrix, a: float, b: float,
              tol: float, context: dict | None = None) -> CheckReport:
    """Weak-majorization refinement of the two-variable Heron comparison
    against the squared sum of weighted square roots, plus the expansion
    identity and Schatten p = 1, 2, inf spot checks."""
    if a < 0 or b < 0:
        raise InvalidWeightsError(f"need a, b >= 0, got a={a}, b={b}")
    report = CheckReport("bly", tol)
    H = heron_kubo(A, B, a, b)
    Ah, Bh = principal_sqrt(A), principal_sqrt(B)
    T = a * Ah.mat + b * Bh.mat
    rhs = PDMatrix(hermitian_part(T @ T))
    sH, sR = spectrum(H), spectrum(rhs)
    margins = [_wm_margin(sH, sR)]
    # expansion of the square: a^2 A + b^2 B + ab(sqrtA sqrtB + sqrtB sqrtA)
    cross = Ah.mat @ Bh.mat
    expanded = a * a * A.mat + b * b * B.mat + a * b * (cross + cross.conj().T)
    margins.append(_eq_margin(float(np.linalg.norm(expanded - rhs.mat)), 1.0 + rhs.frobenius()))
    # Schatten norms follow from the eigenvalue comparison for PSD matrices
    for p_lhs, p_rhs in (
        (float(sH.values.sum()), float(sR.values.sum())),
        (float(np.sqrt((sH.values ** 2).sum())), float(np.sqrt((sR.values ** 2).sum()))),
        (float(sH.values[0]), float(sR.values[0])),
    ):
        margins.append((p_rhs - p_lhs) / (1.0 + p_rhs))
    report.record(min(margins), context)
    return report


def check_semidefinite_limit(A0: HermitianMatrix, B0: HermitianMatrix,
                             eps_sequence: tuple[float, ...] = DEFAULT_EPS_SEQUENCE,
                             tol: float = 1e-8,
                             context: dict | None = None) -> CheckReport:
    """Stability of the square-root Heron comparison as a positive
    semidefinite pair is regularized by eps I and eps decreases.

    Margins must stay above -tol along the whole sequence.  The distance
    between the final margin and the Aitken-extrapolated limit of the
    sequence is recorded as a convergence diagnostic; for singular
    noncommuting pairs it decays like sqrt(eps), so it is reported, not
    gated at tol.
    """
    if A0.dim != B0.dim:
        raise MatrixFormatError(f"dimension mismatch: {A0.dim} vs {B0.dim}")
    for M, name in ((A0, "A0"), (B0, "B0")):
        lam = M.eig().eigenvalues
        if float(lam[-1]) < -tol * (1.0 + float(np.abs(lam).max())):
            raise MatrixFormatError(f"{name} must be positive semidefinite")
    report = CheckReport("semidefinite_limit", tol)
    n = A0.dim
    eye = np.eye(n)
    margins = []
    for eps in eps_sequence:
        A_eps = PDMatrix(A0.mat + eps * eye)
        B_eps = PDMatrix(B0.mat + eps * eye)
        margins.append(_bly_margin(A_eps, B_eps, 1.0, 1.0))
    worst = min(margins)
    gap = 0.0
    if len(margins) >= 3:
        m1, m2, m3 = margins[-3], margins[-2], margins[-1]
        denom = (m3 - m2) - (m2 - m1)
        extrapolated = m3 if denom == 0.0 else m3 - (m3 - m2) ** 2 / denom
        gap = abs(m3 - extrapolated)
    report.record(worst, context)
    report.diagnostics["margins_along_sequence"] = margins
    report.diagnostics["convergence_gap"] = gap
    return report


def check_incomparability_float(tol: float = 1e-8) -> CheckReport:
    """Floating replay of the certified incomparability instances: the k=1
    Ky Fan inequality fails one way on the 3x3 pair, and the trace
    comparison fails the other way on the 2x2 pair."""
    report = CheckReport("incomparability_float", tol)
    data1 = direction_one_data()
    A = PDMatrix(np.array(data1["A"].to_float()))
    B = PDMatrix(np.array(data1["B"].to_float()))
    M_sharp = A + B + 2.0 * geometric_mean(A, B)
    M_nat = A + B + 2.0 * spectral_mean(A, B)
    k1_gap = float(spectrum(M_sharp).values[0]) - float(spectrum(M_nat).values[0])
    report.record(k1_gap - 1e-2, {"seed_offset": None, "item": "k=1 failure of direction one"})

    data2 = direction_two_data()
    A2 = PDMatrix(np.array(data2["A"].to_float()))
    B2 = PDMatrix(np.array(data2["B"].to_float()))
    trace_gap = 2.0 * (spectral_mean(A2, B2).trace() - geometric_mean(A2, B2).trace())
    report.record(trace_gap - 0.6, {"seed_offset": None, "item": "trace failure of direction two"})
    report.diagnostics["k1_gap"] = k1_gap
    report.diagnostics["trace_gap"] = trace_gap
    return report


# ---------------------------------------------------------------------------
# instance generation
# ---------------------------------------------------------------------------

def _commuting_pair(dim: int, cond_max: float, rng: np.random.Generator) -> tuple[PDMatrix, PDMatrix]:
    """A pair sharing a random eigenbasis commutes by construction."""
    U = haar_unitary(dim, rng)
    lo = -np.log10(cond_max) if cond_max > 1.0 else 0.0
    pair = []
    for _ in range(2):
        vals = 10.0 ** rng.uniform(lo, 0.0, dim)
        vals /= vals.max()
        order = np.argsort(vals)[::-1]
        pair.append(PDMatrix._from_eig(vals[order].copy(), U[:, order].copy()))
    return pair[0], pair[1]


def _noncommuting_pair(dim: int, cond_max: float, rng: np.random.Generator) -> tuple[PDMatrix, PDMatrix]:
    """Resample until the commutator clears the noncommutativity floor."""
    for _ in range(200):
        A = random_pd_from_rng(dim, cond_max, rng)
        B = random_pd_from_rng(dim, cond_max, rng)
        comm = float(np.linalg.norm(A.mat @ B.mat - B.mat @ A.mat))
        if comm >= 1e-3 * float(np.linalg.norm(A.mat)) * float(np.linalg.norm(B.mat)):
            return A, B
    raise RuntimeError("could not generate a clearly noncommuting pair")


def _pinching_operands(dim: int, cond_max: float, rng: np.random.Generator) -> tuple[PDMatrix, PDMatrix]:
    C = random_pd_from_rng(dim, cond_max, rng)
    vals = np.sort(rng.uniform(0.05, 0.95, dim))[::-1].copy()
    R = PDMatrix._from_eig(vals, haar_unitary(dim, rng))
    return C, R


def _rank_deficient_psd(dim: int, rng: np.random.Generator) -> HermitianMatrix:
    rank = int(rng.integers(1, dim)) if dim > 1 else 1
    vals = np.zeros(dim)
    vals[:rank] = np.sort(10.0 ** rng.uniform(-2.0, 0.0, rank))[::-1]
    U = haar_unitary(dim, rng)
    return HermitianMatrix((U * vals) @ U.conj().T)


def _shrunk_dominated(C: PDMatrix, rng: np.random.Generator) -> PDMatrix:
    """Random D with lambda(D) prec_w lambda(C), enforced by scaling."""
    D0 = random_pd_from_rng(C.dim, 100.0, rng)
    ratios = ky_fan_sums(spectrum(C)) / ky_fan_sums(spectrum(D0))
    return PDMatrix((float(ratios.min()) * (1.0 - 1e-12)) * D0.mat)


# ---------------------------------------------------------------------------
# the suite driver
# ---------------------------------------------------------------------------

def _merge_into(pool: dict[str, CheckReport], report: CheckReport) -> None:
    if report.check_name in pool:
        pool[report.check_name].merge(report)
    else:
        pool[report.check_name] = report


def iter_instances(config: SuiteConfig):
    """The deterministic randomized instance stream of the suite:
    yields (offset, rng, dim, a, b, A, B)."""
    for offset in range(config.trials):
        rng = np.random.default_rng([config.seed, offset])
        dim = config.dims[offset % len(config.dims)]
        a, b = config.weight_grid[offset % len(config.weight_grid)]
        A = random_pd_from_rng(dim, config.cond_max, rng)
        B = random_pd_from_rng(dim, config.cond_max, rng)
        yield offset, rng, dim, a, b, A, B


def run_suite(config: SuiteConfig) -> RunReport:
    """Run every checker over the deterministic instance stream plus the
    fixed certified instances; identical configs yield identical reports."""
    pool: dict[str, CheckReport] = {}

    # fixed instances first
    _merge_into(pool, check_incomparability_float(config.tol))
    for a, b in ((1.0, 1.0),):
        data = direction_one_data()
        A_fix = PDMatrix(np.array(data["A"].to_float()))
        B_fix = PDMatrix(np.array(data["B"].to_float()))
        ctx = {"seed_offset": None, "instance": "certified-3x3", "a": a, "b": b}
        _merge_into(pool, check_spreading(A_fix, B_fix, a, b, config.tol, ctx))
        _merge_into(pool, check_kubo_heron(A_fix, B_fix, a, b, 2.0 * a * b, config.tol, ctx))
        _merge_into(pool, check_log_majorization_means(A_fix, B_fix, config.tol, ctx))
        _merge_into(pool, check_bly(A_fix, B_fix, a, b, config.tol, ctx))
    for c_over in (2.001, 2.01, 2.1, 3.0):
        _merge_into(pool, check_sharpness_scalar(1.0, 1.0, c_over))

    # randomized stream
    for offset, rng, dim, a, b, A, B in iter_instances(config):
        context = {
            "seed_offset": offset,
            "dim": dim,
            "a": a,
            "b": b,
            "A": matrix_to_dict(A),
            "B": matrix_to_dict(B),
        }

        for frac in config.c_fractions:
            _merge_into(pool, check_spectral_heron(A, B, a, b, frac * 2.0 * a * b, config.tol, context))
            _merge_into(pool, check_kubo_heron(A, B, a, b, frac * 2.0 * a * b, config.tol, context))
        for t in config.t_grid:
            for frac in config.c_fractions:
                _merge_into(pool, check_weighted_corollary(A, B, t, frac * 2.0 * t * (1.0 - t),
                                                           config.tol, context))
        _merge_into(pool, check_spreading(A, B, a, b, config.tol, context))
        _merge_into(pool, check_endpoints(A, B, a, b, config.tol, context))
        _merge_into(pool, check_log_majorization_means(A, B, config.tol, context))
        _merge_into(pool, check_bly(A, B, a, b, config.tol, context))

        # equality case: one pair commuting by construction, one generic
        A_c, B_c = _commuting_pair(dim, config.cond_max, rng)
        ctx_c = dict(context, A=matrix_to_dict(A_c), B=matrix_to_dict(B_c), variant="commuting")
        _merge_into(pool, check_equality_iff_commuting(A_c, B_c, a, b, config.tol, ctx_c))
        if dim > 1:
            A_n, B_n = _noncommuting_pair(dim, config.cond_max, rng)
            ctx_n = dict(context, A=matrix_to_dict(A_n), B=matrix_to_dict(B_n), variant="noncommuting")
            _merge_into(pool, check_equality_iff_commuting(A_n, B_n, a, b, config.tol, ctx_n))

        # pinching and its quadratic lift
        C, R = _pinching_operands(dim, config.cond_max, rng)
        ctx_p = dict(context, C=matrix_to_dict(C), R=matrix_to_dict(R))
        _merge_into(pool, check_pinching(C, R, config.tol, ctx_p, rng))
        _merge_into(pool, check_quadratic_lifting(C, pinching_map(C, R), config.tol, ctx_p))
        _merge_into(pool, check_quadratic_lifting(C, _shrunk_dominated(C, rng), config.tol, ctx_p))

        # semidefinite boundary
        A0 = _rank_deficient_psd(dim, rng)
        B0 = _rank_deficient_psd(dim, rng)
        ctx_s = dict(context, A=matrix_to_dict(A0), B=matrix_to_dict(B0), variant="rank-deficient")
        _merge_into(pool, check_semidefinite_limit(A0, B0, DEFAULT_EPS_SEQUENCE, config.tol, ctx_s))

    return RunReport(config=config, checks=list(pool.values()))
