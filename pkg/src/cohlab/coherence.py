"""Basis-coherence monotones and the discrete coherence-number solver.

The discrete count for a pure state is its coherence rank (number of nonzero
amplitudes in the reference basis). For a mixed state the coherence number is
the smallest k such that rho splits as a sum of PSD pieces each supported on
some k-subset of the basis; equivalently, the smallest k admitting a pure-state
ensemble whose members all have coherence rank <= k. Feasibility at fixed k is
decided by Dykstra alternating projections between the affine set
{parts summing to rho} and the product of support-restricted PSD cones, with
two exact shortcuts: entries of rho outside every subset's support certify
infeasibility immediately (for k = 1 this is the diagonality test), and an
eigendecomposition whose vectors each fit inside one subset certifies
feasibility with zero iterations.

Continuous monotones: the pairwise amplitude sum (coherence concurrence), its
geometric-mean top member, the k-indexed elementary-symmetric interpolation
between them (an extension of the established pair, flagged as such in
reports), the l1 off-diagonal mass, and the relative entropy of coherence.
Mixed-state versions of the concurrence-type quantities are convex-roof
upper-bound estimates from cohlab.convex_roof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .convex_roof import (
    CoherenceProductMeasure,
    PairProductMeasure,
    RoofEstimate,
    RoofOptions,
    minimize_roof,
)
from .errors import ArgumentError, ValidationError
from .states import as_density, as_pure

RANK_TOL = 1e-9
FEAS_TOL = 1e-7
MAX_ITER = 5000
ENUMERATION_CAP = 8  # subset enumeration bound for the exact solver


def coherence_rank(psi, tol: float = RANK_TOL) -> int:
    """Number of amplitudes above tol in the reference basis."""
    p = as_pure(psi)
    return int(np.sum(np.abs(p.amplitudes) > tol))


def coherence_concurrence_pure(psi) -> float:
    """Pairwise amplitude sum 2 sum_{i<j} |psi_i psi_j|."""
    r = np.abs(as_pure(psi).amplitudes)
    return float(r.sum() ** 2 - (r**2).sum())


def coherence_g_concurrence_pure(psi) -> float:
    """Top member of the coherence concurrence family: d * prod |psi_i|^(2/d).

    Evaluated in log space so large dimensions cannot underflow; exactly 0
    whenever any amplitude is exactly 0.
    """
    p = as_pure(psi)
    r2 = np.abs(p.amplitudes) ** 2
    if np.any(r2 == 0.0):
        return 0.0
    return float(p.dim * np.exp(np.sum(np.log(r2)) / p.dim))


def coherence_k_concurrence_pure(psi, k: int) -> float:
    """Elementary-symmetric interpolation [S_k(|psi|^2) d^k / C(d,k)]^(1/k).

    The k = d member coincides with coherence_g_concurrence_pure; members with
    k < d extend the established family and are flagged as an extension
    wherever they are reported.
    """
    p = as_pure(psi)
    d = p.dim
    if not 2 <= k <= d:
        raise ArgumentError(f"k={k} outside 2..{d}")
    r2 = np.abs(p.amplitudes) ** 2
    from .linalg import elementary_symmetric

    sk = elementary_symmetric(r2, k)
    return float((max(sk, 0.0) * d**k / comb(d, k)) ** (1.0 / k))


def l1_coherence(rho) -> float:
    """Sum of absolute off-diagonal entries."""
    m = as_density(rho).matrix
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def relative_entropy_coherence(rho) -> float:
    """S(diag rho) - S(rho) in bits."""
    m = as_density(rho).matrix

    def entropy(p):
        p = p[p > 1e-15]
        return float(-np.sum(p * np.log2(p)))

    diag = np.clip(np.real(np.diag(m)), 0.0, None)
    eig = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    return max(0.0, entropy(diag) - entropy(eig))


def is_incoherent(rho, tol: float = 1e-9) -> bool:
    return l1_coherence(rho) <= tol


# ---------------------------------------------------------------------------
# coherence number: support-decomposition feasibility
# ---------------------------------------------------------------------------


@dataclass
class FeasibilityCertificate:
    """Outcome of the split-into-k-supported-parts feasibility problem.

    feasible=True certifies a witness: parts are PSD matrices supported on the
    listed subsets summing to rho within the stated residual. feasible=False
    means no witness was certified within the tolerance and iteration budget;
    residual then records the best sum defect reached, which is the distance
    evidence for genuine infeasibility (large residual after a plateau) versus
    a boundary case the iteration could not resolve (slowly shrinking
    residual). Decompositions whose feasible set is a single boundary point of
    the PSD cones converge too slowly to certify either way.
    """

    k: int
    feasible: bool
    subsets: list[tuple[int, ...]]
    parts: list[np.ndarray] = field(default_factory=list)
    residual: float = 0.0
    iterations: int = 0
    method: str = "dykstra"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "feasible": self.feasible,
            "method": self.method,
            "iterations": self.iterations,
            "residual": self.residual,
            "subsets": [list(s) for s in self.subsets],
            "parts": [
                [[[float(x.real), float(x.imag)] for x in row] for row in p]
                for p in self.parts
            ],
        }


@dataclass
class CoherenceNumberResult:
    """Coherence number with its feasibility certificate and sweep diagnostics."""

    value: int
    certificate: FeasibilityCertificate | None
    attempts: dict[int, float] = field(default_factory=dict)
    bounds_only: bool = False
    lower: int | None = None
    upper: int | None = None
    note: str = ""


def _coverage(d: int, subsets):
    cov = np.zeros((d, d))
    for s in subsets:
        idx = np.array(s)
        cov[np.ix_(idx, idx)] += 1.0
    return cov


def _constructive_certificate(rho, k, subsets, amp_tol=1e-11):
    """Assign eigenvectors to covering subsets when every support fits."""
    d = rho.shape[0]
    w, v = np.linalg.eigh(rho)
    parts = {s: np.zeros((d, d), dtype=complex) for s in subsets}
    for i in range(d):
        if w[i] <= 1e-14:
            continue
        support = tuple(np.nonzero(np.abs(v[:, i]) > amp_tol)[0])
        if len(support) > k:
            return None
        home = next(s for s in subsets if set(support) <= set(s))
        parts[home] += w[i] * np.outer(v[:, i], v[:, i].conj())
    used = [s for s in subsets if np.any(np.abs(parts[s]) > 0)]
    residual = float(np.linalg.norm(rho - sum(parts[s] for s in subsets)))
    return FeasibilityCertificate(
        k=k,
        feasible=True,
        subsets=used,
        parts=[parts[s] for s in used],
        residual=residual,
        iterations=0,
        method="constructive",
    )


def _dykstra_feasibility(rho, k, subsets, tol, max_iter):
    """Alternating projections; affine sum constraint vs PSD product cone."""
    d = rho.shape[0]
    ns = len(subsets)
    idx = [np.array(s) for s in subsets]
    cov = _coverage(d, subsets)
    cov_blocks = np.stack([cov[np.ix_(i, i)] for i in idx])

    z = np.zeros((ns, k, k), dtype=complex)
    q = np.zeros_like(z)  # Dykstra correction for the cone step
    best = np.inf
    history: list[float] = []
    it = 0
    check = 10
    while it < max_iter:
        for _ in range(check):
            # affine step: distribute the sum defect over covering parts
            total = np.zeros((d, d), dtype=complex)
            for s in range(ns):
                total[np.ix_(idx[s], idx[s])] += z[s]
            r = rho - total
            y = z + np.stack([r[np.ix_(i, i)] for i in idx]) / cov_blocks
            # cone step with correction
            t = y + q
            t = (t + t.conj().transpose(0, 2, 1)) / 2.0
            w, v = np.linalg.eigh(t)
            w = np.clip(w, 0.0, None)
            z = v @ (w[..., None] * v.conj().transpose(0, 2, 1))
            q = t - z
            it += 1
        total = np.zeros((d, d), dtype=complex)
        for s in range(ns):
            total[np.ix_(idx[s], idx[s])] += z[s]
        res = float(np.linalg.norm(rho - total))
        best = min(best, res)
        history.append(res)
        if res <= tol:
            parts = []
            used = []
            for s in range(ns):
                if np.max(np.abs(z[s])) > 1e-14:
                    full = np.zeros((d, d), dtype=complex)
                    full[np.ix_(idx[s], idx[s])] = z[s]
                    parts.append(full)
                    used.append(subsets[s])
            return FeasibilityCertificate(
                k=k, feasible=True, subsets=used, parts=parts,
                residual=res, iterations=it, method="dykstra",
            )
        # plateau: residual stuck far above tolerance means a genuine gap
        if len(history) >= 40 and res > 20 * tol:
            window = history[-30:]
            if (window[0] - window[-1]) < 1e-4 * window[0]:
                break
    return FeasibilityCertificate(
        k=k, feasible=False, subsets=list(subsets), parts=[],
        residual=best, iterations=it, method="dykstra",
    )


def feasibility_at_k(rho, k: int, tol: float = FEAS_TOL, max_iter: int = MAX_ITER,
                     method: str = "auto") -> FeasibilityCertificate:
    """Decide whether rho splits into PSD parts on k-subsets of the basis.

    method="auto" tries the exact constructive certificate before falling back
    to Dykstra iterations; method="dykstra" is a diagnostic mode that skips the
    shortcut and should only be trusted on mixed inputs, since alternating
    projections converge too slowly to certify the boundary case of a pure
    state at k equal to its own coherence rank.
    """
    r = as_density(rho).matrix
    d = r.shape[0]
    if not 1 <= k <= d:
        raise ArgumentError(f"k={k} outside 1..{d}")
    if k == d:
        return FeasibilityCertificate(
            k=k, feasible=True, subsets=[tuple(range(d))], parts=[r.copy()],
            residual=0.0, iterations=0, method="trivial",
        )
    subsets = list(combinations(range(d), k))
    # entries no subset covers force an exact residual floor
    cov = _coverage(d, subsets)
    uncovered = float(np.linalg.norm(r[cov == 0]))
    if uncovered > tol:
        return FeasibilityCertificate(
            k=k, feasible=False, subsets=subsets, parts=[],
            residual=uncovered, iterations=0, method="uncovered-mass",
        )
    if method == "auto":
        cert = _constructive_certificate(r, k, subsets)
        if cert is not None:
            return cert
    cert = _dykstra_feasibility(r, k, subsets, tol, max_iter)
    if not cert.feasible and cert.residual < 50 * tol:
        # borderline: spend a larger budget before accepting infeasibility
        cert = _dykstra_feasibility(r, k, subsets, tol, 4 * max_iter)
    return cert


def coherence_number(rho, tol: float = FEAS_TOL, max_iter: int = MAX_ITER,
                     method: str = "auto") -> CoherenceNumberResult:
    """Smallest k whose support-decomposition problem is feasible.

    Exact (tolerance-based) for d <= 8; beyond that subset enumeration is off
    the table and only bounds are reported: the max eigenvector coherence rank
    from above, and from below the smallest k compatible with the l1 mass
    (states of coherence rank k have l1 at most k - 1) and the off-diagonal
    support.
    """
    r = as_density(rho)
    d = r.dim
    if d > ENUMERATION_CAP:
        w, v = np.linalg.eigh(r.matrix)
        upper = max(
            int(np.sum(np.abs(v[:, i]) > RANK_TOL)) for i in range(d) if w[i] > 1e-12
        )
        l1 = l1_coherence(r)
        # rank-k pure states have l1 at most k - 1 and l1 is convex
        lower = 1 if l1 <= 1e-9 else int(np.ceil(l1 - 1e-9)) + 1
        lower = min(lower, upper)
        return CoherenceNumberResult(
            value=upper, certificate=None, attempts={},
            bounds_only=True, lower=lower, upper=upper,
            note="dimension above enumeration cap: bounds only",
        )
    if method == "auto":
        w, v = np.linalg.eigh(r.matrix)
        if float(np.sum(np.abs(w[:-1]))) <= 1e-10:
            # extremal input: a pure state's only decomposition is itself, so
            # its coherence number is its coherence rank identically
            rank = int(np.sum(np.abs(v[:, -1]) > RANK_TOL))
            cert = feasibility_at_k(r, rank, tol=tol, method="auto")
            return CoherenceNumberResult(
                value=rank, certificate=cert, attempts={rank: cert.residual},
                note="pure input: coherence number equals coherence rank",
            )
    attempts: dict[int, float] = {}
    for k in range(1, d + 1):
        cert = feasibility_at_k(r, k, tol=tol, max_iter=max_iter, method=method)
        attempts[k] = cert.residual
        if cert.feasible:
            return CoherenceNumberResult(value=k, certificate=cert, attempts=attempts)
    raise ValidationError("feasibility sweep failed at every k, including k = d")


# ---------------------------------------------------------------------------
# mixed-state roof estimates
# ---------------------------------------------------------------------------


def branch_certificate(rows, k: int, target=None,
                       tol: float = RANK_TOL) -> FeasibilityCertificate:
    """Exact feasibility certificate at k from an explicit branch ensemble.

    rows are unnormalized ensemble members whose outer-product sum is the
    state; each must have coherence rank <= k. Assigning every branch to a
    covering k-subset assembles the witnessing parts directly, which certifies
    states whose feasible set is a boundary point the iterative solver cannot
    resolve, such as channel outputs of certificate ensembles. The residual is
    taken against target when given, otherwise against the rows' own sum.
    """
    rows = np.asarray(rows, dtype=complex)
    d = rows.shape[1]
    if not 1 <= k <= d:
        raise ArgumentError(f"k={k} outside 1..{d}")
    check = rows.T @ rows.conj() if target is None else as_density(target).matrix
    parts: dict[tuple[int, ...], np.ndarray] = {}
    for row in rows:
        if np.linalg.norm(row) <= 1e-12:
            continue
        support = tuple(np.nonzero(np.abs(row) > tol)[0])
        if len(support) > k:
            raise ValidationError(
                f"branch with coherence rank {len(support)} exceeds k={k}"
            )
        home = support + tuple(i for i in range(d) if i not in support)
        home = tuple(sorted(home[:k]))
        parts.setdefault(home, np.zeros((d, d), dtype=complex))
        parts[home] += np.outer(row, row.conj())
    subsets = sorted(parts)
    total = sum((parts[s] for s in subsets), np.zeros((d, d), dtype=complex))
    residual = float(np.linalg.norm(check - total))
    return FeasibilityCertificate(
        k=k, feasible=residual <= FEAS_TOL, subsets=list(subsets),
        parts=[parts[s] for s in subsets], residual=residual,
        iterations=0, method="branch-ensemble",
    )


def certificate_ensemble(cert: FeasibilityCertificate) -> np.ndarray:
    """Unnormalized ensemble rows from a feasibility certificate.

    Eigendecomposing each part yields members supported on that part's subset,
    so every row has coherence rank <= cert.k. Usable as a roof seed: when
    cert.k < d this pins the geometric-mean roof estimate to exactly zero.
    """
    if not cert.feasible or not cert.parts:
        raise ArgumentError("ensemble requires a feasible certificate with parts")
    rows = []
    for part in cert.parts:
        w, v = np.linalg.eigh(part)
        for i in range(len(w)):
            if w[i] > 1e-14:
                rows.append(np.sqrt(w[i]) * v[:, i])
    return np.array(rows)


def coherence_concurrence_mixed(
    rho, options: RoofOptions | None = None, seeds=()
) -> RoofEstimate:
    """Convex-roof upper-bound estimate of the coherence concurrence."""
    r = as_density(rho)
    return minimize_roof(r, {"cc": PairProductMeasure()}, options, seeds)["cc"]


def coherence_g_concurrence_mixed(
    rho, options: RoofOptions | None = None, seeds=()
) -> RoofEstimate:
    """Convex-roof upper-bound estimate of the top (geometric-mean) member."""
    r = as_density(rho)
    return minimize_roof(r, {"gc": CoherenceProductMeasure(r.dim)}, options, seeds)["gc"]


# short names for the geometric-mean family
ccN_pure = coherence_g_concurrence_pure
cck_pure_analog = coherence_k_concurrence_pure
ccN_mixed = coherence_g_concurrence_mixed


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------


@dataclass
class CoherenceReport:
    """All coherence monotones of one state, with per-field estimate flags.

    rank_or_number is the coherence rank for pure inputs and the coherence
    number for mixed ones; cc and ccN are exact for pure inputs and convex-roof
    upper-bound estimates otherwise, marked in is_estimate.
    """

    dim: int
    rank_or_number: int
    cc: float
    ccN: float
    l1: float
    rel_entropy: float
    is_estimate: dict[str, bool]
    certificate: FeasibilityCertificate | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "rank_or_number": self.rank_or_number,
            "cc": self.cc,
            "ccN": self.ccN,
            "l1": self.l1,
            "rel_entropy": self.rel_entropy,
            "is_estimate": dict(self.is_estimate),
        }
        if self.note:
            out["note"] = self.note
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def coherence_report(state, options: RoofOptions | None = None,
                     tol: float = FEAS_TOL) -> CoherenceReport:
    """Evaluate every monotone on one state.

    Mixed inputs get the exact feasibility-solved coherence number plus roof
    estimates for cc and ccN; the solver's certificate ensemble seeds the roof,
    which forces ccN to exactly zero whenever the coherence number is below d,
    keeping the report consistent with the zero structure of the roof.
    """
    rho = as_density(state)
    d = rho.dim
    w, v = np.linalg.eigh(rho.matrix)
    if float(np.sum(np.abs(w[:-1]))) <= 1e-10:
        psi = v[:, -1]
        proj = rho.matrix
        return CoherenceReport(
            dim=d,
            rank_or_number=coherence_rank(psi),
            cc=coherence_concurrence_pure(psi),
            ccN=ccN_pure(psi),
            l1=l1_coherence(proj),
            rel_entropy=relative_entropy_coherence(proj),
            is_estimate={"rank_or_number": False, "cc": False, "ccN": False,
                         "l1": False, "rel_entropy": False},
            note="pure input: exact values",
        )
    number = coherence_number(rho, tol=tol)
    seeds = ()
    if number.certificate is not None and number.certificate.parts:
        seeds = (certificate_ensemble(number.certificate),)
    measures = {"cc": PairProductMeasure(), "ccN": CoherenceProductMeasure(d)}
    est = minimize_roof(rho, measures, options, seeds)
    return CoherenceReport(
        dim=d,
        rank_or_number=number.value,
        cc=est["cc"].value,
        ccN=est["ccN"].value,
        l1=l1_coherence(rho),
        rel_entropy=relative_entropy_coherence(rho),
        is_estimate={"rank_or_number": False, "cc": True, "ccN": True,
                     "l1": False, "rel_entropy": False},
        certificate=number.certificate,
        note=number.note,
    )
