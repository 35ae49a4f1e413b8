"""Seeded verification corpora behind the verify command.

Each suite draws a deterministic corpus from a root seed (per-case generators
spawned through SeedSequence, so worker count never changes the stream),
checks one family of inequalities or identities, and reports per-case
residuals. A case's residual is the largest amount by which any checked
relation was broken; clean cases report the raw deviation, which doubles as a
health margin. Exit semantics upstream: zero violations means success.

The monotonicity suite verifies channel outputs constructively: the input's
certified ensemble is pushed through each Kraus branch (incoherent operators
never grow support, so branch ranks cannot rise) and reassembled into an
output certificate, with the convex l1 witness bound as an independent
falsifier. Optimizer-based routes are deliberately kept out of the violation
path; see the estimator notes in the coherence module.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import sin, sqrt

import numpy as np

from .coherence import (
    branch_certificate,
    ccN_pure,
    cck_pure_analog,
    coherence_concurrence_mixed,
    coherence_concurrence_pure,
    coherence_rank,
    l1_coherence,
)
from .conversion import (
    conversion_unitary,
    lemma1_check,
    selective_schmidt_ranks,
    theorem2_chain,
    theorem3_verify,
    theorem4_bounds,
)
from .convex_roof import RoofOptions
from .entanglement import (
    as_bipartite,
    g_concurrence_pure,
    k_concurrence_pure,
    k_concurrence_via_compound,
)
from .errors import ArgumentError
from .grover import (
    GroverParams,
    alpha_r,
    ccN_closed_form,
    ccN_derivative,
    ccN_from_probability,
    cost_performance,
    critical_iteration,
    grover_angle,
    statevector_deviation,
    success_probability,
)
from .states import (
    DensityMatrix,
    apply_channel,
    incoherent_channel,
    make_density,
    random_incoherent_channel,
    random_pure,
)


def worker_count() -> int:
    """Worker cap from COHLAB_THREADS; serial by default."""
    raw = os.environ.get("COHLAB_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class CaseResult:
    index: int
    residual: float
    ok: bool
    detail: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    seed: int
    cases: int
    tolerance: float
    violations: int
    max_residual: float
    results: list[CaseResult]

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "tolerance": self.tolerance,
            "violations": self.violations,
            "max_residual": self.max_residual,
            "ok": self.ok,
            "results": [
                {"case": c.index, "residual": c.residual, "ok": c.ok, **c.detail}
                for c in self.results
            ],
        }


def _run_cases(name, seed, n_cases, tol, case_fn) -> SuiteReport:
    children = np.random.SeedSequence(seed).spawn(n_cases)

    def one(i: int) -> CaseResult:
        rng = np.random.default_rng(children[i])
        residual, detail = case_fn(i, rng)
        return CaseResult(index=i, residual=float(residual),
                          ok=residual <= tol, detail=detail)

    threads = worker_count()
    if threads <= 1:
        results = [one(i) for i in range(n_cases)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, range(n_cases)))
    violations = sum(1 for c in results if not c.ok)
    worst = max((c.residual for c in results), default=0.0)
    return SuiteReport(suite=name, seed=seed, cases=n_cases, tolerance=tol,
                       violations=violations, max_residual=worst, results=results)


# ---------------------------------------------------------------------------
# corpus helpers
# ---------------------------------------------------------------------------


def _planted_pure(d: int, rank: int, rng) -> np.ndarray:
    """Random pure state with exactly `rank` nonzero amplitudes."""
    support = rng.choice(d, size=rank, replace=False)
    v = np.zeros(d, dtype=complex)
    mags = 0.3 + rng.random(rank)
    v[support] = mags * np.exp(2j * np.pi * rng.random(rank))
    return v / np.linalg.norm(v)


def _certified_mixture(d: int, rng):
    """Mixture of two overlapping 2-support pure states with known number 2.

    The explicit ensemble certifies the number is at most 2; any surviving
    off-diagonal weight certifies it is above 1 (number-1 states are exactly
    the diagonal ones). The amplitude floor keeps that weight well clear of 0.
    """
    while True:
        rows = []
        for sup in ((0, 1), (1, 2 % d)):
            v = np.zeros(d, dtype=complex)
            mags = 0.45 + 0.45 * rng.random(2)
            v[list(sup)] = mags * np.exp(2j * np.pi * rng.random(2))
            rows.append(sqrt(0.5) * v / np.linalg.norm(v))
        rows = np.array(rows)
        rho = make_density(sum(np.outer(r, r.conj()) for r in rows))
        if l1_coherence(rho) > 0.1:
            return rho, rows, 2


def _push_rows(rows, kraus_ops):
    pushed = []
    for k in kraus_ops:
        for row in rows:
            out = k @ row
            if np.linalg.norm(out) > 1e-10:
                pushed.append(out)
    return np.array(pushed)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _case_cauchy_binet(i, rng):
    d = int(rng.integers(2, 6))
    bp = as_bipartite(random_pure(d * d, seed=rng).amplitudes, d)
    worst = 0.0
    for k in range(2, d + 1):
        gap = abs(k_concurrence_pure(bp, k) - k_concurrence_via_compound(bp, k))
        worst = max(worst, gap)
    return worst, {"dim": d}


def _case_maclaurin(i, rng):
    d = int(rng.integers(3, 5))
    worst = 0.0
    detail = {"dim": d}
    # coherence side: ordered cck chain, ccN floor, concurrence vs l1
    rank = int(rng.integers(2, d + 1)) if i % 3 else d
    psi = _planted_pure(d, rank, rng)
    chain = [cck_pure_analog(psi, k) for k in range(2, d + 1)]
    for a, b in zip(chain, chain[1:]):
        worst = max(worst, b - a)
    gn = ccN_pure(psi)
    for c in chain:
        worst = max(worst, gn - c)
    worst = max(worst, abs(coherence_concurrence_pure(psi) - l1_coherence(psi)))
    # entanglement side: same chain shape for Schmidt-based measures
    bp = as_bipartite(random_pure(d * d, seed=rng).amplitudes, d)
    echain = [k_concurrence_pure(bp, k) for k in range(2, d + 1)]
    for a, b in zip(echain, echain[1:]):
        worst = max(worst, b - a)
    ge = g_concurrence_pure(bp)
    for c in echain:
        worst = max(worst, ge - c)
    if i % 5 == 0:
        # mixed state: roof estimate of the concurrence still dominates l1
        rho = _random_mixed(d, rng)
        est = coherence_concurrence_mixed(
            rho, options=RoofOptions(restarts=0, seed=int(rng.integers(2**31))))
        worst = max(worst, l1_coherence(rho) - est.value)
        detail["mixed"] = True
    return worst, detail


def _random_mixed(d: int, rng) -> DensityMatrix:
    rows = np.array([sqrt(0.5) * _planted_pure(d, int(rng.integers(2, d + 1)), rng)
                     for _ in range(2)])
    return make_density(sum(np.outer(r, r.conj()) for r in rows))


def _case_theorem1(i, rng):
    d = int(rng.integers(2, 5))
    kind = i % 3
    if kind == 0 or d < 3:
        psi = _planted_pure(d, int(rng.integers(1, d + 1)), rng)
        rho = make_density(np.outer(psi, psi.conj()))
        rows = np.array([psi])
        k_in = coherence_rank(psi)
    elif kind == 1:
        p = rng.random(d) + 0.05
        p /= p.sum()
        rho = make_density(np.diag(p).astype(complex))
        rows = np.array([sqrt(wt) * e for wt, e in zip(p, np.eye(d, dtype=complex))])
        k_in = 1
    else:
        rho, rows, k_in = _certified_mixture(d, rng)
    channel = random_incoherent_channel(
        d, int(rng.integers(2, 5)), seed=rng)
    out = apply_channel(channel, rho)
    pushed = _push_rows(rows, channel.kraus)
    cert = branch_certificate(pushed, k_in, target=out.matrix)
    worst = cert.residual
    # independent falsifier: the convex l1 witness caps states of number <= k
    worst = max(worst, l1_coherence(out) - (k_in - 1))
    selective_worst = 0.0
    for k_op in channel.kraus:
        sub = k_op @ rho.matrix @ k_op.conj().T
        p = float(np.real(np.trace(sub)))
        if p <= 1e-12:
            continue
        sub_rows = _push_rows(rows, [k_op]) / sqrt(p)
        cert_i = branch_certificate(sub_rows, k_in, target=sub / p)
        selective_worst = max(selective_worst, cert_i.residual)
        selective_worst = max(selective_worst, l1_coherence(sub / p) - (k_in - 1))
    worst = max(worst, selective_worst)
    return worst, {"dim": d, "input_number": k_in, "class": kind}


def _case_theorem2(i, rng):
    d = int(rng.integers(3, 5))
    channel = incoherent_channel([conversion_unitary(d)])
    if i % 3 == 0:
        rho = _random_mixed(d, rng)
    else:
        psi = _planted_pure(d, int(rng.integers(2, d + 1)), rng)
        rho = make_density(np.outer(psi, psi.conj()))
    opts = RoofOptions(restarts=0, seed=int(rng.integers(2**31)))
    outcome = theorem2_chain(rho, channel, options=opts)
    worst = 0.0
    ordered = [outcome.k_values[k] for k in sorted(outcome.k_values)]
    for a, b in zip(ordered, ordered[1:]):
        worst = max(worst, b - a)
    if 2 in outcome.k_values:
        worst = max(worst, outcome.k_values[2] - outcome.bound)
    if outcome.bound3 is not None and 3 in outcome.k_values:
        worst = max(worst, outcome.k_values[3] - outcome.bound3)
    return worst, {"dim": d, "chain_ok": outcome.chain_ok}


def _case_theorem3(i, rng):
    d = 4
    rank = 1 + i % d
    psi = _planted_pure(d, rank, rng)
    opts = RoofOptions(restarts=0, seed=int(rng.integers(2**31)))
    bad = 0.0
    for k in range(2, d + 1):
        if not theorem3_verify(psi, k, options=opts):
            bad = 1.0
    return bad, {"rank": rank}


def _case_theorem4(i, rng):
    d = int(rng.integers(3, 5))
    floor = 0.25 / sqrt(d)
    w = rng.random(d) + 0.05
    w /= w.sum()
    mags = np.sqrt(floor**2 + (1.0 - d * floor**2) * w)
    psi = mags * np.exp(2j * np.pi * rng.random(d))
    report = theorem4_bounds(psi, float(np.min(mags)))
    worst = max(report.lower - report.g_value, report.g_value - report.upper, 0.0)
    return worst, {"dim": d, "eps": report.eps}


def _case_lemma1(i, rng):
    # the channel acts on system + ancilla, hence dimension d^2
    d = int(rng.integers(3, 5))
    psi = _planted_pure(d, int(rng.integers(1, d + 1)), rng)
    channel = random_incoherent_channel(d * d, int(rng.integers(2, 5)), seed=rng)
    rank_cap = coherence_rank(psi)
    excess = 0.0
    for _, rank in selective_schmidt_ranks(psi, channel):
        excess = max(excess, float(rank - rank_cap))
    if not lemma1_check(psi, channel):
        excess = max(excess, 1.0)
    return excess, {"dim": d, "rank": rank_cap}


def _case_grover(i, rng):
    specials = [(1024, 5), (4, 1), (2, 1), (16, 4)]
    if i < len(specials):
        n, m = specials[i]
    else:
        n = int(rng.integers(4, 2048))
        m = int(rng.integers(1, max(2, n // 2)))
    p = GroverParams(n, m)
    crit = critical_iteration(p)
    worst = abs(ccN_closed_form(p, 0) - 1.0)
    for r in rng.uniform(0.0, crit.r_star, size=3):
        dual = ccN_from_probability(p, sin(alpha_r(p, float(r))) ** 2)
        worst = max(worst, abs(ccN_closed_form(p, float(r)) - dual))
    values = [ccN_closed_form(p, r) for r in range(int(crit.r_star) + 1)]
    for a, b in zip(values, values[1:]):
        worst = max(worst, b - a)
    if crit.r_star > 1e-6:
        r_mid = 0.6 * crit.r_star
        h = 1e-6
        fd = (ccN_closed_form(p, r_mid + h) - ccN_closed_form(p, r_mid - h)) / (2 * h)
        an = ccN_derivative(p, r_mid)
        worst = max(worst, abs(an - fd) / max(abs(fd), 1e-9) * 1e-9)
        prob = success_probability(p, r_mid)
        if prob > m / n + 1e-12 and an < -1e-12:
            dp = grover_angle(p) * sin(2 * alpha_r(p, r_mid))
            w = cost_performance(p, prob).exact
            worst = max(worst, abs(w - (-dp / an)) / max(w, 1e-9) * 1e-9)
    n_qubits = n.bit_length() - 1
    if n == 1 << n_qubits and n_qubits <= 12 and m <= 8:
        targets = rng.choice(n, size=m, replace=False)
        dev = statevector_deviation(n_qubits, targets, int(rng.integers(0, 31)))
        worst = max(worst, dev)
    return worst, {"N": n, "m": m}


@dataclass(frozen=True)
class SuiteSpec:
    case_fn: object
    default_cases: int
    default_tol: float


SUITES: dict[str, SuiteSpec] = {
    "cauchy-binet": SuiteSpec(_case_cauchy_binet, 1000, 1e-8),
    "maclaurin": SuiteSpec(_case_maclaurin, 200, 1e-10),
    "theorem1": SuiteSpec(_case_theorem1, 200, 1e-7),
    "theorem2": SuiteSpec(_case_theorem2, 200, 1e-8),
    "theorem3": SuiteSpec(_case_theorem3, 200, 0.5),
    "theorem4": SuiteSpec(_case_theorem4, 200, 1e-8),
    "lemma1": SuiteSpec(_case_lemma1, 200, 0.5),
    "grover-consistency": SuiteSpec(_case_grover, 50, 1e-9),
}


def run_suite(name: str, seed: int = 0, cases: int | None = None,
              tol: float | None = None) -> SuiteReport:
    if name not in SUITES:
        known = ", ".join(sorted(SUITES))
        raise ArgumentError(f"unknown suite {name!r}; expected one of {known}")
    spec = SUITES[name]
    n_cases = spec.default_cases if cases is None else int(cases)
    if n_cases < 1:
        raise ArgumentError("case count must be at least 1")
    tolerance = spec.default_tol if tol is None else float(tol)
    if tolerance <= 0:
        raise ArgumentError("tolerance must be positive")
    return _run_cases(name, int(seed), n_cases, tolerance, spec.case_fn)
