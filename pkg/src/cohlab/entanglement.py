"""Bipartite entanglement monotones built on Schmidt spectra.

A pure state of a d x d system is held as its amplitude matrix Psi (entry
(i, j) multiplies |i>|j>); Schmidt coefficients are the squared singular
values of Psi. The k-concurrence family normalizes the k-th elementary
symmetric polynomial of the Schmidt spectrum against its maximally entangled
value,

    C_k = [S_k(lambda) / S_k(1/d, ..., 1/d)]^(1/k),   2 <= k <= d,

so every member is 1 on the maximally entangled state and 0 exactly when the
Schmidt rank is below k. The k = d member is the G-concurrence
d |det Psi|^(2/d). An equivalent route evaluates S_k as the squared Frobenius
mass of the k-th compound matrix of Psi (Cauchy-Binet); both are exposed and
the pair is cross-checked in the tests. By Maclaurin's inequality the family
is non-increasing in k on every state.

Mixed states get convex-roof upper-bound estimates through cohlab.convex_roof.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .convex_roof import KConcurrenceMeasure, RoofEstimate, RoofOptions, minimize_roof
from .errors import ArgumentError, ValidationError
from .linalg import compound_matrix, elementary_symmetric_all
from .states import as_density

CHAIN_SLACK = 1e-10
SCHMIDT_TOL = 1e-9


@dataclass
class BipartitePure:
    """Pure state of a d (x) d system as its amplitude matrix."""

    psi_matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.psi_matrix.shape[0]

    def vector(self) -> np.ndarray:
        return self.psi_matrix.reshape(-1)


def as_bipartite(state, d: int | None = None) -> BipartitePure:
    """Coerce a BipartitePure, d x d matrix, or flat d^2 vector."""
    if isinstance(state, BipartitePure):
        m = state.psi_matrix
    else:
        a = np.asarray(state, dtype=complex)
        if a.ndim == 1:
            n = a.size
            d = d or int(round(np.sqrt(n)))
            if d * d != n:
                raise ValidationError(f"vector of length {n} is not a d x d bipartite state")
            m = a.reshape(d, d)
        elif a.ndim == 2 and a.shape[0] == a.shape[1]:
            m = a
        else:
            raise ValidationError("expected a square amplitude matrix or flat vector")
    if abs(np.linalg.norm(m) - 1.0) > 1e-9:
        raise ValidationError("bipartite state is not normalized")
    return BipartitePure(psi_matrix=m)


def schmidt_coefficients(state) -> np.ndarray:
    """Schmidt spectrum: squared singular values, descending, summing to 1."""
    m = as_bipartite(state).psi_matrix
    s = np.linalg.svd(m, compute_uv=False)
    return s**2


def schmidt_rank(state, tol: float = SCHMIDT_TOL) -> int:
    """Number of singular values above tol."""
    m = as_bipartite(state).psi_matrix
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol))


def _check_k(k: int, d: int):
    if not 2 <= k <= d:
        raise ArgumentError(f"k={k} outside 2..{d}")


def k_concurrence_pure(state, k: int) -> float:
    """C_k from the Schmidt spectrum."""
    b = as_bipartite(state)
    _check_k(k, b.dim)
    lam = schmidt_coefficients(b)
    d = b.dim
    sk = elementary_symmetric_all(lam, k)[k]
    return float((max(sk, 0.0) * d**k / comb(d, k)) ** (1.0 / k))


def k_concurrence_via_compound(state, k: int) -> float:
    """C_k from the k-th compound of the amplitude matrix (Cauchy-Binet route)."""
    b = as_bipartite(state)
    _check_k(k, b.dim)
    d = b.dim
    ck = compound_matrix(b.psi_matrix, k)
    sk = float(np.sum(np.abs(ck) ** 2))
    return float(d * (sk / comb(d, k)) ** (1.0 / k))


def g_concurrence_pure(state) -> float:
    """G-concurrence d |det Psi|^(2/d), the k = d member of the family."""
    b = as_bipartite(state)
    d = b.dim
    return float(d * abs(np.linalg.det(b.psi_matrix)) ** (2.0 / d))


def concurrence_chain(state) -> dict[int, float]:
    """All C_k for k = 2..d, checked non-increasing (Maclaurin ordering).

    Raises ValidationError if the ordering is violated beyond the numerical
    slack, which for exact pure-state evaluation would indicate a bug.
    """
    b = as_bipartite(state)
    d = b.dim
    lam = schmidt_coefficients(b)
    e = elementary_symmetric_all(lam, d)
    chain = {
        k: float((max(e[k], 0.0) * d**k / comb(d, k)) ** (1.0 / k)) for k in range(2, d + 1)
    }
    for k in range(2, d):
        if chain[k + 1] > chain[k] + CHAIN_SLACK:
            raise ValidationError(
                f"concurrence ordering violated: C_{k + 1}={chain[k + 1]:.12g} "
                f"> C_{k}={chain[k]:.12g}"
            )
    return chain


@dataclass
class ConcurrenceReport:
    """Ordered k-concurrence values with the Schmidt spectrum behind them."""

    k_values: dict[int, float]
    schmidt_coeffs: np.ndarray

    def to_json(self) -> dict:
        return {
            "k_values": {str(k): self.k_values[k] for k in sorted(self.k_values)},
            "schmidt_coeffs": [float(x) for x in self.schmidt_coeffs],
        }


def maclaurin_chain(state) -> ConcurrenceReport:
    """Full C_2 >= ... >= C_d report for a pure bipartite state."""
    b = as_bipartite(state)
    return ConcurrenceReport(
        k_values=concurrence_chain(b), schmidt_coeffs=schmidt_coefficients(b)
    )


schmidt_coeffs = schmidt_coefficients


def _bipartite_density(rho, d: int | None):
    r = as_density(rho)
    d = d or int(round(np.sqrt(r.dim)))
    if d * d != r.dim:
        raise ValidationError(f"density of dim {r.dim} is not a d x d bipartite state")
    return r, d


def concurrence_roof_profile(
    rho,
    d: int | None = None,
    ks=None,
    options: RoofOptions | None = None,
    seeds=(),
) -> dict[int, RoofEstimate]:
    """Upper-bound estimates of C_k for several k over one shared pool.

    Sharing the candidate pool keeps the reported profile non-increasing in k,
    since every candidate ensemble satisfies the ordering pointwise.
    """
    r, d = _bipartite_density(rho, d)
    ks = list(ks) if ks is not None else list(range(2, d + 1))
    for k in ks:
        _check_k(k, d)
    measures = {k: KConcurrenceMeasure(d, k) for k in ks}
    return minimize_roof(r, measures, options, seeds)


def k_concurrence_mixed(
    rho, k: int, d: int | None = None, options: RoofOptions | None = None, seeds=()
) -> RoofEstimate:
    """Convex-roof upper-bound estimate of C_k for a mixed bipartite state."""
    return concurrence_roof_profile(rho, d=d, ks=[k], options=options, seeds=seeds)[k]
