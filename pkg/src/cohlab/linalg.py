"""Dense linear-algebra kernels the monotone calculations sit on.

Everything here is plain numpy on small dense matrices: singular value
decomposition packaged with its bases, k-th compound matrices (all k x k
minors), elementary symmetric polynomials, and projection onto the PSD cone.
No quantum-state semantics in this module; shapes and dtypes only.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import ArgumentError, ValidationError

# Shared numerical tolerances. Callers may override per call where a function
# takes an explicit tol; these are the package-wide defaults.
DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-9


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex ndarray, rejecting anything else."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"expected a matrix, got ndim={a.ndim}")
    return a


def is_hermitian(m, atol: float = DEFAULT_ATOL) -> bool:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.max(np.abs(a - a.conj().T)) <= atol)


def frobenius(m) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(np.asarray(m)))


@dataclass
class SpectrumResult:
    """Singular value decomposition m = left @ diag(values) @ right^dagger.

    values are nonnegative and sorted descending; left/right have orthonormal
    columns (left is rows x r, right is cols x r with r = min(rows, cols)).
    """

    values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.left @ np.diag(self.values) @ self.right.conj().T


def svd(m) -> SpectrumResult:
    """Full-accuracy SVD with the bases kept, as a SpectrumResult."""
    a = as_complex_matrix(m)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    return SpectrumResult(values=s, left=u, right=vh.conj().T)


def compound_matrix(m, k: int) -> np.ndarray:
    """k-th compound: the matrix of all k x k minors of m.

    Entry (I, J) is det(m[I, J]) for row subset I and column subset J, with
    subsets ordered lexicographically ascending. Shape is
    (C(rows, k), C(cols, k)). The compound of a product is the product of
    compounds (Cauchy-Binet), which is what the concurrence formulas lean on.
    """
    a = as_complex_matrix(m)
    rows, cols = a.shape
    if not 1 <= k <= min(rows, cols):
        raise ArgumentError(f"compound order k={k} outside 1..{min(rows, cols)}")
    if k == 1:
        return a.copy()
    row_sets = list(combinations(range(rows), k))
    col_sets = list(combinations(range(cols), k))
    # One batched determinant call over all (I, J) submatrices.
    ri = np.array(row_sets)  # (nI, k)
    ci = np.array(col_sets)  # (nJ, k)
    sub = a[ri[:, None, :, None], ci[None, :, None, :]]  # (nI, nJ, k, k)
    return np.linalg.det(sub)


def elementary_symmetric(values, k: int) -> float:
    """Elementary symmetric polynomial S_k of a real sequence.

    S_0 = 1 and S_k = 0 for k beyond the length. Small inputs are summed by
    direct subset enumeration; longer ones go through the Newton power-sum
    recurrence to stay O(n k).
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1:
        raise ValidationError("elementary_symmetric expects a 1-D sequence")
    if k < 0:
        raise ArgumentError("k must be nonnegative")
    n = x.size
    if k == 0:
        return 1.0
    if k > n:
        return 0.0
    if n <= 20:
        return float(sum(np.prod(x[list(idx)]) for idx in combinations(range(n), k)))
    # Newton's identities: k e_k = sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j.
    p = [float(np.sum(x**j)) for j in range(1, k + 1)]
    e = [1.0] + [0.0] * k
    for i in range(1, k + 1):
        acc = 0.0
        for j in range(1, i + 1):
            acc += (-1.0) ** (j - 1) * e[i - j] * p[j - 1]
        e[i] = acc / i
    return e[k]


def elementary_symmetric_all(values, kmax: int) -> np.ndarray:
    """S_0..S_kmax in one pass via the product recurrence (stable for x >= 0)."""
    x = np.asarray(values, dtype=float)
    e = np.zeros(kmax + 1)
    e[0] = 1.0
    for xi in x:
        upto = min(kmax, len(e) - 1)
        e[1 : upto + 1] = e[1 : upto + 1] + xi * e[0:upto]
    return e


def psd_project(h, atol: float = DEFAULT_ATOL) -> np.ndarray:
    """Frobenius-nearest PSD matrix to a Hermitian input (eigenvalue clamp)."""
    a = as_complex_matrix(h)
    if not is_hermitian(a, atol=max(atol, DEFAULT_ATOL)):
        raise ValidationError("psd_project expects a Hermitian matrix")
    w, v = np.linalg.eigh((a + a.conj().T) / 2.0)
    w = np.clip(w, 0.0, None)
    return (v * w) @ v.conj().T


def binomial(n: int, k: int) -> int:
    return comb(n, k)
