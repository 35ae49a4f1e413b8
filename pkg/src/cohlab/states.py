"""State containers, random ensembles, incoherent channels, and JSON I/O.

Conventions used package-wide: basis states are 0-indexed, the reference
(incoherent) basis is the computational basis, and an ancilla is always
attached in its first basis state. Pure states are held as normalized complex
vectors, density matrices as Hermitian PSD trace-one arrays. Admission of a
density matrix tolerates eigenvalues down to -1e-10, which are clamped to zero
before renormalizing; anything more negative is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, ValidationError
from .linalg import as_complex_matrix, is_hermitian

NORM_ATOL = 1e-9
EIGEN_FLOOR = -1e-10
SELECTIVE_PROB_FLOOR = 1e-12


@dataclass
class PureState:
    """Normalized state vector over the computational basis."""

    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass
class DensityMatrix:
    """Hermitian, PSD, trace-one matrix over the computational basis."""

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass
class Decomposition:
    """Pure-state ensemble {(w_a, psi_a)}; weights sum to one."""

    weights: np.ndarray
    states: list[PureState] = field(default_factory=list)

    def density(self) -> DensityMatrix:
        d = self.states[0].dim
        m = np.zeros((d, d), dtype=complex)
        for w, s in zip(self.weights, self.states):
            m += w * s.projector()
        return make_density(m)


@dataclass
class IncoherentChannel:
    """Kraus set whose operators each have at most one nonzero entry per column.

    That column structure maps every basis state to (a multiple of) a basis
    state, so diagonal states stay diagonal under both the full channel and
    every selective outcome.
    """

    kraus: list[np.ndarray]

    @property
    def dim_in(self) -> int:
        return self.kraus[0].shape[1]


def make_pure(amplitudes) -> PureState:
    """Build a pure state, normalizing the input vector."""
    v = np.asarray(amplitudes, dtype=complex).ravel()
    if v.size < 1:
        raise ValidationError("state vector must have at least one amplitude")
    n = np.linalg.norm(v)
    if n < 1e-12:
        raise ValidationError("cannot normalize the zero vector")
    return PureState(amplitudes=v / n)


def as_pure(state) -> PureState:
    """Coerce PureState or vector-like to a validated PureState."""
    if isinstance(state, PureState):
        v = state.amplitudes
        if abs(np.linalg.norm(v) - 1.0) > NORM_ATOL:
            raise ValidationError("pure state is not normalized")
        return state
    v = np.asarray(state, dtype=complex).ravel()
    if abs(np.linalg.norm(v) - 1.0) > NORM_ATOL:
        raise ValidationError("pure state is not normalized (use make_pure to normalize)")
    return PureState(amplitudes=v)


def make_density(matrix) -> DensityMatrix:
    """Admit a density matrix, clamping eigenvalue dust and renormalizing.

    Eigenvalues in [-1e-10, 0) are treated as roundoff and clamped; below the
    floor the input is rejected as genuinely non-PSD.
    """
    m = as_complex_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise ValidationError("density matrix must be square")
    if not is_hermitian(m, atol=1e-8):
        raise ValidationError("density matrix must be Hermitian")
    m = (m + m.conj().T) / 2.0
    w, v = np.linalg.eigh(m)
    if w.min() < EIGEN_FLOOR:
        raise ValidationError(f"matrix has eigenvalue {w.min():.3e} below the PSD floor")
    t = float(np.sum(np.clip(w, 0.0, None)))
    if t < 1e-12:
        raise ValidationError("density matrix has vanishing trace")
    if abs(t - 1.0) > 1e-6:
        raise ValidationError(f"density matrix trace {t:.6f} is not 1")
    w = np.clip(w, 0.0, None) / t
    return DensityMatrix(matrix=(v * w) @ v.conj().T)


def as_density(state) -> DensityMatrix:
    """Coerce DensityMatrix, PureState, vector, or matrix to a DensityMatrix."""
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return DensityMatrix(matrix=state.projector())
    a = np.asarray(state, dtype=complex)
    if a.ndim == 1:
        return DensityMatrix(matrix=as_pure(a).projector())
    return make_density(a)


def density_from(decomposition: Decomposition) -> DensityMatrix:
    """Mix an ensemble into its density matrix."""
    w = np.asarray(decomposition.weights, dtype=float)
    if np.any(w < -1e-12):
        raise ValidationError("ensemble weights must be nonnegative")
    if abs(w.sum() - 1.0) > 1e-8:
        raise ValidationError("ensemble weights must sum to 1")
    return decomposition.density()


def random_pure(dim: int, seed=None) -> PureState:
    """Haar-random pure state (normalized complex Gaussian vector)."""
    if dim < 1:
        raise ArgumentError("dim must be positive")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return make_pure(v)


def random_density(dim: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """Normalized complex Wishart density matrix of the given rank."""
    if dim < 1:
        raise ArgumentError("dim must be positive")
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ArgumentError(f"rank must lie in 1..{dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = g @ g.conj().T
    return make_density(m / np.trace(m).real)


def incoherent_channel(kraus) -> IncoherentChannel:
    """Validate an explicit Kraus set as an incoherent channel.

    Requirements: every operator has at most one nonzero entry per column
    (entries below 1e-12 count as zero) and the set is trace preserving,
    sum_n K_n^dag K_n = I within 1e-9.
    """
    ops = [as_complex_matrix(k) for k in kraus]
    if not ops:
        raise ValidationError("channel needs at least one Kraus operator")
    d = ops[0].shape[1]
    acc = np.zeros((d, d), dtype=complex)
    for k in ops:
        if k.shape[1] != d:
            raise ValidationError("all Kraus operators must share the input dimension")
        nonzero_per_col = np.sum(np.abs(k) > 1e-12, axis=0)
        if np.any(nonzero_per_col > 1):
            raise ValidationError("Kraus operator has a column with two nonzero entries")
        acc += k.conj().T @ k
    if np.max(np.abs(acc - np.eye(d))) > 1e-9:
        raise ValidationError("Kraus set is not trace preserving")
    return IncoherentChannel(kraus=ops)


def random_incoherent_channel(dim: int, n_kraus: int, seed=None) -> IncoherentChannel:
    """Sample an incoherent channel with permutation-pattern Kraus operators.

    Each operator is built from a random permutation of the basis and one row
    of a coefficient matrix whose columns are unit vectors; completeness is
    then exact by construction. n_kraus=1 yields a permutation-phase unitary.
    """
    if dim < 1:
        raise ArgumentError("dim must be positive")
    if n_kraus < 1:
        raise ArgumentError("n_kraus must be positive")
    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal((n_kraus, dim)) + 1j * rng.standard_normal((n_kraus, dim))
    coeff /= np.linalg.norm(coeff, axis=0, keepdims=True)
    ops = []
    for n in range(n_kraus):
        perm = rng.permutation(dim)
        k = np.zeros((dim, dim), dtype=complex)
        k[perm, np.arange(dim)] = coeff[n]
        ops.append(k)
    return incoherent_channel(ops)


def apply_channel(channel: IncoherentChannel, rho) -> DensityMatrix:
    """Full channel action sum_n K_n rho K_n^dag."""
    r = as_density(rho).matrix
    d_out = channel.kraus[0].shape[0]
    out = np.zeros((d_out, d_out), dtype=complex)
    for k in channel.kraus:
        out += k @ r @ k.conj().T
    return make_density(out)


def apply_selective(channel: IncoherentChannel, rho):
    """Selective outcomes [(p_n, rho_n)], dropping branches below 1e-12."""
    r = as_density(rho).matrix
    out = []
    for k in channel.kraus:
        m = k @ r @ k.conj().T
        p = float(np.trace(m).real)
        if p <= SELECTIVE_PROB_FLOOR:
            continue
        out.append((p, make_density(m / p)))
    return out


def attach_ancilla(rho, ancilla_dim: int | None = None) -> DensityMatrix:
    """Tensor on an ancilla in its first basis state: rho (x) |0><0|.

    Index convention: the joint basis |i>_S |j>_A maps to flat index
    i * ancilla_dim + j, i.e. numpy kron order with the system first.
    """
    r = as_density(rho)
    da = r.dim if ancilla_dim is None else ancilla_dim
    if da < 1:
        raise ArgumentError("ancilla_dim must be positive")
    anc = np.zeros((da, da), dtype=complex)
    anc[0, 0] = 1.0
    return DensityMatrix(matrix=np.kron(r.matrix, anc))


def attach_ancilla_pure(psi, ancilla_dim: int | None = None) -> PureState:
    """Pure-state version of attach_ancilla: psi (x) |0>."""
    p = as_pure(psi)
    da = p.dim if ancilla_dim is None else ancilla_dim
    anc = np.zeros(da, dtype=complex)
    anc[0] = 1.0
    return PureState(amplitudes=np.kron(p.amplitudes, anc))


def purity(rho) -> float:
    r = as_density(rho).matrix
    return float(np.trace(r @ r).real)


# ---------------------------------------------------------------------------
# JSON state files
# ---------------------------------------------------------------------------
# Pure:    {"dim": d, "amplitudes": [[re, im], ...]}        (length d)
# Density: {"dim": d, "matrix": [[[re, im], ...], ...]}     (d rows of d pairs)


def _check_pair(x, where):
    if (
        not isinstance(x, (list, tuple))
        or len(x) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        raise ValidationError(f"{where}: expected a [re, im] number pair")


def pure_to_json(state) -> dict:
    p = as_pure(state)
    return {
        "dim": p.dim,
        "amplitudes": [[float(a.real), float(a.imag)] for a in p.amplitudes],
    }


def pure_from_json(obj) -> PureState:
    if not isinstance(obj, dict) or set(obj) != {"dim", "amplitudes"}:
        raise ValidationError('pure-state JSON must have exactly the keys "dim" and "amplitudes"')
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise ValidationError('"dim" must be a positive integer')
    amps = obj["amplitudes"]
    if not isinstance(amps, list) or len(amps) != d:
        raise ValidationError(f'"amplitudes" must be a list of {d} [re, im] pairs')
    for i, pair in enumerate(amps):
        _check_pair(pair, f"amplitudes[{i}]")
    v = np.array([complex(re, im) for re, im in amps])
    return as_pure(v)


def density_to_json(rho) -> dict:
    r = as_density(rho)
    return {
        "dim": r.dim,
        "matrix": [
            [[float(x.real), float(x.imag)] for x in row] for row in r.matrix
        ],
    }


def density_from_json(obj) -> DensityMatrix:
    if not isinstance(obj, dict) or set(obj) != {"dim", "matrix"}:
        raise ValidationError('density JSON must have exactly the keys "dim" and "matrix"')
    d = obj["dim"]
    if not isinstance(d, int) or d < 1:
        raise ValidationError('"dim" must be a positive integer')
    rows = obj["matrix"]
    if not isinstance(rows, list) or len(rows) != d:
        raise ValidationError(f'"matrix" must be a list of {d} rows')
    m = np.zeros((d, d), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ValidationError(f"matrix row {i} must have {d} [re, im] pairs")
        for j, pair in enumerate(row):
            _check_pair(pair, f"matrix[{i}][{j}]")
            m[i, j] = complex(pair[0], pair[1])
    return make_density(m)


def load_state(path):
    """Load a pure state or density matrix from a JSON file, by key shape."""
    try:
        with open(path) as f:
            obj = json.load(f)
    except OSError as exc:
        raise ValidationError(f"cannot read state file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"state file {path} is not valid JSON: {exc}") from exc
    if isinstance(obj, dict) and "amplitudes" in obj:
        return pure_from_json(obj)
    if isinstance(obj, dict) and "matrix" in obj:
        return density_from_json(obj)
    raise ValidationError('state JSON must contain either "amplitudes" or "matrix"')


def save_state(state, path) -> None:
    obj = pure_to_json(state) if isinstance(state, PureState) else density_to_json(state)
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")
