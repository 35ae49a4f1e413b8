import numpy as np
import pytest

from cohlab.convex_roof import (
    CoherenceProductMeasure,
    KConcurrenceMeasure,
    PairProductMeasure,
    RoofOptions,
    minimize_roof,
)
from cohlab.entanglement import k_concurrence_mixed, k_concurrence_pure
from cohlab.errors import ValidationError
from cohlab.states import Decomposition, make_density, make_pure, random_pure

FAST = RoofOptions(restarts=8, explore_steps=150, polish_iters=80, seed=0)


def wootters_concurrence(rho4):
    """Closed-form two-qubit roof concurrence; the exact oracle at d = 2."""
    sy = np.array([[0.0, -1j], [1j, 0.0]])
    yy = np.kron(sy, sy)
    r = rho4 @ yy @ rho4.conj() @ yy
    ev = np.sort(np.sqrt(np.abs(np.linalg.eigvals(r))))[::-1]
    return max(0.0, float(ev[0] - ev[1] - ev[2] - ev[3]))


def random_two_qubit_mixed(rng, rank):
    g = rng.standard_normal((4, rank)) + 1j * rng.standard_normal((4, rank))
    m = g @ g.conj().T
    return make_density(m / np.trace(m).real)


def test_pure_input_shortcut_matches_pure_formula():
    psi = random_pure(9, seed=30)
    est = k_concurrence_mixed(psi, 2, options=FAST)
    assert est.qualifier == "exact (pure input)"
    assert abs(est.value - k_concurrence_pure(psi.amplitudes, 2)) < 1e-8
    assert est.converged


def test_estimate_never_above_eigendecomposition_average():
    rng = np.random.default_rng(31)
    for i in range(3):
        rho = random_two_qubit_mixed(rng, rank=3)
        est = k_concurrence_mixed(rho, 2, options=FAST)
        assert est.value <= est.eigen_average + 1e-12
        assert est.qualifier == "estimate (upper bound)"


def test_matches_two_qubit_closed_form_oracle():
    rng = np.random.default_rng(32)
    for rank in (2, 3, 4):
        for _ in range(3):
            rho = random_two_qubit_mixed(rng, rank)
            oracle = wootters_concurrence(rho.matrix)
            est = k_concurrence_mixed(rho, 2, options=FAST)
            # valid upper bound, and tight enough to trust as an estimate
            assert est.value >= oracle - 1e-9
            assert est.value <= oracle + 5e-3


def test_bell_plus_basis_mixture_example():
    bell = make_pure([1.0, 0.0, 0.0, 1.0])
    e11 = make_pure([0.0, 0.0, 0.0, 1.0])
    rho = make_density(0.5 * bell.projector() + 0.5 * e11.projector())
    est = k_concurrence_mixed(rho, 2, options=FAST)
    # the construction ensemble averages to 0.5 * C_2(bell) = 0.5
    assert est.value <= 0.5 + 1e-9
    oracle = wootters_concurrence(rho.matrix)
    assert est.value >= oracle - 1e-9
    # independent coarse grid search over size-2 ensembles of the rank-2 state
    w, v = np.linalg.eigh(rho.matrix)
    keep = w > 1e-12
    w, v = w[keep], v[:, keep]
    b = np.sqrt(w)[:, None] * v.T.astype(complex)
    grid = np.linspace(0.0, np.pi / 2, 61)
    phases = np.linspace(0.0, 2 * np.pi, 61)
    best_grid = np.inf
    for th in grid:
        c, s = np.cos(th), np.sin(th)
        for ph in phases:
            u = np.array([[c, s * np.exp(1j * ph)], [-s * np.exp(-1j * ph), c]])
            rows = u @ b
            total = 0.0
            for row in rows:
                total += 2.0 * abs(np.linalg.det(row.reshape(2, 2)))
            best_grid = min(best_grid, total)
    assert est.value >= best_grid - 0.05
    assert est.value <= best_grid + 1e-6


def test_mixture_of_two_product_states_is_separable():
    rng = np.random.default_rng(33)
    d = 3
    ensembles = []
    for _ in range(2):
        a = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        bvec = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        m = np.outer(a, bvec)
        ensembles.append((m / np.linalg.norm(m)).reshape(-1))
    rho = make_density(
        0.6 * np.outer(ensembles[0], ensembles[0].conj())
        + 0.4 * np.outer(ensembles[1], ensembles[1].conj())
    )
    opts = RoofOptions(restarts=16, explore_steps=300, polish_iters=150, seed=1)
    ests = minimize_roof(
        rho, {k: KConcurrenceMeasure(3, k) for k in (2, 3)}, opts
    )
    assert ests[2].value <= 1e-6
    assert ests[3].value <= 1e-6


def test_shared_pool_keeps_profile_ordered():
    rng = np.random.default_rng(34)
    for i in range(3):
        g = rng.standard_normal((9, 3)) + 1j * rng.standard_normal((9, 3))
        m = g @ g.conj().T
        rho = make_density(m / np.trace(m).real)
        ests = minimize_roof(
            rho, {k: KConcurrenceMeasure(3, k) for k in (2, 3)}, FAST
        )
        assert ests[3].value <= ests[2].value + 1e-12


def test_seed_ensembles_join_the_pool():
    rng = np.random.default_rng(35)
    states = [random_pure(4, seed=350 + i) for i in range(3)]
    w = np.array([0.5, 0.3, 0.2])
    dec = Decomposition(weights=w, states=states)
    rho = dec.density()
    seed_avg = sum(
        wi * 2.0 * abs(np.linalg.det(s.amplitudes.reshape(2, 2)))
        for wi, s in zip(w, states)
    )
    est_no = minimize_roof(rho, {"c2": KConcurrenceMeasure(2, 2)}, RoofOptions(restarts=0))["c2"]
    est_seeded = minimize_roof(
        rho, {"c2": KConcurrenceMeasure(2, 2)}, RoofOptions(restarts=0), seeds=[dec]
    )["c2"]
    assert est_seeded.value <= min(seed_avg, est_no.value) + 1e-10


def test_bad_seed_rejected():
    rho = make_density(np.eye(4) / 4)
    other = Decomposition(
        weights=np.array([1.0]), states=[make_pure([1.0, 0.0, 0.0, 0.0])]
    )
    with pytest.raises(ValidationError):
        minimize_roof(rho, {"c2": KConcurrenceMeasure(2, 2)}, RoofOptions(restarts=0), seeds=[other])


def test_incoherent_mixture_has_zero_coherence_product():
    # diagonal state: the eigendecomposition itself is the certificate
    rho = make_density(np.diag([0.5, 0.3, 0.2]).astype(complex))
    est = minimize_roof(rho, {"ccn": CoherenceProductMeasure(3)}, RoofOptions(restarts=0))["ccn"]
    assert est.value == 0.0


def test_uniform_plus_basis_mixture_coherence_product():
    # 0.5 |+><+| + 0.5 |e1><e1| at d=2: construction ensemble averages to 0.5
    plus = make_pure([1.0, 1.0])
    e1 = make_pure([0.0, 1.0])
    rho = make_density(0.5 * plus.projector() + 0.5 * e1.projector())
    est = minimize_roof(
        rho, {"ccn": CoherenceProductMeasure(2)}, RoofOptions(restarts=12, seed=2)
    )["ccn"]
    assert est.value <= 0.5 + 1e-9
    # coarse grid over size-2 ensembles as an independent cross-check
    w, v = np.linalg.eigh(rho.matrix)
    b = np.sqrt(w)[:, None] * v.T.astype(complex)
    best_grid = np.inf
    for th in np.linspace(0.0, np.pi / 2, 91):
        c, s = np.cos(th), np.sin(th)
        for ph in np.linspace(0.0, 2 * np.pi, 91):
            u = np.array([[c, s * np.exp(1j * ph)], [-s * np.exp(-1j * ph), c]])
            rows = u @ b
            total = 0.0
            for row in rows:
                r2 = np.abs(row) ** 2
                total += 0.0 if np.any(r2 < 1e-30) else 2.0 * np.sqrt(r2[0] * r2[1])
            best_grid = min(best_grid, total)
    assert est.value <= best_grid + 1e-6
    assert est.value >= best_grid - 0.05


def test_pair_product_measure_on_pure_branch():
    psi = make_pure([np.sqrt(0.8), np.sqrt(0.2)])
    m = PairProductMeasure()
    val = m.numpy_total(psi.amplitudes[None, :])
    assert abs(val - 0.8) < 1e-12
