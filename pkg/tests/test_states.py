import json

import numpy as np
import pytest

from cohlab.errors import ArgumentError, ValidationError
from cohlab.states import (
    Decomposition,
    DensityMatrix,
    PureState,
    apply_channel,
    apply_selective,
    as_density,
    as_pure,
    attach_ancilla,
    attach_ancilla_pure,
    density_from,
    density_from_json,
    density_to_json,
    incoherent_channel,
    load_state,
    make_density,
    make_pure,
    pure_from_json,
    pure_to_json,
    purity,
    random_density,
    random_incoherent_channel,
    random_pure,
    save_state,
)


def test_make_pure_normalizes_frozen_example():
    p = make_pure([3.0, 4.0j])
    assert np.allclose(p.amplitudes, [0.6, 0.8j], atol=1e-15)
    assert abs(np.linalg.norm(p.amplitudes) - 1.0) < 1e-15


def test_make_pure_rejects_zero_vector():
    with pytest.raises(ValidationError):
        make_pure([0.0, 0.0])


def test_as_pure_rejects_unnormalized():
    with pytest.raises(ValidationError):
        as_pure([1.0, 1.0])


def test_mixture_frozen_example():
    # 0.3 |+><+| + 0.7 |e0><e0| keeps off-diagonal 0.15
    plus = make_pure([1.0, 1.0])
    e0 = make_pure([1.0, 0.0])
    rho = density_from(Decomposition(weights=np.array([0.3, 0.7]), states=[plus, e0]))
    expect = np.array([[0.85, 0.15], [0.15, 0.15]])
    assert np.allclose(rho.matrix, expect, atol=1e-12)


def test_make_density_clamps_dust_but_rejects_real_negativity():
    m = np.diag([1.0 + 5e-11, -5e-11]).astype(complex)
    rho = make_density(m)
    assert np.min(np.linalg.eigvalsh(rho.matrix)) >= 0.0
    assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12
    with pytest.raises(ValidationError):
        make_density(np.diag([1.0 + 1e-6, -1e-6]))
    with pytest.raises(ValidationError):
        make_density(np.array([[0.5, 0.5], [0.1, 0.5]]))


def test_decomposition_reconstructs_target():
    rng = np.random.default_rng(11)
    states = [random_pure(4, rng) for _ in range(5)]
    w = rng.uniform(0.1, 1.0, size=5)
    w /= w.sum()
    rho = density_from(Decomposition(weights=w, states=states))
    manual = sum(wi * s.projector() for wi, s in zip(w, states))
    assert np.linalg.norm(rho.matrix - manual) < 1e-8


def test_random_pure_seeded_and_normalized():
    a = random_pure(6, 42)
    b = random_pure(6, 42)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert abs(np.linalg.norm(a.amplitudes) - 1.0) < 1e-12


def test_random_density_rank_and_admission():
    rho = random_density(5, rank=2, seed=3)
    w = np.linalg.eigvalsh(rho.matrix)
    assert np.sum(w > 1e-10) == 2
    assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12
    with pytest.raises(ArgumentError):
        random_density(3, rank=4)


def test_random_density_mean_purity_matches_monte_carlo_oracle():
    # Independent oracle: re-sample normalized Wishart by hand with its own
    # generator and compare the two purity means within 3 combined sigma.
    n = 3000
    vals = np.array([purity(random_density(4, 4, seed=1000 + i)) for i in range(n)])
    rng = np.random.default_rng(999)
    oracle = np.empty(n)
    for i in range(n):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        m = g @ g.conj().T
        m /= np.trace(m).real
        oracle[i] = np.trace(m @ m).real
    sigma = np.sqrt(vals.var() / n + oracle.var() / n)
    assert abs(vals.mean() - oracle.mean()) < 3 * sigma


def test_random_incoherent_channel_structure():
    ch = random_incoherent_channel(4, 3, seed=5)
    assert len(ch.kraus) == 3
    acc = sum(k.conj().T @ k for k in ch.kraus)
    assert np.max(np.abs(acc - np.eye(4))) < 1e-12
    for k in ch.kraus:
        assert np.all(np.sum(np.abs(k) > 1e-12, axis=0) <= 1)


def test_single_kraus_channel_is_permutation_phase_unitary():
    ch = random_incoherent_channel(5, 1, seed=6)
    k = ch.kraus[0]
    assert np.max(np.abs(k.conj().T @ k - np.eye(5))) < 1e-12
    assert np.allclose(np.sort(np.abs(k[np.abs(k) > 1e-12])), np.ones(5), atol=1e-12)


def test_incoherent_channels_preserve_diagonal_states():
    rng = np.random.default_rng(7)
    worst = 0.0
    for i in range(100):
        ch = random_incoherent_channel(4, int(rng.integers(1, 5)), seed=2000 + i)
        for _ in range(100):
            p = rng.dirichlet(np.ones(4))
            out = apply_channel(ch, np.diag(p).astype(complex)).matrix
            off = out - np.diag(np.diag(out))
            worst = max(worst, float(np.max(np.abs(off))))
    assert worst <= 1e-12


def test_incoherent_channel_validation_errors():
    # column with two nonzero entries
    bad = [np.array([[1.0, 0.0], [1.0, 0.0]]) / np.sqrt(2), np.array([[0.0, 1.0], [0.0, 0.0]])]
    with pytest.raises(ValidationError):
        incoherent_channel(bad)
    # not trace preserving
    with pytest.raises(ValidationError):
        incoherent_channel([np.diag([1.0, 0.5])])


def test_apply_selective_drops_zero_probability_branches():
    k1 = np.array([[1.0, 0.0], [0.0, 0.0]])
    k2 = np.array([[0.0, 1.0], [0.0, 0.0]])
    ch = incoherent_channel([k1, k2])
    out = apply_selective(ch, make_pure([1.0, 0.0]))
    assert len(out) == 1
    p, rho = out[0]
    assert abs(p - 1.0) < 1e-12
    assert np.allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-12)


def test_apply_selective_probabilities_sum_to_one():
    rng = np.random.default_rng(8)
    for i in range(20):
        ch = random_incoherent_channel(3, 3, seed=300 + i)
        rho = random_density(3, seed=400 + i)
        out = apply_selective(ch, rho)
        assert abs(sum(p for p, _ in out) - 1.0) < 1e-9


def test_attach_ancilla_embeds_in_first_block_positions():
    rho = random_density(3, seed=9)
    big = attach_ancilla(rho)
    assert big.dim == 9
    # entry (i,j) of rho lands at (3i, 3j); all other entries vanish
    idx = np.arange(3) * 3
    assert np.allclose(big.matrix[np.ix_(idx, idx)], rho.matrix, atol=1e-12)
    mask = np.ones((9, 9), dtype=bool)
    mask[np.ix_(idx, idx)] = False
    assert np.max(np.abs(big.matrix[mask])) < 1e-15


def test_attach_ancilla_pure_matches_density_version():
    psi = random_pure(3, seed=10)
    joint = attach_ancilla_pure(psi)
    assert joint.dim == 9
    assert np.linalg.norm(joint.projector() - attach_ancilla(psi).matrix) < 1e-12


def test_purity_extremes():
    assert abs(purity(random_pure(4, 1)) - 1.0) < 1e-12
    assert abs(purity(np.eye(4) / 4) - 0.25) < 1e-14


# ---------------------------------------------------------------------------
# JSON I/O
# ---------------------------------------------------------------------------


def test_pure_json_roundtrip(tmp_path):
    p = random_pure(4, seed=12)
    path = tmp_path / "pure.json"
    save_state(p, path)
    q = load_state(path)
    assert isinstance(q, PureState)
    assert np.allclose(p.amplitudes, q.amplitudes, atol=1e-15)


def test_density_json_roundtrip(tmp_path):
    rho = random_density(3, 2, seed=13)
    path = tmp_path / "rho.json"
    save_state(rho, path)
    back = load_state(path)
    assert isinstance(back, DensityMatrix)
    assert np.linalg.norm(back.matrix - rho.matrix) < 1e-9


def test_pure_json_schema_errors():
    good = pure_to_json(make_pure([1.0, 0.0]))
    with pytest.raises(ValidationError):
        pure_from_json({**good, "extra": 1})
    with pytest.raises(ValidationError):
        pure_from_json({"dim": 3, "amplitudes": good["amplitudes"]})
    with pytest.raises(ValidationError):
        pure_from_json({"dim": 2, "amplitudes": [[1.0, 0.0], ["x", 0.0]]})
    with pytest.raises(ValidationError):
        pure_from_json({"dim": 2, "amplitudes": [[1.0], [0.0, 0.0]]})
    with pytest.raises(ValidationError):
        pure_from_json({"dim": 2, "amplitudes": [[1.0, 0.0], [1.0, 0.0]]})  # unnormalized


def test_density_json_schema_errors():
    good = density_to_json(make_density(np.eye(2) / 2))
    with pytest.raises(ValidationError):
        density_from_json({"dim": 2, "matrix": good["matrix"][:1]})
    bad = [row[:] for row in good["matrix"]]
    bad[0][0] = [1.0, "i"]
    with pytest.raises(ValidationError):
        density_from_json({"dim": 2, "matrix": bad})
    with pytest.raises(ValidationError):
        density_from_json({"dim": 2, "matrix": [[[1.0, 0.0], [0.9, 0.0]], [[0.9, 0.0], [0.0, 0.0]]]})


def test_load_state_bad_file(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(ValidationError):
        load_state(path)
    with pytest.raises(ValidationError):
        load_state(tmp_path / "missing.json")
    (tmp_path / "odd.json").write_text(json.dumps({"dim": 2}))
    with pytest.raises(ValidationError):
        load_state(tmp_path / "odd.json")


def test_as_density_accepts_vectors_and_projects():
    rho = as_density(np.array([1.0, 0.0, 0.0]) + 0j)
    assert rho.dim == 3
    assert abs(rho.matrix[0, 0] - 1.0) < 1e-15
