"""Turning basis coherence into bipartite entanglement.

A state with coherence rank l, pushed through the fixed conversion circuit
with an incoherent ancilla, comes out with Schmidt rank exactly l. The
generated concurrences are bounded by coherence monotones of the input,
with sharp dimension-dependent prefactors. This script converts a few
states and checks the whole chain numerically.
"""

import numpy as np

from cohlab import (
    ccN_pure,
    coherence_concurrence_pure,
    coherence_rank,
    conversion_unitary,
    convert_pure,
    incoherent_channel,
    l1_coherence,
    maclaurin_chain,
    make_pure,
    prefactor_k2,
    prefactor_k3,
    random_pure,
    schmidt_rank,
    specht_ratio,
    theorem2_chain,
    theorem4_bounds,
)

rng = np.random.default_rng(42)
d = 4


def describe(name, amps):
    psi = make_pure(amps)
    out = convert_pure(psi)
    rep = maclaurin_chain(out)
    print(name)
    print("  coherence rank in:  %d" % coherence_rank(psi))
    print("  schmidt rank out:   %d" % schmidt_rank(out))
    chain = ["C_%d=%.6f" % (k, rep.k_values[k]) for k in sorted(rep.k_values)]
    print("  generated:", "  ".join(chain))
    cc = coherence_concurrence_pure(psi)
    c2 = rep.k_values[2]
    cap = prefactor_k2(d) * cc
    print("  pairwise-sum cap:   %.6f * %.6f = %.6f >= C_2 = %.6f"
          % (prefactor_k2(d), cc, cap, c2))
    assert cap >= c2 - 1e-12
    print()


describe("uniform superposition", np.ones(d) / 2.0)
describe("two amplitudes only", [0.8, 0.0, 0.6, 0.0])
describe("random full-rank", random_pure(d, seed=rng).amplitudes)

# the k=3 member gets its own prefactor; which cap is tighter flips with d
print("prefactors at d=4: k=2 %.6f, k=3 %.6f"
      % (prefactor_k2(d), prefactor_k3(d)))

# the mixed-state version of the same chain, certified end to end by one
# consistent pair of decompositions
rho = 0.5 * np.eye(d) / d + 0.5 * np.ones((d, d)) / d
outcome = theorem2_chain(rho, incoherent_channel([conversion_unitary(d)]))
print("\nmixed input: C_c cap %.6f, chain %s, ok=%s"
      % (outcome.bound,
         ["%.4f" % outcome.k_values[k] for k in sorted(outcome.k_values)],
         outcome.chain_ok))

# two-sided bounds for the d-th member: the geometric-mean monotone of the
# input pins the generated G-concurrence within a Specht-ratio window
psi = make_pure(0.35 + rng.random(d))
eps = float(np.min(np.abs(psi.amplitudes)))
rep = theorem4_bounds(psi, eps)
print("\nfloored random state (floor %.3f):" % eps)
print("  ccN of input:  %.6f" % ccN_pure(psi))
print("  generated G_d: %.6f" % rep.g_value)
print("  window:        [%.6f, %.6f]" % (rep.lower, rep.upper))
assert rep.lower - 1e-10 <= rep.g_value <= rep.upper + 1e-10

# the window collapses as the floor rises toward uniform amplitudes
print("  specht ratio at the floor: %.6f" % specht_ratio(eps))
print("  specht ratio at 0.999:     %.9f" % specht_ratio(0.999))

# for reference, the pairwise sum and the l1 mass agree on pure states
u = make_pure(np.ones(d) / 2.0)
print("\nuniform state: C_c = %.3f, l1 = %.3f (equal for pure states)"
      % (coherence_concurrence_pure(u), l1_coherence(u)))
