"""What amplitude amplification spends to find its targets.

Each search iteration rotates the state toward the target subspace. The
success probability climbs; the geometric-mean coherence monotone, which
starts at exactly 1 on the uniform state, drains to exactly 0 when the
rotation lands on the targets. The ratio of the two rates is the price of
probability in units of coherence.
"""

import numpy as np

from cohlab import (
    GroverParams,
    cost_performance,
    critical_iteration,
    grover_coherence_number,
    statevector_deviation,
    trajectory,
)

params = GroverParams(1024, 5)
crit = critical_iteration(params)
print("N=%d, m=%d: optimal stopping near r* = %.4f" %
      (params.n_items, params.n_targets, crit.r_star))
print()

print("  r      P(r)        ccN         number   w")
for pt in trajectory(params, 10):
    w = "    -" if pt.w is None else "%.4f" % pt.w
    print("  %-2d   %.6f   %.6f   %4d    %s"
          % (pt.r, pt.P, pt.ccN, pt.coherence_number, w))
print()

# boundary values are exact, not approximate
t0 = trajectory(params, 0)[0]
assert t0.ccN == 1.0 and t0.P == 5 / 1024

# a four-item search with one target lands exactly after one iteration
small = GroverParams(4, 1)
hit = critical_iteration(small)
print("N=4, m=1: integer landing at r = %d" % hit.r_int)
print("  P(1)   = %.1f" % trajectory(small, 1)[1].P)
print("  ccN(1) = %.1f" % trajectory(small, 1)[1].ccN)
print("  coherence number drops %d -> %d"
      % (grover_coherence_number(small, 0), grover_coherence_number(small, 1)))

# the closed form tracks a full 2^n-amplitude simulation to rounding error
for n in (2, 5, 10):
    dev = statevector_deviation(n, list(range(small.n_targets)), 3)
    print("  n=%2d qubits: closed form vs simulator %.1e" % (n, dev))
print()

# near P = 1 every extra percent of probability costs more coherence; the
# exact price and its large-N form stay within half a percent here
print("price of probability at selected P:")
for p in (0.1, 0.5, 0.9, 0.99, 1.0):
    cp = cost_performance(params, p)
    print("  P=%.2f: exact %.6f, asymptotic %.6f" %
          (p, cp.exact, cp.asymptotic))
