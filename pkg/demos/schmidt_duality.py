"""Two routes to the same entanglement number.

The k-concurrence of a pure bipartite state can be read off the Schmidt
coefficients, or computed from the k-th compound matrix of the amplitude
matrix without ever diagonalizing. This script runs both routes side by
side and shows the ordered chain they produce.
"""

import numpy as np

from cohlab import (
    as_bipartite,
    k_concurrence_pure,
    k_concurrence_via_compound,
    maclaurin_chain,
    random_pure,
    schmidt_coefficients,
    schmidt_rank,
)

rng = np.random.default_rng(7)

d = 4
psi = as_bipartite(random_pure(d * d, seed=rng).amplitudes)

print("random pure state on a %dx%d system" % (d, d))
print("schmidt coefficients:", np.round(schmidt_coefficients(psi), 6))
print("schmidt rank:", schmidt_rank(psi))
print()

print(" k   via schmidt      via compound     |gap|")
for k in range(2, d + 1):
    a = k_concurrence_pure(psi, k)
    b = k_concurrence_via_compound(psi, k)
    print(" %d   %.12f   %.12f   %.1e" % (k, a, b, abs(a - b)))
print()

# the chain C_2 >= C_3 >= ... >= C_d is the product-mean ordering
report = maclaurin_chain(psi)
chain = [report.k_values[k] for k in sorted(report.k_values)]
print("chain:", " >= ".join("%.6f" % c for c in chain))
assert all(x >= y - 1e-12 for x, y in zip(chain, chain[1:]))

# a product state kills every member at once
product = np.zeros((d, d))
product[0, 0] = 1.0
print("\nproduct state chain:",
      [round(v, 12) for v in maclaurin_chain(product).k_values.values()])

# planting a rank cuts the chain exactly at that rank
for rank in range(1, d + 1):
    diag = np.zeros((d, d))
    diag[np.arange(rank), np.arange(rank)] = 1.0 / np.sqrt(rank)
    vals = maclaurin_chain(diag).k_values
    alive = [k for k in sorted(vals) if vals[k] > 1e-9]
    print("rank %d: nonzero members %s" % (rank, alive))
