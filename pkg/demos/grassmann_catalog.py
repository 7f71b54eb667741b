"""Spherical representations of unitary Grassmannians, typed and counted.

For pure states given by k-planes in C^(m+n), the probabilistic structures
correspond to partitions built from weakly decreasing integer tuples; every
one of them is palindromic in Dynkin indices and therefore carries a real
structure.  The two-point homogeneous catalog and the quartic reference
state round out the constructions.
"""

import numpy as np

import gptforge as gf
from gptforge import compact_rep as cr

for m, n, cap in ((1, 1, 2), (1, 2, 2), (2, 2, 2)):
    audit = gf.spherical_reality_audit(m, n, cap)
    print(f"Gr({m}, C^{m + n}) spherical partitions with b1 <= {cap}:")
    for row in audit.rows:
        print(f"  lambda = {row.partition}, Dynkin {row.dynkin}, "
              f"dim {row.dim}, {row.type}")
    print()

print("Two-point homogeneous spaces (all Gelfand pairs):")
for entry in gf.two_point_catalog():
    print(f"  {entry.space:6s} = {entry.coset}")

print("\nQuartic reference state for k = 2 under SU(4):")
rho = gf.quartic_reference(2)
print(rho)
print(f"trace = {np.trace(rho):.0f}, idempotent: "
      f"{np.array_equal(rho @ rho, rho)}")
h = cr.subgroup_samples(cr.su_adjoint(4), cr.block_subgroup(2, 2), 3, 0)
drift = max(np.max(np.abs(u @ rho @ u.conj().T - rho)) for u in h)
print(f"stabilizer invariance drift over sampled block unitaries: {drift:.2e}")
