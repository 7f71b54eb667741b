"""Continuously deforming a non-rigid probabilistic structure.

The SU(3)-adjoint orbit of a generic diagonal reference has a two-dimensional
torus-fixed subspace, so the reference can be rotated inside that plane
without changing the dynamical group or stabilizer.  Each parameter t gives
an inequivalent structure; the estimated distance from the base grows
linearly in t and stays inside the first-order window.  A rigid structure
(rank-one fixed space) refuses to build a path at all.
"""

import gptforge as gf
from gptforge import deformation as dm
from gptforge import state_space as ss

base = ss.deformable_structure([0.5, 0.3, 0.2], 2000, 0)
path = dm.make_deformation_path(base)
print("base reference (su(3) coordinates):", base.reference.round(4))
print("rotation plane second axis:       ", path.w2.round(4))

rows = dm.deformation_sweep(base, [0.0, 0.02, 0.05, 0.1], rng=0)
print()
print(dm.sweep_csv(rows))

print("The window 0.2 t <= estimate <= 2 t + 0.02 holds on the sweep:")
for row in rows[1:]:
    t, est = row["t"], row["d_sym_estimate"]
    print(f"  t = {t}: estimate {est:.4f} in [{0.2 * t:.4f}, {2 * t + 0.02:.4f}]")

print("\nA Gelfand stabilizer leaves no room to deform:")
quartic = ss.quartic_structure(2, 200, 0)
try:
    dm.make_deformation_path(quartic)
except gf.DomainError as err:
    print(f"  quartic k = 2: {err}")
