"""
Certifying map properties with seeded trials
============================================

Every check runs reproducible random trials; a failure always returns the
(seed, trial) pair plus a payload that replays the violation.  The classifier
at the end identifies a transformer among the four canonical rearrangements
or proves it is something else by exhibiting a witness.
"""

import numpy as np

import symmkit as sk
from symmkit.rearrange import layer_cake_rearrangement

grid = sk.centered_grid((32, 32), 1 / 8)
plane = sk.axis_plane(1, 2, 0.0, 1)
polar = lambda f: sk.polarize(f, plane)

# the two-point rearrangement passes everything
print("two-point rearrangement:")
print("  equimeasurable :", sk.check_equimeasurable(polar, trials=100, seed=7, grid=grid).verdict)
print("  monotonic      :", sk.check_monotonic(polar, trials=100, seed=7, grid=grid).verdict)
for p in (1, 2, np.inf):
    r = sk.check_lp_contracting(polar, p, trials=100, seed=7, grid=grid)
    print(f"  L^{p}-contracting:", r.verdict)
print("  modulus-reducing:", sk.check_modulus_reducing(polar, trials=15, seed=7, grid=grid).verdict)

# a broken map fails with a replayable counterexample
shift = lambda f: f.with_values(f.values + 1.0)
report = sk.check_equimeasurable(shift, trials=10, seed=7, grid=grid)
print("\nshift map equimeasurable:", report.verdict)
print("  counterexample payload:", {k: report.counterexample[k] for k in ("trial", "seed")})

# set maps get the full seven-property bundle
bundle = sk.check_setmap_properties(sk.polarization_set_map(plane), trials=60, seed=7, grid=grid)
print("\ntwo-point set map bundle:")
for name, r in bundle.items():
    print(f"  {name:22s}: {r.verdict}")

# classification: the four canonical maps are recognized; a sawtooth-driven
# transformer is provably different (watch the displaced-ball witness)
print("\nclassification:")
for label, T in {
    "identity": lambda f: f,
    "two-point": polar,
    "reflection": lambda f: sk.reflect_grid_function(f, plane),
}.items():
    got, _ = sk.classify_rearrangement(T, grid, plane, seed=0)
    print(f"  {label:10s} -> {got}")

saw_map = sk.chord_movement_set_map(sk.sawtooth_contraction(1.0, 8.0), axis=1, plane=plane)
saw_T = lambda f: layer_cake_rearrangement(saw_map, f)
got, witness = sk.classify_rearrangement(saw_T, grid, plane, seed=0)
print(f"  sawtooth   -> {got}, witness: ball at +0.75 lands at {witness['image_center']}")
