#!/usr/bin/env python3
"""Plane rotations, the off-norm, and the one-step decrement identity."""

import numpy as np

from cyclic_jacobi import SymMatrix, annihilate, off_norm, rotation_for_pivot

rng = np.random.default_rng(1)
raw = rng.uniform(-1, 1, (4, 4))
a = SymMatrix.from_dense((raw + raw.T) / 2)

print("A =")
print(a.to_dense())
print(f"off-norm S(A) = {off_norm(a):.6f}")

rot = rotation_for_pivot(a, 1, 3)
print(f"\nrotation for pivot (1,3): angle {rot.phi:+.6f} rad  (|phi| <= pi/4)")
print(f"cos = {rot.c:.6f}, sin = {rot.s:.6f}, c^2 + s^2 - 1 = {rot.c**2 + rot.s**2 - 1:.1e}")

out, _ = annihilate(a, 1, 3)
print("\nafter annihilating (1,3):")
print(out.to_dense())

drop = off_norm(a) ** 2 - off_norm(out) ** 2
print(f"\nS^2 drop          = {drop:.12f}")
print(f"squared pivot     = {a.entry(1, 3) ** 2:.12f}")
print(f"identity residual = {abs(drop - a.entry(1, 3) ** 2):.2e}")

ev_before = np.sort(np.linalg.eigvalsh(a.to_dense()))
ev_after = np.sort(np.linalg.eigvalsh(out.to_dense()))
print(f"\nspectrum drift under the congruence: {np.max(np.abs(ev_before - ev_after)):.2e}")
