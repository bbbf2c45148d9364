"""The coefficient algebra: which first-order couplings make a gauge theory.

A deformation set holds the coupling tensors (a, b, j, k, e) and the mass
tensor.  Consistency of the deformed gauge theory imposes a fixed list of
linear and quadratic relations on them; this script builds the named
families, shows they pass everything, and shows how single perturbations
get caught.
"""

import numpy as np

from ymft import lie_core
from ymft.deformations import (check_all_relations, check_e_mass_obstruction,
                               check_quadratic_relations, family_e_only,
                               family_general, family_solvable, family_su2,
                               make_deformation, parity_grade)
from ymft.lie_core import InternalSpace

rng = np.random.default_rng(3)
e_sym = rng.uniform(-1, 1, (2, 3, 3))
e_sym = e_sym + e_sym.transpose(0, 2, 1)

families = {
    "three-dim compact, massive m=2": family_su2(2.0, 0.5),
    "three-dim compact, massless": family_su2(0.0, 0.7),
    "solvable second sector": family_solvable(
        [1, 0, 0], [0, 0, 1], np.array([[0, 0, 0], [0, 0, 1.0],
                                        [0, -1.0, 0]])),
    "opposite parity (e only)": family_e_only(e_sym),
    "mixed massless + massive": family_general(
        massless_a=lie_core.su2(), massless_b=lie_core.su2(),
        h0=np.eye(3), massive=lie_core.abelian(1), mass_value=1.5),
}

print("constraint suite over the built-in families")
for name, ds in families.items():
    report = check_all_relations(ds, tol=1e-12)
    print(f"  {name:34s} parity={parity_grade(ds):5s} "
          f"max residual={report.max_residual:.1e} passed={report.passed}")

# --- the coupling scale is forced in the massive family ---------------------

print("\nthe massive family only works with the coupling tied to the mass:")
try:
    family_su2(2.0, 0.3)
except ValueError as exc:
    print("  family_su2(2.0, 0.3) ->", exc)

# --- single perturbations are detected ---------------------------------------

print("\nperturbing one tensor component by 0.1:")
base = family_su2(2.0, 0.5)
for name in "abjk":
    tensors = {n: getattr(base, n).copy() for n in "abjke"}
    tensors[name][0, 1, 2] += 0.1
    ds = make_deformation(base.space_a, base.space_b, tensors["a"],
                          tensors["b"], tensors["j"], tensors["k"],
                          tensors["e"], base.mass.m, validate=False)
    failing = [r.name for r in check_quadratic_relations(ds).failing()]
    print(f"  {name} + 0.1  ->  failing quadratic relations: {failing}")

# --- the e-coupling refuses a mass tensor ------------------------------------

z = np.zeros((3, 3, 3))
e3 = rng.uniform(-1, 1, (3, 3, 3))
e3 = e3 + e3.transpose(0, 2, 1)
with_mass = make_deformation(InternalSpace(3), InternalSpace(3),
                             z, z, z, z, e3, np.eye(3))
print("\ne-coupling against a unit mass tensor is obstructed:",
      not check_e_mass_obstruction(with_mass))
