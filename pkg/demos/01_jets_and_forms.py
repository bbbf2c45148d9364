"""Jets and exterior calculus: the substrate for every identity check.

A "jet" is a Taylor polynomial in the four coordinates x^0..x^3, truncated
at a total degree.  Products and derivatives of jets are exact, so any
differential identity between local field expressions becomes a statement
about finitely many coefficients -- checkable to machine precision on
random data.  This script walks through the basic objects.
"""

import numpy as np

from ymft.forms import COMPS, LieForm, random_field_config
from ymft.jets import JetRing, JetScalar

rng = np.random.default_rng(0)

# --- scalar jets -----------------------------------------------------------

f = JetScalar.random(rng, 0.5, degree=3)
g = JetScalar.random(rng, 0.5, degree=3)

print("jet arithmetic at truncation degree 3")
print("  (f*g)*h - f*(g*h):", ((f * g) * f - f * (g * f)).max_abs())
print("  d_0 d_1 f - d_1 d_0 f:",
      np.abs((f.diff(0).diff(1) - f.diff(1).diff(0)).coeffs).max())

x0 = JetScalar.coordinate(0)
x1 = JetScalar.coordinate(1)
print("  (x0*x1) evaluated at (2,3,0,0):", (x0 * x1)((2.0, 3.0, 0.0, 0.0)))

# --- Lie-algebra-valued forms ----------------------------------------------

# a random 1-form A and 2-form B with three internal components each
A, B = random_field_config(seed=7, amplitude=0.2, degree=3,
                           dim_a=3, dim_b=3)

print("\nexterior calculus on random jet forms")
print("  d(dA) max coefficient:", A.d().d().max_abs())

eps = np.zeros((3, 3, 3))
for i in range(3):
    eps[i, (i + 1) % 3, (i + 2) % 3] = 1.0
    eps[i, (i + 2) % 3, (i + 1) % 3] = -1.0

w = A.wedge(B, eps)          # bracket-valued wedge, a 3-form
leibniz = w.d() - A.d().wedge(B, eps) + A.wedge(B.d(), eps)
print("  Leibniz d(A^B) - dA^B + A^dB:", leibniz.max_abs())

# --- Hodge dual and its signs ----------------------------------------------

print("\nHodge dual with signature (-,+,+,+), orientation eps_0123 = +1")
for p in range(5):
    basis = LieForm.basis(JetRing(3), p, 1, 0, 0)
    sq = basis.hodge().hodge()
    print(f"  *^2 on {p}-forms: {sq.comps[0, 0, 0]:+.0f}")

dx0 = LieForm.basis(JetRing(3), 1, 1, 0, 0)
print("  *(dx^0) components (expect -dx^1^dx^2^dx^3):",
      dict(zip(COMPS[3], dx0.hodge().comps[0, :, 0])))
