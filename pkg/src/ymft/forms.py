"""Differential forms on 4D Minkowski space with internal-vector-space values.

Components are jets (see :mod:`ymft.jets`), stored on the canonical basis of
strictly increasing index tuples, so antisymmetry is built into the storage.
The metric is diag(-1, 1, 1, 1) with orientation eps_{0123} = +1; all sign
tables derived from that choice are collected in :class:`MinkowskiConvention`
and documented in CONVENTIONS.md.

The epsilon-contraction duals that appear in component formulations of the
theories differ from the Hodge dual by a constant per degree (2 on 2-forms,
6 on 3-forms, from the absent 1/p! in the contraction).  All dynamical
formulas in this library are normalized so that the dual entering them *is*
the Hodge dual; :func:`epsilon_dual` therefore applies the frozen constants
stored on the convention (1.0 per degree), and the literal contraction
factors are kept alongside for reference and for the contraction oracle
tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .jets import NVARS, JetRing, JetScalar, jet_algebra

# Canonical ordered-component bases per form degree.
COMPS: dict[int, list[tuple[int, ...]]] = {
    p: list(itertools.combinations(range(NVARS), p)) for p in range(NVARS + 1)
}
COMP_INDEX = {p: {c: i for i, c in enumerate(COMPS[p])} for p in COMPS}

SIGNATURE = np.array([-1.0, 1.0, 1.0, 1.0])


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _sort_sign(seq):
    """(sorted tuple, permutation sign), or (None, 0) on repeated index."""
    if len(set(seq)) != len(seq):
        return None, 0
    return tuple(sorted(seq)), _perm_sign(seq)


def _hodge_table(p: int):
    """Per ordered p-component: (complement component index, sign).

    *(dx^I) = eta^{i1 i1}...eta^{ip ip} sgn(I, I^c) dx^{I^c} for increasing I.
    """
    table = []
    for comp in COMPS[p]:
        rest = tuple(i for i in range(NVARS) if i not in comp)
        sign = _perm_sign(comp + rest)
        for i in comp:
            sign *= SIGNATURE[i]
        table.append((COMP_INDEX[NVARS - p][rest], float(sign)))
    return table

HODGE_TABLE = {p: _hodge_table(p) for p in range(NVARS + 1)}

# *^2 on p-forms for this signature: (-1, +1, -1, +1, -1).
HODGE_SQUARE_SIGN = {p: HODGE_TABLE[NVARS - p][HODGE_TABLE[p][i][0]][1]
                        * HODGE_TABLE[p][i][1]
                     for p in range(NVARS + 1)
                     for i in [0]}


def _wedge_table(p: int, q: int):
    table = []
    for i, ci in enumerate(COMPS[p]):
        for j, cj in enumerate(COMPS[q]):
            merged, sign = _sort_sign(ci + cj)
            if sign:
                table.append((i, j, COMP_INDEX[p + q][merged], float(sign)))
    return table

WEDGE_TABLE = {(p, q): _wedge_table(p, q)
               for p in range(NVARS + 1) for q in range(NVARS + 1)
               if p + q <= NVARS}


def _d_table(p: int):
    table = []
    for i, ci in enumerate(COMPS[p]):
        for mu in range(NVARS):
            merged, sign = _sort_sign((mu,) + ci)
            if sign:
                table.append((mu, i, COMP_INDEX[p + 1][merged], float(sign)))
    return table

D_TABLE = {p: _d_table(p) for p in range(NVARS)}


@dataclass(frozen=True)
class MinkowskiConvention:
    """Signature, orientation and dual-normalization bookkeeping."""

    signature: tuple[float, float, float, float] = (-1.0, 1.0, 1.0, 1.0)
    orientation: float = 1.0  # eps_{0123}
    # Frozen normalization of the dual entering every dynamical formula,
    # relative to the Hodge dual.  Pinned by the nonlinear identity suite.
    epsilon_dual_constants: dict = field(
        default_factory=lambda: {2: 1.0, 3: 1.0})
    # Literal epsilon-contraction factors (no 1/p!), kept for reference.
    literal_contraction_factors: dict = field(
        default_factory=lambda: {2: 2.0, 3: 6.0})

    def hodge_square_signs(self) -> dict:
        return dict(HODGE_SQUARE_SIGN)

    def as_report_header(self) -> dict:
        return {
            "signature": list(self.signature),
            "orientation_eps0123": self.orientation,
            "hodge_square_signs": {str(p): HODGE_SQUARE_SIGN[p]
                                   for p in range(NVARS + 1)},
            "epsilon_dual_constants": {str(k): v for k, v in
                                       sorted(self.epsilon_dual_constants.items())},
            "literal_contraction_factors": {str(k): v for k, v in
                                            sorted(self.literal_contraction_factors.items())},
        }

CONVENTION = MinkowskiConvention()


class JetOrderExhausted(ValueError):
    pass


class LieForm:
    """Internal-vector-space-valued p-form with jet components.

    ``comps`` has shape (internal dim, #ordered p-components, ring width).
    ``order`` is the valid jet order shared by all components; exterior
    derivatives lower it, products take the minimum.
    """

    __slots__ = ("ring", "p", "n", "comps", "order")

    def __init__(self, ring: JetRing, p: int, comps: np.ndarray,
                 order: int | None = None):
        self.ring = ring
        self.p = p
        comps = np.asarray(comps, dtype=float)
        if comps.ndim != 3 or comps.shape[1] != len(COMPS[p]) \
                or comps.shape[2] != ring.width:
            raise ValueError("component array has wrong shape")
        self.n = comps.shape[0]
        self.comps = comps
        self.order = ring.degree if order is None else order

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, ring: JetRing, p: int, n: int, order: int | None = None):
        return cls(ring, p, ring.zeros((n, len(COMPS[p]))), order)

    @classmethod
    def basis(cls, ring: JetRing, p: int, n: int, a: int, comp: int,
              value: float = 1.0):
        """Constant basis form value * e_a dx^comp."""
        comps = ring.zeros((n, len(COMPS[p])))
        comps[a, comp] = ring.const(value)
        return cls(ring, p, comps)

    @classmethod
    def from_scalars(cls, p: int, table):
        """Build from a nested [internal][component] list of JetScalar."""
        degree = table[0][0].algebra.degree
        ring = JetRing(degree)
        n = len(table)
        comps = ring.zeros((n, len(COMPS[p])))
        order = degree
        for a in range(n):
            for i in range(len(COMPS[p])):
                comps[a, i] = table[a][i].coeffs
                order = min(order, table[a][i].order)
        return cls(ring, p, comps, order)

    # -- ring plumbing -----------------------------------------------------

    def _like(self, comps, order):
        return LieForm(self.ring, self.p, comps, order)

    def copy(self):
        return self._like(self.comps.copy(), self.order)

    def scalar(self, a: int = 0, comp: int = 0) -> JetScalar:
        """One component as a JetScalar (base block for nilpotent rings)."""
        block = self.ring.base_block(self.comps[a, comp])
        return JetScalar(jet_algebra(self.ring.degree), block, self.order)

    def __add__(self, other: "LieForm") -> "LieForm":
        if other.p != self.p or other.n != self.n:
            raise ValueError("form shape mismatch")
        return self._like(self.comps + other.comps,
                          min(self.order, other.order))

    def __sub__(self, other: "LieForm") -> "LieForm":
        return self + (-other)

    def __neg__(self):
        return self._like(-self.comps, self.order)

    def scale(self, s: float) -> "LieForm":
        return self._like(self.comps * s, self.order)

    # -- calculus ----------------------------------------------------------

    def d(self) -> "LieForm":
        if self.p >= NVARS:
            raise ValueError("cannot apply d to a top-degree form")
        if self.order < 1:
            raise JetOrderExhausted("jet order exhausted by exterior derivative")
        out = self.ring.zeros((self.n, len(COMPS[self.p + 1])))
        for mu, i, k, sign in D_TABLE[self.p]:
            out[:, k] += sign * self.ring.diff(self.comps[:, i], mu)
        return LieForm(self.ring, self.p + 1, out, self.order - 1)

    def wedge(self, other: "LieForm", pairing: np.ndarray) -> "LieForm":
        """Pairing-valued wedge product.

        ``pairing[c, a, b]`` multiplies self^a wedge other^b into slot c of
        the output; use shape (1, n, m) for real-valued pairings.
        """
        if self.p + other.p > NVARS:
            raise ValueError("wedge degree overflow")
        pairing = np.asarray(pairing, dtype=float)
        if pairing.shape[1] != self.n or pairing.shape[2] != other.n:
            raise ValueError("pairing shape mismatch")
        ring = self.ring
        n_out = pairing.shape[0]
        out = ring.zeros((n_out, len(COMPS[self.p + other.p])))
        for i, j, k, sign in WEDGE_TABLE[(self.p, other.p)]:
            prod = ring.mul(self.comps[:, None, i], other.comps[None, :, j])
            out[:, k] += sign * np.einsum("cab,ab...->c...", pairing, prod)
        return LieForm(ring, self.p + other.p, out,
                       min(self.order, other.order))

    def hodge(self, conv: MinkowskiConvention = CONVENTION) -> "LieForm":
        out = self.ring.zeros((self.n, len(COMPS[NVARS - self.p])))
        for i, (k, sign) in enumerate(HODGE_TABLE[self.p]):
            out[:, k] = sign * self.comps[:, i]
        return LieForm(self.ring, NVARS - self.p, out, self.order)

    def interior(self, oneform: "LieForm", pairing: np.ndarray) -> "LieForm":
        """Contract a metric-raised 1-form into the first slot of this form.

        Returns the (p-1)-form with components eta^{nu sigma} x_nu
        self_{sigma mu2...}, paired over internal indices.
        """
        if self.p < 1 or oneform.p != 1:
            raise ValueError("interior product needs a 1-form and p >= 1")
        ring = self.ring
        pairing = np.asarray(pairing, dtype=float)
        out = ring.zeros((pairing.shape[0], len(COMPS[self.p - 1])))
        for i, ci in enumerate(COMPS[self.p]):
            for pos, sigma in enumerate(ci):
                rest = ci[:pos] + ci[pos + 1:]
                k = COMP_INDEX[self.p - 1][rest]
                sign = (-1.0) ** pos * SIGNATURE[sigma]
                prod = ring.mul(oneform.comps[:, None, sigma],
                                self.comps[None, :, i])
                out[:, k] += sign * np.einsum("cab,ab...->c...", pairing, prod)
        return LieForm(ring, self.p - 1, out, min(self.order, oneform.order))

    # -- component access --------------------------------------------------

    def tensor_component(self, indices: tuple[int, ...]) -> np.ndarray:
        """Antisymmetric tensor component T_{mu1..mup} (ring coefficients)."""
        merged, sign = _sort_sign(indices)
        if sign == 0:
            return self.ring.zeros((self.n,))
        return sign * self.comps[:, COMP_INDEX[self.p][merged]]

    def max_abs(self) -> float:
        """Largest coefficient magnitude within the valid jet order."""
        if self.order < 0:
            raise JetOrderExhausted("jet order exhausted")
        mask = self.ring.mask_up_to(self.order)
        if not self.comps.size:
            return 0.0
        return float(np.abs(self.comps[..., mask]).max())


def epsilon_dual(f: LieForm, kind: str,
                 conv: MinkowskiConvention = CONVENTION) -> LieForm:
    """The dual used by the field-strength formulas, c_p * Hodge.

    ``kind`` is '2form' or '3form' and must match the degree of ``f``.
    The constants c_p are the frozen normalizations on ``conv``.
    """
    degree = {"2form": 2, "3form": 3}.get(kind)
    if degree is None:
        raise ValueError(f"unknown dual kind {kind!r}")
    if f.p != degree:
        raise ValueError(f"epsilon_dual kind {kind!r} needs a {degree}-form")
    return f.hodge(conv).scale(conv.epsilon_dual_constants[degree])


def literal_epsilon_contraction(f: LieForm,
                                conv: MinkowskiConvention = CONVENTION) -> LieForm:
    """Raw eps_{...}{}^{...} contraction without 1/p! (oracle reference)."""
    return f.hodge(conv).scale(conv.literal_contraction_factors[f.p])


def scalar_pairing(metric: np.ndarray) -> np.ndarray:
    """Wrap an inner-product matrix as a real-valued wedge pairing."""
    return np.asarray(metric, dtype=float)[None, :, :]


def volume_coefficient(f: LieForm) -> JetScalar:
    """Coefficient of dx^0^dx^1^dx^2^dx^3 of a real-valued 4-form."""
    if f.p != NVARS or f.n != 1:
        raise ValueError("expected a real-valued 4-form")
    return f.scalar(0, 0)


def random_field_config(seed: int, amplitude: float, degree: int,
                        dim_a: int, dim_b: int,
                        ring: JetRing | None = None):
    """Reproducible random (A, B) pair: degree-1 and degree-2 forms.

    Coefficients are uniform in [-amplitude, amplitude]; the default
    amplitude 0.1 keeps the strength operator well conditioned.
    """
    if amplitude < 0:
        raise ValueError("amplitude must be >= 0")
    rng = np.random.default_rng(seed)
    ring = ring or JetRing(degree)
    base = JetRing(degree)
    a_co = rng.uniform(-amplitude, amplitude,
                       (dim_a, len(COMPS[1]), base.width))
    b_co = rng.uniform(-amplitude, amplitude,
                       (dim_b, len(COMPS[2]), base.width))
    if isinstance(ring, JetRing) and ring.blocks == 1:
        return LieForm(ring, 1, a_co), LieForm(ring, 2, b_co)
    return (LieForm(ring, 1, np.stack([ring.promote(c) for c in a_co])),
            LieForm(ring, 2, np.stack([ring.promote(c) for c in b_co])))


def random_gauge_params(seed: int, amplitude: float, degree: int,
                        dim_a: int, dim_b: int, ring: JetRing | None = None):
    """Reproducible random gauge parameters (xi 0-form on A, chi 1-form on A')."""
    rng = np.random.default_rng(seed)
    ring = ring or JetRing(degree)
    base = JetRing(degree)
    xi_co = rng.uniform(-amplitude, amplitude, (dim_a, 1, base.width))
    chi_co = rng.uniform(-amplitude, amplitude,
                         (dim_b, len(COMPS[1]), base.width))
    if ring.blocks == 1:
        return LieForm(ring, 0, xi_co), LieForm(ring, 1, chi_co)
    return (LieForm(ring, 0, np.stack([ring.promote(c) for c in xi_co])),
            LieForm(ring, 1, np.stack([ring.promote(c) for c in chi_co])))


def promote_form(f: LieForm, ring, tangent: LieForm | None = None,
                 direction: int = 0) -> LieForm:
    """Lift a base-ring form into a nilpotent-extension ring.

    ``tangent`` seeds the given direction block, giving f + eps * tangent.
    """
    comps = np.stack([
        ring.promote(f.comps[a]) for a in range(f.n)
    ])
    order = f.order
    if tangent is not None:
        blocks = comps.reshape(f.n, comps.shape[1], ring.blocks, ring.base_width)
        blocks[:, :, 1 + direction, :] = tangent.comps
        order = min(order, tangent.order)
    return LieForm(ring, f.p, comps, order)


def direction_part(f: LieForm, base_ring: JetRing, i: int = 0) -> LieForm:
    """Extract direction block i of a nilpotent-ring form as a base form."""
    ring = f.ring
    comps = np.stack([ring.direction_block(f.comps[a], i) for a in range(f.n)])
    return LieForm(base_ring, f.p, comps, f.order)


def base_part(f: LieForm, base_ring: JetRing) -> LieForm:
    comps = np.stack([f.ring.base_block(f.comps[a]) for a in range(f.n)])
    return LieForm(base_ring, f.p, comps, f.order)
