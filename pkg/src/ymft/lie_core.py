"""Internal-vector-space algebra: brackets, inner products, mass tensor.

All objects are basis components: brackets are rank-3 arrays, maps are
matrices.  The bracket convention is [e_b, e_c] = c^a_{bc} e_a throughout
(see CONVENTIONS.md), and indices are raised and lowered with the explicit
inner products of the spaces involved -- never with an implicit identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

NONDEGENERACY_RTOL = 1e-10


@dataclass(frozen=True)
class InternalSpace:
    """A real inner-product space carrying Lie-algebra-valued fields."""

    dim: int
    inner_product: np.ndarray = None
    positive_definite: bool = field(default=None)

    def __post_init__(self):
        g = self.inner_product
        g = np.eye(self.dim) if g is None else np.asarray(g, dtype=float)
        if g.shape != (self.dim, self.dim):
            raise ValueError("inner product has wrong shape")
        if not np.allclose(g, g.T, atol=1e-13):
            raise ValueError("inner product must be symmetric")
        scale = max(np.abs(g).max(), 1.0)
        if abs(np.linalg.det(g)) <= NONDEGENERACY_RTOL * scale ** self.dim:
            raise ValueError("inner product is degenerate")
        object.__setattr__(self, "inner_product", g)
        if self.positive_definite is None:
            object.__setattr__(self, "positive_definite",
                               bool(np.all(np.linalg.eigvalsh(g) > 0)))

    @property
    def inverse_metric(self) -> np.ndarray:
        return np.linalg.inv(self.inner_product)

    def lower(self, tensor: np.ndarray, axis: int = 0) -> np.ndarray:
        return np.tensordot(self.inner_product, tensor,
                            axes=([1], [axis])).transpose(
            _restore_axis(tensor.ndim, axis))

    def raise_(self, tensor: np.ndarray, axis: int = 0) -> np.ndarray:
        return np.tensordot(self.inverse_metric, tensor,
                            axes=([1], [axis])).transpose(
            _restore_axis(tensor.ndim, axis))


def _restore_axis(ndim: int, axis: int):
    # tensordot puts the contracted slot first; move it back to `axis`.
    perm = list(range(1, ndim))
    perm.insert(axis, 0)
    return perm


@dataclass(frozen=True)
class StructureConstants:
    """Bracket components c^a_{bc} on one internal space."""

    space: InternalSpace
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        n = self.space.dim
        if c.shape != (n, n, n):
            raise ValueError("structure constants have wrong shape")
        object.__setattr__(self, "c", c)

    def antisymmetry_residual(self) -> float:
        return float(np.abs(self.c + self.c.transpose(0, 2, 1)).max())

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("abc,b,c->a", self.c, u, v)

    def ad(self, v: np.ndarray) -> np.ndarray:
        """Matrix of ad(v): u -> [v, u]."""
        return np.einsum("abc,b->ac", self.c, v)


def su2() -> StructureConstants:
    """The compact three-dimensional algebra with totally antisymmetric bracket."""
    return StructureConstants(InternalSpace(3), levi_civita3())


def levi_civita3() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for i, j, k in itertools.permutations(range(3)):
        eps[i, j, k] = _sign3(i, j, k)
    return eps


def _sign3(i, j, k):
    return float(np.sign((j - i) * (k - i) * (k - j)))


def su11() -> StructureConstants:
    """A noncompact real form: [e1,e2] = 2 e2, [e1,e3] = -2 e3, [e2,e3] = e1."""
    c = np.zeros((3, 3, 3))
    c[1, 0, 1], c[1, 1, 0] = 2.0, -2.0
    c[2, 0, 2], c[2, 2, 0] = -2.0, 2.0
    c[0, 1, 2], c[0, 2, 1] = 1.0, -1.0
    return StructureConstants(InternalSpace(3), c)


def abelian(dim: int) -> StructureConstants:
    return StructureConstants(InternalSpace(dim), np.zeros((dim, dim, dim)))


def jacobi_residual(sc: StructureConstants) -> float:
    """Max-abs cyclic Jacobi sum c^a_{b e} c^e_{c d} + cycl(b, c, d).

    Meaningful for antisymmetric constants; the cyclic sum is evaluated as
    written either way, so a tensor that breaks antisymmetry (and with it
    the bracket axioms) shows up as a positive residual too.
    """
    c = sc.c
    cyc = np.einsum("abe,ecd->abcd", c, c)
    total = cyc + cyc.transpose(0, 2, 3, 1) + cyc.transpose(0, 3, 1, 2)
    return float(np.abs(total).max())


def killing_metric(sc: StructureConstants) -> np.ndarray:
    """k_ab = - c^c_{ad} c^d_{bc}; symmetric, positive definite for su2.

    The double contraction is symmetric in (a, b) exactly; the upper
    triangle is mirrored so the output is bitwise symmetric as well.
    """
    k = -np.einsum("cad,dbc->ab", sc.c, sc.c)
    upper = np.triu(k)
    return upper + np.triu(k, 1).T


def structure_signature(metric: np.ndarray) -> tuple[int, int, int]:
    """(negative, zero, positive) eigenvalue counts of a symmetric matrix."""
    vals = np.linalg.eigvalsh(np.asarray(metric, dtype=float))
    tol = 1e-10 * max(1.0, np.abs(vals).max())
    return (int(np.sum(vals < -tol)), int(np.sum(np.abs(vals) <= tol)),
            int(np.sum(vals > tol)))


@dataclass(frozen=True)
class MassTensor:
    """Bilinear mass tensor m_{a a'} with its two induced maps.

    ``map_a`` sends space A into A' (components m_a^{a'} raised with the A'
    inner product); ``map_b`` sends A' into A.  Matrices act from the left
    on component vectors.
    """

    space_a: InternalSpace
    space_b: InternalSpace
    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (self.space_a.dim, self.space_b.dim):
            raise ValueError("mass tensor has wrong shape")
        object.__setattr__(self, "m", m)

    @property
    def map_a(self) -> np.ndarray:
        """(dim A', dim A): u^a -> m_a^{a'} u^a."""
        return self.space_b.inverse_metric @ self.m.T

    @property
    def map_b(self) -> np.ndarray:
        """(dim A, dim A'): u'^{a'} -> m_{a'}^{a} u'^{a'}."""
        return self.space_a.inverse_metric @ self.m

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.m).max() <= tol)

    def consistency_residual(self) -> float:
        """Index raising check: both maps reproduce m against the metrics."""
        r1 = self.space_b.inner_product @ self.map_a - self.m.T
        r2 = self.space_a.inner_product @ self.map_b - self.m
        return float(max(np.abs(r1).max(), np.abs(r2).max()))


@dataclass(frozen=True)
class SubspaceSplit:
    """Orthogonal massless/massive projectors induced by a mass tensor."""

    p0_a: np.ndarray
    pm_a: np.ndarray
    p0_b: np.ndarray
    pm_b: np.ndarray
    massive_dim: int

    def residuals(self, mass: MassTensor) -> dict:
        eye_a = np.eye(mass.space_a.dim)
        eye_b = np.eye(mass.space_b.dim)
        return {
            "completeness": max(np.abs(self.p0_a + self.pm_a - eye_a).max(),
                                np.abs(self.p0_b + self.pm_b - eye_b).max()),
            "idempotent": max(np.abs(self.p0_a @ self.p0_a - self.p0_a).max(),
                              np.abs(self.pm_a @ self.pm_a - self.pm_a).max(),
                              np.abs(self.p0_b @ self.p0_b - self.p0_b).max(),
                              np.abs(self.pm_b @ self.pm_b - self.pm_b).max()),
            "annihilation": max(np.abs(self.p0_a @ self.pm_a).max(),
                                np.abs(self.p0_b @ self.pm_b).max()),
            "kernel": max(np.abs(mass.map_a @ self.p0_a).max(),
                          np.abs(mass.map_b @ self.p0_b).max()),
        }


def decompose_mass_subspaces(mass: MassTensor,
                             tol: float = 1e-10) -> SubspaceSplit:
    """Split both spaces into the kernel of the mass map and its
    metric-orthogonal complement.

    The two massive blocks always have a common rank, which is returned as
    ``massive_dim``; m = 0 and full-rank m are both fine.
    """
    p0_a, pm_a, rank_a = _kernel_projectors(mass.map_a,
                                            mass.space_a.inner_product, tol)
    p0_b, pm_b, rank_b = _kernel_projectors(mass.map_b,
                                            mass.space_b.inner_product, tol)
    if rank_a != rank_b:
        raise ValueError("mass tensor rank mismatch between spaces")
    return SubspaceSplit(p0_a, pm_a, p0_b, pm_b, rank_a)


def _kernel_projectors(mat: np.ndarray, metric: np.ndarray, tol: float):
    m, n = np.asarray(mat).shape
    u, s, vt = np.linalg.svd(mat) if mat.size else (None, np.array([]), None)
    if mat.size == 0:
        rank = 0
        kernel = np.eye(n)
    else:
        cutoff = tol * max(1.0, s.max() if s.size else 0.0)
        rank = int(np.sum(s > cutoff))
        kernel = vt[rank:].T  # Euclidean kernel basis, columns
    if kernel.shape[1] == 0:
        p0 = np.zeros((n, n))
    else:
        k = kernel
        p0 = k @ np.linalg.inv(k.T @ metric @ k) @ k.T @ metric
    return p0, np.eye(n) - p0, rank


@dataclass(frozen=True)
class LinearMapH:
    """A linear map h from A' into A, with metric adjoint h^T: A -> A'."""

    space_a: InternalSpace
    space_b: InternalSpace
    h: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        if h.shape != (self.space_a.dim, self.space_b.dim):
            raise ValueError("h has wrong shape (expect dim A x dim A')")
        object.__setattr__(self, "h", h)

    @property
    def h_t(self) -> np.ndarray:
        """(h u', v)_A = (u', h^T v)_A' for all u', v."""
        ga = self.space_a.inner_product
        gbinv = self.space_b.inverse_metric
        return gbinv @ self.h.T @ ga

    def adjointness_residual(self) -> float:
        ga = self.space_a.inner_product
        gb = self.space_b.inner_product
        return float(np.abs(self.h.T @ ga - gb @ self.h_t).max())


def homomorphism_residual(hmap: LinearMapH, c_b: StructureConstants,
                          c_a: StructureConstants) -> float:
    """Max-abs of [h u', h v']_A - h([u', v']_A') over basis pairs."""
    if c_b.space.dim != hmap.space_b.dim or c_a.space.dim != hmap.space_a.dim:
        raise ValueError("dimension mismatch")
    h = hmap.h
    lhs = np.einsum("ade,db,ec->abc", c_a.c, h, h)
    rhs = np.einsum("ad,dbc->abc", h, c_b.c)
    return float(np.abs(lhs - rhs).max())


def derivation_residual(rho: np.ndarray, sc: StructureConstants) -> float:
    """Max-abs of rho(w)[u,v] - [rho(w)u, v] - [u, rho(w)v] over basis triples.

    ``rho`` has shape (m, n, n): rho[w] is an endomorphism of the space of
    ``sc`` for each basis element w of some second space.
    """
    rho = np.asarray(rho, dtype=float)
    n = sc.space.dim
    if rho.ndim != 3 or rho.shape[1:] != (n, n):
        raise ValueError("dimension mismatch")
    c = sc.c
    lhs = np.einsum("wad,dbc->wabc", rho, c)
    rhs = (np.einsum("aec,web->wabc", c, rho)
           + np.einsum("abe,wec->wabc", c, rho))
    return float(np.abs(lhs - rhs).max())


class AdjointMaps:
    """The family of adjoint maps attached to (A, A', h).

    Provides ad, ad^T, ad* on each space and the h-coupled maps ad_{h,A},
    ad_{h,A'} with their adjoints, plus the residual of the compatibility
    relation ad*_{h,A}(.) h = -ad*_{A'}(h^T(.)) that holds when h is a
    homomorphism.
    """

    def __init__(self, c_a: StructureConstants, c_b: StructureConstants,
                 hmap: LinearMapH):
        self.c_a = c_a
        self.c_b = c_b
        self.hmap = hmap
        self.ga = c_a.space.inner_product
        self.gb = c_b.space.inner_product

    def ad_a(self, v):
        return self.c_a.ad(np.asarray(v, dtype=float))

    def ad_b(self, v):
        return self.c_b.ad(np.asarray(v, dtype=float))

    def ad_a_t(self, v):
        return np.linalg.inv(self.ga) @ self.ad_a(v).T @ self.ga

    def ad_b_t(self, v):
        return np.linalg.inv(self.gb) @ self.ad_b(v).T @ self.gb

    def ad_a_star(self, v):
        """ad*_A(v) u = ad^T_A(u) v."""
        n = self.c_a.space.dim
        return np.stack([self.ad_a_t(e) @ np.asarray(v, dtype=float)
                         for e in np.eye(n)], axis=1)

    def ad_b_star(self, v):
        n = self.c_b.space.dim
        return np.stack([self.ad_b_t(e) @ np.asarray(v, dtype=float)
                         for e in np.eye(n)], axis=1)

    def ad_h_a(self, v):
        """ad_{h,A}(v): A' -> A, u' -> [v, h(u')]_A."""
        return self.ad_a(v) @ self.hmap.h

    def ad_h_b(self, v_b):
        """ad_{h,A'}(v'): A -> A', u -> [v', h^T(u)]_A'."""
        return self.ad_b(v_b) @ self.hmap.h_t

    def ad_h_a_star(self, u):
        """ad*_{h,A}(u): A -> A', v -> -h^T(ad*_A(u) v)."""
        return -self.hmap.h_t @ self.ad_a_star(u)

    def ad_h_b_star(self, u_b):
        """ad*_{h,A'}(u'): A' -> A, v' -> -h(ad*_{A'}(u') v')."""
        return -self.hmap.h @ self.ad_b_star(u_b)

    def invariance_residual_a(self) -> float:
        """Zero iff the A inner product is ad-invariant (ad* = ad)."""
        n = self.c_a.space.dim
        return float(max(np.abs(self.ad_a_star(e) - self.ad_a(e)).max()
                         for e in np.eye(n)))

    def homomorphism_relation_residual(self) -> float:
        """Residual of ad*_{h,A}(u) h = -ad*_{A'}(h^T u) over basis u."""
        n = self.c_a.space.dim
        worst = 0.0
        for u in np.eye(n):
            lhs = self.ad_h_a_star(u) @ self.hmap.h
            rhs = -self.ad_b_star(self.hmap.h_t @ u)
            worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst


def adjoint_map_suite(c_a: StructureConstants, c_b: StructureConstants,
                      hmap: LinearMapH) -> AdjointMaps:
    return AdjointMaps(c_a, c_b, hmap)


def direct_sum(first: StructureConstants,
               second: StructureConstants) -> StructureConstants:
    """Block-diagonal sum of two bracket structures and their metrics."""
    n1, n2 = first.space.dim, second.space.dim
    g = np.zeros((n1 + n2, n1 + n2))
    g[:n1, :n1] = first.space.inner_product
    g[n1:, n1:] = second.space.inner_product
    c = np.zeros((n1 + n2,) * 3)
    c[:n1, :n1, :n1] = first.c
    c[n1:, n1:, n1:] = second.c
    return StructureConstants(InternalSpace(n1 + n2, g), c)
