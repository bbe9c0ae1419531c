"""Builders for the example families: classical atomic systems, group von
Neumann algebras of finite groups, tensor products, skew products and finite
extensions.

Every constructor output passes the full system and subsystem validators.
Skew products are realized as block matrices indexed by atoms (the finite
atomic stand-in for a direct integral of copies of the fiber algebra).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (DEFAULT_TOL, MatrixStarAlgebra, StarAutomorphism, Subsystem,
                      ToleranceConfig, WStarSystem, automorphism_from_matrix,
                      automorphism_from_unitary, generate_algebra, subsystem,
                      system, trace_functional)
from .errors import (ConstraintViolated, NotAutomorphism, NotUnitary, SpecInvalid,
                     WeightsNotPreserved)
from .gns import build_gns
from . import linalg


@dataclass(frozen=True)
class ConstructedSystem:
    system: WStarSystem
    sub: Subsystem
    # (algebra, trace) pairs of the tensor factors, when the system carries a
    # product structure compatible with the basis ordering
    tensor_factors: tuple | None = None
    extras: dict = field(default_factory=dict)


def identity_automorphism(alg: MatrixStarAlgebra) -> StarAutomorphism:
    return StarAutomorphism(np.eye(alg.dim, dtype=np.complex128))


def trivial_subalgebra(ambient_dim: int) -> MatrixStarAlgebra:
    basis = np.eye(ambient_dim, dtype=np.complex128)[None] / np.sqrt(ambient_dim)
    return MatrixStarAlgebra(ambient_dim, basis)


# --- explicit systems ---------------------------------------------------------

def build_explicit_system(ambient_dim: int, generators, density,
                          dynamics_unitary=None, dynamics_matrix=None,
                          sub_generators=(), tol: ToleranceConfig = DEFAULT_TOL
                          ) -> ConstructedSystem:
    """System from generators, a density matrix and dynamics.

    Dynamics may be given either as conjugation by a unitary or as a
    coordinate matrix over the generated basis; both are normalized to the
    coordinate form.
    """
    alg = generate_algebra(generators, ambient_dim, tol)
    trace = trace_functional(density)
    if (dynamics_unitary is None) == (dynamics_matrix is None):
        raise SpecInvalid("give exactly one of dynamics_unitary, dynamics_matrix")
    if dynamics_unitary is not None:
        dyn = automorphism_from_unitary(alg, dynamics_unitary, trace, tol)
    else:
        dyn = automorphism_from_matrix(alg, dynamics_matrix, trace, tol)
    sys = system(alg, trace, dyn, tol)
    sub_alg = generate_algebra(sub_generators, ambient_dim, tol)
    return ConstructedSystem(sys, subsystem(sys, sub_alg, tol))


# --- classical atomic systems -------------------------------------------------

def build_classical_system(weights, permutation,
                           tol: ToleranceConfig = DEFAULT_TOL) -> WStarSystem:
    """Diagonal algebra over finitely many atoms with a weight-preserving map."""
    w = np.asarray(weights, dtype=float)
    n = len(w)
    if np.any(w <= 0) or abs(w.sum() - 1.0) > tol.eps_assert:
        raise SpecInvalid("weights must be positive and sum to one")
    perm = list(permutation)
    if sorted(perm) != list(range(n)):
        raise SpecInvalid("permutation must be a bijection on the atoms")
    for x in range(n):
        if abs(w[perm[x]] - w[x]) > tol.eps_assert:
            raise WeightsNotPreserved(
                f"atom {x} (weight {w[x]}) maps to weight {w[perm[x]]}")
    basis = np.zeros((n, n, n), dtype=np.complex128)
    for x in range(n):
        basis[x, x, x] = 1.0
    alg = MatrixStarAlgebra(n, basis)
    trace = trace_functional(np.diag(w.astype(np.complex128)))
    inv = np.argsort(perm)  # alpha(f) = f o S sends the atom indicator x to S^-1 x
    mat = np.zeros((n, n), dtype=np.complex128)
    for x in range(n):
        mat[inv[x], x] = 1.0
    dyn = automorphism_from_matrix(alg, mat, trace, tol)
    return system(alg, trace, dyn, tol)


def classical_sub_partition(sys: WStarSystem, blocks,
                            tol: ToleranceConfig = DEFAULT_TOL) -> Subsystem:
    """Subalgebra of a classical system spanned by indicators of atom blocks."""
    n = sys.algebra.ambient_dim
    seen = sorted(x for b in blocks for x in b)
    if seen != list(range(n)):
        raise SpecInvalid("blocks must partition the atoms")
    mats = []
    for b in blocks:
        m = np.zeros((n, n), dtype=np.complex128)
        for x in b:
            m[x, x] = 1.0
        mats.append(m / np.sqrt(len(b)))
    return subsystem(sys, MatrixStarAlgebra(n, np.stack(mats)), tol)


# --- finite groups ------------------------------------------------------------

def _validate_group_table(table) -> tuple[np.ndarray, int]:
    t = np.asarray(table, dtype=int)
    n = t.shape[0]
    if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
        raise SpecInvalid("multiplication table must be square over element indices")
    for i in range(n):
        if sorted(t[i]) != list(range(n)) or sorted(t[:, i]) != list(range(n)):
            raise SpecInvalid("multiplication table rows/columns must be permutations")
    ident = None
    for e in range(n):
        if all(t[e, h] == h and t[h, e] == h for h in range(n)):
            ident = e
            break
    if ident is None:
        raise SpecInvalid("multiplication table has no identity")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    raise SpecInvalid("multiplication table is not associative")
    return t, ident


def left_regular_matrices(table: np.ndarray) -> np.ndarray:
    """l(g) delta_h = delta_{gh} on the group's coordinate space."""
    n = table.shape[0]
    mats = np.zeros((n, n, n), dtype=np.complex128)
    for g in range(n):
        for h in range(n):
            mats[g, table[g, h], h] = 1.0
    return mats


@dataclass(frozen=True)
class GroupSystem:
    system: WStarSystem
    table: np.ndarray
    identity_index: int
    automorphism_images: tuple[int, ...]

    def __post_init__(self):
        self.table.setflags(write=False)


def build_group_vn_system(group_table, automorphism,
                          tol: ToleranceConfig = DEFAULT_TOL) -> GroupSystem:
    """Group von Neumann algebra of a finite group with a dual automorphism.

    The dynamics is conjugation by the composition unitary f -> f o T, which
    sends l(g) to l(T^{-1} g).
    """
    table, ident = _validate_group_table(group_table)
    n = table.shape[0]
    images = list(automorphism)
    if sorted(images) != list(range(n)):
        raise NotAutomorphism("automorphism images must be a bijection")
    for a in range(n):
        for b in range(n):
            if images[table[a, b]] != table[images[a], images[b]]:
                raise NotAutomorphism("map does not respect the multiplication table")
    lmats = left_regular_matrices(table)
    alg = MatrixStarAlgebra(n, lmats / np.sqrt(n))
    density = np.zeros((n, n), dtype=np.complex128)
    density[ident, ident] = 1.0
    trace = trace_functional(density)
    u_comp = np.zeros((n, n), dtype=np.complex128)
    for h in range(n):
        u_comp[h, images[h]] = 1.0  # (U f)(h) = f(T h)
    dyn = automorphism_from_unitary(alg, u_comp, trace, tol)
    sys = system(alg, trace, dyn, tol)
    return GroupSystem(sys, table, ident, tuple(images))


def group_sub_system(gs: GroupSystem, subgroup,
                     tol: ToleranceConfig = DEFAULT_TOL) -> Subsystem:
    """Subsystem spanned by l(h) over an automorphism-invariant subgroup."""
    elems = sorted(set(int(h) for h in subgroup))
    n = gs.table.shape[0]
    if gs.identity_index not in elems:
        raise SpecInvalid("subgroup must contain the identity")
    for a in elems:
        for b in elems:
            if gs.table[a, b] not in elems:
                raise SpecInvalid("subgroup is not closed under multiplication")
        if gs.automorphism_images[a] not in elems:
            raise SpecInvalid("subgroup is not invariant under the automorphism")
    lmats = left_regular_matrices(gs.table)
    basis = np.stack([lmats[h] for h in elems]) / np.sqrt(n)
    return subsystem(gs.system, MatrixStarAlgebra(n, basis), tol)


# --- tensor products ----------------------------------------------------------

def build_tensor_system(b_system: WStarSystem, c_system: WStarSystem,
                        tol: ToleranceConfig = DEFAULT_TOL) -> ConstructedSystem:
    """B (x) C with the product trace and product dynamics, over F = B (x) 1."""
    balg, calg = b_system.algebra, c_system.algebra
    nb, nc = balg.ambient_dim, calg.ambient_dim
    basis = np.einsum("iab,jcd->ijacbd", balg.basis, calg.basis)
    basis = basis.reshape(balg.dim * calg.dim, nb * nc, nb * nc)
    alg = MatrixStarAlgebra(nb * nc, np.ascontiguousarray(basis))
    trace = trace_functional(np.kron(b_system.trace.density, c_system.trace.density))
    dyn = automorphism_from_matrix(
        alg, np.kron(b_system.dynamics.matrix, c_system.dynamics.matrix), trace, tol)
    sys = system(alg, trace, dyn, tol)
    eye_c = np.eye(nc, dtype=np.complex128) / np.sqrt(nc)
    f_basis = np.einsum("iab,cd->iacbd", balg.basis, eye_c)
    f_basis = f_basis.reshape(balg.dim, nb * nc, nb * nc)
    sub = subsystem(sys, MatrixStarAlgebra(nb * nc, np.ascontiguousarray(f_basis)), tol)
    factors = ((balg, b_system.trace), (calg, c_system.trace))
    return ConstructedSystem(sys, sub, factors)


def tensor_partition_isometries(b_factor, c_factor,
                                tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Partition elements 1 (x) w_i for the lifted trace of a tensor system.

    Each w_i maps z to <J_c h_i, z> Omega_c over an orthonormal basis (h_i) of
    the fiber GNS space, so that sum w_i* e w_i = 1 on the product space.
    """
    (balg, btrace), (calg, ctrace) = b_factor, c_factor
    gns_b = build_gns(system(balg, btrace, identity_automorphism(balg), tol,
                             validate=False), tol)
    gns_c = build_gns(system(calg, ctrace, identity_automorphism(calg), tol,
                             validate=False), tol)
    eye_b = np.eye(gns_b.dim, dtype=np.complex128)
    out = []
    for i in range(gns_c.dim):
        jh = gns_c.conj_matrix[:, i]  # J applied to the i-th coordinate vector
        w = np.outer(gns_c.omega, jh.conj())
        out.append(np.kron(eye_b, w))
    return out


# --- skew products --------------------------------------------------------

@dataclass(frozen=True)
class SkewProductSpec:
    """Base atoms with weights and a measure-preserving map, a finite group
    with a finite-orbit automorphism, and a cocycle generator."""
    weights: tuple[float, ...]
    permutation: tuple[int, ...]
    group_table: tuple[tuple[int, ...], ...]
    group_automorphism: tuple[int, ...]
    cocycle: tuple[int, ...]


def build_skew_product(spec: SkewProductSpec,
                       tol: ToleranceConfig = DEFAULT_TOL) -> ConstructedSystem:
    """Skew product dynamics alpha(a)(p) = gamma^{k(p)}(a(Sp)) over F = base."""
    base = build_classical_system(spec.weights, spec.permutation, tol)
    gs = build_group_vn_system(spec.group_table, spec.group_automorphism, tol)
    n_x = len(spec.weights)
    if len(spec.cocycle) != n_x:
        raise SpecInvalid("cocycle must assign an integer to every atom")
    n_g = gs.table.shape[0]
    perm = list(spec.permutation)
    inv_s = np.argsort(perm)
    t_perm = np.asarray(gs.automorphism_images)
    inv_t = np.argsort(t_perm)

    def t_power(g: int, k: int) -> int:
        p = t_perm if k >= 0 else inv_t
        for _ in range(abs(k)):
            g = int(p[g])
        return g

    lmats = left_regular_matrices(gs.table)
    n = n_x * n_g
    basis = np.zeros((n_x * n_g, n, n), dtype=np.complex128)
    for x in range(n_x):
        for g in range(n_g):
            blk = np.zeros((n_x, n_x))
            blk[x, x] = 1.0
            basis[x * n_g + g] = np.kron(blk, lmats[g]) / np.sqrt(n_g)
    alg = MatrixStarAlgebra(n, basis)
    density = np.kron(np.diag(np.asarray(spec.weights, dtype=np.complex128)),
                      gs.system.trace.density)
    trace = trace_functional(density)
    mat = np.zeros((alg.dim, alg.dim), dtype=np.complex128)
    for x in range(n_x):
        xs = int(inv_s[x])  # S^{-1} x, the atom where the image lives
        for g in range(n_g):
            g2 = t_power(g, -int(spec.cocycle[xs]))
            mat[xs * n_g + g2, x * n_g + g] = 1.0
    dyn = automorphism_from_matrix(alg, mat, trace, tol)
    sys = system(alg, trace, dyn, tol)
    f_basis = np.zeros((n_x, n, n), dtype=np.complex128)
    eye_g = np.eye(n_g) / np.sqrt(n_g)
    for x in range(n_x):
        blk = np.zeros((n_x, n_x))
        blk[x, x] = 1.0
        f_basis[x] = np.kron(blk, eye_g)
    sub = subsystem(sys, MatrixStarAlgebra(n, f_basis), tol)
    factors = ((base.algebra, base.trace), (gs.system.algebra, gs.system.trace))
    return ConstructedSystem(sys, sub, factors,
                             extras={"group": gs, "base": base})


def dual_orbits(gs: GroupSystem) -> list[tuple[int, ...]]:
    """Orbits of the group automorphism on the non-identity elements."""
    n = gs.table.shape[0]
    seen = set()
    orbits = []
    for g in range(n):
        if g == gs.identity_index or g in seen:
            continue
        orbit = []
        h = g
        while h not in seen:
            seen.add(h)
            orbit.append(h)
            h = gs.automorphism_images[h]
        orbits.append(tuple(sorted(orbit)))
    return orbits


def skew_orbit_modules(skew: ConstructedSystem, gns, bc,
                       tol: ToleranceConfig = DEFAULT_TOL) -> list:
    """Orbit modules of a skew product: base space tensored with the span of
    each dual orbit.  These are invariant right modules of finite lifted trace
    spanning the complement of the base's cyclic subspace; their traces equal
    the orbit sizes.
    """
    from .spectrum import module_candidate  # cycle-free: function-level import
    gs: GroupSystem = skew.extras["group"]
    n_g = gs.table.shape[0]
    n_x = skew.system.algebra.dim // n_g
    out = []
    for orbit in dual_orbits(gs):
        idx = [x * n_g + g for x in range(n_x) for g in orbit]
        cols = gns.to_vector[:, idx]
        q = linalg.orthonormal_columns(cols, tol.eps_rank)
        out.append(module_candidate(gns, bc, q @ q.conj().T, tol))
    out.sort(key=lambda c: (-round(c.lifted_trace, 8),
                            linalg.sort_key(c.projection)))
    return out


# --- finite extensions ----------------------------------------------------

@dataclass(frozen=True)
class FiniteExtensionSpec:
    """Two summand systems, a weight s, and the four unitaries assembling the
    dynamics of a two-dimensional extension."""
    b1: WStarSystem
    b2: WStarSystem | None
    s: float
    v1: np.ndarray
    v4: np.ndarray
    v2: np.ndarray | None = None
    v3: np.ndarray | None = None


def _check_unitary_in(alg: MatrixStarAlgebra, v: np.ndarray, name: str,
                      tol: ToleranceConfig) -> np.ndarray:
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (alg.ambient_dim, alg.ambient_dim):
        raise SpecInvalid(f"{name} has the wrong shape")
    if np.abs(v @ v.conj().T - np.eye(alg.ambient_dim)).max() > tol.eps_assert:
        raise NotUnitary(f"{name} is not unitary")
    if alg.membership_residual(v) > tol.eps_assert:
        raise SpecInvalid(f"{name} does not lie in its algebra")
    return v


def _check_relative_commutant(alg: MatrixStarAlgebra, x: np.ndarray, name: str,
                              tol: ToleranceConfig) -> None:
    resid = max(float(np.abs(x @ b - b @ x).max()) for b in alg.basis)
    if resid > tol.eps_assert:
        raise ConstraintViolated(f"{name} is not in the relative commutant "
                                 f"(residual {resid:.2e})")


def build_finite_extension(spec: FiniteExtensionSpec,
                           tol: ToleranceConfig = DEFAULT_TOL) -> ConstructedSystem:
    """Extension of B = B1 (+) B2 by 2x2 matrices with dynamics Ad(W).

    W has corners w1 = v1 (+) 0, w4 = v4 (+) 0, w2 = 0 (+) v2, w3 = 0 (+) v3;
    the restriction to B (x) 1 is Ad(v1) (+) Ad(v2), and the construction is
    consistent exactly when v4* v1 and v3* v2 are central relative to their
    summands.
    """
    b1 = spec.b1
    v1 = _check_unitary_in(b1.algebra, spec.v1, "v1", tol)
    v4 = _check_unitary_in(b1.algebra, spec.v4, "v4", tol)
    _check_relative_commutant(b1.algebra, v4.conj().T @ v1, "v4* v1", tol)
    n1 = b1.algebra.ambient_dim
    if spec.b2 is not None:
        if not 0.0 < spec.s < 1.0:
            raise SpecInvalid("s must lie strictly between 0 and 1")
        b2 = spec.b2
        if spec.v2 is None or spec.v3 is None:
            raise SpecInvalid("v2 and v3 are required when B2 is present")
        v2 = _check_unitary_in(b2.algebra, spec.v2, "v2", tol)
        v3 = _check_unitary_in(b2.algebra, spec.v3, "v3", tol)
        _check_relative_commutant(b2.algebra, v3.conj().T @ v2, "v3* v2", tol)
        n2 = b2.algebra.ambient_dim
        nb = n1 + n2
        pad1 = lambda m: np.block([[m, np.zeros((n1, n2))],
                                   [np.zeros((n2, n1)), np.zeros((n2, n2))]])
        pad2 = lambda m: np.block([[np.zeros((n1, n1)), np.zeros((n1, n2))],
                                   [np.zeros((n2, n1)), m]])
        b_basis = np.stack([pad1(m) for m in b1.algebra.basis]
                           + [pad2(m) for m in b2.algebra.basis])
        b_density = spec.s * pad1(b1.trace.density) \
            + (1.0 - spec.s) * pad2(b2.trace.density)
        w1, w4 = pad1(v1), pad1(v4)
        w2, w3 = pad2(v2), pad2(v3)
    else:
        nb = n1
        b_basis = b1.algebra.basis.copy()
        b_density = b1.trace.density.copy()
        w1, w4 = v1, v4
        w2 = np.zeros((nb, nb), dtype=np.complex128)
        w3 = np.zeros((nb, nb), dtype=np.complex128)
    b_alg = MatrixStarAlgebra(nb, np.ascontiguousarray(b_basis))
    b_trace = trace_functional(b_density)
    units = np.zeros((4, 2, 2), dtype=np.complex128)
    units[0, 0, 0] = units[1, 0, 1] = units[2, 1, 0] = units[3, 1, 1] = 1.0
    a_basis = np.einsum("iab,jcd->ijacbd", b_alg.basis, units)
    a_basis = a_basis.reshape(b_alg.dim * 4, 2 * nb, 2 * nb)
    alg = MatrixStarAlgebra(2 * nb, np.ascontiguousarray(a_basis))
    trace = trace_functional(np.kron(b_density, np.eye(2) / 2.0))
    w_full = (np.kron(w1, units[0]) + np.kron(w2, units[1])
              + np.kron(w3, units[2]) + np.kron(w4, units[3]))
    if np.abs(w_full @ w_full.conj().T - np.eye(2 * nb)).max() > tol.eps_assert:
        raise NotUnitary("assembled dynamics matrix is not unitary")
    dyn = automorphism_from_unitary(alg, w_full, trace, tol)
    sys = system(alg, trace, dyn, tol)
    f_basis = np.einsum("iab,cd->iacbd", b_alg.basis,
                        np.eye(2, dtype=np.complex128) / np.sqrt(2.0))
    f_basis = f_basis.reshape(b_alg.dim, 2 * nb, 2 * nb)
    sub = subsystem(sys, MatrixStarAlgebra(2 * nb, np.ascontiguousarray(f_basis)), tol)
    m2_basis = units.copy()
    m2_alg = MatrixStarAlgebra(2, m2_basis)
    m2_trace = trace_functional(np.eye(2, dtype=np.complex128) / 2.0)
    factors = ((b_alg, b_trace), (m2_alg, m2_trace))
    extras = {"w": w_full, "ws": (w1, w2, w3, w4), "b_dims": (n1, nb - n1),
              "b_algebra": b_alg}
    return ConstructedSystem(sys, sub, factors, extras)


def finite_extension_diagnostics(fe: ConstructedSystem,
                                 tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Residuals of the structural identities of a two-dimensional extension.

    Checks the two expressions for the restricted dynamics, the off-diagonal
    cancellation, the restriction alpha(b (x) 1) = beta(b) (x) 1, the displayed
    block pattern of alpha(1 (x) m), and whether the dynamics visibly fails to
    be a product (distance of alpha(1 (x) m) from 1 (x) M_2).
    """
    w1, w2, w3, w4 = fe.extras["ws"]
    b_alg: MatrixStarAlgebra = fe.extras["b_algebra"]
    alg = fe.system.algebra
    nb = b_alg.ambient_dim
    beta_resid = 0.0
    offdiag_resid = 0.0
    restrict_resid = 0.0
    units = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            units[i, j, i, j] = 1.0
    for b in b_alg.basis:
        first = w1 @ b @ w1.conj().T + w2 @ b @ w2.conj().T
        second = w3 @ b @ w3.conj().T + w4 @ b @ w4.conj().T
        beta_resid = max(beta_resid, float(np.abs(first - second).max()))
        off = w1 @ b @ w3.conj().T + w2 @ b @ w4.conj().T
        offdiag_resid = max(offdiag_resid, float(np.abs(off).max()))
        image = fe.system.dynamics.apply(alg, np.kron(b, np.eye(2)))
        restrict_resid = max(restrict_resid,
                             float(np.abs(image - np.kron(first, np.eye(2))).max()))
    # displayed block pattern of alpha(1 (x) m) on the matrix units
    eye_b = np.eye(nb, dtype=np.complex128)
    display_resid = 0.0
    n1 = fe.extras["b_dims"][0]
    p1 = np.zeros((nb, nb), dtype=np.complex128)
    p1[:n1, :n1] = np.eye(n1)
    p2 = eye_b - p1
    for m1, m2, m3, m4 in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)):
        m = np.array([[m1, m2], [m3, m4]], dtype=np.complex128)
        expected = (np.kron(m1 * p1 + m4 * p2, units[0, 0])
                    + np.kron(m2 * (w1 @ w4.conj().T) + m3 * (w2 @ w3.conj().T),
                              units[0, 1])
                    + np.kron(m3 * (w4 @ w1.conj().T) + m2 * (w3 @ w2.conj().T),
                              units[1, 0])
                    + np.kron(m4 * p1 + m1 * p2, units[1, 1]))
        image = fe.system.dynamics.apply(alg, np.kron(eye_b, m))
        display_resid = max(display_resid, float(np.abs(image - expected).max()))
    # distance of alpha(1 (x) E12) from 1 (x) M_2
    image = fe.system.dynamics.apply(alg, np.kron(eye_b, units[0, 1]))
    fiber_rows = np.stack([np.kron(eye_b, units[i, j]).reshape(-1) / np.sqrt(nb)
                           for i in range(2) for j in range(2)])
    flat = image.reshape(-1)
    proj = fiber_rows.conj() @ flat
    product_distance = float(np.linalg.norm(flat - fiber_rows.T @ proj))
    both_nonzero = fe.extras["b_dims"][1] > 0
    return {"beta_two_expressions": beta_resid,
            "off_diagonal": offdiag_resid,
            "restriction": restrict_resid,
            "display_pattern": display_resid,
            "product_distance": product_distance,
            "nonproduct_detected": product_distance > tol.eps_assert,
            "nonproduct_expected": both_nonzero}
