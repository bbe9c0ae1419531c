"""GNS representation of a tracial system.

The Hilbert space carries the inner product <a Omega, b Omega> = mu(a* b);
coordinates come from a Cholesky factorization of the Gram matrix over the
algebra basis.  The modular conjugation J is antilinear and is stored as a
complex matrix applied after entrywise conjugation: J x = K conj(x).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import DEFAULT_TOL, Subsystem, ToleranceConfig, WStarSystem
from .errors import TraceNotFaithful


@dataclass(frozen=True)
class GnsSpace:
    """GNS data: cyclic vector, left action, modular conjugation, dynamics."""
    system: WStarSystem
    to_vector: np.ndarray    # (dim, d): algebra coords -> H coords, a -> a Omega
    from_vector: np.ndarray  # inverse map
    omega: np.ndarray        # coordinates of Omega = 1 Omega
    left_mats: np.ndarray    # (d, dim, dim), left multiplication per basis element
    conj_matrix: np.ndarray  # K with J x = K conj(x)
    u_matrix: np.ndarray     # unitary implementing the dynamics

    def __post_init__(self):
        for a in (self.to_vector, self.from_vector, self.omega, self.left_mats,
                  self.conj_matrix, self.u_matrix):
            a.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.to_vector.shape[0]

    def vector_of(self, mat: np.ndarray) -> np.ndarray:
        """a Omega for an algebra element given as an ambient matrix."""
        return self.to_vector @ self.system.algebra.coords(mat)

    def left(self, mat: np.ndarray) -> np.ndarray:
        """Matrix of left multiplication by an algebra element."""
        c = self.system.algebra.coords(mat)
        return np.tensordot(c, self.left_mats, axes=(0, 0))

    def apply_j(self, x: np.ndarray) -> np.ndarray:
        """Modular conjugation applied to a vector."""
        return self.conj_matrix @ x.conj()

    def j_op(self, op: np.ndarray) -> np.ndarray:
        """j(op) = J op* J as a linear matrix, for any operator on H."""
        return self.conj_matrix @ op.T @ self.conj_matrix.conj()


def build_gns(system: WStarSystem, tol: ToleranceConfig = DEFAULT_TOL) -> GnsSpace:
    alg = system.algebra
    gram = (system.gram + system.gram.conj().T) / 2
    if np.linalg.eigvalsh(gram).min() < tol.eps_rank:
        raise TraceNotFaithful("Gram matrix is singular; trace is not faithful")
    low = np.linalg.cholesky(gram)
    to_vec = low.conj().T
    from_vec = np.linalg.inv(to_vec)
    omega = to_vec @ alg.coords(alg.identity())
    d = alg.dim
    left_mats = np.empty((d, d, d), dtype=np.complex128)
    for i in range(d):
        struct = alg.coords_stack(alg.basis[i] @ alg.basis).T  # col j = coords(b_i b_j)
        left_mats[i] = to_vec @ struct @ from_vec
    star = alg.coords_stack(alg.basis.conj().transpose(0, 2, 1)).T
    conj_mat = to_vec @ star @ from_vec.conj()
    u_mat = to_vec @ system.dynamics.matrix @ from_vec
    return GnsSpace(system, np.ascontiguousarray(to_vec), np.ascontiguousarray(from_vec),
                    omega, left_mats, np.ascontiguousarray(conj_mat),
                    np.ascontiguousarray(u_mat))


def cyclic_subspace_projection(gns: GnsSpace, sub: Subsystem,
                               tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Projection e of H onto the closure of F Omega.

    Satisfies e(a Omega) = D(a) Omega for the trace-preserving conditional
    expectation D onto F.
    """
    cols = gns.to_vector @ sub.coords_in_parent.T  # (dim, m), columns f Omega
    q = linalg.orthonormal_columns(cols, tol.eps_rank)
    return q @ q.conj().T


def right_action(gns: GnsSpace, x: np.ndarray, mat: np.ndarray) -> np.ndarray:
    """Right module action x . a = j(a) x."""
    return gns.j_op(gns.left(mat)) @ x


def gns_invariant_residuals(gns: GnsSpace) -> dict[str, float]:
    """Numerical residuals of the defining GNS identities (for checks/tests)."""
    alg = gns.system.algebra
    d, dim = alg.dim, gns.dim
    eye = np.eye(dim)
    k = gns.conj_matrix
    u = gns.u_matrix
    out = {}
    # <Omega, a Omega> = mu(a) on the basis
    vals = np.array([np.vdot(gns.omega, gns.left_mats[i] @ gns.omega)
                     for i in range(d)])
    out["cyclic_vector_trace"] = float(
        np.abs(vals - gns.system.trace.values(alg.basis)).max())
    # J is an involution and antiunitary
    out["j_involution"] = float(np.abs(k @ k.conj() - eye).max())
    out["j_antiunitary"] = float(np.abs(k.conj().T @ k - eye).max())
    out["j_fixes_omega"] = float(np.abs(k @ gns.omega.conj() - gns.omega).max())
    # J(a Omega) = a* Omega
    star_vecs = gns.to_vector @ alg.coords_stack(
        alg.basis.conj().transpose(0, 2, 1)).T
    plain_vecs = gns.to_vector @ np.eye(d)
    out["j_star_vector"] = float(
        np.abs(k @ plain_vecs.conj() - star_vecs).max())
    # U unitary, U Omega = Omega, U a U* = alpha(a)
    out["u_unitary"] = float(np.abs(u @ u.conj().T - eye).max())
    out["u_fixes_omega"] = float(np.abs(u @ gns.omega - gns.omega).max())
    images = alg.from_coords_stack(gns.system.dynamics.matrix.T)
    conj_resid = 0.0
    for i in range(d):
        lhs = u @ gns.left_mats[i] @ u.conj().T
        conj_resid = max(conj_resid, float(np.abs(lhs - gns.left(images[i])).max()))
    out["u_implements_dynamics"] = conj_resid
    out["uj_commute"] = float(np.abs(u @ k - k @ u.conj()).max())
    # left and right actions commute
    comm = 0.0
    for i in range(d):
        ji = gns.j_op(gns.left_mats[i])
        resid = np.abs(gns.left_mats @ ji - ji @ gns.left_mats).max()
        comm = max(comm, float(resid))
    out["left_right_commute"] = comm
    return out
