"""Jones basic construction with its canonical lifted trace.

Given a system on H with cyclic projection e onto the subalgebra's cyclic
subspace, builds the algebra generated by the left action together with e,
cross-checks it against the commutant of the right subalgebra action, extends
the trace by  lifted(a e b) = mu(a b),  conjugates the dynamics, and runs the
GNS construction once more on the result.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import (DEFAULT_TOL, MatrixStarAlgebra, StarAutomorphism, Subsystem,
                      ToleranceConfig, TraceFunctional, WStarSystem,
                      automorphism_from_unitary, generate_algebra, commutant,
                      validate_trace)
from .errors import CommutantMismatch, ExtensionInconsistent, PartitionInvalid
from .gns import GnsSpace, build_gns, cyclic_subspace_projection

EXTENSION_TOL = 1e-8  # least-squares consistency threshold for the trace extension


@dataclass(frozen=True)
class BasicConstruction:
    gns: GnsSpace
    sub: Subsystem
    e: np.ndarray                   # projection onto the cyclic subspace of F
    algebra: MatrixStarAlgebra      # generated by the left action and e
    trace_vector: np.ndarray        # lifted trace on the algebra basis
    trace: TraceFunctional          # same functional as a density (not normalized)
    dynamics: StarAutomorphism      # conjugation by U in algebra coordinates
    bar: GnsSpace                   # GNS of (algebra, lifted trace)
    commutant_residual: float
    extension_residual: float

    def __post_init__(self):
        self.e.setflags(write=False)
        self.trace_vector.setflags(write=False)

    def lifted_value(self, mat: np.ndarray) -> complex:
        """Lifted trace of an element of the constructed algebra."""
        return complex(self.trace_vector @ self.algebra.coords(mat))

    def gamma(self, mat: np.ndarray) -> np.ndarray:
        """GNS vector of an element of the constructed algebra."""
        return self.bar.to_vector @ self.algebra.coords(mat)

    @property
    def u_bar(self) -> np.ndarray:
        return self.bar.u_matrix


def right_subalgebra(gns: GnsSpace, sub: Subsystem,
                     tol: ToleranceConfig = DEFAULT_TOL) -> MatrixStarAlgebra:
    """The right action algebra j(F) acting on H, with an orthonormal basis."""
    left_f = np.stack([gns.left(f) for f in sub.algebra.basis])
    rows = linalg.extend_orthonormal(
        np.zeros((0, gns.dim ** 2), dtype=np.complex128),
        left_f.reshape(len(left_f), -1), tol.eps_rank)
    mats = rows.reshape(-1, gns.dim, gns.dim)
    j_mats = np.stack([gns.j_op(m) for m in mats])
    return MatrixStarAlgebra(gns.dim, np.ascontiguousarray(j_mats))


def lifted_trace_coefficients(gns: GnsSpace, e: np.ndarray,
                              alg_bar: MatrixStarAlgebra,
                              tol: ToleranceConfig = DEFAULT_TOL
                              ) -> tuple[np.ndarray, float]:
    """Extend  a e b -> mu(a b)  to a linear functional on the whole algebra.

    Every basis element is expressed in the spanning family {a_i e b_j} by
    least squares; consistency requires that null combinations of the family
    map to zero values.
    """
    alg = gns.system.algebra
    d = alg.dim
    span_cols = np.empty((alg_bar.dim, d * d), dtype=np.complex128)
    values = np.empty(d * d, dtype=np.complex128)
    for i in range(d):
        blocks = gns.left_mats[i] @ e @ gns.left_mats  # (d, dim, dim)
        span_cols[:, i * d:(i + 1) * d] = alg_bar.coords_stack(blocks).T
        values[i * d:(i + 1) * d] = gns.system.trace.values(alg.basis[i] @ alg.basis)
    pinv = np.linalg.pinv(span_cols, rcond=tol.eps_rank)
    spanning_resid = float(np.abs(span_cols @ pinv - np.eye(alg_bar.dim)).max())
    if spanning_resid > EXTENSION_TOL:
        raise ExtensionInconsistent(
            f"span(A e A) does not exhaust the constructed algebra "
            f"(residual {spanning_resid:.2e})")
    trace_vec = values @ pinv
    consistency = float(np.abs(trace_vec @ span_cols - values).max())
    if consistency > EXTENSION_TOL:
        raise ExtensionInconsistent(
            f"trace extension is inconsistent on the kernel "
            f"(residual {consistency:.2e})")
    return trace_vec, max(spanning_resid, consistency)


def build_basic_construction(gns: GnsSpace, sub: Subsystem,
                             tol: ToleranceConfig = DEFAULT_TOL) -> BasicConstruction:
    e = cyclic_subspace_projection(gns, sub, tol)
    generated = generate_algebra(list(gns.left_mats) + [e], gns.dim, tol)
    via_commutant = commutant(right_subalgebra(gns, sub, tol), tol)
    resid = max(
        max((via_commutant.membership_residual(b) for b in generated.basis),
            default=0.0),
        max((generated.membership_residual(b) for b in via_commutant.basis),
            default=0.0))
    if generated.dim != via_commutant.dim or resid > tol.eps_assert:
        raise CommutantMismatch(
            f"generated algebra (dim {generated.dim}) and commutant route "
            f"(dim {via_commutant.dim}) disagree, residual {resid:.2e}")
    trace_vec, ext_resid = lifted_trace_coefficients(gns, e, generated, tol)
    # density representing the lifted trace on the algebra: faithful and PSD
    rho_bar = np.tensordot(trace_vec, generated.basis.conj().transpose(0, 2, 1),
                           axes=(0, 0))
    trace_bar = TraceFunctional(rho_bar, normalized=False)
    gram_bar = validate_trace(generated, trace_bar, tol)
    dyn_bar = automorphism_from_unitary(generated, gns.u_matrix, trace_bar, tol)
    bar_system = WStarSystem(generated, trace_bar, dyn_bar, gram_bar)
    bar = build_gns(bar_system, tol)
    return BasicConstruction(gns, sub, e, generated, np.ascontiguousarray(trace_vec),
                             trace_bar, dyn_bar, bar, resid, ext_resid)


def default_partition(bc: BasicConstruction) -> list[np.ndarray]:
    """Elements v_i of the commutant-side construction with sum v_i* e v_i = 1.

    Takes an orthonormal basis (m_i) of J <A,e> J; the averaged element
    sum m_i* e m_i is central and positive there, so m_i scaled by its inverse
    square root gives a valid partition.
    """
    gns = bc.gns
    m_basis = np.stack([gns.j_op(x) for x in bc.algebra.basis])
    psi = np.einsum("iba,bc,icd->ad", m_basis.conj(), bc.e, m_basis,
                    optimize=True)
    psi = (psi + psi.conj().T) / 2
    scale = linalg.inv_sqrt_psd(psi, DEFAULT_TOL.eps_rank)
    return [m @ scale for m in m_basis]


def lifted_trace_via_partition(bc: BasicConstruction, partial_isometries,
                               tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Evaluate the lifted trace as sum_i <J v_i* Omega, t J v_i* Omega>.

    Validates sum v_i* e v_i = 1 and that the result agrees with the
    least-squares extension on the algebra basis.
    """
    vs = [np.asarray(v, dtype=np.complex128) for v in partial_isometries]
    total = sum(v.conj().T @ bc.e @ v for v in vs)
    if np.abs(total - np.eye(bc.gns.dim)).max() > tol.eps_assert:
        raise PartitionInvalid("sum v_i* e v_i differs from the identity")
    vecs = np.stack([bc.gns.apply_j(v.conj().T @ bc.gns.omega) for v in vs])
    values = np.einsum("ia,kab,ib->k", vecs.conj(), bc.algebra.basis, vecs,
                       optimize=True)
    resid = float(np.abs(values - bc.trace_vector).max())
    if resid > tol.eps_assert:
        raise ExtensionInconsistent(
            f"partition formula disagrees with the trace extension "
            f"(residual {resid:.2e})")
    return values
