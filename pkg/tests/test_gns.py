import numpy as np
import pytest

import vnspec as v
from vnspec.gns import gns_invariant_residuals
from conftest import E11, E12, E21

TOL = 1e-10


def _scalar_system():
    alg = v.generate_algebra([], 1)
    tr = v.trace_functional(np.eye(1))
    dyn = v.automorphism_from_unitary(alg, np.eye(1), tr)
    return v.system(alg, tr, dyn)


def test_gns_of_scalars_is_one_dimensional():
    gns = v.build_gns(_scalar_system())
    assert gns.dim == 1
    assert np.abs(gns.u_matrix - np.eye(1)).max() < TOL
    assert np.abs(gns.conj_matrix - np.eye(1)).max() < TOL


def test_gns_dimension_and_gram_for_m2(m2_grading):
    gns = v.build_gns(m2_grading.system)
    assert gns.dim == 4
    vec = gns.vector_of(E11)
    assert abs(np.vdot(vec, vec) - 0.5) < TOL  # mu(E11* E11) = 1/2


def test_gns_weighted_diagonal_gram():
    alg = v.generate_algebra([np.diag([1.0, -1.0])], 2)
    tr = v.trace_functional(np.diag([1 / 3, 2 / 3]))
    dyn = v.automorphism_from_unitary(alg, np.eye(2), tr)
    gns = v.build_gns(v.system(alg, tr, dyn))
    v1 = gns.vector_of(E11)
    v2 = gns.vector_of(np.diag([0.0, 1.0]))
    assert abs(np.vdot(v1, v1) - 1 / 3) < TOL
    assert abs(np.vdot(v2, v2) - 2 / 3) < TOL
    assert abs(np.vdot(v1, v2)) < TOL


def test_gns_invariants_on_all_shipped(analyses):
    for name, an in analyses.items():
        res = gns_invariant_residuals(an.gns)
        worst = max(res.values())
        assert worst < 1e-9, (name, res)


def test_inner_product_reproduces_trace(analyses):
    rng = np.random.default_rng(5)
    for name, an in analyses.items():
        sys = an.built.system
        gns = an.gns
        for _ in range(10):
            a = v.random_element(sys.algebra, rng)
            b = v.random_element(sys.algebra, rng)
            ip = np.vdot(gns.vector_of(a), gns.vector_of(b))
            assert abs(ip - sys.trace.value(a.conj().T @ b)) < 1e-9, name


def test_cyclic_projection_ranks(m2_grading, m2_over_diagonal, analyses):
    gns = v.build_gns(m2_grading.system)
    e = v.cyclic_subspace_projection(gns, m2_grading.sub)
    assert int(round(np.trace(e).real)) == 1  # F = C1
    gns2 = v.build_gns(m2_over_diagonal.system)
    e2 = v.cyclic_subspace_projection(gns2, m2_over_diagonal.sub)
    assert int(round(np.trace(e2).real)) == 2  # dim F Omega = dim F
    an = analyses["full_subsystem_m2"]
    assert np.abs(an.basic.e - np.eye(an.gns.dim)).max() < 1e-9  # F = A


def test_cyclic_projection_reproduces_expectation(analyses):
    rng = np.random.default_rng(7)
    for name, an in analyses.items():
        sys, sub = an.built.system, an.built.sub
        exp = v.conditional_expectation(sys, sub)
        for _ in range(5):
            a = v.random_element(sys.algebra, rng)
            lhs = an.basic.e @ an.gns.vector_of(a)
            rhs = an.gns.vector_of(exp.apply(a))
            assert np.abs(lhs - rhs).max() < 1e-9, name


def test_cyclic_projection_commutes_with_subalgebra_and_dynamics(analyses):
    for name, an in analyses.items():
        e, gns = an.basic.e, an.gns
        u = gns.u_matrix
        assert np.abs(u @ e @ u.conj().T - e).max() < 1e-9, name
        for f in an.built.sub.algebra.basis:
            lf = gns.left(f)
            assert np.abs(e @ lf - lf @ e).max() < 1e-9, name


def test_right_action_on_cyclic_vector(m2_grading):
    gns = v.build_gns(m2_grading.system)
    a = E12 + 0.3 * E11
    # x a for x = Omega equals a Omega in the tracial case
    assert np.abs(v.right_action(gns, gns.omega, a) - gns.vector_of(a)).max() < TOL
    x = gns.vector_of(E21)
    assert np.abs(v.right_action(gns, x, np.eye(2)) - x).max() < TOL


def test_right_action_is_right_multiplication(m2_grading):
    gns = v.build_gns(m2_grading.system)
    rng = np.random.default_rng(2)
    alg = m2_grading.system.algebra
    for _ in range(5):
        a = v.random_element(alg, rng)
        b = v.random_element(alg, rng)
        x = gns.vector_of(b)
        # independent oracle: x . a = (b a) Omega
        assert np.abs(v.right_action(gns, x, a)
                      - gns.vector_of(b @ a)).max() < 1e-10


def test_left_right_distinction(m2_grading):
    gns = v.build_gns(m2_grading.system)
    x = gns.vector_of(E12)
    right = v.right_action(gns, x, E11)   # (E12 E11) Omega = 0
    left = gns.left(E11) @ x              # (E11 E12) Omega = E12 Omega
    assert np.abs(right).max() < TOL
    assert np.abs(left - x).max() < TOL


def test_right_action_is_a_right_action(m2_grading):
    gns = v.build_gns(m2_grading.system)
    rng = np.random.default_rng(4)
    alg = m2_grading.system.algebra
    x = gns.vector_of(v.random_element(alg, rng))
    a = v.random_element(alg, rng)
    b = v.random_element(alg, rng)
    once = v.right_action(gns, v.right_action(gns, x, a), b)
    composed = v.right_action(gns, x, a @ b)
    assert np.abs(once - composed).max() < 1e-10


def test_trace_not_faithful_raises():
    alg = v.generate_algebra([E12], 2)
    # positive but unfaithful density on the full matrix algebra
    tr = v.TraceFunctional(np.diag([1.0, 0.0]).astype(complex), normalized=True)
    dyn = v.StarAutomorphism(np.eye(4, dtype=complex))
    sys = v.WStarSystem(alg, tr, dyn)
    with pytest.raises(v.errors.TraceNotFaithful):
        v.build_gns(sys)


def test_mirrored_expectation_agrees_on_cyclic_vector(analyses):
    # D'(b) Omega = D(j(b)) Omega for commutant elements b
    rng = np.random.default_rng(19)
    for name, an in analyses.items():
        gns = an.gns
        exp = v.conditional_expectation(an.built.system, an.built.sub)
        for _ in range(5):
            a = v.random_element(an.built.system.algebra, rng)
            conditioned = gns.left(exp.apply(a))
            lhs = gns.j_op(conditioned) @ gns.omega
            rhs = conditioned @ gns.omega
            assert np.abs(lhs - rhs).max() < 1e-9, name


def test_conjugation_fixes_cyclic_subspace(analyses):
    # J e J = e, i.e. the modular conjugation preserves the F-cyclic subspace
    for name, an in analyses.items():
        k, e = an.gns.conj_matrix, an.basic.e
        assert np.abs(k @ e.conj() @ k.conj() - e).max() < 1e-9, name
