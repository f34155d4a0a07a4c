import random
from fractions import Fraction

import pytest

from bianchi import linalg
from bianchi.classify import (
    BianchiType,
    GLTransform,
    act,
    b2_invariant,
    classify,
    signature_counts,
    sym_algebra_dim,
)
from bianchi.cohomology import coboundary_matrix
from bianchi.errors import NotLieError
from bianchi.sampling import (
    random_invertible,
    random_lie_tensor,
    random_symmetric,
    random_tensor,
)
from bianchi.structures import (
    StructureTensor,
    alpha_tensor,
    disassemble,
    jacobi_structure_constants,
    skew_from_axial,
)

D = StructureTensor.diagonal
CHARGE = skew_from_axial((0, 0, 1))


# -- action ------------------------------------------------------------------

def test_act_identity():
    q = StructureTensor([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    assert act(GLTransform.identity(), q) == q


def test_act_scaling():
    psi = GLTransform([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
    assert act(psi, D(1, 0, 0)) == 32 * D(1, 0, 0)


def test_act_permutation_sign():
    psi = GLTransform([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert act(psi, D(1, 0, 0)) == -1 * D(0, 1, 0)
    assert classify(act(psi, D(1, 0, 0))) == BianchiType("A1")


def test_act_group_law():
    rng = random.Random(55)
    for _ in range(60):
        q = random_tensor(rng)
        p1, p2 = random_invertible(rng), random_invertible(rng)
        assert act(p1, act(p2, q)) == act(p2.then(p1), q)


def test_act_preserves_jacobi_even_on_non_lie():
    rng = random.Random(56)
    for i in range(80):
        q = random_tensor(rng) if i % 2 else random_lie_tensor(rng)
        psi = random_invertible(rng)
        assert jacobi_structure_constants(act(psi, q)) == jacobi_structure_constants(q)


def test_act_preserves_disassembling_parts():
    rng = random.Random(57)
    for _ in range(40):
        q = random_tensor(rng)
        psi = random_invertible(rng)
        parts = disassemble(act(psi, q))
        assert parts.S == act(psi, disassemble(q).S)
        assert parts.A == act(psi, disassemble(q).A)


def test_gl_transform_rejects_singular():
    with pytest.raises(ValueError):
        GLTransform([[1, 0, 0], [0, 1, 0], [1, 1, 0]])


# -- signature ----------------------------------------------------------------

def test_signature_examples():
    assert signature_counts(D(1, 1, -1)) == (2, 1, 0)
    assert signature_counts(StructureTensor.zero()) == (0, 0, 3)
    assert signature_counts([[0, 1, 0], [1, 0, 0], [0, 0, 0]]) == (1, 1, 1)


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        signature_counts([[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_signature_against_congruence_diagonalization():
    # independent oracle: congruence preserves inertia, so diagonalize and
    # count signs directly
    rng = random.Random(58)
    for _ in range(120):
        s = random_symmetric(rng)
        p = linalg.congruence_diagonalize(s.matrix())
        d = linalg.mat_mul(linalg.mat_mul(linalg.transpose(p), s.matrix()), p)
        diag = [d[i][i] for i in range(3)]
        expected = (
            sum(1 for x in diag if x > 0),
            sum(1 for x in diag if x < 0),
            sum(1 for x in diag if x == 0),
        )
        assert signature_counts(s) == expected


# -- B2 invariant ---------------------------------------------------------------

def test_b2_invariant_examples():
    assert b2_invariant(D(2, 2, 0), (0, 0, 1)) == 4
    assert b2_invariant(D(1, -1, 0), (0, 0, 1)) == -1
    assert b2_invariant(D(2, 2, 0), (0, 0, 3)) == Fraction(4, 9)


def test_b2_invariant_validation():
    with pytest.raises(ValueError):
        b2_invariant(D(1, 0, 0), (0, 0, 1))  # rank 1
    with pytest.raises(ValueError):
        b2_invariant(D(1, 1, 0), (1, 0, 0))  # not in kernel
    with pytest.raises(ValueError):
        b2_invariant(D(1, 1, 0), (0, 0, 0))  # zero vector


def test_b2_invariant_exactly_act_invariant():
    rng = random.Random(60)
    count = 0
    while count < 200:
        q = random_lie_tensor(rng)
        parts = disassemble(q)
        if all(x == 0 for x in parts.a) or linalg.rank(parts.S.matrix()) != 2:
            continue
        count += 1
        rho = b2_invariant(parts.S, parts.a)
        psi = random_invertible(rng)
        moved = disassemble(act(psi, q))
        assert b2_invariant(moved.S, moved.a) == rho


# -- classification ---------------------------------------------------------------

def test_classify_normal_forms():
    assert classify(StructureTensor.zero()) == BianchiType("A0")
    assert classify(D(1, 0, 0)) == BianchiType("A1")
    assert classify(D(1, 1, 0)) == BianchiType("A2plus")
    assert classify(D(1, -1, 0)) == BianchiType("A2minus")
    assert classify(D(1, 1, 1)) == BianchiType("A3plus")
    assert classify(D(1, 1, -1)) == BianchiType("A3minus")
    assert classify(CHARGE) == BianchiType("B0")
    assert classify(D(1, 0, 0) + CHARGE) == BianchiType("B1")
    assert classify(D(1, 1, 0) + CHARGE) == BianchiType("B2", rho=Fraction(1))
    assert classify(D(1, -1, 0) + CHARGE) == BianchiType("B2", rho=Fraction(-1))


def test_classify_negative_definite_is_plus():
    # q and -q lie on the same orbit, so both definite signs are elliptic
    assert classify(D(-1, -1, 0)) == BianchiType("A2plus")
    assert classify(D(-1, -1, -1)) == BianchiType("A3plus")


def test_classify_rejects_non_lie():
    with pytest.raises(NotLieError):
        classify(D(1, 1, 1) + CHARGE)


def test_classify_gl_invariant_with_payload():
    rng = random.Random(61)
    for _ in range(150):
        q = random_lie_tensor(rng)
        psi = random_invertible(rng)
        assert classify(act(psi, q)) == classify(q)


def test_classify_unimodular_depends_only_on_inertia():
    # permutations of the diagonal leave each unimodular class fixed
    perms = [
        GLTransform([[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
        GLTransform([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        GLTransform([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    ]
    for q in [D(1, 1, 0), D(1, -1, 0), D(1, 1, 1), D(1, 1, -1), D(1, 0, 0)]:
        for psi in perms:
            assert classify(act(psi, q)) == classify(q)


def test_bianchi_type_payload_validation():
    with pytest.raises(ValueError):
        BianchiType("B2")
    with pytest.raises(ValueError):
        BianchiType("B2", rho=Fraction(0))
    with pytest.raises(ValueError):
        BianchiType("A1", rho=Fraction(1))
    with pytest.raises(ValueError):
        BianchiType("Q7")


# -- symmetry algebra ----------------------------------------------------------

def test_sym_algebra_dims_of_normal_forms():
    assert sym_algebra_dim(D(1, 1, 1)) == 3
    assert sym_algebra_dim(D(1, 0, 0)) == 6
    assert sym_algebra_dim(CHARGE) == 6
    assert sym_algebra_dim(D(1, 1, 0)) == 4
    assert sym_algebra_dim(StructureTensor.zero()) == 9


def test_sym_dim_complements_coboundary_rank():
    rng = random.Random(62)
    for _ in range(40):
        q = random_lie_tensor(rng)
        assert sym_algebra_dim(q) + linalg.rank(coboundary_matrix(q)) == 9


def test_sym_of_sum_is_intersection():
    # symmetries of a disassembled structure are exactly the common
    # symmetries of its two parts, as subspaces and not just dimensions
    rng = random.Random(63)
    checked = 0
    while checked < 40:
        q = random_lie_tensor(rng)
        parts = disassemble(q)
        if parts.S.is_zero or parts.A.is_zero:
            continue
        checked += 1
        kern_q = linalg.nullspace(coboundary_matrix(q))
        kern_s = linalg.nullspace(coboundary_matrix(parts.S))
        kern_a = linalg.nullspace(coboundary_matrix(parts.A))
        stacked = kern_s + kern_a
        dim_intersection = len(kern_s) + len(kern_a) - linalg.rank(stacked)
        assert len(kern_q) == dim_intersection
        # and sym(q) sits inside both kernels
        rows_s = linalg.row_space_basis(kern_s)
        piv_s = [next(i for i, x in enumerate(r) if x == 1) for r in rows_s]
        rows_a = linalg.row_space_basis(kern_a)
        piv_a = [next(i for i, x in enumerate(r) if x == 1) for r in rows_a]
        for v in kern_q:
            assert linalg.in_row_span(rows_s, piv_s, v)
            assert linalg.in_row_span(rows_a, piv_a, v)
