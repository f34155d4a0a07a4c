import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bianchi.exalg import (
    Poly3,
    PolyForm,
    PolyMultiVector,
    differential,
    dualize,
    dx,
    exterior_d,
    insert_form,
    lie_derivative,
    linear_vector_field,
    liouville_field,
    pd,
    rat,
    schouten,
    wedge,
)
from bianchi.structures import (
    StructureTensor,
    alpha_tensor,
    half_square_tensor,
    jacobiator_vector,
)

x1 = Poly3.variable(1)
x2 = Poly3.variable(2)
x3 = Poly3.variable(3)

fracs = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def random_form(rng, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(3))
        mask = rng.randint(0, 7)
        terms[(exps, mask)] = Fraction(rng.randint(-4, 4))
    return PolyForm(terms)


def random_homogeneous_mv(rng, degree, max_exp=2):
    masks = [m for m in range(8) if bin(m).count("1") == degree]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(3))
        terms[(exps, rng.choice(masks))] = Fraction(rng.randint(-3, 3))
    return PolyMultiVector(terms)


# -- wedge ----------------------------------------------------------------

def test_wedge_basis_product():
    assert wedge(dx(1), dx(2)) == PolyForm.basis([1, 2])


def test_wedge_alternation():
    assert wedge(dx(1), dx(1)).is_zero


def test_wedge_sign_rule():
    a = x1 * dx(2)
    b = x2 * dx(1)
    assert wedge(a, b) == (-x1 * x2) * PolyForm.basis([1, 2])


def test_wedge_rejects_mixed_kinds():
    with pytest.raises(TypeError):
        wedge(dx(1), pd(1))


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_wedge_graded_commutative(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    p = rng.randint(0, 3)
    q = rng.randint(0, 3)
    a = _homogeneous_form(rng, p)
    b = _homogeneous_form(rng, q)
    sign = -1 if (p * q) % 2 else 1
    assert wedge(a, b) == sign * Fraction(1) * wedge(b, a)


def _homogeneous_form(rng, degree, max_exp=2):
    masks = [m for m in range(8) if bin(m).count("1") == degree]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        exps = tuple(rng.randint(0, max_exp) for _ in range(3))
        terms[(exps, rng.choice(masks))] = Fraction(rng.randint(-3, 3))
    return PolyForm(terms)


def test_wedge_associative_sample():
    rng = random.Random(5)
    for _ in range(40):
        a, b, c = (random_form(rng) for _ in range(3))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


# -- exterior derivative ---------------------------------------------------

def test_d_of_x1_dx1_vanishes():
    assert exterior_d(PolyForm.from_poly(x1, 0b001)).is_zero


def test_d_of_alpha3():
    alpha3 = alpha_tensor(3).alpha_form()
    assert exterior_d(alpha3) == 2 * Fraction(1) * PolyForm.basis([1, 2])


def test_d_product_rule_example():
    form = PolyForm.from_poly(x1 * x2, 0b100)
    expected = x2 * PolyForm.basis([1, 3]) + x1 * PolyForm.basis([2, 3])
    assert exterior_d(form) == expected


def test_d_squared_zero_on_200_random_forms():
    rng = random.Random(2024)
    for _ in range(200):
        form = random_form(rng, max_terms=5, max_exp=3)
        assert exterior_d(exterior_d(form)).is_zero


def test_d_raises_degree_and_leibniz():
    rng = random.Random(11)
    for _ in range(40):
        p = rng.randint(0, 2)
        q = rng.randint(0, 2)
        a = _homogeneous_form(rng, p)
        b = _homogeneous_form(rng, q)
        sign = -1 if p % 2 else 1
        lhs = exterior_d(wedge(a, b))
        rhs = wedge(exterior_d(a), b) + sign * Fraction(1) * wedge(a, exterior_d(b))
        assert lhs == rhs


# -- schouten ---------------------------------------------------------------

def test_schouten_mixed_commutator_value():
    p = half_square_tensor(1).bivector()
    q = alpha_tensor(1).bivector()
    expected = PolyMultiVector.from_poly(2 * x1, 0b111)
    assert schouten(p, q) == expected


def test_schouten_mixed_commutator_zero_branch():
    p = half_square_tensor(1).bivector()
    q = alpha_tensor(2).bivector()
    assert schouten(p, q).is_zero


def test_schouten_self_bracket_of_orthogonal_structure():
    # q = identity is a Lie structure; confirmed by the brute-force oracle
    q = StructureTensor.diagonal(1, 1, 1)
    assert jacobiator_vector(q) == (0, 0, 0)
    p = q.bivector()
    assert schouten(p, p).is_zero


def test_schouten_vector_fields_reduce_to_commutator():
    # [x1 d2, x2 d3] = x1 d3
    a = PolyMultiVector.from_poly(x1, 0b010)
    b = PolyMultiVector.from_poly(x2, 0b100)
    assert schouten(a, b) == PolyMultiVector.from_poly(x1, 0b100)
    assert schouten(b, a) == -PolyMultiVector.from_poly(x1, 0b100)


def test_schouten_normalization_doubles_jacobi_defect():
    # the pinned sign convention: self-bracket equals twice the cyclic
    # Jacobi defect of the encoded bracket, for Lie and non-Lie samples
    rng = random.Random(99)
    for _ in range(500):
        q = StructureTensor([[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)])
        j = jacobiator_vector(q)
        expected = PolyMultiVector(
            {(tuple(1 if i == k else 0 for i in range(3)), 0b111): 2 * j[k] for k in range(3) if j[k]}
        )
        p = q.bivector()
        assert schouten(p, p) == expected


def test_schouten_graded_antisymmetry():
    rng = random.Random(31)
    for _ in range(100):
        dp = rng.randint(1, 3)
        dq = rng.randint(1, 3)
        p = random_homogeneous_mv(rng, dp)
        q = random_homogeneous_mv(rng, dq)
        sign = -1 if ((dp - 1) * (dq - 1)) % 2 else 1
        assert (schouten(p, q) + sign * Fraction(1) * schouten(q, p)).is_zero


def test_schouten_graded_jacobi():
    rng = random.Random(77)
    for _ in range(60):
        da, db, dc = (rng.randint(1, 2) for _ in range(3))
        a = random_homogeneous_mv(rng, da, max_exp=1)
        b = random_homogeneous_mv(rng, db, max_exp=1)
        c = random_homogeneous_mv(rng, dc, max_exp=1)
        lhs = schouten(a, schouten(b, c))
        sign = -1 if ((da - 1) * (db - 1)) % 2 else 1
        rhs = schouten(schouten(a, b), c) + sign * Fraction(1) * schouten(b, schouten(a, c))
        assert lhs == rhs


def test_schouten_degree_drop():
    p = StructureTensor.diagonal(1, 2, 3).bivector()
    q = alpha_tensor(1).bivector()
    bracket = schouten(p, q)
    assert bracket.grades() in ([], [3])


# -- Lie derivative ---------------------------------------------------------

def test_liouville_scales_form_by_total_degree():
    form = PolyForm.from_poly(x1, 0b010)  # x1 dx2, total degree 2
    assert lie_derivative(liouville_field(), form) == 2 * Fraction(1) * form


def test_liouville_on_monomial_tensors():
    delta = liouville_field()
    for mask in range(8):
        for exps in [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 0, 1)]:
            form = PolyForm({(exps, mask): Fraction(1)})
            k = sum(exps) + bin(mask).count("1")
            assert lie_derivative(delta, form) == k * Fraction(1) * form
            mv = PolyMultiVector({(exps, mask): Fraction(1)})
            w = sum(exps) - bin(mask).count("1")
            assert lie_derivative(delta, mv) == w * Fraction(1) * mv


def test_liouville_bidegree_on_polynomial_part():
    # a bidegree (p, q) component has coefficients that the Euler operator
    # multiplies by p
    rng = random.Random(4)
    for _ in range(30):
        p_deg = rng.randint(0, 3)
        terms = {}
        for _ in range(3):
            exps = [0, 0, 0]
            for _ in range(p_deg):
                exps[rng.randint(0, 2)] += 1
            terms[(tuple(exps), rng.randint(0, 7))] = Fraction(rng.randint(-3, 3))
        mv = PolyMultiVector(terms)
        for indices, coeff in mv.components():
            euler = sum(
                (Poly3.variable(i + 1) * coeff.diff(i + 1) for i in range(3)),
                Poly3.zero(),
            )
            assert euler == p_deg * coeff


def test_lie_derivative_symmetry_formula_for_pure_charge():
    # L_{X_phi} of the third charge expands over the charge basis with
    # coefficients -phi[0][2], -phi[1][2], phi[0][0] + phi[1][1]
    rng = random.Random(8)
    alpha = [alpha_tensor(i).alpha_form() for i in (1, 2, 3)]
    for _ in range(25):
        phi = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        lhs = lie_derivative(linear_vector_field(phi), alpha[2])
        rhs = (
            (-phi[0][2]) * alpha[0]
            + (-phi[1][2]) * alpha[1]
            + (phi[0][0] + phi[1][1]) * alpha[2]
        )
        assert lhs == rhs


def test_lie_derivative_single_entry_example():
    phi = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    phi[0][0] = 1
    alpha3 = alpha_tensor(3).alpha_form()
    assert lie_derivative(linear_vector_field(phi), alpha3) == alpha3


def test_lie_derivative_kills_constants():
    one = PolyForm.from_poly(Poly3.constant(1))
    x_field = linear_vector_field([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert lie_derivative(x_field, one).is_zero


def test_lie_derivative_on_functions_is_directional():
    f = PolyForm.from_poly(x1 * x2)
    field = linear_vector_field([[1, 0, 0], [0, 0, 0], [0, 0, 0]])  # x1 d/dx1
    assert lie_derivative(field, f) == PolyForm.from_poly(x1 * x2)


def test_lie_derivative_leibniz_over_wedge():
    rng = random.Random(3)
    for _ in range(30):
        phi = [[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        v = linear_vector_field(phi)
        a = random_form(rng, max_terms=2)
        b = random_form(rng, max_terms=2)
        lhs = lie_derivative(v, wedge(a, b))
        rhs = wedge(lie_derivative(v, a), b) + wedge(a, lie_derivative(v, b))
        assert lhs == rhs


def test_lie_derivative_requires_vector_field():
    with pytest.raises(ValueError):
        lie_derivative(PolyMultiVector.basis([1, 2]), dx(1))


# -- duality ----------------------------------------------------------------

def test_dualize_volume_normalization():
    assert dualize(PolyMultiVector.basis([1, 2, 3])) == PolyForm.from_poly(Poly3.constant(1))


def test_dualize_charge_bivector():
    p = alpha_tensor(3).bivector()
    assert dualize(p) == x1 * dx(2) - x2 * dx(1)


def test_dualize_round_trip_on_random_linear_bivectors():
    rng = random.Random(123)
    for _ in range(50):
        q = StructureTensor([[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)])
        p = q.bivector()
        assert dualize(dualize(p)) == p


def test_dualize_is_signed_permutation_on_basis():
    seen = set()
    for mask in range(8):
        mv = PolyMultiVector({((0, 0, 0), mask): Fraction(1)})
        image = dualize(mv)
        terms = list(image.terms())
        assert len(terms) == 1
        (exps, out_mask), coeff = terms[0]
        assert exps == (0, 0, 0)
        assert coeff in (Fraction(1), Fraction(-1))
        assert bin(out_mask).count("1") == 3 - bin(mask).count("1")
        seen.add(out_mask)
        assert dualize(image) == mv
    assert seen == set(range(8))


def test_duality_pairing_contract():
    # P(f, g) * vol = df ^ dg ^ alpha for the tensor's bivector and 1-form
    rng = random.Random(17)
    vol = PolyForm.basis([1, 2, 3])
    for _ in range(30):
        q = StructureTensor([[Fraction(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)])
        f = Poly3({(1, 0, 0): Fraction(rng.randint(-2, 2)), (0, 1, 0): Fraction(rng.randint(-2, 2))})
        g = Poly3({(0, 1, 1): Fraction(rng.randint(-2, 2)), (0, 0, 1): Fraction(rng.randint(-2, 2))})
        # evaluate the bivector on (df, dg) by double contraction
        once = insert_form(differential(f), q.bivector())
        value_field = insert_form(differential(g), once)
        lhs = value_field.coefficient([]) * vol
        rhs = wedge(wedge(differential(f), differential(g)), q.alpha_form())
        assert lhs == rhs


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(5) == Fraction(5)
    with pytest.raises(TypeError):
        rat(0.5)
