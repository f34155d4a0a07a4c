"""Exact graded calculus on 3-space.

Scalars are rationals (``fractions.Fraction``) and every operation here is
exact; no floating point enters this module.  Polynomial multivector fields
and polynomial differential forms on coordinates x1, x2, x3 are encoded as
elements of a superalgebra: a term is a monomial in the even variables
times a product of anticommuting generators, one per coordinate.  For a
:class:`PolyMultiVector` the odd generator ``i`` stands for d/dx_i, for a
:class:`PolyForm` it stands for dx_i.

The Schouten bracket is realized as an odd Poisson bracket on this
encoding.  Its overall sign is pinned by one normalization, checked in the
test suite: for a candidate structure tensor the self-bracket of the
associated linear bivector equals twice the cyclic Jacobi defect of the
bracket the tensor encodes (see ``structures.jacobiator_vector``).  With
this convention the bracket of two vector fields is their commutator and
the bracket of a vector field with any multivector is its Lie derivative.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Tuple, Union

Rational = Fraction

Exponents = Tuple[int, int, int]

_ZERO_EXP: Exponents = (0, 0, 0)
_FULL_MASK = 0b111


def rat(value) -> Fraction:
    """Coerce int, string ('p/q' or 'n'), or Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _bits(mask: int):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def _merge_sign(mask_a: int, mask_b: int) -> int:
    """Sign of reordering the concatenation of two increasing products.

    Returns 0 when the factors share a generator.
    """
    if mask_a & mask_b:
        return 0
    inversions = 0
    for j in _bits(mask_b):
        inversions += _popcount(mask_a >> (j + 1))
    return -1 if inversions & 1 else 1


def _right_derivative_sign(mask: int, k: int) -> int:
    # move generator k to the last position
    return -1 if _popcount(mask >> (k + 1)) & 1 else 1


def _left_derivative_sign(mask: int, k: int) -> int:
    # move generator k to the first position
    return -1 if _popcount(mask & ((1 << k) - 1)) & 1 else 1


class Poly3:
    """Sparse polynomial in x1, x2, x3 with exact rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponents, Fraction] | None = None):
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                coeff = rat(coeff)
                if coeff:
                    clean[tuple(exps)] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "Poly3":
        return cls()

    @classmethod
    def constant(cls, c) -> "Poly3":
        return cls({_ZERO_EXP: rat(c)})

    @classmethod
    def variable(cls, i: int) -> "Poly3":
        """The coordinate x_i, i in {1, 2, 3}."""
        if i not in (1, 2, 3):
            raise ValueError("coordinate index must be 1, 2 or 3")
        e = [0, 0, 0]
        e[i - 1] = 1
        return cls({tuple(e): Fraction(1)})

    def terms(self):
        return self._terms.items()

    def coefficient(self, exps: Exponents) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def total_degree(self) -> int:
        """Max of e1+e2+e3 over stored monomials; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def diff(self, i: int) -> "Poly3":
        """Partial derivative with respect to x_i (i in {1, 2, 3})."""
        out = {}
        k = i - 1
        for exps, coeff in self._terms.items():
            if exps[k]:
                e = list(exps)
                c = coeff * e[k]
                e[k] -= 1
                out[tuple(e)] = out.get(tuple(e), Fraction(0)) + c
        return Poly3(out)

    def evaluate(self, point) -> Fraction:
        x = [rat(v) for v in point]
        total = Fraction(0)
        for (e1, e2, e3), coeff in self._terms.items():
            total += coeff * x[0] ** e1 * x[1] ** e2 * x[2] ** e3
        return total

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            out[exps] = out.get(exps, Fraction(0)) + coeff
        return Poly3(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly3({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, _Graded):
            return NotImplemented
        other = _as_poly(other)
        out = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return Poly3(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly3.constant(other)
        if not isinstance(other, Poly3):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coeff in sorted(self._terms.items()):
            factors = [] if coeff == 1 and any(exps) else [str(coeff)]
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            parts.append("*".join(factors) or str(coeff))
        return " + ".join(parts)


def _as_poly(value) -> Poly3:
    if isinstance(value, Poly3):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Poly3.constant(rat(value))
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


x1 = Poly3.variable(1)
x2 = Poly3.variable(2)
x3 = Poly3.variable(3)


class _Graded:
    """Shared superalgebra arithmetic for forms and multivectors."""

    __slots__ = ("_terms",)
    _odd_prefix = "e"

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        if terms:
            for (exps, mask), coeff in terms.items():
                coeff = rat(coeff)
                if coeff:
                    clean[(tuple(exps), mask)] = coeff
        self._terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def from_poly(cls, p, mask: int = 0):
        p = _as_poly(p)
        return cls({(e, mask): c for e, c in p.terms()})

    @classmethod
    def basis(cls, indices: Iterable[int]):
        """Basis element for generator indices in {1, 2, 3} (must increase)."""
        idx = list(indices)
        if sorted(set(idx)) != idx:
            raise ValueError("basis indices must be strictly increasing")
        mask = 0
        for i in idx:
            if i not in (1, 2, 3):
                raise ValueError("generator index must be 1, 2 or 3")
            mask |= 1 << (i - 1)
        return cls({(_ZERO_EXP, mask): Fraction(1)})

    # -- structure ----------------------------------------------------
    def terms(self):
        return self._terms.items()

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, indices: Iterable[int]) -> Poly3:
        """Polynomial coefficient of the basis product for ``indices``."""
        mask = 0
        for i in indices:
            mask |= 1 << (i - 1)
        out = {}
        for (exps, m), coeff in self._terms.items():
            if m == mask:
                out[exps] = coeff
        return Poly3(out)

    def components(self):
        """Pairs (sorted generator indices, polynomial coefficient)."""
        by_mask = {}
        for (exps, mask), coeff in self._terms.items():
            by_mask.setdefault(mask, {})[exps] = coeff
        for mask in sorted(by_mask):
            yield tuple(i + 1 for i in _bits(mask)), Poly3(by_mask[mask])

    def poly_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(exps) for exps, _ in self._terms)

    def grade(self) -> int:
        """Common odd degree of all terms; raises if inhomogeneous."""
        degrees = {_popcount(mask) for _, mask in self._terms}
        if not degrees:
            return 0
        if len(degrees) > 1:
            raise ValueError("element is not homogeneous in odd degree")
        return degrees.pop()

    def grades(self):
        return sorted({_popcount(mask) for _, mask in self._terms})

    # -- arithmetic ----------------------------------------------------
    def _same_kind(self, other):
        if type(self) is not type(other):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )

    def __add__(self, other):
        self._same_kind(other)
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        self._same_kind(other)
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = Poly3.constant(scalar)
        if not isinstance(scalar, Poly3):
            return NotImplemented
        out = {}
        for (exps, mask), coeff in self._terms.items():
            for pe, pc in scalar.terms():
                e = (exps[0] + pe[0], exps[1] + pe[1], exps[2] + pe[2])
                key = (e, mask)
                out[key] = out.get(key, Fraction(0)) + coeff * pc
        return type(self)(out)

    __rmul__ = __mul__

    def wedge(self, other):
        self._same_kind(other)
        out = {}
        for (ea, ma), ca in self._terms.items():
            for (eb, mb), cb in other._terms.items():
                sign = _merge_sign(ma, mb)
                if not sign:
                    continue
                e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
                key = (e, ma | mb)
                out[key] = out.get(key, Fraction(0)) + sign * ca * cb
        return type(self)(out)

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for (exps, mask), coeff in sorted(self._terms.items(), key=lambda t: (t[0][1], t[0][0])):
            factors = []
            if coeff != 1 or (not any(exps) and mask == 0):
                factors.append(str(coeff))
            for i, e in enumerate(exps):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            for i in _bits(mask):
                factors.append(f"{self._odd_prefix}{i + 1}")
            parts.append("*".join(factors) or str(coeff))
        return " + ".join(parts)


class PolyForm(_Graded):
    """Polynomial differential form; odd generator i is dx_i."""

    __slots__ = ()
    _odd_prefix = "dx"

    def total_degree(self) -> int:
        """Max of polynomial degree plus form degree over the terms."""
        if not self._terms:
            return -1
        return max(sum(exps) + _popcount(mask) for exps, mask in self._terms)


class PolyMultiVector(_Graded):
    """Polynomial multivector field; odd generator i is d/dx_i."""

    __slots__ = ()
    _odd_prefix = "e"


def dx(i: int) -> PolyForm:
    return PolyForm.basis([i])


def pd(i: int) -> PolyMultiVector:
    """The coordinate vector field d/dx_i."""
    return PolyMultiVector.basis([i])


def wedge(a, b):
    """Exterior product of two forms or two multivectors."""
    return a.wedge(b)


def exterior_d(a: PolyForm) -> PolyForm:
    """Exterior derivative; raises the form degree by one and squares to 0."""
    if not isinstance(a, PolyForm):
        raise TypeError("exterior_d takes a PolyForm")
    out = {}
    for (exps, mask), coeff in a.terms():
        for k in range(3):
            if not exps[k]:
                continue
            sign = _merge_sign(1 << k, mask)
            if not sign:
                continue
            e = list(exps)
            c = coeff * e[k] * sign
            e[k] -= 1
            key = (tuple(e), mask | (1 << k))
            out[key] = out.get(key, Fraction(0)) + c
    return PolyForm(out)


def differential(f: Poly3) -> PolyForm:
    """df as a 1-form."""
    f = _as_poly(f)
    return exterior_d(PolyForm.from_poly(f))


def _theta_derivative(terms, k: int, sign_fn):
    out = {}
    bit = 1 << k
    for (exps, mask), coeff in terms:
        if mask & bit:
            key = (exps, mask & ~bit)
            out[key] = out.get(key, Fraction(0)) + coeff * sign_fn(mask, k)
    return out


def _x_derivative(terms, k: int):
    out = {}
    for (exps, mask), coeff in terms:
        if exps[k]:
            e = list(exps)
            c = coeff * e[k]
            e[k] -= 1
            key = (tuple(e), mask)
            out[key] = out.get(key, Fraction(0)) + c
    return out


def _raw_product(dict_a, dict_b, out, factor=1):
    for (ea, ma), ca in dict_a.items():
        for (eb, mb), cb in dict_b.items():
            sign = _merge_sign(ma, mb)
            if not sign:
                continue
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            key = (e, ma | mb)
            out[key] = out.get(key, Fraction(0)) + factor * sign * ca * cb


def _kappa(terms_a, terms_b, out, factor):
    # sum_k (right derivative of a by generator k) * (d b / dx_k)
    for k in range(3):
        da = _theta_derivative(terms_a, k, _right_derivative_sign)
        if not da:
            continue
        db = _x_derivative(terms_b, k)
        if not db:
            continue
        _raw_product(da, db, out, factor)


def schouten(p: PolyMultiVector, q: PolyMultiVector) -> PolyMultiVector:
    """Schouten bracket of two multivector fields.

    Degree of the result is deg p + deg q - 1.  On vector fields this is
    the commutator; the sign convention is fixed by the normalization
    described in the module docstring.
    """
    if not isinstance(p, PolyMultiVector) or not isinstance(q, PolyMultiVector):
        raise TypeError("schouten takes two PolyMultiVector arguments")
    by_grade_p = {}
    for (exps, mask), coeff in p.terms():
        by_grade_p.setdefault(_popcount(mask), {})[(exps, mask)] = coeff
    by_grade_q = {}
    for (exps, mask), coeff in q.terms():
        by_grade_q.setdefault(_popcount(mask), {})[(exps, mask)] = coeff
    out = {}
    for a, terms_a in by_grade_p.items():
        for b, terms_b in by_grade_q.items():
            twist = -1 if ((a - 1) * (b - 1)) % 2 else 1
            _kappa(terms_a.items(), terms_b.items(), out, twist)
            _kappa(terms_b.items(), terms_a.items(), out, -1)
    return PolyMultiVector(out)


def insert_form(omega: PolyForm, p: PolyMultiVector) -> PolyMultiVector:
    """Contraction of a 1-form into a multivector field."""
    if not isinstance(omega, PolyForm) or not isinstance(p, PolyMultiVector):
        raise TypeError("insert_form takes (PolyForm, PolyMultiVector)")
    if omega.grades() not in ([], [1]):
        raise ValueError("insertion is defined for 1-forms")
    out = {}
    for k in range(3):
        comp = {e: c for e, c in omega.coefficient([k + 1]).terms()}
        if not comp:
            continue
        dp = _theta_derivative(p.terms(), k, _left_derivative_sign)
        comp_terms = {(e, 0): c for e, c in comp.items()}
        _raw_product(comp_terms, dp, out)
    return PolyMultiVector(out)


def insert_vector(v: PolyMultiVector, omega: PolyForm) -> PolyForm:
    """Contraction of a vector field into a differential form."""
    if not isinstance(v, PolyMultiVector) or not isinstance(omega, PolyForm):
        raise TypeError("insert_vector takes (PolyMultiVector, PolyForm)")
    if v.grades() not in ([], [1]):
        raise ValueError("insertion is defined for vector fields")
    out = {}
    for k in range(3):
        comp = {e: c for e, c in v.coefficient([k + 1]).terms()}
        if not comp:
            continue
        domega = _theta_derivative(omega.terms(), k, _left_derivative_sign)
        comp_terms = {(e, 0): c for e, c in comp.items()}
        _raw_product(comp_terms, domega, out)
    return PolyForm(out)


def lie_derivative(v: PolyMultiVector, t: Union[PolyForm, PolyMultiVector]):
    """Lie derivative along a vector field of a form or a multivector.

    On functions (0-forms) this is the directional derivative; along the
    Liouville field it scales a form monomial by its total degree and a
    multivector monomial by polynomial degree minus vector degree.
    """
    if not isinstance(v, PolyMultiVector):
        raise TypeError("lie_derivative takes a vector field first")
    if v.grades() not in ([], [1]):
        raise ValueError("lie_derivative requires a degree-1 multivector")
    if isinstance(t, PolyMultiVector):
        return schouten(v, t)
    if isinstance(t, PolyForm):
        return exterior_d(insert_vector(v, t)) + insert_vector(v, exterior_d(t))
    raise TypeError("lie_derivative acts on PolyForm or PolyMultiVector")


def dualize(t):
    """Volume-form duality between k-vectors and (3-k)-forms.

    An involution in dimension 3: applying it twice returns the argument.
    The normalization makes the trivector e1^e2^e3 dual to the constant
    0-form 1 and matches the pairing P(f, g) * vol = df ^ dg ^ alpha for
    linear bivectors and their dual 1-forms.
    """
    if isinstance(t, PolyMultiVector):
        target = PolyForm
    elif isinstance(t, PolyForm):
        target = PolyMultiVector
    else:
        raise TypeError("dualize acts on PolyForm or PolyMultiVector")
    out = {}
    for (exps, mask), coeff in t.terms():
        comp = _FULL_MASK & ~mask
        sign = _merge_sign(mask, comp)
        out[(exps, comp)] = sign * coeff
    return target(out)


def liouville_field() -> PolyMultiVector:
    """The Euler vector field x1 d/dx1 + x2 d/dx2 + x3 d/dx3."""
    total = PolyMultiVector.zero()
    for i in (1, 2, 3):
        total = total + PolyMultiVector.from_poly(Poly3.variable(i), 1 << (i - 1))
    return total


def linear_vector_field(phi) -> PolyMultiVector:
    """Vector field of a 3x3 matrix: sum of phi[i][j] x_{j+1} d/dx_{i+1}.

    Linear vector fields are exactly the bidegree (1, 1) multivectors and
    stand in bijection with endomorphisms of the coordinate space.
    """
    terms = {}
    for i in range(3):
        for j in range(3):
            c = rat(phi[i][j])
            if c:
                e = [0, 0, 0]
                e[j] = 1
                key = (tuple(e), 1 << i)
                terms[key] = terms.get(key, Fraction(0)) + c
    return PolyMultiVector(terms)


def volume_form() -> PolyForm:
    return PolyForm.basis([1, 2, 3])
