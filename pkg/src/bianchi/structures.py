"""Candidate Lie structures on 3-space and their equivalent presentations.

A candidate structure is held as a 3x3 rational matrix ``q`` where
``q[k][h]`` (0-based) is the coefficient of x_{k+1} dx_{h+1} in the
associated linear 1-form.  The same matrix simultaneously encodes

* the bracket [x_i, x_j] = sum_k c^k_{ij} x_k with
  c^k_{ij} = sum_h q[k][h] eps_{hij},
* the linear 1-form alpha = sum q[k][h] x_k dx_h,
* the linear bivector P with P(f, g) * vol = df ^ dg ^ alpha.

Any matrix is accepted; whether it satisfies the Jacobi identity is a
predicate, checked by three independent routes that must agree:
brute-force structure constants (ground truth), alpha ^ d(alpha) = 0, and
vanishing of the Schouten self-bracket of the bivector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from . import exalg, linalg
from .errors import NotLieError
from .exalg import Poly3, PolyForm, PolyMultiVector, rat

Vector3 = Tuple[Fraction, Fraction, Fraction]

_PARITY = {
    (0, 1, 2): 1,
    (1, 2, 0): 1,
    (2, 0, 1): 1,
    (0, 2, 1): -1,
    (2, 1, 0): -1,
    (1, 0, 2): -1,
}


def epsilon(i: int, j: int, k: int) -> int:
    """Totally antisymmetric symbol on 0-based indices, eps(0,1,2) = 1."""
    return _PARITY.get((i, j, k), 0)


@dataclass(frozen=True)
class StructureTensor:
    """A 3x3 rational matrix housing a candidate Lie structure."""

    rows: Tuple[Tuple[Fraction, Fraction, Fraction], ...]

    def __init__(self, rows: Sequence[Sequence]):
        mat = tuple(tuple(rat(x) for x in row) for row in rows)
        if len(mat) != 3 or any(len(r) != 3 for r in mat):
            raise ValueError("a structure tensor is a 3x3 matrix")
        object.__setattr__(self, "rows", mat)

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls) -> "StructureTensor":
        return cls([[0, 0, 0]] * 3)

    @classmethod
    def diagonal(cls, d1, d2, d3) -> "StructureTensor":
        return cls([[d1, 0, 0], [0, d2, 0], [0, 0, d3]])

    @classmethod
    def from_structure_constants(cls, c) -> "StructureTensor":
        """Build the tensor from constants c[k][i][j] of [x_i, x_j].

        The lower pair must be skew: c[k][i][j] = -c[k][j][i].
        """
        const = [[[rat(c[k][i][j]) for j in range(3)] for i in range(3)] for k in range(3)]
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    if const[k][i][j] != -const[k][j][i]:
                        raise ValueError(
                            f"structure constants must be skew in the lower pair; "
                            f"c[{k}][{i}][{j}] != -c[{k}][{j}][{i}]"
                        )
        rows = linalg.zeros(3, 3)
        for k in range(3):
            for h in range(3):
                total = Fraction(0)
                for i in range(3):
                    for j in range(3):
                        e = epsilon(h, i, j)
                        if e:
                            total += e * const[k][i][j]
                rows[k][h] = total / 2
        return cls(rows)

    # -- views ----------------------------------------------------------
    def to_structure_constants(self):
        """Constants c[k][i][j] with [x_i, x_j] = sum_k c[k][i][j] x_k."""
        return tuple(
            tuple(
                tuple(
                    sum(
                        (self.rows[k][h] * epsilon(h, i, j) for h in range(3)),
                        Fraction(0),
                    )
                    for j in range(3)
                )
                for i in range(3)
            )
            for k in range(3)
        )

    def alpha_form(self) -> PolyForm:
        """The linear 1-form sum q[k][h] x_{k+1} dx_{h+1}."""
        total = PolyForm.zero()
        for k in range(3):
            for h in range(3):
                c = self.rows[k][h]
                if c:
                    total = total + PolyForm.from_poly(
                        c * Poly3.variable(k + 1), 1 << h
                    )
        return total

    def bivector(self) -> PolyMultiVector:
        """The linear bivector dual to the 1-form under the volume pairing."""
        terms = {}
        for i in range(3):
            for j in range(i + 1, 3):
                h = 3 - i - j  # complement index
                sign = epsilon(i, j, h)
                for k in range(3):
                    c = sign * self.rows[k][h]
                    if c:
                        e = [0, 0, 0]
                        e[k] = 1
                        key = (tuple(e), (1 << i) | (1 << j))
                        terms[key] = terms.get(key, Fraction(0)) + c
        return PolyMultiVector(terms)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "StructureTensor") -> "StructureTensor":
        return StructureTensor(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "StructureTensor") -> "StructureTensor":
        return self + (-other)

    def __neg__(self) -> "StructureTensor":
        return StructureTensor([[-x for x in row] for row in self.rows])

    def __mul__(self, scalar) -> "StructureTensor":
        s = rat(scalar)
        return StructureTensor([[s * x for x in row] for row in self.rows])

    __rmul__ = __mul__

    def transpose(self) -> "StructureTensor":
        return StructureTensor(linalg.transpose(self.matrix()))

    def matrix(self):
        return [list(row) for row in self.rows]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    @property
    def is_symmetric(self) -> bool:
        return linalg.is_symmetric(self.rows)

    @property
    def is_skew(self) -> bool:
        return linalg.is_skew(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"StructureTensor[{body}]"


def tensor_to_vec(q: StructureTensor):
    """Row-major 9-vector of entries."""
    return [q.rows[k][h] for k in range(3) for h in range(3)]


def vec_to_tensor(v) -> StructureTensor:
    return StructureTensor([[v[3 * k + h] for h in range(3)] for k in range(3)])


def from_alpha_form(form: PolyForm) -> StructureTensor:
    """Inverse of :meth:`StructureTensor.alpha_form` for linear 1-forms."""
    rows = linalg.zeros(3, 3)
    for (exps, mask), coeff in form.terms():
        if sum(exps) != 1 or bin(mask).count("1") != 1:
            raise ValueError("not a linear 1-form")
        k = exps.index(1)
        h = mask.bit_length() - 1
        rows[k][h] = coeff
    return StructureTensor(rows)


# -- named generators ----------------------------------------------------

def alpha_tensor(i: int) -> StructureTensor:
    """The pure charge alpha_i: eps_i^{jk} x_j dx_k (i in {1, 2, 3})."""
    rows = linalg.zeros(3, 3)
    for j in range(3):
        for k in range(3):
            e = epsilon(i - 1, j, k)
            if e:
                rows[j][k] = Fraction(e)
    return StructureTensor(rows)


def skew_from_axial(a) -> StructureTensor:
    """Skew tensor with axial vector a: sum a_i * alpha_i."""
    a = [rat(x) for x in a]
    total = StructureTensor.zero()
    for i in (1, 2, 3):
        if a[i - 1]:
            total = total + a[i - 1] * alpha_tensor(i)
    return total


def axial_vector(skew: StructureTensor) -> Vector3:
    """Axial vector of a skew tensor (inverse of skew_from_axial)."""
    r = skew.rows
    return (r[1][2], r[2][0], r[0][1])


def half_square_tensor(i: int) -> StructureTensor:
    """The unimodular generator (1/2) d(x_i^2) = x_i dx_i."""
    rows = linalg.zeros(3, 3)
    rows[i - 1][i - 1] = Fraction(1)
    return StructureTensor(rows)


def sym_product_tensor(i: int, j: int) -> StructureTensor:
    """The unimodular generator d(x_i x_j) (i may equal j)."""
    rows = linalg.zeros(3, 3)
    rows[i - 1][j - 1] += 1
    rows[j - 1][i - 1] += 1
    return StructureTensor(rows)


def s2_basis():
    """Basis of the symmetric forms supported on the (x1, x2) block."""
    return (
        half_square_tensor(1),
        half_square_tensor(2),
        sym_product_tensor(1, 2),
    )


# -- disassembling --------------------------------------------------------

@dataclass(frozen=True)
class Disassembling:
    """Canonical splitting q = S + A into symmetric part and charge.

    ``a`` is the axial vector of the skew part, so A = sum a_i alpha_i.
    """

    S: StructureTensor
    A: StructureTensor
    a: Vector3


def disassemble(q: StructureTensor) -> Disassembling:
    qt = q.transpose()
    s = Fraction(1, 2) * (q + qt)
    a_part = Fraction(1, 2) * (q - qt)
    return Disassembling(S=s, A=a_part, a=axial_vector(a_part))


# -- Jacobi oracles --------------------------------------------------------

def jacobi_structure_constants(q: StructureTensor) -> bool:
    """Ground-truth oracle: all 81 Jacobi equations on the constants.

    For every (a, b, c, k) the cyclic sum of iterated brackets must have a
    vanishing x_k coefficient.
    """
    c = q.to_structure_constants()
    for a in range(3):
        for b in range(3):
            for d in range(3):
                for k in range(3):
                    total = Fraction(0)
                    for j in range(3):
                        total += c[k][a][j] * c[j][b][d]
                        total += c[k][d][j] * c[j][a][b]
                        total += c[k][b][j] * c[j][d][a]
                    if total:
                        return False
    return True


def jacobiator_vector(q: StructureTensor) -> Vector3:
    """Coefficients J_k of [[x1,x2],x3] + [[x3,x1],x2] + [[x2,x3],x1].

    The candidate is a Lie structure exactly when this vanishes, and the
    Schouten self-bracket of the bivector equals 2 * sum J_k x_k e1^e2^e3.
    """
    c = q.to_structure_constants()
    out = []
    for k in range(3):
        total = Fraction(0)
        for j in range(3):
            total += c[j][0][1] * c[k][j][2]
            total += c[j][2][0] * c[k][j][1]
            total += c[j][1][2] * c[k][j][0]
        out.append(total)
    return tuple(out)


def jacobi_form(q: StructureTensor) -> bool:
    """Integrability oracle: alpha ^ d(alpha) = 0."""
    alpha = q.alpha_form()
    return alpha.wedge(exalg.exterior_d(alpha)).is_zero


def jacobi_schouten(q: StructureTensor) -> bool:
    """Poisson oracle: the Schouten self-bracket of the bivector vanishes."""
    p = q.bivector()
    return exalg.schouten(p, p).is_zero


def is_lie(q: StructureTensor) -> bool:
    return jacobi_structure_constants(q)


def require_lie(q: StructureTensor) -> None:
    if not is_lie(q):
        raise NotLieError(f"candidate tensor fails the Jacobi identity: {q!r}")


# -- compatibility ---------------------------------------------------------

def compat_pairing(q1: StructureTensor, q2: StructureTensor) -> Vector3:
    """Coefficient vector of the mixed Schouten bracket of the bivectors.

    The bracket of two linear bivectors is a trivector
    sum w_k x_k e1^e2^e3; this returns w in the closed form
    2 (S1 a2 + S2 a1), which the tests validate against the full Schouten
    computation.  Bilinear and symmetric; vanishes iff q1 + q2 stays Lie
    when both inputs are.
    """
    d1 = disassemble(q1)
    d2 = disassemble(q2)
    w1 = linalg.mat_vec(d1.S.matrix(), list(d2.a))
    w2 = linalg.mat_vec(d2.S.matrix(), list(d1.a))
    return tuple(2 * (u + v) for u, v in zip(w1, w2))


def is_compatible(q1: StructureTensor, q2: StructureTensor) -> bool:
    """Whether the sum of two Lie structures is again Lie."""
    require_lie(q1)
    require_lie(q2)
    return all(w == 0 for w in compat_pairing(q1, q2))
