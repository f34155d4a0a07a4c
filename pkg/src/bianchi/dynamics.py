"""Symplectic foliation of solvable structures and leaf trajectory data.

This is the only module that touches floating point: structure data
arrives exact and is converted at the entry points, because the
trajectories are transcendental curves.  Leaves of a solvable structure
project onto trajectories of a planar linear flow; the closed forms below
evaluate the catalogued solution formulas and a fixed-step fourth-order
Runge-Kutta integrator provides an independent numerical oracle and data
for arbitrary planar matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple

from .errors import UnsupportedFormError
from .exalg import Poly3, PolyMultiVector, differential, insert_form, rat
from .structures import StructureTensor, require_lie

FAMILY_B1 = "B1"
FAMILY_B2_PLUS = "B2plus"
FAMILY_B2_MINUS = "B2minus"
FAMILIES = (FAMILY_B1, FAMILY_B2_PLUS, FAMILY_B2_MINUS)

_SOLVABLE_KINDS = {"A1", "A2plus", "A2minus", "B0", "B1", "B2"}


@dataclass(frozen=True)
class SolvableNormalForm:
    """Planar endomorphism phi encoding a solvable structure.

    The structure tensor rebuilds from phi through
    ``q11 = phi12, q12 = -phi11, q21 = phi22, q22 = -phi21`` (third row
    and column zero), and the planar flow of the encoded vector field is
    xdot = phi^T x.
    """

    phi: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    axis: int = 3

    def tensor(self) -> StructureTensor:
        (p11, p12), (p21, p22) = self.phi
        return StructureTensor(
            [[p12, -p11, 0], [p22, -p21, 0], [0, 0, 0]]
        )

    def ode_matrix(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """Float matrix a with the planar trajectories solving xdot = a x."""
        (p11, p12), (p21, p22) = self.phi
        return ((float(p11), float(p21)), (float(p12), float(p22)))


def to_solvable_form(q: StructureTensor) -> SolvableNormalForm:
    """Extract the planar endomorphism of a solvable normal-form tensor.

    Requires the third row and column of q to vanish (the normal-form
    coordinates) and a solvable type; rejects A0 and the simple types A3.
    """
    require_lie(q)
    if any(q.rows[i][2] != 0 or q.rows[2][i] != 0 for i in range(3)):
        raise UnsupportedFormError(
            "tensor is not in solvable normal-form coordinates (third row/column nonzero)"
        )
    from .classify import classify  # local import keeps module deps one-way

    kind = classify(q).kind
    if kind not in _SOLVABLE_KINDS:
        raise UnsupportedFormError(f"type {kind} has no planar solvable form")
    phi = (
        (-q.rows[0][1], q.rows[0][0]),
        (-q.rows[1][1], q.rows[1][0]),
    )
    form = SolvableNormalForm(phi=phi)
    assert form.tensor() == q
    return form


def hamiltonian_field(q: StructureTensor, f: Poly3) -> PolyMultiVector:
    """Hamiltonian vector field of f: minus the contraction of df into the
    bivector of q."""
    require_lie(q)
    return -insert_form(differential(f), q.bivector())


@dataclass(frozen=True)
class Trajectory:
    """Time-sampled curve; x3 is the free leaf coordinate."""

    samples: Tuple[Tuple[float, float, float, float], ...]
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        ts = [s[0] for s in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sample times must be strictly increasing")
        if any(not math.isfinite(v) for s in self.samples for v in s):
            raise ValueError("trajectory contains non-finite values")

    def sup_distance(self, other: "Trajectory") -> float:
        """Max planar distance over common sample indices."""
        return max(
            max(abs(a[1] - b[1]), abs(a[2] - b[2]))
            for a, b in zip(self.samples, other.samples)
        )


def hexagon_starts(radius: float = 1.0) -> Tuple[Tuple[float, float], ...]:
    """Vertices of a regular hexagon centered at the origin."""
    return tuple(
        (radius * math.cos(k * math.pi / 3), radius * math.sin(k * math.pi / 3))
        for k in range(6)
    )


def family_ode_matrix(family: str, param: float):
    """Planar flow matrix xdot = a x for a catalogued family."""
    p = float(param)
    if family == FAMILY_B1:
        return ((-p, 0.0), (1.0, -p))
    if family == FAMILY_B2_PLUS:
        return ((-1.0, -p), (1.0, -1.0))
    if family == FAMILY_B2_MINUS:
        return ((-1.0, p), (1.0, -1.0))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def closed_form_trajectory(
    family: str,
    param,
    start: Tuple[float, float],
    ts: Sequence[float],
    x3: float = 0.0,
) -> Trajectory:
    """Evaluate the catalogued solution formulas of a family at given times.

    B1 takes any decay rate and any start.  The B2 families need a
    positive parameter; the elliptic one additionally needs x1 != 0 at the
    start because its phase is written through an arctangent.
    """
    x10, x20 = float(start[0]), float(start[1])
    p = float(param)
    times = [float(t) for t in ts]

    if family == FAMILY_B1:
        def point(t):
            decay = math.exp(-p * t)
            return (x10 * decay, (x10 * t + x20) * decay)

    elif family == FAMILY_B2_PLUS:
        if p <= 0:
            raise ValueError("the elliptic family needs a positive parameter")
        if x10 == 0:
            raise ValueError("the elliptic closed form needs x1 != 0 at the start")
        root = math.sqrt(p)
        radius = math.hypot(x10, root * x20)
        phase = math.atan2(root * x20, x10)

        def point(t):
            decay = math.exp(-t)
            return (
                decay * radius * math.cos(phase + root * t),
                decay * (radius / root) * math.sin(phase + root * t),
            )

    elif family == FAMILY_B2_MINUS:
        if p <= 0:
            raise ValueError("the hyperbolic family needs a positive parameter")
        root = math.sqrt(p)
        c_plus = (x10 + root * x20) / 2.0
        c_minus = (x10 - root * x20) / 2.0

        def point(t):
            grow = math.exp((root - 1.0) * t)
            fall = math.exp(-(root + 1.0) * t)
            return (
                c_plus * grow + c_minus * fall,
                c_plus / root * grow - c_minus / root * fall,
            )

    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

    samples = tuple((t, *point(t), x3) for t in times)
    return Trajectory(
        samples=samples,
        meta={"family": family, "param": p, "start": (x10, x20), "method": "closed"},
    )


def integrate_trajectory(
    phi,
    start: Tuple[float, float],
    t_end: float,
    dt: float,
    x3: float = 0.0,
    meta: Optional[Mapping[str, object]] = None,
) -> Trajectory:
    """Classical fixed-step RK4 for the planar linear system xdot = phi x.

    Deterministic; global error is fourth order in the step.  Aborts with
    ArithmeticError if the state leaves the representable range.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    a11, a12 = float(phi[0][0]), float(phi[0][1])
    a21, a22 = float(phi[1][0]), float(phi[1][1])

    def rhs(u, v):
        return a11 * u + a12 * v, a21 * u + a22 * v

    steps = max(1, round(t_end / dt))
    u, v = float(start[0]), float(start[1])
    samples = [(0.0, u, v, x3)]
    for k in range(1, steps + 1):
        k1u, k1v = rhs(u, v)
        k2u, k2v = rhs(u + 0.5 * dt * k1u, v + 0.5 * dt * k1v)
        k3u, k3v = rhs(u + 0.5 * dt * k2u, v + 0.5 * dt * k2v)
        k4u, k4v = rhs(u + dt * k3u, v + dt * k3v)
        u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (math.isfinite(u) and math.isfinite(v)):
            raise ArithmeticError(f"integration produced non-finite values at t = {k * dt}")
        samples.append((k * dt, u, v, x3))
    full_meta = {"method": "rk4", "dt": dt, "t_end": t_end, "start": (float(start[0]), float(start[1]))}
    if meta:
        full_meta.update(meta)
    return Trajectory(samples=tuple(samples), meta=full_meta)
