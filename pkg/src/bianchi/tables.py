"""Dimension tables for the catalogued normal forms.

Every number is recomputed from the normal-form tensors through the
cohomology machinery; the expected values ship as a fixture so the CLI
can diff a fresh computation cell by cell.  Types that split only by a
real sign (the plus/minus pairs, and the two B2 sign families) are
computed for both representatives and must agree before a row is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from . import linalg
from .cohomology import cohomology_report, zeta_fiber_basis
from .structures import StructureTensor, disassemble, skew_from_axial

_CHARGE = skew_from_axial((0, 0, 1))

UNIMODULAR_FORMS = (
    ("A0", (StructureTensor.zero(),)),
    ("A1", (StructureTensor.diagonal(1, 0, 0),)),
    ("A2", (StructureTensor.diagonal(1, 1, 0), StructureTensor.diagonal(1, -1, 0))),
    ("A3", (StructureTensor.diagonal(1, 1, 1), StructureTensor.diagonal(1, 1, -1))),
)

NONUNIMODULAR_FORMS = (
    ("B0", (_CHARGE,)),
    ("B1", (StructureTensor.diagonal(1, 0, 0) + _CHARGE,)),
    (
        "B2",
        (
            StructureTensor.diagonal(1, 1, 0) + _CHARGE,
            StructureTensor.diagonal(1, -1, 0) + _CHARGE,
        ),
    ),
)

# (type, rank, dim orbit, dim charge fiber, dim Z2, dim H2)
EXPECTED_UNIMODULAR = (
    ("A0", 0, 0, 3, 9, 9),
    ("A1", 1, 3, 2, 8, 5),
    ("A2", 2, 5, 1, 7, 2),
    ("A3", 3, 6, 0, 6, 0),
)

# (type, dim B2, dim Z2, dim H2)
EXPECTED_NONUNIMODULAR = (
    ("B0", 3, 6, 3),
    ("B1", 5, 6, 1),
    ("B2", 5, 6, 1),
)


@dataclass(frozen=True)
class TableCellDiff:
    table: str
    row: str
    column: str
    expected: object
    computed: object

    def __str__(self):
        return (
            f"{self.table}[{self.row}].{self.column}: "
            f"expected {self.expected}, computed {self.computed}"
        )


def _merged_row(variants, build):
    rows = [build(q) for q in variants]
    first = rows[0]
    if any(r != first for r in rows[1:]):
        raise AssertionError(f"sign variants disagree: {rows}")
    return first


def unimodular_table():
    """Rows (type, rank, dim orbit, dim charge fiber, dim Z2, dim H2)."""

    def build(q):
        parts = disassemble(q)
        rep = cohomology_report(q)
        return (
            linalg.rank(parts.S.matrix()),
            rep.dim_B2,
            len(zeta_fiber_basis(parts.S)),
            rep.dim_Z2,
            rep.dim_H2,
        )

    return tuple(
        (name, *_merged_row(variants, build)) for name, variants in UNIMODULAR_FORMS
    )


def nonunimodular_table():
    """Rows (type, dim B2, dim Z2, dim H2)."""

    def build(q):
        rep = cohomology_report(q)
        return (rep.dim_B2, rep.dim_Z2, rep.dim_H2)

    return tuple(
        (name, *_merged_row(variants, build)) for name, variants in NONUNIMODULAR_FORMS
    )


def table_diffs() -> Tuple[TableCellDiff, ...]:
    """Cell-level differences between recomputed and expected tables."""
    diffs = []
    uni_cols = ("rank", "dim_orbit", "dim_charge_fiber", "dim_Z2", "dim_H2")
    for computed, expected in zip(unimodular_table(), EXPECTED_UNIMODULAR):
        for col, got, want in zip(uni_cols, computed[1:], expected[1:]):
            if got != want:
                diffs.append(
                    TableCellDiff("unimodular", computed[0], col, want, got)
                )
    non_cols = ("dim_B2", "dim_Z2", "dim_H2")
    for computed, expected in zip(nonunimodular_table(), EXPECTED_NONUNIMODULAR):
        for col, got, want in zip(non_cols, computed[1:], expected[1:]):
            if got != want:
                diffs.append(
                    TableCellDiff("nonunimodular", computed[0], col, want, got)
                )
    return tuple(diffs)


def render_tables() -> str:
    lines = ["unimodular structures"]
    header = ("type", "rank", "dim orbit", "dim charge fiber", "dim Z2", "dim H2")
    lines.append("  " + "  ".join(f"{h:>16}" for h in header))
    for row in unimodular_table():
        lines.append("  " + "  ".join(f"{str(v):>16}" for v in row))
    lines.append("")
    lines.append("non-unimodular structures")
    header = ("type", "dim B2", "dim Z2", "dim H2")
    lines.append("  " + "  ".join(f"{h:>16}" for h in header))
    for row in nonunimodular_table():
        lines.append("  " + "  ".join(f"{str(v):>16}" for v in row))
    return "\n".join(lines)
