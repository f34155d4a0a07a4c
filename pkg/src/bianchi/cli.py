"""Command-line interface and JSON/CSV serialization.

Input documents carry either a 3x3 matrix "q" of rational strings or a
3x3x3 array "c" of structure constants; rationals cross the wire as
strings (or JSON integers) so nothing is ever rounded.  Floating point
appears only in the leaf-trajectory CSV output.

Exit codes: 0 success, 1 parse/validation error, 2 candidate is not a Lie
structure, 3 incompatible deformation direction, 4 verification mismatch
(tables or selftest).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import dynamics, tables
from .classify import classify
from .cohomology import cohomology_report
from .errors import IncompatibleDirectionError, NotLieError, StratumCrossingError
from .sampling import (
    random_invertible,
    random_lie_tensor,
    random_symmetric,
    random_tensor,
    seed_from_env,
)
from .structures import (
    StructureTensor,
    compat_pairing,
    disassemble,
    jacobi_form,
    jacobi_schouten,
    jacobi_structure_constants,
)
from .variety import deform, is_contraction

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_NOT_LIE = 2
EXIT_INCOMPATIBLE = 3
EXIT_MISMATCH = 4


class DocumentError(ValueError):
    """Malformed input document; the message names the offending field."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which collides with the not-Lie code
    def error(self, message):
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _frac(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"{where}: rationals must be strings or integers, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"{where}: cannot parse rational {value!r} ({exc})")
    raise DocumentError(f"{where}: rationals must be strings or integers, got {value!r}")


def frac_str(value: Fraction) -> str:
    return str(Fraction(value))


def parse_document(data):
    """StructureDocument -> (StructureTensor, label)."""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    unknown = set(data) - {"q", "c", "label"}
    if unknown:
        raise DocumentError(f"unknown fields {sorted(unknown)}")
    has_q, has_c = "q" in data, "c" in data
    if has_q == has_c:
        raise DocumentError('document must contain exactly one of "q" or "c"')
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError('"label" must be a string')
    if has_q:
        q = data["q"]
        if not (isinstance(q, list) and len(q) == 3 and all(isinstance(r, list) and len(r) == 3 for r in q)):
            raise DocumentError('"q" must be a 3x3 array')
        rows = [[_frac(q[k][h], f"q[{k}][{h}]") for h in range(3)] for k in range(3)]
        return StructureTensor(rows), label
    c = data["c"]
    ok = (
        isinstance(c, list)
        and len(c) == 3
        and all(
            isinstance(p, list) and len(p) == 3 and all(isinstance(r, list) and len(r) == 3 for r in p)
            for p in c
        )
    )
    if not ok:
        raise DocumentError('"c" must be a 3x3x3 array')
    const = [
        [[_frac(c[k][i][j], f"c[{k}][{i}][{j}]") for j in range(3)] for i in range(3)]
        for k in range(3)
    ]
    try:
        return StructureTensor.from_structure_constants(const), label
    except ValueError as exc:
        raise DocumentError(str(exc))


def serialize_document(q: StructureTensor, label=None):
    doc = {"q": [[frac_str(x) for x in row] for row in q.rows]}
    if label is not None:
        doc["label"] = label
    return doc


def _matrix_json(rows):
    return [[frac_str(x) for x in row] for row in rows]


def _type_json(btype):
    out = {"kind": btype.kind}
    if btype.rho is not None:
        out["rho"] = frac_str(btype.rho)
        out["lambda"] = math.sqrt(abs(float(btype.rho)))
    return out


def build_report(q: StructureTensor, label=None):
    """Full report document for one candidate tensor."""
    jac = {
        "constants": jacobi_structure_constants(q),
        "form": jacobi_form(q),
        "schouten": jacobi_schouten(q),
    }
    parts = disassemble(q)
    report = {
        "input": serialize_document(q, label),
        "jacobi": jac,
        "disassembling": {
            "S": _matrix_json(parts.S.rows),
            "A": _matrix_json(parts.A.rows),
            "a": [frac_str(x) for x in parts.a],
        },
        "notes": [],
    }
    if jac["constants"]:
        report["type"] = _type_json(classify(q))
        coh = cohomology_report(q)
        report["cohomology"] = {
            "dim_Z2": coh.dim_Z2,
            "dim_B2": coh.dim_B2,
            "dim_H2": coh.dim_H2,
        }
    else:
        report["notes"].append("candidate is not a Lie structure; type omitted")
    return report


def _emit(obj, stream=None):
    json.dump(obj, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _read_document(path_or_dash):
    if path_or_dash in (None, "-"):
        raw = sys.stdin.read()
        source = "stdin"
    else:
        raw = Path(path_or_dash).read_text()
        source = path_or_dash
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}")
    return parse_document(data)


# -- subcommands -----------------------------------------------------------

def cmd_classify(args) -> int:
    q, label = _read_document(args.input)
    report = build_report(q, label)
    _emit(report)
    return EXIT_OK if report["jacobi"]["constants"] else EXIT_NOT_LIE


def cmd_cohomology(args) -> int:
    q, label = _read_document(args.input)
    if not jacobi_structure_constants(q):
        _emit(build_report(q, label))
        return EXIT_NOT_LIE
    coh = cohomology_report(q)
    _emit(
        {
            "input": serialize_document(q, label),
            "dim_Z2": coh.dim_Z2,
            "dim_B2": coh.dim_B2,
            "dim_H2": coh.dim_H2,
            "basis_Z2": [_matrix_json(t.rows) for t in coh.basis_Z2],
            "basis_B2": [_matrix_json(t.rows) for t in coh.basis_B2],
        }
    )
    return EXIT_OK


def cmd_compatible(args) -> int:
    q1, label1 = _read_document(args.first)
    q2, label2 = _read_document(args.second)
    for q, label in ((q1, label1), (q2, label2)):
        if not jacobi_structure_constants(q):
            print(f"input {label or 'tensor'} is not a Lie structure", file=sys.stderr)
            return EXIT_NOT_LIE
    pairing = compat_pairing(q1, q2)
    _emit(
        {
            "first": serialize_document(q1, label1),
            "second": serialize_document(q2, label2),
            "pairing": [frac_str(x) for x in pairing],
            "compatible": all(x == 0 for x in pairing),
        }
    )
    return EXIT_OK


def cmd_tables(args) -> int:
    print(tables.render_tables())
    diffs = tables.table_diffs()
    if diffs:
        for diff in diffs:
            print(str(diff), file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _parse_ts(raw: str):
    try:
        return [Fraction(part.strip()) for part in raw.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"--ts: {exc}")


def cmd_deform(args) -> int:
    c0, label0 = _read_document(args.c0)
    d, label1 = _read_document(args.d)
    ts = _parse_ts(args.ts)
    if not ts:
        raise DocumentError("--ts: need at least one sample parameter")
    try:
        path = deform(c0, d, ts)
    except NotLieError:
        print("base structure is not Lie", file=sys.stderr)
        return EXIT_NOT_LIE
    except IncompatibleDirectionError as exc:
        _emit(
            {
                "error": "incompatible direction",
                "pairing": [frac_str(x) for x in exc.pairing],
            }
        )
        return EXIT_INCOMPATIBLE
    try:
        verdict = "contraction" if is_contraction(path) else "not-contraction"
    except StratumCrossingError:
        verdict = "stratum-crossing"
    except ValueError as exc:
        verdict = f"indeterminate ({exc})"
    _emit(
        {
            "c0": serialize_document(c0, label0),
            "d": serialize_document(d, label1),
            "samples": [
                {"t": frac_str(t), "type": _type_json(ty)} for t, ty in path.samples
            ],
            "verdict": verdict,
        }
    )
    return EXIT_OK


def _parse_starts(raw: str):
    if raw == "hexagon":
        return dynamics.hexagon_starts()
    starts = []
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise DocumentError(f"--starts: expected 'x1,x2' pairs, got {chunk!r}")
        try:
            starts.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise DocumentError(f"--starts: {exc}")
    if not starts:
        raise DocumentError("--starts: no start points given")
    return tuple(starts)


def _write_csv(path: Path, trajectory, with_x3: bool):
    cols = 4 if with_x3 else 3
    with path.open("w") as handle:
        handle.write("t,x1,x2,x3\n" if with_x3 else "t,x1,x2\n")
        for sample in trajectory.samples:
            handle.write(",".join(f"{v:.12g}" for v in sample[:cols]) + "\n")


def cmd_leaves(args) -> int:
    if args.dt <= 0:
        raise DocumentError("--dt must be positive")
    if args.t_end <= 0:
        raise DocumentError("--t-end must be positive")
    starts = _parse_starts(args.starts)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    steps = max(1, round(args.t_end / args.dt))
    ts = [k * args.dt for k in range(steps + 1)]
    entries = []
    for index, start in enumerate(starts):
        name = f"leaf_{index:02d}.csv"
        try:
            if args.rk4:
                matrix = dynamics.family_ode_matrix(args.family, args.param)
                traj = dynamics.integrate_trajectory(
                    matrix, start, args.t_end, args.dt, x3=args.x3 or 0.0
                )
            else:
                traj = dynamics.closed_form_trajectory(
                    args.family, args.param, start, ts, x3=args.x3 or 0.0
                )
        except ValueError as exc:
            print(f"start {start}: {exc}", file=sys.stderr)
            return EXIT_PARSE
        _write_csv(out / name, traj, with_x3=args.x3 is not None)
        entries.append({"start": [start[0], start[1]], "file": name})
    manifest = {
        "family": args.family,
        "param": args.param,
        "dt": args.dt,
        "t_end": args.t_end,
        "method": "rk4" if args.rk4 else "closed",
        "files": entries,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(entries)} trajectories to {out}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    seed = args.seed if args.seed is not None else seed_from_env()
    rng = random.Random(seed)
    failures = []

    n = args.samples
    bad = 0
    for _ in range(n):
        q = random_tensor(rng) if rng.random() < 0.5 else random_lie_tensor(rng)
        votes = (jacobi_structure_constants(q), jacobi_form(q), jacobi_schouten(q))
        if len(set(votes)) != 1:
            bad += 1
    print(f"jacobi three-way agreement on {n} tensors: {'ok' if not bad else f'{bad} failures'}")
    if bad:
        failures.append("jacobi")

    from .classify import act

    bad = 0
    for _ in range(max(1, n // 2)):
        q = random_lie_tensor(rng)
        psi = random_invertible(rng)
        if classify(act(psi, q)) != classify(q):
            bad += 1
    print(f"classification invariance on {max(1, n // 2)} pairs: {'ok' if not bad else f'{bad} failures'}")
    if bad:
        failures.append("invariance")

    from .cohomology import coboundary

    bad = 0
    for _ in range(max(1, n // 4)):
        q = random_lie_tensor(rng)
        for i in range(3):
            for j in range(3):
                phi = [[0] * 3 for _ in range(3)]
                phi[i][j] = 1
                if any(x != 0 for x in compat_pairing(q, coboundary(q, phi))):
                    bad += 1
    print(f"coboundaries are cocycles on {max(1, n // 4)} structures: {'ok' if not bad else f'{bad} failures'}")
    if bad:
        failures.append("complex")

    bad = 0
    for _ in range(max(1, n // 4)):
        s = random_symmetric(rng)
        from . import linalg
        from .cohomology import cohomology_report as _rep

        if _rep(s).dim_Z2 != 9 - linalg.rank(s.matrix()):
            bad += 1
    print(f"cocycle dimension law on {max(1, n // 4)} symmetric tensors: {'ok' if not bad else f'{bad} failures'}")
    if bad:
        failures.append("dimension")

    if failures:
        print(f"selftest FAILED: {', '.join(failures)}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"selftest passed (seed {seed})")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bianchi",
        description="exact classification of 3-dimensional Lie structures as linear Poisson bivectors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full report for one structure document")
    p.add_argument("input", nargs="?", default="-", help="JSON document path or - for stdin")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", help="recompute the dimension tables and diff them")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("cohomology", help="cocycle/coboundary dimensions and bases")
    p.add_argument("input", nargs="?", default="-")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("compatible", help="pairing vector and compatibility of two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compatible)

    p = sub.add_parser("deform", help="classify a linear deformation path")
    p.add_argument("--c0", required=True, help="base structure document")
    p.add_argument("--d", required=True, help="direction structure document")
    p.add_argument("--ts", required=True, help="comma-separated rational parameters")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("leaves", help="export symplectic-leaf trajectory CSV data")
    p.add_argument("--family", required=True, choices=list(dynamics.FAMILIES))
    p.add_argument("--param", type=float, required=True)
    p.add_argument("--starts", default="hexagon", help="'hexagon' or 'x1,x2;x1,x2;...'")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-end", dest="t_end", type=float, default=3.0)
    p.add_argument("--out", required=True)
    p.add_argument("--rk4", action="store_true", help="integrate instead of closed forms")
    p.add_argument(
        "--x3",
        type=float,
        default=None,
        help="emit a constant x3 column (the leaf coordinate) with this value",
    )
    p.set_defaults(func=cmd_leaves)

    p = sub.add_parser("selftest", help="seeded property checks (BIANCHI_SEED)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotLieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_LIE


if __name__ == "__main__":
    sys.exit(main())
