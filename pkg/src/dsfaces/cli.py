"""Command-line front end.

Subcommands:

  matrix      dump one of the named matrix families (U, T, I, S, S_inv, D)
  vectors     long/classical f- and h-vectors and the DS verdict for a
              face-system file
  basis       dump one of the six bases of R^(m+1)
  table       dump the closed-form entries of table 1, 2 or 3
  generators  dump the cone generator sequence and spanning sets
  member      membership verdict for a rational point in Qf/Pf/Qh/the box
  enumerate   lattice points (or counts) of the boxed fixed-point system,
              by parity class; points are counted rather than listed from
              m = 9 on unless --points is given
  table4      the three DS f-vector counts for a range of m, checked against
              the known values
  verify      run identity suites over a range of m

Exit codes: 0 success, 1 an identity or embedded-value check failed,
2 malformed input, 3 a resource cap was exceeded.

Output is deterministic: JSON is emitted with sorted keys and no timing
data, so identical configurations produce byte-identical reports for any
worker count.  Integers that may exceed 64 bits (multiplicities and totals)
are emitted as decimal strings; matrix and vector entries are emitted as
exact decimal strings ("-3", "1/2"); small counts and lattice-point
coordinates stay plain JSON integers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bases import BASIS_KINDS, basis_vectors, table1_entry
from .enumeration import (
    CapExceededError,
    ds_fvectors,
    enumerate_eigen_lattice,
    table4_row,
)
from .exact_linalg import MATRIX_NAMES, build_matrix
from .face_systems import (
    FaceSystemFormatError,
    ambient_threshold,
    classical_fh,
    is_complex,
    is_ds,
    is_ds_family,
    load_face_system,
    long_f,
    long_h,
)
from .polytopes import POLYTOPE_LABELS, PolytopeHandle, contains, multiplicity
from .spaces import cone_generators, eigenspace_spanning, hyperplane_spanning, table23_entry
from .verify import SUITES, run_suites

#: The known Table-4 values, embedded so the command can flag regressions.
KNOWN_TABLE4 = {
    2: (3, 1, 5),
    3: (1, 7, 9),
    4: (19, 5, 25),
    5: (7, 71, 79),
    6: (291, 41, 333),
    7: (103, 2223, 2327),
    8: (17465, 1107, 18573),
    9: (4905, 271619, 276525),
    10: (3959091, 103057, 4062149),
}

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_CAP = 3


def _entry_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _matrix_doc(mat) -> list:
    return [[_entry_str(x) for x in row] for row in mat]


def _vector_doc(vec) -> list:
    return [_entry_str(x) for x in vec]


def _default_workers() -> int:
    return max(1, int(os.environ.get("DSFACES_WORKERS", "1")))


def _emit(doc: dict, fmt: str, csv_rows, out_path, text_lines=None) -> None:
    """Write one report.  ``csv_rows``/``text_lines`` are the alternative
    renderings; JSON is canonical."""
    if fmt == "json":
        payload = json.dumps(doc, sort_keys=True, separators=(",", ":"),
                             ensure_ascii=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in csv_rows:
            writer.writerow(row)
        payload = buf.getvalue()
    else:
        lines = text_lines if text_lines is not None else [
            json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)
        ]
        payload = "\n".join(str(line) for line in lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _envelope(command: str, params: dict, result: dict) -> dict:
    return {"command": command, "params": params, "result": result}


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_matrix(args) -> int:
    mat = build_matrix(args.name, args.m)
    doc = _envelope("matrix", {"name": args.name, "m": args.m},
                    {"rows": _matrix_doc(mat)})
    _emit(doc, args.format, mat, args.output,
          text_lines=["  ".join(_entry_str(x) for x in row) for row in mat])
    return EXIT_OK


def cmd_vectors(args) -> int:
    fs = load_face_system(args.faces)
    result = {
        "m": fs.m,
        "count": fs.count,
        "long_f": list(long_f(fs)),
        "long_h": list(long_h(fs)),
        "is_ds": is_ds(fs),
        "is_complex": is_complex(fs),
    }
    if fs.count:
        result["size"] = fs.size
        result["ambient_threshold"] = ambient_threshold(fs)
        result["is_ds_family"] = is_ds_family(fs, samples=args.samples)
        if fs.size >= 1:
            cf, ch = classical_fh(fs)
            result["classical_f"] = list(cf)
            result["classical_h"] = list(ch)
    doc = _envelope("vectors", {"faces": os.path.basename(args.faces)}, result)
    rows = [[key, json.dumps(value)] for key, value in sorted(result.items())]
    _emit(doc, args.format, rows, args.output,
          text_lines=[f"{key}: {value}" for key, value in sorted(result.items())])
    return EXIT_OK


def cmd_basis(args) -> int:
    vectors = basis_vectors(args.kind, args.m)
    doc = _envelope("basis", {"kind": args.kind, "m": args.m},
                    {"vectors": [_vector_doc(v) for v in vectors]})
    _emit(doc, args.format, vectors, args.output,
          text_lines=["  ".join(_entry_str(x) for x in v) for v in vectors])
    return EXIT_OK


def cmd_generators(args) -> int:
    gens = cone_generators(args.m)
    result = {
        "generators": [_vector_doc(v) for v in gens],
        "eigenspace_h": [_vector_doc(v) for v in eigenspace_spanning("h", args.m)],
        "eigenspace_f": [_vector_doc(v) for v in eigenspace_spanning("f", args.m)],
        "hyperplane_h": [_vector_doc(v) for v in hyperplane_spanning("h", args.m)],
        "hyperplane_f": [_vector_doc(v) for v in hyperplane_spanning("f", args.m)],
    }
    doc = _envelope("generators", {"m": args.m}, result)
    _emit(doc, args.format, gens, args.output,
          text_lines=["  ".join(_entry_str(x) for x in v) for v in gens])
    return EXIT_OK


def cmd_table(args) -> int:
    m = args.m
    entries = []
    if args.which == 1:
        for vec in ("f", "h"):
            for kind in BASIS_KINDS:
                for k in range(1, m + 1):
                    row = [_entry_str(table1_entry(vec, kind, k, l, m))
                           for l in range(m + 1)]
                    entries.append({"vec": vec, "kind": kind, "k": k, "values": row})
    else:
        if args.which == 2 and m % 2 == 1 or args.which == 3 and m % 2 == 0:
            print(f"table {args.which} needs m of the other parity", file=sys.stderr)
            return EXIT_BAD_INPUT
        n_gens = m // 2 if m % 2 == 0 else (m - 1) // 2
        for image in (False, True):
            for kind in BASIS_KINDS:
                for i in range(n_gens + 1):
                    row = [_entry_str(table23_entry(m, i, l, kind, image=image))
                           for l in range(m + 1)]
                    entries.append(
                        {"image": image, "kind": kind, "i": i, "values": row}
                    )
    doc = _envelope("table", {"which": args.which, "m": m}, {"entries": entries})
    csv_rows = [
        [json.dumps({k: v for k, v in e.items() if k != "values"})] + e["values"]
        for e in entries
    ]
    _emit(doc, args.format, csv_rows, args.output)
    return EXIT_OK


def cmd_member(args) -> int:
    point = tuple(Fraction(part) for part in args.point.split(","))
    handle = PolytopeHandle(args.polytope, args.m)
    verdict = contains(handle, point)
    result = {
        "polytope": args.polytope,
        "m": args.m,
        "point": _vector_doc(point),
        "bounds": list(handle.bounds),
        "member": verdict,
    }
    doc = _envelope("member", {"polytope": args.polytope, "m": args.m}, result)
    _emit(doc, args.format, [[args.polytope, args.m, args.point, verdict]],
          args.output, text_lines=[f"{verdict}"])
    return EXIT_OK


def cmd_enumerate(args) -> int:
    workers = args.workers or _default_workers()
    # Point lists get large from m = 9 on (millions of vectors at m = 10),
    # so counting is the default there unless --points insists.
    count_only = args.count_only or (args.m >= 9 and not args.points)
    try:
        if args.parity == "all":
            report = enumerate_eigen_lattice(
                args.m, count_only=count_only, workers=workers
            )
        else:
            report = ds_fvectors(
                args.m, args.parity, count_only=count_only, workers=workers
            )
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    result = {
        "m": args.m,
        "class": args.parity,
        "bounds": list(report.bounds),
        "count": report.count,
    }
    csv_rows = [["x" + str(i) for i in range(args.m + 1)]]
    if report.points is not None:
        result["points"] = [list(p) for p in report.points]
        csv_rows.extend(list(p) for p in report.points)
    if args.multiplicities:
        if report.points is None:
            print("--multiplicities requires point materialization "
                  "(drop --count-only, or pass --points for m >= 9)",
                  file=sys.stderr)
            return EXIT_BAD_INPUT
        total = sum(multiplicity(p, args.m) for p in report.points)
        result["total_multiplicity"] = str(total)
    doc = _envelope("enumerate", {"m": args.m, "class": args.parity}, result)
    _emit(doc, args.format, csv_rows, args.output)
    return EXIT_OK


def cmd_table4(args) -> int:
    workers = args.workers or _default_workers()
    rows = []
    mismatches = []
    for m in range(2, args.max_m + 1):
        try:
            c1, c2, c3 = table4_row(m, workers=workers)
        except CapExceededError as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
        row = {"m": m, "matching": c1, "opposite": c2, "all": c3}
        expected = KNOWN_TABLE4.get(m)
        if expected is not None and expected != (c1, c2, c3):
            row["expected"] = list(expected)
            mismatches.append(row)
        rows.append(row)
    doc = _envelope(
        "table4",
        {"max_m": args.max_m},
        {"rows": rows, "mismatches": mismatches, "ok": not mismatches},
    )
    csv_rows = [["m", "matching", "opposite", "all"]] + [
        [r["m"], r["matching"], r["opposite"], r["all"]] for r in rows
    ]
    text = [f"{r['m']:>3} {r['matching']:>9} {r['opposite']:>9} {r['all']:>9}"
            for r in rows]
    _emit(doc, args.format, csv_rows, args.output, text_lines=text)
    return EXIT_CHECK_FAILED if mismatches else EXIT_OK


def _parse_m_range(spec: str) -> list:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        values = list(range(int(lo), int(hi) + 1))
    else:
        values = [int(spec)]
    if not values or min(values) < 2:
        raise ValueError(f"bad m range {spec!r}; need integers >= 2")
    return values


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    try:
        m_values = _parse_m_range(args.m)
    except ValueError as exc:
        print(exc, file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        records = run_suites(names, m_values)
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    failures = [r for r in records if not r["ok"]]
    doc = _envelope(
        "verify",
        {"suite": args.suite, "m": args.m},
        {
            "checks": len(records),
            "failures": failures,
            "ok": not failures,
            "records": records if args.all_records else None,
        },
    )
    csv_rows = [["suite", "m", "name", "ok"]] + [
        [r["suite"], r["m"], r["name"], r["ok"]] for r in records
    ]
    text = [f"{'PASS' if r['ok'] else 'FAIL'} {r['suite']}/{r['name']} m={r['m']}"
            for r in records]
    _emit(doc, args.format, csv_rows, args.output, text_lines=text)
    return EXIT_CHECK_FAILED if failures else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub, m_required=True):
    if m_required:
        sub.add_argument("--m", type=int, required=True, help="ambient size, >= 2")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub.add_argument("--output", help="write the report to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dsfaces",
        description="Exact face-system vectors, structured matrices, and "
                    "lattice-point enumeration",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="dump a named matrix family")
    p.add_argument("name", choices=MATRIX_NAMES)
    _add_common(p)
    p.set_defaults(fn=cmd_matrix)

    p = sub.add_parser("vectors", help="vectors and verdicts for a face system")
    p.add_argument("--faces", required=True, help="face-system JSON file")
    p.add_argument("--samples", type=int, default=3)
    _add_common(p, m_required=False)
    p.set_defaults(fn=cmd_vectors)

    p = sub.add_parser("basis", help="dump one of the six bases")
    p.add_argument("kind", choices=BASIS_KINDS)
    _add_common(p)
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("generators", help="cone generators and spanning sets")
    _add_common(p)
    p.set_defaults(fn=cmd_generators)

    p = sub.add_parser("table", help="dump closed-form table entries")
    p.add_argument("which", type=int, choices=(1, 2, 3))
    _add_common(p)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("member", help="polytope membership verdict for a point")
    p.add_argument("polytope", choices=POLYTOPE_LABELS)
    p.add_argument("--point", required=True,
                   help="comma-separated exact coordinates, e.g. 1,1/2,0")
    _add_common(p)
    p.set_defaults(fn=cmd_member)

    p = sub.add_parser("enumerate", help="lattice points by parity class")
    p.add_argument("--class", dest="parity",
                   choices=("matching", "opposite", "all"), default="matching")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--points", action="store_true",
                   help="materialize the point list even for m >= 9")
    p.add_argument("--multiplicities", action="store_true",
                   help="include the total DS-system multiplicity")
    p.add_argument("--workers", type=int, default=0,
                   help="process count (default: DSFACES_WORKERS or 1)")
    _add_common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("table4", help="DS f-vector counts for m = 2..max-m")
    p.add_argument("--max-m", type=int, default=10)
    p.add_argument("--workers", type=int, default=0)
    _add_common(p, m_required=False)
    p.set_defaults(fn=cmd_table4)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--m", required=True, help="single value '4' or range '2..6'")
    p.add_argument("--all-records", action="store_true",
                   help="include passing checks in the JSON report")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FaceSystemFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
