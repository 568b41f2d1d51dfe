"""Command line front end: count classes, verify against published values,
export cell decompositions, dump action matrices.

Exit codes: 0 success / all checks pass, 1 verification mismatch, 2 usage
error (bad flags, unparseable input), 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .anf import check_params
from .burnside import (
    InexactDivisionError,
    count_pairs,
    resolve_cells,
)
from .conjclasses import (
    DEFAULT_SEED,
    CellDecompositionError,
    CellFormatError,
    export_cells,
)
from .group import NotAffineError, element_from_text
from .linrep import tau_matrix

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

TABLE_TAGS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X")


class _UsageError(Exception):
    """Raised for problems in user-supplied inputs (flag values, files)."""


@dataclass(frozen=True)
class OracleEntry:
    table: str
    n: int
    k: int
    s: int
    value: int


@dataclass(frozen=True)
class OracleTable:
    """Published reference counts, keyed by (n, k, s); an entry may appear
    in more than one table, always with the same value."""

    entries: tuple[OracleEntry, ...]

    def __post_init__(self):
        seen = {}
        for e in self.entries:
            key = (e.n, e.k, e.s)
            if seen.setdefault(key, e.value) != e.value:
                raise ValueError(f"conflicting oracle values for {key}")

    def value(self, n: int, k: int, s: int) -> int:
        for e in self.entries:
            if (e.n, e.k, e.s) == (n, k, s):
                return e.value
        raise KeyError((n, k, s))


def load_oracle(path=None) -> OracleTable:
    """Read reference counts; defaults to the file shipped with the package.
    Lines: <table> <n> <k> <s> <count>; '#' starts a comment."""
    if path is None:
        text = (resources.files("rmclass") / "data" / "published_counts.txt"
                ).read_text(encoding="ascii")
    else:
        text = Path(path).read_text(encoding="ascii")
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5 or parts[0] not in TABLE_TAGS:
            raise ValueError(f"oracle line {lineno}: bad entry {raw!r}")
        tag, n, k, s, value = (parts[0], int(parts[1]), int(parts[2]),
                               int(parts[3]), int(parts[4]))
        check_params(n, s, k)
        entries.append(OracleEntry(tag, n, k, s, value))
    if not entries:
        raise ValueError("oracle file has no entries")
    return OracleTable(tuple(entries))


def _acquire_cells(n: int, args):
    """Provider resolution with user-input failures downgraded to usage."""
    try:
        return resolve_cells(n, args.provider, seed=args.seed,
                             file=getattr(args, "file", None))
    except (CellFormatError, CellDecompositionError, OSError) as e:
        raise _UsageError(str(e)) from None


def cmd_count(args) -> int:
    check_params(args.n, args.s, args.k)
    cells, tag = _acquire_cells(args.n, args)
    res = count_pairs(args.n, [(args.k, args.s)], threads=args.threads,
                      cells=cells)[(args.k, args.s)]
    print(f"n={res.n} s={res.s} k={res.k} provider={tag} cells={res.cells} "
          f"elapsed={res.elapsed:.3f} count={res.count}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        oracle = load_oracle(args.oracle_file)
    except (OSError, ValueError) as e:
        raise _UsageError(str(e)) from None
    wanted = [e for e in oracle.entries
              if e.n <= args.max_n and (args.table is None
                                        or e.table == args.table)]
    if not wanted:
        raise _UsageError(
            f"no oracle entries with n <= {args.max_n}"
            + (f" in table {args.table}" if args.table else ""))
    failures = 0
    for n in sorted({e.n for e in wanted}):
        group = [e for e in wanted if e.n == n]
        pairs = sorted({(e.k, e.s) for e in group})
        cells, _tag = _acquire_cells(n, args)
        results = count_pairs(n, pairs, threads=args.threads, cells=cells)
        for e in group:
            got = results[(e.k, e.s)].count
            status = "PASS" if got == e.value else "FAIL"
            if status == "FAIL":
                failures += 1
            print(f"check table={e.table} n={e.n} k={e.k} s={e.s} "
                  f"expected={e.value} got={got} status={status}")
    print(f"summary total={len(wanted)} pass={len(wanted) - failures} "
          f"fail={failures}")
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def cmd_classes(args) -> int:
    if args.provider == "import":
        raise _UsageError("classes writes cells; use a computing provider")
    if args.file is None:
        raise _UsageError("classes requires --file for the output path")
    cells, tag = _acquire_cells(args.n, args)
    try:
        export_cells(cells, args.file)
    except OSError as e:
        raise _UsageError(str(e)) from None
    total = sum(c.size for c in cells)
    print(f"n={args.n} provider={tag} cells={len(cells)} total={total} "
          f"file={args.file}")
    return EXIT_OK


def cmd_tau(args) -> int:
    if args.file is not None:
        try:
            text = Path(args.file).read_text(encoding="ascii")
        except OSError as e:
            raise _UsageError(str(e)) from None
    else:
        text = sys.stdin.read()
    g = element_from_text(text)
    t = tau_matrix(g, args.s, args.k)
    for row in t.to_strings():
        print(row)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmclass",
        description="Count affine equivalence classes of Boolean functions "
                    "on quotients of degree-bounded function spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, provider=True):
        if provider:
            p.add_argument("--provider", default="canonical",
                           choices=("exhaustive", "canonical", "import"))
            p.add_argument("--file", default=None,
                           help="cell file (input for import, output for "
                                "classes)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                       help="seed for the canonical provider's sampling")
        p.add_argument("--threads", type=int, default=1,
                       help="parallel workers for per-cell work")

    p = sub.add_parser("count", help="number of classes for one (n, s, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify",
                       help="recompute published values and compare")
    p.add_argument("--max-n", type=int, required=True, dest="max_n")
    p.add_argument("--table", default=None, choices=TABLE_TAGS,
                   help="restrict to one reference table")
    p.add_argument("--oracle-file", default=None, dest="oracle_file",
                   help="alternate reference file (defaults to the "
                        "packaged one)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classes", help="write a cell decomposition file")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("tau", help="print the action matrix of one element")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--file", default=None,
                   help="element file: n, then n matrix rows, then the "
                        "translation, as 0/1 lines (stdin if omitted)")
    p.set_defaults(func=cmd_tau)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InexactDivisionError, CellDecompositionError, AssertionError,
            RuntimeError) as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (NotAffineError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
