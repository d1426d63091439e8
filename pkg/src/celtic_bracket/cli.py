"""Command-line front end.

    celtic-bracket bracket --pd knot.pd
    celtic-bracket celtic --n 4 --method tangle
    celtic-bracket table --n-max 7 --format csv
    celtic-bracket barriers --n 3 --components 1 --orbits
    celtic-bracket verify --n 3 --orbits
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence, TextIO

from . import celtic_grid as grid
from . import celtic_recursion as rec
from . import tangle_monoid as tm
from .errors import BracketError
from .polyring import IntPoly, render
from .shadow_core import bracket_statesum, parse_pd
from .verify import run_checks

METHODS = ("statesum", "celtic-matrix", "gf", "tangle")
MAX_STATESUM_N = 8
MAX_STATESUM_TABLE_N = 6


class UsageError(BracketError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    n_max: int | None = None
    method: str = "celtic-matrix"
    input_path: str | None = None
    format: str = "csv"
    orbits: bool = False
    components: int | None = None
    dump_matrix: bool = False
    inject_fault: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}; pick one of {', '.join(METHODS)}")


def _ck_bracket(n: int, method: str) -> IntPoly:
    if n < 1:
        raise UsageError("--n must be at least 1")
    if method == "statesum":
        if n > MAX_STATESUM_N:
            raise UsageError(f"statesum enumerates 2^(3n-2) states; use n <= {MAX_STATESUM_N} or a matrix method")
        return bracket_statesum(grid.build_ck(n).shadow)
    if n > rec.MAX_MATRIX_N:
        raise UsageError(f"matrix methods are limited to n <= {rec.MAX_MATRIX_N}")
    if method == "celtic-matrix":
        return rec.celtic_bracket(n).ck
    if method == "gf":
        return rec.celtic_bracket_gf(n)
    return tm.tangle_bracket_ck(n)


def cmd_bracket(cfg: RunConfig, out: TextIO) -> int:
    if not cfg.input_path:
        raise UsageError("bracket needs --pd <path>")
    with open(cfg.input_path) as fh:
        d = parse_pd(fh.read())
    print(render(bracket_statesum(d)), file=out)
    return 0


def cmd_celtic(cfg: RunConfig, out: TextIO) -> int:
    print(render(_ck_bracket(cfg.n, cfg.method)), file=out)
    if cfg.dump_matrix:
        m = tm.state_matrix()
        print(tm.format_state_matrix(m, tm.match_reference_matrix(m)), file=out)
    return 0


def table_rows(n_max: int, method: str) -> list[IntPoly]:
    limit = MAX_STATESUM_TABLE_N if method == "statesum" else rec.MAX_MATRIX_N
    if n_max > limit:
        raise UsageError(f"--n-max {n_max} exceeds {limit} for method {method}")
    if method == "celtic-matrix":
        return rec.celtic_sequence(n_max)
    if method == "gf":
        return rec.gf_series(n_max) if n_max else []
    return [_ck_bracket(n, method) for n in range(1, n_max + 1)]


def format_table(rows: Sequence[IntPoly], fmt: str) -> str:
    """Render [x^k]<CK_n>, one polynomial per n starting at n = 1."""
    if fmt == "csv":
        lines = [f"{n},{k},{p[k]}" for n, p in enumerate(rows, 1) for k in range(1, p.degree + 1)]
    elif fmt == "markdown":
        if not rows:
            return ""
        top = max(p.degree for p in rows)
        lines = ["| n\\k | " + " | ".join(str(k) for k in range(top + 1)) + " |"]
        lines.append("|---" * (top + 2) + "|")
        for n, p in enumerate(rows, 1):
            cells = [str(p[k]) if k <= p.degree else "" for k in range(top + 1)]
            lines.append(f"| {n} | " + " | ".join(cells) + " |")
    else:
        lines = [f"{n}: {render(p)}" for n, p in enumerate(rows, 1)]
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_table(cfg: RunConfig, out: TextIO) -> int:
    if cfg.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    out.write(format_table(table_rows(cfg.n_max, cfg.method), cfg.format))
    return 0


def cmd_barriers(cfg: RunConfig, out: TextIO) -> int:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("barriers needs --n >= 1")
    if cfg.n > grid.MAX_BARRIER_N:
        raise UsageError(f"barrier enumeration is limited to n <= {grid.MAX_BARRIER_N}")
    dist = grid.barrier_component_distribution(cfg.n)
    ks = [cfg.components] if cfg.components is not None else list(dist)
    if cfg.format == "markdown":
        top = max(dist)
        print(f"| {cfg.n} | " + " | ".join(str(dist.get(k, 0)) for k in range(top + 1)) + " |", file=out)
    else:
        for k in ks:
            print(f"{k},{dist.get(k, 0)}", file=out)
    if cfg.orbits:
        table = grid.orbit_table(cfg.n)
        for k in ks:
            sizes = table.get(k, [])
            print(f"orbits k={k}: {sizes}", file=out)
    return 0


def cmd_verify(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    n = 5 if cfg.n is None else cfg.n
    if not 2 <= n <= MAX_STATESUM_N:
        raise UsageError(f"verify --n must be in 2..{MAX_STATESUM_N}")
    results = run_checks(n, cfg.orbits, cfg.inject_fault)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}", file=out)
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=out)
    if failed:
        print(f"verify: failed check: {failed[0].name}", file=err)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="celtic-bracket", description="Kauffman brackets of knot shadows.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", help="bracket of a PD file by state sum")
    p.add_argument("--pd", dest="input_path", required=True)

    p = sub.add_parser("celtic", help="bracket of the 4 x 2n Celtic knot shadow")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="celtic-matrix")
    p.add_argument("--dump-matrix", action="store_true", help="also print the 14x14 state matrix and its relabelling")

    p = sub.add_parser("table", help="coefficient table for n = 1..n_max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=METHODS, default="celtic-matrix")
    p.add_argument("--format", choices=("plain", "csv", "markdown"), default="csv")

    p = sub.add_parser("barriers", help="component counts of barrier configurations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--components", type=int)
    p.add_argument("--orbits", action="store_true")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")

    p = sub.add_parser("verify", help="run the cross-method checks")
    p.add_argument("--n", type=int)
    p.add_argument("--orbits", action="store_true")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            n=getattr(args, "n", None),
            n_max=getattr(args, "n_max", None),
            method=getattr(args, "method", "celtic-matrix"),
            input_path=getattr(args, "input_path", None),
            format=getattr(args, "format", "csv"),
            orbits=getattr(args, "orbits", False),
            components=getattr(args, "components", None),
            dump_matrix=getattr(args, "dump_matrix", False),
            inject_fault=getattr(args, "inject_fault", False),
        )
        if cfg.command == "bracket":
            return cmd_bracket(cfg, out)
        if cfg.command == "celtic":
            return cmd_celtic(cfg, out)
        if cfg.command == "table":
            return cmd_table(cfg, out)
        if cfg.command == "barriers":
            return cmd_barriers(cfg, out)
        return cmd_verify(cfg, out, err)
    except (BracketError, OSError) as exc:
        print(f"celtic-bracket: error: {exc}", file=err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
