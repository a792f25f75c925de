"""Command-line tools: ``vconvert``, ``lpcheck`` and ``bounds``.

Results go to standard output (or ``--output``).  Diagnostics and one final
statistics line ``rows_in=<n> rows_out=<n> ms=<n>`` go to standard error.

Exit codes:

====  ==========================================
0     success
1     input/output error (missing file, ...)
2     ParseError in the input
3     Overflow in ``--checked64`` mode
4     Abandoned: the ``--timeout`` budget ran out
64    bad command-line usage
====  ==========================================
"""
from __future__ import annotations

import argparse
import contextlib
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import Abandoned, BudgetContext, Overflow, ParseError, coefficient_mode
from .io_formats import domain_to_poly, parse_mps, parse_poly_file, poly_to_domain, write_poly_file
from .linear_forms import LinearExpression, Variable
from .lp import MAXIMIZATION, LpProblem, LpStatus

EXIT_OK = 0
EXIT_IO = 1
EXIT_PARSE = 2
EXIT_OVERFLOW = 3
EXIT_ABANDONED = 4
EXIT_USAGE = 64


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


@dataclass
class CliConfig:
    """Parsed options shared by the tools.

    ``timeout`` is in hundredths of a second, 0 meaning none.  Memory limits
    are left to the host (``ulimit -v`` or a container limit).
    """

    input: str
    output: Optional[str] = None
    timeout: int = 0
    checked64: bool = False
    incremental_sat: bool = False
    optimize: bool = False
    fallback_bds: bool = False

    @property
    def coefficient_mode(self) -> str:
        return "checked64" if self.checked64 else "unbounded"


class _Stats:
    def __init__(self):
        self.rows_in = 0
        self.rows_out: Optional[int] = None
        self.start = time.perf_counter()

    def line(self) -> str:
        ms = int((time.perf_counter() - self.start) * 1000)
        out = "-" if self.rows_out is None else self.rows_out
        return f"rows_in={self.rows_in} rows_out={out} ms={ms}"


def _hundredths(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("timeout must be non-negative")
    return v


def _parser(prog: str, description: str) -> _Parser:
    p = _Parser(prog=prog, description=description)
    p.add_argument("input", help="input file, or - for standard input")
    p.add_argument("--output", "-o", help="write results here instead of standard output")
    p.add_argument("--timeout", type=_hundredths, default=0, metavar="HS",
                   help="time budget in hundredths of a second (0: none)")
    p.add_argument("--checked64", action="store_true",
                   help="use checked 64-bit coefficients and fail on overflow")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _run(prog: str, argv, build: Callable[[_Parser], None],
         body: Callable[[CliConfig, _Stats, Callable[[str], None]], None],
         description: str = "") -> int:
    parser = _parser(prog, description)
    build(parser)
    stats = _Stats()
    err = sys.stderr
    try:
        ns = parser.parse_args(argv)
    except _Usage as e:
        print(e, file=err)
        print(parser.format_usage().rstrip(), file=err)
        return EXIT_USAGE
    cfg = CliConfig(**vars(ns))
    lines: list[str] = []
    code = EXIT_OK
    try:
        with coefficient_mode(cfg.coefficient_mode):
            body(cfg, stats, lines.append)
    except OSError as e:
        print(f"{prog}: {e}", file=err)
        code = EXIT_IO
    except ParseError as e:
        print(f"{prog}: parse error: {e}", file=err)
        code = EXIT_PARSE
    except Overflow as e:
        print(f"{prog}: coefficient overflow in checked-64 mode ({e}); "
              "rerun without --checked64 to use unbounded coefficients", file=err)
        code = EXIT_OVERFLOW
    except Abandoned:
        print(f"{prog}: abandoned after the {cfg.timeout}/100 s budget", file=err)
        code = EXIT_ABANDONED
    if code == EXIT_OK:
        text = "".join(s + "\n" for s in lines)
        try:
            if cfg.output:
                with open(cfg.output, "w", encoding="utf-8") as f:
                    f.write(text)
            else:
                sys.stdout.write(text)
                sys.stdout.flush()
        except OSError as e:
            print(f"{prog}: {e}", file=err)
            code = EXIT_IO
    print(stats.line(), file=err)
    return code


def _budget(cfg: CliConfig) -> BudgetContext:
    return BudgetContext.from_hundredths(cfg.timeout)


# -- vconvert ----------------------------------------------------------------------

def _vconvert(cfg: CliConfig, stats: _Stats, emit) -> None:
    pf = parse_poly_file(_read(cfg.input))
    stats.rows_in = len(pf.rows)
    with _budget(cfg):
        p = poly_to_domain(pf)
        out = domain_to_poly(p, "V" if pf.representation == "H" else "H", pf.name)
    stats.rows_out = len(out.rows)
    emit(write_poly_file(out).rstrip("\n"))


def vconvert(argv: Optional[Sequence[str]] = None) -> int:
    """Convert an H-file to its minimized V-file, or the other way round."""
    return _run("vconvert", argv, lambda p: None, _vconvert, vconvert.__doc__)


# -- lpcheck -----------------------------------------------------------------------

def _lpcheck_args(p: _Parser) -> None:
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--incremental-sat", action="store_true",
                      help="add one constraint at a time and report satisfiability")
    mode.add_argument("--optimize", action="store_true",
                      help="solve the LP and print the exact optimum (default)")


def _lpcheck(cfg: CliConfig, stats: _Stats, emit) -> None:
    prob = parse_mps(_read(cfg.input))
    cs, obj, sense = prob.to_lp()
    rows = list(cs)
    stats.rows_in = len(rows)
    n = len(prob.columns)
    with _budget(cfg):
        if cfg.incremental_sat:
            lp = LpProblem(n)
            sat = True
            count = 0
            for k, c in enumerate(rows, start=1):
                if sat:
                    lp.add_constraint(c)
                    sat = lp.is_satisfiable()
                count += sat
                emit(f"step {k}: {'SAT' if sat else 'UNSAT'}")
            stats.rows_out = count
            return
        lp = LpProblem(n, rows, obj, sense)
        status = lp.solve()
    stats.rows_out = len(rows)
    if status is LpStatus.OPTIMIZED:
        emit(f"OPTIMIZED {_fmt(lp.optimal_value())}")
    else:
        emit(status.name)


def lpcheck(argv: Optional[Sequence[str]] = None) -> int:
    """Check or optimize an MPS linear program with exact arithmetic."""
    return _run("lpcheck", argv, _lpcheck_args, _lpcheck, lpcheck.__doc__)


# -- bounds ------------------------------------------------------------------------

def _bounds_args(p: _Parser) -> None:
    p.add_argument("--fallback-bds", action="store_true",
                   help="on timeout, report bounds of a bounded-difference approximation")


def _bounds_lines(n: int, upper) -> list[str]:
    out = []
    for i in range(n):
        v = Variable(i)
        b = upper(i)
        out.append(f"{v} < +infty" if b is None else f"{v} <= {_fmt(b)}")
    return out


def _bounds(cfg: CliConfig, stats: _Stats, emit) -> None:
    pf = parse_poly_file(_read(cfg.input))
    stats.rows_in = len(pf.rows)
    n = pf.space_dimension
    cs = None
    try:
        with _budget(cfg):
            if pf.representation == "H":
                cs = [e for e in _h_constraints(pf)]
            else:
                cs = list(poly_to_domain(pf).minimized_constraints())
            lp = LpProblem(n, cs)
            if not lp.is_satisfiable():
                lines = ["unsatisfiable"]
            else:
                def upper(i):
                    lp.set_objective_function(Variable(i))
                    lp.set_optimization_mode(MAXIMIZATION)
                    st = lp.solve()
                    return None if st is LpStatus.UNBOUNDED else lp.optimal_value()
                lines = _bounds_lines(n, upper)
    except Abandoned:
        if not cfg.fallback_bds or cs is None:
            raise
        lines = _bds_fallback(cs, n)
        print("bounds: budget exhausted, bounds below come from a "
              "bounded-difference approximation", file=sys.stderr)
    stats.rows_out = len(lines)
    for s in lines:
        emit(s)


def _h_constraints(pf):
    for i, r in enumerate(pf.rows):
        e = LinearExpression(r[0], r[1:])
        yield e == 0 if i in pf.linearity else e >= 0


def _bds_fallback(cs, n: int) -> list[str]:
    from .bd_shape import INF
    from .conversions import POLYNOMIAL, to_bds
    from .polyhedron import Polyhedron

    s = to_bds(Polyhedron.from_constraints(cs, dim=n), POLYNOMIAL)
    if s.is_empty():
        return ["unsatisfiable"]

    def upper(i):
        b = s.upper_bound(Variable(i))
        return None if b is INF else b
    return _bounds_lines(n, upper)


def bounds(argv: Optional[Sequence[str]] = None) -> int:
    """Print an upper bound for every variable of an H- or V-file."""
    return _run("bounds", argv, _bounds_args, _bounds, bounds.__doc__)


def _entry(tool):
    def main() -> None:
        with contextlib.suppress(BrokenPipeError):
            sys.exit(tool())
    return main


vconvert_main = _entry(vconvert)
lpcheck_main = _entry(lpcheck)
bounds_main = _entry(bounds)
