"""Command-line interface.

Exit codes: 0 when everything checked out, 1 when a mathematical check came
out false, 2 on usage or parse errors. Output is exact and plain text.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import _exact as ex
from . import albert as al
from . import brown as br
from . import flags as fl
from . import ideals as idl
from . import verify
from .linalg import DimensionMismatch, Subspace, format_subspace, parse_subspace
from .scalars import QuadField, ScalarParseError, format_scalar, parse_scalar, rational

ALBERT_EXPRS = {"sharp": 1, "norm": 1, "cross": 2, "trace": 1, "bracket": 2}
BROWN_EXPRS = {"brownmul": 2, "b": 2, "t": 3, "q": 4, "nu": 1, "ueval": 2}


class UsageError(ValueError):
    """Bad command-line input; maps to exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    zeta: object = 1
    gamma: tuple = (1, 1, 1)
    quad_d: int | None = None
    seed: int = 0
    strict_paper_incidence: bool = False

    def __post_init__(self):
        if self.zeta == 0 or any(g == 0 for g in self.gamma):
            raise UsageError("zeta and gamma entries must be nonzero")
        if self.quad_d is not None:
            QuadField(self.quad_d)  # rejects squares

    def albert(self) -> al.AlbertCtx:
        return al.albert_context(self.gamma)

    def brown(self) -> br.BrownCtx:
        if self.quad_d is not None:
            return br.quadratic_context(self.quad_d, self.gamma)
        return br.split_context(self.zeta, self.gamma)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from e


def _element(path: str, n: int, field=None):
    tokens = _read(path).split()
    if len(tokens) != n:
        raise DimensionMismatch(f"{path}: expected {n} scalars, found {len(tokens)}")
    return ex.obj(parse_scalar(t, field) for t in tokens)


def _subspace(path: str, n: int | None = None) -> Subspace:
    S = parse_subspace(_read(path))
    if n is not None and S.ambient_dim != n:
        raise DimensionMismatch(f"{path}: expected ambient dimension {n}, found {S.ambient_dim}")
    return S


def _vector_line(v) -> str:
    return " ".join(format_scalar(x) for x in v.tolist())


def _matrix_lines(M) -> str:
    return "\n".join(_vector_line(row) for row in M)


# commands -----------------------------------------------------------------------

def cmd_verify(cfg: CliConfig, args) -> int:
    return 0 if verify.run(args.suite, cfg.seed) else 1


def cmd_eval(cfg: CliConfig, args) -> int:
    expr, files = args.expr, args.files
    need = ALBERT_EXPRS.get(expr) or BROWN_EXPRS.get(expr)
    if len(files) != need:
        raise UsageError(f"eval {expr} takes {need} element file(s), got {len(files)}")
    if expr in ALBERT_EXPRS:
        A = cfg.albert()
        field = QuadField(cfg.quad_d) if cfg.quad_d is not None else None
        xs = [_element(f, al.DIM, field) for f in files]
        if expr == "sharp":
            print(_vector_line(A.sharp(xs[0])))
        elif expr == "norm":
            print(format_scalar(A.norm(xs[0])))
        elif expr == "cross":
            print(_vector_line(A.cross(*xs)))
        elif expr == "trace":
            print(format_scalar(A.trace(xs[0])))
        else:
            print(_matrix_lines(A.bracket(*xs)))
        return 0
    ctx = cfg.brown()
    xs = [_element(f, br.DIM) for f in files]
    if expr == "brownmul":
        print(_vector_line(ctx.mul(*xs)))
    elif expr == "b":
        print(format_scalar(ctx.b(*xs)))
    elif expr == "t":
        print(_vector_line(ctx.t(*xs)))
    elif expr == "q":
        print(format_scalar(ctx.q(*xs)))
    elif expr == "nu":
        print(format_scalar(ctx.nu(xs[0])))
    else:
        print(_vector_line(ctx.u_apply(*xs)))
    return 0


def cmd_ideal(cfg: CliConfig, args) -> int:
    ctx = cfg.brown()
    S = _subspace(args.file, br.DIM)
    if args.action == "check":
        report = idl.is_inner_ideal(ctx, S)
        print(report.summary())
        if report.witness is not None:
            print("witness " + _vector_line(report.witness))
        return 0 if report.is_inner else 1
    if args.action == "closure":
        print(format_subspace(idl.inner_closure(ctx, S.vectors())), end="")
        return 0
    t = fl.classify_e7(ctx, S)
    print("none" if t is None else f"e7 {t.index}")
    return 0 if t is not None else 1


def _geometry_ctx(cfg: CliConfig, geometry: str):
    return cfg.albert() if geometry == "e6" else cfg.brown()


def _geometry_dim(geometry: str) -> int:
    return al.DIM if geometry == "e6" else br.DIM


def cmd_classify(cfg: CliConfig, args) -> int:
    S = _subspace(args.file, _geometry_dim(args.geometry))
    t = fl.classify(_geometry_ctx(cfg, args.geometry), args.geometry, S)
    print("none" if t is None else f"{t.geometry} {t.index}")
    return 0 if t is not None else 1


def cmd_incidence(cfg: CliConfig, args) -> int:
    g = args.geometry
    ctx = _geometry_ctx(cfg, g)
    n = _geometry_dim(g)
    try:
        A = fl.typed(ctx, g, _subspace(args.file_a, n))
        B = fl.typed(ctx, g, _subspace(args.file_b, n))
    except fl.Unclassified as e:
        print(f"unclassified: {e}")
        return 1
    ok = fl.incident(g, A, B, strict_paper=cfg.strict_paper_incidence)
    print(f"{g} {A.type.index} {B.type.index} incident={str(ok).lower()}")
    return 0 if ok else 1


def cmd_dual(cfg: CliConfig, args) -> int:
    S = _subspace(args.file, al.DIM)
    print(format_subspace(cfg.albert().duality_map(S)), end="")
    return 0


# parsing ----------------------------------------------------------------------------

def _gamma(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("gamma takes three comma-separated scalars")
    try:
        return tuple(rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _scalar(text: str):
    try:
        return rational(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _global_options() -> argparse.ArgumentParser:
    # defaults are suppressed so the flags may appear before or after the command
    g = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    g.add_argument("--zeta", type=_scalar, help="zeta for the split Brown algebra (default 1)")
    g.add_argument("--gamma", type=_gamma, help="g0,g1,g2 for the reduced Albert algebra (default 1,1,1)")
    g.add_argument("--quad-d", type=int, help="use B(J, Q(sqrt d)) for Brown-algebra commands")
    g.add_argument("--seed", type=int, help="seed for randomized checks (default 0)")
    g.add_argument("--strict-paper-incidence", action="store_true",
                   help="use the published intersection thresholds for the special incidence pairs")
    return g


def build_parser() -> argparse.ArgumentParser:
    # a separate copy for the top level: set_defaults rewrites the shared actions
    common = _global_options()
    p = argparse.ArgumentParser(prog="structurable", parents=[_global_options()],
                                description="Exact computations in Albert and Brown algebras.")
    p.set_defaults(zeta=1, gamma=(1, 1, 1), quad_d=None, seed=0, strict_paper_incidence=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    v = add("verify", help="run self-check suites")
    v.add_argument("--suite", choices=("all",) + verify.SUITES, default="all")
    v.set_defaults(func=cmd_verify)

    e = add("eval", help="evaluate an operation on element files")
    e.add_argument("expr", choices=sorted(ALBERT_EXPRS) + sorted(BROWN_EXPRS))
    e.add_argument("files", nargs="+")
    e.set_defaults(func=cmd_eval)

    i = add("ideal", help="inner ideal queries on a subspace file (ambient 56)")
    i.add_argument("action", choices=("check", "closure", "classify"))
    i.add_argument("file")
    i.set_defaults(func=cmd_ideal)

    c = add("classify-space", help="flag-space type of a subspace")
    c.add_argument("--geometry", choices=("e6", "e7"), required=True)
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    n = add("incidence", help="incidence of two flag spaces")
    n.add_argument("--geometry", choices=("e6", "e7"), required=True)
    n.add_argument("file_a")
    n.add_argument("file_b")
    n.set_defaults(func=cmd_incidence)

    d = add("dual", help="duality map on a subspace of J (ambient 27)")
    d.add_argument("file")
    d.set_defaults(func=cmd_dual)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        cfg = CliConfig(args.zeta, args.gamma, args.quad_d, args.seed, args.strict_paper_incidence)
        return args.func(cfg, args)
    except (UsageError, ScalarParseError, DimensionMismatch, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
