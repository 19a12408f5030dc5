"""Command-line front end.

Exit codes: 0 success, 2 malformed input (rep-spec, flags, q out of range),
3 a verification residual above ``--tol``. Errors go to stderr as
``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corep import CorepDecomp, dim_q, fuse, parse_rep
from .errors import DomainError, ParseError, QSubfactorError
from .qnum import check_q, evaluate
from .type3 import three_step_decomposition, type3_report, verify_composition
from .verify import TARGETS, VerifyConfig
from .verify import run as run_verify
from .wassermann import ToyAction, index, jones_tower

SCHEMA = 1
TOWER_CAP = 12


class UsageError(QSubfactorError):
    kind = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _rep(args, name: str, required: bool = True) -> CorepDecomp | None:
    spec = getattr(args, name)
    if spec is None:
        if required:
            raise UsageError(f"--{name} is required")
        return None
    return parse_rep(spec, integer_only=args.so3)


def _q(args, required: bool = True) -> float | None:
    if args.q is None:
        if required:
            raise UsageError("--q is required")
        return None
    return check_q(args.q)


def cmd_fuse(args) -> tuple[str, int]:
    out = fuse(_rep(args, "rep"), _rep(args, "rep2"))
    if args.format == "json":
        return _dumps({"schema": SCHEMA, "rep": out.to_json(), "text": out.render()}), 0
    return out.render(), 0


def _poly_report(poly, q, fmt) -> str:
    if fmt == "json":
        obj = {"schema": SCHEMA, "poly": poly.to_text()}
        if q is not None:
            obj["value"] = evaluate(poly, q)
        return _dumps(obj)
    lines = [poly.to_text()]
    if q is not None:
        lines.append(f"value at q={q!r}: {evaluate(poly, q)!r}")
    return "\n".join(lines)


def cmd_dim(args):
    return _poly_report(dim_q(_rep(args, "rep")), _q(args, False), args.format), 0


def cmd_index(args):
    return _poly_report(index(_rep(args, "rep")), _q(args, False), args.format), 0


def cmd_tower(args):
    pi = _rep(args, "rep")
    n = 2 if args.n is None else args.n
    if n < 0 or n > TOWER_CAP:
        raise DomainError(f"--n must lie in [0, {TOWER_CAP}], got {n}")
    q = _q(args, False)
    tower = jones_tower(pi, n)
    if args.dot:
        return tower.to_dot(), 0
    if args.format == "json":
        return _dumps({"schema": SCHEMA, **tower.to_json(q)}), 0
    lines = [f"index: {tower.index_poly.to_text()}"]
    if q is not None:
        lines.append(f"index value at q={q!r}: {evaluate(tower.index_poly, q)!r}")
    for k, (rho, dims) in enumerate(zip(tower.rhos, tower.end_dims)):
        lines.append(f"rho_{k}: {rho.render()}  | End: {list(dims)}, dim {sum(m * m for m in dims)}")
    for k, G in enumerate(tower.inclusion_matrices):
        lines.append(f"G_{k}: {[list(r) for r in G]}")
    return "\n".join(lines), 0


def cmd_type3(args):
    pi = _rep(args, "rep")
    q = _q(args)
    report = type3_report(pi, q)
    sigma = _rep(args, "sigma", required=False)
    extra = {}
    if sigma is not None:
        act = ToyAction(sigma, q)
        ts = three_step_decomposition(pi, act, q)
        extra = {
            "sigma": sigma.render(),
            "tau_minus_of_p": list(ts.weights),
            "composition_residual": verify_composition(pi, act, q),
        }
    if args.format == "json":
        return _dumps({"schema": SCHEMA, "rep": pi.render(), **report.to_json(), **extra}), 0
    lines = [f"rep                  {pi.render()}", report.to_text()]
    if extra:
        lines.append("")
        lines.append(f"sigma                {extra['sigma']}")
        lines.append(f"tau^-(p_j)           {' '.join(f'{w:.12g}' for w in extra['tau_minus_of_p'])}")
        lines.append(f"composition_residual {extra['composition_residual']:.3e}")
    return "\n".join(lines), 0


def cmd_verify(args):
    cfg = VerifyConfig(tol=args.tol)
    if args.q is not None:
        cfg.q = check_q(args.q)
    if args.rep is not None:
        cfg.rep = _rep(args, "rep")
    if args.sigma is not None:
        cfg.sigma = _rep(args, "sigma")
    results = run_verify(args.target, cfg)
    failed = [k for k, r in results.items() if not r <= cfg.tol]
    if args.format == "json":
        obj = {
            "schema": SCHEMA,
            "target": args.target,
            "q": cfg.q,
            "tol": cfg.tol,
            "checks": [{"name": k, "residual": r, "pass": k not in failed} for k, r in results.items()],
            "pass": not failed,
        }
        text = _dumps(obj)
    else:
        width = max(len(k) for k in results)
        lines = [f"{k:<{width}}  {r:.3e}  {'FAIL' if k in failed else 'ok'}" for k, r in results.items()]
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks within tol={cfg.tol:g}")
        text = "\n".join(lines)
    if failed:
        print(f"error: verification: {len(failed)} check(s) above tol: {', '.join(failed)}", file=sys.stderr)
        return text, 3
    return text, 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, help="deformation parameter in (0, 1)")
    common.add_argument("--rep", help='rep-spec, e.g. "2x1/2 + 1"')
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--so3", action="store_true", help="restrict spins to integers (SO_q(3))")

    parser = _Parser(prog="qsubfactor", description="Invariants of Wassermann-type subfactors from SU_q(2).")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    p = sub.add_parser("fuse", parents=[common], help="tensor product of two rep-specs")
    p.add_argument("--rep2", help="second rep-spec")
    p.set_defaults(func=cmd_fuse)
    p = sub.add_parser("dim", parents=[common], help="quantum dimension")
    p.set_defaults(func=cmd_dim)
    p = sub.add_parser("index", parents=[common], help="Jones index (dim_q)^2")
    p.set_defaults(func=cmd_index)
    p = sub.add_parser("tower", parents=[common], help="Jones tower and relative commutants")
    p.add_argument("--n", type=int, help=f"depth (default 2, at most {TOWER_CAP})")
    p.add_argument("--dot", action="store_true", help="emit the Bratteli diagram as Graphviz DOT")
    p.set_defaults(func=cmd_tower)
    p = sub.add_parser("type3", parents=[common], help="type III analysis report")
    p.add_argument("--sigma", help="rep-spec of the toy action, enables the three-step maps")
    p.set_defaults(func=cmd_type3)
    p = sub.add_parser("verify", parents=[common], help="run residual suites")
    p.add_argument("target", nargs="?", default="all", choices=TARGETS + ("all",))
    p.add_argument("--sigma", help="rep-spec of the toy action (default 1/2)")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(sys.argv[1:] if argv is None else argv)
        if not getattr(args, "func", None):
            raise UsageError("a command is required: fuse, dim, index, tower, type3, verify")
        text, code = args.func(args)
    except QSubfactorError as exc:
        print(f"error: {exc.kind}: {exc}", file=sys.stderr)
        return 2
    print(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
