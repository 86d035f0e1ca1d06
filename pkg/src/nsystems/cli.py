"""Command-line entry point.

Every command prints tab-delimited lines.  Report commands accept
``--figure-dir`` and write SVG figures there.  Exit status: 0 when every
check passes, 1 when a verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import ballgame, cex_min, cex_nsa
from .errors import NSystemError
from .paths import GENERALIZED, SystemClass, division_numbers, switch_numbers, validate_rigid, validate_system
from .rational import format_rational, parse_rational
from .reports import CheckReport
from .serialize import emit_map, emit_system, parse_map, parse_system
from .spectrum import SelfSimilarSystem, extreme_points, limit_set_vertices, mu_estimate, mu_exact, normalize

log = logging.getLogger("nsystems")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _out(*fields):
    print("\t".join(str(f) for f in fields))


def _vec(v) -> str:
    return ",".join(format_rational(x) for x in v)


def _emit_reports(reports) -> int:
    ok = True
    for rep in reports:
        _out("#", rep.title)
        for line in rep.lines():
            print(line)
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_FAILED


def _figure(args, name: str, svg: str):
    if not getattr(args, "figure_dir", None):
        return
    folder = Path(args.figure_dir)
    folder.mkdir(parents=True, exist_ok=True)
    target = folder / name
    target.write_text(svg)
    _out("figure", target)


def _render():
    # matplotlib is only imported when a figure is requested
    from . import render
    return render


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    system = parse_system(_read(args.system))
    path = system.unroll(2) if isinstance(system, SelfSimilarSystem) else system
    if args.cls:
        cls = SystemClass.rigid(args.mesh) if args.cls == "rigid" else SystemClass(args.cls)
    else:
        cls = system.cls if isinstance(system, SelfSimilarSystem) else GENERALIZED
    if cls.kind == "rigid":
        report = validate_rigid(path, cls.mesh, strict_start=args.strict_start)
    else:
        report = validate_system(path, cls)
    _out("class", cls)
    for v in report.violations:
        _out("violation", v.axiom, format_rational(v.q), v.detail)
    if report.valid and not isinstance(system, SelfSimilarSystem):
        _out("division", _vec(division_numbers(path)))
        _out("switch", _vec(switch_numbers(path)))
    elif report.valid:
        _out("division", _vec(division_numbers(system.base)))
        _out("switch", _vec(switch_numbers(system.base)))
    _out("PASS" if report.valid else "FAIL", "validate", f"{len(report.violations)} violations")
    if report.valid:
        _figure(args, Path(args.system).stem + ".svg", _render().render_combined_graph(system))
    return EXIT_OK if report.valid else EXIT_FAILED


def cmd_mu(args) -> int:
    T = parse_map(_read(args.map))
    system = parse_system(_read(args.system))
    if args.estimate or not isinstance(system, SelfSimilarSystem):
        point = mu_estimate(T, system, args.tail)
    else:
        point = mu_exact(T, system)
    print(point.encode())
    return EXIT_OK


def _read_points(text: str) -> list:
    points = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            points.append(normalize([parse_rational(x) for x in line.replace(",", " ").split()]))
        except ValueError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None
    if not points:
        raise UsageError("no points given")
    return points


def cmd_hull(args) -> int:
    if args.points:
        points = _read_points(_read(args.points))
    else:
        points = limit_set_vertices(parse_system(_read(args.system)))
    extreme = set(extreme_points(points))
    seen = set()
    for p in points:
        if p in seen:
            continue
        seen.add(p)
        _out("extreme" if p in extreme else "interior", _vec(p))
    return EXIT_OK


def cmd_verify_min(args) -> int:
    inst = cex_min.build_min_instance(args.alpha, args.beta)
    mu_R, mu_S = mu_exact(inst.T, inst.R), mu_exact(inst.T, inst.S)
    _out("mu_R", _vec(mu_R.values))
    _out("mu_S", _vec(mu_S.values))
    _out("target", _vec(inst.target.values))
    reports = [
        cex_min.verify_corollary_values(inst),
        cex_min.verify_halfspace_rep(inst),
        cex_min.check_kappa_generator_bounds(inst),
    ]
    status = _emit_reports(reports)
    if args.figure_dir:
        render = _render()
        _figure(args, "R.svg", render.render_combined_graph(inst.R, title=f"R, alpha={inst.alpha}"))
        _figure(args, "S.svg", render.render_combined_graph(inst.S, title=f"S, beta={inst.beta}"))
    return status


def cmd_verify_nsa(args) -> int:
    inst = cex_nsa.build_nsa_instance(args.n, args.alpha)
    reports = []
    values = []
    for m in range(1, args.m_max + 1):
        f = cex_nsa.build_f(inst, m)
        reports.append(cex_nsa.verify_main_inequalities(inst, f))
        got = mu_exact(inst.T, f).values
        want = (inst.theta(m),) + (Fraction(0),) * inst.n
        rep = CheckReport(f"spectrum value of f_{m}")
        rep.add(f"mu_T(f_{m}) = (1/(1+alpha^{m} beta), 0, ...)", got == want, _vec(got))
        reports.append(rep)
        values.append(got[0])
        if args.figure_dir:
            _figure(args, f"f_{m}.svg", _render().render_combined_graph(f, title=f"f_{m}, n={inst.n}, alpha={inst.alpha}"))
    reports.append(cex_nsa.check_isolation(values))
    return _emit_reports(reports)


def cmd_enumerate_e(args) -> int:
    inst = cex_nsa.build_nsa_instance(args.n, args.alpha)
    for m, theta in enumerate(cex_nsa.enumerate_E(inst, args.m_max, verify=not args.no_verify), 1):
        _out(m, format_rational(theta))
    _out("limit", "0")  # in E as the limit of the listed values; it has no m
    return EXIT_OK


def cmd_sample(args) -> int:
    T = parse_map(_read(args.map))
    policy = ballgame.GenerationPolicy(
        n=args.n, delta=args.delta, steps=args.steps, seed=args.seed,
        mean_move=args.mean_move, generalized=args.generalized,
    )
    points = ballgame.sample_spectrum(T, policy, args.count, args.tail, workers=args.workers)
    _out("#", "sampling distribution: ball game with geometric moves (mean "
         f"{args.mean_move}) and uniform pass targets; window [t Q, Q], t={format_rational(args.tail)}")
    for p in points:
        print(p.encode())
    if args.figure_dir and T.m >= 2:
        coords = (0, min(3, T.m - 1))
        _figure(args, "sample.svg", _render().render_spectrum_scatter(points, coords, title="sampled spectrum points"))
    return EXIT_OK


def cmd_render(args) -> int:
    render = _render()
    system = parse_system(_read(args.system))
    q_range = (args.q_from, args.q_to) if args.q_from is not None and args.q_to is not None else None
    if (args.q_from is None) != (args.q_to is None):
        raise UsageError("--from and --to go together")
    spec = render.RenderSpec(args.width, args.height, q_range, not args.no_division_labels, args.switch)
    svg = render.render_combined_graph(system, spec, title=args.title or "")
    Path(args.out).write_text(svg)
    _out("figure", args.out)
    return EXIT_OK


def cmd_example(args) -> int:
    if args.which == "R":
        doc = emit_system(cex_min.build_R(args.alpha))
    elif args.which == "S":
        doc = emit_system(cex_min.build_S(args.beta))
    elif args.which == "T-min":
        doc = emit_map(cex_min.build_T(args.alpha, args.beta))
    elif args.which == "f":
        doc = emit_system(cex_nsa.build_f(cex_nsa.build_nsa_instance(args.n, args.alpha), args.m))
    else:
        doc = emit_map(cex_nsa.build_nsa_instance(args.n, args.alpha).T)
    sys.stdout.write(doc)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nsystems", description="Exact computations with n-systems.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def figure_opt(p):
        p.add_argument("--figure-dir", help="write SVG figures into this directory")

    p = sub.add_parser("validate", help="check a system document against its class")
    p.add_argument("system")
    p.add_argument("--class", dest="cls", choices=["exact", "generalized", "rigid"])
    p.add_argument("--mesh", type=_rational, default=Fraction(1))
    p.add_argument("--strict-start", action="store_true", help="rigid: also require distinct coordinates at q_0")
    figure_opt(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mu", help="mu_T of a system (exact for self-similar input)")
    p.add_argument("system")
    p.add_argument("--map", required=True)
    p.add_argument("--estimate", action="store_true", help="use the window estimate even for self-similar input")
    p.add_argument("--tail", type=_rational, default=Fraction(1, 2))
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("hull", help="extreme points of K(P) or of a point list")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--system")
    group.add_argument("--points", help="one point per line, rationals separated by spaces or commas")
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("verify-min", help="check the dimension-4 minimum counterexample")
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--beta", type=_rational, required=True)
    figure_opt(p)
    p.set_defaults(func=cmd_verify_min)

    p = sub.add_parser("verify-nsa", help="check the systems f_m and their spectrum values")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--m-max", type=int, default=5)
    figure_opt(p)
    p.set_defaults(func=cmd_verify_nsa)

    p = sub.add_parser("enumerate-E", help="list 1/(1 + alpha^m beta) for m = 1..m_max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--m-max", type=int, default=5)
    p.add_argument("--no-verify", action="store_true", help="skip the mu_T cross-check")
    p.set_defaults(func=cmd_enumerate_e)

    p = sub.add_parser("sample", help="Monte Carlo spectrum points from random systems")
    p.add_argument("--map", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=_rational, default=Fraction(1))
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--tail", type=_rational, default=Fraction(1, 2))
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--mean-move", type=float, default=3.0)
    p.add_argument("--generalized", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    figure_opt(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("render", help="SVG of the combined graph of a system")
    p.add_argument("system")
    p.add_argument("--out", required=True)
    p.add_argument("--from", dest="q_from", type=_rational)
    p.add_argument("--to", dest="q_to", type=_rational)
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=400)
    p.add_argument("--switch", action="store_true", help="mark switch numbers")
    p.add_argument("--no-division-labels", action="store_true")
    p.add_argument("--title")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("example", help="emit a built-in system or map document")
    p.add_argument("which", choices=["R", "S", "T-min", "f", "T-nsa"])
    p.add_argument("--alpha", type=_rational, default=Fraction(2))
    p.add_argument("--beta", type=_rational, default=Fraction(3))
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, NSystemError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
