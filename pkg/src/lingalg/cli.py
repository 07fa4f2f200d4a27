"""Single executable exposing every subsystem as a subcommand.

All output is machine-oriented: JSON (schemas ship in ``lingalg/schemas``)
or CSV for the sweep, floats printed to 12 significant digits, identical
inputs giving byte-identical bytes.  Exit codes: 0 success, 1 computation
error, 2 derivation crash, 64 usage error.

Environment overrides: LINGALG_N_MAX and LINGALG_TAIL_TOL set the default
occupation cutoff and tail tolerance.
"""

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import dicke, fibmatrix, thermofield, xbar
from .syntax import load_lexicon_file, run_script
from .thermofield import CutoffError, FockCutoff
from .xbar import NodeState, TreeSizeError

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_CRASH = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _jsonable(obj):
    if isinstance(obj, float):
        return _sig12(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _write(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out_path):
    _write(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n", out_path)


def _default_cutoff(args) -> FockCutoff:
    n_max = args.n_max
    if n_max is None:
        n_max = int(os.environ.get("LINGALG_N_MAX", thermofield.DEFAULT_N_MAX))
    tail = getattr(args, "tail_tol", None)
    if tail is None:
        tail = float(
            os.environ.get("LINGALG_TAIL_TOL", thermofield.DEFAULT_TAIL_TOL)
        )
    return FockCutoff(n_max=n_max, tail_tol=tail)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_tree(args) -> int:
    if args.counts_only:
        root = NodeState.ONE if args.symmetric else NodeState.ZERO
        counts = xbar.state_counts(args.depth, root_state=root)
        nodes = None
    else:
        tree = xbar.grow(args.depth)
        if args.symmetric:
            tree = xbar.symmetric(tree)
        counts = list(tree.counts)
        nodes = [
            {
                "id": n.id,
                "state": n.state.value,
                "step": n.step,
                "parent": n.parent,
                "rule": None if n.rule is None else n.rule.value,
            }
            for n in tree.nodes
        ]
    payload = {
        "depth": args.depth,
        "symmetric": bool(args.symmetric),
        "counts": [[z, o] for z, o in counts],
        "nodes": nodes,
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_fib(args) -> int:
    if args.matrix:
        m = fibmatrix.fib_pow(args.n)
        payload = {"n": args.n, "matrix": [list(m[0]), list(m[1])]}
    else:
        payload = {"n": args.n, "fib": fibmatrix.fib(args.n)}
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_dicke(args) -> int:
    state = dicke.DickeState(args.N, args.l)
    payload = {
        "N": args.N,
        "l": args.l,
        "op": args.op,
        "coefficient": None,
        "state": None,
        "value": None,
        "deviation": None,
    }
    if args.op in ("sigma+", "sigma-"):
        r = dicke.sigma_plus(state) if args.op == "sigma+" else dicke.sigma_minus(state)
        payload["coefficient"] = r.coefficient
        if r.state is not None:
            payload["state"] = {"N": r.state.N, "l": r.state.l}
    elif args.op == "s3":
        payload["value"] = dicke.order_parameter(state)
    else:  # contraction
        payload["deviation"] = dicke.contraction_deviation(args.N, args.l)
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_bogoliubov(args) -> int:
    cutoff = _default_cutoff(args)
    thetas = [args.theta] * args.modes
    if args.parallel_modes > 1:
        with ThreadPoolExecutor(max_workers=args.parallel_modes) as pool:
            reports = list(pool.map(lambda t: thermofield.mode_report(t, cutoff), thetas))
    else:
        reports = [thermofield.mode_report(t, cutoff) for t in thetas]
    per_mode = [
        {
            "theta": r.theta,
            "overlap_with_bare": r.overlap_with_bare,
            "number_expectation": r.number_expectation,
            "entropy": r.entropy,
            "weights": list(r.weights),
            "tail_bound": r.tail_bound,
        }
        for r in reports
    ]
    payload = {
        "theta": args.theta,
        "modes": args.modes,
        "n_max": cutoff.n_max,
        "tag": args.tag,
        "per_mode": per_mode,
        "totals": {
            "number": sum(r.number_expectation for r in reports),
            "entropy": sum(r.entropy for r in reports),
            "overlap_with_bare": thermofield.foliation_overlap(
                thetas, [0.0] * args.modes, cutoff
            ),
        },
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def _parse_sweep(spec: str):
    try:
        a, b, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise ValueError(f"sweep must be a:b:step, got {spec!r}") from None
    if step <= 0 or b < a:
        raise ValueError(f"bad sweep range {spec!r}")
    out = []
    k = 0
    while True:
        t = a + k * step
        if t > b + 1e-12:
            break
        out.append(t)
        k += 1
    return out


def _cmd_entropy(args) -> int:
    cutoff = _default_cutoff(args)
    thetas = _parse_sweep(args.theta_sweep)
    buf = io.StringIO()
    buf.write("theta,entropy,number,overlap_with_bare\n")
    for t in thetas:
        r = thermofield.mode_report(t, cutoff)
        buf.write(
            f"{_sig12(t):.12g},{_sig12(r.entropy):.12g},"
            f"{_sig12(r.number_expectation):.12g},{_sig12(r.overlap_with_bare):.12g}\n"
        )
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def _cmd_heat(args) -> int:
    cutoff = _default_cutoff(args)
    try:
        t0, t1, steps = args.ramp.split(":")
        t0, t1, steps = float(t0), float(t1), int(steps)
    except ValueError:
        raise ValueError(f"ramp must be t0:t1:steps, got {args.ramp!r}") from None
    if steps < 3 or t1 <= t0:
        raise ValueError(f"bad ramp {args.ramp!r}")
    dt = (t1 - t0) / (steps - 1)
    path = [(t0 + i * dt, t0 + i * dt) for i in range(steps)]
    rep = thermofield.heat_relation_check(path, args.omega, args.beta, cutoff)
    payload = {
        "omega": args.omega,
        "beta": args.beta,
        "ramp": {"t0": t0, "t1": t1, "steps": steps},
        "theta_star": rep.theta_star,
        "stationary_residual": rep.stationary_residual,
        "max_residual": rep.max_residual,
        "samples": rep.samples,
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_derive(args) -> int:
    lexicon = load_lexicon_file(args.lexicon)
    with open(args.script, encoding="utf-8") as fh:
        script = json.load(fh)
    result = run_script(lexicon, script)
    _emit_json(result, args.out)
    return EXIT_CRASH if result["errors"] else EXIT_OK


def _cmd_selftest(args) -> int:
    from . import acceptance

    results = acceptance.run_all(verbose=True)
    return EXIT_OK if all(r.passed for r in results) else EXIT_COMPUTE


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="lingalg", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_out(sp):
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("tree", parents=[], help="grow the branching tree")
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--counts-only", action="store_true")
    sp.add_argument("--symmetric", action="store_true")
    add_out(sp)
    sp.set_defaults(func=_cmd_tree)

    sp = sub.add_parser("fib", help="Fibonacci numbers via the matrix identity")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--matrix", action="store_true")
    add_out(sp)
    sp.set_defaults(func=_cmd_fib)

    sp = sub.add_parser("dicke", help="collective ladder coefficients")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--op", choices=["sigma+", "sigma-", "s3", "contraction"], required=True)
    add_out(sp)
    sp.set_defaults(func=_cmd_dicke)

    sp = sub.add_parser("bogoliubov", help="theta-vacuum mode report")
    sp.add_argument("--theta", type=float, required=True)
    sp.add_argument("--modes", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--tail-tol", type=float, default=None)
    sp.add_argument("--tag", default=None, help="label for this theta-set (which concept it encodes)")
    sp.add_argument("--parallel-modes", type=int, default=1)
    sp.add_argument("--report", action="store_true", help="accepted for symmetry; the report is always emitted")
    add_out(sp)
    sp.set_defaults(func=_cmd_bogoliubov)

    sp = sub.add_parser("entropy", help="CSV sweep of entropy/number/overlap")
    sp.add_argument("--theta-sweep", required=True, metavar="a:b:step")
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--tail-tol", type=float, default=None)
    add_out(sp)
    sp.set_defaults(func=_cmd_entropy)

    sp = sub.add_parser("heat", help="finite-difference heat relation audit")
    sp.add_argument("--omega", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--ramp", required=True, metavar="t0:t1:steps")
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--tail-tol", type=float, default=None)
    add_out(sp)
    sp.set_defaults(func=_cmd_heat)

    sp = sub.add_parser("derive", help="run a derivation script")
    sp.add_argument("--lexicon", required=True)
    sp.add_argument("--script", required=True)
    add_out(sp)
    sp.set_defaults(func=_cmd_derive)

    sp = sub.add_parser("selftest", help="run the acceptance criteria end to end")
    sp.set_defaults(func=_cmd_selftest)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreeSizeError, CutoffError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"lingalg: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
