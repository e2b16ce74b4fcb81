import argparse
import logging
import sys

from . import classical, reptable, state, torusnorm
from .key import canonical_json
from .report import artifact, artifact_tsv
from .suites import SUITES, run_suite
from .validate import check_kwargs

logger = logging.getLogger(__name__)

SUITE_FLAGS = ["p", "max_n", "l", "m", "f", "a", "d", "n", "family", "seed", "cap"]

def _datum(fn):
    return lambda **kw: torusnorm.datum_report(fn(**kw))

def _regular(fn):
    return lambda **kw: classical.rep_report(fn(**kw))

def _row(fn):
    return lambda **kw: reptable.rep_report(fn(**kw))

def _companion(p, a):
    c = torusnorm.cyclotomic_companion(p, a)
    return {
        "p": p,
        "a": a,
        "size": c.shape[0],
        "matrix": c,
        "order": torusnorm.integer_matrix_order(c, p ** a + 1),
        "min_torus_dim": torusnorm.min_torus_dim_for_order(p, a),
    }

# Construction id -> (report function, parameter defaults). A default of None
# marks a required parameter.
CONSTRUCTIONS = {
    "sl-wreath": (_datum(torusnorm.sl_wreath), {"p": None, "a": None, "d": None}),
    "go-wreath": (_datum(torusnorm.go_wreath), {"m": None, "f": None, "seed": None}),
    "so-pair-stab": (_datum(torusnorm.so_pair_stab), {"l": None, "seed": None}),
    "so-orthsum": (_datum(torusnorm.so_orthsum), {"l": None}),
    "so-orthsum-wreath": (_datum(torusnorm.so_orthsum_wreath), {"m": None, "f": None, "seed": None}),
    "sl4-wedge": (_datum(torusnorm.sl4_wedge), {}),
    "gl-stab-outer": (_regular(classical.gl_stab_outer), {"l": None, "p": 2, "seed": None}),
    "regular-sl": (_regular(classical.regular_in_sl), {"n": None, "p": None}),
    "regular-sp": (_regular(classical.regular_in_sp), {"n": None, "p": None}),
    "regular-so": (_regular(classical.regular_in_so), {"n": None, "p": None}),
    "regular-so-char2": (_regular(classical.regular_in_so_odd_char2), {"n": None}),
    "go-outer": (_regular(classical.go_outer_regular), {"n": None, "p": 2}),
    "sym-power": (_row(reptable.sym_power_rep), {"m": None, "p": None}),
    "natural": (_row(reptable.natural_rep), {"family": None, "l": None, "p": None}),
    "g2": (_row(reptable.g2_rep), {"p": None}),
    "a2-adjoint": (_row(reptable.a2_adjoint_outer), {"p": 2}),
    "tensor-wreath": (_row(reptable.tensor_wreath), {"p": None}),
    "tensor-swap9": (_row(reptable.tensor_swap9), {}),
    "tensor-pair": (_row(reptable.tensor_pair), {"p": None}),
    "companion": (_companion, {"p": None, "a": None}),
}

def construct(name, params):
    if name not in CONSTRUCTIONS:
        raise RuntimeError(f"Unknown construction '{name}'")
    fn, defaults = CONSTRUCTIONS[name]
    given = {k: v for k, v in params.items() if k in defaults and v is not None}
    ignored = sorted(k for k, v in params.items()
                     if k not in defaults and k != "seed" and v is not None)
    if ignored:
        raise RuntimeError(f"Construction {name} does not take the parameters {', '.join(ignored)}")
    kwargs = check_kwargs(given, defaults, f"construction {name}")
    if "seed" in kwargs and kwargs["seed"] is None:
        kwargs["seed"] = state.get_default_seed()
    missing = sorted(k for k, v in kwargs.items() if v is None)
    if missing:
        raise RuntimeError(f"Construction {name} requires the parameters {', '.join(missing)}")
    return fn(**kwargs)

def _add_param_flags(parser):
    parser.add_argument("--p", type=int, help="characteristic")
    parser.add_argument("--l", type=int, help="rank")
    parser.add_argument("--m", type=int, help="block parameter m")
    parser.add_argument("--f", type=int, help="wreath exponent f")
    parser.add_argument("--a", type=int, help="exponent a of p^a")
    parser.add_argument("--d", type=int, help="weight space dimension d")
    parser.add_argument("--n", type=int, help="dimension of the natural module")
    parser.add_argument("--family", choices=reptable.FAMILIES, help="family of a natural row")
    parser.add_argument("--seed", type=int, help="seed of the randomized searches (default REGULIB_SEED or 0)")
    parser.add_argument("--cap", type=int, help="maximum number of enumerated lines")
    parser.add_argument("--emit", choices=["json", "tsv"], default="json")
    parser.add_argument("--verbose", action="store_true", help="log debug output to stderr")
    parser.add_argument("--timing", action="store_true", help="include elapsed_ms in reports")

def build_parser():
    parser = argparse.ArgumentParser(
        prog="regulib",
        description="Constructions and verification suites for regular unipotent elements "
                    "of classical groups over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=list(SUITES))
    verify.add_argument("--max-n", dest="max_n", type=int, help="largest dimension considered")
    verify.add_argument("--jobs", type=int, help="worker processes (1 runs serially)")
    verify.add_argument("--progress", action="store_true", help="show a progress bar on stderr")
    _add_param_flags(verify)
    cons = sub.add_parser("construct", help="build and dump a single construction")
    cons.add_argument("construction", choices=list(CONSTRUCTIONS))
    _add_param_flags(cons)
    return parser

def _configure(args):
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if args.seed is not None:
        state.set_default_seed(args.seed)
    if args.cap is not None:
        state.set_line_cap(args.cap)
    if args.timing:
        state.set_timing(True)

def cmd_verify(args):
    opts = {k: getattr(args, k) for k in SUITE_FLAGS}
    report = run_suite(args.suite, opts, args.jobs, args.progress)
    print(report.to_json() if args.emit == "json" else report.to_tsv())
    failed = [item.id for item in report.items if not item.passed]
    if failed:
        logger.warning(f"Suite {args.suite} failed for {len(failed)} items: {', '.join(failed)}")
        return 1
    return 0

def cmd_construct(args):
    params = {k: getattr(args, k) for k in ["p", "l", "m", "f", "a", "d", "n", "family", "seed"]}
    data = construct(args.construction, params)
    payload = artifact(args.construction, state.get_default_seed(), data)
    print(canonical_json(payload) if args.emit == "json" else artifact_tsv(payload))
    return 0

def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    _configure(args)
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_construct(args)
    except RuntimeError as e:
        print(f"regulib: error: {e}", file=sys.stderr)
        return 2
