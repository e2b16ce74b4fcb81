import functools
import logging
import numpy as np
import time
from sympy.utilities.iterables import partitions
from tqdm import tqdm

from . import backend, state
from .classical import (
    gl_stab_outer, go_outer_regular, regular_in_so, regular_in_so_odd_char2, regular_in_sp,
    regular_in_sl
)
from .exactla import FieldPrime, block_diag, jordan_block
from .forms import is_isometry
from .jordan import JordanType, jordan_power, jordan_tensor, jordan_type, unipotent_order
from .modstruct import ModuleAction, fixed_space, is_absolutely_irreducible
from .report import Report, ReportItem, claim_equal, claim_true
from .reptable import build_row, lemma_rows, table_rows
from .torusnorm import (
    build, catalogue, centralizes_torus, check_construction, classify_torus_case,
    cyclotomic_companion, datum_witness, integer_matrix_order, min_torus_dim_for_order,
    normalizes_torus, orbits, parabolic_witness, sl_wreath, weight_spaces
)
from .validate import check_at_least, check_choice, check_kwargs, check_prime

logger = logging.getLogger(__name__)

SUITE_OPTIONS = {
    "p": None, "max_n": None, "l": None, "m": None, "f": None, "a": None, "d": None,
    "n": None, "family": None, "seed": None, "cap": None,
}

def _primes(opts, default):
    if opts["p"] is not None:
        return [check_prime(opts["p"])]
    return list(default)

def _max_n(opts, default):
    if opts["max_n"] is None:
        return default
    return check_at_least(opts["max_n"], 1, "max_n")

def _unipotent_of_type(field, t):
    return block_diag(*[jordan_block(field, b) for b in t])

def _partitions(n):
    for part in partitions(n):
        yield JordanType.of([k for k, mult in part.items() for _ in range(mult)])

def _witness_kind(w):
    return w.kind if w is not None else None

# Power map: the closed form against the rank-sequence oracle on u^p.

def power_map_items(opts):
    max_n = _max_n(opts, 24)
    return [(f"p={p}:n={n}", {"p": p, "n": n})
            for p in _primes(opts, (2, 3, 5, 7)) for n in range(1, max_n + 1)]

def power_map_item(p, n):
    field = FieldPrime(p)
    checked = 0
    mismatches = []
    for t in _partitions(n):
        u = _unipotent_of_type(field, t)
        if jordan_type(u ** p) != jordan_power(t, p):
            mismatches.append(str(t))
        checked += 1
    return [claim_equal("mismatches", [], mismatches)], {"partitions": checked}

# Pairs of single blocks whose tensor product is within two of a single
# block.

def _near_regular(t):
    n = t.dim
    return t.blocks in ((n,), (n - 1, 1), (n - 2, 2))

def tensor_items(opts):
    max_n = _max_n(opts, 16)
    return [(f"p={p}", {"p": p, "max_n": max_n}) for p in _primes(opts, (2, 3, 5))]

def tensor_item(p, max_n):
    near = []
    types = {}
    for a in range(2, max_n + 1):
        for b in range(a, max_n // a + 1):
            t = jordan_tensor(JordanType((a,)), JordanType((b,)), p)
            if _near_regular(t):
                near.append([a, b])
                types[f"{a}x{b}"] = str(t)
    expected = []
    if max_n >= 4:
        expected.append([2, 2])
    if max_n >= 6 and p != 3:
        expected.append([2, 3])
    claims = [claim_equal("near-regular-pairs", expected, near)]
    if p == 2 and max_n >= 4:
        claims.append(claim_equal("type-2x2", "2+2", types.get("2x2")))
    return claims, {"near_regular_types": types}

# Regular representatives of the classical groups.

def _expected_classical(kind, n, p):
    if kind in ("SL", "Sp", "SO_odd", "GO_outer"):
        return JordanType((n,))
    if kind == "SO_even":
        return JordanType((n - 1, 1)) if p != 2 else JordanType((n - 2, 2))
    if kind == "SO_odd_char2":
        return JordanType((n - 1, 1))
    l = n // 2
    return JordanType((n,)) if l % 2 == 1 else JordanType((n - 2, 2))

EXPECTED_DICKSON = {"SO_even": 0, "GO_outer": 1}

def classical_items(opts):
    max_n = _max_n(opts, 8)
    max_l = check_at_least(opts["l"], 1, "l") if opts["l"] is not None else 5
    out = []
    for p in _primes(opts, (2, 3)):
        work = [("SL", n) for n in range(2, max_n + 1)]
        work += [("Sp", 2 * l) for l in range(1, max_l + 1)]
        if p != 2:
            work += [("SO_odd", 2 * l + 1) for l in range(1, max_l + 1)]
        work += [("SO_even", 2 * l) for l in range(3, max_l + 1)]
        if p == 2:
            work += [("GO_outer", 2 * l) for l in range(2, max_l + 1)]
            work += [("GLl2_outer", 2 * l) for l in range(3, max_l + 1)]
            work += [("SO_odd_char2", 2 * l + 1) for l in range(1, max_l + 1)]
        out += [(f"{kind}:n={n}:p={p}", {"kind": kind, "n": n, "p": p}) for kind, n in work]
    return out

def _classical_rep(kind, n, p):
    if kind == "SL":
        return regular_in_sl(n, p)
    if kind == "Sp":
        return regular_in_sp(n, p)
    if kind in ("SO_odd", "SO_even"):
        return regular_in_so(n, p)
    if kind == "GO_outer":
        return go_outer_regular(n, p)
    if kind == "GLl2_outer":
        return gl_stab_outer(n // 2, p)
    return regular_in_so_odd_char2(n)

def classical_item(kind, n, p):
    rep = _classical_rep(kind, n, p)
    expected = _expected_classical(kind, n, p)
    claims = [
        claim_equal("dim", n, rep.dim),
        claim_equal("jordan-type", expected, rep.jordan_type()),
        claim_equal("order", unipotent_order(expected, p), rep.order()),
    ]
    if rep.space is not None:
        claims.append(claim_true("isometry", is_isometry(rep.u, rep.space)))
    if kind in EXPECTED_DICKSON and p == 2:
        claims.append(claim_equal("dickson", EXPECTED_DICKSON[kind], rep.dickson()))
    data = {}
    if kind == "GLl2_outer":
        l = n // 2
        square = JordanType((l,)) if l % 2 == 1 else JordanType((l - 1, 1))
        claims.append(claim_equal("square-type", square, rep.extra["square_type"]))
        claims.append(claim_equal("dickson", l % 2, rep.dickson()))
        data["g"] = rep.extra["g"]
    return claims, data

# Representation rows: single block, order column, absolute irreducibility.

def _row_prime(name, args):
    if name == "sym":
        return args[1]
    if name == "natural":
        return args[2]
    return args[0] if args else 2

def table_items(opts):
    rows = table_rows()
    if opts["family"] is not None:
        rows = [(name, args) for name, args in rows if name == "natural" and args[0] == opts["family"]]
    if opts["l"] is not None:
        rows = [(name, args) for name, args in rows if name == "natural" and args[1] == opts["l"]]
    if opts["p"] is not None:
        rows = [(name, args) for name, args in rows if _row_prime(name, args) == opts["p"]]
    return [(f"{name}:{','.join(str(a) for a in args)}", {"name": name, "args": list(args)})
            for name, args in rows]

def _irreducibility_claims(rep):
    cert = is_absolutely_irreducible(ModuleAction(tuple(rep.group_generators())))
    return [claim_true("irreducible", cert.irreducible),
            claim_equal("commutant-dim", 1, cert.commutant_dim)]

def table_item(name, args):
    rep = build_row(name, tuple(args))
    order = rep.order()
    claims = [
        claim_equal("jordan-type", rep.expected_type, jordan_type(rep.u)),
        claim_true(f"order{rep.order_bound}", rep.order_bound.holds(order)),
        claim_true("in-ambient", all(rep.ambient.contains(g) for g in rep.group_generators())),
    ]
    claims += _irreducibility_claims(rep)
    return claims, {"row": rep.row_tag, "dim": rep.dim, "order": order}

# Block-scalar torus normalizers in SL.

def wreath_items(opts):
    max_n = _max_n(opts, 16)
    for name in ("a", "d"):
        if opts[name] is not None:
            check_at_least(opts[name], 1, name)
    out = []
    for p in _primes(opts, (2, 3)):
        a = 1
        while p ** a <= max_n:
            if opts["a"] is None or opts["a"] == a:
                for d in range(1, max_n // p ** a + 1):
                    if opts["d"] is None or opts["d"] == d:
                        out.append((f"p={p}:a={a}:d={d}", {"p": p, "a": a, "d": d}))
            a += 1
    return out

def wreath_item(p, a, d):
    datum = sl_wreath(p, a, d)
    field = datum.u.field
    k = p ** a
    n = k * d
    case = classify_torus_case(datum)
    witness = datum_witness(datum)
    cycle = datum.u ** k
    claims = [
        claim_equal("jordan-type", JordanType((n,)), jordan_type(datum.u)),
        claim_equal("torus-rank", k - 1, datum.torus.rank),
        claim_true("in-ambient", datum.ambient.contains(datum.u)),
        claim_true("normalizes", normalizes_torus(datum.u, datum.torus) is not None),
        claim_equal("weight-dims", [d] * k, [s.dim for _, s in weight_spaces(datum.torus)]),
        claim_equal("case", "sl-equal-dim", case.tag),
        claim_equal("case-d", d, case.details["d"]),
        claim_equal("power-is-block-diagonal", True,
                    cycle == block_diag(*([jordan_block(field, d)] * k))),
        claim_equal("witness-present", d > 1, witness is not None),
    ]
    return claims, {"witness": _witness_kind(witness)}

# Wreath products of the outer GL_m.2 element inside GO.

def go_wreath_items(opts):
    if opts["m"] is not None or opts["f"] is not None:
        pairs = [(opts["m"] if opts["m"] is not None else 3, opts["f"] if opts["f"] is not None else 1)]
    else:
        pairs = [(3, 1), (5, 1), (3, 2)]
    return [(f"m={m}:f={f}", {"m": m, "f": f})
            for m, f in (check_construction("go-wreath", pair) for pair in pairs)]

def go_wreath_item(m, f):
    datum = build("go-wreath", (m, f))
    n = 2 ** (f + 1) * m
    power = datum.u ** (2 ** (f + 1))
    witness = datum_witness(datum)
    claims = [
        claim_equal("dim", n, datum.dim),
        claim_equal("jordan-type", JordanType((n,)), jordan_type(datum.u)),
        claim_true("in-ambient", datum.ambient.contains(datum.u)),
        claim_true("normalizes", normalizes_torus(datum.u, datum.torus) is not None),
        claim_equal("case", "paired-orthogonal", classify_torus_case(datum).tag),
        claim_true("power-nontrivial", not power.is_identity()),
        claim_true("power-centralizes", centralizes_torus(power, datum.torus)),
        claim_true("witness-present", witness is not None),
    ]
    return claims, {"witness": _witness_kind(witness)}

# Orthogonal torus normalizers in characteristic 2.

ORTHOGONAL_DATA = [
    ("so-pair-stab", (4,)),
    ("so-pair-stab", (6,)),
    ("so-orthsum", (5,)),
    ("sl4-wedge", ()),
    ("so-orthsum-wreath", (3, 1)),
]

def orthogonal_items(opts):
    data = ORTHOGONAL_DATA
    if opts["l"] is not None:
        l = opts["l"]
        data = [("so-pair-stab", (l,))] if l % 2 == 0 else [("so-orthsum", (l,))]
    elif opts["m"] is not None or opts["f"] is not None:
        m = opts["m"] if opts["m"] is not None else 3
        f = opts["f"] if opts["f"] is not None else 1
        data = [("so-orthsum-wreath", (m, f))]
    data = [(name, check_construction(name, args)) for name, args in data]
    return [(f"{name}:{','.join(str(a) for a in args)}" if args else name,
             {"name": name, "args": list(args)}) for name, args in data]

def _expected_orthogonal_type(name, args):
    if name in ("so-pair-stab", "so-orthsum"):
        l = args[0]
        return JordanType((2 * l - 2, 2))
    if name == "sl4-wedge":
        return JordanType((4, 2))
    m, f = args
    return JordanType((2 ** (f + 1) * m, 2))

def _centralizing_power(datum):
    perm = normalizes_torus(datum.u, datum.torus)
    k = int(np.lcm.reduce([len(o) for o in orbits(perm)]))
    return max(k, 2)

def orthogonal_item(name, args):
    datum = build(name, tuple(args))
    expected = _expected_orthogonal_type(name, args)
    witness = datum_witness(datum)
    claims = [
        claim_equal("jordan-type", expected, jordan_type(datum.u)),
        claim_true("in-ambient", datum.ambient.contains(datum.u)),
        claim_true("normalizes", normalizes_torus(datum.u, datum.torus) is not None),
        claim_equal("fixed-space-dim", len(expected), fixed_space(datum.u).dim),
    ]
    data = {"witness": _witness_kind(witness)}
    k = _centralizing_power(datum)
    power = datum.u ** k
    data["centralizing_power"] = k
    if name == "so-orthsum":
        # No nontrivial unipotent power centralizes this torus; the outcome of
        # the witness search is reported as data only.
        claims.append(claim_true("power-trivial", power.is_identity()))
        if witness is not None:
            data["witness_basis"] = witness.to_dict()["basis"]
    else:
        claims.append(claim_true("power-nontrivial", not power.is_identity()))
        claims.append(claim_true("power-centralizes", centralizes_torus(power, datum.torus)))
        claims.append(claim_true("witness-present", witness is not None))
    return claims, data

EXPECTED_CASE = {
    "so-pair-stab": "so-case-1",
    "so-orthsum": "so-case-2",
    "sl4-wedge": "so-case-3",
    "so-orthsum-wreath": "so-case-3",
}

def case_item(name, args):
    datum = build(name, tuple(args))
    case = classify_torus_case(datum)
    claims = [claim_equal("case", EXPECTED_CASE[name], case.tag)]
    dims = sorted(s.dim for _, s in weight_spaces(datum.torus))
    if name == "so-pair-stab":
        l = args[0]
        claims.append(claim_equal("square-types", [str(JordanType((l - 1, 1)))] * 2,
                                  case.details.get("square_types")))
    elif name == "so-orthsum":
        l = args[0]
        claims.append(claim_equal("zero-dim", 2, case.details.get("zero_dim")))
        claims.append(claim_equal("orbit-length", 2 * (l - 1), case.details.get("orbit_length")))
    elif name == "sl4-wedge":
        claims.append(claim_equal("weight-dims", [1, 1, 4], dims))
        claims.append(claim_equal("swapped", [[-2], [2]], sorted(case.details.get("swapped", []))))
    else:
        m, f = args
        claims.append(claim_equal("weight-dims", [1, 1] + [m] * 2 ** (f + 1), dims))
    return claims, {"details": case.details}

# Tensor-product constructions.

def tensor_row_items(opts):
    return [(f"{name}:{','.join(str(a) for a in args)}" if args else name,
             {"name": name, "args": list(args)}) for name, args in lemma_rows()]

def tensor_row_item(name, args):
    rep = build_row(name, tuple(args))
    order = rep.order()
    claims = [
        claim_equal("jordan-type", rep.expected_type, jordan_type(rep.u)),
        claim_true(f"order{rep.order_bound}", rep.order_bound.holds(order)),
    ]
    if name == "wreath":
        p = args[0]
        claims.append(claim_true("power-on-factors", rep.u ** p == rep.extra["power_on_factors"]))
    elif name == "swap9":
        square = rep.u @ rep.u
        claims.append(claim_true("square", square == rep.extra["square"]))
        claims.append(claim_equal("square-type", rep.extra["square_type"], jordan_type(square)))
    claims += _irreducibility_claims(rep)
    return claims, {"row": rep.row_tag, "order": order}

# Companion matrices of cyclotomic polynomials.

COMPANION_PAIRS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1)]

def companion_items(opts):
    pairs = COMPANION_PAIRS
    if opts["p"] is not None:
        pairs = [(p, a) for p, a in pairs if p == opts["p"]]
        if opts["a"] is not None:
            pairs = [(opts["p"], check_at_least(opts["a"], 1, "a"))]
    return [(f"p={p}:a={a}", {"p": p, "a": a}) for p, a in pairs]

def companion_item(p, a):
    c = cyclotomic_companion(p, a)
    q = p ** a
    claims = [
        claim_equal("size", p ** (a - 1) * (p - 1), c.shape[0]),
        claim_equal("min-torus-dim", c.shape[0], min_torus_dim_for_order(p, a)),
        claim_equal("order", q, integer_matrix_order(c, q + 1)),
    ]
    return claims, {"companion": c}

# No representation row lies in a proper parabolic, while the torus data
# do (with the exceptions noted per construction).

def containment_items(opts):
    out = [(f"rep:{name}:{','.join(str(a) for a in args)}",
            {"kind": "rep", "name": name, "args": list(args)})
           for name, args in table_rows() + lemma_rows()]
    out += [(f"torus:{name}:{','.join(str(a) for a in args)}",
             {"kind": "torus", "name": name, "args": list(args)})
            for name, args in catalogue()]
    return out

def _expected_torus_witness(name, args):
    if name == "sl-wreath":
        return args[2] > 1
    if name == "so-orthsum":
        return None
    return True

def containment_item(kind, name, args):
    if kind == "rep":
        rep = build_row(name, tuple(args))
        powers = [rep.u ** k for k in range(2, 2 * rep.dim + 1)]
        witness = parabolic_witness(rep.group_generators(), rep.ambient, None, powers)
        return [claim_equal("witness", None, _witness_kind(witness))], {"row": rep.row_tag}
    datum = build(name, tuple(args))
    witness = datum_witness(datum)
    expected = _expected_torus_witness(name, args)
    data = {"witness": _witness_kind(witness)}
    claims = []
    # Symplectic and odd-dimensional orthogonal torus normalizers of this kind
    # only occur in characteristic 2.
    ambient = datum.ambient.kind
    if ambient == "Sp" or (ambient in ("SO", "GO") and datum.dim % 2 == 1):
        claims.append(claim_equal("characteristic", 2, datum.p))
    if expected is not None:
        claims.append(claim_equal("witness-present", expected, witness is not None))
    return claims, data

SUITES = {
    "lemma-2.3": (power_map_items, power_map_item),
    "lemma-2.4": (tensor_items, tensor_item),
    "lemma-2.7": (tensor_row_items, tensor_row_item),
    "lemma-2.8": (classical_items, classical_item),
    "table-1": (table_items, table_item),
    "prop-6.1": (wreath_items, wreath_item),
    "example-6.4": (go_wreath_items, go_wreath_item),
    "example-6.6": (orthogonal_items, orthogonal_item),
    "prop-6.7": (orthogonal_items, case_item),
    "prop-7.1": (companion_items, companion_item),
    "theorem-A": (containment_items, containment_item),
}

def _current_config():
    return {
        "seed": state.get_default_seed(),
        "line_cap": state.get_line_cap(),
        "search_cap": state.get_search_cap(),
    }

def _apply_config(config):
    state.set_default_seed(config["seed"])
    state.set_line_cap(config["line_cap"])
    state.set_search_cap(config["search_cap"])

# Runs one suite item. Worker processes receive the configuration explicitly,
# since the state module is not shared between them.
def run_item(work):
    suite, item_id, params, config = work
    saved = _current_config()
    _apply_config(config)
    fn = SUITES[suite][1]
    logger.debug(f"Running {suite} item {item_id}")
    try:
        claims, data = fn(**params)
    except RuntimeError as e:
        logger.debug(f"Item {item_id} of {suite} failed: {e}")
        return ReportItem(item_id, params, error=str(e))
    finally:
        _apply_config(saved)
    return ReportItem(item_id, params, claims, data)

def suite_items(suite, opts=None):
    check_choice(suite, SUITES, "suite")
    opts = check_kwargs(opts or {}, SUITE_OPTIONS, f"suite {suite}")
    return SUITES[suite][0](opts)

def run_suite(suite, opts=None, jobs=None, progress=False):
    check_choice(suite, SUITES, "suite")
    opts = check_kwargs(opts or {}, SUITE_OPTIONS, f"suite {suite}")
    config = _current_config()
    if opts["seed"] is not None:
        config["seed"] = opts["seed"]
    if opts["cap"] is not None:
        config["line_cap"] = opts["cap"]
    work = [(suite, item_id, params, config) for item_id, params in SUITES[suite][0](opts)]
    bar = functools.partial(tqdm, desc=suite, leave=False) if progress else None
    start = time.perf_counter()
    items = backend.run_items(run_item, work, jobs, bar)
    elapsed = (time.perf_counter() - start) * 1000.0 if state.get_timing() else None
    return Report(suite, items, config["seed"], elapsed)
