import itertools
import logging
import numpy as np
import sympy
from dataclasses import dataclass, field

from . import state
from .classical import _char2_plane, gl_stab_outer
from .exactla import (
    FieldPrime, Matrix, block_diag, determinant, inverse, jordan_block, kernel_basis,
    line_count, lines, permutation_matrix, solve_linear
)
from .forms import (
    QuadSpace, SympSpace, SubspaceBasis, dickson, hyperbolic_space, is_isometry,
    is_totally_singular, orthogonal_sum, singular_vectors
)
from .jordan import JordanType, is_unipotent, jordan_type, wedge2_matrix, _pairs
from .modstruct import ModuleAction, _spin_rows
from .validate import check_at_least, check_even, check_int, check_odd, check_prime

logger = logging.getLogger(__name__)

AMBIENT_KINDS = ("SL", "Sp", "SO", "GO")

WITNESS_SUBSPACE = "invariant-subspace"
WITNESS_SINGULAR = "invariant-totally-singular-subspace"
WITNESS_UNIPOTENT = "centralized-unipotent"

class PropositionViolated(RuntimeError):
    pass

# A diagonalizable subgroup given symbolically: basis vector i (row i of the
# basis change, or e_i by default) spans part of the weight space of the
# integer weight weights[i].
@dataclass(frozen=True, eq=False)
class DiagTorus:
    rank: int
    weights: tuple
    field: FieldPrime
    basis_change: Matrix = None

    def __post_init__(self):
        weights = tuple(tuple(int(x) for x in w) for w in self.weights)
        if any(len(w) != self.rank for w in weights):
            raise RuntimeError(f"All weights of a rank {self.rank} torus must have length {self.rank}")
        object.__setattr__(self, "weights", weights)
        b = self.basis_change
        if b is not None:
            if b.shape != (len(weights), len(weights)):
                raise RuntimeError(f"Basis change of shape {b.shape} does not match "
                                   f"{len(weights)} weights")
            inverse(b)

    @property
    def dim(self):
        return len(self.weights)

    def basis(self):
        if self.basis_change is None:
            return Matrix.identity(self.field, self.dim)
        return self.basis_change

    def distinct_weights(self):
        return list(dict.fromkeys(self.weights))

    def in_sl(self):
        return all(sum(col) == 0 for col in zip(*self.weights))

@dataclass(frozen=True, eq=False)
class Ambient:
    kind: str
    space: object = None

    def __post_init__(self):
        if self.kind not in AMBIENT_KINDS:
            raise RuntimeError(f"Unknown ambient group '{self.kind}'")
        if self.kind == "Sp" and not isinstance(self.space, SympSpace):
            raise RuntimeError("A symplectic ambient requires a symplectic space")
        if self.kind in ("SO", "GO") and not isinstance(self.space, QuadSpace):
            raise RuntimeError(f"An ambient {self.kind} requires a quadratic space")

    def contains(self, g):
        if self.kind == "SL":
            return determinant(g) == 1
        if not is_isometry(g, self.space):
            return False
        if self.kind == "SO":
            if g.p == 2:
                return g.rows % 2 == 1 or dickson(g, self.space) == 0
            return determinant(g) == 1
        return True

    def singular(self):
        return self.kind != "SL"

@dataclass(frozen=True, eq=False)
class TorusNormalizerDatum:
    torus: DiagTorus
    u: Matrix
    ambient: Ambient
    construction: str
    params: dict
    extra: dict = field(default_factory=dict)

    @property
    def p(self):
        return self.u.p

    @property
    def dim(self):
        return self.u.rows

@dataclass(frozen=True, eq=False)
class ContainmentWitness:
    kind: str
    data: object

    def to_dict(self):
        return {"kind": self.kind, "basis": self.data.tolist()}

@dataclass(frozen=True)
class TorusCase:
    tag: str
    details: dict

def weight_spaces(t):
    basis = t.basis().data
    spaces = []
    for w in t.distinct_weights():
        rows = basis[[i for i, x in enumerate(t.weights) if x == w]]
        spaces.append((w, SubspaceBasis.span(t.field, rows, t.dim)))
    return spaces

# Projection onto each weight space along the others, as a matrix acting on
# column vectors: P = B^T D B^-T for the basis change B.
def weight_projectors(t):
    b = t.basis()
    b_inv_t = inverse(b).T
    out = []
    for w in t.distinct_weights():
        d = np.diag([1 if x == w else 0 for x in t.weights])
        out.append(b.T @ Matrix(t.field, d) @ b_inv_t)
    return out

def _permutation_of_spaces(g, spaces):
    perm = []
    for _, s in spaces:
        image = s.image(g)
        matches = [j for j, (_, t) in enumerate(spaces) if t == image]
        if not matches:
            return None
        perm.append(matches[0])
    return tuple(perm)

# The weight map w_i -> w_perm(i) must extend to a linear map of the rational
# span of the weights, with determinant +-1. The map is written in coordinates
# of a basis of independent weights.
def _lattice_automorphism(weights, perm):
    if not weights or not any(any(w) for w in weights):
        return all(weights[perm[i]] == weights[i] for i in range(len(weights)))
    w = sympy.Matrix(weights)
    _, pivots = w.T.rref()
    basis = w.extract(list(pivots), list(range(w.cols)))
    coords, _ = basis.T.gauss_jordan_solve(w.T)
    coords = coords.T
    a = sympy.Matrix([list(coords.row(perm[k])) for k in pivots])
    if any(coords.row(i) * a != coords.row(perm[i]) for i in range(len(weights))):
        return False
    return abs(a.det()) == 1

def normalizes_torus(u, t):
    spaces = weight_spaces(t)
    perm = _permutation_of_spaces(u, spaces)
    if perm is None or sorted(perm) != list(range(len(spaces))):
        return None
    if not _lattice_automorphism([w for w, _ in spaces], perm):
        return None
    return perm

def centralizes_torus(g, t):
    return all(s.image(g) == s for _, s in weight_spaces(t))

def orbits(perm):
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            orbit.append(j)
            seen.add(j)
            j = perm[j]
        out.append(orbit)
    return out

# Matrix of g restricted to an invariant subspace, in the basis given by the
# rows of s.
def restrict(g, s):
    images = s.matrix @ g.T
    x = solve_linear(s.matrix.T, images.T)
    if x is None:
        raise RuntimeError("Subspace is not invariant under the given matrix")
    return x

def _unit(rank, i, sign=1):
    w = [0] * rank
    w[i] = sign
    return tuple(w)

def _check_sl_wreath(p, a, d):
    check_prime(p)
    check_at_least(a, 1, "a")
    check_at_least(d, 1, "d")

def sl_wreath(p, a, d):
    _check_sl_wreath(p, a, d)
    F = FieldPrime(p)
    k = p ** a
    n = k * d
    u = np.zeros((n, n), dtype=np.int64)
    for i in range(k - 1):
        u[(i + 1) * d:(i + 2) * d, i * d:(i + 1) * d] = np.eye(d, dtype=np.int64)
    u[:d, (k - 1) * d:] = jordan_block(F, d).data
    weights = []
    for i in range(k):
        w = _unit(k - 1, i) if i < k - 1 else tuple([-1] * (k - 1))
        weights += [w] * d
    torus = DiagTorus(k - 1, tuple(weights), F)
    return TorusNormalizerDatum(torus, Matrix(F, u), Ambient("SL"), "sl-wreath",
                                {"p": p, "a": a, "d": d})

# Cyclically shifts k copies of a 2m-dimensional hyperbolic space, applying
# the seed element when wrapping from the last copy to the first.
def _block_cycle(seed, k):
    size = seed.rows
    n = size * k
    u = np.zeros((n, n), dtype=np.int64)
    for c in range(k - 1):
        u[(c + 1) * size:(c + 2) * size, c * size:(c + 1) * size] = np.eye(size, dtype=np.int64)
    u[:size, (k - 1) * size:] = seed.data
    return Matrix(seed.field, u)

def _check_go_wreath(m, f, seed=None):
    check_at_least(m, 3, "m")
    check_odd(m, "m")
    check_at_least(f, 1, "f")

def go_wreath(m, f, seed=None):
    _check_go_wreath(m, f)
    base = gl_stab_outer(m, seed=seed)
    k = 2 ** f
    u = _block_cycle(base.u, k)
    space = orthogonal_sum(*([base.space] * k))
    weights = []
    for c in range(k):
        weights += [_unit(k, c)] * m + [_unit(k, c, -1)] * m
    torus = DiagTorus(k, tuple(weights), u.field)
    return TorusNormalizerDatum(torus, u, Ambient("GO", space), "go-wreath",
                                {"m": m, "f": f}, {"seed_element": base.u})

def _check_so_pair_stab(l, seed=None):
    check_at_least(l, 4, "l")
    check_even(l, "l")

def so_pair_stab(l, seed=None):
    _check_so_pair_stab(l)
    rep = gl_stab_outer(l, seed=seed)
    torus = DiagTorus(1, tuple([(1,)] * l + [(-1,)] * l), rep.u.field)
    return TorusNormalizerDatum(torus, rep.u, Ambient("SO", rep.space), "so-pair-stab", {"l": l})

def _power_of_two_exponent(n):
    if n < 1 or n & (n - 1):
        return None
    return n.bit_length() - 1

def _check_so_orthsum(l):
    check_int(l, "l")
    s = _power_of_two_exponent(l - 1)
    if s is None or s < 2:
        raise RuntimeError(f"Parameter 'l' must be 2^s + 1 with s >= 2, found {l}")

# The single-block element of GO_{2L}, L = l - 1, is the coordinate cycle
# e_1 -> ... -> e_L -> f_1 -> ... -> f_L -> e_1 of the hyperbolic 2L-space.
# It is an isometry, and since 2L is a power of 2 it is a single Jordan block
# of size 2L over GF(2). It is orthogonally summed with J_2 on the
# J_2-invariant plane.
def so_orthsum(l):
    _check_so_orthsum(l)
    F = FieldPrime(2)
    L = l - 1
    cycle = permutation_matrix(F, [(i + 1) % (2 * L) for i in range(2 * L)])
    j2, plane = _char2_plane()
    u = block_diag(cycle, j2)
    space = orthogonal_sum(hyperbolic_space(F, L), plane)
    weights = [_unit(L, i) for i in range(L)] + [_unit(L, i, -1) for i in range(L)]
    weights += [tuple([0] * L)] * 2
    torus = DiagTorus(L, tuple(weights), F)
    return TorusNormalizerDatum(torus, u, Ambient("SO", space), "so-orthsum", {"l": l})

# The go-wreath element orthogonally summed with the swap of a hyperbolic
# pair e_0, f_0, which carries an extra rank-one torus with weights +-1.
def so_orthsum_wreath(m, f, seed=None):
    base = go_wreath(m, f, seed=seed)
    F = base.u.field
    swap = permutation_matrix(F, [1, 0])
    u = block_diag(base.u, swap)
    space = orthogonal_sum(base.ambient.space, hyperbolic_space(F, 1))
    r = base.torus.rank
    weights = [w + (0,) for w in base.torus.weights]
    weights += [_unit(r + 1, r), _unit(r + 1, r, -1)]
    torus = DiagTorus(r + 1, tuple(weights), F)
    return TorusNormalizerDatum(torus, u, Ambient("SO", space), "so-orthsum-wreath",
                                {"m": m, "f": f})

# Pushes sl_wreath(2, 1, 2) through the exterior square. On the basis
# e_i ^ e_j (i < j) the invariant quadratic form is the Pfaffian
# a_01 a_23 + a_02 a_13 + a_03 a_12.
def sl4_wedge():
    base = sl_wreath(2, 1, 2)
    F = base.u.field
    pairs = _pairs(4, True)
    u = wedge2_matrix(base.u)
    q = np.zeros((6, 6), dtype=np.int64)
    index = {pair: k for k, pair in enumerate(pairs)}
    for (a, b), (c, d) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]:
        q[index[(a, b)], index[(c, d)]] = 1
    space = QuadSpace.from_quad(Matrix(F, q))
    w = base.torus.weights
    weights = [tuple(x + y for x, y in zip(w[i], w[j])) for i, j in pairs]
    torus = DiagTorus(base.torus.rank, tuple(weights), F)
    return TorusNormalizerDatum(torus, u, Ambient("SO", space), "sl4-wedge", {})

# The same torus normalizer seen inside the symplectic group of the polar
# form, which contains GO in characteristic 2.
def as_symplectic(d):
    if d.p != 2 or d.ambient.kind not in ("SO", "GO") or d.dim % 2 != 0:
        raise RuntimeError("Only even-dimensional orthogonal data in characteristic 2 "
                           "embed into the symplectic group of the polar form")
    space = SympSpace(d.ambient.space.gram)
    return TorusNormalizerDatum(d.torus, d.u, Ambient("Sp", space), d.construction + "-sp",
                                dict(d.params), dict(d.extra))

def _is_zero(w):
    return not any(w)

def _opposite(v, w):
    return all(x == -y for x, y in zip(v, w))

def _classify_sl(spaces):
    dims = {s.dim for _, s in spaces}
    if len(dims) != 1:
        raise PropositionViolated(f"Weight spaces have different dimensions {sorted(dims)}")
    return TorusCase("sl-equal-dim", {"d": dims.pop(), "weight_spaces": len(spaces)})

def _classify_paired(d, spaces):
    space = d.ambient.space
    gram = space.gram
    for w, s in spaces:
        if not _is_zero(w) and not is_totally_singular(s, space):
            raise PropositionViolated(f"Weight space of weight {list(w)} is not totally singular")
    for (v, s), (w, t) in itertools.combinations(spaces, 2):
        coupled = not _is_zero(v) and _opposite(v, w)
        if not coupled and (s.matrix @ gram @ t.matrix.T).data.any():
            raise PropositionViolated(f"Weight spaces {list(v)} and {list(w)} are not orthogonal")
    weights = [w for w, _ in spaces]
    pairs = 0
    for v, s in spaces:
        if _is_zero(v):
            continue
        partner = [t for w, t in spaces if _opposite(v, w)]
        if not partner or partner[0].dim != s.dim:
            raise PropositionViolated(f"Weight {list(v)} has no opposed weight space of equal dimension")
        pairs += 1
    zero = [s.dim for w, s in spaces if _is_zero(w)]
    total = sum(s.dim for _, s in spaces)
    if total != d.dim:
        raise PropositionViolated("Weight spaces do not reassemble the whole space")
    return TorusCase("paired-orthogonal", {"pairs": pairs // 2, "zero_dim": zero[0] if zero else 0,
                                           "weight_spaces": len(weights)})

def _classify_so(d, spaces, perm):
    n = d.dim
    if n < 6:
        raise PropositionViolated(f"No orthogonal torus-normalizer case applies in dimension {n}")
    orbit_list = orbits(perm)
    weights = [w for w, _ in spaces]
    dims = [s.dim for _, s in spaces]
    l = n // 2
    # Case (1): two nonzero opposed spaces swapped by u, l even, u^2 of type
    # l-1, 1 on each.
    if (n >= 8 and len(spaces) == 2 and not any(_is_zero(w) for w in weights)
            and _opposite(*weights) and perm == (1, 0) and l % 2 == 0):
        square = d.u @ d.u
        types = [jordan_type(restrict(square, s)) for _, s in spaces]
        if all(t == JordanType((l - 1, 1)) for t in types):
            return TorusCase("so-case-1", {"square_types": [str(t) for t in types]})
    # Case (3): two opposed 1-dimensional spaces swapped by u, with the other
    # weight spaces forming a single orbit.
    for orbit in orbit_list:
        if len(orbit) != 2:
            continue
        i, j = orbit
        if dims[i] == dims[j] == 1 and not _is_zero(weights[i]) and _opposite(weights[i], weights[j]):
            rest = [o for o in orbit_list if o is not orbit]
            if len(rest) == 1:
                return TorusCase("so-case-3", {"swapped": [list(weights[i]), list(weights[j])],
                                               "weight_dims": sorted(dims)})
    if n == 6:
        raise PropositionViolated("Dimension 6 admits only the opposed-lines case")
    # Case (2): a 2-dimensional zero weight space, with u transitive on the
    # nonzero weight spaces.
    zero = [i for i, w in enumerate(weights) if _is_zero(w)]
    if len(zero) == 1 and dims[zero[0]] == 2 and perm[zero[0]] == zero[0]:
        nonzero = [o for o in orbit_list if zero[0] not in o]
        if len(nonzero) == 1:
            return TorusCase("so-case-2", {"zero_dim": 2, "orbit_length": len(nonzero[0])})
    raise PropositionViolated(f"No orthogonal torus-normalizer case matches weight space "
                              f"dimensions {dims} and orbits {orbit_list}")

def classify_torus_case(d):
    perm = normalizes_torus(d.u, d.torus)
    if perm is None:
        raise RuntimeError("Element does not normalize the torus")
    spaces = weight_spaces(d.torus)
    kind = d.ambient.kind
    if kind == "SL":
        return _classify_sl(spaces)
    if kind in ("Sp", "GO"):
        return _classify_paired(d, spaces)
    return _classify_so(d, spaces, perm)

def centralized_unipotent(gens, candidates, torus=None):
    for g in candidates:
        if g.is_identity() or not is_unipotent(g):
            continue
        if not all(g @ x == x @ g for x in gens):
            continue
        if torus is not None and not centralizes_torus(g, torus):
            continue
        return ContainmentWitness(WITNESS_UNIPOTENT, g)
    return None

def _candidate_lines(field, n, ambient, torus):
    if torus is None:
        vectors = lines(field, n)
        return vectors if not ambient.singular() else (v for v in vectors if _singular(ambient, v))
    def gen():
        for _, s in weight_spaces(torus):
            basis = s.matrix.data
            for c in lines(field, s.dim):
                v = (c @ basis) % field.p
                if not ambient.singular() or _singular(ambient, v):
                    yield v
    return gen()

def _singular(ambient, v):
    return bool(singular_vectors(ambient.space, [v]))

def _line_budget(field, n, torus, cap):
    if torus is None:
        count = line_count(field.p, n)
    else:
        count = sum(line_count(field.p, s.dim) for _, s in weight_spaces(torus))
    if count > cap:
        raise RuntimeError(f"Witness search over {count} lines exceeds the cap of {cap}")
    return count

# Exhaustive line search for a subspace certifying parabolic containment. With
# a torus, only lines inside weight spaces are spun (every torus-invariant
# subspace contains one) and the weight projections join the generators.
def parabolic_witness(gens, ambient, torus=None, candidates=(), cap=None):
    gens = list(gens)
    field = gens[0].field
    n = gens[0].rows
    if cap is None:
        cap = state.get_line_cap()
    count = _line_budget(field, n, torus, cap)
    projectors = weight_projectors(torus) if torus is not None else ()
    action = ModuleAction(tuple(gens), tuple(projectors))
    maps = action.maps()
    logger.debug(f"Searching {count} lines for a {ambient.kind} containment witness")
    for v in _candidate_lines(field, n, ambient, torus):
        basis = _spin_rows(v, maps, field.p, n)
        if len(basis) == n:
            continue
        s = SubspaceBasis(Matrix(field, basis))
        if not ambient.singular():
            return ContainmentWitness(WITNESS_SUBSPACE, s)
        if is_totally_singular(s, ambient.space):
            return ContainmentWitness(WITNESS_SINGULAR, s)
    return centralized_unipotent(gens, candidates, torus)

def datum_generators(d):
    return [d.u]

def datum_witness(d, cap=None):
    powers = [d.u ** k for k in range(2, 2 * d.dim + 1)]
    return parabolic_witness(datum_generators(d), d.ambient, d.torus, powers, cap)

def datum_report(d, witness=True):
    try:
        case = classify_torus_case(d).tag
    except PropositionViolated as e:
        case = f"violated: {e}"
    w = datum_witness(d) if witness else None
    return {
        "construction": d.construction,
        "params": dict(d.params),
        "p": d.p,
        "dim": d.dim,
        "torus_rank": d.torus.rank,
        "weights": [list(w) for w in d.torus.weights],
        "u": d.u.tolist(),
        "jordan_type": str(jordan_type(d.u)),
        "case_tag": case,
        "witness": w.to_dict() if w is not None else None,
    }

def go_wreath_sp(m, f, seed=None):
    return as_symplectic(go_wreath(m, f, seed=seed))

CONSTRUCTIONS = {
    "sl-wreath": sl_wreath,
    "go-wreath": go_wreath,
    "go-wreath-sp": go_wreath_sp,
    "so-pair-stab": so_pair_stab,
    "so-orthsum": so_orthsum,
    "so-orthsum-wreath": so_orthsum_wreath,
    "sl4-wedge": sl4_wedge,
}

PARAM_CHECKS = {
    "sl-wreath": _check_sl_wreath,
    "go-wreath": _check_go_wreath,
    "go-wreath-sp": _check_go_wreath,
    "so-pair-stab": _check_so_pair_stab,
    "so-orthsum": _check_so_orthsum,
    "so-orthsum-wreath": _check_go_wreath,
    "sl4-wedge": lambda: None,
}

# Validates the parameters of a construction without building it.
def check_construction(name, params):
    if name not in CONSTRUCTIONS:
        raise RuntimeError(f"Unknown torus normalizer construction '{name}'")
    PARAM_CHECKS[name](*params)
    return tuple(params)

def build(name, params):
    return CONSTRUCTIONS[name](*check_construction(name, params))

# The torus data exercised by the verification suites.
def catalogue():
    return [
        ("sl-wreath", (2, 1, 2)),
        ("sl-wreath", (2, 2, 1)),
        ("sl-wreath", (3, 1, 2)),
        ("go-wreath", (3, 1)),
        ("go-wreath-sp", (3, 1)),
        ("so-pair-stab", (4,)),
        ("so-pair-stab", (6,)),
        ("so-orthsum", (5,)),
        ("so-orthsum-wreath", (3, 1)),
        ("sl4-wedge", ()),
    ]

def cyclotomic_companion(p, a):
    check_prime(p)
    check_at_least(a, 1, "a")
    x = sympy.symbols("x")
    coeffs = [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(p ** a, x), x).all_coeffs()]
    n = len(coeffs) - 1
    c = np.zeros((n, n), dtype=object)
    for i in range(n):
        if i + 1 < n:
            c[i + 1, i] = 1
        c[i, n - 1] = -coeffs[n - i]
    return c

def integer_matrix_order(m, cap):
    m = np.array(m, dtype=object)
    n = m.shape[0]
    eye = np.eye(n, dtype=np.int64).astype(object)
    power = m
    k = 1
    while not np.array_equal(power, eye):
        k += 1
        if k > cap:
            return None
        power = power.dot(m)
    return k

def min_torus_dim_for_order(p, a):
    check_prime(p)
    check_at_least(a, 1, "a")
    return p ** (a - 1) * (p - 1)

def _subspaces(field, l):
    p = field.p
    for k in range(1, l):
        for pivots in itertools.combinations(range(l), k):
            free = [(i, c) for i, piv in enumerate(pivots) for c in range(piv + 1, l)
                    if c not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                m = np.zeros((k, l), dtype=np.int64)
                for i, piv in enumerate(pivots):
                    m[i, piv] = 1
                for (i, c), x in zip(free, values):
                    m[i, c] = x
                yield m

# Bounded search over the subspaces 0 < U < W of the outer element's first
# hyperbolic half, reporting each U with U + Ann(U) invariant under u.
def outer_parabolic_search(l, p=2, seed=None):
    check_at_least(l, 3, "l")
    if l > 6:
        raise RuntimeError(f"Outer parabolic search is bounded to l <= 6, found {l}")
    rep = gl_stab_outer(l, p, seed=seed)
    F = rep.u.field
    found = []
    for m in _subspaces(F, l):
        ann = kernel_basis(Matrix(F, m)).data
        rows = np.vstack([np.hstack([m, np.zeros_like(m)]),
                          np.hstack([np.zeros((ann.shape[0], l), dtype=np.int64), ann])])
        s = SubspaceBasis.span(F, rows, 2 * l)
        if s.image(rep.u) == s:
            found.append(s)
    return found
