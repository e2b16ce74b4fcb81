import itertools
import logging
import numpy as np
from dataclasses import dataclass, field
from math import comb

from . import g2data
from .classical import go_outer_regular, regular_in_so, regular_in_sp, regular_in_sl
from .exactla import FieldPrime, Matrix, inverse, jordan_block, kronecker, matrix_order, rank
from .forms import (
    QuadSpace, SympSpace, first_nondegenerate, invariant_bilinear_forms, is_isometry,
    orthogonal_transvection, symplectic_transvection
)
from .jordan import JordanType, jordan_type, unipotent_order
from .torusnorm import Ambient
from .validate import check_at_least, check_char, check_choice, check_prime

logger = logging.getLogger(__name__)

FAMILIES = ("A", "B", "C", "D.2")

@dataclass(frozen=True)
class OrderBound:
    relation: str
    value: int

    def holds(self, order):
        if order is None:
            return False
        if self.relation == "eq":
            return order == self.value
        if self.relation == "lt":
            return order < self.value
        return order <= self.value

    def __str__(self):
        return {"eq": "=", "lt": "<", "le": "<="}[self.relation] + str(self.value)

@dataclass(frozen=True, eq=False)
class RepDatum:
    row_tag: str
    p: int
    generators: tuple
    u: Matrix
    order_bound: OrderBound
    expected_type: JordanType
    ambient: Ambient
    extra: dict = field(default_factory=dict)

    @property
    def dim(self):
        return self.u.rows

    def order(self):
        return matrix_order(self.u, 4 * self.dim * self.p)

    def group_generators(self):
        return list(self.generators) + [self.u]

def _unipotent_pair(F):
    upper = Matrix(F, [[1, 1], [0, 1]])
    return upper, upper.T

def sym_power_rep(m, p):
    check_prime(p)
    check_at_least(m, 1, "m")
    if m >= p:
        raise RuntimeError(f"Symmetric power m = {m} must be below the characteristic p = {p}")
    F = FieldPrime(p)
    n = m + 1
    upper = np.zeros((n, n), dtype=np.int64)
    lower = np.zeros((n, n), dtype=np.int64)
    # Basis X^(m-i) Y^i; upper substitutes Y -> X + Y, lower X -> X + Y.
    for i in range(n):
        for j in range(i + 1):
            upper[j, i] = comb(i, j)
        for k in range(m - i + 1):
            lower[i + k, i] = comb(m - i, k)
    u = Matrix(F, upper)
    return RepDatum(f"A1:sym:{m}:{p}", p, (u, Matrix(F, lower)), u, OrderBound("eq", p),
                    JordanType((n,)), Ambient("SL"))

# The first vector e_n + c_1 e_1 + ... (in lexicographic order of the
# coefficients) accepted by the predicate.
def _flag_moving_vector(F, n, accept):
    for coeffs in itertools.product(range(F.p), repeat=n - 1):
        v = np.array(list(coeffs) + [1], dtype=np.int64)
        if accept(v):
            return v
    raise RuntimeError(f"No admissible vector outside the hyperplane in dimension {n}")

# Conjugating u by an element moving every term of the flag of u-invariant
# subspaces gives a second generator; together they fix no proper subspace.
def _opposite_generator(rep):
    F = rep.u.field
    n = rep.dim
    space = rep.space
    if space is None:
        h = Matrix.identity(F, n) + Matrix(F, np.eye(n, k=-(n - 1), dtype=np.int64))
    elif isinstance(space, SympSpace):
        h = symplectic_transvection(space, np.eye(n, dtype=np.int64)[n - 1])
    else:
        a = _flag_moving_vector(F, n, lambda v: space.value(v) != 0)
        h = orthogonal_transvection(space, a)
    return h @ rep.u @ inverse(h)

def natural_rep(family, l, p):
    check_choice(family, FAMILIES, "family")
    check_prime(p)
    check_at_least(l, 1, "l")
    if family == "A":
        rep = regular_in_sl(l + 1, p)
        tag, bound, ambient = "Al", OrderBound("lt", p * (l + 1)), Ambient("SL")
    elif family == "B":
        if p == 2:
            raise RuntimeError("The natural B_l row requires p > 2")
        check_at_least(l, 2, "l")
        rep = regular_in_so(2 * l + 1, p)
        tag, bound, ambient = "Bl", OrderBound("lt", p * (2 * l + 1)), Ambient("SO", rep.space)
    elif family == "C":
        rep = regular_in_sp(2 * l, p)
        tag, bound, ambient = "Cl", OrderBound("lt", 2 * p * l), Ambient("Sp", rep.space)
    else:
        check_char(p, 2, "The natural D_l.2 row")
        check_at_least(l, 3, "l")
        rep = go_outer_regular(2 * l)
        tag, bound, ambient = "Dl.2", OrderBound("lt", 4 * l), Ambient("GO", rep.space)
    gens = (rep.u, _opposite_generator(rep))
    return RepDatum(f"{tag}:nat:{l}:{p}", p, gens, rep.u, bound, rep.expected_type, ambient,
                    {"space": rep.space})

def _g2_space(gens, p):
    F = gens[0].field
    kind = "alternating" if p == 2 else "symmetric"
    gram = first_nondegenerate(invariant_bilinear_forms(gens, kind), F)
    if gram is None:
        raise RuntimeError(f"G2 generators over GF({p}) preserve no nondegenerate {kind} form")
    return SympSpace(gram) if p == 2 else QuadSpace.from_gram(gram)

def g2_rep(p):
    check_prime(p)
    gens = tuple(g2data.generators(p))
    u = g2data.regular_element(p)
    space = _g2_space(gens, p)
    if not all(is_isometry(g, space) for g in gens):
        raise RuntimeError("G2 generators do not preserve the invariant form")
    if p == 2:
        return RepDatum("G2:6:2", p, gens, u, OrderBound("eq", 8), JordanType((6,)),
                        Ambient("Sp", space), {"space": space})
    return RepDatum(f"G2:7:{p}", p, gens, u, OrderBound("le", p * p), JordanType((7,)),
                    Ambient("SO", space), {"space": space})

# Trace-zero 3x3 matrices on the basis E_ij (i != j) followed by E_11 - E_22
# and E_22 - E_33, with coordinates a = X_11 and b = -X_33 on the last two.
_OFF_DIAGONAL = [(i, j) for i in range(3) for j in range(3) if i != j]

def _sl3_basis():
    out = []
    for i, j in _OFF_DIAGONAL:
        m = np.zeros((3, 3), dtype=np.int64)
        m[i, j] = 1
        out.append(m)
    out.append(np.diag([1, -1, 0]))
    out.append(np.diag([0, 1, -1]))
    return out

def _sl3_coords(x):
    return [x[i, j] for i, j in _OFF_DIAGONAL] + [x[0, 0], -x[2, 2]]

def _action_matrix(F, fn):
    cols = [_sl3_coords(fn(b)) for b in _sl3_basis()]
    return Matrix(F, np.array(cols, dtype=np.int64).T)

def adjoint(g):
    g_inv = inverse(g).data
    return _action_matrix(g.field, lambda x: g.data @ x @ g_inv)

def outer_adjoint(g):
    g_inv = inverse(g).data
    return _action_matrix(g.field, lambda x: (g.data @ x @ g_inv).T)

def _gl3_candidates(F):
    unipotent, rest = [], []
    for bits in itertools.product(range(F.p), repeat=9):
        g = Matrix(F, np.array(bits, dtype=np.int64).reshape(3, 3))
        if rank(g) < 3:
            continue
        nil = g - Matrix.identity(F, 3)
        (unipotent if (nil ** 3).is_zero() else rest).append(g)
    return unipotent + rest

def _elementary(F, i, j):
    m = np.eye(3, dtype=np.int64)
    m[i, j] = 1
    return Matrix(F, m)

def a2_adjoint_outer(p=2):
    check_char(p, 2, "The A_2.2 adjoint row")
    F = FieldPrime(2)
    target = JordanType((8,))
    for g in _gl3_candidates(F):
        u = outer_adjoint(g)
        try:
            if jordan_type(u) == target:
                break
        except RuntimeError:
            continue
    else:
        raise RuntimeError("No g in SL_3(2) gives an outer unipotent element with a single block")
    logger.debug(f"Outer adjoint element found for g = {g.tolist()}")
    gens = tuple(adjoint(_elementary(F, i, j)) for i, j in [(0, 1), (1, 2), (1, 0), (2, 1)])
    return RepDatum("A2.2:adj:2", 2, gens, u, OrderBound("eq", 8), target, Ambient("SL"),
                    {"g": g, "inner_square": adjoint(inverse(g).T @ g)})

def _factor_embedding(x, position, count):
    F = x.field
    eye = Matrix.identity(F, x.rows)
    out = None
    for k in range(count):
        factor = x if k == position else eye
        out = factor if out is None else kronecker(out, factor)
    return out

# Moves tensor factor k to position k + 1 (cyclically) on (GF(p)^2)^(tensor p).
def _factor_cycle(F, count):
    n = 2 ** count
    images = []
    for idx in range(n):
        digits = [(idx >> (count - 1 - k)) & 1 for k in range(count)]
        rotated = [digits[-1]] + digits[:-1]
        images.append(sum(d << (count - 1 - k) for k, d in enumerate(rotated)))
    m = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(images):
        m[j, i] = 1
    return Matrix(F, m)

def tensor_wreath(p):
    check_choice(p, (2, 3), "p")
    F = FieldPrime(p)
    upper, lower = _unipotent_pair(F)
    u = _factor_cycle(F, p) @ _factor_embedding(upper, 0, p)
    gens = tuple(_factor_embedding(x, k, p) for k in range(p) for x in (upper, lower))
    target = JordanType((2 ** p,))
    power = upper
    for _ in range(p - 1):
        power = kronecker(power, upper)
    return RepDatum(f"L2.7(2):{p}", p, gens, u, OrderBound("eq", unipotent_order(target, p)),
                    target, Ambient("SL"), {"power_on_factors": power})

# u(v (x) w) = w (x) J_3 v on GF(2)^3 (x) GF(2)^3.
def tensor_swap9():
    F = FieldPrime(2)
    j3 = jordan_block(F, 3).data
    u = np.zeros((9, 9), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                if j3[k, i]:
                    u[3 * j + k, 3 * i + j] = 1
    eye = Matrix.identity(F, 3)
    gens = []
    for i, j in [(0, 1), (1, 2), (1, 0), (2, 1)]:
        t = _elementary(F, i, j)
        gens += [kronecker(t, eye), kronecker(eye, t)]
    j3m = jordan_block(F, 3)
    return RepDatum("L2.7(3)", 2, tuple(gens), Matrix(F, u), OrderBound("eq", 8),
                    JordanType((8, 1)), Ambient("SL"),
                    {"square": kronecker(j3m, j3m), "square_type": JordanType((4, 4, 1))})

def tensor_pair(p):
    check_prime(p)
    F = FieldPrime(p)
    upper, lower = _unipotent_pair(F)
    eye = Matrix.identity(F, 2)
    gens = tuple(g for x in (upper, lower) for g in (kronecker(x, eye), kronecker(eye, x)))
    u = kronecker(upper, upper)
    expected = JordanType((2, 2)) if p == 2 else JordanType((3, 1))
    return RepDatum(f"L2.7(1):{p}", p, gens, u, OrderBound("eq", p), expected, Ambient("SL"))

# The desk-scale rows exercised by the verification suites, as
# (constructor name, arguments).
def table_rows():
    rows = [("sym", (1, 2)), ("sym", (2, 3)), ("sym", (4, 5))]
    for p in (2, 3):
        rows += [("natural", ("A", l, p)) for l in range(1, 5)]
        rows += [("natural", ("C", l, p)) for l in range(1, 5)]
    rows += [("natural", ("B", l, 3)) for l in range(2, 5)]
    rows += [("natural", ("D.2", l, 2)) for l in range(3, 5)]
    rows += [("g2", (2,)), ("g2", (3,)), ("a2", (2,))]
    return rows

def lemma_rows():
    return [("wreath", (2,)), ("wreath", (3,)), ("swap9", ()), ("pair", (2,)), ("pair", (3,))]

ROW_CONSTRUCTORS = {
    "sym": sym_power_rep,
    "natural": natural_rep,
    "g2": g2_rep,
    "a2": a2_adjoint_outer,
    "wreath": tensor_wreath,
    "swap9": tensor_swap9,
    "pair": tensor_pair,
}

def build_row(name, args):
    if name not in ROW_CONSTRUCTORS:
        raise RuntimeError(f"Unknown representation row '{name}'")
    return ROW_CONSTRUCTORS[name](*args)

def rep_report(r):
    return {
        "row": r.row_tag,
        "p": r.p,
        "dim": r.dim,
        "u": r.u.tolist(),
        "generators": [g.tolist() for g in r.generators],
        "jordan_type": str(jordan_type(r.u)),
        "expected_type": str(r.expected_type),
        "order": r.order(),
        "order_bound": str(r.order_bound),
    }
