import itertools
import logging
import numpy as np
from dataclasses import dataclass, field

from . import state
from .exactla import FieldPrime, Matrix, block_diag, inverse, jordan_block, matrix_order, permutation_matrix, rank
from .forms import (
    QuadSpace, SympSpace, SubspaceBasis, dickson, hyperbolic_space, invariant_orthogonal_space,
    invariant_symplectic_space, is_isometry, orthogonal_sum
)
from .jordan import JordanType, jordan_type, unipotent_order
from .validate import check_at_least, check_char, check_even, check_odd, check_prime

logger = logging.getLogger(__name__)

GROUP_TAGS = ("SL", "Sp", "SO_odd", "SO_even", "GO_outer", "GLl2_outer")

# Number of unitriangular candidates tried, in lexicographic order of their
# strictly upper entries, before switching to seeded random sampling.
UNITRIANGULAR_PREFIX = 4096

class SearchExhausted(RuntimeError):
    def __init__(self, what, cap):
        super().__init__(f"Search for {what} exhausted its cap of {cap} candidates")
        self.cap = cap

@dataclass(frozen=True, eq=False)
class RegularRep:
    group_tag: str
    params: dict
    p: int
    u: Matrix
    space: object
    expected_type: JordanType
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        actual = jordan_type(self.u)
        if actual != self.expected_type:
            raise RuntimeError(f"Representative for {self.group_tag} has Jordan type {actual}, "
                               f"expected {self.expected_type}")

    @property
    def dim(self):
        return self.u.rows

    def jordan_type(self):
        return jordan_type(self.u)

    def order(self):
        return matrix_order(self.u, unipotent_order(self.expected_type, self.p) * self.p)

    def dickson(self):
        if self.p == 2 and isinstance(self.space, QuadSpace) and self.dim % 2 == 0:
            return dickson(self.u, self.space)
        return None

def _field(p):
    return FieldPrime(check_prime(p))

def regular_in_sl(n, p):
    check_at_least(n, 2, "n")
    F = _field(p)
    return RegularRep("SL", {"n": n}, p, jordan_block(F, n), None, JordanType((n,)))

def regular_in_sp(n, p):
    check_at_least(n, 2, "n")
    check_even(n, "n")
    F = _field(p)
    u = jordan_block(F, n)
    return RegularRep("Sp", {"n": n}, p, u, invariant_symplectic_space(u), JordanType((n,)))

# The nondegenerate J_2-invariant quadratic form on a plane in characteristic 2.
def _char2_plane():
    u = jordan_block(FieldPrime(2), 2)
    return u, invariant_orthogonal_space(u)

def regular_in_so(n, p):
    check_at_least(n, 3, "n")
    F = _field(p)
    if n % 2 == 1:
        if p == 2:
            raise RuntimeError("Odd-dimensional orthogonal groups in characteristic 2 are "
                               "served by regular_in_so_odd_char2")
        u = jordan_block(F, n)
        return RegularRep("SO_odd", {"n": n}, p, u, invariant_orthogonal_space(u), JordanType((n,)))
    check_at_least(n, 6, "n")
    l = n // 2
    if p != 2:
        big = jordan_block(F, n - 1)
        line = QuadSpace.from_quad(Matrix.identity(F, 1))
        space = orthogonal_sum(invariant_orthogonal_space(big), line)
        u = block_diag(big, Matrix.identity(F, 1))
        return RegularRep("SO_even", {"n": n}, p, u, space, JordanType((n - 1, 1)))
    outer = go_outer_regular(n - 2)
    j2, plane = _char2_plane()
    u = block_diag(outer.u, j2)
    space = orthogonal_sum(outer.space, plane)
    return RegularRep("SO_even", {"n": n}, p, u, space, JordanType((2 * l - 2, 2)))

def go_outer_regular(n, p=2):
    check_char(p, 2, "The outer regular class of GO")
    check_at_least(n, 4, "n")
    check_even(n, "n")
    u = jordan_block(FieldPrime(2), n)
    return RegularRep("GO_outer", {"n": n}, p, u, invariant_orthogonal_space(u), JordanType((n,)))

# The B_l case in characteristic 2: J_{2l} on a nondegenerate 2l-dimensional
# quadratic space, plus a line with Q = x^2 spanning the radical of B.
def regular_in_so_odd_char2(n):
    check_at_least(n, 3, "n")
    check_odd(n, "n")
    F = FieldPrime(2)
    even = jordan_block(F, n - 1)
    line = QuadSpace.from_quad(Matrix.identity(F, 1))
    space = orthogonal_sum(invariant_orthogonal_space(even), line)
    u = block_diag(even, Matrix.identity(F, 1))
    return RegularRep("SO_odd", {"n": n}, 2, u, space, JordanType((n - 1, 1)))

def _swap(F, l):
    return permutation_matrix(F, [l + i for i in range(l)] + list(range(l)))

# u = tau * diag(g, g^-T) on the hyperbolic space W + W*, where tau swaps e_i
# and f_i. Then u^2 restricts to g^-T g on W.
def outer_element(g):
    l = g.rows
    return _swap(g.field, l) @ block_diag(g, inverse(g).T)

def _square_type_ok(h, l):
    n = h.rows
    nil = (h.data - np.eye(n, dtype=np.int64)) % 2
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = (power @ nil) % 2
    if power.any():
        return False
    target = (l,) if l % 2 == 1 else (l - 1, 1)
    return jordan_type(h).blocks == target

def _unitriangular_candidates(F, l):
    positions = [(i, j) for i in range(l) for j in range(i + 1, l)]
    for bits in itertools.islice(itertools.product((0, 1), repeat=len(positions)),
                                 UNITRIANGULAR_PREFIX):
        g = np.eye(l, dtype=np.int64)
        for (i, j), b in zip(positions, bits):
            g[i, j] = b
        yield g

def _random_candidates(l, seed):
    rng = np.random.default_rng(seed)
    while True:
        yield rng.integers(0, 2, size=(l, l), dtype=np.int64)

def _search_outer_g(l, target, seed, cap):
    F = FieldPrime(2)
    phases = [("unitriangular", _unitriangular_candidates(F, l)),
              ("random", _random_candidates(l, seed))]
    tried = 0
    for name, candidates in phases:
        logger.debug(f"Searching GL_{l}(2) for an outer element, phase {name}")
        for arr in candidates:
            if tried >= cap:
                raise SearchExhausted(f"an outer regular element with l = {l}", cap)
            tried += 1
            g = Matrix(F, arr)
            if rank(g) < l:
                continue
            h = inverse(g).T @ g
            if not _square_type_ok(h, l):
                continue
            u = outer_element(g)
            if jordan_type(u) == target:
                logger.debug(f"Found outer element for l = {l} after {tried} candidates")
                return g, h, u
    raise SearchExhausted(f"an outer regular element with l = {l}", cap)

def gl_stab_outer(l, p=2, seed=None, cap=None):
    check_char(p, 2, "The outer class of GL_l.2")
    check_at_least(l, 3, "l")
    if seed is None:
        seed = state.get_default_seed()
    if cap is None:
        cap = state.get_search_cap()
    target = JordanType((2 * l,)) if l % 2 == 1 else JordanType((2 * l - 2, 2))
    g, h, u = _search_outer_g(l, target, seed, cap)
    space = hyperbolic_space(FieldPrime(2), l)
    if not is_isometry(u, space):
        raise RuntimeError(f"Outer element for l = {l} is not an isometry")
    w, w_dual = hyperbolic_halves(l)
    if w.image(u) != w_dual or w_dual.image(u) != w:
        raise RuntimeError(f"Outer element for l = {l} does not swap the hyperbolic halves")
    extra = {"g": g, "square_type": jordan_type(h)}
    return RegularRep("GLl2_outer", {"l": l}, p, u, space, target, extra)

# The totally singular halves W = span(e_i) and W* = span(f_i) of the
# hyperbolic 2l-space over GF(2).
def hyperbolic_halves(l):
    F = FieldPrime(2)
    eye = np.eye(2 * l, dtype=np.int64)
    return SubspaceBasis.span(F, eye[:l]), SubspaceBasis.span(F, eye[l:])

def rep_report(rep):
    space = rep.space
    if isinstance(space, QuadSpace):
        form = {"kind": "quadratic", "quad": space.quad.tolist(), "gram": space.gram.tolist()}
    elif isinstance(space, SympSpace):
        form = {"kind": "alternating", "gram": space.gram.tolist()}
    else:
        form = None
    return {
        "group_tag": rep.group_tag,
        "params": dict(rep.params),
        "p": rep.p,
        "u": rep.u.tolist(),
        "form": form,
        "jordan_type": str(rep.jordan_type()),
        "order": rep.order(),
        "dickson": rep.dickson(),
    }
