import functools
import numpy as np
from fractions import Fraction

from .exactla import FieldPrime, Matrix

# Root vectors of G_2 on its 7-dimensional module, on a basis v_0, ..., v_6 of
# weight vectors with weights 2a+b, a+b, a, 0, -a, -a-b, -2a-b (a short, b
# long). Each entry (i, j, c) means the root vector maps v_j to c v_i.
ROOT_VECTORS = {
    "a": [(0, 1, 1), (2, 3, 2), (3, 4, 1), (5, 6, 1)],
    "b": [(1, 2, 1), (4, 5, 1)],
    "a+b": [(0, 2, 1), (3, 5, 1), (1, 3, -2), (4, 6, -1)],
    "2a+b": [(0, 3, -2), (1, 4, 1), (2, 5, 1), (3, 6, -1)],
    "3a+b": [(0, 4, 1), (2, 6, -1)],
    "3a+2b": [(1, 6, -1), (0, 5, -1)],
    "-a": [(1, 0, 1), (3, 2, 1), (4, 3, 2), (6, 5, 1)],
    "-b": [(2, 1, 1), (5, 4, 1)],
    "-a-b": [(3, 1, 1), (6, 4, 1), (2, 0, -1), (5, 3, -2)],
    "-2a-b": [(4, 1, 1), (3, 0, -1), (6, 3, -2), (5, 2, 1)],
    "-3a-b": [(4, 0, -1), (6, 2, 1)],
    "-3a-2b": [(5, 0, -1), (6, 1, -1)],
}

POSITIVE_ROOTS = ["a", "b", "a+b", "2a+b", "3a+b", "3a+2b"]

# Each non-simple root vector is a bracket of earlier ones divided by an
# integer: name -> (left, right, divisor).
BRACKETS = {
    "a+b": ("a", "b", 1),
    "2a+b": ("a", "a+b", 2),
    "3a+b": ("a", "2a+b", 3),
    "3a+2b": ("b", "3a+b", 1),
    "-a-b": ("-a", "-b", 1),
    "-2a-b": ("-a", "-a-b", 2),
    "-3a-b": ("-a", "-2a-b", 3),
    "-3a-2b": ("-b", "-3a-b", 1),
}

# The line spanned by v_3 is invariant in characteristic 2.
RADICAL_INDEX = 3

def _dense(entries):
    m = np.zeros((7, 7), dtype=np.int64)
    for i, j, c in entries:
        m[i, j] = c
    return m

@functools.lru_cache(maxsize=None)
def root_vector(name):
    return _dense(ROOT_VECTORS[name])

def _bracket(x, y):
    return x @ y - y @ x

def _negative(name):
    return name[1:] if name.startswith("-") else "-" + name

# Checks the hardcoded structure constants over the integers.
def validate_root_vectors():
    for name, (left, right, div) in BRACKETS.items():
        if not np.array_equal(_bracket(root_vector(left), root_vector(right)),
                              div * root_vector(name)):
            raise RuntimeError(f"G2 root vector {name} is inconsistent with [{left}, {right}]")
    for name in POSITIVE_ROOTS:
        h = _bracket(root_vector(name), root_vector(_negative(name)))
        if np.count_nonzero(h - np.diag(np.diag(h))) or not h.any():
            raise RuntimeError(f"Bracket of the G2 root vectors for +-{name} is not a "
                               f"nonzero diagonal matrix")
    return True

# x(1) = sum_k X^k / k!, computed over the rationals; every coefficient must
# be integral.
@functools.lru_cache(maxsize=None)
def root_element(name):
    x = root_vector(name).astype(object)
    term = np.eye(7, dtype=np.int64).astype(object)
    total = term.copy()
    for k in range(1, 7):
        term = term.dot(x) * Fraction(1, k)
        total = total + term
    if any(Fraction(c).denominator != 1 for c in total.flat):
        raise RuntimeError(f"Root element for {name} is not integral")
    return np.array([[int(c) for c in row] for row in total], dtype=np.int64)

def reduce_mod(m, p):
    F = FieldPrime(p)
    if p == 2:
        keep = [i for i in range(7) if i != RADICAL_INDEX]
        m = m[np.ix_(keep, keep)]
    return Matrix(F, m)

def generators(p):
    validate_root_vectors()
    return [reduce_mod(root_element(name), p)
            for name in POSITIVE_ROOTS + [_negative(r) for r in POSITIVE_ROOTS]]

def regular_element(p):
    return reduce_mod(root_element("a") @ root_element("b"), p)
