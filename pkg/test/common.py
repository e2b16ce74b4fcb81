import contextlib
import numpy as np
import pytest
from hypothesis import settings, strategies as st

import regulib
from regulib import state
from regulib.exactla import FieldPrime, Matrix, block_diag, jordan_block
from regulib.forms import SubspaceBasis, orthogonal_transvection

# Every property test runs with a fixed derandomized profile, so the sampled
# examples are the same on every run.
settings.register_profile("regulib", derandomize=True, max_examples=40, deadline=None)
settings.load_profile("regulib")

small_primes = [2, 3, 5, 7]

def mat(p, rows):
    return Matrix(FieldPrime(p), rows)

def unipotent_of_type(p, blocks):
    F = FieldPrime(p)
    return block_diag(*[jordan_block(F, b) for b in blocks])

# Temporarily overrides values of the state module, restoring them afterwards
# even if the test fails.
@contextlib.contextmanager
def state_override(seed=None, line_cap=None, search_cap=None, timing=None):
    saved = (state.get_default_seed(), state.get_line_cap(), state.get_search_cap(),
             state.get_timing())
    try:
        if seed is not None:
            state.set_default_seed(seed)
        if line_cap is not None:
            state.set_line_cap(line_cap)
        if search_cap is not None:
            state.set_search_cap(search_cap)
        if timing is not None:
            state.set_timing(timing)
        yield
    finally:
        state.set_default_seed(saved[0])
        state.set_line_cap(saved[1])
        state.set_search_cap(saved[2])
        state.set_timing(saved[3])

@st.composite
def partitions(draw, max_n=12, min_n=1):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    blocks = []
    rest = n
    while rest > 0:
        b = draw(st.integers(min_value=1, max_value=rest))
        blocks.append(b)
        rest -= b
    return sorted(blocks, reverse=True)

@st.composite
def matrices(draw, p, rows, cols=None):
    cols = rows if cols is None else cols
    entries = draw(st.lists(st.integers(min_value=0, max_value=p - 1),
                            min_size=rows * cols, max_size=rows * cols))
    return Matrix(FieldPrime(p), np.array(entries, dtype=np.int64).reshape(rows, cols))

def invertible_matrices(p, n):
    return matrices(p, n).filter(lambda m: regulib.exactla.rank(m) == n)

@st.composite
def subspaces(draw, p, n):
    k = draw(st.integers(min_value=1, max_value=n))
    rows = draw(matrices(p, k, n))
    return SubspaceBasis.span(FieldPrime(p), rows.data, n)

# A product of orthogonal transvections on the given quadratic space, together
# with the number of factors. Singular vectors among the drawn ones are
# skipped.
@st.composite
def transvection_products(draw, space, max_len=6):
    p = space.field.p
    vector = st.lists(st.integers(min_value=0, max_value=p - 1),
                      min_size=space.dim, max_size=space.dim)
    vectors = [v for v in draw(st.lists(vector, max_size=max_len)) if space.value(v) != 0]
    g = Matrix.identity(space.field, space.dim)
    for a in vectors:
        g = g @ orthogonal_transvection(space, a)
    return g, len(vectors)
