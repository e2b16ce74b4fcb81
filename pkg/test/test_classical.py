import pytest

from common import *
from regulib.classical import *
from regulib.exactla import FieldPrime, Matrix, inverse, jordan_block
from regulib.forms import QuadSpace, SympSpace, hyperbolic_space, is_isometry, is_totally_singular
from regulib.jordan import JordanType, jordan_power, jordan_type

@pytest.mark.parametrize('n,p,order', [(2, 2, 2), (5, 3, 9), (7, 7, 7), (9, 2, 16)])
def test_regular_in_sl(n, p, order):
    rep = regular_in_sl(n, p)
    assert rep.group_tag == "SL"
    assert rep.jordan_type() == JordanType((n,))
    assert rep.order() == order
    assert rep.space is None
    assert rep.dickson() is None

@pytest.mark.parametrize('n,p', [(2, 2), (4, 2), (4, 3), (6, 5), (8, 7)])
def test_regular_in_sp(n, p):
    rep = regular_in_sp(n, p)
    assert isinstance(rep.space, SympSpace)
    assert is_isometry(rep.u, rep.space)
    assert rep.jordan_type() == JordanType((n,))

def test_regular_in_sp_requires_even_dimension():
    with pytest.raises(RuntimeError):
        regular_in_sp(5, 3)

@pytest.mark.parametrize('n,p,blocks,tag', [
    (3, 3, (3,), "SO_odd"),
    (5, 5, (5,), "SO_odd"),
    (7, 3, (7,), "SO_odd"),
    (6, 3, (5, 1), "SO_even"),
    (8, 5, (7, 1), "SO_even"),
    (6, 2, (4, 2), "SO_even"),
    (8, 2, (6, 2), "SO_even"),
])
def test_regular_in_so(n, p, blocks, tag):
    rep = regular_in_so(n, p)
    assert rep.group_tag == tag
    assert rep.dim == n
    assert isinstance(rep.space, QuadSpace)
    assert rep.space.is_nondegenerate()
    assert is_isometry(rep.u, rep.space)
    assert rep.jordan_type() == JordanType(blocks)

@pytest.mark.parametrize('n,p', [(4, 3), (2, 5), (5, 2)])
def test_regular_in_so_rejects_unsupported_parameters(n, p):
    with pytest.raises(RuntimeError):
        regular_in_so(n, p)

@pytest.mark.parametrize('n', [3, 5, 7])
def test_regular_in_so_odd_char2(n):
    rep = regular_in_so_odd_char2(n)
    assert rep.group_tag == "SO_odd"
    assert rep.space.is_nondegenerate()
    assert is_isometry(rep.u, rep.space)
    assert rep.jordan_type() == JordanType((n - 1, 1))
    # The space is odd-dimensional, so there is no Dickson invariant.
    assert rep.dickson() is None

@pytest.mark.parametrize('n', [4, 6, 8])
def test_go_outer_regular(n):
    rep = go_outer_regular(n)
    assert is_isometry(rep.u, rep.space)
    assert rep.jordan_type() == JordanType((n,))
    assert rep.dickson() == 1

def test_go_outer_regular_requires_characteristic_two():
    with pytest.raises(RuntimeError):
        go_outer_regular(4, 3)

def test_outer_element_squares_to_block_diagonal():
    F = FieldPrime(2)
    g = Matrix(F, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    u = outer_element(g)
    h = inverse(g).T @ g
    top = (u @ u).data[:3, :3]
    assert top.tolist() == h.tolist()
    assert not (u @ u).data[:3, 3:].any()

@pytest.mark.parametrize('l,blocks,square', [
    (3, (6,), (3,)),
    (4, (6, 2), (3, 1)),
    (5, (10,), (5,)),
])
def test_gl_stab_outer(l, blocks, square):
    rep = gl_stab_outer(l)
    assert rep.group_tag == "GLl2_outer"
    assert rep.jordan_type() == JordanType(blocks)
    assert rep.extra["square_type"] == JordanType(square)
    assert is_isometry(rep.u, rep.space)
    assert rep.dickson() == l % 2
    w, w_dual = hyperbolic_halves(l)
    assert w.image(rep.u) == w_dual
    assert w_dual.image(rep.u) == w

def test_gl_stab_outer_is_reproducible():
    with state_override(seed=11):
        a = gl_stab_outer(4)
    b = gl_stab_outer(4, seed=11)
    assert a.u == b.u

@pytest.mark.parametrize('l', [3, 4])
def test_gl_stab_outer_search_cap(l):
    with pytest.raises(SearchExhausted):
        gl_stab_outer(l, cap=1)

@pytest.mark.parametrize('l,p', [(2, 2), (3, 3)])
def test_gl_stab_outer_rejects_unsupported_parameters(l, p):
    with pytest.raises(RuntimeError):
        gl_stab_outer(l, p)

# The p-th power of each representative has the type predicted by the power
# map, which is the square in characteristic 2.
@pytest.mark.parametrize('fn,args', [
    (gl_stab_outer, (3,)),
    (gl_stab_outer, (4,)),
    (gl_stab_outer, (5,)),
    (go_outer_regular, (4,)),
    (go_outer_regular, (8,)),
    (regular_in_so, (8, 2)),
    (regular_in_so_odd_char2, (7,)),
    (regular_in_so, (7, 3)),
    (regular_in_sp, (6, 5)),
])
def test_power_matches_the_power_map(fn, args):
    rep = fn(*args)
    power = rep.u ** rep.p
    assert jordan_type(power) == jordan_power(rep.expected_type, rep.p)
    if rep.group_tag == "GLl2_outer":
        assert jordan_type(power) == JordanType.of(rep.extra["square_type"].blocks * 2)

def test_representative_must_have_the_expected_type():
    F = FieldPrime(3)
    with pytest.raises(RuntimeError, match="Jordan type"):
        RegularRep("SL", {"n": 3}, 3, jordan_block(F, 3), None, JordanType((2, 1)))

def test_hyperbolic_halves_are_totally_singular():
    space = hyperbolic_space(FieldPrime(2), 3)
    e, f = hyperbolic_halves(3)
    assert e.dim == f.dim == 3
    assert is_totally_singular(e, space) and is_totally_singular(f, space)

def test_rep_report_fields():
    report = rep_report(regular_in_sp(4, 3))
    assert report["group_tag"] == "Sp"
    assert report["jordan_type"] == "4"
    assert report["order"] == 9
    assert report["form"]["kind"] == "alternating"
    assert report["dickson"] is None
    assert rep_report(regular_in_sl(3, 2))["form"] is None
