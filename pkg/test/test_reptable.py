import pytest

from common import *
from regulib.exactla import FieldPrime, Matrix, kronecker, jordan_block
from regulib.jordan import JordanType, jordan_type
from regulib.modstruct import ModuleAction, is_absolutely_irreducible
from regulib.reptable import *

def check_row(rep, blocks, order):
    assert jordan_type(rep.u) == JordanType(blocks)
    assert rep.expected_type == JordanType(blocks)
    assert rep.order() == order
    assert rep.order_bound.holds(order)
    assert rep.ambient.contains(rep.u)
    assert all(rep.ambient.contains(g) for g in rep.generators)

def irreducible(rep):
    return is_absolutely_irreducible(ModuleAction(tuple(rep.group_generators())))

@pytest.mark.parametrize('relation,value,order,expected', [
    ("eq", 8, 8, True),
    ("eq", 8, 4, False),
    ("lt", 9, 9, False),
    ("lt", 9, 3, True),
    ("le", 9, 9, True),
    ("le", 9, None, False),
])
def test_order_bound(relation, value, order, expected):
    assert OrderBound(relation, value).holds(order) == expected

def test_order_bound_text():
    assert str(OrderBound("lt", 12)) == "<12"
    assert str(OrderBound("le", 9)) == "<=9"
    assert str(OrderBound("eq", 8)) == "=8"

@pytest.mark.parametrize('m,p', [(1, 2), (2, 3), (4, 5), (3, 7)])
def test_sym_power_rep(m, p):
    rep = sym_power_rep(m, p)
    check_row(rep, (m + 1,), p)
    assert rep.row_tag == f"A1:sym:{m}:{p}"

def test_sym_power_rep_requires_small_degree():
    with pytest.raises(RuntimeError):
        sym_power_rep(3, 3)

@pytest.mark.parametrize('family,l,p,blocks,order', [
    ("A", 1, 2, (2,), 2),
    ("A", 3, 3, (4,), 9),
    ("B", 2, 3, (5,), 9),
    ("B", 3, 5, (7,), 25),
    ("C", 2, 2, (4,), 4),
    ("C", 3, 3, (6,), 9),
    ("D.2", 3, 2, (6,), 8),
    ("D.2", 4, 2, (8,), 8),
])
def test_natural_rep(family, l, p, blocks, order):
    check_row(natural_rep(family, l, p), blocks, order)

@pytest.mark.parametrize('family,l,p', [
    ("B", 2, 2),
    ("B", 1, 3),
    ("D.2", 3, 3),
    ("D.2", 2, 2),
    ("E", 6, 2),
])
def test_natural_rep_rejects_invalid_parameters(family, l, p):
    with pytest.raises(RuntimeError):
        natural_rep(family, l, p)

@pytest.mark.parametrize('family,l,p', [("A", 2, 3), ("B", 2, 3), ("C", 2, 2), ("C", 2, 3), ("D.2", 3, 2)])
def test_natural_rep_is_absolutely_irreducible(family, l, p):
    cert = irreducible(natural_rep(family, l, p))
    assert cert.irreducible
    assert cert.commutant_dim == 1

def test_conjugate_generator_differs_from_u():
    rep = natural_rep("C", 2, 3)
    assert rep.generators[1] != rep.u
    assert jordan_type(rep.generators[1]) == JordanType((4,))

@pytest.mark.parametrize('p,blocks,order,tag', [(2, (6,), 8, "G2:6:2"), (3, (7,), 9, "G2:7:3")])
def test_g2_rep(p, blocks, order, tag):
    rep = g2_rep(p)
    assert rep.row_tag == tag
    check_row(rep, blocks, order)
    assert irreducible(rep)

def test_a2_adjoint_outer():
    rep = a2_adjoint_outer()
    check_row(rep, (8,), 8)
    g = rep.extra["g"]
    assert adjoint(g @ g) == adjoint(g) @ adjoint(g)
    with pytest.raises(RuntimeError):
        a2_adjoint_outer(3)

def test_adjoint_is_a_homomorphism():
    F = FieldPrime(3)
    a = Matrix(F, [[1, 1, 0], [0, 1, 2], [0, 0, 1]])
    b = Matrix(F, [[1, 0, 0], [2, 1, 0], [1, 0, 1]])
    assert adjoint(a @ b) == adjoint(a) @ adjoint(b)
    assert adjoint(Matrix.identity(F, 3)).is_identity()

@pytest.mark.parametrize('p,blocks,order', [(2, (4,), 4), (3, (8,), 9)])
def test_tensor_wreath(p, blocks, order):
    rep = tensor_wreath(p)
    check_row(rep, blocks, order)
    assert rep.u ** p == rep.extra["power_on_factors"]
    assert irreducible(rep)

def test_tensor_wreath_characteristic():
    with pytest.raises(RuntimeError):
        tensor_wreath(5)

def test_tensor_swap9():
    rep = tensor_swap9()
    check_row(rep, (8, 1), 8)
    square = rep.u @ rep.u
    j3 = jordan_block(FieldPrime(2), 3)
    assert square == kronecker(j3, j3)
    assert jordan_type(square) == JordanType((4, 4, 1))
    assert irreducible(rep)

@pytest.mark.parametrize('p,blocks', [(2, (2, 2)), (3, (3, 1)), (5, (3, 1))])
def test_tensor_pair(p, blocks):
    rep = tensor_pair(p)
    check_row(rep, blocks, p)
    assert irreducible(rep)

def test_build_row():
    assert build_row("pair", (2,)).row_tag == "L2.7(1):2"
    with pytest.raises(RuntimeError):
        build_row("spin", ())

def test_rep_report():
    report = rep_report(tensor_pair(3))
    assert report["row"] == "L2.7(1):3"
    assert report["dim"] == 4
    assert report["jordan_type"] == "3+1"
    assert report["order"] == 3
    assert report["order_bound"] == "=3"
    assert len(report["generators"]) == 4

@pytest.mark.slow
@pytest.mark.parametrize('name,args', table_rows() + lemma_rows())
def test_rows_are_absolutely_irreducible(name, args):
    rep = build_row(name, args)
    assert jordan_type(rep.u) == rep.expected_type
    assert rep.order_bound.holds(rep.order())
    assert irreducible(rep)
