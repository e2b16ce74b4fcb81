import pytest

from common import *
from regulib.exactla import FieldPrime, Matrix, jordan_block
from regulib.forms import SubspaceBasis
from regulib.modstruct import *

def natural_sl2(p):
    F = FieldPrime(p)
    upper = jordan_block(F, 2)
    return ModuleAction((upper, upper.T))

def test_module_action_validation():
    F = FieldPrime(3)
    with pytest.raises(RuntimeError):
        ModuleAction(())
    with pytest.raises(RuntimeError):
        ModuleAction((jordan_block(F, 2), jordan_block(F, 3)))
    with pytest.raises(RuntimeError):
        ModuleAction((Matrix(F, [[1, 0], [0, 0]]),))
    with pytest.raises(RuntimeError):
        ModuleAction((jordan_block(F, 2), jordan_block(FieldPrime(5), 2)))

def test_spin_of_regular_block():
    F = FieldPrime(5)
    action = ModuleAction((jordan_block(F, 3),))
    assert spin(action, [[0, 0, 1]]) == SubspaceBasis.whole(F, 3)
    assert spin(action, [[0, 1, 0]]) == SubspaceBasis.span(F, [[1, 0, 0], [0, 1, 0]])
    assert spin(action, SubspaceBasis.span(F, [1, 0, 0])).dim == 1

def test_find_invariant_subspace_follows_line_order():
    F = FieldPrime(2)
    action = ModuleAction((jordan_block(F, 3),))
    s = find_invariant_subspace(action)
    assert s == SubspaceBasis.span(F, [[1, 0, 0], [0, 1, 0]])
    assert is_invariant(action, s)
    assert not is_invariant(action, SubspaceBasis.span(F, [0, 1, 0]))

@pytest.mark.parametrize('p', [2, 3, 5, 7])
def test_natural_sl2_is_absolutely_irreducible(p):
    cert = is_absolutely_irreducible(natural_sl2(p))
    assert cert.irreducible
    assert cert.commutant_dim == 1
    assert cert.witness is None
    assert cert

def test_line_cap_is_enforced():
    action = ModuleAction((jordan_block(FieldPrime(2), 3),))
    with pytest.raises(RuntimeError):
        find_invariant_subspace(action, cap=6)
    assert check_line_cap(2, 3, 7) == 7
    with state_override(line_cap=3):
        with pytest.raises(RuntimeError):
            is_absolutely_irreducible(action)

@pytest.mark.parametrize('action,expected', [
    (natural_sl2(3), 1),
    (ModuleAction((Matrix.identity(FieldPrime(3), 2),)), 4),
    (ModuleAction((jordan_block(FieldPrime(3), 2),)), 2),
    (ModuleAction((jordan_block(FieldPrime(2), 4),)), 4),
])
def test_commutant_dimension(action, expected):
    assert commutant_dimension(action) == expected

def test_projectors_restrict_the_commutant():
    F = FieldPrime(3)
    action = ModuleAction((Matrix.identity(F, 2),), (Matrix(F, [[1, 0], [0, 0]]),))
    assert commutant_dimension(action) == 2
    cert = is_absolutely_irreducible(action)
    assert not cert.irreducible
    assert not cert
    assert cert.witness.dim == 1

def test_fixed_space():
    F = FieldPrime(3)
    assert fixed_space(jordan_block(F, 4)) == SubspaceBasis.span(F, [1, 0, 0, 0])
    assert fixed_space(unipotent_of_type(3, [2, 2])).dim == 2
    assert fixed_space(Matrix.identity(F, 3)) == SubspaceBasis.whole(F, 3)
