import pytest
from hypothesis import given, strategies as st

from common import *
from regulib.classical import go_outer_regular, regular_in_so
from regulib.exactla import FieldPrime, Matrix, jordan_block, permutation_matrix
from regulib.forms import *

def test_quad_space_polarization_example():
    space = hyperbolic_space(FieldPrime(2), 2)
    assert space.value([1, 0, 1, 0]) == 1
    assert space.value([1, 1, 0, 0]) == 0
    assert space.bilinear([1, 0, 0, 0], [0, 0, 1, 0]) == 1
    assert space.is_nondegenerate()

@given(st.sampled_from([2, 3, 5]).flatmap(lambda p: st.tuples(
    matrices(p, 3), st.lists(st.integers(0, p - 1), min_size=3, max_size=3),
    st.lists(st.integers(0, p - 1), min_size=3, max_size=3))))
def test_bilinear_form_is_the_polarization(args):
    quad, x, y = args
    space = QuadSpace.from_quad(quad)
    s = [a + b for a, b in zip(x, y)]
    p = quad.p
    assert space.bilinear(x, y) == (space.value(s) - space.value(x) - space.value(y)) % p

def test_gram_requires_odd_characteristic():
    with pytest.raises(RuntimeError):
        QuadSpace.from_gram(mat(2, [[0, 1], [1, 0]]))
    with pytest.raises(RuntimeError):
        QuadSpace.from_gram(mat(3, [[0, 1], [2, 0]]))

def test_odd_char2_line_sum_is_nondegenerate():
    F = FieldPrime(2)
    line = QuadSpace.from_quad(Matrix.identity(F, 1))
    space = orthogonal_sum(hyperbolic_space(F, 1), line)
    assert space.dim == 3
    assert space.is_nondegenerate()
    degenerate = orthogonal_sum(hyperbolic_space(F, 1), QuadSpace.from_quad(Matrix.zeros(F, 1, 1)))
    assert not degenerate.is_nondegenerate()

@pytest.mark.parametrize('gram', [
    [[0, 1, 0], [2, 0, 0], [0, 0, 0]],
    [[1, 1], [2, 0]],
    [[0, 0], [0, 0]],
])
def test_symplectic_space_validation(gram):
    with pytest.raises(RuntimeError):
        SympSpace(mat(3, gram))

def test_symplectic_isometry():
    F = FieldPrime(3)
    space = SympSpace.standard(F, 1)
    assert is_isometry(jordan_block(F, 2), space)
    assert not is_isometry(Matrix(F, [[2, 0], [0, 1]]), space)
    with pytest.raises(RuntimeError):
        is_isometry(Matrix.identity(F, 3), space)

def test_swap_is_an_isometry_with_dickson_one():
    F = FieldPrime(2)
    space = hyperbolic_space(F, 1)
    swap = permutation_matrix(F, [1, 0])
    assert is_isometry(swap, space)
    assert dickson(swap, space) == 1
    assert dickson(Matrix.identity(F, 2), space) == 0

def test_dickson_rejects_non_isometries_and_odd_characteristic():
    F = FieldPrime(2)
    with pytest.raises(RuntimeError):
        dickson(jordan_block(F, 2), hyperbolic_space(F, 1))
    G = FieldPrime(3)
    with pytest.raises(RuntimeError):
        dickson(Matrix.identity(G, 2), hyperbolic_space(G, 1))

@pytest.mark.parametrize('rep,expected', [
    (go_outer_regular(4), 1),
    (go_outer_regular(6), 1),
    (regular_in_so(8, 2), 0),
])
def test_dickson_of_regular_elements(rep, expected):
    assert rep.dickson() == expected

def test_totally_singular_and_perp():
    F = FieldPrime(2)
    space = hyperbolic_space(F, 2)
    e = SubspaceBasis.span(F, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert is_totally_singular(e, space)
    assert perp(e, space) == e
    mixed = SubspaceBasis.span(F, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert not is_totally_singular(mixed, space)
    assert perp(SubspaceBasis.span(F, [1, 0, 0, 0]), space).dim == 3

@pytest.mark.parametrize('l', [2, 3, 4])
@given(data=st.data())
def test_dickson_is_additive(l, data):
    space = hyperbolic_space(FieldPrime(2), l)
    g, k = data.draw(transvection_products(space))
    h, m = data.draw(transvection_products(space))
    assert is_isometry(g, space) and is_isometry(h, space)
    assert dickson(g, space) == k % 2
    assert dickson(h, space) == m % 2
    assert dickson(g @ h, space) == (dickson(g, space) + dickson(h, space)) % 2

@pytest.mark.parametrize('p,l', [(2, 2), (3, 2), (5, 3), (7, 1)])
@given(data=st.data())
def test_double_perp_of_a_nondegenerate_space(p, l, data):
    s = data.draw(subspaces(p, 2 * l))
    F = FieldPrime(p)
    for space in (hyperbolic_space(F, l), SympSpace.standard(F, l)):
        pp = perp(perp(s, space), space)
        assert pp.contains_subspace(s) and s.contains_subspace(pp)
        assert perp(s, space).dim == 2 * l - s.dim

# On a degenerate space the double perp of s is s joined with the radical.
@pytest.mark.parametrize('p', [3, 5])
@given(data=st.data())
def test_double_perp_of_a_degenerate_space(p, data):
    s = data.draw(subspaces(p, 3))
    F = FieldPrime(p)
    space = QuadSpace.from_gram(Matrix(F, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    radical = perp(SubspaceBasis.whole(F, 3), space)
    assert radical == SubspaceBasis.span(F, [0, 0, 1])
    pp = perp(perp(s, space), space)
    assert pp.contains_subspace(s)
    joined = s.join(radical)
    assert pp.contains_subspace(joined) and joined.contains_subspace(pp)

def test_double_perp_can_be_larger():
    F = FieldPrime(3)
    space = QuadSpace.from_gram(Matrix(F, [[1, 0, 0], [0, 1, 0], [0, 0, 0]]))
    s = SubspaceBasis.span(F, [1, 0, 0])
    assert perp(perp(s, space), space).dim == 2

# In characteristic 2 a vector may be isotropic for B without being singular
# for Q.
def test_totally_singular_checks_the_quadratic_form():
    F = FieldPrime(2)
    space = hyperbolic_space(F, 1)
    assert not is_totally_singular(SubspaceBasis.span(F, [1, 1]), space)
    assert singular_vectors(space, [[1, 1], [1, 0]]) == [[1, 0]]

def test_subspace_basis_is_canonical():
    F = FieldPrime(3)
    a = SubspaceBasis.span(F, [[1, 1, 0], [0, 1, 0]])
    b = SubspaceBasis.span(F, [[1, 0, 0], [0, 2, 0], [1, 1, 0]])
    assert a == b
    assert a.dim == 2
    assert a.contains([2, 1, 0])
    assert not a.contains([0, 0, 1])
    assert a.join(SubspaceBasis.span(F, [0, 0, 1])) == SubspaceBasis.whole(F, 3)
    with pytest.raises(RuntimeError):
        SubspaceBasis.span(F, [])
    assert SubspaceBasis.span(F, [], 3).dim == 0

def test_subspace_image_acts_on_columns():
    F = FieldPrime(2)
    u = jordan_block(F, 2)
    assert SubspaceBasis.span(F, [1, 0]).image(u) == SubspaceBasis.span(F, [1, 0])
    assert SubspaceBasis.span(F, [0, 1]).image(u) == SubspaceBasis.span(F, [1, 1])

@pytest.mark.parametrize('p,n,kind,expected', [
    (3, 2, "alternating", 1),
    (3, 2, "symmetric", 1),
    (5, 3, "symmetric", 2),
    (7, 4, "alternating", 2),
    (7, 4, "symmetric", 2),
])
def test_invariant_bilinear_form_dimensions(p, n, kind, expected):
    forms = invariant_bilinear_forms(jordan_block(FieldPrime(p), n), kind)
    assert len(forms) == expected

def test_even_regular_block_has_no_orthogonal_form_in_odd_characteristic():
    with pytest.raises(NoInvariantForm):
        invariant_orthogonal_space(jordan_block(FieldPrime(3), 2))

def test_single_odd_blocks_admit_no_symplectic_form():
    with pytest.raises(NoInvariantForm):
        invariant_symplectic_space(unipotent_of_type(5, [3, 1]))

@pytest.mark.parametrize('p,n', [(2, 4), (2, 6), (3, 5), (5, 3), (7, 7)])
def test_invariant_orthogonal_space_of_regular_block(p, n):
    u = jordan_block(FieldPrime(p), n)
    space = invariant_orthogonal_space(u)
    assert space.is_nondegenerate()
    assert is_isometry(u, space)

@pytest.mark.parametrize('p,n', [(2, 2), (3, 4), (5, 6)])
def test_invariant_symplectic_space_of_regular_block(p, n):
    u = jordan_block(FieldPrime(p), n)
    assert is_isometry(u, invariant_symplectic_space(u))

def test_invariant_quadratic_forms_require_characteristic_two():
    with pytest.raises(RuntimeError):
        invariant_quadratic_forms(jordan_block(FieldPrime(3), 3))

def test_first_nondegenerate_of_empty_basis():
    assert first_nondegenerate([], FieldPrime(2)) is None

def test_orthogonal_transvection_in_characteristic_two():
    F = FieldPrime(2)
    space = hyperbolic_space(F, 1)
    t = orthogonal_transvection(space, [1, 1])
    assert t == permutation_matrix(F, [1, 0])
    with pytest.raises(RuntimeError):
        orthogonal_transvection(space, [1, 0])

def test_reflection_in_odd_characteristic():
    F = FieldPrime(5)
    space = hyperbolic_space(F, 2)
    r = orthogonal_transvection(space, [1, 0, 1, 0])
    assert is_isometry(r, space)
    assert (r @ r).is_identity()

@pytest.mark.parametrize('p,c', [(2, 1), (3, 2), (5, 3)])
def test_symplectic_transvection_is_an_isometry(p, c):
    space = SympSpace.standard(FieldPrime(p), 2)
    t = symplectic_transvection(space, [1, 0, 1, 1], c)
    assert is_isometry(t, space)
    assert not t.is_identity()

def test_orthogonal_sum_rejects_mixed_kinds():
    F = FieldPrime(3)
    with pytest.raises(RuntimeError):
        orthogonal_sum(hyperbolic_space(F, 1), SympSpace.standard(F, 1))
