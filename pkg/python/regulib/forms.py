import itertools
import numpy as np
from dataclasses import dataclass

from .exactla import Matrix, echelon, kernel_basis, rank

class NoInvariantForm(RuntimeError):
    pass

def _square(m, what):
    if not m.is_square():
        raise RuntimeError(f"{what} must be square, found shape {m.shape}")

# A quadratic form Q(x) = sum_{i <= j} q_ij x_i x_j stored by its upper
# triangular coefficients, together with the polarized bilinear form
# B(x, y) = Q(x + y) - Q(x) - Q(y). In odd characteristic the same type
# represents a symmetric form, with q_ii = gram_ii / 2.
@dataclass(frozen=True, eq=False)
class QuadSpace:
    quad: Matrix
    gram: Matrix

    @staticmethod
    def from_quad(quad):
        _square(quad, "Quadratic form coefficients")
        q = quad.data
        upper = np.triu(q) + np.triu(q.T, 1)
        upper = Matrix(quad.field, upper)
        return QuadSpace(upper, upper + upper.T)

    @staticmethod
    def from_gram(gram):
        _square(gram, "Gram matrix")
        if gram.p == 2:
            raise RuntimeError("A symmetric Gram matrix does not determine a quadratic form "
                               "in characteristic 2")
        if gram != gram.T:
            raise RuntimeError("Gram matrix of an orthogonal space must be symmetric")
        half = gram.field.inv(2)
        q = np.triu(gram.data, 1) + np.diag(np.diag(gram.data) * half)
        return QuadSpace(Matrix(gram.field, q), gram)

    @property
    def field(self):
        return self.quad.field

    @property
    def dim(self):
        return self.quad.rows

    def value(self, v):
        v = np.asarray(v, dtype=np.int64)
        return int(v @ self.quad.data @ v) % self.field.p

    def bilinear(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return int(x @ self.gram.data @ y) % self.field.p

    # In characteristic 2 an odd-dimensional space has a radical of dimension
    # one in its bilinear form; the quadratic form is nondegenerate when it does
    # not vanish on that radical.
    def is_nondegenerate(self):
        r = rank(self.gram)
        if r == self.dim:
            return True
        if self.field.p == 2 and self.dim % 2 == 1 and r == self.dim - 1:
            rad = kernel_basis(self.gram)
            return self.value(rad.data[0]) != 0
        return False

    def __eq__(self, other):
        return isinstance(other, QuadSpace) and self.quad == other.quad

    def __hash__(self):
        return hash(self.quad)

@dataclass(frozen=True, eq=False)
class SympSpace:
    gram: Matrix

    def __post_init__(self):
        _square(self.gram, "Gram matrix")
        g = self.gram
        if g.rows % 2 != 0:
            raise RuntimeError(f"Symplectic space must have even dimension, found {g.rows}")
        if g != -g.T or np.diag(g.data).any():
            raise RuntimeError("Gram matrix of a symplectic space must be alternating")
        if rank(g) != g.rows:
            raise RuntimeError("Gram matrix of a symplectic space must be nondegenerate")

    @staticmethod
    def standard(field, l):
        g = np.zeros((2 * l, 2 * l), dtype=np.int64)
        g[:l, l:] = np.eye(l, dtype=np.int64)
        g[l:, :l] = -np.eye(l, dtype=np.int64)
        return SympSpace(Matrix(field, g))

    @property
    def field(self):
        return self.gram.field

    @property
    def dim(self):
        return self.gram.rows

    def bilinear(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return int(x @ self.gram.data @ y) % self.field.p

    def __eq__(self, other):
        return isinstance(other, SympSpace) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

# A subspace given by the rows of a matrix in reduced echelon form, so that
# equal subspaces have equal representations.
@dataclass(frozen=True)
class SubspaceBasis:
    matrix: Matrix

    @staticmethod
    def span(field, rows, dim=None):
        arr = np.array(rows, dtype=np.int64)
        if arr.size == 0:
            if dim is None:
                raise RuntimeError("Dimension of the ambient space is required for an empty span")
            arr = np.zeros((0, dim), dtype=np.int64)
        elif arr.ndim == 1:
            arr = arr.reshape(1, -1)
        basis, _ = echelon(Matrix(field, arr))
        return SubspaceBasis(basis)

    @staticmethod
    def whole(field, n):
        return SubspaceBasis(Matrix.identity(field, n))

    @property
    def field(self):
        return self.matrix.field

    @property
    def dim(self):
        return self.matrix.rows

    @property
    def ambient_dim(self):
        return self.matrix.cols

    def vectors(self):
        return [row.copy() for row in self.matrix.data]

    def contains(self, v):
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank(Matrix(self.field, np.vstack([self.matrix.data, v]))) == self.dim

    def contains_subspace(self, other):
        return rank(Matrix(self.field, np.vstack([self.matrix.data, other.matrix.data]))) == self.dim

    def image(self, g):
        return SubspaceBasis.span(self.field, (self.matrix @ g.T).data, self.ambient_dim)

    def join(self, other):
        return SubspaceBasis.span(self.field, np.vstack([self.matrix.data, other.matrix.data]),
                                  self.ambient_dim)

    def tolist(self):
        return self.matrix.tolist()

def _check_space_dim(g, space):
    _square(g, "Isometry candidate")
    if g.rows != space.dim:
        raise RuntimeError(f"Shape mismatch: matrix of dimension {g.rows} on a space "
                           f"of dimension {space.dim}")

def is_isometry(g, space):
    _check_space_dim(g, space)
    if g.T @ space.gram @ g != space.gram:
        return False
    if isinstance(space, QuadSpace):
        return all(space.value(g.data[:, i]) == space.quad[i, i] for i in range(g.rows))
    return True

def is_totally_singular(s, space):
    rows = s.matrix
    if (rows @ space.gram @ rows.T).data.any():
        return False
    if isinstance(space, QuadSpace):
        return all(space.value(v) == 0 for v in rows.data)
    return True

def perp(s, space):
    return SubspaceBasis(kernel_basis(s.matrix @ space.gram))

def dickson(g, space):
    if space.field.p != 2:
        raise RuntimeError(f"The Dickson invariant is defined in characteristic 2 only, "
                           f"found characteristic {space.field.p}")
    if not is_isometry(g, space):
        raise RuntimeError("The Dickson invariant requires an isometry of the quadratic space")
    return rank(g - Matrix.identity(g.field, g.rows)) % 2

def _as_generators(u):
    gens = [u] if isinstance(u, Matrix) else list(u)
    if not gens:
        raise RuntimeError("At least one matrix is required")
    n = gens[0].rows
    for g in gens:
        if not g.is_square() or g.rows != n or g.field != gens[0].field:
            raise RuntimeError("All matrices must be square of the same dimension and field")
    return gens

# Solves the linear system u^T B u = B (for every given u) in the n^2 entries
# of B, stored row-major, together with the constraints of the requested kind.
def invariant_bilinear_forms(u, kind):
    if kind not in ("alternating", "symmetric"):
        raise RuntimeError(f"Unsupported bilinear form kind '{kind}'")
    gens = _as_generators(u)
    field = gens[0].field
    n = gens[0].rows
    eye = np.eye(n * n, dtype=np.int64)
    blocks = [np.kron(g.data.T, g.data.T) - eye for g in gens]
    constraints = []
    for i in range(n):
        for j in range(i, n):
            row = np.zeros(n * n, dtype=np.int64)
            if i == j:
                if kind == "alternating":
                    row[i * n + i] = 1
                    constraints.append(row)
                continue
            row[i * n + j] = 1
            row[j * n + i] = 1 if kind == "alternating" else -1
            constraints.append(row)
    if constraints:
        blocks.append(np.array(constraints))
    basis = kernel_basis(Matrix(field, np.vstack(blocks)))
    forms = [Matrix(field, row.reshape(n, n)) for row in basis.data]
    for b in forms:
        if not all(g.T @ b @ g == b for g in gens):
            raise RuntimeError("Solved bilinear form failed direct invariance check")
    return forms

# Solves for quadratic forms in the n(n+1)/2 coefficients q_ij (i <= j),
# requiring Q(u e_i) = Q(e_i) for every basis vector and u^T G u = G for the
# polarized Gram matrix G.
def invariant_quadratic_forms(u):
    gens = _as_generators(u)
    field = gens[0].field
    if field.p != 2:
        raise RuntimeError(f"Invariant quadratic forms are solved in characteristic 2 only, "
                           f"found characteristic {field.p}")
    n = gens[0].rows
    variables = [(i, j) for i in range(n) for j in range(i, n)]
    columns = []
    for (a, b) in variables:
        col = []
        e = np.zeros((n, n), dtype=np.int64)
        e[a, b] = 1
        polar = e + e.T
        for g in gens:
            x = g.data
            for i in range(n):
                col.append(x[a, i] * x[b, i] - (1 if a == b == i else 0))
            col += list((x.T @ polar @ x - polar).reshape(-1))
        columns.append(col)
    coeffs = Matrix(field, np.array(columns, dtype=np.int64).T)
    spaces = []
    for row in kernel_basis(coeffs).data:
        q = np.zeros((n, n), dtype=np.int64)
        for (a, b), c in zip(variables, row):
            q[a, b] = c
        spaces.append(QuadSpace.from_quad(Matrix(field, q)))
    for space in spaces:
        if not all(is_isometry(g, space) for g in gens):
            raise RuntimeError("Solved quadratic form failed direct invariance check")
    return spaces

def _is_nondegenerate_matrix(m):
    return rank(m) == m.rows

# Picks the first nondegenerate linear combination of the given basis, in
# lexicographic order of the coefficient tuples over GF(p) (the zero tuple
# excluded). Works for Gram matrices and quadratic spaces alike.
def first_nondegenerate(basis, field):
    if not basis:
        return None
    p = field.p
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        if isinstance(basis[0], QuadSpace):
            quad = sum((s.quad.scale(c) for s, c in zip(basis, coeffs)),
                       Matrix.zeros(field, basis[0].dim, basis[0].dim))
            candidate = QuadSpace.from_quad(quad)
            if candidate.is_nondegenerate():
                return candidate
        else:
            gram = sum((b.scale(c) for b, c in zip(basis, coeffs)),
                       Matrix.zeros(field, basis[0].rows, basis[0].cols))
            if _is_nondegenerate_matrix(gram):
                return gram
    return None

def invariant_symplectic_space(u):
    gens = _as_generators(u)
    gram = first_nondegenerate(invariant_bilinear_forms(gens, "alternating"), gens[0].field)
    if gram is None:
        raise NoInvariantForm("No nondegenerate invariant alternating form exists")
    return SympSpace(gram)

def invariant_orthogonal_space(u):
    gens = _as_generators(u)
    field = gens[0].field
    if field.p == 2:
        space = first_nondegenerate(invariant_quadratic_forms(gens), field)
    else:
        gram = first_nondegenerate(invariant_bilinear_forms(gens, "symmetric"), field)
        space = None if gram is None else QuadSpace.from_gram(gram)
    if space is None:
        raise NoInvariantForm("No nondegenerate invariant quadratic form exists")
    return space

# Hyperbolic space on the basis e_1, ..., e_l, f_1, ..., f_l with
# Q(sum a_i e_i + sum b_i f_i) = sum a_i b_i.
def hyperbolic_space(field, l):
    q = np.zeros((2 * l, 2 * l), dtype=np.int64)
    q[:l, l:] = np.eye(l, dtype=np.int64)
    return QuadSpace.from_quad(Matrix(field, q))

def orthogonal_sum(*spaces):
    if not spaces:
        raise RuntimeError("Orthogonal sum requires at least one space")
    field = spaces[0].field
    n = sum(s.dim for s in spaces)
    if all(isinstance(s, QuadSpace) for s in spaces):
        q = np.zeros((n, n), dtype=np.int64)
        k = 0
        for s in spaces:
            q[k:k+s.dim, k:k+s.dim] = s.quad.data
            k += s.dim
        return QuadSpace.from_quad(Matrix(field, q))
    if all(isinstance(s, SympSpace) for s in spaces):
        g = np.zeros((n, n), dtype=np.int64)
        k = 0
        for s in spaces:
            g[k:k+s.dim, k:k+s.dim] = s.gram.data
            k += s.dim
        return SympSpace(Matrix(field, g))
    raise RuntimeError("Orthogonal sum requires spaces of the same kind")

# x -> x - B(x, a) Q(a)^-1 a. A reflection in odd characteristic and an
# orthogonal transvection in characteristic 2; Dickson invariant 1 in the
# latter case.
def orthogonal_transvection(space, a):
    a = np.asarray(a, dtype=np.int64) % space.field.p
    qa = space.value(a)
    if qa == 0:
        raise RuntimeError("Orthogonal transvection requires a nonsingular vector")
    c = space.field.inv(qa)
    n = space.dim
    ga = (space.gram.data @ a) % space.field.p
    return Matrix(space.field, np.eye(n, dtype=np.int64) - c * np.outer(a, ga))

# x -> x + c B(x, v) v
def symplectic_transvection(space, v, c=1):
    v = np.asarray(v, dtype=np.int64) % space.field.p
    gv = (space.gram.data @ v) % space.field.p
    return Matrix(space.field, np.eye(space.dim, dtype=np.int64) + c * np.outer(v, gv))

def singular_vectors(space, vectors):
    if isinstance(space, SympSpace):
        return list(vectors)
    return [v for v in vectors if space.value(v) == 0]
