import functools
import itertools
import numpy as np
from dataclasses import dataclass

MAX_CHARACTERISTIC = 251

@functools.lru_cache(maxsize=None)
def is_prime(n):
    if n < 2:
        return False
    return all(n % k != 0 for k in range(2, int(n ** 0.5) + 1))

# Inverses of all nonzero residues, computed once per prime by Fermat
# exponentiation.
@functools.lru_cache(maxsize=None)
def _inverse_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    inv.flags.writeable = False
    return inv

@dataclass(frozen=True)
class FieldPrime:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or isinstance(self.p, bool):
            raise RuntimeError(f"Field characteristic must be an integer, found {self.p!r}")
        object.__setattr__(self, "p", int(self.p))
        if not 2 <= self.p <= MAX_CHARACTERISTIC or not is_prime(int(self.p)):
            raise RuntimeError(f"Field characteristic must be a prime in "
                               f"[2, {MAX_CHARACTERISTIC}], found {self.p}")

    @property
    def inverses(self):
        return _inverse_table(self.p)

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise RuntimeError(f"Zero has no inverse in GF({self.p})")
        return int(self.inverses[x])

    def __str__(self):
        return f"GF({self.p})"

# Immutable dense matrix over a prime field. Entries are stored as a read-only
# int64 array of residues in [0, p). Matrices act on column vectors, while
# subspaces are represented by the rows of a matrix.
class Matrix:
    __slots__ = ("field", "data")

    def __init__(self, field, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise RuntimeError(f"Matrix data must be two-dimensional, found shape {arr.shape}")
        arr %= field.p
        arr.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __reduce__(self):
        return (Matrix, (self.field, self.data.copy()))

    @staticmethod
    def zeros(field, rows, cols):
        return Matrix(field, np.zeros((rows, cols), dtype=np.int64))

    @staticmethod
    def identity(field, n):
        return Matrix(field, np.eye(n, dtype=np.int64))

    @property
    def p(self):
        return self.field.p

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    @property
    def T(self):
        return Matrix(self.field, self.data.T)

    def is_square(self):
        return self.rows == self.cols

    def _check_compatible(self, other, op):
        if not isinstance(other, Matrix):
            raise RuntimeError(f"Cannot apply {op} to a matrix and {type(other).__name__}")
        if other.field != self.field:
            raise RuntimeError(f"Field mismatch in {op}: {self.field} and {other.field}")

    def __matmul__(self, other):
        self._check_compatible(other, "matrix product")
        if self.cols != other.rows:
            raise RuntimeError(f"Shape mismatch in matrix product: {self.shape} and {other.shape}")
        # Residues are below 251, so a dot product of length n stays well
        # within int64 for any dimension we can enumerate.
        return Matrix(self.field, (self.data @ other.data) % self.p)

    def __add__(self, other):
        self._check_compatible(other, "addition")
        if self.shape != other.shape:
            raise RuntimeError(f"Shape mismatch in addition: {self.shape} and {other.shape}")
        return Matrix(self.field, self.data + other.data)

    def __sub__(self, other):
        self._check_compatible(other, "subtraction")
        if self.shape != other.shape:
            raise RuntimeError(f"Shape mismatch in subtraction: {self.shape} and {other.shape}")
        return Matrix(self.field, self.data - other.data)

    def __neg__(self):
        return Matrix(self.field, -self.data)

    def scale(self, c):
        return Matrix(self.field, self.data * (int(c) % self.p))

    def __pow__(self, k):
        if not self.is_square():
            raise RuntimeError(f"Cannot raise a non-square matrix of shape {self.shape} to a power")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.p, self.shape, self.data.tobytes()))

    def __getitem__(self, idx):
        v = self.data[idx]
        if isinstance(v, np.ndarray):
            return v.copy()
        return int(v)

    def is_identity(self):
        return self.is_square() and np.array_equal(self.data, np.eye(self.rows, dtype=np.int64))

    def is_zero(self):
        return not self.data.any()

    def tolist(self):
        return [[int(x) for x in row] for row in self.data]

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()})"

# Gauss-Jordan elimination modulo p on a copy of the given array. Pivots are
# chosen as the first nonzero entry in column order, restricted to the first
# 'ncols' columns when given. Returns the fully reduced array (zero rows at
# the bottom) together with the list of pivot columns.
def _rref(arr, p, ncols=None):
    a = np.array(arr, dtype=np.int64) % p
    rows, cols = a.shape
    if ncols is None:
        ncols = cols
    inv = _inverse_table(p)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * inv[a[r, c]]) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots

def echelon(m):
    reduced, pivots = _rref(m.data, m.p)
    return Matrix(m.field, reduced[:len(pivots)]), pivots

def rank(m):
    _, pivots = _rref(m.data, m.p)
    return len(pivots)

def kernel_basis(m):
    reduced, pivots = _rref(m.data, m.p)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(pivots):
            basis[k, c] = -reduced[i, f]
    return Matrix(m.field, basis)

def solve_linear(coeffs, rhs):
    if coeffs.field != rhs.field:
        raise RuntimeError(f"Field mismatch in linear system: {coeffs.field} and {rhs.field}")
    if coeffs.rows != rhs.rows:
        raise RuntimeError(f"Shape mismatch in linear system: coefficients have "
                           f"{coeffs.rows} rows but right-hand side has {rhs.rows}")
    n = coeffs.cols
    aug = np.hstack([coeffs.data, rhs.data])
    reduced, pivots = _rref(aug, coeffs.p, ncols=n)
    if reduced[len(pivots):, n:].any():
        return None
    x = np.zeros((n, rhs.cols), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = reduced[i, n:]
    return Matrix(coeffs.field, x)

def inverse(m):
    if not m.is_square():
        raise RuntimeError(f"Cannot invert a non-square matrix of shape {m.shape}")
    x = solve_linear(m, Matrix.identity(m.field, m.rows))
    if x is None:
        raise RuntimeError(f"Cannot invert a singular {m.rows}x{m.rows} matrix over {m.field}")
    return x

def kronecker(a, b):
    if a.field != b.field:
        raise RuntimeError(f"Field mismatch in Kronecker product: {a.field} and {b.field}")
    return Matrix(a.field, np.kron(a.data, b.data))

def matrix_order(m, cap):
    if not m.is_square():
        raise RuntimeError(f"Cannot compute the order of a non-square matrix of shape {m.shape}")
    if rank(m) < m.rows:
        raise RuntimeError(f"Cannot compute the order of a singular matrix over {m.field}")
    power = m
    k = 1
    while not power.is_identity():
        k += 1
        if k > cap:
            return None
        power = power @ m
    return k

# The single unipotent Jordan block J_n = I + N, with ones on the
# superdiagonal, so J_n e_1 = e_1 and J_n e_j = e_j + e_{j-1}.
def jordan_block(field, n):
    return Matrix(field, np.eye(n, dtype=np.int64) + np.eye(n, k=1, dtype=np.int64))

def block_diag(*ms):
    if not ms:
        raise RuntimeError("Block diagonal matrix requires at least one block")
    field = ms[0].field
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for m in ms:
        if m.field != field:
            raise RuntimeError(f"Field mismatch in block diagonal: {field} and {m.field}")
        out[r:r+m.rows, c:c+m.cols] = m.data
        r += m.rows
        c += m.cols
    return Matrix(field, out)

# Permutation matrix sending basis vector e_i to e_{images[i]}.
def permutation_matrix(field, images):
    n = len(images)
    if sorted(images) != list(range(n)):
        raise RuntimeError(f"Not a permutation of {n} points: {images}")
    out = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(images):
        out[j, i] = 1
    return Matrix(field, out)

def line_count(p, n):
    return (p ** n - 1) // (p - 1)

# Yields normalized representatives (first nonzero coordinate 1) of all
# projective lines of GF(p)^n, in lexicographic order of the coordinate tuples.
def lines(field, n):
    p = field.p
    for lead in reversed(range(n)):
        tail = n - lead - 1
        for rest in itertools.product(range(p), repeat=tail):
            v = np.zeros(n, dtype=np.int64)
            v[lead] = 1
            v[lead+1:] = rest
            yield v

def determinant(m):
    if not m.is_square():
        raise RuntimeError(f"Cannot compute the determinant of a non-square matrix of shape {m.shape}")
    p = m.p
    inv = _inverse_table(p)
    a = m.data.copy()
    n = m.rows
    det = 1
    for c in range(n):
        nz = np.nonzero(a[c:, c])[0]
        if len(nz) == 0:
            return 0
        i = c + nz[0]
        if i != c:
            a[[c, i]] = a[[i, c]]
            det = -det
        det = (det * int(a[c, c])) % p
        factors = (a[c+1:, c] * inv[a[c, c]]) % p
        a[c+1:] = (a[c+1:] - np.outer(factors, a[c])) % p
    return det % p
