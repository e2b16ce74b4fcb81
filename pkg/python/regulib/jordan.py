import functools
import numpy as np
from dataclasses import dataclass

from .exactla import FieldPrime, Matrix, jordan_block, kronecker, rank, is_prime

@dataclass(frozen=True)
class JordanType:
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if any(b < 1 for b in blocks):
            raise RuntimeError(f"Jordan blocks must be positive, found {list(blocks)}")
        if list(blocks) != sorted(blocks, reverse=True):
            raise RuntimeError(f"Jordan blocks must be weakly decreasing, found {list(blocks)}")
        object.__setattr__(self, "blocks", blocks)

    @staticmethod
    def of(blocks):
        return JordanType(tuple(sorted((b for b in blocks if b > 0), reverse=True)))

    @staticmethod
    def parse(text):
        text = text.strip()
        if not text:
            return JordanType(())
        try:
            blocks = [int(s) for s in text.split("+")]
        except ValueError:
            raise RuntimeError(f"Invalid partition '{text}', expected the form n1+n2+...")
        return JordanType(tuple(blocks))

    @property
    def dim(self):
        return sum(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self):
        return "+".join(str(b) for b in self.blocks)

def _check_prime(p):
    if not is_prime(p):
        raise RuntimeError(f"Expected a prime characteristic, found {p}")

def is_unipotent(u):
    if not u.is_square():
        return False
    n = u.rows
    nil = u - Matrix.identity(u.field, n)
    return (nil ** n).is_zero()

# Recovers the partition from the rank sequence r_k = rank((u - 1)^k). The
# number of blocks of size at least k is r_{k-1} - r_k.
def jordan_type(u):
    if not u.is_square():
        raise RuntimeError(f"Jordan type requires a square matrix, found shape {u.shape}")
    n = u.rows
    nil = u - Matrix.identity(u.field, n)
    ranks = [n]
    power = Matrix.identity(u.field, n)
    while ranks[-1] > 0:
        power = power @ nil
        r = rank(power)
        if r == ranks[-1]:
            raise RuntimeError(f"Matrix is not unipotent: rank of (u - 1)^k "
                               f"stabilizes at {r} over {u.field}")
        ranks.append(r)
    at_least = [ranks[k-1] - ranks[k] for k in range(1, len(ranks))] + [0]
    blocks = []
    for k in reversed(range(1, len(ranks))):
        blocks += [k] * (at_least[k-1] - at_least[k])
    return JordanType(tuple(blocks))

def jordan_power(t, p):
    _check_prime(p)
    blocks = []
    for n in t:
        a, b = divmod(n, p)
        blocks += [a + 1] * b + [a] * (p - b)
    return JordanType.of(blocks)

@functools.lru_cache(maxsize=None)
def _single_block_tensor(a, b, p):
    field = FieldPrime(p)
    return jordan_type(kronecker(jordan_block(field, a), jordan_block(field, b))).blocks

def jordan_tensor(s, t, p):
    _check_prime(p)
    blocks = []
    for a in s:
        for b in t:
            if a == 1 or b == 1:
                blocks += [max(a, b)] * min(a, b)
            else:
                blocks += _single_block_tensor(min(a, b), max(a, b), p)
    return JordanType.of(blocks)

def _pairs(n, strict):
    if strict:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    return [(i, j) for i in range(n) for j in range(i, n)]

# Matrix of the induced action on the exterior square, on the basis
# e_i ^ e_j (i < j) in lexicographic order.
def wedge2_matrix(u):
    if not u.is_square() or u.rows < 2:
        raise RuntimeError(f"Exterior square requires a square matrix of dimension at least 2, "
                           f"found shape {u.shape}")
    pairs = _pairs(u.rows, True)
    a = u.data
    k = np.array([i for i, _ in pairs])
    l = np.array([j for _, j in pairs])
    out = a[np.ix_(k, k)] * a[np.ix_(l, l)] - a[np.ix_(l, k)] * a[np.ix_(k, l)]
    return Matrix(u.field, out)

# Matrix of the induced action on the symmetric square, on the basis
# e_i e_j (i <= j) in lexicographic order.
def sym2_matrix(u):
    if not u.is_square() or u.rows < 2:
        raise RuntimeError(f"Symmetric square requires a square matrix of dimension at least 2, "
                           f"found shape {u.shape}")
    pairs = _pairs(u.rows, False)
    a = u.data
    k = np.array([i for i, _ in pairs])
    l = np.array([j for _, j in pairs])
    out = a[np.ix_(k, k)] * a[np.ix_(l, l)] + a[np.ix_(l, k)] * a[np.ix_(k, l)]
    diag = k == l
    out[diag] = a[np.ix_(k[diag], k)] * a[np.ix_(k[diag], l)]
    return Matrix(u.field, out)

def jordan_wedge2(u):
    return jordan_type(wedge2_matrix(u))

def jordan_sym2(u):
    return jordan_type(sym2_matrix(u))

def unipotent_order(t, p):
    _check_prime(p)
    largest = max(t.blocks, default=1)
    q = 1
    while q < largest:
        q *= p
    return q
