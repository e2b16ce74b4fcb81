import logging
import numpy as np
from dataclasses import dataclass

from . import state
from .exactla import Matrix, _rref, inverse, kernel_basis, line_count, lines
from .forms import SubspaceBasis

logger = logging.getLogger(__name__)

# A module given by invertible generators. Projectors are extra linear maps in
# the algebra generated by the group (for instance the weight-space
# projections of a torus) that spinning must also respect; they need not be
# invertible.
@dataclass(frozen=True, eq=False)
class ModuleAction:
    generators: tuple
    projectors: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise RuntimeError("A module action requires at least one generator")
        first = gens[0]
        for g in gens + tuple(self.projectors):
            if not g.is_square() or g.rows != first.rows or g.field != first.field:
                raise RuntimeError("All generators must be square matrices of the same "
                                   "dimension over the same field")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "projectors", tuple(self.projectors))
        # Raises on singular generators.
        object.__setattr__(self, "_inverses", tuple(inverse(g) for g in gens))

    @property
    def field(self):
        return self.generators[0].field

    @property
    def dim(self):
        return self.generators[0].rows

    def maps(self):
        return self.generators + self._inverses + self.projectors

# Reduces each row of 'vecs' against an echelon basis with the given pivots.
def _reduce(vecs, basis, pivots, p):
    for i, c in enumerate(pivots):
        coeff = vecs[:, c].copy()
        if coeff.any():
            vecs = (vecs - np.outer(coeff, basis[i])) % p
    return vecs

def _spin_rows(seeds, maps, p, n):
    reduced, pivots = _rref(seeds.reshape(-1, n), p)
    basis = reduced[:len(pivots)]
    frontier = basis
    transposed = [m.data.T for m in maps]
    while len(frontier) and len(pivots) < n:
        images = np.vstack([(frontier @ t) % p for t in transposed])
        residues = _reduce(images, basis, pivots, p)
        new, new_pivots = _rref(residues, p)
        frontier = new[:len(new_pivots)]
        if not len(frontier):
            break
        reduced, pivots = _rref(np.vstack([basis, frontier]), p)
        basis = reduced[:len(pivots)]
    return basis

def spin(action, seeds):
    n = action.dim
    p = action.field.p
    rows = seeds.matrix.data if isinstance(seeds, SubspaceBasis) else np.asarray(seeds)
    basis = _spin_rows(np.asarray(rows, dtype=np.int64), action.maps(), p, n)
    return SubspaceBasis(Matrix(action.field, basis.reshape(-1, n)))

def is_invariant(action, s):
    return all(s.contains_subspace(s.image(g)) for g in action.maps())

def check_line_cap(p, n, cap=None):
    if cap is None:
        cap = state.get_line_cap()
    count = line_count(p, n)
    if count > cap:
        raise RuntimeError(f"Enumerating {count} lines of GF({p})^{n} exceeds the cap of {cap}")
    return count

# Spins every line in the deterministic lexicographic order and returns the
# first proper nonzero invariant subspace found, or None.
def find_invariant_subspace(action, cap=None):
    n = action.dim
    p = action.field.p
    count = check_line_cap(p, n, cap)
    logger.debug(f"Spinning {count} lines of GF({p})^{n}")
    maps = action.maps()
    for v in lines(action.field, n):
        basis = _spin_rows(v, maps, p, n)
        if len(basis) < n:
            return SubspaceBasis(Matrix(action.field, basis))
    return None

# Stacks the conditions M g - g M = 0 for every map, in the row-major entries
# of M.
def commutant_dimension(action):
    n = action.dim
    eye = np.eye(n, dtype=np.int64)
    blocks = [np.kron(eye, g.data.T) - np.kron(g.data, eye) for g in action.generators + action.projectors]
    coeffs = Matrix(action.field, np.vstack(blocks))
    return kernel_basis(coeffs).rows

@dataclass(frozen=True)
class IrreducibilityCertificate:
    irreducible: bool
    commutant_dim: int
    witness: object = None

    @property
    def absolutely_irreducible(self):
        return self.irreducible and self.commutant_dim == 1

    def __bool__(self):
        return self.absolutely_irreducible

def is_absolutely_irreducible(action, cap=None):
    witness = find_invariant_subspace(action, cap)
    return IrreducibilityCertificate(witness is None, commutant_dimension(action), witness)

def fixed_space(g):
    return SubspaceBasis(kernel_basis(g - Matrix.identity(g.field, g.rows)))
