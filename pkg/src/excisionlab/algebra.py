"""Finite-dimensional associative algebras over Q given by structure constants.

An algebra here need not be commutative and need not have a unit.  Ideals are
two-sided; a split basis lists an ideal basis first and a complement lifting
a basis of the quotient, and every chain-level computation downstream runs in
the coordinates of that ordered basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    ONE,
    IncrementalSpan,
    NotInSpan,
    SparseMatrix,
    SparseVector,
    in_span,
    invert,
)


class Algebra:
    """Algebra presented extensionally: a basis and all pairwise products.

    `structure_constants` maps (i, j) to the coordinates of e_i * e_j; absent
    pairs multiply to zero.  Associativity is not checked at construction,
    call `validate_algebra` for that.
    """

    __slots__ = ("dimension", "basis_labels", "structure_constants")

    def __init__(self, dimension, basis_labels, structure_constants):
        self.dimension = int(dimension)
        if len(basis_labels) != self.dimension:
            raise ValueError("one label per basis element required")
        self.basis_labels = list(basis_labels)
        clean = {}
        for (i, j), vec in structure_constants.items():
            i, j = int(i), int(j)
            if not (0 <= i < self.dimension and 0 <= j < self.dimension):
                raise ValueError(f"product index ({i}, {j}) out of range")
            if vec.dimension != self.dimension:
                raise ValueError(f"product ({i}, {j}) has wrong dimension")
            if not vec.is_zero():
                clean[(i, j)] = vec
        self.structure_constants = clean

    def mul_basis(self, i, j):
        """Product of basis elements i and j, as coordinates."""
        vec = self.structure_constants.get((i, j))
        if vec is None:
            return SparseVector(self.dimension)
        return vec

    def mul(self, u, v):
        """Bilinear product of two coordinate vectors."""
        out = SparseVector(self.dimension)
        for i, ci in u.entries.items():
            for j, cj in v.entries.items():
                prod = self.structure_constants.get((i, j))
                if prod is not None:
                    out = out + prod.scaled(ci * cj)
        return out

    def zero(self):
        return SparseVector(self.dimension)

    def basis_vector(self, i):
        return SparseVector.unit(self.dimension, i)

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.dimension == other.dimension
            and self.basis_labels == other.basis_labels
            and self.structure_constants == other.structure_constants
        )

    def __hash__(self):
        return hash((self.dimension, tuple(self.basis_labels)))

    def __repr__(self):
        return f"Algebra(dim={self.dimension}, labels={self.basis_labels})"


@dataclass(frozen=True)
class AssociativityFailure:
    """Witnessing triple with both associations expanded."""

    i: int
    j: int
    k: int
    left_product: SparseVector
    right_product: SparseVector


def validate_algebra(algebra):
    """Check all dimension^3 associativity identities.

    Returns None when the structure constants define an associative product,
    otherwise the first failing triple in lexicographic order.
    """
    d = algebra.dimension
    for i in range(d):
        for j in range(d):
            ij = algebra.mul_basis(i, j)
            for k in range(d):
                left = algebra.mul(ij, algebra.basis_vector(k))
                right = algebra.mul(algebra.basis_vector(i), algebra.mul_basis(j, k))
                if left != right:
                    return AssociativityFailure(i, j, k, left, right)
    return None


class Ideal:
    """A two-sided ideal, given by linearly independent basis vectors."""

    __slots__ = ("parent", "basis_vectors")

    def __init__(self, parent, basis_vectors):
        self.parent = parent
        vectors = list(basis_vectors)
        for v in vectors:
            if v.dimension != parent.dimension:
                raise ValueError("ideal vector dimension differs from the parent")
        self.basis_vectors = vectors

    @property
    def dimension(self):
        return len(self.basis_vectors)

    def __eq__(self, other):
        return (
            isinstance(other, Ideal)
            and self.parent == other.parent
            and self.basis_vectors == other.basis_vectors
        )

    def __repr__(self):
        return f"Ideal(dim={self.dimension} in {self.parent!r})"


@dataclass(frozen=True)
class NotTwoSided:
    """A product that escapes the span: side is "left" for a*x, "right" for x*a."""

    side: str
    algebra_index: int
    ideal_index: int
    product: SparseVector


def validate_ideal(ideal):
    """Check linear independence and two-sidedness.

    Dependent basis vectors are a malformed input and raise; a product
    escaping the span is the mathematically interesting failure and is
    returned as a NotTwoSided witness.
    """
    span = IncrementalSpan(ideal.parent.dimension)
    for idx, v in enumerate(ideal.basis_vectors):
        if not span.add(v):
            raise ValueError(f"ideal basis vector {idx} depends on the previous ones")
    algebra = ideal.parent
    for a in range(algebra.dimension):
        ea = algebra.basis_vector(a)
        for x_idx, x in enumerate(ideal.basis_vectors):
            left = algebra.mul(ea, x)
            if not span.contains(left):
                return NotTwoSided("left", a, x_idx, left)
            right = algebra.mul(x, ea)
            if not span.contains(right):
                return NotTwoSided("right", a, x_idx, right)
    return None


class SplitBasis:
    """Ordered basis of the parent algebra with the ideal basis first.

    The first `ideal_count` vectors span the ideal; the remaining ones lift a
    basis of the quotient.  Provides the coordinate change between parent and
    split coordinates and caches products of split basis elements, which is
    what all chain computations consume.
    """

    def __init__(self, ideal, ordered_basis, ideal_count):
        self.ideal = ideal
        self.parent = ideal.parent
        self.ordered_basis = list(ordered_basis)
        self.ideal_count = int(ideal_count)
        self.dimension = self.parent.dimension
        if len(self.ordered_basis) != self.dimension:
            raise ValueError("ordered basis must span the parent algebra")
        forward = SparseMatrix.from_columns(self.ordered_basis, rows=self.dimension)
        backward = invert(forward)
        # column-major storage of the inverse, for fast parent->split conversion
        self._backward_cols = [backward.column(j) for j in range(self.dimension)]
        self._mult_cache = {}

    def is_ideal_index(self, i):
        return i < self.ideal_count

    def to_split(self, vector):
        """Parent coordinates -> coordinates over the ordered basis."""
        out = SparseVector(self.dimension)
        for j, v in vector.entries.items():
            out = out + self._backward_cols[j].scaled(v)
        return out

    def from_split(self, vector):
        out = SparseVector(self.dimension)
        for j, v in vector.entries.items():
            out = out + self.ordered_basis[j].scaled(v)
        return out

    def mult_split(self, i, j):
        """Product of split basis elements i and j, in split coordinates."""
        cached = self._mult_cache.get((i, j))
        if cached is None:
            parent_product = self.parent.mul(self.ordered_basis[i], self.ordered_basis[j])
            cached = self.to_split(parent_product)
            self._mult_cache[(i, j)] = cached
        return cached

    def mult_basis_vec(self, i, vec):
        """Product (split basis element i) * (split-coordinate vector)."""
        out = SparseVector(self.dimension)
        for j, cj in vec.entries.items():
            out = out + self.mult_split(i, j).scaled(cj)
        return out

    def mult_vec_basis(self, vec, j):
        out = SparseVector(self.dimension)
        for i, ci in vec.entries.items():
            out = out + self.mult_split(i, j).scaled(ci)
        return out

    def mult_vec(self, u, v):
        out = SparseVector(self.dimension)
        for i, ci in u.entries.items():
            out = out + self.mult_basis_vec(i, v).scaled(ci)
        return out

    def split_label(self, i):
        """Human-readable name of split position i."""
        vec = self.ordered_basis[i]
        if len(vec.entries) == 1:
            ((k, v),) = vec.entries.items()
            if v == ONE:
                return self.parent.basis_labels[k]
        return f"v{i}"

    def __eq__(self, other):
        return (
            isinstance(other, SplitBasis)
            and self.parent == other.parent
            and self.ordered_basis == other.ordered_basis
            and self.ideal_count == other.ideal_count
        )

    def __repr__(self):
        return (
            f"SplitBasis(dim={self.dimension}, ideal_count={self.ideal_count})"
        )


def make_split_basis(ideal, complement_hint=None):
    """Complete the ideal basis to a basis of the parent algebra.

    Without a hint the complement is filled greedily with standard coordinate
    vectors in index order, so the result is reproducible.  Hint vectors that
    are dependent on the ideal (or each other) are rejected.
    """
    algebra = ideal.parent
    span = IncrementalSpan(algebra.dimension)
    ordered = []
    for v in ideal.basis_vectors:
        if not span.add(v):
            raise ValueError("ideal basis is not linearly independent")
        ordered.append(v)
    ideal_count = len(ordered)
    if complement_hint is not None:
        for idx, v in enumerate(complement_hint):
            if v.dimension != algebra.dimension:
                raise ValueError("complement vector has wrong dimension")
            if not span.add(v):
                raise ValueError(
                    f"complement hint vector {idx} depends on the ideal"
                )
            ordered.append(v)
    for i in range(algebra.dimension):
        if len(ordered) == algebra.dimension:
            break
        candidate = algebra.basis_vector(i)
        if span.add(candidate):
            ordered.append(candidate)
    if len(ordered) != algebra.dimension:
        raise ValueError("could not complete the ideal basis to a full basis")
    return SplitBasis(ideal, ordered, ideal_count)


class QuotientAlgebra:
    """The algebra A/I realized on the complement positions of a split basis."""

    __slots__ = ("source", "split", "algebra")

    def __init__(self, source, split, algebra):
        self.source = source
        self.split = split
        self.algebra = algebra

    def project(self, vector):
        """Parent coordinates -> quotient coordinates (split tail)."""
        split_coords = self.split.to_split(vector)
        shift = self.split.ideal_count
        qdim = self.algebra.dimension
        return SparseVector(
            qdim,
            {i - shift: v for i, v in split_coords.entries.items() if i >= shift},
        )

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.algebra.dimension})"


def quotient(split):
    """Quotient of the parent by the ideal encoded in the split basis.

    Structure constants come from multiplying complement representatives and
    projecting; multiplicativity of the projection is verified on all basis
    pairs before returning.
    """
    parent = split.parent
    shift = split.ideal_count
    qdim = parent.dimension - shift
    labels = []
    for i in range(shift, parent.dimension):
        labels.append(f"[{split.split_label(i)}]")
    constants = {}
    for a in range(qdim):
        for b in range(qdim):
            prod = split.mult_split(shift + a, shift + b)
            tail = {
                i - shift: v for i, v in prod.entries.items() if i >= shift
            }
            if tail:
                constants[(a, b)] = SparseVector(qdim, tail)
    derived = Algebra(qdim, labels, constants)
    result = QuotientAlgebra(parent, split, derived)
    for i in range(parent.dimension):
        for j in range(parent.dimension):
            lhs = result.project(parent.mul_basis(i, j))
            pi = result.project(parent.basis_vector(i))
            pj = result.project(parent.basis_vector(j))
            if lhs != derived.mul(pi, pj):
                raise ValueError(
                    f"projection is not multiplicative on basis pair ({i}, {j}); "
                    "the subspace is not a two-sided ideal"
                )
    return result


def opposite_algebra(algebra):
    """Same underlying space with the reversed product: (i, j) -> product(j, i)."""
    constants = {
        (j, i): vec for (i, j), vec in algebra.structure_constants.items()
    }
    return Algebra(algebra.dimension, list(algebra.basis_labels), constants)


def element_in_ideal(ideal, vector):
    """Expansion of `vector` over the ideal basis, or NotInSpan."""
    return in_span(vector, ideal.basis_vectors)


def is_in_ideal(ideal, vector):
    return not isinstance(element_in_ideal(ideal, vector), NotInSpan)
