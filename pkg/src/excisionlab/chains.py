"""Sparse chain groups, the Hochschild/bar differentials, the cyclic operator,
coinvariants with canonical representatives, filtrations, and homology.

A degree-n chain lives in the (n+1)-fold tensor power of the algebra and is
stored as a sparse map from index tuples over a split basis to rational
coefficients.  Sign conventions:

    b (f0 ⊗ ... ⊗ fn)  =  sum_{i<n} (-1)^i f0 ⊗ ... ⊗ fi·f(i+1) ⊗ ... ⊗ fn
                          + (-1)^n fn·f0 ⊗ f1 ⊗ ... ⊗ f(n-1)
    b'                 =  b without the wrap-around term
    t (f0 ⊗ ... ⊗ fn)  =  (-1)^n fn ⊗ f0 ⊗ ... ⊗ f(n-1)

Coinvariants under t are represented by the lexicographically smallest signed
rotation of each tuple; a tuple equal to one of its own rotations with sign -1
represents the zero class and is dropped (we are over Q).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .linalg import (
    ONE,
    ZERO,
    IncrementalSpan,
    SparseMatrix,
    SparseVector,
    image_basis,
    kernel_basis,
)

DEFAULT_MAX_DEGREE = 4
MAX_DEGREE_ENV = "EXCISIONLAB_MAX_DEGREE"


class DegreeLimitError(RuntimeError):
    """Requested degree exceeds the configured resource cap."""


def resolve_max_degree(explicit=None):
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(MAX_DEGREE_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_MAX_DEGREE


class Chain:
    """Element of the (degree+1)-fold tensor power over a split basis.

    `terms` maps tuples of split-basis indices to nonzero coefficients.
    Chains are treated as immutable; all arithmetic returns new objects.
    """

    __slots__ = ("degree", "context", "terms")

    def __init__(self, degree, context, terms=None):
        self.degree = int(degree)
        if self.degree < 0:
            raise ValueError("chain degree must be non-negative")
        self.context = context
        width = self.degree + 1
        dim = context.dimension
        clean = {}
        if terms:
            for tup, coeff in terms.items():
                if len(tup) != width:
                    raise ValueError(
                        f"tuple {tup} has {len(tup)} slots, expected {width}"
                    )
                for index in tup:
                    if not 0 <= index < dim:
                        raise ValueError(f"slot index {index} out of range")
                coeff = Fraction(coeff)
                if coeff:
                    clean[tuple(tup)] = coeff
        self.terms = clean

    def _require_same_context(self, other):
        if self.context is not other.context and self.context != other.context:
            raise ValueError("chains live over different split bases")
        if self.degree != other.degree:
            raise ValueError("chains have different degrees")

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    def scaled(self, factor):
        factor = Fraction(factor)
        if not factor:
            return Chain(self.degree, self.context)
        return Chain(
            self.degree,
            self.context,
            {t: factor * c for t, c in self.terms.items()},
        )

    def __add__(self, other):
        self._require_same_context(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            nc = out.get(t, ZERO) + c
            if nc:
                out[t] = nc
            else:
                out.pop(t, None)
        return Chain(self.degree, self.context, out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def __eq__(self, other):
        return (
            isinstance(other, Chain)
            and self.degree == other.degree
            and self.terms == other.terms
            and (self.context is other.context or self.context == other.context)
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return f"Chain(degree={self.degree}, 0)"
        bits = []
        for tup, coeff in self.items():
            label = "⊗".join(self.context.split_label(i) for i in tup)
            bits.append(f"{coeff}·{label}")
        return f"Chain(degree={self.degree}, {' + '.join(bits)})"


def pure_tensor(context, indices, coeff=ONE):
    return Chain(len(indices) - 1, context, {tuple(indices): coeff})


def _accumulate(store, tup, coeff):
    nc = store.get(tup, ZERO) + coeff
    if nc:
        store[tup] = nc
    else:
        store.pop(tup, None)


def tuple_boundary_terms(context, tup, wrap=True):
    """Differential of a single basis tuple as a {tuple: coeff} dict.

    With wrap=True this is b, without it b'.  Products expand through the
    split-basis structure constants, so output tuples stay on the standard
    tensor basis.
    """
    n = len(tup) - 1
    out = {}
    sign = ONE
    for i in range(n):
        prod = context.mult_split(tup[i], tup[i + 1])
        for k, ck in prod.entries.items():
            _accumulate(out, tup[:i] + (k,) + tup[i + 2 :], sign * ck)
        sign = -sign
    if wrap:
        # sign is now (-1)^n
        prod = context.mult_split(tup[n], tup[0])
        for k, ck in prod.entries.items():
            _accumulate(out, (k,) + tup[1:n], sign * ck)
    return out


def boundary_b(chain):
    """Hochschild differential; defined for degree >= 1."""
    if chain.degree < 1:
        raise ValueError("the differential needs degree >= 1")
    out = {}
    for tup, coeff in chain.terms.items():
        for t, c in tuple_boundary_terms(chain.context, tup, wrap=True).items():
            _accumulate(out, t, coeff * c)
    return Chain(chain.degree - 1, chain.context, out)


def bar_boundary(chain):
    """Bar differential b' (no wrap-around term); defined for degree >= 1."""
    if chain.degree < 1:
        raise ValueError("the differential needs degree >= 1")
    out = {}
    for tup, coeff in chain.terms.items():
        for t, c in tuple_boundary_terms(chain.context, tup, wrap=False).items():
            _accumulate(out, t, coeff * c)
    return Chain(chain.degree - 1, chain.context, out)


def cyclic_t(chain):
    """Signed cyclic rotation; the identity in degree 0."""
    n = chain.degree
    sign = ONE if n % 2 == 0 else -ONE
    out = {}
    for tup, coeff in chain.terms.items():
        _accumulate(out, tup[-1:] + tup[:-1], sign * coeff)
    return Chain(n, chain.context, out)


def _rotation(tup, k):
    if k == 0:
        return tup
    return tup[-k:] + tup[:-k]


def canonical_rotation(tup):
    """(canonical tuple, sign) for the class of `tup` modulo signed rotation.

    Returns None when a self-rotation carries sign -1, which forces the class
    to vanish over Q.
    """
    n = len(tup) - 1
    best = None
    best_sign = None
    obstructed = False
    for k in range(n + 1):
        cand = _rotation(tup, k)
        sign = ONE if (n * k) % 2 == 0 else -ONE
        if best is None or cand < best:
            best = cand
            best_sign = sign
        elif cand == best and sign != best_sign:
            obstructed = True
    if obstructed:
        return None
    return best, best_sign


def is_canonical_tuple(tup):
    return canonical_rotation(tup) == (tup, ONE)


@dataclass(frozen=True)
class CyclicChain:
    """A chain in canonical form under signed rotation.

    Two chains represent the same coinvariant class exactly when their
    canonical forms are equal, so equality here is class equality.
    """

    chain: Chain

    def __post_init__(self):
        for tup in self.chain.terms:
            if not is_canonical_tuple(tup):
                raise ValueError(f"tuple {tup} is not in canonical form")

    @property
    def degree(self):
        return self.chain.degree

    @property
    def context(self):
        return self.chain.context

    def is_zero(self):
        return self.chain.is_zero()

    def __repr__(self):
        return f"Cyclic{self.chain!r}"


def canonicalize_cyclic(chain):
    """Canonical representative of the class of `chain` modulo im(1 - t)."""
    out = {}
    for tup, coeff in chain.terms.items():
        rotated = canonical_rotation(tup)
        if rotated is None:
            continue
        best, sign = rotated
        _accumulate(out, best, sign * coeff)
    return CyclicChain(Chain(chain.degree, chain.context, out))


def tensor_prepend(vector, chain):
    """The chain  vector ⊗ chain  in degree one higher.

    `vector` is in split coordinates.
    """
    out = {}
    for tup, coeff in chain.terms.items():
        for i, ci in vector.entries.items():
            _accumulate(out, (i,) + tup, coeff * ci)
    return Chain(chain.degree + 1, chain.context, out)


def is_ideal_chain(chain):
    """True when every stored slot lies in the ideal part of the basis."""
    context = chain.context
    return all(
        context.is_ideal_index(i) for tup in chain.terms for i in tup
    )


def relative_membership(chain):
    """True iff every stored tuple has at least one ideal slot."""
    context = chain.context
    for tup in chain.terms:
        if not any(context.is_ideal_index(i) for i in tup):
            return False
    return True


def filtration_level(chain):
    """Minimal p with chain ∈ F_p: counts leading ideal slots per tuple."""
    level = 0
    context = chain.context
    n = chain.degree
    for tup in chain.terms:
        leading = 0
        for i in tup:
            if context.is_ideal_index(i):
                leading += 1
            else:
                break
        level = max(level, max(0, n + 1 - leading))
    return level


def cyclic_filtration_level(chain):
    """Minimal p for the cyclic filtration: longest run of cyclically
    successive ideal slots per tuple."""
    level = 0
    context = chain.context
    n = chain.degree
    for tup in chain.terms:
        flags = [context.is_ideal_index(i) for i in tup]
        if all(flags):
            best = n + 1
        elif not any(flags):
            best = 0
        else:
            doubled = flags + flags
            best = run = 0
            for f in doubled:
                run = run + 1 if f else 0
                best = max(best, run)
            best = min(best, n + 1)
        level = max(level, max(0, n + 1 - best))
    return level


VARIANT_OPS = ("hh", "hc", "bar")
VARIANT_SPACES = ("A", "I", "relative")


@dataclass(frozen=True)
class Variant:
    """Which complex: Hochschild b, cyclic b on coinvariants, or bar b'."""

    op: str
    space: str

    def __post_init__(self):
        if self.op not in VARIANT_OPS:
            raise ValueError(f"unknown op {self.op!r}")
        if self.space not in VARIANT_SPACES:
            raise ValueError(f"unknown space {self.space!r}")


def basis_tuples(context, variant, degree):
    """Deterministic (lexicographic) basis of the requested chain group."""
    dim = context.dimension
    ideal_count = context.ideal_count
    if variant.space == "I":
        alphabet = range(ideal_count)
    else:
        alphabet = range(dim)
    tuples = iter_product(alphabet, repeat=degree + 1)
    if variant.space == "relative":
        tuples = (
            t for t in tuples if any(i < ideal_count for i in t)
        )
    if variant.op == "hc":
        tuples = (t for t in tuples if is_canonical_tuple(t))
    return list(tuples)


def _column_terms(context, variant, tup):
    wrap = variant.op != "bar"
    terms = tuple_boundary_terms(context, tup, wrap=wrap)
    if variant.op != "hc":
        return terms
    out = {}
    for t, c in terms.items():
        rotated = canonical_rotation(t)
        if rotated is None:
            continue
        best, sign = rotated
        _accumulate(out, best, sign * c)
    return out


def boundary_matrix(context, variant, degree):
    """The differential from degree to degree-1 as a sparse matrix.

    Returns (matrix, column tuples, row tuples); columns and rows are the
    deterministic bases produced by `basis_tuples`.
    """
    if degree < 1:
        raise ValueError("the boundary matrix needs degree >= 1")
    cols = basis_tuples(context, variant, degree)
    rows = basis_tuples(context, variant, degree - 1)
    row_index = {t: r for r, t in enumerate(rows)}
    entries = {}
    for c, tup in enumerate(cols):
        for t, v in _column_terms(context, variant, tup).items():
            entries[(row_index[t], c)] = v
    return SparseMatrix(len(rows), len(cols), entries), cols, rows


@dataclass
class HomologyReport:
    """Dimension and deterministic representative cycles of one homology group."""

    variant: Variant
    degree: int
    dimension: int
    space_dimension: int
    representatives: list

    def __repr__(self):
        return (
            f"HomologyReport({self.variant.op}/{self.variant.space}, "
            f"degree={self.degree}, dim={self.dimension})"
        )


def _vector_to_chain(context, variant, degree, tuples, vector):
    chain = Chain(
        degree, context, {tuples[i]: v for i, v in vector.entries.items()}
    )
    if variant.op == "hc":
        return CyclicChain(chain)
    return chain


def homology(context, variant, degree, max_degree=None):
    """Homology of the requested complex in one degree.

    Representatives are chosen deterministically: kernel basis vectors are
    kept, in order, whenever they are independent modulo the boundary image.
    """
    cap = resolve_max_degree(max_degree)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree > cap:
        raise DegreeLimitError(
            f"degree {degree} exceeds the configured maximum {cap}; the tensor "
            f"space grows as dim^(degree+1) — raise the cap explicitly or via "
            f"{MAX_DEGREE_ENV} if you really want this"
        )
    tuples = basis_tuples(context, variant, degree)
    n_cols = len(tuples)
    if degree == 0:
        cycles = [SparseVector.unit(n_cols, i) for i in range(n_cols)]
    else:
        matrix, cols, _ = boundary_matrix(context, variant, degree)
        assert cols == tuples
        cycles = kernel_basis(matrix)
    up_matrix, _, up_rows = boundary_matrix(context, variant, degree + 1)
    assert up_rows == tuples
    boundaries = image_basis(up_matrix)
    span = IncrementalSpan(n_cols)
    for v in boundaries:
        span.add(v)
    representatives = []
    for v in cycles:
        if span.add(v):
            representatives.append(
                _vector_to_chain(context, variant, degree, tuples, v)
            )
    dimension = len(cycles) - len(boundaries)
    assert dimension == len(representatives)
    return HomologyReport(
        variant=variant,
        degree=degree,
        dimension=dimension,
        space_dimension=n_cols,
        representatives=representatives,
    )
