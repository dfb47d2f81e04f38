"""Shared test fixtures that are plain data: the symbolic word algebra used
for golden-formula checks, random chains, and cycle extraction."""

from fractions import Fraction
from itertools import product as iter_product

from excisionlab.algebra import Algebra, Ideal, make_split_basis
from excisionlab.chains import Chain, tuple_boundary_terms
from excisionlab.linalg import SparseMatrix, SparseVector, kernel_basis

WORD_CAP = 3  # longest product the inverse formula ever forms


class WordAlgebra:
    """Free algebra on the symbols f0..fn, e1..en, truncated above length 3.

    Products are concatenation (zero when too long), which is associative, so
    formula output can be compared symbol-for-symbol: distinct sign words
    stay distinct basis tuples.  The ideal is spanned by every word touching
    f0 or one of the e's; it is two-sided because concatenation preserves
    factors.
    """

    def __init__(self, n):
        self.n = n
        symbols = [f"f{i}" for i in range(n + 1)]
        symbols += [f"e{i}" for i in range(1, n + 1)]
        self.symbols = symbols

        def in_ideal(word):
            return any(s == 0 or s > n for s in word)

        words = []
        for length in range(1, WORD_CAP + 1):
            words.extend(iter_product(range(len(symbols)), repeat=length))
        ordered = [w for w in words if in_ideal(w)] + [
            w for w in words if not in_ideal(w)
        ]
        self.word_index = {w: i for i, w in enumerate(ordered)}
        dim = len(ordered)
        constants = {}
        for i, w1 in enumerate(ordered):
            for j, w2 in enumerate(ordered):
                joined = w1 + w2
                if len(joined) <= WORD_CAP:
                    constants[(i, j)] = SparseVector(
                        dim, {self.word_index[joined]: 1}
                    )
        labels = ["*".join(symbols[s] for s in w) for w in ordered]
        self.algebra = Algebra(dim, labels, constants)
        ideal_count = sum(1 for w in ordered if in_ideal(w))
        self.ideal = Ideal(
            self.algebra,
            [self.algebra.basis_vector(i) for i in range(ideal_count)],
        )
        self.split = make_split_basis(self.ideal)

    def f(self, i):
        return self.word_index[(i,)]

    def e(self, i):
        return self.word_index[(self.n + i,)]

    def word(self, *letters):
        """Index of a word given mixed letters like "f0", "e2"."""
        key = []
        for letter in letters:
            kind, num = letter[0], int(letter[1:])
            key.append(num if kind == "f" else self.n + num)
        return self.word_index[tuple(key)]

    def generator_tensor(self):
        """The symbolic pure tensor f0 ⊗ f1 ⊗ ... ⊗ fn."""
        return Chain(
            self.n, self.split, {tuple(self.f(i) for i in range(self.n + 1)): 1}
        )

    def unit_schedule(self):
        from excisionlab.units import UnitSchedule

        return UnitSchedule(
            [self.algebra.basis_vector(self.e(i)) for i in range(1, self.n + 1)]
        )


def random_chain(split, degree, rng, nterms=3, force_ideal_slot=False,
                 force_prefix=None):
    """Random sparse chain with small integer coefficients.

    force_ideal_slot plants one ideal index per tuple (relative chains);
    force_prefix=k makes the first k slots ideal (filtration chains).
    """
    dim = split.dimension
    ideal_count = split.ideal_count
    terms = {}
    for _ in range(nterms):
        tup = [rng.randrange(dim) for _ in range(degree + 1)]
        if force_prefix:
            for q in range(min(force_prefix, degree + 1)):
                tup[q] = rng.randrange(ideal_count)
        elif force_ideal_slot and ideal_count:
            tup[rng.randrange(degree + 1)] = rng.randrange(ideal_count)
        coeff = 0
        while coeff == 0:
            coeff = rng.randint(-3, 3)
        key = tuple(tup)
        terms[key] = terms.get(key, 0) + coeff
    return Chain(degree, split, {t: Fraction(c) for t, c in terms.items() if c})


def filtered_cycle_basis(split, degree, p):
    """Spanning cycles of ker(b) inside the filtration step F_p of the
    relative complex: basis tuples have their first degree+1-p slots ideal."""
    ideal_count = split.ideal_count
    dim = split.dimension
    leading = degree + 1 - p
    columns = []
    for tup in iter_product(range(dim), repeat=degree + 1):
        if all(i < ideal_count for i in tup[:leading]):
            columns.append(tup)
    rows = list(iter_product(range(dim), repeat=degree))
    row_index = {t: r for r, t in enumerate(rows)}
    entries = {}
    for c, tup in enumerate(columns):
        for t, v in tuple_boundary_terms(split, tup, wrap=True).items():
            entries[(row_index[t], c)] = v
    matrix = SparseMatrix(len(rows), len(columns), entries)
    cycles = []
    for vec in kernel_basis(matrix):
        cycles.append(
            Chain(degree, split, {columns[i]: v for i, v in vec.entries.items()})
        )
    return cycles
