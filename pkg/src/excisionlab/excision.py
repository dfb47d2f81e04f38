"""The excision map, filtration descent, the closed inverse formula, and
machine-checkable certificates for every homology equality produced.

Certificates reify the homotopies of the underlying arguments: a descent
certificate records the exact identity  input − output = b(G) + e ⊗ b(input),
a boundary certificate records a degree-(n+1) witness η whose boundary equals
a claimed-homologous difference, and an inverse result bundles the unit
schedule with a boundary certificate for  ρ(output) ≡ input.  Verification
re-expands every identity from scratch, so a tampered certificate is caught
by exact residual arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .chains import (
    Chain,
    CyclicChain,
    Variant,
    basis_tuples,
    boundary_b,
    boundary_matrix,
    canonicalize_cyclic,
    homology,
    is_ideal_chain,
    relative_membership,
    tensor_prepend,
)
from .linalg import ONE, SparseMatrix, SparseVector, Unsolvable, solve
from .units import build_unit_schedule


class UnitActionError(ValueError):
    """The supplied element fails to act as a left unit on an initial slot."""

    def __init__(self, tail, head):
        self.tail = tail
        self.head = head
        super().__init__(
            f"element is not a left unit on the initial content {head!r} "
            f"(tensor tail {tail})"
        )


class ScheduleMismatchError(ValueError):
    """The unit schedule does not cover the slots of the given chain."""


class CertificateSearchError(RuntimeError):
    """The boundary-witness system is unsolvable.

    This cannot happen for inputs satisfying the local-unit hypotheses — it
    would falsify the excision isomorphism — so the full linear system is
    attached for inspection.
    """

    def __init__(self, message, matrix, rhs, columns):
        self.matrix = matrix
        self.rhs = rhs
        self.columns = columns
        super().__init__(message)


@dataclass(frozen=True)
class DescentCertificate:
    """One descent step with its explicit homotopy.

    The defining identity, valid whether or not the input is a cycle:
        input − output = b(homotopy) + e ⊗ b(input)
    where e is the unit (parent coordinates) and homotopy = e ⊗ input.
    """

    input: Chain
    output: Chain
    homotopy: Chain
    unit: SparseVector


@dataclass(frozen=True)
class BoundaryCertificate:
    """Claim that lhs ≡ rhs, witnessed by η with b(η) = lhs − rhs.

    op "hh" compares strictly; op "hc" compares canonical forms modulo the
    signed rotation.  space tags where the witness must live: "I" means all
    slots ideal, "relative" means at least one ideal slot per tuple.
    """

    lhs: Chain
    rhs: Chain
    witness: Chain
    op: str
    space: str


@dataclass(frozen=True)
class InverseResult:
    """Inverse image of a relative cycle with its verification data."""

    input: Chain
    schedule: object
    output: Chain
    verification: BoundaryCertificate


@dataclass(frozen=True)
class Mismatch:
    """Verification failure: the exact residual of the claimed identity."""

    reason: str
    residual: Chain | None = None


def rho(cyclic_chain):
    """The excision map: a chain over the ideal, read inside the ambient
    algebra.  On the standard tensor basis this is the identity on tuples."""
    chain = cyclic_chain.chain
    if not is_ideal_chain(chain):
        raise ValueError("rho needs every slot inside the ideal")
    return CyclicChain(Chain(chain.degree, chain.context, dict(chain.terms)))


def rotate_to_ideal_initial(chain_or_class):
    """Rotate each term so its lowest-position ideal slot sits in slot 0.

    Accepts a plain chain or a canonical class; the output is a chain whose
    initial slots all lie in the ideal and whose canonical form is unchanged.
    """
    chain = (
        chain_or_class.chain
        if isinstance(chain_or_class, CyclicChain)
        else chain_or_class
    )
    context = chain.context
    n = chain.degree
    out = {}
    for tup, coeff in chain.terms.items():
        position = None
        for q, i in enumerate(tup):
            if context.is_ideal_index(i):
                position = q
                break
        if position is None:
            raise ValueError(
                f"tuple {tup} has no ideal slot; the chain is not relative"
            )
        k = (n + 1 - position) % (n + 1)
        sign = ONE if (n * k) % 2 == 0 else -ONE
        rotated = tup[-k:] + tup[:-k] if k else tup
        new = out.get(rotated, Fraction(0)) + sign * coeff
        if new:
            out[rotated] = new
        else:
            out.pop(rotated, None)
    return Chain(n, context, out)


def _initial_heads_by_tail(chain):
    """Group slot-0 content by the remaining slots, as split-coordinate
    vectors.  This is the exact shape of the left-unit hypothesis."""
    context = chain.context
    heads = {}
    for tup, coeff in chain.terms.items():
        tail = tup[1:]
        vec = heads.get(tail)
        if vec is None:
            vec = SparseVector(context.dimension)
        heads[tail] = vec + SparseVector(
            context.dimension, {tup[0]: coeff}
        )
    return heads


def _check_left_unit(chain, unit_split):
    context = chain.context
    for tail, head in sorted(_initial_heads_by_tail(chain).items()):
        if context.mult_vec(unit_split, head) != head:
            raise UnitActionError(tail, head)


def descent_output(chain, unit_split):
    """The formal one-step descent representative.

    For each pure tensor f0 ⊗ ... ⊗ fn the output accumulates
        (-1)^(n+1) * ( e ⊗ fn·f0 ⊗ f1 ⊗ ... ⊗ f(n-1)
                       − fn·e ⊗ f0 ⊗ ... ⊗ f(n-1) ).
    No unit hypothesis enters here; this is pure multilinear bookkeeping,
    which is what makes the closed-formula comparison a real cross-check.
    """
    n = chain.degree
    if n < 1:
        raise ValueError("descent needs degree >= 1")
    context = chain.context
    sign = ONE if (n + 1) % 2 == 0 else -ONE
    out = {}
    for tup, coeff in chain.terms.items():
        last = tup[-1]
        body = tup[:-1]
        # e ⊗ (fn · f0) ⊗ f1 ... f(n-1)
        wrapped = context.mult_split(last, tup[0])
        for ei, ce in unit_split.entries.items():
            for k, ck in wrapped.entries.items():
                key = (ei, k) + tup[1:-1]
                new = out.get(key, Fraction(0)) + sign * coeff * ce * ck
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        # − (fn · e) ⊗ f0 ... f(n-1)
        tail_unit = context.mult_basis_vec(last, unit_split)
        for k, ck in tail_unit.entries.items():
            key = (k,) + body
            new = out.get(key, Fraction(0)) - sign * coeff * ck
            if new:
                out[key] = new
            else:
                out.pop(key, None)
    return Chain(n, context, out)


def descent_step(chain, unit):
    """One certified descent step.

    `unit` is in parent coordinates and must act as a left unit on the
    initial content of the chain (checked tail-by-tail; failure carries the
    offending slot as a witness).  Every initial slot must already be ideal.
    Returns a certificate whose identity holds even when the input is not a
    cycle; for cycles it reads  input − output = b(homotopy).
    """
    context = chain.context
    if chain.degree < 1:
        raise ValueError("descent needs degree >= 1")
    for tup in chain.terms:
        if not context.is_ideal_index(tup[0]):
            raise ValueError(
                f"tuple {tup} has a non-ideal initial slot; the chain is not "
                "in the top filtration step"
            )
    unit_split = context.to_split(unit)
    _check_left_unit(chain, unit_split)
    output = descent_output(chain, unit_split)
    homotopy = tensor_prepend(unit_split, chain)
    return DescentCertificate(
        input=chain, output=output, homotopy=homotopy, unit=unit
    )


def closed_formula(chain, schedule):
    """Evaluate the closed inverse formula on a chain in the top filtration.

    Per pure tensor f0 ⊗ ... ⊗ fn and sign word s in {+,−}^n, the emitted
    term carries sign (−1)^(number of −) and is assembled left to right:
    block i contributes  e_i ⊗ f_i…  for +  and  f_i·e_i ⊗  for −, with the
    trailing factor multiplying into the next block, and f0 terminates the
    word.  Degree 0 is the empty word: the chain itself.
    """
    n = chain.degree
    context = chain.context
    if schedule.degree != n:
        raise ScheduleMismatchError(
            f"schedule has {schedule.degree} units but the chain has degree {n}"
        )
    for tup in chain.terms:
        if not context.is_ideal_index(tup[0]):
            raise ValueError(f"tuple {tup} has a non-ideal initial slot")
    if n == 0:
        return Chain(0, context, dict(chain.terms))
    units = [context.to_split(u) for u in schedule.units]
    out = {}
    for tup, coeff in chain.terms.items():
        for signs in iter_product((1, -1), repeat=n):
            sign = ONE
            for s in signs:
                if s < 0:
                    sign = -sign
            slots = []
            pending = None  # split-coordinate vector carried into the next slot
            for i in range(1, n + 1):
                e = units[i - 1]
                f = tup[i]
                if signs[i - 1] > 0:
                    slots.append(e if pending is None else context.mult_vec(pending, e))
                    pending = SparseVector(context.dimension, {f: ONE})
                else:
                    fe = context.mult_basis_vec(f, e)
                    slots.append(fe if pending is None else context.mult_vec(pending, fe))
                    pending = None
            f0 = SparseVector(context.dimension, {tup[0]: ONE})
            slots.append(f0 if pending is None else context.mult_vec(pending, f0))
            _expand_tensor(out, slots, sign * coeff)
    return Chain(n, context, out)


def _expand_tensor(store, slots, coeff):
    """Accumulate the tensor product of sparse vectors into `store`."""
    supports = [sorted(v.entries.items()) for v in slots]
    if any(not s for s in supports):
        return
    for combo in iter_product(*supports):
        tup = tuple(i for i, _ in combo)
        c = coeff
        for _, v in combo:
            c *= v
        new = store.get(tup, Fraction(0)) + c
        if new:
            store[tup] = new
        else:
            store.pop(tup, None)


def _validate_schedule(chain, schedule):
    """Check the descending unit conditions against the chain's actual slots."""
    context = chain.context
    algebra = context.parent
    n = chain.degree
    if schedule.degree != n:
        raise ScheduleMismatchError(
            f"schedule has {schedule.degree} units but the chain has degree {n}"
        )
    if n == 0:
        return
    e_n = schedule.units[n - 1]
    for idx in sorted({t[0] for t in chain.terms}):
        f0 = context.ordered_basis[idx]
        if algebra.mul(e_n, f0) != f0:
            raise ScheduleMismatchError(
                f"e_{n} does not fix the initial slot {context.split_label(idx)}"
            )
    for i in range(n, 1, -1):
        e_i = schedule.units[i - 1]
        e_prev = schedule.units[i - 2]
        if algebra.mul(e_prev, e_i) != e_i:
            raise ScheduleMismatchError(f"e_{i-1} does not fix e_{i}")
        for idx in sorted({t[i] for t in chain.terms}):
            prod = algebra.mul(context.ordered_basis[idx], e_i)
            if algebra.mul(e_prev, prod) != prod:
                raise ScheduleMismatchError(
                    f"e_{i-1} does not fix {context.split_label(idx)}·e_{i}"
                )


def find_boundary_witness(target, space):
    """Solve b(η) ≡ target in the cyclic complex, one degree up.

    `target` is a degree-n chain; the unknown η ranges over the canonical
    degree-(n+1) basis of the requested space.  Unsolvability would falsify
    the excision theorem, so it raises CertificateSearchError with the full
    system attached.
    """
    context = target.context
    n = target.degree
    variant = Variant("hc", space)
    matrix, cols, rows = boundary_matrix(context, variant, n + 1)
    canonical = canonicalize_cyclic(target).chain
    row_index = {t: r for r, t in enumerate(rows)}
    rhs_entries = {}
    for tup, coeff in canonical.terms.items():
        if tup not in row_index:
            raise ValueError(
                f"target tuple {tup} lies outside the {space} cyclic space"
            )
        rhs_entries[row_index[tup]] = coeff
    rhs = SparseVector(len(rows), rhs_entries)
    result = solve(matrix, rhs)
    if isinstance(result, Unsolvable):
        raise CertificateSearchError(
            f"no degree-{n + 1} witness exists in the {space} cyclic space: "
            f"the {matrix.rows}x{matrix.cols} system is inconsistent "
            f"(echelon row {result.row}); this contradicts the excision "
            "isomorphism under the local-unit hypotheses",
            matrix,
            rhs,
            cols,
        )
    terms = {cols[c]: v for c, v in result.entries.items()}
    return Chain(n + 1, context, terms)


def _invert_by_solve(chain):
    """Inverse image of a merely-cyclic cycle by one exact linear solve.

    Classes whose lifts are not strict cycles (possible from degree 2 on:
    the boundary only vanishes modulo the rotation action) are outside the
    closed formula's hypothesis, and the formula provably lands in the wrong
    class there.  Instead we solve directly for a cyclic cycle ψ over the
    ideal and a relative witness η with  ρ(ψ) − b(η) ≡ chain, which exists
    exactly because the excision map is onto in homology.  Returns (ψ, η).
    """
    context = chain.context
    n = chain.degree
    cols_ideal = basis_tuples(context, Variant("hc", "I"), n)
    up_matrix, cols_up, rows_rel = boundary_matrix(
        context, Variant("hc", "relative"), n + 1
    )
    rel_index = {t: r for r, t in enumerate(rows_rel)}
    offset = len(cols_ideal)
    entries = {}
    for c, tup in enumerate(cols_ideal):
        entries[(rel_index[tup], c)] = ONE
    for (r, c), v in up_matrix.entries.items():
        entries[(r, offset + c)] = -v
    total_rows = len(rows_rel)
    if n >= 1:
        down_matrix, down_cols, _ = boundary_matrix(context, Variant("hc", "I"), n)
        assert down_cols == cols_ideal
        for (r, c), v in down_matrix.entries.items():
            entries[(total_rows + r, c)] = v
        total_rows += down_matrix.rows
    rhs_entries = {}
    for tup, coeff in canonicalize_cyclic(chain).chain.terms.items():
        rhs_entries[rel_index[tup]] = coeff
    system = SparseMatrix(total_rows, offset + up_matrix.cols, entries)
    rhs = SparseVector(total_rows, rhs_entries)
    solution = solve(system, rhs)
    if isinstance(solution, Unsolvable):
        raise CertificateSearchError(
            f"no inverse image exists for the degree-{n} class: the "
            f"{system.rows}x{system.cols} system is inconsistent (echelon row "
            f"{solution.row}); this contradicts the excision isomorphism "
            "under the local-unit hypotheses",
            system,
            rhs,
            cols_ideal + cols_up,
        )
    psi = Chain(
        n,
        context,
        {cols_ideal[c]: v for c, v in solution.entries.items() if c < offset},
    )
    eta = Chain(
        n + 1,
        context,
        {cols_up[c - offset]: v for c, v in solution.entries.items() if c >= offset},
    )
    return psi, eta


def inverse_excision(chain, schedule):
    """Map a top-filtration relative cyclic cycle into the ideal's complex,
    with a boundary certificate for  ρ(output) ≡ input.

    The input must have every initial slot in the ideal (no rotation happens
    here: plain Hochschild-style inputs must arrive already in the top
    filtration step) and must be a cycle of the relative cyclic complex.
    Strict cycles go through the closed formula; cycles that only close up
    modulo the rotation action carry no formula guarantee and are inverted
    by `_invert_by_solve`.  Either way the result ships the same kind of
    independently checkable certificate.
    """
    context = chain.context
    n = chain.degree
    for tup in chain.terms:
        if not context.is_ideal_index(tup[0]):
            raise ValueError(
                f"tuple {tup} has a non-ideal initial slot: the input must "
                "lie in the top filtration step"
            )
    strict = n == 0 or boundary_b(chain).is_zero()
    if not strict and not canonicalize_cyclic(boundary_b(chain)).is_zero():
        raise ValueError("input is not a cycle of the relative cyclic complex")
    _validate_schedule(chain, schedule)
    if strict:
        output = closed_formula(chain, schedule)
        if not is_ideal_chain(output):
            raise AssertionError("closed formula escaped the ideal's tensor space")
        difference = output - chain
        if difference.is_zero():
            witness = Chain(n + 1, context)
        else:
            witness = find_boundary_witness(difference, "relative")
    else:
        output, witness = _invert_by_solve(chain)
    if n >= 1:
        assert canonicalize_cyclic(boundary_b(output)).is_zero(), (
            "inverse image is not a cyclic cycle over the ideal"
        )
    certificate = BoundaryCertificate(
        lhs=Chain(n, context, dict(output.terms)),
        rhs=chain,
        witness=witness,
        op="hc",
        space="relative",
    )
    return InverseResult(
        input=chain, schedule=schedule, output=output, verification=certificate
    )


def inverse_excision_class(classes):
    """Run the inverse on finitely many relative cyclic classes at once.

    All classes are rotated into the top filtration step, one unit schedule
    is built uniformly over every pure tensor that occurs, and each class is
    then inverted with that shared schedule.
    """
    classes = list(classes)
    if not classes:
        return []
    context = classes[0].context
    degree = classes[0].degree
    lifts = []
    for cls in classes:
        if not relative_membership(cls.chain):
            raise ValueError("class is not relative: a tuple has no ideal slot")
        if cls.degree != degree or cls.context is not context and cls.context != context:
            raise ValueError("classes must share degree and split basis")
        lifts.append(rotate_to_ideal_initial(cls))
    all_tuples = sorted({t for lift in lifts for t in lift.terms})
    schedule = build_unit_schedule(all_tuples, context, degree)
    return [inverse_excision(lift, schedule) for lift in lifts]


def concatenate_descents(certificates):
    """Fuse a run of descent certificates on cycles into one boundary
    certificate: b(sum of homotopies) = first input − last output."""
    if not certificates:
        raise ValueError("need at least one descent certificate")
    first = certificates[0].input
    last = certificates[-1].output
    witness = certificates[0].homotopy
    for cert in certificates[1:]:
        witness = witness + cert.homotopy
    chains = [first, last, witness]
    if all(is_ideal_chain(c) for c in chains):
        space = "I"
    elif all(relative_membership(c) for c in chains):
        space = "relative"
    else:
        space = "A"
    return BoundaryCertificate(
        lhs=first, rhs=last, witness=witness, op="hh", space=space
    )


def _space_violation(space, chain):
    if space == "I" and not is_ideal_chain(chain):
        return "a slot lies outside the ideal"
    if space == "relative" and not relative_membership(chain):
        return "a tuple has no ideal slot"
    return None


def verify_certificate(certificate):
    """Re-evaluate every claimed identity from scratch.

    Returns None when the certificate is sound, otherwise a Mismatch carrying
    the exact residual chain.  The verification path re-expands boundaries
    and canonical forms directly on chains; it never reuses the linear solve
    that produced the witness.
    """
    if isinstance(certificate, DescentCertificate):
        context = certificate.input.context
        unit_split = context.to_split(certificate.unit)
        residual = (certificate.input - certificate.output) - (
            boundary_b(certificate.homotopy)
            + (
                tensor_prepend(unit_split, boundary_b(certificate.input))
                if certificate.input.degree >= 1
                else Chain(certificate.input.degree, context)
            )
        )
        if not residual.is_zero():
            return Mismatch("descent identity fails", residual)
        return None
    if isinstance(certificate, BoundaryCertificate):
        for name, chain in (("lhs", certificate.lhs), ("rhs", certificate.rhs),
                            ("witness", certificate.witness)):
            violation = _space_violation(certificate.space, chain)
            if violation:
                return Mismatch(f"{name} violates the {certificate.space} space: "
                                f"{violation}", chain)
        if certificate.witness.degree != certificate.lhs.degree + 1:
            return Mismatch("witness degree is not one above the claim", None)
        difference = certificate.lhs - certificate.rhs
        boundary = boundary_b(certificate.witness)
        if certificate.op == "hh":
            residual = boundary - difference
        else:
            residual = (
                canonicalize_cyclic(boundary).chain
                - canonicalize_cyclic(difference).chain
            )
        if not residual.is_zero():
            return Mismatch("boundary identity fails", residual)
        return None
    if isinstance(certificate, InverseResult):
        output = certificate.output
        if not is_ideal_chain(output):
            return Mismatch("output escapes the ideal's tensor space", output)
        if output.degree >= 1:
            cycle_residual = canonicalize_cyclic(boundary_b(output)).chain
            if not cycle_residual.is_zero():
                return Mismatch("output is not a cyclic cycle", cycle_residual)
        inner = certificate.verification
        if inner.lhs.terms != output.terms:
            return Mismatch("certificate lhs is not the stored output", None)
        if inner.rhs.terms != certificate.input.terms:
            return Mismatch("certificate rhs is not the stored input", None)
        return verify_certificate(inner)
    raise TypeError(f"not a certificate: {certificate!r}")


@dataclass
class IsomorphismReport:
    """Desk-scale witness that the excision map is an isomorphism in one
    degree: equal dimensions plus verified certificates in both directions."""

    degree: int
    dim_ideal: int
    dim_relative: int
    onto: list  # InverseResult per relative homology basis class
    back: list  # (InverseResult, BoundaryCertificate over I) per ideal class

    @property
    def dimensions_match(self):
        return self.dim_ideal == self.dim_relative

    def all_certificates(self):
        for result in self.onto:
            yield result
        for result, cert in self.back:
            yield result
            yield cert


def isomorphism_witness(context, degree, max_degree=None):
    """Both directions of the excision isomorphism in one degree.

    "onto": every basis class of the relative cyclic homology is hit, with a
    certificate ρ(ψ) ≡ φ.  "back": for every basis class c of the ideal's
    cyclic homology, the inverse of ρ(c) lands back at c, certified inside
    the ideal's own complex.
    """
    ideal_report = homology(context, Variant("hc", "I"), degree, max_degree)
    relative_report = homology(context, Variant("hc", "relative"), degree, max_degree)
    onto = inverse_excision_class(relative_report.representatives)
    back = []
    images = [rho(c) for c in ideal_report.representatives]
    results = inverse_excision_class(images)
    for cls, result in zip(ideal_report.representatives, results):
        difference = result.output - cls.chain
        if difference.is_zero():
            witness = Chain(degree + 1, context)
        else:
            witness = find_boundary_witness(difference, "I")
        cert = BoundaryCertificate(
            lhs=result.output,
            rhs=cls.chain,
            witness=witness,
            op="hc",
            space="I",
        )
        back.append((result, cert))
    return IsomorphismReport(
        degree=degree,
        dim_ideal=ideal_report.dimension,
        dim_relative=relative_report.dimension,
        onto=onto,
        back=back,
    )
