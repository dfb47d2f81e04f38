"""Command-line interface.

All outputs are exact-rational structured text (`--format structured` emits
JSON).  The exit code is 0 only when every certificate produced by the run
verifies; hypothesis failures and verification mismatches use distinct
nonzero codes so scripts can tell them apart.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chains import DegreeLimitError, Variant, boundary_b, homology
from .excision import (
    CertificateSearchError,
    Mismatch,
    descent_step,
    inverse_excision_class,
    isomorphism_witness,
    verify_certificate,
)
from .fileio import (
    DEMO_NAMES,
    ParseError,
    RunReport,
    certificate_to_doc,
    chain_to_doc,
    class_from_chain,
    demo_by_name,
    load_algebra,
    load_certificate,
    load_chain,
    render_chain,
    save_certificate,
    targets_from_doc,
)
from .linalg import format_scalar
from .units import NoLocalUnit, NoLocalUnitError, UnitRequest, find_local_left_unit

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISMATCH = 2
EXIT_NO_WITNESS = 3
EXIT_NO_LOCAL_UNIT = 4


def _emit(report, fmt):
    report.finish()
    if fmt == "structured":
        print(json.dumps(report.to_doc(), indent=1))
    else:
        print(report.render_text())
    return EXIT_OK if report.success else EXIT_MISMATCH


def cmd_homology(args):
    _, _, split = load_algebra(args.algebra)
    report = RunReport(command=f"homology {args.variant}/{args.space} degree {args.degree}")
    result = homology(split, Variant(args.variant, args.space), args.degree)
    report.details["dimension"] = result.dimension
    report.details["chain_space_dimension"] = result.space_dimension
    for idx, rep in enumerate(result.representatives):
        if args.format == "structured":
            chain = rep.chain if hasattr(rep, "chain") else rep
            report.details[f"representative[{idx}]"] = chain_to_doc(chain)
        else:
            report.details[f"representative[{idx}]"] = render_chain(rep)
    return _emit(report, args.format)


def cmd_excise_inverse(args):
    _, _, split = load_algebra(args.algebra)
    chain = load_chain(args.chain, split)
    if chain.degree != args.degree:
        raise ParseError(
            f"chain has degree {chain.degree}, expected {args.degree}", "degree"
        )
    report = RunReport(command=f"excise-inverse degree {args.degree}")
    cls = class_from_chain(chain)
    [result] = inverse_excision_class([cls])
    report.details["input"] = render_chain(cls)
    report.details["output"] = render_chain(result.output)
    if result.output.degree >= 1:
        report.details["output_strict_boundary"] = render_chain(
            boundary_b(result.output)
        )
    report.add_certificate("inverse image with rho(psi) ≡ phi witness", result)
    if args.emit_certificate:
        save_certificate(args.emit_certificate, result, split)
        report.details["certificate_file"] = args.emit_certificate
    return _emit(report, args.format)


def cmd_descend(args):
    _, ideal, split = load_algebra(args.algebra)
    chain = load_chain(args.chain, split)
    if args.unit == "auto":
        heads = sorted({tup[0] for tup in chain.terms})
        targets = [split.ordered_basis[i] for i in heads]
        unit = find_local_left_unit(UnitRequest(ideal, targets))
        if isinstance(unit, NoLocalUnit):
            print(
                "no local left unit exists for the initial slots; witness "
                f"target: {_vector_text(unit.witness_target)}",
                file=sys.stderr,
            )
            return EXIT_NO_LOCAL_UNIT
    else:
        with open(args.unit) as handle:
            doc = json.load(handle)
        [unit] = targets_from_doc({"targets": [doc["element"]]}, split.dimension)
    report = RunReport(command="descend")
    certificate = descent_step(chain, unit)
    report.details["unit"] = _vector_text(unit)
    report.details["output"] = render_chain(certificate.output)
    report.add_certificate("descent homotopy identity", certificate)
    if args.format == "structured":
        report.details["certificate"] = certificate_to_doc(certificate, split)
    return _emit(report, args.format)


def cmd_verify(args):
    certificate, _ = load_certificate(args.certificate)
    mismatch = verify_certificate(certificate)
    if mismatch is None:
        print("ok")
        return EXIT_OK
    print(f"MISMATCH: {mismatch.reason}")
    if isinstance(mismatch, Mismatch) and mismatch.residual is not None:
        print(f"residual: {render_chain(mismatch.residual)}")
    return EXIT_MISMATCH


def cmd_local_unit(args):
    _, ideal, split = load_algebra(args.algebra)
    with open(args.targets) as handle:
        doc = json.load(handle)
    targets = targets_from_doc(doc, split.dimension)
    result = find_local_left_unit(UnitRequest(ideal, targets))
    if isinstance(result, NoLocalUnit):
        print("no local left unit exists for the given targets")
        print(f"witness target: {_vector_text(result.witness_target)}")
        print(f"detail: {result.detail}")
        return EXIT_NO_LOCAL_UNIT
    print(f"unit: {_vector_text(result)}")
    return EXIT_OK


def cmd_demo(args):
    demo = demo_by_name(args.name)
    report = RunReport(command=f"demo {args.name} up to degree {args.degree}")
    report.details["notes"] = demo.notes
    for degree in range(args.degree + 1):
        witness = isomorphism_witness(demo.split, degree)
        report.details[f"dim HC_{degree}(I)"] = witness.dim_ideal
        report.details[f"dim HC_{degree}(A,I)"] = witness.dim_relative
        if not witness.dimensions_match:
            report.details[f"degree {degree} dimension mismatch"] = True
        for idx, result in enumerate(witness.onto):
            report.add_certificate(
                f"degree {degree} onto[{idx}]: rho(psi) ≡ phi", result
            )
        for idx, (result, cert) in enumerate(witness.back):
            report.add_certificate(
                f"degree {degree} back[{idx}]: inverse image", result
            )
            report.add_certificate(
                f"degree {degree} back[{idx}]: psi ≡ c inside the ideal", cert
            )
    return _emit(report, args.format)


def _vector_text(vector):
    return "[" + ", ".join(format_scalar(v) for v in vector.to_list()) + "]"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="excisionlab",
        description=(
            "Exact cyclic/Hochschild homology of finite-dimensional algebras "
            "over Q with certified inverse excision"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument(
            "--format", choices=("text", "structured"), default="text",
            help="human-readable text or JSON output",
        )

    p = sub.add_parser("homology", help="homology of one complex in one degree")
    p.add_argument("--algebra", required=True)
    p.add_argument("--variant", choices=("hh", "hc", "bar"), default="hc")
    p.add_argument("--space", choices=("A", "I", "relative"), default="A")
    p.add_argument("--degree", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser(
        "excise-inverse",
        help="inverse image of a relative cyclic class, with certificate",
    )
    p.add_argument("--algebra", required=True)
    p.add_argument("--chain", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--emit-certificate", default=None, metavar="OUT")
    add_format(p)
    p.set_defaults(func=cmd_excise_inverse)

    p = sub.add_parser("descend", help="one certified filtration descent step")
    p.add_argument("--algebra", required=True)
    p.add_argument("--chain", required=True)
    p.add_argument("--unit", default="auto", help='"auto" or a JSON file with {"element": [...]}')
    add_format(p)
    p.set_defaults(func=cmd_descend)

    p = sub.add_parser("verify", help="re-check a stored certificate")
    p.add_argument("--certificate", required=True)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("local-unit", help="solve for a local left unit")
    p.add_argument("--algebra", required=True)
    p.add_argument("--targets", required=True)
    add_format(p)
    p.set_defaults(func=cmd_local_unit)

    p = sub.add_parser("demo", help="run the full pipeline on a shipped extension")
    p.add_argument("--name", choices=DEMO_NAMES, required=True)
    p.add_argument("--degree", type=int, default=2)
    add_format(p)
    p.set_defaults(func=cmd_demo)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except DegreeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NoLocalUnitError as exc:
        failure = exc.failure
        print(f"error: {exc}", file=sys.stderr)
        print(
            f"witness target: {_vector_text(failure.witness_target)}",
            file=sys.stderr,
        )
        return EXIT_NO_LOCAL_UNIT
    except CertificateSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_WITNESS


if __name__ == "__main__":
    sys.exit(main())
