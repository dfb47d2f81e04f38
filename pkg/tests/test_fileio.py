import json

import pytest

from excisionlab.chains import canonicalize_cyclic, pure_tensor
from excisionlab.excision import descent_step, inverse_excision_class
from excisionlab.fileio import (
    ParseError,
    RunReport,
    algebra_from_doc,
    algebra_to_doc,
    certificate_from_doc,
    certificate_to_doc,
    chain_from_doc,
    chain_to_doc,
    demo_by_name,
    demo_corpus,
    load_algebra,
    save_algebra,
    schedule_from_doc,
    schedule_to_doc,
)
from excisionlab.linalg import SparseVector
from excisionlab.units import build_unit_schedule


def test_algebra_round_trip(t2, tmp_path):
    path = tmp_path / "t2.json"
    save_algebra(path, t2.algebra, t2.ideal, t2.split)
    algebra, ideal, split = load_algebra(path)
    assert algebra == t2.algebra
    assert ideal == t2.ideal
    assert split == t2.split


def test_all_demos_round_trip(corpus, tmp_path):
    for demo in corpus:
        path = tmp_path / f"{demo.name}.json"
        save_algebra(path, demo.algebra, demo.ideal, demo.split)
        algebra, ideal, split = load_algebra(path)
        assert algebra == demo.algebra and split == demo.split


def test_float_coefficients_rejected(t2):
    doc = algebra_to_doc(t2.algebra, t2.ideal)
    doc["products"][0]["result"][0]["coeff"] = "1.5"
    with pytest.raises(ParseError) as info:
        algebra_from_doc(doc)
    assert "coeff" in info.value.location


def test_empty_products_is_a_valid_zero_multiplication_algebra():
    doc = {
        "field": "rational",
        "dimension": 2,
        "basis": ["x", "y"],
        "products": [],
        "ideal": {"basis_vectors": [["1", "0"]]},
    }
    algebra, ideal, split = algebra_from_doc(doc)
    assert algebra.mul_basis(0, 1).is_zero()
    assert split.ideal_count == 1


def test_dimension_mismatch_rejected(t2):
    doc = algebra_to_doc(t2.algebra, t2.ideal)
    doc["ideal"]["basis_vectors"][0] = ["1", "0"]
    with pytest.raises(ParseError):
        algebra_from_doc(doc)


def test_non_associative_document_rejected():
    doc = {
        "field": "rational",
        "dimension": 2,
        "basis": ["a", "b"],
        "products": [
            {"left": 0, "right": 0, "result": [{"index": 1, "coeff": "1"}]},
            {"left": 0, "right": 1, "result": [{"index": 0, "coeff": "1"}]},
        ],
        "ideal": {"basis_vectors": []},
    }
    with pytest.raises(ParseError) as info:
        algebra_from_doc(doc)
    assert "associative" in str(info.value)


def test_chain_round_trip(t2):
    chain = pure_tensor(t2.split, (0, 2)).scaled(3) - pure_tensor(t2.split, (1, 1))
    doc = chain_to_doc(chain)
    assert chain_from_doc(doc, t2.split) == chain


def test_chain_expansion_distributes(t2):
    # a slot holding E11+E22 expands onto the standard tensor basis
    doc = {
        "degree": 1,
        "terms": [{"coeff": "2", "slots": [["1", "0", "1"], ["0", "1", "0"]]}],
    }
    chain = chain_from_doc(doc, t2.split)
    assert sorted(chain.terms) == [(0, 1), (2, 1)]
    assert chain.terms[(0, 1)] == 2 and chain.terms[(2, 1)] == 2


def test_chain_slot_count_enforced(t2):
    doc = {"degree": 2, "terms": [{"coeff": "1", "slots": [["1", "0", "0"]]}]}
    with pytest.raises(ParseError):
        chain_from_doc(doc, t2.split)


def test_schedule_round_trip(t2):
    schedule = build_unit_schedule([(0, 2), (1, 2)], t2.split, 1)
    doc = schedule_to_doc(schedule)
    restored = schedule_from_doc(doc, t2.split.dimension)
    assert restored == schedule


def test_certificate_round_trips(t2):
    phi = pure_tensor(t2.split, (0, 2))
    descent = descent_step(phi, SparseVector.from_list([1, 0, 0]))
    doc = certificate_to_doc(descent, t2.split)
    restored, split = certificate_from_doc(doc)
    assert restored.input == descent.input
    assert restored.homotopy == descent.homotopy
    assert split == t2.split

    [inverse] = inverse_excision_class([canonicalize_cyclic(phi)])
    doc = certificate_to_doc(inverse, t2.split)
    restored, _ = certificate_from_doc(doc)
    assert restored.output == inverse.output
    assert restored.verification.witness == inverse.verification.witness
    assert restored.schedule == inverse.schedule

    boundary = inverse.verification
    doc = certificate_to_doc(boundary, t2.split)
    restored, _ = certificate_from_doc(doc)
    assert restored == boundary


def test_unknown_certificate_kind_rejected(t2):
    doc = {"kind": "mystery", "algebra": algebra_to_doc(t2.algebra, t2.ideal)}
    with pytest.raises(ParseError):
        certificate_from_doc(doc)


def test_demo_corpus_contents():
    names = [demo.name for demo in demo_corpus()]
    assert names == ["t2-corner", "matrix2", "direct-sum"]
    corner = demo_by_name("t2-corner")
    assert "left unit" in corner.notes
    with pytest.raises(KeyError):
        demo_by_name("missing")


def test_run_report_tracks_verification(t2):
    phi = pure_tensor(t2.split, (0, 2))
    cert = descent_step(phi, SparseVector.from_list([1, 0, 0]))
    report = RunReport(command="test")
    assert report.add_certificate("descent", cert)
    assert report.success
    doc = report.finish().to_doc()
    assert doc["all_verified"] is True
    assert "descent" in report.render_text()


def test_run_report_flags_failures(t2):
    from excisionlab.excision import DescentCertificate

    phi = pure_tensor(t2.split, (0, 2))
    cert = descent_step(phi, SparseVector.from_list([1, 0, 0]))
    broken = DescentCertificate(
        input=cert.input,
        output=cert.output + pure_tensor(t2.split, (0, 0)),
        homotopy=cert.homotopy,
        unit=cert.unit,
    )
    report = RunReport(command="test")
    assert not report.add_certificate("broken descent", broken)
    assert not report.success
    assert "MISMATCH" in report.render_text()


def test_json_decode_errors_carry_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"field": "rational",')
    with pytest.raises(json.JSONDecodeError):
        load_algebra(path)
