import copy
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from b0kit.certcheck import check_report_json, check_witness_json
from b0kit.errors import DivisibilityViolated, RootUnavailable
from b0kit.field import make_field
from b0kit.matrices import MatrixFq, field_for
from b0kit.witness import (
    CONCLUSION_CENTER,
    CONCLUSION_DEFERRED,
    CONCLUSION_WITNESS,
    WitnessCertificate,
    check_witness,
    commutator_witness,
    default_grid,
    verify_psl,
    verify_psl_grid,
)

CASES = [
    (3, 3, 1, 7, "odd-prime"),
    (3, 3, 1, 4, "odd-prime"),
    (5, 5, 1, 11, "odd-prime"),
    (9, 3, 2, 19, "odd-prime"),
    (2, 2, 1, 3, "two-order2"),
    (2, 2, 1, 9, "two-order2"),
    (2, 2, 1, 27, "two-order2"),
    (4, 2, 2, 5, "two-higher"),
    (4, 2, 2, 13, "two-higher"),
    (8, 2, 3, 9, "two-higher"),
    (8, 2, 3, 17, "two-higher"),
    (16, 2, 4, 17, "two-higher"),
    (6, 3, 1, 7, "block-replicated"),
    (6, 2, 1, 5, "block-replicated"),
    (8, 2, 2, 5, "block-replicated"),
]


@pytest.mark.parametrize("m,p,n,q,tag", CASES)
def test_witness_cases(m, p, n, q, tag):
    cert = commutator_witness(m, p, n, field_for(q))
    assert cert.case_tag == tag and cert.verified
    assert cert.A.det() == cert.A.field.one and cert.B.det() == cert.B.field.one
    assert cert.A * cert.B * cert.A.inverse() * cert.B.inverse() == MatrixFq.scalar(cert.A.field, m, cert.mu)
    assert cert.mu.order() == p**n
    # the independent checker agrees, through a JSON round trip
    doc = json.loads(json.dumps(cert.to_json()))
    assert check_witness_json(doc) == []
    back = WitnessCertificate.from_json(doc)
    assert back.A == cert.A and back.B == cert.B and back.mu == cert.mu


def test_odd_example_shape():
    f = make_field(7, 1)
    cert = commutator_witness(3, 3, 1, f)
    mu = cert.mu
    assert cert.A == MatrixFq.diag(f, [mu, mu * mu, f.one])
    assert sorted(cert.B.entries) == [0] * 6 + [1] * 3


def test_order2_example():
    f = make_field(3, 1)
    cert = commutator_witness(2, 2, 1, f)
    assert cert.A == MatrixFq.from_rows(f, [[1, 1], [1, -1]])
    assert cert.mu == f(-1)


def test_order4_example():
    f = make_field(5, 1)
    cert = commutator_witness(4, 2, 2, f)
    assert cert.mu == f(2)
    assert cert.A * cert.B * cert.A.inverse() * cert.B.inverse() == MatrixFq.scalar(f, 4, f(2))


def test_preconditions():
    with pytest.raises(RootUnavailable):
        commutator_witness(3, 3, 1, make_field(5, 1))
    with pytest.raises(DivisibilityViolated):
        commutator_witness(4, 3, 1, make_field(7, 1))
    with pytest.raises(ValueError):
        commutator_witness(3, 3, 0, make_field(7, 1))


def test_check_witness_reports_failures():
    f = make_field(7, 1)
    cert = commutator_witness(3, 3, 1, f)
    assert check_witness(cert.A, cert.B, cert.mu, 3) == []
    assert check_witness(cert.B, cert.A, cert.mu, 3)  # swapped order gives mu^-1
    assert check_witness(cert.A, cert.B, cert.mu * cert.mu, 3)


def test_tampered_certificates_rejected():
    cert = commutator_witness(4, 2, 2, make_field(5, 1)).to_json()
    bad = copy.deepcopy(cert)
    bad["A"][0][0] = [(bad["A"][0][0][0] + 1) % 5]
    assert check_witness_json(bad)
    bad = copy.deepcopy(cert)
    bad["mu"] = [4]
    assert "mu does not have order p^n" in check_witness_json(bad)
    bad = copy.deepcopy(cert)
    bad["field"]["irr"] = [0, 1, 1]
    assert check_witness_json(bad)
    bad = copy.deepcopy(cert)
    bad["m"] = 3
    assert check_witness_json(bad)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CASES[:12]), st.integers(0, 10**6), st.integers(1, 30), st.booleans())
def test_checkers_agree_on_perturbations(case, pos, delta, on_a):
    """Both checkers reach the same verdict on arbitrarily perturbed input."""
    m, p, n, q, _ = case
    cert = commutator_witness(m, p, n, field_for(q))
    f = cert.A.field
    M = cert.A if on_a else cert.B
    ent = list(M.entries)
    k = pos % len(ent)
    ent[k] = f.add(ent[k], delta % f.q) if delta % f.q else ent[k]
    M2 = MatrixFq(f, m, ent)
    A, B = (M2, cert.B) if on_a else (cert.A, M2)
    ok_internal = check_witness(A, B, cert.mu, p**n) == [] if M2.det() != f.zero else False
    doc = cert.to_json()
    doc["A"], doc["B"] = A.to_json()["entries"], B.to_json()["entries"]
    assert (check_witness_json(doc) == []) == ok_internal


def test_verify_psl_examples():
    r = verify_psl(3, 7)
    assert r.conclusion == CONCLUSION_WITNESS and list(r.certificates) == [3]
    assert verify_psl(3, 4).conclusion == CONCLUSION_DEFERRED
    r = verify_psl(4, 3)
    assert r.params.d == 2 and r.certificates[2].case_tag == "block-replicated"
    assert r.certificates[2].block_tag == "two-order2"
    assert verify_psl(2, 8).conclusion == CONCLUSION_CENTER
    r = verify_psl(6, 7)
    assert sorted(r.certificates) == [2, 3]


def test_report_checker_on_grid():
    reports = verify_psl_grid(default_grid()[:20], threads=2)
    doc = json.loads(json.dumps({"reports": [r.to_json() for r in reports]}))
    assert check_report_json(doc) == []
    # a report whose certificates miss a prime is caught
    r = verify_psl(6, 7).to_json()
    del r["certificates"]["3"]
    assert check_report_json(r)


def test_grid_is_deterministic_across_threads():
    grid = default_grid()
    a = [r.to_json() for r in verify_psl_grid(grid, threads=1)]
    b = [r.to_json() for r in verify_psl_grid(grid, threads=4)]
    assert a == b
