import importlib

import pytest

from slimlat.builders import chain_diagram, grid
from slimlat.classify import (
    GridCertificate,
    classify,
    grid_certificate,
    is_patch,
    is_rectangular,
    patch_by_corners,
    patch_by_irreducibles,
    position_map,
    replay,
    weak_corners,
)
from slimlat.diagram import infer_diagram
from slimlat.enumerate import canonical_form
from slimlat.errors import InternalValidationFailed
from slimlat.fixtures import b4, chain, g23, m3, n5, s7


def test_weak_corners():
    assert tuple(weak_corners(infer_diagram(s7()))) == (3, 5)
    assert tuple(weak_corners(grid(1, 2))) == (1, 4)
    wc = weak_corners(chain_diagram(3))
    assert wc.left_count == wc.right_count == 1 and wc.lc == wc.rc == 1


def test_is_rectangular():
    assert is_rectangular(grid(1, 2))
    assert is_rectangular(infer_diagram(s7()))
    check = is_rectangular(chain_diagram(3))
    assert not check and check.witness["reason"]


def test_is_patch_examples():
    for L in (b4(), s7()):
        report = is_patch(L)
        assert report.is_patch_def11 and report.is_patch_24 and report.is_patch
    report = classify(g23())
    assert report.is_rectangular and not report.is_patch
    assert report.lc == 1 and report.rc == 4


def test_non_members_report_reason():
    for L in (m3(), n5()):
        report = classify(L)
        assert not report.is_patch and report.witnesses
    assert not classify(chain(2)).is_patch


def test_patch_has_at_least_four_elements(universe12):
    for m in universe12:
        report = classify(m.lattice, m.diagram)
        if report.is_patch:
            assert m.lattice.n >= 4 and report.is_rectangular
        if report.is_rectangular:
            assert report.is_slim and report.is_semimodular


def test_certificates():
    cert = grid_certificate(infer_diagram(s7()))
    assert (cert.p, cert.q, len(cert.forks), len(cert.corners)) == (1, 1, 1, 0)
    cert = grid_certificate(chain_diagram(3))
    assert (cert.p, cert.q, len(cert.forks), len(cert.corners)) == (1, 1, 0, 1)
    cert = grid_certificate(grid(2, 2))
    assert (cert.p, cert.q, list(cert.forks), list(cert.corners)) == (2, 2, [], [])


def test_certificate_json_roundtrip():
    cert = grid_certificate(infer_diagram(chain(4)))
    again = GridCertificate.from_json(cert.to_json())
    assert replay(again) == replay(cert)


def test_certificates_replay_over_universe(universe10):
    for m in universe10:
        D = m.diagram
        cert = grid_certificate(D)
        R = replay(cert)
        assert canonical_form(R.lattice) == canonical_form(D.lattice)
        position_map(R, D)


def test_both_definitions_on_reflections(universe10):
    for m in universe10:
        for D in (m.diagram, m.diagram.reflect()):
            assert bool(patch_by_corners(D)) == bool(patch_by_irreducibles(m.lattice))


def test_internal_disagreement_is_raised(monkeypatch):
    c = importlib.import_module("slimlat.classify")
    from slimlat.lattice import Check
    monkeypatch.setattr(c, "patch_by_corners", lambda D: Check(False, "forced"))
    with pytest.raises(InternalValidationFailed):
        c.classify(s7())
