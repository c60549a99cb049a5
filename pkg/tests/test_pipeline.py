import json

import pytest

from seifertkit import cover as cv
from seifertkit.errors import ParseError, PipelineError
from seifertkit.pipeline import PipelineReport, Status, render_text, run_pipeline
from seifertkit.symbol import Geometry

SL2R_EXAMPLE = "{b=1; g=0; (2,1)(2,1)(3,1)(3,1)}"
POINCARE = "{b=-1; g=0; (2,1)(3,1)(5,1)}"


def test_spherical_refused():
    r = run_pipeline(POINCARE)
    assert r.status is Status.REFUSED_SPHERICAL and r.geometry is Geometry.S3
    assert r.exit_code == 2
    assert "Kollar" in r.note
    assert r.cover is None


def test_bad_orbifold_refused():
    r = run_pipeline("{b=0; g=0; (2,1)(3,1)}")
    assert r.status is Status.REFUSED_BAD_ORBIFOLD and r.exit_code == 2


def test_sl2r_example_completes():
    r = run_pipeline(SL2R_EXAMPLE)
    assert r.status is Status.COMPLETED and r.exit_code == 0
    assert r.geometry is Geometry.SL2R
    assert cv.verify_certificate(r.base, r.cover)
    assert cv.deck_group_order(r.cover) == r.cover.degree
    assert r.pullback_euler == r.cover.degree * r.e
    assert r.descent.residuals == (0, 0, 0, 0)
    assert r.search_degree == 6


def test_flat_torus_trivial_cover():
    r = run_pipeline("{b=0; g=1; -}")
    assert r.status is Status.COMPLETED and r.geometry is Geometry.E3
    assert r.cover.degree == 1 and r.cover.cover_genus == 1
    assert r.pullback_euler == 0
    assert r.descent.fiber_data == () and r.descent.residuals == ()


def test_nonorientable_base():
    r = run_pipeline("{b=0; g=2n; (3,1)}")
    assert r.status is Status.COMPLETED
    assert r.orientation_cover is not None and r.orientation_cover.orientable
    assert r.cover.cover_orientable
    assert cv.verify_certificate(r.base, r.cover)


def test_cover_not_found():
    r = run_pipeline("{b=0; g=0; (2,1)(3,1)(7,1)}", max_degree_multiplier=1)
    assert r.status is Status.COVER_NOT_FOUND and r.exit_code == 3


def test_group_too_large_is_a_stage_error():
    with pytest.raises(PipelineError) as info:
        run_pipeline("{b=0; g=0; (2,1)(3,1)(7,1)}", group_cap=100)
    assert info.value.stage == "galois-closure"


def test_parse_errors_pass_through():
    with pytest.raises(ParseError):
        run_pipeline("{b=0; g=0; (2,1}")


@pytest.mark.parametrize("text", [SL2R_EXAMPLE, POINCARE, "{b=0; g=1; -}", "{b=0; g=2n; (3,1)}",
                                  "{b=0; g=0; (2,1)(3,1)(7,1)}"])
def test_json_roundtrip(text):
    r = run_pipeline(text, max_degree_multiplier=1 if "(7,1)" in text else 12)
    data = json.loads(json.dumps(r.to_dict()))
    assert data["schema"] == 1
    assert PipelineReport.from_dict(data) == r
    assert render_text(r)
