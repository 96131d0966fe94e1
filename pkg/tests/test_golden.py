"""Tests for the embedded golden reference tables."""

import math

import pytest

from steklov.domains import Disk, DomainSpec, Ellipse, Rectangle
from steklov.golden import (
    DISK_CENTERS,
    DISK_SWEEP,
    ELLIPSE_DIAG_SWEEP,
    ELLIPSE_OUTER,
    ELLIPSE_X_SWEEP,
    QUANTITIES,
    TABLE1_VALUES,
    golden_table,
)


def test_table1_structure():
    table = golden_table(1)
    assert table["kind"] == "comparison"
    assert set(table["domains"]) == {"annulus", "rectangle", "ellipse"}
    for name, spec in table["domains"].items():
        assert isinstance(spec, DomainSpec)
        assert spec.hole_center == (0.0, 0.0)
        assert spec.hole_radius == 1.0
        assert set(table["values"][name]) == {"sigma2", "mu2"}
    assert isinstance(table["domains"]["annulus"].outer, Disk)
    assert isinstance(table["domains"]["rectangle"].outer, Rectangle)
    assert isinstance(table["domains"]["ellipse"].outer, Ellipse)


def test_table1_digits():
    assert TABLE1_VALUES["annulus"]["sigma2"] == 0.1783
    assert TABLE1_VALUES["annulus"]["mu2"] == 0.18467
    assert TABLE1_VALUES["rectangle"]["sigma2"] == 0.2384
    assert TABLE1_VALUES["ellipse"]["sigma2"] == 0.20204


def test_comparison_domains_share_hole_area():
    """The three comparison domains have equal hole and near-equal volume
    (the published outer dimensions are rounded, hence the slack)."""
    table = golden_table(1)
    areas = [spec.area for spec in table["domains"].values()]
    for area in areas[1:]:
        assert math.isclose(area, areas[0], rel_tol=5e-4)


@pytest.mark.parametrize("table_id,path,count", [
    (2, "axis-x", 5),
    (3, "axis-y", 7),
    (4, "diagonal", 4),
])
def test_sweep_tables(table_id, path, count):
    table = golden_table(table_id)
    assert table["kind"] == "sweep"
    assert table["outer"] is ELLIPSE_OUTER
    assert table["path"] == path
    assert len(table["centers"]) == count
    assert set(table["values"]) == set(QUANTITIES)
    for values in table["values"].values():
        assert len(values) == count
        assert all(v > 0 for v in values)


def test_sweep_centers_lie_on_their_paths():
    assert all(c[1] == 0.0 for c in golden_table(2)["centers"])
    assert all(c[0] == 0.0 for c in golden_table(3)["centers"])
    assert all(c[0] == c[1] for c in golden_table(4)["centers"])


def test_published_spot_values():
    assert ELLIPSE_X_SWEEP["sigma2"][-1] == 0.1478
    assert ELLIPSE_DIAG_SWEEP["mu2"][-1] == 0.198211


def test_disk_sweep_columns_nonincreasing():
    """The published disk sweep decreases in every quantity."""
    assert len(DISK_CENTERS) == 7
    for values in DISK_SWEEP.values():
        assert all(a >= b for a, b in zip(values, values[1:]))
    assert DISK_SWEEP["mu1"] == DISK_SWEEP["mu2"]


def test_bad_table_ids():
    for bad in (0, 5, -1, "1", None):
        with pytest.raises(ValueError, match="table id"):
            golden_table(bad)


def test_golden_table_returns_copies():
    table = golden_table(1)
    table["values"]["annulus"]["sigma2"] = -1.0
    assert golden_table(1)["values"]["annulus"]["sigma2"] == 0.1783
