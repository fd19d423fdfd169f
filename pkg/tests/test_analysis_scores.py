import pytest

from deorbitsim.analysis import SubjectiveSheet, sus_score, tlx_score
from deorbitsim.errors import DataError


class TestTlx:
    def test_all_fifty(self):
        assert tlx_score([50] * 6) == 50.0

    def test_bounds(self):
        assert tlx_score([0] * 6) == 0.0
        assert tlx_score([100] * 6) == 100.0

    def test_mean(self):
        assert tlx_score([10, 20, 30, 40, 50, 60]) == pytest.approx(35.0)

    def test_out_of_range(self):
        with pytest.raises(DataError):
            tlx_score([50, 50, 50, 50, 50, 101])
        with pytest.raises(DataError):
            tlx_score([-1, 0, 0, 0, 0, 0])

    def test_wrong_count(self):
        with pytest.raises(DataError):
            tlx_score([50] * 5)


class TestSus:
    def test_max_usability_pattern(self):
        assert sus_score([5, 1, 5, 1, 5, 1, 5, 1, 5, 1]) == 100.0

    def test_neutral_pattern(self):
        assert sus_score([3] * 10) == 50.0

    def test_min_pattern(self):
        assert sus_score([1, 5, 1, 5, 1, 5, 1, 5, 1, 5]) == 0.0

    def test_out_of_range(self):
        with pytest.raises(DataError):
            sus_score([3, 3, 3, 3, 3, 3, 3, 3, 3, 6])
        with pytest.raises(DataError):
            sus_score([0, 3, 3, 3, 3, 3, 3, 3, 3, 3])

    def test_wrong_count(self):
        with pytest.raises(DataError):
            sus_score([3] * 9)


def test_subjective_sheet_validates_on_construction():
    sheet = SubjectiveSheet(tlx=(10, 20, 30, 40, 50, 60), sus=(3,) * 10)
    assert sheet.tlx_total() == pytest.approx(35.0)
    assert sheet.sus_total() == 50.0
    with pytest.raises(DataError):
        SubjectiveSheet(tlx=(200, 0, 0, 0, 0, 0), sus=(3,) * 10)
