import pytest

from oscplots.frame import ReportFrame, SchemaMismatchError

GOOD = (
    "kind,N,seed,value,normalizer,ratio\n"
    "demo,2,0,4,2,2\n"
    "demo,4,1,16,2,8\n"
    "# kind=demo slope=2.0 verdict=PASS\n"
)


class TestParse:
    def test_rows_and_footers(self):
        frame = ReportFrame.parse(GOOD)
        assert len(frame.rows) == 2
        assert frame.rows[0].kind == "demo"
        assert frame.rows[1].ratio == 8.0
        assert frame.footers == [{"kind": "demo", "slope": "2.0", "verdict": "PASS"}]

    def test_series_grouping(self):
        text = (
            "kind,N,seed,value,normalizer,ratio\n"
            "a_p2,2,0,1,1,1\n"
            "a_p4,2,0,2,1,2\n"
            "a_p2,4,0,3,1,3\n"
        )
        series = ReportFrame.parse(text).series()
        assert sorted(series) == ["a_p2", "a_p4"]
        assert [r.N for r in series["a_p2"]] == [2.0, 4.0]

    def test_empty_data_section(self):
        frame = ReportFrame.parse("kind,N,seed,value,normalizer,ratio\n# verdict=PASS\n")
        assert frame.rows == []
        assert frame.footers == [{"verdict": "PASS"}]

    def test_empty_file_rejected(self):
        with pytest.raises(ValueError):
            ReportFrame.parse("\n")

    def test_malformed_row_rejected(self):
        with pytest.raises(ValueError, match="malformed"):
            ReportFrame.parse("kind,N,seed,value,normalizer,ratio\ndemo,2,0\n")


class TestSchemaMismatch:
    def test_missing_and_unexpected_in_diff(self):
        with pytest.raises(SchemaMismatchError) as exc:
            ReportFrame.parse("kind,N,seed,value,extra\nx,1,0,1,1\n")
        msg = str(exc.value)
        assert "missing: ['normalizer', 'ratio']" in msg
        assert "unexpected: ['extra']" in msg

    def test_reordered_columns_flagged(self):
        with pytest.raises(SchemaMismatchError, match="order differs"):
            ReportFrame.parse("N,kind,seed,value,normalizer,ratio\n")

    def test_is_a_value_error(self):
        assert issubclass(SchemaMismatchError, ValueError)
