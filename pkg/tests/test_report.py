import json
import struct

import pytest

from paritylab.report import (
    AggregateReport,
    CheckResult,
    Report,
    dumps_canonical,
    format_float,
    render_json,
    render_text,
)


def sample_report():
    return Report(
        scenario="demo",
        checks=[
            CheckResult("alpha", True, 0.0),
            CheckResult("beta", False, 1.0 / 3.0, witness=[1, 2]),
        ],
        tol=1e-9,
        seed=7,
    )


class TestFloatFormatting:
    @pytest.mark.parametrize("x", [0.0, -0.0, 1.0, 1.0 / 3.0, 2**-52, 1e-300, 0.1])
    def test_seventeen_digits_round_trip(self, x):
        out = format_float(x)
        back = json.loads(out)
        assert struct.pack("<d", float(back)) == struct.pack("<d", x)

    def test_always_a_json_number(self):
        assert format_float(1.0) == "1.0"
        assert json.loads(format_float(-0.0)) == -0.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            format_float(float("inf"))
        with pytest.raises(ValueError):
            format_float(float("nan"))


class TestCanonicalJson:
    def test_round_trips_through_stdlib(self):
        text = render_json(sample_report())
        data = json.loads(text)
        assert data["scenario"] == "demo"
        assert data["checks"][1]["witness"] == [1, 2]
        assert data["checks"][0]["pass"] is True

    def test_deterministic(self):
        assert render_json(sample_report()) == render_json(sample_report())

    def test_rejects_unknown_types(self):
        with pytest.raises(TypeError):
            dumps_canonical({"x": object()})

    def test_witness_omitted_when_absent(self):
        data = json.loads(render_json(sample_report()))
        assert "witness" not in data["checks"][0]


class TestReportTypes:
    def test_passed_aggregation(self):
        rep = sample_report()
        assert not rep.passed
        rep.checks[1].passed = True
        assert rep.passed

    def test_check_lookup(self):
        rep = sample_report()
        assert rep.check("alpha").residual == 0.0
        with pytest.raises(KeyError):
            rep.check("missing")

    def test_aggregate(self):
        agg = AggregateReport([sample_report()], tol=1e-9, seed=7)
        data = agg.to_dict()
        assert data["scenario"] == "all"
        assert data["pass"] is False
        assert len(data["reports"]) == 1

    def test_text_rendering(self):
        text = render_text(sample_report())
        assert "[PASS] alpha" in text
        assert "[FAIL] beta" in text
        assert "result: FAIL (1/2 checks)" in text
        agg_text = render_text(AggregateReport([sample_report()], tol=1e-9))
        assert "overall: FAIL (0/1 scenarios)" in agg_text
