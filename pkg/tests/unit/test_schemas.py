"""Unit tests for core schemas.

Tests Pydantic models for verdicts, probe reports, Hardy results and settings.
"""

import pytest
from pydantic import ValidationError

from endpoint_classifier.core.schemas import (
    ChannelVerdict,
    Classification,
    CriteriaSettings,
    CriterionVerdict,
    Endpoint,
    HardyResult,
    L2Judgement,
    Method,
    SolutionProbe,
    WeylReport,
    WeylSettings,
    agree,
)


def _probe(judgement: L2Judgement) -> SolutionProbe:
    return SolutionProbe(
        initial=(1.0, 0.0),
        judgement=judgement,
        log_masses=[0.0, -1.0],
        ratios=[0.37],
        growth=1.4,
    )


# ============================================================================
# Classification Tests
# ============================================================================


class TestClassification:
    """Test suite for the Classification enum and agreement."""

    def test_limit_point_family(self):
        """Test which outcomes count as limit point."""
        assert Classification.LIMIT_POINT.is_limit_point
        assert Classification.LIMIT_POINT_NONOSCILLATORY.is_limit_point
        assert not Classification.LIMIT_CIRCLE.is_limit_point
        assert not Classification.INCONCLUSIVE.is_limit_point

    def test_coarse(self):
        """Test that the nonoscillatory refinement collapses onto limit point."""
        assert Classification.LIMIT_POINT_NONOSCILLATORY.coarse() is Classification.LIMIT_POINT
        assert Classification.LIMIT_CIRCLE.coarse() is Classification.LIMIT_CIRCLE

    @pytest.mark.parametrize(
        "a,b,expected",
        [
            (Classification.LIMIT_POINT_NONOSCILLATORY, Classification.LIMIT_POINT, True),
            (Classification.LIMIT_CIRCLE, Classification.LIMIT_POINT, False),
            (Classification.INCONCLUSIVE, Classification.LIMIT_POINT, True),
            (Classification.LIMIT_CIRCLE, Classification.INCONCLUSIVE, True),
            (Classification.LIMIT_CIRCLE, Classification.LIMIT_CIRCLE, True),
        ],
    )
    def test_agree(self, a, b, expected):
        """Test route agreement; Inconclusive never disagrees."""
        assert agree(a, b) is expected

    def test_string_values(self):
        """Test the report spellings."""
        assert Classification.LIMIT_POINT_NONOSCILLATORY.value == "LimitPointNonoscillatory"
        assert Endpoint.INFINITY.value == "Infinity"
        assert Method.WEYL.value == "weyl-numeric"


# ============================================================================
# Verdict Tests
# ============================================================================


class TestCriterionVerdict:
    """Test suite for CriterionVerdict model."""

    def test_eps_is_normalized(self):
        """Test that eps is stored as a reduced rational literal."""
        verdict = CriterionVerdict(kind=Classification.LIMIT_CIRCLE, eps="2/8", margin=0.1)
        assert verdict.eps == "1/4"
        assert verdict.eps_fraction is not None
        assert verdict.eps_fraction * 4 == 1

    def test_eps_from_float(self):
        """Test that decimal eps values become fractions."""
        verdict = CriterionVerdict(kind=Classification.LIMIT_CIRCLE, eps=0.5)
        assert verdict.eps == "1/2"

    def test_window_order(self):
        """Test window validation."""
        with pytest.raises(ValidationError) as exc_info:
            CriterionVerdict(kind=Classification.LIMIT_CIRCLE, window=(1e-3, 1e-12))
        assert "window" in str(exc_info.value).lower()

    def test_negative_margin_only_for_inconclusive(self):
        """Test that decided verdicts need a nonnegative margin."""
        with pytest.raises(ValidationError):
            CriterionVerdict(kind=Classification.LIMIT_POINT, margin=-0.1)
        CriterionVerdict(kind=Classification.INCONCLUSIVE, margin=-0.1)

    def test_depth_cap(self):
        """Test that N is bounded by the supported depth."""
        with pytest.raises(ValidationError):
            CriterionVerdict(kind=Classification.LIMIT_CIRCLE, N=5)

    def test_to_report(self):
        """Test the report payload."""
        verdict = CriterionVerdict(
            kind=Classification.LIMIT_POINT_NONOSCILLATORY,
            N=1,
            eps="1/4",
            margin=0.25,
            window=(1e-12, 1e-3),
            nonoscillatory=True,
        )
        report = verdict.to_report()
        assert report == {
            "endpoint": "Zero",
            "kind": "LimitPointNonoscillatory",
            "N": 1,
            "eps": "1/4",
            "margin": 0.25,
            "window": [1e-12, 1e-3],
            "method": "analytic-criterion",
            "nonoscillatory": True,
        }

    def test_details_only_when_present(self):
        """Test that empty details are omitted from the report."""
        verdict = CriterionVerdict(kind=Classification.LIMIT_CIRCLE, details={"shrink_rounds": 1})
        assert verdict.to_report()["details"] == {"shrink_rounds": 1}
        assert "details" not in CriterionVerdict(kind=Classification.LIMIT_CIRCLE).to_report()


class TestWeylReport:
    """Test suite for WeylReport evidence validation."""

    def test_limit_circle_needs_all_l2(self):
        """Test that a limit-circle report needs every probe judged L2."""
        with pytest.raises(ValidationError):
            WeylReport(
                kind=Classification.LIMIT_CIRCLE,
                probes=[_probe(L2Judgement.L2), _probe(L2Judgement.INCONCLUSIVE)],
            )

    def test_limit_point_needs_not_l2(self):
        """Test that a limit-point report needs a non-L2 probe."""
        with pytest.raises(ValidationError):
            WeylReport(kind=Classification.LIMIT_POINT, probes=[_probe(L2Judgement.L2)])

    def test_regular_skips_evidence(self):
        """Test that regular endpoints carry no probes."""
        report = WeylReport(kind=Classification.LIMIT_CIRCLE, regular=True)
        assert report.z == complex(0.0, 1.0)

    def test_to_report(self):
        """Test the report payload with window masses."""
        report = WeylReport(
            kind=Classification.LIMIT_POINT,
            probes=[_probe(L2Judgement.NOT_L2), _probe(L2Judgement.L2)],
            anchor=0.5,
            deepest_x=1e-3,
        )
        payload = report.to_report()
        assert payload["method"] == "weyl-numeric"
        assert payload["judgements"] == ["NotL2", "L2"]
        assert payload["z"] == [0.0, 1.0]
        assert payload["window_masses"][0][0] == pytest.approx(1.0)


class TestOtherModels:
    """Test suite for Hardy and channel models."""

    def test_hardy_alias(self):
        """Test that HardyResult accepts and dumps the 'pass' alias."""
        result = HardyResult(
            alpha=0.0, N=0, rho=1.0, n_grid=100, form="power", min_quotient=0.1, **{"pass": True}
        )
        assert result.passed
        assert result.to_report()["pass"] is True

    def test_hardy_depth_cap(self):
        """Test that Hardy checks stop at depth 3."""
        with pytest.raises(ValidationError):
            HardyResult(alpha=0.0, N=4, rho=1.0, n_grid=100, min_quotient=0.0, passed=True)

    def test_channel_class_is_decided(self):
        """Test that a channel class at zero cannot be Inconclusive."""
        with pytest.raises(ValidationError):
            ChannelVerdict(n=3, ell=0, alpha="0", class_at_zero=Classification.INCONCLUSIVE)


# ============================================================================
# Settings Tests
# ============================================================================


class TestSettings:
    """Test suite for settings models."""

    def test_criteria_defaults(self):
        """Test the criteria defaults."""
        cfg = CriteriaSettings()
        assert cfg.window == (1e-12, 1e-3)
        assert cfg.grid_points == 256
        assert [str(e) for e in cfg.ladder] == ["1/2", "1/4", "1/8", "1/16"]

    def test_ladder_normalized(self):
        """Test that ladder entries are normalized rationals."""
        assert CriteriaSettings(eps_ladder=["0.5", "2/8"]).eps_ladder == ["1/2", "1/4"]

    @pytest.mark.parametrize(
        "field,value",
        [("grid_points", 32), ("max_N", 5), ("eps_ladder", []), ("eps_ladder", ["-1/2"])],
    )
    def test_criteria_invalid(self, field, value):
        """Test rejected criteria settings."""
        with pytest.raises(ValidationError):
            CriteriaSettings(**{field: value})

    def test_weyl_defaults(self):
        """Test the Weyl probe defaults."""
        cfg = WeylSettings()
        assert (cfg.t_max, cfg.rho_max, cfg.m, cfg.growth) == (60.0, 0.9, 6, 1e8)
        assert cfg.method == "DOP853"

    @pytest.mark.parametrize("field,value", [("rho_max", 1.0), ("samples_per_window", 10)])
    def test_weyl_invalid(self, field, value):
        """Test rejected Weyl settings."""
        with pytest.raises(ValidationError):
            WeylSettings(**{field: value})
