import math

import pytest
from hypothesis import given, strategies as st

from hybridmul.metrics import (
    REFERENCE_ADD_COUNTS,
    TABLE_VOLTAGES,
    CostModel,
    OffGridVoltageError,
    delay_estimate,
    power_estimate,
    reduction_percent,
    table2_report,
)


class TestPowerEstimate:
    def test_conventional_at_1v2(self):
        assert power_estimate(7, 1.2) == pytest.approx(122.5)

    def test_booth_at_1v6(self):
        assert power_estimate(3, 1.6) == pytest.approx(105.81)

    def test_single_add_at_2v4(self):
        assert power_estimate(1, 2.4) == pytest.approx(94.60)

    def test_zero_adds_cost_nothing(self):
        assert power_estimate(0, 1.2) == 0.0

    def test_negative_adds_rejected(self):
        with pytest.raises(ValueError):
            power_estimate(-1, 1.2)

    @given(st.integers(min_value=0, max_value=50), st.integers(min_value=0, max_value=50))
    def test_linearity(self, a, b):
        for vdd in (0.8, 1.6, 2.4):
            assert power_estimate(a + b, vdd) == pytest.approx(
                power_estimate(a, vdd) + power_estimate(b, vdd)
            )


class TestDelayEstimate:
    def test_single_add_at_0v8(self):
        assert delay_estimate(1, 0.8) == pytest.approx(1.600)

    def test_booth_at_2v2(self):
        assert delay_estimate(3, 2.2) == pytest.approx(0.939)

    def test_conventional_at_1v0(self):
        assert delay_estimate(7, 1.0) == pytest.approx(5.138)


class TestVoltageGrid:
    def test_off_grid_rejected_by_default(self):
        with pytest.raises(OffGridVoltageError):
            power_estimate(1, 1.1)

    def test_interpolation_opt_in(self):
        model = CostModel.default()
        midpoint = power_estimate(1, 1.1, model, interpolate=True)
        assert midpoint == pytest.approx((12.08 + 17.50) / 2)

    def test_interpolation_stays_in_range(self):
        with pytest.raises(OffGridVoltageError):
            power_estimate(1, 2.6, interpolate=True)
        with pytest.raises(OffGridVoltageError):
            delay_estimate(1, 0.5, interpolate=True)

    def test_grid_voltages(self):
        assert CostModel.default().voltages == TABLE_VOLTAGES


class TestReductionPercent:
    def test_reference_family(self):
        assert reduction_percent(122.5, 17.5) == pytest.approx(85.714285, abs=1e-4)

    def test_equal_inputs(self):
        assert reduction_percent(42.0, 42.0) == 0.0

    def test_candidate_zero(self):
        assert reduction_percent(42.0, 0.0) == 100.0

    def test_zero_baseline_rejected(self):
        with pytest.raises(ValueError):
            reduction_percent(0.0, 1.0)


class TestCostModel:
    def test_load_round_trip(self, tmp_path):
        config = tmp_path / "model.cfg"
        config.write_text(
            "# vdd  power_uW  delay_ns\n"
            "0.8 4.569 1.600\n"
            "1.2 17.50 0.595  # mid grid\n"
        )
        model = CostModel.load(config)
        assert model.voltages == (0.8, 1.2)
        assert power_estimate(7, 1.2, model) == pytest.approx(122.5)

    def test_load_rejects_malformed_line(self, tmp_path):
        config = tmp_path / "model.cfg"
        config.write_text("0.8 4.569\n")
        with pytest.raises(ValueError, match="model.cfg:1"):
            CostModel.load(config)

    def test_load_rejects_non_numeric(self, tmp_path):
        config = tmp_path / "model.cfg"
        config.write_text("0.8 abc 1.0\n")
        with pytest.raises(ValueError, match="model.cfg:1"):
            CostModel.load(config)

    def test_tables_must_be_positive(self):
        with pytest.raises(ValueError):
            CostModel(unit_power={1.2: 0.0}, unit_delay={1.2: 1.0})

    def test_tables_must_align(self):
        with pytest.raises(ValueError):
            CostModel(unit_power={1.2: 1.0}, unit_delay={1.4: 1.0})


class TestCostGrid:
    def test_ratio_law_exact_under_model(self):
        grid = table2_report()
        for vdd in grid.voltages:
            hybrid_p = grid.power["hybrid"][vdd]
            assert grid.power["conventional"][vdd] == pytest.approx(7 * hybrid_p)
            assert grid.power["booth"][vdd] == pytest.approx(3 * hybrid_p)
            hybrid_d = grid.delay["hybrid"][vdd]
            assert grid.delay["conventional"][vdd] == pytest.approx(7 * hybrid_d)
            assert grid.delay["booth"][vdd] == pytest.approx(3 * hybrid_d)

    def test_grid_shape(self):
        grid = table2_report()
        assert len(grid.voltages) == 9
        assert set(grid.power) == set(REFERENCE_ADD_COUNTS)
        for arch in grid.power:
            assert len(grid.power[arch]) == 9
            assert len(grid.delay[arch]) == 9

    def test_unit_model_reduces_to_add_counts(self):
        flat = CostModel(
            unit_power={v: 1.0 for v in TABLE_VOLTAGES},
            unit_delay={v: 1.0 for v in TABLE_VOLTAGES},
        )
        grid = table2_report(flat)
        for arch, adds in REFERENCE_ADD_COUNTS.items():
            for vdd in grid.voltages:
                assert grid.power[arch][vdd] == adds
                assert grid.delay[arch][vdd] == adds

    def test_reduction_note_flags_power_claim_gap(self):
        note = table2_report().reduction_note()
        assert "85.7" in note
        assert "66.7" in note
        assert "26" in note


def test_reference_constants_sane():
    assert REFERENCE_ADD_COUNTS == {"conventional": 7, "booth": 3, "hybrid": 1}
    assert math.isclose(sum(TABLE_VOLTAGES), 14.4)
