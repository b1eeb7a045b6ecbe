"""Smoke tests for the python bindings: a thin pass over each subsystem."""

import math
import os

import pytest

import spinmarket as sm

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "fixtures")


def test_fixed_point_and_map():
    fp = sm.find_fixed_point(0.3, 0.8)
    assert abs(fp.t_star - 0.5436890127) < 1e-9
    assert fp.multiplier > 1.0
    assert abs(sm.dhl_renorm_apply(fp.t_star) - fp.t_star) < 1e-12
    assert sm.dhl_renorm_apply(1.0) == 1.0


def test_partition_zeros_on_unit_circle():
    poly = sm.chain_partition_polynomial(0.5, 8)
    zs = sm.find_zeros(poly, 1e-10)
    assert len(zs.zeros) == 8
    assert all(abs(abs(z) - 1.0) < 1e-10 for z in zs.zeros)
    assert zs.residual_bound <= 1e-10


def test_julia_inverse_iteration_residuals():
    fp = sm.find_fixed_point(0.3, 0.8)
    cloud = sm.julia_inverse_iteration(complex(fp.t_star, 0.0), 8, 500, 1)
    assert len(cloud.points) == 500
    for p, parent in zip(cloud.points[1:], cloud.parents[1:]):
        assert abs(sm.dhl_renorm_apply_complex(p) - parent) <= 1e-10


def test_metropolis_tanh():
    sys = sm.SpinSystem(64, 0.0, 0.5, 1.0, 42)
    sys = sm.metropolis_sweep(sys, 2000)
    # a single long-run state; just check it is a legal configuration
    assert all(s in (-1, 1) for s in sys.spins)
    curve = sm.entropy_curve(0.0, 1.0, 4)
    mid = [p for p in curve.points if p.energy_per_spin == 0.0]
    assert len(mid) == 1
    assert abs(mid[0].entropy_per_spin - math.log(6.0) / 4.0) < 1e-14


def test_gbm_temperature_renormalize_detect():
    series = sm.generate_gbm(100.0, 0.0, 0.2, 1.0 / 252.0, 4000, 7)
    params = sm.TemperatureParams()
    params.window = 500
    params.dt = 1.0 / 252.0
    params.sign_method = sm.SignMethod.always_positive
    temps = sm.estimate_temperature(series, params)
    values = [t for t in temps.temperatures if t is not None]
    med = sorted(abs(v) for v in values)[len(values) // 2]
    assert 0.02 < med < 0.06  # sigma^2 = 0.04

    stack_params = sm.StackParams()
    stack_params.temperature = params
    stack_params.weights = sm.WeightSource.uniform
    parts = [sm.BlockPartition.fixed(4000, 2), sm.BlockPartition.fixed(2000, 2)]
    stack = sm.temperature_stack(series, parts, stack_params)
    assert len(stack.levels) == 3
    events = sm.detect_transitions(stack, 0.15, 1e-12)
    for ev in events:
        assert all(ts <= ev.timestamp for ts in ev.level_timestamps)


def test_renormalize_worked_example():
    s = sm.PriceSeries()
    s.timestamps = [100, 200, 300, 400]
    s.prices = [100.0, 101.0, 99.0, 102.0]
    s.volumes = [4.0, 1.0, 1.0, 4.0]
    part = sm.BlockPartition.fixed(4, 4)
    w = sm.block_weights_from_volume(s, part)
    out = sm.renormalize_series(s, part, w)
    assert abs(out.prices[0] - 100.8) < 1e-12
    assert out.level == 1


def test_parse_fixture_and_errors():
    series = sm.parse_tick_csv(os.path.join(FIXTURES, "ticks_sample.csv"))
    assert len(series) == 390
    with pytest.raises(sm.SpinmarketError):
        sm.parse_tick_csv(os.path.join(FIXTURES, "no_such_file.csv"))
    with pytest.raises(sm.SpinmarketError):
        sm.magnetocaloric_run(-1.0, 1.0, 5)


def test_pipeline_roundtrip(tmp_path):
    cfg = sm.RunConfig()
    cfg.input_path = os.path.join(FIXTURES, "pipeline_ticks.csv")
    cfg.window = 16
    cfg.levels = 3
    cfg.partition = "day"
    cfg.dt0 = 1.0 / (252.0 * 32.0)
    cfg.out_dir = str(tmp_path / "run")
    cfg.svg = False
    result = sm.run_pipeline(cfg)
    assert os.path.exists(result.manifest_path)
    assert any(p.endswith("events.csv") for p in result.outputs)
