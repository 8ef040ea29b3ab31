from pathlib import Path

import pytest

from beliefnor.models import GateVariant
from beliefnor.parsing import load_network
from beliefnor.pipeline import (
    SweepEvents,
    SweepParameter,
    default_sweep_edge,
    run_sweep,
    sweep_values,
)
from beliefnor.reliability import evaluate, with_width
from beliefnor.validation import ValidationError

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture
def uncertain():
    return load_network(DATA / "five_node_uncertain.json")


def test_sweep_values_include_endpoints():
    assert sweep_values(0.0, 1.0, 11)[5] == pytest.approx(0.5)
    assert sweep_values(0.0, 1.0, 11)[-1] == 1.0
    assert sweep_values(0.3, 0.9, 1) == [0.3]
    with pytest.raises(ValidationError):
        sweep_values(0.0, 1.0, 0)


def test_sweep_events_sink_receives_events(uncertain):
    captured = []
    events = SweepEvents(sinks=[lambda event: captured.append(event["event"])])

    run_sweep(uncertain, SweepParameter.LAMBDA, 0.0, 1.0, 3, events=events)

    assert captured[0] == "sweep_started"
    assert captured.count("sweep_point_completed") == 3
    assert captured[-1] == "sweep_completed"
    assert len(events.events) == len(captured)


def test_lambda_sweep_endpoints_and_monotonicity(uncertain):
    points = run_sweep(uncertain, "lambda", 0.0, 1.0, 11)

    assert [p.param for p in points] == pytest.approx([step / 10 for step in range(11)])
    assert points[0].report.mass == pytest.approx(evaluate(uncertain, GateVariant.PBNOR).mass, abs=1e-12)
    assert points[-1].report.mass == pytest.approx(evaluate(uncertain, GateVariant.OBNOR).mass, abs=1e-12)
    m_T = [p.report.mass[0] for p in points]
    m_F = [p.report.mass[1] for p in points]
    assert all(a <= b + 1e-12 for a, b in zip(m_T, m_T[1:]))
    assert all(a >= b - 1e-12 for a, b in zip(m_F, m_F[1:]))


def test_parallel_sweep_keeps_order(uncertain):
    serial = run_sweep(uncertain, SweepParameter.LAMBDA, 0.0, 1.0, 6)
    parallel = run_sweep(uncertain, SweepParameter.LAMBDA, 0.0, 1.0, 6, workers=3)

    assert [p.param for p in parallel] == [p.param for p in serial]
    assert [p.report.mass for p in parallel] == [p.report.mass for p in serial]


def test_single_step_equals_direct_evaluation(uncertain):
    (point,) = run_sweep(uncertain, SweepParameter.LAMBDA, 0.6, 0.6, 1)
    assert point.report.mass == evaluate(uncertain, GateVariant.OCBNOR, 0.6).mass


def test_lambda_outside_unit_interval(uncertain):
    with pytest.raises(ValidationError):
        run_sweep(uncertain, SweepParameter.LAMBDA, 0.0, 1.5, 4)


def test_width_sweep_on_chosen_edge(uncertain):
    points = run_sweep(uncertain, SweepParameter.INTERVAL_WIDTH, 0.0, 0.05, 6, edge="e2")

    start = evaluate(with_width(uncertain, "e2", 0.0), GateVariant.LC_BNOR)
    assert points[0].report.mass == pytest.approx(start.mass, abs=1e-12)
    m_TF = [p.report.mass[2] for p in points]
    assert all(a <= b + 1e-12 for a, b in zip(m_TF, m_TF[1:]))


def test_width_sweep_defaults_to_first_uncertain_edge(uncertain):
    assert default_sweep_edge(uncertain) == "e1"

    events = SweepEvents()
    run_sweep(uncertain, SweepParameter.INTERVAL_WIDTH, 0.0, 0.02, 2, events=events)
    assert events.events[0]["edge"] == "e1"
    assert events.events[0]["variant"] == "lc"


def test_width_sweep_rejects_unknown_edge(uncertain):
    with pytest.raises(ValidationError):
        run_sweep(uncertain, SweepParameter.INTERVAL_WIDTH, 0.0, 0.1, 2, edge="ghost")


def test_lambda_sweep_only_runs_oc(uncertain):
    with pytest.raises(ValidationError):
        run_sweep(uncertain, SweepParameter.LAMBDA, 0.0, 1.0, 3, variant=GateVariant.LC_BNOR)

    (point,) = run_sweep(uncertain, SweepParameter.LAMBDA, 0.6, 0.6, 1, variant=GateVariant.OCBNOR)
    assert point.report.mass[0] == pytest.approx(0.9082, abs=5e-4)
