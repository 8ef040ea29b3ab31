from pathlib import Path

import pytest

from beliefnor.models import GateVariant
from beliefnor.parsing import (
    NetworkParseError,
    dump_network,
    load_evidential,
    load_json,
    load_network,
    parse_evidential,
    parse_network,
)
from beliefnor.reliability import evaluate

DATA = Path(__file__).resolve().parents[1] / "data"


def test_load_network_reads_intervals_and_points():
    rn = load_network(DATA / "five_node_uncertain.json")

    assert rn.source == "n1"
    assert rn.sink == "n5"
    assert rn.edges[0].interval.lower == pytest.approx(0.7525)
    assert rn.edges[2].prob == pytest.approx(0.8025)
    assert rn.node_ids == ["n1", "n2", "n3", "n4", "n5"]


def test_implicit_nodes_follow_edges():
    rn = load_network(DATA / "five_node_rates.json")

    assert rn.nodes == []
    assert rn.node_ids == ["n1", "n2", "n5", "n3", "n4"]
    assert rn.mission_time == 200


def test_json_syntax_error_carries_position():
    text = '{\n  "edges": [\n    {"id": "e1",, "from": "a"}\n  ]\n}'
    with pytest.raises(NetworkParseError) as exc:
        parse_network(text, source="broken.json")

    assert exc.value.line == 3
    assert exc.value.column is not None
    assert "broken.json:3:" in str(exc.value)


def test_schema_error_names_the_field():
    text = '{"edges": [{"id": "e1", "from": "a", "to": "b"}], "source": "a", "sink": "b"}'
    with pytest.raises(NetworkParseError) as exc:
        parse_network(text)

    assert "edges.0" in str(exc.value)
    assert exc.value.line is None


def test_rate_without_mission_time_is_rejected():
    text = '{"edges": [{"id": "e1", "from": "a", "to": "b", "rate": 0.001}], "source": "a", "sink": "b"}'
    with pytest.raises(NetworkParseError):
        parse_network(text)


def test_reversed_interval_is_rejected():
    text = '{"edges": [{"id": "e1", "from": "a", "to": "b", "interval": [0.9, 0.1]}], "source": "a", "sink": "b"}'
    with pytest.raises(NetworkParseError):
        parse_network(text)


def test_missing_file():
    with pytest.raises(NetworkParseError) as exc:
        load_network(DATA / "missing.json")
    assert "missing.json" in str(exc.value)


def test_round_trip_preserves_network_and_results():
    rn = load_network(DATA / "five_node_uncertain.json")
    again = parse_network(dump_network(rn))

    assert again == rn
    assert evaluate(again, GateVariant.OCBNOR, 0.6).mass == evaluate(rn, GateVariant.OCBNOR, 0.6).mass


def test_round_trip_keeps_rates():
    rn = load_network(DATA / "five_node_rates.json")
    assert parse_network(dump_network(rn)) == rn


def test_load_evidential_alarm():
    document = load_evidential(DATA / "alarm.json")

    alarm = document.nodes[2]
    assert alarm.parents == ["burglary", "earthquake"]
    assert alarm.gate.variant is GateVariant.LC_BNOR
    assert alarm.gate.links[0].upper == pytest.approx(0.8)
    assert alarm.gate.parent_ignorance == [0.0, 0.0]


def test_evidential_node_needs_prior_or_gate():
    with pytest.raises(NetworkParseError) as exc:
        parse_evidential('{"nodes": [{"id": "x"}]}')
    assert "nodes.0" in str(exc.value)


def test_invalid_utf8_is_a_parse_error(tmp_path):
    path = tmp_path / "binary.json"
    path.write_bytes(b'{"edges": [\xff\xfe]}')

    with pytest.raises(NetworkParseError) as exc:
        load_network(path)
    assert "UTF-8" in str(exc.value)
    assert str(path) in str(exc.value)


def test_nan_prior_fails_schema():
    text = '{"nodes": [{"id": "x", "prior": [NaN, 0.0, 1.0]}]}'
    with pytest.raises(NetworkParseError) as exc:
        parse_evidential(text, "nan.json")
    assert "prior" in str(exc.value)


def test_load_json_locates_syntax_errors(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text('{"precision": 3,\n  oops}')

    with pytest.raises(NetworkParseError) as exc:
        load_json(path)
    assert exc.value.line == 2
