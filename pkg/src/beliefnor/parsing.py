"""Network file parsing for reliability and evidential network documents."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

from pydantic import BaseModel
from pydantic import ValidationError as SchemaError

from .models import EvidentialNetworkFile, ReliabilityNetwork

Document = TypeVar("Document", bound=BaseModel)


class NetworkParseError(Exception):
    """Input document could not be read; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}:{column}"
        super().__init__(f"{where}: {message}")


def _schema_message(exc: SchemaError) -> str:
    first = exc.errors()[0]
    path = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
    message = first.get("msg", "invalid value")
    more = exc.error_count() - 1
    suffix = f" (+{more} more)" if more > 0 else ""
    return f"{path}: {message}{suffix}"


def _decode(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkParseError(exc.msg, exc.lineno, exc.colno, source) from exc


def _parse(text: str, model: Type[Document], source: str) -> Document:
    payload = _decode(text, source)
    try:
        return model.model_validate(payload)
    except SchemaError as exc:
        raise NetworkParseError(_schema_message(exc), source=source) from exc


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise NetworkParseError(f"cannot read file: {exc.strerror or exc}", source=str(path)) from exc
    except UnicodeDecodeError as exc:
        raise NetworkParseError(f"file is not valid UTF-8 (byte {exc.start})", source=str(path)) from exc


def load_json(path: str | Path) -> Any:
    """Decoded JSON payload of a file, with read and syntax errors as NetworkParseError."""
    return _decode(_read(path), str(path))


def parse_network(text: str, source: str = "") -> ReliabilityNetwork:
    """Parse a reliability network document (nodes, edges, source, sink, mission_time)."""
    return _parse(text, ReliabilityNetwork, source)


def load_network(path: str | Path) -> ReliabilityNetwork:
    return parse_network(_read(path), str(path))


def parse_evidential(text: str, source: str = "") -> EvidentialNetworkFile:
    """Parse an evidential network document of prior and gate nodes."""
    return _parse(text, EvidentialNetworkFile, source)


def load_evidential(path: str | Path) -> EvidentialNetworkFile:
    return parse_evidential(_read(path), str(path))


def network_payload(rn: ReliabilityNetwork) -> Dict[str, Any]:
    """File-format mapping of ``rn``; intervals are written as [lower, upper]."""
    edges: List[Dict[str, Any]] = []
    for edge in rn.edges:
        item: Dict[str, Any] = {"id": edge.id, "from": edge.from_node, "to": edge.to_node}
        if edge.prob is not None:
            item["prob"] = edge.prob
        if edge.interval is not None:
            item["interval"] = [edge.interval.lower, edge.interval.upper]
        if edge.rate is not None:
            item["rate"] = edge.rate
        edges.append(item)
    payload: Dict[str, Any] = {}
    if rn.nodes:
        payload["nodes"] = list(rn.nodes)
    payload["edges"] = edges
    payload["source"] = rn.source
    payload["sink"] = rn.sink
    if rn.mission_time is not None:
        payload["mission_time"] = rn.mission_time
    return payload


def dump_network(rn: ReliabilityNetwork) -> str:
    return json.dumps(network_payload(rn), indent=2) + "\n"
