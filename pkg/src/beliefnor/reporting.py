"""Text tables, reports and CSV output for the command-line surface."""
from __future__ import annotations

import csv
import io
from typing import Dict, List, Optional, Sequence

from .belief import MassFunction, betp
from .gates import ConditionalMassTable
from .models import BeliefReport, ReliabilityReport
from .validation import collect_row_errors

SWEEP_HEADER = ["param", "m_T", "m_F", "m_TF", "bel_T", "pl_T", "betp_T"]


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}f}"


def gate_table_rows(table: ConditionalMassTable, precision: int = 4) -> List[List[str]]:
    """Header plus one row per parent tuple, with a normalization check and BetP(T)."""
    rows: List[List[str]] = [["parents", "m_T", "m_F", "m_TF", "check", "betp_T"]]
    for key, m in table.items():
        names = tuple(state.value for state in key)
        ok, _ = collect_row_errors([(names, sum(m.as_tuple()))])
        rows.append(
            [
                ",".join(names),
                _fmt(m.m_T, precision),
                _fmt(m.m_F, precision),
                _fmt(m.m_TF, precision),
                "ok" if ok else "FAIL",
                _fmt(betp(m)[0], precision),
            ]
        )
    return rows


def table_errors(table: ConditionalMassTable) -> List[str]:
    """Messages for every row whose masses do not sum to one."""
    _, errors = collect_row_errors(
        (tuple(state.value for state in key), sum(m.as_tuple())) for key, m in table.items()
    )
    return errors


def render_rows(rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned first column, right-aligned numbers, two spaces between columns."""
    if not rows:
        return ""
    widths = [max(len(row[idx]) for row in rows if idx < len(row)) for idx in range(len(rows[0]))]
    lines = []
    for row in rows:
        cells = [row[0].ljust(widths[0])] + [cell.rjust(widths[idx]) for idx, cell in enumerate(row) if idx]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def belief_rows(name: str, summary: BeliefReport, precision: int = 4) -> List[List[str]]:
    m_T, m_F, m_TF = summary.mass
    return [
        ["node", name],
        ["m_T", _fmt(m_T, precision)],
        ["m_F", _fmt(m_F, precision)],
        ["m_TF", _fmt(m_TF, precision)],
        ["bel_T", _fmt(summary.bel_T, precision)],
        ["pl_T", _fmt(summary.pl_T, precision)],
        ["betp_T", _fmt(summary.betp_T, precision)],
        ["betp_F", _fmt(summary.betp_F, precision)],
    ]


def enumeration_rows(computed: MassFunction, oracle: MassFunction, precision: int = 4) -> List[List[str]]:
    """Oracle cross-check appended to an inference report."""
    diff = max(abs(a - b) for a, b in zip(computed.as_tuple(), oracle.as_tuple()))
    return [
        ["oracle_m_T", _fmt(oracle.m_T, precision)],
        ["oracle_m_F", _fmt(oracle.m_F, precision)],
        ["oracle_m_TF", _fmt(oracle.m_TF, precision)],
        ["oracle_max_diff", f"{diff:.3e}"],
    ]


def reliability_rows(
    report: ReliabilityReport, precision: int = 4, note: Optional[str] = None
) -> List[List[str]]:
    m_T, m_F, m_TF = report.mass
    rows = [
        ["model", report.label],
        ["m_T", _fmt(m_T, precision)],
        ["m_F", _fmt(m_F, precision)],
        ["m_TF", _fmt(m_TF, precision)],
        ["bel_T", _fmt(report.bel_working, precision)],
        ["pl_T", _fmt(report.pl_working, precision)],
        ["betp_T", _fmt(report.betp_working, precision)],
        ["betp_F", _fmt(1.0 - report.betp_working, precision)],
    ]
    if report.oracle_reliability is not None:
        rows.append(["oracle", _fmt(report.oracle_reliability, precision)])
        rows.append(["oracle_abs_diff", f"{abs(report.oracle_reliability - m_T):.3e}"])
    if note:
        rows.append(["oracle", note])
    return rows


def compare_rows(reports: Sequence[ReliabilityReport], precision: int = 4) -> List[List[str]]:
    """One column per model, one row per measure."""
    measures: Dict[str, List[float]] = {
        "m_T": [r.mass[0] for r in reports],
        "m_F": [r.mass[1] for r in reports],
        "m_TF": [r.mass[2] for r in reports],
        "bel_T": [r.bel_working for r in reports],
        "pl_T": [r.pl_working for r in reports],
        "betp_T": [r.betp_working for r in reports],
        "betp_F": [1.0 - r.betp_working for r in reports],
    }
    rows: List[List[str]] = [["S"] + [r.label for r in reports]]
    for name, values in measures.items():
        rows.append([name] + [_fmt(v, precision) for v in values])
    return rows


def sweep_csv(points: Sequence[tuple], precision: int = 6) -> str:
    """CSV text for (param, ReliabilityReport) pairs in the given order."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for param, report in points:
        m_T, m_F, m_TF = report.mass
        writer.writerow(
            [
                _fmt(param, precision),
                _fmt(m_T, precision),
                _fmt(m_F, precision),
                _fmt(m_TF, precision),
                _fmt(report.bel_working, precision),
                _fmt(report.pl_working, precision),
                _fmt(report.betp_working, precision),
            ]
        )
    return buffer.getvalue()
