"""Retrieval quality evaluation: precision, recall, F-measure, and the
with/without-synonyms comparison.

Each query is run unpaginated against the index; every document with a
positive score counts as retrieved. Per-query precision and recall are
macro-averaged (arithmetic mean over queries), and the headline F-measure
is computed from the averaged precision and recall rather than averaged
per query. Miss probability is 1 - average recall: the chance a relevant
document is not retrieved.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence

from air.analysis import AnalyzeMode, AnalyzerConfig, analyze, terms_of
from air.errors import (
    ContractViolation,
    DuplicateQueryId,
    MalformedLine,
    MissingQrels,
    QuerySetMismatch,
)
from air.index import Index
from air.search import SearchOptions, execute_query

Qrels = dict[str, frozenset[str]]


def precision(relevant_retrieved: int, retrieved: int) -> float:
    """Fraction of retrieved documents that are relevant; 0 when nothing
    was retrieved."""
    if relevant_retrieved > retrieved:
        raise ContractViolation(
            f"relevant_retrieved {relevant_retrieved} > retrieved {retrieved}"
        )
    if retrieved == 0:
        return 0.0
    return relevant_retrieved / retrieved


def recall(relevant_retrieved: int, total_relevant: int) -> float:
    """Fraction of all relevant documents that were retrieved."""
    if total_relevant < 1:
        raise ContractViolation("total_relevant must be >= 1")
    if relevant_retrieved > total_relevant:
        raise ContractViolation(
            f"relevant_retrieved {relevant_retrieved} > total_relevant {total_relevant}"
        )
    return relevant_retrieved / total_relevant


def f_measure(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    if p + r == 0:
        return 0.0
    return 2.0 * p * r / (p + r)


def miss_probability(avg_recall: float) -> float:
    """Probability that a relevant document is not retrieved."""
    return 1.0 - avg_recall


@dataclass(frozen=True)
class EvalRow:
    qid: str
    query: str
    total_relevant: int
    total_retrieved: int
    relevant_retrieved: int
    precision: float
    recall: float
    f_measure: float


@dataclass(frozen=True)
class EvalReport:
    rows: tuple[EvalRow, ...]
    avg_precision: float
    avg_recall: float
    f_of_averages: float
    miss_probability: float


@dataclass(frozen=True)
class DeltaRow:
    qid: str
    query: str
    d_precision: float
    d_recall: float
    d_f_measure: float


@dataclass(frozen=True)
class DeltaReport:
    rows: tuple[DeltaRow, ...]
    d_avg_precision: float
    d_avg_recall: float
    d_f_of_averages: float


def load_qrels(text: str) -> Qrels:
    """Parse relevance judgments: "qid 0 docid rel" per line, whitespace
    separated; rel > 0 marks the document relevant, rel = 0 lines are
    ignored. '#' comments and blank lines are skipped."""
    sets: dict[str, set[str]] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 4:
            raise MalformedLine(line_no, f"expected 4 fields, got {len(fields)}")
        qid, _iteration, doc_id, rel_text = fields
        try:
            rel = int(rel_text)
        except ValueError:
            raise MalformedLine(line_no, f"relevance {rel_text!r} is not an integer") from None
        if rel > 0:
            sets.setdefault(qid, set()).add(doc_id)
        else:
            sets.setdefault(qid, set())
    return {qid: frozenset(docs) for qid, docs in sets.items()}


def load_queries(text: str) -> list[tuple[str, str]]:
    """Parse a queries file: "qid<TAB>query text" per line."""
    out: list[tuple[str, str]] = []
    seen: set[str] = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "\t" not in stripped:
            raise MalformedLine(line_no, "expected 'qid<TAB>query text'")
        qid, query = stripped.split("\t", 1)
        qid, query = qid.strip(), query.strip()
        if not qid or not query:
            raise MalformedLine(line_no, "empty query id or text")
        if qid in seen:
            raise DuplicateQueryId(qid)
        seen.add(qid)
        out.append((qid, query))
    return out


def evaluate(index: Index, queries: Sequence[tuple[str, str]], qrels: Qrels,
             analyzer_config: Optional[AnalyzerConfig] = None,
             options: Optional[SearchOptions] = None) -> EvalReport:
    """Run every query unpaginated and score it against the judgments.

    Every query must have a nonempty relevant set in qrels. Relevant
    documents missing from the index simply count as never retrieved.
    """
    analyzer_config = analyzer_config or AnalyzerConfig()
    options = options or SearchOptions()
    rows: list[EvalRow] = []
    for qid, query in queries:
        relevant = qrels.get(qid)
        if not relevant:
            raise MissingQrels(f"query {qid!r} has no relevant documents judged")
        terms = terms_of(analyze(query, analyzer_config, AnalyzeMode.QUERY))
        ranking = execute_query(index, terms, options)
        retrieved = [doc for doc, _score, _terms in ranking]
        relevant_retrieved = sum(1 for doc in retrieved if doc in relevant)
        p = precision(relevant_retrieved, len(retrieved))
        r = recall(relevant_retrieved, len(relevant))
        rows.append(
            EvalRow(
                qid=qid,
                query=query,
                total_relevant=len(relevant),
                total_retrieved=len(retrieved),
                relevant_retrieved=relevant_retrieved,
                precision=p,
                recall=r,
                f_measure=f_measure(p, r),
            )
        )
    return build_report(rows)


def build_report(rows: Sequence[EvalRow]) -> EvalReport:
    """Assemble macro averages and derived figures from per-query rows."""
    count = len(rows)
    avg_p = sum(row.precision for row in rows) / count if count else 0.0
    avg_r = sum(row.recall for row in rows) / count if count else 0.0
    return EvalReport(
        rows=tuple(rows),
        avg_precision=avg_p,
        avg_recall=avg_r,
        f_of_averages=f_measure(avg_p, avg_r),
        miss_probability=miss_probability(avg_r),
    )


def compare_runs(report_without: EvalReport, report_with: EvalReport) -> DeltaReport:
    """Per-query and average metric deltas, (with - without)."""
    ids_without = [row.qid for row in report_without.rows]
    ids_with = [row.qid for row in report_with.rows]
    if ids_without != ids_with:
        raise QuerySetMismatch(f"{ids_without!r} vs {ids_with!r}")
    rows = tuple(
        DeltaRow(
            qid=after.qid,
            query=after.query,
            d_precision=after.precision - before.precision,
            d_recall=after.recall - before.recall,
            d_f_measure=after.f_measure - before.f_measure,
        )
        for before, after in zip(report_without.rows, report_with.rows)
    )
    return DeltaReport(
        rows=rows,
        d_avg_precision=report_with.avg_precision - report_without.avg_precision,
        d_avg_recall=report_with.avg_recall - report_without.avg_recall,
        d_f_of_averages=report_with.f_of_averages - report_without.f_of_averages,
    )


def format_percent(fraction: float) -> str:
    """Percentage with two decimals, round half up (so 0.96875 -> '96.88')."""
    return str((Decimal(fraction) * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def format_signed_pp(delta: float) -> str:
    """Signed percentage-point delta with two decimals, round half up."""
    value = (Decimal(delta) * 100).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    if value == value.copy_abs():  # covers +0.00
        return f"+{value.copy_abs()}"
    return str(value)


def _render_table(headers: list[str], rows: list[list[str]],
                  right_align_from: int = 2) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for row in [headers] + rows:
        cells = []
        for i, cell in enumerate(row):
            if i >= right_align_from:
                cells.append(cell.rjust(widths[i]))
            else:
                cells.append(cell.ljust(widths[i]))
        lines.append("  ".join(cells).rstrip())
    return lines


def render_report_text(report: EvalReport) -> str:
    headers = ["qid", "query", "relevant", "retrieved", "rel.retr",
               "precision%", "recall%", "f-measure%"]
    rows = [
        [
            row.qid,
            row.query,
            str(row.total_relevant),
            str(row.total_retrieved),
            str(row.relevant_retrieved),
            format_percent(row.precision),
            format_percent(row.recall),
            format_percent(row.f_measure),
        ]
        for row in report.rows
    ]
    rows.append(
        ["average", "", "", "", "",
         format_percent(report.avg_precision),
         format_percent(report.avg_recall), ""]
    )
    lines = _render_table(headers, rows)
    lines.append(f"f-measure of averages: {format_percent(report.f_of_averages)}%")
    lines.append(f"miss probability: {format_percent(report.miss_probability)}%")
    return "\n".join(lines) + "\n"


def render_report_csv(report: EvalReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["qid", "query", "total_relevant", "total_retrieved",
                     "relevant_retrieved", "precision", "recall", "f_measure"])
    for row in report.rows:
        writer.writerow([row.qid, row.query, row.total_relevant, row.total_retrieved,
                         row.relevant_retrieved, f"{row.precision:.6f}",
                         f"{row.recall:.6f}", f"{row.f_measure:.6f}"])
    writer.writerow(["average", "", "", "", "", f"{report.avg_precision:.6f}",
                     f"{report.avg_recall:.6f}", f"{report.f_of_averages:.6f}"])
    return buffer.getvalue()


def report_as_dict(report: EvalReport) -> dict:
    return {
        "rows": [
            {
                "qid": row.qid,
                "query": row.query,
                "total_relevant": row.total_relevant,
                "total_retrieved": row.total_retrieved,
                "relevant_retrieved": row.relevant_retrieved,
                "precision": row.precision,
                "recall": row.recall,
                "f_measure": row.f_measure,
            }
            for row in report.rows
        ],
        "avg_precision": report.avg_precision,
        "avg_recall": report.avg_recall,
        "f_of_averages": report.f_of_averages,
        "miss_probability": report.miss_probability,
    }


def render_report_json(report: EvalReport) -> str:
    return json.dumps(report_as_dict(report), ensure_ascii=False, indent=2) + "\n"


def render_delta_text(delta: DeltaReport) -> str:
    headers = ["qid", "query", "precision_pp", "recall_pp", "f_pp"]
    rows = [
        [
            row.qid,
            row.query,
            format_signed_pp(row.d_precision),
            format_signed_pp(row.d_recall),
            format_signed_pp(row.d_f_measure),
        ]
        for row in delta.rows
    ]
    rows.append(
        ["average", "",
         format_signed_pp(delta.d_avg_precision),
         format_signed_pp(delta.d_avg_recall), ""]
    )
    lines = _render_table(headers, rows)
    lines.append(
        f"f-measure of averages delta: {format_signed_pp(delta.d_f_of_averages)}pp"
    )
    return "\n".join(lines) + "\n"


def render_comparison_text(without: EvalReport, with_synonyms: EvalReport,
                           delta: DeltaReport) -> str:
    return (
        "== run without synonyms ==\n"
        + render_report_text(without)
        + "\n== run with synonyms ==\n"
        + render_report_text(with_synonyms)
        + "\n== delta (with - without) ==\n"
        + render_delta_text(delta)
    )


def comparison_as_dict(without: EvalReport, with_synonyms: EvalReport,
                       delta: DeltaReport) -> dict:
    return {
        "without_synonyms": report_as_dict(without),
        "with_synonyms": report_as_dict(with_synonyms),
        "delta": {
            "rows": [
                {
                    "qid": row.qid,
                    "query": row.query,
                    "d_precision": row.d_precision,
                    "d_recall": row.d_recall,
                    "d_f_measure": row.d_f_measure,
                }
                for row in delta.rows
            ],
            "d_avg_precision": delta.d_avg_precision,
            "d_avg_recall": delta.d_avg_recall,
            "d_f_of_averages": delta.d_f_of_averages,
        },
    }
