"""JSON and aligned-text rendering of sublattice reports."""

import json
from typing import Dict, List

from .classify import (
    FINITE,
    INFINITE,
    Certification,
    SubfieldEntry,
    SublatticeReport,
)
from .quat import CommensurabilityClass, LatticeSignature
from .schema import ClassModel, ReportModel, SignatureModel, SubfieldReportModel

CERTIFICATION_TEXT = {
    Certification.GALOIS: "Galois",
    Certification.ODD_DEGREE: "odd degree",
    Certification.TYPE_CERTIFICATE: "splitting-type certificate",
    Certification.UNCERTIFIED: "uncertified",
}


def _class_model(c: CommensurabilityClass) -> ClassModel:
    return ClassModel(
        subfield=c.embedding.base.label,
        degree=c.embedding.relative_degree,
        signature=list(c.signature),
        ramification=c.algebra.labels(),
        trivial=c.trivial,
        immersed_subspaces=c.immersed_subspaces,
    )


def _entry_model(entry: SubfieldEntry) -> SubfieldReportModel:
    E = entry.embedding
    model = SubfieldReportModel(
        subfield=entry.label,
        degree=E.relative_degree,
        status=entry.status,
        admissible_signatures=[list(s) for s in entry.admissible_signatures],
        screen={str(c): ok for c, ok in entry.screen.items()} if entry.screen else None,
        notes=list(entry.notes),
        error=entry.error,
    )
    result = entry.classification
    if result is None:
        return model
    criterion = result.criterion
    model.criterion = criterion.outcome
    model.certification = result.certification.value
    model.forced = [v.label for v in criterion.forced]
    model.free = [v.label for v in criterion.free_found]
    model.twist_witnesses = [v.label for v in result.twist_witnesses]
    model.unresolved_primes = list(criterion.verdicts.unresolved)
    for sig in sorted(result.signatures):
        item = result.signatures[sig]
        model.signatures.append(SignatureModel(
            signature=list(sig),
            status=item.status,
            count=item.count,
            representatives=[_class_model(c) for c in item.classes],
            search_bound=item.search_bound,
            reason=item.reason,
        ))
    return model


def to_model(report: SublatticeReport) -> ReportModel:
    return ReportModel(
        field=report.algebra.field.label,
        algebra=report.algebra.labels(),
        signature=list(report.signature),
        cocompact=report.cocompact,
        status=report.status,
        prime_bound=report.prime_bound,
        total_with_trivial=report.total_with_trivial,
        total_positive_codimension=report.total_positive_codimension,
        trivial=_class_model(report.trivial),
        subfields=[_entry_model(e) for e in report.entries],
    )


def render_json(report: SublatticeReport) -> str:
    """Byte-stable JSON: sorted keys, two-space indent."""
    return json.dumps(to_model(report).model_dump(mode="json"), indent=2, sort_keys=True)


def _kind(signature: List[int]) -> str:
    return LatticeSignature(signature[0], signature[1], True).kind


def summary_line(report: SublatticeReport) -> str:
    status = report.status
    if status == INFINITE:
        certs = {e.classification.certification for e in report.entries
                 if e.classification is not None and e.classification.status == INFINITE}
        text = ", ".join(sorted(CERTIFICATION_TEXT[c] for c in certs))
        even = " even degree" if Certification.GALOIS in certs else ""
        return f"Infinite (certified: {text}{even})"
    if status != FINITE:
        return f"{status}: counts below are lower bounds"
    by_kind: Dict[str, int] = {}
    for entry in report.entries:
        if entry.classification is None:
            continue
        for c in entry.classification.classes:
            kind = _kind(list(c.signature))
            by_kind[kind] = by_kind.get(kind, 0) + 1
    parts = [f"{n} {kind} class{'es' if n != 1 else ''}" for kind, n in sorted(by_kind.items())]
    parts.append(f"{report.total_with_trivial} classes (incl. trivial)")
    return "; ".join(parts)


def render_text(report: SublatticeReport) -> str:
    """Aligned table with one row per (subfield, signature)."""
    model = to_model(report)
    lines = [
        f"Field: {model.field}   signature (a,b) = {tuple(model.signature)}   "
        f"cocompact: {'yes' if model.cocompact else 'no'}",
        f"Ram(A): {', '.join(model.algebra) or 'none'}",
        "",
    ]
    header = ["subfield", "degree", "(c,d)", "status", "count", "representatives", "certification"]
    rows: List[List[str]] = [[
        "(trivial)", "1", str(tuple(model.trivial.signature)), "Finite", "1",
        ", ".join(model.trivial.ramification) or "split", "-",
    ]]
    for entry in model.subfields:
        if entry.error is not None:
            rows.append([entry.subfield, str(entry.degree), "-", entry.status, "-",
                         entry.error, "-"])
            continue
        if not entry.signatures:
            rows.append([entry.subfield, str(entry.degree), "-", entry.status, "0",
                         f"none ({entry.criterion})", entry.certification or "-"])
        for sig in entry.signatures:
            reps = "; ".join("{" + ", ".join(c.ramification) + "}" for c in sig.representatives)
            count = "inf" if sig.count is None else str(sig.count)
            rows.append([entry.subfield, str(entry.degree), str(tuple(sig.signature)),
                         sig.status, count, reps or "-", entry.certification or "-"])
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    for row in [header, ["-" * w for w in widths], *rows]:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    for entry in model.subfields:
        for note in entry.notes:
            lines.append(f"note [{entry.subfield}]: {note}")
        if entry.forced:
            lines.append(f"forced [{entry.subfield}]: {', '.join(entry.forced)}")
        if entry.twist_witnesses:
            lines.append(f"free witnesses [{entry.subfield}]: {', '.join(entry.twist_witnesses)}")
    lines.append("")
    lines.append(summary_line(report))
    return "\n".join(lines)
