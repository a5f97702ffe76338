# export.py

from __future__ import annotations

import csv
import io
import json
import logging
from typing import TYPE_CHECKING
from typing import Any
from typing import Literal

from pydantic import TypeAdapter

from trivzero._exceptions import ParseError
from trivzero.constants import CSV_COLUMNS
from trivzero.constants import CSV_HEADER_PREFIX
from trivzero.format import parse_slopes
from trivzero.helpers import atomic_write
from trivzero.models.reports import ScanReport
from trivzero.models.reports import TrivialZeroReport

if TYPE_CHECKING:
    from pathlib import Path

log = logging.getLogger(__name__)

Format = Literal['csv', 'json']

_report = TypeAdapter(ScanReport)


def report_to_dict(report: ScanReport) -> dict[str, Any]:
    return _report.dump_python(report, mode='json')


def render_json(payload: Any) -> str:
    """JSON with sorted keys; dataclass records are dumped through pydantic."""
    if not isinstance(payload, dict):
        payload = TypeAdapter(type(payload)).dump_python(payload, mode='json')
    return json.dumps(payload, indent=2, sort_keys=True) + '\n'


def _header(report: ScanReport) -> list[str]:
    meta = {
        'ring': report.ring,
        'place': report.place,
        'j_max': report.j_max,
        'nonclassical_set': ' '.join(map(str, report.nonclassical_set)),
        'max_lp_nonclassical': report.max_lp_nonclassical,
        'closure_violations': len(report.closure_violations),
        'anomalies': ' '.join(map(str, report.anomalies)),
        **{k: v for k, v in report.metadata.items() if not isinstance(v, dict)},
    }
    return [f'{CSV_HEADER_PREFIX}{k}={"" if v is None else v}' for k, v in meta.items()]


def render_csv(report: ScanReport | list[TrivialZeroReport]) -> str:
    buf = io.StringIO()
    entries = report if isinstance(report, list) else report.entries
    if not isinstance(report, list):
        for line in _header(report):
            buf.write(line + '\n')
    writer = csv.DictWriter(buf, fieldnames=list(CSV_COLUMNS), lineterminator='\n')
    writer.writeheader()
    for entry in entries:
        writer.writerow(entry.row())
    return buf.getvalue()


def parse_csv(text: str, ring: str, place: str = 'infty') -> list[TrivialZeroReport]:
    """CSV rows back to reports; header lines are skipped."""
    lines = [line for line in text.splitlines() if not line.startswith(CSV_HEADER_PREFIX)]
    reader = csv.DictReader(lines)
    if reader.fieldnames is not None and tuple(reader.fieldnames) != CSV_COLUMNS:
        err_msg = f'unexpected CSV columns {reader.fieldnames}'
        raise ParseError(err_msg, hint=f'expected {",".join(CSV_COLUMNS)}')
    out = []
    for row in reader:
        report = TrivialZeroReport(
            ring=ring,
            j=int(row['j']),
            v0=int(row['v0']),
            v1=int(row['v1']),
            l_p=int(row['l_p']),
            l_r=int(row['l_r']),
            np_slopes=row['np_slopes'],
            place=place,
        )
        if str(report.nonclassical).lower() != row['nonclassical']:
            err_msg = f'row j={report.j}: nonclassical flag disagrees with v0/v1'
            raise ParseError(err_msg)
        parse_slopes(report.np_slopes)
        out.append(report)
    return out


def parse_report(text: str) -> ScanReport:
    try:
        return _report.validate_python(json.loads(text))
    except ValueError as err:
        err_msg = f'not a scan report: {err}'
        raise ParseError(err_msg) from err


def render_report(report: ScanReport, fmt: Format) -> str:
    if fmt == 'csv':
        return render_csv(report)
    return render_json(report_to_dict(report))


def export_results(report: ScanReport, fmt: Format, path: Path) -> Path:
    atomic_write(path, render_report(report, fmt))
    log.info(f'wrote {fmt} report to {path.as_posix()!r}')
    return path
