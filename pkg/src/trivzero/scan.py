# scan.py

from __future__ import annotations

import asyncio
import json
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime
from datetime import timezone
from typing import TYPE_CHECKING
from typing import Any
from typing import Callable

from pydantic import TypeAdapter

from trivzero import __about__
from trivzero._exceptions import CheckpointError
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import TruncationInsufficient
from trivzero.constants import ANOMALY_WINDOW_START
from trivzero.fields import digit_sum
from trivzero.helpers import astimeit
from trivzero.helpers import atomic_write
from trivzero.helpers import timeit
from trivzero.models.reports import ClosureAnalysis
from trivzero.models.reports import GrowthPoint
from trivzero.models.reports import HayesRow
from trivzero.models.reports import ScanReport
from trivzero.models.reports import TrivialZeroReport
from trivzero.polys import parse_poly
from trivzero.rings import FqtRing
from trivzero.rings import ring_from_selector
from trivzero.vadic import vadic_trivial_zero_order
from trivzero.zeroes import trivial_zero_report

if TYPE_CHECKING:
    from pathlib import Path

    from trivzero.rings import BaseRing

log = logging.getLogger(__name__)

INFTY = 'infty'

_entries = TypeAdapter(list[TrivialZeroReport])


def parse_place(ring: BaseRing, text: str) -> str:
    """'infty' or 'v=POLY', the polynomial in canonical rendering."""
    text = text.strip()
    if text == INFTY:
        return INFTY
    if text.startswith('v='):
        if not isinstance(ring, FqtRing):
            err_msg = f'finite places are only supported over F_r[T], not {ring.label}'
            raise InvalidInput(err_msg)
        return f'v={parse_poly(text[2:], ring.spec)}'
    err_msg = f'unknown place {text!r}'
    raise InvalidInput(err_msg, hint='use infty or v=POLY')


def scan_exponents(ring: BaseRing, place: str, j_max: int) -> list[int]:
    if place == INFTY:
        return [j for j in range(1, j_max + 1) if j % (ring.r - 1) == 0]
    return list(range(1, j_max + 1))


def report_one(selector: str, place: str, j: int, d_max: int | None = None) -> TrivialZeroReport:
    """One order report; module level so worker processes can run it."""
    ring = ring_from_selector(selector)
    if place == INFTY:
        return trivial_zero_report(ring, j, d_max)
    if not isinstance(ring, FqtRing):
        err_msg = f'finite places are only supported over F_r[T], not {ring.label}'
        raise InvalidInput(err_msg)
    v = parse_poly(place[2:], ring.spec)
    return vadic_trivial_zero_order(ring, v, j, d_max)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')


class Checkpoint:
    """Per-j reports of one scan, persisted as a single JSON file."""

    def __init__(self, path: Path, ring: str, place: str, d_max: int | None) -> None:
        self.path = path
        self.params = {'ring': ring, 'place': place, 'd_max': d_max}
        self.entries: dict[int, TrivialZeroReport] = {}
        self.started = _now()

    @classmethod
    def load(cls, path: Path, ring: str, place: str, d_max: int | None) -> Checkpoint:
        checkpoint = cls(path, ring, place, d_max)
        if not path.exists():
            log.info(f'checkpoint {path.as_posix()!r} not found, starting fresh')
            return checkpoint
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
            stored = data['params']
            entries = _entries.validate_python(data['entries'])
        except (OSError, ValueError, KeyError) as err:
            err_msg = f'cannot read checkpoint {path.as_posix()!r}: {err}'
            raise CheckpointError(err_msg) from err
        if stored != checkpoint.params:
            err_msg = f'checkpoint {path.as_posix()!r} belongs to {stored}, not {checkpoint.params}'
            raise CheckpointError(err_msg)
        checkpoint.entries = {e.j: e for e in entries}
        checkpoint.started = data.get('started', checkpoint.started)
        log.info(f'resuming from {path.as_posix()!r} with {len(entries)} completed exponents')
        return checkpoint

    def add(self, report: TrivialZeroReport) -> None:
        self.entries[report.j] = report
        self.store()

    def store(self) -> None:
        entries = [self.entries[j] for j in sorted(self.entries)]
        data = {
            'params': self.params,
            'started': self.started,
            'updated': _now(),
            'entries': _entries.dump_python(entries, mode='json'),
        }
        atomic_write(self.path, json.dumps(data, indent=2))


@astimeit
async def _run_pool(
    selector: str,
    place: str,
    todo: list[int],
    workers: int,
    d_max: int | None,
    on_done: Callable[[TrivialZeroReport], None],
) -> None:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, report_one, selector, place, j, d_max) for j in todo]
        try:
            for fut in asyncio.as_completed(futures):
                on_done(await fut)
        except BaseException:
            pool.shutdown(wait=False, cancel_futures=True)
            _drain(futures)
            raise


def _drain(futures: list[asyncio.Future[TrivialZeroReport]]) -> None:
    """Cancel pending futures and retrieve the errors of finished ones."""
    for fut in futures:
        if not fut.done():
            fut.cancel()
        elif not fut.cancelled():
            fut.exception()


@timeit
def scan_nonclassical_set(
    ring: BaseRing,
    place: str = INFTY,
    j_max: int = 1,
    resume_from: Path | None = None,
    checkpoint: Path | None = None,
    workers: int = 1,
    d_max: int | None = None,
    stamp: bool = False,
) -> ScanReport:
    if j_max < 1:
        err_msg = f'j_max={j_max} must be at least 1'
        raise InvalidInput(err_msg)
    place = parse_place(ring, place)
    if resume_from is not None and not resume_from.exists():
        err_msg = f'nothing to resume: {resume_from.as_posix()!r} does not exist'
        raise CheckpointError(err_msg, hint='start the scan with --checkpoint instead')
    path = resume_from or checkpoint
    state = Checkpoint.load(path, ring.label, place, d_max) if path else None
    done: dict[int, TrivialZeroReport] = dict(state.entries) if state else {}
    todo = [j for j in scan_exponents(ring, place, j_max) if j not in done]
    log.info(f'{ring.label} at {place}: {len(todo)} exponents to scan, {len(done)} from checkpoint')

    def on_done(report: TrivialZeroReport) -> None:
        done[report.j] = report
        if state is not None:
            state.add(report)

    try:
        if workers > 1 and len(todo) > 1:
            asyncio.run(_run_pool(ring.label, place, todo, workers, d_max, on_done))
        else:
            for j in todo:
                on_done(report_one(ring.label, place, j, d_max))
    except TruncationInsufficient as err:
        log.error(f'scan stopped at j={err.j}: {err}')
        raise

    wanted = set(scan_exponents(ring, place, j_max))
    entries = [done[j] for j in sorted(done) if j in wanted]
    return build_report(ring, place, j_max, entries, d_max, stamp)


def _growth(nonclassical: list[int], j_max: int, p: int) -> list[GrowthPoint]:
    bounds = sorted({2**k for k in range(j_max.bit_length()) if 2**k <= j_max} | {j_max})
    points = []
    for b in bounds:
        sums = [digit_sum(j, p) for j in nonclassical if j <= b]
        points.append(GrowthPoint(bound=b, max_lp=max(sums) if sums else None))
    return points


def _anomalies(growth: list[GrowthPoint], window_start: int = ANOMALY_WINDOW_START) -> list[int]:
    out = []
    for prev, cur in zip(growth, growth[1:]):
        before = -1 if prev.max_lp is None else prev.max_lp
        after = -1 if cur.max_lp is None else cur.max_lp
        if prev.bound >= window_start and after > before:
            out.append(cur.bound)
    return out


def build_report(
    ring: BaseRing,
    place: str,
    j_max: int,
    entries: list[TrivialZeroReport],
    d_max: int | None = None,
    stamp: bool = False,
) -> ScanReport:
    entries = sorted(entries, key=lambda e: e.j)
    nonclassical = [e.j for e in entries if e.nonclassical]
    flagged = set(nonclassical)
    scanned = {e.j for e in entries}
    violations = [(j, ring.p * j) for j in nonclassical if ring.p * j in scanned and ring.p * j not in flagged]
    for j, pj in violations:
        log.error(f'{ring.label}: {j} is non-classical but {pj} is not')
    growth = _growth(nonclassical, j_max, ring.p)
    anomalies = _anomalies(growth)
    for bound in anomalies:
        log.warning(f'{ring.label}: max digit sum over the non-classical set grew at j <= {bound}')

    metadata: dict[str, Any] = {
        **ring.metadata(),
        'place': place,
        'version': __about__.__version__,
        'd_max': 'default' if d_max is None else d_max,
    }
    if ring.experimental:
        metadata['experimental'] = True
    if stamp:
        metadata['generated'] = _now()
    sums = [digit_sum(j, ring.p) for j in nonclassical]
    return ScanReport(
        ring=ring.label,
        place=place,
        j_max=j_max,
        entries=entries,
        nonclassical_set=nonclassical,
        max_lp_nonclassical=max(sums) if sums else None,
        closure_violations=violations,
        growth=growth,
        anomalies=anomalies,
        metadata=metadata,
    )


def digit_closure_analysis(report: ScanReport) -> ClosureAnalysis:
    return ClosureAnalysis(
        bounded_evidence=report.max_lp_nonclassical,
        histogram_nonclassical=dict(sorted(Counter(e.l_p for e in report.entries if e.nonclassical).items())),
        histogram_all=dict(sorted(Counter(e.l_p for e in report.entries).items())),
        closure_ok=not report.closure_violations,
    )


def hayes_shift_view(report: ScanReport) -> list[HayesRow]:
    """Non-classical set of L(psi, s) = zeta(s - 1): j is flagged iff j + 1 is."""
    if report.place != INFTY:
        err_msg = f'the shifted view needs a scan at infinity, not {report.place}'
        raise InvalidInput(err_msg)
    p = report.metadata.get('p', 2)
    flagged = set(report.nonclassical_set)
    scanned = set(report.scanned)
    return [
        HayesRow(
            j=j,
            l_p=digit_sum(j, p),
            l_p_next=digit_sum(j + 1, p),
            nonclassical_shifted=j + 1 in flagged,
        )
        for j in sorted(scanned)
        if j + 1 in scanned
    ]
