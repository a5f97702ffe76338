from __future__ import annotations

import pickle
from pathlib import Path

import pytest

from trivzero._exceptions import CheckpointError
from trivzero._exceptions import InvalidInput
from trivzero._exceptions import RamifiedPlace
from trivzero._exceptions import TruncationInsufficient
from trivzero.export import report_to_dict
from trivzero.models.reports import TrivialZeroReport
from trivzero.rings import BaseRing
from trivzero.rings import ring_from_selector
from trivzero.scan import build_report
from trivzero.scan import digit_closure_analysis
from trivzero.scan import hayes_shift_view
from trivzero.scan import parse_place
from trivzero.scan import scan_nonclassical_set


def test_genus1_powers_of_two_are_flagged(genus1: BaseRing) -> None:
    report = scan_nonclassical_set(genus1, 'infty', 32)
    assert report.scanned == list(range(1, 33))
    assert {1, 2, 4, 8, 16, 32} <= set(report.nonclassical_set)
    assert report.closure_violations == []
    assert report.metadata['genus'] == 1
    assert 'generated' not in report.metadata


def test_fqt_has_no_nonclassical_zeroes(fqt2: BaseRing) -> None:
    report = scan_nonclassical_set(fqt2, 'infty', 64)
    assert report.nonclassical_set == []
    assert report.max_lp_nonclassical is None
    assert report.anomalies == []
    assert all(point.max_lp is None for point in report.growth)


def test_fqt3_scans_multiples_of_two(fqt3: BaseRing) -> None:
    report = scan_nonclassical_set(fqt3, 'infty', 20)
    assert report.scanned == list(range(2, 21, 2))
    assert report.nonclassical_set == []


def test_genus2_small_scan(genus2: BaseRing) -> None:
    report = scan_nonclassical_set(genus2, 'infty', 8)
    assert 7 not in report.nonclassical_set
    assert {1, 2, 4, 8} <= set(report.nonclassical_set)


def test_closure_analysis(genus1: BaseRing) -> None:
    analysis = digit_closure_analysis(scan_nonclassical_set(genus1, 'infty', 8))
    assert analysis.closure_ok
    assert analysis.histogram_all == {1: 4, 2: 3, 3: 1}
    assert analysis.bounded_evidence is not None
    assert sum(analysis.histogram_nonclassical.values()) <= 8


def test_hayes_view(genus1: BaseRing) -> None:
    report = scan_nonclassical_set(genus1, 'infty', 8)
    rows = hayes_shift_view(report)
    assert [row.j for row in rows] == list(range(1, 8))
    first = rows[0]
    assert (first.l_p, first.l_p_next, first.nonclassical_shifted) == (1, 1, True)


def test_synthetic_report_flags_violations_and_anomalies(fqt2: BaseRing) -> None:
    def entry(j: int, v1: int, l_p: int) -> TrivialZeroReport:
        return TrivialZeroReport(ring='fqt:2', j=j, v0=1, v1=v1, l_p=l_p, l_r=l_p)

    report = build_report(fqt2, 'infty', 32, [entry(31, 2, 5), entry(6, 1, 2), entry(3, 2, 2)])
    assert report.scanned == [3, 6, 31]
    assert report.nonclassical_set == [3, 31]
    assert report.closure_violations == [(3, 6)]
    assert [(g.bound, g.max_lp) for g in report.growth] == [
        (1, None),
        (2, None),
        (4, 2),
        (8, 2),
        (16, 2),
        (32, 5),
    ]
    assert report.anomalies == [32]
    assert not digit_closure_analysis(report).closure_ok


def test_vadic_scan(fqt2: BaseRing) -> None:
    report = scan_nonclassical_set(fqt2, 'v=T', 6)
    assert report.place == 'v=T'
    assert report.scanned == list(range(1, 7))
    assert all(e.place == 'v=T' and e.v1 >= 1 for e in report.entries)
    with pytest.raises(InvalidInput):
        hayes_shift_view(report)


def test_parse_place(fqt2: BaseRing, genus1: BaseRing) -> None:
    assert parse_place(fqt2, ' infty ') == 'infty'
    assert parse_place(fqt2, 'v=T^2 + T + 1') == 'v=T^2+T+1'
    with pytest.raises(InvalidInput):
        parse_place(genus1, 'v=T')
    with pytest.raises(InvalidInput):
        parse_place(fqt2, 'zero')
    with pytest.raises(InvalidInput):
        scan_nonclassical_set(fqt2, 'infty', 0)


def test_resume_matches_fresh_scan(genus1: BaseRing, tmp_path: Path) -> None:
    path = tmp_path / 'scan.json'
    partial = scan_nonclassical_set(genus1, 'infty', 8, checkpoint=path)
    assert path.exists()
    assert partial.scanned == list(range(1, 9))
    resumed = scan_nonclassical_set(genus1, 'infty', 16, resume_from=path)
    fresh = scan_nonclassical_set(genus1, 'infty', 16)
    assert report_to_dict(resumed) == report_to_dict(fresh)


def test_checkpoint_errors(fqt2: BaseRing, fqt3: BaseRing, tmp_path: Path) -> None:
    path = tmp_path / 'scan.json'
    scan_nonclassical_set(fqt2, 'infty', 4, checkpoint=path)
    with pytest.raises(CheckpointError):
        scan_nonclassical_set(fqt3, 'infty', 4, resume_from=path)
    with pytest.raises(CheckpointError):
        scan_nonclassical_set(fqt2, 'infty', 4, resume_from=path, d_max=20)
    broken = tmp_path / 'broken.json'
    broken.write_text('{"params": ', encoding='utf-8')
    with pytest.raises(CheckpointError):
        scan_nonclassical_set(fqt2, 'infty', 4, resume_from=broken)


def test_missing_checkpoint_starts_fresh(fqt2: BaseRing, tmp_path: Path) -> None:
    path = tmp_path / 'nested' / 'scan.json'
    report = scan_nonclassical_set(fqt2, 'infty', 4, checkpoint=path)
    assert report.scanned == [1, 2, 3, 4]
    assert path.exists()


def test_resume_needs_an_existing_checkpoint(fqt2: BaseRing, tmp_path: Path) -> None:
    with pytest.raises(CheckpointError):
        scan_nonclassical_set(fqt2, 'infty', 4, resume_from=tmp_path / 'missing.json')


@pytest.mark.slow
def test_worker_pool_matches_serial(genus1: BaseRing) -> None:
    serial = scan_nonclassical_set(genus1, 'infty', 24)
    pooled = scan_nonclassical_set(genus1, 'infty', 24, workers=2)
    assert report_to_dict(pooled) == report_to_dict(serial)


def test_worker_errors_keep_their_exponent(genus1: BaseRing) -> None:
    with pytest.raises(TruncationInsufficient) as excinfo:
        scan_nonclassical_set(genus1, 'infty', 4, d_max=2, workers=2)
    assert 1 <= excinfo.value.j <= 4
    assert excinfo.value.d_max == 2


def test_truncation_error_survives_pickling() -> None:
    err = TruncationInsufficient('tail does not vanish', j=7, d_max=3)
    copy = pickle.loads(pickle.dumps(err))
    assert (str(copy), copy.j, copy.d_max, copy.hint) == (str(err), 7, 3, err.hint)
    ramified = pickle.loads(pickle.dumps(RamifiedPlace('v divides f', hint='pick another v')))
    assert ramified.hint == 'pick another v'


@pytest.mark.slow
@pytest.mark.parametrize('selector', ['genus1', 'genus2'])
def test_curve_scans_have_flat_digit_growth(selector: str) -> None:
    report = scan_nonclassical_set(ring_from_selector(selector), 'infty', 256)
    growth = {point.bound: point.max_lp for point in report.growth}
    assert growth[128] == growth[256]
    assert report.anomalies == []
    assert report.closure_violations == []


@pytest.mark.slow
@pytest.mark.parametrize('r', [2, 3, 4, 5])
def test_fqt_scans_stay_classical(r: int) -> None:
    report = scan_nonclassical_set(ring_from_selector(f'fqt:{r}'), 'infty', 1000)
    assert report.nonclassical_set == []
    assert all(e.v1 == 1 for e in report.entries)


@pytest.mark.slow
@pytest.mark.parametrize(('r', 'v'), [(2, 'T'), (2, 'T+1'), (3, 'T'), (3, 'T+1'), (3, 'T+2')])
def test_vadic_scans_are_closed(r: int, v: str) -> None:
    report = scan_nonclassical_set(ring_from_selector(f'fqt:{r}'), f'v={v}', 128)
    assert report.scanned == list(range(1, 129))
    assert report.nonclassical_set == []
    assert report.closure_violations == []
