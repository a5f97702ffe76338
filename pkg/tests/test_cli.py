from __future__ import annotations

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from trivzero.__main__ import main
from trivzero.characters import parse_character
from trivzero.cli import cli
from trivzero.constants import OUTPUT_DIR_ENV


@pytest.fixture()
def runner() -> CliRunner:
    return CliRunner(mix_stderr=False)


def invoke(runner: CliRunner, *args: str) -> dict:
    result = runner.invoke(cli, list(args), catch_exceptions=False)
    assert result.exit_code == 0, result.stderr
    return json.loads(result.stdout)


def test_special(runner: CliRunner) -> None:
    out = invoke(runner, 'special', '--ring', 'fqt:2', '--j', '3')
    assert out['coeffs'] == ['1', 'T^2+T+1', 'T^2+T']
    assert out['char'] == 'trivial'
    assert out['tail_certified'] is True
    assert invoke(runner, 'special', '--r', '3', '--j', '0')['coeffs'] == ['1']


def test_trivzero(runner: CliRunner) -> None:
    out = invoke(runner, 'trivzero', '--ring', 'genus2', '--j', '7')
    assert (out['v1'], out['nonclassical'], out['l_p']) == (1, False, 3)
    result = runner.invoke(cli, ['trivzero', '--ring', 'genus1', '--j', '1', '--format', 'csv'])
    assert result.stdout.splitlines()[1].startswith('1,1,1,1,2,true,')


def test_trivzero_with_character(runner: CliRunner) -> None:
    out = invoke(runner, 'trivzero', '--char', 'r=2,f=T,k=0', '--j', '1')
    assert out['ring'] == 'fqt:2'
    assert out['detected'] == {'1': 1}


def test_newton(runner: CliRunner) -> None:
    out = invoke(runner, 'newton', '--ring', 'fqt:2', '--j', '3')
    assert out['segments'] == '-2:1|0:1'
    assert out['simple'] is True
    out = invoke(runner, 'newton', '--ring', 'genus1', '--j', '1')
    assert out['violations'] == ['0:2']
    out = invoke(runner, 'newton', '--ring', 'fqt:2', '--j', '1', '--v', 'T')
    assert out['place'] == 'v=T'


def test_vadic(runner: CliRunner) -> None:
    out = invoke(runner, 'vadic', '--ring', 'fqt:2', '--v', 'T', '--j', '1', '--order', '--congr', '3', '1')
    assert out['vadic']['coeffs'] == ['1', 'T+1', 'T']
    assert out['order']['v1'] == 1
    assert out['continuity'] == {'j2': 3, 'N': 1, 'holds': True, 'witness': None}


def test_scan(runner: CliRunner) -> None:
    out = invoke(runner, 'scan', '--ring', 'fqt:3', '--jmax', '40')
    assert out['nonclassical_set'] == []
    assert len(out['entries']) == 20
    closure = invoke(runner, 'scan', '--ring', 'genus1', '--jmax', '8', '--view', 'closure')
    assert closure['closure_ok'] is True
    hayes = invoke(runner, 'scan', '--ring', 'genus1', '--jmax', '8', '--view', 'hayes')
    assert hayes['rows'][0]['nonclassical_shifted'] is True


def test_scan_checkpoints_under_output_dir(
    runner: CliRunner,
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    monkeypatch.setenv(OUTPUT_DIR_ENV, tmp_path.as_posix())
    first = invoke(runner, 'scan', '--ring', 'fqt:2', '--jmax', '4', '--checkpoint', 'ck.json')
    assert (tmp_path / 'ck.json').exists()
    resumed = invoke(runner, 'scan', '--ring', 'fqt:2', '--jmax', '8', '--resume', 'ck.json')
    assert [e['j'] for e in resumed['entries']] == list(range(1, 9))
    assert resumed['entries'][:4] == first['entries']


def test_char(runner: CliRunner) -> None:
    out = invoke(runner, 'char', '--char', 'r=2,f=T^2+T+1,k=1')
    chi = parse_character('r=2,f=T^2+T+1,k=1')
    assert len(out['values']) == 3
    assert out['character']['order'] == 3
    assert out['orthogonality_sum'] == str(chi.value_field.zero)


def test_family_and_profile(runner: CliRunner) -> None:
    out = invoke(runner, 'family', '--ring', 'fqt:2', '--d', '2', '--y', '3', '--n', '8')
    assert out['exact'] is True
    assert out['coefficient'] == 'pi^5+pi^4'
    out = invoke(runner, 'profile', '--ring', 'fqt:2', '--jmin', '1', '--jmax', '8')
    assert [row['j'] for row in out['rows']] == list(range(1, 9))
    assert all(row['within'] for row in out['rows'])


def test_config_file_and_output_dir(runner: CliRunner, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    config = tmp_path / 'run.yaml'
    config.write_text('ring: genus1\nj: 1\n', encoding='utf-8')
    assert invoke(runner, '--config', config.as_posix(), 'special')['coeffs'] == ['1;0', '0;0', '1;0']
    assert invoke(runner, '--config', config.as_posix(), 'special', '--j', '2')['j'] == 2

    monkeypatch.setenv(OUTPUT_DIR_ENV, tmp_path.as_posix())
    result = runner.invoke(cli, ['special', '--j', '3', '--out', 'z.json'])
    assert result.exit_code == 0
    assert result.stdout == ''
    assert json.loads((tmp_path / 'z.json').read_text(encoding='utf-8'))['j'] == 3


@pytest.mark.parametrize(
    ('argv', 'code'),
    [
        (['special', '--j', '3'], 0),
        (['trivzero', '--ring', 'fqt:2', '--j', '0'], 1),
        (['trivzero', '--ring', 'fqt:3', '--j', '3'], 1),
        (['special', '--j', '3', '--dmax', '1'], 1),
        (['special', '--r', '7'], 2),
        (['vadic', '--j', '1'], 2),
        (['vadic', '--v', 'T^2+1', '--j', '1'], 2),
        (['special', '--ring', 'genus9'], 2),
        (['scan', '--ring', 'genus1', '--jmax', '4', '--dmax', '2', '--workers', '2'], 1),
        (['scan', '--ring', 'fqt:2', '--jmax', '4', '--resume', 'no-such-checkpoint.json'], 1),
        (['nosuch'], 2),
    ],
)
def test_exit_codes(argv: list[str], code: int, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(argv) == code
    err = capsys.readouterr().err
    if code:
        assert any(line.startswith('error: ') for line in err.splitlines())
