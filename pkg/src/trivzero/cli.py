# cli.py

from __future__ import annotations

import functools
import logging
from pathlib import Path
from typing import Any
from typing import Callable

import click
from click.core import ParameterSource
from pydantic import TypeAdapter

from trivzero import logger
from trivzero.__about__ import __version__
from trivzero.characters import character_value
from trivzero.characters import closure_exponent
from trivzero.characters import parse_character
from trivzero.config import RunConfig
from trivzero.config import build_config
from trivzero.config import load_envs
from trivzero.config import output_path
from trivzero.constants import DEFAULT_JMAX_FQT
from trivzero.constants import DEFAULT_JMAX_GENUS
from trivzero.constants import DEFAULT_JMAX_VADIC
from trivzero.constants import DESC
from trivzero.export import render_csv
from trivzero.export import render_json
from trivzero.export import render_report
from trivzero.format import stringify
from trivzero.helpers import atomic_write
from trivzero.models.series import PadicExponent
from trivzero.polys import BasePolynomial
from trivzero.polys import parse_poly
from trivzero.rings import FqtRing
from trivzero.rings import ring_from_selector
from trivzero.scan import INFTY
from trivzero.scan import digit_closure_analysis
from trivzero.scan import hayes_shift_view
from trivzero.scan import scan_nonclassical_set
from trivzero.special import degree_profile
from trivzero.special import family_coefficient
from trivzero.special import special_polynomial
from trivzero.vadic import vadic_continuity_check
from trivzero.vadic import vadic_newton_polygon
from trivzero.vadic import vadic_special_polynomial
from trivzero.vadic import vadic_trivial_zero_order
from trivzero.zeroes import newton_polygon_at_infinity
from trivzero.zeroes import rh_simplicity_check
from trivzero.zeroes import trivial_zero_report
from trivzero.zeroes import unit_root_multiplicities

log = logging.getLogger(__name__)


def ring_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option('--char', help='character r=R,f=POLY,k=K (F_r[T] only)')(func)
    func = click.option('--dmax', 'd_max', type=int, help='highest stratum degree to compute')(func)
    func = click.option('--r', type=int, help='shorthand for --ring fqt:R')(func)
    return click.option('--ring', help='fqt:R, genus1, genus2 or curve:h=POLY')(func)


def output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option('--format', type=click.Choice(['csv', 'json']), help='output format')(func)
    return click.option('--out', type=click.Path(path_type=Path, dir_okay=False), help='write here, not stdout')(func)


def _given(ctx: click.Context) -> dict[str, Any]:
    return {k: v for k, v in ctx.params.items() if ctx.get_parameter_source(k) is not ParameterSource.DEFAULT}


def command(name: str) -> Callable[..., Any]:
    """Turn the subcommand's flags into a RunConfig and run it."""

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        @functools.wraps(func)
        @click.pass_context
        def wrapper(ctx: click.Context, **kwargs: Any) -> int:
            config = build_config(name, _given(ctx), ctx.obj.get('config_file'))
            log.debug(f'config: {config!r}')
            return run_command(config)

        return wrapper

    return decorator


@click.group(help=DESC)
@click.option('-v', '--verbose', count=True, help='increase verbosity (-v, -vv, -vvv)')
@click.option('--config', 'config_file', type=click.Path(path_type=Path, dir_okay=False), help='YAML/JSON defaults')
@click.option('--env', 'env_file', help='path to env file')
@click.version_option(__version__)
@click.pass_context
def cli(ctx: click.Context, verbose: int, config_file: Path | None, env_file: str | None) -> None:
    logger.verbose(verbose)
    load_envs(env_file)
    ctx.ensure_object(dict)
    ctx.obj['config_file'] = config_file


@cli.command(help='Special polynomial z(u, -j) as coefficient strings.')
@ring_options
@click.option('--j', type=int)
@output_options
@command('special')
def special(**kwargs: Any) -> None: ...


@cli.command(help='Trivial-zero orders v0/v1 at infinity (unit-root detection with --char).')
@ring_options
@click.option('--j', type=int)
@click.option('--degree', type=int, help='search unit roots in F_{q^L} (with --char)')
@output_options
@command('trivzero')
def trivzero(**kwargs: Any) -> None: ...


@cli.command(help='Newton polygon at infinity, or at a finite place with --v.')
@ring_options
@click.option('--j', type=int)
@click.option('--v', help='finite place, e.g. T+1')
@output_options
@command('newton')
def newton(**kwargs: Any) -> None: ...


@cli.command(help='v-adic special polynomial Q with the Euler factor at v removed.')
@ring_options
@click.option('--j', type=int)
@click.option('--v', help='finite place, e.g. T')
@click.option('--order', is_flag=True, help='order of the v-adic trivial zero')
@click.option('--congr', type=(int, int), help='J2 N: check Q(j) = Q(J2) mod v^(N+1)')
@output_options
@command('vadic')
def vadic(**kwargs: Any) -> None: ...


@cli.command(help='Scan trivial zeroes for the non-classical set.')
@ring_options
@click.option('--place', help='infty or v=POLY')
@click.option('--jmax', 'j_max', type=int)
@click.option('--resume', type=click.Path(path_type=Path, dir_okay=False), help='checkpoint to resume from')
@click.option('--checkpoint', type=click.Path(path_type=Path, dir_okay=False), help='checkpoint to write')
@click.option('--workers', type=int)
@click.option('--stamp', is_flag=True, help='record generation time in the report')
@click.option('--view', type=click.Choice(['report', 'closure', 'hayes']))
@output_options
@command('scan')
def scan(**kwargs: Any) -> None: ...


@cli.command(help='Dirichlet character values and metadata.')
@ring_options
@output_options
@command('char')
def char(**kwargs: Any) -> None: ...


@cli.command(help='Coefficient a_d(y) of the p-adic family, mod pi^N.')
@ring_options
@click.option('--d', type=int)
@click.option('--y', help='integer, or base-p digits d0,d1,... of a p-adic integer')
@click.option('--n', type=int, help='pi-adic precision N')
@output_options
@command('family')
def family(**kwargs: Any) -> None: ...


@cli.command(help='Degree of z(u, -j) against the digit-sum envelope.')
@ring_options
@click.option('--jmin', 'j_min', type=int)
@click.option('--jmax', 'j_max', type=int)
@output_options
@command('profile')
def profile(**kwargs: Any) -> None: ...


def _emit(config: RunConfig, text: str) -> None:
    path = output_path(config.out)
    if path is None:
        click.echo(text, nl=False)
        return
    atomic_write(path, text)
    log.info(f'wrote {path.as_posix()!r}')


def _parse_exponent(text: str, p: int) -> PadicExponent:
    if ',' in text:
        return PadicExponent(p=p, digits=tuple(int(x) for x in text.split(',') if x))
    return PadicExponent.from_int(int(text), p)


def _default_jmax(config: RunConfig, ring_is_fqt: bool) -> int:
    if config.j_max is not None:
        return config.j_max
    if config.place != INFTY:
        return DEFAULT_JMAX_VADIC
    return DEFAULT_JMAX_FQT if ring_is_fqt else DEFAULT_JMAX_GENUS


def run_command(config: RunConfig) -> int:
    ring = ring_from_selector(config.selector)
    chi = parse_character(config.char) if config.char else None
    if ring.experimental:
        log.warning(f'{ring.label} is experimental')

    if config.command == 'special':
        z = special_polynomial(ring, chi, config.j, config.d_max, blocks=config.workers)
        _emit(config, render_json(z.record()))

    elif config.command == 'trivzero':
        if chi is not None:
            z = special_polynomial(ring, chi, config.j, config.d_max)
            roots = unit_root_multiplicities(z.coeffs, config.degree)
            payload = {
                'ring': ring.label,
                'char': chi.label,
                'j': config.j,
                'detected': {str(beta): m for beta, m in roots.items()},
            }
            _emit(config, render_json(payload))
            return 0
        report = trivial_zero_report(ring, config.j, config.d_max)
        if config.format == 'csv':
            _emit(config, render_csv([report]))
        else:
            _emit(config, render_json({'ring': ring.label, **report.row(), 'nonclassical': report.nonclassical}))

    elif config.command == 'newton':
        if config.v:
            if not isinstance(ring, FqtRing):
                err_msg = f'finite places are only supported over F_r[T], not {ring.label}'
                raise click.UsageError(err_msg)
            q = vadic_special_polynomial(ring, chi, parse_poly(config.v, ring.spec), config.j, config.d_max)
            polygon = vadic_newton_polygon(q)
        else:
            polygon = newton_polygon_at_infinity(special_polynomial(ring, chi, config.j, config.d_max))
        check = rh_simplicity_check(polygon)
        payload = {
            'ring': ring.label,
            'j': config.j,
            'place': f'v={config.v}' if config.v else INFTY,
            'points': [list(pt) for pt in polygon.points],
            'segments': polygon.slopes_text(),
            'simple': check.holds,
            'violations': [f'{s.slope}:{s.length}' for s in check.violations],
        }
        _emit(config, render_json(payload))

    elif config.command == 'vadic':
        if not isinstance(ring, FqtRing):
            err_msg = f'v-adic interpolation is only supported over F_r[T], not {ring.label}'
            raise click.UsageError(err_msg)
        v = parse_poly(config.v or '', ring.spec)
        q = vadic_special_polynomial(ring, chi, v, config.j, config.d_max)
        out: dict[str, Any] = {'vadic': _as_dict(q.record())}
        if config.order:
            out['order'] = vadic_trivial_zero_order(ring, v, config.j, config.d_max).row()
        if config.congr:
            j2, n = config.congr
            result = vadic_continuity_check(ring, chi, v, config.j, j2, n)
            out['continuity'] = {'j2': j2, 'N': n, 'holds': result.holds, 'witness': result.witness}
        _emit(config, render_json(out))

    elif config.command == 'scan':
        report = scan_nonclassical_set(
            ring,
            place=config.place,
            j_max=_default_jmax(config, isinstance(ring, FqtRing)),
            resume_from=output_path(config.resume),
            checkpoint=output_path(config.checkpoint),
            workers=config.workers,
            d_max=config.d_max,
            stamp=config.stamp,
        )
        analysis = digit_closure_analysis(report)
        log.info(f'closure_ok={analysis.closure_ok} bounded_evidence={analysis.bounded_evidence}')
        if config.view == 'closure':
            _emit(config, render_json(analysis))
        elif config.view == 'hayes':
            _emit(config, render_json({'ring': report.ring, 'rows': [_as_dict(r) for r in hayes_shift_view(report)]}))
        else:
            _emit(config, render_report(report, config.format))

    elif config.command == 'char':
        if chi is None:
            err_msg = 'char needs --char'
            raise click.UsageError(err_msg)
        residues = [BasePolynomial.from_ints(chi.base, _index_digits(i, chi.r, chi.degree)) for i in range(1, chi.r**chi.degree)]
        values = {str(n): character_value(chi, n) for n in residues}
        total = chi.value_field.zero
        for value in values.values():
            if value is not None:
                total = total + value
        for line in stringify({'character': chi.label, 'order': chi.order, 'q_chi': closure_exponent(chi)}):
            log.info(line)
        payload = {
            'character': chi.metadata(),
            'values': {n: str(value) for n, value in values.items()},
            'orthogonality_sum': str(total),
        }
        _emit(config, render_json(payload))

    elif config.command == 'family':
        y = _parse_exponent(config.y or '0', ring.p)
        coeff = family_coefficient(ring, config.d, y, config.n)
        payload = {'ring': ring.label, 'd': config.d, 'y': list(y.digits), 'exact': y.exact, 'N': config.n}
        _emit(config, render_json({**payload, 'coefficient': str(coeff)}))

    elif config.command == 'profile':
        j_max = config.j_max if config.j_max is not None else config.j_min + 15
        rows = degree_profile(ring, range(config.j_min, j_max + 1), chi)
        payload = {'ring': ring.label, 'rows': [{**_as_dict(r), 'within': r.within} for r in rows]}
        _emit(config, render_json(payload))

    return 0


def _index_digits(i: int, r: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        i, c = divmod(i, r)
        out.append(c)
    return out


def _as_dict(record: Any) -> dict[str, Any]:
    return TypeAdapter(type(record)).dump_python(record, mode='json')
