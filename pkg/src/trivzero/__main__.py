from __future__ import annotations

import logging
import sys

import click

from trivzero._exceptions import COMPUTATION_EXCEPTIONS
from trivzero._exceptions import CONFIG_EXCEPTIONS
from trivzero.cli import cli

log = logging.getLogger(__name__)


def _report(err: BaseException) -> None:
    log.error(err)
    hint = getattr(err, 'hint', '')
    click.echo(f'error: {err}', err=True)
    if hint:
        click.echo(f'hint: {hint}', err=True)


def main(argv: list[str] | None = None) -> int:
    """Exit codes: 0 ok, 1 computation error, 2 usage or config error."""
    try:
        rc = cli.main(args=argv, prog_name='trivzero', standalone_mode=False)
    except CONFIG_EXCEPTIONS as err:
        _report(err)
        return 2
    except click.ClickException as err:
        _report(err)
        return 2
    except COMPUTATION_EXCEPTIONS as err:
        _report(err)
        return 1
    except (KeyboardInterrupt, click.Abort):
        log.info('terminated by user')
        return 1
    return rc if isinstance(rc, int) else 0


if __name__ == '__main__':
    sys.exit(main())
