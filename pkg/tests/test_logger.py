from __future__ import annotations

import logging

from trivzero import logger


def test_level_for() -> None:
    assert logger.level_for(0) == logging.ERROR
    assert logger.level_for(2) == logging.INFO
    assert logger.level_for(9) == logging.DEBUG
    assert logger.level_for(-1) == logging.ERROR


def test_plain_and_colored_format() -> None:
    record = logging.LogRecord('trivzero.scan', logging.WARNING, __file__, 7, 'grew at %d', (32,), None)
    plain = logger.LevelFormatter(color=False).format(record)
    assert plain.startswith('[WARNING] trivzero.scan')
    assert plain.endswith('grew at 32 (line:7)')
    colored = logger.LevelFormatter(color=True).format(record)
    assert colored == f'{logger.Color.YELLOW}{plain}{logger.Color.RESET}'


def test_verbose_quiets_numba() -> None:
    logger.verbose(3)
    assert logging.getLogger().level == logging.DEBUG
    assert logging.getLogger('numba').level == logging.WARNING
    logger.verbose(0)
    assert logging.getLogger().level == logging.ERROR
