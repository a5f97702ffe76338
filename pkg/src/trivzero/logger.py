# logger.py

from __future__ import annotations

import logging
import sys

# galois compiles through numba, which is chatty at DEBUG
NOISY_LOGGERS = ('numba', 'matplotlib')

LEVELS = (logging.ERROR, logging.WARNING, logging.INFO, logging.DEBUG)


class Color:
    GREY = '\33[37;2m'
    CYAN = '\33[36m'
    YELLOW = '\33[33m'
    RED = '\33[31m'
    BOLD_RED = '\033[31;1m'
    RESET = '\33[0m'


FMT = '[{levelname:^7}] {name:<22}: {message} (line:{lineno})'

LEVEL_COLORS = {
    logging.DEBUG: Color.GREY,
    logging.INFO: Color.CYAN,
    logging.WARNING: Color.YELLOW,
    logging.ERROR: Color.RED,
    logging.CRITICAL: Color.BOLD_RED,
}


class LevelFormatter(logging.Formatter):
    """Colors by level when the stream is a terminal, plain text otherwise."""

    def __init__(self, color: bool = True) -> None:
        super().__init__(FMT, style='{')
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if not self.color:
            return text
        return f'{LEVEL_COLORS.get(record.levelno, "")}{text}{Color.RESET}'


def stderr_handler() -> logging.Handler:
    # stdout carries the json/csv payloads
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(LevelFormatter(color=sys.stderr.isatty()))
    return handler


def level_for(verbose: int) -> int:
    return LEVELS[max(0, min(verbose, len(LEVELS) - 1))]


def verbose(verbose: int) -> None:
    level = level_for(verbose)
    logging.basicConfig(level=level, handlers=[stderr_handler()], force=True)
    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(max(level, logging.WARNING))
