# config.py

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import Any
from typing import Literal

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel
from pydantic import ConfigDict
from pydantic import Field
from pydantic import field_validator
from pydantic import model_validator

from trivzero._exceptions import InvalidConfigError
from trivzero.constants import OUTPUT_DIR_ENV
from trivzero.constants import SUPPORTED_R

log = logging.getLogger(__name__)

Command = Literal['special', 'trivzero', 'newton', 'vadic', 'scan', 'char', 'family', 'profile']


class RunConfig(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    command: Command
    ring: str = 'fqt:2'
    r: int | None = None
    j: int = Field(default=1, ge=0)
    j_min: int = Field(default=1, ge=0)
    j_max: int | None = Field(default=None, ge=1)
    n: int = Field(default=4, ge=1)
    d: int = Field(default=0, ge=0)
    d_max: int | None = Field(default=None, ge=0)
    degree: int = Field(default=1, ge=1)
    char: str | None = None
    place: str = 'infty'
    v: str | None = None
    y: str | None = None
    order: bool = False
    congr: tuple[int, int] | None = None
    out: Path | None = None
    format: Literal['csv', 'json'] = 'json'
    workers: int = Field(default=1, ge=1)
    resume: Path | None = None
    checkpoint: Path | None = None
    stamp: bool = False
    view: Literal['report', 'closure', 'hayes'] = 'report'

    @model_validator(mode='before')
    @classmethod
    def _ring_from_char(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get('char') and not data.get('ring') and data.get('r') is None:
            match = re.match(r'^r=(\d+),', str(data['char']).strip())
            if match:
                data = {**data, 'ring': f'fqt:{match.group(1)}'}
        return data

    @field_validator('r')
    @classmethod
    def _supported_r(cls, r: int | None) -> int | None:
        if r is not None and r not in SUPPORTED_R:
            err_msg = f'r={r} is not one of {SUPPORTED_R}'
            raise ValueError(err_msg)
        return r

    @field_validator('ring')
    @classmethod
    def _known_ring(cls, ring: str) -> str:
        ring = ring.strip()
        if ring in ('genus1', 'genus2') or ring.startswith(('fqt:', 'curve:h=')):
            return ring
        err_msg = f'unknown ring {ring!r}, use fqt:R, genus1, genus2 or curve:h=POLY'
        raise ValueError(err_msg)

    @model_validator(mode='after')
    def _combinations(self) -> RunConfig:
        if self.command == 'vadic' and not self.v:
            err_msg = 'vadic needs --v POLY'
            raise ValueError(err_msg)
        if self.command == 'char' and not self.char:
            err_msg = 'char needs --char r=R,f=POLY,k=K'
            raise ValueError(err_msg)
        if self.command == 'family' and not self.y:
            err_msg = 'family needs --y (an integer or base-p digits d0,d1,...)'
            raise ValueError(err_msg)
        if self.char and not self.ring.startswith('fqt:'):
            err_msg = f'characters need an fqt ring, not {self.ring}'
            raise ValueError(err_msg)
        if self.j_max is not None and self.j_min > self.j_max:
            err_msg = f'j_min={self.j_min} exceeds j_max={self.j_max}'
            raise ValueError(err_msg)
        return self

    @property
    def selector(self) -> str:
        """Ring selector with --r folded in."""
        if self.r is not None:
            return f'fqt:{self.r}'
        return self.ring


def load_envs(filepath: str | None = None) -> None:
    """Load envs if path"""
    if not filepath:
        log.debug('env: loading from .env or exported env vars')
        load_dotenv()
        return

    envfilepath = Path(filepath).expanduser()
    if not envfilepath.is_file():
        err_msg = f'{envfilepath=!s} is not a file'
        raise InvalidConfigError(err_msg)

    log.info(f'env: loading envs from {envfilepath=!s}')
    load_dotenv(dotenv_path=envfilepath.as_posix())


def read_config_file(path: Path) -> dict[str, Any]:
    """YAML or JSON mapping of RunConfig fields."""
    try:
        with path.open(mode='r') as f:
            log.debug(f'reading config from {path.as_posix()!r}')
            data = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as err:
        err_msg = f'cannot read config {path.as_posix()!r}: {err}'
        raise InvalidConfigError(err_msg) from err
    if data is None:
        return {}
    if not isinstance(data, dict):
        err_msg = f'config {path.as_posix()!r} must hold a mapping'
        raise InvalidConfigError(err_msg)
    return {k.replace('-', '_'): v for k, v in data.items()}


def build_config(command: str, flags: dict[str, Any], config_file: Path | None = None) -> RunConfig:
    """File values first, explicitly given flags on top."""
    values = read_config_file(config_file) if config_file else {}
    values.update({k: v for k, v in flags.items() if v is not None})
    values['command'] = command
    return RunConfig(**values)


def output_path(path: Path | None) -> Path | None:
    """Relative paths land in $TRIVZERO_OUTPUT_DIR when it is set."""
    if path is None or path.is_absolute():
        return path
    base = os.getenv(OUTPUT_DIR_ENV)
    if base:
        return Path(base).expanduser() / path
    return path
