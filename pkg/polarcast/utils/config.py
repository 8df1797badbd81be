# -*- coding: utf-8 -*-
#
# Copyright 2026 polarcast authors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the “Software”), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is furnished
# to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED “AS IS”, WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
from hashlib import blake2b
from json import dumps, load
from pathlib import Path
from pydantic import BaseModel, Field, ValidationError, validator
from typing import List, Literal, Optional, Union
from ..channels import from_document
from ..core import block_levels
from ..exceptions import ConfigError, InvalidLengthError


class ExperimentConfig(BaseModel):
    """
    One simulation or construction experiment.

    :param document: channel, chain or Marton configuration in the JSON document format
    :param quantile: slack τ of the quantile set selector; threshold selection when omitted
    :param workers: data loader worker processes, 0 runs in the main process
    """
    scheme: Literal['detbc', 'sp', 'marton']
    document: dict
    n: List[int] = Field(default_factory=lambda: [256])
    beta: float = .3
    samples: int = 10000
    trials: int = 200
    master_seed: int = 0
    mode: Literal['random', 'map'] = 'random'
    exact: bool = False
    delta: Optional[float] = None
    quantile: Optional[float] = None
    eta: float = .05
    repair: bool = False
    workers: int = 0
    batch: int = 32
    px: Optional[List[float]] = None
    permutation: Optional[List[int]] = None
    output: Optional[str] = None

    class Config:
        extra = 'forbid'

    @validator('n', each_item=True)
    def power_of_two(cls, v):
        try:
            block_levels(v)
        except InvalidLengthError as e:
            raise ValueError(str(e)) from None
        return v

    @validator('n')
    def nonempty(cls, v):
        if not v:
            raise ValueError('at least one block length required')
        return v

    @validator('beta')
    def beta_range(cls, v):
        if not 0. < v < .5:
            raise ValueError('beta should be in (0, 1/2)')
        return v

    @validator('samples', 'trials', 'batch')
    def positive(cls, v):
        if v < 1:
            raise ValueError('should be at least 1')
        return v

    @validator('workers')
    def nonnegative(cls, v):
        if v < 0:
            raise ValueError('should be nonnegative')
        return v

    @validator('delta')
    def delta_range(cls, v):
        if v is not None and not 0. < v < .5:
            raise ValueError('delta should be in (0, 1/2)')
        return v

    @validator('eta')
    def eta_range(cls, v):
        if not 0. <= v <= 1.:
            raise ValueError('eta should be in [0, 1]')
        return v

    @validator('quantile')
    def quantile_range(cls, v):
        if v is not None and not 0. <= v < 1.:
            raise ValueError('quantile slack should be in [0, 1)')
        return v

    @validator('document')
    def document_type(cls, v, values):
        scheme = values.get('scheme')
        kind = v.get('type')
        if scheme == 'detbc' and kind != 'deterministic':
            raise ValueError('detbc needs a deterministic channel document')
        if scheme == 'sp' and kind != 'superposition':
            raise ValueError('sp needs a superposition chain document')
        if scheme == 'marton' and kind != 'marton':
            raise ValueError('marton needs a marton configuration document')
        return v

    def model(self):
        """
        Parsed channel, chain or Marton configuration.
        """
        return from_document(self.document)

    def canonical(self) -> str:
        return dumps(self.dict(exclude={'workers', 'output'}), sort_keys=True, separators=(',', ':'))

    @property
    def config_hash(self) -> str:
        """
        blake2b digest of the canonical JSON, independent of worker count and output location.
        """
        return blake2b(self.canonical().encode(), digest_size=16).hexdigest()


def load_config(source: Union[str, Path, dict], **overrides) -> ExperimentConfig:
    """
    Validated config from a JSON file or a mapping; non-None overrides replace file values.

    :raise ConfigError: unreadable file or invalid fields
    """
    if isinstance(source, (str, Path)):
        try:
            with open(source) as f:
                source = load(f)
        except (OSError, ValueError) as e:
            raise ConfigError(f'cannot read config {source}: {e}') from e
    data = dict(source)
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = ExperimentConfig(**data)
    except ValidationError as e:
        raise ConfigError(str(e)) from e
    cfg.model()  # document errors surface as ConfigError
    return cfg


__all__ = ['ExperimentConfig', 'load_config']
