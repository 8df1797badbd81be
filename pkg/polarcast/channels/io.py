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
from json import dumps, loads
from pathlib import Path
from typing import Union
from .models import (DeterministicBC, MartonConfig, NoisyBC, SuperpositionChain, deterministic_bc, marton_config,
                     noisy_bc, superposition_chain)
from ..exceptions import ConfigError


Document = Union[DeterministicBC, NoisyBC, SuperpositionChain, MartonConfig]


def to_document(obj: Document) -> dict:
    """
    JSON-ready description: {"type", "m", "x_size", "tables"}.
    """
    if isinstance(obj, DeterministicBC):
        return {'type': 'deterministic', 'm': obj.receivers, 'x_size': obj.input_size,
                'tables': obj.functions.tolist()}
    elif isinstance(obj, NoisyBC):
        doc = {'type': 'noisy', 'm': 2, 'x_size': obj.input_size, 'tables': obj.kernel.tolist()}
        if obj.family:
            doc['family'] = list(obj.family)
        return doc
    elif isinstance(obj, SuperpositionChain):
        return {'type': 'superposition', 'm': 2, 'x_size': obj.channel.input_size,
                'tables': {'pv': obj.pv.weights.tolist(), 'px_given_v': obj.px_given_v.tolist(),
                           'channel': obj.channel.kernel.tolist()}}
    elif isinstance(obj, MartonConfig):
        return {'type': 'marton', 'm': 2, 'x_size': obj.channel.input_size,
                'tables': {'pv1v2': obj.pv1v2.weights.tolist(), 'phi': obj.phi.tolist(),
                           'channel': obj.channel.kernel.tolist()}}
    raise TypeError(f'unsupported object {type(obj).__name__}')


def from_document(doc: dict) -> Document:
    try:
        kind = doc['type']
        tables = doc['tables']
        if kind == 'deterministic':
            obj = deterministic_bc(tables)
            if obj.receivers != doc.get('m', obj.receivers):
                raise ConfigError(f'document declares m={doc["m"]} but has {obj.receivers} tables')
        elif kind == 'noisy':
            family = doc.get('family')
            obj = noisy_bc(tables, tuple(family) if family else None)
        elif kind == 'superposition':
            obj = superposition_chain(tables['pv'], tables['px_given_v'], noisy_bc(tables['channel']))
        elif kind == 'marton':
            obj = marton_config(tables['pv1v2'], tables['phi'], noisy_bc(tables['channel']))
        else:
            raise ConfigError(f'unknown document type {kind!r}')
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f'invalid channel document: {e}') from e
    x_size = doc.get('x_size')
    if x_size is not None:
        actual = obj.input_size if isinstance(obj, (DeterministicBC, NoisyBC)) else obj.channel.input_size
        if actual != x_size:
            raise ConfigError(f'document declares x_size={x_size} but tables have {actual} inputs')
    return obj


def load_document(path: Union[str, Path]) -> Document:
    try:
        doc = loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise ConfigError(f'cannot read channel document {path}: {e}') from e
    return from_document(doc)


def dump_document(obj: Document, path: Union[str, Path]):
    Path(path).write_text(dumps(to_document(obj), indent=2))


__all__ = ['to_document', 'from_document', 'load_document', 'dump_document', 'Document']
