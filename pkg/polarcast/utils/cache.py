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
from logging import getLogger
from os import environ
from pathlib import Path
from pickle import dump, load
from typing import Callable, Optional, TypeVar, Union


logger = getLogger(__name__)
ENV = 'POLARCAST_CACHE'
element = TypeVar('element')


def cache_key(*parts) -> str:
    """
    blake2b digest of the construction parameters, e.g. (model digest, scheme, n, beta, samples, seed, ...).
    """
    h = blake2b(digest_size=20)
    for p in parts:
        h.update(repr(p).encode())
        h.update(b'\x00')
    return h.hexdigest()


class ConstructionCache:
    """
    Pickle files of constructed code specs in a directory. Disabled when no directory is given.
    """
    def __init__(self, root: Union[Path, str, None] = None):
        """
        :param root: cache directory; defaults to the POLARCAST_CACHE environment variable
        """
        if root is None:
            root = environ.get(ENV) or None
        self.root = Path(root) if root is not None else None

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def path(self, key: str) -> Optional[Path]:
        if self.root is None:
            return
        return self.root / f'{key}.pickle'

    def get(self, key: str):
        if (path := self.path(key)) is None or not path.exists():
            return
        with path.open('rb') as f:
            return load(f)

    def put(self, key: str, value):
        if (path := self.path(key)) is None:
            return
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix('.tmp')
        with tmp.open('wb') as f:
            dump(value, f)
        tmp.replace(path)

    def fetch(self, key: str, build: Callable[[], element]) -> element:
        """
        Cached value or the freshly built one, stored for the next call.
        """
        value = self.get(key)
        if value is not None:
            logger.info(f'construction cache hit {key}')
            return value
        value = build()
        self.put(key, value)
        return value


__all__ = ['ConstructionCache', 'cache_key', 'ENV']
