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
from torch import as_tensor, float64, zeros
from torchtyping import TensorType
from typing import NamedTuple


class IndexStats(NamedTuple):
    """
    Per-index statistics of the synthesized bit channels of one context.
    """
    z: TensorType['n', float]
    h: TensorType['n', float]
    std_error: TensorType['n', float]
    sample_count: int
    exact: bool = False

    @property
    def n(self) -> int:
        return self.z.numel()

    def mean_entropy(self) -> float:
        return self.h.mean().item()

    def to_dict(self) -> dict:
        return {'z': self.z.tolist(), 'h': self.h.tolist(), 'std_error': self.std_error.tolist(),
                'samples': self.sample_count, 'exact': self.exact}

    @classmethod
    def from_dict(cls, doc: dict) -> 'IndexStats':
        return cls(as_tensor(doc['z'], dtype=float64), as_tensor(doc['h'], dtype=float64),
                   as_tensor(doc['std_error'], dtype=float64), int(doc['samples']), bool(doc['exact']))


def exact_index_stats(z: TensorType['n', float], h: TensorType['n', float]) -> IndexStats:
    return IndexStats(z.clamp(0., 1.), h.clamp(0., 1.), zeros(z.numel(), dtype=float64), 0, True)


__all__ = ['IndexStats', 'exact_index_stats']
