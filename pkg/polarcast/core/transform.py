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
from functools import lru_cache
from torch import Tensor, as_tensor, bool as t_bool, int64, tensor
from torchtyping import TensorType
from typing import NamedTuple, Sequence, Union
from ..exceptions import DomainError, InvalidLengthError


def block_levels(n: int) -> int:
    """
    Number of butterfly levels ℓ for block length n = 2^ℓ.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n & (n - 1):
        raise InvalidLengthError(f'block length should be a power of two not less than 2, got {n!r}')
    return n.bit_length() - 1


@lru_cache()
def _reversal(n: int):
    levels = block_levels(n)
    return tuple(int(format(j, f'0{levels}b')[::-1], 2) for j in range(n))


def bit_reversal_permutation(n: int) -> TensorType['n', int]:
    """
    Bit-reversal permutation of [n] (0-based): position j maps to the index with reversed ℓ-bit representation.
    """
    return tensor(_reversal(n), dtype=int64)


class TransformPlan(NamedTuple):
    n: int
    levels: int
    bit_reversal: TensorType['n', int]

    def __call__(self, x: TensorType[..., 'n']) -> TensorType[..., 'n']:
        if x.size(-1) != self.n:
            raise InvalidLengthError(f'expected blocks of length {self.n}, got {x.size(-1)}')
        y = x.contiguous().clone()
        lead = y.shape[:-1]
        half = 1
        while half < self.n:
            view = y.view(*lead, self.n // (2 * half), 2, half)
            view[..., 0, :] ^= view[..., 1, :]
            half *= 2
        return y[..., self.bit_reversal]


@lru_cache()
def transform_plan(n: int) -> TransformPlan:
    return TransformPlan(n, block_levels(n), bit_reversal_permutation(n))


def polar_transform(x: Union[TensorType[..., 'n'], Sequence[int]]) -> TensorType[..., 'n']:
    """
    Binary polar transform x·G_n with G_n = B_n F^{⊗ℓ}, F = [[1, 0], [1, 1]].

    Works on the last dimension, leading dimensions are batch. G_n is an involution, so the same call inverts it.

    :param x: bits as integer or bool tensor (or a plain sequence of 0/1)
    """
    x = as_tensor(x)
    if x.dim() == 0:
        raise InvalidLengthError('scalar is not a block')
    if x.is_floating_point():
        raise DomainError('bit blocks should have integer or bool dtype')
    if x.dtype != t_bool and not ((x == 0) | (x == 1)).all():
        raise DomainError('bit blocks should contain only 0 and 1')
    return transform_plan(x.size(-1))(x)


__all__ = ['TransformPlan', 'transform_plan', 'polar_transform', 'bit_reversal_permutation', 'block_levels']
