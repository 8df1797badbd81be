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
from torch import Tensor, as_tensor, int64, stack, uint8, zeros
from torchtyping import TensorType
from typing import Callable, Dict, Sequence, Tuple
from .maps import SharedMaps
from ..exceptions import ShapeError
from ..synthesis import PolarContext, sc_sweep


def positions(indices: Sequence[int]) -> Dict[int, int]:
    """
    Index -> column of the message or side-bit vector carried at that index.
    """
    return {j: k for k, j in enumerate(indices)}


def as_bits(w, size: int, name: str = 'message') -> TensorType['batch', 'size', int]:
    """
    Validate a block (or a batch of blocks) of bits of the expected length.
    """
    w = as_tensor(w)
    if w.dim() == 1:
        w = w.unsqueeze(0)
    if w.dim() != 2 or w.size(1) != size:
        raise ShapeError(f'{name} should have {size} bits per block, got shape {tuple(w.shape)}')
    if w.is_floating_point() or not ((w == 0) | (w == 1)).all():
        raise ShapeError(f'{name} should contain only 0 and 1')
    return w.to(uint8)


def as_blocks(y, n: int) -> TensorType['batch', 'n', int]:
    """
    Validate received blocks of length n; a single block becomes a batch of one.
    """
    y = as_tensor(y)
    if y.dim() == 1:
        y = y.unsqueeze(0)
    if y.dim() != 2 or y.size(1) != n:
        raise ShapeError(f'observations should be blocks of length {n}, got shape {tuple(y.shape)}')
    return y.to(int64)


def leaf_views(contexts: Sequence[PolarContext], values: Dict[str, Tensor],
               shape: Tuple[int, int]) -> TensorType['views', 'batch', 'n', float]:
    """
    Stacked leaf log-ratios of the same blocks under several contexts.
    """
    out = []
    for c in contexts:
        letters = c.letters(values) if c.side else zeros(shape, dtype=int64)
        out.append(c.leaf_llr(letters))
    return stack(out)


def successive(views: Tensor, rule: Callable[[int, Tensor], Tensor],
               *maps: SharedMaps) -> Tuple[TensorType['batch', 'n', int], TensorType['batch', 'n', int]]:
    """
    Run one successive pass: `rule(j, llr)` picks U(j) from the per-view ratios, the maps record every decision.

    :return: the row T^n and the decided U^n
    """
    u = zeros(views.shape[-2:], dtype=uint8)

    def decide(j, llr):
        bit = rule(j, llr).to(uint8)
        for m in maps:
            m.push(bit)
        u[:, j] = bit
        return bit

    t = sc_sweep(views, decide)
    return t, u


__all__ = ['positions', 'as_bits', 'as_blocks', 'leaf_views', 'successive']
