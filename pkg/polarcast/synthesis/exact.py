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
from torch import Tensor, arange, empty, float64, int64, ones, stack, tensor, uint8, unique, where, zeros
from torch.special import xlogy
from torchtyping import TensorType
from typing import NamedTuple
from .context import PolarContext
from .stats import IndexStats, exact_index_stats
from ..core import block_levels, polar_transform
from ..exceptions import TooLargeError
from ..prob import LN2


GUARD = 2 ** 24


class ExactBitChannel(NamedTuple):
    """
    Exact law of U(j) against every reachable (prefix, side sequence) realization.
    """
    j: int
    prefixes: TensorType['realizations', 'j', int]
    sides: TensorType['realizations', 'n', int]
    p0: TensorType['realizations', float]  # joint mass with U(j) = 0
    p1: TensorType['realizations', float]
    z: float
    h: float

    def conditional(self) -> TensorType['realizations', float]:
        """
        P(U(j) = 0 | prefix, side) per realization.
        """
        return self.p0 / (self.p0 + self.p1)


class Enumeration(NamedTuple):
    u: TensorType['states', 'n', int]
    side_code: TensorType['states', int]
    prob: TensorType['states', float]
    side_size: int


def enumerate_context(ctx: PolarContext, n: int) -> Enumeration:
    """
    All reachable (T^n, O^n) blocks of a context with their probabilities and transformed rows.
    """
    block_levels(n)
    table = ctx.table
    k = table.size(1)
    letters = 2 * k
    states = letters ** n
    if states > GUARD:
        raise TooLargeError(f'{states} states exceed the exact enumeration guard {GUARD}')
    flat = table.flatten()
    rest = arange(states, dtype=int64)
    prob = ones(states, dtype=float64)
    side_code = zeros(states, dtype=int64)
    t = empty(states, n, dtype=uint8)
    for i in range(n):
        c = rest % letters
        rest = rest // letters
        prob *= flat[c]
        t[:, i] = c // k
        side_code += (c % k) * k ** i
    mask = prob > 0
    return Enumeration(polar_transform(t[mask]), side_code[mask], prob[mask], k)


def _masses(e: Enumeration, j: int):
    n = e.u.size(1)
    span = e.side_size ** n
    if j:
        code = (e.u[:, :j].to(int64) * (1 << arange(j, dtype=int64))).sum(1)
    else:
        code = zeros(e.u.size(0), dtype=int64)
    keys, inverse = unique(code * span + e.side_code, return_inverse=True)
    bit = e.u[:, j]
    p0 = zeros(keys.numel(), dtype=float64).index_add_(0, inverse, where(bit == 0, e.prob, 0. * e.prob))
    p1 = zeros(keys.numel(), dtype=float64).index_add_(0, inverse, where(bit == 1, e.prob, 0. * e.prob))
    return keys, p0, p1


def _zh(p0: Tensor, p1: Tensor):
    z = 2. * (p0 * p1).sqrt().sum().item()
    s = p0 + p1
    h = -(xlogy(p0, p0) + xlogy(p1, p1) - xlogy(s, s)).sum().item() / LN2
    return min(max(z, 0.), 1.), min(max(h, 0.), 1.)


def exact_bit_channel(ctx: PolarContext, j: int, n: int) -> ExactBitChannel:
    """
    Brute-force oracle of P(U(j) | U^{<j}, side) for small n, with exact Bhattacharyya Z and conditional entropy H.
    """
    e = enumerate_context(ctx, n)
    assert 0 <= j < n, 'index out of range'
    keys, p0, p1 = _masses(e, j)
    span = e.side_size ** n
    code = keys // span
    side = keys % span
    prefixes = stack([(code >> i) & 1 for i in range(j)], 1).to(uint8) if j else empty(keys.numel(), 0, dtype=uint8)
    sides = stack([(side // e.side_size ** i) % e.side_size for i in range(n)], 1)
    z, h = _zh(p0, p1)
    return ExactBitChannel(j, prefixes, sides, p0, p1, z, h)


def exact_stats(ctx: PolarContext, n: int) -> IndexStats:
    """
    Exact Z and H of every index of a context.
    """
    e = enumerate_context(ctx, n)
    z, h = zip(*(_zh(*_masses(e, j)[1:]) for j in range(n)))
    return exact_index_stats(tensor(z, dtype=float64), tensor(h, dtype=float64))


__all__ = ['ExactBitChannel', 'Enumeration', 'enumerate_context', 'exact_bit_channel', 'exact_stats', 'GUARD']
