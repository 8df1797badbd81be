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
from math import exp, inf
from torch import Tensor, as_tensor, cat, float64, int64, isnan, log1p, minimum, sigmoid, sign, uint8, where, zeros_like
from torch import exp as t_exp
from torchtyping import TensorType
from typing import Callable, Sequence
from .context import PolarContext
from ..core import bit_reversal_permutation, block_levels
from ..exceptions import ShapeError


def f_combine(a: Tensor, b: Tensor) -> Tensor:
    """
    Log-likelihood ratio of the XOR of two independent bits: log((1 + e^(a+b)) / (e^a + e^b)).
    """
    s = sign(a) * sign(b) * minimum(a.abs(), b.abs())
    p = (a + b).abs()
    q = (a - b).abs()
    p = where(isnan(p), as_tensor(inf, dtype=p.dtype), p)
    q = where(isnan(q), as_tensor(inf, dtype=q.dtype), q)
    return s + log1p(t_exp(-p)) - log1p(t_exp(-q))


def g_combine(a: Tensor, b: Tensor, bit: Tensor) -> Tensor:
    """
    Log-likelihood ratio of the second bit once the XOR partner `bit` is known: b + (1 - 2 bit) a.
    """
    out = b + (1. - 2. * bit.to(a.dtype)) * a
    return where(isnan(out), zeros_like(out), out)


def _recursive_llr(leaves: Tensor, j: int, prefix: Sequence[int]) -> Tensor:
    if leaves.numel() == 1:
        return leaves[0]
    h = leaves.numel() // 2
    pair = prefix if j % 2 == 0 else prefix[:-1]
    odd, even = pair[0::2], pair[1::2]
    a = _recursive_llr(leaves[:h], j // 2, [x ^ y for x, y in zip(odd, even)])
    b = _recursive_llr(leaves[h:], j // 2, even)
    if j % 2 == 0:
        return f_combine(a, b)
    return g_combine(a, b, as_tensor(prefix[-1]))


def sc_likelihood(ctx: PolarContext, j: int, prefix: Sequence[int], side: TensorType['n', int]) -> float:
    """
    Likelihood ratio P(U(j)=0 | u^{<j}, o^n) / P(U(j)=1 | u^{<j}, o^n) by the odd/even recursion.

    Odd positions combine the two half-block ratios as (Ξ1 Ξ2 + 1) / (Ξ1 + Ξ2), even positions as Ξ1^γ Ξ2 with
    γ = ±1 by the paired bit; both are evaluated in the log domain.

    :param j: 0-based index
    :param prefix: decided bits u(0), ..., u(j-1)
    :param side: side-alphabet letters of the observed sequences, length n
    """
    side = as_tensor(side, dtype=int64)
    if side.dim() != 1:
        raise ShapeError('side letters should be a single sequence')
    n = side.numel()
    block_levels(n)
    if not 0 <= j < n:
        raise ShapeError(f'index {j} out of range for block length {n}')
    prefix = [int(x) for x in prefix]
    if len(prefix) != j:
        raise ShapeError(f'prefix length {len(prefix)} should equal index {j}')
    llr = _recursive_llr(ctx.leaf_llr(side), j, prefix).item()
    if llr == inf:
        return inf
    return exp(llr)


def _node(llr: Tensor, offset: int, decide) -> Tensor:
    m = llr.size(-1)
    if m == 1:
        return decide(offset, llr[..., 0]).to(uint8).unsqueeze(-1)
    h = m // 2
    a, b = llr[..., :h], llr[..., h:]
    w = _node(f_combine(a, b), offset, decide)
    x = _node(g_combine(a, b, w), offset + h, decide)
    return cat((w ^ x, x), -1)


def sc_sweep(llr: TensorType[..., 'batch', 'n', float],
             decide: Callable[[int, TensorType[..., 'batch', float]], TensorType['batch', int]]
             ) -> TensorType['batch', 'n', int]:
    """
    Successive cancellation over a batch of blocks.

    Leading dimensions of `llr` are views: different leaf likelihoods of the same blocks (for example given the
    channel output and given nothing) sharing every decision.
    `decide(j, llr_j)` gets the conditional log-ratios of U(j) in every view and returns the chosen bits.

    :return: the source-domain row T^n with U = T^n G_n, as uint8
    """
    n = llr.size(-1)
    block_levels(n)
    rev = bit_reversal_permutation(n)
    return _node(llr[..., rev], 0, decide)[..., rev]


def probability_zero(llr: Tensor) -> Tensor:
    """
    P(U(j) = 0 | ...) from a log-ratio.
    """
    return sigmoid(llr.to(float64))


__all__ = ['f_combine', 'g_combine', 'sc_likelihood', 'sc_sweep', 'probability_zero']
