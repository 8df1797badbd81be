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
from torch import Tensor, arange, empty, float64, full_like, int64, ones, uint8, unique, where, zeros, zeros_like
from torch.special import xlogy
from typing import List, NamedTuple, Optional, Sequence, Tuple
from .exact import GUARD
from .sets import PolarizationSets
from ..channels import JointModel
from ..core import block_levels, polar_transform
from ..exceptions import ShapeError, TooLargeError, UnsupportedError
from ..prob import LN2, kl_divergence, pinsker_bound, total_variation


TV_TOLERANCE = 1e-12


class TvDiagnostic(NamedTuple):
    """
    Exact distance between the true block law P and the encoder law Q with uniform bits on the message indices.

    :param kl: Σ (1 - H) over the uniform indices, the chain-rule value of D(P || Q)
    :param bound: Pinsker bound √(2 ln2 · kl)
    :param kl_exact: D(P || Q) by direct summation
    """
    tv: float
    kl: float
    bound: float
    kl_exact: float

    @property
    def holds(self) -> bool:
        return self.tv <= self.bound + TV_TOLERANCE


def _layout(scheme: str, sets: PolarizationSets) -> Tuple[List[str], List[Sequence[int]]]:
    s = sets.sets
    if scheme == 'detbc':
        order = sets.order or tuple(range(len(s)))
        return [f'y{i + 1}' for i in order], [s[f'M{i + 1}'] for i in order]
    elif scheme == 'superposition':
        return ['v', 'x'], [s['M2'], s['M1']]
    elif scheme == 'marton':
        # Γ bits on H_V2|V1 outside M2 are fair coins too
        return ['v1', 'v2'], [s['M1'], s['H_V2|V1']]
    raise UnsupportedError(f'unknown scheme {scheme!r}')


def _conditionals(p: Tensor, keys: Tensor, bit: Tensor):
    """
    P(bit | key) for every state, ½ where the key has no mass. Also returns H(bit | key) in bits.
    """
    groups, inverse = unique(keys, return_inverse=True)
    p1 = zeros(groups.numel(), dtype=float64).index_add_(0, inverse, where(bit == 1, p, zeros_like(p)))
    total = zeros(groups.numel(), dtype=float64).index_add_(0, inverse, p)
    p0 = total - p1
    h = -(xlogy(p0, p0) + xlogy(p1, p1) - xlogy(total, total)).sum().item() / LN2
    q1 = where(total > 0, p1 / total.clamp(min=1e-300), full_like(total, .5))[inverse]
    return where(bit == 1, q1, 1. - q1), max(h, 0.)


def tv_diagnostic(scheme: str, model: JointModel, sets: PolarizationSets, n: Optional[int] = None) -> TvDiagnostic:
    """
    Exact TV(P, Q) over all blocks of the coded rows and its Pinsker bound.

    Rows are the transformed sequences the encoder builds in order: receiver outputs for the deterministic
    channel, (V, X) for superposition and (V1, V2) for Marton. Q draws uniform bits on the message
    indices of each row and follows the true conditionals elsewhere.
    """
    n = n or sets.n
    block_levels(n)
    if n != sets.n:
        raise ShapeError(f'sets were built for n={sets.n}, got n={n}')
    rows, uniform = _layout(scheme, sets)
    k = len(rows)
    states = 2 ** (k * n)
    if states > GUARD:
        raise TooLargeError(f'{states} states exceed the exact enumeration guard {GUARD}')
    single = model.marginal(rows).weights
    if single.shape != (2,) * k:
        raise UnsupportedError(f'coded rows {rows} should be binary')
    flat = single.flatten()

    # state bits: row r, symbol j at bit r * n + j
    idx = arange(states, dtype=int64)
    t = empty(states, k, n, dtype=uint8)
    for r in range(k):
        for j in range(n):
            t[:, r, j] = (idx >> (r * n + j)) & 1
    letter = zeros(states, n, dtype=int64)
    for r in range(k):
        letter = letter * 2 + t[:, r].to(int64)
    p = flat[letter].prod(1)

    u = polar_transform(t)
    weights = 1 << arange(n, dtype=int64)
    codes = (u.to(int64) * weights).sum(-1)  # [states, k]
    q = ones(states, dtype=float64)
    kl = 0.
    for r in range(k):
        earlier = zeros(states, dtype=int64)
        for e in range(r):
            earlier = earlier * (1 << n) + codes[:, e]
        members = set(uniform[r])
        for j in range(n):
            keys = earlier * (1 << j) + (codes[:, r] & ((1 << j) - 1))
            bit = u[:, r, j]
            cond, h = _conditionals(p, keys, bit)
            if j in members:
                q *= .5
                kl += 1. - h
            else:
                q *= cond

    tv = total_variation(p, q)
    kl_exact = kl_divergence(p, q)
    bound = pinsker_bound(kl)
    return TvDiagnostic(tv, kl, bound, kl_exact)


__all__ = ['TvDiagnostic', 'tv_diagnostic']
