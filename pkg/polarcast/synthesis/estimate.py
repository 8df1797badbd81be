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
from logging import getLogger
from math import log
from numpy.random import SeedSequence, default_rng
from torch import float64, uint8, where, zeros, zeros_like
from torch.nn.functional import logsigmoid
from tqdm import tqdm
from .context import PolarContext
from .likelihood import sc_sweep
from .stats import IndexStats
from ..core import block_levels, polar_transform
from ..prob import LN2


logger = getLogger(__name__)
CHUNK = 256
FLOOR = log(1e-300)


def chunk_rng(seed: int, chunk: int):
    """
    Generator of the chunk-th block group of a master seed. Independent of how chunks are scheduled.
    """
    return default_rng(SeedSequence(seed, spawn_key=(chunk,)))


def estimate_stats_mc(ctx: PolarContext, n: int, num_samples: int = 10000, seed: int = 0, *,
                      chunk: int = CHUNK, progress: bool = False) -> IndexStats:
    """
    Monte-Carlo Bhattacharyya and entropy estimates of every index of a context.

    Each sampled block is transformed and swept once with the true bits as decisions, so every index is
    evaluated on the same draws. Z is the mean of √φ with φ = P(other bit | ...) / P(realized bit | ...);
    realized conditionals below 1e-300 count as φ = 0. H is the mean of -log2 P(realized bit | ...).

    :param chunk: blocks per random substream
    """
    block_levels(n)
    assert num_samples >= 1, 'at least one sample required'
    assert chunk >= 1, 'chunk should be positive'
    z_sum = zeros(n, dtype=float64)
    z_sq = zeros(n, dtype=float64)
    h_sum = zeros(n, dtype=float64)

    starts = range(0, num_samples, chunk)
    for c, start in enumerate(tqdm(starts, desc=ctx.name, disable=not progress)):
        size = min(chunk, num_samples - start)
        draws = ctx.model.sample((size, n), chunk_rng(seed, c))
        u = polar_transform(draws[ctx.target].to(uint8))
        llr = ctx.leaf_llr(ctx.letters(draws))

        def decide(j, llr_j):
            bit = u[:, j]
            s = where(bit == 0, llr_j, -llr_j).to(float64)
            ls = logsigmoid(s)
            dead = ls < FLOOR
            sq = where(dead, zeros_like(s), (-s / 2).exp())
            h = where(dead, zeros_like(s), -ls / LN2)
            z_sum[j] += sq.sum()
            z_sq[j] += (sq * sq).sum()
            h_sum[j] += h.sum()
            return bit

        sc_sweep(llr, decide)

    z = z_sum / num_samples
    var = (z_sq / num_samples - z * z).clamp(min=0.)
    std_error = (var / max(num_samples - 1, 1)).sqrt()
    h = h_sum / num_samples
    logger.debug(f'{ctx.name}: n={n}, samples={num_samples}, mean Z={z.mean().item():.4f}')
    return IndexStats(z.clamp(0., 1.), h.clamp(0., 1.), std_error, num_samples)


__all__ = ['estimate_stats_mc', 'chunk_rng', 'CHUNK']
