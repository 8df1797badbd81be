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
from numpy import abs as np_abs, zeros as np_zeros
from scipy.optimize import linprog
from torch import Tensor, as_tensor, float64, linspace, meshgrid
from torch.special import xlogy
from typing import NamedTuple, Optional, Sequence, Tuple, Union
from warnings import warn
from .models import MartonConfig, NoisyBC, SuperpositionChain
from ..exceptions import ShapeError, UnsupportedError
from ..prob import LN2, binary_entropy, mutual_information


logger = getLogger(__name__)
FEASIBILITY = 1e-9
SWEEP_TOLERANCE = 1e-10


class Sweep(NamedTuple):
    falsified: bool
    points: int
    witness: Optional[Tuple[float, ...]] = None  # grid point violating the ordering


class Classification(NamedTuple):
    label: str  # degraded_1to2, degraded_2to1, less_noisy, more_capable or none
    stronger: Optional[int]
    degraded: Tuple[bool, bool]  # (Y2 degraded w.r.t. Y1, Y1 degraded w.r.t. Y2)
    less_noisy: Tuple[Sweep, Sweep]  # (Y1 over Y2, Y2 over Y1)
    more_capable: Tuple[Sweep, Sweep]
    analytic: Optional[str] = None

    @property
    def kind(self) -> str:
        return 'degraded' if self.label.startswith('degraded') else self.label

    @property
    def notes(self) -> str:
        ln, mc = self.less_noisy[0].points, self.more_capable[0].points
        return (f'less-noisy and more-capable verdicts are non-falsification claims on grids of {ln} and {mc} '
                f'points; degradation decided by linear feasibility at tolerance {FEASIBILITY}')


class Admissibility(NamedTuple):
    ok: bool
    mi_strong: float
    mi_weak: float


def _kernel(k) -> Tensor:
    k = as_tensor(k, dtype=float64)
    if k.dim() != 2:
        raise ShapeError('conditional table should be a matrix')
    return k


def is_stochastically_degraded(k1: Union[Tensor, Sequence], k2: Union[Tensor, Sequence]) -> bool:
    """
    True iff k2 = k1 · P̃ for some row-stochastic P̃, i.e. P_{B|W} is a garbled version of P_{A|W}.

    :param k1: P(a | w) as |W| × |A| table
    :param k2: P(b | w) as |W| × |B| table
    """
    k1 = _kernel(k1)
    k2 = _kernel(k2)
    if k1.size(0) != k2.size(0):
        raise ShapeError(f'conditioning alphabets differ: {k1.size(0)} vs {k2.size(0)}')
    a = k1.numpy()
    b = k2.numpy()
    w, na = a.shape
    nb = b.shape[1]
    lhs = np_zeros((na + w * nb, na * nb))
    rhs = np_zeros(na + w * nb)
    for i in range(na):  # rows of P̃ are pmfs
        lhs[i, i * nb:(i + 1) * nb] = 1.
        rhs[i] = 1.
    for u in range(w):  # k1 P̃ = k2
        for j in range(nb):
            r = na + u * nb + j
            lhs[r, j::nb] = a[u]
            rhs[r] = b[u, j]
    res = linprog(np_zeros(na * nb), A_eq=lhs, b_eq=rhs, bounds=(0, None), method='highs')
    if res.status != 0 or res.x is None:
        return False
    return bool(np_abs(lhs @ res.x - rhs).max() <= FEASIBILITY and res.x.min() >= -FEASIBILITY)


def _mixture_entropy(kernel: Tensor, c: Tensor) -> Tensor:
    p = kernel[0] + c.unsqueeze(-1) * (kernel[1] - kernel[0])
    return -xlogy(p, p).sum(-1) / LN2


def more_capable_sweep(ka: Union[Tensor, Sequence], kb: Union[Tensor, Sequence], points: int = 1001) -> Sweep:
    """
    Try to falsify I(X; Y_a) ≥ I(X; Y_b) over a grid of binary input pmfs.
    """
    ka = _kernel(ka)
    kb = _kernel(kb)
    q = linspace(0., 1., points, dtype=float64)

    def mi(k):
        return _mixture_entropy(k, q) - (1 - q) * _mixture_entropy(k, q[:1]) - q * _mixture_entropy(k, q[-1:])

    bad = (mi(ka) < mi(kb) - SWEEP_TOLERANCE).nonzero()
    if len(bad):
        return Sweep(True, points, (q[bad[0, 0]].item(),))
    return Sweep(False, points)


def less_noisy_sweep(ka: Union[Tensor, Sequence], kb: Union[Tensor, Sequence], points: int = 101) -> Sweep:
    """
    Try to falsify I(V; Y_a) ≥ I(V; Y_b) over binary-V chains V - X - Y.

    Grid over P(V=1), P(X=1|V=0), P(X=1|V=1) with `points` values each.
    """
    ka = _kernel(ka)
    kb = _kernel(kb)
    g = linspace(0., 1., points, dtype=float64)
    a, b0, b1 = meshgrid(g, g, g, indexing='ij')
    c = (1 - a) * b0 + a * b1  # P(X=1)

    def mi(k):
        h = _mixture_entropy(k, g)
        return _mixture_entropy(k, c) - (1 - a) * h[None, :, None] - a * h[None, None, :]

    bad = (mi(ka) < mi(kb) - SWEEP_TOLERANCE).nonzero()
    if len(bad):
        i, j, k = bad[0].tolist()
        return Sweep(True, points ** 3, (g[i].item(), g[j].item(), g[k].item()))
    return Sweep(False, points ** 3)


def bec_bsc_class(eps: float, p: float) -> str:
    """
    Analytic class of the BSC(p) / BEC(eps) broadcast channel.
    """
    if eps <= 2 * p:
        return 'degraded'
    elif eps <= 4 * p * (1 - p):
        return 'less_noisy'
    elif eps <= binary_entropy(p):
        return 'more_capable'
    return 'none'


def classify(ch: NoisyBC, *, capable_points: int = 1001, noisy_points: int = 101) -> Classification:
    """
    Place a binary-input two-receiver channel in the degraded ⊂ less noisy ⊂ more capable hierarchy.
    """
    if ch.input_size != 2:
        raise UnsupportedError('classification supports binary input channels only')
    k1, k2 = ch.leg(1), ch.leg(2)
    degraded = is_stochastically_degraded(k1, k2), is_stochastically_degraded(k2, k1)
    ln = less_noisy_sweep(k1, k2, noisy_points), less_noisy_sweep(k2, k1, noisy_points)
    mc = more_capable_sweep(k1, k2, capable_points), more_capable_sweep(k2, k1, capable_points)

    if degraded[0]:
        label, stronger = 'degraded_1to2', 1
    elif degraded[1]:
        label, stronger = 'degraded_2to1', 2
    elif not ln[0].falsified:
        label, stronger = 'less_noisy', 1
    elif not ln[1].falsified:
        label, stronger = 'less_noisy', 2
    elif not mc[0].falsified:
        label, stronger = 'more_capable', 1
    elif not mc[1].falsified:
        label, stronger = 'more_capable', 2
    else:
        label, stronger = 'none', None

    analytic = None
    if ch.family and ch.family[0] == 'bec_bsc':
        analytic = bec_bsc_class(*ch.family[1:])
    out = Classification(label, stronger, degraded, ln, mc, analytic)
    if analytic is not None and analytic != out.kind:
        warn(f'sweep verdict {label} disagrees with analytic class {analytic} for {ch.family}')
    logger.info('classified %s as %s (stronger receiver %s)', ch.family or 'channel', label, stronger)
    return out


def superposition_admissible(chain: SuperpositionChain) -> Admissibility:
    """
    Check P_{Y1|V} ≻ P_{Y2|V}: receiver 2 sees a degraded version of what receiver 1 sees about V.
    """
    m = chain.model()
    ok = is_stochastically_degraded(m.conditional(['y1'], 'v'), m.conditional(['y2'], 'v'))
    w = m.table
    return Admissibility(ok, mutual_information(w, 0, 2), mutual_information(w, 0, 3))


def marton_admissible(cfg: MartonConfig) -> Admissibility:
    """
    Check P_{Y2|V2} ≻ P_{V1|V2}; reports I(V2; Y2) and I(V1; V2).
    """
    m = cfg.model()
    ok = is_stochastically_degraded(m.conditional(['y2'], 'v2'), m.conditional(['v1'], 'v2'))
    w = m.table
    return Admissibility(ok, mutual_information(w, 1, 4), mutual_information(w, 0, 1))


__all__ = ['Sweep', 'Classification', 'Admissibility',
           'is_stochastically_degraded', 'more_capable_sweep', 'less_noisy_sweep', 'bec_bsc_class',
           'classify', 'superposition_admissible', 'marton_admissible']
