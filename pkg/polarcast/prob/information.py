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
from math import log, log2, sqrt
from torch import Tensor, as_tensor, float64
from torch.special import xlogy
from typing import Sequence, Union
from .tables import JointTable, Pmf, normalize_axes
from ..exceptions import DivergenceUndefinedError, DomainError, ShapeError


LN2 = log(2.)


def _weights(x) -> Tensor:
    if isinstance(x, (Pmf, JointTable)):
        return x.weights
    return as_tensor(x, dtype=float64)


def _probability(x: float, name: str = 'x') -> float:
    if not 0. <= x <= 1.:
        raise DomainError(f'{name} should be a probability, got {x!r}')
    return float(x)


def binary_entropy(x: float) -> float:
    """
    h_b(x) = -x log2(x) - (1 - x) log2(1 - x), endpoints exactly zero.
    """
    x = _probability(x)
    if x == 0. or x == 1.:
        return 0.
    return -x * log2(x) - (1. - x) * log2(1. - x)


def star_convolve(a: float, b: float) -> float:
    """
    a * b = (1 - a) b + a (1 - b): crossover of two cascaded binary symmetric channels.
    """
    a = _probability(a, 'a')
    b = _probability(b, 'b')
    return (1. - a) * b + a * (1. - b)


def entropy(p: Union[Pmf, JointTable, Tensor]) -> float:
    """
    Shannon entropy in bits of a pmf or of a joint table over its whole product alphabet.
    """
    w = _weights(p)
    return max(-xlogy(w, w).sum().item() / LN2, 0.)


def _marginal_entropy(w: Tensor, axes) -> float:
    if not axes:
        return 0.
    rest = tuple(a for a in range(w.dim()) if a not in axes)
    m = w.sum(dim=rest) if rest else w
    return -xlogy(m, m).sum().item() / LN2


def conditional_entropy(joint: Union[JointTable, Tensor], target_axis: Union[int, Sequence[int]],
                        given_axes: Union[int, Sequence[int]] = ()) -> float:
    """
    H(T | G) in bits for disjoint axis groups of a joint table. Zero-mass terms contribute nothing.

    :param target_axis: axis (or axes) of the target variable
    :param given_axes: conditioning axes, empty for plain entropy
    """
    w = _weights(joint)
    t = normalize_axes(target_axis, w.dim())
    g = normalize_axes(given_axes, w.dim())
    if set(t) & set(g):
        raise ShapeError(f'target axes {t} overlap given axes {g}')
    return max(_marginal_entropy(w, t + g) - _marginal_entropy(w, g), 0.)


def mutual_information(joint: Union[JointTable, Tensor], a_axes: Union[int, Sequence[int]],
                       b_axes: Union[int, Sequence[int]], given_axes: Union[int, Sequence[int]] = ()) -> float:
    """
    I(A; B | G) in bits.
    """
    w = _weights(joint)
    a = normalize_axes(a_axes, w.dim())
    b = normalize_axes(b_axes, w.dim())
    g = normalize_axes(given_axes, w.dim())
    if set(a) & set(b) or set(a) & set(g) or set(b) & set(g):
        raise ShapeError('axis groups should be disjoint')
    value = (_marginal_entropy(w, a + g) + _marginal_entropy(w, b + g)
             - _marginal_entropy(w, a + b + g) - _marginal_entropy(w, g))
    return max(value, 0.)


def bhattacharyya(joint: Union[JointTable, Tensor]) -> float:
    """
    Z(T | V) = 2 Σ_v sqrt(P(0, v) P(1, v)) for a table with binary first axis; V is every other axis.
    """
    w = _weights(joint)
    if w.dim() == 0 or w.size(0) != 2:
        raise ShapeError('Bhattacharyya parameter needs a binary first coordinate')
    z = 2. * (w[0] * w[1]).sqrt().sum().item()
    return min(max(z, 0.), 1.)


def _pair(p, q):
    p = _weights(p)
    q = _weights(q)
    if p.shape != q.shape:
        raise ShapeError(f'alphabet mismatch: {tuple(p.shape)} vs {tuple(q.shape)}')
    return p, q


def kl_divergence(p: Union[Pmf, Tensor], q: Union[Pmf, Tensor]) -> float:
    """
    D(p || q) in bits.
    """
    p, q = _pair(p, q)
    if ((p > 0) & (q == 0)).any():
        raise DivergenceUndefinedError('support of p is not contained in support of q')
    return max((xlogy(p, p) - xlogy(p, q)).sum().item() / LN2, 0.)


def total_variation(p: Union[Pmf, Tensor], q: Union[Pmf, Tensor]) -> float:
    """
    Unnormalized total variation Σ |p - q| in [0, 2].
    """
    p, q = _pair(p, q)
    return (p - q).abs().sum().item()


def pinsker_bound(divergence: float) -> float:
    """
    Upper bound on Σ |p - q| given D(p || q) in bits.
    """
    return sqrt(2. * LN2 * max(divergence, 0.))


__all__ = ['binary_entropy', 'star_convolve', 'entropy', 'conditional_entropy', 'mutual_information',
           'bhattacharyya', 'kl_divergence', 'total_variation', 'pinsker_bound', 'LN2']
