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
from __future__ import annotations
from math import prod
from torch import Tensor, as_tensor, float64
from torchtyping import TensorType
from typing import NamedTuple, Sequence, Tuple, Union
from ..exceptions import DomainError, ShapeError


TOLERANCE = 1e-12


class Pmf(NamedTuple):
    weights: TensorType['alphabet', float]

    @property
    def size(self) -> int:
        return self.weights.numel()


class JointTable(NamedTuple):
    weights: TensorType[..., float]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(self.weights.shape)

    def marginal(self, axes: Union[int, Sequence[int]]) -> 'JointTable':
        """
        Marginal over the given axes, kept in the given order.
        """
        axes = normalize_axes(axes, self.weights.dim())
        rest = tuple(a for a in range(self.weights.dim()) if a not in axes)
        w = self.weights.sum(dim=rest) if rest else self.weights
        kept = sorted(axes)
        return JointTable(w.permute(*(kept.index(a) for a in axes)))

    def pmf(self) -> Pmf:
        """
        Flatten into a pmf over the product alphabet (row-major).
        """
        return Pmf(self.weights.flatten())


def normalize_axes(axes: Union[int, Sequence[int]], ndim: int) -> Tuple[int, ...]:
    if isinstance(axes, int):
        axes = (axes,)
    axes = tuple(axes)
    for a in axes:
        if not isinstance(a, int) or not 0 <= a < ndim:
            raise ShapeError(f'axis {a!r} out of range for {ndim}-dimensional table')
    if len(set(axes)) != len(axes):
        raise ShapeError(f'repeated axes {axes}')
    return axes


def _check(w: Tensor):
    if w.numel() == 0:
        raise ShapeError('empty alphabet')
    if w.isnan().any() or (w < 0).any():
        raise DomainError('probabilities should be nonnegative')
    s = w.sum().item()
    if abs(s - 1.) > TOLERANCE:
        raise DomainError(f'probabilities should sum to 1, got {s!r}')


def as_pmf(weights: Union[Tensor, Sequence[float]]) -> Pmf:
    """
    Validated pmf over a finite alphabet.
    """
    w = as_tensor(weights, dtype=float64)
    if w.dim() != 1:
        raise ShapeError('pmf weights should be a vector')
    _check(w)
    return Pmf(w)


def as_joint(weights: Union[Tensor, Sequence]) -> JointTable:
    """
    Validated joint table over a product alphabet; axis k has size dims[k].
    """
    w = as_tensor(weights, dtype=float64)
    if w.dim() == 0:
        raise ShapeError('joint table should have at least one axis')
    _check(w)
    return JointTable(w)


def as_kernel(weights: Union[Tensor, Sequence], inputs: int = None) -> TensorType['inputs', ..., float]:
    """
    Validated conditional table: every slice along the first axis is a pmf.
    """
    w = as_tensor(weights, dtype=float64)
    if w.dim() < 2:
        raise ShapeError('conditional table needs an input axis and at least one output axis')
    if inputs is not None and w.size(0) != inputs:
        raise ShapeError(f'conditional table has {w.size(0)} input rows, expected {inputs}')
    if w.isnan().any() or (w < 0).any():
        raise DomainError('probabilities should be nonnegative')
    rows = w.reshape(w.size(0), -1).sum(1)
    if ((rows - 1.).abs() > TOLERANCE).any():
        raise DomainError(f'every conditional row should sum to 1, got {rows.tolist()}')
    return w


def alphabet_size(dims: Sequence[int]) -> int:
    return prod(dims)


__all__ = ['Pmf', 'JointTable', 'as_pmf', 'as_joint', 'as_kernel', 'normalize_axes', 'alphabet_size', 'TOLERANCE']
