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
from hashlib import blake2b
from numpy import unravel_index
from numpy.random import Generator
from torch import Tensor, as_tensor, einsum, float64, from_numpy, int64, ones, searchsorted, tensor, zeros
from torchtyping import TensorType
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union
from ..exceptions import DomainError, ShapeError, UnsupportedError
from ..prob import JointTable, Pmf, alphabet_size, as_joint, as_kernel, as_pmf


class JointModel(NamedTuple):
    """
    Single-letter joint distribution of a broadcast scenario. Axis k of the table is the variable names[k].
    """
    names: Tuple[str, ...]
    table: JointTable

    @property
    def dims(self) -> Dict[str, int]:
        return dict(zip(self.names, self.table.dims))

    def axis(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ShapeError(f'unknown variable {name!r}, model has {self.names}') from None

    def axes(self, names: Sequence[str]) -> Tuple[int, ...]:
        return tuple(self.axis(x) for x in names)

    def side_size(self, side: Sequence[str]) -> int:
        return alphabet_size([self.table.dims[self.axis(x)] for x in side])

    def marginal(self, names: Sequence[str]) -> JointTable:
        return self.table.marginal(self.axes(names))

    def context_table(self, target: str, side: Sequence[str] = ()) -> TensorType[2, 'side', float]:
        """
        Joint table P(t, o) with binary target t and side letters o flattened row-major over `side`.
        """
        if self.table.dims[self.axis(target)] != 2:
            raise UnsupportedError(f'target {target!r} should be binary')
        if target in side:
            raise ShapeError(f'target {target!r} is also side information')
        return self.marginal((target, *side)).weights.reshape(2, -1)

    def side_letters(self, values: Dict[str, Tensor], side: Sequence[str]) -> Tensor:
        """
        Flatten per-variable sequences into side-alphabet letters matching `context_table`.
        """
        code = None
        for name in side:
            v = values[name].to(int64)
            code = v if code is None else code * self.table.dims[self.axis(name)] + v
        if code is None:
            first = next(iter(values.values()))
            return zeros(first.shape, dtype=int64)
        return code

    def conditional(self, targets: Sequence[str], given: str) -> TensorType['given', 'target', float]:
        """
        P(targets | given) as a row-stochastic table; rows of zero-mass letters are uniform.
        """
        w = self.marginal((given, *targets)).weights.reshape(self.table.dims[self.axis(given)], -1)
        s = w.sum(1, keepdim=True)
        out = w / s.clamp(min=1e-300)
        out[s.squeeze(1) == 0] = 1. / w.size(1)
        return out

    def sample(self, shape: Tuple[int, ...], rng: Generator) -> Dict[str, TensorType[..., int]]:
        """
        Draw i.i.d. letters of every variable.
        """
        flat = self.table.weights.flatten().numpy()
        idx = rng.choice(flat.size, size=shape, p=flat / flat.sum())
        return {name: from_numpy(x.astype('int64')) for name, x in
                zip(self.names, unravel_index(idx, self.table.dims))}

    def digest(self) -> str:
        h = blake2b(digest_size=16)
        h.update(','.join(self.names).encode())
        h.update(repr(self.table.dims).encode())
        h.update(self.table.weights.contiguous().numpy().tobytes())
        return h.hexdigest()


class DeterministicBC(NamedTuple):
    """
    Deterministic broadcast channel: receiver i observes f_i(x) ∈ {0, 1}.
    """
    functions: TensorType['receivers', 'inputs', int]

    @property
    def receivers(self) -> int:
        return self.functions.size(0)

    @property
    def input_size(self) -> int:
        return self.functions.size(1)

    def outputs(self, x: TensorType[..., int]) -> TensorType['receivers', ..., int]:
        return self.functions[:, x]

    def model(self, px: Union[Pmf, Sequence[float], None] = None) -> JointModel:
        """
        Joint model over (x, y1, ..., ym) with P = P_X ∏ 1[y_i = f_i(x)]; uniform P_X by default.
        """
        if px is None:
            px = ones(self.input_size, dtype=float64) / self.input_size
        px = px if isinstance(px, Pmf) else as_pmf(px)
        if px.size != self.input_size:
            raise ShapeError(f'input pmf has {px.size} letters, channel has {self.input_size}')
        w = zeros((self.input_size,) + (2,) * self.receivers, dtype=float64)
        for x in range(self.input_size):
            w[(x, *self.functions[:, x].tolist())] = px.weights[x]
        names = ('x',) + tuple(f'y{i + 1}' for i in range(self.receivers))
        return JointModel(names, JointTable(w))

    def preimages(self) -> TensorType['patterns', int]:
        """
        Smallest input producing every output pattern or -1. Pattern code is row-major over (y1, ..., ym).
        """
        out = -ones(2 ** self.receivers, dtype=int64)
        for x in reversed(range(self.input_size)):
            code = 0
            for y in self.functions[:, x].tolist():
                code = code * 2 + y
            out[code] = x
        return out


class NoisyBC(NamedTuple):
    """
    Two-receiver broadcast channel with kernel P(y1, y2 | x).

    :param family: optional constructor tag, e.g. ('bec_bsc', eps, p)
    """
    kernel: TensorType['inputs', 'y1', 'y2', float]
    family: Optional[tuple] = None

    @property
    def input_size(self) -> int:
        return self.kernel.size(0)

    @property
    def output_sizes(self) -> Tuple[int, int]:
        return self.kernel.size(1), self.kernel.size(2)

    def leg(self, i: int) -> TensorType['inputs', 'outputs', float]:
        """
        Conditional marginal P(y_i | x) for receiver i ∈ {1, 2}.
        """
        assert i in (1, 2), 'receiver should be 1 or 2'
        return self.kernel.sum(3 - i)

    def model(self, px: Union[Pmf, Sequence[float], None] = None) -> JointModel:
        if px is None:
            px = ones(self.input_size, dtype=float64) / self.input_size
        px = px if isinstance(px, Pmf) else as_pmf(px)
        if px.size != self.input_size:
            raise ShapeError(f'input pmf has {px.size} letters, channel has {self.input_size}')
        return JointModel(('x', 'y1', 'y2'), JointTable(px.weights[:, None, None] * self.kernel))

    def sample(self, x: TensorType[..., int], uniforms: TensorType[..., float]) -> Tuple[Tensor, Tensor]:
        """
        Channel outputs for inputs x by inverse CDF on pre-drawn uniforms of the same shape.
        """
        cdf = self.kernel.reshape(self.input_size, -1).cumsum(1)
        rows = cdf[x.reshape(-1)]
        code = searchsorted(rows, uniforms.reshape(-1, 1).to(float64), right=True).squeeze(1)
        code = code.clamp(max=cdf.size(1) - 1).reshape(x.shape)
        size2 = self.output_sizes[1]
        return code // size2, code % size2


class SuperpositionChain(NamedTuple):
    """
    Binary cloud center V, satellite X ~ P(x | v), channel P(y1, y2 | x): V - X - (Y1, Y2).
    """
    pv: Pmf
    px_given_v: TensorType[2, 'inputs', float]
    channel: NoisyBC

    def model(self) -> JointModel:
        w = einsum('v,vx,xab->vxab', self.pv.weights, self.px_given_v, self.channel.kernel)
        return JointModel(('v', 'x', 'y1', 'y2'), JointTable(w))


class MartonConfig(NamedTuple):
    """
    Correlated binary auxiliaries (V1, V2), deterministic map x = φ(v1, v2) and a two-receiver channel.
    """
    pv1v2: JointTable
    phi: TensorType[2, 2, int]
    channel: NoisyBC

    def model(self) -> JointModel:
        onehot = zeros(2, 2, self.channel.input_size, dtype=float64)
        for v1 in range(2):
            for v2 in range(2):
                onehot[v1, v2, int(self.phi[v1, v2])] = 1.
        w = einsum('ab,abx,xcd->abxcd', self.pv1v2.weights, onehot, self.channel.kernel)
        return JointModel(('v1', 'v2', 'x', 'y1', 'y2'), JointTable(w))

    def encode(self, v1: TensorType[..., int], v2: TensorType[..., int]) -> TensorType[..., int]:
        return self.phi[v1.to(int64), v2.to(int64)]

    def swapped(self) -> 'MartonConfig':
        """
        Exchange the receivers' roles: (V1, Y1) <-> (V2, Y2).
        """
        channel = NoisyBC(self.channel.kernel.transpose(1, 2).contiguous())
        return MartonConfig(JointTable(self.pv1v2.weights.t().contiguous()), self.phi.t().contiguous(), channel)


def deterministic_bc(functions: Union[Tensor, Sequence[Sequence[int]]]) -> DeterministicBC:
    f = as_tensor(functions, dtype=int64)
    if f.dim() != 2 or f.size(0) < 1 or f.size(1) < 1:
        raise ShapeError('deterministic channel needs a receivers × inputs table')
    if not ((f == 0) | (f == 1)).all():
        raise DomainError('deterministic channel outputs should be binary')
    return DeterministicBC(f)


def noisy_bc(kernel: Union[Tensor, Sequence], family: Optional[tuple] = None) -> NoisyBC:
    k = as_kernel(kernel)
    if k.dim() != 3:
        raise ShapeError('two-receiver kernel should have shape inputs × |Y1| × |Y2|')
    return NoisyBC(k, family)


def superposition_chain(pv: Union[Pmf, Sequence[float]], px_given_v: Union[Tensor, Sequence],
                        channel: NoisyBC) -> SuperpositionChain:
    pv = pv if isinstance(pv, Pmf) else as_pmf(pv)
    if pv.size != 2:
        raise UnsupportedError('cloud center V should be binary')
    pxv = as_kernel(px_given_v, 2)
    if pxv.dim() != 2 or pxv.size(1) != channel.input_size:
        raise ShapeError(f'P(x|v) should have shape 2 × {channel.input_size}')
    return SuperpositionChain(pv, pxv, channel)


def marton_config(pv1v2: Union[JointTable, Sequence], phi: Union[Tensor, Sequence], channel: NoisyBC) -> MartonConfig:
    pv = pv1v2 if isinstance(pv1v2, JointTable) else as_joint(pv1v2)
    if pv.dims != (2, 2):
        raise UnsupportedError('auxiliaries V1, V2 should be binary')
    f = as_tensor(phi, dtype=int64)
    if f.shape != (2, 2):
        raise ShapeError('φ should be a 2 × 2 lookup table')
    if (f < 0).any() or (f >= channel.input_size).any():
        raise DomainError(f'φ values should be channel inputs in [0, {channel.input_size})')
    return MartonConfig(pv, f, channel)


def _crossover(p: float, name: str = 'p') -> float:
    if not 0. <= p < .5:
        raise DomainError(f'{name} should be in [0, 1/2), got {p!r}')
    return float(p)


def bsc(p: float) -> TensorType[2, 2, float]:
    p = _crossover(p)
    return tensor([[1. - p, p], [p, 1. - p]], dtype=float64)


def bec(eps: float) -> TensorType[2, 3, float]:
    """
    Binary erasure channel, erasure is output 2.
    """
    if not 0. < eps < 1.:
        raise DomainError(f'erasure probability should be in (0, 1), got {eps!r}')
    return tensor([[1. - eps, 0., eps], [0., 1. - eps, eps]], dtype=float64)


def blackwell() -> DeterministicBC:
    """
    Ternary-input Blackwell channel: output pair (y1, y2) = (1, 0) never occurs.
    """
    return DeterministicBC(tensor([[0, 0, 1], [0, 1, 1]], dtype=int64))


def bsc_pair(p1: float, p2: float) -> NoisyBC:
    """
    Y1 = X through BSC(p1), Y2 = X through BSC(p2), conditionally independent.
    """
    a = bsc(_crossover(p1, 'p1'))
    b = bsc(_crossover(p2, 'p2'))
    return NoisyBC(a[:, :, None] * b[:, None, :], ('bsc_pair', float(p1), float(p2)))


def bec_bsc(eps: float, p: float) -> NoisyBC:
    """
    Y1 = X through BSC(p), Y2 = X through BEC(eps).
    """
    a = bsc(p)
    b = bec(eps)
    return NoisyBC(a[:, :, None] * b[:, None, :], ('bec_bsc', float(eps), float(p)))


def bsc_superposition(alpha: float, p1: float, p2: float) -> SuperpositionChain:
    """
    Fair cloud center V, X = V ⊕ Bernoulli(alpha), BSC pair (p1, p2).
    """
    if not 0. <= alpha <= 1.:
        raise DomainError(f'alpha should be a probability, got {alpha!r}')
    pxv = tensor([[1. - alpha, alpha], [alpha, 1. - alpha]], dtype=float64)
    return SuperpositionChain(Pmf(tensor([.5, .5], dtype=float64)), pxv, bsc_pair(p1, p2))


def correlated_pair(r: float = .25, q: float = .1, p1: float = 0.) -> MartonConfig:
    """
    Symmetric binary auxiliaries with P(V1 ≠ V2) = r, x = (v1, v2) as a 4-ary symbol,
    Y1 = V1 through BSC(p1), Y2 = V2 through BSC(q).
    """
    if not 0. <= r <= 1.:
        raise DomainError(f'r should be a probability, got {r!r}')
    pv = tensor([[(1. - r) / 2, r / 2], [r / 2, (1. - r) / 2]], dtype=float64)
    a = bsc(_crossover(p1, 'p1'))
    b = bsc(_crossover(q, 'q'))
    kernel = zeros(4, 2, 2, dtype=float64)
    for x in range(4):
        kernel[x] = a[x >> 1, :, None] * b[x & 1, None, :]
    phi = tensor([[0, 1], [2, 3]], dtype=int64)
    return MartonConfig(JointTable(pv), phi, NoisyBC(kernel, ('marton_pair', float(r), float(q), float(p1))))


__all__ = ['JointModel', 'DeterministicBC', 'NoisyBC', 'SuperpositionChain', 'MartonConfig',
           'deterministic_bc', 'noisy_bc', 'superposition_chain', 'marton_config',
           'bsc', 'bec', 'blackwell', 'bsc_pair', 'bec_bsc', 'bsc_superposition', 'correlated_pair']
