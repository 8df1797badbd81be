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
from torch import Tensor, as_tensor, int64, stack, zeros
from torchtyping import TensorType
from typing import NamedTuple, Optional, Sequence, Tuple, Union
from .maps import SharedMaps, block_bytes, check_mode, derive_key
from .successive import as_bits, leaf_views, positions, successive
from ..channels import DeterministicBC
from ..core import polar_transform
from ..exceptions import EncoderBlockError, ShapeError
from ..prob import Pmf, as_pmf
from ..synthesis import ContextBundle, PolarizationSets, build_sets, detbc_bundle


logger = getLogger(__name__)


class DetCodeSpec(NamedTuple):
    """
    Frozen deterministic broadcast code: message set M_i per receiver, receiver order π and the shared key.
    """
    channel: DeterministicBC
    px: Pmf
    n: int
    sets: PolarizationSets
    order: Tuple[int, ...]
    seed_key: bytes
    mode: str = 'random'

    @property
    def receivers(self) -> int:
        return self.channel.receivers

    def message_set(self, i: int) -> Tuple[int, ...]:
        """
        Message indices of receiver i (0-based).
        """
        return self.sets.sets[f'M{i + 1}']

    @property
    def rates(self) -> Tuple[float, ...]:
        return tuple(len(self.message_set(i)) / self.n for i in range(self.receivers))

    @property
    def bundle(self) -> ContextBundle:
        return detbc_bundle(self.channel, self.px, self.order)


class DetEncoding(NamedTuple):
    x: TensorType['batch', 'n', int]  # -1 where the preimage intersection is empty
    y: TensorType['receivers', 'batch', 'n', int]
    ok: TensorType['batch', bool]

    @property
    def failures(self) -> Tuple[int, ...]:
        return tuple((~self.ok).nonzero().flatten().tolist())

    @property
    def positions(self) -> Tuple[int, ...]:
        return tuple(int((self.x[b] < 0).nonzero()[0]) for b in self.failures)


def construct_detbc(channel: DeterministicBC, n: int, *, px: Union[Pmf, Sequence[float], None] = None,
                    pi: Optional[Sequence[int]] = None, beta: float = .3, num_samples: int = 10000,
                    seed: int = 0, exact: bool = False, delta: Optional[float] = None,
                    quantile: Optional[float] = None, mode: str = 'random', key: Optional[bytes] = None,
                    progress: bool = False) -> DetCodeSpec:
    """
    Build the message sets M_i = {j : Z(U_i(j) | U_i^{<j}, earlier rows) ≥ 1 - δ} for every receiver row.
    """
    check_mode(mode)
    if px is None:
        px = [1. / channel.input_size] * channel.input_size
    px = px if isinstance(px, Pmf) else as_pmf(px)
    bundle = detbc_bundle(channel, px, pi)
    sets = build_sets(bundle, n, beta, num_samples, seed, exact=exact, delta=delta, quantile=quantile,
                      progress=progress)
    spec = DetCodeSpec(channel, px, n, sets, bundle.order, key or derive_key(seed), mode)
    logger.info(f'det-BC code n={n}: rates {tuple(round(r, 4) for r in spec.rates)}')
    return spec


def encode_batch(spec: DetCodeSpec, messages: Sequence[Tensor], mode: Optional[str] = None) -> DetEncoding:
    """
    Encode a batch of blocks without raising; failed blocks are flagged in `ok`.

    Rows are built in receiver order π. Row i carries its message on M_i and Ψ_i bits elsewhere, Ψ_i being the
    shared randomized map (mode=random) or the MAP rule (mode=map) of U_i(j) given its prefix and the earlier rows.
    The symbol x(j) is the smallest input consistent with every row's y_i(j).

    :param messages: per receiver (0-based) bits [batch, |M_i|]
    """
    mode = check_mode(mode or spec.mode)
    m = spec.receivers
    if len(messages) != m:
        raise ShapeError(f'expected {m} messages, got {len(messages)}')
    w = [as_bits(messages[i], len(spec.message_set(i)), f'message {i + 1}') for i in range(m)]
    batch = w[0].size(0)
    if any(x.size(0) != batch for x in w):
        raise ShapeError('messages should have the same number of blocks')
    n = spec.n
    bundle = spec.bundle
    contexts = list(bundle.contexts.values())

    values = {}
    y = zeros(m, batch, n, dtype=int64)
    for k, i in enumerate(spec.order):
        ctx = contexts[k]
        views = leaf_views([ctx], values, (batch, n))
        earlier = [values[f'y{r + 1}'] for r in spec.order[:k]]
        maps = SharedMaps(spec.seed_key, f'psi{i + 1}', batch, block_bytes(*earlier) if earlier else None)
        where_ = positions(spec.message_set(i))
        wi = w[i]

        def rule(j, llr):
            if j in where_:
                return wi[:, where_[j]]
            return maps.frozen(j, llr[0], mode)

        t, _ = successive(views, rule, maps)
        values[f'y{i + 1}'] = t.to(int64)
        y[i] = t

    code = zeros(batch, n, dtype=int64)
    for i in range(m):
        code = code * 2 + y[i]
    x = spec.channel.preimages()[code]
    ok = (x >= 0).all(1)
    if not ok.all():
        logger.debug(f'{int((~ok).sum())} of {batch} blocks hit an empty preimage intersection')
    return DetEncoding(x, y, ok)


def encode(spec: DetCodeSpec, messages: Sequence[Tensor], mode: Optional[str] = None) -> TensorType['batch', 'n', int]:
    """
    Codewords of a batch of message tuples.

    :raise EncoderBlockError: some block has an empty preimage intersection
    """
    out = encode_batch(spec, messages, mode)
    if not out.ok.all():
        raise EncoderBlockError(out.failures, out.positions)
    return out.x


def decode(spec: DetCodeSpec, i: int, y: TensorType[..., 'n', int]) -> TensorType[..., 'bits', int]:
    """
    Receiver i (0-based) recovers its row U_i = y_i G_n and reads the message indices.
    """
    assert 0 <= i < spec.receivers, 'receiver out of range'
    y = as_tensor(y, dtype=int64)
    if y.size(-1) != spec.n:
        raise ShapeError(f'expected blocks of length {spec.n}, got {y.size(-1)}')
    u = polar_transform(y.to(int64))
    return u[..., list(spec.message_set(i))]


def outputs(spec: DetCodeSpec, x: TensorType['batch', 'n', int]) -> TensorType['receivers', 'batch', 'n', int]:
    """
    Noiseless receiver observations of codewords.
    """
    return stack([f[x] for f in spec.channel.functions])


__all__ = ['DetCodeSpec', 'DetEncoding', 'construct_detbc', 'encode_batch', 'encode', 'decode', 'outputs']
