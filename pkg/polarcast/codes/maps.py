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
from hashlib import blake2b
from numpy.random import Generator, SeedSequence, default_rng
from torch import Tensor, float64, sigmoid, tensor, uint8
from torchtyping import TensorType
from typing import Optional, Sequence, Union
from ..exceptions import ConfigError


MODES = ('random', 'map')


def derive_key(seed: Union[int, str, bytes]) -> bytes:
    """
    32-byte key of the shared maps from a master seed.
    """
    if isinstance(seed, bytes):
        data = seed
    else:
        data = str(seed).encode()
    return blake2b(data, digest_size=32, person=b'polarcast-key').digest()


def trial_rng(seed: int, trial: int) -> Generator:
    """
    Random substream of one simulated block. Depends only on the master seed and the trial index.
    """
    return default_rng(SeedSequence(seed, spawn_key=(trial,)))


def prf(key: bytes, *parts: bytes) -> float:
    """
    Keyed pseudo-random function to a uniform real in [0, 1).
    """
    h = blake2b(key=key, digest_size=8)
    for p in parts:
        h.update(p)
    return int.from_bytes(h.digest(), 'little') / 2 ** 64


def gamma_bits(key: bytes, n: int) -> TensorType['n', int]:
    """
    Shared fair-coin vector: Γ(j) depends only on the key and the index.
    """
    return tensor([prf(key, b'gamma', j.to_bytes(4, 'little')) >= .5 for j in range(n)], dtype=uint8)


def map_decision(llr: Tensor) -> TensorType['batch', int]:
    """
    argmax of P(U(j) = · | ...), ties and undefined ratios go to 0.
    """
    return (llr < 0).to(uint8)


class SharedMaps:
    """
    Randomized frozen-bit maps Ψ shared between an encoder and its decoders.

    Ψ(j) is a fixed random function of the stream name, the index, the already decided prefix and the
    block's conditioning sequences. Every block keeps a running digest of its prefix.
    """
    def __init__(self, key: bytes, stream: str, batch: int, context: Optional[Sequence[bytes]] = None):
        """
        :param key: shared seed key
        :param stream: map name, for example psi1
        :param context: per-block bytes of the sequences the map conditions on
        """
        assert context is None or len(context) == batch, 'context should have one entry per block'
        self.key = key
        self.stream = stream.encode()
        self.batch = batch
        self._prefix = [blake2b(self.stream + (context[b] if context is not None else b''), digest_size=16)
                        for b in range(batch)]

    def uniform(self, j: int) -> TensorType['batch', float]:
        index = j.to_bytes(4, 'little')
        return tensor([prf(self.key, self.stream, index, h.digest()) for h in self._prefix], dtype=float64)

    def random(self, j: int, llr: TensorType['batch', float]) -> TensorType['batch', int]:
        """
        Bit 0 with probability P(U(j) = 0 | ...) = sigmoid(llr), drawn from the shared stream.
        """
        return (self.uniform(j) >= sigmoid(llr.to(float64))).to(uint8)

    def push(self, bits: TensorType['batch', int]):
        """
        Append the decided bits to every block's prefix.
        """
        for h, b in zip(self._prefix, bits.tolist()):
            h.update(bytes((b,)))

    def frozen(self, j: int, llr: TensorType['batch', float], mode: str = 'random') -> TensorType['batch', int]:
        if mode == 'map':
            return map_decision(llr)
        return self.random(j, llr)


def block_bytes(*rows: Tensor) -> Sequence[bytes]:
    """
    Per-block byte strings of conditioning sequences [batch, n].
    """
    return [b''.join(bytes(r[b].to(uint8).tolist()) for r in rows) for b in range(rows[0].size(0))]


def check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ConfigError(f'mode should be one of {MODES}, got {mode!r}')
    return mode


__all__ = ['SharedMaps', 'derive_key', 'trial_rng', 'prf', 'gamma_bits', 'map_decision', 'block_bytes',
           'check_mode', 'MODES']
