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
from torch import Tensor, int64
from torchtyping import TensorType
from typing import NamedTuple, Optional, Tuple
from .maps import SharedMaps, block_bytes, check_mode, derive_key, map_decision
from .successive import as_bits, as_blocks, leaf_views, positions, successive
from ..channels import SuperpositionChain, superposition_admissible
from ..exceptions import ConstructionError, ShapeError
from ..synthesis import ContextBundle, PolarizationSets, build_sets, check_alignment, superposition_bundle


logger = getLogger(__name__)


class SpCodeSpec(NamedTuple):
    """
    Frozen superposition code: cloud message on M2 of U2 = V G_n, satellite message on M1 of U1 = X G_n.

    :param dropped: indices removed from M2 by the repair mode
    """
    chain: SuperpositionChain
    n: int
    sets: PolarizationSets
    seed_key: bytes
    mode: str = 'random'
    dropped: Tuple[int, ...] = ()

    @property
    def m1(self) -> Tuple[int, ...]:
        return self.sets.sets['M1']

    @property
    def m2(self) -> Tuple[int, ...]:
        return self.sets.sets['M2']

    @property
    def rates(self) -> Tuple[float, float]:
        return len(self.m1) / self.n, len(self.m2) / self.n

    @property
    def bundle(self) -> ContextBundle:
        return superposition_bundle(self.chain)


def construct_superposition(chain: SuperpositionChain, n: int, *, beta: float = .3, num_samples: int = 10000,
                            seed: int = 0, exact: bool = False, delta: Optional[float] = None,
                            quantile: Optional[float] = None, mode: str = 'random', repair: bool = False,
                            key: Optional[bytes] = None, progress: bool = False) -> SpCodeSpec:
    """
    Construct the superposition code sets and verify the cloud nesting M2 ⊆ M1v receiver 1 relies on.

    :param repair: shrink M2 to M2 ∩ M1v instead of refusing
    :raise ConstructionError: P_{Y1|V} does not dominate P_{Y2|V}, or nesting fails without repair
    """
    check_mode(mode)
    adm = superposition_admissible(chain)
    if not adm.ok:
        raise ConstructionError(f'receiver 2 is not degraded with respect to receiver 1 given V: '
                                f'I(V;Y1)={adm.mi_strong:.6f}, I(V;Y2)={adm.mi_weak:.6f}')
    bundle = superposition_bundle(chain)
    sets = build_sets(bundle, n, beta, num_samples, seed, exact=exact, delta=delta, quantile=quantile,
                      progress=progress)
    report = check_alignment(sets, 'superposition')
    dropped = report.violations['M2<=M1v']
    if dropped:
        if not repair:
            raise ConstructionError(f'cloud message indices {list(dropped)} are outside M1v')
        keep = set(sets.sets['M1v'])
        fixed = dict(sets.sets, M2=tuple(j for j in sets.sets['M2'] if j in keep))
        sets = sets._replace(sets=fixed)
        logger.warning(f'repair dropped {len(dropped)} cloud indices, rate loss {len(dropped) / n:.4f}')
    spec = SpCodeSpec(chain, n, sets, key or derive_key(seed), mode, dropped)
    logger.info(f'superposition code n={n}: rates {tuple(round(r, 4) for r in spec.rates)}')
    return spec


def _cloud(spec: SpCodeSpec, views: Tensor, mode: str, w2: Optional[Tensor] = None) -> Tuple[Tensor, Tensor]:
    """
    U2 pass: message (or its ξ decision from view 0) on M2, shared Ψ2 from the last view elsewhere.
    """
    batch = views.size(1)
    maps = SharedMaps(spec.seed_key, 'psi2', batch)
    where_ = positions(spec.m2)

    def rule(j, llr):
        if j in where_:
            return w2[:, where_[j]] if w2 is not None else map_decision(llr[0])
        return maps.frozen(j, llr[-1], mode)

    return successive(views, rule, maps)


def _satellite(spec: SpCodeSpec, views: Tensor, v: Tensor, mode: str,
               w1: Optional[Tensor] = None) -> Tuple[Tensor, Tensor]:
    batch = views.size(1)
    maps = SharedMaps(spec.seed_key, 'psi1', batch, block_bytes(v))
    where_ = positions(spec.m1)

    def rule(j, llr):
        if j in where_:
            return w1[:, where_[j]] if w1 is not None else map_decision(llr[0])
        return maps.frozen(j, llr[-1], mode)

    return successive(views, rule, maps)


def sp_encode(spec: SpCodeSpec, w1: Tensor, w2: Tensor, mode: Optional[str] = None,
              return_cloud: bool = False):
    """
    Encode cloud then satellite.

    u2 has w2 on M2 and Ψ2 (conditionals of U2 given its prefix) elsewhere, v = u2 G_n; u1 has w1 on M1 and Ψ1
    (conditionals given v) elsewhere, x = u1 G_n.

    :return: codewords [batch, n], and the cloud sequences when `return_cloud`
    """
    mode = check_mode(mode or spec.mode)
    w1 = as_bits(w1, len(spec.m1), 'satellite message')
    w2 = as_bits(w2, len(spec.m2), 'cloud message')
    if w1.size(0) != w2.size(0):
        raise ShapeError('messages should have the same number of blocks')
    batch, n = w1.size(0), spec.n
    c = spec.bundle.contexts
    v, _ = _cloud(spec, leaf_views([c['V']], {}, (batch, n)), mode, w2)
    v = v.to(int64)
    x, _ = _satellite(spec, leaf_views([c['X|V']], {'v': v}, (batch, n)), v, mode, w1)
    x = x.to(int64)
    if return_cloud:
        return x, v
    return x


def sp_decode1(spec: SpCodeSpec, y1: TensorType['batch', 'n', int], mode: Optional[str] = None,
               return_cloud: bool = False):
    """
    Receiver 1: decode the cloud from y1 (ξ on M2, Ψ2 elsewhere), then the satellite given (v̂, y1)
    (ξ on M1, Ψ1 elsewhere).

    :return: satellite message bits [batch, |M1|], and v̂ when `return_cloud`
    """
    mode = check_mode(mode or spec.mode)
    y1 = as_blocks(y1, spec.n)
    shape = tuple(y1.shape)
    c = spec.bundle.contexts
    v, _ = _cloud(spec, leaf_views([c['V|Y1'], c['V']], {'y1': y1}, shape), mode)
    v = v.to(int64)
    values = {'v': v, 'y1': y1}
    _, u1 = _satellite(spec, leaf_views([c['X|VY1'], c['X|V']], values, shape), v, mode)
    w1 = u1[:, list(spec.m1)].to(int64)
    if return_cloud:
        return w1, v
    return w1


def sp_decode2(spec: SpCodeSpec, y2: TensorType['batch', 'n', int], mode: Optional[str] = None
               ) -> TensorType['batch', 'bits', int]:
    """
    Receiver 2 decodes only the cloud from y2: ξ on M2, Ψ2 elsewhere.
    """
    mode = check_mode(mode or spec.mode)
    y2 = as_blocks(y2, spec.n)
    c = spec.bundle.contexts
    _, u2 = _cloud(spec, leaf_views([c['V|Y2'], c['V']], {'y2': y2}, tuple(y2.shape)), mode)
    return u2[:, list(spec.m2)].to(int64)


__all__ = ['SpCodeSpec', 'construct_superposition', 'sp_encode', 'sp_decode1', 'sp_decode2']
