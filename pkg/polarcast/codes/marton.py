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
from numpy import stack as np_stack
from torch import Tensor, from_numpy, int64, uint8
from torchtyping import TensorType
from typing import NamedTuple, Optional, Tuple
from .maps import SharedMaps, block_bytes, check_mode, derive_key, gamma_bits, map_decision, trial_rng
from .successive import as_bits, as_blocks, leaf_views, positions, successive
from ..channels import MartonConfig, marton_admissible
from ..exceptions import ConstructionError, ShapeError
from ..synthesis import ContextBundle, PolarizationSets, build_sets, check_alignment, marton_bundle


logger = getLogger(__name__)


class MaCodeSpec(NamedTuple):
    """
    Frozen Marton code. U1 = V1 G_n carries M1, U2 = V2 G_n carries M2; receiver 2 gets the bits of U2 on
    `genie` out of band.

    :param genie: Δ2 plus the indices moved there by the repair mode
    :param eta_limit: configured budget for the partially polarized fraction
    """
    cfg: MartonConfig
    n: int
    sets: PolarizationSets
    seed_key: bytes
    mode: str = 'random'
    genie: Tuple[int, ...] = ()
    eta_limit: float = .05
    moved: Tuple[int, ...] = ()

    @property
    def m1(self) -> Tuple[int, ...]:
        return self.sets.sets['M1']

    @property
    def m2(self) -> Tuple[int, ...]:
        return self.sets.sets['M2']

    @property
    def eta(self) -> float:
        return self.sets.eta

    @property
    def rates(self) -> Tuple[float, float]:
        return len(self.m1) / self.n, len(self.m2) / self.n

    @property
    def effective_r2(self) -> float:
        """
        R2 less one bit per genie bit per block.
        """
        return (len(self.m2) - len(self.genie)) / self.n

    @property
    def bundle(self) -> ContextBundle:
        return marton_bundle(self.cfg)


class MaEncoding(NamedTuple):
    x: TensorType['batch', 'n', int]
    genie: TensorType['batch', 'genie', int]
    v1: TensorType['batch', 'n', int]
    v2: TensorType['batch', 'n', int]


def construct_marton(cfg: MartonConfig, n: int, *, beta: float = .3, num_samples: int = 10000, seed: int = 0,
                     exact: bool = False, delta: Optional[float] = None, quantile: Optional[float] = None,
                     mode: str = 'random', eta: float = .05, repair: bool = False, key: Optional[bytes] = None,
                     progress: bool = False) -> MaCodeSpec:
    """
    Construct the Marton sets and check the alignment receiver 2 relies on.

    :param eta: budget for |Δ1 ∪ Δ2| / n
    :param repair: move indices of H_V2|Y2 outside H_V2|V1 into the genie set instead of refusing
    :raise ConstructionError: P_{Y2|V2} does not dominate P_{V1|V2}, alignment fails without repair, or the
        partially polarized fraction exceeds its budget
    """
    check_mode(mode)
    adm = marton_admissible(cfg)
    if not adm.ok:
        raise ConstructionError(f'receiver 2 output does not dominate V1 given V2: '
                                f'I(V2;Y2)={adm.mi_strong:.6f}, I(V1;V2)={adm.mi_weak:.6f}')
    sets = build_sets(marton_bundle(cfg), n, beta, num_samples, seed, exact=exact, delta=delta, quantile=quantile,
                      progress=progress)
    report = check_alignment(sets, 'marton')
    s = sets.sets
    moved = tuple(sorted(set(s['H_V2|Y2']) - set(s['H_V2|V1'])))
    broken = report.violations['L_V2|V1<=L_V2|Y2'] + report.violations['H_V2|Y2<=H_V2|V1']
    if broken and not repair:
        raise ConstructionError(f'alignment of receiver 2 sets fails at indices {sorted(set(broken))}')
    if moved:
        logger.warning(f'repair moved {len(moved)} indices to the genie set, extra cost {len(moved) / n:.4f}')
    genie = tuple(sorted(set(s['D2']) | set(moved)))
    if sets.eta > eta:
        raise ConstructionError(f'partially polarized fraction {sets.eta:.4f} exceeds eta={eta}; '
                                f'raise the budget or the block length')
    logger.debug(f'Ψ2 branch outside H_V2|V1: {len(set(range(n)) - set(s["H_V2|V1"]) - set(s["D1"]))} low, '
                 f'{len(s["D1"])} partially polarized')
    spec = MaCodeSpec(cfg, n, sets, key or derive_key(seed), mode, genie, eta, moved)
    logger.info(f'Marton code n={n}: rates {tuple(round(r, 4) for r in spec.rates)}, '
                f'genie bits {len(genie)}, effective R2 {spec.effective_r2:.4f}')
    return spec


def ma_encode(spec: MaCodeSpec, w1: Tensor, w2: Tensor, mode: Optional[str] = None) -> MaEncoding:
    """
    Build u1 (w1 on M1, Ψ1 from prefix-only conditionals elsewhere), v1 = u1 G_n; then u2 (w2 on M2, shared
    fair coin Γ on the rest of H_V2|V1, Ψ2 given v1 elsewhere), v2 = u2 G_n; x(j) = φ(v1(j), v2(j)).
    """
    mode = check_mode(mode or spec.mode)
    w1 = as_bits(w1, len(spec.m1), 'message 1')
    w2 = as_bits(w2, len(spec.m2), 'message 2')
    if w1.size(0) != w2.size(0):
        raise ShapeError('messages should have the same number of blocks')
    batch, n = w1.size(0), spec.n
    c = spec.bundle.contexts

    maps1 = SharedMaps(spec.seed_key, 'psi1', batch)
    where1 = positions(spec.m1)

    def rule1(j, llr):
        if j in where1:
            return w1[:, where1[j]]
        return maps1.frozen(j, llr[0], mode)

    v1, _ = successive(leaf_views([c['V1']], {}, (batch, n)), rule1, maps1)
    v1 = v1.to(int64)

    maps2 = SharedMaps(spec.seed_key, 'psi2', batch, block_bytes(v1))
    where2 = positions(spec.m2)
    high = set(spec.sets.sets['H_V2|V1'])
    gamma = gamma_bits(spec.seed_key, n)

    def rule2(j, llr):
        if j in where2:
            return w2[:, where2[j]]
        if j in high:
            return gamma[j].expand(batch)
        return maps2.frozen(j, llr[0], mode)

    v2, u2 = successive(leaf_views([c['V2|V1']], {'v1': v1}, (batch, n)), rule2, maps2)
    v2 = v2.to(int64)
    x = spec.cfg.encode(v1, v2)
    return MaEncoding(x, u2[:, list(spec.genie)].to(int64), v1, v2)


def ma_decode1(spec: MaCodeSpec, y1: TensorType['batch', 'n', int], mode: Optional[str] = None
               ) -> TensorType['batch', 'bits', int]:
    """
    Receiver 1: ξ from y1 on M1, shared Ψ1 elsewhere.
    """
    mode = check_mode(mode or spec.mode)
    y1 = as_blocks(y1, spec.n)
    c = spec.bundle.contexts
    maps = SharedMaps(spec.seed_key, 'psi1', y1.size(0))
    where = positions(spec.m1)

    def rule(j, llr):
        if j in where:
            return map_decision(llr[0])
        return maps.frozen(j, llr[-1], mode)

    _, u1 = successive(leaf_views([c['V1|Y1'], c['V1']], {'y1': y1}, tuple(y1.shape)), rule, maps)
    return u1[:, list(spec.m1)].to(int64)


def ma_decode2(spec: MaCodeSpec, y2: TensorType['batch', 'n', int], genie: TensorType['batch', 'genie', int]
               ) -> TensorType['batch', 'bits', int]:
    """
    Receiver 2 works from y2 alone: genie values on Δ2, shared Γ on H_V2|Y2, ξ on L_V2|Y2. V1 never enters.

    :raise ShapeError: genie bits do not cover the genie set exactly
    """
    y2 = as_blocks(y2, spec.n)
    batch = y2.size(0)
    genie = as_bits(genie, len(spec.genie), 'genie bits')
    if genie.size(0) != batch:
        raise ShapeError(f'genie bits for {genie.size(0)} blocks, observations for {batch}')
    c = spec.bundle.contexts
    given = positions(spec.genie)
    high = set(spec.sets.sets['H_V2|Y2'])
    gamma = gamma_bits(spec.seed_key, spec.n)

    def rule(j, llr):
        if j in given:
            return genie[:, given[j]]
        if j in high:
            return gamma[j].expand(batch)
        return map_decision(llr[0])

    _, u2 = successive(leaf_views([c['V2|Y2']], {'y2': y2}, tuple(y2.shape)), rule)
    return u2[:, list(spec.m2)].to(int64)


class TwoPhaseRecord(NamedTuple):
    """
    Aggregate of a two-phase run: phase 1 sends the blocks, phase 2 delivers every buffered genie bit.
    """
    blocks: int
    r1: float
    r2: float
    r2_eff: float
    eta: float
    genie_count: int  # bits delivered in phase 2
    errors1: int
    errors2: int
    block_errors: int

    @property
    def error_rate(self) -> float:
        return self.block_errors / self.blocks


def two_phase_simulate(spec: MaCodeSpec, num_blocks: int, seed: int = 0, *, batch: int = 32,
                       mode: Optional[str] = None) -> TwoPhaseRecord:
    """
    Phase 1 sends `num_blocks` blocks and buffers their genie bits, receiver 1 decodes at once; phase 2 hands the
    buffer to receiver 2 over an ideal side channel charged one bit per genie bit, then receiver 2 decodes.
    """
    assert num_blocks >= 1, 'at least one block required'
    assert batch >= 1, 'batch should be positive'
    n = spec.n
    buffer, observed, sent = [], [], []
    errors1 = []
    for start in range(0, num_blocks, batch):
        draws = [_draw(spec, trial_rng(seed, b)) for b in range(start, min(start + batch, num_blocks))]
        w1 = from_numpy(np_stack([d[0] for d in draws])).to(uint8)
        w2 = from_numpy(np_stack([d[1] for d in draws])).to(uint8)
        noise = from_numpy(np_stack([d[2] for d in draws]))
        enc = ma_encode(spec, w1, w2, mode)
        y1, y2 = spec.cfg.channel.sample(enc.x, noise)
        errors1.append((ma_decode1(spec, y1, mode) != w1).any(1))
        buffer.append(enc.genie)
        observed.append(y2)
        sent.append(w2)
    logger.info(f'phase 1: {num_blocks} blocks sent, {len(spec.genie) * num_blocks} genie bits buffered')

    errors2 = [(ma_decode2(spec, y2, g) != w2).any(1) for y2, g, w2 in zip(observed, buffer, sent)]
    e1 = sum(int(e.sum()) for e in errors1)
    e2 = sum(int(e.sum()) for e in errors2)
    both = sum(int((a | b).sum()) for a, b in zip(errors1, errors2))
    r1, r2 = spec.rates
    return TwoPhaseRecord(num_blocks, r1, r2, r2 - len(spec.genie) / n, spec.eta, len(spec.genie) * num_blocks,
                          e1, e2, both)


def _draw(spec: MaCodeSpec, rng):
    return (rng.integers(0, 2, len(spec.m1)), rng.integers(0, 2, len(spec.m2)), rng.random(spec.n))


__all__ = ['MaCodeSpec', 'MaEncoding', 'TwoPhaseRecord', 'construct_marton', 'ma_encode', 'ma_decode1',
           'ma_decode2', 'two_phase_simulate']
