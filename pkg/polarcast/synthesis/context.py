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
from torch import Tensor, isnan, where, zeros_like
from torchtyping import TensorType
from typing import Dict, NamedTuple, Optional, Sequence, Tuple, Union
from ..channels import DeterministicBC, JointModel, MartonConfig, SuperpositionChain, check_permutation
from ..exceptions import ShapeError
from ..prob import Pmf


_allowed = {'sp_cloud': ('v', {(), ('y1',), ('y2',)}),
            'sp_satellite': ('x', {('v',), ('v', 'y1')}),
            'ma_v1': ('v1', {(), ('y1',)}),
            'ma_v2': ('v2', {('v1',), ('y2',)})}


class PolarContext(NamedTuple):
    """
    Conditioning structure of one transformed row: U = T^n G_n synthesized given the side sequences O^n.

    :param scheme: det_bc_row, sp_cloud, sp_satellite, ma_v1 or ma_v2
    :param target: binary model variable T
    :param side: model variables observed as whole sequences
    """
    scheme: str
    model: JointModel
    target: str
    side: Tuple[str, ...] = ()

    @property
    def name(self) -> str:
        t = self.target.upper()
        if not self.side:
            return t
        return f'{t}|{"".join(x.upper() for x in self.side)}'

    @property
    def table(self) -> TensorType[2, 'side', float]:
        return self.model.context_table(self.target, self.side)

    @property
    def side_size(self) -> int:
        return self.model.side_size(self.side)

    def letter_llr(self) -> TensorType['side', float]:
        """
        log P(T=0, o) - log P(T=1, o) per side letter; letters of zero mass get 0.
        """
        t = self.table.log()
        llr = t[0] - t[1]
        return where(isnan(llr), zeros_like(llr), llr)

    def leaf_llr(self, letters: TensorType[..., 'n', int]) -> TensorType[..., 'n', float]:
        return self.letter_llr()[letters]

    def letters(self, values: Dict[str, Tensor]) -> TensorType[..., 'n', int]:
        """
        Side letters of sampled or decoded sequences keyed by variable name.
        """
        return self.model.side_letters(values, self.side)


def polar_context(scheme: str, model: JointModel, target: str, side: Sequence[str] = ()) -> PolarContext:
    side = tuple(side)
    if scheme == 'det_bc_row':
        if not target.startswith('y') or any(not x.startswith('y') for x in side) or target in side:
            raise ShapeError('deterministic rows are conditioned on previous rows outputs only')
    elif scheme in _allowed:
        t, sides = _allowed[scheme]
        if target != t or side not in sides:
            raise ShapeError(f'{scheme} synthesizes {t} given one of {sorted(sides)}, got {target} given {side}')
    else:
        raise ShapeError(f'unknown scheme {scheme!r}')
    model.context_table(target, side)  # validates names and binary target
    return PolarContext(scheme, model, target, side)


class ContextBundle(NamedTuple):
    """
    All conditioning structures one code construction needs, keyed by context name.
    """
    scheme: str  # detbc, superposition or marton
    model: JointModel
    contexts: Dict[str, PolarContext]
    order: Tuple[int, ...] = ()  # receiver order for deterministic channels


def detbc_bundle(channel: DeterministicBC, px: Union[Pmf, Sequence[float], None] = None,
                 pi: Optional[Sequence[int]] = None) -> ContextBundle:
    pi = check_permutation(pi, channel.receivers)
    model = channel.model(px)
    contexts = {}
    for k, i in enumerate(pi):
        ctx = polar_context('det_bc_row', model, f'y{i + 1}', [f'y{r + 1}' for r in pi[:k]])
        contexts[ctx.name] = ctx
    return ContextBundle('detbc', model, contexts, pi)


def superposition_bundle(chain: SuperpositionChain) -> ContextBundle:
    model = chain.model()
    contexts = [polar_context('sp_satellite', model, 'x', ['v']),
                polar_context('sp_satellite', model, 'x', ['v', 'y1']),
                polar_context('sp_cloud', model, 'v'),
                polar_context('sp_cloud', model, 'v', ['y1']),
                polar_context('sp_cloud', model, 'v', ['y2'])]
    return ContextBundle('superposition', model, {c.name: c for c in contexts})


def marton_bundle(cfg: MartonConfig) -> ContextBundle:
    model = cfg.model()
    contexts = [polar_context('ma_v1', model, 'v1'),
                polar_context('ma_v1', model, 'v1', ['y1']),
                polar_context('ma_v2', model, 'v2', ['v1']),
                polar_context('ma_v2', model, 'v2', ['y2'])]
    return ContextBundle('marton', model, {c.name: c for c in contexts})


__all__ = ['PolarContext', 'ContextBundle', 'polar_context', 'detbc_bundle', 'superposition_bundle', 'marton_bundle']
