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
from typing import NamedTuple, Optional, Sequence, Tuple, Union
from .models import DeterministicBC, MartonConfig, SuperpositionChain
from ..exceptions import ShapeError
from ..prob import Pmf, conditional_entropy, mutual_information


class CoverRates(NamedTuple):
    r1: float
    r2: float
    sum_rate: float


class MartonRates(NamedTuple):
    r1: float
    r2: float


class MartonRegion(NamedTuple):
    r1_max: float  # I(V1; Y1)
    r2_max: float  # I(V2; Y2)
    sum_max: float  # I(V1; Y1) + I(V2; Y2) - I(V1; V2)
    corner: Tuple[float, float]
    symmetric_corner: Tuple[float, float]


def check_permutation(pi: Optional[Sequence[int]], m: int) -> Tuple[int, ...]:
    if pi is None:
        return tuple(range(m))
    pi = tuple(int(x) for x in pi)
    if sorted(pi) != list(range(m)):
        raise ShapeError(f'{pi} is not a permutation of receivers 0..{m - 1}')
    return pi


def det_region_vertex(ch: DeterministicBC, px: Union[Pmf, Sequence[float], None] = None,
                      pi: Optional[Sequence[int]] = None) -> Tuple[float, ...]:
    """
    Vertex of the deterministic broadcast region for receiver order π.

    R_{π(i)} = H(Y_{π(i)} | Y_{π(1)}, ..., Y_{π(i-1)}); the returned tuple is indexed by receiver, so its components
    sum to H(Y_1, ..., Y_m).

    :param px: input pmf, uniform by default
    :param pi: 0-based receiver order, identity by default
    """
    pi = check_permutation(pi, ch.receivers)
    joint = ch.model(px).marginal([f'y{i + 1}' for i in range(ch.receivers)])
    rates = [0.] * ch.receivers
    for k, i in enumerate(pi):
        rates[i] = conditional_entropy(joint, i, pi[:k])
    return tuple(rates)


def cover_rates(chain: SuperpositionChain, symmetric: bool = False) -> CoverRates:
    """
    Superposition inner bound (I(X;Y1|V), I(V;Y2), I(X;Y1)) with receiver 1 decoding the satellite.

    :param symmetric: receiver 2 decodes the satellite instead: (I(V;Y1), I(X;Y2|V), I(X;Y2)); rates stay
        indexed by receiver
    """
    w = chain.model().table
    v, x, y1, y2 = 0, 1, 2, 3
    if symmetric:
        return CoverRates(mutual_information(w, v, y1), mutual_information(w, x, y2, v), mutual_information(w, x, y2))
    return CoverRates(mutual_information(w, x, y1, v), mutual_information(w, v, y2), mutual_information(w, x, y1))


def marton_rates(cfg: MartonConfig) -> MartonRates:
    """
    Rate pair (I(V1;Y1), I(V2;Y2) - I(V1;V2)) of the Marton codec. R2 is negative when the auxiliaries are too
    correlated for receiver 2.
    """
    w = cfg.model().table
    return MartonRates(mutual_information(w, 0, 3), mutual_information(w, 1, 4) - mutual_information(w, 0, 1))


def marton_pentagon(cfg: MartonConfig) -> MartonRegion:
    w = cfg.model().table
    i1 = mutual_information(w, 0, 3)
    i2 = mutual_information(w, 1, 4)
    i12 = mutual_information(w, 0, 1)
    return MartonRegion(i1, i2, i1 + i2 - i12, (i1, i2 - i12), (i1 - i12, i2))


__all__ = ['CoverRates', 'MartonRates', 'MartonRegion',
           'det_region_vertex', 'cover_rates', 'marton_rates', 'marton_pentagon', 'check_permutation']
