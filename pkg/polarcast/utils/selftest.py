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
from math import inf, isclose, log2
from torch import Generator, randint, uint8
from typing import Callable, List, NamedTuple
from ..channels import bec_bsc_class, blackwell, det_region_vertex
from ..codes import construct_detbc, decode, encode_batch, outputs
from ..core import polar_transform
from ..prob import binary_entropy
from ..synthesis import detbc_bundle, exact_bit_channel, sc_likelihood


logger = getLogger(__name__)


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ''


def _involution() -> str:
    g = Generator().manual_seed(0)
    x = randint(0, 2, (64, 1024), generator=g, dtype=uint8)
    assert (polar_transform(polar_transform(x)) == x).all(), 'G_n G_n differs from identity at n=1024'
    return 'n=1024, 64 blocks'


def _vertex() -> str:
    r = det_region_vertex(blackwell(), None, (0, 1))
    h = binary_entropy(1 / 3)
    assert isclose(r[0], h, abs_tol=1e-10) and isclose(r[1], log2(3) - h, abs_tol=1e-10), f'vertex {r}'
    return f'({r[0]:.6f}, {r[1]:.6f})'


def _family() -> str:
    got = [bec_bsc_class(e, .1) for e in (.15, .3, .4, .5)]
    assert got == ['degraded', 'less_noisy', 'more_capable', 'none'], f'classes {got}'
    return ', '.join(got)


def _oracle() -> str:
    n = 4
    worst = 0.
    for ctx in detbc_bundle(blackwell()).contexts.values():
        for j in range(n):
            e = exact_bit_channel(ctx, j, n)
            for prefix, side, p in zip(e.prefixes.tolist(), e.sides, e.conditional().tolist()):
                lr = sc_likelihood(ctx, j, prefix, side)
                q = 1. if lr == inf else lr / (1. + lr)
                worst = max(worst, abs(p - q))
    assert worst < 1e-9, f'max deviation {worst:.3e}'
    return f'max deviation {worst:.1e}'


def _round_trip() -> str:
    spec = construct_detbc(blackwell(), 8, exact=True)
    g = Generator().manual_seed(1)
    messages = [randint(0, 2, (32, len(spec.message_set(i))), generator=g, dtype=uint8) for i in range(2)]
    enc = encode_batch(spec, messages)
    y = outputs(spec, enc.x[enc.ok])
    for i in range(2):
        assert (decode(spec, i, y[i]) == messages[i][enc.ok]).all(), f'receiver {i + 1} decoded a wrong message'
    return f'{int(enc.ok.sum())}/32 blocks encoded, all decoded'


CHECKS: List[Callable[[], str]] = [_involution, _vertex, _family, _oracle, _round_trip]
NAMES = ['transform involution', 'blackwell vertex', 'bec/bsc classes', 'oracle equivalence', 'det-BC round trip']


def selftest() -> List[Check]:
    """
    Quick sanity checks of the core pieces. Failures are reported, not raised.
    """
    out = []
    for name, check in zip(NAMES, CHECKS):
        try:
            out.append(Check(name, True, check()))
        except Exception as e:
            logger.error(f'selftest {name} failed: {e}')
            out.append(Check(name, False, str(e)))
    return out


__all__ = ['Check', 'selftest']
