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
from json import loads
from pathlib import Path
from pytest import approx, mark
from torch import Generator, int64, randint, uint8
from polarcast.channels import blackwell, bsc_superposition, correlated_pair
from polarcast.codes import (construct_detbc, construct_marton, construct_superposition, decode, encode_batch,
                             ma_encode, sp_encode, two_phase_simulate)
from polarcast.core import polar_transform
from polarcast.synthesis import (build_sets, detbc_bundle, exact_bit_channel, exact_stats, high_set, low_set,
                                 tv_diagnostic)


GOLDEN = Path(__file__).parent / 'golden'


def random_bits(batch, size, seed=0):
    return randint(0, 2, (batch, size), generator=Generator().manual_seed(seed), dtype=uint8)


def test_blackwell_row2_oracle():
    """
    Y2 given Y1 is either known or a fair coin, so every synthesized index is an erasure with Z = H.
    """
    record = loads((GOLDEN / 'blackwell_row2_n4.json').read_text())
    ctx = detbc_bundle(blackwell()).contexts[record['context']]
    stats = exact_stats(ctx, record['n'])
    assert stats.z.tolist() == approx(record['z'], abs=1e-12)
    assert stats.h.tolist() == approx(record['h'], abs=1e-12)
    total = 0.
    for j in range(record['n']):
        e = exact_bit_channel(ctx, j, record['n'])
        assert all(min(abs(p - c) for c in (0., .5, 1.)) < 1e-12 for p in e.conditional().tolist())
        total += (e.p0 + e.p1).sum().item()
    assert total == approx(record['n'])


def test_blackwell_codeword(golden):
    spec = construct_detbc(blackwell(), 8, exact=True)
    w = [random_bits(4, len(spec.message_set(i)), 20 + i) for i in range(2)]
    enc = encode_batch(spec, w)
    for i in range(2):
        assert (decode(spec, i, enc.y[i][enc.ok]) == w[i][enc.ok]).all()
    golden('blackwell_codeword_n8', {'M1': spec.message_set(0), 'M2': spec.message_set(1),
                                     'x': enc.x.tolist(), 'ok': enc.ok.tolist()})


def test_blackwell_total_variation(golden):
    b = detbc_bundle(blackwell())
    sets = build_sets(b, 8, exact=True, delta=.1)
    d = tv_diagnostic('detbc', b.model, sets)
    assert d.holds
    assert d.kl == approx(d.kl_exact, abs=1e-9)
    golden('blackwell_tv_n8', {'tv': d.tv, 'kl': d.kl, 'bound': d.bound})


@mark.slow
def test_superposition_sets_and_codeword(golden):
    chain = bsc_superposition(.25, .05, .2)
    spec = construct_superposition(chain, 8, exact=True)
    assert spec.sets.exact
    stats = spec.sets.stats
    s, delta = spec.sets.sets, spec.sets.delta
    assert set(s['M1']) == set(high_set(stats['X|V'], delta)) & set(low_set(stats['X|VY1'], delta))
    assert set(s['M2']) == set(high_set(stats['V'], delta)) & set(low_set(stats['V|Y2'], delta))
    w1 = random_bits(4, len(spec.m1), 30)
    w2 = random_bits(4, len(spec.m2), 31)
    x, v = sp_encode(spec, w1, w2, return_cloud=True)
    assert (polar_transform(v.to(uint8))[:, list(spec.m2)] == w2).all()
    assert (polar_transform(x.to(uint8))[:, list(spec.m1)] == w1).all()
    golden('superposition_n8', {'sets': {k: list(idx) for k, idx in s.items()},
                                'z': {k: st.z.tolist() for k, st in stats.items()}, 'x': x.tolist()})


def test_marton_pair(golden):
    spec = construct_marton(correlated_pair(), 8, exact=True, eta=1.)
    w1 = random_bits(4, len(spec.m1), 40)
    w2 = random_bits(4, len(spec.m2), 41)
    enc = ma_encode(spec, w1, w2)
    u1 = polar_transform(enc.v1.to(uint8))
    u2 = polar_transform(enc.v2.to(uint8))
    assert (u1[:, list(spec.m1)] == w1).all()
    assert (u2[:, list(spec.m2)] == w2).all()
    assert (enc.genie == u2[:, list(spec.genie)].to(int64)).all()
    assert (enc.x == spec.cfg.encode(enc.v1, enc.v2)).all()
    golden('marton_pair_n8', {'genie_set': list(spec.genie), 'x': enc.x.tolist(), 'genie': enc.genie.tolist()})


@mark.slow
def test_two_phase_accounting_n1024(golden):
    spec = construct_marton(correlated_pair(), 1024, num_samples=4000, eta=1., repair=True)
    r = two_phase_simulate(spec, 50, seed=0)
    assert r.blocks == 50
    assert r.eta == spec.eta
    assert r.r2_eff == approx(r.r2 - len(spec.genie) / 1024, abs=1e-12)
    assert r.genie_count == 50 * len(spec.genie)
    golden('two_phase_n1024', {'eta': r.eta, 'r2_eff': r.r2_eff, 'genie_count': r.genie_count}, tol=1e-12)
