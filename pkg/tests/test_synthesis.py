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
from math import inf, log2
from pytest import approx, mark, param, raises, warns
from torch import Generator, cat, float64, rand, tensor, uint8, zeros
from polarcast.channels import blackwell, bsc_superposition, correlated_pair, noisy_bc, superposition_chain
from polarcast.exceptions import DomainError, InvalidLengthError, ShapeError, TooLargeError, UnsupportedError
from polarcast.prob import bhattacharyya, binary_entropy, conditional_entropy, kl_divergence
from polarcast.synthesis import (IndexStats, PolarizationSets, build_sets, check_alignment, detbc_bundle,
                                 enumerate_context, estimate_stats_mc, exact_bit_channel, exact_stats, high_set,
                                 low_set, marton_bundle, polar_context, probability_zero, quantile_size,
                                 sc_likelihood, sc_sweep, superposition_bundle, threshold, top_margin, tv_diagnostic)


def bundles():
    return {'detbc': detbc_bundle(blackwell()),
            'superposition': superposition_bundle(bsc_superposition(.25, .05, .2)),
            'marton': marton_bundle(correlated_pair(.25, .1, .05))}


def contexts():
    return [(scheme, name) for scheme, b in bundles().items() for name in b.contexts]


def conditional_from_ratio(lr):
    return 1. if lr == inf else lr / (1. + lr)


@mark.parametrize('scheme, name', contexts())
@mark.parametrize('n', [2, 4])
def test_oracle_equivalence(scheme, name, n):
    ctx = bundles()[scheme].contexts[name]
    for j in range(n):
        e = exact_bit_channel(ctx, j, n)
        for prefix, side, p in zip(e.prefixes.tolist(), e.sides, e.conditional().tolist()):
            assert abs(conditional_from_ratio(sc_likelihood(ctx, j, prefix, side)) - p) < 1e-9


def sweep_conditionals(ctx, e, chunk=1 << 16):
    """
    P(U(j) = 0 | prefix, side) of every realization of an exact bit channel from the batched engine.
    """
    out = []
    for start in range(0, e.sides.size(0), chunk):
        prefixes = e.prefixes[start:start + chunk]

        def decide(i, llr):
            if i == e.j:
                out.append(probability_zero(llr))
            if i < e.j:
                return prefixes[:, i]
            return zeros(llr.shape, dtype=uint8)

        sc_sweep(ctx.leaf_llr(e.sides[start:start + chunk]), decide)
    return cat(out)


@mark.parametrize('scheme, name', [param(s, c, marks=mark.slow) if c == 'X|VY1' else (s, c) for s, c in contexts()])
def test_oracle_equivalence_n8(scheme, name):
    ctx = bundles()[scheme].contexts[name]
    for j in range(8):
        e = exact_bit_channel(ctx, j, 8)
        p = e.conditional()
        assert (sweep_conditionals(ctx, e) - p).abs().max().item() < 1e-9
        for r in range(0, p.numel(), max(p.numel() // 16, 1)):
            ratio = sc_likelihood(ctx, j, e.prefixes[r].tolist(), e.sides[r])
            assert abs(conditional_from_ratio(ratio) - p[r].item()) < 1e-9


def test_likelihood_errors():
    ctx = bundles()['detbc'].contexts['Y1']
    with raises(ShapeError):
        sc_likelihood(ctx, 2, [0], tensor([0, 0, 0, 0]))
    with raises(ShapeError):
        sc_likelihood(ctx, 4, [0, 0, 0, 0], tensor([0, 0, 0, 0]))
    with raises(InvalidLengthError):
        sc_likelihood(ctx, 0, [], tensor([0, 0, 0]))


def test_context_names():
    assert list(bundles()['superposition'].contexts) == ['X|V', 'X|VY1', 'V', 'V|Y1', 'V|Y2']
    assert list(bundles()['marton'].contexts) == ['V1', 'V1|Y1', 'V2|V1', 'V2|Y2']
    assert list(detbc_bundle(blackwell(), pi=(1, 0)).contexts) == ['Y2', 'Y1|Y2']
    model = bsc_superposition(.25, .05, .2).model()
    with raises(ShapeError):
        polar_context('sp_cloud', model, 'x')
    with raises(ShapeError):
        polar_context('sp_satellite', model, 'x', ['y2'])
    with raises(ShapeError):
        polar_context('unknown', model, 'v')


@mark.parametrize('scheme, name', contexts())
def test_entropy_chain_rule(scheme, name):
    b = bundles()[scheme]
    ctx = b.contexts[name]
    stats = exact_stats(ctx, 4)
    single = conditional_entropy(b.model.table, b.model.axis(ctx.target), b.model.axes(ctx.side))
    assert stats.h.sum().item() == approx(4 * single, abs=1e-9)
    assert stats.exact
    assert (stats.std_error == 0).all()


@mark.parametrize('scheme, name', [(s, c) for s, c in contexts() if c != 'X|VY1'])
def test_bhattacharyya_entropy_bracket(scheme, name):
    stats = exact_stats(bundles()[scheme].contexts[name], 8)
    z, h = stats.z, stats.h
    assert ((z >= 0) & (z <= 1) & (h >= 0) & (h <= 1)).all()
    assert (z * z <= h + 1e-9).all()
    assert (h <= (1 + z).log2() + 1e-9).all()
    for delta in (.01, .05, .1, .2, .3, .45):
        assert all(h[j] >= 1 - 2 * delta - 1e-9 for j in high_set(stats, delta))
        assert all(h[j] <= log2(1 + delta) + 1e-9 for j in low_set(stats, delta))


@mark.parametrize('scheme, name', contexts())
def test_bhattacharyya_recursion(scheme, name):
    """
    Index 2i + 1 of the doubled block has Z(i)², index 2i lies between Z(i) and 2 Z(i) - Z(i)².
    """
    ctx = bundles()[scheme].contexts[name]
    levels = [tensor([bhattacharyya(ctx.table)], dtype=float64)] + [exact_stats(ctx, n).z for n in (2, 4)]
    for parent, child in zip(levels, levels[1:]):
        for i, z in enumerate(parent.tolist()):
            assert child[2 * i + 1].item() == approx(z * z, abs=1e-12)
            assert z - 1e-12 <= child[2 * i].item() <= 2 * z - z * z + 1e-12


def test_bhattacharyya_recursion_erasure():
    """
    Y2 given Y1 of the Blackwell channel is an erasure with probability 2/3, so the upper bound is attained.
    """
    ctx = bundles()['detbc'].contexts['Y2|Y1']
    z2 = exact_stats(ctx, 2).z.tolist()
    assert z2 == approx([8 / 9, 4 / 9], abs=1e-12)
    assert exact_stats(ctx, 4).z.tolist() == approx([80 / 81, 64 / 81, 56 / 81, 16 / 81], abs=1e-12)


@mark.parametrize('scheme, name', contexts())
def test_divergence_from_uniform(scheme, name):
    """
    D(P_{U(j), prefix, side} || uniform U(j) × P_{prefix, side}) = 1 - H(U(j) | prefix, side).
    """
    ctx = bundles()[scheme].contexts[name]
    for j in range(4):
        e = exact_bit_channel(ctx, j, 4)
        p = cat((e.p0, e.p1))
        q = ((e.p0 + e.p1) / 2).repeat(2)
        assert kl_divergence(p, q) == approx(1 - e.h, abs=1e-10)


@mark.parametrize('seed', range(5))
def test_divergence_from_uniform_random_joint(seed):
    joint = rand(2, 5, generator=Generator().manual_seed(seed), dtype=float64)
    joint /= joint.sum()
    q = (joint.sum(0, keepdim=True) / 2).expand(2, 5)
    assert kl_divergence(joint.flatten(), q.flatten()) == approx(1 - conditional_entropy(joint, 0, 1), abs=1e-10)


def random_chain(seed):
    g = Generator().manual_seed(seed)
    pv = rand(1, generator=g, dtype=float64).item() * .8 + .1
    pxv = rand(2, 2, generator=g, dtype=float64) + .05
    kernel = rand(2, 2, 2, generator=g, dtype=float64) + .05
    return superposition_chain([pv, 1 - pv], pxv / pxv.sum(1, keepdim=True),
                               noisy_bc(kernel / kernel.sum((1, 2), keepdim=True)))


@mark.parametrize('seed', range(6))
def test_conditioning_nests_sets(seed):
    """
    More side information never raises Z, so low sets grow and high sets shrink along conditioning.
    """
    b = superposition_bundle(random_chain(seed))
    stats = {k: exact_stats(c, 4) for k, c in b.contexts.items()}
    for coarse, fine in (('X|V', 'X|VY1'), ('V', 'V|Y1'), ('V', 'V|Y2')):
        assert (stats[fine].z <= stats[coarse].z + 1e-12).all()
        for delta in (.05, .2, .4):
            assert set(low_set(stats[coarse], delta)) <= set(low_set(stats[fine], delta))
            assert set(high_set(stats[fine], delta)) <= set(high_set(stats[coarse], delta))


def test_degraded_ordering():
    sp = bundles()['superposition']
    weak = exact_stats(sp.contexts['V|Y2'], 8).z
    strong = exact_stats(sp.contexts['V|Y1'], 8).z
    prior = exact_stats(sp.contexts['V'], 8).z
    assert (strong <= weak + 1e-12).all()
    assert (weak <= prior + 1e-12).all()
    sat = exact_stats(sp.contexts['X|VY1'], 4).z
    assert (sat <= exact_stats(sp.contexts['X|V'], 4).z + 1e-12).all()
    ma = bundles()['marton']
    assert (exact_stats(ma.contexts['V2|Y2'], 8).z <= exact_stats(ma.contexts['V2|V1'], 8).z + 1e-12).all()


def test_enumeration_guard():
    with raises(TooLargeError):
        enumerate_context(bundles()['superposition'].contexts['X|VY1'], 16)
    e = enumerate_context(bundles()['detbc'].contexts['Y1'], 4)
    assert e.prob.sum().item() == approx(1.)


@mark.parametrize('name', ['Y1', 'Y2|Y1'])
def test_monte_carlo_matches_exact(name):
    ctx = bundles()['detbc'].contexts[name]
    exact = exact_stats(ctx, 8)
    mc = estimate_stats_mc(ctx, 8, 20000, seed=3)
    assert mc.sample_count == 20000
    assert not mc.exact
    assert (mc.z - exact.z).abs().max().item() < .04
    assert (mc.h - exact.h).abs().max().item() < .04
    assert (mc.std_error < .02).all()


def test_monte_carlo_reproducible():
    ctx = bundles()['marton'].contexts['V2|V1']
    a = estimate_stats_mc(ctx, 16, 600, seed=7)
    b = estimate_stats_mc(ctx, 16, 600, seed=7)
    c = estimate_stats_mc(ctx, 16, 600, seed=8)
    assert (a.z == b.z).all() and (a.h == b.h).all()
    assert not (a.z == c.z).all()


def test_threshold():
    assert threshold(1024, .3) == approx(2 ** -8)
    assert threshold(256, .25) == approx(1 / 16)


def synthetic(z, h=.5):
    z = tensor(z, dtype=float64)
    return IndexStats(z, z * 0 + h, z * 0, 100)


def test_selectors():
    s = synthetic([.9, .1, .5, .99])
    assert high_set(s, .1) == (0, 3)
    assert low_set(s, .1) == (1,)
    assert quantile_size(4, .75, 0.) == 3
    assert quantile_size(4, .75, .25) == 2
    assert quantile_size(4, .2, .25) == 0
    assert top_margin(s, None, 2) == (0, 3)
    assert top_margin(s, None, 9) == (0, 1, 2, 3)
    observed = synthetic([.1, .2, .5, 0.])
    assert top_margin(s, observed, 1) == (3,)
    assert top_margin(s, observed, 4) == (0, 3)
    assert top_margin(s, observed, 0) == ()
    assert top_margin(synthetic([.5, .5, .5]), None, 2) == (0, 1)


def test_high_set_counts_standard_error():
    z = tensor([.995, .9, .999], dtype=float64)
    s = IndexStats(z, z, tensor([.002, .001, 0.], dtype=float64), 1000)
    assert high_set(s, .004) == (0, 2)
    assert high_set(s, .004, confidence=0.) == (2,)
    assert low_set(s, .004) == ()


def test_build_sets_high_sets_allow_sampling_error():
    sets = build_sets(bundles()['detbc'], 64, num_samples=500, seed=2)
    for name, ctx in (('M1', 'Y1'), ('M2', 'Y2|Y1')):
        stats = sets.stats[ctx]
        assert (stats.std_error > 0).any()
        assert sets.sets[name] == high_set(stats, sets.delta)
        assert set(high_set(stats, sets.delta, confidence=0.)) <= set(sets.sets[name])


@mark.parametrize('seed', range(5))
def test_selectors_monotone(seed):
    s = synthetic(rand(32, generator=Generator().manual_seed(seed), dtype=float64).tolist())
    for small, large in ((.01, .1), (.1, .3), (.3, .45)):
        assert set(high_set(s, small)) <= set(high_set(s, large))
        assert set(low_set(s, small)) <= set(low_set(s, large))


def test_build_sets_detbc():
    sets = build_sets(bundles()['detbc'], 8, exact=True)
    assert sets.scheme == 'detbc'
    assert sets.mode == 'threshold'
    assert sets.exact
    assert set(sets.sets) == {'M1', 'M2'}
    assert sets.message_sets == ('M1', 'M2')
    assert sets.targets['M1'] == approx(binary_entropy(1 / 3))
    assert sets.targets['M2'] == approx(2 / 3)
    assert sets.delta == threshold(8, .3)
    for name in ('M1', 'M2'):
        z = sets.stats['Y1' if name == 'M1' else 'Y2|Y1'].z
        assert sets.sets[name] == tuple(j for j in range(8) if z[j] >= 1 - sets.delta)


def test_build_sets_superposition():
    sets = build_sets(bundles()['superposition'], 4, exact=True)
    s = sets.sets
    assert set(s['M1']) == set(s['H_X|V']) & set(s['L_X|VY1'])
    assert set(s['M2']) == set(s['H_V']) & set(s['L_V|Y2'])
    assert set(s['M1v']) == set(s['H_V']) & set(s['L_V|Y1'])
    assert sets.message_sets == ('M1', 'M2')
    assert check_alignment(sets).ok


def test_build_sets_marton():
    sets = build_sets(bundles()['marton'], 8, exact=True)
    s = sets.sets
    n = set(range(8))
    assert set(s['D1']) == n - set(s['H_V2|V1']) - set(s['L_V2|V1'])
    assert set(s['D2']) == n - set(s['H_V2|Y2']) - set(s['L_V2|Y2'])
    assert sets.eta == approx(len(set(s['D1']) | set(s['D2'])) / 8)
    assert set(s['M1']) == set(s['H_V1']) & set(s['L_V1|Y1'])
    assert set(s['M2']) == set(s['H_V2|V1']) & set(s['L_V2|Y2'])
    report = check_alignment(sets, 'marton')
    assert report.ok
    assert set(report.violations) == {'L_V2|V1<=L_V2|Y2', 'H_V2|Y2<=H_V2|V1', 'Z(V2|Y2)<=Z(V2|V1)'}


def test_build_sets_quantile():
    h = binary_entropy(1 / 3)
    with warns(UserWarning):
        sets = build_sets(bundles()['detbc'], 256, num_samples=2000, seed=1, quantile=.1)
    assert sets.mode == 'quantile'
    assert sets.quantile == .1
    assert sets.rate('M1') == approx(h - .1, abs=.02)
    assert sets.rate('M2') == approx(2 / 3 - .1, abs=.02)


def test_build_sets_quantile_superposition():
    b = bundles()['superposition']
    with warns(UserWarning):
        sets = build_sets(b, 8, exact=True, quantile=.1)
    threshold_sets = build_sets(b, 8, exact=True)
    s, z = sets.sets, {k: v.z for k, v in sets.stats.items()}
    assert len(s['M1']) == quantile_size(8, sets.targets['M1'], .1) == 3
    assert s['M2'] == ()
    assert all(z['X|V'][j] > z['X|VY1'][j] for j in s['M1'])
    outside = [(z['X|V'][j] - z['X|VY1'][j]).item() for j in range(8) if j not in s['M1']]
    assert min((z['X|V'][j] - z['X|VY1'][j]).item() for j in s['M1']) >= max(outside)
    for name in ('H_X|V', 'L_X|VY1', 'L_V|Y1', 'H_V', 'L_V|Y2'):
        assert s[name] == threshold_sets.sets[name]


@mark.parametrize('quantile', [.1, .2])
def test_build_sets_quantile_marton(quantile):
    with warns(UserWarning):
        sets = build_sets(bundles()['marton'], 64, num_samples=1000, seed=4, quantile=quantile)
    s = sets.sets
    m2 = set(s['M2'])
    assert len(m2) <= quantile_size(64, sets.targets['M2'], quantile)
    assert m2 <= set(s['H_V2|V1']) and m2 <= set(s['L_V2|Y2'])
    assert not m2 & (set(s['H_V2|Y2']) | set(s['L_V2|V1']) | set(s['D1']) | set(s['D2']))
    assert len(s['M1']) <= quantile_size(64, sets.targets['M1'], quantile)
    low = set(low_set(sets.stats['V2|Y2'], sets.delta))
    assert set(s['L_V2|Y2']) == low | m2


def test_build_sets_validation():
    b = bundles()['detbc']
    with raises(DomainError):
        build_sets(b, 8, beta=.6, exact=True)
    with raises(DomainError):
        build_sets(b, 8, delta=.7, exact=True)
    with raises(DomainError):
        build_sets(b, 8, quantile=1.5, exact=True)
    with raises(InvalidLengthError):
        build_sets(b, 6, exact=True)


def test_sets_json():
    sets = build_sets(bundles()['marton'], 4, exact=True)
    back = PolarizationSets.from_json(sets.to_json())
    assert back.sets == sets.sets
    assert back.targets == approx(sets.targets)
    assert back.eta == sets.eta
    assert back.exact
    for k in sets.stats:
        assert back.stats[k].z.tolist() == sets.stats[k].z.tolist()


def test_alignment_only_for_noisy_schemes():
    with raises(UnsupportedError):
        check_alignment(build_sets(bundles()['detbc'], 4, exact=True))


def test_alignment_reports_violation():
    sets = build_sets(bundles()['superposition'], 4, exact=True)
    broken = sets._replace(sets=dict(sets.sets, M2=tuple(range(4)), M1v=()))
    report = check_alignment(broken)
    assert not report.ok
    assert report.violations['M2<=M1v'] == (0, 1, 2, 3)


@mark.parametrize('scheme, n', [('detbc', 4), ('detbc', 8), ('superposition', 2), ('superposition', 4),
                                param('superposition', 8, marks=mark.slow), ('marton', 4), ('marton', 8)])
def test_total_variation_bound(scheme, n):
    b = bundles()[scheme]
    sets = build_sets(b, n, exact=True)
    d = tv_diagnostic(scheme, b.model, sets)
    assert d.holds
    assert d.kl == approx(d.kl_exact, abs=1e-9)
    assert 0. <= d.tv <= 2.
    assert d.bound == approx((2 * d.kl * 0.6931471805599453) ** .5)


def test_total_variation_sampled_sets():
    b = bundles()['superposition']
    sets = build_sets(b, 8, num_samples=4000, seed=5)
    d = tv_diagnostic('superposition', b.model, sets)
    assert d.holds
    assert d.kl == approx(d.kl_exact, abs=1e-9)
    assert 0. <= d.tv <= d.bound + 1e-12


def test_total_variation_without_messages():
    b = bundles()['detbc']
    sets = build_sets(b, 4, exact=True)
    empty = sets._replace(sets={'M1': (), 'M2': ()})
    d = tv_diagnostic('detbc', b.model, empty)
    assert d.tv == approx(0., abs=1e-12)
    assert d.kl == 0.


def test_total_variation_errors():
    b = bundles()['detbc']
    sets = build_sets(b, 4, exact=True)
    with raises(ShapeError):
        tv_diagnostic('detbc', b.model, sets, n=8)
    with raises(UnsupportedError):
        tv_diagnostic('other', b.model, sets)
    big = build_sets(b, 16, num_samples=50)
    with raises(TooLargeError):
        tv_diagnostic('detbc', b.model, big)
