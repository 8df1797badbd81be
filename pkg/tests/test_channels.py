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
from math import log2
from numpy.random import default_rng
from pytest import approx, mark, raises, warns
from torch import float64, from_numpy, int64, tensor, zeros
from polarcast.channels import (bec_bsc_class, bsc, bsc_pair, bsc_superposition, classify, correlated_pair,
                                cover_rates, det_region_vertex, deterministic_bc, from_document,
                                is_stochastically_degraded, load_document, dump_document, marton_admissible,
                                marton_pentagon, marton_rates, noisy_bc, superposition_admissible, to_document)
from polarcast.exceptions import ConfigError, DomainError, ShapeError, UnsupportedError
from polarcast.prob import binary_entropy, star_convolve


h = binary_entropy


def test_blackwell_vertices(blackwell_channel):
    assert det_region_vertex(blackwell_channel) == approx((h(1 / 3), log2(3) - h(1 / 3)), abs=1e-10)
    assert det_region_vertex(blackwell_channel, pi=(1, 0)) == approx((2 / 3, h(1 / 3)), abs=1e-10)
    assert sum(det_region_vertex(blackwell_channel, [.2, .3, .5])) == approx(-(.2 * log2(.2) + .3 * log2(.3) +
                                                                               .5 * log2(.5)))
    with raises(ShapeError):
        det_region_vertex(blackwell_channel, pi=(0, 0))
    with raises(ShapeError):
        det_region_vertex(blackwell_channel, px=[.5, .5])


def test_constant_outputs():
    assert det_region_vertex(deterministic_bc([[0, 0], [1, 1]])) == approx((0., 0.))


def test_deterministic_tables(blackwell_channel):
    assert blackwell_channel.preimages().tolist() == [0, 1, -1, 2]
    assert blackwell_channel.outputs(tensor([0, 1, 2])).tolist() == [[0, 0, 1], [0, 1, 1]]
    assert blackwell_channel.model([.2, .3, .5]).marginal(['y1', 'y2']).weights[1, 0] == 0
    with raises(DomainError):
        deterministic_bc([[0, 2]])
    with raises(UnsupportedError):
        blackwell_channel.model().context_table('x')


@mark.parametrize('alpha', [.1, .25])
def test_cover_rates(alpha):
    """
    Both corners list the rates by receiver: the symmetric corner gives receiver 1 the cloud rate I(V;Y1).
    """
    p1, p2 = .05, .2
    c = cover_rates(bsc_superposition(alpha, p1, p2))
    assert c.r1 == approx(h(star_convolve(alpha, p1)) - h(p1), abs=1e-10)
    assert c.r2 == approx(1 - h(star_convolve(alpha, p2)), abs=1e-10)
    assert c.sum_rate == approx(1 - h(p1), abs=1e-10)
    s = cover_rates(bsc_superposition(alpha, p1, p2), symmetric=True)
    assert s.r1 == approx(1 - h(star_convolve(alpha, p1)), abs=1e-10)
    assert s.r2 == approx(h(star_convolve(alpha, p2)) - h(p2), abs=1e-10)
    assert s.sum_rate == approx(1 - h(p2), abs=1e-10)


def test_cover_endpoints():
    assert tuple(cover_rates(bsc_superposition(0., .05, .2))[:2]) == approx((0., 1 - h(.2)), abs=1e-10)
    assert tuple(cover_rates(bsc_superposition(.5, .05, .2))[:2]) == approx((1 - h(.05), 0.), abs=1e-10)


def test_marton_rates():
    cfg = correlated_pair(.25, .1, 0.)
    r = marton_rates(cfg)
    assert r.r1 == approx(1.)
    assert r.r2 == approx(h(.25) - h(.1))
    p = marton_pentagon(cfg)
    assert p.sum_max == approx(1 - h(.1) + h(.25))
    assert p.corner == approx((r.r1, r.r2))
    assert p.symmetric_corner == approx((1 - (1 - h(.25)), 1 - h(.1)))
    s = marton_rates(cfg.swapped())
    assert s.r1 == approx(1 - h(.1))
    assert s.r2 == approx(1 - (1 - h(.25)))


def test_swap_involution():
    cfg = correlated_pair(.3, .1, .05)
    back = cfg.swapped().swapped()
    assert (back.channel.kernel == cfg.channel.kernel).all()
    assert (back.phi == cfg.phi).all()
    assert cfg.swapped().model().marginal(['v1']).weights.tolist() == approx([.5, .5])


def test_joint_models(bsc_chain, noiseless_marton):
    m = bsc_chain.model()
    assert m.names == ('v', 'x', 'y1', 'y2')
    assert m.marginal(['v']).weights.tolist() == approx([.5, .5])
    assert m.conditional(['x'], 'v').flatten().tolist() == approx([.75, .25, .25, .75])
    assert m.context_table('v', ['y1']).shape == (2, 2)
    assert m.context_table('x', ['v', 'y1']).shape == (2, 4)
    with raises(ShapeError):
        m.axis('z')
    mm = noiseless_marton.model()
    assert mm.names == ('v1', 'v2', 'x', 'y1', 'y2')
    assert noiseless_marton.encode(tensor([0, 1, 1]), tensor([1, 0, 1])).tolist() == [1, 2, 3]


def test_noiseless_sampling():
    ch = bsc_pair(0., 0.)
    x = tensor([[0, 1, 1, 0]], dtype=int64)
    u = from_numpy(default_rng(0).random((1, 4)))
    y1, y2 = ch.sample(x, u)
    assert (y1 == x).all() and (y2 == x).all()


def test_sampling_frequencies():
    ch = bsc_pair(.1, .3)
    x = zeros(20000, dtype=int64)
    y1, y2 = ch.sample(x, from_numpy(default_rng(1).random(20000)))
    assert y1.to(float64).mean().item() == approx(.1, abs=.015)
    assert y2.to(float64).mean().item() == approx(.3, abs=.015)


def test_model_sampling(bsc_chain):
    draws = bsc_chain.model().sample((4000,), default_rng(2))
    assert set(draws) == {'v', 'x', 'y1', 'y2'}
    assert (draws['v'] != draws['x']).to(float64).mean().item() == approx(.25, abs=.03)


def test_factory_validation():
    with raises(DomainError):
        bsc(.6)
    with raises(DomainError):
        bsc_superposition(1.5, .1, .2)
    with raises(DomainError):
        correlated_pair(r=-.1)


def test_degradation():
    assert is_stochastically_degraded(bsc(.1), bsc(.2))
    assert not is_stochastically_degraded(bsc(.2), bsc(.1))
    assert is_stochastically_degraded(bsc(.1), bsc(.1))


def test_admissibility():
    assert superposition_admissible(bsc_superposition(.25, .05, .2)).ok
    bad = superposition_admissible(bsc_superposition(.25, .2, .05))
    assert not bad.ok
    assert bad.mi_strong < bad.mi_weak
    assert marton_admissible(correlated_pair(.25, .1)).ok
    assert not marton_admissible(correlated_pair(.05, .2)).ok


@mark.parametrize('eps, kind', [(.15, 'degraded'), (.3, 'less_noisy'), (.4, 'more_capable'), (.5, 'none')])
def test_bec_bsc_family_thresholds(eps, kind):
    assert bec_bsc_class(eps, .1) == kind


@mark.parametrize('eps, label, stronger', [(.15, 'degraded_2to1', 2), (.3, 'less_noisy', 2),
                                           (.4, 'more_capable', 2), (.5, 'none', None)])
def test_classify_bec_bsc_family(bec_bsc_family, eps, label, stronger):
    c = classify(bec_bsc_family(eps))
    assert c.label == label
    assert c.stronger == stronger
    assert c.analytic == c.kind
    assert 'grids' in c.notes


def test_classify_binary_only():
    ternary = noisy_bc(correlated_pair().channel.kernel)
    with raises(UnsupportedError):
        classify(ternary)


def test_documents(tmp_path, blackwell_channel, bsc_chain, noiseless_marton):
    for obj in (blackwell_channel, bsc_chain, noiseless_marton, bsc_pair(.1, .2)):
        doc = to_document(obj)
        back = from_document(doc)
        assert to_document(back) == doc
    path = tmp_path / 'chain.json'
    dump_document(bsc_chain, path)
    assert to_document(load_document(path)) == to_document(bsc_chain)


@mark.parametrize('doc', [{'tables': [[0, 1]]},
                          {'type': 'unknown', 'tables': []},
                          {'type': 'deterministic', 'm': 2, 'tables': [[0, 1]]},
                          {'type': 'deterministic', 'x_size': 3, 'tables': [[0, 1]]},
                          {'type': 'noisy', 'tables': [[[.5, .6]]]},
                          {'type': 'superposition', 'tables': {'pv': [.5, .5]}}])
def test_invalid_documents(doc):
    with raises(ConfigError):
        from_document(doc)


def test_sweep_disagreement_warns():
    # family tag does not match the kernel
    ch = bsc_pair(.1, .2)
    tagged = noisy_bc(ch.kernel.sum(2, keepdim=True).expand(2, 2, 2) / 2, ('bec_bsc', .5, .1))
    with warns(UserWarning):
        classify(tagged, capable_points=101, noisy_points=11)
