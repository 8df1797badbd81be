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
from math import isclose, log2
from pytest import approx, mark, raises
from torch import Generator, float64, rand, tensor
from polarcast.exceptions import DivergenceUndefinedError, DomainError, ShapeError
from polarcast.prob import (as_joint, as_kernel, as_pmf, bhattacharyya, binary_entropy, conditional_entropy, entropy,
                            kl_divergence, mutual_information, pinsker_bound, star_convolve, total_variation)


def random_table(seed, *dims):
    w = rand(*dims, generator=Generator().manual_seed(seed), dtype=float64)
    return w / w.sum()


def test_binary_entropy():
    assert binary_entropy(0.) == 0.
    assert binary_entropy(1.) == 0.
    assert binary_entropy(.5) == 1.
    assert isclose(binary_entropy(1 / 3), log2(3) - 2 / 3, abs_tol=1e-12)
    assert isclose(binary_entropy(.1), binary_entropy(.9), abs_tol=1e-15)
    for x in (-.1, 1.1):
        with raises(DomainError):
            binary_entropy(x)


def test_star_convolve():
    assert star_convolve(.1, .2) == approx(.26)
    assert star_convolve(0., .3) == approx(.3)
    assert star_convolve(.5, .1) == approx(.5)


def test_pmf_validation():
    assert as_pmf([.25, .75]).size == 2
    with raises(DomainError):
        as_pmf([.5, .6])
    with raises(DomainError):
        as_pmf([-.5, 1.5])
    with raises(ShapeError):
        as_pmf([[.5, .5]])
    with raises(ShapeError):
        as_pmf([])


def test_kernel_validation():
    as_kernel([[.9, .1], [.2, .8]], 2)
    with raises(ShapeError):
        as_kernel([[.9, .1], [.2, .8]], 3)
    with raises(DomainError):
        as_kernel([[.9, .2], [.2, .8]])


def test_joint_marginal_order():
    j = as_joint(random_table(0, 2, 3, 4))
    m = j.marginal((2, 0))
    assert m.dims == (4, 2)
    assert m.weights.sum().item() == approx(1.)
    assert (m.weights - j.weights.sum(1).t()).abs().max().item() < 1e-15


def test_entropies():
    assert entropy(as_pmf([.25] * 4)) == approx(2.)
    independent = tensor([[.5 * .3, .5 * .7], [.5 * .3, .5 * .7]], dtype=float64)
    assert conditional_entropy(independent, 1, 0) == approx(binary_entropy(.3))
    copy = tensor([[.5, 0.], [0., .5]], dtype=float64)
    assert mutual_information(copy, 0, 1) == approx(1.)
    assert conditional_entropy(copy, 0, 1) == approx(0., abs=1e-15)
    with raises(ShapeError):
        conditional_entropy(copy, 0, 0)
    with raises(ShapeError):
        mutual_information(copy, 0, 0)


@mark.parametrize('seed', range(10))
def test_chain_rule(seed):
    w = random_table(seed, 2, 3, 2)
    assert mutual_information(w, 0, (1, 2)) == approx(mutual_information(w, 0, 1) + mutual_information(w, 0, 2, 1))
    assert entropy(w) == approx(entropy(w.sum((1, 2))) + conditional_entropy(w, (1, 2), 0))


@mark.parametrize('seed', range(20))
def test_bhattacharyya_entropy_bracket(seed):
    w = random_table(seed, 2, 3)
    z = bhattacharyya(w)
    h = conditional_entropy(w, 0, 1)
    assert 0. <= z <= 1.
    assert z * z <= h + 1e-12
    assert h <= log2(1 + z) + 1e-12


def test_bhattacharyya_extremes():
    assert bhattacharyya(tensor([[.25, .25], [.25, .25]], dtype=float64)) == approx(1.)
    assert bhattacharyya(tensor([[.5, 0.], [0., .5]], dtype=float64)) == 0.
    with raises(ShapeError):
        bhattacharyya(random_table(0, 3, 2))


@mark.parametrize('seed', range(20))
def test_pinsker(seed):
    p = random_table(seed, 6)
    q = random_table(seed + 100, 6)
    assert total_variation(p, q) <= pinsker_bound(kl_divergence(p, q)) + 1e-12


def test_divergence():
    p = as_pmf([.5, .5])
    assert kl_divergence(p, p) == 0.
    assert kl_divergence(p, as_pmf([.25, .75])) == approx(.5 * log2(2) + .5 * log2(2 / 3))
    assert total_variation(p, as_pmf([1., 0.])) == approx(1.)
    with raises(DivergenceUndefinedError):
        kl_divergence(p, as_pmf([1., 0.]))
    with raises(ShapeError):
        kl_divergence(p, as_pmf([.2, .3, .5]))
