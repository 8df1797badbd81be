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
from math import floor
from torch import argsort, as_tensor, float64
from typing import Dict, NamedTuple, Optional, Tuple
from warnings import warn
from .context import ContextBundle
from .estimate import estimate_stats_mc
from .exact import exact_stats
from .stats import IndexStats
from ..core import block_levels
from ..exceptions import DomainError, UnsupportedError
from ..prob import conditional_entropy


logger = getLogger(__name__)
ORDER_TOLERANCE = 1e-12
CONFIDENCE = 3.


class PolarizationSets(NamedTuple):
    """
    Named index sets of one code construction with the statistics they were thresholded from.

    :param mode: `threshold` for Z ≥ 1 - δ / Z ≤ δ selection or `quantile` for margin-ranked message sets
    :param targets: single-letter rate each message set approaches, keyed by set name
    :param eta: fraction of partially polarized indices |Δ1 ∪ Δ2| / n (Marton only)
    """
    scheme: str
    n: int
    beta: float
    delta: float
    mode: str
    stats: Dict[str, IndexStats]
    sets: Dict[str, Tuple[int, ...]]
    targets: Dict[str, float]
    eta: float = 0.
    quantile: Optional[float] = None
    order: Tuple[int, ...] = ()

    def size(self, name: str) -> int:
        return len(self.sets[name])

    def rate(self, name: str) -> float:
        return len(self.sets[name]) / self.n

    @property
    def message_sets(self) -> Tuple[str, ...]:
        return tuple(x for x in self.sets if x.startswith('M') and x != 'M1v')

    @property
    def exact(self) -> bool:
        return all(s.exact for s in self.stats.values())

    def to_json(self) -> dict:
        return {'n': self.n, 'scheme': self.scheme, 'beta': self.beta, 'delta': self.delta, 'mode': self.mode,
                'quantile': self.quantile, 'order': list(self.order), 'eta': self.eta,
                'z': {k: v.z.tolist() for k, v in self.stats.items()},
                'h': {k: v.h.tolist() for k, v in self.stats.items()},
                'std_error': {k: v.std_error.tolist() for k, v in self.stats.items()},
                'samples': {k: v.sample_count for k, v in self.stats.items()},
                'sets': {k: list(v) for k, v in self.sets.items()},
                'targets': dict(self.targets)}

    @classmethod
    def from_json(cls, doc: dict) -> 'PolarizationSets':
        stats = {k: IndexStats(as_tensor(z, dtype=float64), as_tensor(doc['h'][k], dtype=float64),
                               as_tensor(doc['std_error'][k], dtype=float64), int(doc['samples'][k]),
                               int(doc['samples'][k]) == 0)
                 for k, z in doc['z'].items()}
        return cls(doc['scheme'], int(doc['n']), float(doc['beta']), float(doc['delta']), doc['mode'], stats,
                   {k: tuple(int(x) for x in v) for k, v in doc['sets'].items()},
                   {k: float(v) for k, v in doc['targets'].items()}, float(doc['eta']),
                   doc['quantile'], tuple(doc['order']))


def threshold(n: int, beta: float) -> float:
    """
    δ_n = 2^(-n^β).
    """
    return 2. ** -(n ** beta)


def high_set(stats: IndexStats, delta: float, confidence: float = CONFIDENCE) -> Tuple[int, ...]:
    """
    Indices with Z ≥ 1 - δ, where an estimate within `confidence` standard errors of the threshold counts.
    Exact statistics have zero standard error.
    """
    z = (stats.z + confidence * stats.std_error).tolist()
    return tuple(i for i, x in enumerate(z) if x >= 1. - delta)


def low_set(stats: IndexStats, delta: float) -> Tuple[int, ...]:
    return tuple(i for i, z in enumerate(stats.z.tolist()) if z <= delta)


def quantile_size(n: int, target: float, slack: float) -> int:
    """
    ⌊n(target - τ)⌋, never negative.
    """
    return max(floor(n * (target - slack)), 0)


def top_margin(prior: IndexStats, observed: Optional[IndexStats], size: int) -> Tuple[int, ...]:
    """
    At most `size` indices with the largest positive margin Z(prior) - Z(observed). Ties keep index order.

    :param observed: statistics given the receiver's observation; None ranks by Z(prior) alone
    """
    margin = prior.z if observed is None else prior.z - observed.z
    order = argsort(margin, descending=True, stable=True)[:max(size, 0)].tolist()
    values = margin.tolist()
    return tuple(sorted(i for i in order if values[i] > 0.))


def _inter(a, b) -> Tuple[int, ...]:
    b = set(b)
    return tuple(x for x in a if x in b)


def _rest(n, *sets) -> Tuple[int, ...]:
    used = set().union(*sets)
    return tuple(x for x in range(n) if x not in used)


def _entropy(bundle: ContextBundle, name: str) -> float:
    ctx = bundle.contexts[name]
    model = bundle.model
    return conditional_entropy(model.table, model.axis(ctx.target), model.axes(ctx.side))


def build_sets(bundle: ContextBundle, n: int, beta: float = .3, num_samples: int = 10000, seed: int = 0, *,
               exact: bool = False, delta: Optional[float] = None, quantile: Optional[float] = None,
               progress: bool = False) -> PolarizationSets:
    """
    Estimate every context of a construction and threshold the named index sets.

    :param exact: use full enumeration instead of sampling (small n only)
    :param delta: fixed threshold replacing 2^(-n^β)
    :param quantile: slack τ; message sets become the ⌊n(target - τ)⌋ indices of largest margin
        Z(prior) - Z(observed) while support sets stay thresholded
    """
    block_levels(n)
    if not 0. < beta < .5:
        raise DomainError(f'beta should be in (0, 1/2), got {beta!r}')
    if delta is None:
        delta = threshold(n, beta)
    elif not 0. < delta < .5:
        raise DomainError(f'delta should be in (0, 1/2), got {delta!r}')
    if quantile is not None and not 0. <= quantile < 1.:
        raise DomainError(f'quantile slack should be in [0, 1), got {quantile!r}')

    if exact:
        stats = {k: exact_stats(c, n) for k, c in bundle.contexts.items()}
    else:
        stats = {k: estimate_stats_mc(c, n, num_samples, seed, progress=progress) for k, c in bundle.contexts.items()}

    def high(name):
        return high_set(stats[name], delta)

    def low(name):
        return low_set(stats[name], delta)

    if quantile is not None:
        warn(f'quantile selection with slack {quantile} sizes the message sets; support sets keep delta={delta:.3g}')

    def message(prior, observed, target):
        if quantile is None:
            return _inter(high(prior), low(observed)) if observed else high(prior)
        return top_margin(stats[prior], stats[observed] if observed else None, quantile_size(n, target, quantile))

    eta = 0.
    if bundle.scheme == 'detbc':
        sets, targets = {}, {}
        for name, ctx in bundle.contexts.items():
            key = f'M{ctx.target[1:]}'
            targets[key] = _entropy(bundle, name)
            sets[key] = message(name, None, targets[key])
    elif bundle.scheme == 'superposition':
        targets = {'M1': _entropy(bundle, 'X|V') - _entropy(bundle, 'X|VY1'),
                   'M2': _entropy(bundle, 'V') - _entropy(bundle, 'V|Y2'),
                   'M1v': _entropy(bundle, 'V') - _entropy(bundle, 'V|Y1')}
        sets = {'H_X|V': high('X|V'), 'L_X|VY1': low('X|VY1'), 'L_V|Y1': low('V|Y1'),
                'H_V': high('V'), 'L_V|Y2': low('V|Y2')}
        sets['M1v'] = message('V', 'V|Y1', targets['M1v'])
        sets['M1'] = message('X|V', 'X|VY1', targets['M1'])
        sets['M2'] = message('V', 'V|Y2', targets['M2'])
    elif bundle.scheme == 'marton':
        targets = {'M1': _entropy(bundle, 'V1') - _entropy(bundle, 'V1|Y1'),
                   'M2': _entropy(bundle, 'V2|V1') - _entropy(bundle, 'V2|Y2')}
        sets = {'H_V1': high('V1'), 'L_V1|Y1': low('V1|Y1'),
                'H_V2|V1': high('V2|V1'), 'L_V2|V1': low('V2|V1'),
                'H_V2|Y2': high('V2|Y2'), 'L_V2|Y2': low('V2|Y2')}
        sets['M1'] = message('V1', 'V1|Y1', targets['M1'])
        sets['M2'] = message('V2|V1', 'V2|Y2', targets['M2'])
        if quantile is not None:
            # message indices of receiver 2 count as high given V1 and low given Y2
            m2 = set(sets['M2'])
            sets['H_V2|V1'] = tuple(sorted(m2.union(sets['H_V2|V1'])))
            sets['L_V2|V1'] = tuple(x for x in sets['L_V2|V1'] if x not in m2)
            sets['H_V2|Y2'] = tuple(x for x in sets['H_V2|Y2'] if x not in m2)
            sets['L_V2|Y2'] = tuple(sorted(m2.union(sets['L_V2|Y2'])))
        sets['D1'] = _rest(n, sets['H_V2|V1'], sets['L_V2|V1'])
        sets['D2'] = _rest(n, sets['H_V2|Y2'], sets['L_V2|Y2'])
        eta = len(set(sets['D1']) | set(sets['D2'])) / n
    else:
        raise UnsupportedError(f'unknown scheme {bundle.scheme!r}')

    mode = 'threshold' if quantile is None else 'quantile'
    out = PolarizationSets(bundle.scheme, n, beta, delta, mode, stats, sets, targets, eta, quantile, bundle.order)
    for name in out.message_sets:
        logger.info(f'{bundle.scheme} n={n} {mode}: |{name}|/n={out.rate(name):.4f} '
                    f'target={targets.get(name, float("nan")):.4f}')
        if not out.size(name):
            logger.warning(f'{bundle.scheme} n={n}: message set {name} is empty')
    if bundle.scheme == 'marton':
        logger.info(f'partially polarized fraction eta={eta:.4f}')
    return out


class AlignmentReport(NamedTuple):
    """
    Subset and index-wise Z ordering violations. Violations are reported, never raised.
    """
    scheme: str
    violations: Dict[str, Tuple[int, ...]]

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())


def _z_order(sets: PolarizationSets, strong: str, weak: str) -> Tuple[int, ...]:
    zs = sets.stats[strong].z.tolist()
    zw = sets.stats[weak].z.tolist()
    return tuple(i for i, (a, b) in enumerate(zip(zs, zw)) if a > b + ORDER_TOLERANCE)


def check_alignment(sets: PolarizationSets, scheme: Optional[str] = None) -> AlignmentReport:
    """
    Nesting of the decoding sets that the codecs rely on.

    Superposition: M2 ⊆ M1v, and for exact statistics Z(V|Y1) ≤ Z(V|Y2) at every index.
    Marton: L_V2|V1 ⊆ L_V2|Y2 and H_V2|Y2 ⊆ H_V2|V1, and for exact statistics Z(V2|Y2) ≤ Z(V2|V1).
    """
    scheme = scheme or sets.scheme
    s = sets.sets
    if scheme == 'superposition':
        violations = {'M2<=M1v': tuple(sorted(set(s['M2']) - set(s['M1v'])))}
        if sets.exact:
            violations['Z(V|Y1)<=Z(V|Y2)'] = _z_order(sets, 'V|Y1', 'V|Y2')
    elif scheme == 'marton':
        violations = {'L_V2|V1<=L_V2|Y2': tuple(sorted(set(s['L_V2|V1']) - set(s['L_V2|Y2']))),
                      'H_V2|Y2<=H_V2|V1': tuple(sorted(set(s['H_V2|Y2']) - set(s['H_V2|V1'])))}
        if sets.exact:
            violations['Z(V2|Y2)<=Z(V2|V1)'] = _z_order(sets, 'V2|Y2', 'V2|V1')
    else:
        raise UnsupportedError(f'alignment is defined for superposition and marton, got {scheme!r}')
    report = AlignmentReport(scheme, violations)
    if not report.ok:
        logger.warning(f'{scheme} alignment violations: { {k: v for k, v in violations.items() if v} }')
    return report


__all__ = ['PolarizationSets', 'AlignmentReport', 'build_sets', 'check_alignment', 'threshold',
           'high_set', 'low_set', 'top_margin', 'quantile_size', 'CONFIDENCE']
