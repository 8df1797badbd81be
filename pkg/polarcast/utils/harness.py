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
from csv import writer
from itertools import permutations
from json import dumps
from logging import getLogger
from numpy import stack as np_stack
from pathlib import Path
from scipy.stats import binomtest
from time import perf_counter
from torch import Size, float64, from_numpy, tensor, uint8
from torch.utils.data import DataLoader, Dataset
from tqdm import tqdm
from typing import Dict, List, NamedTuple, Optional, Sequence, TextIO, Tuple, Union
from .cache import ConstructionCache, cache_key
from .config import ExperimentConfig
from .. import __version__
from ..channels import (DeterministicBC, MartonConfig, NoisyBC, SuperpositionChain, cover_rates, det_region_vertex,
                        marton_pentagon, marton_rates)
from ..codes import (construct_detbc, construct_marton, construct_superposition, decode, encode_batch, ma_decode1,
                     ma_decode2, ma_encode, sp_decode1, sp_decode2, sp_encode, trial_rng)
from ..exceptions import ConfigError
from ..prob import as_pmf


logger = getLogger(__name__)
CSV_VERSION = 'v1'


class TrialRecord(NamedTuple):
    """
    One simulated block. A block fails when the encoder fails or any receiver decodes a wrong message.

    :param stream: random substream id of the block (the trial index)
    :param decode_ok: per receiver; meaningless when the encoder failed
    """
    scheme: str
    n: int
    trial: int
    stream: int
    encoder_ok: bool
    decode_ok: Tuple[bool, ...]
    rates: Tuple[float, ...]
    genie_count: int = 0
    r2_eff: Optional[float] = None
    wall_time: float = 0.

    @property
    def block_error(self) -> bool:
        return not self.encoder_ok or not all(self.decode_ok)


class TrialDataset(Dataset):
    def __init__(self, sizes: Sequence[int], n: int, trials: int, seed: int = 0, *, noisy: bool = True):
        """
        Messages and channel uniforms of every simulated block, drawn from the block's own substream.

        :param sizes: message lengths in bits, one per message
        :param noisy: also draw n channel uniforms per block
        """
        self.sizes = tuple(sizes)
        self.n = n
        self.trials = trials
        self.seed = seed
        self.noisy = noisy

    def __getitem__(self, item: int):
        if not 0 <= item < self.trials:
            raise IndexError
        rng = trial_rng(self.seed, item)
        messages = [rng.integers(0, 2, s) for s in self.sizes]
        uniforms = rng.random(self.n) if self.noisy else None
        return item, messages, uniforms

    def __len__(self):
        return self.trials

    def size(self, dim):
        if dim == 0:
            return len(self)
        elif dim is None:
            return Size((len(self),))
        raise IndexError


class trial_collate:
    """
    Collate a batch of trials by running them: encode, pass through the channel, decode at every receiver.

    :param scheme: detbc, sp or marton
    :param spec: constructed code of the scheme
    """
    def __init__(self, scheme: str, spec, mode: str):
        self.scheme = scheme
        self.spec = spec
        self.mode = mode

    def __call__(self, batch) -> List[TrialRecord]:
        start = perf_counter()
        trials = [b[0] for b in batch]
        messages = [from_numpy(np_stack([b[1][k] for b in batch])).to(uint8) for k in range(len(batch[0][1]))]
        noise = from_numpy(np_stack([b[2] for b in batch])) if batch[0][2] is not None else None
        spec = self.spec
        genie, r2_eff = 0, None
        if self.scheme == 'detbc':
            enc = encode_batch(spec, messages, self.mode)
            ok = enc.ok.tolist()
            x = enc.x.clamp(min=0)
            decoded = [(decode(spec, i, spec.channel.functions[i][x]) == messages[i]).all(1).tolist()
                       for i in range(spec.receivers)]
        elif self.scheme == 'sp':
            x = sp_encode(spec, messages[0], messages[1], self.mode)
            y1, y2 = spec.chain.channel.sample(x, noise)
            ok = [True] * len(batch)
            decoded = [(sp_decode1(spec, y1, self.mode) == messages[0]).all(1).tolist(),
                       (sp_decode2(spec, y2, self.mode) == messages[1]).all(1).tolist()]
        else:
            enc = ma_encode(spec, messages[0], messages[1], self.mode)
            y1, y2 = spec.cfg.channel.sample(enc.x, noise)
            ok = [True] * len(batch)
            decoded = [(ma_decode1(spec, y1, self.mode) == messages[0]).all(1).tolist(),
                       (ma_decode2(spec, y2, enc.genie) == messages[1]).all(1).tolist()]
            genie, r2_eff = len(spec.genie), spec.effective_r2
        elapsed = (perf_counter() - start) / len(batch)
        rates = tuple(spec.rates)
        return [TrialRecord(self.scheme, spec.n, t, t, e, tuple(d[k] for d in decoded), rates, genie, r2_eff, elapsed)
                for k, (t, e) in enumerate(zip(trials, ok))]


def _model_digest(config: ExperimentConfig, obj) -> str:
    if isinstance(obj, DeterministicBC):
        return obj.model(config.px).digest()
    return obj.model().digest()


def construct(config: ExperimentConfig, n: int, *, cache: Optional[ConstructionCache] = None,
              progress: bool = False):
    """
    Code spec of the configured scheme at block length n, through the construction cache when enabled.
    """
    obj = config.model()
    common = dict(beta=config.beta, num_samples=config.samples, seed=config.master_seed, exact=config.exact,
                  delta=config.delta, quantile=config.quantile, mode=config.mode, progress=progress)

    def build():
        if config.scheme == 'detbc':
            return construct_detbc(obj, n, px=config.px, pi=config.permutation, **common)
        elif config.scheme == 'sp':
            return construct_superposition(obj, n, repair=config.repair, **common)
        return construct_marton(obj, n, eta=config.eta, repair=config.repair, **common)

    cache = cache or ConstructionCache()
    key = cache_key(_model_digest(config, obj), config.scheme, n, config.beta, config.samples, config.master_seed,
                    config.exact, config.delta, config.quantile, config.mode, config.repair, config.eta,
                    config.permutation)
    return cache.fetch(key, build)


def wilson_interval(errors: int, trials: int, level: float = .95) -> Tuple[float, float]:
    ci = binomtest(errors, trials).proportion_ci(confidence_level=level, method='wilson')
    return ci.low, ci.high


def simulate(config: ExperimentConfig, spec, n: int, *, progress: bool = False) -> List[TrialRecord]:
    if config.scheme == 'detbc':
        sizes = [len(spec.message_set(i)) for i in range(spec.receivers)]
    else:
        sizes = [len(spec.m1), len(spec.m2)]
    ds = TrialDataset(sizes, n, config.trials, config.master_seed, noisy=config.scheme != 'detbc')
    dl = DataLoader(ds, batch_size=config.batch, num_workers=config.workers,
                    collate_fn=trial_collate(config.scheme, spec, config.mode))
    records = []
    for chunk in tqdm(dl, desc=f'n={n}', disable=not progress):
        records.extend(chunk)
    return records


def summarize(config: ExperimentConfig, records: Sequence[TrialRecord]) -> dict:
    points = []
    for n in config.n:
        rs = [r for r in records if r.n == n]
        if not rs:
            continue
        errors = sum(r.block_error for r in rs)
        low, high = wilson_interval(errors, len(rs))
        point = {'n': n, 'trials': len(rs), 'block_errors': errors, 'p_e': errors / len(rs),
                 'wilson_low': low, 'wilson_high': high, 'rates': list(rs[0].rates),
                 'encoder_failures': sum(not r.encoder_ok for r in rs)}
        if config.scheme == 'marton':
            point['genie_count'] = rs[0].genie_count
            point['r2_eff'] = rs[0].r2_eff
        points.append(point)
    return {'version': __version__, 'csv': CSV_VERSION, 'config_hash': config.config_hash, 'scheme': config.scheme,
            'points': points}


def csv_header(scheme: str, receivers: int = 2) -> List[str]:
    if scheme == 'detbc':
        return (['n', 'trial', 'encoder_ok'] + [f'decode_ok_{i + 1}' for i in range(receivers)] +
                [f'R_{i + 1}' for i in range(receivers)])
    header = ['n', 'trial', 'ok1', 'ok2', 'R1', 'R2']
    if scheme == 'marton':
        header += ['genie_count', 'r2_eff']
    return header


def _flag(x: bool) -> str:
    return '1' if x else '0'


def write_csv(scheme: str, records: Sequence[TrialRecord], stream: TextIO):
    """
    Versioned trial table. Rows follow (n, trial) order; decode flags of failed det-BC encodings stay empty.
    """
    receivers = len(records[0].decode_ok) if records else 2
    stream.write(f'# polarcast trials {CSV_VERSION}\n')
    w = writer(stream, lineterminator='\n')
    w.writerow(csv_header(scheme, receivers))
    for r in records:
        rates = [f'{x:.6f}' for x in r.rates]
        if scheme == 'detbc':
            flags = [_flag(x) if r.encoder_ok else '' for x in r.decode_ok]
            w.writerow([r.n, r.trial, _flag(r.encoder_ok), *flags, *rates])
        else:
            row = [r.n, r.trial, *map(_flag, r.decode_ok), *rates]
            if scheme == 'marton':
                row += [r.genie_count, f'{r.r2_eff:.6f}']
            w.writerow(row)


class RunResult(NamedTuple):
    records: List[TrialRecord]
    summary: dict
    specs: Dict[int, object]


def run(config: ExperimentConfig, *, cache: Optional[ConstructionCache] = None, progress: bool = False) -> RunResult:
    """
    Construct (cached) and simulate every configured block length; write CSV and JSON summary when `output` is set.

    Results depend only on the config, never on worker count or batch size.
    """
    records, specs = [], {}
    for n in config.n:
        specs[n] = spec = construct(config, n, cache=cache, progress=progress)
        rs = simulate(config, spec, n, progress=progress)
        errors = sum(r.block_error for r in rs)
        logger.info(f'{config.scheme} n={n}: {errors}/{len(rs)} block errors')
        records.extend(rs)
    summary = summarize(config, records)
    if config.output:
        out = Path(config.output)
        out.mkdir(parents=True, exist_ok=True)
        with (out / f'{config.scheme}_trials.csv').open('w', newline='') as f:
            write_csv(config.scheme, records, f)
        (out / f'{config.scheme}_summary.json').write_text(dumps(summary, indent=2, sort_keys=True))
    return RunResult(records, summary, specs)


class RegionPoint(NamedTuple):
    kind: str
    label: str
    rates: Tuple[float, ...]


def _alpha_chain(channel: NoisyBC, alpha: float) -> SuperpositionChain:
    pxv = tensor([[1. - alpha, alpha], [alpha, 1. - alpha]], dtype=float64)
    return SuperpositionChain(as_pmf([.5, .5]), pxv, channel)


def region(obj: Union[DeterministicBC, NoisyBC, SuperpositionChain, MartonConfig], *,
           pxs: Optional[Sequence[Sequence[float]]] = None,
           alphas: Optional[Sequence[float]] = None) -> List[RegionPoint]:
    """
    Boundary samples of the achievable region for external plotting.

    Deterministic channels: vertices over every receiver order and every input pmf of `pxs` (uniform by default).
    Superposition chains and binary-input noisy channels: Cover corners of both orientations, over the α grid of
    fair V with X = V ⊕ Bernoulli(α) when `alphas` is given. Marton configurations: pentagon corners and the
    codec corner points.
    """
    points = []
    if isinstance(obj, DeterministicBC):
        for k, px in enumerate(pxs or [None]):
            for pi in permutations(range(obj.receivers)):
                points.append(RegionPoint('vertex', f'px{k}:pi={"".join(map(str, pi))}',
                                          det_region_vertex(obj, px, pi)))
    elif isinstance(obj, (SuperpositionChain, NoisyBC)):
        if isinstance(obj, SuperpositionChain):
            chains = [('given', obj)]
            channel = obj.channel
        else:
            chains = []
            channel = obj
        if alphas:
            if channel.input_size != 2:
                raise ConfigError('α grid needs a binary-input channel')
            chains += [(f'alpha={a:g}', _alpha_chain(channel, a)) for a in alphas]
        for label, chain in chains:
            c = cover_rates(chain)
            s = cover_rates(chain, symmetric=True)
            points.append(RegionPoint('cover', label, (c.r1, c.r2)))
            points.append(RegionPoint('cover_sum', label, (c.sum_rate,)))
            points.append(RegionPoint('cover_symmetric', label, (s.r1, s.r2)))
    elif isinstance(obj, MartonConfig):
        p = marton_pentagon(obj)
        r = marton_rates(obj)
        points.append(RegionPoint('marton_max', 'single', (p.r1_max, p.r2_max)))
        points.append(RegionPoint('marton_sum', 'single', (p.sum_max,)))
        points.append(RegionPoint('marton_corner', 'codec', (r.r1, r.r2)))
        points.append(RegionPoint('marton_corner', 'pentagon', p.corner))
        points.append(RegionPoint('marton_corner', 'symmetric', p.symmetric_corner))
    else:
        raise TypeError(f'unsupported object {type(obj).__name__}')
    return points


def write_region_csv(points: Sequence[RegionPoint], stream: TextIO):
    width = max((len(p.rates) for p in points), default=2)
    stream.write(f'# polarcast region {CSV_VERSION}\n')
    w = writer(stream, lineterminator='\n')
    w.writerow(['kind', 'label'] + [f'R{i + 1}' for i in range(width)])
    for p in points:
        w.writerow([p.kind, p.label] + [f'{x:.10f}' for x in p.rates] + [''] * (width - len(p.rates)))


__all__ = ['TrialRecord', 'TrialDataset', 'trial_collate', 'RunResult', 'RegionPoint',
           'construct', 'simulate', 'summarize', 'run', 'wilson_interval', 'csv_header', 'write_csv',
           'region', 'write_region_csv', 'CSV_VERSION']
