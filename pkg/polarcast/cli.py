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
import sys
from argparse import ArgumentParser, Namespace
from json import dumps, load
from logging import DEBUG, INFO, WARNING, basicConfig, getLogger
from pathlib import Path
from torch import int64, tensor
from typing import List, Optional, Sequence
from .channels import DeterministicBC, MartonConfig, NoisyBC, SuperpositionChain, classify, from_document
from .codes import decode, encode, two_phase_simulate
from .exceptions import (ConfigError, ConstructionError, DomainError, EncoderBlockError, InvalidLengthError, ShapeError,
                         TooLargeError, UnsupportedError)
from .utils import construct, load_config, region, run, selftest, write_csv, write_region_csv


logger = getLogger('polarcast')
SCHEMES = {'detbc': ('construct', 'simulate', 'encode', 'decode'),
           'sp': ('construct', 'simulate'),
           'marton': ('construct', 'simulate', 'two-phase')}


def _read_json(path: str) -> dict:
    try:
        with open(path) as f:
            return load(f)
    except (OSError, ValueError) as e:
        raise ConfigError(f'cannot read {path}: {e}') from e


def _symbols(text: str) -> List[int]:
    """
    `0110`, `0 1 1 0` or `0,1,1,0` as a list of symbols.
    """
    text = text.strip()
    if not text:
        return []
    try:
        if any(c in text for c in ' ,'):
            return [int(x) for x in text.replace(',', ' ').split()]
        return [int(x) for x in text]
    except ValueError:
        raise ConfigError(f'cannot parse symbols {text!r}') from None


def _experiment(scheme: str, args: Namespace):
    overrides = dict(n=args.n, beta=args.beta, samples=args.samples, master_seed=args.seed, trials=args.trials,
                     mode=args.mode, exact=args.exact, delta=args.delta, quantile=args.quantile, eta=args.eta,
                     repair=args.repair, workers=args.workers, batch=args.batch, output=args.output)
    if scheme == 'detbc':
        overrides.update(px=args.px, permutation=args.pi)
    if args.config:
        return load_config(args.config, **overrides)
    if not args.channel:
        raise ConfigError('either --config or --channel is required')
    return load_config({'scheme': scheme, 'document': _read_json(args.channel)}, **overrides)


def _construct(cfg) -> dict:
    codes = []
    for n in cfg.n:
        spec = construct(cfg, n)
        code = {'n': n, 'rates': list(spec.rates), 'sets': spec.sets.to_json()}
        if cfg.scheme == 'marton':
            code.update(genie=list(spec.genie), moved=list(spec.moved), effective_r2=spec.effective_r2)
        elif cfg.scheme == 'sp':
            code['dropped'] = list(spec.dropped)
        codes.append(code)
    return {'scheme': cfg.scheme, 'config_hash': cfg.config_hash, 'codes': codes}


def _emit(doc: dict, output: Optional[str], name: str):
    text = dumps(doc, indent=2, sort_keys=True)
    if output:
        out = Path(output)
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)
    else:
        print(text)


def _scheme(scheme: str, args: Namespace) -> int:
    cfg = _experiment(scheme, args)
    progress = args.verbose > 0
    if args.command == 'construct':
        _emit(_construct(cfg), cfg.output, f'{scheme}_sets.json')
    elif args.command == 'simulate':
        result = run(cfg, progress=progress)
        if cfg.output:
            print(dumps(result.summary, indent=2, sort_keys=True))
        else:
            write_csv(scheme, result.records, sys.stdout)
    elif args.command == 'two-phase':
        spec = construct(cfg, cfg.n[0], progress=progress)
        record = two_phase_simulate(spec, cfg.trials, cfg.master_seed, batch=cfg.batch)
        _emit(dict(record._asdict(), error_rate=record.error_rate, n=spec.n), cfg.output, 'marton_two_phase.json')
    elif args.command == 'encode':
        spec = construct(cfg, cfg.n[0], progress=progress)
        if len(args.message or ()) != spec.receivers:
            raise ConfigError(f'{spec.receivers} messages required, one --message per receiver')
        messages = [tensor(_symbols(m), dtype=int64) for m in args.message]
        try:
            x = encode(spec, messages)
        except EncoderBlockError as e:
            print(e, file=sys.stderr)
            return 1
        print(' '.join(map(str, x[0].tolist())))
    else:  # decode
        spec = construct(cfg, cfg.n[0], progress=progress)
        if not 1 <= args.receiver <= spec.receivers:
            raise ConfigError(f'receiver should be in 1..{spec.receivers}')
        w = decode(spec, args.receiver - 1, tensor(_symbols(args.y), dtype=int64))
        print(''.join(map(str, w.tolist())))
    return 0


def _region(args: Namespace) -> int:
    obj = from_document(_read_json(args.channel))
    pxs = args.px if isinstance(obj, DeterministicBC) else None
    points = region(obj, pxs=pxs, alphas=args.alpha)
    if args.output:
        with open(args.output, 'w', newline='') as f:
            write_region_csv(points, f)
    else:
        write_region_csv(points, sys.stdout)
    return 0


def _classify(args: Namespace) -> int:
    obj = from_document(_read_json(args.channel))
    if isinstance(obj, (SuperpositionChain, MartonConfig)):
        obj = obj.channel
    if not isinstance(obj, NoisyBC):
        raise UnsupportedError('classification needs a noisy two-receiver channel')
    c = classify(obj, capable_points=args.capable_points, noisy_points=args.noisy_points)

    def sweep(s):
        return {'falsified': s.falsified, 'points': s.points, 'witness': s.witness}

    print(dumps({'label': c.label, 'kind': c.kind, 'stronger': c.stronger, 'degraded': list(c.degraded),
                 'less_noisy': [sweep(s) for s in c.less_noisy],
                 'more_capable': [sweep(s) for s in c.more_capable],
                 'analytic': c.analytic, 'notes': c.notes}, indent=2))
    return 0


def _selftest(args: Namespace) -> int:
    checks = selftest()
    for c in checks:
        print(f'{"ok  " if c.ok else "FAIL"} {c.name}: {c.detail}')
    return 0 if all(c.ok for c in checks) else 1


def _experiment_flags(p: ArgumentParser, scheme: str):
    p.add_argument('--config', help='experiment config JSON file')
    p.add_argument('--channel', '--chain', dest='channel', help='channel, chain or Marton document JSON file')
    p.add_argument('--n', type=int, nargs='+', help='block lengths, powers of two')
    p.add_argument('--beta', type=float)
    p.add_argument('--samples', type=int, help='Monte-Carlo samples per context')
    p.add_argument('--seed', type=int, help='master seed')
    p.add_argument('--trials', type=int)
    p.add_argument('--mode', choices=('random', 'map'))
    p.add_argument('--exact', action='store_true', default=None, help='exact statistics instead of Monte-Carlo')
    p.add_argument('--delta', type=float, help='fixed polarization threshold')
    p.add_argument('--quantile', type=float, help='slack of the quantile set selector')
    p.add_argument('--eta', type=float, help='partially polarized fraction budget')
    p.add_argument('--repair', action='store_true', default=None)
    p.add_argument('--workers', type=int)
    p.add_argument('--batch', type=int)
    p.add_argument('--output', help='output directory')
    if scheme == 'detbc':
        p.add_argument('--px', type=float, nargs='+', help='input pmf')
        p.add_argument('--pi', type=int, nargs='+', help='receiver order, 0-based')
        p.add_argument('--message', action='append', help='message bits of one receiver, in receiver order')
        p.add_argument('--receiver', type=int, default=1, help='1-based receiver to decode')
        p.add_argument('--y', default='', help='observed block of the receiver')


def parser() -> ArgumentParser:
    p = ArgumentParser(prog='polarcast', description='polar codes for broadcast channels')
    p.add_argument('-v', '--verbose', action='count', default=0)
    sub = p.add_subparsers(dest='subcommand', required=True)
    for scheme, commands in SCHEMES.items():
        s = sub.add_parser(scheme)
        s.add_argument('command', choices=commands)
        _experiment_flags(s, scheme)

    r = sub.add_parser('region', help='rate region boundary points as CSV')
    r.add_argument('--channel', '--chain', dest='channel', required=True)
    r.add_argument('--alpha', type=float, nargs='+', help='α grid of fair V with X = V ⊕ Bernoulli(α)')
    r.add_argument('--px', type=float, nargs='+', action='append', help='input pmf of a deterministic channel')
    r.add_argument('--output', help='CSV file')

    c = sub.add_parser('classify', help='degraded, less noisy or more capable')
    c.add_argument('--channel', '--chain', dest='channel', required=True)
    c.add_argument('--capable-points', type=int, default=1001)
    c.add_argument('--noisy-points', type=int, default=101)

    sub.add_parser('selftest')
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Console entry point. Exit codes: 0 success, 1 failed check or encoding, 2 construction refused, 3 bad config.
    """
    args = parser().parse_args(argv)
    basicConfig(level={0: WARNING, 1: INFO}.get(args.verbose, DEBUG), stream=sys.stderr,
                format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        if args.subcommand in SCHEMES:
            return _scheme(args.subcommand, args)
        elif args.subcommand == 'region':
            return _region(args)
        elif args.subcommand == 'classify':
            return _classify(args)
        return _selftest(args)
    except ConstructionError as e:
        logger.error(f'construction refused: {e}')
        return 2
    except (ConfigError, DomainError, InvalidLengthError, ShapeError, TooLargeError, UnsupportedError) as e:
        logger.error(f'invalid configuration: {e}')
        return 3


__all__ = ['main', 'parser']


if __name__ == '__main__':
    raise SystemExit(main())
