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
from json import dumps, loads
from pathlib import Path
from pytest import fixture
from polarcast.channels import (bec_bsc, blackwell, bsc_superposition, correlated_pair, deterministic_bc,
                                to_document)


@fixture
def identity_channel():
    """
    Single receiver observing the binary input.
    """
    return deterministic_bc([[0, 1]])


@fixture
def blackwell_channel():
    return blackwell()


@fixture
def bsc_chain():
    return bsc_superposition(.25, .05, .2)


@fixture
def noiseless_marton():
    return correlated_pair(.25, 0., 0.)


@fixture
def write_document(tmp_path):
    def write(obj, name='channel.json'):
        path = tmp_path / name
        path.write_text(dumps(to_document(obj)))
        return str(path)
    return write


@fixture
def bec_bsc_family():
    def make(eps):
        return bec_bsc(eps, .1)
    return make


GOLDEN = Path(__file__).parent / 'golden'


def same_record(expected, actual, tol: float) -> bool:
    if isinstance(expected, dict):
        return (isinstance(actual, dict) and expected.keys() == actual.keys()
                and all(same_record(expected[k], actual[k], tol) for k in expected))
    if isinstance(expected, list):
        return (isinstance(actual, list) and len(expected) == len(actual)
                and all(same_record(a, b, tol) for a, b in zip(expected, actual)))
    if isinstance(expected, float) or isinstance(actual, float):
        return abs(expected - actual) <= tol
    return expected == actual


@fixture
def golden():
    """
    Compare a JSON-ready record with tests/golden/<name>.json. A missing file is written from the record, so a
    record is frozen by the first run that passes the test's own checks.
    """
    def check(name, record, tol=1e-9):
        record = loads(dumps(record))
        path = GOLDEN / f'{name}.json'
        if not path.exists():
            GOLDEN.mkdir(exist_ok=True)
            path.write_text(dumps(record, indent=2, sort_keys=True) + '\n')
            return record
        expected = loads(path.read_text())
        assert same_record(expected, record, tol), f'{name} differs from {path}'
        return expected
    return check
