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
from .detbc import *
from .maps import *
from .marton import *
from .successive import *
from .superposition import *


__all__ = ['SharedMaps', 'derive_key', 'trial_rng', 'prf', 'gamma_bits', 'map_decision', 'block_bytes',
           'check_mode', 'MODES',
           'positions', 'as_bits', 'as_blocks', 'leaf_views', 'successive',
           'DetCodeSpec', 'DetEncoding', 'construct_detbc', 'encode_batch', 'encode', 'decode', 'outputs',
           'SpCodeSpec', 'construct_superposition', 'sp_encode', 'sp_decode1', 'sp_decode2',
           'MaCodeSpec', 'MaEncoding', 'TwoPhaseRecord', 'construct_marton', 'ma_encode', 'ma_decode1',
           'ma_decode2', 'two_phase_simulate']
