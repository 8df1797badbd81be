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
from .classify import *
from .io import *
from .models import *
from .regions import *


__all__ = ['JointModel', 'DeterministicBC', 'NoisyBC', 'SuperpositionChain', 'MartonConfig',
           'deterministic_bc', 'noisy_bc', 'superposition_chain', 'marton_config',
           'bsc', 'bec', 'blackwell', 'bsc_pair', 'bec_bsc', 'bsc_superposition', 'correlated_pair',
           'CoverRates', 'MartonRates', 'MartonRegion',
           'det_region_vertex', 'cover_rates', 'marton_rates', 'marton_pentagon', 'check_permutation',
           'Sweep', 'Classification', 'Admissibility',
           'is_stochastically_degraded', 'more_capable_sweep', 'less_noisy_sweep', 'bec_bsc_class',
           'classify', 'superposition_admissible', 'marton_admissible',
           'to_document', 'from_document', 'load_document', 'dump_document', 'Document']
