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
from .context import *
from .estimate import *
from .exact import *
from .likelihood import *
from .sets import *
from .stats import *
from .tv import *


__all__ = ['PolarContext', 'ContextBundle', 'polar_context', 'detbc_bundle', 'superposition_bundle', 'marton_bundle',
           'IndexStats', 'exact_index_stats',
           'ExactBitChannel', 'Enumeration', 'enumerate_context', 'exact_bit_channel', 'exact_stats', 'GUARD',
           'f_combine', 'g_combine', 'sc_likelihood', 'sc_sweep', 'probability_zero',
           'estimate_stats_mc', 'chunk_rng', 'CHUNK',
           'PolarizationSets', 'AlignmentReport', 'build_sets', 'check_alignment', 'threshold',
           'high_set', 'low_set', 'top_margin', 'quantile_size', 'CONFIDENCE',
           'TvDiagnostic', 'tv_diagnostic']
