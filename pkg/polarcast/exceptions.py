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
class InvalidLengthError(ValueError):
    """
    Block length is not a power of two or is too short.
    """


class DomainError(ValueError):
    """
    Probability or channel parameter outside its admissible range.
    """


class ShapeError(ValueError):
    """
    Axis, alphabet or dimension mismatch.
    """


class DivergenceUndefinedError(ValueError):
    """
    Support of the first pmf is not contained in the support of the second.
    """


class TooLargeError(ValueError):
    """
    Exact enumeration exceeds the state guard.
    """


class UnsupportedError(ValueError):
    """
    Model outside the supported class.
    """


class ConfigError(ValueError):
    """
    Invalid experiment configuration or channel document.
    """


class ConstructionError(RuntimeError):
    """
    Code construction refused: nesting, alignment or admissibility failed.
    """


class EncoderBlockError(RuntimeError):
    """
    Deterministic broadcast encoder found an empty preimage intersection.

    :param blocks: indices of failed blocks in the batch
    :param positions: first failing symbol position per failed block
    """
    def __init__(self, blocks=(), positions=()):
        self.blocks = tuple(blocks)
        self.positions = tuple(positions)
        super().__init__(f'empty preimage intersection in blocks {list(self.blocks)} '
                         f'at positions {list(self.positions)}')


__all__ = ['InvalidLengthError',
           'DomainError',
           'ShapeError',
           'DivergenceUndefinedError',
           'TooLargeError',
           'UnsupportedError',
           'ConfigError',
           'ConstructionError',
           'EncoderBlockError']
