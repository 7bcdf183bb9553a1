#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exception types raised by the mixed graph toolkit.
"""

from typing import Optional, Tuple


class MixedGraphError(ValueError):
    """
    Base class for every invalid-input error of the toolkit.
    """


class CodeDomainError(MixedGraphError):
    """
    An adjacency code, vertex or colour specification is out of range.
    """


class ConflictError(MixedGraphError):
    """
    A vertex pair was given more than one adjacency.
    """


class LoopError(MixedGraphError):
    """
    An adjacency joins a vertex to itself.
    """


class NotAdjacentError(MixedGraphError):
    """
    A vertex is not adjacent to a vertex it was required to be adjacent to.
    """


class GraphFormatError(MixedGraphError):
    """
    A text file could not be parsed.
    """

    def __init__(self, line: int, message: str):
        """
        Args:
            line (int): 1-based line number of the offending line
            message (str): What is wrong with it
        """
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class QuotientConflict(MixedGraphError):
    """
    A vertex partition does not induce a valid quotient graph.
    """

    def __init__(self, pair: Tuple[int, int], reason: str, other: Optional[Tuple[int, int]] = None):
        """
        Args:
            pair (Tuple[int, int]): Witness pair of source vertices
            reason (str): 'same-block' or 'code-mismatch'
            other (Optional[Tuple[int, int]]): Second pair disagreeing with the first
        """
        self.pair = pair
        self.reason = reason
        self.other = other
        detail = f"{pair} and {other}" if other is not None else f"{pair}"
        super().__init__(f"quotient conflict ({reason}): {detail}")


class TheoremViolation(RuntimeError):
    """
    A search that a proven statement guarantees to succeed came back empty.
    The instance is attached so that it can be reproduced.
    """

    def __init__(self, message: str, instance=None):
        self.instance = instance
        super().__init__(message)
