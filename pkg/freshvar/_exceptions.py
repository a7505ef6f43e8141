# Copyright 2026 The freshvar authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Exceptions of the freshvar package.
"""

__all__ = ['FvaError', 'AutomatonFormatError', 'NotDeterministicError',
           'NotFiniteAutomatonError', 'CapExceededError',
           'StateExplosionError', 'PoolOverflowError', 'TraceDivergedError']


class FvaError(Exception):
    """
    Base class for the exceptions raised by the freshvar package.
    """
    pass


class AutomatonFormatError(FvaError):
    """
    Indicates that an automaton document is malformed, or that an automaton
    does not satisfy the structural invariants of its type.

    Attributes:

      reason (string): The message without the location.

      location (string): Location of the issue in the document (e.g.
        "line 3 column 7" or "transitions[2].label"), or `None`.

      violations (list of Violation): The invariant violations, if the
        error was raised for a structurally invalid automaton.
    """

    def __init__(self, message, location=None, violations=None):
        self.reason = message
        if location:
            message = "{} (at {})".format(message, location)
        super(AutomatonFormatError, self).__init__(message)
        self.location = location
        self.violations = list(violations or [])


class NotDeterministicError(FvaError):
    """
    Indicates that an operation for deterministic automata was invoked on a
    non-deterministic one.

    Attributes:

      state (string): An accessible state that violates the syntactic
        conditions for determinism.
    """

    def __init__(self, state):
        super(NotDeterministicError, self).__init__(
            "Automaton is not deterministic at state {!r}".format(state))
        self.state = state


class NotFiniteAutomatonError(FvaError):
    """
    Indicates that an automaton expected to be a classical finite automaton
    has variables.
    """

    def __init__(self, variables):
        super(NotFiniteAutomatonError, self).__init__(
            "Automaton is not a finite automaton, it has variables: {}".
            format(', '.join(sorted(variables))))
        self.variables = frozenset(variables)


class CapExceededError(FvaError):
    """
    Base class for exceeding a configurable size limit.

    Attributes:

      cap_name (string): Name of the limit that was exceeded.

      cap (int): Value of the limit.
    """

    def __init__(self, cap_name, cap, what):
        super(CapExceededError, self).__init__(
            "{} exceeds the {} of {}".format(what, cap_name, cap))
        self.cap_name = cap_name
        self.cap = cap


class StateExplosionError(CapExceededError):
    """
    Indicates that a construction produced more states than its state cap.
    """

    def __init__(self, cap, what="Construction"):
        super(StateExplosionError, self).__init__('state cap', cap, what)


class PoolOverflowError(CapExceededError):
    """
    Indicates that a game has more reachable positions than its position cap.
    """

    def __init__(self, cap, what="Game"):
        super(PoolOverflowError, self).__init__('position cap', cap, what)


class TraceDivergedError(FvaError):
    """
    Indicates that a client trace left the moves offered by an orchestrator.

    Attributes:

      step (int): 1-based index of the offending client move in the trace.

      position: The game position at which the move was not available.
    """

    def __init__(self, step, position, reason):
        super(TraceDivergedError, self).__init__(
            "Trace diverged at step {}: {}".format(step, reason))
        self.step = step
        self.position = position
        self.reason = reason
