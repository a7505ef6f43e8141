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
Utility functions of the freshvar package.
"""

import re
import itertools
from collections import deque

import six

from ._exceptions import StateExplosionError

__all__ = ['mint_letter', 'fresh_letters', 'EPS_TOKEN', 'EMPTY_WORD_TOKEN',
           'VAR_PREFIX']

#: Reserved token for the empty label, in text and JSON renderings.
EPS_TOKEN = '@eps'

#: Reserved token for the empty word on the command line.
EMPTY_WORD_TOKEN = '@empty'

#: Prefix marking a variable in text renderings of labels.
VAR_PREFIX = '$'

#: Prefix of letters minted by `mint_letter()`.
FRESH_PREFIX = '#f'

_WHITESPACE = re.compile(r'\s')


def token_problem(token, what='token'):
    """
    Check a letter or variable token.

    Returns:
      string: Description of the problem, or `None` if the token is valid.
    """
    if not isinstance(token, six.string_types):
        return "{} must be a string, got {}".format(what, type(token).__name__)
    if token == '':
        return "{} must not be empty".format(what)
    if _WHITESPACE.search(token):
        return "{} {!r} contains whitespace".format(what, token)
    if token.startswith('@'):
        return "{} {!r} uses the reserved '@' prefix".format(what, token)
    if token.startswith(VAR_PREFIX):
        return "{} {!r} uses the variable prefix {!r}".format(
            what, token, VAR_PREFIX)
    return None


def mint_letter(occupied, prefix=FRESH_PREFIX):
    """
    Return the first letter of the form `<prefix><n>` that is not in
    `occupied`.

    Parameters:

      occupied (iterable of string): Letters that must be avoided.

      prefix (string): Prefix of the minted letter.

    Returns:
      string: The minted letter.
    """
    occupied = set(occupied)
    for n in itertools.count():
        letter = '{}{}'.format(prefix, n)
        if letter not in occupied:
            return letter


def fresh_letters(occupied, count, prefix=FRESH_PREFIX):
    """
    Return a list of `count` distinct letters, none of them in `occupied`.
    """
    occupied = set(occupied)
    result = []
    for _ in range(count):
        letter = mint_letter(occupied, prefix)
        occupied.add(letter)
        result.append(letter)
    return result


def fresh_name(base, taken):
    """
    Return `base`, or `base` with a numeric suffix, such that the result is
    not in `taken`.
    """
    if base not in taken:
        return base
    for n in itertools.count(1):
        name = '{}_{}'.format(base, n)
        if name not in taken:
            return name


def compose_state(parts):
    """
    Return the readable name of a composite state, e.g. "(p0,q1)".
    """
    return '({})'.format(','.join(parts))


class StateNamer(object):
    """
    Assigns distinct string names to the hashable keys of constructed states.

    The preferred name of a key is used unless it is already taken, in which
    case primes are appended. Names are deterministic as long as keys are
    named in a deterministic order.
    """

    def __init__(self, reserved=()):
        self._names = {}
        self._used = set(reserved)

    def __call__(self, key, preferred):
        name = self._names.get(key)
        if name is None:
            name = preferred
            while name in self._used:
                name += "'"
            self._used.add(name)
            self._names[key] = name
        return name


def explore(roots, expand, cap, what, error=StateExplosionError):
    """
    Breadth-first exploration of a state space given by a successor function.

    Parameters:

      roots (iterable): Initial keys, in a deterministic order.

      expand (callable): Called with a key, returns an iterable of
        `(label, target_key)` pairs in a deterministic order.

      cap (int): Maximum number of keys.

      what (string): Name of the construction, for the error message.

      error (type): The CapExceededError subclass raised on overflow.

    Returns:
      tuple(list, list): The keys in discovery order, and the edges as
      `(source_key, label, target_key)` triples.

    Raises:
      CapExceededError: More than `cap` keys are reachable (an instance
        of `error`).
    """
    seen = {}
    queue = deque()

    def _add(key):
        if key not in seen:
            if len(seen) >= cap:
                raise error(cap, what)
            seen[key] = len(seen)
            queue.append(key)

    for root in roots:
        _add(root)
    edges = []
    while queue:
        key = queue.popleft()
        for label, target in expand(key):
            edges.append((key, label, target))
            _add(target)
    return sorted(seen, key=seen.get), edges
