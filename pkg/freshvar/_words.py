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
Run semantics: steps on configurations, membership with witness runs,
nonemptiness and the language sampling oracle.
"""

import logging
from collections import namedtuple

from ._core import GroundSubstitution, Configuration, NFva, \
    accessible_states

__all__ = ['Run', 'initial_configurations', 'fire', 'step', 'eps_closure',
           'membership', 'accepting_run', 'membership_n', 'replay_run',
           'nonempty', 'sample_language']

_LOG = logging.getLogger(__name__)

#: A run: the configurations visited and the letters consumed between them.
#: `letters[i]` leads from `configurations[i]` to `configurations[i + 1]`;
#: it is `None` for a move on the empty label.
Run = namedtuple('Run', ['configurations', 'letters'])


def initial_configurations(a):
    """
    Return the initial configurations (initial states, empty memory), in
    state order.
    """
    return [Configuration(q, GroundSubstitution.EMPTY)
            for q in sorted(a.initial)]


def fire(components, memory, letter):
    """
    Try to read a letter with a transition.

    A transition with label components `components` reads `letter` if one
    substitution makes every component denote it: letters must equal it,
    bound variables must be bound to it, free variables get bound to it.

    Returns:
      GroundSubstitution: The memory after binding (before refreshing), or
      `None` if the transition cannot read the letter.
    """
    result = memory
    for lab in components:
        if lab.is_letter:
            if lab.value != letter:
                return None
        elif lab.is_variable:
            bound = result.get(lab.value)
            if bound is None:
                result = result.bind(lab.value, letter)
            elif bound != letter:
                return None
        else:
            return None
    return result


def _letter_successors(a, configuration, letter):
    for label, target in a.out(configuration.state):
        memory = fire(a.components(label), configuration.memory, letter)
        if memory is not None:
            yield Configuration(target,
                                memory.drop(a.refreshed_at(target)))


def _eps_successors(a, configuration):
    for label, target in a.out(configuration.state):
        if not isinstance(label, tuple) and label.is_epsilon:
            yield Configuration(
                target, configuration.memory.drop(a.refreshed_at(target)))


def step(a, configuration, letter):
    """
    Return the configurations reachable from `configuration` by reading one
    letter.

    A transition applies if its label is the letter, a variable bound to the
    letter, or a free variable (which then gets bound). The bindings of the
    variables refreshed at the target state are dropped. Labels of n-FVAs
    apply if all components agree on the letter.

    Returns:
      frozenset of Configuration: The successors; empty if stuck.
    """
    return frozenset(_letter_successors(a, configuration, letter))


def eps_closure(a, configurations):
    """
    Return the configurations reachable by moves on the empty label, the
    given ones included.
    """
    result = set(configurations)
    stack = list(result)
    while stack:
        for succ in _eps_successors(a, stack.pop()):
            if succ not in result:
                result.add(succ)
                stack.append(succ)
    return frozenset(result)


def _is_accepting(a, configurations):
    return any(c.state in a.accepting for c in configurations)


def membership(a, word):
    """
    Decide whether an automaton accepts a word.

    Parameters:

      a (Fva): The automaton (an EpsFva or NFva is accepted as well).

      word (iterable of string): The letters of the word.

    Returns:
      bool: Whether `a` has an accepting run on `word`.
    """
    current = eps_closure(a, initial_configurations(a))
    for letter in word:
        following = set()
        for c in current:
            following.update(_letter_successors(a, c, letter))
        current = eps_closure(a, following)
        if not current:
            return False
    return _is_accepting(a, current)


def accepting_run(a, word):
    """
    Search an accepting run of an automaton on a word.

    The search is depth-first over configurations, with failed
    `(position, configuration)` pairs memoized. Transitions are tried in
    label order (letters before variables, then by token), which makes the
    returned run deterministic.

    Returns:
      Run: An accepting run, or `None` if the word is rejected.
    """
    word = tuple(word)
    failed = set()

    def _search(pos, conf, on_path):
        key = (pos, conf)
        if key in failed or key in on_path:
            return None
        if pos == len(word) and conf.state in a.accepting:
            return [conf], []
        on_path.add(key)
        try:
            if pos < len(word):
                for succ in _letter_successors(a, conf, word[pos]):
                    found = _search(pos + 1, succ, on_path)
                    if found:
                        return [conf] + found[0], [word[pos]] + found[1]
            for succ in _eps_successors(a, conf):
                found = _search(pos, succ, on_path)
                if found:
                    return [conf] + found[0], [None] + found[1]
        finally:
            on_path.discard(key)
        failed.add(key)
        return None

    for conf in initial_configurations(a):
        found = _search(0, conf, set())
        if found:
            return Run(tuple(found[0]), tuple(found[1]))
    return None


def membership_n(a, word):
    """
    Decide whether an n-FVA accepts a word.

    A tuple label reads a letter if a single substitution makes every
    component denote it.

    Raises:
      TypeError: `a` is not an NFva.
    """
    if not isinstance(a, NFva):
        raise TypeError("Invalid automaton for membership_n: {}".format(
            type(a).__name__))
    return membership(a, word)


def replay_run(a, run):
    """
    Check a run step by step: it must start in an initial configuration with
    empty memory, follow the transition relation and end in an accepting
    state.

    Returns:
      bool: Whether the run is an accepting run of `a`.
    """
    confs = run.configurations
    if not confs or len(run.letters) != len(confs) - 1:
        return False
    if confs[0].state not in a.initial or len(confs[0].memory) != 0:
        return False
    for i, letter in enumerate(run.letters):
        if letter is None:
            succs = set(_eps_successors(a, confs[i]))
        else:
            succs = step(a, confs[i], letter)
        if confs[i + 1] not in succs:
            return False
    return confs[-1].state in a.accepting


def nonempty(a):
    """
    Decide whether the language of an automaton is nonempty.

    Every path of the transition graph can be read by some word, so this is
    plain reachability of an accepting state, ignoring the labels.
    """
    return bool(accessible_states(a) & a.accepting)


def sample_language(a, pool, max_len):
    """
    Return the words over a finite pool of letters, up to a maximum length,
    that an automaton accepts.

    This is the brute-force oracle of the differential tests: it explores all
    words over `pool` by prefix, carrying the set of reachable
    configurations.

    Parameters:

      a (Fva): The automaton (EpsFva and NFva are accepted as well).

      pool (iterable of string): The letters.

      max_len (int): Maximum word length, at least 0.

    Returns:
      frozenset of tuple: The accepted words, as tuples of letters.

    Raises:
      ValueError: `max_len` is negative.
    """
    if max_len < 0:
        raise ValueError("Invalid max_len: {}".format(max_len))
    pool = sorted(set(pool))
    result = set()
    stack = [((), eps_closure(a, initial_configurations(a)))]
    while stack:
        word, current = stack.pop()
        if _is_accepting(a, current):
            result.add(word)
        if len(word) == max_len:
            continue
        for letter in pool:
            following = set()
            for c in current:
                following.update(_letter_successors(a, c, letter))
            if following:
                stack.append((word + (letter,), eps_closure(a, following)))
    _LOG.debug("sample_language: %d words accepted over %d letters up to "
               "length %d", len(result), len(pool), max_len)
    return frozenset(result)
