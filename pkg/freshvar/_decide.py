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
Decision procedures: universality, determinism, decisions for deterministic
automata, the simulation preorder, and containment between an automaton and
a classical finite automaton.
"""

import logging
from collections import deque

import networkx as nx

from ._core import GroundSubstitution, Transition, rename_apart, \
    accessible_states
from ._words import step, eps_closure, initial_configurations
from ._closure import trim
from ._game import DEFAULT_POSITION_CAP, AbelardPosition, Side, \
    letter_pool, build_game, solve_safety
from ._exceptions import NotDeterministicError, NotFiniteAutomatonError
from ._utils import fresh_letters

__all__ = ['universal', 'universality_witness', 'find_nondeterminism',
           'is_deterministic', 'dfva_universal', 'dfva_membership',
           'fva_simulates', 'contains_dfva', 'FVA_IN_FA', 'FA_IN_FVA',
           'fa_containment', 'fa_containment_witness']

_LOG = logging.getLogger(__name__)

#: Direction of `fa_containment()`: the automaton's language is contained in
#: the finite automaton's.
FVA_IN_FA = 'fva_in_fa'

#: Direction of `fa_containment()`: the finite automaton's language is
#: contained in the automaton's.
FA_IN_FVA = 'fa_in_fva'


def _free_successors(a, ext):
    """
    Successors of a (state, free variables) pair on transitions labeled with
    a free variable.
    """
    q, free = ext
    for label, target in a.out(q):
        if label.is_variable and label.value in free:
            yield (target,
                   (free - {label.value}) | a.refreshed_at(target))


def _first_rejected_length(a):
    """
    Return the smallest length that no path of free-variable transitions
    from an initial state to an accepting state has, or `None` if every
    length has one.

    The pairs reachable after n moves form the n-th layer; the sequence of
    layers is eventually periodic, so it is followed until a layer repeats.
    """
    layer = frozenset((q, a.variables) for q in a.initial)
    seen = set()
    n = 0
    while layer not in seen:
        if not any(q in a.accepting for q, _ in layer):
            return n
        seen.add(layer)
        layer = frozenset(succ for ext in layer
                          for succ in _free_successors(a, ext))
        n += 1
    return None


def universal(a):
    """
    Decide whether an automaton accepts every word.

    A word of n distinct letters outside the letters of `a` can only be read
    along transitions labeled with variables that are free when taken. So
    `a` is universal iff for every length there is such an all-free path to
    an accepting state. The paths are explored on pairs of a state and the
    set of free variables; taking a free variable binds it, and entering a
    state frees the variables refreshed there.

    Returns:
      bool: Whether `a` accepts every word.
    """
    return _first_rejected_length(a) is None


def universality_witness(a):
    """
    Return a word rejected by a non-universal automaton.

    Returns:
      tuple(int, tuple of string): The smallest length without an all-free
      accepting path and a rejected word of that length made of distinct
      letters outside the letters of `a`; `None` if `a` is universal.
    """
    n = _first_rejected_length(a)
    if n is None:
        return None
    return n, tuple(fresh_letters(a.letters, n))


def find_nondeterminism(a):
    """
    Return an accessible state where an automaton violates the syntactic
    conditions of determinism, or `None`.

    A state violates them if it has two outgoing transitions with the same
    letter, or two outgoing transitions one of which is labeled with a
    variable. A second initial state is also reported, since the empty word
    already has two runs.
    """
    initial = sorted(a.initial)
    if len(initial) > 1:
        return initial[1]
    for q in sorted(accessible_states(a)):
        out = a.out(q)
        letters = [label.value for label, _ in out if label.is_letter]
        if len(letters) != len(set(letters)):
            return q
        if len(out) > 1 and len(letters) < len(out):
            return q
    return None


def is_deterministic(a):
    """
    Decide whether an automaton has at most one run on every word.

    See `find_nondeterminism()` for the conditions checked.
    """
    return find_nondeterminism(a) is None


def _require_deterministic(d):
    offender = find_nondeterminism(d)
    if offender is not None:
        raise NotDeterministicError(offender)


def dfva_universal(d):
    """
    Decide whether a deterministic automaton accepts every word.

    The unique run on a word of distinct new letters is followed: each state
    on it must be accepting and have a single outgoing transition, labeled
    with a free variable. The run is done once a (state, free variables)
    pair repeats, which happens within about twice the number of states.

    Raises:
      NotDeterministicError: `d` is not deterministic.
    """
    _require_deterministic(d)
    if not d.initial:
        return False
    ext = (min(d.initial), d.variables)
    seen = set()
    bound = 2 * len(d.states) + 2
    while ext not in seen:
        assert len(seen) <= bound, \
            "deterministic walk exceeds {} steps".format(bound)
        seen.add(ext)
        q, free = ext
        out = d.out(q)
        if q not in d.accepting or len(out) != 1:
            return False
        label, target = out[0]
        if not label.is_variable or label.value not in free:
            return False
        ext = (target, (free - {label.value}) | d.refreshed_at(target))
    return True


def dfva_membership(d, word):
    """
    Decide whether a deterministic automaton accepts a word by following its
    unique run.

    Raises:
      NotDeterministicError: `d` is not deterministic.
    """
    _require_deterministic(d)
    if not d.initial:
        return False
    conf = initial_configurations(d)[0]
    for letter in word:
        succs = step(d, conf, letter)
        if not succs:
            return False
        assert len(succs) == 1, \
            "deterministic automaton has {} successors".format(len(succs))
        conf = next(iter(succs))
    return conf.state in d.accepting


def fva_simulates(a, b, pool_extra=0, cap=DEFAULT_POSITION_CAP):
    """
    Decide whether automaton `b` simulates automaton `a`.

    The simulation is played as a game: Abelard moves `a` along a transition
    reading a letter of the pool of his choice, and Eloise must move `b`
    reading the same letter. Eloise loses when she cannot answer or when
    `a` is in an accepting state and `b` is not. With several initial
    states, each initial state of `a` must be simulated from some initial
    state of `b`.

    The variables of `b` are renamed apart from those of `a` first.

    Parameters:

      a (Fva): The simulated automaton.

      b (Fva): The simulating automaton.

      pool_extra (int): Additional synthetic letters in the pool.

      cap (int): Maximum number of positions of each game.

    Returns:
      bool: Whether `b` simulates `a`.

    Raises:
      PoolOverflowError: A game exceeds `cap` positions.
    """
    a, b = rename_apart(a, b)
    pool = letter_pool(a, b, pool_extra)
    empty = GroundSubstitution.EMPTY
    for qa in sorted(a.initial):
        won = False
        for qb in sorted(b.initial):
            start = AbelardPosition(Side(empty, qa), Side(empty, qb))
            game = build_game(a, b, pool=pool, cap=cap, polarized=False,
                              start=start)
            bad = [p for p in game.graph
                   if isinstance(p, AbelardPosition) and
                   p.client.state in a.accepting and
                   p.service.state not in b.accepting]
            if solve_safety(game, bad).eloise_wins:
                won = True
                break
        if not won:
            _LOG.debug("fva_simulates: initial state %r is not simulated", qa)
            return False
    return True


def contains_dfva(a, d, pool_extra=0, cap=DEFAULT_POSITION_CAP):
    """
    Decide whether the language of an automaton is contained in the language
    of a deterministic automaton.

    For a deterministic `d`, containment holds iff `d` simulates the
    accessible and co-accessible part of `a`.

    Raises:
      NotDeterministicError: `d` is not deterministic.
    """
    _require_deterministic(d)
    return fva_simulates(trim(a), d, pool_extra, cap)


def _require_finite(f):
    if f.variables:
        raise NotFiniteAutomatonError(f.variables)


def _fa_closure(f, states):
    """
    Return `states` with the targets of empty-label moves of `f` added.
    """
    result = set(states)
    stack = list(result)
    while stack:
        for label, target in f.out(stack.pop()):
            if label.is_epsilon and target not in result:
                result.add(target)
                stack.append(target)
    return frozenset(result)


def _fa_step(f, states, letter):
    return _fa_closure(f, [t for q in states for label, t in f.out(q)
                           if label.is_letter and label.value == letter])


def _fa_in_fva_witness(a, f):
    # Words outside the letters of f are not in L(f), so the search stays
    # within them; configurations of a then bind only those letters.
    alphabet = sorted(f.letters)
    start = (_fa_closure(f, f.initial),
             eps_closure(a, initial_configurations(a)))
    seen = set([start])
    queue = deque([(start, ())])
    while queue:
        (fs, confs), word = queue.popleft()
        if fs & f.accepting and \
                not any(c.state in a.accepting for c in confs):
            return word
        for letter in alphabet:
            fs1 = _fa_step(f, fs, letter)
            if not fs1:
                continue
            following = set()
            for c in confs:
                following.update(step(a, c, letter))
            key = (fs1, eps_closure(a, following))
            if key not in seen:
                seen.add(key)
                queue.append((key, word + (letter,)))
    return None


def _path_word(a, path, avoid):
    """
    Return a word read along a path of transitions, binding free variables
    to new letters outside `avoid`.
    """
    memory = GroundSubstitution.EMPTY
    avoid = set(avoid)
    word = []
    for tr in path:
        label = tr.label
        if label.is_letter:
            word.append(label.value)
        elif label.is_variable:
            value = memory.get(label.value)
            if value is None:
                value = fresh_letters(avoid, 1)[0]
                avoid.add(value)
                memory = memory.bind(label.value, value)
            word.append(value)
        memory = memory.drop(a.refreshed_at(tr.target))
    return tuple(word)


def _transition_path(a, graph, sources, targets):
    """
    Return a shortest list of transitions of `a` leading from a state in
    `sources` to a state in `targets`.
    """
    best = None
    for s in sorted(sources):
        for t in sorted(targets):
            try:
                states = nx.shortest_path(graph, s, t)
            except nx.NetworkXNoPath:
                continue
            if best is None or len(states) < len(best):
                best = states
    path = []
    for src, dst in zip(best, best[1:]):
        label = min((lab for lab, t in a.out(src) if t == dst),
                    key=lambda lab: lab.sort_key())
        path.append(Transition(src, label, dst))
    return path


def _fva_in_fa_witness(a, f):
    a = trim(a)
    var_transitions = [tr for tr in a.sorted_transitions()
                       if tr.label.is_variable]
    if var_transitions:
        # A variable on a trimmed path reads any letter, including letters
        # outside the alphabet of f.
        tr = var_transitions[0]
        graph = a.graph()
        path = _transition_path(a, graph, a.initial, [tr.source]) + [tr] + \
            _transition_path(a, graph, [tr.target], a.accepting)
        return _path_word(a, path, a.letters | f.letters)
    alphabet = sorted(a.letters)
    start = (eps_closure(a, initial_configurations(a)),
             _fa_closure(f, f.initial))
    seen = set([start])
    queue = deque([(start, ())])
    while queue:
        (confs, fs), word = queue.popleft()
        if any(c.state in a.accepting for c in confs) and \
                not fs & f.accepting:
            return word
        for letter in alphabet:
            following = set()
            for c in confs:
                following.update(step(a, c, letter))
            if not following:
                continue
            key = (eps_closure(a, following), _fa_step(f, fs, letter))
            if key not in seen:
                seen.add(key)
                queue.append((key, word + (letter,)))
    return None


def fa_containment_witness(a, f, direction):
    """
    Return a counterexample to the containment between an automaton and a
    classical finite automaton, or `None` if containment holds.

    Parameters:

      a (Fva): The automaton (an EpsFva is accepted as well).

      f (Fva): The finite automaton: an automaton without variables (an
        EpsFva is accepted as well).

      direction (string): `FA_IN_FVA` for L(f) ⊆ L(a), `FVA_IN_FA` for
        L(a) ⊆ L(f).

    Returns:
      tuple of string: A word in the left language and not in the right
      one, or `None`.

    Raises:
      NotFiniteAutomatonError: `f` has variables.
      ValueError: Invalid direction.
    """
    _require_finite(f)
    if direction == FA_IN_FVA:
        return _fa_in_fva_witness(a, f)
    if direction == FVA_IN_FA:
        return _fva_in_fa_witness(a, f)
    raise ValueError("Invalid containment direction: {!r}".format(direction))


def fa_containment(a, f, direction):
    """
    Decide the containment between an automaton and a classical finite
    automaton.

    For `FA_IN_FVA`, the runs of `f` and the configurations of `a` are
    explored together over the letters of `f`, which is finite since the
    configurations of `a` then only bind letters of `f`. For `FVA_IN_FA`,
    the trimmed `a` must have no transition labeled with a variable (it
    would read letters outside the alphabet of `f`); the remaining letter
    automaton is compared with `f` by the same joint exploration.

    See `fa_containment_witness()` for the parameters.

    Returns:
      bool: Whether containment holds.
    """
    return fa_containment_witness(a, f, direction) is None
