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
Closure constructions: union, concatenation, Kleene star, elimination of
empty-label transitions, the product of two automata, the reduction of
n-FVAs to FVAs, and intersection.
"""

import logging

from ._core import Fva, EpsFva, NFva, EPS, letter, var, rename_apart, \
    label_components, accessible_states, coaccessible_states
from ._utils import StateNamer, compose_state, explore

__all__ = ['DEFAULT_STATE_CAP', 'PsiIndex', 'union', 'concat', 'star',
           'eliminate_eps', 'product2', 'reduce_nfva', 'intersect', 'trim']

_LOG = logging.getLogger(__name__)

#: Default maximum number of states of a construction.
DEFAULT_STATE_CAP = 1000000


def _tagged(a, tag):
    """
    Return the components of `a` with every state prefixed by `tag`.
    """
    def t(q):
        return '{}.{}'.format(tag, q)

    return dict(
        states=[t(q) for q in a.states],
        initial=[t(q) for q in a.initial],
        accepting=[t(q) for q in a.accepting],
        transitions=[(t(tr.source), tr.label, t(tr.target))
                     for tr in a.transitions],
        refresh=dict((v, [t(q) for q in qs]) for v, qs in a.refresh.items()),
        variables=a.variables)


def _disjoint(a, b):
    a, b = rename_apart(a, b)
    left, right = _tagged(a, '1'), _tagged(b, '2')
    refresh = left['refresh']
    refresh.update(right['refresh'])
    return left, right, refresh, a.variables | b.variables


def union(a, b):
    """
    Return an automaton for the union of the languages of two automata.

    The result is the disjoint union of the two automata, after renaming
    their variables apart. States are prefixed by "1." and "2.".
    """
    left, right, refresh, variables = _disjoint(a, b)
    cls = EpsFva if EpsFva.kind in (a.kind, b.kind) else Fva
    return cls(states=left['states'] + right['states'],
               initial=left['initial'] + right['initial'],
               accepting=left['accepting'] + right['accepting'],
               transitions=left['transitions'] + right['transitions'],
               refresh=refresh, variables=variables)


def concat(a, b, cap=DEFAULT_STATE_CAP):
    """
    Return an automaton for the concatenation of the languages of two
    automata.

    Empty-label transitions lead from the accepting states of `a` to the
    initial states of `b`; they are then eliminated with `eliminate_eps()`.
    """
    left, right, refresh, variables = _disjoint(a, b)
    seams = [(f, EPS, q0) for f in left['accepting']
             for q0 in right['initial']]
    wired = EpsFva(states=left['states'] + right['states'],
                   initial=left['initial'], accepting=right['accepting'],
                   transitions=left['transitions'] + right['transitions'] +
                   seams,
                   refresh=refresh, variables=variables)
    return eliminate_eps(wired, cap)


def star(a, cap=DEFAULT_STATE_CAP):
    """
    Return an automaton for the Kleene closure of the language of an
    automaton.

    A new initial and accepting state is linked by empty-label transitions
    to the initial states of `a`, and the accepting states of `a` back to it.
    Every variable is refreshed at the new state, so no binding survives from
    one iteration to the next.
    """
    body = _tagged(a, '1')
    start = '0.start'
    refresh = dict((v, list(body['refresh'].get(v, [])) + [start])
                   for v in a.variables)
    wired = EpsFva(states=body['states'] + [start],
                   initial=[start], accepting=[start],
                   transitions=body['transitions'] +
                   [(start, EPS, q0) for q0 in body['initial']] +
                   [(f, EPS, start) for f in body['accepting']],
                   refresh=refresh, variables=a.variables)
    return eliminate_eps(wired, cap)


def _ext_sort_key(ext):
    return (ext[0], sorted(ext[1]))


def eliminate_eps(e, cap=DEFAULT_STATE_CAP):
    """
    Return an automaton without empty-label transitions for the language of
    an EpsFva.

    A letter transition followed by a chain of empty-label moves is replaced
    by a single transition into a state that pairs the last state of the
    chain with the union of the variables refreshed along the chain. Such a
    pair is refreshed exactly for those variables, keeps the outgoing letter
    transitions of its state, and is accepting if its state is. Pairing is
    iterated to the least fixpoint; the pairs are finitely many (states times
    subsets of variables), which bounds the iteration. Only states reachable
    from the initial states are kept; a pair whose variable set is that of
    its state keeps the state's name.

    Parameters:

      e (EpsFva): The automaton (a plain Fva is accepted as well).

      cap (int): Maximum number of states of the result.

    Returns:
      Fva: The automaton without empty-label transitions.

    Raises:
      StateExplosionError: The result exceeds `cap` states.
    """
    refreshed = dict((q, e.refreshed_at(q)) for q in e.states)
    eps_out = {}
    letter_out = {}
    for tr in e.sorted_transitions():
        if tr.label.is_epsilon:
            eps_out.setdefault(tr.source, []).append(tr.target)
        else:
            letter_out.setdefault(tr.source, []).append((tr.label, tr.target))
    bound = len(e.states) * 2 ** len(e.variables)

    def _chain(q):
        # Pairs reachable by empty-label chains from q entered by a letter.
        start = (q, refreshed[q])
        seen = set([start])
        stack = [start]
        while stack:
            p, acc = stack.pop()
            for s in eps_out.get(p, ()):
                ext = (s, acc | refreshed[s])
                if ext not in seen:
                    seen.add(ext)
                    stack.append(ext)
        assert len(seen) <= bound, \
            "empty-label chain closure exceeds {} pairs".format(bound)
        return sorted(seen, key=_ext_sort_key)

    roots = []
    for q0 in sorted(e.initial):
        for ext in _chain(q0):
            plain = (ext[0], refreshed[ext[0]])
            if plain not in roots:
                roots.append(plain)

    def expand(ext):
        for label, target in letter_out.get(ext[0], ()):
            for succ in _chain(target):
                yield label, succ

    keys, edges = explore(roots, expand, cap, "Empty-label elimination")
    namer = StateNamer(reserved=e.states)

    def name(ext):
        q, acc = ext
        if acc == refreshed[q]:
            return q
        return namer(ext, '{}{{{}}}'.format(q, ','.join(sorted(acc))))

    refresh = {}
    for ext in keys:
        for v in ext[1]:
            refresh.setdefault(v, []).append(name(ext))
    _LOG.debug("eliminate_eps: %d states, %d transitions from %d states",
               len(keys), len(edges), len(e.states))
    return Fva(states=[name(k) for k in keys],
               initial=[name(k) for k in roots],
               accepting=[name(k) for k in keys if k[0] in e.accepting],
               transitions=[(name(s), lab, name(t)) for s, lab, t in edges],
               refresh=refresh, variables=e.variables)


def product2(a, b, cap=DEFAULT_STATE_CAP):
    """
    Return the Cartesian product of two automata as a 2-FVA.

    A product transition pairs a transition of each factor; its label is the
    pair of their labels (for n-FVA factors, the concatenation of their
    label tuples). A pair of states is refreshed for a variable if the
    factor owning the variable refreshes it. Initial and accepting states
    are the pairs of initial and of accepting states. Only pairs reachable
    from the initial pairs are built.

    Raises:
      ValueError: A factor has empty-label transitions.
      StateExplosionError: The product exceeds `cap` states.
    """
    for x in (a, b):
        if any(lab.is_epsilon for tr in x.transitions
               for lab in label_components(tr.label)):
            raise ValueError("Invalid product factor: {} has empty-label "
                             "transitions".format(x))
    a, b = rename_apart(a, b)
    roots = [(p, q) for p in sorted(a.initial) for q in sorted(b.initial)]

    def expand(key):
        p, q = key
        for la, pa in a.out(p):
            for lb, qb in b.out(q):
                yield label_components(la) + label_components(lb), (pa, qb)

    keys, edges = explore(roots, expand, cap, "Product")
    namer = StateNamer()

    def name(key):
        return namer(key, compose_state(key))

    refresh = {}
    for key in keys:
        p, q = key
        for v in a.refreshed_at(p) | b.refreshed_at(q):
            refresh.setdefault(v, []).append(name(key))
    arity = _arity(a) + _arity(b)
    _LOG.debug("product2: %d states, %d transitions", len(keys), len(edges))
    return NFva(states=[name(k) for k in keys],
                initial=[name(k) for k in roots],
                accepting=[name(k) for k in keys
                           if k[0] in a.accepting and k[1] in b.accepting],
                transitions=[(name(s), lab, name(t)) for s, lab, t in edges],
                refresh=refresh, variables=a.variables | b.variables,
                arity=arity)


def _arity(a):
    return a.arity if isinstance(a, NFva) else 1


class PsiIndex(object):
    """
    Class index functions used by `reduce_nfva()`.

    The letters of the automaton are enumerated as a_1, ..., a_n and have the
    fixed classes 1, ..., n. A bound variable is assigned one of the classes
    1, ..., n + m, where m is the number of variables. A class up to n stands
    for its letter; a higher class stands for a value outside the letters of
    the automaton and is represented by a variable of the reduced automaton.
    An unbound variable has the class 0: its class is chosen when a
    transition binds it.

    A function is represented by the tuple of the classes of the variables,
    in variable order.
    """

    #: int: The class of an unbound variable.
    UNBOUND = 0

    def __init__(self, letters, variables):
        #: tuple of string: The letters, in class order.
        self.letters = tuple(sorted(letters))
        #: tuple of string: The variables, in index order.
        self.variables = tuple(sorted(variables))
        self._letter_class = dict(
            (a, i + 1) for i, a in enumerate(self.letters))
        self._var_index = dict((v, i) for i, v in enumerate(self.variables))
        #: int: Number of classes.
        self.size = len(self.letters) + len(self.variables)

    def initial_function(self):
        """
        Return the function with all variables unbound.
        """
        return (self.UNBOUND,) * len(self.variables)

    def abstract_classes(self):
        """
        Return the classes beyond the letters, in order.
        """
        return range(len(self.letters) + 1, self.size + 1)

    def class_of(self, psi, label):
        """
        Return the class of a letter or variable label under `psi`.
        """
        if label.is_letter:
            return self._letter_class[label.value]
        return psi[self._var_index[label.value]]

    def in_use(self, psi):
        """
        Return the classes beyond the letters that `psi` assigns to some
        variable.
        """
        return frozenset(c for c in psi if c > len(self.letters))

    def bind(self, psi, labels):
        """
        Return an iterator over the ways a tuple label can read a letter
        under `psi`.

        All components must get the same class. If a letter or a bound
        variable fixes the class, the unbound variables take it. If all
        components are unbound variables, the class is guessed: a letter
        class, a class in use, or the smallest unused class beyond the
        letters.

        Returns:
          iterator of tuple(int, tuple): The class read and the function
          with the unbound components bound to it.
        """
        fixed = set(self.class_of(psi, lab) for lab in labels)
        fixed.discard(self.UNBOUND)
        if len(fixed) > 1:
            return
        if fixed:
            choices = list(fixed)
        else:
            used = self.in_use(psi)
            choices = list(range(1, len(self.letters) + 1))
            choices.extend(sorted(used))
            fresh = [c for c in self.abstract_classes() if c not in used]
            choices.extend(fresh[:1])
        indexes = [self._var_index[lab.value] for lab in labels
                   if lab.is_variable]
        for cls in choices:
            result = list(psi)
            for i in indexes:
                result[i] = cls
            yield cls, tuple(result)

    def drop(self, psi, variables):
        """
        Return `psi` with `variables` unbound.
        """
        result = list(psi)
        for v in variables:
            result[self._var_index[v]] = self.UNBOUND
        return tuple(result)

    def class_label(self, cls):
        """
        Return the label of the reduced automaton for a class: the letter for
        letter classes, a class variable otherwise.
        """
        if cls <= len(self.letters):
            return letter(self.letters[cls - 1])
        return var(self.class_variable(cls))

    def class_variable(self, cls):
        """
        Return the name of the variable of the reduced automaton standing for
        a class beyond the letters.
        """
        return 'v{}'.format(cls)

    def preimage(self, psi, cls):
        """
        Return the variables assigned to a class by `psi`.
        """
        return frozenset(v for v, c in zip(self.variables, psi) if c == cls)


def reduce_nfva(a, cap=DEFAULT_STATE_CAP):
    """
    Return an FVA with the same language as an n-FVA.

    Arity 1 is a plain relabeling. Otherwise the states of the result pair a
    state of `a` with a class index function (see `PsiIndex`) that records
    which bound variables hold equal values and which hold letters of `a`.
    Runs start with all variables unbound. A tuple transition is kept if all
    its components can have the same class; the classes of its unbound
    variables are guessed at that point, and the transition is relabeled
    with the letter or class variable of that class. Entering a state
    unbinds the variables refreshed there. A class variable is refreshed at
    every pair whose function assigns its class to no variable. Only pairs
    reachable from the initial pairs are built.

    Parameters:

      a (NFva): The automaton.

      cap (int): Maximum number of states of the result.

    Returns:
      Fva: The reduced automaton.

    Raises:
      StateExplosionError: The result exceeds `cap` states.
    """
    if a.arity == 1:
        return Fva(states=a.states, initial=a.initial, accepting=a.accepting,
                   transitions=[(tr.source, tr.label[0], tr.target)
                                for tr in a.transitions],
                   refresh=a.refresh, variables=a.variables)

    index = PsiIndex(a.letters, a.variables)
    roots = [(q, index.initial_function()) for q in sorted(a.initial)]

    def expand(key):
        q, psi = key
        for labels, target in a.out(q):
            for cls, psi1 in index.bind(psi, labels):
                yield (index.class_label(cls),
                       (target, index.drop(psi1, a.refreshed_at(target))))

    keys, edges = explore(roots, expand, cap, "Reduction")
    namer = StateNamer()

    def name(key):
        q, psi = key
        return namer(key, '{}[{}]'.format(
            q, ','.join(str(c) if c else '-' for c in psi)))

    refresh = {}
    for key in keys:
        used = index.in_use(key[1])
        for cls in index.abstract_classes():
            if cls not in used:
                refresh.setdefault(index.class_variable(cls), []).append(
                    name(key))
    variables = [index.class_variable(cls)
                 for cls in index.abstract_classes()]
    _LOG.debug("reduce_nfva: %d states, %d transitions from %d states of "
               "arity %d", len(keys), len(edges), len(a.states), a.arity)
    return Fva(states=[name(k) for k in keys],
               initial=[name(k) for k in roots],
               accepting=[name(k) for k in keys if k[0] in a.accepting],
               transitions=[(name(s), lab, name(t)) for s, lab, t in edges],
               refresh=refresh, variables=variables)


def trim(a):
    """
    Return the restriction of an automaton to its states that are both
    accessible and co-accessible.
    """
    keep = accessible_states(a) & coaccessible_states(a)
    return a.replace(
        states=keep,
        initial=a.initial & keep,
        accepting=a.accepting & keep,
        transitions=[tr for tr in a.transitions
                     if tr.source in keep and tr.target in keep],
        refresh=dict((v, qs & keep) for v, qs in a.refresh.items()))


def intersect(a, b, cap=DEFAULT_STATE_CAP):
    """
    Return an FVA for the intersection of the languages of two FVAs.

    The product 2-FVA is reduced to an FVA and trimmed.
    """
    return trim(reduce_nfva(product2(a, b, cap), cap))
