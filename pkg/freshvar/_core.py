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
Domain types of the freshvar package: labels, automata, substitutions and
configurations, plus structural validation.

A fresh-variable automaton reads words over an unbounded alphabet of letters.
Its transitions are labeled with letters or variables. A variable binds the
first letter it reads and keeps it until the automaton enters a state at which
the variable is refreshed.
"""

import sys
import logging
from collections import namedtuple

import six
import networkx as nx

from ._exceptions import AutomatonFormatError
from ._utils import token_problem, fresh_name, EPS_TOKEN, VAR_PREFIX

__all__ = ['LETTER', 'VARIABLE', 'EPSILON', 'SEND', 'RECV', 'Label', 'letter',
           'var', 'EPS', 'Transition', 'GroundSubstitution', 'Configuration',
           'Violation', 'Fva', 'EpsFva', 'NFva', 'Cfva', 'validate',
           'check_valid', 'rename_variables', 'rename_apart',
           'accessible_states', 'coaccessible_states', 'automaton_class']

_LOG = logging.getLogger(__name__)

#: Kind of a label denoting a letter.
LETTER = 'letter'

#: Kind of a label denoting a variable.
VARIABLE = 'var'

#: Kind of the empty label.
EPSILON = 'eps'

#: Polarity of a sending label.
SEND = '!'

#: Polarity of a receiving label.
RECV = '?'

_KIND_RANK = {LETTER: 0, VARIABLE: 1, EPSILON: 2}


class Label(object):
    """
    An immutable transition label: a letter, a variable, or the empty label,
    optionally with a send or receive polarity.

    Labels compare and hash by kind, value and polarity. Their text rendering
    is the letter itself, the variable with a "$" prefix, or "@eps", preceded
    by the polarity if any (e.g. "!a", "?$x").
    """

    __slots__ = ('_kind', '_value', '_polarity', '_hash')

    def __init__(self, kind, value=None, polarity=None):
        """
        Parameters:

          kind (string): One of `LETTER`, `VARIABLE` or `EPSILON`.

          value (string): The letter or the variable name. Must be `None` for
            the empty label.

          polarity (string): `SEND`, `RECV` or `None`.

        Raises:
          ValueError: Invalid kind or polarity, or a value that does not fit
            the kind.
        """
        if kind not in _KIND_RANK:
            raise ValueError("Invalid label kind: {!r}".format(kind))
        if polarity not in (None, SEND, RECV):
            raise ValueError("Invalid label polarity: {!r}".format(polarity))
        if kind == EPSILON:
            if value is not None:
                raise ValueError(
                    "Invalid value for the empty label: {!r}".format(value))
        elif not isinstance(value, six.string_types):
            raise ValueError("Invalid label value: {!r}".format(value))
        else:
            value = sys.intern(str(value))
        self._kind = kind
        self._value = value
        self._polarity = polarity
        self._hash = hash((kind, value, polarity))

    @property
    def kind(self):
        """
        string: Kind of the label (`LETTER`, `VARIABLE` or `EPSILON`).
        """
        return self._kind

    @property
    def value(self):
        """
        string: The letter or variable name, or `None` for the empty label.
        """
        return self._value

    @property
    def polarity(self):
        """
        string: `SEND`, `RECV`, or `None` for unpolarized labels.
        """
        return self._polarity

    @property
    def is_letter(self):
        """bool: The label denotes a letter."""
        return self._kind == LETTER

    @property
    def is_variable(self):
        """bool: The label denotes a variable."""
        return self._kind == VARIABLE

    @property
    def is_epsilon(self):
        """bool: The label is the empty label."""
        return self._kind == EPSILON

    def with_polarity(self, polarity):
        """
        Return a copy of the label with the specified polarity (`None` to
        remove it).
        """
        return Label(self._kind, self._value, polarity)

    @property
    def base(self):
        """
        Label: The label without its polarity.
        """
        if self._polarity is None:
            return self
        return Label(self._kind, self._value)

    def sort_key(self):
        """
        Key ordering labels by kind (letter < var < eps), then token, then
        polarity.
        """
        return (_KIND_RANK[self._kind], self._value or '',
                self._polarity or '')

    @classmethod
    def parse(cls, text):
        """
        Parse the text rendering of a label, e.g. "a", "$x", "!a", "?$x",
        "@eps".

        Raises:
          ValueError: Empty text.
        """
        if not isinstance(text, six.string_types) or text == '':
            raise ValueError("Invalid label text: {!r}".format(text))
        polarity = None
        if text[0] in (SEND, RECV) and len(text) > 1:
            polarity, text = text[0], text[1:]
        if text == EPS_TOKEN:
            return cls(EPSILON, polarity=polarity)
        if text.startswith(VAR_PREFIX) and len(text) > 1:
            return cls(VARIABLE, text[len(VAR_PREFIX):], polarity)
        return cls(LETTER, text, polarity)

    def __eq__(self, other):
        if not isinstance(other, Label):
            return NotImplemented
        return (self._kind == other._kind and self._value == other._value and
                self._polarity == other._polarity)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self._kind == EPSILON:
            text = EPS_TOKEN
        elif self._kind == VARIABLE:
            text = VAR_PREFIX + self._value
        else:
            text = self._value
        return (self._polarity or '') + text

    def __repr__(self):
        return "Label({!r})".format(str(self))


def letter(token, polarity=None):
    """
    Return a label denoting a letter.
    """
    return Label(LETTER, token, polarity)


def var(name, polarity=None):
    """
    Return a label denoting a variable.
    """
    return Label(VARIABLE, name, polarity)


#: The empty label.
EPS = Label(EPSILON)


#: A transition of an automaton. For n-FVAs, `label` is a tuple of labels.
Transition = namedtuple('Transition', ['source', 'label', 'target'])


def label_components(label):
    """
    Return the labels of a transition label as a tuple (the tuple itself for
    n-FVA labels).
    """
    if isinstance(label, tuple):
        return label
    return (label,)


def label_sort_key(label):
    """
    Sort key for plain labels and label tuples.
    """
    return tuple(lab.sort_key() for lab in label_components(label))


def transition_sort_key(transition):
    """
    Sort key ordering transitions by source, label and target.
    """
    return (transition.source, label_sort_key(transition.label),
            transition.target)


class GroundSubstitution(object):
    """
    An immutable partial map from variables to letters.

    It serves both as the memory of a configuration and as the substitutions
    of the simulation games. Items are kept sorted by variable, so equal
    substitutions have equal representations.
    """

    __slots__ = ('_items', '_hash')

    def __init__(self, items=()):
        """
        Parameters:

          items (dict or iterable of (string, string)): The bindings.

        Raises:
          ValueError: A variable is bound twice.
        """
        if hasattr(items, 'items'):
            items = items.items()
        items = tuple(sorted(items))
        for i in range(1, len(items)):
            if items[i - 1][0] == items[i][0]:
                raise ValueError(
                    "Invalid substitution: variable {!r} bound twice".
                    format(items[i][0]))
        self._items = items
        self._hash = hash(items)

    def items(self):
        """
        tuple of (variable, letter): The bindings, sorted by variable.
        """
        return self._items

    def domain(self):
        """
        frozenset of string: The bound variables.
        """
        return frozenset(v for v, _ in self._items)

    def values(self):
        """
        frozenset of string: The letters in the codomain.
        """
        return frozenset(a for _, a in self._items)

    def get(self, variable, default=None):
        """
        Return the letter bound to `variable`, or `default`.
        """
        for v, a in self._items:
            if v == variable:
                return a
        return default

    def apply(self, label):
        """
        Return the letter denoted by a label under this substitution: the
        letter itself, or the binding of the variable (`None` if free).
        """
        if label.is_letter:
            return label.value
        if label.is_variable:
            return self.get(label.value)
        return None

    def bind(self, variable, value):
        """
        Return a copy with the additional binding `variable -> value`.

        Raises:
          ValueError: `variable` is bound to a different letter.
        """
        current = self.get(variable)
        if current is not None:
            if current != value:
                raise ValueError(
                    "Invalid binding: {!r} is bound to {!r}, not {!r}".
                    format(variable, current, value))
            return self
        return GroundSubstitution(self._items + ((variable, value),))

    def merge(self, other):
        """
        Return the union of two substitutions that agree on their common
        domain.

        Raises:
          ValueError: The substitutions disagree.
        """
        result = self
        for v, a in other.items():
            result = result.bind(v, a)
        return result

    def drop(self, variables):
        """
        Return a copy without the bindings of `variables`.
        """
        if not variables or not self._items:
            return self
        return GroundSubstitution(
            (v, a) for v, a in self._items if v not in variables)

    def restrict(self, variables):
        """
        Return a copy with only the bindings of `variables`.
        """
        return GroundSubstitution(
            (v, a) for v, a in self._items if v in variables)

    def __contains__(self, variable):
        return any(v == variable for v, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return (v for v, _ in self._items)

    def __eq__(self, other):
        if not isinstance(other, GroundSubstitution):
            return NotImplemented
        return self._items == other._items

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "GroundSubstitution({{{}}})".format(
            ', '.join('{!r}: {!r}'.format(v, a) for v, a in self._items))


GroundSubstitution.EMPTY = GroundSubstitution()


#: A configuration: a state and the memory (a GroundSubstitution).
Configuration = namedtuple('Configuration', ['state', 'memory'])


#: A structural invariant violation reported by `validate()`.
Violation = namedtuple('Violation', ['code', 'message', 'element'])


class Fva(object):
    """
    An immutable fresh-variable automaton.

    Transitions are labeled with letters or variables. The refreshing map
    associates each variable with the states at whose entry its binding is
    dropped.

    The constructor does not check the structural invariants, so that invalid
    automata can be represented and reported by `validate()`.
    """

    #: Type name used in the JSON format.
    kind = 'fva'

    def __init__(self, states, initial, accepting, transitions, refresh=None,
                 variables=None):
        """
        Parameters:

          states (iterable of string): The states.

          initial (iterable of string): The initial states.

          accepting (iterable of string): The accepting states.

          transitions (iterable of tuple): The transitions as
            `(source, label, target)` triples. A label may be a `Label` or its
            text rendering (see `Label.parse()`).

          refresh (dict): Map from variable to an iterable of the states at
            which the variable is refreshed.

          variables (iterable of string): The variables. Defaults to the
            variables used in the transitions and in `refresh`.
        """
        self._states = frozenset(states)
        self._initial = frozenset(initial)
        self._accepting = frozenset(accepting)
        self._transitions = frozenset(
            Transition(s, self._make_label(lab), t)
            for s, lab, t in transitions)
        refresh = dict(refresh or {})
        self._refresh = dict(
            (v, frozenset(qs)) for v, qs in refresh.items() if qs)
        if variables is None:
            variables = set(refresh)
            for tr in self._transitions:
                variables.update(lab.value
                                 for lab in label_components(tr.label)
                                 if lab.is_variable)
        self._variables = frozenset(variables)
        self._out = None
        self._refreshed_at = None
        self._graph = None

    def _make_label(self, label):
        if isinstance(label, Label):
            return label
        return Label.parse(label)

    def _constructor_args(self):
        return dict(states=self._states, initial=self._initial,
                    accepting=self._accepting, transitions=self._transitions,
                    refresh=self._refresh, variables=self._variables)

    def replace(self, **changes):
        """
        Return a new automaton of the same kind with some components
        replaced.
        """
        args = self._constructor_args()
        args.update(changes)
        return automaton_class(self.kind)(**args)

    @property
    def states(self):
        """frozenset of string: The states."""
        return self._states

    @property
    def initial(self):
        """frozenset of string: The initial states."""
        return self._initial

    @property
    def accepting(self):
        """frozenset of string: The accepting states."""
        return self._accepting

    @property
    def transitions(self):
        """frozenset of Transition: The transitions."""
        return self._transitions

    @property
    def refresh(self):
        """
        dict: Map from variable to the frozenset of states at which it is
        refreshed. Variables without refreshing states are absent. The dict is
        a copy.
        """
        return dict(self._refresh)

    @property
    def variables(self):
        """frozenset of string: The variables."""
        return self._variables

    @property
    def letters(self):
        """
        frozenset of string: The letters occurring in the transitions.
        """
        return frozenset(lab.value for tr in self._transitions
                         for lab in label_components(tr.label)
                         if lab.is_letter)

    def components(self, label):
        """
        Return the component labels of a transition label, as a tuple.
        """
        return label_components(label)

    def out(self, state):
        """
        Return the outgoing transitions of a state as a tuple of
        `(label, target)` pairs, ordered by label and target.
        """
        if self._out is None:
            out = {}
            for tr in self._transitions:
                out.setdefault(tr.source, []).append((tr.label, tr.target))
            self._out = dict(
                (s, tuple(sorted(pairs, key=lambda p: (label_sort_key(p[0]),
                                                       p[1]))))
                for s, pairs in out.items())
        return self._out.get(state, ())

    def refreshed_at(self, state):
        """
        Return the frozenset of variables refreshed when entering `state`.
        """
        if self._refreshed_at is None:
            index = {}
            for v, qs in self._refresh.items():
                for q in qs:
                    index.setdefault(q, set()).add(v)
            self._refreshed_at = dict(
                (q, frozenset(vs)) for q, vs in index.items())
        return self._refreshed_at.get(state, frozenset())

    def graph(self):
        """
        Return the label-blind transition graph as a networkx DiGraph whose
        nodes are the states. The graph is shared and must not be modified.
        """
        if self._graph is None:
            graph = nx.DiGraph()
            graph.add_nodes_from(sorted(self._states))
            graph.add_edges_from((tr.source, tr.target)
                                 for tr in self._transitions)
            self._graph = graph
        return self._graph

    def sorted_transitions(self):
        """
        Return the transitions as a list ordered by source, label and target.
        """
        return sorted(self._transitions, key=transition_sort_key)

    def _key(self):
        return (self.kind, self._states, self._initial, self._accepting,
                self._transitions, frozenset(self._refresh.items()),
                self._variables)

    def __eq__(self, other):
        if not isinstance(other, Fva):
            return NotImplemented
        return self._key() == other._key()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return ("{}(states={}, transitions={}, variables={!r})".
                format(type(self).__name__, len(self._states),
                       len(self._transitions), sorted(self._variables)))


class EpsFva(Fva):
    """
    A fresh-variable automaton whose transitions may carry the empty label.

    An empty-label move reads no letter and drops the bindings refreshed at
    its target.
    """

    kind = 'eps-fva'


class Cfva(Fva):
    """
    A communicating fresh-variable automaton: every label carries a send or
    receive polarity, there is a single initial state and all states are
    accepting.

    If `accepting` is `None`, all states are accepting.
    """

    kind = 'cfva'

    def __init__(self, states, initial, accepting, transitions, refresh=None,
                 variables=None):
        states = frozenset(states)
        if accepting is None:
            accepting = states
        super(Cfva, self).__init__(states, initial, accepting, transitions,
                                   refresh, variables)

    @property
    def initial_state(self):
        """
        string: The initial state (the smallest one, if there are several).
        """
        return min(self._initial)


class NFva(Fva):
    """
    A fresh-variable automaton whose transitions are labeled with n-tuples of
    labels. A transition reads a letter if a single substitution makes every
    component denote that letter.
    """

    kind = 'nfva'

    def __init__(self, states, initial, accepting, transitions, refresh=None,
                 variables=None, arity=None):
        """
        Parameters:

          arity (int): Number of components of the labels. Defaults to the
            length of the labels in `transitions`.

        See `Fva` for the other parameters. Labels are tuples of `Label`
        objects or of their text renderings.

        Raises:
          ValueError: The arity cannot be determined.
        """
        transitions = list(transitions)
        if arity is None:
            if not transitions:
                raise ValueError(
                    "Invalid arity: None for an NFva without transitions")
            arity = len(transitions[0][1])
        self._arity = arity
        super(NFva, self).__init__(states, initial, accepting, transitions,
                                   refresh, variables)

    def _make_label(self, label):
        if not isinstance(label, (tuple, list)):
            raise ValueError(
                "Invalid NFva label, must be a tuple: {!r}".format(label))
        return tuple(Fva._make_label(self, lab) for lab in label)

    def _constructor_args(self):
        args = super(NFva, self)._constructor_args()
        args['arity'] = self._arity
        return args

    @property
    def arity(self):
        """int: Number of components of the labels."""
        return self._arity

    def _key(self):
        return super(NFva, self)._key() + (self._arity,)


_CLASSES = {
    Fva.kind: Fva,
    EpsFva.kind: EpsFva,
    Cfva.kind: Cfva,
    NFva.kind: NFva,
}


def automaton_class(kind):
    """
    Return the automaton class for a JSON type name.

    Raises:
      ValueError: Unknown type name.
    """
    try:
        return _CLASSES[kind]
    except KeyError:
        raise ValueError("Invalid automaton type: {!r}".format(kind))


def validate(a):
    """
    Check the structural invariants of an automaton.

    Parameters:

      a (Fva): The automaton (any of the automaton classes).

    Returns:
      list of Violation: The violations found; an empty list if the automaton
      is valid.
    """
    violations = []

    def _report(code, message, element):
        violations.append(Violation(code, message, element))

    for name, states in (('initial', a.initial), ('accepting', a.accepting)):
        for q in sorted(states - a.states):
            _report('unknown-state',
                    "unknown state {!r} in {} states".format(q, name), q)
    for v in sorted(a.variables):
        problem = token_problem(v, 'variable')
        if problem:
            _report('invalid-token', problem, v)
    for v, qs in sorted(a.refresh.items()):
        if v not in a.variables:
            _report('unknown-variable',
                    "unknown variable {!r} in refresh map".format(v), v)
        for q in sorted(qs - a.states):
            _report('unknown-state',
                    "unknown state {!r} in refresh set of {!r}".format(q, v),
                    q)

    for tr in a.sorted_transitions():
        for q in (tr.source, tr.target):
            if q not in a.states:
                _report('unknown-state',
                        "unknown state {!r} in transition {}".format(
                            q, _transition_text(tr)), tr)
        if a.kind == NFva.kind:
            if len(tr.label) != a.arity:
                _report('arity-mismatch',
                        "label of transition {} has {} components, arity is "
                        "{}".format(_transition_text(tr), len(tr.label),
                                    a.arity), tr)
        for lab in label_components(tr.label):
            _check_label(a, tr, lab, _report)

    if a.kind == NFva.kind and (not isinstance(a.arity, int) or a.arity < 1):
        _report('arity-mismatch',
                "arity must be at least 1, got {!r}".format(a.arity), a.arity)
    if a.kind == Cfva.kind:
        if len(a.initial) != 1:
            _report('single-initial',
                    "single initial required, got {} initial states".format(
                        len(a.initial)), sorted(a.initial))
        if a.accepting != a.states:
            _report('all-accepting',
                    "all states must be accepting in a cfva",
                    sorted(a.states - a.accepting))
    return violations


def _check_label(a, tr, lab, report):
    where = _transition_text(tr)
    if lab.is_epsilon:
        if a.kind != EpsFva.kind:
            report('epsilon-not-allowed',
                   "empty label in transition {} of a {}".format(
                       where, a.kind), tr)
        if lab.polarity is not None:
            report('unexpected-polarity',
                   "empty label with polarity in transition {}".format(where),
                   tr)
        return
    problem = token_problem(
        lab.value, 'letter' if lab.is_letter else 'variable')
    if problem:
        report('invalid-token', problem, tr)
    if lab.is_variable and lab.value not in a.variables:
        report('unknown-variable',
               "unknown variable {!r} in transition {}".format(
                   lab.value, where), tr)
    if a.kind == Cfva.kind:
        if lab.polarity is None:
            report('missing-polarity',
                   "label without polarity in transition {} of a cfva".
                   format(where), tr)
    elif lab.polarity is not None:
        report('unexpected-polarity',
               "label with polarity in transition {} of a {}".format(
                   where, a.kind), tr)


def _transition_text(tr):
    label = tr.label
    if isinstance(label, tuple):
        text = '({})'.format(','.join(str(lab) for lab in label))
    else:
        text = str(label)
    return '{} -{}-> {}'.format(tr.source, text, tr.target)


def check_valid(a):
    """
    Raise `AutomatonFormatError` if the automaton violates its structural
    invariants.
    """
    violations = validate(a)
    if violations:
        raise AutomatonFormatError(
            "Invalid {}: {}".format(a.kind, violations[0].message),
            violations=violations)


def _rename_label(label, mapping):
    if isinstance(label, tuple):
        return tuple(_rename_label(lab, mapping) for lab in label)
    if label.is_variable and label.value in mapping:
        return Label(VARIABLE, mapping[label.value], label.polarity)
    return label


def rename_variables(a, mapping):
    """
    Return a copy of an automaton with variables renamed.

    Parameters:

      a (Fva): The automaton.

      mapping (dict): Map from old to new variable names. Must be injective
        and must not map onto variables that are kept.
    """
    if not mapping:
        return a
    return a.replace(
        transitions=[(tr.source, _rename_label(tr.label, mapping), tr.target)
                     for tr in a.transitions],
        refresh=dict((mapping.get(v, v), qs) for v, qs in a.refresh.items()),
        variables=[mapping.get(v, v) for v in a.variables])


def rename_apart(a, b):
    """
    Return copies of two automata with disjoint variable sets.

    The variables of `b` that also occur in `a` are renamed to fresh names;
    the automata are returned unchanged if their variables are already
    disjoint. Renaming preserves the languages.

    Returns:
      tuple(Fva, Fva): The automata `a` and the possibly renamed `b`.
    """
    clash = a.variables & b.variables
    if not clash:
        return a, b
    taken = set(a.variables | b.variables)
    mapping = {}
    for v in sorted(clash):
        new = fresh_name(v, taken)
        taken.add(new)
        mapping[v] = new
    _LOG.debug("rename_apart: renaming %s", mapping)
    return a, rename_variables(b, mapping)


def accessible_states(a):
    """
    Return the frozenset of states reachable from an initial state in the
    label-blind transition graph.
    """
    graph = a.graph()
    result = set()
    for q in a.initial:
        if q in graph:
            result.add(q)
            result.update(nx.descendants(graph, q))
    return frozenset(result)


def coaccessible_states(a):
    """
    Return the frozenset of states from which an accepting state is reachable
    in the label-blind transition graph.
    """
    graph = a.graph()
    result = set()
    for q in a.accepting:
        if q in graph:
            result.add(q)
            result.update(nx.ancestors(graph, q))
    return frozenset(result)
