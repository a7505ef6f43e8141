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
Canonical JSON documents for automata, game strategies and orchestrators.

An automaton document looks like this::

    {
      "type": "fva",
      "states": ["p0", "p1"],
      "initial": ["p0"],
      "accepting": ["p0"],
      "variables": ["x"],
      "transitions": [
        {"from": "p0", "label": {"kind": "var", "value": "x"}, "to": "p1"},
        {"from": "p1", "label": {"kind": "var", "value": "x"}, "to": "p0"}
      ],
      "refresh": {"x": ["p0"]}
    }

Labels of an "nfva" are lists of label objects, and the document has an
"arity" member. Labels of a "cfva" have a "polarity" member ("!" or "?").
"""

import json
import logging

import six

from ._core import Label, LETTER, VARIABLE, EPSILON, SEND, RECV, NFva, \
    automaton_class, label_sort_key
from ._exceptions import AutomatonFormatError
from ._game import AbelardPosition, EloisePosition, ChoicePosition
from ._compose import synthesize

__all__ = ['label_to_dict', 'label_from_dict', 'automaton_to_dict',
           'automaton_from_dict', 'dumps_automaton', 'loads_automaton',
           'load_automaton', 'dump_automaton', 'dumps_document',
           'substitution_to_dict', 'position_to_dict', 'move_to_dict',
           'strategy_to_dict', 'orchestrator_to_dict',
           'orchestrator_from_dict', 'load_orchestrator']

_LOG = logging.getLogger(__name__)

_KINDS = (LETTER, VARIABLE, EPSILON)


def dumps_document(doc):
    """
    Return the canonical text of a JSON document: sorted keys, two-space
    indentation and a final newline.
    """
    return json.dumps(doc, sort_keys=True, indent=2,
                      separators=(',', ': ')) + '\n'


def _loads(text):
    try:
        return json.loads(text)
    except ValueError as exc:
        lineno = getattr(exc, 'lineno', None)
        if lineno is not None:
            location = "line {} column {}".format(lineno, exc.colno)
        else:
            location = None
        raise AutomatonFormatError("Invalid JSON: {}".format(
            getattr(exc, 'msg', exc)), location)


def label_to_dict(label):
    """
    Return the JSON object of a label.
    """
    doc = {'kind': label.kind}
    if not label.is_epsilon:
        doc['value'] = label.value
    if label.polarity is not None:
        doc['polarity'] = label.polarity
    return doc


def label_from_dict(doc, where='label'):
    """
    Return the label of a JSON object.

    Raises:
      AutomatonFormatError: Malformed label object.
    """
    if not isinstance(doc, dict):
        raise AutomatonFormatError("Invalid label: must be an object", where)
    kind = doc.get('kind')
    if kind not in _KINDS:
        raise AutomatonFormatError(
            "Invalid label kind: {!r}".format(kind), where + '.kind')
    polarity = doc.get('polarity')
    if polarity not in (None, SEND, RECV):
        raise AutomatonFormatError(
            "Invalid label polarity: {!r}".format(polarity),
            where + '.polarity')
    value = doc.get('value')
    if kind == EPSILON:
        if value is not None:
            raise AutomatonFormatError(
                "Invalid value for the empty label: {!r}".format(value),
                where + '.value')
    elif not isinstance(value, six.string_types):
        raise AutomatonFormatError(
            "Invalid label value: {!r}".format(value), where + '.value')
    return Label(kind, value, polarity)


def _label_doc(label):
    if isinstance(label, tuple):
        return [label_to_dict(lab) for lab in label]
    return label_to_dict(label)


def automaton_to_dict(a):
    """
    Return the canonical JSON object of an automaton.
    """
    doc = {
        'type': a.kind,
        'states': sorted(a.states),
        'initial': sorted(a.initial),
        'accepting': sorted(a.accepting),
        'variables': sorted(a.variables),
        'transitions': [
            {'from': tr.source, 'label': _label_doc(tr.label),
             'to': tr.target}
            for tr in sorted(a.transitions,
                             key=lambda tr: (tr.source,
                                             label_sort_key(tr.label),
                                             tr.target))],
        'refresh': dict((v, sorted(qs)) for v, qs in a.refresh.items()),
    }
    if isinstance(a, NFva):
        doc['arity'] = a.arity
    return doc


def _string_list(doc, key, where, required=True):
    if key not in doc:
        if required:
            raise AutomatonFormatError(
                "Missing member {!r}".format(key), where or None)
        return None
    value = doc[key]
    path = '{}.{}'.format(where, key) if where else key
    if not isinstance(value, list):
        raise AutomatonFormatError("Invalid {}: must be a list".format(key),
                                   path)
    for i, item in enumerate(value):
        if not isinstance(item, six.string_types):
            raise AutomatonFormatError(
                "Invalid {} item: must be a string".format(key),
                '{}[{}]'.format(path, i))
    return value


def automaton_from_dict(doc, where=''):
    """
    Return the automaton of a JSON object. The automaton is not validated;
    see `validate()`.

    Parameters:

      doc (dict): The JSON object.

      where (string): Path of the object in the enclosing document, for
        error locations.

    Raises:
      AutomatonFormatError: Malformed document.
    """
    prefix = where + '.' if where else ''
    if not isinstance(doc, dict):
        raise AutomatonFormatError("Invalid automaton: must be an object",
                                   where or None)
    kind = doc.get('type')
    try:
        cls = automaton_class(kind)
    except ValueError as exc:
        raise AutomatonFormatError(str(exc), prefix + 'type')
    states = _string_list(doc, 'states', where)
    initial = _string_list(doc, 'initial', where)
    accepting = _string_list(doc, 'accepting', where)
    variables = _string_list(doc, 'variables', where, required=False)
    raw = doc.get('transitions', [])
    if not isinstance(raw, list):
        raise AutomatonFormatError("Invalid transitions: must be a list",
                                   prefix + 'transitions')
    transitions = []
    for i, tr in enumerate(raw):
        path = '{}transitions[{}]'.format(prefix, i)
        if not isinstance(tr, dict):
            raise AutomatonFormatError(
                "Invalid transition: must be an object", path)
        for key in ('from', 'to'):
            if not isinstance(tr.get(key), six.string_types):
                raise AutomatonFormatError(
                    "Invalid transition {!r}: must be a string".format(key),
                    '{}.{}'.format(path, key))
        label = tr.get('label')
        if cls is NFva:
            if not isinstance(label, list):
                raise AutomatonFormatError(
                    "Invalid nfva label: must be a list", path + '.label')
            label = tuple(label_from_dict(lab, '{}.label[{}]'.format(path, j))
                          for j, lab in enumerate(label))
        else:
            label = label_from_dict(label, path + '.label')
        transitions.append((tr['from'], label, tr['to']))
    refresh = doc.get('refresh', {})
    if not isinstance(refresh, dict):
        raise AutomatonFormatError("Invalid refresh: must be an object",
                                   prefix + 'refresh')
    for v in sorted(refresh):
        _string_list(refresh, v, prefix + 'refresh')
    args = dict(states=states, initial=initial, accepting=accepting,
                transitions=transitions, refresh=refresh,
                variables=variables)
    if cls is NFva:
        arity = doc.get('arity')
        if not isinstance(arity, int):
            raise AutomatonFormatError(
                "Invalid arity: {!r}".format(arity), prefix + 'arity')
        args['arity'] = arity
    return cls(**args)


def dumps_automaton(a):
    """
    Return the canonical JSON text of an automaton.
    """
    return dumps_document(automaton_to_dict(a))


def loads_automaton(text):
    """
    Return the automaton of a JSON text.

    Raises:
      AutomatonFormatError: Malformed document.
    """
    return automaton_from_dict(_loads(text))


def load_automaton(filename):
    """
    Read an automaton from a JSON file.

    Raises:
      AutomatonFormatError: Malformed document; the location names the file.
      IOError: The file cannot be read.
    """
    with open(filename) as fp:
        text = fp.read()
    _LOG.debug("Reading automaton from %s", filename)
    try:
        return loads_automaton(text)
    except AutomatonFormatError as exc:
        location = '{}: {}'.format(filename, exc.location) \
            if exc.location else filename
        raise AutomatonFormatError(exc.reason, location)


def dump_automaton(a, filename):
    """
    Write the canonical JSON text of an automaton to a file.
    """
    with open(filename, 'w') as fp:
        fp.write(dumps_automaton(a))
    _LOG.debug("Wrote %s automaton with %d states to %s", a.kind,
               len(a.states), filename)


def substitution_to_dict(substitution):
    """
    Return the JSON object of a ground substitution.
    """
    return dict(substitution.items())


def _side_to_dict(side):
    return {'state': side.state,
            'substitution': substitution_to_dict(side.substitution)}


def position_to_dict(position):
    """
    Return the JSON object of a game position.
    """
    if isinstance(position, ChoicePosition):
        doc = position_to_dict(position.eloise)
        doc['player'] = 'choice'
        return doc
    doc = {'client': _side_to_dict(position.client),
           'service': _side_to_dict(position.service)}
    if isinstance(position, EloisePosition):
        doc['player'] = 'eloise'
        doc['pending'] = {
            'label': label_to_dict(position.pending.label),
            'substitution': substitution_to_dict(
                position.pending.substitution)}
    else:
        assert isinstance(position, AbelardPosition), position
        doc['player'] = 'abelard'
    return doc


def move_to_dict(move):
    """
    Return the JSON object of a game move.
    """
    tr = move.transition
    return {'rule': move.rule,
            'transition': {'from': tr.source, 'label': _label_doc(tr.label),
                           'to': tr.target},
            'instantiation': substitution_to_dict(move.instantiation),
            'binding': substitution_to_dict(move.binding),
            'letter': move.letter}


def strategy_to_dict(solution):
    """
    Return the JSON object of a game solution: the winner, the letter pool
    and Eloise's strategy as position and move pairs in canonical order.
    """
    pool = solution.game.pool
    return {
        'type': 'strategy',
        'winner': solution.winner,
        'pool': list(pool.letters) if pool is not None else [],
        'positions': len(solution.game),
        'strategy': [{'position': position_to_dict(p),
                      'move': move_to_dict(move) if move else None}
                     for p, (move, _) in solution.strategy.items()],
    }


def orchestrator_to_dict(orchestrator):
    """
    Return the JSON object of an orchestrator. It embeds the client and the
    services, from which `orchestrator_from_dict()` synthesizes it again.
    """
    return {
        'type': 'orchestrator',
        'client': automaton_to_dict(orchestrator.client),
        'services': [automaton_to_dict(s) for s in orchestrator.services],
        'pool_extra': orchestrator.pool_extra,
        'delegations': [
            {'position': position_to_dict(p),
             'service': d.service,
             'transition': {'from': d.transition.source,
                            'label': label_to_dict(d.transition.label),
                            'to': d.transition.target},
             'instantiation': substitution_to_dict(d.instantiation),
             'binding': substitution_to_dict(d.binding),
             'letter': d.letter}
            for p, d in orchestrator.items()],
    }


def orchestrator_from_dict(doc, cap=None):
    """
    Return the orchestrator of a JSON object, synthesized again from its
    client and services.

    Raises:
      AutomatonFormatError: Malformed document, or the automata admit no
        orchestrator.
    """
    if not isinstance(doc, dict) or doc.get('type') != 'orchestrator':
        raise AutomatonFormatError("Invalid orchestrator document", 'type')
    client = automaton_from_dict(doc.get('client'), 'client')
    services = doc.get('services')
    if not isinstance(services, list):
        raise AutomatonFormatError("Invalid services: must be a list",
                                   'services')
    services = [automaton_from_dict(s, 'services[{}]'.format(i))
                for i, s in enumerate(services)]
    pool_extra = doc.get('pool_extra', 0)
    if not isinstance(pool_extra, int) or pool_extra < 0:
        raise AutomatonFormatError(
            "Invalid pool_extra: {!r}".format(pool_extra), 'pool_extra')
    kwargs = {} if cap is None else {'cap': cap}
    result = synthesize(client, services, pool_extra=pool_extra, **kwargs)
    if not result:
        raise AutomatonFormatError(
            "Invalid orchestrator: the services do not simulate the client")
    return result


def load_orchestrator(filename, cap=None):
    """
    Read an orchestrator from a JSON file.
    """
    with open(filename) as fp:
        return orchestrator_from_dict(_loads(fp.read()), cap)
