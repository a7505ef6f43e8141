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
Example automata shipped with the package.

Messages with arguments of the shopping-cart example are flattened: a
message `f(a1, ..., an)` becomes the sequence of the tag `f` followed by the
arguments, all with the polarity of the message.
"""

from ._core import Fva, NFva, Cfva

__all__ = ['fixture', 'fixture_names']


def _a1():
    # Words a1 a1 a2 a2 ... an an.
    return Fva(states=['p0', 'p1'], initial=['p0'], accepting=['p0'],
               transitions=[('p0', '$x', 'p1'), ('p1', '$x', 'p0')],
               refresh={'x': ['p0']})


def _a2():
    # Words in which some letter occurs at least twice.
    return Fva(states=['q0', 'q1', 'q2'], initial=['q0'], accepting=['q2'],
               transitions=[('q0', '$z', 'q0'), ('q0', '$y', 'q1'),
                            ('q1', '$z', 'q1'), ('q1', '$y', 'q2')],
               refresh={'z': ['q0', 'q1']})


def _nfva():
    # Words (a z)^n for a fixed letter z.
    return NFva(states=['q0', 'q1'], initial=['q0'], accepting=['q0'],
                transitions=[('q0', ('a', '$y'), 'q1'),
                             ('q1', ('$x', '$y'), 'q0')],
                refresh={'y': ['q0', 'q1']}, variables=['x', 'y'])


def _sim_a():
    return Cfva(states=['p0', 'p1', 'p2'], initial=['p0'], accepting=None,
                transitions=[('p0', '?$x', 'p1'), ('p1', '?$y', 'p2'),
                             ('p2', '?$x', 'p1'), ('p2', '?$z', 'p0')],
                refresh={'x': ['p1'], 'y': ['p0']})


def _sim_b():
    return Cfva(states=['q0', 'q1'], initial=['q0'], accepting=None,
                transitions=[('q0', '!a', 'q0'), ('q0', '!b', 'q1'),
                             ('q1', '!c', 'q0')])


def _cart_client():
    return Cfva(
        states=['p0', 'p0a', 'p1', 'p1a', 'p1b', 'p2', 'p2a', 'p3', 'p3a',
                'p3b'],
        initial=['p0'], accepting=None,
        transitions=[
            # !Create_Cart(y)
            ('p0', '!Create_Cart', 'p0a'), ('p0a', '!$y', 'p1'),
            # !Search(x)
            ('p1', '!Search', 'p1a'), ('p1a', '!$x', 'p2'),
            # ?Fail
            ('p2', '?Fail', 'p1'),
            # ?End_Cart(y)
            ('p1', '?End_Cart', 'p1b'), ('p1b', '?$y', 'p0'),
            # ?Num(x)
            ('p2', '?Num', 'p2a'), ('p2a', '?$x', 'p3'),
            # !Add_Cart(y, x)
            ('p3', '!Add_Cart', 'p3a'), ('p3a', '!$y', 'p3b'),
            ('p3b', '!$x', 'p1'),
        ],
        refresh={'y': ['p0'], 'x': ['p1']})


def _cart_cart():
    return Cfva(
        states=['q0', 'q0a', 'q1', 'q1a', 'q1b', 'q1c'],
        initial=['q0'], accepting=None,
        transitions=[
            # ?Create_Cart(z)
            ('q0', '?Create_Cart', 'q0a'), ('q0a', '?$z', 'q1'),
            # ?Add_Cart(z, u)
            ('q1', '?Add_Cart', 'q1a'), ('q1a', '?$z', 'q1b'),
            ('q1b', '?$u', 'q1'),
            # !End_Cart(z)
            ('q1', '!End_Cart', 'q1c'), ('q1c', '!$z', 'q0'),
        ],
        refresh={'z': ['q0'], 'u': ['q1']})


def _cart_search():
    return Cfva(
        states=['r0', 'r0a', 'r1', 'r1a'],
        initial=['r0'], accepting=None,
        transitions=[
            # ?Search(w)
            ('r0', '?Search', 'r0a'), ('r0a', '?$w', 'r1'),
            # !Num(w)
            ('r1', '!Num', 'r1a'), ('r1a', '!$w', 'r0'),
            # !Fail
            ('r1', '!Fail', 'r0'),
        ],
        refresh={'w': ['r0']})


def _dfva_counterexample():
    # Any single letter, or the word a b. Not deterministic at q0.
    return Fva(states=['q0', 'q1', 'qf'], initial=['q0'], accepting=['qf'],
               transitions=[('q0', '$z', 'qf'), ('q0', 'a', 'q1'),
                            ('q1', 'b', 'qf')])


def _universal_loop():
    return Fva(states=['q'], initial=['q'], accepting=['q'],
               transitions=[('q', '$x', 'q')], refresh={'x': ['q']})


def _single_a():
    return Fva(states=['q0', 'q1'], initial=['q0'], accepting=['q1'],
               transitions=[('q0', 'a', 'q1')])


_FIXTURES = {
    'a1': _a1,
    'a2': _a2,
    'nfva-appendix': _nfva,
    'sim-a': _sim_a,
    'sim-b': _sim_b,
    'cart-client': _cart_client,
    'cart-cart': _cart_cart,
    'cart-search': _cart_search,
    'dfva-counterexample': _dfva_counterexample,
    'universal-loop': _universal_loop,
    'single-a': _single_a,
}


def fixture_names():
    """
    Return the names of the shipped example automata, sorted.
    """
    return sorted(_FIXTURES)


def fixture(name):
    """
    Return a shipped example automaton.

    Raises:
      ValueError: Unknown name.
    """
    try:
        builder = _FIXTURES[name]
    except KeyError:
        raise ValueError("Invalid fixture name: {!r}".format(name))
    return builder()
