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
Service composition: the asynchronous product of services, synthesis of an
orchestrator that delegates the requests of a client to the services, replay
of client traces through an orchestrator, and the choreography game.
"""

import logging
from collections import namedtuple

import six
import networkx as nx

from ._core import Cfva, Transition, SEND, RECV, check_valid, \
    rename_variables, rename_apart
from ._closure import DEFAULT_STATE_CAP
from ._game import DEFAULT_POSITION_CAP, ABELARD, ELOISE, AbelardPosition, \
    ChoicePosition, Game, build_game, solve_safety, \
    losing_play, solve_buchi
from ._exceptions import TraceDivergedError
from ._utils import StateNamer, compose_state, fresh_name, explore

__all__ = ['ProductCfva', 'async_product', 'Delegation', 'Orchestrator',
           'Refusal', 'synthesize', 'replay', 'parse_trace', 'monitor_cfva',
           'choreography_game', 'choreography']

_LOG = logging.getLogger(__name__)


class ProductCfva(Cfva):
    """
    The asynchronous product of communicating automata.

    Its states are named after tuples of component states. Besides the
    automaton, it records the components and the tuple of each state, which
    locate the component that performs a product transition.
    """

    def __init__(self, states, initial, accepting, transitions, refresh=None,
                 variables=None, components=(), state_tuples=None):
        super(ProductCfva, self).__init__(states, initial, accepting,
                                          transitions, refresh, variables)
        self._components = tuple(components)
        self._state_tuples = dict(state_tuples or {})

    @property
    def components(self):
        """tuple of Cfva: The components, with variables renamed apart."""
        return self._components

    def state_tuple(self, state):
        """
        Return the tuple of component states of a product state.
        """
        return self._state_tuples[state]

    def component_of(self, transition):
        """
        Return the index of the component that performs a product
        transition. For a self-loop offered by several components, the
        smallest index is returned.
        """
        src = self._state_tuples[transition.source]
        dst = self._state_tuples[transition.target]
        for i, comp in enumerate(self._components):
            if src[:i] + src[i + 1:] != dst[:i] + dst[i + 1:]:
                continue
            if (transition.label, dst[i]) in comp.out(src[i]):
                return i
        raise ValueError("Invalid product transition: {}".format(
            transition))

    def project(self, transition):
        """
        Return the component index and the component transition of a
        product transition.
        """
        i = self.component_of(transition)
        return i, Transition(self._state_tuples[transition.source][i],
                             transition.label,
                             self._state_tuples[transition.target][i])


def _rename_into(a, taken):
    mapping = {}
    for v in sorted(a.variables):
        if v in taken:
            new = fresh_name(v, taken | set(mapping.values()) | a.variables)
            mapping[v] = new
    return rename_variables(a, mapping)


def _empty_product():
    state = compose_state(())
    return ProductCfva([state], [state], None, [], components=(),
                       state_tuples={state: ()})


def async_product(services, cap=DEFAULT_STATE_CAP):
    """
    Return the asynchronous product of communicating automata.

    The variables of the services are renamed apart, in order. A product
    transition moves exactly one component along one of its transitions,
    with that transition's label. A product state is refreshed for a
    variable if the state of the component owning the variable is. Only
    states reachable from the tuple of initial states are built; all of them
    are accepting.

    Parameters:

      services (list of Cfva): The services, at least one.

      cap (int): Maximum number of product states.

    Returns:
      ProductCfva: The product.

    Raises:
      ValueError: No services.
      StateExplosionError: The product exceeds `cap` states.
    """
    if not services:
        raise ValueError("Invalid services: at least one is required")
    comps = []
    taken = set()
    for s in services:
        s = _rename_into(s, taken)
        taken |= s.variables
        comps.append(s)
    root = tuple(s.initial_state for s in comps)

    def expand(key):
        for i, comp in enumerate(comps):
            for label, target in comp.out(key[i]):
                yield label, key[:i] + (target,) + key[i + 1:]

    keys, edges = explore([root], expand, cap, "Asynchronous product")
    namer = StateNamer()

    def name(key):
        return namer(key, compose_state(key))

    refresh = {}
    for key in keys:
        for i, comp in enumerate(comps):
            for v in comp.refreshed_at(key[i]):
                refresh.setdefault(v, []).append(name(key))
    _LOG.debug("async_product: %d components, %d states, %d transitions",
               len(comps), len(keys), len(edges))
    return ProductCfva(
        states=[name(k) for k in keys], initial=[name(root)], accepting=None,
        transitions=[(name(s), lab, name(t)) for s, lab, t in edges],
        refresh=refresh, variables=taken, components=comps,
        state_tuples=dict((name(k), k) for k in keys))


#: What an orchestrator does at an Eloise position: the service index, the
#: service transition, the instantiation of its free variable for a send, the
#: binding of its free variable for a receive, and the letter exchanged.
Delegation = namedtuple('Delegation', ['service', 'transition',
                                       'instantiation', 'binding', 'letter'])


class Orchestrator(object):
    """
    A delegation table derived from a winning strategy of the composition
    game. It is true.

    Attributes:

      client (Cfva): The client, with variables renamed apart from the
        product.

      services (list of Cfva): The services as passed to `synthesize()`.

      product (ProductCfva): The asynchronous product of the services.

      game (Game): The composition game.

      solution (GameSolution): The solution of the game.

      pool_extra (int): Additional synthetic letters of the game pool.
    """

    def __init__(self, client, services, product, solution, pool_extra=0):
        self.client = client
        self.services = list(services)
        self.product = product
        self.solution = solution
        self.game = solution.game
        self.pool_extra = pool_extra
        self._table = {}
        for p, (move, _) in solution.strategy.items():
            i, tr = product.project(move.transition)
            self._table[p] = Delegation(i, tr, move.instantiation,
                                        move.binding, move.letter)

    def delegate(self, position):
        """
        Return the Delegation at an Eloise position.

        Raises:
          KeyError: The position is not covered.
        """
        return self._table[position]

    def successor(self, position):
        """
        Return the Abelard position reached from an Eloise position.
        """
        return self.solution.strategy.choice(position)[1]

    def items(self):
        """
        Return the `(position, Delegation)` pairs in canonical order.
        """
        return [(p, self._table[p])
                for p in self.solution.strategy.positions()]

    def __len__(self):
        return len(self._table)

    def __bool__(self):
        return True

    __nonzero__ = __bool__  # Python 2

    def __repr__(self):
        return "Orchestrator(services={}, positions={})".format(
            len(self.services), len(self._table))


class Refusal(object):
    """
    The outcome of a failed synthesis. It is false.

    Attributes:

      solution (GameSolution): The solution of the game, won by Abelard.

      path (list of tuple): A losing play as `(position, move)` steps (see
        `losing_play()`).
    """

    def __init__(self, solution):
        self.solution = solution
        self.game = solution.game
        self.path = losing_play(solution)

    @property
    def client_moves(self):
        """
        list of Move: The client moves of the losing play.
        """
        return [move for p, move in self.path
                if move is not None and isinstance(p, AbelardPosition)]

    def __bool__(self):
        return False

    __nonzero__ = __bool__  # Python 2

    def __repr__(self):
        return "Refusal(client_moves={})".format(len(self.client_moves))


def synthesize(client, services, pool_extra=0, cap=DEFAULT_POSITION_CAP,
               state_cap=DEFAULT_STATE_CAP):
    """
    Synthesize an orchestrator delegating the requests of a client to a
    community of services.

    The client must be simulated by the asynchronous product of the
    services; the variables of the client are renamed apart from those of the
    product.

    Parameters:

      client (Cfva): The client.

      services (list of Cfva): The services; may be empty.

      pool_extra (int): Additional synthetic letters of the game pool.

      cap (int): Maximum number of game positions.

      state_cap (int): Maximum number of product states.

    Returns:
      Orchestrator or Refusal: The orchestrator if the product simulates the
      client, the refusal with a losing client play otherwise.

    Raises:
      AutomatonFormatError: An automaton is invalid.
      CapExceededError: A cap is exceeded.
    """
    for a in [client] + list(services):
        check_valid(a)
    if services:
        product = async_product(services, state_cap)
    else:
        product = _empty_product()
    product, client = rename_apart(product, client)
    game = build_game(client, product, pool_extra=pool_extra, cap=cap)
    solution = solve_safety(game)
    if solution.eloise_wins:
        return Orchestrator(client, services, product, solution, pool_extra)
    return Refusal(solution)


def parse_trace(text):
    """
    Parse a client trace from text: whitespace-separated tokens, each a
    polarity followed by a letter, e.g. "!Search !i1 ?Num".

    Returns:
      list of tuple(string, string): The `(polarity, letter)` pairs.

    Raises:
      ValueError: A token without polarity or letter.
    """
    result = []
    for token in text.split():
        if token[0] not in (SEND, RECV) or len(token) < 2:
            raise ValueError("Invalid trace token: {!r}".format(token))
        result.append((token[0], token[1:]))
    return result


def _in_use(position):
    return position.client.substitution.values() | \
        position.service.substitution.values()


def replay(orchestrator, trace):
    """
    Execute an orchestrator on a concrete client session.

    Letters of the automata stand for themselves. Other letters of the trace
    are mapped to pool letters that occur in no substitution of the current
    position, and keep their mapping while they are remembered.

    Parameters:

      orchestrator (Orchestrator): The orchestrator.

      trace (iterable): Client moves as `(polarity, letter)` pairs, or text
        accepted by `parse_trace()`.

    Returns:
      list of Delegation: One delegation per client move.

    Raises:
      TraceDivergedError: A client move is not possible at its position.
    """
    if isinstance(trace, six.string_types):
        trace = parse_trace(trace)
    game = orchestrator.game
    pool = game.pool
    p = game.start
    mapping = {}
    delegations = []
    for n, (polarity, concrete) in enumerate(trace, 1):
        in_use = _in_use(p)
        mapping = dict((c, v) for c, v in mapping.items() if v in in_use)
        if concrete in pool.automaton_letters:
            image = concrete
        else:
            image = mapping.get(concrete)
        used = in_use | set(mapping.values())
        chosen = None
        for move, succ in game.moves(p):
            if polarity == SEND:
                if move.rule != 'client-send':
                    continue
                target = image
                if target is None:
                    if concrete in pool.synthetic and concrete not in used:
                        target = concrete
                    else:
                        target = next(c for c in pool.synthetic
                                      if c not in used)
                if move.letter == target:
                    chosen = (move, succ, target)
                    break
            else:
                if move.rule != 'client-receive' or \
                        succ not in orchestrator.solution.strategy:
                    continue
                letter = orchestrator.delegate(succ).letter
                if image is not None:
                    if letter == image:
                        chosen = (move, succ, image)
                        break
                elif letter not in pool.automaton_letters and \
                        letter not in mapping.values():
                    chosen = (move, succ, letter)
                    break
        if chosen is None:
            raise TraceDivergedError(
                n, p, "client move {}{} is not possible".format(
                    polarity, concrete))
        move, eloise, target = chosen
        if concrete not in pool.automaton_letters:
            mapping[concrete] = target
        delegations.append(orchestrator.delegate(eloise))
        p = orchestrator.successor(eloise)
    _LOG.debug("replay: %d client moves delegated", len(delegations))
    return delegations


def monitor_cfva():
    """
    Return the relay monitor: it receives any message and sends it on, or
    sends any message and receives it back.
    """
    return Cfva(states=['p0', 'p1', 'p2'], initial=['p0'], accepting=None,
                transitions=[('p0', '?$x', 'p1'), ('p1', '!$x', 'p0'),
                             ('p0', '!$x', 'p2'), ('p2', '?$x', 'p0')],
                refresh={'x': ['p0']})


def choreography_game(client, services, pool_extra=0,
                      cap=DEFAULT_POSITION_CAP, state_cap=DEFAULT_STATE_CAP):
    """
    Build the choreography game: the relay monitor is simulated by the
    asynchronous product of the client and the services.

    Every group of moves of the client component leaving an Eloise position
    is put behind a new Abelard position, a `ChoicePosition`; these are the
    accepting positions.

    Returns:
      tuple(Game, frozenset): The game and its accepting positions.
    """
    for a in [client] + list(services):
        check_valid(a)
    product = async_product([client] + list(services), state_cap)
    product, monitor = rename_apart(product, monitor_cfva())
    base = build_game(monitor, product, pool_extra=pool_extra, cap=cap)
    graph = nx.DiGraph()
    graph.add_nodes_from(base.graph.nodes(data=True))
    accepting = set()
    for p in base.graph:
        if base.graph.nodes[p]['player'] != ELOISE:
            graph.add_edges_from(base.graph.out_edges(p, data=True))
            continue
        for _, succ, data in base.graph.out_edges(p, data=True):
            if product.component_of(data['move'].transition) == 0:
                choice = ChoicePosition(p)
                if choice not in accepting:
                    accepting.add(choice)
                    graph.add_node(choice, player=ABELARD)
                    graph.add_edge(p, choice, move=None)
                graph.add_edge(choice, succ, move=data['move'])
            else:
                graph.add_edge(p, succ, move=data['move'])
    _LOG.debug("choreography_game: %d positions, %d choice positions",
               graph.number_of_nodes(), len(accepting))
    game = Game(graph, base.start, base.pool, monitor, product)
    return game, frozenset(accepting)


def choreography(client, services, pool_extra=0, cap=DEFAULT_POSITION_CAP,
                 state_cap=DEFAULT_STATE_CAP):
    """
    Decide whether the client and the services can carry on forever a
    conversation in which the client keeps taking part.

    Returns:
      GameSolution: The solution of the choreography game as a Büchi game.
    """
    game, accepting = choreography_game(client, services, pool_extra, cap,
                                        state_cap)
    return solve_buchi(game, accepting)
