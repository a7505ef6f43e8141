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
The ground-simulation game between a client and a service automaton.

Abelard plays the client: he picks a client transition and, for a send,
instantiates its free variable. Eloise plays the service: she answers with a
service transition that exchanges the same letter. Instantiations are drawn
from a finite `LetterPool`, which keeps the game finite.

The game graph is an explicit networkx DiGraph over hash-consed positions;
node attribute 'player' is `ABELARD` or `ELOISE`, edge attribute 'move' is
the `Move` taken.
"""

import logging
from collections import namedtuple, deque

import networkx as nx

from ._core import GroundSubstitution, Transition, RECV, SEND, \
    label_components, rename_apart
from ._exceptions import PoolOverflowError
from ._utils import fresh_name, fresh_letters, explore

__all__ = ['DEFAULT_POSITION_CAP', 'ABELARD', 'ELOISE', 'Side', 'Pending',
           'AbelardPosition', 'EloisePosition', 'ChoicePosition', 'Move',
           'LetterPool', 'letter_pool', 'position_key', 'Game', 'build_game',
           'attractor', 'Strategy', 'GameSolution', 'solve_safety',
           'losing_play', 'gsimulates', 'solve_buchi', 'RandomPlay',
           'play_random']

_LOG = logging.getLogger(__name__)

#: Default maximum number of positions of a game.
DEFAULT_POSITION_CAP = 1000000

#: Player owning the client side of the game.
ABELARD = 'abelard'

#: Player owning the service side of the game.
ELOISE = 'eloise'

#: The substitution and state of one automaton in a position.
Side = namedtuple('Side', ['substitution', 'state'])

#: Abelard position: both automata are idle.
AbelardPosition = namedtuple('AbelardPosition', ['client', 'service'])

#: Eloise position: the client has moved and `pending` awaits a match.
EloisePosition = namedtuple('EloisePosition', ['client', 'service',
                                               'pending'])

#: Abelard position interposed before the client moves of the choreography
#: game; `eloise` is the Eloise position it was split from.
ChoicePosition = namedtuple('ChoicePosition', ['eloise'])


class Pending(namedtuple('Pending', ['substitution', 'label'])):
    """
    The client message awaiting a match: the polarized label of the client
    transition and the client substitution restricted to its variables.
    """

    __slots__ = ()

    @property
    def value(self):
        """
        string: The letter of the message, or `None` for a receive on a free
        variable.
        """
        return self.substitution.apply(self.label)


#: A move of the game.
#:
#: `rule` is one of 'client-receive', 'client-send' (Abelard), or
#: 'service-receive', 'service-send' (Eloise). `transition` is the transition
#: of the moving automaton. `instantiation` binds the free variable of a send
#: to a pool letter. `binding` binds a free variable of the receiving side to
#: the letter received. `letter` is the letter exchanged, `None` for a
#: client receive on a free variable.
Move = namedtuple('Move', ['rule', 'transition', 'instantiation', 'binding',
                           'letter'])


def position_key(position):
    """
    Canonical sort key of positions.
    """
    return repr(position)


class LetterPool(object):
    """
    The finite set of letters from which the players instantiate variables.

    It holds the letters of both automata, one synthetic letter per ordered
    pair of a client and a service variable, topped up with further synthetic
    letters so that there are more synthetic letters than variables in both
    automata. This guarantees a letter that occurs in no substitution of the
    current position, which stands for any letter not seen so far.
    """

    def __init__(self, automaton_letters, synthetic):
        self._automaton_letters = frozenset(automaton_letters)
        self._synthetic = tuple(synthetic)
        self._letters = tuple(sorted(self._automaton_letters)) + \
            self._synthetic

    @property
    def letters(self):
        """tuple of string: All letters, automaton letters first."""
        return self._letters

    @property
    def automaton_letters(self):
        """frozenset of string: The letters of the automata."""
        return self._automaton_letters

    @property
    def synthetic(self):
        """tuple of string: The minted letters."""
        return self._synthetic

    def __iter__(self):
        return iter(self._letters)

    def __len__(self):
        return len(self._letters)

    def __contains__(self, letter):
        return letter in self._automaton_letters or \
            letter in self._synthetic

    def __repr__(self):
        return "LetterPool({!r})".format(list(self._letters))


def letter_pool(client, service, extra=0):
    """
    Return the letter pool of the game of `client` against `service`.

    Parameters:

      client (Fva): The simulated automaton.

      service (Fva): The simulating automaton.

      extra (int): Number of additional synthetic letters.

    Raises:
      ValueError: `extra` is negative.
    """
    if extra < 0:
        raise ValueError("Invalid pool extra: {}".format(extra))
    sigma = client.letters | service.letters
    taken = set(sigma)
    synthetic = []
    for left, right in ((client, service), (service, client)):
        for x in sorted(left.variables):
            for y in sorted(right.variables):
                token = fresh_name('#p({},{})'.format(x, y), taken)
                taken.add(token)
                synthetic.append(token)
    need = len(client.variables) + len(service.variables) + 1
    topup = max(0, need - len(synthetic)) + extra
    synthetic.extend(fresh_letters(taken, topup))
    return LetterPool(sigma, synthetic)


class Game(object):
    """
    A finite game graph with its start position.
    """

    def __init__(self, graph, start, pool=None, client=None, service=None):
        self._graph = graph
        self._start = start
        self._pool = pool
        self._client = client
        self._service = service
        self._moves = {}

    @property
    def graph(self):
        """networkx.DiGraph: The position graph."""
        return self._graph

    @property
    def start(self):
        """The start position."""
        return self._start

    @property
    def pool(self):
        """LetterPool: The instantiation pool."""
        return self._pool

    @property
    def client(self):
        """Fva: The automaton played by Abelard."""
        return self._client

    @property
    def service(self):
        """Fva: The automaton played by Eloise."""
        return self._service

    def player(self, position):
        """
        Return the player to move at a position.
        """
        return self._graph.nodes[position]['player']

    def moves(self, position):
        """
        Return the moves at a position as a list of `(move, successor)`
        pairs, in canonical successor order.
        """
        result = self._moves.get(position)
        if result is None:
            result = sorted(
                ((data['move'], succ) for _, succ, data in
                 self._graph.out_edges(position, data=True)),
                key=lambda pair: position_key(pair[1]))
            self._moves[position] = result
        return result

    def __len__(self):
        return self._graph.number_of_nodes()

    def __contains__(self, position):
        return position in self._graph

    def __repr__(self):
        return "Game(positions={}, moves={})".format(
            self._graph.number_of_nodes(), self._graph.number_of_edges())


def _variables_of(label):
    return frozenset(lab.value for lab in label_components(label)
                     if lab.is_variable)


def _client_moves(client, side, pool, polarized):
    s1, q1 = side
    for label, target in client.out(side.state):
        tr = Transition(q1, label, target)
        if polarized and label.polarity == RECV:
            pending = Pending(s1.restrict(_variables_of(label)), label)
            yield (Move('client-receive', tr, GroundSubstitution.EMPTY,
                        GroundSubstitution.EMPTY, pending.value),
                   Side(s1.drop(client.refreshed_at(target)), target),
                   pending)
            continue
        if label.is_variable and label.value not in s1:
            gammas = [GroundSubstitution({label.value: c}) for c in pool]
        else:
            gammas = [GroundSubstitution.EMPTY]
        for gamma in gammas:
            full = s1.merge(gamma)
            pending = Pending(full.restrict(_variables_of(label)), label)
            yield (Move('client-send', tr, gamma, GroundSubstitution.EMPTY,
                        pending.value),
                   Side(full.drop(client.refreshed_at(target)), target),
                   pending)


def _read(substitution, label, value):
    """
    Return the binding under which `label` denotes `value` given
    `substitution`, or `None` if it cannot.
    """
    if label.is_letter:
        return GroundSubstitution.EMPTY if label.value == value else None
    bound = substitution.get(label.value)
    if bound is None:
        return GroundSubstitution({label.value: value})
    return GroundSubstitution.EMPTY if bound == value else None


def _service_moves(client, service, position, pool, polarized):
    c_side, s_side, pending = position
    s2, q2 = s_side
    client_receives = polarized and pending.label.polarity == RECV
    for label, target in service.out(q2):
        tr = Transition(q2, label, target)
        if client_receives:
            if label.polarity != SEND:
                continue
            if label.is_variable and label.value not in s2:
                gammas = [GroundSubstitution({label.value: c}) for c in pool]
            else:
                gammas = [GroundSubstitution.EMPTY]
            for gamma in gammas:
                value = gamma.apply(label) or s2.apply(label)
                sigma = _read(pending.substitution, pending.label, value)
                if sigma is None:
                    continue
                s1, q1 = c_side
                new_client = Side(
                    s1.merge(sigma).drop(client.refreshed_at(q1)), q1)
                new_service = Side(
                    s2.merge(gamma).drop(service.refreshed_at(target)),
                    target)
                yield (Move('service-send', tr, gamma, sigma, value),
                       AbelardPosition(new_client, new_service))
        else:
            if polarized and label.polarity != RECV:
                continue
            value = pending.value
            sigma = _read(s2, label, value)
            if sigma is None:
                continue
            new_service = Side(
                s2.merge(sigma).drop(service.refreshed_at(target)), target)
            yield (Move('service-receive', tr, GroundSubstitution.EMPTY,
                        sigma, value),
                   AbelardPosition(c_side, new_service))


def build_game(client, service, pool=None, pool_extra=0,
               cap=DEFAULT_POSITION_CAP, polarized=True, start=None):
    """
    Build the reachable position graph of the simulation game of `client`
    by `service`.

    At an Abelard position, Abelard picks a client transition. A receive
    leaves the message pending with the client's current binding of its
    variable. A send with a free variable is instantiated with each pool
    letter in turn. Bindings refreshed at the client's target state are
    dropped.

    At an Eloise position, Eloise answers a pending send with a service
    receive that reads its letter, binding a free service variable if
    needed. She answers a pending receive with a service send, instantiating
    a free service variable from the pool; the client binds its free
    variable to the letter sent, and drops the bindings refreshed at its
    current state. Bindings refreshed at the service's target state are
    dropped.

    Parameters:

      client (Fva): Automaton played by Abelard. Variables must be disjoint
        from those of `service`.

      service (Fva): Automaton played by Eloise.

      pool (LetterPool): The instantiation pool. Defaults to
        `letter_pool(client, service, pool_extra)`.

      pool_extra (int): Additional synthetic letters for the default pool.

      cap (int): Maximum number of positions.

      polarized (bool): Play communicating automata: client receives are
        matched by service sends and client sends by service receives. If
        false, labels carry no polarity and every client transition is
        played like a send matched by a service transition reading the same
        letter.

      start (AbelardPosition): The start position. Defaults to both initial
        states (the smallest, if several) with empty substitutions.

    Returns:
      Game: The game.

    Raises:
      ValueError: The variables of the automata are not disjoint.
      PoolOverflowError: More than `cap` positions are reachable.
    """
    shared = client.variables & service.variables
    if shared:
        raise ValueError("Invalid game automata: shared variables {}".format(
            ', '.join(sorted(shared))))
    if pool is None:
        pool = letter_pool(client, service, pool_extra)
    if start is None:
        start = AbelardPosition(
            Side(GroundSubstitution.EMPTY, min(client.initial)),
            Side(GroundSubstitution.EMPTY, min(service.initial)))

    def expand(position):
        if isinstance(position, AbelardPosition):
            for move, new_client, pending in _client_moves(
                    client, position.client, pool, polarized):
                yield move, EloisePosition(new_client, position.service,
                                           pending)
        else:
            for move, succ in _service_moves(client, service, position, pool,
                                             polarized):
                yield move, succ

    positions, edges = explore([start], expand, cap, "Game", PoolOverflowError)
    graph = nx.DiGraph()
    for p in positions:
        graph.add_node(p, player=ABELARD if isinstance(p, AbelardPosition)
                       else ELOISE)
    for src, move, dst in edges:
        if not graph.has_edge(src, dst):
            graph.add_edge(src, dst, move=move)
    _LOG.debug("build_game: %d positions, %d moves, pool of %d letters",
               graph.number_of_nodes(), graph.number_of_edges(), len(pool))
    return Game(graph, start, pool, client, service)


def attractor(graph, target, player):
    """
    Compute the attractor of a set of positions for a player.

    The attractor is the set of positions from which `player` can force a
    visit to `target`: `target` itself, the positions of `player` with a
    successor in the attractor, and the positions of the opponent all of
    whose successors are in it. Opponent positions without successors are
    not attracted.

    Parameters:

      graph (networkx.DiGraph): Graph with node attribute 'player'.

      target (iterable): The target positions.

      player (string): `ABELARD` or `ELOISE`.

    Returns:
      dict: Map from each attracted position to its rank, the number of
      moves within which `player` forces the visit.
    """
    ranks = {}
    queue = deque()
    for p in target:
        if p in graph and p not in ranks:
            ranks[p] = 0
            queue.append(p)
    pending = {}
    while queue:
        p = queue.popleft()
        for pred in graph.predecessors(p):
            if pred in ranks:
                continue
            if graph.nodes[pred]['player'] == player:
                ranks[pred] = ranks[p] + 1
                queue.append(pred)
            else:
                left = pending.get(pred)
                if left is None:
                    left = graph.out_degree(pred)
                left -= 1
                pending[pred] = left
                if left == 0:
                    ranks[pred] = ranks[p] + 1
                    queue.append(pred)
    return ranks


class Strategy(object):
    """
    A positional strategy of Eloise: a map from Eloise positions to the move
    she plays and the position it leads to.
    """

    def __init__(self, choices=None):
        self._choices = dict(choices or {})

    def choice(self, position):
        """
        Return the `(move, successor)` pair chosen at a position.

        Raises:
          KeyError: The strategy does not cover the position.
        """
        return self._choices[position]

    def positions(self):
        """
        Return the covered positions in canonical order.
        """
        return sorted(self._choices, key=position_key)

    def items(self):
        """
        Return the `(position, (move, successor))` pairs in canonical order.
        """
        return [(p, self._choices[p]) for p in self.positions()]

    def __contains__(self, position):
        return position in self._choices

    def __len__(self):
        return len(self._choices)

    def __repr__(self):
        return "Strategy(positions={})".format(len(self._choices))


class GameSolution(object):
    """
    The solution of a game.

    It is true if Eloise wins from the start position.

    Attributes:

      game (Game): The solved game.

      winner (string): `ABELARD` or `ELOISE`.

      strategy (Strategy): A winning strategy for Eloise, covering the Eloise
        positions reachable from the start position when she follows it.
        Empty if Abelard wins.

      ranks (dict): Ranks of the attractor computed by the solver. For
        safety games, Abelard's attractor of the positions where Eloise
        loses; for Büchi games, Eloise's attractor of her recurrence set.
    """

    def __init__(self, game, winner, strategy, ranks):
        self.game = game
        self.winner = winner
        self.strategy = strategy
        self.ranks = ranks

    @property
    def eloise_wins(self):
        """bool: Eloise wins from the start position."""
        return self.winner == ELOISE

    def __bool__(self):
        return self.eloise_wins

    __nonzero__ = __bool__  # Python 2

    def __repr__(self):
        return "GameSolution(winner={!r}, strategy={})".format(
            self.winner, len(self.strategy))


def _extract_strategy(game, graph, choose):
    """
    Follow `choose` at Eloise positions and all moves at Abelard positions
    from the start, recording the choices.
    """
    choices = {}
    seen = set([game.start])
    queue = deque([game.start])
    while queue:
        p = queue.popleft()
        if graph.nodes[p]['player'] == ELOISE:
            chosen = choose(p)
            choices[p] = chosen
            succs = [chosen[1]]
        else:
            succs = [succ for _, succ in game.moves(p)]
        for succ in succs:
            if succ not in seen:
                seen.add(succ)
                queue.append(succ)
    return Strategy(choices)


def solve_safety(game, bad=()):
    """
    Solve a game in which Eloise loses when she cannot move or when a play
    reaches a bad position.

    Parameters:

      game (Game): The game.

      bad (iterable): Positions losing for Eloise.

    Returns:
      GameSolution: The winner at the start position and, if Eloise wins, a
      strategy that picks at each Eloise position the successor outside
      Abelard's attractor that comes first in canonical order.
    """
    graph = game.graph
    dead = [p for p in graph if graph.nodes[p]['player'] == ELOISE and
            graph.out_degree(p) == 0]
    ranks = attractor(graph, list(dead) + list(bad), ABELARD)
    if game.start in ranks:
        _LOG.debug("solve_safety: Abelard wins, start at rank %d",
                   ranks[game.start])
        return GameSolution(game, ABELARD, Strategy(), ranks)

    def choose(p):
        for move, succ in game.moves(p):
            if succ not in ranks:
                return move, succ
        raise AssertionError(
            "Eloise position outside the attractor has no safe move")

    strategy = _extract_strategy(game, graph, choose)
    _LOG.debug("solve_safety: Eloise wins, strategy covers %d positions",
               len(strategy))
    return GameSolution(game, ELOISE, strategy, ranks)


def losing_play(solution):
    """
    Return a play along which Abelard defeats Eloise, following decreasing
    attractor ranks.

    Eloise's moves inside the attractor are followed as well (she has no way
    out), so the play ends at a position where Eloise is stuck or at a bad
    position.

    Returns:
      list of tuple: The `(position, move)` steps, the last one with move
      `None`; empty if Eloise wins.
    """
    if solution.eloise_wins:
        return []
    game = solution.game
    ranks = solution.ranks
    p = game.start
    play = []
    while ranks[p] > 0:
        candidates = [(move, succ) for move, succ in game.moves(p)
                      if succ in ranks and ranks[succ] < ranks[p]]
        move, succ = min(candidates, key=lambda pair: (ranks[pair[1]],
                                                       position_key(pair[1])))
        play.append((p, move))
        p = succ
    play.append((p, None))
    return play


def gsimulates(client, service, pool_extra=0, cap=DEFAULT_POSITION_CAP):
    """
    Decide whether a communicating automaton ground-simulates another one.

    The variables of `service` are renamed apart from those of `client`
    first.

    Returns:
      GameSolution: True if `service` simulates `client`, with Eloise's
      winning strategy.
    """
    client, service = rename_apart(client, service)
    game = build_game(client, service, pool_extra=pool_extra, cap=cap)
    return solve_safety(game)


def solve_buchi(game, accepting):
    """
    Solve a game in which Eloise wins the infinite plays that visit
    `accepting` infinitely often. A player who cannot move loses.

    The recurrence set is the largest subset of `accepting` from which
    Eloise can force a further visit to it; she wins on her attractor of the
    positions from which she can force a move into it.

    Parameters:

      game (Game): The game.

      accepting (iterable): The accepting positions.

    Returns:
      GameSolution: The winner at the start position and, if Eloise wins, a
      strategy following decreasing ranks towards the recurrence set.
    """
    total = game.graph.copy()
    accepting = set(p for p in accepting if p in total)
    for p in list(total):
        if total.out_degree(p) == 0:
            total.add_edge(p, p, move=None)
            if total.nodes[p]['player'] == ABELARD:
                accepting.add(p)
            else:
                accepting.discard(p)

    def cpre(region):
        result = set()
        for p in total:
            succs = list(total.successors(p))
            if total.nodes[p]['player'] == ELOISE:
                if any(s in region for s in succs):
                    result.add(p)
            elif all(s in region for s in succs):
                result.add(p)
        return result

    recur = set(accepting)
    rounds = 0
    while True:
        rounds += 1
        ranks = attractor(total, cpre(recur), ELOISE)
        shrunk = set(p for p in recur if p in ranks)
        if shrunk == recur:
            break
        recur = shrunk
    _LOG.debug("solve_buchi: recurrence set of %d positions after %d rounds",
               len(recur), rounds)
    if game.start not in ranks:
        return GameSolution(game, ABELARD, Strategy(), ranks)

    def choose(p):
        moves = [(data['move'], succ) for _, succ, data in
                 total.out_edges(p, data=True)]
        moves.sort(key=lambda pair: position_key(pair[1]))
        if ranks[p] == 0:
            for move, succ in moves:
                if succ in recur:
                    return move, succ
        for move, succ in moves:
            if succ in ranks and ranks[succ] < ranks[p]:
                return move, succ
        raise AssertionError(
            "Eloise position in the winning region has no progress move")

    strategy = _extract_strategy(game, total, choose)
    return GameSolution(game, ELOISE, strategy, ranks)


#: Outcome of `play_random()`: the positions visited and whether Eloise was
#: left without a strategy move.
RandomPlay = namedtuple('RandomPlay', ['positions', 'stranded'])


def play_random(game, strategy, rng, max_len):
    """
    Play a strategy for Eloise against an Abelard choosing his moves at
    random.

    Parameters:

      game (Game): The game.

      strategy (Strategy): Eloise's strategy.

      rng (random.Random): Source of Abelard's choices.

      max_len (int): Maximum number of moves.

    Returns:
      RandomPlay: The play. It is stranded if it reaches an Eloise position
      that the strategy does not cover or where the chosen move does not
      exist.
    """
    p = game.start
    positions = [p]
    for _ in range(max_len):
        if game.player(p) == ELOISE:
            if p not in strategy:
                return RandomPlay(positions, True)
            move, succ = strategy.choice(p)
            if not game.graph.has_edge(p, succ):
                return RandomPlay(positions, True)
        else:
            moves = game.moves(p)
            if not moves:
                break
            move, succ = rng.choice(moves)
        p = succ
        positions.append(p)
    return RandomPlay(positions, False)
