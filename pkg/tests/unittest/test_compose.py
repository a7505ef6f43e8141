"""
Unit tests for service composition in the freshvar package.
"""

from __future__ import absolute_import

import pytest

from freshvar import Cfva, Label, Transition, fixture, validate, \
    async_product, synthesize, replay, parse_trace, monitor_cfva, \
    choreography_game, choreography, Orchestrator, Refusal, ChoicePosition, \
    ABELARD, ELOISE, AutomatonFormatError, TraceDivergedError, \
    StateExplosionError

from ..utils.simplified_test_function import simplified_test_function


def _cart_services():
    return [fixture('cart-cart'), fixture('cart-search')]


def _loop(polarity_labels, refresh=None):
    return Cfva(states=['c0'], initial=['c0'], accepting=None,
                transitions=[('c0', label, 'c0') for label in polarity_labels],
                refresh=refresh)


def test_async_product():
    """
    Test the asynchronous product of the shopping cart services.
    """
    product = async_product(_cart_services())
    assert validate(product) == []
    assert len(product.states) == 6 * 4
    assert len(product.components) == 2
    assert product.initial == frozenset(['(q0,r0)'])
    assert product.state_tuple('(q0,r0)') == ('q0', 'r0')
    assert product.refreshed_at('(q0,r0)') == frozenset(['z', 'w'])
    tr = Transition('(q0,r0)', Label.parse('?Search'), '(q0,r0a)')
    assert tr in product.transitions
    assert product.component_of(tr) == 1
    assert product.project(tr) == (1, Transition('r0', tr.label, 'r0a'))


def test_async_product_renames_apart():
    """
    Test that the variables of the services are renamed apart in order.
    """
    search = fixture('cart-search')
    product = async_product([search, search])
    assert product.components[0].variables == frozenset(['w'])
    assert len(product.variables) == 2
    assert not (product.components[0].variables &
                product.components[1].variables)


def test_async_product_self_loop():
    """
    Test that a self-loop offered by several components is attributed to the
    first one.
    """
    loop = _loop(['!a'])
    product = async_product([loop, loop])
    [tr] = product.transitions
    assert product.component_of(tr) == 0


def test_async_product_errors():
    """
    Test the errors of the asynchronous product.
    """
    with pytest.raises(ValueError):
        async_product([])
    with pytest.raises(StateExplosionError):
        async_product(_cart_services(), cap=5)


def test_synthesize_cart():
    """
    Test that the cart and the search service can serve the client.
    """
    orchestrator = synthesize(fixture('cart-client'), _cart_services())
    assert isinstance(orchestrator, Orchestrator)
    assert orchestrator
    assert len(orchestrator) > 0
    components = orchestrator.product.components
    for p, d in orchestrator.items():
        assert orchestrator.game.player(p) == ELOISE
        assert d.transition in components[d.service].transitions
        assert orchestrator.delegate(p) == d
        assert orchestrator.successor(p) in orchestrator.game


TESTCASES_REFUSAL = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Cart only: the search request cannot be served",
        dict(services=[fixture('cart-cart')],
             exp_labels=['!Create_Cart', '!$y', '!Search']),
        None, None, True
    ),
    (
        "No services: the first request cannot be served",
        dict(services=[], exp_labels=['!Create_Cart']),
        None, None, True
    ),
    (
        "Search only: the cart cannot be created",
        dict(services=[fixture('cart-search')],
             exp_labels=['!Create_Cart']),
        None, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_REFUSAL)
@simplified_test_function
def test_synthesize_refusal(testcase, services, exp_labels):
    """
    Test the losing client play of a refused synthesis.
    """

    # The code to be tested
    result = synthesize(fixture('cart-client'), services)

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert isinstance(result, Refusal)
    assert not result
    labels = [str(m.transition.label) for m in result.client_moves]
    assert labels == exp_labels
    last, move = result.path[-1]
    assert move is None
    assert result.game.player(last) == ELOISE
    assert result.game.moves(last) == []


def test_synthesize_invalid():
    """
    Test that invalid automata are rejected.
    """
    client = Cfva(states=['c'], initial=['c'], accepting=None,
                  transitions=[('c', 'a', 'c')])
    with pytest.raises(AutomatonFormatError):
        synthesize(client, _cart_services())


def test_synthesize_idle_client():
    """
    Test that a client without moves needs no delegation.
    """
    client = Cfva(states=['c'], initial=['c'], accepting=None,
                  transitions=[])
    result = synthesize(client, [])
    assert result
    assert len(result) == 0


def test_parse_trace():
    """
    Test the parsing of client traces.
    """
    assert parse_trace("!Search  !i1\n?Num") == [
        ('!', 'Search'), ('!', 'i1'), ('?', 'Num')]
    assert parse_trace("") == []
    with pytest.raises(ValueError):
        parse_trace("Search")
    with pytest.raises(ValueError):
        parse_trace("!")


TESTCASES_REPLAY = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Create a cart, search and receive the result",
        dict(trace="!Create_Cart !c1 !Search !i1 ?Num ?i1",
             exp_services=[0, 0, 1, 1, 1, 1], exp_step=None),
        None, None, True
    ),
    (
        "Create a cart and close it",
        dict(trace="!Create_Cart !c1 ?End_Cart ?c1",
             exp_services=[0, 0, 0, 0], exp_step=None),
        None, None, True
    ),
    (
        "Search fails",
        dict(trace="!Create_Cart !c1 !Search !i1 ?Fail !Search !i2",
             exp_services=[0, 0, 1, 1, 1, 1, 1], exp_step=None),
        None, None, True
    ),
    (
        "Add to the cart before searching",
        dict(trace="!Create_Cart !c1 !Add_Cart",
             exp_services=None, exp_step=3),
        TraceDivergedError, None, True
    ),
    (
        "Closing a different cart",
        dict(trace="!Create_Cart !c1 ?End_Cart ?c2",
             exp_services=None, exp_step=4),
        TraceDivergedError, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_REPLAY)
@simplified_test_function
def test_replay(testcase, trace, exp_services, exp_step):
    """
    Test the replay of client traces through the cart orchestrator.
    """
    orchestrator = synthesize(fixture('cart-client'), _cart_services())

    # The code to be tested
    try:
        delegations = replay(orchestrator, trace)
    except TraceDivergedError as exc:
        assert exc.step == exp_step
        raise

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert [d.service for d in delegations] == exp_services
    assert delegations[0].letter == 'Create_Cart'


def test_replay_pairs():
    """
    Test that replay() accepts parsed traces.
    """
    orchestrator = synthesize(fixture('cart-client'), _cart_services())
    delegations = replay(orchestrator, [('!', 'Create_Cart'), ('!', 'c1')])
    assert [str(d.transition.label) for d in delegations] == \
        ['?Create_Cart', '?$z']


def test_monitor_cfva():
    """
    Test the relay monitor.
    """
    monitor = monitor_cfva()
    assert validate(monitor) == []
    assert monitor.refreshed_at('p0') == frozenset(['x'])


def test_choreography_game():
    """
    Test that the client moves are put behind choice positions.
    """
    client = _loop(['?$u', '!$v'], refresh={'u': ['c0'], 'v': ['c0']})
    game, accepting = choreography_game(client, [])
    assert accepting
    for p in accepting:
        assert isinstance(p, ChoicePosition)
        assert game.player(p) == ABELARD
        assert game.graph.has_edge(p.eloise, p)
        assert game.graph.out_degree(p.eloise) == 1


TESTCASES_CHOREOGRAPHY = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Client receiving and sending forever",
        dict(client=_loop(['?$u', '!$v'],
                          refresh={'u': ['c0'], 'v': ['c0']}),
             services=[], exp_winner=ELOISE),
        None, None, True
    ),
    (
        "Client that only sends",
        dict(client=_loop(['!$v'], refresh={'v': ['c0']}),
             services=[], exp_winner=ABELARD),
        None, None, True
    ),
    (
        "Client with a receiving service",
        dict(client=_loop(['?$u', '!$v'],
                          refresh={'u': ['c0'], 'v': ['c0']}),
             services=[_loop(['?$w'], refresh={'w': ['c0']})],
             exp_winner=ELOISE),
        None, None, True
    ),
    (
        "Client sending once, service relaying",
        dict(client=Cfva(states=['c0', 'c1'], initial=['c0'],
                         accepting=None, transitions=[('c0', '!$v', 'c1')]),
             services=[_loop(['?$w', '!$t'],
                             refresh={'w': ['c0'], 't': ['c0']})],
             exp_winner=ABELARD),
        None, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_CHOREOGRAPHY)
@simplified_test_function
def test_choreography(testcase, client, services, exp_winner):
    """
    Test the choreography game.
    """

    # The code to be tested
    solution = choreography(client, services)

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert solution.winner == exp_winner
    if exp_winner == ELOISE:
        for p, (move, succ) in solution.strategy.items():
            assert solution.game.graph.has_edge(p, succ)
