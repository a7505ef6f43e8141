"""
Unit tests for the run semantics of the freshvar package.
"""

from __future__ import absolute_import

import itertools

import pytest

from freshvar import GroundSubstitution, Configuration, EpsFva, Run, \
    fixture, step, eps_closure, membership, accepting_run, membership_n, \
    replay_run, nonempty, sample_language, initial_configurations, Fva

from ..utils.simplified_test_function import simplified_test_function
from ..utils.random_automata import random_fva, random_eps_fva, SEEDS

TESTCASES_MEMBERSHIP = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Pairs of equal letters: empty word",
        dict(name='a1', word='', exp_result=True),
        None, None, True
    ),
    (
        "Pairs of equal letters: a a b b",
        dict(name='a1', word='a a b b', exp_result=True),
        None, None, True
    ),
    (
        "Pairs of equal letters: a a a a",
        dict(name='a1', word='a a a a', exp_result=True),
        None, None, True
    ),
    (
        "Pairs of equal letters: a b",
        dict(name='a1', word='a b', exp_result=False),
        None, None, True
    ),
    (
        "Pairs of equal letters: odd length",
        dict(name='a1', word='a a b', exp_result=False),
        None, None, True
    ),
    (
        "Some letter twice: a a",
        dict(name='a2', word='a a', exp_result=True),
        None, None, True
    ),
    (
        "Some letter twice: a b c b",
        dict(name='a2', word='a b c b', exp_result=True),
        None, None, True
    ),
    (
        "Some letter twice: a b c",
        dict(name='a2', word='a b c', exp_result=False),
        None, None, True
    ),
    (
        "Some letter twice: empty word",
        dict(name='a2', word='', exp_result=False),
        None, None, True
    ),
    (
        "Tuple labels: a b a b",
        dict(name='nfva-appendix', word='a b a b', exp_result=True),
        None, None, True
    ),
    (
        "Tuple labels: a a",
        dict(name='nfva-appendix', word='a a', exp_result=True),
        None, None, True
    ),
    (
        "Tuple labels: a b a c",
        dict(name='nfva-appendix', word='a b a c', exp_result=False),
        None, None, True
    ),
    (
        "Tuple labels: b b",
        dict(name='nfva-appendix', word='b b', exp_result=False),
        None, None, True
    ),
    (
        "Tuple labels: empty word",
        dict(name='nfva-appendix', word='', exp_result=True),
        None, None, True
    ),
    (
        "Letter a only: a",
        dict(name='single-a', word='a', exp_result=True),
        None, None, True
    ),
    (
        "Letter a only: b",
        dict(name='single-a', word='b', exp_result=False),
        None, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_MEMBERSHIP)
@simplified_test_function
def test_membership(testcase, name, word, exp_result):
    """
    Test membership() and accepting_run() on the shipped examples.
    """
    a = fixture(name)
    word = tuple(word.split())

    # The code to be tested
    result = membership(a, word)
    run = accepting_run(a, word)

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert result is exp_result
    if exp_result:
        assert run is not None
        assert tuple(run.letters) == word
        assert replay_run(a, run)
    else:
        assert run is None


def test_step():
    """
    Test that a step binds a free variable and that refreshing drops it.
    """
    a = fixture('a1')
    c0 = Configuration('p0', GroundSubstitution.EMPTY)
    succs = step(a, c0, 'c')
    c1 = Configuration('p1', GroundSubstitution({'x': 'c'}))
    assert succs == frozenset([c1])
    assert step(a, c1, 'c') == frozenset([c0])
    assert step(a, c1, 'd') == frozenset()


def test_eps_closure():
    """
    Test that empty-label moves drop the bindings refreshed at their target.
    """
    e = EpsFva(states=['q0', 'q1', 'q2'], initial=['q0'], accepting=['q2'],
               transitions=[('q0', '$x', 'q1'), ('q1', '@eps', 'q2')],
               refresh={'x': ['q2']})
    c1 = Configuration('q1', GroundSubstitution({'x': 'a'}))
    closure = eps_closure(e, [c1])
    assert closure == frozenset(
        [c1, Configuration('q2', GroundSubstitution.EMPTY)])
    assert membership(e, ['a'])
    run = accepting_run(e, ['a'])
    assert run.letters == ('a', None)
    assert replay_run(e, run)


def test_initial_configurations():
    """
    Test that runs start with empty memory in every initial state.
    """
    a = Fva(states=['q1', 'q0'], initial=['q1', 'q0'], accepting=[],
            transitions=[])
    assert initial_configurations(a) == [
        Configuration('q0', GroundSubstitution.EMPTY),
        Configuration('q1', GroundSubstitution.EMPTY)]


def test_replay_run_rejects():
    """
    Test that replay_run() rejects runs that do not follow the automaton.
    """
    a = fixture('a1')
    run = accepting_run(a, ['a', 'a'])
    assert replay_run(a, run)
    bad_letter = Run(run.configurations, ('a', 'b'))
    assert not replay_run(a, bad_letter)
    truncated = Run(run.configurations[:2], run.letters[:1])
    assert not replay_run(a, truncated)
    assert not replay_run(a, Run((), ()))


def test_membership_n_type():
    """
    Test that membership_n() only accepts n-FVAs.
    """
    assert membership_n(fixture('nfva-appendix'), ['a', 'z'])
    with pytest.raises(TypeError):
        membership_n(fixture('a1'), ['a', 'a'])


@pytest.mark.parametrize(
    "name, exp_result", [
        ('a1', True),
        ('single-a', True),
        ('universal-loop', True),
    ])
def test_nonempty(name, exp_result):
    """
    Test nonempty() on the shipped examples.
    """
    assert nonempty(fixture(name)) is exp_result


def test_nonempty_unreachable():
    """
    Test that an unreachable accepting state makes the language empty.
    """
    a = Fva(states=['q0', 'q1'], initial=['q0'], accepting=['q1'],
            transitions=[('q1', 'a', 'q0')])
    assert not nonempty(a)


def test_sample_language():
    """
    Test the language sampling oracle on words of pairs of equal letters.
    """
    words = sample_language(fixture('a1'), ['a', 'b'], 4)
    assert words == frozenset([
        (),
        ('a', 'a'), ('b', 'b'),
        ('a', 'a', 'a', 'a'), ('a', 'a', 'b', 'b'),
        ('b', 'b', 'a', 'a'), ('b', 'b', 'b', 'b')])
    assert sample_language(fixture('a1'), ['a'], 0) == frozenset([()])
    with pytest.raises(ValueError):
        sample_language(fixture('a1'), ['a'], -1)


@pytest.mark.parametrize("seed", SEEDS)
def test_random_membership_agrees(seed):
    """
    Test that membership(), accepting_run() and the sampling oracle agree on
    random automata.
    """
    for a in (random_fva(seed), random_eps_fva(seed)):
        pool = ['a', 'b', 'c']
        sampled = sample_language(a, pool, 4)
        for n in range(5):
            for word in itertools.product(pool, repeat=n):
                member = membership(a, word)
                assert member == (word in sampled)
                run = accepting_run(a, word)
                assert (run is not None) == member
                if run is not None:
                    assert replay_run(a, run)
