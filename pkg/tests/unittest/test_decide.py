"""
Unit tests for the decision procedures of the freshvar package.
"""

from __future__ import absolute_import

import itertools
import random

import pytest

from freshvar import Fva, EpsFva, fixture, universal, universality_witness, \
    find_nondeterminism, is_deterministic, dfva_universal, dfva_membership, \
    fva_simulates, contains_dfva, fa_containment, fa_containment_witness, \
    FA_IN_FVA, FVA_IN_FA, membership, sample_language, accessible_states, \
    NotDeterministicError, NotFiniteAutomatonError, union, intersect, \
    fresh_letters

from ..utils.simplified_test_function import simplified_test_function
from ..utils.random_automata import random_fva, random_fa, \
    random_small_fva, random_dfva, random_word, oracle_pool, SEEDS, \
    DETERMINISM_CORPUS, UNIVERSAL_CORPUS, SIMULATION_CORPUS, DFVA_CORPUS


def reference_nondeterministic(a):
    """
    Independent check of the syntactic determinism conditions: a single
    initial state, and at every accessible state either one transition
    labeled with a variable and nothing else, or transitions with pairwise
    distinct letters.
    """
    if len(a.initial) > 1:
        return True
    for q in accessible_states(a):
        labels = [tr.label for tr in a.transitions if tr.source == q]
        if any(lab.is_variable for lab in labels) and len(labels) > 1:
            return True
        values = [lab.value for lab in labels]
        if len(values) != len(set(values)):
            return True
    return False


TESTCASES_UNIVERSAL = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Refreshed variable loop",
        dict(name='universal-loop', exp_result=True, exp_length=None),
        None, None, True
    ),
    (
        "Single letter",
        dict(name='single-a', exp_result=False, exp_length=0),
        None, None, True
    ),
    (
        "Pairs of equal letters",
        dict(name='a1', exp_result=False, exp_length=1),
        None, None, True
    ),
    (
        "Some letter twice",
        dict(name='a2', exp_result=False, exp_length=0),
        None, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_UNIVERSAL)
@simplified_test_function
def test_universal(testcase, name, exp_result, exp_length):
    """
    Test universal() and universality_witness().
    """
    a = fixture(name)

    # The code to be tested
    result = universal(a)
    witness = universality_witness(a)

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert result is exp_result
    if exp_result:
        assert witness is None
    else:
        length, word = witness
        assert length == exp_length
        assert len(word) == length
        assert len(set(word)) == length
        assert not membership(a, word)


def test_universal_bound_variable():
    """
    Test that a loop on a variable that is never refreshed is not
    universal.
    """
    a = Fva(states=['q'], initial=['q'], accepting=['q'],
            transitions=[('q', '$x', 'q')])
    assert not universal(a)
    assert universality_witness(a)[0] == 2


def test_universal_periodic():
    """
    Test universality with a period longer than one.
    """
    a = Fva(states=['q0', 'q1'], initial=['q0'], accepting=['q0', 'q1'],
            transitions=[('q0', '$x', 'q1'), ('q1', '$y', 'q0')],
            refresh={'x': ['q1'], 'y': ['q0']})
    assert universal(a)
    assert dfva_universal(a)


@pytest.mark.parametrize("seed", UNIVERSAL_CORPUS)
def test_universal_corpus(seed):
    """
    Test that a universal automaton accepts random words, letters outside
    its own included, that the witness of a non-universal one is rejected,
    and that dfva_universal() agrees with universal().
    """
    a = random_small_fva(seed)
    if seed % 2:
        a = a.replace(accepting=a.states)
    if seed % 5 == 0:
        a = union(a, fixture('universal-loop'))
    rng = random.Random(seed)
    letters = sorted(a.letters) + fresh_letters(a.letters, 3)
    if universal(a):
        for _ in range(200):
            assert membership(a, random_word(rng, letters, 6))
    else:
        length, word = universality_witness(a)
        assert len(word) == length
        assert not membership(a, word)

    d = random_dfva(seed, variables=('x', 'y')[:1 + seed % 2])
    if seed % 3 == 0:
        d = d.replace(accepting=d.states)
    assert dfva_universal(d) == universal(d)


@pytest.mark.parametrize(
    "name, exp_offender", [
        ('a1', None),
        ('single-a', None),
        ('universal-loop', None),
        ('a2', 'q0'),
        ('dfva-counterexample', 'q0'),
    ])
def test_find_nondeterminism(name, exp_offender):
    """
    Test find_nondeterminism() on the shipped examples.
    """
    a = fixture(name)
    assert find_nondeterminism(a) == exp_offender
    assert is_deterministic(a) is (exp_offender is None)


def test_nondeterminism_initial_states():
    """
    Test that a second initial state is reported.
    """
    a = Fva(states=['q0', 'q1'], initial=['q0', 'q1'], accepting=['q1'],
            transitions=[])
    assert find_nondeterminism(a) == 'q1'


def test_nondeterminism_inaccessible():
    """
    Test that inaccessible states are not checked.
    """
    a = Fva(states=['q0', 'q1'], initial=['q0'], accepting=['q0'],
            transitions=[('q1', 'a', 'q0'), ('q1', 'a', 'q1')])
    assert is_deterministic(a)


@pytest.mark.parametrize("seed", DETERMINISM_CORPUS)
def test_random_determinism(seed):
    """
    Test find_nondeterminism() against an independent check, and that a
    deterministic automaton has a single run on random words.
    """
    rng = random.Random(seed)
    for a in (random_small_fva(seed), random_fva(seed, n_transitions=2),
              random_dfva(seed)):
        assert is_deterministic(a) is not reference_nondeterministic(a)
        if is_deterministic(a):
            letters = oracle_pool(a)
            for _ in range(100):
                word = random_word(rng, letters, 5)
                assert dfva_membership(a, word) == membership(a, word)


def test_dfva_universal():
    """
    Test dfva_universal() on deterministic examples.
    """
    assert dfva_universal(fixture('universal-loop'))
    assert not dfva_universal(fixture('a1'))
    assert not dfva_universal(fixture('single-a'))
    with pytest.raises(NotDeterministicError) as exc_info:
        dfva_universal(fixture('a2'))
    assert exc_info.value.state == 'q0'


def test_dfva_membership():
    """
    Test dfva_membership() against membership().
    """
    d = fixture('a1')
    pool = ['a', 'b']
    for n in range(5):
        for word in itertools.product(pool, repeat=n):
            assert dfva_membership(d, word) == membership(d, word)
    with pytest.raises(NotDeterministicError):
        dfva_membership(fixture('a2'), ['a', 'a'])


@pytest.mark.parametrize(
    "name_a, name_b, exp_result", [
        ('a1', 'a1', True),
        ('single-a', 'universal-loop', True),
        ('a1', 'universal-loop', True),
        ('universal-loop', 'a1', False),
        ('a2', 'universal-loop', True),
        ('universal-loop', 'single-a', False),
    ])
def test_fva_simulates(name_a, name_b, exp_result):
    """
    Test the simulation preorder on the shipped examples.
    """
    assert fva_simulates(fixture(name_a), fixture(name_b)) is exp_result


def test_fva_simulates_is_finer_than_containment():
    """
    Test a containment that is not a simulation: the choice between the two
    branches of the simulating automaton is made too early.
    """
    a = Fva(states=['p0', 'p1', 'p2', 'p3'], initial=['p0'],
            accepting=['p2', 'p3'],
            transitions=[('p0', 'a', 'p1'), ('p1', 'b', 'p2'),
                         ('p1', 'c', 'p3')])
    b = Fva(states=['q0', 'q1', 'q2', 'q3', 'q4'], initial=['q0'],
            accepting=['q3', 'q4'],
            transitions=[('q0', 'a', 'q1'), ('q0', 'a', 'q2'),
                         ('q1', 'b', 'q3'), ('q2', 'c', 'q4')])
    assert not fva_simulates(a, b)
    assert fva_simulates(b, a)


@pytest.mark.parametrize("seed", SIMULATION_CORPUS)
def test_simulation_corpus(seed):
    """
    Test on random automata that the simulation preorder is reflexive and
    transitive and implies language containment.
    """
    a = random_small_fva(seed)
    b = random_small_fva(seed + 20000)
    c = random_small_fva(seed + 40000)
    if seed % 3 == 0:
        b = union(a, b)
    assert fva_simulates(a, a)
    a_b = fva_simulates(a, b)
    if a_b:
        pool = oracle_pool(a, b)
        assert sample_language(a, pool, 4) <= sample_language(b, pool, 4)
    if a_b and fva_simulates(b, c):
        assert fva_simulates(a, c)


def test_contains_dfva():
    """
    Test containment in a deterministic automaton.
    """
    assert contains_dfva(fixture('single-a'), fixture('universal-loop'))
    assert not contains_dfva(fixture('universal-loop'), fixture('a1'))
    assert contains_dfva(fixture('a1'), fixture('a1'))
    with pytest.raises(NotDeterministicError):
        contains_dfva(fixture('a1'), fixture('dfva-counterexample'))


def test_contains_dfva_trims():
    """
    Test that a dead branch of the contained automaton does not matter.
    """
    a = Fva(states=['p0', 'p1', 'dead'], initial=['p0'], accepting=['p1'],
            transitions=[('p0', 'a', 'p1'), ('p0', 'b', 'dead')])
    d = fixture('single-a')
    assert contains_dfva(a, d)


@pytest.mark.parametrize("seed", DFVA_CORPUS)
def test_random_contains_dfva(seed):
    """
    Test contains_dfva() against the sampling oracle: a detected containment
    must hold on all sampled words.
    """
    a = random_small_fva(seed)
    d = random_dfva(seed + 200, variables=('x', 'y')[:1 + seed % 2])
    if seed % 4 == 0:
        a = intersect(a, d)
    pool = oracle_pool(a, d)
    if contains_dfva(a, d):
        assert sample_language(a, pool, 4) <= sample_language(d, pool, 4)


FA_AB = Fva(states=['f0', 'f1', 'f2'], initial=['f0'], accepting=['f2'],
            transitions=[('f0', 'a', 'f1'), ('f1', 'b', 'f2')])

FA_ANY_AB = Fva(states=['f0'], initial=['f0'], accepting=['f0'],
                transitions=[('f0', 'a', 'f0'), ('f0', 'b', 'f0')])


TESTCASES_FA_CONTAINMENT = [
    # desc, kwargs, exp_exc_types, exp_warn_types, condition
    (
        "Word a b in some letter twice: no",
        dict(a=fixture('a2'), f=FA_AB, direction=FA_IN_FVA,
             exp_witness=('a', 'b')),
        None, None, True
    ),
    (
        "Word a b in the universal loop",
        dict(a=fixture('universal-loop'), f=FA_AB, direction=FA_IN_FVA,
             exp_witness=None),
        None, None, True
    ),
    (
        "Words over a, b in pairs of equal letters: no",
        dict(a=fixture('a1'), f=FA_ANY_AB, direction=FA_IN_FVA,
             exp_witness=('a',)),
        None, None, True
    ),
    (
        "Single letter a in words over a, b",
        dict(a=fixture('single-a'), f=FA_ANY_AB, direction=FVA_IN_FA,
             exp_witness=None),
        None, None, True
    ),
    (
        "Single letter a in the word a b: no",
        dict(a=fixture('single-a'), f=FA_AB, direction=FVA_IN_FA,
             exp_witness=('a',)),
        None, None, True
    ),
    (
        "Pairs of equal letters in words over a, b: no",
        dict(a=fixture('a1'), f=FA_ANY_AB, direction=FVA_IN_FA,
             exp_witness=('#f0', '#f0')),
        None, None, True
    ),
    (
        "Finite automaton with variables",
        dict(a=fixture('a1'), f=fixture('a2'), direction=FA_IN_FVA,
             exp_witness=None),
        NotFiniteAutomatonError, None, True
    ),
    (
        "Invalid direction",
        dict(a=fixture('a1'), f=FA_AB, direction='both',
             exp_witness=None),
        ValueError, None, True
    ),
]


@pytest.mark.parametrize(
    "desc, kwargs, exp_exc_types, exp_warn_types, condition",
    TESTCASES_FA_CONTAINMENT)
@simplified_test_function
def test_fa_containment(testcase, a, f, direction, exp_witness):
    """
    Test fa_containment() and fa_containment_witness().
    """

    # The code to be tested
    witness = fa_containment_witness(a, f, direction)

    # Ensure that exceptions raised in the remainder of this function
    # are not mistaken as expected exceptions
    assert testcase.exp_exc_types is None

    assert witness == exp_witness
    assert fa_containment(a, f, direction) is (exp_witness is None)
    if witness is not None:
        left, right = (f, a) if direction == FA_IN_FVA else (a, f)
        assert membership(left, witness)
        assert not membership(right, witness)


def test_fa_containment_eps():
    """
    Test that the finite automaton may have empty-label transitions.
    """
    f = EpsFva(states=['f0', 'f1'], initial=['f0'], accepting=['f1'],
               transitions=[('f0', '@eps', 'f1'), ('f1', 'a', 'f1')])
    assert fa_containment(fixture('universal-loop'), f, FA_IN_FVA)
    assert fa_containment_witness(fixture('single-a'), f, FA_IN_FVA) == ()


@pytest.mark.parametrize("seed", SEEDS)
def test_random_fa_containment(seed):
    """
    Test the containment witnesses against membership on random automata.
    """
    a = random_fva(seed)
    f = random_fa(seed + 300)
    for direction in (FA_IN_FVA, FVA_IN_FA):
        witness = fa_containment_witness(a, f, direction)
        left, right = (f, a) if direction == FA_IN_FVA else (a, f)
        if witness is None:
            pool = ['a', 'b']
            assert sample_language(left, pool, 3) <= \
                sample_language(right, pool, 3)
        else:
            assert membership(left, witness)
            assert not membership(right, witness)
