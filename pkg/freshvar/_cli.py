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
The `fva` command.

Every subcommand produces a report, a JSON object with the command, its
verdict and its witnesses. The exit code is 0 for a positive verdict or a
successful construction, 1 for a negative verdict, and 2 for usage errors,
unreadable or malformed input, and exceeded caps.
"""

from __future__ import print_function

import sys
import time
import logging
import argparse
from datetime import datetime

import pytz

from ._version import __version__
from ._core import check_valid, validate
from ._words import accepting_run, nonempty, sample_language
from ._closure import DEFAULT_STATE_CAP, union, concat, star, intersect, \
    eliminate_eps, reduce_nfva, trim
from ._decide import universality_witness, find_nondeterminism, \
    fva_simulates, contains_dfva, fa_containment_witness, FA_IN_FVA, \
    FVA_IN_FA
from ._game import DEFAULT_POSITION_CAP, gsimulates
from ._compose import synthesize, replay, parse_trace, choreography
from ._jsonio import load_automaton, dump_automaton, automaton_to_dict, \
    dumps_document, strategy_to_dict, orchestrator_to_dict, \
    load_orchestrator, move_to_dict, substitution_to_dict, label_to_dict
from ._fixtures import fixture, fixture_names
from ._exceptions import FvaError, AutomatonFormatError, CapExceededError, \
    NotDeterministicError, NotFiniteAutomatonError, TraceDivergedError
from ._utils import EMPTY_WORD_TOKEN, fresh_letters

__all__ = ['DEFAULT_MAX_LEN', 'EXIT_POSITIVE', 'EXIT_NEGATIVE', 'EXIT_ERROR',
           'Report', 'parse_word', 'main']

_LOG = logging.getLogger(__name__)

#: Default maximum word length of the language sampling oracle.
DEFAULT_MAX_LEN = 5

#: Exit code for a positive verdict or a successful construction.
EXIT_POSITIVE = 0

#: Exit code for a negative verdict.
EXIT_NEGATIVE = 1

#: Exit code for usage errors, malformed input and exceeded caps.
EXIT_ERROR = 2

_CONSTRUCTIONS = ('union', 'concat', 'star', 'intersect', 'elim-eps',
                  'reduce')


class Report(dict):
    """
    The result of a subcommand: a JSON object with members "command",
    "verdict" and command-specific witnesses.
    """

    def __init__(self, command, verdict=None, **members):
        super(Report, self).__init__(command=command, verdict=verdict,
                                     **members)

    @property
    def verdict(self):
        """bool: The verdict, or `None` for commands without one."""
        return self['verdict']

    @property
    def exit_code(self):
        """int: The exit code for the verdict."""
        return EXIT_NEGATIVE if self['verdict'] is False else EXIT_POSITIVE

    def to_json(self):
        """Return the canonical JSON text of the report."""
        return dumps_document(self)

    def to_text(self):
        """Return a human readable rendering of the report."""
        lines = []
        for key in sorted(self):
            value = self[key]
            if isinstance(value, (dict, list)):
                text = dumps_document(value).rstrip('\n')
                lines.append('{}:'.format(key))
                lines.extend('  ' + line for line in text.splitlines())
            else:
                lines.append('{}: {}'.format(key, value))
        return '\n'.join(lines) + '\n'


def parse_word(text):
    """
    Parse a word given on the command line: whitespace-separated letters;
    "@empty" or an empty string is the empty word.
    """
    tokens = text.split()
    if tokens == [EMPTY_WORD_TOKEN]:
        return ()
    return tuple(tokens)


def _run_to_dict(run):
    return {
        'configurations': [
            {'state': c.state, 'memory': substitution_to_dict(c.memory)}
            for c in run.configurations],
        'letters': list(run.letters),
    }


def _load(filename, check=True):
    a = load_automaton(filename)
    if check:
        check_valid(a)
    return a


def _oracle_pool(args, *automata):
    if args.pool is not None:
        return sorted(set(args.pool.split()))
    letters = set()
    variables = 0
    for a in automata:
        letters |= a.letters
        variables += len(a.variables)
    return sorted(letters) + fresh_letters(letters, variables + 1)


def _cmd_validate(args):
    a = _load(args.automaton, check=False)
    violations = validate(a)
    return Report('validate', not violations, type=a.kind,
                  violations=[{'code': v.code, 'message': v.message}
                              for v in violations])


def _cmd_member(args):
    a = _load(args.automaton)
    word = parse_word(args.word)
    run = accepting_run(a, word)
    report = Report('member', run is not None, word=list(word))
    if run is not None:
        report['run'] = _run_to_dict(run)
    return report


def _cmd_empty(args):
    a = _load(args.automaton)
    found = nonempty(a)
    return Report('empty', not found, nonempty=found,
                  trimmed_states=len(trim(a).states))


def _cmd_universal(args):
    a = _load(args.automaton)
    witness = universality_witness(a)
    report = Report('universal', witness is None)
    if witness is not None:
        report['rejected_length'] = witness[0]
        report['rejected_word'] = list(witness[1])
    return report


def _cmd_deterministic(args):
    a = _load(args.automaton)
    offender = find_nondeterminism(a)
    report = Report('deterministic', offender is None)
    if offender is not None:
        report['state'] = offender
    return report


def _construct(name, automata, cap):
    if name == 'union':
        return union(automata[0], automata[1])
    if name == 'concat':
        return concat(automata[0], automata[1], cap)
    if name == 'star':
        return star(automata[0], cap)
    if name == 'intersect':
        return intersect(automata[0], automata[1], cap)
    if name == 'elim-eps':
        return eliminate_eps(automata[0], cap)
    return reduce_nfva(automata[0], cap)


def _arity_of(name):
    return 2 if name in ('union', 'concat', 'intersect') else 1


def _cmd_construct(args, name=None):
    name = name or args.command
    if len(args.automata) != _arity_of(name):
        raise _UsageError("{} takes {} automata, got {}".format(
            name, _arity_of(name), len(args.automata)))
    automata = [_load(f) for f in args.automata]
    result = _construct(name, automata, args.cap)
    report = Report(name, None, type=result.kind,
                    states=len(result.states),
                    transitions=len(result.transitions))
    if args.output:
        dump_automaton(result, args.output)
        report['output'] = args.output
    else:
        report['automaton'] = automaton_to_dict(result)
    return report


def _cmd_op(args):
    return _cmd_construct(args, args.operation)


def _cmd_contains_dfva(args):
    a = _load(args.automaton)
    d = _load(args.dfva)
    return Report('contains-dfva',
                  contains_dfva(a, d, args.pool_extra, args.position_cap))


def _cmd_fa_contain(args):
    a = _load(args.automaton)
    f = _load(args.fa)
    witness = fa_containment_witness(a, f, args.direction)
    report = Report('fa-contain', witness is None, direction=args.direction)
    if witness is not None:
        report['counterexample'] = list(witness)
    return report


def _cmd_sim(args):
    a = _load(args.simulated)
    b = _load(args.simulating)
    return Report('sim', fva_simulates(a, b, args.pool_extra,
                                       args.position_cap))


def _cmd_gsim(args):
    client = _load(args.client)
    service = _load(args.service)
    if args.buchi:
        solution = choreography(client, [service], args.pool_extra,
                                args.position_cap, args.cap)
    else:
        solution = gsimulates(client, service, args.pool_extra,
                              args.position_cap)
    report = Report('gsim', solution.eloise_wins, winner=solution.winner,
                    positions=len(solution.game),
                    strategy_positions=len(solution.strategy))
    if args.output:
        with open(args.output, 'w') as fp:
            fp.write(dumps_document(strategy_to_dict(solution)))
        report['output'] = args.output
    return report


def _cmd_compose(args):
    client = _load(args.client)
    services = [_load(f) for f in args.services]
    result = synthesize(client, services, args.pool_extra, args.position_cap,
                        args.cap)
    report = Report('compose', bool(result), positions=len(result.game))
    if result:
        report['delegations'] = len(result)
        if args.output:
            with open(args.output, 'w') as fp:
                fp.write(dumps_document(orchestrator_to_dict(result)))
            report['output'] = args.output
    else:
        report['refusal'] = [move_to_dict(m) for m in result.client_moves]
    return report


def _read_text(filename):
    if filename == '-':
        return sys.stdin.read()
    with open(filename) as fp:
        return fp.read()


def _cmd_replay(args):
    orchestrator = load_orchestrator(args.orchestrator, args.position_cap)
    try:
        trace = parse_trace(_read_text(args.trace))
    except ValueError as exc:
        raise _UsageError(str(exc))
    try:
        delegations = replay(orchestrator, trace)
    except TraceDivergedError as exc:
        return Report('replay', False, step=exc.step, reason=exc.reason)
    return Report('replay', True, delegations=[
        {'service': d.service,
         'transition': {'from': d.transition.source,
                        'label': label_to_dict(d.transition.label),
                        'to': d.transition.target},
         'letter': d.letter}
        for d in delegations])


def _cmd_sample(args):
    a = _load(args.automaton)
    pool = _oracle_pool(args, a)
    words = sample_language(a, pool, args.max_len)
    return Report('sample', None, pool=pool, max_len=args.max_len,
                  words=[list(w) for w in sorted(words,
                                                 key=lambda w: (len(w), w))])


def _cmd_fixture(args):
    if args.name is None:
        return Report('fixture', None, names=fixture_names())
    try:
        a = fixture(args.name)
    except ValueError as exc:
        raise _UsageError(str(exc))
    report = Report('fixture', None, name=args.name)
    if args.output:
        dump_automaton(a, args.output)
        report['output'] = args.output
    else:
        report['automaton'] = automaton_to_dict(a)
    return report


class _UsageError(Exception):
    pass


def _count(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(
            "must not be negative: {}".format(text))
    return value


def _parser():
    parser = argparse.ArgumentParser(
        prog='fva', description="Fresh-variable automata toolkit.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--json', action='store_true',
                        help="Print the report as JSON only.")
    parser.add_argument('--timing', action='store_true',
                        help="Add a timing section to the report.")
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help="Log level (default: %(default)s).")
    parser.add_argument('--log-file', default=None,
                        help="Log to this file instead of stderr.")
    parser.add_argument('--cap', type=int, default=DEFAULT_STATE_CAP,
                        help="State cap of constructions "
                        "(default: %(default)s).")
    parser.add_argument('--position-cap', type=int,
                        default=DEFAULT_POSITION_CAP,
                        help="Position cap of games (default: %(default)s).")
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = command('validate', _cmd_validate, "Check the structural invariants.")
    p.add_argument('automaton')
    p = command('member', _cmd_member, "Decide membership of a word.")
    p.add_argument('automaton')
    p.add_argument('word', help="Whitespace-separated letters; "
                   "'@empty' for the empty word.")
    p = command('empty', _cmd_empty, "Decide emptiness of the language.")
    p.add_argument('automaton')
    p = command('universal', _cmd_universal, "Decide universality.")
    p.add_argument('automaton')
    p = command('deterministic', _cmd_deterministic,
                "Decide determinism.")
    p.add_argument('automaton')
    for name in _CONSTRUCTIONS:
        p = command(name, _cmd_construct, "Closure construction.")
        p.add_argument('automata', nargs='+')
        p.add_argument('-o', '--output', default=None)
    p = command('op', _cmd_op, "Closure construction by name.")
    p.add_argument('operation', choices=_CONSTRUCTIONS)
    p.add_argument('automata', nargs='+')
    p.add_argument('-o', '--output', default=None)
    p = command('contains-dfva', _cmd_contains_dfva,
                "Decide containment in a deterministic automaton.")
    p.add_argument('automaton')
    p.add_argument('dfva')
    p.add_argument('--pool-extra', type=_count, default=0)
    p = command('fa-contain', _cmd_fa_contain,
                "Decide containment with a finite automaton.")
    p.add_argument('automaton')
    p.add_argument('fa')
    p.add_argument('--direction', choices=[FA_IN_FVA, FVA_IN_FA],
                   default=FA_IN_FVA)
    p = command('sim', _cmd_sim, "Decide the simulation preorder.")
    p.add_argument('simulated')
    p.add_argument('simulating')
    p.add_argument('--pool-extra', type=_count, default=0)
    p = command('gsim', _cmd_gsim, "Decide ground simulation.")
    p.add_argument('client')
    p.add_argument('service')
    p.add_argument('--pool-extra', type=_count, default=0)
    p.add_argument('--buchi', action='store_true',
                   help="Solve the choreography game of the client and the "
                   "service.")
    p.add_argument('-o', '--output', default=None)
    p = command('compose', _cmd_compose, "Synthesize an orchestrator.")
    p.add_argument('client')
    p.add_argument('services', nargs='*')
    p.add_argument('--pool-extra', type=_count, default=0)
    p.add_argument('-o', '--output', default=None)
    p = command('replay', _cmd_replay, "Replay a client trace.")
    p.add_argument('orchestrator')
    p.add_argument('trace', help="Trace file, '-' for stdin.")
    p = command('sample', _cmd_sample, "Sample the language.")
    p.add_argument('automaton')
    p.add_argument('--pool', default=None,
                   help="Whitespace-separated letters.")
    p.add_argument('--max-len', type=_count, default=DEFAULT_MAX_LEN)
    p = command('fixture', _cmd_fixture, "Write a shipped example.")
    p.add_argument('name', nargs='?', default=None)
    p.add_argument('-o', '--output', default=None)
    return parser


def _setup_logging(args):
    kwargs = dict(level=getattr(logging, args.log_level),
                  format='%(asctime)s %(name)s %(levelname)s %(message)s')
    if args.log_file:
        kwargs['filename'] = args.log_file
    else:
        kwargs['stream'] = sys.stderr
    logging.basicConfig(**kwargs)


def _error_report(command, exc):
    error = {'type': type(exc).__name__, 'message': str(exc)}
    if isinstance(exc, AutomatonFormatError) and exc.location:
        error['location'] = exc.location
    if isinstance(exc, CapExceededError):
        error['cap_name'] = exc.cap_name
        error['cap'] = exc.cap
    if isinstance(exc, NotDeterministicError):
        error['state'] = exc.state
    if isinstance(exc, NotFiniteAutomatonError):
        error['variables'] = sorted(exc.variables)
    return Report(command, None, error=error)


def main(argv=None):
    """
    Run the `fva` command.

    Parameters:

      argv (list of string): The arguments, without the program name.
        Defaults to `sys.argv[1:]`.

    Returns:
      int: The exit code.
    """
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    _setup_logging(args)
    started = datetime.now(pytz.utc)
    clock = time.time()
    try:
        report = args.func(args)
        code = report.exit_code
    except (FvaError, IOError, OSError, ValueError, _UsageError) as exc:
        _LOG.debug("%s failed: %s", args.command, exc)
        report = _error_report(args.command, exc)
        code = EXIT_ERROR
        if not args.json:
            print("fva {}: error: {}".format(args.command, exc),
                  file=sys.stderr)
            return code
    if args.timing:
        report['timing'] = {'started': started.isoformat(),
                            'seconds': round(time.time() - clock, 6)}
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return code
