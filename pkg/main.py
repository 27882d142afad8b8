#!/usr/bin/env python3
"""
weyl-toric
Exact toric invariants of local-model pairs

Main entry point with the argparse command line
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from colorama import init, Fore, Style

from version import SCHEMA, __description__, __version__
from toric.errors import InvalidInputError, WeylToricError
from toric.lattice_galois import GaloisLattice, average, coinvariants, invariants_sublattice
from toric.pairs.predicates import select_semigroup
from toric.pairs.registry import get_pair, list_pairs
from toric.presentation import (
    CHART_KINDS, RAYNAUD_MODES, chart_presentation, raynaud_etale_check, raynaud_presentation,
)
from toric.report import ReportOptions, report
from toric.sections.base import SectionStatus
from toric.sections.registry import SECTION_ORDER, get_registry
from utils.helpers import dump_json, parse_sections, parse_vector, parse_vectors, render_text
from utils.logger import get_logger, set_debug_mode
from utils.report_generator import ReportGenerator

init(autoreset=True)


class WeylToricCLI:
    """Runs one subcommand and writes its result to stdout"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.registry = get_registry()
        self.config = self.registry.get_config()
        log_config = self.config.get('logging', {})
        self.logger = get_logger(debug_mode=args.debug, log_dir=log_config.get('log_dir', 'logs'))
        if args.debug:
            set_debug_mode(True)
        if log_config.get('file', False):
            self.logger.enable_file_logging()
        self.budget = self.registry.budget(args.budget)
        self.p = args.p if args.p is not None else self.config.get('global', {}).get('default_prime', 3)

    def run(self) -> int:
        """Dispatch the subcommand; exceptions propagate to main()"""
        handler = getattr(self, f"cmd_{self.args.command}")
        self.logger.debug(f"command {self.args.command} (p = {self.p}, budget = {self.budget.name})")
        payload = handler()
        self.emit(payload)
        return 0

    # ------------------------------------------------------------------
    # Output
    # ------------------------------------------------------------------

    def emit(self, payload: Dict[str, Any]):
        if 'schema' not in payload:
            payload = {'schema': SCHEMA, 'command': self.args.command, **payload}
        if self.args.out == 'json':
            print(dump_json(payload))
            return
        title = payload.get('pair', {}).get('name') if isinstance(payload.get('pair'), dict) \
            else payload.get('pair')
        header = f"{self.args.command} {title}" if title else self.args.command
        print(f"{Fore.CYAN}{Style.BRIGHT}{header}{Style.RESET_ALL}")
        print('\n'.join(render_text({k: v for k, v in payload.items() if k not in ('command',)})))

    def emit_error(self, error: WeylToricError):
        if self.args.out == 'json':
            print(dump_json({'schema': SCHEMA, 'command': self.args.command, **error.to_dict()}))

    # ------------------------------------------------------------------
    # Shared steps
    # ------------------------------------------------------------------

    def _pair(self):
        return get_pair(self.args.pair, self.p)

    def _context(self, pair) -> Dict[str, Any]:
        return {
            'budget': self.budget,
            'choice': select_semigroup(pair, self.args.semigroup, self.budget),
            'cache': {},
            'config': self.config,
            'force': True,
        }

    def _section(self, name: str, pair, context: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Run a single section without the per-section error mapping"""
        context = context if context is not None else self._context(pair)
        result = self.registry.get_section(name).run(pair, context)
        for warning in result.warnings:
            self.logger.warning(warning)
        if result.status != SectionStatus.SUCCESS:
            raise InvalidInputError(f"section {name} did not run: {result.status.value}")
        return {'pair': pair.name, 'p': pair.p, **result.data}

    # ------------------------------------------------------------------
    # Subcommands
    # ------------------------------------------------------------------

    def cmd_pair(self) -> Dict[str, Any]:
        if self.args.action == 'list':
            return {'pairs': list_pairs()}
        if not self.args.name:
            raise InvalidInputError("pair show needs a pair name")
        return {'pair': get_pair(self.args.name, self.p).to_dict()}

    def cmd_analyze(self) -> Dict[str, Any]:
        pair = self._pair()
        options = ReportOptions(
            semigroup=self.args.semigroup,
            budget=self.budget,
            chi=parse_vectors(self.args.chi, pair.rank),
            sections=parse_sections(self.args.sections) or None,
            timing=self.args.timing,
        )
        analysis = report(pair, options, self.registry)
        if self.args.report:
            output_dir = self.config.get('global', {}).get('output_dir', 'reports')
            path = ReportGenerator(output_dir).generate_report(analysis)
            self.logger.success(f"Report written to {path}")
        return analysis

    def cmd_hilbert(self) -> Dict[str, Any]:
        return self._section('hilbert', self._pair())

    def cmd_ideal(self) -> Dict[str, Any]:
        return self._section('ideal', self._pair())

    def cmd_lang(self) -> Dict[str, Any]:
        return self._section('lang', self._pair())

    def cmd_adm(self) -> Dict[str, Any]:
        pair = self._pair()
        context = {'budget': self.budget, 'cache': {}, 'config': self.config}
        payload = self._section('adm', pair, context)
        if self.args.dot:
            Path(self.args.dot).write_text(context['cache']['poset'].to_dot(pair.name), encoding='utf-8')
            self.logger.success(f"DOT written to {self.args.dot}")
        return payload

    def cmd_facemap(self) -> Dict[str, Any]:
        pair = self._pair()
        return self._section('facemap', pair, {'budget': self.budget, 'cache': {}, 'config': self.config})

    def cmd_divisor(self) -> Dict[str, Any]:
        pair = self._pair()
        chi = parse_vectors(self.args.chi, pair.rank)
        return self._section('divisor', pair, {'budget': self.budget, 'chi': chi, 'cache': {},
                                               'config': self.config})

    def cmd_chart(self) -> Dict[str, Any]:
        pair = self._pair()
        S = None
        if self.args.kind == 'generic':
            S = select_semigroup(pair, self.args.semigroup, self.budget).semigroup
        presentation = chart_presentation(pair, S, self.args.kind, self.budget)
        data = presentation.to_dict()
        data['round_trip'] = presentation.round_trip()
        return {'pair': pair.name, 'p': pair.p, **data}

    def cmd_raynaud(self) -> Dict[str, Any]:
        presentation = raynaud_presentation(self.args.d, self.args.mode, self.p)
        data = {'d': self.args.d, 'mode': self.args.mode, 'p': self.p,
                'presentation': presentation.to_dict(), 'round_trip': presentation.round_trip()}
        if self.args.etale:
            data['etale'] = raynaud_etale_check(self.args.d, self.args.mode, self.p, self.budget).to_dict()
        return data

    def cmd_lattice(self) -> Dict[str, Any]:
        path = Path(self.args.file)
        if not path.exists():
            raise InvalidInputError(f"lattice file not found: {path}")
        try:
            data = json.loads(path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as e:
            raise InvalidInputError(f"lattice file {path} is not valid JSON: {e}")
        M = GaloisLattice.from_dict(data)
        out: Dict[str, Any] = {
            'lattice': M.to_dict(),
            'inertia_order': M.inertia_order,
            'frobenius_order_mod_inertia': M.frobenius_order_mod_inertia,
            'invariants': {which: invariants_sublattice(M, which).to_dict()
                           for which in ('inertia', 'frobenius', 'both')},
            'coinvariants': coinvariants(M).to_dict(),
        }
        if self.args.average:
            lam = parse_vector(self.args.average)
            out['average'] = {'lambda': list(lam), 'value': [str(x) for x in average(M, lam)]}
        return out


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool):
    """Global flags; on subparsers they only override when given"""
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--p', type=int, default=default(None),
                        help='Prime p (default: global.default_prime from settings)')
    parser.add_argument('--semigroup', default=default('max'),
                        help='Semigroup: max, free or file:<path> (default: max)')
    parser.add_argument('--budget', default=default(None),
                        help='Budget: fast, full or an integer cap (default: fast)')
    parser.add_argument('--out', choices=['json', 'text'], default=default('json'),
                        help='Output format (default: json)')
    parser.add_argument('--debug', '-d', action='store_true', default=default(False),
                        help='Enable debug mode with detailed logging')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='weyl-toric', description=f'weyl-toric - {__description__}')
    _add_global_options(parser, suppress=False)
    parser.add_argument('--version', '-v', action='version', version=f'weyl-toric v{__version__}')

    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('pair', parents=[common], help='List catalog pairs or show one')
    p.add_argument('action', choices=['list', 'show'])
    p.add_argument('name', nargs='?', help='Pair name for show')

    p = sub.add_parser('analyze', parents=[common], help='Full JSON report of a pair')
    p.add_argument('pair', help="Pair name such as gsp:2, or file:<path>")
    p.add_argument('--sections', default='',
                   help=f"Comma separated sections ({', '.join(SECTION_ORDER)})")
    p.add_argument('--chi', action='append', default=[],
                   help='Character for the divisor section, e.g. 1,0 (repeatable, ; separated)')
    p.add_argument('--report', action='store_true', help='Also write a Markdown report')
    p.add_argument('--timing', action='store_true', help='Include section execution times')

    for name, text in (('hilbert', 'Hilbert basis of the semigroup'),
                       ('ideal', 'Toric ideal of the Hilbert basis'),
                       ('lang', 'Lang cover: ramification, fiber length, flatness'),
                       ('facemap', 'Face map on the admissible set')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('pair')

    p = sub.add_parser('adm', parents=[common], help='Admissible set as a poset')
    p.add_argument('pair')
    p.add_argument('--dot', help='Write the Hasse diagram as Graphviz DOT')

    p = sub.add_parser('divisor', parents=[common], help='Divisor multiplicities of characters')
    p.add_argument('pair')
    p.add_argument('--chi', action='append', default=[], help='Character, e.g. 1,0 (repeatable)')

    p = sub.add_parser('chart', parents=[common], help='Chart presentation of the root-stack model')
    p.add_argument('pair')
    p.add_argument('--kind', choices=CHART_KINDS, default='generic')

    p = sub.add_parser('raynaud', parents=[common], help='Raynaud vector space scheme presentations')
    p.add_argument('--d', type=int, default=1, help='Degree d of F_{p^d}')
    p.add_argument('--mode', choices=RAYNAUD_MODES, default='group')
    p.add_argument('--etale', action='store_true', help='Check the rank of the generic fiber')

    p = sub.add_parser('lattice', parents=[common], help='Invariants and coinvariants of a Galois lattice')
    p.add_argument('file', help='JSON {"rank", "inertia", "frobenius"}')
    p.add_argument('--average', help='Vector to average over the inertia orbit')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    cli = None
    try:
        cli = WeylToricCLI(args)
        if args.debug:
            cli.logger.banner("DEBUG MODE ENABLED")
            cli.logger.info(f"Log file: {cli.logger.log_file}")
            cli.logger.separator()
        return cli.run()

    except KeyboardInterrupt:
        print(f"\n{Fore.YELLOW}Interrupted by user.{Style.RESET_ALL}", file=sys.stderr)
        return 130
    except WeylToricError as e:
        get_logger().error(f"{e.kind}: {e}")
        if cli is not None:
            cli.emit_error(e)
        elif args.out == 'json':
            print(dump_json({'schema': SCHEMA, 'command': args.command, **e.to_dict()}))
        return e.exit_code
    except Exception as e:
        print(f"{Fore.RED}Fatal error: {e}{Style.RESET_ALL}", file=sys.stderr)
        if args.debug:
            import traceback
            traceback.print_exc()
        return 4
    finally:
        if cli is not None and args.debug:
            cli.logger.close()


if __name__ == '__main__':
    sys.exit(main())
