# cli/management/commands/shg.py
"""
python manage.py shg <subcommand> ...

    check     axioms, identity and purity of a structure file
    convolve  p_x * p_y in a structure file
    gen       emit a structure file for a standard construction
    free      free product of structure files, truncated by word length
    lift      universal lift of factor homomorphisms, checked up to a length
    words     reduced words of a free product

Exit status: 0 on success, 1 on a mathematical failure, 2 on a usage or
parse error.
"""

import logging
from itertools import product
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError, CommandParser

from cli.services import (
    emit_structure, exit_status_for, parse_action, parse_cayley, parse_group,
    parse_hom_maps, parse_params, parse_structure, parse_subgroup, read_file,
)
from constructions.builders import (
    coset_space, double_coset_space, from_semigroup, orbit_space, three_element_hypergroup,
)
from freeprod.lifts import universal_lift
from freeprod.products import build_free_product
from freeprod.words import IdentityMode
from shg_core.checks import identity_of, purity_witness, verify_axioms

logger = logging.getLogger(__name__)


def _default_max_len():
    return getattr(settings, 'SHG_SETTINGS', {}).get('DEFAULT_MAX_LEN', 2)


class UsageParser(CommandParser):
    """Argument errors exit 2 whether run from a shell or through call_command."""

    def error(self, message):
        if self.called_from_command_line:
            CommandParser.error(self, message)
        raise CommandError(f'Error: {message}', returncode=2)


class Command(BaseCommand):
    help = 'Check, build and combine finite semihypergroups with exact rational weights'
    requires_system_checks = []

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: UsageParser.error(parser, message)
        return parser

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True, parser_class=UsageParser)

        check = subparsers.add_parser('check', help='Axioms, identity and purity report')
        check.add_argument('structure')
        check.add_argument('--no-check', action='store_true', help='Skip the axiom triples')

        convolve = subparsers.add_parser('convolve', help='Print p_x * p_y')
        convolve.add_argument('structure')
        convolve.add_argument('x')
        convolve.add_argument('y')

        gen = subparsers.add_parser('gen', help='Emit a structure file for a construction')
        gen.add_argument(
            'construction',
            choices=['semigroup', 'coset', 'double-coset', 'orbit', 'three-element'],
        )
        gen.add_argument('source', nargs='?', help='.grp file (not used by three-element)')
        gen.add_argument('--subgroup', help='Comma-separated subgroup elements')
        gen.add_argument('--action', help='.act file for orbit')
        gen.add_argument('--params', help='x1,x2,x3,y1,y2,y3,z1,z2 for three-element')
        gen.add_argument('--no-validate', action='store_true', help='Build three-element without constraint checks')
        gen.add_argument('--output', help='Write to this path instead of stdout')

        free = subparsers.add_parser('free', help='Free product of structure files')
        free.add_argument('factors', nargs='+')
        free.add_argument('--max-len', type=int, default=None)
        free.add_argument('--table', action='store_true', help='Print the truncated convolution table')
        free.add_argument('--assoc-check', action='store_true', help='Run the word-triple associativity suite')

        lift = subparsers.add_parser('lift', help='Universal lift of factor homomorphisms')
        lift.add_argument('factors', nargs='+')
        lift.add_argument('--target', required=True)
        lift.add_argument('--hom', required=True, help='.map file, one map per factor')
        lift.add_argument('--max-len', type=int, default=None)

        words = subparsers.add_parser('words', help='Reduced words of a free product')
        words.add_argument('factors', nargs='+')
        words.add_argument('--max-len', type=int, default=None)

    def handle(self, *args, **options):
        handler = getattr(self, f"handle_{options['subcommand'].replace('-', '_')}")
        try:
            handler(options)
        except ValidationError as exc:
            status = exit_status_for(exc)
            message = exc.messages[0]
            logger.warning(f'shg {options["subcommand"]} failed ({exc.code}): {message}')
            raise CommandError(message, returncode=status)

    # ============================================
    # HELPERS
    # ============================================

    def _structure(self, path, check=None):
        return parse_structure(read_file(path), check=check, source=path)

    def _free_product(self, paths):
        factors = [self._structure(path) for path in paths]
        return build_free_product(factors)

    def _max_len(self, options):
        max_len = options['max_len']
        if max_len is None:
            return _default_max_len()
        if max_len < 0:
            raise CommandError('Error: --max-len must be nonnegative', returncode=2)
        return max_len

    def _point(self, K, text):
        if text not in K:
            raise CommandError(f'Error: {text} is not an element of {K.name}', returncode=2)
        return text

    def _describe_free_product(self, F):
        if F.mode is IdentityMode.SHARED:
            identity = 'e'
        elif F.mode is IdentityMode.RENAMED:
            identity = f'none (renamed letter {F.renamed_identity})'
        else:
            identity = 'none'
        self.stdout.write(f'Free product {F.name}: mode {F.mode.value}; identity: {identity}')

    # ============================================
    # SUBCOMMANDS
    # ============================================

    def handle_check(self, options):
        K = self._structure(options['structure'], check=False)
        parts = []
        failed = False
        if not options['no_check']:
            report = verify_axioms(K)
            parts.append(report.summary())
            failed = not report.passed
        identity = identity_of(K)
        parts.append(f'identity: {identity if identity is not None else "none"}')
        parts.append(f'pure: {"yes" if purity_witness(K) is None else "no"}')
        self.stdout.write('; '.join(parts))
        if failed:
            for violation in report.violations:
                self.stdout.write(f'  {violation.describe()}')
            raise CommandError(f'{K.name} is not a semihypergroup', returncode=1)

    def handle_convolve(self, options):
        K = self._structure(options['structure'])
        x, y = self._point(K, options['x']), self._point(K, options['y'])
        self.stdout.write(f'p_{x} * p_{y} = {K.convolve(x, y)}')

    def handle_gen(self, options):
        construction = options['construction']
        if construction == 'three-element':
            if not options['params']:
                raise CommandError('Error: three-element needs --params', returncode=2)
            K = three_element_hypergroup(
                *parse_params(options['params']), validate=not options['no_validate'],
            )
        else:
            if not options['source']:
                raise CommandError(f'Error: {construction} needs a .grp file', returncode=2)
            data = read_file(options['source'])
            if construction == 'semigroup':
                name, elements, cayley = parse_cayley(data, source=options['source'])
                K = from_semigroup(elements, cayley, name=name)
            elif construction == 'orbit':
                if not options['action']:
                    raise CommandError('Error: orbit needs --action', returncode=2)
                group = parse_group(data, source=options['source'])
                action = parse_action(read_file(options['action']), group, source=options['action'])
                K = orbit_space(action)
            else:
                if not options['subgroup']:
                    raise CommandError(f'Error: {construction} needs --subgroup', returncode=2)
                group = parse_group(data, source=options['source'])
                subgroup = parse_subgroup(options['subgroup'])
                build = coset_space if construction == 'coset' else double_coset_space
                K = build(group, subgroup)

        text = emit_structure(K)
        if options['output']:
            Path(options['output']).write_text(text, encoding='utf-8')
            self.stdout.write(self.style.SUCCESS(f'Wrote {K.name} ({len(K)} elements) to {options["output"]}'))
        else:
            self.stdout.write(text, ending='')

    def handle_free(self, options):
        max_len = self._max_len(options)
        F = self._free_product(options['factors'])
        words = F.enumerate_words(max_len)
        self._describe_free_product(F)
        self.stdout.write(f'words of length <= {max_len}: {len(words)}')
        if options['table']:
            for x, y in product(words, repeat=2):
                self.stdout.write(f'p {x}*{y} = {F.convolve_words(x, y)}')
        if options['assoc_check']:
            report = F.check_associativity(max_len)
            self.stdout.write(report.summary())
            if not report.passed:
                for violation in report.violations:
                    self.stdout.write(f'  {violation.describe()}')
                raise CommandError(f'{F.name} fails the truncated axioms', returncode=1)

    def handle_lift(self, options):
        max_len = self._max_len(options)
        F = self._free_product(options['factors'])
        target = self._structure(options['target'])
        homs = parse_hom_maps(read_file(options['hom']), F.factors, target, source=options['hom'])
        gamma = universal_lift(F, target, homs)

        for word in F.enumerate_words(max_len):
            self.stdout.write(f'Gamma(p_{word}) = {gamma.image_of_word(word)}')
        multiplicative = gamma.check_multiplicativity(max_len)
        restrictions = gamma.check_factor_restrictions()
        self.stdout.write(
            f'multiplicative: {"pass" if multiplicative.passed else "FAIL"} '
            f'({multiplicative.pairs_checked} pairs); '
            f'factor restrictions: {"pass" if restrictions.passed else "FAIL"} '
            f'({restrictions.pairs_checked} points)'
        )
        failures = multiplicative.failures + restrictions.failures
        if failures:
            for failure in failures:
                self.stdout.write(f'  {failure.describe()}')
            raise CommandError('The lift is not a homomorphism of measure algebras', returncode=1)

    def handle_words(self, options):
        max_len = self._max_len(options)
        F = self._free_product(options['factors'])
        for word in F.enumerate_words(max_len):
            self.stdout.write(str(word))
