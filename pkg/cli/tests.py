# cli/tests.py
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.test import SimpleTestCase

from constructions.builders import (
    coset_space, double_coset_space, left_zero_semigroup, orbit_space, three_element_hypergroup,
)
from constructions.groups import FiniteGroup, negation_action
from freeprod.words import Letter, Word
from ratmeasure.measures import FiniteMeasure

from .services import emit_structure, format_measure, parse_structure, run

SAMPLES = Path(settings.BASE_DIR) / 'samples'


def sample(name):
    return str(SAMPLES / name)


class ParseStructureTests(SimpleTestCase):

    def test_t2(self):
        K = parse_structure((SAMPLES / 't2.shg').read_bytes())
        self.assertEqual(K.elements, ('e', 'a'))
        self.assertEqual(K.identity, 'e')
        self.assertEqual(K.convolve('a', 'a'), FiniteMeasure({'e': '1/2', 'a': '1/2'}))

    def test_decimal_weight(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_structure((SAMPLES / 'decimal-weight.shg').read_bytes())
        self.assertEqual(ctx.exception.code, 'inexact_weight')

    def test_heavy_row_is_an_axiom_violation(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_structure((SAMPLES / 'heavy-row.shg').read_bytes())
        self.assertEqual(ctx.exception.code, 'axiom_violation')
        self.assertIn('A3 violation at (a, a)', ctx.exception.messages[0])
        K = parse_structure((SAMPLES / 'heavy-row.shg').read_bytes(), check=False)
        self.assertEqual(len(K), 2)

    def test_syntax_error_position(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_structure(b'{"name": "K",\n "elements": [}')
        self.assertEqual(ctx.exception.code, 'parse_error')
        self.assertEqual(ctx.exception.params['line'], 2)

    def test_missing_pair(self):
        document = b'{"elements": ["e", "a"], "table": {"e": {"e": {"e": "1"}, "a": {"a": "1"}}, "a": {"e": {"a": "1"}}}}'
        with self.assertRaises(ValidationError) as ctx:
            parse_structure(document)
        self.assertEqual(ctx.exception.code, 'missing_entry')
        self.assertEqual((ctx.exception.params['x'], ctx.exception.params['y']), ('a', 'a'))

    def test_emit_round_trip(self):
        S3 = FiniteGroup.symmetric(3)
        structures = [
            coset_space(S3, ['e', '(12)']),
            double_coset_space(S3, ['e', '(12)']),
            orbit_space(negation_action(FiniteGroup.cyclic(3))),
            three_element_hypergroup('1/4', '1/4', '1/2', '1/4', '1/2', '1/4', '1/2', '1/2'),
            left_zero_semigroup(),
        ]
        for K in structures:
            self.assertEqual(parse_structure(emit_structure(K)), K, K.name)

    def test_format_measure(self):
        self.assertEqual(format_measure(FiniteMeasure({'e': '1/2', 'a': '1/2'})), '1/2 * a + 1/2 * e')
        self.assertEqual(format_measure(FiniteMeasure()), '0')
        word = Word((Letter(0, 'a'), Letter(1, 'b')))
        self.assertEqual(format_measure(FiniteMeasure({word: 1})), '1 * (a@1 b@2)')


class CheckCommandTests(SimpleTestCase):

    def test_t2_passes(self):
        status, text = run(['check', sample('t2.shg')])
        self.assertEqual(status, 0)
        self.assertEqual(text, 'A1: pass (8 triples); A3: pass; identity: e; pure: yes\n')

    def test_without_axiom_check(self):
        status, text = run(['check', sample('z2.shg'), '--no-check'])
        self.assertEqual(status, 0)
        self.assertEqual(text, 'identity: 0; pure: no\n')

    def test_heavy_row_fails(self):
        status, text = run(['check', sample('heavy-row.shg')])
        self.assertEqual(status, 1)
        self.assertIn('A3: FAIL', text)

    def test_decimal_weight_is_a_parse_error(self):
        status, _ = run(['check', sample('decimal-weight.shg')])
        self.assertEqual(status, 2)

    def test_missing_file(self):
        status, _ = run(['check', sample('absent.shg')])
        self.assertEqual(status, 2)

    def test_call_command_output(self):
        out = StringIO()
        call_command('shg', 'convolve', sample('t2.shg'), 'a', 'a', stdout=out)
        self.assertEqual(out.getvalue(), 'p_a * p_a = 1/2 * a + 1/2 * e\n')

    def test_unknown_point(self):
        status, _ = run(['convolve', sample('t2.shg'), 'a', 'z'])
        self.assertEqual(status, 2)


class UsageTests(SimpleTestCase):

    def test_no_subcommand(self):
        self.assertEqual(run([])[0], 2)

    def test_unknown_subcommand(self):
        self.assertEqual(run(['bogus'])[0], 2)

    def test_missing_argument(self):
        self.assertEqual(run(['free'])[0], 2)
        self.assertEqual(run(['gen', 'coset', sample('s3.grp')])[0], 2)


class GenCommandTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def generate(self, *argv):
        path = str(Path(self.tmp.name) / 'out.shg')
        status, text = run(['gen', *argv, '--output', path])
        self.assertEqual(status, 0, text)
        return path

    def test_double_coset_round_trip(self):
        path = self.generate('double-coset', sample('s3.grp'), '--subgroup', 'e,(12)')
        K = parse_structure(Path(path).read_bytes())
        self.assertEqual(K, double_coset_space(FiniteGroup.symmetric(3), ['e', '(12)']))
        self.assertEqual(K.elements, ('{e,(12)}', '{(13),(23),(123),(132)}'))
        status, text = run(['check', path])
        self.assertEqual(status, 0)
        self.assertTrue(text.endswith('identity: {e,(12)}; pure: yes\n'))

    def test_every_construction_rechecks(self):
        cases = [
            ('coset', sample('s3.grp'), '--subgroup', 'e,(12)'),
            ('orbit', sample('z3.grp'), '--action', sample('neg-z3.act')),
            ('semigroup', sample('left-zero.grp')),
            ('three-element', '--params', '1/4,1/4,1/2,1/4,1/2,1/4,1/2,1/2'),
        ]
        for argv in cases:
            path = self.generate(*argv)
            self.assertEqual(run(['check', path])[0], 0, argv)

    def test_orbit_space_output(self):
        path = self.generate('orbit', sample('z3.grp'), '--action', sample('neg-z3.act'))
        K = parse_structure(Path(path).read_bytes())
        self.assertEqual(K.convolve('{1,2}', '{1,2}'), FiniteMeasure({'{0}': '1/2', '{1,2}': '1/2'}))

    def test_stdout_is_deterministic(self):
        argv = ['gen', 'coset', sample('s3.grp'), '--subgroup', 'e,(12)']
        first, second = run(argv), run(argv)
        self.assertEqual(first, second)
        self.assertEqual(first[0], 0)
        self.assertIn('"{(13),(123)}"', first[1])

    def test_constraint_violation_exits_one(self):
        status, text = run(['gen', 'three-element', '--params', '1/3,1/3,1/3,1/4,1/2,1/4,1/2,1/2'])
        self.assertEqual(status, 1)
        self.assertIn('y1x3 = z1x1', text)

    def test_decimal_params_exit_two(self):
        status, _ = run(['gen', 'three-element', '--params', '0.25,1/4,1/2,1/4,1/2,1/4,1/2,1/2'])
        self.assertEqual(status, 2)


class FreeCommandTests(SimpleTestCase):

    def test_table(self):
        status, text = run(['free', sample('t2.shg'), sample('t2.shg'), '--max-len', '2', '--table'])
        self.assertEqual(status, 0)
        self.assertIn('mode shared; identity: e', text)
        self.assertIn('words of length <= 2: 5', text)
        self.assertIn('p (a@1)*(a@1) = 1/2 * e + 1/2 * (a@1)', text)
        self.assertIn('p (a@1)*(a@2) = 1 * (a@1 a@2)', text)

    def test_assoc_check(self):
        status, text = run(['free', sample('t2.shg'), sample('t2b.shg'), '--max-len', '2', '--assoc-check'])
        self.assertEqual(status, 0)
        self.assertIn('A1: pass (125 triples); A3: pass', text)

    def test_groups_are_not_pure(self):
        status, text = run(['free', sample('z2.shg'), sample('z2.shg')])
        self.assertEqual(status, 1)
        self.assertIn('not pure', text)

    def test_renamed_mode(self):
        status, text = run(['free', sample('t2.shg'), sample('left-zero.shg'), '--max-len', '1'])
        self.assertEqual(status, 0)
        self.assertIn('mode renamed; identity: none (renamed letter e@1)', text)

    def test_words(self):
        status, text = run(['words', sample('t2.shg'), sample('t2b.shg'), '--max-len', '2'])
        self.assertEqual(status, 0)
        self.assertEqual(text, 'e\n(a@1)\n(b@2)\n(a@1 b@2)\n(b@2 a@1)\n')

    def test_negative_length(self):
        self.assertEqual(run(['words', sample('t2.shg'), '--max-len', '-1'])[0], 2)


class LiftCommandTests(SimpleTestCase):

    def test_identity_maps(self):
        status, text = run([
            'lift', sample('t2.shg'), sample('t2.shg'),
            '--target', sample('t2.shg'), '--hom', sample('t2-identity.map'), '--max-len', '2',
        ])
        self.assertEqual(status, 0, text)
        self.assertIn('Gamma(p_(a@1 a@2)) = 1/2 * a + 1/2 * e', text)
        self.assertIn('multiplicative: pass (25 pairs); factor restrictions: pass (4 points)', text)

    def test_map_count_mismatch(self):
        status, _ = run([
            'lift', sample('t2.shg'), sample('t2.shg'), sample('t2.shg'),
            '--target', sample('t2.shg'), '--hom', sample('t2-identity.map'),
        ])
        self.assertEqual(status, 2)


class MalformedInputTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, text):
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_group_entry_must_be_text(self):
        path = self.write('bad.grp', '{"elements": ["0", "1"], "table": {"0": {"0": "0", "1": ["1"]}}}')
        status, text = run(['gen', 'coset', path, '--subgroup', '0'])
        self.assertEqual(status, 2)
        self.assertIn("table row '0'", text)

    def test_semigroup_row_must_be_an_object(self):
        path = self.write('bad.grp', '{"elements": ["a"], "table": {"a": ["a"]}}')
        self.assertEqual(run(['gen', 'semigroup', path])[0], 2)

    def test_action_row_must_be_an_object(self):
        path = self.write('bad.act', (SAMPLES / 'neg-z3.act').read_text().replace(
            '"0": {"0": "0", "1": "1", "2": "2"}', '"0": ["0"]',
        ))
        status, text = run(['gen', 'orbit', sample('z3.grp'), '--action', path])
        self.assertEqual(status, 2)
        self.assertIn("action row '0'", text)

    def test_map_image_must_be_text(self):
        path = self.write('bad.map', '{"maps": [{"e": ["e"], "a": "a"}, {"e": "e", "a": "a"}]}')
        status, _ = run([
            'lift', sample('t2.shg'), sample('t2.shg'), '--target', sample('t2.shg'), '--hom', path,
        ])
        self.assertEqual(status, 2)

    def test_declared_identity_outside_the_elements(self):
        document = (SAMPLES / 't2.shg').read_text().replace('"identity": "e"', '"identity": "z"')
        path = self.write('bad.shg', document)
        with self.assertRaises(ValidationError) as ctx:
            parse_structure(Path(path).read_bytes())
        self.assertEqual(ctx.exception.code, 'parse_error')
        self.assertEqual(run(['check', path])[0], 2)
