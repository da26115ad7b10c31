# freeprod/tests.py
from fractions import Fraction
from itertools import product

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from constructions.builders import group_semihypergroup, left_zero_semigroup
from constructions.groups import FiniteGroup
from ratmeasure.measures import FiniteMeasure, is_probability, point_mass
from shg_core.homomorphisms import Homomorphism, gamma_lift
from shg_core.structures import FiniteSemihypergroup

from .lifts import universal_lift
from .products import build_free_product
from .words import EMPTY_WORD, IdentityMode, Letter, Word

HALF, QUARTER = Fraction(1, 2), Fraction(1, 4)


def t2(letter='a'):
    return FiniteSemihypergroup.from_rows('T2', ('e', letter), {
        'e': {'e': {'e': 1}, letter: {letter: 1}},
        letter: {'e': {letter: 1}, letter: {'e': HALF, letter: HALF}},
    }, identity='e')


class FreeProductFixture(SimpleTestCase):

    def setUp(self):
        self.F = build_free_product([t2('a'), t2('b')])
        self.a = self.F.word(('a', 1))
        self.b = self.F.word(('b', 2))
        self.ab = self.F.word(('a', 1), ('b', 2))
        self.ba = self.F.word(('b', 2), ('a', 1))
        self.aba = self.F.word(('a', 1), ('b', 2), ('a', 1))


class BuildTests(SimpleTestCase):

    def test_two_pure_factors_share_the_identity(self):
        F = build_free_product([t2('a'), t2('b')])
        self.assertIs(F.mode, IdentityMode.SHARED)
        self.assertEqual(F.identity, EMPTY_WORD)

    def test_groups_are_rejected(self):
        Z2 = group_semihypergroup(FiniteGroup.cyclic(2))
        with self.assertRaises(ValidationError) as ctx:
            build_free_product([Z2, Z2])
        self.assertEqual(ctx.exception.code, 'not_pure')
        self.assertEqual(ctx.exception.params['index'], 1)
        self.assertEqual(ctx.exception.params['witness'], ('1', '1'))

    def test_one_identity_is_renamed(self):
        F = build_free_product([t2(), left_zero_semigroup(('p', 'q'))])
        self.assertIs(F.mode, IdentityMode.RENAMED)
        self.assertIsNone(F.identity)
        self.assertEqual(F.renamed_identity, Letter(0, 'e'))
        self.assertTrue(F.validate_word(Word((Letter(0, 'e'),))))
        self.assertFalse(F.validate_word(EMPTY_WORD))

    def test_no_identities(self):
        F = build_free_product([left_zero_semigroup(('p', 'q')), left_zero_semigroup(('r', 's'))])
        self.assertIs(F.mode, IdentityMode.NO_IDENTITY)
        self.assertEqual(len(F.enumerate_words(2)), 2 + 2 + 8)

    def test_needs_a_factor(self):
        with self.assertRaises(ValidationError):
            build_free_product([])


class WordTests(FreeProductFixture):

    def test_validate_word(self):
        self.assertTrue(self.F.validate_word(self.ab))
        self.assertFalse(self.F.validate_word(Word((Letter(0, 'a'), Letter(0, 'a')))))
        self.assertFalse(self.F.validate_word(Word((Letter(0, 'e'),))))
        self.assertFalse(self.F.validate_word(Word((Letter(0, 'b'),))))
        self.assertTrue(self.F.validate_word(EMPTY_WORD))

    def test_rendering_and_parsing(self):
        self.assertEqual(str(self.ab), '(a@1 b@2)')
        self.assertEqual(str(EMPTY_WORD), 'e')
        self.assertEqual(self.F.parse_word('(a@1 b@2)'), self.ab)
        self.assertEqual(self.F.parse_word('e'), EMPTY_WORD)
        for text in ('(a@1 a@1)', '(z@1)', '(a@3)', 'a@1', '(e@1)'):
            with self.assertRaises(ValidationError) as ctx:
                self.F.parse_word(text)
            self.assertEqual(ctx.exception.code, 'invalid_word')

    def test_embedding(self):
        self.assertEqual(self.F.embed_factor(0, 'a'), self.a)
        self.assertEqual(self.F.embed_factor(0, 'e'), EMPTY_WORD)
        with self.assertRaises(ValidationError):
            self.F.embed_factor(1, 'a')
        for alpha in (0, 1):
            self.assertTrue(self.F.check_embedding(alpha).passed)

    def test_enumeration(self):
        self.assertEqual(self.F.enumerate_words(0), [EMPTY_WORD])
        self.assertEqual(self.F.enumerate_words(2), [EMPTY_WORD, self.a, self.b, self.ab, self.ba])
        words = self.F.enumerate_words(3)
        self.assertEqual(len(words), 7)
        self.assertEqual(words[5:], [self.aba, self.F.word(('b', 2), ('a', 1), ('b', 2))])


class ConvolutionTests(FreeProductFixture):

    def test_different_junction_factors_concatenate(self):
        self.assertEqual(self.F.convolve_words(self.a, self.b), point_mass(self.ab))

    def test_same_letter_collapses_to_identity(self):
        measure = self.F.convolve_words(self.a, self.a)
        self.assertEqual(measure, FiniteMeasure({EMPTY_WORD: HALF, self.a: HALF}))
        self.assertEqual(str(measure), '1/2 * e + 1/2 * (a@1)')

    def test_identity_mass_recurses(self):
        measure = self.F.convolve_words(self.ab, self.ba)
        self.assertEqual(measure, FiniteMeasure({self.aba: HALF, self.a: QUARTER, EMPTY_WORD: QUARTER}))

    def test_empty_word_is_the_identity(self):
        self.assertEqual(self.F.convolve_words(EMPTY_WORD, self.ab), point_mass(self.ab))
        self.assertEqual(self.F.convolve_words(self.ab, EMPTY_WORD), point_mass(self.ab))
        self.assertTrue(self.F.check_identity_law(4).passed)

    def test_invalid_operand(self):
        with self.assertRaises(ValidationError) as ctx:
            self.F.convolve_words(Word((Letter(0, 'e'),)), self.a)
        self.assertEqual(ctx.exception.code, 'invalid_word')

    def test_probability_and_closure_up_to_length_three(self):
        words = self.F.enumerate_words(3)
        for x, y in product(words, repeat=2):
            measure = self.F.convolve_words(x, y)
            self.assertTrue(is_probability(measure), f'{x} * {y}')
            self.assertTrue(all(self.F.validate_word(w) for w in measure), f'{x} * {y}')
            self.assertLessEqual(max(len(w) for w in measure), len(x) + len(y))

    def test_associativity_on_short_words(self):
        report = self.F.check_associativity(2)
        self.assertTrue(report.passed, report.summary())
        self.assertEqual(report.triples_checked, 125)

    def test_renamed_mode_keeps_the_identity_letter(self):
        F = build_free_product([t2(), left_zero_semigroup(('p', 'q'))])
        e1, a1 = Word((Letter(0, 'e'),)), Word((Letter(0, 'a'),))
        self.assertEqual(F.convolve_words(a1, a1), FiniteMeasure({e1: HALF, a1: HALF}))
        self.assertEqual(F.convolve_words(e1, e1), point_mass(e1))
        self.assertTrue(F.check_associativity(1).passed)
        with self.assertRaises(ValidationError):
            F.check_identity_law(1)

    @override_settings(SHG_SETTINGS={'WORD_CACHE_SIZE': 8})
    def test_convolution_memo_is_bounded(self):
        F = build_free_product([t2('a'), t2('b')])
        words = F.enumerate_words(3)
        for x, y in product(words, repeat=2):
            F.convolve_words(x, y)
        self.assertEqual(F._convolve.cache_info().maxsize, 8)
        self.assertLessEqual(F._convolve.cache_info().currsize, 8)
        self.assertEqual(F.convolve_words(self.ab, self.ba), self.F.convolve_words(self.ab, self.ba))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_associativity_on_sampled_long_words(self, data):
        words = self.F.enumerate_words(3)
        x, y, z = (data.draw(st.sampled_from(words)) for _ in range(3))
        left = self.F.convolve_measures(self.F.convolve_words(x, y), point_mass(z))
        right = self.F.convolve_measures(point_mass(x), self.F.convolve_words(y, z))
        self.assertEqual(left, right)


class SubsetProductTests(FreeProductFixture):

    def test_single_points(self):
        self.assertEqual(self.F.subset_product([(0, {'a'}), (1, {'b'})]), {self.ab})

    def test_identity_may_be_deleted(self):
        self.assertEqual(self.F.subset_product([(0, {'e', 'a'}), (1, {'b'})]), {self.b, self.ab})

    def test_three_sets_exclude_non_reduced_deletions(self):
        result = self.F.subset_product([(0, {'e', 'a'}), (1, {'e', 'b'}), (0, {'e', 'a'})])
        self.assertEqual(result, {self.aba, self.ab, self.ba, self.a, self.b, EMPTY_WORD})

    def test_non_alternating_sets(self):
        with self.assertRaises(ValidationError) as ctx:
            self.F.subset_product([(0, {'a'}), (0, {'a'})])
        self.assertEqual(ctx.exception.code, 'not_alternating')

    def test_support_matches_the_set_product(self):
        measure = self.F.convolve_words(self.ab, self.b)
        junction = self.F.factors[1].convolve('b', 'b').support
        self.assertEqual(measure.support, self.F.subset_product([(0, {'a'}), (1, junction)]))
        self.assertEqual(self.F.convolve_words(self.a, self.ba).support, {self.aba})


class UniversalLiftTests(SimpleTestCase):

    def setUp(self):
        self.T2 = t2()
        self.F = build_free_product([self.T2, self.T2])
        identity = Homomorphism.identity_map(self.T2)
        self.gamma = universal_lift(self.F, self.T2, [identity, identity])

    def test_empty_word_goes_to_the_identity(self):
        self.assertEqual(self.gamma(point_mass(EMPTY_WORD)), point_mass('e'))

    def test_image_of_a_word(self):
        word = self.F.word(('a', 1), ('a', 2))
        self.assertEqual(self.gamma(point_mass(word)), FiniteMeasure({'e': HALF, 'a': HALF}))
        left = self.gamma(self.F.convolve_words(self.F.word(('a', 1)), self.F.word(('a', 2))))
        right = self.T2.convolve_measures(
            self.gamma(point_mass(self.F.word(('a', 1)))), self.gamma(point_mass(self.F.word(('a', 2)))),
        )
        self.assertEqual(left, self.gamma(point_mass(word)))
        self.assertEqual(left, right)

    def test_multiplicative_and_restricts_to_factor_lifts(self):
        report = self.gamma.check_multiplicativity(2)
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 25)
        self.assertTrue(self.gamma.check_factor_restrictions().passed)
        factor_lift = gamma_lift(Homomorphism.identity_map(self.T2))
        for x in self.T2.elements:
            self.assertEqual(self.gamma(point_mass(self.F.embed_factor(1, x))), factor_lift(point_mass(x)))

    def test_multiplicative_extension_is_unique(self):
        self.assertEqual(self.gamma.disagreements(self.gamma, 3), [])
        collapse = lambda mu: mu.pushforward(lambda word: 'e')  # noqa: E731
        self.assertIn(self.F.word(('a', 1)), self.gamma.disagreements(collapse, 2))
        self.assertNotIn(EMPTY_WORD, self.gamma.disagreements(collapse, 2))

    def test_wrong_number_of_maps(self):
        with self.assertRaises(ValidationError) as ctx:
            universal_lift(self.F, self.T2, [Homomorphism.identity_map(self.T2)])
        self.assertEqual(ctx.exception.code, 'not_homomorphism')

    def test_non_homomorphism_is_rejected(self):
        bad = Homomorphism.constant(self.T2, self.T2, 'a')
        with self.assertRaises(ValidationError) as ctx:
            universal_lift(self.F, self.T2, [Homomorphism.identity_map(self.T2), bad])
        self.assertEqual(ctx.exception.code, 'not_homomorphism')
        self.assertEqual(ctx.exception.params['index'], 2)

    def test_target_without_identity(self):
        L = left_zero_semigroup(('p', 'q'))
        phi = Homomorphism.constant(self.T2, L, 'p')
        with self.assertRaises(ValidationError) as ctx:
            universal_lift(self.F, L, [phi, phi])
        self.assertEqual(ctx.exception.code, 'identity_not_preserved')

    @override_settings(SHG_SETTINGS={'WORD_CACHE_SIZE': 4})
    def test_image_memo_is_bounded(self):
        identity = Homomorphism.identity_map(self.T2)
        gamma = universal_lift(self.F, self.T2, [identity, identity])
        self.assertTrue(gamma.check_multiplicativity(2).passed)
        self.assertLessEqual(gamma.image_of_word.cache_info().currsize, 4)
