# constructions/tests.py
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from ratmeasure.measures import FiniteMeasure, point_mass
from shg_core.checks import (
    find_identity, find_isomorphism, is_commutative, is_isomorphism, is_pure, purity_witness, verify_axioms,
)

from .builders import (
    coset_space, double_coset_space, from_semigroup, group_semihypergroup,
    left_zero_semigroup, orbit_space, three_element_hypergroup,
)
from .free_words import FreeWord, free_words_semihypergroup
from .groups import FiniteGroup, GroupAction, cycle_name, negation_action

H_S3 = ['e', '(12)']
VALID = dict(x1='1/4', x2='1/4', x3='1/2', y1='1/4', y2='1/2', y3='1/4', z1='1/2', z2='1/2')
PERTURBED = dict(x1='1/3', x2='1/3', x3='1/3', y1='1/4', y2='1/2', y3='1/4', z1='1/2', z2='1/2')


def brute_force_coset_product(group, subgroup, x, y):
    """Direct average over H of the cosets (x t y)H, with cosets as frozensets."""
    weights = {}
    for t in subgroup:
        z = group.mul(x, t, y)
        coset = frozenset(group.mul(z, h) for h in subgroup)
        weights[coset] = weights.get(coset, 0) + Fraction(1, len(subgroup))
    return {group.label(coset): weight for coset, weight in weights.items()}


class FiniteGroupTests(SimpleTestCase):

    def test_symmetric_group_order_and_names(self):
        S3 = FiniteGroup.symmetric(3)
        self.assertEqual(S3.elements, ('e', '(12)', '(13)', '(23)', '(123)', '(132)'))
        self.assertEqual(S3.identity, 'e')
        self.assertEqual(S3.mul('(12)', '(13)'), '(132)')
        self.assertEqual(S3.inverse['(123)'], '(132)')

    def test_cycle_name(self):
        self.assertEqual(cycle_name((1, 2, 3)), 'e')
        self.assertEqual(cycle_name((2, 3, 1)), '(123)')

    def test_cyclic_group(self):
        Z4 = FiniteGroup.cyclic(4)
        self.assertEqual(Z4.mul('3', '3'), '2')
        self.assertEqual(Z4.inverse['1'], '3')

    def test_table_leaving_the_set(self):
        with self.assertRaises(ValidationError) as ctx:
            FiniteGroup(('0', '1'), {('0', '0'): '0', ('0', '1'): '1', ('1', '0'): '1', ('1', '1'): '2'})
        self.assertEqual(ctx.exception.code, 'not_group')

    def test_semigroup_without_inverses(self):
        L = {(x, y): x for x in 'ab' for y in 'ab'}
        with self.assertRaises(ValidationError) as ctx:
            FiniteGroup(('a', 'b'), L)
        self.assertEqual(ctx.exception.code, 'not_group')

    def test_subgroup_validation(self):
        S3 = FiniteGroup.symmetric(3)
        self.assertEqual(S3.subgroup(H_S3), frozenset(H_S3))
        with self.assertRaises(ValidationError) as ctx:
            S3.subgroup(['e', '(123)'])
        self.assertEqual(ctx.exception.code, 'not_subgroup')
        with self.assertRaises(ValidationError):
            S3.subgroup(['(12)'])

    def test_label_uses_element_order(self):
        S3 = FiniteGroup.symmetric(3)
        self.assertEqual(S3.label({'(132)', '(13)'}), '{(13),(132)}')


class GroupActionTests(SimpleTestCase):

    def test_negation_orbits(self):
        action = negation_action(FiniteGroup.cyclic(3))
        self.assertEqual(action.orbit('1'), frozenset({'1', '2'}))
        self.assertEqual(action.orbit('0'), frozenset({'0'}))

    def test_translation_by_one_is_not_a_z2_action(self):
        Z2, Z3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
        pi = {('0', x): x for x in Z3}
        pi.update({('1', x): Z3.mul(x, '1') for x in Z3})
        with self.assertRaises(ValidationError) as ctx:
            GroupAction(Z2, Z3, pi)
        self.assertEqual(ctx.exception.code, 'not_action')


class SemigroupTests(SimpleTestCase):

    def test_group_as_semihypergroup(self):
        Z3 = group_semihypergroup(FiniteGroup.cyclic(3))
        self.assertEqual(Z3.identity, '0')
        self.assertEqual(Z3.convolve('2', '2'), point_mass('1'))

    def test_left_zero_semigroup_has_no_identity(self):
        L = left_zero_semigroup()
        self.assertIsNone(L.identity)
        self.assertTrue(verify_axioms(L).passed)

    def test_nonassociative_cayley_table(self):
        cayley = {('a', 'a'): 'b', ('a', 'b'): 'a', ('b', 'a'): 'a', ('b', 'b'): 'a'}
        with self.assertRaises(ValidationError) as ctx:
            from_semigroup(('a', 'b'), cayley)
        self.assertEqual(ctx.exception.code, 'not_associative')

    def test_monoid_without_inverses_is_pure(self):
        cayley = {('e', 'e'): 'e', ('e', 'z'): 'z', ('z', 'e'): 'z', ('z', 'z'): 'z'}
        M = from_semigroup(('e', 'z'), cayley, name='M')
        self.assertEqual(M.identity, 'e')
        self.assertTrue(is_pure(M))

    def test_group_with_inverses_is_not_pure(self):
        S3 = group_semihypergroup(FiniteGroup.symmetric(3))
        self.assertFalse(is_pure(S3))
        self.assertEqual(purity_witness(S3), ('(12)', '(12)'))

    def test_missing_product(self):
        with self.assertRaises(ValidationError) as ctx:
            from_semigroup(('a', 'b'), {('a', 'a'): 'a'})
        self.assertEqual(ctx.exception.code, 'missing_entry')


class ThreeElementTests(SimpleTestCase):

    def test_valid_parameters(self):
        T = three_element_hypergroup(**VALID)
        self.assertEqual(T.identity, 'e')
        self.assertTrue(verify_axioms(T).passed)
        self.assertTrue(is_commutative(T))
        self.assertTrue(is_pure(T))
        self.assertEqual(T.convolve('a', 'b'), FiniteMeasure({'a': '1/2', 'b': '1/2'}))

    def test_perturbed_parameters_are_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            three_element_hypergroup(**PERTURBED)
        self.assertEqual(ctx.exception.code, 'constraint_violated')
        self.assertEqual(ctx.exception.params['equation'], 'y1x3 = z1x1')
        self.assertEqual(ctx.exception.params['left'], Fraction(1, 12))
        self.assertEqual(ctx.exception.params['right'], Fraction(1, 6))

    def test_force_built_perturbed_table_fails_at_aab(self):
        T = three_element_hypergroup(**PERTURBED, validate=False)
        report = verify_axioms(T)
        self.assertEqual(report.a3_violations, [])
        violation = next(v for v in report.a1_violations if v.witness == ('a', 'a', 'b'))
        self.assertEqual(violation.left.weight('e'), Fraction(1, 12))
        self.assertEqual(violation.right.weight('e'), Fraction(1, 6))

    def test_uniform_x_with_half_y_is_not_associative(self):
        params = dict(x1='1/3', x2='1/3', x3='1/3', y1='1/2', y2='1/4', y3='1/4', z1='1/2', z2='1/2')
        with self.assertRaises(ValidationError) as ctx:
            three_element_hypergroup(**params)
        self.assertEqual(ctx.exception.params['equation'], 'x3y2 = z1z2')
        report = verify_axioms(three_element_hypergroup(**params, validate=False))
        self.assertIn(('a', 'b', 'b'), [v.witness for v in report.a1_violations])

    def test_sum_and_sign_constraints(self):
        with self.assertRaises(ValidationError) as ctx:
            three_element_hypergroup(**dict(VALID, z2='1/4'))
        self.assertEqual(ctx.exception.params['equation'], 'z1+z2 = 1')
        with self.assertRaises(ValidationError) as ctx:
            three_element_hypergroup(**dict(VALID, x1='-1/4', x2='3/4'))
        self.assertEqual(ctx.exception.params['equation'], 'nonnegativity')

    def test_float_parameters_are_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            three_element_hypergroup(**dict(VALID, x1=0.25))
        self.assertEqual(ctx.exception.code, 'inexact_weight')


class CosetSpaceTests(SimpleTestCase):

    def setUp(self):
        self.S3 = FiniteGroup.symmetric(3)

    def test_s3_mod_transposition(self):
        K = coset_space(self.S3, H_S3)
        self.assertEqual(K.elements, ('{e,(12)}', '{(13),(123)}', '{(23),(132)}'))
        self.assertTrue(verify_axioms(K).passed)
        self.assertEqual(
            K.convolve('{(13),(123)}', '{(23),(132)}'),
            FiniteMeasure({'{(23),(132)}': '1/2', '{e,(12)}': '1/2'}),
        )

    def test_matches_direct_average(self):
        K = coset_space(self.S3, H_S3)
        H = self.S3.subgroup(H_S3)
        for x in self.S3:
            for y in self.S3:
                expected = brute_force_coset_product(self.S3, H, x, y)
                left = self.S3.label(frozenset(self.S3.mul(x, h) for h in H))
                right = self.S3.label(frozenset(self.S3.mul(y, h) for h in H))
                self.assertEqual(K.convolve(left, right), FiniteMeasure(expected))

    def test_non_normal_subgroup_is_a_right_identity_only(self):
        K = coset_space(self.S3, H_S3)
        self.assertIsNone(K.identity)
        for label in K.elements:
            self.assertEqual(K.convolve(label, '{e,(12)}'), point_mass(label))
        self.assertNotEqual(K.convolve('{e,(12)}', '{(13),(123)}'), point_mass('{(13),(123)}'))
        self.assertTrue(is_pure(K))

    def test_normal_subgroup_is_the_identity(self):
        Z4 = FiniteGroup.cyclic(4)
        K = coset_space(Z4, ['0', '2'])
        self.assertEqual(K.identity, '{0,2}')
        self.assertEqual(K.convolve('{1,3}', '{1,3}'), point_mass('{0,2}'))
        self.assertEqual(find_isomorphism(K, group_semihypergroup(FiniteGroup.cyclic(2))), {'{0,2}': '0', '{1,3}': '1'})

    def test_double_cosets(self):
        K = double_coset_space(self.S3, H_S3)
        self.assertEqual(K.elements, ('{e,(12)}', '{(13),(23),(123),(132)}'))
        self.assertEqual(K.identity, '{e,(12)}')
        a = '{(13),(23),(123),(132)}'
        self.assertEqual(K.convolve(a, a), FiniteMeasure({'{e,(12)}': '1/2', a: '1/2'}))
        self.assertTrue(verify_axioms(K).passed)
        self.assertTrue(is_pure(K))

    def test_trivial_subgroup_gives_back_the_group(self):
        S3 = group_semihypergroup(self.S3)
        natural = {'{' + x + '}': x for x in self.S3}
        for K in (coset_space(self.S3, ['e']), double_coset_space(self.S3, ['e'])):
            self.assertEqual(len(K), 6)
            self.assertEqual(K.identity, '{e}')
            self.assertTrue(is_isomorphism(K, S3, natural), K.name)

    def test_double_cosets_of_a_normal_subgroup(self):
        K = double_coset_space(FiniteGroup.cyclic(4), ['0', '2'])
        self.assertEqual(K.elements, ('{0,2}', '{1,3}'))
        self.assertEqual(
            find_isomorphism(K, group_semihypergroup(FiniteGroup.cyclic(2))),
            {'{0,2}': '0', '{1,3}': '1'},
        )


class OrbitSpaceTests(SimpleTestCase):

    def test_negation_on_z3(self):
        K = orbit_space(negation_action(FiniteGroup.cyclic(3)))
        self.assertEqual(K.elements, ('{0}', '{1,2}'))
        self.assertEqual(K.identity, '{0}')
        self.assertEqual(K.convolve('{1,2}', '{1,2}'), FiniteMeasure({'{0}': '1/2', '{1,2}': '1/2'}))
        self.assertTrue(verify_axioms(K).passed)
        self.assertTrue(is_pure(K))

    def test_negation_on_z4(self):
        K = orbit_space(negation_action(FiniteGroup.cyclic(4)))
        self.assertEqual(K.elements, ('{0}', '{1,3}', '{2}'))
        self.assertEqual(K.convolve('{1,3}', '{1,3}'), FiniteMeasure({'{0}': '1/2', '{2}': '1/2'}))
        self.assertEqual(K.convolve('{2}', '{1,3}'), point_mass('{1,3}'))
        self.assertTrue(verify_axioms(K).passed)

    def test_trivial_action_gives_back_the_group(self):
        Z3 = FiniteGroup.cyclic(3)
        K = orbit_space(GroupAction.trivial(FiniteGroup.cyclic(2), Z3))
        self.assertEqual(find_identity(K), '{0}')
        self.assertIsNotNone(find_isomorphism(K, group_semihypergroup(Z3)))


class FreeWordsTests(SimpleTestCase):

    def test_concatenation(self):
        W = free_words_semihypergroup('ab')
        self.assertEqual(W.convolve(W.word('a'), W.word('b', 'a')), point_mass(FreeWord(('a', 'b', 'a'))))
        self.assertEqual(W.convolve(W.identity, W.word('a')), point_mass(W.word('a')))

    def test_enumeration_and_membership(self):
        W = free_words_semihypergroup('ab')
        self.assertEqual(len(W.enumerate_words(2)), 7)
        self.assertIn(FreeWord(('a', 'b')), W)
        with self.assertRaises(ValidationError) as ctx:
            W.word('c')
        self.assertEqual(ctx.exception.code, 'invalid_word')

    def test_rendering(self):
        self.assertEqual(str(FreeWord()), 'e')
        self.assertEqual(str(FreeWord(('a', 'b'))), '(a b)')

    def test_measure_convolution(self):
        W = free_words_semihypergroup('ab')
        mu = FiniteMeasure({W.word('a'): '1/2', W.identity: '1/2'})
        nu = point_mass(W.word('b'))
        self.assertEqual(
            W.convolve_measures(mu, nu),
            FiniteMeasure({W.word('a', 'b'): '1/2', W.word('b'): '1/2'}),
        )
