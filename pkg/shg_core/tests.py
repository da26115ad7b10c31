# shg_core/tests.py
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from constructions.builders import group_semihypergroup, left_zero_semigroup
from constructions.groups import FiniteGroup
from ratmeasure.measures import FiniteMeasure, point_mass

from .checks import (
    find_identity, find_isomorphism, is_commutative, is_pure, is_sub_semihypergroup,
    purity_witness, subset_convolution, verify_axioms,
)
from .homomorphisms import Homomorphism, check_homomorphism, compose, gamma_lift
from .structures import FiniteSemihypergroup

HALF = Fraction(1, 2)


def t2(name='T2', letter='a'):
    return FiniteSemihypergroup.from_rows(name, ('e', letter), {
        'e': {'e': {'e': 1}, letter: {letter: 1}},
        letter: {'e': {letter: 1}, letter: {'e': HALF, letter: HALF}},
    })


class StructureTests(SimpleTestCase):

    def test_missing_entry(self):
        with self.assertRaises(ValidationError) as ctx:
            FiniteSemihypergroup('K', ('e', 'a'), {('e', 'e'): {'e': 1}})
        self.assertEqual(ctx.exception.code, 'missing_entry')
        self.assertEqual(ctx.exception.params['y'], 'a')

    def test_foreign_support(self):
        table = {(x, y): {'z': 1} for x in 'ab' for y in 'ab'}
        with self.assertRaises(ValidationError) as ctx:
            FiniteSemihypergroup('K', ('a', 'b'), table)
        self.assertEqual(ctx.exception.code, 'foreign_support')

    def test_declared_identity_is_checked(self):
        with self.assertRaises(ValidationError) as ctx:
            t2().with_identity('a')
        self.assertEqual(ctx.exception.code, 'identity_law')

    def test_convolve_unknown_pair(self):
        with self.assertRaises(ValidationError) as ctx:
            t2().convolve('a', 'z')
        self.assertEqual(ctx.exception.code, 'undefined_pair')

    def test_equality_ignores_name(self):
        self.assertEqual(t2(), t2().renamed('other'))
        self.assertNotEqual(t2(), t2(letter='b'))


class AxiomTests(SimpleTestCase):

    def test_t2_passes(self):
        report = verify_axioms(t2())
        self.assertTrue(report.passed)
        self.assertEqual(report.triples_checked, 8)
        self.assertEqual(report.summary(), 'A1: pass (8 triples); A3: pass')

    def test_s3_passes_and_is_not_pure(self):
        S3 = group_semihypergroup(FiniteGroup.symmetric(3))
        report = verify_axioms(S3)
        self.assertTrue(report.passed)
        self.assertEqual(report.triples_checked, 216)
        self.assertFalse(is_pure(S3))

    def test_heavy_row_fails_a3(self):
        K = FiniteSemihypergroup.from_rows('H', ('e', 'a'), {
            'e': {'e': {'e': 1}, 'a': {'a': 1}},
            'a': {'e': {'a': 1}, 'a': {'e': 1, 'a': HALF}},
        })
        report = verify_axioms(K)
        self.assertFalse(report.passed)
        self.assertEqual(report.a3_violations[0].witness, ('a', 'a'))
        self.assertIn('A3 violation at (a, a)', report.a3_violations[0].describe())

    def test_nonassociative_table_fails_a1(self):
        products = {('a', 'a'): 'b', ('a', 'b'): 'a', ('b', 'a'): 'a', ('b', 'b'): 'a'}
        K = FiniteSemihypergroup('M', ('a', 'b'), {pair: point_mass(z) for pair, z in products.items()})
        report = verify_axioms(K)
        self.assertFalse(report.passed)
        self.assertIn(('a', 'a', 'b'), [v.witness for v in report.a1_violations])
        self.assertEqual(report.a3_violations, [])


class IdentityAndPurityTests(SimpleTestCase):

    def test_identity_detection(self):
        self.assertEqual(find_identity(t2()), 'e')
        self.assertIsNone(find_identity(left_zero_semigroup()))

    def test_purity(self):
        self.assertTrue(is_pure(t2()))
        Z2 = group_semihypergroup(FiniteGroup.cyclic(2))
        self.assertEqual(purity_witness(Z2), ('1', '1'))

    def test_pure_without_identity(self):
        self.assertTrue(is_pure(left_zero_semigroup()))

    def test_commutativity(self):
        self.assertTrue(is_commutative(t2()))
        self.assertFalse(is_commutative(left_zero_semigroup()))

    def test_subset_convolution(self):
        K = t2()
        self.assertEqual(subset_convolution(K, {'a'}, {'a'}), frozenset({'e', 'a'}))
        self.assertTrue(is_sub_semihypergroup(K, {'e'}))
        self.assertFalse(is_sub_semihypergroup(K, {'a'}))


class IsomorphismTests(SimpleTestCase):

    def test_relabelled_copy(self):
        K = t2()
        L = K.relabel({'e': 'e', 'a': 'b'}, name='T2b')
        self.assertEqual(L, t2(letter='b'))
        self.assertEqual(find_isomorphism(K, L), {'e': 'e', 'a': 'b'})

    def test_not_isomorphic(self):
        Z2 = group_semihypergroup(FiniteGroup.cyclic(2))
        self.assertIsNone(find_isomorphism(t2(), Z2))

    def test_relabel_preserves_purity(self):
        self.assertTrue(is_pure(t2().relabel({'e': '1', 'a': 'x'})))
        Z2 = group_semihypergroup(FiniteGroup.cyclic(2))
        copy = Z2.relabel({'0': 'e', '1': 'g'})
        self.assertEqual(copy.identity, 'e')
        self.assertFalse(is_pure(copy))
        self.assertEqual(purity_witness(copy), ('g', 'g'))

    def test_relabel_must_be_injective(self):
        with self.assertRaises(ValidationError):
            t2().relabel({'e': 'x', 'a': 'x'})


class HomomorphismTests(SimpleTestCase):

    def test_identity_map(self):
        report = check_homomorphism(Homomorphism.identity_map(t2()))
        self.assertTrue(report.passed)
        self.assertEqual(report.pairs_checked, 4)

    def test_constant_maps(self):
        K = t2()
        self.assertTrue(check_homomorphism(Homomorphism.constant(K, K, 'e')).passed)
        report = check_homomorphism(Homomorphism.constant(K, K, 'a'))
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0].pair, ('e', 'e'))

    def test_gamma_lift_rejects_non_homomorphism(self):
        K = t2()
        with self.assertRaises(ValidationError) as ctx:
            gamma_lift(Homomorphism.constant(K, K, 'a'))
        self.assertEqual(ctx.exception.code, 'not_homomorphism')

    def test_partial_map(self):
        with self.assertRaises(ValidationError) as ctx:
            Homomorphism(t2(), t2(), {'e': 'e'})
        self.assertEqual(ctx.exception.code, 'foreign_element')

    def test_compose(self):
        K, L = t2(), t2(letter='b')
        phi = Homomorphism(K, L, {'e': 'e', 'a': 'b'})
        psi = Homomorphism(L, K, {'e': 'e', 'b': 'a'})
        self.assertEqual(compose(psi, phi).mapping, {'e': 'e', 'a': 'a'})
        with self.assertRaises(ValidationError):
            compose(phi, phi)

    @settings(max_examples=50)
    @given(
        st.dictionaries(st.sampled_from(('e', 'a')), st.fractions(0, 1, max_denominator=8)),
        st.dictionaries(st.sampled_from(('e', 'a')), st.fractions(0, 1, max_denominator=8)),
    )
    def test_lift_is_multiplicative(self, left, right):
        K, L = t2(), t2(letter='b')
        lift = gamma_lift(Homomorphism(K, L, {'e': 'e', 'a': 'b'}))
        mu, nu = FiniteMeasure(left), FiniteMeasure(right)
        self.assertEqual(lift(K.convolve_measures(mu, nu)), L.convolve_measures(lift(mu), lift(nu)))

    def test_swapping_the_group_elements_is_not_a_homomorphism(self):
        Z2 = group_semihypergroup(FiniteGroup.cyclic(2))
        report = check_homomorphism(Homomorphism(Z2, Z2, {'0': '1', '1': '0'}))
        self.assertFalse(report.passed)
        failure = next(f for f in report.failures if f.pair == ('1', '1'))
        self.assertEqual(failure.pushforward, point_mass('1'))
        self.assertEqual(failure.convolution, point_mass('0'))

    def test_lift_rejects_foreign_points(self):
        lift = gamma_lift(Homomorphism.identity_map(t2()))
        with self.assertRaises(ValidationError) as ctx:
            lift(FiniteMeasure({'e': HALF, 'z': HALF}))
        self.assertEqual(ctx.exception.code, 'foreign_element')
        self.assertEqual(ctx.exception.params['foreign'], ['z'])


class CompositionTests(SimpleTestCase):

    def setUp(self):
        self.K, self.L, self.M = t2(), t2(letter='b'), t2(letter='c')
        self.phi = Homomorphism(self.K, self.L, {'e': 'e', 'a': 'b'})
        self.psi = Homomorphism(self.L, self.M, {'e': 'e', 'b': 'c'})

    def test_composite_is_a_homomorphism(self):
        composite = compose(self.psi, self.phi)
        self.assertEqual(composite.mapping, {'e': 'e', 'a': 'c'})
        self.assertTrue(check_homomorphism(composite).passed)
        collapsed = compose(Homomorphism.constant(self.L, self.M, 'e'), self.phi)
        self.assertTrue(check_homomorphism(collapsed).passed)

    @settings(max_examples=50)
    @given(st.dictionaries(st.sampled_from(('e', 'a')), st.fractions(-1, 1, max_denominator=8)))
    def test_lift_of_composite_is_composite_of_lifts(self, weights):
        mu = FiniteMeasure(weights)
        composite = gamma_lift(compose(self.psi, self.phi))
        self.assertEqual(composite(mu), gamma_lift(self.psi)(gamma_lift(self.phi)(mu)))
