# ratmeasure/tests.py
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from .measures import (
    FiniteMeasure, as_rational, convolve_extend, format_measure, is_probability,
    linear_combine, mass, parse_weight, point_mass,
)

POINTS = ('e', 'a', 'b')

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)
measures = st.dictionaries(st.sampled_from(POINTS), rationals, max_size=3).map(FiniteMeasure)


def cyclic_convolution(x, y):
    """Z3 on e, a, b as a point-mass rule."""
    index = {'e': 0, 'a': 1, 'b': 2}
    return point_mass(POINTS[(index[x] + index[y]) % 3])


def smeared_convolution(x, y):
    if x == 'e':
        return point_mass(y)
    if y == 'e':
        return point_mass(x)
    return FiniteMeasure({'e': Fraction(1, 3), x: Fraction(1, 3), y: Fraction(1, 3)})


class ParseWeightTests(SimpleTestCase):

    def test_fraction_and_integer_text(self):
        self.assertEqual(parse_weight('1/2'), Fraction(1, 2))
        self.assertEqual(parse_weight(' 3 / 6 '), Fraction(1, 2))
        self.assertEqual(parse_weight('-2'), Fraction(-2))

    def test_decimal_is_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_weight('0.5')
        self.assertEqual(ctx.exception.code, 'inexact_weight')

    def test_zero_denominator(self):
        with self.assertRaises(ValidationError) as ctx:
            parse_weight('1/0')
        self.assertEqual(ctx.exception.code, 'parse_error')

    def test_float_coefficient_is_rejected(self):
        with self.assertRaises(ValidationError) as ctx:
            as_rational(0.5)
        self.assertEqual(ctx.exception.code, 'inexact_weight')
        self.assertEqual(as_rational('2/4'), Fraction(1, 2))


class FiniteMeasureTests(SimpleTestCase):

    def test_zero_weights_are_dropped(self):
        mu = FiniteMeasure({'e': 0, 'a': Fraction(1, 2)})
        self.assertEqual(mu.support, frozenset({'a'}))
        self.assertEqual(mu, FiniteMeasure({'a': '1/2'}))

    def test_arithmetic(self):
        mu = FiniteMeasure({'e': '1/2', 'a': '1/2'})
        nu = point_mass('a')
        self.assertEqual(mu - nu, FiniteMeasure({'e': '1/2', 'a': '-1/2'}))
        self.assertEqual(2 * mu, FiniteMeasure({'e': 1, 'a': 1}))
        self.assertEqual(mu + (-mu), FiniteMeasure())
        self.assertEqual(mu.weight('b'), 0)

    def test_pushforward_merges_points(self):
        mu = FiniteMeasure({'a': '1/3', 'b': '2/3'})
        self.assertEqual(mu.pushforward(lambda x: 'x'), point_mass('x'))

    def test_probability(self):
        self.assertTrue(is_probability(FiniteMeasure({'e': '1/2', 'a': '1/2'})))
        self.assertFalse(is_probability(FiniteMeasure({'e': '1', 'a': '1/2'})))
        self.assertFalse(is_probability(FiniteMeasure({'e': '3/2', 'a': '-1/2'})))
        self.assertFalse(is_probability(FiniteMeasure()))

    def test_format(self):
        self.assertEqual(format_measure(FiniteMeasure({'e': '1/2', 'a': '1/2'})), '1/2 * a + 1/2 * e')
        self.assertEqual(format_measure(FiniteMeasure()), '0')
        self.assertEqual(str(point_mass('a')), '1 * a')

    def test_convolve_extend_point_masses(self):
        self.assertEqual(convolve_extend(point_mass('a'), point_mass('a'), cyclic_convolution), point_mass('b'))
        mixed = convolve_extend(
            FiniteMeasure({'e': '1/2', 'a': '1/2'}), point_mass('a'), cyclic_convolution,
        )
        self.assertEqual(mixed, FiniteMeasure({'a': '1/2', 'b': '1/2'}))

    def test_convolve_extend_undefined_pair(self):
        with self.assertRaises(ValidationError) as ctx:
            convolve_extend(point_mass('a'), point_mass('z'), lambda x, y: {}[(x, y)])
        self.assertEqual(ctx.exception.code, 'undefined_pair')


class ConvolutionLawTests(SimpleTestCase):

    @settings(max_examples=60)
    @given(measures, measures, measures)
    def test_bilinear_in_the_left_operand(self, mu, mu2, nu):
        left = convolve_extend(mu + mu2, nu, smeared_convolution)
        right = convolve_extend(mu, nu, smeared_convolution) + convolve_extend(mu2, nu, smeared_convolution)
        self.assertEqual(left, right)

    @settings(max_examples=60)
    @given(measures, measures)
    def test_mass_is_multiplicative(self, mu, nu):
        self.assertEqual(mass(convolve_extend(mu, nu, smeared_convolution)), mass(mu) * mass(nu))

    @settings(max_examples=60)
    @given(rationals, measures, measures)
    def test_scalars_pull_out(self, c, mu, nu):
        self.assertEqual(
            convolve_extend(c * mu, nu, cyclic_convolution),
            linear_combine([(c, convolve_extend(mu, nu, cyclic_convolution))]),
        )
