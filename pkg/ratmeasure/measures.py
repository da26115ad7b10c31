# ratmeasure/measures.py
"""
Exact rationals and finitely supported signed measures.

A FiniteMeasure is the finite-support stand-in for an element of M(K):
an immutable association point -> Fraction with zero weights dropped.
Convolution of measures is the bilinear extension of a point convolution
rule (x, y) -> FiniteMeasure.
"""

import re
from collections.abc import Mapping
from fractions import Fraction
from typing import Callable, Hashable

from django.core.exceptions import ValidationError

Point = Hashable
Rational = Fraction

WEIGHT_PATTERN = re.compile(r'^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$')


def parse_weight(text):
    """
    Parse a weight written as "p/q" or as an integer.

    Decimal and scientific notations are rejected: weights are exact.
    """
    if not isinstance(text, str):
        raise ValidationError(
            'Weight %(value)r must be quoted text such as "1/2"',
            code='inexact_weight',
            params={'value': text},
        )
    match = WEIGHT_PATTERN.match(text)
    if not match:
        raise ValidationError(
            'Weight %(value)r is not a rational of the form p/q or an integer',
            code='inexact_weight',
            params={'value': text},
        )
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ValidationError(
            'Weight %(value)r has a zero denominator',
            code='parse_error',
            params={'value': text},
        )
    return Fraction(int(numerator), int(denominator or 1))


def as_rational(value):
    """Coerce an int, Fraction or "p/q" text to a canonical Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(
            'Weight %(value)r is not exact; use an int, Fraction or "p/q" text',
            code='inexact_weight',
            params={'value': value},
        )
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_weight(value)
    raise ValidationError(
        'Unsupported weight type %(kind)s',
        code='inexact_weight',
        params={'kind': type(value).__name__},
    )


def point_sort_key(point):
    """Ordering used for rendering: words by their own key, anything else by text."""
    sort_key = getattr(point, 'sort_key', None)
    if callable(sort_key):
        return (0, sort_key())
    return (1, str(point))


class FiniteMeasure(Mapping):
    """Immutable finitely supported measure with exact rational weights."""

    __slots__ = ('_weights', '_hash')

    def __init__(self, weights=None):
        cleaned = {}
        for point, weight in (weights or {}).items():
            weight = as_rational(weight)
            if weight:
                cleaned[point] = weight
        self._weights = cleaned
        self._hash = None

    # Mapping protocol
    def __getitem__(self, point):
        return self._weights[point]

    def __iter__(self):
        return iter(self._weights)

    def __len__(self):
        return len(self._weights)

    def __eq__(self, other):
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._weights.items()))
        return self._hash

    # Arithmetic
    def __add__(self, other):
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        return linear_combine([(1, self), (1, other)])

    def __sub__(self, other):
        if not isinstance(other, FiniteMeasure):
            return NotImplemented
        return linear_combine([(1, self), (-1, other)])

    def __neg__(self):
        return linear_combine([(-1, self)])

    def __rmul__(self, scalar):
        return linear_combine([(scalar, self)])

    def weight(self, point):
        return self._weights.get(point, Fraction(0))

    @property
    def support(self):
        return frozenset(self._weights)

    def pushforward(self, mapping: Callable[[Point], Point]):
        """Move the weight of every point x to mapping(x)."""
        moved = {}
        for point, weight in self._weights.items():
            target = mapping(point)
            moved[target] = moved.get(target, Fraction(0)) + weight
        return FiniteMeasure(moved)

    def sorted_items(self):
        return sorted(self._weights.items(), key=lambda item: point_sort_key(item[0]))

    def __str__(self):
        return format_measure(self)

    def __repr__(self):
        return f'FiniteMeasure({format_measure(self)})'


PointConvolution = Callable[[Point, Point], FiniteMeasure]


# ============================================
# OPERATIONS
# ============================================

def point_mass(point):
    """p_x: the probability measure concentrated at one point."""
    return FiniteMeasure({point: Fraction(1)})


def linear_combine(terms):
    """Exact pointwise combination sum(c_i * mu_i); zero weights are dropped."""
    combined = {}
    for coefficient, measure in terms:
        coefficient = as_rational(coefficient)
        if not coefficient:
            continue
        for point, weight in measure.items():
            combined[point] = combined.get(point, Fraction(0)) + coefficient * weight
    return FiniteMeasure(combined)


def convolve_extend(mu, nu, conv):
    """
    Bilinear extension of a point convolution to finitely supported measures.

    Args:
        mu, nu: FiniteMeasure operands
        conv: callable (x, y) -> FiniteMeasure, total on supp(mu) x supp(nu)

    Returns:
        sum over x, y of mu(x) * nu(y) * conv(x, y)
    """
    combined = {}
    for x, mu_x in mu.items():
        for y, nu_y in nu.items():
            try:
                product = conv(x, y)
            except LookupError:
                product = None
            if product is None:
                raise ValidationError(
                    'Point convolution is undefined on the pair (%(x)s, %(y)s)',
                    code='undefined_pair',
                    params={'x': x, 'y': y},
                )
            scale = mu_x * nu_y
            for z, weight in product.items():
                combined[z] = combined.get(z, Fraction(0)) + scale * weight
    return FiniteMeasure(combined)


def mass(mu):
    """Sum of all weights (total variation for a positive measure)."""
    return sum(mu.values(), Fraction(0))


def is_probability(mu):
    return bool(mu) and all(weight > 0 for weight in mu.values()) and mass(mu) == 1


def format_measure(mu):
    """
    Canonical text: terms sorted by point, each "p/q * point", joined by " + ".
    The zero measure renders as "0".
    """
    if not mu:
        return '0'
    return ' + '.join(f'{weight} * {point}' for point, weight in mu.sorted_items())
