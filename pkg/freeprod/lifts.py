# freeprod/lifts.py
"""
The universal lift of a family of factor homomorphisms to the free product.

For phi_alpha: K_alpha -> H the lift sends a word to the ordered convolution
of the images of its letters in H,

    Gamma(p_(x1 ... xn)) = p_phi(x1) * ... * p_phi(xn),      Gamma(p_e) = p_{e_H},

and extends linearly to finitely supported measures over words.
"""

import logging
from functools import lru_cache
from itertools import product

from django.core.exceptions import ValidationError

from ratmeasure.measures import linear_combine, point_mass
from shg_core.checks import identity_of
from shg_core.homomorphisms import (
    HomomorphismFailure, HomomorphismReport, check_homomorphism, gamma_lift,
)

from .products import word_cache_size
from .words import IdentityMode

logger = logging.getLogger(__name__)


class UniversalLift:
    """Gamma: measures over words of F -> measures over H; word images kept in a bounded LRU cache."""

    def __init__(self, free_product, target, homs):
        self.free_product = free_product
        self.target = target
        self.homs = tuple(homs)
        self.target_identity = identity_of(target)
        self.image_of_word = lru_cache(maxsize=word_cache_size())(self._image_of_word)

    def __repr__(self):
        return f'<UniversalLift {self.free_product.name} -> {self.target.name}>'

    def _image_of_word(self, word):
        if not word:
            return point_mass(self.target_identity)
        first, *rest = word
        image = point_mass(self.homs[first.factor](first.element))
        for letter in rest:
            image = self.target.convolve_measures(
                image, point_mass(self.homs[letter.factor](letter.element)),
            )
        return image

    def __call__(self, mu):
        return linear_combine((weight, self.image_of_word(word)) for word, weight in mu.items())

    # ------------------------------------------------------------------
    def check_multiplicativity(self, max_len):
        """Gamma(p_x * p_y) against Gamma(p_x) * Gamma(p_y) on all word pairs up to max_len."""
        F = self.free_product
        report = HomomorphismReport()
        for x, y in product(F.enumerate_words(max_len), repeat=2):
            report.pairs_checked += 1
            lifted = self(F.convolve_words(x, y))
            image = self.target.convolve_measures(self.image_of_word(x), self.image_of_word(y))
            if lifted != image:
                report.failures.append(HomomorphismFailure((x, y), lifted, image))
        if report.passed:
            logger.info(f'{self!r}: multiplicative on {report.pairs_checked} pairs')
        else:
            logger.warning(f'{self!r}: {len(report.failures)} pairs break multiplicativity')
        return report

    def check_factor_restrictions(self):
        """Gamma on embedded factor points against gamma_lift(phi_alpha)."""
        F = self.free_product
        report = HomomorphismReport()
        for alpha, (K, phi) in enumerate(zip(F.factors, self.homs)):
            factor_lift = gamma_lift(phi)
            for x in K.elements:
                report.pairs_checked += 1
                expected = factor_lift(point_mass(x))
                lifted = self(point_mass(F.embed_factor(alpha, x)))
                if lifted != expected:
                    report.failures.append(HomomorphismFailure((alpha + 1, x), lifted, expected))
        return report

    def disagreements(self, other, max_len):
        """Words up to max_len on whose point masses another measure map differs from Gamma."""
        return [
            word for word in self.free_product.enumerate_words(max_len)
            if other(point_mass(word)) != self.image_of_word(word)
        ]


def universal_lift(free_product, target, homs):
    """
    Gamma for the family homs (one homomorphism per factor, in factor order).

    Every phi_alpha must be a homomorphism K_alpha -> target; in shared mode
    each must also send the factor identity to the identity of target.
    """
    F = free_product
    homs = list(homs)
    if len(homs) != len(F.factors):
        raise ValidationError(
            '%(product)s has %(factors)s factors but %(homs)s maps were given',
            code='not_homomorphism',
            params={'product': F.name, 'factors': len(F.factors), 'homs': len(homs)},
        )

    for alpha, (K, phi) in enumerate(zip(F.factors, homs), 1):
        if phi.source != K or phi.target != target:
            raise ValidationError(
                'Map %(index)s must go from %(source)s to %(target)s',
                code='not_homomorphism',
                params={'index': alpha, 'source': K.name, 'target': target.name},
            )
        report = check_homomorphism(phi)
        if not report.passed:
            raise ValidationError(
                'Map %(index)s is not a homomorphism: %(detail)s',
                code='not_homomorphism',
                params={'index': alpha, 'detail': report.failures[0].describe(),
                        'pair': report.failures[0].pair},
            )

    if F.mode is IdentityMode.SHARED:
        target_identity = identity_of(target)
        if target_identity is None:
            raise ValidationError(
                '%(target)s has no identity for the empty word to go to',
                code='identity_not_preserved',
                params={'target': target.name},
            )
        for alpha, (identity, phi) in enumerate(zip(F.factor_identities, homs), 1):
            if identity is not None and phi(identity) != target_identity:
                raise ValidationError(
                    'Map %(index)s sends the identity %(identity)s to %(image)s, not %(target_identity)s',
                    code='identity_not_preserved',
                    params={
                        'index': alpha, 'identity': identity,
                        'image': phi(identity), 'target_identity': target_identity,
                    },
                )

    return UniversalLift(F, target, homs)
