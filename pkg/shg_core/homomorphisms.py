# shg_core/homomorphisms.py
"""
Semihypergroup homomorphisms and their lift to measure algebras.

In a discrete space the indicator functions of singletons generate every
Borel function, so the homomorphism law reduces to

    pushforward_phi(p_x * p_y) = p_phi(x) * p_phi(y)     for all x, y.
"""

import logging
from dataclasses import dataclass, field
from itertools import product

from django.core.exceptions import ValidationError

from ratmeasure.measures import FiniteMeasure

logger = logging.getLogger(__name__)


class Homomorphism:
    """A point map between two finite semihypergroups (law verified separately)."""

    def __init__(self, source, target, mapping):
        mapping = dict(mapping)
        for x in source.elements:
            if x not in mapping:
                raise ValidationError(
                    'Map %(source)s -> %(target)s is undefined at %(x)s',
                    code='foreign_element',
                    params={'source': source.name, 'target': target.name, 'x': x},
                )
            if mapping[x] not in target:
                raise ValidationError(
                    'Map sends %(x)s to %(image)s, which is not an element of %(target)s',
                    code='foreign_element',
                    params={'x': x, 'image': mapping[x], 'target': target.name},
                )
        self.source = source
        self.target = target
        self.mapping = {x: mapping[x] for x in source.elements}

    @classmethod
    def identity_map(cls, K):
        return cls(K, K, {x: x for x in K.elements})

    @classmethod
    def constant(cls, source, target, point):
        return cls(source, target, {x: point for x in source.elements})

    def __call__(self, x):
        return self.mapping[x]

    def __repr__(self):
        return f'<Homomorphism {self.source.name} -> {self.target.name}>'


@dataclass(frozen=True)
class HomomorphismFailure:
    pair: tuple
    pushforward: FiniteMeasure
    convolution: FiniteMeasure

    def describe(self):
        x, y = self.pair
        return (
            f'homomorphism law fails at ({x}, {y}): '
            f'pushforward = {self.pushforward} vs image convolution = {self.convolution}'
        )


@dataclass
class HomomorphismReport:
    pairs_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def check_homomorphism(phi):
    """Compare pushforward(p_x*p_y) with p_phi(x)*p_phi(y) on every pair."""
    report = HomomorphismReport()
    source, target = phi.source, phi.target
    for x, y in product(source.elements, repeat=2):
        report.pairs_checked += 1
        pushed = source.convolve(x, y).pushforward(phi)
        image = target.convolve(phi(x), phi(y))
        if pushed != image:
            report.failures.append(HomomorphismFailure((x, y), pushed, image))
    if not report.passed:
        logger.info(f'{phi!r}: {len(report.failures)} failing pairs')
    return report


def compose(psi, phi):
    """psi after phi."""
    if phi.target != psi.source:
        raise ValidationError(
            'Cannot compose: %(first)s ends where %(second)s does not start',
            code='not_homomorphism',
            params={'first': repr(phi), 'second': repr(psi)},
        )
    return Homomorphism(phi.source, psi.target, {x: psi(phi(x)) for x in phi.source.elements})


class MeasureLift:
    """
    Gamma_phi: the linear extension of p_x -> p_phi(x) to finitely supported
    measures. Positive, and multiplicative whenever phi is a homomorphism.
    """

    def __init__(self, phi):
        self.phi = phi

    def __call__(self, mu):
        foreign = [x for x in mu if x not in self.phi.source]
        if foreign:
            raise ValidationError(
                'Measure charges points outside %(source)s: %(foreign)s',
                code='foreign_element',
                params={'source': self.phi.source.name, 'foreign': sorted(map(str, foreign))},
            )
        return mu.pushforward(self.phi)

    def __repr__(self):
        return f'<MeasureLift of {self.phi!r}>'


def gamma_lift(phi):
    report = check_homomorphism(phi)
    if not report.passed:
        failure = report.failures[0]
        raise ValidationError(
            'Cannot lift %(phi)s: %(detail)s',
            code='not_homomorphism',
            params={'phi': repr(phi), 'detail': failure.describe(), 'pair': failure.pair},
        )
    return MeasureLift(phi)
