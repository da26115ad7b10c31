# shg_core/checks.py
"""
Axiom verification, identity and purity detection, and structural queries
on finite semihypergroups.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations, product

from django.conf import settings
from django.core.exceptions import ValidationError

from ratmeasure.measures import convolve_extend, is_probability, point_mass

logger = logging.getLogger(__name__)


def _engine_setting(key, default):
    return getattr(settings, 'SHG_SETTINGS', {}).get(key, default)


@dataclass(frozen=True)
class AxiomViolation:
    """One failed axiom instance; both sides are kept for debugging."""

    axiom: str
    witness: tuple
    left: object
    right: object = None

    def describe(self):
        points = ', '.join(str(p) for p in self.witness)
        if self.axiom == 'A3':
            x, y = self.witness
            return f'A3 violation at ({points}): p_{x}*p_{y} = {self.left} is not a probability measure'
        if self.axiom == 'closure':
            x, y = self.witness
            return f'closure violation at ({points}): p_{x}*p_{y} = {self.left} charges a non-reduced word'
        if self.axiom == 'identity':
            return f'identity law fails at {points}: p_e*p_w = {self.left}, p_w*p_e = {self.right}'
        x, y, z = self.witness
        return (
            f'A1 violation at ({points}): '
            f'(p_{x}*p_{y})*p_{z} = {self.left} vs p_{x}*(p_{y}*p_{z}) = {self.right}'
        )


@dataclass
class AxiomReport:
    structure: str
    pairs_checked: int = 0
    triples_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    @property
    def a1_violations(self):
        return [v for v in self.violations if v.axiom == 'A1']

    @property
    def a3_violations(self):
        return [v for v in self.violations if v.axiom == 'A3']

    def summary(self):
        a1 = 'pass' if not self.a1_violations else f'FAIL ({len(self.a1_violations)} violations)'
        a3 = 'pass' if not self.a3_violations else f'FAIL ({len(self.a3_violations)} violations)'
        text = f'A1: {a1} ({self.triples_checked} triples); A3: {a3}'
        others = [v for v in self.violations if v.axiom not in ('A1', 'A3')]
        if others:
            text += f'; other: FAIL ({len(others)} violations)'
        return text


# ============================================
# AXIOMS
# ============================================

def verify_axioms(K):
    """
    Exhaustive check of A3 (every p_x*p_y is a probability measure) and
    A1 ((p_x*p_y)*p_z = p_x*(p_y*p_z) for all |K|^3 triples).

    Violations are returned in the report, never raised.
    """
    size = len(K)
    if size > _engine_setting('DESK_SCALE_ELEMENTS', 30):
        logger.warning(f'Checking {size ** 3} triples of {K.name}; this is above desk scale')

    report = AxiomReport(structure=K.name)
    for x, y in product(K.elements, repeat=2):
        report.pairs_checked += 1
        measure = K.convolve(x, y)
        if not is_probability(measure):
            report.violations.append(AxiomViolation('A3', (x, y), measure))

    for x, y, z in product(K.elements, repeat=3):
        report.triples_checked += 1
        left = convolve_extend(K.convolve(x, y), point_mass(z), K.convolve)
        right = convolve_extend(point_mass(x), K.convolve(y, z), K.convolve)
        if left != right:
            report.violations.append(AxiomViolation('A1', (x, y, z), left, right))

    if report.passed:
        logger.info(f'{K.name}: axioms hold ({report.triples_checked} triples)')
    else:
        logger.warning(f'{K.name}: {len(report.violations)} axiom violations')
    return report


# ============================================
# IDENTITY AND PURITY
# ============================================

def find_identity(K):
    """The unique e with p_e*p_x = p_x*p_e = p_x for all x, or None."""
    candidates = [
        e for e in K.elements
        if all(K.convolve(e, x) == point_mass(x) == K.convolve(x, e) for x in K.elements)
    ]
    if len(candidates) > 1:
        raise ValidationError(
            '%(name)s has more than one identity: %(candidates)s',
            code='identity_not_unique',
            params={'name': K.name, 'candidates': candidates},
        )
    return candidates[0] if candidates else None


def identity_of(K):
    """The declared identity of K, or the detected one."""
    return K.identity if K.identity is not None else find_identity(K)


def purity_witness(K):
    """A pair of non-identity points x, y with p_x*p_y = p_e, or None."""
    identity = find_identity(K)
    if identity is None:
        return None
    target = point_mass(identity)
    for x, y in product(K.elements, repeat=2):
        if x == identity or y == identity:
            continue
        if K.convolve(x, y) == target:
            return (x, y)
    return None


def is_pure(K):
    # vacuously true without an identity
    return purity_witness(K) is None


def is_commutative(K):
    return all(K.convolve(x, y) == K.convolve(y, x) for x, y in product(K.elements, repeat=2))


# ============================================
# SUBSETS
# ============================================

def subset_convolution(K, A, B):
    """A * B: union of supp(p_x*p_y) for x in A, y in B."""
    points = set()
    for x in A:
        for y in B:
            points |= K.convolve(x, y).support
    return frozenset(points)


def is_sub_semihypergroup(K, subset):
    subset = frozenset(subset)
    return subset_convolution(K, subset, subset) <= subset


# ============================================
# ISOMORPHISM
# ============================================

def is_isomorphism(K, L, mapping):
    if K.identity is not None and L.identity is not None and mapping[K.identity] != L.identity:
        return False
    for x, y in product(K.elements, repeat=2):
        image = K.convolve(x, y).pushforward(mapping.__getitem__)
        if image != L.convolve(mapping[x], mapping[y]):
            return False
    return True


def find_isomorphism(K, L):
    """
    Brute-force search for a bijection K -> L carrying one table onto the other.
    """
    if len(K) != len(L):
        return None
    limit = _engine_setting('ISOMORPHISM_SEARCH_LIMIT', 8)
    if len(K) > limit:
        raise ValidationError(
            'Isomorphism search is limited to %(limit)s elements',
            code='search_limit',
            params={'limit': limit},
        )
    for images in permutations(L.elements):
        mapping = dict(zip(K.elements, images))
        if is_isomorphism(K, L, mapping):
            return mapping
    return None
