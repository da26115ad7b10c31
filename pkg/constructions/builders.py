# constructions/builders.py
"""
Builders for the standard families of finite semihypergroups:
semigroups, the parametric three-element hypergroup, coset and double
coset spaces, and orbit spaces of group actions.

Haar measure on a finite group is the normalized counting measure.
"""

import logging
from fractions import Fraction
from itertools import product

from django.core.exceptions import ValidationError

from ratmeasure.measures import FiniteMeasure, as_rational, point_mass
from shg_core.checks import find_identity, verify_axioms
from shg_core.structures import FiniteSemihypergroup

from .groups import associativity_witness

logger = logging.getLogger(__name__)


def _with_detected_identity(K):
    identity = find_identity(K)
    return K.with_identity(identity) if identity is not None else K


# ============================================
# SEMIGROUPS
# ============================================

def from_semigroup(elements, cayley, name='S'):
    """
    (S, .) as a semihypergroup with p_x * p_y = p_{x.y}.

    Args:
        elements: ordered element list
        cayley: mapping (x, y) -> x.y
    """
    elements = tuple(elements)
    members = set(elements)
    for x, y in product(elements, repeat=2):
        if (x, y) not in cayley:
            raise ValidationError(
                'Cayley table of %(name)s has no entry for (%(x)s, %(y)s)',
                code='missing_entry',
                params={'name': name, 'x': x, 'y': y},
            )
        if cayley[(x, y)] not in members:
            raise ValidationError(
                '%(x)s.%(y)s leaves %(name)s',
                code='foreign_support',
                params={'name': name, 'x': x, 'y': y},
            )
    witness = associativity_witness(elements, cayley)
    if witness is not None:
        raise ValidationError(
            'Cayley table of %(name)s is not associative at %(witness)s',
            code='not_associative',
            params={'name': name, 'witness': witness},
        )
    table = {(x, y): point_mass(cayley[(x, y)]) for x, y in product(elements, repeat=2)}
    return _with_detected_identity(FiniteSemihypergroup(name, elements, table))


def group_semihypergroup(group):
    return from_semigroup(group.elements, group.cayley, name=group.name)


def left_zero_semigroup(elements=('a', 'b'), name='L'):
    """x.y = x: associative, and without identity once there are two elements."""
    elements = tuple(elements)
    return from_semigroup(elements, {(x, y): x for x in elements for y in elements}, name=name)


# ============================================
# THREE-ELEMENT HYPERGROUP
# ============================================

def three_element_hypergroup(x1, x2, x3, y1, y2, y3, z1, z2, validate=True, name='T'):
    """
    Commutative structure on {e, a, b} with identity e and

        p_a * p_b = z1 p_a + z2 p_b
        p_a * p_a = x1 p_e + x2 p_a + x3 p_b
        p_b * p_b = y1 p_e + y2 p_a + y3 p_b

    The constraints are nonnegativity, unit sums and y1 x3 = z1 x1. Expanding
    the triples (a, a, b) and (a, b, b) by hand gives two further equations,
    x3 y2 = z1 z2 and z2 y1 = x1 y2, which associativity needs as well; they
    are checked after the classical ones.

    With validate=False the table is built as given, for diagnostics.
    """
    params = dict(zip(
        ('x1', 'x2', 'x3', 'y1', 'y2', 'y3', 'z1', 'z2'),
        (as_rational(v) for v in (x1, x2, x3, y1, y2, y3, z1, z2)),
    ))
    if validate:
        _check_three_element_constraints(params)

    p = params
    rows = {
        'e': {'e': {'e': 1}, 'a': {'a': 1}, 'b': {'b': 1}},
        'a': {
            'e': {'a': 1},
            'a': {'e': p['x1'], 'a': p['x2'], 'b': p['x3']},
            'b': {'a': p['z1'], 'b': p['z2']},
        },
        'b': {
            'e': {'b': 1},
            'a': {'a': p['z1'], 'b': p['z2']},
            'b': {'e': p['y1'], 'a': p['y2'], 'b': p['y3']},
        },
    }
    return FiniteSemihypergroup.from_rows(name, ('e', 'a', 'b'), rows, identity='e')


def _check_three_element_constraints(p):
    negative = [key for key, value in p.items() if value < 0]
    if negative:
        raise ValidationError(
            'Parameters must be nonnegative: %(negative)s',
            code='constraint_violated',
            params={'equation': 'nonnegativity', 'negative': negative},
        )
    sums = (
        ('x1+x2+x3 = 1', p['x1'] + p['x2'] + p['x3']),
        ('y1+y2+y3 = 1', p['y1'] + p['y2'] + p['y3']),
        ('z1+z2 = 1', p['z1'] + p['z2']),
    )
    for equation, total in sums:
        if total != 1:
            raise ValidationError(
                'Constraint %(equation)s violated: the sum is %(total)s',
                code='constraint_violated',
                params={'equation': equation, 'total': total},
            )
    products = (
        ('y1x3 = z1x1', p['y1'] * p['x3'], p['z1'] * p['x1']),
        ('x3y2 = z1z2', p['x3'] * p['y2'], p['z1'] * p['z2']),
        ('z2y1 = x1y2', p['z2'] * p['y1'], p['x1'] * p['y2']),
    )
    for equation, left, right in products:
        if left != right:
            raise ValidationError(
                'Constraint %(equation)s violated: %(left)s != %(right)s',
                code='constraint_violated',
                params={'equation': equation, 'left': left, 'right': right},
            )


# ============================================
# COSET AND DOUBLE COSET SPACES
# ============================================

def _averaged_table(name, blocks, measure_for):
    """
    Build the table block x block by evaluating measure_for on every pair of
    representatives and insisting that all of them agree.
    """
    table = {}
    for (left_label, left_block), (right_label, right_block) in product(blocks, repeat=2):
        reference = None
        for x, y in product(sorted(left_block, key=str), sorted(right_block, key=str)):
            measure = measure_for(x, y)
            if reference is None:
                reference = measure
            elif measure != reference:
                raise ValidationError(
                    'Convolution of %(left)s and %(right)s in %(name)s depends on the '
                    'representatives: (%(x)s, %(y)s) gives %(measure)s, expected %(reference)s',
                    code='representative_dependence',
                    params={
                        'name': name, 'left': left_label, 'right': right_label,
                        'x': x, 'y': y, 'measure': str(measure), 'reference': str(reference),
                    },
                )
        table[(left_label, right_label)] = reference
    return table


def _blocks(group, block_for):
    """Partition of the group into blocks, in order of first representative."""
    blocks = []
    block_of = {}
    for x in group.elements:
        if x in block_of:
            continue
        block = block_for(x)
        label = group.label(block)
        blocks.append((label, block))
        for member in block:
            block_of[member] = label
    return blocks, block_of


def coset_space(group, subgroup):
    """
    G/H with p_{xH} * p_{yH} = (1/|H|) sum_{t in H} p_{(xty)H}.

    H is a right identity; it is a two-sided identity exactly when H is normal.
    """
    H = group.subgroup(subgroup)
    blocks, block_of = _blocks(group, lambda x: frozenset(group.mul(x, h) for h in H))
    weight = Fraction(1, len(H))

    def measure_for(x, y):
        weights = {}
        for t in H:
            label = block_of[group.mul(x, t, y)]
            weights[label] = weights.get(label, 0) + weight
        return FiniteMeasure(weights)

    name = f'{group.name}/{group.label(H)}'
    labels = [label for label, _ in blocks]
    table = _averaged_table(name, blocks, measure_for)
    K = _with_detected_identity(FiniteSemihypergroup(name, labels, table))
    logger.info(f'Coset space {name}: {len(labels)} cosets, identity {K.identity}')
    return K


def double_coset_space(group, subgroup):
    """G//H with p_{HxH} * p_{HyH} = (1/|H|) sum_{t in H} p_{H(xty)H}; identity HeH."""
    H = group.subgroup(subgroup)
    blocks, block_of = _blocks(
        group, lambda x: frozenset(group.mul(h, x, k) for h in H for k in H),
    )
    weight = Fraction(1, len(H))

    def measure_for(x, y):
        weights = {}
        for t in H:
            label = block_of[group.mul(x, t, y)]
            weights[label] = weights.get(label, 0) + weight
        return FiniteMeasure(weights)

    name = f'{group.name}//{group.label(H)}'
    labels = [label for label, _ in blocks]
    table = _averaged_table(name, blocks, measure_for)
    identity = block_of[group.identity]
    K = FiniteSemihypergroup(name, labels, table, identity=identity)
    logger.info(f'Double coset space {name}: {len(labels)} double cosets')
    return K


# ============================================
# ORBIT SPACES
# ============================================

def orbit_space(action):
    """
    Orbits x^H of pi with
        p_{x^H} * p_{y^H} = (1/|H|^2) sum_{s, t in H} p_{(pi(s, x) pi(t, y))^H}.

    Any group action is accepted; representative independence and the axioms
    are verified afterwards and a failure rejects the action with a witness.
    """
    G, H = action.space, action.actors
    blocks, block_of = _blocks(G, action.orbit)
    weight = Fraction(1, len(H) ** 2)

    def measure_for(x, y):
        weights = {}
        for s, t in product(H.elements, repeat=2):
            label = block_of[G.mul(action.act(s, x), action.act(t, y))]
            weights[label] = weights.get(label, 0) + weight
        return FiniteMeasure(weights)

    name = f'{G.name}^{H.name}'
    labels = [label for label, _ in blocks]
    try:
        table = _averaged_table(name, blocks, measure_for)
    except ValidationError as exc:
        raise ValidationError(
            'Action of %(actors)s on %(space)s is not admissible: %(detail)s',
            code='inadmissible_action',
            params={'actors': H.name, 'space': G.name, 'detail': exc.messages[0]},
        )
    K = FiniteSemihypergroup(name, labels, table)
    report = verify_axioms(K)
    if not report.passed:
        raise ValidationError(
            'Action of %(actors)s on %(space)s is not admissible: %(detail)s',
            code='inadmissible_action',
            params={
                'actors': H.name, 'space': G.name,
                'detail': report.violations[0].describe(),
                'witness': report.violations[0].witness,
            },
        )
    return _with_detected_identity(K)
