# constructions/groups.py
"""
Finite groups given by Cayley tables, subgroups and group actions.
"""

import logging
from itertools import permutations, product

from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)


def cycle_name(images):
    """Cycle notation of a permutation of 1..n given as a tuple of images; 'e' for the identity."""
    n = len(images)
    seen = set()
    cycles = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        current = images[start - 1]
        while current != start:
            cycle.append(current)
            seen.add(current)
            current = images[current - 1]
        if len(cycle) > 1:
            cycles.append('(' + ''.join(str(i) for i in cycle) + ')')
    return ''.join(cycles) or 'e'


class FiniteGroup:
    """
    A finite group (G, .) with a dense Cayley table.

    The group axioms are checked on construction; identity and inverses are
    derived from the table.
    """

    def __init__(self, elements, cayley, name='G'):
        elements = tuple(elements)
        if not elements or len(set(elements)) != len(elements):
            raise ValidationError(
                'Group %(name)s needs a nonempty, duplicate-free element list',
                code='not_group',
                params={'name': name},
            )
        members = frozenset(elements)
        table = {}
        for x, y in product(elements, repeat=2):
            if (x, y) not in cayley:
                raise ValidationError(
                    'Cayley table of %(name)s has no entry for (%(x)s, %(y)s)',
                    code='missing_entry',
                    params={'name': name, 'x': x, 'y': y},
                )
            z = cayley[(x, y)]
            if z not in members:
                raise ValidationError(
                    '%(x)s.%(y)s = %(z)s is not an element of %(name)s',
                    code='not_group',
                    params={'name': name, 'x': x, 'y': y, 'z': z},
                )
            table[(x, y)] = z

        self.name = name
        self.elements = elements
        self._members = members
        self._index = {x: i for i, x in enumerate(elements)}
        self.cayley = table

        witness = associativity_witness(elements, table)
        if witness is not None:
            raise ValidationError(
                'Cayley table of %(name)s is not associative at %(witness)s',
                code='not_associative',
                params={'name': name, 'witness': witness},
            )

        identities = [
            e for e in elements
            if all(table[(e, x)] == x == table[(x, e)] for x in elements)
        ]
        if not identities:
            raise ValidationError('%(name)s has no identity', code='not_group', params={'name': name})
        self.identity = identities[0]

        self.inverse = {}
        for x in elements:
            inverses = [y for y in elements if table[(x, y)] == self.identity == table[(y, x)]]
            if not inverses:
                raise ValidationError(
                    '%(x)s has no inverse in %(name)s',
                    code='not_group',
                    params={'name': name, 'x': x},
                )
            self.inverse[x] = inverses[0]

    # ------------------------------------------------------------------
    @classmethod
    def from_rows(cls, name, elements, rows):
        cayley = {}
        for x, row in rows.items():
            for y, z in row.items():
                cayley[(x, y)] = z
        return cls(elements, cayley, name=name)

    @classmethod
    def cyclic(cls, n, name=None):
        """Z_n with elements '0', ..., 'n-1' under addition mod n."""
        elements = [str(i) for i in range(n)]
        cayley = {(str(i), str(j)): str((i + j) % n) for i in range(n) for j in range(n)}
        return cls(elements, cayley, name=name or f'Z{n}')

    @classmethod
    def symmetric(cls, n, name=None):
        """
        S_n on 1..n in cycle notation ('e', '(12)', '(123)', ...).
        Products compose right to left: (x.y)(i) = x(y(i)).
        """
        perms = list(permutations(range(1, n + 1)))
        names = {p: cycle_name(p) for p in perms}
        perms.sort(key=lambda p: (sum(1 for i, image in enumerate(p, 1) if i != image), names[p]))
        cayley = {}
        for p, q in product(perms, repeat=2):
            composed = tuple(p[q[i] - 1] for i in range(n))
            cayley[(names[p], names[q])] = names[composed]
        return cls([names[p] for p in perms], cayley, name=name or f'S{n}')

    # ------------------------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __repr__(self):
        return f'<FiniteGroup {self.name} of order {len(self.elements)}>'

    def index(self, x):
        return self._index[x]

    def mul(self, *factors):
        result = self.identity
        for x in factors:
            result = self.cayley[(result, x)]
        return result

    def subgroup(self, elements):
        """Validate a subset as a subgroup and return it as a frozenset."""
        subset = frozenset(elements)
        foreign = [x for x in subset if x not in self._members]
        if not subset or foreign:
            raise ValidationError(
                'Subgroup of %(name)s must be a nonempty subset; foreign points: %(foreign)s',
                code='not_subgroup',
                params={'name': self.name, 'foreign': foreign},
            )
        if self.identity not in subset:
            raise ValidationError(
                'Subset %(subset)s of %(name)s misses the identity',
                code='not_subgroup',
                params={'name': self.name, 'subset': self.label(subset)},
            )
        for x, y in product(subset, repeat=2):
            if self.cayley[(x, y)] not in subset:
                raise ValidationError(
                    'Subset %(subset)s of %(name)s is not closed: %(x)s.%(y)s leaves it',
                    code='not_subgroup',
                    params={'name': self.name, 'subset': self.label(subset), 'x': x, 'y': y},
                )
        return subset

    def label(self, members):
        """Canonical text for a set of elements: '{m1,m2,...}' in element order."""
        return '{' + ','.join(str(x) for x in sorted(members, key=self.index)) + '}'


def associativity_witness(elements, table):
    for x, y, z in product(elements, repeat=3):
        if table[(table[(x, y)], z)] != table[(x, table[(y, z)])]:
            return (x, y, z)
    return None


class GroupAction:
    """
    An action pi: H x G -> G of a finite group H on the points of a finite
    group G, checked for pi(e_H, x) = x and pi(h1.h2, x) = pi(h1, pi(h2, x)).
    """

    def __init__(self, actors, space, pi):
        self.actors = actors
        self.space = space
        table = {}
        for h, x in product(actors.elements, space.elements):
            image = pi.get((h, x))
            if image is None or image not in space:
                raise ValidationError(
                    'Action is undefined or leaves %(space)s at (%(h)s, %(x)s)',
                    code='not_action',
                    params={'space': space.name, 'h': h, 'x': x},
                )
            table[(h, x)] = image
        self.pi = table

        for x in space.elements:
            if table[(actors.identity, x)] != x:
                raise ValidationError(
                    'Identity of %(actors)s moves %(x)s',
                    code='not_action',
                    params={'actors': actors.name, 'x': x},
                )
        for h1, h2, x in product(actors.elements, actors.elements, space.elements):
            if table[(actors.mul(h1, h2), x)] != table[(h1, table[(h2, x)])]:
                raise ValidationError(
                    'Action is not compatible with %(actors)s at (%(h1)s, %(h2)s, %(x)s)',
                    code='not_action',
                    params={'actors': actors.name, 'h1': h1, 'h2': h2, 'x': x},
                )

    @classmethod
    def from_rows(cls, actors, space, rows):
        pi = {}
        for h, row in rows.items():
            for x, image in row.items():
                pi[(h, x)] = image
        return cls(actors, space, pi)

    @classmethod
    def trivial(cls, actors, space):
        return cls(actors, space, {(h, x): x for h in actors.elements for x in space.elements})

    def act(self, h, x):
        return self.pi[(h, x)]

    def orbit(self, x):
        return frozenset(self.pi[(h, x)] for h in self.actors.elements)


def negation_action(space, actors=None):
    """Z2 acting on a group by inversion (x -> -x for an additive group)."""
    actors = actors or FiniteGroup.cyclic(2)
    if len(actors) != 2:
        raise ValidationError(
            'Negation is an action of a group of order 2, not %(order)s',
            code='not_action',
            params={'order': len(actors)},
        )
    flip = next(h for h in actors.elements if h != actors.identity)
    pi = {}
    for x in space.elements:
        pi[(actors.identity, x)] = x
        pi[(flip, x)] = space.inverse[x]
    return GroupAction(actors, space, pi)
