# shg_core/structures.py
"""
Finite semihypergroups stored as dense point-convolution tables.
"""

import logging

from django.core.exceptions import ValidationError

from ratmeasure.measures import FiniteMeasure, convolve_extend, point_mass

logger = logging.getLogger(__name__)


class FiniteSemihypergroup:
    """
    A finite discrete semihypergroup (K, *).

    The table holds p_x * p_y for every ordered pair of elements. Only
    totality and support are enforced here; the probability (A3) and
    associativity (A1) axioms are checked by shg_core.checks.verify_axioms
    so that broken tables can still be loaded and diagnosed.

    Args:
        name: text label
        elements: ordered, duplicate-free iterable of points
        table: mapping (x, y) -> FiniteMeasure (or a plain weight mapping)
        identity: optional point claimed to be a two-sided identity
    """

    def __init__(self, name, elements, table, identity=None):
        elements = tuple(elements)
        if not elements:
            raise ValidationError('A structure needs at least one element', code='parse_error')
        if len(set(elements)) != len(elements):
            raise ValidationError(
                'Structure %(name)s lists an element twice',
                code='parse_error',
                params={'name': name},
            )
        members = frozenset(elements)

        dense = {}
        for x in elements:
            for y in elements:
                try:
                    entry = table[(x, y)]
                except KeyError:
                    raise ValidationError(
                        'Table of %(name)s has no entry for the pair (%(x)s, %(y)s)',
                        code='missing_entry',
                        params={'name': name, 'x': x, 'y': y},
                    )
                if not isinstance(entry, FiniteMeasure):
                    entry = FiniteMeasure(entry)
                foreign = entry.support - members
                if foreign:
                    raise ValidationError(
                        'p_%(x)s * p_%(y)s charges points outside %(name)s: %(foreign)s',
                        code='foreign_support',
                        params={'name': name, 'x': x, 'y': y, 'foreign': sorted(map(str, foreign))},
                    )
                dense[(x, y)] = entry

        self.name = name
        self.elements = elements
        self._members = members
        self._index = {x: i for i, x in enumerate(elements)}
        self._table = dense

        if identity is not None:
            self._check_identity(identity)
        self.identity = identity
        logger.debug(f'Built structure {name} with {len(elements)} elements')

    @classmethod
    def from_rows(cls, name, elements, rows, identity=None):
        """Build from a nested mapping x -> y -> weights."""
        table = {}
        for x, row in rows.items():
            for y, weights in row.items():
                table[(x, y)] = weights
        return cls(name, elements, table, identity=identity)

    def _check_identity(self, identity):
        if identity not in self._members:
            raise ValidationError(
                'Identity %(identity)s is not an element of %(name)s',
                code='foreign_element',
                params={'identity': identity, 'name': self.name},
            )
        for x in self.elements:
            expected = point_mass(x)
            if self._table[(identity, x)] != expected or self._table[(x, identity)] != expected:
                raise ValidationError(
                    '%(identity)s is not a two-sided identity of %(name)s: fails at %(x)s',
                    code='identity_law',
                    params={'identity': identity, 'name': self.name, 'x': x},
                )

    # ------------------------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, point):
        return point in self._members

    def __eq__(self, other):
        if not isinstance(other, FiniteSemihypergroup):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.identity == other.identity
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.elements, self.identity))

    def __repr__(self):
        return f'<FiniteSemihypergroup {self.name}: {len(self.elements)} elements>'

    def index(self, point):
        return self._index[point]

    def convolve(self, x, y):
        """p_x * p_y."""
        try:
            return self._table[(x, y)]
        except KeyError:
            raise ValidationError(
                'Point convolution of %(name)s is undefined on the pair (%(x)s, %(y)s)',
                code='undefined_pair',
                params={'name': self.name, 'x': x, 'y': y},
            )

    def convolve_measures(self, mu, nu):
        return convolve_extend(mu, nu, self.convolve)

    def with_identity(self, identity):
        return FiniteSemihypergroup(self.name, self.elements, self._table, identity=identity)

    def renamed(self, name):
        return FiniteSemihypergroup(name, self.elements, self._table, identity=self.identity)

    def relabel(self, mapping, name=None):
        """
        Isomorphic copy under a bijective renaming of the elements.
        """
        missing = [x for x in self.elements if x not in mapping]
        if missing:
            raise ValidationError(
                'Relabelling of %(name)s leaves %(missing)s unnamed',
                code='foreign_element',
                params={'name': self.name, 'missing': missing},
            )
        images = [mapping[x] for x in self.elements]
        if len(set(images)) != len(images):
            raise ValidationError(
                'Relabelling of %(name)s is not injective',
                code='foreign_element',
                params={'name': self.name},
            )
        table = {
            (mapping[x], mapping[y]): measure.pushforward(mapping.__getitem__)
            for (x, y), measure in self._table.items()
        }
        identity = mapping[self.identity] if self.identity is not None else None
        return FiniteSemihypergroup(name or self.name, images, table, identity=identity)
