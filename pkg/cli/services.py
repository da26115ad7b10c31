# cli/services.py
"""
File formats of the command line front end, and a programmatic runner.

All files are UTF-8 JSON:

    .shg  {"name": ..., "elements": [...], "identity": ..., "table": {x: {y: {z: "p/q"}}}}
    .grp  {"name": ..., "elements": [...], "table": {x: {y: "x.y"}}}
    .act  {"actors": <group object>, "action": {h: {x: "pi(h, x)"}}}
    .map  {"maps": [{x: "phi(x)"}, ...]}          one object per factor

Weights are quoted "p/q" or integer text; decimals are rejected.
"""

import json
import logging
from io import StringIO

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError

from constructions.groups import FiniteGroup, GroupAction
from ratmeasure.measures import format_measure, parse_weight  # noqa: F401
from shg_core.checks import verify_axioms
from shg_core.homomorphisms import Homomorphism
from shg_core.structures import FiniteSemihypergroup

logger = logging.getLogger(__name__)

# codes that mean the input could not be read, as opposed to a mathematical failure
PARSE_CODES = frozenset({
    'parse_error', 'missing_entry', 'foreign_support', 'inexact_weight', 'invalid_word',
})


def exit_status_for(error):
    return 2 if getattr(error, 'code', None) in PARSE_CODES else 1


# ============================================
# DOCUMENTS
# ============================================

def load_document(data, source='<input>'):
    """Decode UTF-8 JSON text or bytes into a JSON object."""
    if isinstance(data, bytes):
        try:
            data = data.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ValidationError(
                '%(source)s is not UTF-8 (byte %(position)s)',
                code='parse_error',
                params={'source': source, 'position': exc.start},
            )
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            '%(source)s: %(message)s at line %(line)s, column %(column)s',
            code='parse_error',
            params={'source': source, 'message': exc.msg, 'line': exc.lineno, 'column': exc.colno},
        )
    if not isinstance(document, dict):
        raise ValidationError(
            '%(source)s must hold a JSON object',
            code='parse_error',
            params={'source': source},
        )
    return document


def read_file(path):
    try:
        with open(path, 'rb') as handle:
            return handle.read()
    except OSError as exc:
        raise ValidationError(
            'Cannot read %(path)s: %(reason)s',
            code='parse_error',
            params={'path': path, 'reason': exc.strerror},
        )


def _field(document, key, kind, source, default=None):
    value = document.get(key, default)
    if not isinstance(value, kind):
        raise ValidationError(
            '%(source)s: field %(key)r must be a %(kind)s',
            code='parse_error',
            params={'source': source, 'key': key, 'kind': kind.__name__},
        )
    return value


def _text_rows(rows, source, what):
    """Check a nested {x: {y: "text"}} object."""
    for key, row in rows.items():
        if not isinstance(row, dict) or not all(isinstance(value, str) for value in row.values()):
            raise ValidationError(
                '%(source)s: %(what)s row %(key)r must map identifiers to text identifiers',
                code='parse_error',
                params={'source': source, 'what': what, 'key': key},
            )
    return rows


def _elements(document, source):
    elements = _field(document, 'elements', list, source)
    if not all(isinstance(x, str) for x in elements):
        raise ValidationError(
            '%(source)s: elements must be text identifiers',
            code='parse_error',
            params={'source': source},
        )
    return elements


# ============================================
# STRUCTURES (.shg)
# ============================================

def parse_structure(data, check=None, source='<input>'):
    """
    Read a structure document and build the semihypergroup.

    Args:
        data: UTF-8 bytes or text
        check: run verify_axioms (default SHG_SETTINGS['VERIFY_ON_LOAD'])

    Raises ValidationError; an axiom failure carries code 'axiom_violation'
    with the first violation as witness.
    """
    document = load_document(data, source)
    name = _field(document, 'name', str, source, default='K')
    elements = _elements(document, source)
    rows = _field(document, 'table', dict, source)
    identity = document.get('identity')
    if identity is not None and not isinstance(identity, str):
        raise ValidationError(
            '%(source)s: identity must be a text identifier',
            code='parse_error',
            params={'source': source},
        )
    if identity is not None and identity not in elements:
        raise ValidationError(
            '%(source)s: identity %(identity)s is not one of the elements',
            code='parse_error',
            params={'source': source, 'identity': identity},
        )

    table = {}
    for x in elements:
        row = rows.get(x)
        for y in elements:
            entry = row.get(y) if isinstance(row, dict) else None
            if entry is None:
                raise ValidationError(
                    '%(source)s: table has no entry for the pair (%(x)s, %(y)s)',
                    code='missing_entry',
                    params={'source': source, 'x': x, 'y': y},
                )
            if not isinstance(entry, dict):
                raise ValidationError(
                    '%(source)s: entry (%(x)s, %(y)s) must map points to weights',
                    code='parse_error',
                    params={'source': source, 'x': x, 'y': y},
                )
            table[(x, y)] = {z: parse_weight(weight) for z, weight in entry.items()}

    K = FiniteSemihypergroup(name, elements, table, identity=identity)

    if check is None:
        check = getattr(settings, 'SHG_SETTINGS', {}).get('VERIFY_ON_LOAD', True)
    if check:
        report = verify_axioms(K)
        if not report.passed:
            violation = report.violations[0]
            logger.warning(f'{source}: rejected, {violation.describe()}')
            raise ValidationError(
                '%(source)s: %(detail)s',
                code='axiom_violation',
                params={'source': source, 'detail': violation.describe(), 'witness': violation.witness},
            )
    return K


def emit_structure(K):
    """Structure document text; parse_structure(emit_structure(K)) == K."""
    document = {
        'name': K.name,
        'elements': [str(x) for x in K.elements],
    }
    if K.identity is not None:
        document['identity'] = str(K.identity)
    document['table'] = {
        str(x): {
            str(y): {str(z): str(weight) for z, weight in K.convolve(x, y).sorted_items()}
            for y in K.elements
        }
        for x in K.elements
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


# ============================================
# GROUPS, ACTIONS AND MAPS
# ============================================

def _group_from_document(document, source):
    name = _field(document, 'name', str, source, default='G')
    elements = _elements(document, source)
    rows = _text_rows(_field(document, 'table', dict, source), source, 'table')
    return name, elements, rows


def parse_cayley(data, source='<input>'):
    """(name, elements, cayley) of a .grp document, without group checks."""
    name, elements, rows = _group_from_document(load_document(data, source), source)
    cayley = {(x, y): z for x, row in rows.items() for y, z in row.items()}
    return name, elements, cayley


def parse_group(data, source='<input>'):
    name, elements, rows = _group_from_document(load_document(data, source), source)
    return FiniteGroup.from_rows(name, elements, rows)


def parse_action(data, space, source='<input>'):
    """Action of the embedded actor group on the points of space."""
    document = load_document(data, source)
    actors_document = _field(document, 'actors', dict, source)
    name, elements, rows = _group_from_document(actors_document, source)
    actors = FiniteGroup.from_rows(name, elements, rows)
    action = _text_rows(_field(document, 'action', dict, source), source, 'action')
    return GroupAction.from_rows(actors, space, action)


def parse_hom_maps(data, factors, target, source='<input>'):
    """One Homomorphism factor -> target per object of "maps", in factor order."""
    document = load_document(data, source)
    maps = _field(document, 'maps', list, source)
    if len(maps) != len(factors) or not all(
        isinstance(m, dict) and all(isinstance(image, str) for image in m.values()) for m in maps
    ):
        raise ValidationError(
            '%(source)s: expected %(count)s map objects, one per factor',
            code='parse_error',
            params={'source': source, 'count': len(factors)},
        )
    return [Homomorphism(K, target, mapping) for K, mapping in zip(factors, maps)]


def parse_subgroup(text):
    """'e,(12)' -> ['e', '(12)']"""
    members = [part.strip() for part in text.split(',') if part.strip()]
    if not members:
        raise ValidationError('Subgroup list is empty', code='parse_error')
    return members


def parse_params(text):
    values = [part.strip() for part in text.split(',')]
    if len(values) != 8:
        raise ValidationError(
            'Expected 8 parameters x1,x2,x3,y1,y2,y3,z1,z2; got %(count)s',
            code='parse_error',
            params={'count': len(values)},
        )
    return [parse_weight(value) for value in values]


# ============================================
# PROGRAMMATIC ENTRY
# ============================================

def run(argv):
    """
    Run the shg command in-process.

    Returns:
        (exit_status, report_text): 0 on success, 1 on a mathematical
        failure, 2 on a usage or parse error
    """
    stdout, stderr = StringIO(), StringIO()
    try:
        call_command('shg', *argv, stdout=stdout, stderr=stderr)
        status = 0
    except CommandError as exc:
        status = exc.returncode
        stderr.write(f'{exc}\n')
    return status, stdout.getvalue() + stderr.getvalue()
