# freeprod/products.py
"""
Free products of finite semihypergroups.

The carrier is the set of reduced words. Point masses of words convolve by
cases on the junction letters:

  * an empty operand (shared mode) is the identity;
  * junction letters from different factors concatenate;
  * junction letters from the same factor are replaced by the factor
    convolution of the two letters. Mass that lands on the factor identity
    (shared mode) is pushed through the convolution of the truncated words,
    which recurses on strictly shorter operands.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import product

from django.conf import settings
from django.core.exceptions import ValidationError

from ratmeasure.measures import FiniteMeasure, convolve_extend, is_probability, point_mass
from shg_core.checks import AxiomReport, AxiomViolation, identity_of, purity_witness
from shg_core.homomorphisms import HomomorphismFailure, HomomorphismReport

from .words import EMPTY_WORD, IdentityMode, Letter, Word

logger = logging.getLogger(__name__)


def word_cache_size():
    return getattr(settings, 'SHG_SETTINGS', {}).get('WORD_CACHE_SIZE', 4096)


class FreeProduct:
    """
    The free product of an ordered family of finite semihypergroups.

    Factors are identified by their position; two equal structures at
    different positions are different factors. Build through
    build_free_product so the identity mode matches the family.

    Word convolutions are memoised in an LRU cache of WORD_CACHE_SIZE
    entries per instance.
    """

    def __init__(self, factors, mode, renamed_identity=None):
        self.factors = tuple(factors)
        self.mode = mode
        self.renamed_identity = renamed_identity
        self.factor_identities = tuple(identity_of(K) for K in self.factors)
        self._convolve = lru_cache(maxsize=word_cache_size())(self._convolve_uncached)

    def __repr__(self):
        names = ' * '.join(K.name for K in self.factors)
        return f'<FreeProduct {names} ({self.mode.value})>'

    @property
    def name(self):
        return ' * '.join(K.name for K in self.factors)

    @property
    def identity(self):
        return EMPTY_WORD if self.mode is IdentityMode.SHARED else None

    def _collapses(self, letter):
        return (
            self.mode is IdentityMode.SHARED
            and letter.element == self.factor_identities[letter.factor]
        )

    # ------------------------------------------------------------------
    # Words
    # ------------------------------------------------------------------
    def validate_word(self, candidate):
        """True iff candidate is a reduced word of this free product."""
        letters = tuple(candidate)
        if not letters:
            return self.mode is IdentityMode.SHARED
        previous = None
        for letter in letters:
            if not isinstance(letter, Letter):
                return False
            if not 0 <= letter.factor < len(self.factors):
                return False
            if letter.element not in self.factors[letter.factor]:
                return False
            if self._collapses(letter):
                return False
            if previous is not None and previous.factor == letter.factor:
                return False
            previous = letter
        return True

    def check_word(self, candidate):
        if not self.validate_word(candidate):
            raise ValidationError(
                '%(word)s is not a reduced word of %(product)s',
                code='invalid_word',
                params={'word': str(Word(tuple(candidate))), 'product': self.name},
            )
        return candidate if isinstance(candidate, Word) else Word(tuple(candidate))

    def word(self, *pairs):
        """Word from (element, 1-based factor) pairs, validated."""
        return self.check_word(Word(tuple(Letter(factor - 1, element) for element, factor in pairs)))

    def parse_word(self, text):
        """Inverse of the rendering: 'e' or '(a@1 b@2)'."""
        text = text.strip()
        if text == 'e':
            return self.check_word(EMPTY_WORD)
        if not (text.startswith('(') and text.endswith(')')):
            raise ValidationError(
                'Cannot read %(text)r as a word; expected e or (x@i y@j ...)',
                code='invalid_word',
                params={'text': text},
            )
        letters = []
        for token in text[1:-1].split():
            name, sep, index = token.rpartition('@')
            if not sep or not index.isdigit():
                raise ValidationError(
                    'Letter %(token)r must look like element@factor',
                    code='invalid_word',
                    params={'token': token},
                )
            factor = int(index) - 1
            if not 0 <= factor < len(self.factors):
                raise ValidationError(
                    'Letter %(token)r names factor %(index)s of %(count)s',
                    code='invalid_word',
                    params={'token': token, 'index': index, 'count': len(self.factors)},
                )
            element = next((x for x in self.factors[factor].elements if str(x) == name), None)
            if element is None:
                raise ValidationError(
                    'Letter %(token)r is not an element of factor %(index)s',
                    code='invalid_word',
                    params={'token': token, 'index': index},
                )
            letters.append(Letter(factor, element))
        return self.check_word(Word(tuple(letters)))

    def embed_factor(self, alpha, x):
        """i_alpha: the factor identity goes to e in shared mode, anything else to (x)."""
        K = self.factors[alpha]
        if x not in K:
            raise ValidationError(
                '%(x)s is not an element of factor %(index)s',
                code='foreign_element',
                params={'x': x, 'index': alpha + 1},
            )
        letter = Letter(alpha, x)
        if self._collapses(letter):
            return EMPTY_WORD
        return Word((letter,))

    def letters(self):
        return [
            Letter(alpha, x)
            for alpha, K in enumerate(self.factors)
            for x in K.elements
            if not self._collapses(Letter(alpha, x))
        ]

    def word_key(self, word):
        return (
            len(word),
            word.factors,
            tuple(self.factors[letter.factor].index(letter.element) for letter in word),
        )

    def enumerate_words(self, max_len):
        """All reduced words of length <= max_len, by (length, factors, element order)."""
        letters = self.letters()
        words = [EMPTY_WORD] if self.mode is IdentityMode.SHARED else []
        frontier = [EMPTY_WORD]
        for _ in range(max_len):
            frontier = [
                word + letter
                for word in frontier
                for letter in letters
                if not word or word[-1].factor != letter.factor
            ]
            words.extend(frontier)
        return sorted(words, key=self.word_key)

    # ------------------------------------------------------------------
    # Convolution
    # ------------------------------------------------------------------
    def convolve_words(self, x, y):
        """p_x * p_y for reduced words x, y."""
        x, y = self.check_word(x), self.check_word(y)
        return self._convolve(x, y)

    # point-convolution interface, so convolve_extend works on word measures
    convolve = convolve_words

    def _convolve_uncached(self, x, y):
        if not x:
            result = point_mass(y)
        elif not y:
            result = point_mass(x)
        elif x[-1].factor != y[0].factor:
            result = point_mass(x + y)
        else:
            alpha = x[-1].factor
            junction = self.factors[alpha].convolve(x[-1].element, y[0].element)
            head, tail = x[:-1], y[1:]
            weights = {}
            for a, weight in junction.items():
                letter = Letter(alpha, a)
                if self._collapses(letter):
                    for word, inner in self._convolve(head, tail).items():
                        weights[word] = weights.get(word, Fraction(0)) + weight * inner
                else:
                    word = head + letter + tail
                    weights[word] = weights.get(word, Fraction(0)) + weight
            result = FiniteMeasure(weights)
        return result

    def convolve_measures(self, mu, nu):
        return convolve_extend(mu, nu, self.convolve_words)

    # ------------------------------------------------------------------
    # Set products
    # ------------------------------------------------------------------
    def subset_product(self, sets):
        """
        A1 A2 ... An for subsets A_i of alternating factors: every selection
        of one point per set, where a factor identity (shared mode) may be
        deleted, kept only when the result is a reduced word.
        """
        sets = list(sets)
        if not sets:
            raise ValidationError('A set product needs at least one set', code='not_alternating')
        options = []
        previous = None
        for position, (alpha, subset) in enumerate(sets, 1):
            if not 0 <= alpha < len(self.factors):
                raise ValidationError(
                    'Set %(position)s names a factor that does not exist',
                    code='foreign_element',
                    params={'position': position},
                )
            if previous == alpha:
                raise ValidationError(
                    'Sets %(before)s and %(position)s come from the same factor %(index)s',
                    code='not_alternating',
                    params={'before': position - 1, 'position': position, 'index': alpha + 1},
                )
            previous = alpha
            K = self.factors[alpha]
            subset = list(subset)
            if not subset or any(x not in K for x in subset):
                raise ValidationError(
                    'Set %(position)s must be a nonempty subset of factor %(index)s',
                    code='foreign_element',
                    params={'position': position, 'index': alpha + 1},
                )
            choices = []
            for x in sorted(subset, key=K.index):
                letter = Letter(alpha, x)
                choices.append(None if self._collapses(letter) else letter)
            options.append(choices)

        words = set()
        for selection in product(*options):
            candidate = tuple(letter for letter in selection if letter is not None)
            if self.validate_word(candidate):
                words.add(Word(candidate))
        return frozenset(words)

    # ------------------------------------------------------------------
    # Truncated checks
    # ------------------------------------------------------------------
    def check_associativity(self, max_len):
        """
        Probability, closure and associativity of word convolution over all
        words of length <= max_len.
        """
        words = self.enumerate_words(max_len)
        report = AxiomReport(structure=f'{self.name} (words of length <= {max_len})')
        for x, y in product(words, repeat=2):
            report.pairs_checked += 1
            measure = self._convolve(x, y)
            if not is_probability(measure):
                report.violations.append(AxiomViolation('A3', (x, y), measure))
            elif not all(self.validate_word(word) for word in measure):
                report.violations.append(AxiomViolation('closure', (x, y), measure))
        for x, y, z in product(words, repeat=3):
            report.triples_checked += 1
            left = self.convolve_measures(self._convolve(x, y), point_mass(z))
            right = self.convolve_measures(point_mass(x), self._convolve(y, z))
            if left != right:
                report.violations.append(AxiomViolation('A1', (x, y, z), left, right))
        logger.info(f'{self!r}: {report.summary()}')
        return report

    def check_identity_law(self, max_len):
        """p_e*p_w = p_w = p_w*p_e for every word w of length <= max_len."""
        if self.mode is not IdentityMode.SHARED:
            raise ValidationError(
                '%(product)s has no identity (mode %(mode)s)',
                code='identity_law',
                params={'product': self.name, 'mode': self.mode.value},
            )
        report = AxiomReport(structure=f'{self.name} (words of length <= {max_len})')
        for word in self.enumerate_words(max_len):
            report.pairs_checked += 1
            expected = point_mass(word)
            left, right = self._convolve(EMPTY_WORD, word), self._convolve(word, EMPTY_WORD)
            if left != expected or right != expected:
                report.violations.append(AxiomViolation('identity', (word,), left, right))
        return report

    def check_embedding(self, alpha):
        """The embedding of factor alpha as a homomorphism into the free product."""
        K = self.factors[alpha]
        report = HomomorphismReport()
        for x, y in product(K.elements, repeat=2):
            report.pairs_checked += 1
            pushed = K.convolve(x, y).pushforward(lambda z: self.embed_factor(alpha, z))
            image = self._convolve(self.embed_factor(alpha, x), self.embed_factor(alpha, y))
            if pushed != image:
                report.failures.append(HomomorphismFailure((x, y), pushed, image))
        return report


# ============================================
# CONSTRUCTION
# ============================================

def build_free_product(factors):
    """
    Free product of a family of finite semihypergroups.

    The identity mode follows the set of factors with an identity:
    none -> NO_IDENTITY; one -> RENAMED (its identity is an ordinary letter);
    two or more -> SHARED, which requires every such factor to be pure.
    """
    factors = list(factors)
    if not factors:
        raise ValidationError('A free product needs at least one factor', code='parse_error')

    with_identity = [
        (alpha, K, identity_of(K))
        for alpha, K in enumerate(factors)
    ]
    with_identity = [(alpha, K, e) for alpha, K, e in with_identity if e is not None]

    if len(with_identity) >= 2:
        for alpha, K, identity in with_identity:
            witness = purity_witness(K)
            if witness is not None:
                logger.warning(f'Factor {alpha + 1} ({K.name}) is not pure: witness {witness}')
                raise ValidationError(
                    'Factor %(index)s (%(name)s) is not pure: p_%(x)s * p_%(y)s = p_%(identity)s',
                    code='not_pure',
                    params={
                        'index': alpha + 1, 'name': K.name,
                        'x': witness[0], 'y': witness[1], 'identity': identity,
                        'witness': witness,
                    },
                )
        F = FreeProduct(factors, IdentityMode.SHARED)
    elif len(with_identity) == 1:
        alpha, K, identity = with_identity[0]
        F = FreeProduct(factors, IdentityMode.RENAMED, renamed_identity=Letter(alpha, identity))
    else:
        F = FreeProduct(factors, IdentityMode.NO_IDENTITY)

    logger.info(f'Built {F!r}')
    return F
