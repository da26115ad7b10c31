# constructions/free_words.py
"""
The free semihypergroup on an alphabet: all finite words (the empty word
included) with p_u * p_v = p_{uv}. The carrier is infinite, so only the lazy
point-convolution interface is offered.
"""

from itertools import product

from django.core.exceptions import ValidationError

from ratmeasure.measures import convolve_extend, point_mass


class FreeWord(tuple):
    """A word over an alphabet; renders as '(a b)' and the empty word as 'e'."""

    def __str__(self):
        if not self:
            return 'e'
        return '(' + ' '.join(str(letter) for letter in self) + ')'

    def __repr__(self):
        return f'FreeWord{tuple(self)!r}'

    def sort_key(self):
        return (len(self), tuple(str(letter) for letter in self))

    def __add__(self, other):
        return FreeWord(tuple(self) + tuple(other))


class FreeWordsSemihypergroup:
    """Lazy discrete semihypergroup of words under concatenation."""

    def __init__(self, alphabet):
        alphabet = tuple(alphabet)
        if not alphabet:
            raise ValidationError('The alphabet must be nonempty', code='parse_error')
        self.alphabet = alphabet
        self._letters = frozenset(alphabet)
        self.identity = FreeWord()

    def __contains__(self, word):
        return all(letter in self._letters for letter in word)

    def word(self, *letters):
        word = FreeWord(letters)
        if word not in self:
            raise ValidationError(
                'Word %(word)s uses letters outside the alphabet',
                code='invalid_word',
                params={'word': str(word)},
            )
        return word

    def convolve(self, u, v):
        return point_mass(FreeWord(u) + FreeWord(v))

    def convolve_measures(self, mu, nu):
        return convolve_extend(mu, nu, self.convolve)

    def enumerate_words(self, max_len):
        words = []
        for length in range(max_len + 1):
            words.extend(FreeWord(letters) for letters in product(self.alphabet, repeat=length))
        return words


def free_words_semihypergroup(alphabet):
    return FreeWordsSemihypergroup(alphabet)
