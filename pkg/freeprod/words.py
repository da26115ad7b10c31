# freeprod/words.py
"""
Letters and reduced words over an indexed family of semihypergroups.
"""

from dataclasses import dataclass
from enum import Enum


class IdentityMode(Enum):
    """How the identities of the factors enter the free product."""

    NO_IDENTITY = 'no-identity'  # no factor has an identity
    RENAMED = 'renamed'          # exactly one factor has one; it is the ordinary letter x_e
    SHARED = 'shared'            # the empty word e stands for every factor identity


@dataclass(frozen=True)
class Letter:
    factor: int
    element: object

    def __str__(self):
        return f'{self.element}@{self.factor + 1}'


@dataclass(frozen=True)
class Word:
    """
    A finite sequence of letters. Reducedness (alternating factors, no
    identity letters in shared mode) is checked by the free product that
    owns the word, not here.
    """

    letters: tuple = ()

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.letters[key])
        return self.letters[key]

    def __add__(self, other):
        if isinstance(other, Letter):
            return Word(self.letters + (other,))
        return Word(self.letters + tuple(other))

    @property
    def factors(self):
        return tuple(letter.factor for letter in self.letters)

    def sort_key(self):
        return (len(self.letters), self.factors, tuple(str(letter.element) for letter in self.letters))

    def __str__(self):
        if not self.letters:
            return 'e'
        return '(' + ' '.join(str(letter) for letter in self.letters) + ')'


EMPTY_WORD = Word()
