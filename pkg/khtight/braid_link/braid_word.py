"""
This module contains the implementation of braid words and of the transverse quantities
that can be read off a word (writhe, self-linking number).
"""
import re
from typing import Optional, Union

from ..errors import BraidParseError


_TOKEN_SEPARATOR = re.compile(r"[,\s]+")
_LETTER = re.compile(r"^-?\d+$")
_BLOCK = re.compile(r"^(-?\d+)\*(\{r\}|\d+)$")


class BraidWord():
    """
    A braid word -- i.e. a strand count together with a sequence of signed Artin generators.
    The letter `k` stands for the positive generator sigma_k, `-k` for its inverse.

    Parameters
    ----------
    strands : `int`
        Number of strands (braid index) b.
    letters : `list[int]` or `tuple[int]`, optional
        Signed generators; every letter must satisfy 1 <= abs(letter) <= b-1.

        The default is an empty word (the closure is the b-component unlink).
    """
    def __init__(self, strands: int, letters: Optional[Union[list[int], tuple[int, ...]]] = None):
        if not isinstance(strands, int) or isinstance(strands, bool):
            raise TypeError("'strands' must be an instance of 'int' " +
                            f"but not of '{type(strands)}'")
        if strands < 1:
            raise ValueError("'strands' must be positive")
        if letters is None:
            letters = ()
        if not isinstance(letters, (list, tuple)):
            raise TypeError("'letters' must be an instance of 'list[int]' " +
                            f"but not of '{type(letters)}'")
        for letter in letters:
            if not isinstance(letter, int) or isinstance(letter, bool):
                raise TypeError("All letters must be instances of 'int' " +
                                f"but not of '{type(letter)}'")
            if letter == 0:
                raise ValueError("Braid letters must be nonzero")
            if abs(letter) > strands - 1:
                raise ValueError(f"Letter {letter} is out of range for a braid on " +
                                 f"{strands} strands")

        self._strands = strands
        self._letters = tuple(letters)

    @property
    def strands(self) -> int:
        """
        Returns the number of strands.

        Returns
        -------
        `int`
            Braid index b.
        """
        return self._strands

    @property
    def letters(self) -> tuple[int, ...]:
        """
        Returns the signed generators of this word.

        Returns
        -------
        `tuple[int]`
            Letters.
        """
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BraidWord):
            raise TypeError(f"Can not compare 'BraidWord' instance to '{type(other)}' instance")

        return self._strands == other.strands and self._letters == other.letters

    def __hash__(self) -> int:
        return hash((self._strands, self._letters))

    def __str__(self) -> str:
        return f"strands: {self._strands} letters: {self.to_text()}"

    def __repr__(self) -> str:
        return f"BraidWord({self._strands}, {list(self._letters)})"

    def to_text(self) -> str:
        """
        Returns the comma-separated text form of the letters, as accepted by
        :func:`parse_braid`.

        Returns
        -------
        `str`
            Letters as text.
        """
        return ",".join(str(letter) for letter in self._letters)

    def writhe(self) -> int:
        """
        Returns the writhe of the closure -- i.e. the sum of the letter signs.

        Returns
        -------
        `int`
            Writhe.
        """
        return sum(1 if letter > 0 else -1 for letter in self._letters)

    def self_linking(self) -> int:
        """
        Returns the self-linking number sl = writhe - b of the transverse closure.

        Returns
        -------
        `int`
            Self-linking number.
        """
        return self.writhe() - self._strands

    def mirror(self) -> "BraidWord":
        """
        Returns the mirror word, every letter with flipped sign.

        Returns
        -------
        :class:`~khtight.braid_link.braid_word.BraidWord`
            Mirrored word.
        """
        return BraidWord(self._strands, [-letter for letter in self._letters])

    def stabilize(self) -> "BraidWord":
        """
        Returns the positive Markov stabilization of this word: one more strand and
        the letter sigma_b appended. The transverse type of the closure is unchanged.

        Returns
        -------
        :class:`~khtight.braid_link.braid_word.BraidWord`
            Stabilized word.
        """
        return BraidWord(self._strands + 1, list(self._letters) + [self._strands])

    def rotate(self, shift: int) -> "BraidWord":
        """
        Returns the cyclic rotation of this word that starts at letter `shift`.
        Its closure is isotopic to the closure of this word.

        Parameters
        ----------
        shift : `int`
            Index of the first letter of the rotated word.

        Returns
        -------
        :class:`~khtight.braid_link.braid_word.BraidWord`
            Rotated word.
        """
        if len(self._letters) == 0:
            return self
        shift %= len(self._letters)
        return BraidWord(self._strands, list(self._letters[shift:] + self._letters[:shift]))

    def delete_letter(self, index: int) -> "BraidWord":
        """
        Returns the word with the letter at position `index` removed -- i.e. the
        oriented resolution of that crossing.

        Parameters
        ----------
        index : `int`
            Position of the letter.

        Returns
        -------
        :class:`~khtight.braid_link.braid_word.BraidWord`
            Shortened word.
        """
        if not 0 <= index < len(self._letters):
            raise ValueError(f"Letter index {index} is out of range")
        return BraidWord(self._strands, list(self._letters[:index] + self._letters[index + 1:]))


def _split_tokens(text: str) -> list[str]:
    return [token for token in _TOKEN_SEPARATOR.split(text.strip()) if token != ""]


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    """
    Parses a braid word given as comma- or whitespace-separated signed integers.

    Parameters
    ----------
    text : `str`
        Letters, e.g. "-1,-1,2,1,1,1,2".
    strands : `int`, optional
        Number of strands. If None, the strand count is inferred as max|letter| + 1.

        The default is None.

    Returns
    -------
    :class:`~khtight.braid_link.braid_word.BraidWord`
        Parsed braid word.
    """
    if not isinstance(text, str):
        raise TypeError(f"'text' must be an instance of 'str' but not of '{type(text)}'")
    if strands is not None:
        if not isinstance(strands, int) or isinstance(strands, bool):
            raise TypeError("'strands' must be an instance of 'int' " +
                            f"but not of '{type(strands)}'")
        if strands < 1:
            raise BraidParseError("'strands' must be positive")

    letters = []
    for token in _split_tokens(text):
        if _LETTER.match(token) is None:
            raise BraidParseError(f"Invalid braid letter '{token}'")
        letter = int(token)
        if letter == 0:
            raise BraidParseError("Braid letters must be nonzero")
        letters.append(letter)

    if strands is None:
        if len(letters) == 0:
            raise BraidParseError("An empty braid word requires an explicit strand count")
        strands = max(abs(letter) for letter in letters) + 1
    else:
        for letter in letters:
            if abs(letter) >= strands:
                raise BraidParseError(f"Letter {letter} needs more than {strands} strands")

    return BraidWord(strands, letters)


def expand_template(template: str, r: int) -> str:
    """
    Expands a braid family template. Tokens of the form `k*{r}` stand for the letter `k`
    repeated `r` times, `k*n` for `k` repeated `n` times; all other tokens are letters.

    Parameters
    ----------
    template : `str`
        Template, e.g. "-1*{r},2,1,1,1,2".
    r : `int`
        Family parameter (nonnegative).

    Returns
    -------
    `str`
        Expanded letters as text.
    """
    if not isinstance(r, int) or isinstance(r, bool):
        raise TypeError(f"'r' must be an instance of 'int' but not of '{type(r)}'")
    if r < 0:
        raise ValueError("'r' must be nonnegative")

    letters = []
    for token in _split_tokens(template):
        block = _BLOCK.match(token)
        if block is not None:
            count = r if block.group(2) == "{r}" else int(block.group(2))
            letters.extend([block.group(1)] * count)
        elif _LETTER.match(token) is not None:
            letters.append(token)
        else:
            raise BraidParseError(f"Invalid template token '{token}'")
    return ",".join(letters)


def family_word(template: str, r: int, strands: Optional[int] = None) -> BraidWord:
    """
    Returns the member of a braid family for the parameter `r`.

    Parameters
    ----------
    template : `str`
        Family template -- see :func:`expand_template`.
    r : `int`
        Family parameter.
    strands : `int`, optional
        Number of strands. If None, it is inferred from the template letters (so that
        the strand count does not depend on `r`).

        The default is None.

    Returns
    -------
    :class:`~khtight.braid_link.braid_word.BraidWord`
        Family member.
    """
    if strands is None:
        strands = parse_braid(expand_template(template, 1)).strands
    return parse_braid(expand_template(template, r), strands)


def writhe(w: BraidWord) -> int:
    """
    Returns the writhe (sum of letter signs) of a braid word.
    """
    return w.writhe()


def self_linking(w: BraidWord) -> int:
    """
    Returns the self-linking number writhe(w) - b of the transverse closure.
    """
    return w.self_linking()


def mirror(w: BraidWord) -> BraidWord:
    """
    Returns the mirror of a braid word.
    """
    return w.mirror()


__all__ = ["BraidWord", "parse_braid", "expand_template", "family_word", "writhe",
           "self_linking", "mirror"]
