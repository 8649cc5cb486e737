"""Words over {0, ..., sigma-1} and occurrences of patterns inside them."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from ._backend import SuffixMatcher
from .errors import ContractError
from .pattern import Pattern, parse_pattern

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

Word = tuple[int, ...]


def as_word(letters: str | Iterable[int]) -> Word:
    """Coerce ``"00101"`` or any iterable of ints to a tuple of letters."""
    if isinstance(letters, str):
        try:
            return tuple(DIGITS.index(ch) for ch in letters.lower())
        except ValueError:
            raise ValueError(f"invalid letter in word {letters!r}") from None
    return tuple(int(x) for x in letters)


def format_word(word: Iterable[int]) -> str:
    """Inverse of :func:`as_word` for alphabets of size at most 36."""
    return "".join(DIGITS[x] for x in word)


@dataclass(frozen=True)
class Occurrence:
    """A length assignment of the pattern's variables with matching bindings."""

    pattern: Pattern
    lengths: tuple[int, ...]
    bindings: tuple[Word, ...]

    @property
    def total_length(self) -> int:
        return sum(a * n for a, n in zip(self.pattern.multiplicities, self.lengths))

    @property
    def prefix_sums(self) -> tuple[int, ...]:
        """L_1 < ... < L_{k-1}, running sums of the first k-1 lengths."""
        out, acc = [], 0
        for n in self.lengths[:-1]:
            acc += n
            out.append(acc)
        return tuple(out)

    def binding(self, var: str) -> Word:
        return self.bindings[self.pattern.variables.index(var)]

    def factor(self) -> Word:
        """The word obtained by substituting the bindings into the pattern."""
        out: list[int] = []
        for j in self.pattern.indices:
            out.extend(self.bindings[j])
        return tuple(out)

    def __str__(self):
        parts = (f"{v}={format_word(b)}" for v, b in zip(self.pattern.variables, self.bindings))
        return "(" + "; ".join(parts) + ")"


def _bind(p: Pattern, lengths: Sequence[int], factor: Sequence[int]) -> Occurrence | None:
    bindings: list[Word | None] = [None] * p.k
    pos = 0
    for j in p.indices:
        piece = tuple(factor[pos:pos + lengths[j]])
        if bindings[j] is None:
            bindings[j] = piece
        elif bindings[j] != piece:
            return None
        pos += lengths[j]
    return Occurrence(p, tuple(lengths), tuple(bindings))


def instance_check(f, p, lengths: Sequence[int]) -> Occurrence | None:
    """Return the occurrence of ``p`` spelling exactly ``f`` with these lengths, if any."""
    p = parse_pattern(p)
    f = as_word(f)
    lengths = tuple(int(n) for n in lengths)
    if len(lengths) != p.k or min(lengths) < 1:
        raise ContractError(f"need {p.k} positive lengths, got {lengths}")
    total = sum(a * n for a, n in zip(p.multiplicities, lengths))
    if total != len(f):
        raise ContractError(f"lengths {lengths} give total {total}, word has length {len(f)}")
    return _bind(p, lengths, f)


def _sorted_suffix_occurrences(matcher, p: Pattern, word: Word) -> list[Occurrence]:
    n = len(word)
    found = sorted((n - start, lengths) for start, lengths in matcher.suffix_occurrences())
    return [_bind(p, lengths, word[n - ell:]) for ell, lengths in found]


def find_suffix_occurrences(w, p) -> list[Occurrence]:
    """All occurrences of ``p`` forming a suffix of ``w``.

    Sorted by total length, then by the lengths tuple.
    """
    p = parse_pattern(p)
    w = as_word(w)
    matcher = SuffixMatcher(p.indices, p.k)
    matcher.extend(w)
    return _sorted_suffix_occurrences(matcher, p, w)


def contains_instance(w, p) -> tuple[int, Occurrence] | None:
    """Earliest occurrence of ``p`` in ``w`` as ``(end_position, occurrence)``.

    ``end_position`` is 1-based: the occurrence spans letters
    ``end - total_length + 1 .. end``. Returns None when ``w`` avoids ``p``.
    """
    p = parse_pattern(p)
    w = as_word(w)
    matcher = SuffixMatcher(p.indices, p.k)
    for end, letter in enumerate(w, start=1):
        matcher.push(letter)
        if matcher.has_suffix_occurrence():
            return end, _sorted_suffix_occurrences(matcher, p, w[:end])[0]
    return None


def avoids(w, p) -> bool:
    return contains_instance(w, p) is None
