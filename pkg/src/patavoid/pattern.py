"""Patterns over the variable alphabet A-Z and their structural reductions."""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass, field

from .errors import CapacityError, ContractError, PatternParseError

ALPHABET = string.ascii_uppercase


@dataclass(frozen=True)
class Pattern:
    """A pattern such as ``ABA``.

    Variables are always ordered alphabetically, so ``variables[j]`` is the
    j-th variable and ``multiplicities[j]`` its number of occurrences.
    """

    text: str
    variables: tuple[str, ...] = field(init=False)
    multiplicities: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        counts = Counter(self.text)
        variables = tuple(sorted(counts))
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "multiplicities", tuple(counts[v] for v in variables))

    @property
    def k(self) -> int:
        return len(self.variables)

    @property
    def length(self) -> int:
        return len(self.text)

    def __len__(self):
        return len(self.text)

    def __str__(self):
        return self.text

    @property
    def indices(self) -> tuple[int, ...]:
        """The pattern as a sequence of variable indices (0 = first variable)."""
        pos = {v: j for j, v in enumerate(self.variables)}
        return tuple(pos[c] for c in self.text)

    def multiplicity(self, var: str) -> int:
        try:
            return self.multiplicities[self.variables.index(var)]
        except ValueError:
            return 0


@dataclass(frozen=True)
class PatternClass:
    doubled: bool
    balanced: bool
    k: int
    q_k: int


def parse_pattern(text: str | Pattern) -> Pattern:
    if isinstance(text, Pattern):
        return text
    if not text:
        raise PatternParseError("empty pattern", 0)
    for i, ch in enumerate(text, start=1):
        if ch not in ALPHABET:
            raise PatternParseError(
                f"invalid character {ch!r} at position {i}: variables must be A-Z", i
            )
    return Pattern(text)


def q(k: int) -> int:
    """Length threshold 3 * 2**(k-1) for 2-avoidability of k-variable patterns."""
    return 3 * 2 ** (k - 1)


def is_doubled(p: Pattern) -> bool:
    return min(p.multiplicities) >= 2


def is_balanced(p: Pattern) -> bool:
    if not is_doubled(p):
        return False
    half = len(p) // 2
    prefix, suffix = set(p.text[:half]), set(p.text[len(p) - half:])
    return all(v in prefix and v in suffix for v in p.variables)


def classify(p: Pattern | str) -> PatternClass:
    p = parse_pattern(p)
    return PatternClass(doubled=is_doubled(p), balanced=is_balanced(p), k=p.k, q_k=q(p.k))


def balanced_factor_span(p: Pattern | str, f: int) -> tuple[int, int]:
    """Start/end offsets of the factor returned by :func:`extract_balanced_factor`."""
    p = parse_pattern(p)
    if f < 2:
        raise ContractError(f"f must be >= 2, got {f}")
    if len(p) < f * 2 ** (p.k - 1):
        raise ContractError(
            f"pattern {p.text} has {p.k} variables and length {len(p)} < {f * 2 ** (p.k - 1)}"
        )
    start, text = 0, p.text
    while True:
        sub = Pattern(text)
        if is_balanced(sub):
            return start, start + len(text)
        half = len(text) // 2
        if any(v not in text[:half] for v in sub.variables):
            text = text[:half]
        else:
            start += len(text) - half
            text = text[len(text) - half:]


def extract_balanced_factor(p: Pattern | str, f: int) -> Pattern:
    """Return a balanced factor p' of p with |p'| >= f * 2**(k'-1).

    Halves the pattern while it is not balanced, keeping a half that misses
    some variable. The prefix half is preferred when both qualify.
    """
    p = parse_pattern(p)
    start, end = balanced_factor_span(p, f)
    return Pattern(p.text[start:end])


def reduce_doubled(p: Pattern | str) -> Pattern:
    """Split every variable occurring 4+ times until all occur 2 or 3 times.

    The first and third occurrences of the alphabetically first offending
    variable are renamed to the smallest unused letter, repeatedly. Every
    occurrence of the input is then an occurrence of the output.
    """
    p = parse_pattern(p)
    if not is_doubled(p):
        raise ContractError(f"pattern {p.text} is not doubled")
    text = list(p.text)
    while True:
        counts = Counter(text)
        heavy = sorted(v for v, c in counts.items() if c >= 4)
        if not heavy:
            return Pattern("".join(text))
        var = heavy[0]
        fresh = next((c for c in ALPHABET if c not in counts), None)
        if fresh is None:
            raise CapacityError(f"no unused variable left while reducing {p.text}")
        seen = 0
        for i, c in enumerate(text):
            if c == var:
                seen += 1
                if seen in (1, 3):
                    text[i] = fresh
                if seen == 3:
                    break


def _check_family_index(k: int) -> None:
    if not 1 <= k <= len(ALPHABET):
        raise ContractError(f"k must be in 1..26, got {k}")


def zimin(k: int) -> Pattern:
    """Unavoidable pattern A, ABA, ABACABA, ... with k variables."""
    _check_family_index(k)
    text = "A"
    for j in range(1, k):
        text = text + ALPHABET[j] + text
    return Pattern(text)


def aa_family(k: int) -> Pattern:
    """AA, AABAA, AABAACAABAA, ...: k variables, length 3*2**(k-1) - 1, not 2-avoidable."""
    _check_family_index(k)
    text = "AA"
    for j in range(1, k):
        text = text + ALPHABET[j] + text
    return Pattern(text)


def random_doubled_pattern(rng, k: int, length: int) -> Pattern:
    """Uniformly shuffled doubled pattern using exactly k variables, from a ``random.Random``."""
    _check_family_index(k)
    if length < 2 * k:
        raise ContractError(f"a doubled pattern with {k} variables needs length >= {2 * k}")
    letters = [ALPHABET[j] for j in range(k)] * 2
    letters += [ALPHABET[rng.randrange(k)] for _ in range(length - 2 * k)]
    rng.shuffle(letters)
    return Pattern("".join(letters))
