"""The AvoidPattern process, its compressed record R = (D, L, X), and decoding.

Each step appends one letter to the word and a 0 to D. If the new word ends
with an occurrence of the pattern, that suffix is erased and the step also
appends ``1 * ell`` to D, the prefix sums of the variable lengths to L and the
concatenated bindings (zero-padded to ``ell // 2`` letters) to X. Knowing the
pattern, (R, w) determines every appended letter, which :func:`decode`
recovers by walking D backwards.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._backend import SuffixMatcher
from .errors import ContractError, CorruptRecordError
from .occurrence import Word, as_word, contains_instance, format_word
from .pattern import Pattern, is_doubled, parse_pattern, q


@dataclass(frozen=True)
class ErasureEntry:
    prefix_set: tuple[int, ...]
    padded_bindings: Word
    erased_length: int


@dataclass(frozen=True)
class Record:
    """D as a tuple of bits; L and X hold one entry per descent of D."""

    D: tuple[int, ...] = ()
    L: tuple[tuple[int, ...], ...] = ()
    X: tuple[Word, ...] = ()

    def descents(self) -> list[int]:
        """Lengths of the maximal runs of 1's in D, left to right."""
        runs, cur = [], 0
        for bit in self.D:
            if bit:
                cur += 1
            elif cur:
                runs.append(cur)
                cur = 0
        if cur:
            runs.append(cur)
        return runs

    def entries(self) -> list[ErasureEntry]:
        return [ErasureEntry(tuple(l), tuple(x), n) for l, x, n in zip(self.L, self.X, self.descents())]

    @property
    def steps(self) -> int:
        return self.D.count(0)


@dataclass(frozen=True)
class SimTrace:
    steps: int
    erasure_count: int
    erased_lengths: tuple[int, ...]
    final_word_length: int


class AvoidPattern:
    """Incremental AvoidPattern run; feed letters with :meth:`step`.

    When several occurrences end at the new letter, the one with the smallest
    total length wins, then the smallest lengths tuple.
    """

    def __init__(self, p, sigma: int = 2):
        self.pattern = parse_pattern(p)
        if not is_doubled(self.pattern):
            raise ContractError(f"pattern {self.pattern.text} is not doubled")
        if sigma < 2:
            raise ContractError(f"sigma must be >= 2, got {sigma}")
        self.sigma = sigma
        self._matcher = SuffixMatcher(self.pattern.indices, self.pattern.k)
        self._D: list[int] = []
        self._L: list[tuple[int, ...]] = []
        self._X: list[Word] = []
        self._erased: list[int] = []
        self.steps = 0

    def __len__(self):
        return len(self._matcher)

    @property
    def word(self) -> Word:
        return tuple(self._matcher.letters())

    @property
    def record(self) -> Record:
        return Record(tuple(self._D), tuple(self._L), tuple(self._X))

    @property
    def trace(self) -> SimTrace:
        return SimTrace(self.steps, len(self._erased), tuple(self._erased), len(self._matcher))

    def step(self, letter: int) -> ErasureEntry | None:
        if not 0 <= letter < self.sigma:
            raise ContractError(f"letter {letter} outside alphabet of size {self.sigma}")
        m = self._matcher
        m.push(letter)
        self._D.append(0)
        self.steps += 1
        found = m.suffix_occurrences()
        if not found:
            return None
        n = len(m)
        start, lengths = min(found, key=lambda o: (n - o[0], o[1]))
        ell = n - start
        letters = m.letters()
        # bindings in variable order, read from the first copy of each variable
        bindings: list[list[int] | None] = [None] * self.pattern.k
        pos = start
        for j in self.pattern.indices:
            if bindings[j] is None:
                bindings[j] = letters[pos:pos + lengths[j]]
            pos += lengths[j]
        concat = [x for b in bindings for x in b]
        padded = tuple(concat + [0] * (ell // 2 - len(concat)))
        prefix, acc = [], 0
        for n_j in lengths[:-1]:
            acc += n_j
            prefix.append(acc)
        entry = ErasureEntry(tuple(prefix), padded, ell)
        m.truncate(start)
        self._D.extend([1] * ell)
        self._L.append(entry.prefix_set)
        self._X.append(padded)
        self._erased.append(ell)
        return entry


def run_avoid_pattern(p, sigma: int, V: Iterable[int] | str) -> tuple[Record, Word, SimTrace]:
    """Run AvoidPattern on the letters of ``V``; return (record, final word, trace)."""
    sim = AvoidPattern(p, sigma)
    for x in as_word(V):
        sim.step(x)
    return sim.record, sim.word, sim.trace


def decode(record: Record, final_word, p, sigma: int = 2) -> Word:
    """Recover the input letters from a record and the final word."""
    p = parse_pattern(p)
    w = list(as_word(final_word))
    D = list(record.D)
    L, X = list(record.L), list(record.X)
    out: list[int] = []
    i = len(D)
    while i > 0:
        if D[i - 1] == 0:
            if not w:
                raise CorruptRecordError("record appends more letters than the word can explain")
            out.append(w.pop())
            i -= 1
            continue
        j = i
        while j > 0 and D[j - 1] == 1:
            j -= 1
        ell = i - j
        if j == 0:
            raise CorruptRecordError("descent at the start of D")
        if not L or not X:
            raise CorruptRecordError("descent without matching L/X entry")
        prefix, padded = L.pop(), X.pop()
        lengths = _lengths_from_prefix(prefix, ell, p)
        bindings, pos = [], 0
        for n_j in lengths:
            bindings.append(padded[pos:pos + n_j])
            pos += n_j
        if pos > len(padded):
            raise CorruptRecordError(f"X entry of length {len(padded)} too short for bindings of length {pos}")
        factor = [x for v in p.indices for x in bindings[v]]
        if not factor or len(factor) != ell:
            raise CorruptRecordError(f"rebuilt factor has length {len(factor)}, descent has length {ell}")
        w.extend(factor)
        i = j
    if L or X:
        raise CorruptRecordError("L/X entries left over after decoding")
    if w:
        raise CorruptRecordError(f"{len(w)} letters of the final word are unexplained by D")
    if any(not 0 <= x < sigma for x in out):
        raise CorruptRecordError(f"decoded letter outside alphabet of size {sigma}")
    return tuple(reversed(out))


def _lengths_from_prefix(prefix: Sequence[int], ell: int, p: Pattern) -> tuple[int, ...]:
    if len(prefix) != p.k - 1:
        raise CorruptRecordError(f"L entry {list(prefix)} should have {p.k - 1} elements")
    lengths, prev = [], 0
    for s in sorted(prefix):
        if s <= prev:
            raise CorruptRecordError(f"L entry {list(prefix)} is not a set of distinct positive integers")
        lengths.append(s - prev)
        prev = s
    mults = p.multiplicities
    rest = ell - sum(a * n for a, n in zip(mults, lengths))
    if rest <= 0 or rest % mults[-1]:
        raise CorruptRecordError(
            f"last variable length {rest}/{mults[-1]} is not a positive integer (descent {ell})"
        )
    lengths.append(rest // mults[-1])
    return tuple(lengths)


def verify_record(record: Record, p) -> list[str]:
    """List the violated record invariants; empty when the record is well formed."""
    p = parse_pattern(p)
    problems = []
    height = 0
    for pos, bit in enumerate(record.D, start=1):
        if bit not in (0, 1):
            problems.append(f"D[{pos}] = {bit} is not a bit")
            break
        height += -1 if bit else 1
        if height < 0:
            problems.append(f"prefix of D of length {pos} has more 1's than 0's")
            break
    descents = record.descents()
    if not len(descents) == len(record.L) == len(record.X):
        problems.append(
            f"descent without L/X entry: {len(descents)} descents, {len(record.L)} L entries, {len(record.X)} X entries"
        )
    floor = q(p.k) if len(p) >= q(p.k) else len(p)
    for idx, ell in enumerate(descents, start=1):
        if ell < len(p):
            problems.append(f"descent {idx} has length {ell} < |p| = {len(p)}")
        elif ell < floor:
            problems.append(f"descent {idx} has length {ell} < q(k) = {floor}")
    for idx, (prefix, padded, ell) in enumerate(zip(record.L, record.X, descents), start=1):
        if len(padded) != ell // 2:
            problems.append(f"X entry {idx} has length {len(padded)}, expected {ell // 2}")
        try:
            lengths = _lengths_from_prefix(prefix, ell, p)
        except CorruptRecordError as exc:
            problems.append(f"L entry {idx}: {exc}")
            continue
        if any(s >= ell for s in prefix):
            problems.append(f"L entry {idx} has an element >= {ell}")
        used = sum(lengths)
        if any(padded[used:]):
            problems.append(f"X entry {idx} has non-zero padding")
    return problems


# -- seeded letter source -------------------------------------------------------


class LetterStream:
    """Deterministic letters in {0..sigma-1} from numpy's PCG64 generator.

    Each letter consumes one 64-bit output, rejected when it falls in the
    incomplete top block so that the reduction mod sigma is unbiased.
    """

    def __init__(self, seed: int, sigma: int = 2, batch: int = 4096):
        if sigma < 1:
            raise ContractError(f"sigma must be >= 1, got {sigma}")
        self.seed = seed
        self.sigma = sigma
        self._bits = np.random.PCG64(seed)
        self._limit = np.uint64((2**64 // sigma) * sigma - 1) if 2**64 % sigma else None
        self._batch = batch
        self._buf: list[int] = []
        self._pos = 0

    def _refill(self):
        raw = self._bits.random_raw(self._batch)
        if self._limit is not None:
            raw = raw[raw <= self._limit]
        self._buf = (raw % np.uint64(self.sigma)).tolist()
        self._pos = 0

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        while self._pos >= len(self._buf):
            self._refill()
        x = self._buf[self._pos]
        self._pos += 1
        return x

    def take(self, n: int) -> Word:
        return tuple(next(self) for _ in range(n))


@dataclass(frozen=True)
class SimOutcome:
    reached: bool
    pattern: Pattern
    sigma: int
    seed: int
    target: int
    letters: Word = field(repr=False)
    record: Record = field(repr=False)
    word: Word = field(repr=False)
    trace: SimTrace = field(repr=False)
    max_length_seen: int = 0


@dataclass(frozen=True)
class Reached(SimOutcome):
    pass


@dataclass(frozen=True)
class BudgetExhausted(SimOutcome):
    pass


def simulate_until(
    p,
    sigma: int,
    target_n: int,
    seed: int,
    max_steps: int,
    check_every: int = 0,
) -> SimOutcome:
    """Drive AvoidPattern with seeded letters until |w| = target_n or max_steps.

    With ``check_every > 0`` the current word is re-checked for instances of
    the pattern every that many steps (and at the end) with an independent
    left-to-right scan; a hit raises AssertionError.
    """
    sim = AvoidPattern(p, sigma)
    stream = LetterStream(seed, sigma)
    letters: list[int] = []
    best = 0
    reached = target_n <= 0
    while not reached and sim.steps < max_steps:
        x = next(stream)
        letters.append(x)
        sim.step(x)
        best = max(best, len(sim))
        if check_every and sim.steps % check_every == 0:
            _assert_avoids(sim)
        reached = len(sim) >= target_n
    if check_every:
        _assert_avoids(sim)
    cls = Reached if reached else BudgetExhausted
    return cls(
        reached=reached,
        pattern=sim.pattern,
        sigma=sigma,
        seed=seed,
        target=target_n,
        letters=tuple(letters),
        record=sim.record,
        word=sim.word,
        trace=sim.trace,
        max_length_seen=best,
    )


def _assert_avoids(sim: AvoidPattern) -> None:
    hit = contains_instance(sim.word, sim.pattern)
    if hit is not None:
        raise AssertionError(f"step {sim.steps}: word contains {sim.pattern.text} ending at {hit[0]}")


# -- record documents -------------------------------------------------------------


@dataclass(frozen=True)
class RecordDocument:
    pattern: Pattern
    sigma: int
    record: Record
    final_word: Word
    seed: int | None = None

    @property
    def t(self) -> int:
        return self.record.steps

    def to_dict(self) -> dict:
        doc = {
            "pattern": self.pattern.text,
            "sigma": self.sigma,
            "t": self.t,
            "D": "".join(map(str, self.record.D)),
            "L": [sorted(entry) for entry in self.record.L],
            "X": [format_word(x) for x in self.record.X],
            "final_word": format_word(self.final_word),
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> RecordDocument:
        try:
            pattern = parse_pattern(doc["pattern"])
            sigma = int(doc["sigma"])
            D = doc["D"]
            if set(D) - {"0", "1"}:
                raise CorruptRecordError("D must be a string of 0's and 1's")
            record = Record(
                D=tuple(int(b) for b in D),
                L=tuple(tuple(int(x) for x in entry) for entry in doc["L"]),
                X=tuple(as_word(x) for x in doc["X"]),
            )
            final_word = as_word(doc["final_word"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, CorruptRecordError):
                raise
            raise CorruptRecordError(f"malformed record document: {exc}") from exc
        if "t" in doc and int(doc["t"]) != record.steps:
            raise CorruptRecordError(f"t = {doc['t']} but D has {record.steps} zeros")
        return cls(pattern, sigma, record, final_word, doc.get("seed"))

    @classmethod
    def loads(cls, text: str) -> RecordDocument:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CorruptRecordError(f"record is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise CorruptRecordError("record document must be a JSON object")
        return cls.from_dict(doc)

    def decode(self) -> Word:
        return decode(self.record, self.final_word, self.pattern, self.sigma)


def write_record(path: str | Path, document: RecordDocument) -> None:
    Path(path).write_text(document.dumps())


def read_record(path: str | Path) -> RecordDocument:
    return RecordDocument.loads(Path(path).read_text())
