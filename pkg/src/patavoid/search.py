"""Exhaustive backtracking over words avoiding a pattern."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._backend import SuffixMatcher, search_dfs
from .errors import ContractError, PatavoidError
from .occurrence import Word, format_word
from .pattern import Pattern, parse_pattern

EXHAUSTED = "exhausted"
DEPTH_REACHED = "depth_reached"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of :func:`backtrack_avoid`.

    ``exhausted``: no avoiding word is longer than ``max_len``, and
    ``maximal_word_count`` avoiding words have exactly that length.
    ``depth_reached``: ``witness`` avoids the pattern and has length max_depth.
    ``budget_exceeded``: inconclusive; ``max_len`` is the longest word seen.
    """

    kind: str
    pattern: Pattern
    sigma: int
    max_len: int
    maximal_word_count: int | None
    witness: Word | None
    nodes: int
    duration: float

    @property
    def exhausted(self) -> bool:
        return self.kind == EXHAUSTED

    @property
    def conclusive(self) -> bool:
        return self.kind != BUDGET_EXCEEDED

    def report(self) -> dict:
        out = {
            "pattern": self.pattern.text,
            "sigma": self.sigma,
            "outcome": self.kind,
        }
        if self.kind == EXHAUSTED:
            out["M"] = self.max_len
            out["maximal_words"] = self.maximal_word_count
        elif self.kind == DEPTH_REACHED:
            out["witness"] = format_word(self.witness)
            out["witness_length"] = len(self.witness)
        else:
            out["longest_seen"] = self.max_len
        out["nodes"] = self.nodes
        out["duration_s"] = f"{self.duration:.3f}"
        return out


class SearchBudgetExceeded(PatavoidError):
    """A yes/no question could not be settled within the node budget."""

    def __init__(self, outcome: SearchOutcome):
        super().__init__(f"node budget exhausted after {outcome.nodes} nodes")
        self.outcome = outcome


def _run(args):
    indices, k, sigma, max_depth, node_budget, prefix = args
    return search_dfs(indices, k, sigma, max_depth, node_budget, prefix)


def _avoiding_prefixes(p: Pattern, sigma: int, length: int) -> list[Word]:
    """Avoiding words of the given length starting with 0, in lexicographic order."""
    matcher = SuffixMatcher(p.indices, p.k)
    out: list[Word] = []

    def grow(word: list[int]):
        if len(word) == length:
            out.append(tuple(word))
            return
        for x in range(1 if not word else sigma):
            matcher.push(x)
            if not matcher.has_suffix_occurrence():
                word.append(x)
                grow(word)
                word.pop()
            matcher.pop()

    grow([])
    return out


def backtrack_avoid(p, sigma: int, max_depth: int, node_budget: int = 0, jobs: int = 1) -> SearchOutcome:
    """Depth-first search for a word of length ``max_depth`` avoiding ``p``.

    The first letter is fixed to 0; counts are multiplied back by sigma.
    ``node_budget = 0`` means unlimited. With ``jobs > 1`` the subtrees below
    a short common prefix run in separate processes, each with the full node
    budget; results merge deterministically (the smallest witness wins).
    """
    p = parse_pattern(p)
    if sigma < 1:
        raise ContractError(f"sigma must be >= 1, got {sigma}")
    if max_depth < 1:
        raise ContractError(f"max_depth must be >= 1, got {max_depth}")
    if node_budget < 0:
        raise ContractError("node_budget must be >= 0")
    start = time.perf_counter()
    if jobs > 1 and sigma > 1:
        status, max_len, count, nodes, witness = _parallel(p, sigma, max_depth, node_budget, jobs)
    else:
        status, max_len, count, nodes, witness = search_dfs(p.indices, p.k, sigma, max_depth, node_budget)
    duration = time.perf_counter() - start
    kind = (EXHAUSTED, DEPTH_REACHED, BUDGET_EXCEEDED)[status]
    if kind == EXHAUSTED:
        count = count * sigma if max_len > 0 else 1
    else:
        count = None
    return SearchOutcome(
        kind=kind,
        pattern=p,
        sigma=sigma,
        max_len=max_len,
        maximal_word_count=count,
        witness=tuple(witness) if witness is not None else None,
        nodes=nodes,
        duration=duration,
    )


def _parallel(p: Pattern, sigma: int, max_depth: int, node_budget: int, jobs: int):
    # split at the shallowest depth giving a few subtrees per worker
    depth = 1
    prefixes = _avoiding_prefixes(p, sigma, depth)
    while len(prefixes) < 4 * jobs and depth < min(max_depth, 16) and prefixes:
        depth += 1
        prefixes = _avoiding_prefixes(p, sigma, depth)
    if not prefixes:
        # the whole tree died before the split depth; search it directly
        return search_dfs(p.indices, p.k, sigma, max_depth, node_budget)
    tasks = [(p.indices, p.k, sigma, max_depth, node_budget, w) for w in prefixes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run, tasks))
    # nodes above the split are not re-counted; each subtree counts its own
    nodes = sum(r[3] for r in results)
    witnesses = sorted(tuple(r[4]) for r in results if r[0] == 1)
    if witnesses:
        return 1, max_depth, 1, nodes, list(witnesses[0])
    if any(r[0] == 2 for r in results):
        return 2, max(r[1] for r in results), 0, nodes, None
    max_len = max(r[1] for r in results)
    count = sum(r[2] for r in results if r[1] == max_len)
    return 0, max_len, count, nodes, None


def unavoidability_probe(p, sigma: int, length: int, node_budget: int = 0) -> bool:
    """True iff every word of the given length over sigma letters contains an instance of ``p``."""
    if length < 1:
        raise ContractError(f"length must be >= 1, got {length}")
    outcome = backtrack_avoid(p, sigma, length, node_budget)
    if not outcome.conclusive:
        raise SearchBudgetExceeded(outcome)
    return outcome.exhausted
