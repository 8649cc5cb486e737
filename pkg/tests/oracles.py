"""Independent brute-force oracles used to freeze and cross-check expected values."""

from itertools import combinations, product
from math import comb


def compositions(mults, total):
    """All (l1..lk), li >= 1, with sum mults[i]*li == total."""
    k = len(mults)
    if k == 0:
        return [()] if total == 0 else []
    ranges = [range(1, total // a + 1) for a in mults[:-1]]
    out = []
    for head in product(*ranges):
        rest = total - sum(a * l for a, l in zip(mults, head))
        if rest >= mults[-1] and rest % mults[-1] == 0:
            out.append(head + (rest // mults[-1],))
    return out


def substitute(pattern_text, lengths_by_var, word):
    """Cut ``word`` along the pattern; return bindings dict or None if inconsistent."""
    bind = {}
    pos = 0
    for var in pattern_text:
        ln = lengths_by_var[var]
        piece = tuple(word[pos:pos + ln])
        if var in bind and bind[var] != piece:
            return None
        bind[var] = piece
        pos += ln
    return bind if pos == len(word) else None


def brute_suffix_occurrences(word, pattern_text):
    """Sorted (ell, lengths) of all occurrences forming a suffix of ``word``."""
    word = tuple(word)
    variables = sorted(set(pattern_text))
    mults = [pattern_text.count(v) for v in variables]
    out = []
    for ell in range(len(pattern_text), len(word) + 1):
        suffix = word[len(word) - ell:]
        for lengths in compositions(mults, ell):
            if substitute(pattern_text, dict(zip(variables, lengths)), suffix) is not None:
                out.append((ell, lengths))
    return sorted(out)


def brute_contains(word, pattern_text):
    word = tuple(word)
    return any(brute_suffix_occurrences(word[:end], pattern_text) for end in range(1, len(word) + 1))


def brute_dyck(t, ones, d):
    """Count 0/1 words with t zeros and ``ones`` ones, prefix condition, all 1-runs >= d."""
    n = t + ones
    count = 0
    for where in combinations(range(n), ones):
        bits = [0] * n
        for i in where:
            bits[i] = 1
        h = run = 0
        ok = True
        for b in bits:
            if b:
                h -= 1
                run += 1
                if h < 0:
                    ok = False
                    break
            else:
                if 0 < run < d:
                    ok = False
                    break
                run = 0
                h += 1
        if ok and (run == 0 or run >= d):
            count += 1
    return count


def has_repetition(word, power):
    """True iff ``word`` contains x^power for a non-empty x (direct scan)."""
    word = tuple(word)
    n = len(word)
    for period in range(1, n // power + 1):
        span = period * power
        for start in range(n - span + 1):
            block = word[start:start + period]
            if all(word[start + i * period:start + (i + 1) * period] == block for i in range(1, power)):
                return True
    return False


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def brute_h(a, ell):
    """Number of tuples (l_i >= 1) with sum a_i*l_i == ell, by recursion."""
    if not a:
        return 1 if ell == 0 else 0
    head, rest = a[0], a[1:]
    minrest = sum(rest)
    return sum(brute_h(rest, ell - head * l) for l in range(1, (ell - minrest) // head + 1))
