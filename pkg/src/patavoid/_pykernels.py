"""Pure-Python kernels.

This module mirrors ``_ckernels.pyx`` function for function and is used when
the compiled extension is unavailable (or ``PATAVOID_PURE_PYTHON=1``).

Suffix matching
---------------
``SuffixMatcher`` holds a word under construction (push / pop / truncate) and
enumerates the occurrences of a fixed pattern that end at the last letter.
Positions of the pattern are resolved right to left, so the cursor ``c`` is
always the (known) end of the image of the current position.

* A bound variable is checked in place.
* A fresh variable with no bound variable anywhere to its left gets its
  length by a plain loop.
* Otherwise the fresh positions up to the next bound variable ``Y`` form a
  run (fresh variables may repeat inside it). The end ``e`` of that copy of ``Y`` is taken from the occurrence list
  of ``Y``'s binding, and the run length ``c - e`` is then split between the
  run variables. A run variable whose next copy lies beyond ``Y`` behind
  bound positions only has a known end there, so its length is capped by
  the longest common suffix of the two ends. Bound positions at either
  end of the run are checked as soon as their variable gets a length, the
  left end being anchored at ``e``.
* A variable occurring twice or more in the pattern binds to a factor that
  occurs at two distinct end positions, so its length never exceeds the
  longest repeated factor of the word. That cap bounds every loop and the
  window of candidate anchor ends.

Occurrence lists come from a suffix array of the reversed prefixes of the
word (prefix ends sorted by reversed content), maintained incrementally:
factors sharing a suffix of length >= lam form a contiguous block.
"""

class SuffixMatcher:
    def __init__(self, pattern, k):
        self.pat = list(pattern)
        self.k = k
        self.m = len(self.pat)
        # cnt[v][x] = occurrences of v among positions 0..x-1
        self.cnt = [[0] * (self.m + 1) for _ in range(k)]
        for v in range(k):
            row = self.cnt[v]
            for x, u in enumerate(self.pat):
                row[x + 1] = row[x] + (u == v)
        self.w = []
        self.sa = [0]
        # rep[n] = length of the longest factor occurring twice in w[:n]
        self.rep = [0]
        self._cap = [0] * k
        self._len = [0] * k
        self._ref = [0] * k
        self._out = None
        self._limit = 0

    # -- word maintenance -------------------------------------------------

    def __len__(self):
        return len(self.w)

    def letters(self):
        return list(self.w)

    def _lcsuf(self, a, b, cap):
        w = self.w
        t = 0
        lim = min(a, b, cap)
        while t < lim and w[a - 1 - t] == w[b - 1 - t]:
            t += 1
        return t

    def _rev_less(self, a, b):
        t = self._lcsuf(a, b, min(a, b))
        if t == a or t == b:
            return a < b
        return self.w[a - 1 - t] < self.w[b - 1 - t]

    def _rank(self, end):
        sa = self.sa
        lo, hi = 0, len(sa)
        while lo < hi:
            mid = (lo + hi) // 2
            if sa[mid] == end:
                return mid
            if self._rev_less(sa[mid], end):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def push(self, letter):
        self.w.append(letter)
        n = len(self.w)
        r = self._rank(n)
        sa = self.sa
        sa.insert(r, n)
        best = self.rep[-1]
        if r > 0:
            best = max(best, self._lcsuf(n, sa[r - 1], n))
        if r + 1 < len(sa):
            best = max(best, self._lcsuf(n, sa[r + 1], n))
        self.rep.append(best)

    def pop(self):
        n = len(self.w)
        del self.sa[self._rank(n)]
        self.w.pop()
        self.rep.pop()

    def truncate(self, n):
        if n >= len(self.w):
            return
        del self.w[n:]
        del self.rep[n + 1:]
        self.sa = [t for t in self.sa if t <= n]

    def extend(self, letters):
        for x in letters:
            self.push(x)

    # -- search -------------------------------------------------------------

    def suffix_occurrences(self, limit=0):
        """Occurrences ending at the last letter as ``(start, lengths)`` pairs.

        Stops after ``limit`` hits when ``limit > 0``. Order is unspecified.
        """
        self._out = []
        self._limit = limit
        n = len(self.w)
        if n >= self.m:
            self._len = [0] * self.k
            rep = self.rep[n]
            self._cap = [rep if self.cnt[v][self.m] >= 2 else n for v in range(self.k)]
            self._solve(self.m - 1, n)
        out, self._out = self._out, None
        return out

    def has_suffix_occurrence(self):
        return bool(self.suffix_occurrences(limit=1))

    def _done(self):
        return self._limit and len(self._out) >= self._limit

    def _minrem(self, x):
        # minimal total length of positions 0..x given current bindings
        tot = x + 1
        cnt, ln = self.cnt, self._len
        for v in range(self.k):
            if ln[v]:
                tot += cnt[v][x + 1] * (ln[v] - 1)
        return tot

    def _solve(self, i, c):
        if i < 0:
            self._out.append((c, tuple(self._len)))
            return
        pat, ln, ref = self.pat, self._len, self._ref
        v = pat[i]
        if ln[v]:
            L = ln[v]
            if c >= L and self._lcsuf(c, ref[v], L) == L:
                self._solve(i - 1, c - L)
            return
        j = i - 1
        while j >= 0 and not ln[pat[j]]:
            j -= 1
        if j < 0:
            mv = self.cnt[v][i + 1]
            ub = min((c - (self._minrem(i) - mv)) // mv, self._cap[v])
            ref[v] = c
            for L in range(1, ub + 1):
                ln[v] = L
                self._solve(i - 1, c - L)
                if self._done():
                    break
            ln[v] = 0
            return
        y = pat[j]
        lam = ln[y]
        emin = lam + (self._minrem(j - 1) if j > 0 else 0)
        emax = c - (i - j)
        cap = self._cap
        emin = max(emin, c - sum(cap[pat[z]] for z in range(j + 1, i + 1)))
        if emin > emax:
            return
        sa, yref = self.sa, ref[y]
        lo, hi = self._block(yref, lam)
        if hi - lo <= emax - emin + 1:
            ends = (e for e in sa[lo:hi] if emin <= e <= emax)
        else:
            ends = (e for e in range(emin, emax + 1) if self._lcsuf(e, yref, lam) == lam)
        for e in ends:
            self._split(j + 1, e, i, c, j, e)
            if self._done():
                return

    def _block(self, end, lam):
        # sa[lo:hi] = all ends sharing a suffix of length lam with ``end``
        sa = self.sa
        r = self._rank(end)
        bounds = []
        for step in (-1, 1):
            inside, jump = 0, 1
            while True:
                t = r + step * jump
                if not 0 <= t < len(sa) or self._lcsuf(sa[t], end, lam) < lam:
                    break
                inside, jump = jump, 2 * jump
            outside = jump
            while outside - inside > 1:
                mid = (inside + outside) // 2
                t = r + step * mid
                if 0 <= t < len(sa) and self._lcsuf(sa[t], end, lam) == lam:
                    inside = mid
                else:
                    outside = mid
            bounds.append(r + step * inside)
        return bounds[0], bounds[1] + 1

    def _split(self, lo, a, x, cc, j, e):
        # positions lo..x of the run still to place, spelling w[a:cc]
        pat, ln, ref = self.pat, self._len, self._ref
        while lo <= x and ln[pat[lo]]:
            L = ln[pat[lo]]
            if a + L > cc or self._lcsuf(a + L, ref[pat[lo]], L) < L:
                return
            a += L
            lo += 1
        while lo <= x and ln[pat[x]]:
            L = ln[pat[x]]
            if cc - L < a or self._lcsuf(cc, ref[pat[x]], L) < L:
                return
            cc -= L
            x -= 1
        if lo > x:
            if a == cc:
                self._solve(j - 1, e - ln[pat[j]])
            return
        u = pat[x]
        known = mu = others = 0
        for z in range(lo, x + 1):
            t = pat[z]
            if ln[t]:
                known += ln[t]
            elif t == u:
                mu += 1
            else:
                others += 1
        rem = cc - a - known
        ref[u] = cc
        if not others:
            if rem % mu == 0 and mu <= rem <= mu * self._cap[u]:
                ln[u] = rem // mu
                self._split(lo, a, x - 1, cc - ln[u], j, e)
                ln[u] = 0
            return
        ub = min((rem - others) // mu, self._cap[u])
        # the copy of u nearest to the left of the anchor, if only bound positions separate them
        z = j - 1
        pos = e - ln[pat[j]]
        while z >= 0 and pat[z] != u and ln[pat[z]]:
            pos -= ln[pat[z]]
            z -= 1
        if z >= 0 and pat[z] == u and pos > 0:
            ub = min(ub, self._lcsuf(cc, pos, ub))
        for L in range(1, ub + 1):
            ln[u] = L
            self._split(lo, a, x - 1, cc - L, j, e)
            if self._done():
                break
        ln[u] = 0


def search_dfs(pattern, k, sigma, max_depth, node_budget, prefix=()):
    """Depth-first search over words avoiding the pattern.

    The search explores extensions of ``prefix`` (which must avoid the
    pattern); with an empty prefix the first letter is fixed to 0.
    Returns ``(status, max_len, count_at_max, nodes, witness)`` where status is
    0 (tree exhausted), 1 (depth reached, ``witness`` set) or 2 (budget hit).
    ``count_at_max`` counts the avoiding words of length ``max_len`` explored.
    """
    matcher = SuffixMatcher(pattern, k)
    matcher.extend(prefix)
    base = len(prefix)
    nodes = 0
    max_len, count_at_max = base, 1
    if base >= max_depth:
        return 1, max_len, count_at_max, nodes, matcher.letters()
    # choice[d] = next letter to try at depth base + d
    choice = [0]
    while choice:
        d = base + len(choice) - 1
        if len(matcher) > d:
            matcher.pop()
        letter = choice[-1]
        limit = 1 if d == 0 else sigma
        if letter >= limit:
            choice.pop()
            continue
        choice[-1] = letter + 1
        if node_budget and nodes >= node_budget:
            return 2, max_len, count_at_max, nodes, None
        nodes += 1
        matcher.push(letter)
        if matcher.has_suffix_occurrence():
            matcher.pop()
            continue
        depth = d + 1
        if depth > max_len:
            max_len, count_at_max = depth, 1
        elif depth == max_len:
            count_at_max += 1
        if depth >= max_depth:
            return 1, max_len, count_at_max, nodes, matcher.letters()
        choice.append(0)
    return 0, max_len, count_at_max, nodes, None


def g4_sweep_table(p_min, p_max, l_min, l_max):
    """For every (|p|, l) keep the largest b_l over multisets a1<=a2<=a3<=a4, ai>=2.

    b_l counts (l1..l4), li >= 1, with sum ai*li = l. Returns a dict
    ``(|p|, l) -> (b, (a1, a2, a3, a4))``; the first multiset in lexicographic
    order wins ties.
    """
    top = l_max
    best = {}
    for a1 in range(2, p_max // 4 + 1):
        s1 = [0] * (top + 1)
        for n in range(a1, top + 1, a1):
            s1[n] = 1
        for a2 in range(a1, (p_max - a1) // 3 + 1):
            s2 = _times_geometric(s1, a2, top)
            for a3 in range(a2, (p_max - a1 - a2) // 2 + 1):
                s3 = _times_geometric(s2, a3, top)
                lo4 = max(a3, p_min - a1 - a2 - a3)
                for a4 in range(lo4, p_max - a1 - a2 - a3 + 1):
                    size = a1 + a2 + a3 + a4
                    s4 = _times_geometric(s3, a4, top)
                    for ell in range(max(l_min, size), l_max + 1):
                        b = s4[ell]
                        key = (size, ell)
                        cur = best.get(key)
                        if cur is None or b > cur[0]:
                            best[key] = (b, (a1, a2, a3, a4))
    return best


def _times_geometric(s, a, top):
    """Coefficients of s(x) * x^a / (1 - x^a) up to x^top."""
    out = [0] * (top + 1)
    for n in range(a, top + 1):
        out[n] = s[n - a] + out[n - a]
    return out
