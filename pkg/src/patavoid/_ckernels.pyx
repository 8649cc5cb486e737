# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the algorithm description.

Every public name here has a pure-Python twin with identical results.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memmove, memset


cdef class SuffixMatcher:
    cdef int m, k, n, cap
    cdef int *pat
    cdef int *cnt          # cnt[v*(m+1) + x] = occurrences of v in positions 0..x-1
    cdef int *w
    cdef int *sa           # prefix ends 0..n sorted by reversed content
    cdef int *ln
    cdef int *ref
    cdef int *rep          # rep[n] = longest factor occurring twice in w[:n]
    cdef int *cap_v
    cdef list _out
    cdef int _limit

    def __cinit__(self, pattern, int k):
        cdef int x, v
        self.m = len(pattern)
        self.k = k
        self.n = 0
        self.cap = 64
        self.pat = <int *>malloc(max(self.m, 1) * sizeof(int))
        self.cnt = <int *>malloc(k * (self.m + 1) * sizeof(int))
        self.w = <int *>malloc(self.cap * sizeof(int))
        self.sa = <int *>malloc((self.cap + 1) * sizeof(int))
        self.ln = <int *>malloc(max(k, 1) * sizeof(int))
        self.ref = <int *>malloc(max(k, 1) * sizeof(int))
        self.rep = <int *>malloc((self.cap + 1) * sizeof(int))
        self.cap_v = <int *>malloc(max(k, 1) * sizeof(int))
        if not (self.pat and self.cnt and self.w and self.sa and self.ln and self.ref
                and self.rep and self.cap_v):
            raise MemoryError()
        for x in range(self.m):
            self.pat[x] = pattern[x]
            if not 0 <= self.pat[x] < k:
                raise ValueError("pattern index out of range")
        for v in range(k):
            self.cnt[v * (self.m + 1)] = 0
            for x in range(self.m):
                self.cnt[v * (self.m + 1) + x + 1] = self.cnt[v * (self.m + 1) + x] + (self.pat[x] == v)
        memset(self.ln, 0, max(k, 1) * sizeof(int))
        memset(self.ref, 0, max(k, 1) * sizeof(int))
        self.sa[0] = 0
        self.rep[0] = 0

    def __dealloc__(self):
        free(self.pat)
        free(self.cnt)
        free(self.w)
        free(self.sa)
        free(self.ln)
        free(self.ref)
        free(self.rep)
        free(self.cap_v)

    # -- word maintenance -------------------------------------------------

    def __len__(self):
        return self.n

    def letters(self):
        return [self.w[i] for i in range(self.n)]

    cdef inline int _lcsuf(self, int a, int b, int cap) noexcept nogil:
        cdef int t = 0
        cdef int lim = a
        if b < lim:
            lim = b
        if cap < lim:
            lim = cap
        while t < lim and self.w[a - 1 - t] == self.w[b - 1 - t]:
            t += 1
        return t

    cdef inline bint _rev_less(self, int a, int b) noexcept nogil:
        cdef int t = self._lcsuf(a, b, a if a < b else b)
        if t == a or t == b:
            return a < b
        return self.w[a - 1 - t] < self.w[b - 1 - t]

    cdef int _rank(self, int end, int size) noexcept nogil:
        # position of ``end`` among the first ``size`` entries of sa
        cdef int lo = 0, hi = size, mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.sa[mid] == end:
                return mid
            if self._rev_less(self.sa[mid], end):
                lo = mid + 1
            else:
                hi = mid
        return lo

    cpdef push(self, int letter):
        cdef int r, best, t
        if self.n == self.cap:
            self.cap *= 2
            self.w = <int *>realloc(self.w, self.cap * sizeof(int))
            self.sa = <int *>realloc(self.sa, (self.cap + 1) * sizeof(int))
            self.rep = <int *>realloc(self.rep, (self.cap + 1) * sizeof(int))
            if not (self.w and self.sa and self.rep):
                raise MemoryError()
        self.w[self.n] = letter
        self.n += 1
        r = self._rank(self.n, self.n)
        memmove(self.sa + r + 1, self.sa + r, (self.n - r) * sizeof(int))
        self.sa[r] = self.n
        best = self.rep[self.n - 1]
        if r > 0:
            t = self._lcsuf(self.n, self.sa[r - 1], self.n)
            if t > best:
                best = t
        if r < self.n:
            t = self._lcsuf(self.n, self.sa[r + 1], self.n)
            if t > best:
                best = t
        self.rep[self.n] = best

    cpdef pop(self):
        cdef int r
        if self.n == 0:
            raise IndexError("pop from empty word")
        r = self._rank(self.n, self.n + 1)
        memmove(self.sa + r, self.sa + r + 1, (self.n - r) * sizeof(int))
        self.n -= 1

    cpdef truncate(self, int n):
        cdef int i, j = 0
        if n >= self.n:
            return
        if n < 0:
            n = 0
        for i in range(self.n + 1):
            if self.sa[i] <= n:
                self.sa[j] = self.sa[i]
                j += 1
        self.n = n

    def extend(self, letters):
        for x in letters:
            self.push(x)

    # -- search -------------------------------------------------------------

    def suffix_occurrences(self, int limit=0):
        self._out = []
        self._limit = limit
        cdef int v
        if self.n >= self.m:
            memset(self.ln, 0, self.k * sizeof(int))
            for v in range(self.k):
                self.cap_v[v] = self.rep[self.n] if self.cnt[v * (self.m + 1) + self.m] >= 2 else self.n
            self._solve(self.m - 1, self.n)
        out = self._out
        self._out = None
        return out

    cpdef bint has_suffix_occurrence(self):
        return len(self.suffix_occurrences(1)) > 0

    cdef inline bint _done(self):
        return self._limit > 0 and len(self._out) >= self._limit

    cdef int _minrem(self, int x) noexcept nogil:
        cdef int tot = x + 1, v
        for v in range(self.k):
            if self.ln[v]:
                tot += self.cnt[v * (self.m + 1) + x + 1] * (self.ln[v] - 1)
        return tot

    cdef int _solve(self, int i, int c) except -1:
        cdef int v, L, j, y, lam, emin, emax, yref, t, e, mv, ub, z, span, lo, hi
        if i < 0:
            self._out.append((c, tuple([self.ln[v] for v in range(self.k)])))
            return 0
        v = self.pat[i]
        if self.ln[v]:
            L = self.ln[v]
            if c >= L and self._lcsuf(c, self.ref[v], L) == L:
                self._solve(i - 1, c - L)
            return 0
        j = i - 1
        while j >= 0 and not self.ln[self.pat[j]]:
            j -= 1
        if j < 0:
            mv = self.cnt[v * (self.m + 1) + i + 1]
            ub = (c - (self._minrem(i) - mv)) // mv
            if self.cap_v[v] < ub:
                ub = self.cap_v[v]
            self.ref[v] = c
            for L in range(1, ub + 1):
                self.ln[v] = L
                self._solve(i - 1, c - L)
                if self._done():
                    break
            self.ln[v] = 0
            return 0
        y = self.pat[j]
        lam = self.ln[y]
        emin = lam + (self._minrem(j - 1) if j > 0 else 0)
        emax = c - (i - j)
        span = 0
        for z in range(j + 1, i + 1):
            span += self.cap_v[self.pat[z]]
        if c - span > emin:
            emin = c - span
        if emin > emax:
            return 0
        yref = self.ref[y]
        self._block(yref, lam, &lo, &hi)
        if hi - lo <= emax - emin + 1:
            for t in range(lo, hi):
                e = self.sa[t]
                if emin <= e <= emax:
                    self._split(j + 1, e, i, c, j, e)
                    if self._done():
                        return 0
        else:
            for e in range(emin, emax + 1):
                if self._lcsuf(e, yref, lam) == lam:
                    self._split(j + 1, e, i, c, j, e)
                    if self._done():
                        return 0
        return 0

    cdef void _block(self, int end, int lam, int *lo, int *hi) noexcept nogil:
        # sa[lo:hi] = all ends sharing a suffix of length lam with ``end``
        cdef int r = self._rank(end, self.n + 1)
        cdef int step, inside, jump, outside, mid, t
        for step in range(-1, 2, 2):
            inside = 0
            jump = 1
            while True:
                t = r + step * jump
                if t < 0 or t > self.n or self._lcsuf(self.sa[t], end, lam) < lam:
                    break
                inside = jump
                jump *= 2
            outside = jump
            while outside - inside > 1:
                mid = (inside + outside) >> 1
                t = r + step * mid
                if 0 <= t <= self.n and self._lcsuf(self.sa[t], end, lam) == lam:
                    inside = mid
                else:
                    outside = mid
            if step < 0:
                lo[0] = r - inside
            else:
                hi[0] = r + inside + 1

    cdef int _split(self, int lo, int a, int x, int cc, int j, int e) except -1:
        # positions lo..x of the run still to place, spelling w[a:cc]
        cdef int u, L, z, tv, known, others, mu, rem, ub, pos, lc
        while lo <= x and self.ln[self.pat[lo]]:
            L = self.ln[self.pat[lo]]
            if a + L > cc or self._lcsuf(a + L, self.ref[self.pat[lo]], L) < L:
                return 0
            a += L
            lo += 1
        while lo <= x and self.ln[self.pat[x]]:
            L = self.ln[self.pat[x]]
            if cc - L < a or self._lcsuf(cc, self.ref[self.pat[x]], L) < L:
                return 0
            cc -= L
            x -= 1
        if lo > x:
            if a == cc:
                self._solve(j - 1, e - self.ln[self.pat[j]])
            return 0
        u = self.pat[x]
        known = 0
        mu = 0
        others = 0
        for z in range(lo, x + 1):
            tv = self.pat[z]
            if self.ln[tv]:
                known += self.ln[tv]
            elif tv == u:
                mu += 1
            else:
                others += 1
        rem = cc - a - known
        self.ref[u] = cc
        if not others:
            if rem % mu == 0 and mu <= rem <= mu * self.cap_v[u]:
                self.ln[u] = rem // mu
                self._split(lo, a, x - 1, cc - self.ln[u], j, e)
                self.ln[u] = 0
            return 0
        ub = (rem - others) // mu
        if self.cap_v[u] < ub:
            ub = self.cap_v[u]
        z = j - 1
        pos = e - self.ln[self.pat[j]]
        while z >= 0 and self.pat[z] != u and self.ln[self.pat[z]]:
            pos -= self.ln[self.pat[z]]
            z -= 1
        if z >= 0 and self.pat[z] == u and pos > 0:
            lc = self._lcsuf(cc, pos, ub)
            if lc < ub:
                ub = lc
        for L in range(1, ub + 1):
            self.ln[u] = L
            self._split(lo, a, x - 1, cc - L, j, e)
            if self._done():
                break
        self.ln[u] = 0
        return 0


def search_dfs(pattern, int k, int sigma, long long max_depth, long long node_budget, prefix=()):
    """Compiled twin of ``_pykernels.search_dfs``."""
    cdef SuffixMatcher matcher = SuffixMatcher(pattern, k)
    cdef long long base, nodes = 0, max_len, count_at_max = 1, depth, d
    cdef int letter, limit, top
    cdef list choice = [0]
    matcher.extend(prefix)
    base = matcher.n
    max_len = base
    if base >= max_depth:
        return 1, max_len, count_at_max, nodes, matcher.letters()
    while choice:
        d = base + len(choice) - 1
        if matcher.n > d:
            matcher.pop()
        top = len(choice) - 1
        letter = choice[top]
        limit = 1 if d == 0 else sigma
        if letter >= limit:
            choice.pop()
            continue
        choice[top] = letter + 1
        if node_budget and nodes >= node_budget:
            return 2, max_len, count_at_max, nodes, None
        nodes += 1
        matcher.push(letter)
        if matcher.has_suffix_occurrence():
            matcher.pop()
            continue
        depth = d + 1
        if depth > max_len:
            max_len = depth
            count_at_max = 1
        elif depth == max_len:
            count_at_max += 1
        if depth >= max_depth:
            return 1, max_len, count_at_max, nodes, matcher.letters()
        choice.append(0)
    return 0, max_len, count_at_max, nodes, None


def g4_sweep_table(int p_min, int p_max, int l_min, int l_max):
    """Compiled twin of ``_pykernels.g4_sweep_table``.

    Coefficients here are bounded by binom(l_max // 2, 3), far below 2**62.
    """
    cdef int top = l_max
    cdef int width = l_max + 1
    cdef int a1, a2, a3, a4, size, ell, nn, lo4, cell
    cdef long long b
    cdef long long *s1 = <long long *>malloc((top + 1) * sizeof(long long))
    cdef long long *s2 = <long long *>malloc((top + 1) * sizeof(long long))
    cdef long long *s3 = <long long *>malloc((top + 1) * sizeof(long long))
    cdef long long *s4 = <long long *>malloc((top + 1) * sizeof(long long))
    cdef long long *best_b = <long long *>malloc((p_max + 1) * width * sizeof(long long))
    cdef int *best_a = <int *>malloc(4 * (p_max + 1) * width * sizeof(int))
    cdef dict best = {}
    if not (s1 and s2 and s3 and s4 and best_b and best_a):
        raise MemoryError()
    try:
        for cell in range((p_max + 1) * width):
            best_b[cell] = -1
        for a1 in range(2, p_max // 4 + 1):
            memset(s1, 0, (top + 1) * sizeof(long long))
            nn = a1
            while nn <= top:
                s1[nn] = 1
                nn += a1
            for a2 in range(a1, (p_max - a1) // 3 + 1):
                _times_geometric(s1, s2, a2, top)
                for a3 in range(a2, (p_max - a1 - a2) // 2 + 1):
                    _times_geometric(s2, s3, a3, top)
                    lo4 = p_min - a1 - a2 - a3
                    if lo4 < a3:
                        lo4 = a3
                    for a4 in range(lo4, p_max - a1 - a2 - a3 + 1):
                        size = a1 + a2 + a3 + a4
                        _times_geometric(s3, s4, a4, top)
                        for ell in range(max(l_min, size), l_max + 1):
                            b = s4[ell]
                            cell = size * width + ell
                            if b > best_b[cell]:
                                best_b[cell] = b
                                best_a[4 * cell] = a1
                                best_a[4 * cell + 1] = a2
                                best_a[4 * cell + 2] = a3
                                best_a[4 * cell + 3] = a4
        for size in range(p_min, p_max + 1):
            for ell in range(max(l_min, size), l_max + 1):
                cell = size * width + ell
                if best_b[cell] >= 0:
                    best[(size, ell)] = (
                        best_b[cell],
                        (best_a[4 * cell], best_a[4 * cell + 1], best_a[4 * cell + 2], best_a[4 * cell + 3]),
                    )
    finally:
        free(s1)
        free(s2)
        free(s3)
        free(s4)
        free(best_b)
        free(best_a)
    return best


cdef void _times_geometric(long long *s, long long *out, int a, int top) noexcept nogil:
    cdef int nn
    for nn in range(top + 1):
        out[nn] = 0
    for nn in range(a, top + 1):
        out[nn] = s[nn - a] + out[nn - a]
