"""Acceptance criteria 1-9, each at its stated tolerance.

Every criterion prints one PASS/FAIL line (also collected into the pytest
terminal summary). Three sub-checks are false as stated; they are kept as
strict xfail tests asserting the original claim, and their criterion line
reports FAIL with the reason.
"""

import itertools
import random
import time
from decimal import Decimal

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import brute_dyck, brute_h, catalan, has_repetition
from patavoid import (
    aa_family,
    backtrack_avoid,
    classify,
    contains_instance,
    decode,
    dyck_count,
    extract_balanced_factor,
    g4_sweep,
    gamma_upper,
    gbar,
    gbar_below,
    is_doubled,
    parse_pattern,
    partial_dyck_count,
    pattern_ogf,
    q,
    random_doubled_pattern,
    reduce_doubled,
    run_avoid_pattern,
    simulate_until,
    verify_record,
    zimin,
)
from patavoid.bounds import dyck_ratio, gbar_le
from patavoid.occurrence import format_word
from patavoid.pattern import balanced_factor_span
from patavoid.search import DEPTH_REACHED, EXHAUSTED
from patavoid.simulate import LetterStream

# regression constants from the first conclusive runs
M_AABAA = 18
M_ABCCBADD = 93
ABCCBADD_BUDGET = 5_000_000


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
    ACCEPTANCE_LINES[str(n)] = line
    print(line)


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


# -- 1 ---------------------------------------------------------------------------

GAMMA_DS = (2, 3, 4, 8, 16, 24, 40, 48, 100)
GAMMA_CLAIMS = {24: "1.27575", 40: "1.15685", 100: "1.08603"}


def gamma_checks():
    bounds, slow = {}, []
    for d in GAMMA_DS:
        bounds[d], secs = timed(gamma_upper, d)
        if d in GAMMA_CLAIMS and secs >= 1.0:
            slow.append(d)
    return bounds, slow


def test_criterion_1_gamma_bounds():
    bounds, slow = gamma_checks()
    certified = {d: bounds[d].certifies(c) for d, c in GAMMA_CLAIMS.items()}
    exact_two = bounds[2].upper == 3 == bounds[2].lower
    uppers = [bounds[d].upper for d in GAMMA_DS]
    monotone = all(a >= b for a, b in zip(uppers, uppers[1:]))
    gamma48 = bounds[48].certifies("1.15685")
    ok = all(certified.values()) and exact_two and monotone and not slow
    detail = (
        f"gamma_24 <= 1.27575 {certified[24]}, gamma_100 <= 1.08603 {certified[100]}, "
        f"gamma_40 <= 1.15685 {certified[40]} (refuted: gamma_40 >= {bounds[40].lower_decimal(5)}; "
        f"the value bounds gamma_48: {gamma48}), gamma_2 = 3 {exact_two}, non-increasing {monotone}, "
        f"slow {slow}"
    )
    report(1, ok, detail)
    # everything except the gamma_40 claim, which has its own xfail test
    assert certified[24] and certified[100] and gamma48
    assert exact_two and monotone and not slow
    assert bounds[40].refutes("1.15685")


@pytest.mark.xfail(strict=True, reason="gamma_40 >= 1.18196 > 1.15685; 1.15685 bounds gamma_48")
def test_criterion_1_gamma40_claim():
    assert gamma_upper(40).certifies("1.15685")


# -- 2 ---------------------------------------------------------------------------


def test_criterion_2_ogf_sweep():
    report_, secs = timed(g4_sweep, 24, 99, 100)
    lo, hi = report_.max_value_bracket(12)
    rng = random.Random(2)
    samples = []
    while len(samples) < 60:
        a = sorted(rng.randint(2, 30) for _ in range(4))
        if 24 <= sum(a) <= 99:
            samples.append((tuple(a), rng.randint(sum(a), 99)))
    mismatches = [(a, ell) for a, ell in samples if pattern_ogf(a, 100)[ell] != brute_h(a, ell)]
    ok = (
        report_.argmax == (24, (2, 2, 2, 18), 46)
        and report_.best.b == 84
        and Decimal("1.10111") <= lo
        and hi < Decimal("1.10112")
        and secs < 60
        and not mismatches
    )
    report(2, ok, f"argmax {report_.argmax}, b = {report_.best.b}, value in [{lo}, {hi}], {secs:.2f} s, "
               f"{len(samples)} oracle samples, {len(mismatches)} mismatches")
    assert ok


# -- 3 ---------------------------------------------------------------------------


def gbar_rises():
    return [(k, ell) for k in range(4, 9) for ell in range(q(k), 4 * q(k)) if not gbar_le(k, ell + 1, k, ell)]


def test_criterion_3_closed_form():
    g548 = gbar_below(5, 48, "1.21973") and gbar(5, 48) < Decimal("1.21973")
    g4100 = gbar_below(4, 100, "1.10456") and gbar(4, 100) < Decimal("1.10456")
    dominated = all(gbar_le(k, q(k), 5, 48) for k in range(5, 21))
    rises = gbar_rises()
    ok = g548 and g4100 and dominated and not rises
    report(3, ok, f"gbar_5(48) < 1.21973 {g548}, gbar_4(100) < 1.10456 {g4100}, "
               f"gbar_k(q(k)) <= gbar_5(48) for k = 5..20 {dominated}, "
               f"decreasing on grid k = 4..8: {not rises} (rises at (k, ell) {rises})")
    assert g548 and g4100 and dominated
    # the floor makes gbar_4 rise at two odd lengths; the bound by gbar_k(q(k)) still holds
    assert rises == [(4, 25), (4, 27)]
    assert all(gbar_le(k, ell, k, q(k)) for k in range(4, 9) for ell in range(q(k), 4 * q(k) + 1))


@pytest.mark.xfail(strict=True, reason="gbar_4(26) > gbar_4(25) and gbar_4(28) > gbar_4(27)")
def test_criterion_3_decreasing_claim():
    assert gbar_rises() == []


# -- 4 ---------------------------------------------------------------------------

P_EXAMPLE = "ACBBCBBABCAB"
V_EXAMPLE = "00100110011100110111000110"


def test_criterion_4_worked_example():
    rec24, w24, _ = run_avoid_pattern(P_EXAMPLE, 2, V_EXAMPLE[:24])
    rec25, w25, _ = run_avoid_pattern(P_EXAMPLE, 2, V_EXAMPLE[:25])
    checks = {
        "w24": format_word(w24) == "001001100111001101110001" and rec24.D == (0,) * 24 and not rec24.L,
        "w25": format_word(w25) == "0010",
        "D": rec25.D == (0,) * 25 + (1,) * 21,
        "L": rec25.L == ((2, 3),),
        "X": [format_word(x) for x in rec25.X] == ["0111000000"],
    }
    ok = all(checks.values())
    report(4, ok, ", ".join(f"{k} {v}" for k, v in checks.items()) + "; the only suffix occurrence has ell = 21")
    assert ok


# -- 5 ---------------------------------------------------------------------------


def test_criterion_5_roundtrip():
    random_pattern = random_doubled_pattern(random.Random(2024), 4, 24).text
    patterns = ["AA", P_EXAMPLE, "ABCCBADD", random_pattern]
    failures = []
    for p in patterns:
        for seed in range(100):
            V = LetterStream(seed, 2).take(2000)
            record, w, _ = run_avoid_pattern(p, 2, V)
            if decode(record, w, p) != V or verify_record(record, p):
                failures.append((p, seed))
    seen = {}
    collisions = 0
    for V in itertools.product((0, 1), repeat=14):
        record, w, _ = run_avoid_pattern("AA", 2, V)
        key = (record.D, record.L, record.X, w)
        collisions += key in seen
        seen[key] = V
    ok = not failures and collisions == 0 and len(seen) == 2**14
    report(5, ok, f"patterns {patterns}, 100 seeds x 2000 steps, {len(failures)} failures; "
               f"{collisions} collisions among 2^14 inputs for AA")
    assert ok


# -- 6 ---------------------------------------------------------------------------


DYCK_GRID = [(t, r, d) for t in range(9) for r in range(t + 1) for d in range(1, 5)]


def dominance_violations():
    return [(t, r, d) for t, r, d in DYCK_GRID if partial_dyck_count(t, r, d) > dyck_count(t + d - 1, d)]


def test_criterion_6_dyck():
    catalan_ok = all(dyck_count(t, 1) == catalan(t) for t in range(13))
    brute_ok = all(partial_dyck_count(t, r, d) == brute_dyck(t, t - r, d) for t, r, d in DYCK_GRID)
    violations = dominance_violations()
    lo, hi = dyck_ratio(500, 2, 6)
    ratio_ok = Decimal("2.9") <= lo and hi <= Decimal("3.0")
    ok = catalan_ok and brute_ok and not violations and ratio_ok
    report(6, ok, f"Catalan {catalan_ok}, brute force 2t <= 16 {brute_ok}, "
               f"C_(t,r,d) <= C_(t+d-1,d) fails at (t, r, d) {violations} "
               f"(empty word vs C_(d-1,d) = 0; holds for 1 <= t <= 8), ratio at t = 500 in [{lo}, {hi}]")
    assert catalan_ok and brute_ok and ratio_ok
    assert violations == [(0, 0, 2), (0, 0, 3), (0, 0, 4)]
    assert all(dyck_count(d - 1, d) == 0 for d in (2, 3, 4))


@pytest.mark.xfail(strict=True, reason="t = 0, d >= 2: one empty partial word but C_(d-1,d) = 0")
def test_criterion_6_dominance_claim():
    assert dominance_violations() == []


# -- 7 ---------------------------------------------------------------------------


def test_criterion_7_search():
    aa2 = backtrack_avoid("AA", 2, 100)
    aa3 = backtrack_avoid("AA", 3, 100)
    aaa = backtrack_avoid("AAA", 2, 500)
    aabaa = backtrack_avoid("AABAA", 2, 1000)
    big = backtrack_avoid("ABCCBADD", 2, 1000, ABCCBADD_BUDGET)
    checks = {
        "AA/2 M=3": aa2.kind == EXHAUSTED and aa2.max_len == 3,
        "AA/3 depth 100": aa3.kind == DEPTH_REACHED and not has_repetition(aa3.witness, 2),
        "AAA/2 depth 500": aaa.kind == DEPTH_REACHED and not has_repetition(aaa.witness, 3),
        f"AABAA/2 M={aabaa.max_len}": aabaa.kind == EXHAUSTED and aabaa.max_len == M_AABAA,
        f"ABCCBADD/2 {big.kind} M={big.max_len}": big.kind == EXHAUSTED and big.max_len == M_ABCCBADD,
    }
    ok = all(checks.values())
    report(7, ok, ", ".join(f"{k} {v}" for k, v in checks.items()) + f", {big.nodes} nodes")
    assert ok


# -- 8 ---------------------------------------------------------------------------


def test_criterion_8_simulation():
    rng = random.Random(8)
    patterns = [random_doubled_pattern(rng, 4, 24) for _ in range(20)]
    seeds = range(10)
    misses = []
    worst = 0
    for p in patterns:
        for seed in seeds:
            # check_every re-scans the word with contains_instance and raises on a hit
            out = simulate_until(p, 2, 500, seed, 10**6, check_every=50)
            worst = max(worst, out.trace.steps)
            if not out.reached or contains_instance(out.word, p) is not None:
                misses.append((p.text, seed))
    ok = not misses
    report(8, ok, f"20 patterns x 10 seeds, {len(misses)} misses, at most {worst} steps to reach 500")
    assert ok


# -- 9 ---------------------------------------------------------------------------


def test_criterion_9_structure():
    rng = random.Random(9)
    bad_factor = 0
    for _ in range(1000):
        k, f = rng.randint(1, 6), rng.choice((2, 3))
        length = rng.randint(f * 2 ** (k - 1), f * 2 ** (k - 1) + 40)
        letters = [chr(65 + j) for j in range(k)] + [chr(65 + rng.randrange(k)) for _ in range(length - k)]
        rng.shuffle(letters)
        p = parse_pattern("".join(letters))
        out = extract_balanced_factor(p, f)
        start, end = balanced_factor_span(p, f)
        if not (classify(out).balanced and p.text[start:end] == out.text and len(out) >= f * 2 ** (out.k - 1)):
            bad_factor += 1
    bad_reduce = 0
    for _ in range(1000):
        k = rng.randint(1, 6)
        p = random_doubled_pattern(rng, k, rng.randint(2 * k, 40))
        out = reduce_doubled(p)
        if not (len(out) == len(p) and is_doubled(out) and max(out.multiplicities) <= 3):
            bad_reduce += 1
    example = reduce_doubled("ABBCDBCABDDCB").text == "AEBCDECABDDCB"
    families = all(len(zimin(k)) == 2**k - 1 and len(aa_family(k)) == 3 * 2 ** (k - 1) - 1 for k in range(1, 13))
    ok = not bad_factor and not bad_reduce and example and families
    report(9, ok, f"balanced factor failures {bad_factor}/1000, reduction failures {bad_reduce}/1000, "
               f"ABBCDBCABDDCB -> AEBCDECABDDCB {example}, family lengths {families}")
    assert ok
