"""Acceptance criteria 1-9.  Each test prints one ``criterion k: PASS|FAIL`` line."""
import random
import time
from fractions import Fraction

import pytest

from wildram.cli import main as cli_main, random_wild
from wildram.finite_field import FieldSpec
from wildram.lubin_tate import BaseRing, Kind, LTContext, parse_element, reduced_automorphism
from wildram.nottingham import (
    Automorphism,
    BreakSequence,
    CharClass,
    char_classify_rank1,
    compose,
    group_power,
    i_sequence,
    ram_index_rank1,
    sen_check,
)
from wildram.power_series import compose_bsgs, compose_horner
from wildram.lubin_tate import lt_compose_check
from wildram.ramification import (
    FiltrationTable,
    breaks_rank2,
    phi_from_breaks,
    psi_eval,
    rank1_table,
    branch_identity,
)

N = 730
RESULTS = {}


@pytest.fixture
def report(capsys):
    def _report(k, ok, detail):
        RESULTS[k] = ok
        with capsys.disabled():
            print(f"\ncriterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok
    return _report


def classify2(capsys, tmp_path, kind, alphas):
    assert cli_main(["lubin-tate", "--kind", kind, "--p", "3", *sum((["--alpha", a] for a in alphas), []),
                     "--precision", str(N), "--out", str(tmp_path), "--format", "records"]) == 0
    capsys.readouterr()
    code = cli_main(["classify2", str(tmp_path / "sigma_0.series"), str(tmp_path / "sigma_1.series"),
                     "--format", "records"])
    import json
    return code, json.loads(capsys.readouterr().out.splitlines()[0])


def test_criterion_1_ramified_sequences(report):
    t0 = time.perf_counter()
    sa = reduced_automorphism(Kind.RAMIFIED, 3, "1+pi", N)
    sb = reduced_automorphism(Kind.RAMIFIED, 3, "1+pi^2", N)
    va, vb = i_sequence(sa, 2).values, i_sequence(sb, 2).values
    dt = time.perf_counter() - t0
    ok = va == [2, 26, 242] and vb == [8, 80, 728] and dt <= 120
    assert report(1, ok, f"sigma_alpha={va} sigma_beta={vb} N={N} time={dt:.1f}s (limit 120s)")


def test_criterion_2_ramified_index(report, capsys, tmp_path):
    code, r = classify2(capsys, tmp_path, "ramified", ["1+pi", "1+pi^2"])
    got = (r["depth"], r["gamma"], r["class"], r["a"], r["e"])
    ok = code == 0 and got == (1, ["3", "9"], "Char0", 0, "4")
    assert report(2, ok, f"depth={got[0]} gamma={got[1]} class={got[2]} a={got[3]} e={got[4]} (expect e=2(p-1)=4)")


def test_criterion_3_unramified(report, capsys, tmp_path):
    t0 = time.perf_counter()
    sa = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+p", N)
    sb = reduced_automorphism(Kind.UNRAMIFIED, 3, "1+zeta*p", N)
    va, vb = i_sequence(sa, 2).values, i_sequence(sb, 2).values
    code, r = classify2(capsys, tmp_path, "unramified", ["1+p", "1+zeta*p"])
    dt = time.perf_counter() - t0
    got = (r["depth"], r["gamma"], r["class"], r["e"])
    ok = (va == vb == [8, 80, 728] and sa.ring == FieldSpec(3, 2) and code == 0
          and got == (2, ["9", "9"], "Char0", "8") and dt <= 600)
    assert report(3, ok, f"sequences={va},{vb} over F_9 depth={got[0]} gamma={got[1]} e={got[3]} "
                         f"(expect p^2-1=8) time={dt:.1f}s (limit 600s)")


def test_criterion_4_counterexample(report, capsys, tmp_path):
    code, r = classify2(capsys, tmp_path, "unramified", ["1+p", "(1+p)*(1+zeta*p)^3"])
    p = 3
    ok = (code == 5 and r["depth"] == 2 and r["e"] == "8" and r["hypothesis_flag"]
          and r["e_filtration"] == [str((p * p - 1) * p)])
    assert report(4, ok, f"naive e={r['e']} hypothesis_flag={r['hypothesis_flag']} exit={code} "
                         f"mismatches={r['hypothesis_mismatches'][:1]} "
                         f"filtration e={r['e_filtration']} (true index (p^2-1)p=24)")


def test_criterion_5_sen(report):
    rng = random.Random(20240601)
    tally = {}
    for F in (FieldSpec(2), FieldSpec(3)):
        passed = total = 0
        for _ in range(50):
            s = i_sequence(random_wild(F, 300, rng), 2)
            total += 1
            passed += len(s) >= 2 and sen_check(s).passed
        tally[F.p] = (passed, total)
    ok = all(p == t == 50 for p, t in tally.values())
    assert report(5, ok, "; ".join(f"F_{q}: {p}/{t} pass" for q, (p, t) in tally.items()) + " (N=300, n<=2, seed fixed)")


FAMILY = [(2, 1), (2, 2), (3, 1), (3, 2)]


def _family_ok(p, r):
    vals = [p ** (n + r) - 1 for n in range(5)]
    s = BreakSequence(p, vals, precision_used=0)
    return char_classify_rank1(s).label is CharClass.CHAR0 and ram_index_rank1(s).e == (p - 1) * p ** (r - 1)


def _construction(p, r):
    sigma = reduced_automorphism(Kind.QP, p, f"1+p^{r}", 2 * p ** (r + 3))
    return i_sequence(sigma, 3)


def test_criterion_6_height1(report):
    classifier = {pr: _family_ok(*pr) for pr in FAMILY}
    built = {}
    for p, r in FAMILY:
        s = _construction(p, r)
        fam = [p ** (n + r) - 1 for n in range(len(s))]
        built[(p, r)] = (s.values, s.values == fam and _family_ok(p, r)
                         and ram_index_rank1(s).e == (p - 1) * p ** (r - 1))
    ram_seq = BreakSequence(3, [2, 26, 242], precision_used=N)
    cp = char_classify_rank1(ram_seq)
    charp = cp.label is CharClass.CHARP and cp.evidence[0]["bound"] == 14
    ok = all(classifier.values()) and all(v[1] for v in built.values()) and charp
    bad = [f"(p={p},r={r}) built {v[0]}" for (p, r), v in built.items() if not v[1]]
    detail = (f"family classifier {sum(classifier.values())}/4; constructions "
              f"{sum(v[1] for v in built.values())}/4; ramified sigma_alpha CharP via 26>=14: {charp}")
    if bad:
        detail += "; mismatch: " + ", ".join(bad) + " (odd alpha in Z_2 has v(alpha^2-1)>=3; see ledger)"
    report(6, ok, detail)
    # the reachable part must hold exactly
    assert all(classifier.values()) and charp
    assert all(v[1] for pr, v in built.items() if pr != (2, 1))


@pytest.mark.xfail(strict=True, reason="no alpha in Z_2 with v(alpha-1)=1 has v(alpha^2-1)=2")
def test_criterion_6_p2_r1_construction():
    s = _construction(2, 1)
    assert s.values == [2 ** (n + 1) - 1 for n in range(len(s))]


def _tables(sa, sb, ua, ub):
    return {
        "ramified joint": breaks_rank2(sa, sb, 242),
        "unramified joint": breaks_rank2(ua, ub, 80),
        "ramified sigma_alpha": rank1_table(i_sequence(sa, 2)),
        "unramified sigma_alpha": rank1_table(i_sequence(ua, 2)),
    }


def test_criterion_7_hasse_herbrand(report, unram_pair, ram_pair):
    sa, sb = ram_pair
    ua, ub = unram_pair
    rng = random.Random(7)
    inverse_ok = {}
    for name, tab in _tables(sa, sb, ua, ub).items():
        phi = phi_from_breaks(tab)
        pts = [Fraction(rng.randrange(0, 10**6), rng.randrange(1, 10**3)) for _ in range(1000)]
        inverse_ok[name] = all(psi_eval(phi, phi(r)) == r for r in pts)

    closed = []
    for g in (sa, sb, ua, ub):
        v = i_sequence(g, 2).values
        for n in range(len(v) - 1):
            phi_h = phi_from_breaks(rank1_table(BreakSequence(3, v[n:], precision_used=N)))
            closed.append(phi_h(v[n + 1]) == v[n] + Fraction(v[n + 1] - v[n], 3))
    # three-term form for H = <sigma^(p^n), tau^(p^n)>, ramified pair (interleaved breaks)
    p = 3
    for n in (0, 1):
        s_h, t_h = group_power(sa, p**n), group_power(sb, p**n)
        i_n, i_m, i_n1 = (i_sequence(sa, 2)[n], i_sequence(sb, 2)[n], i_sequence(sa, 2)[n + 1])
        phi_h = phi_from_breaks(breaks_rank2(s_h, t_h, i_n1))
        closed.append(phi_h(i_n1) == i_n + Fraction(i_m - i_n, p) + Fraction(i_n1 - i_m, p * p))
    # unramified pair (coinciding breaks): single jump of index p^2
    phi_1 = phi_from_breaks(breaks_rank2(ua, ub, 80))
    closed.append(phi_1(80) == 8 + Fraction(80 - 8, p * p))
    ok = all(inverse_ok.values()) and all(closed)
    assert report(7, ok, f"psi(phi(r))=r on 1000 rationals for {sum(inverse_ok.values())}/{len(inverse_ok)} "
                         f"tables; closed-form phi values {sum(closed)}/{len(closed)} exact")


def test_criterion_8_branch_identity(report):
    lhs, rhs = branch_identity(81, 9, 3)
    assert report(8, lhs == rhs == 24, f"depth-2 form {lhs}, depth-1 form {rhs} (expect 24)")


def test_criterion_9_oracles(report, unram_pair, ram_pair):
    rng = random.Random(9)
    checks = {}
    ok_pow = True
    for F in (FieldSpec(2), FieldSpec(3), FieldSpec(3, 2)):
        sigma = random_wild(F, 80, rng)
        acc = Automorphism.identity(F, 80)
        for k in range(28):
            ok_pow &= group_power(sigma, k) == acc
            acc = compose(acc, sigma)
    checks["binary vs sequential powers (k<=27)"] = ok_pow

    ok_comp = True
    for g, h in (unram_pair, ram_pair):
        ok_comp &= compose_bsgs(g.series, h.series) == compose_horner(g.series, h.series)
    checks["accelerated vs Horner composition (N=730)"] = ok_comp

    ok_lt = True
    for kind, a, b in ((Kind.UNRAMIFIED, "1+p", "1+zeta*p"), (Kind.RAMIFIED, "1+pi", "1+pi^2")):
        ctx = LTContext(BaseRing(kind, 3, 8), 60)
        ok_lt &= lt_compose_check(ctx, parse_element(ctx.ring, a), parse_element(ctx.ring, b)).passed
    checks["reduce/compose commute for Lubin-Tate"] = ok_lt

    ok_tab = True
    for (s, t), bound in ((unram_pair, 80), (ram_pair, 242)):
        tab = breaks_rank2(s, t, bound)
        gens = [v for g in (s, t) for v in i_sequence(g, 2).values if v <= bound]
        ok_tab &= tab.certified and all(v in tab.breaks for v in gens)
    checks["breaks_rank2 contains generator breaks"] = ok_tab
    ok = all(checks.values())
    assert report(9, ok, "; ".join(f"{k}: {'ok' if v else 'MISMATCH'}" for k, v in checks.items()))
