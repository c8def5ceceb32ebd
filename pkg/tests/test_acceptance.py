"""
The eleven acceptance criteria, each at its stated tolerance (exact equality
and the stated runtime bound).  Every test records one PASS/FAIL line, shown
in the terminal summary.  Where an identity fails as literally stated, the
test fails; the corrected forms are printed as diagnostics only.
"""

import itertools
import time
from collections import Counter
from fractions import Fraction

import numpy as np

from brute import bfs_word_lengths, dim_unipotent_radical, sp_order_formula, weyl_order, zbar_count
from conftest import context
from parahecke.convolution import (
    CuspidalOracle, HeckeSetting, d_k, express_in_y, pp_eval, rbar_variant, structure_constants,
    verify_hecke_relations,
)
from parahecke.coxeter import all_elements, coxeter_matrix, generated_group, identity, length, mul
from parahecke.hecke import _type_b_matrix
from parahecke.parabolics import (
    bedard_j1, cw_generators, cw_relative, cw_subgroup, is_star, jt_subset, jw_set,
    min_double_coset_rep, star_spade_partition,
)
from parahecke.symplectic import SymplecticSpace, enumerate_group
from parahecke.zspace import dims_of, subset_of_dims


def dims(t):
    return tuple(range(1, t + 1))


def subsets(n):
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(1, n + 1), r)]


def finish(report, num, checks: dict, elapsed: float, limit: float, extra: str = ""):
    checks = dict(checks)
    checks[f"runtime {elapsed:.1f}s < {limit:g}s"] = elapsed < limit
    bad = [k for k, v in checks.items() if not v]
    detail = "all checks exact" if not bad else "failed: " + "; ".join(bad)
    report(num, not bad, f"({detail}){' ' + extra if extra else ''}")
    assert not bad, detail


# 1

def test_criterion_01_coxeter_suite(report):
    start = time.perf_counter()
    checks = {}
    for n in range(1, 5):
        oracle = bfs_word_lengths(n)
        checks[f"n={n} length = BFS"] = len(oracle) == weyl_order(n) and \
            all(length(w) == oracle[w.images] for w in all_elements(n))
        star_ok = subgroup_ok = True
        for J in subsets(n):
            star, _ = star_spade_partition(n, J)
            cw = set(cw_subgroup(n, J))
            star_ok &= set(star) == cw
            subgroup_ok &= generated_group(list(cw), n) | {identity(n)} == cw
        checks[f"n={n} cw_J = star set"] = star_ok
        checks[f"n={n} cw_J is a subgroup"] = subgroup_ok
        for t in range(n + 1):
            gens = cw_generators(n, t)
            cw_t = set(cw_subgroup(n, jt_subset(n, t)))
            checks[f"n={n} t={t} type B_t Coxeter matrix"] = \
                (coxeter_matrix(gens) if gens else []) == _type_b_matrix(t)
            checks[f"n={n} t={t} generators span cw(J_t)"] = generated_group(gens, n) | {identity(n)} == cw_t
            for tp in range(n - t + 1):
                rel = cw_relative(n, t, tp)
                big = set(cw_subgroup(n, jt_subset(n, t + tp)))
                checks[f"n={n} t={t} t'={tp} commute, product inside"] = all(
                    mul(a, b) == mul(b, a) and mul(a, b) in big for a in cw_t for b in rel)
    finish(report, 1, checks, time.perf_counter() - start, 10)


# 2

def test_criterion_02_goodness_equivalences(report):
    start = time.perf_counter()
    checks = {}
    cases = [(n, q, t) for n in (1, 2) for q in (2, 3) for t in range(n + 1)] + [(3, 2, 1)]
    pairs = 0
    for n, q, t in cases:
        S = SymplecticSpace(n, q)
        Es = S.isotropic_subspaces(t)
        agree = dim_ok = True
        for A in Es:
            for B in Es:
                modes = {S.is_good(A, B, m) for m in ("i", "ii", "iii", "iv")}
                agree &= len(modes) == 1
                dim_ok &= S.bracket(A, B).dim == 2 * n - 2 * t
                pairs += 1
        checks[f"n={n} q={q} t={t} modes agree"] = agree
        checks[f"n={n} q={q} t={t} dim[A,A'] = 2n-2t"] = dim_ok
    finish(report, 2, checks, time.perf_counter() - start, 60, f"[{pairs} pairs]")


# 3

def test_criterion_03_psi(report):
    start = time.perf_counter()
    checks = {}
    total = 0
    for q in (2, 3):
        S = SymplecticSpace(2, q)
        for t in range(3):
            ok = True
            for A in S.isotropic_subspaces(t):
                QA = S.quotient_form(A)
                for B in S.isotropic_subspaces(t):
                    if not S.is_good(A, B):
                        continue
                    P, R = S.psi_matrix(A, B), S.psi_matrix(B, A)
                    eye = np.eye(P.shape[0], dtype=np.int64)
                    ok &= np.array_equal(R @ P % q, eye) and np.array_equal(P @ R % q, eye)
                    ok &= np.array_equal(P.T @ S.quotient_form(B) @ P % q, QA)
                    total += 1
            checks[f"q={q} t={t}"] = bool(ok)
    finish(report, 3, checks, time.perf_counter() - start, 60, f"[{total} good pairs]")


# 4

def test_criterion_04_group_orders(report):
    start = time.perf_counter()
    expected = {(1, 2): 6, (1, 3): 24, (2, 2): 720, (2, 3): 51840, (3, 2): 1451520}
    checks = {}
    for (n, q), want in expected.items():
        got = enumerate_group(SymplecticSpace(n, q), force=True).order
        checks[f"|Sp_{2 * n}(F_{q})| = {want}"] = got == want == sp_order_formula(n, q)
    finish(report, 4, checks, time.perf_counter() - start, 300)


# 5

def test_criterion_05_bedard_invariants(report):
    start = time.perf_counter()
    n, q = 2, 2
    ctx = context(n, q)
    S = ctx.S
    checks = {}
    for t in range(n + 1):
        D = dims(t)
        J = subset_of_dims(n, D)
        pts = ctx.z_points(D)
        left = set(jw_set(n, J))
        ok = all(ctx.bedard_w(p) in left and
                 ctx.pos(p.flag2, p.flag) == min_double_coset_rep(J, ctx.bedard_w(p), J) for p in pts)
        checks[f"t={t} 1.4(a)"] = ok
        parts = ctx.z_partition(D)
        members = [p for v in parts.values() for p in v]
        checks[f"t={t} partition exhaustive and disjoint"] = \
            len(members) == len(set(members)) == len(pts) == ctx.z_count(D) and set(members) == set(pts)
        for w in left:
            if is_star(w, J):
                by_pos = {p for p in pts if ctx.pos(p.flag2, p.flag) == w}
                checks[f"t={t} w={w} star fiber = position fiber"] = set(parts.get(w, [])) == by_pos
            else:
                J1 = bedard_j1(n, J, min_double_coset_rep(J, w, J))
                d = dim_unipotent_radical(n, dims_of(n, J1)) - dim_unipotent_radical(n, D)
                fibers = set(ctx.theta_fibers(D, w).values())
                checks[f"t={t} w={w} theta fibers of size q^{d}"] = fibers == {q ** d}
        # 1.6(a): star points have a common Levi; P(V_*), P(V'_*) share a Levi iff (V_t, V'_t) is good
        star_pairs = {(p.flag, p.flag2) for p in pts if is_star(ctx.bedard_w(p), J)}
        checks[f"t={t} 1.6(a) star pairs share a Levi"] = all(ctx.common_levi(a, b) is not None
                                                             for a, b in star_pairs)
        if t:
            flags = ctx.flags(D)
            checks[f"t={t} common Levi <=> good"] = all(
                (ctx.common_levi(a, b) is not None) == S.is_good(a.top, b.top) for a in flags for b in flags)
    # 1.9(a): a nonempty Z_{J',J}^{y,w} with y, w star forces w = y_J
    for t1 in range(n + 1):
        for t2 in range(t1, n + 1):
            J, Jp = jt_subset(n, t1), jt_subset(n, t2)
            ok = all(w == min_double_coset_rep(J, y, J) for (y, w), v in ctx.kernels(t1, t2).items()
                     if v and is_star(y, Jp) and is_star(w, J))
            checks[f"1.9(a) J=J_{t1} J'=J_{t2}"] = ok
    finish(report, 5, checks, time.perf_counter() - start, 600)


# 6

def test_criterion_06_flag_counts(report):
    start = time.perf_counter()
    checks = {}
    for q in (2, 3):
        ctx = context(2, q)
        flags = ctx.flags((1, 2))
        ok = True
        for B in flags[:: max(1, len(flags) // 5)]:
            counts = Counter(ctx.pos_full(B, B2) for B2 in flags)
            ok &= counts == {w: q ** length(w) for w in all_elements(2)}
        checks[f"q={q}"] = ok
    finish(report, 6, checks, time.perf_counter() - start, 60)


# 7

def test_criterion_07_dk_identity(report):
    start = time.perf_counter()
    checks = {
        "k=0": all(d_k(0, q) * pp_eval(0, q) == 1 == sp_order_formula(0, q) for q in (2, 3)),
        "k=1 q=2: D_1 = 1": d_k(1, 2) == 1 and 1 * 2 * pp_eval(1, 2) == sp_order_formula(2, 2),
        "k=1 q=3: D_1 = 6 = q(q-1)^2/2": d_k(1, 3) == 6 == 3 * 4 // 2
        and 6 * 2 * pp_eval(1, 3) == sp_order_formula(2, 3),
    }
    finish(report, 7, checks, time.perf_counter() - start, 1)


# 8 and 10 share the k = 0 relation checks

def _k0_checks(label, rels, sc):
    checks = {f"{label} Y-span closed": sc["closed"],
              f"{label} Y^1 is the unit": all(r["zero"] for r in rels if r["relation"] == "Y^1 Y^1 = Y^1")}
    stated = [r for r in rels if r["form"] == "stated"]
    bad = [r for r in stated if not r["zero"]]
    checks[f"{label} relations as stated ({len(stated) - len(bad)}/{len(stated)} zero)"] = not bad
    checks[f"{label} structure constants vs T_w T_w' ({sc['mismatches']} of {sc['pairs']} differ)"] = \
        sc["mismatches"] == 0
    corrected = [r for r in rels if r["form"] != "stated"]
    diag = (f"{label}: corrected forms {sum(r['zero'] for r in corrected)}/{len(corrected)} zero, "
            f"reversed-order structure constants differ in {sc['mismatches_reversed']}")
    if bad:
        diag += f", first stated residual {bad[0]['relation']} = {bad[0]['value']} at coset {bad[0]['offending_coset']}"
    return checks, diag


def test_criterion_08_equal_parameters(report):
    start = time.perf_counter()
    checks, diags = {}, []
    for q in (2, 3):
        setting = HeckeSetting.build(context(2, q), 2)
        rels = verify_hecke_relations(setting)
        sc = structure_constants(setting)
        c, d = _k0_checks(f"Sp4(F{q})", rels, sc)
        checks.update(c)
        checks[f"Sp4(F{q}) parameters (q, q)"] = [g[2] for g in setting.generators] == [q, q]
        diags.append(d)
    print("\n".join(diags))
    finish(report, 8, checks, time.perf_counter() - start, 600, "[" + " | ".join(diags) + "]")


# 9

def test_criterion_09_unequal_parameter(report):
    start = time.perf_counter()
    ctx = context(3, 2)
    setting = HeckeSetting.build(ctx, 1, CuspidalOracle.derived_sp4_f2())
    name, s, qs = setting.generators[0]
    Y1, Ys = setting.y(identity(3)), setting.y(s)
    res = setting.product(Ys - Y1, Ys - Y1.scale(qs))
    rep = res.first_nonzero_rep()
    sq = setting.product(Ys, Ys)
    coeffs = express_in_y(setting, sq)
    a, b = coeffs.get(s, Fraction(0)), coeffs.get(identity(3), Fraction(0))
    diag = (f"Y^{name}Y^{name} = {a} Y^{name} + {b} Y^1, eigenvalue ratio -{qs} "
            f"{'holds' if b * (1 - qs) ** 2 == qs * a * a else 'fails'}")
    if rep is not None:
        diag += (f"; residual {res.at(rep)} at coset {int(setting.model.keys[rep])}, "
                 f"max |residual| {max(abs(v) for v in res.orbit_values())}; "
                 f"q=3 fallback needs Sp6(F3) of order {sp_order_formula(3, 3)}, beyond enumeration")
    print(diag)
    checks = {f"(Y^{name} - Y^1)(Y^{name} - {qs} Y^1) = 0 over Sp6(F2)": rep is None,
              "parameter q^3 = 8": qs == 8}
    finish(report, 9, checks, time.perf_counter() - start, 1800, f"[{diag}]")


# 10

def test_criterion_10_torus_variant(report):
    start = time.perf_counter()
    checks, diags = {}, []
    for n in (1, 2):
        for q in (2, 3):
            ctx = context(n, q)
            for t in range(n + 1):
                zu, zr = ctx.z_count(dims(t)), ctx.z_count(dims(t), "R")
                checks[f"n={n} q={q} t={t} |Z| = (q-1)^t |Zbar|"] = zu == (q - 1) ** t * zr == (q - 1) ** t * zbar_count(n, q, t)
    for q in (2, 3):
        out = rbar_variant(context(2, q), 2)
        c, d = _k0_checks(f"Zbar Sp4(F{q})", out["relations"], out["structure_constants"])
        checks.update(c)
        diags.append(d)
    print("\n".join(diags))
    finish(report, 10, checks, time.perf_counter() - start, 600, "[" + " | ".join(diags) + "]")


# 11

def test_criterion_11_kernel_composition(report):
    start = time.perf_counter()
    n = 2
    ctx = context(n, 2)
    checks = {}
    triples = 0
    for tJ in range(n + 1):
        for tJp in range(tJ, n + 1):
            for tK in range(tJp, n + 1):
                for y in cw_subgroup(n, jt_subset(n, tK)):
                    res = ctx.kernel_composition(tK, tJp, tJ, y)
                    if not (res["x_star"] and res["w_star"]):
                        continue
                    triples += 1
                    checks[f"K=J_{tK} J'=J_{tJp} J=J_{tJ} y={y}"] = res["equal"]
    finish(report, 11, checks, time.perf_counter() - start, 300, f"[{triples} star triples]")
