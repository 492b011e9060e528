"""
Acceptance criteria AC1-AC11.  Each test prints one PASS/FAIL line (also
collected into the terminal summary) and enforces its runtime budget.
"""

import random
import time
from collections import Counter

import pytest

from coxstar.classify import EXCLUDED_SHAPES, counterexample_word
from coxstar.elements import (
    enumerate_fc, enumerate_group, fc_element, is_reduced_fc, is_weakly_complex,
    left_descents, normal_shape_case, tits_is_reduced,
)
from coxstar.graph import family_graph
from coxstar.hinv import h_value
from coxstar.laurent import LaurentInt, delta, one
from coxstar.star import audit_graph, is_commuting_product, star_down, star_reduce_path, star_up
from coxstar.tl import TlElement, algebra, change_basis, positivity_report, reduce_b_monomial
from coxstar.traces import alternating, cartier_foata

from conftest import ACCEPTANCE_LINES
from test_classify import SHAPES
from tl_props import LITERAL_39III, literal_39iii_counterexample, remark_configuration_holds, run_lattice_checks


def report(n: int, ok: bool, detail: str):
    line = f"AC{n} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start

    @property
    def ok(self):
        return self.elapsed < self.seconds

    def __str__(self):
        return f"{self.elapsed:.2f}s of {self.seconds}s"


def _b(g, word, coeff=1):
    return TlElement(g, "b", {fc_element(g, word): LaurentInt.const(coeff) if isinstance(coeff, int) else coeff})


def test_ac1_example_star_maps():
    b2 = family_graph("B2")
    pair = (0, 1)
    with Budget(1) as t:
        w = fc_element(b2, [1, 0])
        got = (star_down(w, pair, "left").word, star_up(w, pair, "left").word,
               star_down(w, pair, "right").word, star_up(w, pair, "right").word)
        x, y = fc_element(b2, [0, 1, 0]), fc_element(b2, [1])
        undefined = (star_up(x, pair, "left"), star_up(x, pair, "right"),
                     star_down(y, pair, "left"), star_down(y, pair, "right"))
    ok = got == ((0,), (0, 1, 0), (1,), (1, 0, 1)) and undefined == (None,) * 4 and t.ok
    assert report(1, ok, f"B2 star maps {got}, undefined at sts/t; {t}")


def test_ac2_remark_configuration():
    b3 = family_graph("B3")
    with Budget(1) as t:
        got = reduce_b_monomial(b3, (2, 0, 1, 0, 2))
        ok = got == _b(b3, [0, 2], delta())
        up = 2 not in left_descents(fc_element(b3, [0, 1, 0, 2]))
        ok = ok and up and remark_configuration_holds(b3)
    assert report(2, ok and t.ok, f"b_s3 b_(s1s2s1s3) = {got}; s3 y > y: {up}; {t}")


def test_ac3_dihedral_relations():
    expected = {3: {(0,): 1}, 4: {(0, 1): 2}, 5: {(0, 1, 0): 3, (0,): -1}, 6: {(0, 1, 0, 1): 4, (0, 1): -3}}
    results = {}
    for m, terms in expected.items():
        g = family_graph(f"I2({m})")
        want = TlElement(g, "b", {fc_element(g, w): LaurentInt.const(c) for w, c in terms.items()})
        results[m] = reduce_b_monomial(g, alternating(0, 1, m)) == want
    assert report(3, all(results.values()), f"I2(m) alternating reductions exact: {results}")


def test_ac4_enumeration_oracle():
    with Budget(5) as t:
        out = {}
        for name, order, count in (("B2", 8, 7), ("A3", 24, 14)):
            g = family_graph(name)
            group, closed = enumerate_group(g, 50)
            filtered = {cartier_foata(g, el.key) for el in group if is_reduced_fc(g, el.key)}
            els, exhaustive = enumerate_fc(g, 50)
            out[name] = (closed and len(group) == order and exhaustive and len(els) == count
                         and set(els) == filtered)
    ok = all(out.values()) and t.ok
    assert report(4, ok, f"|W_c(B2)| = 7, |W_c(A3)| = 14 against group orders 8, 24: {out}; {t}")


AUDIT_FAMILIES = ["A4", "B3", "D4", "E6", "F4", "H3", "I2(5)", "Atilde4", "Ctilde3", "Ftilde5", "K3(3,4,5)"]


def test_ac5_classification_consistency():
    with Budget(300) as t:
        witnesses = {}
        for name in AUDIT_FAMILIES:
            found, _ = audit_graph(family_graph(name), 12)
            witnesses[name] = len(found)
        shapes = {}
        for shape in sorted(EXCLUDED_SHAPES):
            g, _ = SHAPES[shape]
            word = counterexample_word(g)
            w = fc_element(g, word) if word is not None and is_reduced_fc(g, word) else None
            shapes[shape] = (w is not None and tits_is_reduced(g, word) and not is_commuting_product(w)
                             and star_reduce_path(w) is None)
    ok = not any(witnesses.values()) and all(shapes.values()) and t.ok
    bad = [k for k, v in shapes.items() if not v]
    assert report(5, ok, f"witnesses {sum(witnesses.values())} over {len(witnesses)} families; "
                         f"{len(shapes) - len(bad)}/8 excluded-shape words verified; {t}")


def test_ac6_canonical_basis():
    with Budget(120) as t:
        counts = {}
        failures = []
        for name in ("B3", "H3", "Ctilde3", "Ftilde5"):
            g = family_graph(name)
            alg = algebra(g)
            els, _ = enumerate_fc(g, 8)
            counts[name] = len(els)
            for w in els:
                c = alg.c_of(w)
                # independent re-check of the defining property
                if any(f.bar() != f for f in c.terms.values()):
                    failures.append((name, w, "bar"))
                diff = change_basis(c - alg.ttilde_of(w), "ttilde")
                if not all(f.in_vinv_A_minus() for f in diff.terms.values()):
                    failures.append((name, w, "unitriangular"))
                if not all(f.is_integer() for f in c.terms.values()):
                    failures.append((name, w, "integral"))
        b2 = family_graph("B2")
        sts = algebra(b2).c_of([0, 1, 0]) == _b(b2, [0, 1, 0]) - _b(b2, [0])
    ok = not failures and sts and t.ok
    assert report(6, ok, f"c_w verified for {counts}; failures {len(failures)}; B2 c_sts = b_sts - b_s: {sts}; {t}")


def test_ac7_positivity():
    with Budget(600) as t:
        summary = {}
        violations = 0
        for name in ("B2", "I2(5)", "A3", "B3"):
            rep = positivity_report(family_graph(name), 50)
            assert rep["exhaustive"]
            summary[name] = (rep["pairs"], rep["max_delta_power"])
            violations += len(rep["violations"])
    ok = violations == 0 and t.ok
    assert report(7, ok, f"(pairs, max delta power) {summary}; violations {violations}; {t}")


def test_ac8_property_w():
    with Budget(600) as t:
        stats = {}
        bad = 0
        for name in ("Ctilde3", "Ftilde5"):
            g = family_graph(name)
            alg = algebra(g)
            table = alg.theta_table(8)
            weak = 0
            for el, vec in table:
                x = TlElement(g, "b", vec)
                if not alg.in_lattice(x):
                    bad += 1
                if not is_reduced_fc(g, el.key) and is_weakly_complex(g, el.key):
                    weak += 1
                    if not alg.in_vinv_lattice(x):
                        bad += 1
            stats[name] = (len(table), sum(len(el.words) for el, _ in table), weak)
    ok = bad == 0 and t.ok
    assert report(8, ok, f"(elements, reduced words, weakly complex) {stats}; violations {bad}; {t}")


def _shape_ok(g, case, x):
    c = lambda a, b: g.commute(a, b)
    if case == "i":
        return all(c(a, b) for k, a in enumerate(x) for b in x[k + 1:])
    if case == "ii":
        return not c(x[0], x[1])
    if case == "iii":
        return not c(x[-2], x[-1])
    s, u, t = x[:3]
    return c(s, u) and not c(s, t) and not c(t, u)


def test_ac9_normal_shapes():
    with Budget(600) as t:
        stats = {}
        unassigned = 0
        for name in ("Ctilde3", "Etilde6"):
            g = family_graph(name)
            els, _ = enumerate_group(g, 8)
            cases = Counter()
            for el in els:
                try:
                    case, witness = normal_shape_case(g, el.key, words=el.words)
                except Exception:
                    unassigned += 1
                    continue
                if witness not in el.words or not _shape_ok(g, case, witness):
                    unassigned += 1
                cases[case] += 1
            stats[name] = (len(els), sum(len(el.words) for el in els), dict(sorted(cases.items())))
    ok = unassigned == 0 and t.ok
    assert report(9, ok, f"(elements, reduced words, cases) {stats}; unassigned {unassigned}; {t}")


def test_ac10_h_invariant():
    with Budget(300) as t:
        problems = Counter()
        total = 0
        for name in ("Ftilde5", "Ctilde3"):
            g = family_graph(name)
            rng = random.Random(f"ac10-{name}")
            h = lambda w: h_value(g, w, check_graph=False)[0]
            for _ in range(200):
                total += 1
                u = tuple(rng.randrange(g.rank) for _ in range(rng.randint(0, 12)))
                values = {h_value(g, u, seed=k, check_graph=False)[0] for k in range(20)}
                if len(values) != 1:
                    problems["seed disagreement"] += 1
                hu = values.pop()
                s, tt = rng.choice(g.pairs())
                if rng.random() < 0.5:
                    s, tt = tt, s
                if h((s, tt) + u) != h((tt,) + u):
                    problems["h(st u) != h(t u)"] += 1
                if h(u + (tt, s)) != h(u + (tt,)):
                    problems["h(u ts) != h(u t)"] += 1
                if h((s, s) + u) != h((s,) + u) + 1:
                    problems["h(ss u) != h(s u) + 1"] += 1
                k = rng.randrange(len(u) + 1)
                if abs(h(u[:k] + (s,) + u[k:]) - hu) > 1:
                    problems["deletion bound"] += 1
                for c in reduce_b_monomial(g, u).terms.values():
                    q = c
                    for _ in range(hu):
                        q, r = q.divmod_delta()
                        if r:
                            problems["not divisible by delta^h"] += 1
                            break
    ok = not problems and t.ok
    assert report(10, ok, f"{total} random words, 20 seeds each; violations {dict(problems) or 0}; {t}")


def test_ac11_lattice_properties():
    counts = Counter()
    for name, max_len in (("B3", 20), ("Ctilde3", 6)):
        for v in run_lattice_checks(family_graph(name), max_len, 500, seed=11):
            counts[v] += 1
    literal = counts.pop(LITERAL_39III, 0)
    b3 = family_graph("B3")
    remark = remark_configuration_holds(b3)
    witness, coords = literal_39iii_counterexample(b3, 0, 1)
    # everything except the literal st-inclusion must hold exactly
    assert not counts and remark, counts
    ok = literal == 0
    report(11, ok, "eigenspace, both L_L^s descriptions, t~_s t~_w, t~_s L cap L, b_s L_L^t, "
                   "t~_a L_L^st and t~_s t~_y (ty < y) hold on 500 samples per graph (B3, Ctilde3); "
                   f"the literal inclusion t~_s L_L^t in L_L^st fails {literal} times, e.g. "
                   f"x = v^-1 t~_s gives t~-coordinates {coords} (see decisions ledger)")
    if not ok:
        assert witness
        pytest.xfail("literal inclusion t~_s L_L^t in L_L^st is false for x = v^-1 t~_s")
