"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""

import itertools
import os
import random
import sys
from collections import Counter

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import hn_oracle, quotient_dimension, small_objects  # noqa: E402
from zlkb import reps  # noqa: E402
from zlkb.braid_action import BraidWord, words_act_equally  # noqa: E402
from zlkb.complex import ProjComplex  # noqa: E402
from zlkb.homotopy import reduce  # noqa: E402
from zlkb.stability import (basis_tau0, classical_class, classical_from_hn, extriang_axiom_suite,  # noqa: E402
                            hn, identity_cone_map, k0_class, positive_roots, psi_check, sample_objects,
                            sample_thin_triangles, stable_k0, thin_check)
from zlkb.zigzag import ZigzagElement, all_basis, graded_dimension, zz_mul  # noqa: E402


def _summary(checks):
    bad = [c for c in checks if not c.ok]
    head = f"{len(checks) - len(bad)}/{len(checks)} checks"
    if bad:
        head += "; failing: " + "; ".join(f"{c.name} ({c.detail})" for c in bad[:4])
        if len(bad) > 4:
            head += f"; ... {len(bad) - 4} more"
    return not bad, head


def zigzag_structure():
    checks = []
    for n in range(2, 6):
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            enumerated = {d: quotient_dimension(n, i, j, d) for d in range(5) if quotient_dimension(n, i, j, d)}
            want = {0: 1, 2: 1} if i == j else {1: 1} if abs(i - j) == 1 else {}
            checks.append(reps.Check(f"dim e{i}Ae{j} n={n}", enumerated == graded_dimension(n, i, j) == want))
        basis = all_basis(n)
        assoc = all(zz_mul(zz_mul(x, y), z) == zz_mul(x, zz_mul(y, z))
                    for x, y, z in itertools.product([ZigzagElement.basis(n, v) for v in basis], repeat=3))
        checks.append(reps.Check(f"associativity n={n}", assoc))
    return _summary(checks)


def categorical_braid_relations():
    checks = []
    for n in (2, 3):
        objs = [ProjComplex.projective(n, j) for j in range(1, n + 1)]
        objs += list(basis_tau0(n).members.values())
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                if b == a + 1:
                    w1, w2 = BraidWord(n, ((a, 1), (b, 1), (a, 1))), BraidWord(n, ((b, 1), (a, 1), (b, 1)))
                else:
                    w1, w2 = BraidWord(n, ((a, 1), (b, 1))), BraidWord(n, ((b, 1), (a, 1)))
                checks.append(reps.Check(f"{w1} = {w2} n={n}", words_act_equally(w1, w2, objs)))
    return _summary(checks)


def action_table():
    return _summary([c for n in (3, 4) for c in reps.verify_action_table(n)])


def homgamma():
    return _summary([reps.verify_homgamma(n) for n in (2, 3, 4)])


def lkb_layer():
    checks = []
    for n in (1, 2, 3, 4):
        checks += reps.verify_lkb_relations(n)
    for n in (2, 3, 4):
        checks += reps.verify_gamma_lkb(n)
    return _summary(checks)


def mgamma():
    return _summary([c for n in (2, 3, 4) for c in reps.verify_mgamma(n)])


def condgamma():
    return _summary([c for n in (2, 3, 4) for c in reps.verify_condgamma(n)])


def alpha_lemma():
    return _summary([reps.verify_alpha_lemma(n, k) for n in (2, 3, 4) for k in range(1, n + 1)])


def identification():
    checks = []
    for n in (2, 3):
        rng = random.Random(7)
        system = reps.IdentificationSystem(n)
        for _ in range(50):
            checks.append(system.check_word(reps.random_word(n, rng, 8, 1), reps.random_word(n, rng, 4)))
        for _ in range(10):
            checks.append(system.check_gamma_independence(reps.random_word(n, rng, 6),
                                                          rng.choice([-2, -1, 1, 2])))
    return _summary(checks)


def permutation_rep():
    return _summary([c for n in (2, 3, 4) for c in reps.verify_perm(n)])


def extriangulated():
    b = basis_tau0(2)
    tris = sample_thin_triangles(b, 100, 0)
    rep = extriang_axiom_suite(b, 100, 0, tris)
    origins = Counter(t.origin for t in tris)
    steps = [t for t in tris if t.origin == "hn-step"]
    checks = [
        reps.Check("at least 100 thin triangles", len(tris) >= 100 and rep.precondition_violations == 0),
        reps.Check("ET1 and ET4 closure", rep.ok, f"{len(rep.counterexamples)} counterexamples"),
        reps.Check("identity cone rejected",
                   all(not thin_check(identity_cone_map(ProjComplex.projective(2, i)), b) for i in (1, 2))),
        reps.Check("HN steps accepted", bool(steps) and all(thin_check(t.f, b) for t in steps)),
    ]
    ok, head = _summary(checks)
    return ok, f"{head}; origins {dict(sorted(origins.items()))}; ET1 {rep.et1}, ET1op {rep.et1_dual}, ET4 {rep.et4}"


def k0_freeness():
    checks = []
    for n in (2, 3):
        b = basis_tau0(n)
        checks.append(reps.Check(f"basis size n={n}", len(b.members) == n * (n + 1) // 2))
        ok = all(k0_class(b.members[r].shift(k, l), b) == stable_k0(r, k, l)
                 for r in positive_roots(n) for k in (-2, 0, 1) for l in (-1, 0, 3))
        checks.append(reps.Check(f"k0 of shifted stables n={n}", ok))
    b = basis_tau0(2)
    objs = sample_objects(2, b, 20, 0)
    bad = [x for x in objs if classical_from_hn(hn(x, b), b) != classical_class(x)]
    checks.append(reps.Check("classical cross-check", len(objs) >= 20 and not bad, f"{len(objs) - len(bad)}/{len(objs)}"))
    psi = psi_check(sample_thin_triangles(b, 100, 0), b)
    checks.append(reps.Check("psi aggregated", psi.aggregated_ok == psi.checked))
    checks.append(reps.Check("psi refined", psi.refined_ok == psi.checked))
    ok, head = _summary(checks)
    return ok, (f"{head}; psi aggregated {psi.aggregated_ok}/{psi.checked}, "
                f"refined {psi.refined_ok}/{psi.checked}")


def greedy_hn_oracle():
    b = basis_tau0(2)
    objs = small_objects(b)
    bad = []
    for x in objs:
        got = Counter(hn(reduce(x), b).refined)
        if hn_oracle(x, b) != [got]:
            bad.append(x.describe())
    return not bad, f"{len(objs) - len(bad)}/{len(objs)} objects agree" + (f"; first mismatch {bad[0]}" if bad else "")


CRITERIA = [
    (1, "zigzag dimension table and associativity", zigzag_structure),
    (2, "categorical braid relations", categorical_braid_relations),
    (3, "partial Garside action table", action_table),
    (4, "Garside inverse matrix on tau_0", homgamma),
    (5, "LKB relations and Garside closed form", lkb_layer),
    (6, "M_tau0 inverse and conjugation", mgamma),
    (7, "M_tau0 conjugation after substitution", condgamma),
    (8, "alpha exponents of M_tau_k", alpha_lemma),
    (9, "identification on random braids", identification),
    (10, "alpha = 0 permutation representation", permutation_rep),
    (11, "extriangulated axioms", extriangulated),
    (12, "free K0 and psi additivity", k0_freeness),
    (13, "greedy HN against exhaustive search", greedy_hn_oracle),
]


def _line(num, title, ok, detail):
    return f"CRITERION {num}: {'PASS' if ok else 'FAIL'} {title} ({detail})"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
