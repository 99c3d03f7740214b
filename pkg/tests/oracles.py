"""Independent brute-force oracles shared by the tests.

None of these reuse the closed-form tables of the package: the zigzag oracle works in
the path algebra of the doubled quiver modulo its relations, and the HN oracle
searches filtrations by stables instead of running the greedy extraction.
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache

import sympy

from zlkb.braid_action import BraidWord, apply_word
from zlkb.complex import ProjComplex, cone
from zlkb.homotopy import hom, is_isomorphic, reduce, top_bidegree

# ---------------------------------------------------------------------------
# path algebra of the doubled A_n quiver


def paths(n: int, length: int, s: int | None = None, t: int | None = None) -> list[tuple[int, ...]]:
    """Vertex sequences of walks with ``length`` arrows."""
    out = [(v,) for v in range(1, n + 1) if s is None or v == s]
    for _ in range(length):
        out = [p + (p[-1] + e,) for p in out for e in (-1, 1) if 1 <= p[-1] + e <= n]
    return [p for p in out if t is None or p[-1] == t]


def _relations(n: int) -> list[dict[tuple[int, ...], int]]:
    rels = []
    for i in range(1, n - 1):
        rels.append({(i, i + 1, i + 2): 1})
        rels.append({(i + 2, i + 1, i): 1})
    for i in range(2, n):
        rels.append({(i, i + 1, i): 1, (i, i - 1, i): -1})
    if n == 2:
        # the two loops are not related, so length three is cut off by hand
        rels.extend({p: 1} for p in paths(n, 3))
    return rels


@lru_cache(maxsize=None)
def _ideal_component(n: int, s: int, t: int, length: int) -> tuple[tuple[tuple[int, ...], ...], sympy.Matrix]:
    """Basis of walks s -> t with ``length`` arrows and a matrix whose columns span the ideal there."""
    basis = tuple(paths(n, length, s, t))
    pos = {p: k for k, p in enumerate(basis)}
    cols = []
    for rel in _relations(n):
        rlen = len(next(iter(rel))) - 1
        if rlen > length:
            continue
        rs, rt = next(iter(rel))[0], next(iter(rel))[-1]
        for a in range(length - rlen + 1):
            for left in paths(n, a, s, rs):
                for right in paths(n, length - rlen - a, rt, t):
                    v = [0] * len(basis)
                    for p, c in rel.items():
                        v[pos[left + p[1:] + right[1:]]] += c
                    cols.append(v)
    mat = sympy.Matrix(cols).T if cols else sympy.zeros(len(basis), 0)
    return basis, mat


def quotient_dimension(n: int, s: int, t: int, length: int) -> int:
    basis, ideal = _ideal_component(n, s, t, length)
    return len(basis) - (ideal.rank() if ideal.shape[1] else 0)


def representative(n: int, s: int, t: int, d: int) -> tuple[int, ...]:
    if d == 0:
        return (s,)
    if d == 1:
        return (s, t)
    return (s, s + 1, s) if s + 1 <= n else (s, s - 1, s)


def product_coefficient(n: int, p: tuple[int, ...], q: tuple[int, ...]) -> tuple[tuple[int, ...], int] | None:
    """Write the walk p followed by q as c * representative in the quotient, or None if zero."""
    if p[-1] != q[0]:
        return None
    walk = p + q[1:]
    s, t, length = walk[0], walk[-1], len(walk) - 1
    basis, ideal = _ideal_component(n, s, t, length)
    vec = sympy.Matrix([1 if b == walk else 0 for b in basis])
    if quotient_dimension(n, s, t, length) == 0:
        return None
    rep = representative(n, s, t, length)
    rvec = sympy.Matrix([1 if b == rep else 0 for b in basis])
    system = ideal.row_join(rvec) if ideal.shape[1] else rvec
    sol, params = system.gauss_jordan_solve(vec)
    sol = sol.subs({p: 0 for p in params})
    return rep, int(sol[-1])


# ---------------------------------------------------------------------------
# exhaustive Harder-Narasimhan filtration search


def _cancellable(excess: Counter) -> bool:
    """Can the surplus summands be removed in pairs (h, v, q), (h + 1, v, q)?"""
    rest = Counter(excess)
    for h, v, q in sorted(rest.elements()):
        if rest[(h, v, q)] == 0:
            continue
        if rest[(h + 1, v, q)] > 0:
            rest[(h, v, q)] -= 1
            rest[(h + 1, v, q)] -= 1
        else:
            return False
    return not +rest


def _realizable(x: ProjComplex, factors: list[ProjComplex]) -> bool:
    """Is x an iterated extension 0 -> X_1 -> ... -> X_m = x with X_i / X_{i-1} = factors[i]?"""
    def build(cur: ProjComplex, rest: list[ProjComplex]) -> bool:
        if not rest:
            return is_isomorphic(cur, x)
        f = rest[0]
        hs = hom(f.shift(1, 0), cur)
        for coeffs in itertools.product((0, 1, -1), repeat=hs.dimension):
            if hs.dimension and coeffs[0] == -1:
                continue  # overall sign does not change the cone
            g = None
            for c, m in zip(coeffs, hs.basis):
                if c:
                    g = m.scale(c) if g is None else g + m.scale(c)
            if g is None:
                nxt = cur.direct_sum(f)
            else:
                nxt = cone(g).cone
            if build(reduce(nxt), rest[1:]):
                return True
        return False

    return build(reduce(factors[0]), factors[1:])


def hn_oracle(x: ProjComplex, basis, max_excess: int = 2) -> list[Counter]:
    """All refined factor multisets of filtrations of x by stables with non-increasing phase.

    The search is cover driven: the first graded summand of x not yet accounted for
    must come from some shifted stable, which fixes that stable's shift.  Factors may
    bring up to ``max_excess`` surplus summands, which must cancel in adjacent pairs;
    one further factor made only of surplus is tried at each leaf.
    """
    x = reduce(x)
    want = Counter(x.graded_summands())
    if not want:
        return [Counter()]
    members = list(basis.members.items())
    found: list[Counter] = []

    def covering(u):
        h, v, q = u
        out = []
        for r, s in members:
            for h2, v2, q2 in s.graded_summands():
                if v2 == v:
                    k, l = h - h2, q - q2
                    out.append(((r, k, l), Counter(s.shift(k, l).graded_summands())))
        return out

    def surplus_only(have):
        out = []
        for h, v, q in have - want:
            for dh in (-1, 1):
                out.extend(covering((h + dh, v, q)))
        return out

    def dfs(chosen, have):
        excess = have - want
        if sum(excess.values()) > max_excess:
            return
        missing = sorted((want - have).elements())
        if not missing:
            if _cancellable(excess):
                _try(chosen)
            for c, sig in surplus_only(have):
                ex = (have + sig) - want
                if sum(ex.values()) <= max_excess and _cancellable(ex):
                    _try(chosen + [c])
            return
        for c, sig in covering(missing[0]):
            dfs(chosen + [c], have + sig)

    def _try(chosen):
        key = Counter(chosen)
        if key in found:
            return
        ordered = sorted(chosen, key=lambda c: basis.phase_key(*c), reverse=True)
        groups = [list(g) for _, g in itertools.groupby(ordered, key=lambda c: basis.phase_key(*c))]
        for perm in itertools.product(*[sorted(set(itertools.permutations(g))) for g in groups]):
            seq = [c for grp in perm for c in grp]
            if _realizable(x, [basis.members[r].shift(k, l) for r, k, l in seq]):
                found.append(key)
                return

    dfs([], Counter())
    return found


# ---------------------------------------------------------------------------
# small object family at n = 2


def _normalize(x: ProjComplex) -> ProjComplex:
    x = reduce(x)
    if x.is_zero():
        return x
    h, q = top_bidegree(x)
    return x.shift(-h, -q)


def small_objects(basis, max_summands: int = 6) -> list[ProjComplex]:
    """Objects built from the stables, up to overall shift.

    Shifted stables; braid images under all words of length <= 3; sums of two or
    three shifted stables; cones of Hom-basis maps between two shifted stables and
    from a stable into the image of a stable under a word of length <= 2.
    """
    n = basis.n
    stables = list(basis.members.values())
    pool: dict = {}

    def add(x):
        x = _normalize(x)
        if not x.is_zero() and x.summand_count() <= max_summands:
            pool.setdefault(x.key(), x)

    letters = [(i, e) for i in range(1, n + 1) for e in (1, -1)]
    for length in range(4):
        for word in itertools.product(letters, repeat=length):
            for s in stables:
                add(apply_word(BraidWord(n, word), s))
    for a in stables:
        for b in stables:
            for k in range(-2, 3):
                for l in range(-3, 4):
                    add(a.direct_sum(b.shift(k, l)))
                    for f in hom(a, b, k, l).basis:
                        add(cone(f).cone)
    # larger objects: three stables, and cones from a stable into short braid images
    for a, b, c in itertools.combinations_with_replacement(stables, 3):
        for k in range(-1, 2):
            for l in range(-2, 3):
                add(a.direct_sum(b.shift(k, l)).direct_sum(c.shift(-k, l + 1)))
    images = {apply_word(BraidWord(n, word), s).key(): apply_word(BraidWord(n, word), s)
              for length in range(1, 3) for word in itertools.product(letters, repeat=length)
              for s in stables}
    for a in stables:
        for y in images.values():
            for k in range(-1, 2):
                for l in range(-2, 3):
                    for f in hom(a, y, k, l).basis:
                        add(cone(f).cone)
    return sorted(pool.values(), key=lambda x: (x.summand_count(), x.describe()))
