"""Matrix representations: LKB, decategorified action matrices and identification matrices.

Rows and columns are indexed by positive roots (i, j) in lexicographic order and
column (i, j) holds the image of the basis vector e_{ij} (or P_{ij}).  Matrices of
braid words multiply in word order: rho(b2 b1) = rho(b2) rho(b1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .braid_action import BraidWord, apply_word, descending_inverse, garside
from .complex import ChainMap, cone
from .homotopy import hom, identify_stable, reduce
from .ring import (LaurentQT, LaurentXY, first_mismatch, identity, inverse, is_generalized_permutation,
                   mat_eq, mat_map, matmul, matprod, qt_to_xy, xy_to_qt, zeros)
from .stability import StableBasis, basis_tau0, basis_tau_k, positive_roots, transport_basis
from .zigzag import basis_exists

X, Y = LaurentXY.gens()
Q, T = LaurentQT.gens()


def root_index(n: int) -> dict[tuple[int, int], int]:
    return {r: k for k, r in enumerate(positive_roots(n))}


def _from_columns(n: int, cols: dict, cls) -> list:
    idx = root_index(n)
    m = zeros(len(idx), len(idx), cls)
    for src, col in cols.items():
        for tgt, c in col.items():
            m[idx[tgt]][idx[src]] = m[idx[tgt]][idx[src]] + c
    return m


# ---------------------------------------------------------------------------
# LKB


def _lkb_column(k: int, i: int, j: int) -> dict:
    kk = (k, k + 1)
    if k == i - 1:
        return {(i - 1, j): X, (i, j): 1 - X}
    if k == i and i < j - 1:
        return {(i + 1, j): LaurentXY.one(), kk: -X * Y * (X - 1)}
    if k == i and i == j - 1:
        return {kk: -X * X * Y}
    if i < k < j - 1:
        return {(i, j): LaurentXY.one(), kk: -Y * (X - 1) * (X - 1)}
    if i < j - 1 and j - 1 == k:
        return {(i, j - 1): LaurentXY.one(), kk: -X * Y * (X - 1)}
    if k == j:
        return {(i, j + 1): X, (i, j): 1 - X}
    return {(i, j): LaurentXY.one()}


@lru_cache(maxsize=None)
def _lkb_generator_cached(k: int, sign: int, n: int):
    if sign == 1:
        return _from_columns(n, {r: _lkb_column(k, *r) for r in positive_roots(n)}, LaurentXY)
    return inverse(_lkb_generator_cached(k, 1, n))


def lkb_generator(k: int, sign: int, n: int) -> list:
    """Matrix of sigma_k^sign on the span of e_{ij}, 1 <= i < j <= n+1."""
    if not 1 <= k <= n:
        raise ValueError(f"generator index {k} out of range")
    return [row[:] for row in _lkb_generator_cached(k, sign, n)]


def lkb_word(w: BraidWord) -> list:
    return matprod([_lkb_generator_cached(i, e, w.n) for i, e in w.letters],
                   len(positive_roots(w.n)), LaurentXY)


def gamma_lkb_closed_form(n: int) -> list:
    """Closed form of rho(s_n ... s_1)."""
    cols = {}
    for i, j in positive_roots(n):
        col: dict = {}

        def add(key, val):
            col[key] = col.get(key, LaurentXY.zero()) + val

        if i > 1:
            add((i - 1, j - 1), X)
        else:
            for r in range(1, j - 1):
                for s in range(r + 1, n + 1):
                    add((r, s), (X - 1) * (X - 1) * X ** (s - r) * Y)
                add((r, n + 1), -(X - 1) * X ** (n + 1 - r) * Y)
            add((j - 1, n + 1), -(X ** (n - j + 3)) * Y)
            for s in range(j, n + 1):
                add((j - 1, s), X ** (s - j + 2) * Y * (X - 1))
        cols[(i, j)] = col
    return _from_columns(n, cols, LaurentXY)


def gamma_e12_display(n: int) -> dict:
    """-x^{n+1} y e_{1,n+1} + sum_{s=2}^n x^s y (x-1) e_{1,s}."""
    col = {(1, n + 1): -(X ** (n + 1)) * Y}
    for s in range(2, n + 1):
        col[(1, s)] = X ** s * Y * (X - 1)
    return col


def column(m: list, n: int, r: tuple[int, int]) -> dict:
    idx = root_index(n)
    return {s: m[idx[s]][idx[r]] for s in positive_roots(n) if m[idx[s]][idx[r]]}


# ---------------------------------------------------------------------------
# identification matrices

ALPHA = 1 - X ** -1


def m_tau0(n: int) -> tuple[list, list]:
    cols, icols = {}, {}
    for i, j in positive_roots(n):
        cols[(i, j)] = {(i, j): LaurentXY.one(), **{(i, s): ALPHA for s in range(i + 1, j)}}
        icols[(i, j)] = {(i, j): LaurentXY.one(),
                         **{(i, s): -(X ** (s - j)) * (X - 1) for s in range(i + 1, j)}}
    return _from_columns(n, cols, LaurentXY), _from_columns(n, icols, LaurentXY)


def m_tau_k_exponents(n: int, k: int) -> dict:
    """{(source root, target root): power of alpha} in the explicit expansion."""
    out = {}
    for i, j in positive_roots(n):
        out[((i, j), (i, j))] = 0
        for jp in range(i + 1, j):
            if jp != k + 1:
                out[((i, j), (i, jp))] = 1
        if k + 1 > i:
            for jp in range(k + 2, j):
                out[((i, j), (k + 1, jp))] = 2
        if i < k + 1 < j:
            out[((i, j), (k + 1, j))] = 1
    return out


def m_tau_k(n: int, k: int, alpha: LaurentXY | None = None) -> list:
    a = ALPHA if alpha is None else alpha
    cols: dict = {}
    for (src, tgt), p in m_tau_k_exponents(n, k).items():
        cols.setdefault(src, {})[tgt] = a ** p if p else LaurentXY.one()
    return _from_columns(n, cols, LaurentXY)


# ---------------------------------------------------------------------------
# decategorified action


def ptau_matrix(w: BraidWord, basis: StableBasis) -> tuple[list, StableBasis]:
    """P_tau(w) over Z[q, t] and the transported basis it lands in."""
    target = transport_basis(basis, w)
    cols = {}
    for r, s in basis.members.items():
        found = identify_stable(apply_word(w, s), target)
        if found is None:
            raise RuntimeError(f"image of stable {r} under {w} is not a shifted stable")
        idx, k, l = found
        cols[r] = {idx: LaurentQT.monomial(l, k)}
    return _from_columns(basis.n, cols, LaurentQT), target


def homgamma_expected(n: int) -> list:
    cols = {}
    for i, j in positive_roots(n):
        if i == 1:
            cols[(i, j)] = {(j - 1, n + 1): LaurentQT.monomial(j - 3 - n, 2 - j + n)}
        else:
            cols[(i, j)] = {(i - 1, j - 1): T * Q ** -1}
    return _from_columns(n, cols, LaurentQT)


def mgamma_expected(n: int) -> list:
    cols = {}
    for i, j in positive_roots(n):
        if i == 1:
            cols[(i, j)] = {(j - 1, n + 1): -(X ** (n - j + 3)) * Y}
        else:
            cols[(i, j)] = {(i - 1, j - 1): X}
    return _from_columns(n, cols, LaurentXY)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _cmp(name, a, b) -> Check:
    mm = first_mismatch(a, b)
    if mm is None and len(a) == len(b):
        return Check(name, True)
    return Check(name, False, f"first mismatch at {mm[:2]}: {mm[2]} != {mm[3]}" if mm else "shape")


def verify_mgamma(n: int) -> list[Check]:
    m, minv = m_tau0(n)
    out = [_cmp(f"M*Minv=Id n={n}", matmul(m, minv), identity(len(m), LaurentXY))]
    conj = matprod([m, lkb_word(garside(n).inverse().tilde()), minv], len(m), LaurentXY)
    out.append(_cmp(f"M rho(s_n..s_1) M^-1 n={n}", conj, mgamma_expected(n)))
    return out


def verify_condgamma(n: int) -> list[Check]:
    """M rho(g~) M^-1 = P(g) for g = gamma^-1 and g = gamma, after x = t/q, y = -1/t."""
    m, minv = m_tau0(n)
    b0 = basis_tau0(n)
    out = []
    for label, g in (("gamma^-1", garside(n).inverse()), ("gamma", garside(n))):
        lhs = mat_map(matprod([m, lkb_word(g.tilde()), minv], len(m), LaurentXY), xy_to_qt)
        p, tgt = ptau_matrix(g, b0)
        c = _cmp(f"condgamma {label} n={n}", lhs, p)
        if tgt.tau_k != 0:
            c = Check(c.name, False, "image basis is not the tau_0 class")
        out.append(c)
    return out


def verify_homgamma(n: int) -> Check:
    p, tgt = ptau_matrix(garside(n).inverse(), basis_tau0(n))
    return _cmp(f"homgamma n={n}", p, homgamma_expected(n))


def verify_alpha_lemma(n: int, k: int) -> Check:
    """P_{tau0}(s_k^-1 ... s_1^-1) M_{tau0} = M_{tau_k} rho(s_k ... s_1)."""
    w = descending_inverse(n, k)
    p, tgt = ptau_matrix(w, basis_tau0(n))
    kk = k % n
    if tgt.tau_k != kk:
        return Check(f"alpha lemma n={n} k={k}", False, "image is not the expected tau_k class")
    lhs = matmul(mat_map(p, qt_to_xy), m_tau0(n)[0])
    rhs = matmul(m_tau_k(n, kk), lkb_word(w.tilde()))
    return _cmp(f"alpha lemma n={n} k={k}", lhs, rhs)


# ---------------------------------------------------------------------------
# identification system


@dataclass
class IdentificationSystem:
    """Computes M_tau for transported bases and caches transports."""

    n: int
    base: StableBasis = None
    _cache: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.base is None:
            self.base = basis_tau0(self.n)
        self.m0 = m_tau0(self.n)[0]

    def basis_for(self, beta: BraidWord) -> StableBasis:
        key = beta.letters
        if key not in self._cache:
            self._cache[key] = transport_basis(self.base, beta)
        return self._cache[key]

    def m_from_braid(self, beta: BraidWord) -> list:
        """P_{tau0}(beta) M_{tau0} rho(beta~)^-1."""
        p, _ = ptau_matrix(beta, self.base)
        rinv = lkb_word(beta.tilde().inverse())
        return matprod([mat_map(p, qt_to_xy), self.m0, rinv], len(self.m0), LaurentXY)

    def m_for(self, beta: BraidWord) -> list:
        """M of the class of beta tau0: the explicit tau_k matrix when it applies."""
        b = self.basis_for(beta)
        if b.tau_k is not None:
            return m_tau_k(self.n, b.tau_k)
        return self.m_from_braid(beta)

    def check_word(self, w: BraidWord, beta: BraidWord) -> Check:
        """M_{w tau} rho(w~) = P_tau(w) M_tau with tau = beta tau0."""
        tau = self.basis_for(beta)
        p, tgt = ptau_matrix(w, tau)
        tgt_direct = self.basis_for(w * beta)
        if not tgt.same_stables(tgt_direct):
            return Check(f"identification w={w} beta={beta}", False, "transport is path dependent")
        lhs = matmul(self.m_for(w * beta), lkb_word(w.tilde()))
        rhs = matmul(mat_map(p, qt_to_xy), self.m_for(beta))
        return _cmp(f"identification w={w} beta={beta}", lhs, rhs)

    def check_gamma_independence(self, beta: BraidWord, l: int) -> Check:
        """M from beta and from beta gamma^l agree."""
        g = garside(self.n) ** l
        a = self.m_from_braid(beta)
        b = self.m_from_braid(beta * g)
        return _cmp(f"well-defined beta={beta} l={l}", a, b)


def random_word(n: int, rng: random.Random, max_len: int = 8, min_len: int = 0) -> BraidWord:
    length = rng.randint(min_len, max_len)
    return BraidWord(n, tuple((rng.randint(1, n), rng.choice([1, -1])) for _ in range(length)))


def verify_identification(w: BraidWord, beta: BraidWord | None = None,
                          system: IdentificationSystem | None = None) -> Check:
    system = system or IdentificationSystem(w.n)
    return system.check_word(w, beta if beta is not None else BraidWord(w.n, ()))


# ---------------------------------------------------------------------------
# alpha = 0: generalized permutation matrices


def perm_column(m: int, n: int, i: int, j: int) -> dict:
    """sigma_m^-1 P_{ij} in the alpha = 0 representation."""
    if i == m and j == m + 1:
        return {(m, m + 1): T * Q ** -2}
    if i == m and j > m + 1:
        return {(m + 1, j): LaurentQT.one()}
    if i == m + 1:
        return {(m, j): T * Q ** -1}
    if j == m:
        return {(i, m + 1): T * Q ** -1}
    if i < m and j == m + 1:
        return {(i, m): LaurentQT.one()}
    return {(i, j): LaurentQT.one()}


@lru_cache(maxsize=None)
def _perm_cached(m: int, sign: int, n: int):
    inv = _from_columns(n, {r: perm_column(m, n, *r) for r in positive_roots(n)}, LaurentQT)
    return inv if sign == -1 else inverse(inv)


def perm_rep_generator(m: int, sign: int, n: int) -> list:
    if not 1 <= m <= n:
        raise ValueError(f"generator index {m} out of range")
    return [row[:] for row in _perm_cached(m, sign, n)]


def perm_rep_word(w: BraidWord) -> list:
    return matprod([_perm_cached(i, e, w.n) for i, e in w.letters], len(positive_roots(w.n)), LaurentQT)


def nine_case_table(k: int, n: int) -> list[tuple[tuple[int, int], dict]]:
    """Expected image of P_{ij} under both braid-relation words, per the case list."""
    rows = []
    for i, j in positive_roots(n):
        if i == k and j == k + 1:
            rows.append(((i, j), {(k + 1, k + 2): T ** 2 * Q ** -3}))
        elif i == k and j == k + 2:
            rows.append(((i, j), {(k, k + 2): T ** 2 * Q ** -2}))
        elif i == k and j > k + 2:
            rows.append(((i, j), {(k + 2, j): LaurentQT.one()}))
        elif i == k + 1 and j == k + 2:
            rows.append(((i, j), {(k, k + 1): T ** 2 * Q ** -3}))
        elif i == k + 1 and j > k + 2:
            rows.append(((i, j), {(k + 1, j): T * Q ** -1}))
        elif i == k + 2:
            rows.append(((i, j), {(k, j): T ** 2 * Q ** -2}))
        elif j == k:
            rows.append(((i, j), {(i, k + 2): T ** 2 * Q ** -2}))
        elif j == k + 1 and i < k:
            rows.append(((i, j), {(i, k + 1): T * Q ** -1}))
        elif j == k + 2 and i < k:
            rows.append(((i, j), {(i, k): LaurentQT.one()}))
    return rows


def verify_perm(n: int) -> list[Check]:
    out = []
    size = len(positive_roots(n))
    for m in range(1, n + 1):
        g = perm_rep_generator(m, -1, n)
        out.append(Check(f"perm s{m}^-1 generalized permutation n={n}", is_generalized_permutation(g)))
        out.append(_cmp(f"perm s{m} * s{m}^-1 = Id n={n}", matmul(perm_rep_generator(m, 1, n), g),
                        identity(size, LaurentQT)))
    from .stability import basis_tau_k
    for m in range(1, n + 1):
        src = basis_tau0(n) if m == 1 else basis_tau_k(n, m - 1)
        p, _ = ptau_matrix(BraidWord(n, ((m, -1),)), src)
        out.append(_cmp(f"perm s{m}^-1 table equals categorical action n={n}", perm_rep_generator(m, -1, n), p))
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if b == a + 1:
                for e in (1, -1):
                    w1 = BraidWord(n, ((a, e), (b, e), (a, e)))
                    w2 = BraidWord(n, ((b, e), (a, e), (b, e)))
                    out.append(_cmp(f"perm braid relation {w1} = {w2}", perm_rep_word(w1), perm_rep_word(w2)))
            else:
                w1 = BraidWord(n, ((a, 1), (b, 1)))
                w2 = BraidWord(n, ((b, 1), (a, 1)))
                out.append(_cmp(f"perm far commutation {w1} = {w2}", perm_rep_word(w1), perm_rep_word(w2)))
    for k in range(1, n):
        w1 = BraidWord(n, ((k, -1), (k + 1, -1), (k, -1)))
        w2 = BraidWord(n, ((k + 1, -1), (k, -1), (k + 1, -1)))
        m1, m2 = perm_rep_word(w1), perm_rep_word(w2)
        for r, expected in nine_case_table(k, n):
            c1, c2 = column(m1, n, r), column(m2, n, r)
            out.append(Check(f"nine-case k={k} P{r} n={n}", c1 == expected and c2 == expected,
                             f"{c1} / {c2} vs {expected}"))
    return out


# ---------------------------------------------------------------------------
# classical K0


def burau_matrix(w: BraidWord) -> list:
    """Classical class of w P_i expanded in the [P_j], over Z[q^+-1]."""
    from .complex import ProjComplex
    n = w.n
    m = zeros(n, n, LaurentQT)
    for i in range(1, n + 1):
        x = apply_word(w, ProjComplex.projective(n, i))
        for h, v, l in x.graded_summands():
            m[v - 1][i - 1] = m[v - 1][i - 1] + LaurentQT.monomial(l, 0, (-1) ** (h % 2))
    return m


# ---------------------------------------------------------------------------
# quotient / cone-component reading of the alpha exponents


def count_components(x) -> int:
    """Connected components of the differential graph of a reduced complex."""
    x = reduce(x)
    nodes = [(h, a) for h in x.degrees() for a in range(len(x.term(h)))]
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for h, mat in x.diffs.items():
        for (t, s), c in mat.items():
            if c:
                parent[find((h, s))] = find((h + 1, t))
    return len({find(v) for v in nodes})


def quotient_cone_exponents(basis: StableBasis) -> dict:
    """For each pair (P, P') with P' a quotient of P (up to shift), the component count
    of the cone of the shifted map P' -> P obtained by rotating the quotient triangle.

    Returns {(root of P, root of P'): component count} for P' != P.
    """
    from .stability import overlap_shifts
    out = {}
    for r, p in basis.members.items():
        for r2, p2 in basis.members.items():
            if r2 == r:
                continue
            for k, l in sorted(overlap_shifts(p, p2)):
                tgt = p2.shift(k, l)
                hs = hom(p, tgt)
                for f in hs.basis:
                    if _is_degree_zero_surjection(f):
                        # Cone(P -> P') is the suspended kernel; the cone of the rotated
                        # map P' -> P has the same indecomposable summands up to shift.
                        out[(r, r2)] = count_components(cone(f).cone)
                        break
                if (r, r2) in out:
                    break
    return out


def _is_degree_zero_surjection(f: ChainMap) -> bool:
    tgt = f.target
    for h in tgt.degrees():
        hit = set()
        for (t, s), c in f.comps.get(h, {}).items():
            if c and f.source.term(h)[s] == tgt.term(h)[t]:
                hit.add(t)
        if len(hit) != len(tgt.term(h)):
            return False
    return True


# ---------------------------------------------------------------------------
# action of s_k^-1 ... s_1^-1 on the tau_0 stables


def partial_gamma_expected(n: int, k: int, i: int, j: int) -> tuple[tuple[int, int], int, int]:
    """(root, k', l') with s_k^-1 ... s_1^-1 P^0_{ij} = P^k_root {k'}<l'>."""
    if i == 1:
        if k < j - 1:
            return (k + 1, j), 0, 0
        if k == j - 1:
            return (k, k + 1), 1, -2
        return (j - 1, k + 1), k - j + 2, j - k - 3
    if i <= k:
        return ((i - 1, j - 1) if j <= k + 1 else (i - 1, j)), 1, -1
    if i == k + 1:
        return (i - 1, j), 1, -1
    return (i, j), 0, 0


def verify_action_table(n: int) -> list[Check]:
    from .homotopy import is_isomorphic
    from .stability import stable_tau0, stable_tau_k
    out = []
    for k in range(1, n + 1):
        w = descending_inverse(n, k)
        for i, j in positive_roots(n):
            root, a, b = partial_gamma_expected(n, k, i, j)
            img = apply_word(w, stable_tau0(n, i, j))
            ref = (stable_tau0(n, *root) if k == n else stable_tau_k(n, k, *root)).shift(a, b)
            out.append(Check(f"action table n={n} k={k} P({i},{j})", is_isomorphic(img, ref),
                             f"expected P^{k}{root}{{{a}}}<{b}>"))
    return out


def verify_lkb_relations(n: int) -> list[Check]:
    out = []
    size = len(positive_roots(n))
    for k in range(1, n + 1):
        out.append(_cmp(f"lkb s{k} s{k}^-1 = Id n={n}",
                        matmul(lkb_generator(k, 1, n), lkb_generator(k, -1, n)), identity(size, LaurentXY)))
        for m in range(k + 1, n + 1):
            if m == k + 1:
                w1 = BraidWord(n, ((k, 1), (m, 1), (k, 1)))
                w2 = BraidWord(n, ((m, 1), (k, 1), (m, 1)))
            else:
                w1 = BraidWord(n, ((k, 1), (m, 1)))
                w2 = BraidWord(n, ((m, 1), (k, 1)))
            out.append(_cmp(f"lkb {w1} = {w2} n={n}", lkb_word(w1), lkb_word(w2)))
    return out


def verify_gamma_lkb(n: int) -> list[Check]:
    prod = lkb_word(BraidWord(n, tuple((i, 1) for i in range(n, 0, -1))))
    out = [_cmp(f"gamma LKB closed form n={n}", prod, gamma_lkb_closed_form(n))]
    col = column(prod, n, (1, 2))
    out.append(Check(f"gamma LKB e12 display n={n}", col == gamma_e12_display(n), str(col)))
    return out
