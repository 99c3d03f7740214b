"""Stable bases, Harder-Narasimhan extraction, mass, thin triangles and K0 classes.

Phase model.  Each positive root r = (i, j) carries a charge Z(r) = v_i + ... + v_{j-1}
in the open upper half plane, hence a phase phi_r in (0, 1).  A stable S of the
reference basis lies in the heart (summands P_m{h}<l> with h + l = 0) and has phase
phi_r.  Shifting by {k}<l> changes the phase by -(k + l): the cone suspension {-1}
raises phases by one, and the combined shift {1}<-1> is phase neutral.  Transported
bases inherit phases through the braid action, which preserves phases.

Mass is kept as exact stable multiplicities, never as floating point numbers.
"""

from __future__ import annotations

import json
import os
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Iterable, Sequence

from .braid_action import BraidWord, apply_word, descending_inverse
from .complex import ChainMap, ProjComplex, cone
from .homotopy import hom, is_isomorphic, reduce, top_bidegree
from .ring import LaurentQT
from .zigzag import basis_exists

Root = tuple[int, int]

CHARGE_ENV = "ZLKB_CHARGE_FILE"


def positive_roots(n: int) -> list[Root]:
    return [(i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


# ---------------------------------------------------------------------------
# charges


@dataclass(frozen=True)
class ChargeParams:
    """Rational planar charges of the simple roots, in the open upper half plane."""

    vectors: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        n = len(self.vectors)
        if n < 1:
            raise ValueError("need at least one charge vector")
        for x, y in self.vectors:
            if y <= 0:
                raise ValueError(f"charge ({x}, {y}) is not in the open upper half plane")
        for a in range(n - 1):
            if _cross(self.vectors[a], self.vectors[a + 1]) >= 0:
                raise ValueError("simple-root phases must strictly decrease along the diagram")
        charges = [self.charge(r) for r in positive_roots(n)]
        for a in range(len(charges)):
            for b in range(a + 1, len(charges)):
                if _cross(charges[a], charges[b]) == 0:
                    raise ValueError("positive roots must have pairwise distinct phases")

    @property
    def n(self) -> int:
        return len(self.vectors)

    @classmethod
    def default(cls, n: int) -> "ChargeParams":
        """Points (-m, m^2 + 1/m): phases strictly decrease with m and stay generic."""
        return cls(tuple((Fraction(-m), Fraction(m * m) + Fraction(1, m)) for m in range(1, n + 1)))

    @classmethod
    def from_json(cls, data) -> "ChargeParams":
        vecs = data["vectors"] if isinstance(data, dict) else data
        return cls(tuple((Fraction(str(x)), Fraction(str(y))) for x, y in vecs))

    @classmethod
    def from_file(cls, path: str) -> "ChargeParams":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    @classmethod
    def load(cls, n: int, path: str | None = None) -> "ChargeParams":
        """Explicit path, else $ZLKB_CHARGE_FILE, else the default instance."""
        path = path if path not in (None, "default") else os.environ.get(CHARGE_ENV)
        params = cls.from_file(path) if path else cls.default(n)
        if params.n != n:
            raise ValueError(f"charge file has {params.n} vectors, expected {n}")
        return params

    def charge(self, r: Root) -> tuple[Fraction, Fraction]:
        i, j = r
        return (sum((self.vectors[m - 1][0] for m in range(i, j)), Fraction(0)),
                sum((self.vectors[m - 1][1] for m in range(i, j)), Fraction(0)))

    def phase_rank(self) -> dict[Root, int]:
        """Rank of each root's phase, 0 for the smallest."""
        roots = positive_roots(self.n)

        def cmp(a, b):
            c = _cross(self.charge(a), self.charge(b))
            return -1 if c > 0 else (1 if c < 0 else 0)

        return {r: k for k, r in enumerate(sorted(roots, key=cmp_to_key(cmp)))}


def _cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


# ---------------------------------------------------------------------------
# explicit stables


def stable_tau0(n: int, i: int, j: int) -> ProjComplex:
    """P_i -> P_{i+1} -> ... -> P_{j-1}, with P_m in bidegree (m-j+1, j-1-m)."""
    terms = {m - j + 1: [(m, j - 1 - m)] for m in range(i, j)}
    diffs = {m - j + 1: {(0, 0): 1} for m in range(i, j - 1)}
    return ProjComplex(n, terms, diffs)


def stable_tau_k(n: int, k: int, i: int, j: int) -> ProjComplex:
    """The stable P^k_{i,j}: arrows follow 1 -> ... -> k <- k+1 -> ... -> n."""
    if k == 0 or i >= k + 1 or j - 1 <= k:
        return stable_tau0(n, i, j)
    if j >= k + 3:
        hk, qk = k + 2 - j, j - k - 2
    else:
        hk, qk = 0, 0
    place: dict[int, tuple[int, int]] = {}
    for m in range(i, k + 1):
        place[m] = (hk - (k - m), qk + (k - m))
    for r in range(0, j - 1 - k):
        place[k + 1 + r] = (hk - 1 + r, qk + 1 - r)
    terms: dict[int, list] = {}
    index: dict[int, tuple[int, int]] = {}
    for m in sorted(place):
        h, q = place[m]
        index[m] = (h, len(terms.setdefault(h, [])))
        terms[h].append((m, q))
    diffs: dict[int, dict] = {}
    arrows = [(m, m + 1) for m in range(i, k)] + [(k + 1, k)] + \
             [(m, m + 1) for m in range(k + 1, j - 1)]
    for a, b in arrows:
        (ha, ia), (hb, ib) = index[a], index[b]
        assert hb == ha + 1
        diffs.setdefault(ha, {})[(ib, ia)] = 1
    return ProjComplex(n, terms, diffs)


def tau_k_members(n: int, k: int) -> dict[Root, ProjComplex]:
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 0..{n - 1}")
    return {(i, j): stable_tau_k(n, k, i, j) for i, j in positive_roots(n)}


def classical_class(x: ProjComplex) -> dict[int, LaurentQT]:
    """Class in the classical K0: sum of (-1)^h q^l [P_i]."""
    out: dict[int, LaurentQT] = {}
    for h, i, l in x.graded_summands():
        out[i] = out.get(i, LaurentQT.zero()) + LaurentQT.monomial(l, 0, (-1) ** (h % 2))
    return {i: c for i, c in out.items() if c}


def root_label(x: ProjComplex) -> tuple[Root, int]:
    """The positive root +-alpha_{ij} given by the classical class at q = -1."""
    vec = Counter()
    for h, i, l in x.graded_summands():
        vec[i] += (-1) ** ((h + l) % 2)
    support = sorted(i for i, c in vec.items() if c)
    if not support:
        raise ValueError("object has zero class at q=-1; not a shifted stable")
    i, j = support[0], support[-1] + 1
    sign = vec[i]
    if support != list(range(i, j)) or any(vec[m] != sign for m in support) or abs(sign) != 1:
        raise ValueError(f"class {dict(vec)} at q=-1 is not a root")
    return (i, j), sign


# ---------------------------------------------------------------------------
# stable bases


@dataclass
class StableBasis:
    n: int
    label: str
    members: dict[Root, ProjComplex]
    charge_root: dict[Root, Root]
    phase_offset: dict[Root, int]
    charges: ChargeParams
    word: BraidWord | None = None
    tau_k: int | None = None
    _rank: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._rank = self.charges.phase_rank()

    def phase_key(self, idx: Root, k: int = 0, l: int = 0) -> tuple[int, int]:
        """Sortable phase of members[idx]{k}<l>: (integer part, rank of fractional part)."""
        return (self.phase_offset[idx] - (k + l), self._rank[self.charge_root[idx]])

    def phase_value(self, idx: Root, k: int = 0, l: int = 0) -> float:
        """Phase as a float, for reports only."""
        import math
        x, y = self.charges.charge(self.charge_root[idx])
        return self.phase_offset[idx] - (k + l) + math.atan2(float(y), float(x)) / math.pi

    def key(self):
        return tuple(sorted((r, m.key()) for r, m in self.members.items()))

    def same_stables(self, other: "StableBasis") -> bool:
        """Same members up to isomorphism (no shift allowed)."""
        if self.members.keys() != other.members.keys():
            return False
        return all(self.members[r].key() == other.members[r].key()
                   or _match_up_to_shift(other.members[r], self.members[r]) == (0, 0)
                   for r in self.members)


def basis_tau0(n: int, charges: ChargeParams | None = None) -> StableBasis:
    charges = charges or ChargeParams.default(n)
    roots = positive_roots(n)
    return StableBasis(n, "tau0", {r: stable_tau0(n, *r) for r in roots}, {r: r for r in roots},
                       {r: 0 for r in roots}, charges, BraidWord(n, ()), 0)


def basis_tau_k(n: int, k: int, charges: ChargeParams | None = None) -> StableBasis:
    """The tau_k basis, reached from tau_0 by s_k^-1 ... s_1^-1."""
    b0 = basis_tau0(n, charges)
    if k == 0:
        return b0
    b = transport_basis(b0, descending_inverse(n, k))
    if b.tau_k != k:
        raise RuntimeError(f"transport to tau_{k} did not land on the tau_{k} stables")
    return b


def _match_up_to_shift(x: ProjComplex, s: ProjComplex) -> tuple[int, int] | None:
    sx, ss = x.graded_summands(), s.graded_summands()
    if len(sx) != len(ss) or sx[0][1] != ss[0][1]:
        return None
    k, l = sx[0][0] - ss[0][0], sx[0][2] - ss[0][2]
    shifted = s.shift(k, l)
    if shifted.graded_summands() != sx:
        return None
    return (k, l) if is_isomorphic(shifted, x, reduce_first=False) else None


def transport_basis(b: StableBasis, w: BraidWord) -> StableBasis:
    """Apply w to every member and renormalize shifts canonically.

    If the images are shifts of a tau_k basis those members are used.  Otherwise
    each image is shifted so its top homological degree, and the top quantum shift
    within it, sit at (0, 0).  Members are indexed by their root label.
    """
    n = b.n
    images = {idx: apply_word(w, s) for idx, s in b.members.items()}
    labels = {}
    for idx, img in images.items():
        r, _ = root_label(img)
        labels[idx] = r
    if sorted(labels.values()) != sorted(b.members):
        raise RuntimeError("transported stables do not biject onto positive roots")
    word = w * b.word if b.word is not None else None
    for k in range(n):
        ref = tau_k_members(n, k)
        shifts = {}
        for idx, img in images.items():
            m = _match_up_to_shift(img, ref[labels[idx]])
            if m is None:
                break
            shifts[idx] = m
        else:
            members = {labels[idx]: ref[labels[idx]] for idx in images}
            croot = {labels[idx]: b.charge_root[idx] for idx in images}
            off = {labels[idx]: b.phase_offset[idx] + sum(shifts[idx]) for idx in images}
            return StableBasis(n, f"tau{k}" if not w.letters else f"{b.label}|{w}", members, croot,
                               off, b.charges, word, k)
    members, croot, off = {}, {}, {}
    for idx, img in images.items():
        h, q = top_bidegree(img)
        r = labels[idx]
        members[r] = img.shift(-h, -q)
        croot[r] = b.charge_root[idx]
        off[r] = b.phase_offset[idx] + h + q
    return StableBasis(n, f"{b.label}|{w}", members, croot, off, b.charges, word, None)


# ---------------------------------------------------------------------------
# Harder-Narasimhan extraction


class HNError(RuntimeError):
    pass


@dataclass
class HNResult:
    factors: list[tuple[Root, int, int]]          # extracted (index, k, l) in extraction order
    phases: list[tuple[int, int]]
    refined: Counter
    aggregated: Counter
    k0: dict[Root, LaurentQT]


def _candidates(x: ProjComplex, b: StableBasis) -> set[tuple[Root, int, int]]:
    out = set()
    xs = x.graded_summands()
    for idx, s in b.members.items():
        for h, v, q in s.graded_summands():
            for h2, v2, q2 in xs:
                for d in range(3):
                    if basis_exists(b.n, v, v2, d):
                        out.add((idx, h2 - h, q2 - q + d))
    return out


def hn(x: ProjComplex, b: StableBasis, cap: int | None = None) -> HNResult:
    """Greedy extraction of HN stables, highest phase first."""
    x = reduce(x)
    cap = x.summand_count() if cap is None else cap
    factors = []
    steps = 0
    while not x.is_zero():
        if steps >= cap:
            raise HNError(f"iteration cap {cap} reached; input outside the algorithm's validity")
        steps += 1
        cands = sorted(_candidates(x, b), key=lambda c: b.phase_key(*c), reverse=True)
        for idx, k, l in cands:
            src = b.members[idx].shift(k, l)
            hs = hom(src, x)
            if hs.dimension:
                f = hs.basis[0]
                x = reduce(cone(f).cone)
                factors.append((idx, k, l))
                break
        else:
            raise HNError("no stable maps to a nonzero object")
    return _result(factors, b)


def _result(factors, b: StableBasis) -> HNResult:
    refined = Counter(factors)
    aggregated = Counter(idx for idx, _, _ in factors)
    k0: dict[Root, LaurentQT] = {}
    for idx, k, l in factors:
        k0[idx] = k0.get(idx, LaurentQT.zero()) + LaurentQT.monomial(l, k)
    k0 = {r: c for r, c in k0.items() if c}
    return HNResult(factors, [b.phase_key(*f) for f in factors], refined, aggregated, k0)


@lru_cache(maxsize=50_000)
def _hn_cached(x: ProjComplex, bkey, b_holder) -> HNResult:
    return hn(x, b_holder.basis)


class _Holder:
    """Hashable-by-identity wrapper used for caching per basis."""

    def __init__(self, basis):
        self.basis = basis


_holders: dict = {}


def hn_cached(x: ProjComplex, b: StableBasis) -> HNResult:
    key = (b.key(), tuple(sorted(b.phase_offset.items())), tuple(sorted(b.charge_root.items())),
           b.charges)
    holder = _holders.setdefault(key, _Holder(b))
    return _hn_cached(reduce(x), key, holder)


@dataclass
class MassVector:
    refined: Counter
    aggregated: Counter

    def __add__(self, other: "MassVector") -> "MassVector":
        return MassVector(self.refined + other.refined, self.aggregated + other.aggregated)

    def is_zero(self) -> bool:
        return not self.aggregated


def mass(x: ProjComplex, b: StableBasis) -> MassVector:
    r = hn_cached(x, b)
    return MassVector(Counter(r.refined), Counter(r.aggregated))


def k0_class(x: ProjComplex, b: StableBasis) -> dict[Root, LaurentQT]:
    return dict(hn_cached(x, b).k0)


def stable_k0(idx: Root, k: int, l: int) -> dict[Root, LaurentQT]:
    return {idx: LaurentQT.monomial(l, k)}


def classical_from_hn(r: HNResult, b: StableBasis) -> dict[int, LaurentQT]:
    """Classical class recomputed from the HN stables and their shifts."""
    out: dict[int, LaurentQT] = {}
    for idx, k, l in r.factors:
        for i, c in classical_class(b.members[idx]).items():
            term = c * LaurentQT.monomial(l, 0, (-1) ** (k % 2))
            out[i] = out.get(i, LaurentQT.zero()) + term
    return {i: c for i, c in out.items() if c}


# ---------------------------------------------------------------------------
# thin triangles


def thin_check(f: ChainMap, b: StableBasis) -> bool:
    """Is A -> B -> Cone(f) thin, i.e. aggregated m(B) = m(A) + m(Cone f)?"""
    ma = mass(f.source, b)
    mb = mass(f.target, b)
    mc = mass(cone(f).cone, b)
    return mb.aggregated == ma.aggregated + mc.aggregated


def identity_cone_map(x: ProjComplex) -> ChainMap:
    """The map x -> Cone(id_x) whose triangle x -> Cone(id_x) -> x{-1} has a zero middle term."""
    return cone(ChainMap.identity(x)).incl


@dataclass
class Triple:
    """A triangle A -> B -> C given by f: A -> B with C = Cone(f)."""

    f: ChainMap
    origin: str

    @property
    def a(self):
        return self.f.source

    @property
    def b(self):
        return self.f.target

    @property
    def c(self):
        return cone(self.f).cone


def _random_map(x: ProjComplex, y: ProjComplex, rng: random.Random) -> ChainMap | None:
    hs = hom(x, y)
    if not hs.basis:
        return None
    f = None
    for g in hs.basis:
        c = rng.choice([-1, 1, 2])
        g = g.scale(c)
        f = g if f is None else f + g
    return ChainMap(x, y, f.comps, check=False)


def overlap_shifts(x: ProjComplex, y: ProjComplex) -> set[tuple[int, int]]:
    """Shifts (k, l) for which a chain map x -> y{k}<l> can have a nonzero component."""
    out = set()
    for h, v, q in x.graded_summands():
        for h2, v2, q2 in y.graded_summands():
            for d in range(3):
                if basis_exists(x.n, v, v2, d):
                    out.add((h - h2, q - d - q2))
    return out


def _nonzero_map_into(x: ProjComplex, pool: Sequence[ProjComplex], rng: random.Random,
                      tries: int = 12) -> ChainMap | None:
    """A random nonzero chain map x -> y{k}<l> with y from the pool."""
    for _ in range(tries):
        y = rng.choice(pool)
        shifts = sorted(overlap_shifts(x, y))
        if not shifts:
            continue
        k, l = rng.choice(shifts)
        f = _random_map(x, y.shift(k, l), rng)
        if f is not None:
            return f
    return None


def _nonzero_map_from(pool: Sequence[ProjComplex], y: ProjComplex, rng: random.Random,
                      tries: int = 12) -> ChainMap | None:
    """A random nonzero chain map x{k}<l> -> y with x from the pool."""
    for _ in range(tries):
        x = rng.choice(pool)
        shifts = sorted(overlap_shifts(x, y))
        if not shifts:
            continue
        k, l = rng.choice(shifts)
        f = _random_map(x.shift(-k, -l), y, rng)
        if f is not None:
            return f
    return None


def sample_objects(n: int, b: StableBasis, count: int, seed: int, max_summands: int = 6) -> list[ProjComplex]:
    """Deterministic mixed family: shifted stables, braid images, sums and cones."""
    rng = random.Random(seed)
    roots = positive_roots(n)
    out: list[ProjComplex] = []
    seen = set()

    def keep(x):
        x = reduce(x)
        if x.is_zero() or x.summand_count() > max_summands or x in seen:
            return
        seen.add(x)
        out.append(x)

    for r in roots:
        keep(b.members[r])
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        kind = rng.randrange(4)
        if kind == 0:
            r = rng.choice(roots)
            keep(b.members[r].shift(rng.randint(-1, 1), rng.randint(-1, 1)))
        elif kind == 1:
            w = BraidWord(n, tuple((rng.randint(1, n), rng.choice([1, -1]))
                                   for _ in range(rng.randint(1, 3))))
            keep(apply_word(w, b.members[rng.choice(roots)]))
        elif kind == 2 and out:
            keep(rng.choice(out).direct_sum(rng.choice(out)))
        elif out:
            x, y = rng.choice(out), rng.choice(out)
            y = y.shift(rng.randint(-1, 1), rng.randint(-2, 1))
            f = _random_map(x, y, rng)
            if f is not None:
                keep(cone(f).cone)
    return out


def sample_thin_triangles(b: StableBasis, count: int, seed: int = 0,
                          objects: Sequence[ProjComplex] | None = None) -> list[Triple]:
    """HN steps, split triangles and thin random cones."""
    rng = random.Random(seed)
    objs = list(objects) if objects is not None else sample_objects(b.n, b, 30, seed)
    out: list[Triple] = []
    # HN steps: S -> X -> Cone
    for x in objs:
        r = hn_cached(x, b)
        cur = x
        for idx, k, l in r.factors:
            src = b.members[idx].shift(k, l)
            f = hom(src, cur).basis[0]
            out.append(Triple(f, "hn-step"))
            cur = reduce(cone(f).cone)
        if len(out) >= count // 3:
            break
    # split triangles A -> A + C -> C
    for _ in range(count // 4):
        a, c = rng.choice(objs), rng.choice(objs)
        s = a.direct_sum(c)
        inc = ChainMap(a, s, {h: {(i, i): 1 for i in range(len(a.term(h)))} for h in a.degrees()})
        out.append(Triple(inc, "split"))
    # random cones that happen to be thin
    tries = 0
    while len(out) < count and tries < 40 * count:
        tries += 1
        a = rng.choice(objs)
        y = rng.choice(objs).shift(rng.randint(-1, 1), rng.randint(-2, 1))
        f = _random_map(a, y, rng)
        if f is None:
            continue
        if thin_check(f, b):
            out.append(Triple(f, "random-cone"))
    return out


@dataclass
class AxiomReport:
    checked: int = 0
    et1: int = 0
    et1_dual: int = 0
    et4: int = 0
    et4_split_fallback: int = 0
    counterexamples: list = field(default_factory=list)
    precondition_violations: int = 0

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def _masses_add(b, whole, *parts) -> bool:
    total = Counter()
    for p in parts:
        total += mass(p, b).aggregated
    return mass(whole, b).aggregated == total


def check_et1(t: Triple, g: ChainMap, b: StableBasis) -> bool:
    """For g: A -> A', the triangle A' -> Cone(Sg o delta){1} -> C is thin."""
    tri = cone(t.f)
    delta = tri.proj                                   # C -> A{-1}
    sg = g.shift(-1, 0)                                # A{-1} -> A'{-1}
    e = cone(delta.then(sg)).cone.shift(1, 0)
    return _masses_add(b, e, g.target, tri.cone)


def check_et1_dual(t: Triple, g: ChainMap, b: StableBasis) -> bool:
    """For g: C' -> C, the triangle A -> Cone(delta o g){1} -> C' is thin."""
    tri = cone(t.f)
    comp = g.then(tri.proj)
    e = cone(comp).cone.shift(1, 0)
    return _masses_add(b, e, t.a, g.source)


def check_et4(f: ChainMap, g: ChainMap, b: StableBasis) -> bool:
    """Thin X -f-> Y -> Z' and Y -g-> Z -> X' give thin X -> Z -> Y' and Z' -> Y' -> X'."""
    z1 = cone(f).cone
    x1 = cone(g).cone
    y1 = reduce(cone(f.then(g)).cone)
    return _masses_add(b, g.target, f.source, y1) and _masses_add(b, y1, z1, x1)


def extriang_axiom_suite(b: StableBasis, samples: int = 100, seed: int = 0,
                         triangles: Sequence[Triple] | None = None) -> AxiomReport:
    rng = random.Random(seed)
    tris = list(triangles) if triangles is not None else sample_thin_triangles(b, samples, seed)
    objs = sample_objects(b.n, b, 20, seed + 1)
    rep = AxiomReport()
    for t in tris:
        rep.checked += 1
        if not thin_check(t.f, b):
            rep.precondition_violations += 1
            continue
        # ET1 with a sampled g: A -> A'
        g = _nonzero_map_into(t.a, objs, rng)
        if g is not None:
            if not check_et1(t, g, b):
                rep.counterexamples.append(("ET1", t.origin, t.f, g))
            rep.et1 += 1
        # the dual version with a sampled g: C' -> C
        tri = cone(t.f)
        red = reduce(tri.cone, track=True)
        if not red.reduced.is_zero():
            g = _nonzero_map_from(objs, red.reduced, rng)
            if g is not None:
                if not check_et1_dual(t, g.then(red.from_reduced), b):
                    rep.counterexamples.append(("ET1op", t.origin, t.f, g))
                rep.et1_dual += 1
        # ET4: a thin g: Y -> Z, falling back to a split inclusion Y -> Y + W
        g = None
        for _ in range(8):
            cand = _nonzero_map_into(t.b, objs, rng, tries=4)
            if cand is not None and thin_check(cand, b):
                g = cand
                break
        if g is None:
            w = rng.choice(objs)
            s = t.b.direct_sum(w)
            g = ChainMap(t.b, s, {h: {(i, i): 1 for i in range(len(t.b.term(h)))} for h in t.b.degrees()})
            rep.et4_split_fallback += 1
        if not check_et4(t.f, g, b):
            rep.counterexamples.append(("ET4", t.origin, t.f, g))
        rep.et4 += 1
    return rep


@dataclass
class PsiReport:
    checked: int = 0
    aggregated_ok: int = 0
    refined_ok: int = 0
    refined_failures: list = field(default_factory=list)
    aggregated_failures: list = field(default_factory=list)


def psi_check(tris: Iterable[Triple], b: StableBasis) -> PsiReport:
    """Compare JH(HN(B)) with JH(HN(A)) + JH(HN(C)), refined and per root."""
    rep = PsiReport()
    for t in tris:
        ma, mb, mc = mass(t.a, b), mass(t.b, b), mass(t.c, b)
        rep.checked += 1
        if mb.aggregated == ma.aggregated + mc.aggregated:
            rep.aggregated_ok += 1
        else:
            rep.aggregated_failures.append(t)
        if mb.refined == ma.refined + mc.refined:
            rep.refined_ok += 1
        else:
            rep.refined_failures.append(t)
    return rep
