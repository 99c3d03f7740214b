"""Bounded complexes of shifted graded projectives over the zigzag algebra.

A summand is a pair ``(i, l)`` meaning P_i<l>.  A complex stores, for each
homological degree h, a tuple of summands and a sparse matrix for the differential
C^h -> C^{h+1}: ``{(target_index, source_index): coefficient}``.  The coefficient
multiplies the unique basis path of the forced degree (see ``zlkb.zigzag``).

Shifts: ``X{k}`` moves degree h to h + k, ``X<l>`` adds l to every quantum shift,
and the triangulated shift is ``X[k] = X{k}<-k>``.  The differential of ``X{k}`` is
multiplied by (-1)^k.  With these conventions the mapping cone of f: X -> Y is
Y^h + X^{h+1}, so the suspension of the homotopy category is ``{-1}``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .zigzag import Basis, ZigzagElement, basis_exists, parse_path, path_name, structure_constant

Summand = tuple[int, int]  # (vertex, quantum shift)
Sparse = dict[tuple[int, int], Fraction]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def forced_path(s: Summand, t: Summand) -> Basis:
    return (s[0], t[0], s[1] - t[1])


def entry_allowed(n: int, s: Summand, t: Summand) -> bool:
    return basis_exists(n, s[0], t[0], s[1] - t[1])


def compose_sparse(n: int, src: tuple[Summand, ...], mid: tuple[Summand, ...],
                   tgt: tuple[Summand, ...], first: Mapping, second: Mapping) -> Sparse:
    """Matrix of (second o first) where first: src -> mid and second: mid -> tgt."""
    by_mid = defaultdict(list)
    for (u, t), c in second.items():
        by_mid[t].append((u, c))
    out: dict[tuple[int, int], Fraction] = {}
    for (t, s), c1 in first.items():
        for u, c2 in by_mid.get(t, ()):
            vs, ls = src[s]
            vt, lt = mid[t]
            vu, lu = tgt[u]
            mu = structure_constant(n, vs, vt, vu, ls - lt, lt - lu)
            if mu:
                out[(u, s)] = out.get((u, s), 0) + c1 * c2 * mu
    return {k: _norm(v) for k, v in out.items() if v}


class ProjComplex:
    """Immutable bounded complex of graded projective A_n-modules."""

    __slots__ = ("n", "_terms", "_diffs", "_key")

    def __init__(self, n: int, terms: Mapping[int, Iterable[Summand]] | None = None,
                 diffs: Mapping[int, Mapping[tuple[int, int], int | Fraction]] | None = None,
                 check: bool = True):
        self.n = n
        t = {}
        for h, lst in (terms or {}).items():
            lst = tuple((int(i), int(l)) for i, l in lst)
            if lst:
                t[int(h)] = lst
        d = {}
        for h, mat in (diffs or {}).items():
            clean = {(int(a), int(b)): _norm(c) for (a, b), c in mat.items() if c}
            if clean:
                d[int(h)] = clean
        self._terms = t
        self._diffs = d
        self._key = None
        if check:
            self._validate()

    def _validate(self) -> None:
        for i, l in self.summands():
            if not 1 <= i <= self.n:
                raise ValueError(f"vertex {i} out of range for A_{self.n}")
        for h, mat in self._diffs.items():
            src, tgt = self.term(h), self.term(h + 1)
            for (ti, si), c in mat.items():
                if si >= len(src) or ti >= len(tgt):
                    raise ValueError(f"differential entry ({ti},{si}) out of range in degree {h}")
                if not entry_allowed(self.n, src[si], tgt[ti]):
                    raise ValueError(
                        f"differential entry P{src[si]} -> P{tgt[ti]} in degree {h} is not homogeneous")

    # access ---------------------------------------------------------------
    def term(self, h: int) -> tuple[Summand, ...]:
        return self._terms.get(h, ())

    def diff(self, h: int) -> dict[tuple[int, int], Fraction]:
        return dict(self._diffs.get(h, {}))

    def degrees(self) -> list[int]:
        return sorted(self._terms)

    @property
    def terms(self) -> dict[int, tuple[Summand, ...]]:
        return dict(self._terms)

    @property
    def diffs(self) -> dict[int, dict]:
        return {h: dict(m) for h, m in self._diffs.items()}

    def summands(self) -> list[Summand]:
        return [s for h in self.degrees() for s in self._terms[h]]

    def graded_summands(self) -> list[tuple[int, int, int]]:
        """Sorted list of (h, vertex, quantum) triples."""
        return sorted((h, i, l) for h in self._terms for i, l in self._terms[h])

    def summand_count(self) -> int:
        return sum(len(v) for v in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def support(self) -> tuple[int, int] | None:
        if not self._terms:
            return None
        return min(self._terms), max(self._terms)

    def entry(self, h: int, t: int, s: int) -> ZigzagElement:
        c = self._diffs.get(h, {}).get((t, s), 0)
        if not c:
            return ZigzagElement(self.n)
        return ZigzagElement.basis(self.n, forced_path(self.term(h)[s], self.term(h + 1)[t]), c)

    def key(self):
        if self._key is None:
            self._key = (self.n, tuple(sorted(self._terms.items())),
                         tuple(sorted((h, tuple(sorted(m.items()))) for h, m in self._diffs.items())))
        return self._key

    def __eq__(self, other):
        return isinstance(other, ProjComplex) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"ProjComplex({self.describe()})"

    def describe(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for h in self.degrees():
            parts.append(f"{h}:[" + ", ".join(f"P{i}<{l}>" for i, l in self._terms[h]) + "]")
        return " ".join(parts)

    # structural checks ---------------------------------------------------
    def check_d_squared(self) -> bool:
        for h in self._diffs:
            if h + 1 not in self._diffs:
                continue
            sq = compose_sparse(self.n, self.term(h), self.term(h + 1), self.term(h + 2),
                                self._diffs[h], self._diffs[h + 1])
            if sq:
                return False
        return True

    def degree_compatible(self) -> bool:
        try:
            self._validate()
        except ValueError:
            return False
        return True

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "ProjComplex":
        return cls(n)

    @classmethod
    def projective(cls, n: int, i: int, k: int = 0, l: int = 0) -> "ProjComplex":
        """P_i{k}<l>."""
        return cls(n, {k: [(i, l)]})

    def shift(self, k: int = 0, l: int = 0) -> "ProjComplex":
        sign = -1 if k % 2 else 1
        terms = {h + k: [(i, q + l) for i, q in lst] for h, lst in self._terms.items()}
        diffs = {h + k: {key: sign * c for key, c in m.items()} for h, m in self._diffs.items()}
        return ProjComplex(self.n, terms, diffs, check=False)

    def triangulated_shift(self, k: int) -> "ProjComplex":
        return self.shift(k, -k)

    def suspend(self, m: int = 1) -> "ProjComplex":
        """Suspension of the homotopy category (the shift appearing in cones)."""
        return self.shift(-m, 0)

    def direct_sum(self, other: "ProjComplex") -> "ProjComplex":
        if self.n != other.n:
            raise ValueError("mismatched n")
        terms = {}
        offsets = {}
        for h in set(self._terms) | set(other._terms):
            a, b = self.term(h), other.term(h)
            terms[h] = a + b
            offsets[h] = len(a)
        diffs = {}
        for h in set(self._diffs) | set(other._diffs):
            m = dict(self._diffs.get(h, {}))
            oa, ob = offsets.get(h, 0), offsets.get(h + 1, 0)
            for (t, s), c in other._diffs.get(h, {}).items():
                m[(t + ob, s + oa)] = c
            diffs[h] = m
        return ProjComplex(self.n, terms, diffs, check=False)

    def __add__(self, other: "ProjComplex") -> "ProjComplex":
        return self.direct_sum(other)

    # serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        degrees = []
        for h in self.degrees():
            src, tgt = self.term(h), self.term(h + 1)
            mat = [[path_string(self, h, t, s) for s in range(len(src))] for t in range(len(tgt))]
            degrees.append({"k": h, "summands": [{"i": i, "l": l} for i, l in src], "dnext": mat})
        return {"n": self.n, "degrees": degrees}

    @classmethod
    def from_json(cls, data: Mapping) -> "ProjComplex":
        n = data["n"]
        terms = {d["k"]: [(s["i"], s["l"]) for s in d["summands"]] for d in data["degrees"]}
        diffs = {}
        for d in data["degrees"]:
            h = d["k"]
            mat = {}
            for t, row in enumerate(d.get("dnext", [])):
                for s, txt in enumerate(row):
                    c = _parse_entry(txt)
                    if c:
                        mat[(t, s)] = c
            diffs[h] = mat
        return cls(n, terms, diffs)


def path_string(x: ProjComplex, h: int, t: int, s: int) -> str:
    c = x._diffs.get(h, {}).get((t, s), 0)
    if not c:
        return "0"
    name = path_name(forced_path(x.term(h)[s], x.term(h + 1)[t]))
    return name if c == 1 else f"{c}*{name}"


def _parse_entry(txt: str):
    txt = txt.strip()
    if txt == "0":
        return 0
    if "*" in txt:
        c, name = txt.split("*", 1)
        parse_path(name)
        return Fraction(c)
    parse_path(txt)
    return 1


# ---------------------------------------------------------------------------
# chain maps


class ChainMap:
    """Degree (0,0) chain map between two complexes over the same algebra."""

    __slots__ = ("source", "target", "comps")

    def __init__(self, source: ProjComplex, target: ProjComplex,
                 comps: Mapping[int, Mapping[tuple[int, int], int | Fraction]] | None = None,
                 check: bool = True):
        if source.n != target.n:
            raise ValueError("source/target mismatch: different n")
        self.source = source
        self.target = target
        self.comps = {}
        for h, m in (comps or {}).items():
            clean = {(int(a), int(b)): _norm(c) for (a, b), c in m.items() if c}
            if clean:
                self.comps[int(h)] = clean
        if check:
            for h, m in self.comps.items():
                src, tgt = source.term(h), target.term(h)
                for (t, s) in m:
                    if s >= len(src) or t >= len(tgt) or not entry_allowed(source.n, src[s], tgt[t]):
                        raise ValueError(f"chain map entry ({t},{s}) invalid in degree {h}")

    @property
    def n(self) -> int:
        return self.source.n

    @classmethod
    def identity(cls, x: ProjComplex) -> "ChainMap":
        return cls(x, x, {h: {(s, s): 1 for s in range(len(x.term(h)))} for h in x.degrees()}, check=False)

    @classmethod
    def zero(cls, x: ProjComplex, y: ProjComplex) -> "ChainMap":
        return cls(x, y, {})

    def is_zero(self) -> bool:
        return not self.comps

    def is_chain_map(self) -> bool:
        x, y = self.source, self.target
        for h in set(x.degrees()) | set(y.degrees()):
            left = compose_sparse(self.n, x.term(h), y.term(h), y.term(h + 1),
                                  self.comps.get(h, {}), y.diff(h))
            right = compose_sparse(self.n, x.term(h), x.term(h + 1), y.term(h + 1),
                                   x.diff(h), self.comps.get(h + 1, {}))
            keys = set(left) | set(right)
            if any(left.get(k, 0) != right.get(k, 0) for k in keys):
                return False
        return True

    def then(self, other: "ChainMap") -> "ChainMap":
        """Composite other o self."""
        if other.source != self.target:
            raise ValueError("source/target mismatch in composition")
        comps = {}
        for h in self.comps:
            if h in other.comps:
                comps[h] = compose_sparse(self.n, self.source.term(h), self.target.term(h),
                                          other.target.term(h), self.comps[h], other.comps[h])
        return ChainMap(self.source, other.target, comps, check=False)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        comps = {h: dict(m) for h, m in self.comps.items()}
        for h, m in other.comps.items():
            d = comps.setdefault(h, {})
            for k, c in m.items():
                d[k] = d.get(k, 0) + c
        return ChainMap(self.source, self.target, comps, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target,
                        {h: {k: c * v for k, v in m.items()} for h, m in self.comps.items()}, check=False)

    def shift(self, k: int = 0, l: int = 0) -> "ChainMap":
        """The induced map X{k}<l> -> Y{k}<l> (no sign: both differentials flip alike)."""
        return ChainMap(self.source.shift(k, l), self.target.shift(k, l),
                        {h + k: dict(m) for h, m in self.comps.items()}, check=False)


@dataclass
class Triangle:
    """Y --incl--> Cone(f) --proj--> suspend(X), for f: X -> Y."""

    f: ChainMap
    cone: ProjComplex
    incl: ChainMap
    proj: ChainMap
    meta: dict = field(default_factory=dict)


def cone(f: ChainMap) -> Triangle:
    """Mapping cone: Cone^h = Y^h + X^{h+1}, differential [[d_Y, f], [0, -d_X]]."""
    x, y = f.source, f.target
    n = x.n
    degrees = set(y.degrees()) | {h - 1 for h in x.degrees()}
    terms, offs = {}, {}
    for h in degrees:
        terms[h] = y.term(h) + x.term(h + 1)
        offs[h] = len(y.term(h))
    diffs = {}
    for h in degrees:
        m = {}
        oy_src, oy_tgt = offs[h], offs.get(h + 1, len(y.term(h + 1)))
        for k, c in y.diff(h).items():
            m[k] = c
        for (t, s), c in f.comps.get(h + 1, {}).items():
            m[(t, s + oy_src)] = c
        for (t, s), c in x.diff(h + 1).items():
            m[(t + oy_tgt, s + oy_src)] = -c
        diffs[h] = m
    c = ProjComplex(n, terms, diffs, check=False)
    incl = ChainMap(y, c, {h: {(s, s): 1 for s in range(len(y.term(h)))} for h in y.degrees()}, check=False)
    sx = x.suspend()
    proj = ChainMap(c, sx, {h: {(s, s + offs[h]): 1 for s in range(len(sx.term(h)))}
                            for h in sx.degrees()}, check=False)
    return Triangle(f, c, incl, proj)
