"""Braid words and the action of B_{n+1} on complexes by spherical twists.

A word ``s_{i1}^{e1} ... s_{im}^{em}`` denotes the braid product in that order and
acts as a composite of functors, so the rightmost letter is applied first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .complex import ProjComplex
from .homotopy import is_isomorphic, reduce
from .zigzag import hom_basis, structure_constant

Letter = tuple[int, int]  # (generator index, +-1)


@dataclass(frozen=True)
class BraidWord:
    n: int  # the braid group is B_{n+1}
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for i, e in self.letters:
            if not 1 <= i <= self.n or e not in (1, -1):
                raise ValueError(f"letter s{i}^{e} out of range for B_{self.n + 1}")

    @classmethod
    def parse(cls, text: str, n: int) -> "BraidWord":
        """Parse comma separated tokens ``s1``, ``s2^-1``, ``garside``, ``garside^-1``."""
        letters: list[Letter] = []
        text = text.strip()
        if not text:
            return cls(n, ())
        pos = 0
        for token in text.split(","):
            tok = token.strip()
            m = re.fullmatch(r"s(\d+)(\^(-?1))?", tok)
            if m:
                i = int(m.group(1))
                e = int(m.group(3) or 1)
                if not 1 <= i <= n:
                    raise ValueError(f"generator {tok!r} out of range at position {pos}")
                letters.append((i, e))
            elif tok == "garside":
                letters.extend(garside(n).letters)
            elif tok == "garside^-1":
                letters.extend(garside(n).inverse().letters)
            else:
                raise ValueError(f"cannot parse braid token {tok!r} at position {pos}")
            pos += len(token) + 1
        return cls(n, tuple(letters))

    def __str__(self) -> str:
        return ",".join(f"s{i}" if e == 1 else f"s{i}^-1" for i, e in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError("mismatched braid groups")
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, m: int) -> "BraidWord":
        base = self if m >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(m))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def tilde(self) -> "BraidWord":
        """Invert every letter but keep the order."""
        return BraidWord(self.n, tuple((i, -e) for i, e in self.letters))


def garside(n: int) -> BraidWord:
    """s1 s2 ... sn."""
    return BraidWord(n, tuple((i, 1) for i in range(1, n + 1)))


def descending_inverse(n: int, k: int) -> BraidWord:
    """s_k^-1 ... s_1^-1 (acts by s_1^-1 first)."""
    return BraidWord(n, tuple((i, -1) for i in range(k, 0, -1)))


# ---------------------------------------------------------------------------
# twist functors


def _dual_degree(d: int) -> int:
    return 2 - d


def _twist_raw(i: int, sign: int, x: ProjComplex) -> ProjComplex:
    """Unreduced total complex of the twist bimodule complex tensored with x."""
    n = x.n
    # new summands: ("x", h, idx) and ("t", h, idx, basis) where basis spans e_i A e_j
    terms: dict[int, list] = {}
    ids: dict[int, list] = {}

    def add(h, key, summ):
        terms.setdefault(h, []).append(summ)
        ids.setdefault(h, []).append(key)

    tensor_shift = -1 if sign == 1 else 1
    qshift = 0 if sign == 1 else -2
    for h in x.degrees():
        for idx, (j, a) in enumerate(x.term(h)):
            add(h, ("x", h, idx), (j, a))
    for h in x.degrees():
        for idx, (j, a) in enumerate(x.term(h)):
            for d in range(3):
                for b in hom_basis(n, i, j, d):
                    add(h + tensor_shift, ("t", h, idx, b), (i, a + d + qshift))
    pos = {h: {key: k for k, key in enumerate(keys)} for h, keys in ids.items()}
    diffs: dict[int, dict] = {}

    def put(h, src_key, tgt_key, c):
        if not c:
            return
        m = diffs.setdefault(h, {})
        k = (pos[h + 1][tgt_key], pos[h][src_key])
        m[k] = m.get(k, 0) + c

    for h, mat in x.diffs.items():
        for (t, s), c in mat.items():
            put(h, ("x", h, s), ("x", h + 1, t), c)
            j, a = x.term(h)[s]
            j2, a2 = x.term(h + 1)[t]
            # e_i applied to d_X: (s, b) -> (t, b * path(j -> j2)), sign from the shift
            for d in range(3):
                for b in hom_basis(n, i, j, d):
                    mu = structure_constant(n, i, j, j2, d, a - a2)
                    if mu:
                        put(h + tensor_shift, ("t", h, s, b), ("t", h + 1, t, (i, j2, d + a - a2)),
                            -c * mu)
    for h in x.degrees():
        for idx, (j, a) in enumerate(x.term(h)):
            for d in range(3):
                for b in hom_basis(n, i, j, d):
                    if sign == 1:
                        # evaluation: P_i<a+d> -> P_j<a> by right multiplication with b
                        put(h - 1, ("t", h, idx, b), ("x", h, idx), 1)
                    else:
                        # coevaluation: P_j<a> -> P_i<a+d-2> by the dual basis element
                        put(h, ("x", h, idx), ("t", h, idx, b), 1)
    return ProjComplex(n, terms, diffs, check=True)


@lru_cache(maxsize=200_000)
def apply_generator(i: int, sign: int, x: ProjComplex) -> ProjComplex:
    """Apply the twist Sigma_i (sign +1) or its inverse (sign -1) and reduce."""
    if not 1 <= i <= x.n:
        raise ValueError(f"generator index {i} out of range for n={x.n}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return reduce(_twist_raw(i, sign, x))


def apply_word(w: BraidWord, x: ProjComplex) -> ProjComplex:
    """Apply the braid w (rightmost letter first), reducing after each letter."""
    if w.n != x.n:
        raise ValueError("braid word and complex use different n")
    x = reduce(x)
    for i, e in reversed(w.letters):
        x = apply_generator(i, e, x)
    return x


def words_act_equally(w1: BraidWord, w2: BraidWord, objects: Iterable[ProjComplex]) -> bool:
    return all(is_isomorphic(apply_word(w1, x), apply_word(w2, x), reduce_first=False)
               for x in objects)
