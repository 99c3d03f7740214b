"""The type A_n zigzag algebra.

Paths are written left to right: a basis element ``(s, t, d)`` is the path of length
``d`` from vertex ``s`` to vertex ``t``.  The basis is

* ``e_i``            = (i, i, 0)
* arrow ``(i|j)``    = (i, j, 1) for |i - j| = 1
* loop ``l_i``       = (i, i, 2), equal to (i|i+1|i) and to (i|i-1|i)

and the product ``p * q`` is concatenation (nonzero only if ``p`` ends where ``q``
starts).  Every path of length three or more vanishes, as do the straight paths
(i|i+1|i+2) and (i+2|i+1|i).

Maps of graded left projectives: P_j<a> -> P_i<b> is right multiplication by an
element of e_j A e_i of path degree a - b.  Since each graded piece of e_j A e_i is
at most one dimensional, a homogeneous map between shifted indecomposables is
determined by one scalar; ``structure_constant`` gives the product rule for those
scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

Basis = tuple[int, int, int]  # (source, target, degree)


def basis_exists(n: int, s: int, t: int, d: int) -> bool:
    if not (1 <= s <= n and 1 <= t <= n):
        return False
    if d == 0 or d == 2:
        return s == t and (d == 0 or n >= 2)
    if d == 1:
        return abs(s - t) == 1
    return False


def basis_product(n: int, p: Basis, q: Basis) -> Basis | None:
    """Product of two basis paths, or None if it vanishes (coefficient is always 1)."""
    s1, t1, d1 = p
    s2, t2, d2 = q
    if t1 != s2:
        return None
    d = d1 + d2
    if d > 2:
        return None
    if d1 == 0:
        return q
    if d2 == 0:
        return p
    # two arrows
    if s1 == t2:
        return (s1, s1, 2)
    return None


def structure_constant(n: int, vs: int, vt: int, vu: int, d1: int, d2: int) -> int:
    """Coefficient c with b(vs->vt, d1) * b(vt->vu, d2) = c * b(vs->vu, d1+d2).

    Callers guarantee both factors exist.
    """
    if d1 + d2 > 2:
        return 0
    if d1 == 0 or d2 == 0:
        return 1
    return 1 if vs == vu else 0


def hom_basis(n: int, i: int, j: int, d: int) -> list[Basis]:
    """Basis of the degree-d part of e_i A e_j (paths from i to j of length d)."""
    return [(i, j, d)] if basis_exists(n, i, j, d) else []


def all_basis(n: int) -> list[Basis]:
    out = []
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            for d in range(3):
                out.extend(hom_basis(n, s, t, d))
    return out


def path_name(b: Basis) -> str:
    s, t, d = b
    if d == 0:
        return f"e{s}"
    if d == 1:
        return f"a({s},{t})"
    return f"l{s}"


def parse_path(text: str) -> Basis:
    text = text.strip()
    if text.startswith("e"):
        i = int(text[1:])
        return (i, i, 0)
    if text.startswith("l"):
        i = int(text[1:])
        return (i, i, 2)
    if text.startswith("a(") and text.endswith(")"):
        s, t = (int(x) for x in text[2:-1].split(","))
        return (s, t, 1)
    raise ValueError(f"cannot parse path {text!r}")


@dataclass(frozen=True)
class ZigzagElement:
    """Rational linear combination of basis paths of A_n."""

    n: int
    coeffs: tuple[tuple[Basis, Fraction], ...] = ()

    @classmethod
    def make(cls, n: int, terms: Mapping[Basis, int | Fraction]) -> "ZigzagElement":
        for b in terms:
            if not basis_exists(n, *b):
                raise ValueError(f"{b} is not a basis path of A_{n}")
        items = tuple(sorted((b, Fraction(c)) for b, c in terms.items() if c))
        return cls(n, items)

    @classmethod
    def basis(cls, n: int, b: Basis, c: int | Fraction = 1) -> "ZigzagElement":
        return cls.make(n, {b: c})

    def as_dict(self) -> dict[Basis, Fraction]:
        return dict(self.coeffs)

    def __iter__(self) -> Iterator[tuple[Basis, Fraction]]:
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "ZigzagElement") -> "ZigzagElement":
        _check_same(self, other)
        out = self.as_dict()
        for b, c in other.coeffs:
            out[b] = out.get(b, 0) + c
        return ZigzagElement.make(self.n, out)

    def __neg__(self) -> "ZigzagElement":
        return ZigzagElement(self.n, tuple((b, -c) for b, c in self.coeffs))

    def __sub__(self, other: "ZigzagElement") -> "ZigzagElement":
        return self + (-other)

    def scale(self, c: int | Fraction) -> "ZigzagElement":
        return ZigzagElement.make(self.n, {b: c * v for b, v in self.coeffs})

    def __mul__(self, other: "ZigzagElement") -> "ZigzagElement":
        return zz_mul(self, other)

    def degrees(self) -> set[int]:
        return {b[2] for b, _ in self.coeffs}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for b, c in self.coeffs:
            parts.append(path_name(b) if c == 1 else f"{c}*{path_name(b)}")
        return " + ".join(parts)


def _check_same(a: ZigzagElement, b: ZigzagElement) -> None:
    if a.n != b.n:
        raise ValueError(f"mismatched algebras A_{a.n} and A_{b.n}")


def zz_mul(a: ZigzagElement, b: ZigzagElement) -> ZigzagElement:
    _check_same(a, b)
    out: dict[Basis, Fraction] = {}
    for p, c1 in a.coeffs:
        for q, c2 in b.coeffs:
            r = basis_product(a.n, p, q)
            if r is not None:
                out[r] = out.get(r, 0) + c1 * c2
    return ZigzagElement.make(a.n, out)


def graded_dimension(n: int, i: int, j: int) -> dict[int, int]:
    return {d: len(hom_basis(n, i, j, d)) for d in range(3) if hom_basis(n, i, j, d)}
