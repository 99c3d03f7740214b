"""Laurent polynomials in two variables with integer coefficients, and matrices over them.

Two concrete rings are used: ``LaurentQT`` (variables q, t) for the categorical side
and ``LaurentXY`` (variables x, y) for the LKB side.  ``xy_to_qt`` is the ring
isomorphism x -> t q^-1, y -> -t^-1.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import sympy
from sympy.polys.matrices import DomainMatrix


class Laurent:
    """Immutable element of Z[u^{+-1}, v^{+-1}], stored as {(a, b): coeff}."""

    names: tuple[str, str] = ("u", "v")
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                if c:
                    clean[(int(a), int(b))] = int(c)
        self._terms = clean
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({(0, 0): c})

    @classmethod
    def zero(cls) -> "Laurent":
        return cls()

    @classmethod
    def one(cls) -> "Laurent":
        return cls.const(1)

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 1) -> "Laurent":
        return cls({(a, b): c})

    @classmethod
    def gens(cls) -> tuple["Laurent", "Laurent"]:
        return cls.monomial(1, 0), cls.monomial(0, 1)

    # basic protocol -----------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def _coerce(self, other) -> "Laurent":
        if isinstance(other, Laurent):
            if type(other) is not type(self):
                raise TypeError(f"cannot mix {type(self).__name__} and {type(other).__name__}")
            return other
        if isinstance(other, int):
            return type(self).const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_unit():
                raise ValueError(f"{self} is not invertible in the Laurent ring")
            return self.inverse() ** (-e)
        result = type(self).one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Laurent":
        if not self.is_unit():
            raise ValueError(f"{self} is not invertible in the Laurent ring")
        ((a, b), c), = self._terms.items()
        return type(self)({(-a, -b): c})

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self).const(other)
        if not isinstance(other, Laurent) or type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_unit(self) -> bool:
        """True iff the element is +-1 times a single monomial."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coeff(self, a: int, b: int) -> int:
        return self._terms.get((a, b), 0)

    # text / json --------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        u, v = self.names
        parts = []
        for (a, b) in sorted(self._terms):
            c = self._terms[(a, b)]
            factors = []
            if a:
                factors.append(u if a == 1 else f"{u}^{a}")
            if b:
                factors.append(v if b == 1 else f"{v}^{b}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            elif c == -1:
                parts.append("-1*" + "*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list[dict]:
        u, v = self.names
        return [{f"{u}exp": a, f"{v}exp": b, "coeff": c} for (a, b), c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "Laurent":
        u, v = cls.names
        out: dict[tuple[int, int], int] = {}
        for item in data:
            k = (item[f"{u}exp"], item[f"{v}exp"])
            out[k] = out.get(k, 0) + item["coeff"]
        return cls(out)

    def to_sympy(self, u: sympy.Symbol, v: sympy.Symbol):
        return sum((c * u**a * v**b for (a, b), c in self._terms.items()), sympy.Integer(0))


class LaurentQT(Laurent):
    names = ("q", "t")
    __slots__ = ()


class LaurentXY(Laurent):
    names = ("x", "y")
    __slots__ = ()


def xy_to_qt(p: LaurentXY) -> LaurentQT:
    """x -> t q^-1, y -> -t^-1."""
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in p.terms.items():
        # x^a y^b = t^a q^-a (-1)^b t^-b
        k = (-a, a - b)
        out[k] = out.get(k, 0) + c * (-1) ** (b % 2)
    return LaurentQT(out)


def qt_to_xy(p: LaurentQT) -> LaurentXY:
    """Inverse substitution q -> -x^-1 y^-1, t -> -y^-1."""
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in p.terms.items():
        # q^a t^b = (-1)^a x^-a y^-a (-1)^b y^-b
        k = (-a, -a - b)
        out[k] = out.get(k, 0) + c * (-1) ** ((a + b) % 2)
    return LaurentXY(out)


def parse_laurent(text: str, cls: type[Laurent]) -> Laurent:
    """Parse the canonical text form produced by ``str``."""
    u, v = cls.names
    su, sv = sympy.symbols(f"{u} {v}")
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals={u: su, v: sv}))
    out: dict[tuple[int, int], int] = {}
    for term in sympy.Add.make_args(expr):
        c, rest = term.as_coeff_Mul()
        a = b = 0
        for f in sympy.Mul.make_args(rest):
            base, e = f.as_base_exp()
            if base == su:
                a += int(e)
            elif base == sv:
                b += int(e)
            elif f != 1:
                raise ValueError(f"unexpected factor {f} in {text!r}")
        if not c.is_integer:
            raise ValueError(f"non-integer coefficient in {text!r}")
        out[(a, b)] = out.get((a, b), 0) + int(c)
    return cls(out)


# ---------------------------------------------------------------------------
# matrices: lists of rows of Laurent elements

Matrix = list


def identity(size: int, cls: type[Laurent]) -> Matrix:
    return [[cls.one() if i == j else cls.zero() for j in range(size)] for i in range(size)]


def zeros(rows: int, cols: int, cls: type[Laurent]) -> Matrix:
    return [[cls.zero() for _ in range(cols)] for _ in range(rows)]


def matmul(a: Sequence[Sequence[Laurent]], b: Sequence[Sequence[Laurent]]) -> Matrix:
    if not a or len(a[0]) != len(b):
        raise ValueError("incompatible matrix shapes")
    cls = type(a[0][0])
    cols = len(b[0])
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = cls.zero()
            for k, x in enumerate(row):
                if x and b[k][j]:
                    acc = acc + x * b[k][j]
            new.append(acc)
        out.append(new)
    return out


def matprod(mats: Sequence[Matrix], size: int, cls: type[Laurent]) -> Matrix:
    result = identity(size, cls)
    for m in mats:
        result = matmul(result, m)
    return result


def mat_eq(a: Sequence[Sequence[Laurent]], b: Sequence[Sequence[Laurent]]) -> bool:
    return len(a) == len(b) and all(list(ra) == list(rb) for ra, rb in zip(a, b))


def mat_map(a: Sequence[Sequence[Laurent]], fn) -> Matrix:
    return [[fn(x) for x in row] for row in a]


def first_mismatch(a, b):
    """Return (i, j, a_ij, b_ij) for the first differing entry, or None."""
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return i, j, x, y
    return None


def is_generalized_permutation(a: Sequence[Sequence[Laurent]]) -> bool:
    """Exactly one nonzero entry per row and column, each a unit monomial."""
    size = len(a)
    cols = [0] * size
    for row in a:
        nz = [j for j, x in enumerate(row) if x]
        if len(nz) != 1 or not row[nz[0]].is_unit():
            return False
        cols[nz[0]] += 1
    return all(c == 1 for c in cols)


def inverse(a: Sequence[Sequence[Laurent]]) -> Matrix:
    """Inverse over the Laurent ring, computed in the fraction field.

    Raises ValueError if the matrix is singular or the inverse has an entry that
    is not a Laurent polynomial.
    """
    size = len(a)
    cls = type(a[0][0])
    if is_generalized_permutation(a):
        out = zeros(size, size, cls)
        for i, row in enumerate(a):
            for j, x in enumerate(row):
                if x:
                    out[j][i] = x.inverse()
        return out
    u, v = sympy.symbols(" ".join(cls.names))
    field = sympy.QQ.frac_field(u, v)
    rows = [[field.from_sympy(x.to_sympy(u, v)) for x in row] for row in a]
    dm = DomainMatrix(rows, (size, size), field)
    try:
        inv = dm.inv()
    except Exception as exc:  # sympy raises DMNonInvertibleMatrixError
        raise ValueError("matrix is not invertible") from exc
    out = []
    for row in inv.to_Matrix().tolist():
        new = []
        for entry in row:
            num, den = sympy.fraction(sympy.factor(entry))
            den_poly = sympy.Poly(den, u, v)
            if len(den_poly.terms()) != 1:
                raise ValueError(f"inverse entry {entry} is not a Laurent polynomial")
            (mexp, mc), = den_poly.terms()
            num_poly = sympy.Poly(sympy.expand(num), u, v)
            terms = {}
            for (ea, eb), c in num_poly.terms():
                q, r = divmod(int(c), int(mc))
                if r:
                    raise ValueError(f"inverse entry {entry} has non-integer coefficients")
                terms[(ea - mexp[0], eb - mexp[1])] = q
            new.append(cls(terms))
        out.append(new)
    return out


def matrix_to_json(a: Sequence[Sequence[Laurent]]) -> list[list[str]]:
    return [[str(x) for x in row] for row in a]
