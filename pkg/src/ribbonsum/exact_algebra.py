"""Exact linear algebra over Euclidean domains.

Supported rings: the integers, the rationals, prime fields and univariate
polynomials in ``w`` over a prime field (or over the rationals).  Everything is
dense and exact; matrices here are small.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _snf_backend


class InvalidRing(ValueError):
    pass


class InvalidComplex(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# ring elements that need their own arithmetic


class Fp:
    """Element of the prime field Z/p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Fp):
            return other.v
        return other

    def __add__(self, o):
        return Fp(self.v + self._lift(o), self.p)

    __radd__ = __add__

    def __sub__(self, o):
        return Fp(self.v - self._lift(o), self.p)

    def __rsub__(self, o):
        return Fp(self._lift(o) - self.v, self.p)

    def __mul__(self, o):
        return Fp(self.v * self._lift(o), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in F_%d" % self.p)
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        o = o if isinstance(o, Fp) else Fp(o, self.p)
        return self * o.inverse()

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.v == o.v and self.p == o.p
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return str(self.v)


class Poly:
    """Polynomial in w with coefficients in a field; coefficients low to high."""

    __slots__ = ("c", "base")

    def __init__(self, coeffs: Iterable, base: "Ring"):
        c = [base.coerce(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)
        self.base = base

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def _wrap(self, o):
        if isinstance(o, Poly):
            return o
        return Poly([o], self.base)

    def __add__(self, o):
        o = self._wrap(o)
        n = max(len(self.c), len(o.c))
        z = self.base.zero
        return Poly(
            [(self.c[i] if i < len(self.c) else z) + (o.c[i] if i < len(o.c) else z) for i in range(n)],
            self.base,
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c], self.base)

    def __sub__(self, o):
        return self + (-self._wrap(o))

    def __rsub__(self, o):
        return self._wrap(o) - self

    def __mul__(self, o):
        o = self._wrap(o)
        if not self.c or not o.c:
            return Poly([], self.base)
        out = [self.base.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if not a:
                continue
            for j, b in enumerate(o.c):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.base)

    __rmul__ = __mul__

    def divmod(self, o: "Poly"):
        if not o.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [self.base.zero] * max(len(r) - len(o.c) + 1, 0)
        lead_inv = self.base.inverse(o.c[-1])
        while len(r) >= len(o.c) and r:
            k = len(r) - len(o.c)
            f = r[-1] * lead_inv
            q[k] = f
            for i, b in enumerate(o.c):
                r[k + i] = r[k + i] - f * b
            while r and not r[-1]:
                r.pop()
        return Poly(q, self.base), Poly(r, self.base)

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.c == o.c
        if isinstance(o, (int, Fraction, Fp)):
            return self.c == Poly([o], self.base).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else "w^%d" % i)
            if not mono:
                terms.append(str(a))
            elif a == self.base.one:
                terms.append(mono)
            else:
                terms.append("%s*%s" % (a, mono))
        return " + ".join(reversed(terms))


# ---------------------------------------------------------------------------
# rings


class Ring:
    name = "?"
    is_field = False

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def size(self, a) -> int:
        """Euclidean function; strictly decreases along remainders."""
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def normal_unit(self, a):
        """Unit u with u*a in normal form (positive / monic / one)."""
        raise NotImplementedError

    def inverse(self, u):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def fmt_module(self, rank: int, torsion: Sequence) -> str:
        parts = []
        if rank:
            parts.append(self.name if rank == 1 else "%s^%d" % (self.name, rank))
        for t in torsion:
            parts.append("%s/(%s)" % (self.name, t))
        return " + ".join(parts) if parts else "0"

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items(), key=repr))))

    def __repr__(self):
        return self.name


class Integers(Ring):
    name = "Z"

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError("%s is not an integer" % x)
            return x.numerator
        return int(x)

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        q, r = divmod(a, b)
        # keep remainders small in absolute value
        if r and 2 * abs(r) > abs(b):
            r -= b
            q += 1
        return q, r

    def normal_unit(self, a):
        return -1 if a < 0 else 1

    def inverse(self, u):
        if u not in (1, -1):
            raise ZeroDivisionError("%s is not a unit in Z" % u)
        return u

    def is_unit(self, a):
        return a in (1, -1)

    def fmt_module(self, rank, torsion):
        parts = []
        if rank:
            parts.append("Z" if rank == 1 else "Z^%d" % rank)
        parts.extend("Z/%d" % t for t in torsion)
        return " + ".join(parts) if parts else "0"


class Rationals(Ring):
    name = "Q"
    is_field = True

    def coerce(self, x):
        if isinstance(x, Fp):
            raise ValueError("cannot coerce a prime field element to Q")
        return Fraction(x)

    def size(self, a):
        return 0 if a == 0 else 1

    def divmod(self, a, b):
        return a / b, Fraction(0)

    def normal_unit(self, a):
        return 1 / a if a else Fraction(1)

    def inverse(self, u):
        return 1 / u

    def is_unit(self, a):
        return a != 0


class PrimeField(Ring):
    is_field = True

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise InvalidRing("modulus %r is not prime" % (p,))
        self.p = p

    @property
    def name(self):
        return "F%d" % self.p

    def coerce(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("mixed prime fields")
            return x
        if isinstance(x, Fraction):
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        return Fp(int(x), self.p)

    def size(self, a):
        return 0 if not a else 1

    def divmod(self, a, b):
        return a / b, self.zero

    def normal_unit(self, a):
        return a.inverse() if a else self.one

    def inverse(self, u):
        return self.coerce(u).inverse()

    def is_unit(self, a):
        return bool(a)


class PolynomialRing(Ring):
    """k[w] for k a prime field or the rationals."""

    def __init__(self, base: Ring):
        if not base.is_field:
            raise InvalidRing("polynomial coefficients must lie in a field")
        self.base = base

    @property
    def name(self):
        return "%s[w]" % self.base.name

    def coerce(self, x):
        if isinstance(x, Poly):
            return x
        return Poly([x], self.base)

    def monomial(self, deg: int, coeff=1):
        return Poly([0] * deg + [coeff], self.base)

    def size(self, a):
        return a.degree  # zero has size -1

    def divmod(self, a, b):
        return a.divmod(b)

    def normal_unit(self, a):
        if not a:
            return self.one
        return Poly([self.base.inverse(a.c[-1])], self.base)

    def inverse(self, u):
        if u.degree != 0:
            raise ZeroDivisionError("%s is not a unit" % u)
        return Poly([self.base.inverse(u.c[0])], self.base)

    def is_unit(self, a):
        return a.degree == 0

    def fmt_module(self, rank, torsion):
        k = self.base.name
        parts = []
        if rank:
            parts.append("%s[w]" % k if rank == 1 else "%s[w]^%d" % (k, rank))
        parts.extend("%s[w]/(%s)" % (k, t) for t in torsion)
        return " + ".join(parts) if parts else "0"


ZZ = Integers()
QQ = Rationals()


def parse_ring(code: str) -> Ring:
    """'z' -> integers, 'q' -> rationals, 'f<p>' -> prime field,
    suffix '[w]' -> polynomial ring over the given field."""
    code = code.strip().lower()
    if code.endswith("[w]"):
        return PolynomialRing(parse_ring(code[:-3]))
    if code == "z":
        return ZZ
    if code == "q":
        return QQ
    if code.startswith("f"):
        try:
            p = int(code[1:])
        except ValueError:
            raise InvalidRing("bad field code %r" % code) from None
        return PrimeField(p)
    raise InvalidRing("unknown ring %r" % code)


# ---------------------------------------------------------------------------
# matrices


class Matrix:
    """Dense immutable matrix over a ring."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, rows: int, cols: int, data=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero
            data = [[z] * cols for _ in range(rows)]
        data = tuple(tuple(ring.coerce(x) for x in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entry count does not match shape %dx%d" % (rows, cols))
        self.data = data

    @classmethod
    def from_rows(cls, rows, ring: Ring = ZZ, cols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def identity(cls, n: int, ring: Ring = ZZ):
        return cls(ring, n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, ring: Ring = ZZ):
        return cls(ring, rows, cols)

    @classmethod
    def block(cls, blocks, row_sizes, col_sizes, ring: Ring = ZZ):
        """Assemble from a grid of matrices (None means zero)."""
        z = ring.zero
        out = [[z] * sum(col_sizes) for _ in range(sum(row_sizes))]
        r0 = 0
        for bi, rs in enumerate(row_sizes):
            c0 = 0
            for bj, cs in enumerate(col_sizes):
                b = blocks[bi][bj]
                if b is not None:
                    if (b.rows, b.cols) != (rs, cs):
                        raise ValueError("block (%d,%d) has shape %dx%d, want %dx%d" % (bi, bj, b.rows, b.cols, rs, cs))
                    for i in range(rs):
                        for j in range(cs):
                            out[r0 + i][c0 + j] = b.data[i][j]
                c0 += cs
            r0 += rs
        return cls(ring, sum(row_sizes), sum(col_sizes), out)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def to_lists(self):
        return [list(r) for r in self.data]

    def change_ring(self, ring: Ring) -> "Matrix":
        if ring == self.ring:
            return self
        return Matrix(ring, self.rows, self.cols, self.data)

    def transpose(self):
        return Matrix(self.ring, self.cols, self.rows, [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        z = self.ring.zero
        ot = other.transpose().data
        out = []
        for row in self.data:
            line = []
            for col in ot:
                s = z
                for a, b in zip(row, col):
                    if a and b:
                        s = s + a * b
                line.append(s)
            out.append(line)
        return Matrix(self.ring, self.rows, other.cols, out)

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.ring, self.rows, self.cols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.ring, self.rows, self.cols,
                      [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix(self.ring, self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, c):
        return Matrix(self.ring, self.rows, self.cols, [[c * a for a in r] for r in self.data])

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return not any(a for r in self.data for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.data) == (other.rows, other.cols, other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "Matrix(%s, %dx%d, %r)" % (self.ring.name, self.rows, self.cols, [list(r) for r in self.data])


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    U: Matrix
    D: Matrix
    V: Matrix
    pivots: tuple

    @property
    def rank(self):
        return len(self.pivots)


def _diagonalize(A: List[list], m: int, n: int, ring: Ring, U=None, V=None):
    """In-place Smith reduction of the m x n list matrix A.

    Row operations are mirrored on U (m x m) and column operations on V
    (n x n) when given.  Returns the normalized pivots.
    """
    size = ring.size
    dm = ring.divmod

    def row_op(dst, src, q):  # row dst -= q * row src
        rs, rd = A[src], A[dst]
        for j in range(n):
            if rs[j]:
                rd[j] = rd[j] - q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] = ud[j] - q * us[j]

    def col_op(dst, src, q):  # col dst -= q * col src
        for i in range(m):
            a = A[i][src]
            if a:
                A[i][dst] = A[i][dst] - q * a
        if V is not None:
            for i in range(n):
                a = V[i][src]
                if a:
                    V[i][dst] = V[i][dst] - q * a

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = A[i][j]
                if a and (best is None or size(a) < best[0]):
                    best = (size(a), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            piv = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, _ = dm(A[i][t], piv)
                    row_op(i, t, q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q, _ = dm(A[t][j], piv)
                    col_op(j, t, q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/col t to the pivot slot
                cand = [(size(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(size(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand, key=lambda c: c[0])
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            # pivot must divide the remaining block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j]:
                        _, r = dm(A[i][j], piv)
                        if r:
                            bad = i
                            break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, bad, -ring.one)  # row t += row bad
        t += 1

    pivots = []
    for k in range(t):
        u = ring.normal_unit(A[k][k])
        if u != ring.one:
            A[k] = [u * a for a in A[k]]
            if U is not None:
                U[k] = [u * a for a in U[k]]
        pivots.append(A[k][k])
    return tuple(pivots)


def smith_normal_form(A: Matrix, ring: Optional[Ring] = None) -> SmithForm:
    """U @ A @ V == D with D diagonal and a divisibility chain of pivots."""
    ring = ring or A.ring
    if isinstance(ring, PrimeField) and not is_prime(ring.p):
        raise InvalidRing("modulus %r is not prime" % ring.p)
    A = A.change_ring(ring)
    m, n = A.rows, A.cols
    D = A.to_lists()
    U = Matrix.identity(m, ring).to_lists()
    V = Matrix.identity(n, ring).to_lists()
    piv = _diagonalize(D, m, n, ring, U, V)
    return SmithForm(Matrix(ring, m, m, U), Matrix(ring, m, n, D), Matrix(ring, n, n, V), piv)


def invariant_factors(A: Matrix, ring: Optional[Ring] = None) -> tuple:
    """Pivots of the Smith form without computing transforms."""
    ring = ring or A.ring
    A = A.change_ring(ring)
    if isinstance(ring, Integers):
        return tuple(_snf_backend.int_invariant_factors(A.rows, A.cols, [x for r in A.data for x in r]))
    D = A.to_lists()
    return _diagonalize(D, A.rows, A.cols, ring)


def rank(A: Matrix, ring: Optional[Ring] = None) -> int:
    return len(invariant_factors(A, ring))


def canonical_torsion(factors: Sequence, ring: Ring) -> tuple:
    """Merge a list of torsion orders into invariant-factor form."""
    factors = [ring.coerce(f) for f in factors if not ring.is_unit(ring.coerce(f))]
    if not factors:
        return ()
    k = len(factors)
    diag = Matrix(ring, k, k, [[factors[i] if i == j else 0 for j in range(k)] for i in range(k)])
    return tuple(p for p in invariant_factors(diag, ring) if not ring.is_unit(p))


# ---------------------------------------------------------------------------
# homology summaries and complexes


@dataclass(frozen=True)
class HomologySummary:
    """degree -> (free rank, torsion invariant factors), zero groups omitted."""

    ring: Ring
    groups: Tuple[Tuple[int, int, tuple], ...]

    @classmethod
    def from_dict(cls, ring: Ring, d: Dict[int, Tuple[int, Sequence]]):
        items = []
        for deg in sorted(d):
            r, tors = d[deg]
            tors = canonical_torsion(tors, ring)
            if r or tors:
                items.append((deg, r, tors))
        return cls(ring, tuple(items))

    def as_dict(self):
        return {d: (r, t) for d, r, t in self.groups}

    def rank(self, deg: int) -> int:
        return self.as_dict().get(deg, (0, ()))[0]

    def torsion(self, deg: int) -> tuple:
        return self.as_dict().get(deg, (0, ()))[1]

    def degrees(self):
        return [d for d, _, _ in self.groups]

    def shifted(self, k: int) -> "HomologySummary":
        return HomologySummary(self.ring, tuple((d + k, r, t) for d, r, t in self.groups))

    def restrict(self, degs: Iterable[int]) -> "HomologySummary":
        degs = set(degs)
        return HomologySummary(self.ring, tuple(g for g in self.groups if g[0] in degs))

    def direct_sum(self, other: "HomologySummary") -> "HomologySummary":
        acc: Dict[int, Tuple[int, list]] = {}
        for d, r, t in self.groups + other.groups:
            r0, t0 = acc.get(d, (0, []))
            acc[d] = (r0 + r, list(t0) + list(t))
        return HomologySummary.from_dict(self.ring, acc)

    def tensor_graded(self, ranks: Dict[int, int]) -> "HomologySummary":
        """Tensor with a graded free module given by degree -> rank."""
        acc: Dict[int, Tuple[int, list]] = {}
        for d, r, t in self.groups:
            for e, k in ranks.items():
                if not k:
                    continue
                r0, t0 = acc.get(d + e, (0, []))
                acc[d + e] = (r0 + r * k, list(t0) + list(t) * k)
        return HomologySummary.from_dict(self.ring, acc)

    def folded(self) -> "HomologySummary":
        """2-periodic folding: degrees reduced mod 2."""
        acc: Dict[int, Tuple[int, list]] = {}
        for d, r, t in self.groups:
            r0, t0 = acc.get(d % 2, (0, []))
            acc[d % 2] = (r0 + r, list(t0) + list(t))
        return HomologySummary.from_dict(self.ring, acc)

    def render(self, degs: Optional[Sequence[int]] = None, prefix: str = "H") -> str:
        d = self.as_dict()
        if degs is None:
            degs = sorted(d) or [0]
        return "; ".join(
            "%s%d=%s" % (prefix, k, self.ring.fmt_module(*d.get(k, (0, ())))) for k in degs
        )

    def __str__(self):
        return self.render()


class BoundedComplex:
    """Chain complex with d_n : C_n -> C_{n-1}; finitely many nonzero ranks."""

    def __init__(self, ranks: Dict[int, int], diffs: Dict[int, Matrix], ring: Ring = ZZ, check=True):
        self.ring = ring
        self.ranks = {d: r for d, r in ranks.items() if r}
        self.diffs = {}
        for n, M in diffs.items():
            if (M.rows, M.cols) != (self.rank(n - 1), self.rank(n)):
                raise InvalidComplex("d_%d has shape %dx%d, expected %dx%d"
                                     % (n, M.rows, M.cols, self.rank(n - 1), self.rank(n)))
            if M.rows and M.cols:
                self.diffs[n] = M.change_ring(ring)
        if check:
            self.check()

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def d(self, n: int) -> Matrix:
        if n in self.diffs:
            return self.diffs[n]
        return Matrix.zeros(self.rank(n - 1), self.rank(n), self.ring)

    def degrees(self):
        return sorted(self.ranks)

    def check(self):
        for n in self.diffs:
            if n - 1 in self.diffs:
                if not (self.diffs[n - 1] @ self.diffs[n]).is_zero():
                    raise InvalidComplex("d_%d o d_%d != 0" % (n - 1, n))

    def change_ring(self, ring: Ring) -> "BoundedComplex":
        return BoundedComplex(self.ranks, {n: M.change_ring(ring) for n, M in self.diffs.items()}, ring)


def homology(C: BoundedComplex, ring: Optional[Ring] = None) -> HomologySummary:
    ring = ring or C.ring
    if ring != C.ring:
        C = C.change_ring(ring)
    else:
        C.check()
    piv = {n: invariant_factors(M, ring) for n, M in C.diffs.items()}
    out = {}
    for n in C.degrees():
        out_rank = len(piv.get(n, ()))
        in_piv = piv.get(n + 1, ())
        free = C.rank(n) - out_rank - len(in_piv)
        tors = [p for p in in_piv if not ring.is_unit(p)]
        out[n] = (free, tors)
    return HomologySummary.from_dict(ring, out)


class ChainMap:
    """Degree-preserving map f_n : source_n -> target_n."""

    def __init__(self, source: BoundedComplex, target: BoundedComplex, comps: Dict[int, Matrix]):
        self.source = source
        self.target = target
        self.comps = {}
        ring = target.ring
        for n in set(source.ranks) | set(target.ranks):
            M = comps.get(n)
            if M is None:
                M = Matrix.zeros(target.rank(n), source.rank(n), ring)
            if (M.rows, M.cols) != (target.rank(n), source.rank(n)):
                raise InvalidComplex("f_%d has wrong shape" % n)
            self.comps[n] = M.change_ring(ring)

    def f(self, n: int) -> Matrix:
        if n in self.comps:
            return self.comps[n]
        return Matrix.zeros(self.target.rank(n), self.source.rank(n), self.target.ring)

    def is_chain_map(self) -> bool:
        degs = set(self.source.ranks) | set(self.target.ranks)
        for n in degs | {d + 1 for d in degs}:
            if self.target.d(n) @ self.f(n) != self.f(n - 1) @ self.source.d(n):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self o other."""
        degs = set(other.source.ranks) | set(self.target.ranks)
        return ChainMap(other.source, self.target, {n: self.f(n) @ other.f(n) for n in degs})


def cone(f: ChainMap) -> BoundedComplex:
    """Mapping cone: cone_n = target_n + source_{n-1},
    d = [[d_target, f], [0, -d_source]]."""
    if not f.is_chain_map():
        raise InvalidComplex("cone of a map that is not a chain map")
    S, T = f.source, f.target
    ring = T.ring
    degs = set(T.ranks) | {n + 1 for n in S.ranks}
    ranks = {n: T.rank(n) + S.rank(n - 1) for n in degs}
    diffs = {}
    for n in degs:
        if not ranks.get(n - 1):
            continue
        diffs[n] = Matrix.block(
            [[T.d(n), f.f(n - 1)], [None, -S.d(n - 1)]],
            [T.rank(n - 1), S.rank(n - 2)],
            [T.rank(n), S.rank(n - 1)],
            ring,
        )
    return BoundedComplex(ranks, diffs, ring)
