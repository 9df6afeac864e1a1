"""Scalar matrix factorizations of z^(n+1) and their Hom complexes.

Z2 mode works in Z/(n+1)-graded k[z]-modules.  A degree-0 map
k[z](s) -> k[z](t) is z^e0 * p(w) with e0 = (t - s) mod (n+1) and w = z^(n+1),
so every Hom space is free over k[w] and an entry is stored as p(w).

Z mode unfolds [i,j] into the chain X_m = k[z](a_m) with a_(2t) = i + (n+1)t,
a_(2t+1) = j + (n+1)t and maps z^(a_(m+1) - a_m).  A morphism of degree J is a
sequence of scalars f_m on X_m -> Y_(m+J) with f_(m+2) = f_m, so Hom^J has
dimension at most 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_algebra import (QQ, HomologySummary, Matrix, PolynomialRing, Poly, Ring, invariant_factors)
from .paracyclic import ParaMorphism


class MFError(ValueError):
    pass


Z2 = "z2"
ZMODE = "z"


@dataclass(frozen=True)
class ScalarMF:
    mode: str
    n: int
    i: int
    j: int
    tag: Optional[str] = None

    def __post_init__(self):
        if self.mode not in (Z2, ZMODE):
            raise MFError("mode must be 'z2' or 'z', got %r" % self.mode)
        if self.n < 0:
            raise MFError("n must be nonnegative")
        N = self.n + 1
        if self.mode == Z2:
            object.__setattr__(self, "i", self.i % N)
            object.__setattr__(self, "j", self.j % N)
            if self.i == self.j:
                if self.tag not in ("l", "r"):
                    raise MFError("[%d,%d] needs a tag l or r" % (self.i, self.j))
            elif self.tag is not None:
                raise MFError("tag %r only applies when i = j" % self.tag)
        else:
            if not 0 <= self.j - self.i <= N:
                raise MFError("Z mode needs 0 <= j - i <= %d, got [%d,%d]" % (N, self.i, self.j))
            if self.tag is not None:
                raise MFError("Z mode objects carry no tag")

    @property
    def exponent(self) -> int:
        """Power of z in the first factor."""
        if self.mode == ZMODE:
            return self.j - self.i
        if self.i == self.j:
            return 0 if self.tag == "r" else self.n + 1
        return (self.j - self.i) % (self.n + 1)

    def folded(self) -> "ScalarMF":
        """Z-mode object to its Z2 image."""
        if self.mode == Z2:
            return self
        e = self.j - self.i
        tag = None if 0 < e < self.n + 1 else ("r" if e == 0 else "l")
        return ScalarMF(Z2, self.n, self.i, self.j, tag)

    def __str__(self):
        s = "[%d,%d]" % (self.i, self.j)
        return s + ("_" + self.tag if self.tag else "")


# ---------------------------------------------------------------------------
# Z2 mode: homogeneous matrices over k[w]


@dataclass(frozen=True)
class GradedMap:
    """Degree-0 map between sums of twists; entry (r, c) means z^e0 * p(w)."""

    n: int
    src: Tuple[int, ...]
    tgt: Tuple[int, ...]
    entries: Tuple[Tuple[Poly, ...], ...]

    def e0(self, s: int, t: int) -> int:
        return (t - s) % (self.n + 1)

    @classmethod
    def zero(cls, n, src, tgt, base: Ring):
        z = Poly([], base)
        return cls(n, tuple(src), tuple(tgt), tuple(tuple(z for _ in src) for _ in tgt))

    @classmethod
    def from_powers(cls, n, src, tgt, powers, base: Ring):
        """Build from entries given as (coefficient, power of z) or None."""
        N = n + 1
        rows = []
        for r, t in enumerate(tgt):
            row = []
            for c, s in enumerate(src):
                item = powers[r][c]
                if item is None:
                    row.append(Poly([], base))
                    continue
                coeff, power = item
                e0 = (t - s) % N
                if power < 0 or (power - e0) % N:
                    raise MFError("z^%d is not a degree-0 map k[z](%d) -> k[z](%d)" % (power, s, t))
                row.append(Poly([0] * ((power - e0) // N) + [coeff], base))
            rows.append(tuple(row))
        return cls(n, tuple(src), tuple(tgt), tuple(rows))

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        """self o other."""
        if self.src != other.tgt:
            raise MFError("twist mismatch in composition")
        N = self.n + 1
        base_zero = Poly([], self._base(other))
        rows = []
        for r, t in enumerate(self.tgt):
            row = []
            for c, s in enumerate(other.src):
                acc = base_zero
                for l, mid in enumerate(self.src):
                    a, b = self.entries[r][l], other.entries[l][c]
                    if not a or not b:
                        continue
                    carry = (self.e0(mid, t) + self.e0(s, mid) - self.e0(s, t)) // N
                    term = a * b
                    if carry:
                        term = Poly([0] * carry + list(term.c), term.base)
                    acc = acc + term
                row.append(acc)
            rows.append(tuple(row))
        return GradedMap(self.n, other.src, self.tgt, tuple(rows))

    def _base(self, other):
        for m in (self, other):
            for row in m.entries:
                for x in row:
                    return x.base
        return QQ

    def __add__(self, other):
        return GradedMap(self.n, self.src, self.tgt, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self):
        return GradedMap(self.n, self.src, self.tgt, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not any(x for r in self.entries for x in r)

    def is_w_identity(self):
        if self.src != self.tgt:
            return False
        for r, row in enumerate(self.entries):
            for c, x in enumerate(row):
                if x != (Poly([0, 1], x.base) if r == c else Poly([], x.base)):
                    return False
        return True


@dataclass(frozen=True)
class MatrixFactorization:
    """X0 -d0-> X1 -d1-> X0 with d1 d0 = d0 d1 = w (Z2 mode)."""

    n: int
    tw0: Tuple[int, ...]
    tw1: Tuple[int, ...]
    d0: GradedMap
    d1: GradedMap
    base: Ring = QQ

    def __post_init__(self):
        if not ((self.d1 @ self.d0).is_w_identity() and (self.d0 @ self.d1).is_w_identity()):
            raise MFError("not a matrix factorization of z^%d" % (self.n + 1))


def as_factorization(X: ScalarMF, base: Ring = QQ) -> MatrixFactorization:
    if X.mode != Z2:
        raise MFError("only Z2-mode objects have a k[w]-factorization")
    e = X.exponent
    N = X.n + 1
    d0 = GradedMap.from_powers(X.n, [X.i], [X.j], [[(1, e)]], base)
    d1 = GradedMap.from_powers(X.n, [X.j], [X.i], [[(1, N - e)]], base)
    return MatrixFactorization(X.n, (X.i,), (X.j,), d0, d1, base)


@dataclass
class MFHomComplex:
    mode: str
    ring: Ring
    # Z2 mode: free ranks of Hom^0, Hom^1 and d0: Hom^0 -> Hom^1, d1: Hom^1 -> Hom^0
    ranks: Dict[int, int]
    diffs: Dict[int, Matrix]

    def d_squared_zero(self) -> bool:
        if self.mode == Z2:
            return (self.diffs[1] @ self.diffs[0]).is_zero() and (self.diffs[0] @ self.diffs[1]).is_zero()
        return all((self.diffs[J + 1] @ self.diffs[J]).is_zero() for J in self.diffs if J + 1 in self.diffs)


def _unit(n, src, tgt, r, c, base):
    rows = [[Poly([1] if (a, b) == (r, c) else [], base) for b in range(len(src))] for a in range(len(tgt))]
    return GradedMap(n, tuple(src), tuple(tgt), tuple(tuple(x) for x in rows))


def _blocks(X: MatrixFactorization, Y: MatrixFactorization, degree: int):
    """(source twists, target twists) of the components of Hom^degree."""
    if degree == 0:
        return [(X.tw0, Y.tw0), (X.tw1, Y.tw1)]
    return [(X.tw0, Y.tw1), (X.tw1, Y.tw0)]


def _basis(X, Y, degree, base):
    out = []
    for b, (s, t) in enumerate(_blocks(X, Y, degree)):
        for r in range(len(t)):
            for c in range(len(s)):
                out.append((b, r, c))
    return out


def _element(X, Y, degree, vec_index, base):
    blocks = _blocks(X, Y, degree)
    comps = [GradedMap.zero(X.n, s, t, base) for s, t in blocks]
    b, r, c = _basis(X, Y, degree, base)[vec_index]
    s, t = blocks[b]
    comps[b] = _unit(X.n, s, t, r, c, base)
    return comps


def _apply_d(X, Y, degree, f):
    """d(f) = d_Y f - (-1)^|f| f d_X, components as in _blocks."""
    f0, f1 = f
    if degree == 0:
        return [Y.d0 @ f0 - f1 @ X.d0, Y.d1 @ f1 - f0 @ X.d1]
    return [Y.d1 @ f0 + f1 @ X.d0, Y.d0 @ f1 + f0 @ X.d1]


def _coords(comps):
    return [x for m in comps for row in m.entries for x in row]


def _z2_hom(X: MatrixFactorization, Y: MatrixFactorization, base: Ring) -> MFHomComplex:
    if X.n != Y.n:
        raise MFError("objects live over different n")
    R = PolynomialRing(base)
    ranks = {deg: len(_basis(X, Y, deg, base)) for deg in (0, 1)}
    diffs = {}
    for deg in (0, 1):
        cols = []
        for k in range(ranks[deg]):
            cols.append(_coords(_apply_d(X, Y, deg, _element(X, Y, deg, k, base))))
        m = ranks[1 - deg]
        diffs[deg] = Matrix(R, m, ranks[deg], [[cols[c][r] for c in range(ranks[deg])] for r in range(m)])
    return MFHomComplex(Z2, R, ranks, diffs)


# ---------------------------------------------------------------------------
# Z mode


def _twists(X: ScalarMF, m: int) -> int:
    N = X.n + 1
    t, r = divmod(m, 2)
    return (X.i if r == 0 else X.j) + N * t


def _z_slots(X: ScalarMF, Y: ScalarMF, J: int) -> List[int]:
    """Residues m in {0, 1} whose map X_m -> Y_(m+J) is allowed."""
    return [m for m in (0, 1) if _twists(Y, m + J) - _twists(X, m) >= 0]


def _z_window(X: ScalarMF, Y: ScalarMF) -> Tuple[int, int]:
    """Degrees outside [lo, hi] have zero cohomology."""
    J = 0
    while _z_slots(X, Y, J):
        J -= 1
    lo = J
    J = lo + 1
    while not (len(_z_slots(X, Y, J - 1)) == 2 and len(_z_slots(X, Y, J)) == 2):
        J += 1
    return lo, J


def _z_hom(X: ScalarMF, Y: ScalarMF, base: Ring) -> MFHomComplex:
    lo, hi = _z_window(X, Y)
    ranks = {J: len(_z_slots(X, Y, J)) for J in range(lo, hi + 1)}
    diffs = {}
    for J in range(lo, hi + 1):
        src, tgt = _z_slots(X, Y, J), _z_slots(X, Y, J + 1)
        sign = -1 if J % 2 else 1
        rows = []
        for m in tgt:
            # d(f)_m = f_m - (-1)^J f_(m+1), indices mod 2
            row = []
            for s in src:
                v = (1 if s == m else 0) - (sign if s == (m + 1) % 2 else 0)
                row.append(v)
            rows.append(row)
        diffs[J] = Matrix(base, len(tgt), len(src), rows)
    return MFHomComplex(ZMODE, base, ranks, diffs)


def hom_complex(X, Y, base: Ring = QQ) -> MFHomComplex:
    """Hom complex between two objects of the same mode and n.

    Z2-mode arguments may be ScalarMF or MatrixFactorization (e.g. cones)."""
    if isinstance(X, ScalarMF) and isinstance(Y, ScalarMF):
        if X.mode != Y.mode:
            raise MFError("mode mismatch: %s vs %s" % (X.mode, Y.mode))
        if X.n != Y.n:
            raise MFError("n mismatch: %d vs %d" % (X.n, Y.n))
        if X.mode == ZMODE:
            if not base.is_field:
                raise MFError("Z mode needs a field")
            return _z_hom(X, Y, base)
    if isinstance(X, ScalarMF):
        if X.mode != Z2:
            raise MFError("mode mismatch")
        X = as_factorization(X, base)
    if isinstance(Y, ScalarMF):
        if Y.mode != Z2:
            raise MFError("mode mismatch")
        Y = as_factorization(Y, base)
    if X.n != Y.n:
        raise MFError("n mismatch: %d vs %d" % (X.n, Y.n))
    return _z2_hom(X, Y, base)


def cohomology_mf(H: MFHomComplex) -> HomologySummary:
    R = H.ring
    if H.mode == Z2:
        piv = {deg: invariant_factors(H.diffs[deg], R) for deg in (0, 1)}
        out = {}
        for deg in (0, 1):
            incoming = piv[1 - deg]
            free = H.ranks[deg] - len(piv[deg]) - len(incoming)
            out[deg] = (free, [p for p in incoming if not R.is_unit(p)])
        return HomologySummary.from_dict(R, out)
    piv = {J: len(invariant_factors(M, R)) for J, M in H.diffs.items()}
    out = {}
    for J, r in H.ranks.items():
        out[J] = (r - piv.get(J, 0) - piv.get(J - 1, 0), [])
    return HomologySummary.from_dict(R, out)


def field_dimensions(h: HomologySummary) -> Dict[int, int]:
    """k-dimension per degree; torsion k[w]/(p) contributes deg p.  Free
    k[w]-summands are infinite-dimensional and reported as -1."""
    out = {}
    for d, r, tors in h.groups:
        if r and isinstance(h.ring, PolynomialRing):
            out[d] = -1
        else:
            out[d] = r + sum(p.degree for p in tors if isinstance(p, Poly))
    return {d: v for d, v in out.items() if v}


# ---------------------------------------------------------------------------
# cones


def is_closed(X: MatrixFactorization, Y: MatrixFactorization, phi0: GradedMap, phi1: GradedMap) -> bool:
    return all(m.is_zero() for m in _apply_d(X, Y, 0, [phi0, phi1]))


def cone_mf(X, Y, phi0: GradedMap, phi1: GradedMap, base: Ring = QQ) -> MatrixFactorization:
    """Cone of a closed degree-0 morphism (phi0: X0 -> Y0, phi1: X1 -> Y1).

    C0 = Y0 + X1, C1 = Y1 + X0, d = [[d_Y, phi], [0, -d_X]]."""
    if isinstance(X, ScalarMF):
        X = as_factorization(X, base)
    if isinstance(Y, ScalarMF):
        Y = as_factorization(Y, base)
    if not is_closed(X, Y, phi0, phi1):
        raise MFError("cone of a morphism that is not closed")
    n = X.n
    tw0 = Y.tw0 + X.tw1
    tw1 = Y.tw1 + X.tw0
    d0 = _stack(n, tw0, tw1, [[Y.d0, phi1], [None, -X.d1]], base)
    d1 = _stack(n, tw1, tw0, [[Y.d1, phi0], [None, -X.d0]], base)
    return MatrixFactorization(n, tw0, tw1, d0, d1, base)


def _stack(n, src, tgt, blocks, base):
    rows = []
    for brow in blocks:
        height = len(next(b for b in brow if b is not None).tgt)
        for r in range(height):
            row = []
            for b, width in zip(brow, _widths(blocks)):
                if b is None:
                    row.extend(Poly([], base) for _ in range(width))
                else:
                    row.extend(b.entries[r])
            rows.append(tuple(row))
    return GradedMap(n, tuple(src), tuple(tgt), tuple(rows))


def _widths(blocks):
    out = []
    for c in range(len(blocks[0])):
        out.append(next(len(row[c].src) for row in blocks if row[c] is not None))
    return out


def canonical_morphism(n: int, i: int, j: int, base: Ring = QQ):
    """[0,i] -> [0,j] with phi0 = 1 and phi1 = z^(j-i), for 1 <= i <= j <= n."""
    if not 1 <= i <= j <= n:
        raise MFError("canonical morphism needs 1 <= i <= j <= n")
    X, Y = ScalarMF(Z2, n, 0, i), ScalarMF(Z2, n, 0, j)
    phi0 = GradedMap.from_powers(n, [0], [0], [[(1, 0)]], base)
    phi1 = GradedMap.from_powers(n, [i], [j], [[(1, j - i)]], base)
    return X, Y, phi0, phi1


def scalar_probes(n: int) -> List[ScalarMF]:
    N = n + 1
    out = []
    for i in range(N):
        for j in range(N):
            if i == j:
                out += [ScalarMF(Z2, n, i, i, "l"), ScalarMF(Z2, n, i, i, "r")]
            else:
                out.append(ScalarMF(Z2, n, i, j))
    return out


def probe_profile(X, n: int, base: Ring = QQ):
    """Cohomology of Hom(P, X) and Hom(X, P) over all scalar probes P."""
    out = []
    for P in scalar_probes(n):
        out.append((str(P), cohomology_mf(hom_complex(P, X, base)), cohomology_mf(hom_complex(X, P, base))))
    return out


def path_category_oracle(n: int, i: int, j: int, base: Ring = QQ) -> HomologySummary:
    """Hom in the path category A^n (objects 1..n): k in degree 0 iff i <= j.

    Over k[w] the one-dimensional space k is k[w]/(w)."""
    R = PolynomialRing(base)
    if i <= j:
        return HomologySummary.from_dict(R, {0: (0, [Poly([0, 1], base)])})
    return HomologySummary(R, ())


# ---------------------------------------------------------------------------
# object-level structure maps


def structure_map_on_objects(f: ParaMorphism, X: ScalarMF) -> ScalarMF:
    if X.mode != ZMODE:
        raise MFError("structure maps are defined on Z-mode objects")
    if X.n != f.source:
        raise MFError("object lives over <%d> but the morphism starts at <%d>" % (X.n, f.source))
    a, b = f(X.i), f(X.j)
    if not 0 <= b - a <= f.target + 1:
        raise MFError("image [%d,%d] violates 0 <= j - i <= %d" % (a, b, f.target + 1))
    return ScalarMF(ZMODE, f.target, a, b)


def parse_object(text: str, mode: str, n: int) -> ScalarMF:
    """'i,j' or 'i,j,l' / 'i,j,r'."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) not in (2, 3):
        raise MFError("object must be i,j or i,j,l|r: %r" % text)
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise MFError("object indices must be integers: %r" % text) from None
    tag = parts[2] if len(parts) == 3 else None
    if tag is not None and tag not in ("l", "r"):
        raise MFError("tag must be l or r: %r" % text)
    return ScalarMF(mode, n, i, j, tag)
