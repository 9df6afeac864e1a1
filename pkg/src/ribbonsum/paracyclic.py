"""The paracyclic category as monotone equivariant maps of the integers.

The object <n> has n+1 points; its torsor is Z with the quotient map to
Z/(n+1).  A morphism <n> -> <m> is stored by its lift window
(f(0), ..., f(n)) and extended by f(x + n+1) = f(x) + m+1.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple, Union

from .exact_algebra import ZZ, BoundedComplex, Matrix, homology


class InvalidMorphism(ValueError):
    pass


@dataclass(frozen=True)
class ParaMorphism:
    source: int
    target: int
    lift: Tuple[int, ...]

    def __post_init__(self):
        n, m, f = self.source, self.target, self.lift
        if n < 0 or m < 0:
            raise InvalidMorphism("objects must have n >= 0")
        object.__setattr__(self, "lift", tuple(int(x) for x in f))
        f = self.lift
        if len(f) != n + 1:
            raise InvalidMorphism("lift of a map from <%d> needs %d values, got %d" % (n, n + 1, len(f)))
        if any(a > b for a, b in zip(f, f[1:])) or f[-1] > f[0] + m + 1:
            raise InvalidMorphism("lift %r is not monotone for <%d> -> <%d>" % (f, n, m))

    def __call__(self, x: int) -> int:
        q, r = divmod(x, self.source + 1)
        return self.lift[r] + q * (self.target + 1)

    def reduced(self, x: int) -> int:
        """Underlying map of cyclic sets."""
        return self(x) % (self.target + 1)

    def __repr__(self):
        return "<%d>->%s-><%d>" % (self.source, list(self.lift), self.target)


def identity(n: int) -> ParaMorphism:
    return ParaMorphism(n, n, tuple(range(n + 1)))


def shift(n: int, k: int = 1) -> ParaMorphism:
    """x -> x + k on <n>; k = n+1 is the period map."""
    return ParaMorphism(n, n, tuple(x + k for x in range(n + 1)))


def coface(n: int, i: int) -> ParaMorphism:
    """<n-1> -> <n> missing the point i."""
    if not 0 <= i <= n or n < 1:
        raise InvalidMorphism("coface index out of range")
    return ParaMorphism(n - 1, n, tuple(x if x < i else x + 1 for x in range(n)))


def codegeneracy(n: int, i: int) -> ParaMorphism:
    """<n+1> -> <n> hitting i twice."""
    if not 0 <= i <= n:
        raise InvalidMorphism("codegeneracy index out of range")
    return ParaMorphism(n + 1, n, tuple(x if x <= i else x - 1 for x in range(n + 2)))


def compose(g: ParaMorphism, f: ParaMorphism) -> ParaMorphism:
    """g o f."""
    if g.source != f.target:
        raise InvalidMorphism("cannot compose %r after %r" % (g, f))
    return ParaMorphism(f.source, g.target, tuple(g(y) for y in f.lift))


def interstice_dual(f: ParaMorphism) -> ParaMorphism:
    """Dual map on gaps; the gap between x and x+1 carries label x.

    dual(y) = min{x : f(x) >= y+1} - 1.
    """
    n, m = f.source, f.target
    out = []
    for y in range(m + 1):
        x = 0
        while f(x) >= y + 1:
            x -= n + 1
        while f(x) < y + 1:
            x += 1
        out.append(x - 1)
    return ParaMorphism(m, n, tuple(out))


def gaps_to_points(g: ParaMorphism) -> ParaMorphism:
    """Identify double gaps with points: the gap of gaps labelled x sits at x+1.

    With this identification interstice_dual is an involution:
    gaps_to_points(interstice_dual(interstice_dual(f))) == f.
    """
    return ParaMorphism(g.source, g.target, tuple(g(x - 1) + 1 for x in range(g.source + 1)))


def arc_map(f: ParaMorphism) -> Matrix:
    """Induced map on arc lattices, an m x n integer matrix.

    The arc lattice of <n> is spanned by arcs g_0..g_n with g_0+...+g_n = 0;
    g_0..g_{n-1} is the basis.
    """
    n, m = f.source, f.target
    cols = []
    for i in range(n):
        v = [0] * (m + 1)
        for t in range(f(i), f(i + 1)):
            v[t % (m + 1)] += 1
        last = v[m]
        cols.append([v[k] - last for k in range(m)])
    return Matrix(ZZ, m, n, [[cols[j][i] for j in range(n)] for i in range(m)])


# ---------------------------------------------------------------------------
# enumeration helpers


def all_morphisms(n: int, m: int) -> Iterator[ParaMorphism]:
    """Every morphism <n> -> <m> with f(0) in 0..m (one per period class)."""
    for f0 in range(m + 1):
        for rest in itertools.combinations_with_replacement(range(f0, f0 + m + 2), n):
            yield ParaMorphism(n, m, (f0,) + rest)


def random_morphism(rng: random.Random, n: int, m: int, spread: int = 3) -> ParaMorphism:
    f0 = rng.randint(-spread * (m + 1), spread * (m + 1))
    rest = sorted(rng.randint(f0, f0 + m + 1) for _ in range(n))
    return ParaMorphism(n, m, (f0,) + tuple(rest))


def generators(max_n: int):
    """Cofaces, codegeneracies and the two shifts on objects up to max_n."""
    out = []
    for n in range(max_n + 1):
        out.append(shift(n))
        out.append(shift(n, -1))
        if n >= 1:
            out.extend(coface(n, i) for i in range(n + 1))
        if n + 1 <= max_n:
            out.extend(codegeneracy(n, i) for i in range(n + 1))
    return out


# ---------------------------------------------------------------------------
# Segal conditions for the arc functor


def _sub_map(S: Sequence[int], T: Sequence[int]) -> ParaMorphism:
    """Inclusion of sub-ordinals S in T as a morphism <|S|-1> -> <|T|-1>."""
    pos = {t: k for k, t in enumerate(T)}
    return ParaMorphism(len(S) - 1, len(T) - 1, tuple(pos[s] for s in S))


def _is_pushout(f: ParaMorphism, g: ParaMorphism, p: ParaMorphism, q: ParaMorphism) -> bool:
    """Square A -f-> B -p-> D, A -g-> C -q-> D of arc lattices.

    It is a (homotopy) pushout iff A -> B+C -> D is exact with A injective and
    D reached, i.e. the three-term complex is acyclic.
    """
    if compose(p, f).target != compose(q, g).target:
        raise InvalidMorphism("square does not close")
    F, G, P, Q = arc_map(f), arc_map(g), arc_map(p), arc_map(q)
    a, b, c, d = F.cols, F.rows, G.rows, P.rows
    if P @ F != Q @ G:
        return False
    phi = Matrix.block([[F], [-G]], [b, c], [a])
    psi = Matrix.block([[P, Q]], [d], [b, c])
    C = BoundedComplex({2: a, 1: b + c, 0: d}, {2: phi, 1: psi}, ZZ)
    return not homology(C).groups


def one_segal_additivity(n: int) -> bool:
    """The n edge inclusions {k,k+1} -> <n> give an isomorphism Z^n -> A(<n>)."""
    cols = [arc_map(ParaMorphism(1, n, (k, k + 1))) for k in range(n)]
    M = Matrix.block([cols], [n], [1] * n) if n else Matrix.zeros(0, 0)
    C = BoundedComplex({1: n, 0: n}, {1: M}, ZZ)
    return not homology(C).groups


def segal_square_check(n: int, sub: Union[None, int, Tuple[int, int]] = None, kind: Optional[str] = None) -> bool:
    """Pushout test for one Segal square of the arc functor on <n>.

    kind '2segal' with sub=(i, j), 0 <= i < j <= n;
    kind 'unital' with sub=k, 0 <= k < n;
    kind '1segal' with sub=k, 0 < k < n, or sub=None for the additivity map.
    """
    if kind is None:
        kind = "2segal" if isinstance(sub, tuple) else ("1segal" if sub is None else "unital")
    full = list(range(n + 1))
    if kind == "2segal":
        i, j = sub
        if not 0 <= i < j <= n:
            raise ValueError("need 0 <= i < j <= n, got (%d, %d) for n = %d" % (i, j, n))
        inner = list(range(i, j + 1))
        outer = list(range(0, i + 1)) + list(range(j, n + 1))
        return _is_pushout(_sub_map([i, j], inner), _sub_map([i, j], outer),
                           _sub_map(inner, full), _sub_map(outer, full))
    if kind == "unital":
        k = sub
        if not 0 <= k < n:
            raise ValueError("need 0 <= k < n, got k = %d for n = %d" % (k, n))
        top = _sub_map([k, k + 1], full)
        collapse = ParaMorphism(1, 0, (0, 0))
        sigma = codegeneracy(n - 1, k)
        point = ParaMorphism(0, n - 1, (k,))
        return _is_pushout(top, collapse, sigma, point)
    if kind == "1segal":
        if sub is None:
            return one_segal_additivity(n)
        k = sub
        if not 0 < k < n:
            raise ValueError("need 0 < k < n, got k = %d for n = %d" % (k, n))
        left, right = list(range(k + 1)), list(range(k, n + 1))
        return _is_pushout(_sub_map([k], right), _sub_map([k], left),
                           _sub_map(right, full), _sub_map(left, full))
    raise ValueError("unknown Segal square kind %r" % kind)


def all_segal_squares(n: int):
    """(kind, sub) pairs covering every square on <n>."""
    out = [("1segal", None)]
    out += [("1segal", k) for k in range(1, n)]
    out += [("2segal", (i, j)) for i in range(n + 1) for j in range(i + 1, n + 1)]
    out += [("unital", k) for k in range(n)]
    return out
