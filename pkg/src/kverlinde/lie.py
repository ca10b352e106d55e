"""Root data, lattices, Weyl groups and the finite subgroups T_l of the torus.

Weights are integer tuples in the fundamental-weight basis. The basic inner
product (long roots, equivalently short coroots, of squared length 2) is stored
as the Gram matrix of the fundamental weights.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .scalars import ExactField

__all__ = [
    "UnsupportedType",
    "RootDatum",
    "TorusPoint",
    "build_root_datum",
    "basic_pairing",
    "torus_points_Tl",
    "weyl_denominator",
    "TlEnumeration",
]

Weight = tuple[int, ...]


class UnsupportedType(ValueError):
    pass


# simple roots in fundamental-weight coordinates (rows), long roots flagged
_TABLES = {
    ("A", 1): ([[2]], [True]),
    ("A", 2): ([[2, -1], [-1, 2]], [True, True]),
    ("A", 3): ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [True] * 3),
    ("A", 4): ([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]], [True] * 4),
    # alpha_1 short, alpha_2 long
    ("C", 2): ([[2, -1], [-2, 2]], [False, True]),
    ("G", 2): ([[2, -1], [-3, 2]], [False, True]),
}
_LACING = {"A": 1, "C": 2, "G": 3}
_DUAL_COXETER = {("A", r): r + 1 for r in range(1, 5)} | {("C", 2): 3, ("G", 2): 4}


def _mat_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _matmul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def _det_int(m) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det_int([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


@dataclass(frozen=True, eq=False)
class RootDatum:
    type: str
    rank: int
    simple_roots: tuple[Weight, ...]
    simple_coroots: tuple[tuple[Fraction, ...], ...]
    root_norms: tuple[Fraction, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    rho: Weight
    dual_coxeter: int
    weyl: tuple[tuple[tuple[int, ...], ...], ...]
    weyl_lengths: tuple[int, ...]
    lattice_index: int
    pairing_denominator: int
    highest_root: Weight
    _weyl_inverse: tuple[int, ...] = field(repr=False)

    # -- basic data -------------------------------------------------------
    @property
    def label(self) -> str:
        return f"{self.type}{self.rank}"

    @property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @property
    def roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + tuple(tuple(-c for c in a) for a in self.positive_roots)

    @property
    def weyl_order(self) -> int:
        return len(self.weyl)

    def weyl_sign(self, i: int) -> int:
        return -1 if self.weyl_lengths[i] % 2 else 1

    def weyl_inverse(self, i: int) -> int:
        return self._weyl_inverse[i]

    @property
    def longest_element(self) -> int:
        return max(range(len(self.weyl)), key=lambda i: self.weyl_lengths[i])

    def act(self, i: int, lam) -> tuple:
        m = self.weyl[i]
        return tuple(sum(m[r][c] * lam[c] for c in range(self.rank)) for r in range(self.rank))

    @cached_property
    def gram_scaled(self) -> tuple[tuple[int, ...], ...]:
        """pairing_denominator * Gram matrix, an integer matrix."""
        return tuple(tuple(int(x * self.pairing_denominator) for x in row) for row in self.gram)

    def pairing(self, lam, mu) -> Fraction:
        g = self.gram
        return sum((Fraction(lam[p]) * g[p][q] * mu[q] for p in range(self.rank) for q in range(self.rank)), Fraction(0))

    def coroot(self, alpha: Weight) -> tuple[Fraction, ...]:
        n = self.pairing(alpha, alpha)
        return tuple(Fraction(2 * a) / n for a in alpha)

    def to_root_coords(self, lam) -> tuple[Fraction, ...]:
        inv = _root_coord_matrix(self)
        return tuple(sum(Fraction(lam[j]) * inv[j][i] for j in range(self.rank)) for i in range(self.rank))

    def in_coroot_lattice(self, lam) -> bool:
        """True iff lam (fundamental-weight coordinates) lies in the coroot lattice."""
        c = self.to_root_coords(lam)
        # eta = sum c_i alpha_i = sum (c_i * |alpha_i|^2 / 2) alpha_i^vee
        return all((ci * n / 2).denominator == 1 for ci, n in zip(c, self.root_norms))

    def dual_weight(self, lam: Weight) -> Weight:
        """Highest weight of the dual representation, -w0(lam)."""
        w0 = self.act(self.longest_element, lam)
        return tuple(-c for c in w0)

    def is_dominant(self, lam) -> bool:
        return all(c >= 0 for c in lam)

    def dominant_conjugate(self, lam) -> tuple[Weight, int]:
        """(dominant weight in the W-orbit of lam, index of some w with w*lam dominant)."""
        best = None
        for i in range(len(self.weyl)):
            mu = self.act(i, lam)
            if self.is_dominant(mu):
                best = (tuple(mu), i)
                break
        assert best is not None
        return best

    def weyl_dimension(self, lam: Weight) -> int:
        lr = tuple(a + b for a, b in zip(lam, self.rho))
        num = Fraction(1)
        for a in self.positive_roots:
            num *= self.pairing(lr, a) / self.pairing(self.rho, a)
        assert num.denominator == 1
        return int(num)

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "rank": self.rank,
            "cartan": [list(r) for r in self.simple_roots],
            "positive_roots": [list(r) for r in self.positive_roots],
            "rho": list(self.rho),
            "dual_coxeter": self.dual_coxeter,
            "weyl_order": self.weyl_order,
            "gram": [[str(x) for x in row] for row in self.gram],
        }


@lru_cache(maxsize=None)
def _root_coord_matrix(d: RootDatum):
    return _mat_inverse([[Fraction(x) for x in row] for row in d.simple_roots])


@lru_cache(maxsize=None)
def build_root_datum(type: str, rank: int) -> RootDatum:
    key = (type.upper(), int(rank))
    if key not in _TABLES:
        raise UnsupportedType(f"unsupported root datum {type}{rank}; supported: A1-A4, C2, G2")
    cartan, long = _TABLES[key]
    r = key[1]
    lacing = _LACING[key[0]]
    norms = tuple(Fraction(2) if lg else Fraction(2, lacing) for lg in long)
    inv = _mat_inverse([[Fraction(x) for x in row] for row in cartan])
    # <w_p, alpha_i> = delta_pi |alpha_i|^2/2 and w_q = sum_i inv[q][i] alpha_i
    gram = tuple(tuple(inv[q][p] * norms[p] / 2 for q in range(r)) for p in range(r))
    assert all(gram[p][q] == gram[q][p] for p in range(r) for q in range(r))
    coroots = tuple(tuple(Fraction(2 * x) / norms[i] for x in cartan[i]) for i in range(r))

    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    gens = []
    for i in range(r):
        # s_i(lam) = lam - lam_i * alpha_i
        gens.append(tuple(tuple(int(a == b) - (cartan[i][a] if b == i else 0) for b in range(r)) for a in range(r)))
    elems = [ident]
    lengths = [0]
    seen = {ident: 0}
    frontier = [ident]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for m in frontier:
            for s in gens:
                w = _matmul(s, m)
                if w not in seen:
                    seen[w] = len(elems)
                    elems.append(w)
                    lengths.append(depth)
                    nxt.append(w)
        frontier = nxt
    inverses = []
    for m in elems:
        for j, other in enumerate(elems):
            if _matmul(m, other) == ident:
                inverses.append(j)
                break

    roots = set()
    for m in elems:
        for a in cartan:
            roots.add(tuple(sum(m[x][y] * a[y] for y in range(r)) for x in range(r)))
    pos = []
    for a in roots:
        c = [sum(Fraction(a[j]) * inv[j][i] for j in range(r)) for i in range(r)]
        if all(x >= 0 for x in c):
            pos.append((sum(c), a))
    pos.sort(key=lambda t: (t[0], t[1]))
    positive = tuple(a for _, a in pos)
    highest = positive[-1]

    cogram = [[sum(coroots[i][p] * gram[p][q] * coroots[j][q] for p in range(r) for q in range(r)) for j in range(r)] for i in range(r)]
    index = _det_int([[int(x) for x in row] for row in cogram])

    den = 1
    for row in gram:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)

    return RootDatum(
        type=key[0],
        rank=r,
        simple_roots=tuple(tuple(row) for row in cartan),
        simple_coroots=coroots,
        root_norms=norms,
        gram=gram,
        positive_roots=positive,
        rho=tuple([1] * r),
        dual_coxeter=_DUAL_COXETER[key],
        weyl=tuple(elems),
        weyl_lengths=tuple(lengths),
        lattice_index=index,
        pairing_denominator=den,
        highest_root=highest,
        _weyl_inverse=tuple(inverses),
    )


def basic_pairing(d: RootDatum, lam, mu) -> Fraction:
    return d.pairing(lam, mu)


@dataclass(frozen=True)
class TorusPoint:
    """The element exp(lam / l) of the maximal torus, lam a weight."""

    lam: Weight
    ell: int
    regular: bool = True

    def conductor(self, d: RootDatum) -> int:
        return self.ell * d.pairing_denominator

    def exponent(self, d: RootDatum, mu) -> int:
        """Integer e with e^mu(g) = zeta_N^e, N = conductor."""
        row = _scaled_row(d, self.lam)
        return sum(a * b for a, b in zip(row, mu)) % self.conductor(d)

    def value(self, d: RootDatum, mu, field=None):
        field = field or ExactField(self.conductor(d))
        return field.root(self.exponent(d, mu))

    def act(self, d: RootDatum, w: int) -> TorusPoint:
        return TorusPoint(d.act(w, self.lam), self.ell, self.regular)


@lru_cache(maxsize=4096)
def _scaled_row(d: RootDatum, lam) -> tuple[int, ...]:
    g = d.gram_scaled
    return tuple(sum(lam[p] * g[p][q] for p in range(d.rank)) for q in range(d.rank))


def _hnf_upper(rows: list[list[int]]) -> list[list[int]]:
    """Upper-triangular Hermite normal form of a full-rank square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    for col in range(n):
        # euclid down the column until only the pivot row is nonzero
        while True:
            nz = [i for i in range(col, n) if a[i][col] != 0]
            piv = min(nz, key=lambda i: abs(a[i][col]))
            a[col], a[piv] = a[piv], a[col]
            done = True
            for i in range(col + 1, n):
                if a[i][col]:
                    q = a[i][col] // a[col][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[col])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if a[col][col] < 0:
            a[col] = [-x for x in a[col]]
    for col in range(n):
        for i in range(col):
            q = a[i][col] // a[col][col]
            a[i] = [x - q * y for x, y in zip(a[i], a[col])]
    return a


@dataclass
class TlEnumeration:
    ell: int
    order: int
    points: list[TorusPoint]
    representatives: list[TorusPoint]
    hnf: list[list[int]]

    def reduce(self, lam) -> Weight:
        """Canonical representative of lam modulo l * (coroot lattice)."""
        v = list(lam)
        for i, row in enumerate(self.hnf):
            q = v[i] // row[i]
            v = [x - q * y for x, y in zip(v, row)]
        return tuple(v)


def _is_regular(d: RootDatum, lam, ell: int) -> bool:
    return all((d.pairing(lam, a) % ell) != 0 for a in d.positive_roots)


def alcove_representatives(d: RootDatum, ell: int) -> list[TorusPoint]:
    """Regular points of T_l in exp(interior of the alcove), lexicographic order."""
    if ell < 1:
        return []
    out = []
    for lam in itertools.product(range(1, ell), repeat=d.rank):
        if d.pairing(lam, d.highest_root) < ell:
            out.append(TorusPoint(tuple(lam), ell, True))
    return out


def torus_points_Tl(d: RootDatum, ell: int, full: bool = True) -> TlEnumeration:
    """Enumerate T_l = l^-1 Lambda / Pi with regularity flags and orbit representatives.

    ``full=False`` skips listing every point (the representative set and the
    group order are still returned).
    """
    if ell < 1:
        raise ValueError("l must be a positive integer")
    basis = []
    for i in range(d.rank):
        row = [x * ell for x in d.simple_coroots[i]]
        assert all(x.denominator == 1 for x in row)
        basis.append([int(x) for x in row])
    h = _hnf_upper(basis)
    order = 1
    for i in range(d.rank):
        order *= h[i][i]
    points = []
    if full:
        for lam in itertools.product(*[range(h[i][i]) for i in range(d.rank)]):
            points.append(TorusPoint(tuple(lam), ell, _is_regular(d, lam, ell)))
    return TlEnumeration(ell, order, points, alcove_representatives(d, ell), h)


def weyl_denominator(d: RootDatum, g, field=None):
    """J(g) = sum_w (-1)^l(w) e^{w rho}(g) at a torus point or a jet."""
    from .series import Jet

    if isinstance(g, Jet):
        terms = [g.value(d.act(i, d.rho)) * d.weyl_sign(i) for i in range(d.weyl_order)]
    else:
        field = field or ExactField(g.conductor(d))
        return field.combine((g.exponent(d, d.act(i, d.rho)), d.weyl_sign(i)) for i in range(d.weyl_order))
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total
