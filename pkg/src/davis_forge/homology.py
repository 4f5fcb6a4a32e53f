"""Chain complexes and exact (co)homology over the integers or a prime field."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from . import linalg
from .complex import SimplicialComplex, is_subcomplex
from .errors import InputError, VerificationError
from .linalg import IntMatrix


# -- coefficients --------------------------------------------------------------

@dataclass(frozen=True)
class Coefficients:
    """``p == 0`` means the integers, otherwise the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p and not linalg.is_prime(self.p):
            raise InputError("NOT_PRIME", f"{self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.p != 0

    def __str__(self):
        return f"F_{self.p}" if self.p else "Z"


INTEGERS = Coefficients(0)


def as_coefficients(coeffs) -> Coefficients:
    if coeffs is None:
        return INTEGERS
    if isinstance(coeffs, Coefficients):
        return coeffs
    return Coefficients(int(coeffs))


# -- group summaries -----------------------------------------------------------

def _prime_powers(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            q = 1
            while n % f == 0:
                n //= f
                q *= f
            out.append(q)
        f += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class GroupSummary:
    """A finitely generated abelian group Z^betti + (+) Z/d_i."""

    betti: int = 0
    torsion: tuple = ()

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def elementary_divisors(self) -> list:
        return sorted(q for d in self.torsion for q in _prime_powers(d))

    def is_summand_of(self, other: "GroupSummary") -> bool:
        """Whether this group is isomorphic to a direct summand of ``other``."""
        if self.betti > other.betti:
            return False
        mine, theirs = Counter(self.elementary_divisors()), Counter(other.elementary_divisors())
        return all(theirs[q] >= k for q, k in mine.items())

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        for d, k in sorted(Counter(self.torsion).items()):
            parts.append(f"Z/{d}" if k == 1 else f"(Z/{d})^{k}")
        return " + ".join(parts) or "0"


ZERO = GroupSummary()


@dataclass(frozen=True)
class HomologySummary:
    groups: Mapping  # degree -> GroupSummary
    coefficients: Coefficients = INTEGERS
    cohomological: bool = False

    def __getitem__(self, k: int) -> GroupSummary:
        return self.groups.get(k, ZERO)

    def nonzero(self) -> dict:
        return {k: g for k, g in sorted(self.groups.items()) if not g.is_zero()}

    def is_zero(self) -> bool:
        return not self.nonzero()

    def same_groups(self, other: "HomologySummary") -> bool:
        return self.nonzero() == other.nonzero()

    def betti(self) -> dict:
        return {k: g.betti for k, g in sorted(self.groups.items())}

    def to_json(self) -> list:
        return [
            {"degree": k, "betti": g.betti, "torsion": list(g.torsion)}
            for k, g in sorted(self.groups.items())
        ]

    def __str__(self):
        sym = "H^" if self.cohomological else "H_"
        return ", ".join(f"{sym}{k}={g}" for k, g in sorted(self.groups.items()))


# -- chain complexes -----------------------------------------------------------

@dataclass(frozen=True)
class ChainComplex:
    """Graded free abelian groups with boundary maps ``d[k]: C_k -> C_{k-1}``.

    ``bases[k]`` lists the basis labels in degree ``k`` for ``lo <= k <= hi``;
    ``d`` holds the matrices for ``lo < k <= hi``.  The constructor checks
    shapes and that consecutive boundaries compose to zero.
    """

    lo: int
    hi: int
    bases: Mapping = field(repr=False)
    d: Mapping = field(repr=False)
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not self.check:
            return
        for k in range(self.lo + 1, self.hi + 1):
            M = self.boundary(k)
            if M.shape != (self.dim(k - 1), self.dim(k)):
                raise InputError("SHAPE_MISMATCH", f"boundary {k} has shape {M.shape}")
        for k in range(self.lo + 2, self.hi + 1):
            if not (self.boundary(k - 1) @ self.boundary(k)).is_zero():
                raise VerificationError("NOT_A_COMPLEX", f"d{k - 1} d{k} != 0")

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def basis(self, k: int) -> tuple:
        return tuple(self.bases.get(k, ()))

    def dim(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def boundary(self, k: int) -> IntMatrix:
        M = self.d.get(k)
        return M if M is not None else IntMatrix.zeros(self.dim(k - 1), self.dim(k))

    @cached_property
    def _index(self) -> dict:
        return {k: {b: i for i, b in enumerate(self.basis(k))} for k in self.degrees()}

    def index(self, k: int) -> dict:
        return self._index.get(k, {})

    def total_rank(self) -> int:
        return sum(self.dim(k) for k in self.degrees())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * self.dim(k) for k in self.degrees())

    def is_zero(self) -> bool:
        return self.total_rank() == 0

    def _split(self, labels: Mapping):
        keep = {k: set(labels.get(k, ())) for k in self.degrees()}
        for k in self.degrees():
            unknown = keep[k].difference(self.basis(k))
            if unknown:
                raise InputError("NOT_SUBCOMPLEX", f"unknown cells in degree {k}")
        for k in range(self.lo + 1, self.hi + 1):
            idx = self.index(k)
            below = self.basis(k - 1)
            for b in keep[k]:
                for i, _ in self.boundary(k).data[idx[b]]:
                    if below[i] not in keep[k - 1]:
                        raise InputError("NOT_SUBCOMPLEX", f"boundary of {b!r} leaves the subcomplex")
        return keep

    def subcomplex(self, labels: Mapping) -> "ChainComplex":
        keep = self._split(labels)
        pos = {k: [i for i, b in enumerate(self.basis(k)) if b in keep[k]] for k in self.degrees()}
        return self._restrict(pos)

    def quotient(self, labels: Mapping) -> "ChainComplex":
        """Quotient by the subcomplex spanned by ``labels`` (per degree)."""
        keep = self._split(labels)
        pos = {k: [i for i, b in enumerate(self.basis(k)) if b not in keep[k]] for k in self.degrees()}
        return self._restrict(pos)

    def _restrict(self, pos: Mapping) -> "ChainComplex":
        bases = {k: tuple(self.basis(k)[i] for i in pos[k]) for k in self.degrees()}
        d = {k: self.boundary(k).select(pos[k - 1], pos[k]) for k in range(self.lo + 1, self.hi + 1)}
        return ChainComplex(self.lo, self.hi, bases, d, check=False)

    def dual(self) -> "ChainComplex":
        """The cochain complex, regraded as a chain complex in degree ``-k``."""
        bases = {-k: self.basis(k) for k in self.degrees()}
        d = {-k + 1: self.boundary(k).T for k in range(self.lo + 1, self.hi + 1)}
        return ChainComplex(-self.hi, -self.lo, bases, d, check=False)


def chain_complex_of(X: SimplicialComplex, reduced: bool = False) -> ChainComplex:
    """Simplicial chains, each simplex oriented by its sorted vertex order."""
    top = X.dim
    lo = -1 if reduced else 0
    hi = max(top, lo)
    bases = {k: tuple(X.simplices_of_dim(k)) for k in range(0, hi + 1)}
    if reduced:
        bases[-1] = ((),)
    d = {}
    for k in range(max(lo + 1, 1), hi + 1):
        below = {s: i for i, s in enumerate(bases[k - 1])}
        cols = []
        for s in bases[k]:
            col = {}
            for i in range(len(s)):
                col[below[s[:i] + s[i + 1:]]] = (-1) ** i
            cols.append(col)
        d[k] = IntMatrix.from_columns(len(bases[k - 1]), cols)
    if reduced and hi >= 0:
        d[0] = IntMatrix.from_columns(1, [{0: 1} for _ in bases[0]])
    return ChainComplex(lo, hi, bases, d, check=False)


def relative_chain_complex(X: SimplicialComplex, A: SimplicialComplex, reduced: bool = False) -> ChainComplex:
    """C_*(X, A).  With ``reduced`` and empty ``A`` this is the reduced complex of X."""
    if not is_subcomplex(A, X):
        raise InputError("NOT_SUBCOMPLEX", "A is not a subcomplex of X")
    red = reduced and A.is_empty()
    C = chain_complex_of(X, reduced=red)
    labels = {k: A.simplices_of_dim(k) for k in range(A.dim + 1)}
    return C.quotient(labels)


# -- homology ------------------------------------------------------------------

def _reduction(M: IntMatrix, coeffs: Coefficients):
    """(rank, torsion factors) of a boundary matrix."""
    if coeffs.is_field:
        return linalg.rank_mod_p(M, coeffs.p), ()
    factors = linalg.invariant_factors(M)
    return len(factors), tuple(d for d in factors if d > 1)


def homology(C: ChainComplex, coeffs=None) -> HomologySummary:
    coeffs = as_coefficients(coeffs)
    red = {k: _reduction(C.boundary(k), coeffs) for k in range(C.lo + 1, C.hi + 1)}
    groups = {}
    for k in C.degrees():
        r_out = red.get(k, (0, ()))[0]
        r_in, tors = red.get(k + 1, (0, ()))
        groups[k] = GroupSummary(C.dim(k) - r_out - r_in, tors)
    return HomologySummary(groups, coeffs, False)


def cohomology(C: ChainComplex, coeffs=None) -> HomologySummary:
    """Cohomology from the transposed boundaries (coboundaries)."""
    coeffs = as_coefficients(coeffs)
    # delta^{k-1} = d_k^T : C^{k-1} -> C^k
    red = {k: _reduction(C.boundary(k).T, coeffs) for k in range(C.lo + 1, C.hi + 1)}
    groups = {}
    for k in C.degrees():
        r_out = red.get(k + 1, (0, ()))[0]
        r_in, tors = red.get(k, (0, ()))
        groups[k] = GroupSummary(C.dim(k) - r_out - r_in, tors)
    return HomologySummary(groups, coeffs, True)


def reduced_homology(X: SimplicialComplex, coeffs=None) -> HomologySummary:
    return homology(chain_complex_of(X, reduced=True), coeffs)


def is_acyclic(X: SimplicialComplex) -> bool:
    """Reduced integral homology vanishes (so the empty complex is not acyclic)."""
    return reduced_homology(X).is_zero()


def uct_field_dimensions(H: HomologySummary, p: int) -> dict:
    """F_p Betti numbers predicted from integral homology by universal coefficients."""
    def t(k):
        return sum(1 for d in H[k].torsion if d % p == 0)

    return {k: H[k].betti + t(k) + t(k - 1) for k in H.groups}


# -- tensor products and chain maps ---------------------------------------------------

def tensor_product(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """(C (x) D)_n = sum_i C_i (x) D_{n-i}; d(a(x)b) = da(x)b + (-1)^|a| a(x)db."""
    lo, hi = C.lo + D.lo, C.hi + D.hi
    bases, where = {}, {}
    for n in range(lo, hi + 1):
        labels = []
        for i in C.degrees():
            j = n - i
            if D.lo <= j <= D.hi:
                for a in C.basis(i):
                    for b in D.basis(j):
                        where[(i, a, b)] = (n, len(labels))
                        labels.append((a, b))
        bases[n] = tuple(labels)
    Ccols = {k: [dict(c) for c in C.boundary(k).data] for k in range(C.lo + 1, C.hi + 1)}
    Dcols = {k: [dict(c) for c in D.boundary(k).data] for k in range(D.lo + 1, D.hi + 1)}
    d = {}
    for n in range(lo + 1, hi + 1):
        cols = []
        for i in C.degrees():
            j = n - i
            if not D.lo <= j <= D.hi:
                continue
            sign = -1 if i % 2 else 1
            for ai, a in enumerate(C.basis(i)):
                for bi, b in enumerate(D.basis(j)):
                    col = {}
                    if i - 1 >= C.lo:
                        for r, v in Ccols[i][ai].items():
                            pos = where[(i - 1, C.basis(i - 1)[r], b)][1]
                            col[pos] = col.get(pos, 0) + v
                    if j - 1 >= D.lo:
                        for r, v in Dcols[j][bi].items():
                            pos = where[(i, a, D.basis(j - 1)[r])][1]
                            col[pos] = col.get(pos, 0) + sign * v
                    cols.append(col)
        d[n] = IntMatrix.from_columns(len(bases[n - 1]), cols)
    return ChainComplex(lo, hi, bases, d)


def is_chain_map(f: Mapping, C: ChainComplex, D: ChainComplex) -> bool:
    """``f[k]: C_k -> D_k``; missing degrees are zero maps."""
    def fk(k):
        M = f.get(k)
        if M is None:
            return IntMatrix.zeros(D.dim(k), C.dim(k))
        if M.shape != (D.dim(k), C.dim(k)):
            raise InputError("SHAPE_MISMATCH", f"map in degree {k} has shape {M.shape}")
        return M

    for k in f:
        fk(k)
    for k in range(min(C.lo, D.lo), max(C.hi, D.hi) + 1):
        if D.boundary(k) @ fk(k) != fk(k - 1) @ C.boundary(k):
            return False
    return True


def compose(g: Mapping, f: Mapping) -> dict:
    return {k: g[k] @ f[k] for k in f if k in g}


def is_identity(f: Mapping, C: ChainComplex) -> bool:
    return all(f.get(k, IntMatrix.zeros(C.dim(k), C.dim(k))) == IntMatrix.identity(C.dim(k)) for k in C.degrees())


# -- subcomplexes of acyclic 2-complexes ------------------------------------------

def subcomplex_acyclic_constraints(ambient: SimplicialComplex, Y: SimplicialComplex) -> dict:
    """For Y inside an acyclic complex of dimension <= 2: H_2(Y) = 0 and H_*(Y) is free."""
    if ambient.dim > 2 or not is_acyclic(ambient):
        raise InputError("HYPOTHESIS_FAILED", "ambient complex must be acyclic of dimension <= 2")
    if not is_subcomplex(Y, ambient):
        raise InputError("NOT_SUBCOMPLEX", "Y is not a subcomplex of the ambient complex")
    H = homology(chain_complex_of(Y))
    torsion = {k: list(g.torsion) for k, g in H.groups.items() if g.torsion}
    ok = H[2].is_zero() and not torsion
    if not ok:
        raise VerificationError("CONSTRAINT_VIOLATED", f"H(Y) = {H}")
    return {"h2_zero": True, "torsion_free": True, "homology": H.to_json()}
