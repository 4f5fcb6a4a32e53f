"""Fundamental groups of 2-complexes by coset enumeration.

Words are tuples of nonzero ints: ``i + 1`` is generator i and ``-(i + 1)``
its inverse.  In JSON a word is a list of generator names, with the
swapped-case name standing for the inverse (``"a"`` / ``"A"``).
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .complex import SimplicialComplex, intersection
from .config import DEFAULT_CAPS
from .errors import CapExceeded, InputError
from .homology import ChainComplex, chain_complex_of, reduced_homology
from .linalg import IntMatrix, determinant


def free_reduce(word: Sequence[int]) -> tuple:
    out = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> tuple:
    w = list(free_reduce(word))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def invert(word: Sequence[int]) -> tuple:
    return tuple(-a for a in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple  # tuple of words

    def __post_init__(self):
        n = len(self.generators)
        for r in self.relators:
            if any(a == 0 or abs(a) > n for a in r):
                raise InputError("PARSE_ERROR", "relator uses an unknown generator")

    def token(self, a: int) -> str:
        name = self.generators[abs(a) - 1]
        return name if a > 0 else name.swapcase()

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [[self.token(a) for a in r] for r in self.relators],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, doc) -> "Presentation":
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as e:
                raise InputError("PARSE_ERROR", str(e)) from None
        try:
            gens = tuple(str(g) for g in doc["generators"])
            rels = doc["relators"]
        except (KeyError, TypeError):
            raise InputError("PARSE_ERROR", "presentation needs 'generators' and 'relators'") from None
        if len(set(gens)) != len(gens) or any(g.swapcase() in gens and g.swapcase() != g for g in gens):
            raise InputError("PARSE_ERROR", "generator names must be distinct up to case")
        pos = {g: i + 1 for i, g in enumerate(gens)}
        words = []
        for r in rels:
            w = []
            for t in r:
                t = str(t)
                if t in pos:
                    w.append(pos[t])
                elif t.swapcase() in pos:
                    w.append(-pos[t.swapcase()])
                else:
                    raise InputError("PARSE_ERROR", f"unknown symbol {t!r} in relator")
            words.append(tuple(w))
        return cls(gens, tuple(words))


def presentation_from_two_complex(X: SimplicialComplex, base=None) -> Presentation:
    """Edge-path presentation: non-tree edges generate, triangles relate.

    The spanning tree is the BFS tree from ``base`` visiting neighbours in
    vertex order.  Edges are oriented from the smaller vertex.
    """
    if X.is_empty():
        raise InputError("NOT_CONNECTED", "empty complex")
    G = X.graph()
    if not nx.is_connected(G):
        raise InputError("NOT_CONNECTED", "complex is not connected")
    base = X.vertices[0] if base is None else base
    if base not in X.vertices:
        raise InputError("UNKNOWN_VERTEX", f"no vertex {base!r}")
    tree, seen = set(), {base}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for w in sorted(G.neighbors(v)):
            if w not in seen:
                seen.add(w)
                tree.add(tuple(sorted((v, w))))
                queue.append(w)
    gens = [e for e in X.simplices_of_dim(1) if e not in tree]
    gid = {e: i + 1 for i, e in enumerate(gens)}

    def letter(a, b):
        e = (a, b) if a < b else (b, a)
        if e in tree:
            return None
        return gid[e] if a < b else -gid[e]

    rels = []
    for a, b, c in X.simplices_of_dim(2):
        w = [x for x in (letter(a, b), letter(b, c), letter(c, a)) if x is not None]
        rels.append(tuple(w))
    names = tuple(f"x{i}" for i in range(len(gens)))
    return Presentation(names, tuple(rels))


def simplify(pres: Presentation, max_length: int = 10**5) -> Presentation:
    """Tietze elimination of generators occurring exactly once in some relator."""
    n = len(pres.generators)
    alive = list(range(1, n + 1))
    rels = [cyclic_reduce(r) for r in pres.relators]
    while True:
        rels = sorted({r for r in rels if r}, key=lambda r: (len(r), r))
        best = None
        for idx, r in enumerate(rels):
            counts = {}
            for a in r:
                counts[abs(a)] = counts.get(abs(a), 0) + 1
            once = [g for g in sorted(counts) if counts[g] == 1]
            if once:
                best = (idx, once[-1])
                break
        if best is None:
            break
        idx, g = best
        r = rels[idx]
        k = next(i for i, a in enumerate(r) if abs(a) == g)
        u, v = r[:k], r[k + 1:]
        # u x^e v = 1
        repl = invert(u + v) if r[k] > 0 else v + u
        new = []
        for j, s in enumerate(rels):
            if j == idx:
                continue
            w = []
            for a in s:
                if a == g:
                    w.extend(repl)
                elif a == -g:
                    w.extend(invert(repl))
                else:
                    w.append(a)
            new.append(cyclic_reduce(w))
        if sum(len(w) for w in new) > max_length:
            break
        rels = new
        alive.remove(g)
    renum = {g: i + 1 for i, g in enumerate(alive)}
    words = tuple(tuple(renum[abs(a)] * (1 if a > 0 else -1) for a in r) for r in rels)
    names = tuple(pres.generators[g - 1] for g in alive)
    return Presentation(names, words)


# -- coset enumeration ----------------------------------------------------------------

class _CosetTable:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max = max_cosets
        self.table = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1

    @staticmethod
    def col(a: int) -> int:
        return 2 * (a - 1) if a > 0 else 2 * (-a - 1) + 1

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int):
        if self.live >= self.max:
            raise _Full()
        d = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _merge(self, a: int, b: int, queue: list):
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            self.live -= 1
            queue.append(hi)

    def coincidence(self, a: int, b: int):
        queue = []
        self._merge(a, b, queue)
        i = 0
        T = self.table
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = T[e][x]
                if f < 0:
                    continue
                T[f][x ^ 1] = -1
                e1, f1 = self.rep(e), self.rep(f)
                if T[e1][x] >= 0:
                    self._merge(f1, T[e1][x], queue)
                elif T[f1][x ^ 1] >= 0:
                    self._merge(e1, T[f1][x ^ 1], queue)
                else:
                    T[e1][x] = f1
                    T[f1][x ^ 1] = e1

    def scan(self, c: int, word: Sequence[int], fill: bool):
        T = self.table
        w = [self.col(a) for a in word]
        f, b, i, j = c, c, 0, len(w) - 1
        while True:
            while i <= j and T[f][w[i]] >= 0:
                f = T[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and T[b][w[j] ^ 1] >= 0:
                b = T[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                T[f][w[i]] = b
                T[b][w[i] ^ 1] = f
                return
            if not fill:
                return
            self.define(f, w[i])


class _Full(Exception):
    pass


def todd_coxeter(pres: Presentation, subgroup: Iterable[Sequence[int]] = (), max_cosets: int | None = None) -> int:
    """Index of the subgroup in the presented group (the order when it is trivial).

    HLT strategy: every live coset is scanned against every relator in
    order, then its row is completed.  When the table fills up a lookahead
    pass scans all cosets without defining new ones; if that frees nothing
    the enumeration stops with COSET_LIMIT_EXCEEDED, which proves nothing
    about finiteness.
    """
    max_cosets = DEFAULT_CAPS.cosets if max_cosets is None else max_cosets
    if max_cosets < 1:
        raise InputError("BAD_CAP", "max_cosets must be positive")
    rels = [cyclic_reduce(r) for r in pres.relators]
    rels = [r for r in rels if r]
    ct = _CosetTable(len(pres.generators), max_cosets)
    sub = [free_reduce(w) for w in subgroup]

    def guarded(step):
        while True:
            try:
                step()
                return
            except _Full:
                before = ct.live
                for c in range(len(ct.table)):
                    for r in rels:
                        if ct.alive(c):
                            ct.scan(c, r, fill=False)
                if ct.live >= before:
                    raise CapExceeded("COSET_LIMIT_EXCEEDED", f"more than {max_cosets} cosets") from None

    for w in sub:
        guarded(lambda w=w: ct.scan(0, w, fill=True))
    c = 0
    while c < len(ct.table):
        if ct.alive(c):
            for r in rels:
                if not ct.alive(c):
                    break
                guarded(lambda r=r: ct.scan(c, r, fill=True))
            for x in range(ct.ncols):
                if ct.alive(c) and ct.table[c][x] < 0:
                    guarded(lambda x=x: ct.define(c, x) if ct.table[c][x] < 0 else None)
        c += 1
    return ct.live


# -- exponent matrices ------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentMatrix:
    rows: tuple  # rows[i][j] = total exponent of x_j in w_i
    d: int

    @property
    def nonzero(self) -> bool:
        return self.d != 0

    @property
    def unimodular(self) -> bool:
        return abs(self.d) == 1

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.rows], "d": self.d,
                "d_nonzero": self.nonzero, "d_unit": self.unimodular}


def _exponent(token: str, x: str) -> int:
    if token == x:
        return 1
    if token == x.swapcase() and token != x:
        return -1
    return 0


def exponent_matrix(relators: Sequence[Sequence[str]], x_symbols: Sequence[str]) -> ExponentMatrix:
    """Tokens other than the x symbols (and their swapped case) are elements of the base group."""
    if len(relators) != len(x_symbols):
        raise InputError("SHAPE_MISMATCH", f"{len(relators)} relators for {len(x_symbols)} new generators")
    rows = tuple(tuple(sum(_exponent(str(t), x) for t in w) for x in x_symbols) for w in relators)
    return ExponentMatrix(rows, determinant([list(r) for r in rows]) if rows else 1)


# -- nerves ---------------------------------------------------------------------------

def nerve_homology_comparison(cover) -> dict:
    """Reduced homology of the union against that of the nerve.

    Every nonempty intersection of parts must be acyclic; otherwise the
    comparison is not applicable.
    """
    from .complex import nerve_of_cover

    N = nerve_of_cover(cover)
    parts = dict(cover.parts)
    for P in parts.values():
        if P.is_empty():
            raise InputError("INAPPLICABLE_COVER", "a cover part is empty")
    for s in N.simplices:
        inter = intersection(*(parts[n] for n in s)) if len(s) > 1 else parts[s[0]]
        if not reduced_homology(inter).is_zero():
            raise InputError("INAPPLICABLE_COVER", f"intersection over {list(s)} is not acyclic")
    H_union = reduced_homology(cover.union())
    H_nerve = reduced_homology(N)
    return {
        "nerve_f_vector": list(N.f_vector()),
        "union_homology": H_union.to_json(),
        "nerve_homology": H_nerve.to_json(),
        "equal": H_union.same_groups(H_nerve),
    }


# -- cells attached to a subcomplex -------------------------------------------------------

@dataclass(frozen=True)
class CellAttachment:
    """X_3 = Y with r loops x_j at a base vertex and r 2-cells attached along words.

    Word tokens are ``"g<k>"`` for the k-th closed edge path in ``loops``
    (``"G<k>"`` its reverse) and ``"x<j>"`` / ``"X<j>"`` for the new loops.
    """

    base_complex: SimplicialComplex
    base: str
    loops: tuple  # closed vertex sequences starting and ending at base
    words: tuple = field(default=())

    @property
    def r(self) -> int:
        return len(self.words)

    @property
    def x_symbols(self) -> tuple:
        return tuple(f"x{j}" for j in range(self.r))

    def chain_complex(self) -> ChainComplex:
        Y = self.base_complex
        C = chain_complex_of(Y)
        bases = {k: C.basis(k) for k in range(3)}
        xs = tuple(("x", j) for j in range(self.r))
        ws = tuple(("w", i) for i in range(self.r))
        bases = {0: bases[0], 1: bases[1] + xs, 2: bases[2] + ws}
        e_idx = {e: i for i, e in enumerate(bases[1])}
        d1 = IntMatrix.from_columns(len(bases[0]), [dict(c) for c in C.boundary(1).data] + [{}] * self.r)
        cols = [dict(c) for c in C.boundary(2).data] if Y.dim >= 2 else []
        for w in self.words:
            col = {}
            for t in w:
                kind, k = t[0], int(t[1:])
                if kind in "xX":
                    i, s = e_idx[("x", k)], 1 if kind == "x" else -1
                    col[i] = col.get(i, 0) + s
                    continue
                path = self.loops[k] if kind == "g" else tuple(reversed(self.loops[k]))
                for a, b in zip(path, path[1:]):
                    i, s = (e_idx[(a, b)], 1) if a < b else (e_idx[(b, a)], -1)
                    col[i] = col.get(i, 0) + s
            cols.append(col)
        d2 = IntMatrix.from_columns(len(bases[1]), cols)
        return ChainComplex(0, 2, bases, {1: d1, 2: d2})

    def relative_chain_complex(self) -> ChainComplex:
        Y = self.base_complex
        labels = {k: Y.simplices_of_dim(k) for k in range(Y.dim + 1)}
        return self.chain_complex().quotient(labels)

    def exponent_matrix(self) -> ExponentMatrix:
        return exponent_matrix(self.words, self.x_symbols)


def _closed_walk(G, base, rng, steps):
    """Random walk from base, returned along a shortest path."""
    walk, v = [base], base
    for _ in range(steps):
        v = rng.choice(sorted(G.neighbors(v)))
        walk.append(v)
    back = nx.shortest_path(G, v, base)
    return tuple(walk + back[1:])


def random_attachment(Y: SimplicialComplex, r: int, seed: int, unimodular: bool | None = None) -> CellAttachment:
    """A random X_3 over Y.  ``unimodular=True`` forces det = ±1; ``None`` picks random exponents."""
    rng = random.Random(seed)
    G = Y.graph()
    base = Y.vertices[0]
    loops = tuple(_closed_walk(G, base, rng, rng.randint(2, 5)) for _ in range(3))
    if unimodular:
        M = [[int(i == j) for j in range(r)] for i in range(r)]
        for _ in range(3 * r):
            i, j = rng.sample(range(r), 2) if r > 1 else (0, 0)
            if i == j:
                M[0][0] = -M[0][0]
                continue
            c = rng.choice([-1, 1])
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        if rng.random() < 0.5:
            rng.shuffle(M)
    else:
        M = [[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]
    words = []
    for row in M:
        toks = []
        for j, e in enumerate(row):
            toks += [f"x{j}" if e > 0 else f"X{j}"] * abs(e)
        for _ in range(rng.randint(0, 2)):
            j = rng.randrange(r)
            toks += [f"x{j}", f"X{j}"]
        for _ in range(rng.randint(0, 3)):
            k = rng.randrange(len(loops))
            toks.append(rng.choice([f"g{k}", f"G{k}"]))
        rng.shuffle(toks)
        words.append(tuple(toks))
    return CellAttachment(Y, base, loops, tuple(words))
