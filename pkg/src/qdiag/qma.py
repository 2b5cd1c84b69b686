"""Degree-r components of the FRT quantum matrix algebra, by weight block.

Generators x^i_j (1 <= i, j <= n) span W; a degree-r word is a pair of
multi-indices (upper, lower).  The defining quadratic relations are the
entries of rhat.(x (x) x) - (x (x) x).rhat, padded on both sides by arbitrary
generators in degree r.  Every relation preserves the pair of letter weights
(upper multiset, lower multiset), so the whole computation decomposes into
independent blocks, each handled by plain exact linear algebra: the relation
span in RREF, a normal-form basis of non-pivot words, and reduction.

The column order inside a block puts words whose upper index is sorted last
(and among those, lexicographically smaller lowers later), so pivots prefer
to eliminate non-sorted words and the surviving normal-form basis is exactly
the monomials x_A = x^(sorted)_A whenever those are independent.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import BlockMismatch, BoundExceeded
from .linalg import QMatrix, SubspaceBasis, kernel
from .permutations import weight
from .rmatrix import index_word, rhat
from .scalars import ONE, ZERO, QScalar

__all__ = [
    "FreeElt", "BlockQuotient", "block_of", "block_quotient",
    "frt_relation_span", "expand_diagonal", "diag_relation_kernel",
    "membership", "proportionality", "DEFAULT_BLOCK_BOUND",
]

DEFAULT_BLOCK_BOUND = 4096

Word = tuple  # (upper multi-index, lower multi-index)


def block_of(word: Word, n: int) -> tuple:
    """The (upper weight, lower weight) block key of a word."""
    return (weight(word[0], n), weight(word[1], n))


class FreeElt:
    """Q(q)-combination of free-algebra words, all in one weight block."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        block = None
        for word, c in (terms or {}).items():
            if not c:
                continue
            b = block_of(word, n)
            if block is None:
                block = b
            elif b != block:
                raise BlockMismatch(f"words in blocks {block} and {b}")
            self.terms[word] = c

    @property
    def block(self):
        for word in self.terms:
            return block_of(word, self.n)
        return None

    def __add__(self, other):
        data = dict(self.terms)
        for word, c in other.terms.items():
            s = data.get(word, ZERO) + c
            if s:
                data[word] = s
            else:
                data.pop(word, None)
        return FreeElt(self.n, data)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: QScalar) -> "FreeElt":
        return FreeElt(self.n, {w: c * cc for w, cc in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, FreeElt) and self.n == other.n
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def to_json(self):
        return {f"{''.join(map(str, u))}|{''.join(map(str, l))}": str(c)
                for (u, l), c in sorted(self.terms.items())}


def _arrangements(w: tuple) -> list:
    """All distinct words with the given weight, lexicographic."""
    letters = []
    for v, k in enumerate(w, start=1):
        letters.extend([v] * k)
    return sorted(set(itertools.permutations(letters)))


@lru_cache(maxsize=None)
def _degree2_relations(n: int) -> tuple:
    """Degree-2 relation vectors from rhat.(x(x)x) - (x(x)x).rhat, deduplicated.

    Each vector is a dict over length-2 words keyed by ((e,f),(g,h)).
    """
    m = rhat(n)
    rows: dict = {}
    cols: dict = {}
    for (i, j), val in m.entries.items():
        rows.setdefault(index_word(i, n, 2), {})[index_word(j, n, 2)] = val
        cols.setdefault(index_word(j, n, 2), {})[index_word(i, n, 2)] = val
    out = []
    seen = set()
    for upper in itertools.product(range(1, n + 1), repeat=2):
        for lower in itertools.product(range(1, n + 1), repeat=2):
            vec: dict = {}
            for ef, val in rows.get(upper, {}).items():
                key = (ef, lower)
                s = vec.get(key, ZERO) + val
                if s:
                    vec[key] = s
                else:
                    vec.pop(key, None)
            for ef, val in cols.get(lower, {}).items():
                key = (upper, ef)
                s = vec.get(key, ZERO) - val
                if s:
                    vec[key] = s
                else:
                    vec.pop(key, None)
            if not vec:
                continue
            frozen = tuple(sorted((w, str(c)) for w, c in vec.items()))
            if frozen not in seen:
                seen.add(frozen)
                out.append(vec)
    return tuple(out)


def _tuple_sub(a: tuple, b: tuple):
    out = tuple(x - y for x, y in zip(a, b))
    return out if all(x >= 0 for x in out) else None


class BlockQuotient:
    """One weight block of the degree-r component with its normal form."""

    def __init__(self, n: int, r: int, block: tuple,
                 bound: int = DEFAULT_BLOCK_BOUND):
        upper_w, lower_w = block
        uppers = _arrangements(upper_w)
        lowers = _arrangements(lower_w)
        if len(uppers) * len(lowers) > bound:
            raise BoundExceeded(
                f"block {block} has {len(uppers) * len(lowers)} words"
                f" (> {bound})")
        self.n = n
        self.r = r
        self.block = block
        sorted_upper = uppers[0]

        def order_key(word):
            u, l = word
            if u != sorted_upper:
                return (0, u, l)
            return (1,) + tuple(-x for x in l)

        self.words = sorted(((u, l) for u in uppers for l in lowers),
                            key=order_key)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.span = SubspaceBasis.from_vectors(
            self._relation_rows(), len(self.words), labels=self.words)
        pivots = set(self.span.pivots)
        self.basis_words = sorted(w for i, w in enumerate(self.words)
                                  if i not in pivots)

    def _relation_rows(self):
        n, r = self.n, self.r
        upper_w, lower_w = self.block
        if r < 2:
            return
        rels = _degree2_relations(n)
        rel_blocks = [(block_of(next(iter(vec)), n), vec) for vec in rels]
        for pos in range(r - 1):
            for (w2u, w2l), vec in rel_blocks:
                pad_u = _tuple_sub(upper_w, w2u)
                pad_l = _tuple_sub(lower_w, w2l)
                if pad_u is None or pad_l is None:
                    continue
                for pu in _arrangements(pad_u):
                    for pl in _arrangements(pad_l):
                        row = {}
                        for ((e, f), (g, h)), c in vec.items():
                            u = pu[:pos] + (e, f) + pu[pos:]
                            l = pl[:pos] + (g, h) + pl[pos:]
                            row[self.index[(u, l)]] = c
                        yield row

    def vector(self, elt: FreeElt) -> dict:
        """Coordinates of an element of this block."""
        out = {}
        for word, c in elt.terms.items():
            i = self.index.get(word)
            if i is None:
                raise BlockMismatch(f"word {word} not in block {self.block}")
            out[i] = c
        return out

    def residual(self, elt: FreeElt) -> FreeElt:
        red = self.span.reduce(self.vector(elt))
        return FreeElt(self.n, {self.words[i]: c for i, c in red.items()})

    def contains(self, elt: FreeElt) -> bool:
        return not self.span.reduce(self.vector(elt))

    def normal_form(self, elt: FreeElt) -> dict:
        """Expansion over the normal-form basis words."""
        res = self.residual(elt)
        assert all(w in set(self.basis_words) for w in res.terms)
        return res.terms

    @property
    def quotient_dim(self) -> int:
        return len(self.words) - self.span.dim


@lru_cache(maxsize=None)
def block_quotient(n: int, r: int, block: tuple,
                   bound: int = DEFAULT_BLOCK_BOUND) -> BlockQuotient:
    return BlockQuotient(n, r, block, bound)


def frt_relation_span(n: int, r: int, block: tuple,
                      bound: int = DEFAULT_BLOCK_BOUND) -> SubspaceBasis:
    """RREF basis of the degree-r relation span restricted to one block."""
    return block_quotient(n, r, block, bound).span


def expand_diagonal(n: int, r: int, weight_vec: tuple,
                    bound: int = DEFAULT_BLOCK_BOUND):
    """Expansion matrix of the diagonal monomials x^A_A of one weight.

    Returns (row labels = diagonal multi-indices lex, column labels =
    normal-form basis words lex, matrix M) with M[A] = reduce(x^A_A).
    """
    q = block_quotient(n, r, (weight_vec, weight_vec), bound)
    diag = _arrangements(weight_vec)
    col = {w: j for j, w in enumerate(q.basis_words)}
    entries = {}
    for i, a in enumerate(diag):
        nf = q.normal_form(FreeElt(n, {(a, a): ONE}))
        for word, c in nf.items():
            entries[(i, col[word])] = c
    return diag, list(q.basis_words), QMatrix(len(diag), len(q.basis_words),
                                              entries)


def diag_relation_kernel(n: int, r: int,
                         bound: int = DEFAULT_BLOCK_BOUND) -> dict:
    """Per-weight kernels of the diagonal expansion matrices.

    A kernel vector c (coordinates = diagonal multi-indices, lex) encodes the
    relation sum c_A x^A_A = 0 of the quantum diagonal algebra.
    """
    weights = sorted({tuple(weight(w, n))
                      for w in itertools.product(range(1, n + 1), repeat=r)},
                     reverse=True)
    out = {}
    for wv in weights:
        diag, _, m = expand_diagonal(n, r, wv, bound)
        ker = kernel(m.transpose())
        ker.labels = diag
        out[wv] = ker
    return out


def membership(elt: FreeElt, r: int, bound: int = DEFAULT_BLOCK_BOUND) -> bool:
    """Is the element a relation, i.e. zero in the quantum matrix algebra?"""
    if not elt:
        return True
    return block_quotient(elt.n, r, elt.block, bound).contains(elt)


def proportionality(v: FreeElt, w: FreeElt, r: int,
                    bound: int = DEFAULT_BLOCK_BOUND):
    """The scalar c with v = c.w modulo the block's relation span, if any.

    Returns 0 when v reduces to zero, None when the residuals are not
    proportional (or w reduces to zero while v does not).
    """
    q = block_quotient(v.n, r, v.block if v else w.block, bound)
    rv = q.residual(v)
    if not rv:
        return ZERO
    rw = q.residual(w)
    if not rw:
        return None
    word, c0 = next(iter(sorted(rw.terms.items())))
    c = rv.terms.get(word, ZERO) / c0
    return c if rv == rw.scale(c) else None
