"""The Hecke algebra H_r(q) in the natural basis T_sigma.

Each generator satisfies the quadratic relation T_si^2 = 1 + (q - q^-1) T_si,
so right multiplication by a generator is

    T_sigma . T_si = T_(sigma.si)                      if the length goes up,
    T_sigma . T_si = T_(sigma.si) + (q - q^-1) T_sigma otherwise,

and a general product factors the right operand into its reduced word.
T^alpha denotes T_(alpha^-1); the double-coset projection of a diagonal
element sum c_alpha T^alpha (x) T_alpha is p = sum c_alpha T_(alpha^-1) T_alpha.

The module also houses the minimal idempotents of H_2 and H_3.  The mixed pair
e21+/e21- is entered coefficient by coefficient; the full symmetrizer and
antisymmetrizer are built as q-weighted sums over S_r whose normalization is
solved from e^2 = e (the solved constants are exposed for reports).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import BoundExceeded, SizeMismatch
from .linalg import SubspaceBasis, QMatrix, kernel
from .permutations import (
    all_perms, apply_gen, identity, inverse, length, perm_of_word,
    perm_str, reduced_word, sign,
)
from .scalars import LaurentPoly, ONE, ZERO, QScalar, omega, q_int, q_power, qs

__all__ = [
    "HeckeElt", "DiagElt", "t", "t_upper", "project_p",
    "idempotents_r2", "idempotents_r3", "r3_normalizers",
    "theta", "diag_kernel_of_p", "projection_matrix", "formal_product",
]


class HeckeElt:
    """Finite Q(q)-linear combination of basis symbols T_sigma, sigma in S_r."""

    __slots__ = ("r", "terms")

    def __init__(self, r: int, terms=None):
        self.r = r
        self.terms = {}
        if terms:
            for p, c in terms.items():
                if c:
                    self.terms[p] = c

    @staticmethod
    def zero(r: int) -> "HeckeElt":
        return HeckeElt(r)

    @staticmethod
    def one(r: int) -> "HeckeElt":
        return HeckeElt(r, {identity(r): ONE})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, HeckeElt) and self.r == other.r
                and self.terms == other.terms)

    def __add__(self, other):
        self._check(other)
        data = dict(self.terms)
        for p, c in other.terms.items():
            s = data.get(p, ZERO) + c
            if s:
                data[p] = s
            else:
                data.pop(p, None)
        return HeckeElt(self.r, data)

    def __neg__(self):
        return HeckeElt(self.r, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: QScalar) -> "HeckeElt":
        if not c:
            return HeckeElt(self.r)
        return HeckeElt(self.r, {p: c * cc for p, cc in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for rho, c in other.terms.items():
            terms = self.terms
            for i in reduced_word(rho):
                terms = _mul_gen(terms, i)
            for p, cc in terms.items():
                s = out.get(p, ZERO) + c * cc
                if s:
                    out[p] = s
                else:
                    out.pop(p, None)
        return HeckeElt(self.r, out)

    def __rmul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        return NotImplemented

    def coeff(self, p) -> QScalar:
        return self.terms.get(p, ZERO)

    def _check(self, other):
        if self.r != other.r:
            raise SizeMismatch(f"H_{self.r} vs H_{other.r}")

    def bar_involution(self) -> "HeckeElt":
        """T_sigma -> (-1)^sigma T_sigma together with q -> q^-1."""
        return HeckeElt(self.r, {p: _bar_scalar(c) * qs(sign(p))
                                 for p, c in self.terms.items()})

    def to_json(self):
        return {perm_str(p): str(c) for p, c in sorted(self.terms.items())}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms):
            c = self.terms[p]
            cs = str(c)
            if cs == "1":
                parts.append(f"T[{perm_str(p)}]")
            else:
                if ("+" in cs[1:] or "-" in cs[1:] or "/" in cs) and not (
                        cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs}*T[{perm_str(p)}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"HeckeElt({self})"


def _bar_scalar(c: QScalar) -> QScalar:
    """q -> q^-1 on a scalar."""
    num = LaurentPoly({-e: v for e, v in c.num.coeffs.items()})
    den = LaurentPoly({-e: v for e, v in c.den.coeffs.items()})
    return QScalar(num, den)


def _mul_gen(terms: dict, i: int) -> dict:
    """Right multiplication of a term dict by T_si."""
    w = omega()
    out: dict = {}

    def put(p, c):
        s = out.get(p, ZERO) + c
        if s:
            out[p] = s
        else:
            out.pop(p, None)

    for p, c in terms.items():
        ps = apply_gen(p, i)
        if length(ps) > length(p):
            put(ps, c)
        else:
            put(ps, c)
            put(p, c * w)
    return out


def t(p) -> HeckeElt:
    """Basis element T_p."""
    return HeckeElt(len(p), {tuple(p): ONE})


def t_word(r: int, word) -> HeckeElt:
    """T of a reduced generator word, e.g. t_word(3, (1, 2)) = T_s1s2."""
    return t(perm_of_word(r, word))


def t_upper(p) -> HeckeElt:
    """The upper-index basis T^p = T_(p^-1)."""
    return t(inverse(tuple(p)))


class DiagElt:
    """Element of the diagonal space: sum c_alpha T~^alpha_alpha."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r: int, coeffs=None):
        self.r = r
        self.coeffs = {p: c for p, c in (coeffs or {}).items() if c}

    @staticmethod
    def basis(p) -> "DiagElt":
        return DiagElt(len(p), {tuple(p): ONE})

    def __add__(self, other):
        if self.r != other.r:
            raise SizeMismatch(f"rank {self.r} vs {other.r}")
        data = dict(self.coeffs)
        for p, c in other.coeffs.items():
            s = data.get(p, ZERO) + c
            if s:
                data[p] = s
            else:
                data.pop(p, None)
        return DiagElt(self.r, data)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: QScalar) -> "DiagElt":
        return DiagElt(self.r, {p: c * cc for p, cc in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, DiagElt) and self.r == other.r
                and self.coeffs == other.coeffs)

    def to_json(self):
        return {perm_str(p): str(c) for p, c in sorted(self.coeffs.items())}


def project_p(x: DiagElt) -> HeckeElt:
    """The double-coset projection: sum c_alpha T_(alpha^-1) T_alpha."""
    out = HeckeElt.zero(x.r)
    for alpha, c in x.coeffs.items():
        out = out + (t(inverse(alpha)) * t(alpha)).scale(c)
    return out


# -- idempotents -------------------------------------------------------------


@lru_cache(maxsize=None)
def idempotents_r2():
    """(e2, e11): the rank-2 symmetrizer (q^-1 + T)/[2] and antisymmetrizer."""
    inv2 = q_int(2).inv()
    ts = t(apply_gen(identity(2), 1))
    e2 = (HeckeElt.one(2).scale(q_power(-1)) + ts).scale(inv2)
    e11 = (HeckeElt.one(2).scale(q_power(1)) - ts).scale(inv2)
    return e2, e11


def _mixed_idempotent(sg: int) -> HeckeElt:
    """e21 with theta-eigenvalue sg = +1 or -1, entered termwise."""
    w = omega()
    inv3 = q_int(3).inv()
    half = qs(1) / qs(2)
    s = qs(sg)
    coeffs = {
        (1, 2, 3): ONE,
        (2, 3, 1): -half - s * half * w,
        (3, 1, 2): -half - s * half * w,
        (2, 1, 3): -s * half + half * w,
        (1, 3, 2): -s * half + half * w,
        (3, 2, 1): s,
    }
    return HeckeElt(3, coeffs).scale(inv3)


def _q_symmetrizer(r: int, anti: bool) -> tuple:
    """Unnormalized (anti)symmetrizer and its solved normalizer c, x^2 = c x."""
    terms = {}
    for p in all_perms(r):
        k = length(p)
        terms[p] = q_power(-k) * qs((-1) ** k) if anti else q_power(k)
    x = HeckeElt(r, terms)
    sq = x * x
    c = None
    for p, v in sq.terms.items():
        ratio = v / x.terms[p]
        if c is None:
            c = ratio
        elif c != ratio:
            raise ArithmeticError("symmetrizer square is not proportional")
    return x, c


@lru_cache(maxsize=None)
def r3_normalizers():
    """Solved normalization constants (c3, c111) with e = x / c."""
    _, c3 = _q_symmetrizer(3, anti=False)
    _, c111 = _q_symmetrizer(3, anti=True)
    return c3, c111


@lru_cache(maxsize=None)
def idempotents_r3():
    """(e3, e21_plus, e21_minus, e111): a partition of unity in H_3."""
    x3, c3 = _q_symmetrizer(3, anti=False)
    x111, c111 = _q_symmetrizer(3, anti=True)
    return (x3.scale(c3.inv()), _mixed_idempotent(+1),
            _mixed_idempotent(-1), x111.scale(c111.inv()))


def theta() -> HeckeElt:
    """The eigenvalue element T_s1 T_s2 T_s1 in H_3."""
    return t_word(3, (1, 2, 1))


# -- the projection as a linear map ------------------------------------------


@lru_cache(maxsize=None)
def projection_matrix(r: int) -> QMatrix:
    """Matrix of p on the diagonal space: row alpha, column sigma, lex order."""
    perms = all_perms(r)
    col = {p: j for j, p in enumerate(perms)}
    entries = {}
    for i, alpha in enumerate(perms):
        image = t(inverse(alpha)) * t(alpha)
        for p, c in image.terms.items():
            entries[(i, col[p])] = c
    return QMatrix(len(perms), len(perms), entries)


@lru_cache(maxsize=None)
def diag_kernel_of_p(r: int, max_rank: int = 5) -> SubspaceBasis:
    """Exact kernel of p on the r!-dimensional diagonal space.

    Coordinates are indexed by S_r in lex order; a kernel vector c means
    sum c_alpha T~^alpha_alpha projects to zero.
    """
    if r > max_rank:
        raise BoundExceeded(f"rank {r} exceeds bound {max_rank}")
    return kernel(projection_matrix(r).transpose())


# -- word-level products ------------------------------------------------------


def formal_product(r: int, word_a, word_b) -> dict:
    """Hecke product keyed by the reduced generator words actually produced.

    Basis symbols are kept as formal reduced words (tuples of generator
    indices), so two reduced words of the same permutation are *not*
    identified; this exhibits intermediate values before the braid relation
    is applied.  Length-reducing steps use the Hecke move: when the current
    word ends with the letter being multiplied, the doubled crossing is
    resolved in place; otherwise the word is first rewritten to the canonical
    reduced word ending in that letter.
    """
    w = omega()
    out = {tuple(word_a): ONE}
    for i in word_b:
        nxt: dict = {}

        def put(word, c):
            s = nxt.get(word, ZERO) + c
            if s:
                nxt[word] = s
            else:
                nxt.pop(word, None)

        for word, c in out.items():
            p = perm_of_word(r, word)
            ps = apply_gen(p, i)
            if length(ps) > length(p):
                put(word + (i,), c)
            else:
                shorter = word[:-1] if word and word[-1] == i \
                    else reduced_word(ps)
                put(shorter, c)
                put(shorter + (i,), c * w)
        out = nxt
    return out
