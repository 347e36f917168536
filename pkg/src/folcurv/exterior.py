"""Exterior algebra on an oriented q-dimensional inner-product fiber.

A degree-p alternating form is stored by its coefficients on the strictly
increasing multi-indices of the orthonormal frame e_0, ..., e_{q-1};
antisymmetry is resolved on access, never stored.  The p-form inner product
carries the 1/p! normalization, under which the stored coefficient vector is
orthonormal and <a, b> collapses to a plain dot product.

Orientation is the ordered frame itself.  The Hodge star sign is pinned by
a ^ (*a) = |a|^2 vol, which also yields the contraction rule
X . (*a) = (-1)^p * (X^flat ^ a).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np

__all__ = [
    "AlternatingForm",
    "FiberVector",
    "multi_indices",
    "multi_index_rank",
    "sort_with_sign",
    "wedge",
    "interior_vector",
    "interior_multi",
    "inner",
    "hodge",
    "flat",
    "vector_contractions",
    "bivector_contractions",
    "interior_matrices",
    "wedge_matrices",
]


@lru_cache(maxsize=None)
def multi_indices(q: int, p: int) -> tuple[tuple[int, ...], ...]:
    """All strictly increasing p-tuples in range(q), in lexicographic order."""
    return tuple(itertools.combinations(range(q), p))


@lru_cache(maxsize=None)
def _rank_table(q: int, p: int) -> dict[tuple[int, ...], int]:
    return {idx: r for r, idx in enumerate(multi_indices(q, p))}


def multi_index_rank(q: int, indices: tuple[int, ...]) -> int:
    """Lexicographic rank of a strictly increasing multi-index; a bijection
    onto range(comb(q, p))."""
    try:
        return _rank_table(q, len(indices))[tuple(indices)]
    except KeyError:
        raise ValueError(f"{indices!r} is not an increasing multi-index in range({q})")


def sort_with_sign(indices) -> tuple[tuple[int, ...], int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    A repeated index gives sign 0.
    """
    idx = list(indices)
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(idx)):
        b = a
        while b > 0 and idx[b - 1] > idx[b]:
            idx[b - 1], idx[b] = idx[b], idx[b - 1]
            sign = -sign
            b -= 1
    for a in range(1, len(idx)):
        if idx[a - 1] == idx[a]:
            return tuple(idx), 0
    return tuple(idx), sign


class FiberVector:
    """A vector in the fiber, held as components in the orthonormal frame."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = np.asarray(components, dtype=float)
        if self.components.ndim != 1:
            raise ValueError("fiber vector components must be one-dimensional")

    @classmethod
    def basis(cls, q: int, i: int) -> "FiberVector":
        v = np.zeros(q)
        v[i] = 1.0
        return cls(v)

    @property
    def dimension(self) -> int:
        return self.components.shape[0]

    @property
    def norm_sq(self) -> float:
        return float(self.components @ self.components)

    def __repr__(self):
        return f"FiberVector({self.components!r})"


def _components(v, q: int) -> np.ndarray:
    """Coerce a FiberVector or array-like to a length-q component array."""
    c = v.components if isinstance(v, FiberVector) else np.asarray(v, dtype=float)
    if c.shape != (q,):
        raise ValueError(f"expected a vector of dimension {q}, got shape {c.shape}")
    return c


class AlternatingForm:
    """A degree-p alternating multilinear form on the q-dimensional fiber.

    ``coeffs[r]`` is the value on the frame vectors of the rank-r increasing
    multi-index.  ``vacuous`` marks the zero object produced by contracting
    more slots than the form has; any norm built from it reads 0.
    """

    __slots__ = ("degree", "dimension", "coeffs", "vacuous")

    def __init__(self, degree: int, dimension: int, coeffs=None, *, vacuous: bool = False):
        if not 0 <= degree <= dimension:
            raise ValueError(f"degree {degree} out of range for dimension {dimension}")
        self.degree = degree
        self.dimension = dimension
        n = comb(dimension, degree)
        if coeffs is None:
            self.coeffs = np.zeros(n)
        else:
            self.coeffs = np.array(coeffs, dtype=float).reshape(n)
        self.vacuous = vacuous

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int, dimension: int, *, vacuous: bool = False) -> "AlternatingForm":
        return cls(degree, dimension, vacuous=vacuous)

    @classmethod
    def basis(cls, dimension: int, indices) -> "AlternatingForm":
        """The basis form e^{i_1} ^ ... ^ e^{i_p} for an increasing tuple."""
        indices = tuple(indices)
        a = cls(len(indices), dimension)
        a.coeffs[multi_index_rank(dimension, indices)] = 1.0
        return a

    @classmethod
    def one_form(cls, dimension: int, components) -> "AlternatingForm":
        a = cls(1, dimension)
        a.coeffs[:] = np.asarray(components, dtype=float)
        return a

    @classmethod
    def volume(cls, dimension: int) -> "AlternatingForm":
        return cls.basis(dimension, tuple(range(dimension)))

    # -- access -------------------------------------------------------------

    def component(self, *indices: int) -> float:
        """Value on an arbitrary frame index tuple.

        Indices may be unsorted or repeated; the permutation sign is applied
        and a repeated index reads 0.
        """
        if len(indices) != self.degree:
            raise ValueError(f"expected {self.degree} indices, got {len(indices)}")
        for i in indices:
            if not 0 <= i < self.dimension:
                raise ValueError(f"index {i} out of range({self.dimension})")
        srt, sign = sort_with_sign(indices)
        if sign == 0:
            return 0.0
        return sign * float(self.coeffs[_rank_table(self.dimension, self.degree)[srt]])

    @property
    def norm_sq(self) -> float:
        return float(self.coeffs @ self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "AlternatingForm"):
        if self.degree != other.degree or self.dimension != other.dimension:
            raise ValueError(
                f"incompatible forms: deg {self.degree}/dim {self.dimension} "
                f"vs deg {other.degree}/dim {other.dimension}"
            )

    def __add__(self, other: "AlternatingForm") -> "AlternatingForm":
        self._check_compatible(other)
        return AlternatingForm(self.degree, self.dimension, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlternatingForm") -> "AlternatingForm":
        self._check_compatible(other)
        return AlternatingForm(self.degree, self.dimension, self.coeffs - other.coeffs)

    def __mul__(self, c) -> "AlternatingForm":
        return AlternatingForm(self.degree, self.dimension, self.coeffs * float(c))

    __rmul__ = __mul__

    def __neg__(self) -> "AlternatingForm":
        return AlternatingForm(self.degree, self.dimension, -self.coeffs)

    def allclose(self, other: "AlternatingForm", tol: float = 1e-10) -> bool:
        self._check_compatible(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= tol)

    def __repr__(self):
        return (
            f"AlternatingForm(degree={self.degree}, dimension={self.dimension}, "
            f"coeffs={self.coeffs!r})"
        )


# -- products ----------------------------------------------------------------


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting the concatenation of two increasing
    disjoint tuples: (-1)^(number of crossing pairs)."""
    inv = 0
    for a in left:
        for b in right:
            if a > b:
                inv += 1
    return -1 if inv % 2 else 1


def wedge(a: AlternatingForm, b: AlternatingForm) -> AlternatingForm:
    """Wedge product; graded-anticommutative, a^b = (-1)^(pr) b^a."""
    if a.dimension != b.dimension:
        raise ValueError("wedge of forms on fibers of different dimension")
    q = a.dimension
    p, r = a.degree, b.degree
    if p + r > q:
        raise ValueError(f"degree overflow: {p} + {r} > {q}")
    out = AlternatingForm(p + r, q)
    ranks = _rank_table(q, p + r)
    for I, ca in zip(multi_indices(q, p), a.coeffs):
        if ca == 0.0:
            continue
        si = set(I)
        for J, cb in zip(multi_indices(q, r), b.coeffs):
            if cb == 0.0 or si & set(J):
                continue
            merged, _ = sort_with_sign(I + J)
            out.coeffs[ranks[merged]] += _merge_sign(I, J) * ca * cb
    return out


def interior_vector(v, a: AlternatingForm) -> AlternatingForm:
    """Interior product (v . a)(Y_1, ..., Y_{p-1}) = a(v, Y_1, ..., Y_{p-1})."""
    if a.degree == 0:
        raise ValueError("cannot contract a scalar")
    q = a.dimension
    c = _components(v, q)
    mats = interior_matrices(q, a.degree)
    return AlternatingForm(a.degree - 1, q, np.einsum("i,iAB,B->A", c, mats, a.coeffs))


def interior_multi(vs, a: AlternatingForm) -> AlternatingForm:
    """Interior product by the s-vector X_1 ^ ... ^ X_s:

        ((X_1 ^ ... ^ X_s) . a)(Y_1, ..., Y_{p-s}) = a(X_s, ..., X_1, Y_1, ...)

    so the last listed vector contracts the first slot.  When s exceeds the
    degree the result is the vacuous zero scalar, which downstream squared
    norms read as 0.
    """
    vs = list(vs)
    if len(vs) > a.degree:
        return AlternatingForm.zero(0, a.dimension, vacuous=True)
    out = a
    for v in reversed(vs):
        out = interior_vector(v, out)
    return out


def inner(a: AlternatingForm, b: AlternatingForm) -> float:
    """The p-form inner product with the 1/p! normalization: a dot product
    of coefficients over increasing multi-indices."""
    if a.vacuous or b.vacuous:
        return 0.0
    a._check_compatible(b)
    return float(a.coeffs @ b.coeffs)


def hodge(a: AlternatingForm) -> AlternatingForm:
    """Hodge star for the orientation e_0 ^ ... ^ e_{q-1}.

    *e_I = sign(I, I^c) e_{I^c}, so that a ^ (*a) = |a|^2 vol.
    """
    q = a.dimension
    out = AlternatingForm(q - a.degree, q)
    ranks = _rank_table(q, q - a.degree)
    for I, c in zip(multi_indices(q, a.degree), a.coeffs):
        if c == 0.0:
            continue
        comp = tuple(i for i in range(q) if i not in I)
        out.coeffs[ranks[comp]] += _merge_sign(I, comp) * c
    return out


def flat(v, q: int) -> AlternatingForm:
    """The 1-form metrically dual to a vector (same frame components)."""
    return AlternatingForm.one_form(q, _components(v, q))


# -- contraction tables ------------------------------------------------------
#
# Dense matrices for the frame contraction and wedge maps; they turn the
# curvature sums on forms into einsum contractions.


@lru_cache(maxsize=None)
def interior_matrices(q: int, p: int) -> np.ndarray:
    """M[i] @ coeffs(a) = coeffs(e_i . a); shape (q, C(q,p-1), C(q,p))."""
    if p < 1:
        raise ValueError("no contraction matrices for scalars")
    mats = np.zeros((q, comb(q, p - 1), comb(q, p)))
    low = _rank_table(q, p - 1)
    for r, I in enumerate(multi_indices(q, p)):
        for t, i in enumerate(I):
            J = I[:t] + I[t + 1 :]
            mats[i, low[J], r] = -1.0 if t % 2 else 1.0
    return mats


@lru_cache(maxsize=None)
def wedge_matrices(q: int, p: int) -> np.ndarray:
    """W[j] @ coeffs(a) = coeffs(e^j ^ a) for deg-p a; shape (q, C(q,p+1), C(q,p))."""
    if p >= q:
        raise ValueError("degree overflow in wedge matrices")
    mats = np.zeros((q, comb(q, p + 1), comb(q, p)))
    high = _rank_table(q, p + 1)
    for r, J in enumerate(multi_indices(q, p)):
        sj = set(J)
        for j in range(q):
            if j in sj:
                continue
            merged, _ = sort_with_sign((j,) + J)
            mats[j, high[merged], r] = _merge_sign((j,), J)
    return mats


def vector_contractions(a: AlternatingForm) -> np.ndarray:
    """Table T with T[i] = coeffs(e_i . a); shape (q, C(q, p-1))."""
    return np.einsum("iAB,B->iA", interior_matrices(a.dimension, a.degree), a.coeffs)


def bivector_contractions(a: AlternatingForm) -> np.ndarray:
    """Table P with P[i, j] = coeffs((e_j ^ e_i) . a) = a(e_i, e_j, ...);
    shape (q, q, C(q, p-2)).  Requires degree >= 2."""
    q, p = a.dimension, a.degree
    if p < 2:
        raise ValueError("bivector contraction table needs degree >= 2")
    return np.einsum(
        "jAB,iBC,C->ijA",
        interior_matrices(q, p - 1),
        interior_matrices(q, p),
        a.coeffs,
    )
