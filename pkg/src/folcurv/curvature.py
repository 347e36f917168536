"""Curvature tensors, their eigen/sectional extremes, the transverse
curvature induced by the integrability tensor, and the Bochner curvature
term on forms.

Sign convention: on an orthonormal frame, R[l, i, l, i] is the sectional
curvature of the plane (e_l, e_i); the unit round metric has R[l, i, l, i] = 1.
The transverse tensor is assembled algebraically from the ambient tensor and
the integrability tensor:

    Rt[i,j,k,l] = R[i,j,k,l] + 2 g(A_i e_j, A_k e_l)
                  - g(A_j e_k, A_i e_l) - g(A_k e_i, A_j e_l)

whose symmetries and first Bianchi identity follow from the skewness of A
(asserted at construction, not assumed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import (
    AlternatingForm,
    interior_matrices,
    multi_indices,
    vector_contractions,
    bivector_contractions,
    wedge_matrices,
)

__all__ = [
    "RiemannTensor",
    "CurvatureExtremes",
    "space_form",
    "curvature_operator_matrix",
    "curvature_operator_extremes",
    "sectional",
    "sectional_extremes",
    "curvature_extremes",
    "transverse_riemann",
    "transverse_ricci",
    "curvature_action_on_form",
    "curvature_term",
]


class RiemannTensor:
    """A 4-index curvature array R[i,j,k,l] on an orthonormal frame.

    Construction enforces the pair/antisymmetry relations exactly up to
    ``tol`` and the first Bianchi identity; violations raise.
    """

    __slots__ = ("components", "dimension", "space_form_curvature")

    def __init__(self, components, *, tol: float = 1e-10, space_form_curvature=None):
        R = np.asarray(components, dtype=float)
        q = R.shape[0]
        if R.shape != (q, q, q, q):
            raise ValueError(f"curvature array must be (q,q,q,q), got {R.shape}")
        skew_ij = np.max(np.abs(R + np.einsum("jikl->ijkl", R)))
        skew_kl = np.max(np.abs(R + np.einsum("ijlk->ijkl", R)))
        pair = np.max(np.abs(R - np.einsum("klij->ijkl", R)))
        if max(skew_ij, skew_kl, pair) > tol:
            raise ValueError(
                "curvature symmetries violated: "
                f"skew(i,j)={skew_ij:.3e}, skew(k,l)={skew_kl:.3e}, pair={pair:.3e}"
            )
        bianchi = np.max(
            np.abs(R + np.einsum("jkil->ijkl", R) + np.einsum("kijl->ijkl", R))
        )
        if bianchi > tol:
            raise ValueError(f"first Bianchi identity violated: residual {bianchi:.3e}")
        self.components = R
        self.dimension = q
        self.space_form_curvature = space_form_curvature

    def ricci(self) -> np.ndarray:
        """Ric[i,j] = sum_l R[l,i,l,j]."""
        return np.einsum("lilj->ij", self.components)

    def scalar(self) -> float:
        return float(np.einsum("lili->", self.components))

    def __repr__(self):
        return f"RiemannTensor(q={self.dimension}, space_form={self.space_form_curvature})"


def space_form(q: int, c: float) -> RiemannTensor:
    """Constant-curvature tensor R[i,j,k,l] = c (d_ik d_jl - d_il d_jk)."""
    if q < 2:
        raise ValueError("space form needs dimension >= 2")
    eye = np.eye(q)
    R = c * (np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye))
    return RiemannTensor(R, space_form_curvature=float(c))


def curvature_operator_matrix(R: RiemannTensor) -> np.ndarray:
    """The symmetric C(q,2) x C(q,2) matrix of the curvature operator on the
    orthonormal bivector basis {e_i ^ e_j : i < j}."""
    pairs = multi_indices(R.dimension, 2)
    M = np.empty((len(pairs), len(pairs)))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            M[a, b] = R.components[i, j, k, l]
    return M


def curvature_operator_extremes(R: RiemannTensor) -> tuple[float, float]:
    """Extreme eigenvalues (rho0, rho1) of the curvature operator."""
    w = np.linalg.eigvalsh(curvature_operator_matrix(R))
    return float(w[0]), float(w[-1])


def sectional(R: RiemannTensor, u, v) -> float:
    """Sectional curvature R(u,v,u,v) / (|u|^2 |v|^2 - <u,v>^2)."""
    u = np.asarray(getattr(u, "components", u), dtype=float)
    v = np.asarray(getattr(v, "components", v), dtype=float)
    den = (u @ u) * (v @ v) - (u @ v) ** 2
    if den < 1e-14:
        raise ValueError("degenerate plane: vectors are (numerically) dependent")
    num = float(np.einsum("ijkl,i,j,k,l->", R.components, u, v, u, v))
    return num / den


def _refine_plane(R: RiemannTensor, u, v, sign: float) -> float:
    """Deterministic local hill climb of sign*sectional over the plane,
    starting from the orthonormal pair (u, v).  Returns the refined
    sectional value (a genuine sectional curvature, whatever the start)."""
    q = R.dimension
    best = sectional(R, u, v)
    step = 0.3
    while step > 1e-3:
        improved = False
        for d in range(q):
            for du, dv in ((1, 0), (0, 1)):
                for s in (step, -step):
                    uu = u + (s * du) * np.eye(q)[d]
                    vv = v + (s * dv) * np.eye(q)[d]
                    uu = uu / np.linalg.norm(uu)
                    vv = vv - (vv @ uu) * uu
                    nv = np.linalg.norm(vv)
                    if nv < 1e-8:
                        continue
                    vv = vv / nv
                    val = sectional(R, uu, vv)
                    if sign * val > sign * best:
                        best, u, v = val, uu, vv
                        improved = True
        if not improved:
            step /= 2.0
    return best


def sectional_extremes(R: RiemannTensor, budget: int, rng_seed) -> tuple[float, float]:
    """Sampled estimates (k0_est, k1_est) of the extreme sectional curvatures.

    Random 2-planes plus a local refinement of each sample.  The only
    guarantee is rho0 <= k0_est <= k1_est <= rho1 (every value is a genuine
    sectional curvature); estimates are exact for space forms, and for a
    fixed seed k1_est is non-decreasing and k0_est non-increasing in the
    budget (each budget extends the previous sample set).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if R.space_form_curvature is not None:
        c = R.space_form_curvature
        return c, c
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    q = R.dimension
    k0 = np.inf
    k1 = -np.inf
    for _ in range(budget):
        u = rng.standard_normal(q)
        u /= np.linalg.norm(u)
        v = rng.standard_normal(q)
        v -= (v @ u) * u
        v /= np.linalg.norm(v)
        k0 = min(k0, _refine_plane(R, u, v, -1.0))
        k1 = max(k1, _refine_plane(R, u, v, +1.0))
    return float(k0), float(k1)


@dataclass
class CurvatureExtremes:
    """Exact operator eigenvalue extremes with sampled sectional extremes.

    The chain rho0 <= k0_est <= k1_est <= rho1 is validated at construction.
    """

    rho0: float
    rho1: float
    k0_est: float
    k1_est: float
    exact_space_form: float | None = None

    def __post_init__(self):
        slack = 1e-9
        if not (
            self.rho0 - slack <= self.k0_est
            and self.k0_est <= self.k1_est + slack
            and self.k1_est <= self.rho1 + slack
        ):
            raise ValueError(
                "curvature extreme chain violated: "
                f"rho0={self.rho0}, k0={self.k0_est}, k1={self.k1_est}, rho1={self.rho1}"
            )


def curvature_extremes(R: RiemannTensor, budget: int = 64, rng_seed=0) -> CurvatureExtremes:
    rho0, rho1 = curvature_operator_extremes(R)
    k0, k1 = sectional_extremes(R, budget, rng_seed)
    return CurvatureExtremes(rho0, rho1, k0, k1, exact_space_form=R.space_form_curvature)


# -- transverse curvature from the integrability tensor -----------------------


def transverse_riemann(RM: RiemannTensor, A, *, tol: float = 1e-9) -> RiemannTensor:
    """Transverse curvature tensor from the ambient one and the
    integrability tensor.  The output is validated against all curvature
    invariants at ``tol``; a violation signals a broken A."""
    a = A.a
    if a.shape[0] != RM.dimension:
        raise ValueError("integrability tensor dimension does not match curvature")
    G = np.einsum("ijs,kls->ijkl", a, a)
    Rt = (
        RM.components
        + 2.0 * G
        - np.einsum("jks,ils->ijkl", a, a)
        - np.einsum("kis,jls->ijkl", a, a)
    )
    return RiemannTensor(Rt, tol=tol)


def transverse_ricci(RM: RiemannTensor, A, *, tol: float = 1e-10) -> tuple[np.ndarray, float]:
    """Transverse Ricci and scalar curvature:

        Ric_t[i,j] = sum_l { R[l,i,l,j] + 3 g(A_l e_i, A_l e_j) }

    (the skew-diagonal term g(A_l e_l, .) vanishes identically).  The result
    is checked against the trace of the full transverse tensor.
    """
    a = A.a
    ric = RM.ricci() + 3.0 * np.einsum("lis,ljs->ij", a, a)
    trace_route = transverse_riemann(RM, A).ricci()
    err = np.max(np.abs(ric - trace_route))
    if err > tol:
        raise ValueError(f"transverse Ricci disagrees with Riemann trace by {err:.3e}")
    return ric, float(np.trace(ric))


# -- curvature acting on forms ------------------------------------------------


def curvature_action_on_form(Rnabla: RiemannTensor, a: AlternatingForm) -> AlternatingForm:
    """The Bochner curvature operator on a p-form,

        R(a) = - sum_{i,j} e^j ^ (e_i . (R(e_i, e_j) a)),

    where R(e_i, e_j) acts on forms as the negative derivation of the frame
    endomorphism e_k -> sum_l R[i,j,k,l] e_l.  Linear in a; zero on scalars.
    """
    q, p = a.dimension, a.degree
    if Rnabla.dimension != q:
        raise ValueError("dimension mismatch between curvature and form")
    if p == 0:
        return AlternatingForm.zero(0, q)
    W = wedge_matrices(q, p - 1)
    L = interior_matrices(q, p)
    # T[k,l] = e^k ^ (e_l . a)
    T = np.einsum("kAB,lBC,C->klA", W, L, a.coeffs)
    phi = np.einsum("ijkl,klA->ijA", Rnabla.components, T)
    out = np.einsum("jAB,iBC,ijC->A", W, L, phi)
    return AlternatingForm(p, q, out)


def curvature_term(ric: np.ndarray, Rnabla: RiemannTensor, a: AlternatingForm) -> float:
    """The Bochner curvature pairing <R(a), a> through its Ricci/Riemann
    contraction expansion:

        sum Ric[i,j] <e_i.a, e_j.a>
        - 1/2 sum R[i,j,k,l] <(e_j^e_i).a, (e_l^e_k).a>

    Equality with ``inner(curvature_action_on_form(...), a)`` is the first
    Bianchi consistency check, exercised by the verification suites.
    """
    if a.degree == 0:
        return 0.0
    V = vector_contractions(a)
    term = float(np.einsum("ij,iA,jA->", ric, V, V))
    if a.degree >= 2:
        P = bivector_contractions(a)
        term -= 0.5 * float(np.einsum("ijkl,ijA,klA->", Rnabla.components, P, P))
    return term
