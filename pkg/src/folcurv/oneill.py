"""The integrability (O'Neill) tensor, the auxiliary B+/B- tensors with
their norm identities, and evaluators for the curvature bounds.

The central correctness statement of the module is the master identity

    <R(a), a> = S1(a) - 1/2 S2(a) + |B+(a)|^2 + 2 V(a) - M(a)

relating the Bochner pairing computed from the transverse curvature to
ambient-curvature contractions and integrability-tensor terms, where

    S1 = sum R[l,i,l,j] <e_i.a, e_j.a>,
    S2 = sum R[i,j,k,l] <(e_j^e_i).a, (e_l^e_k).a>,
    V  = sum_{l,s} |A_l V_s . a|^2          (vertical contraction term),
    M  = sum_s |(sum_i A_i V_s ^ e_i) . a|^2  (mixed bivector term).

It holds exactly for every skew A, every algebraic curvature tensor, and
every form; ``master_identity_residual`` enforces it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import (
    RiemannTensor,
    curvature_operator_matrix,
    curvature_term,
    transverse_ricci,
    transverse_riemann,
)
from .exterior import (
    AlternatingForm,
    bivector_contractions,
    hodge,
    interior_vector,
    multi_indices,
    vector_contractions,
    wedge,
)

__all__ = [
    "ONeillTensor",
    "BoundReport",
    "MasterIdentityError",
    "oneill_norm",
    "sandwich_check",
    "bplus_norm",
    "bplus_norm_closed",
    "bminus_norm",
    "bminus_norm_closed",
    "mixed_bivector_term",
    "vertical_contraction_term",
    "ricci_contraction",
    "bivector_curvature_sum",
    "prop31_value",
    "master_identity_residual",
    "prop41_check",
    "thm31_report",
    "thm32_report",
    "thm41_report",
    "cor31_scan",
    "two_form_rewrite",
    "contraction_chain",
    "hodge_trace_residual",
]


class ONeillTensor:
    """Integrability tensor components a[i, j, s] = g(A_{e_i} e_j, V_s) for a
    rank-q horizontal frame and a (n-q)-dimensional vertical frame.

    Skewness in (i, j) is exact and enforced; the action on vertical vectors
    is derived, not stored: g(A_{e_i} V_s, e_j) = -a[i, j, s].
    """

    __slots__ = ("a", "q", "vdim")

    def __init__(self, a):
        a = np.asarray(a, dtype=float)
        if a.ndim != 3 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected shape (q, q, vdim), got {a.shape}")
        if not np.array_equal(a, -a.transpose(1, 0, 2)):
            raise ValueError("integrability tensor must be exactly skew in (i, j)")
        self.a = a
        self.q = a.shape[0]
        self.vdim = a.shape[2]

    @classmethod
    def zero(cls, q: int, vdim: int = 1) -> "ONeillTensor":
        return cls(np.zeros((q, q, vdim)))

    def horizontal_action(self, i: int, s: int) -> np.ndarray:
        """Components of the horizontal vector A_{e_i} V_s."""
        return -self.a[i, :, s]

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.a * self.a))

    def __repr__(self):
        return f"ONeillTensor(q={self.q}, vdim={self.vdim}, |A|^2={self.norm_sq:.6g})"


@dataclass
class BoundReport:
    """Evaluated sides of an inequality at a point: gap = lhs - rhs exactly."""

    theorem_id: str
    lhs: float
    rhs: float
    gap: float
    tol: float
    satisfied: bool
    inputs: dict = field(default_factory=dict)
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "name": self.theorem_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "tol": self.tol,
            "pass": self.satisfied,
            "inputs": self.inputs,
            "note": self.note,
        }


def _report(theorem_id, lhs, rhs, tol, inputs, note="") -> BoundReport:
    gap = lhs - rhs
    return BoundReport(theorem_id, float(lhs), float(rhs), float(gap), tol,
                       bool(gap >= -tol), inputs, note)


class MasterIdentityError(ValueError):
    """Raised when the master identity residual exceeds tolerance; carries
    the full input digest."""

    def __init__(self, residual: float, digest: dict):
        self.residual = residual
        self.digest = digest
        super().__init__(f"master identity residual {residual:.3e} on {digest}")


# -- elementary quantities -----------------------------------------------------


def oneill_norm(A: ONeillTensor) -> float:
    """|A|^2 = sum a[i,j,s]^2; coincides with sum_{i,s} |A_{e_i} V_s|^2 by the
    derived vertical action."""
    return A.norm_sq


def ricci_contraction(RM: RiemannTensor, a: AlternatingForm) -> float:
    """S1 = sum R[l,i,l,j] <e_i.a, e_j.a>."""
    if a.degree == 0:
        return 0.0
    V = vector_contractions(a)
    return float(np.einsum("ij,iA,jA->", RM.ricci(), V, V))


def bivector_curvature_sum(RM: RiemannTensor, a: AlternatingForm) -> float:
    """S2 = sum R[i,j,k,l] <(e_j^e_i).a, (e_l^e_k).a>; zero below degree 2."""
    if a.degree < 2:
        return 0.0
    P = bivector_contractions(a)
    return float(np.einsum("ijkl,ijA,klA->", RM.components, P, P))


def vertical_contraction_term(A: ONeillTensor, a: AlternatingForm) -> float:
    """V = sum_{l,s} |A_{e_l} V_s . a|^2, evaluated literally; equals
    sum g(A_l e_i, A_l e_j) <e_i.a, e_j.a>."""
    if a.degree == 0:
        return 0.0
    total = 0.0
    for l in range(A.q):
        for s in range(A.vdim):
            w = interior_vector(A.horizontal_action(l, s), a)
            total += w.norm_sq
    return total


def mixed_bivector_term(A: ONeillTensor, a: AlternatingForm) -> float:
    """M = sum_s |(sum_i A_{e_i} V_s ^ e_i) . a|^2, evaluated as the
    quadruple contraction sum

        sum g(A_i e_j, A_k e_l) <(e_j^e_i).a, (e_l^e_k).a>;

    zero below degree 2 (the bivector contraction underflows).
    """
    if a.degree < 2:
        return 0.0
    P = bivector_contractions(a)
    return float(np.einsum("ijs,kls,ijA,klA->", A.a, A.a, P, P))


# -- the B+ tensor --------------------------------------------------------------


def bplus_norm(A: ONeillTensor, a: AlternatingForm) -> float:
    """|B+(a)|^2 from the definition: B+(a) is the vertical-valued p-tensor
    sum_i (e_i.a) ^ A_{e_i}, with A_{e_i} the vertical-valued 1-form of
    components a[i, j, s]."""
    if a.degree < 1:
        raise ValueError("B+ needs a form of degree >= 1")
    q = a.dimension
    total = 0.0
    for s in range(A.vdim):
        acc = AlternatingForm.zero(a.degree, q)
        for i in range(q):
            ei = np.zeros(q)
            ei[i] = 1.0
            acc = acc + wedge(interior_vector(ei, a), AlternatingForm.one_form(q, A.a[i, :, s]))
        total += acc.norm_sq
    return total


def bplus_norm_closed(A: ONeillTensor, a: AlternatingForm) -> float:
    """Closed form of |B+(a)|^2:

        sum g(A_k e_i, A_k e_j) <e_i.a, e_j.a>
      + sum g(A_i e_l, A_j e_k) <(e_j^e_i).a, (e_l^e_k).a>

    with the second sum reading 0 below degree 2.
    """
    if a.degree < 1:
        raise ValueError("B+ needs a form of degree >= 1")
    V = vector_contractions(a)
    out = float(np.einsum("kis,kjs,iA,jA->", A.a, A.a, V, V))
    if a.degree >= 2:
        P = bivector_contractions(a)
        out += float(np.einsum("ils,jks,ijA,klA->", A.a, A.a, P, P))
    return out


# -- the B- tensor --------------------------------------------------------------


def bminus_norm(A: ONeillTensor, a: AlternatingForm) -> float:
    """|B-(a)|^2 from the definition.

    B-(a) contracts a by (p-1)-vectors e_i ^ e_I and wedges with A_{e_i}; the
    squared norm sums the squared (k, l) components over all (p-2)-index
    blocks I with the 1/(p-2)! normalization.  Vacuously 0 below degree 2.
    """
    p, q = a.degree, a.dimension
    if p < 2:
        return 0.0
    total = 0.0
    for s in range(A.vdim):
        for I in multi_indices(q, p - 2):
            # omega_i = (e_i ^ e_I) . a as a 1-form; its value on e_k is
            # a(e_{i_{p-2}}, ..., e_{i_1}, e_i, e_k), a fixed reindexing sign
            # that squares away, so contract in slot order (i, I, k).
            for k in range(q):
                for l in range(k + 1, q):
                    val = 0.0
                    for i in range(q):
                        val += (
                            a.component(i, *I, k) * A.a[i, l, s]
                            - a.component(i, *I, l) * A.a[i, k, s]
                        )
                    total += 2.0 * val * val  # (k,l) and (l,k) blocks
    return total


def bminus_norm_closed(A: ONeillTensor, a: AlternatingForm) -> float:
    """Closed form of |B-(a)|^2:

        1/2 |B-(a)|^2 = (p-1) sum <e_i.a, e_j.a> g(A_i e_l, A_j e_l)
                        - sum <(e_j^e_i).a, (e_l^e_k).a> g(A_i e_l, A_k e_j).
    """
    p = a.degree
    if p < 2:
        return 0.0
    V = vector_contractions(a)
    half = (p - 1) * float(np.einsum("ils,jls,iA,jA->", A.a, A.a, V, V))
    P = bivector_contractions(a)
    half -= float(np.einsum("ils,kjs,ijA,klA->", A.a, A.a, P, P))
    return 2.0 * half


# -- identity and bound evaluators ----------------------------------------------


def prop31_value(RM: RiemannTensor, A: ONeillTensor, a: AlternatingForm) -> float:
    """The parallel-form obstruction quantity

        E(a) = -S1 + 1/2 S2 + M - 2 V,

    which equals |B+(a)|^2 - <R(a), a> identically; for a parallel form the
    Bochner pairing vanishes and E(a) = |B+(a)|^2 >= 0.
    """
    return (
        -ricci_contraction(RM, a)
        + 0.5 * bivector_curvature_sum(RM, a)
        + mixed_bivector_term(A, a)
        - 2.0 * vertical_contraction_term(A, a)
    )


def master_identity_residual(
    RM: RiemannTensor,
    A: ONeillTensor,
    a: AlternatingForm,
    *,
    tol: float = 1e-10,
    raise_on_violation: bool = True,
) -> float:
    """Residual of the module's central identity (see module docstring),
    with the Bochner pairing computed from the transverse curvature data.

    Must vanish (|residual| <= tol) on all inputs; a violation raises
    ``MasterIdentityError`` carrying the input digest.
    """
    Rn = transverse_riemann(RM, A)
    ric, _ = transverse_ricci(RM, A)
    lhs = curvature_term(ric, Rn, a)
    rhs = (
        ricci_contraction(RM, a)
        - 0.5 * bivector_curvature_sum(RM, a)
        + bplus_norm(A, a)
        + 2.0 * vertical_contraction_term(A, a)
        - mixed_bivector_term(A, a)
    )
    residual = lhs - rhs
    if raise_on_violation and abs(residual) > tol:
        digest = {
            "q": a.dimension,
            "p": a.degree,
            "vdim": A.vdim,
            "space_form_c": RM.space_form_curvature,
            "form_norm_sq": a.norm_sq,
            "oneill_norm_sq": A.norm_sq,
        }
        raise MasterIdentityError(residual, digest)
    return residual


def sandwich_check(
    scal_nabla: float, K0: float, K1: float, q: int, A: ONeillTensor, *, tol: float = 1e-9
) -> tuple[BoundReport, BoundReport]:
    """Two-sided estimate of the integrability norm,

        Scal_t - q(q-1) K1 <= 3|A|^2 <= Scal_t - q(q-1) K0,

    with equality on space forms.  Violations are flagged, not raised."""
    if q < 2:
        raise ValueError("sandwich bound needs q >= 2")
    n2 = 3.0 * oneill_norm(A)
    inputs = {"q": q, "K0": K0, "K1": K1, "scal_nabla": scal_nabla,
              "oneill_norm_sq": oneill_norm(A)}
    lower = _report("sandwich.lower", n2, scal_nabla - q * (q - 1) * K1, tol, inputs)
    upper = _report("sandwich.upper", scal_nabla - q * (q - 1) * K0, n2, tol, inputs)
    return lower, upper


def prop41_check(
    RM: RiemannTensor, A: ONeillTensor, a: AlternatingForm, *, tol: float = 1e-9
) -> BoundReport:
    """Pointwise harmonic-form inequality,

        2 <R(a), a> >= -(p-7)/3 T1 + (p-1)/3 S1 - S2 - (V + 2M),

    with T1 the transverse Ricci contraction.  The slack is exactly
    1/2 |B-(a)|^2 + |B+(a)|^2, so the gap is nonnegative on all inputs;
    a negative gap is reported, not raised.
    """
    p = a.degree
    Rn = transverse_riemann(RM, A)
    ric, _ = transverse_ricci(RM, A)
    lhs = 2.0 * curvature_term(ric, Rn, a)
    if p == 0:
        t1 = 0.0
    else:
        V = vector_contractions(a)
        t1 = float(np.einsum("ij,iA,jA->", ric, V, V))
    rhs = (
        -(p - 7) / 3.0 * t1
        + (p - 1) / 3.0 * ricci_contraction(RM, a)
        - bivector_curvature_sum(RM, a)
        - (vertical_contraction_term(A, a) + 2.0 * mixed_bivector_term(A, a))
    )
    inputs = {"q": a.dimension, "p": p, "vdim": A.vdim}
    return _report("prop4.1", lhs, rhs, tol, inputs)


def _check_pq(q: int, p: int):
    if q < 4 or not 2 <= p <= q - 2:
        raise ValueError(f"hypothesis violated: need q >= 4 and 2 <= p <= q-2, got q={q}, p={p}")


def _degree_constant(q: int, p: int) -> float:
    return p * (p - 1) + (q - p) * (q - p - 1)


def thm31_report(K0: float, rho1: float, q: int, p: int, A: ONeillTensor,
                 *, tol: float = 1e-9) -> BoundReport:
    """Lower bound for the integrability norm under a parallel transverse
    p-form on a positively curved manifold:

        (q-2)|A|^2 >= K0 q(q-1) - (p(p-1) + (q-p)(q-p-1)) rho1.
    """
    _check_pq(q, p)
    lhs = (q - 2) * oneill_norm(A)
    rhs = K0 * q * (q - 1) - _degree_constant(q, p) * rho1
    inputs = {"q": q, "p": p, "K0": K0, "rho1": rho1, "oneill_norm_sq": oneill_norm(A)}
    return _report("thm3.1", lhs, rhs, tol, inputs)


def thm32_report(scalM: float, K1: float, rho1: float, n: int, q: int, p: int,
                 A: ONeillTensor, *, tol: float = 1e-9) -> BoundReport:
    """Scalar-curvature variant of the parallel-form bound:

        (q-2)|A|^2 >= Scal - K1 (n-q)(n+q-1) - (p(p-1) + (q-p)(q-p-1)) rho1.
    """
    _check_pq(q, p)
    lhs = (q - 2) * oneill_norm(A)
    rhs = scalM - K1 * (n - q) * (n + q - 1) - _degree_constant(q, p) * rho1
    inputs = {"n": n, "q": q, "p": p, "K1": K1, "rho1": rho1, "scalM": scalM,
              "oneill_norm_sq": oneill_norm(A)}
    return _report("thm3.2", lhs, rhs, tol, inputs)


def thm41_report(scal_nabla: float, K0: float, rho1: float, q: int, p: int,
                 A: ONeillTensor, *, tol: float = 1e-9) -> BoundReport:
    """Harmonic-form bound, valid at some point of a compact manifold
    carrying a basic harmonic p-form (an existence-type statement; this
    evaluates the two sides at the configured point):

        (2q+1)|A|^2 >= -(p-7)/3 Scal_t + (p-1)/3 q(q-1) K0
                       - 2 (p(p-1) + (q-p)(q-p-1)) rho1.
    """
    _check_pq(q, p)
    lhs = (2 * q + 1) * oneill_norm(A)
    rhs = (
        -(p - 7) / 3.0 * scal_nabla
        + (p - 1) / 3.0 * q * (q - 1) * K0
        - 2.0 * _degree_constant(q, p) * rho1
    )
    inputs = {"q": q, "p": p, "K0": K0, "rho1": rho1, "scal_nabla": scal_nabla,
              "oneill_norm_sq": oneill_norm(A)}
    return _report("thm4.1", lhs, rhs, tol, inputs, note="existence-type")


def cor31_scan(RM: RiemannTensor, A: ONeillTensor, trials: int, rng_seed) -> float:
    """Maximum of the obstruction quantity E over random unit 1-forms.

    On a manifold with positive sectional curvature a parallel basic 1-form
    would force max E >= 0, so a strictly negative sampled maximum certifies
    (on the sample) the nonexistence obstruction.
    """
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    q = RM.dimension
    best = -np.inf
    for _ in range(trials):
        v = rng.standard_normal(q)
        v /= np.linalg.norm(v)
        best = max(best, prop31_value(RM, A, AlternatingForm.one_form(q, v)))
    return float(best)


# -- estimate and identity checks ------------------------------------------------


def two_form_rewrite(RM: RiemannTensor, a: AlternatingForm) -> dict:
    """Rewrite of the bivector curvature sum through the block 2-forms
    theta^I = 1/2 sum a(i, j, I) e_i ^ e_j:

        1/2 S2 = 2 sum_{I increasing} rho(theta^I, theta^I)
               <= p(p-1) rho1 |a|^2.

    Returns the three quantities; the first two agree identically and the
    bound holds for every algebraic curvature tensor.
    """
    p, q = a.degree, a.dimension
    half_s2 = 0.5 * bivector_curvature_sum(RM, a)
    if p < 2:
        theta_route = 0.0
    else:
        M = curvature_operator_matrix(RM)
        pair_rank = {ij: r for r, ij in enumerate(multi_indices(q, 2))}
        theta_route = 0.0
        for I in multi_indices(q, p - 2):
            v = np.zeros(len(pair_rank))
            for (i, j), r in pair_rank.items():
                v[r] = a.component(i, j, *I)
            theta_route += 2.0 * float(v @ M @ v)
    rho1 = float(np.linalg.eigvalsh(curvature_operator_matrix(RM))[-1])
    bound = p * (p - 1) * rho1 * a.norm_sq
    return {"half_s2": half_s2, "theta_route": theta_route, "bound": bound}


def contraction_chain(A: ONeillTensor, a: AlternatingForm) -> dict:
    """Per-vertical-direction chain bounding the mixed bivector term,

        M_s <= q sum_i |(A_i V_s ^ e_i) . a|^2 <= q sum_i |A_i V_s . a|^2,

    reading the middle object as the bivector contraction u.(e_i.a); both
    steps then hold, the second because A_i V_s is orthogonal to e_i.  The
    wedge reading of the middle term, q sum_i |A_i V_s ^ (e_i . a)|^2, is
    evaluated and returned for comparison only; it does not enter the
    asserted chain.
    """
    if a.degree < 1:
        raise ValueError("contraction chain needs a form of degree >= 1")
    q = a.dimension
    P = bivector_contractions(a) if a.degree >= 2 else None
    out = {"mixed_term_per_s": [], "q_sum_bivector_per_s": [],
           "q_sum_wedge_per_s": [], "q_sum_contraction_per_s": []}
    for s in range(A.vdim):
        mid = midw = end = 0.0
        acc = None
        for i in range(q):
            u = A.horizontal_action(i, s)
            if P is not None:
                w = np.einsum("j,jA->A", u, P[i])  # (u ^ e_i) . a = u . (e_i . a)
                mid += float(w @ w)
                acc = w if acc is None else acc + w
            end += interior_vector(u, a).norm_sq
            ei = np.zeros(q)
            ei[i] = 1.0
            midw += wedge(AlternatingForm.one_form(q, u), interior_vector(ei, a)).norm_sq
        out["mixed_term_per_s"].append(float(acc @ acc) if acc is not None else 0.0)
        out["q_sum_bivector_per_s"].append(q * mid)
        out["q_sum_wedge_per_s"].append(q * midw)
        out["q_sum_contraction_per_s"].append(q * end)
    return out


def hodge_trace_residual(RM: RiemannTensor, a: AlternatingForm) -> float:
    """Residual of the duality trace identity

        S1(a) + S1(*a) = (sum_{l,i} R[l,i,l,i]) |a|^2,

    which pairs the Ricci contraction of a form with that of its Hodge dual.
    """
    lhs = ricci_contraction(RM, a) + ricci_contraction(RM, hodge(a))
    return lhs - RM.scalar() * a.norm_sq
