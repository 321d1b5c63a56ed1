"""Canonical-coordinate metric jets and the series curvature oracle.

For a member bracket mu the invariant metric pulled back through the
exponential-type chart has a convergent Taylor expansion around the
origin whose coefficients are universal polynomials in the structure
constants.  The building block is the analytic matrix function

    A(x) = (I - exp(-ad x)) / ad x = sum_k (-1)^k / (k+1)! (ad x)^k,

evaluated on tangent vectors x; the metric coefficients are inner
products of tangent-block columns of A(x):

    g_ij(x) = < P A(x) e_{q+i}, P A(x) e_{q+j} >,   P = tangent projection.

Everything downstream of the jet is classical tensor calculus on a
polynomial metric: Christoffel symbols, the curvature tensor, and its
covariant derivatives, evaluated at the origin.  This path makes no use
of algebraic curvature formulas, which is what makes it a trustworthy
cross-check (and the arbiter of sign conventions) for the fast
algebraic path in the curvature module.

The chart is centred at the identity coset; the jet of degree D
determines nabla^k Riem at the origin exactly for k <= D - 2.
"""

import math
from fractions import Fraction

import numpy as np

from .brackets import bracket_norm, check_membership
from .polyjet import PolySpace

__all__ = [
    "dexp_series",
    "MetricJet",
    "metric_jet",
    "coordinate_curvature_oracle",
    "curvature_derivatives",
    "InjectivityBound",
    "injectivity_bound",
    "is_completely_solvable",
]


def ad_matrix(mu, x):
    """Matrix of ad(x) = mu(x, .) on R^(q+n)."""
    c = mu.as_float() if mu.exact else mu.c
    return np.einsum("k,kvu->uv", np.asarray(x, float), c)


def dexp_series(mu, x, terms):
    """Partial sum of A(x) with the given number of terms.

    Returns sum_{k=0}^{terms-1} (-1)^k / (k+1)! (ad x)^k as a dense
    (q+n) x (q+n) matrix.  The tail after T terms is bounded in operator
    norm by ||ad x||^T / (T+1)! * exp(||ad x||).
    """
    if terms < 1:
        raise ValueError("need at least one term")
    dim = mu.dim
    adx = ad_matrix(mu, x)
    acc = np.eye(dim)
    power = np.eye(dim)
    for k in range(1, terms):
        power = power @ adx
        acc += ((-1) ** k / math.factorial(k + 1)) * power
    return acc


class MetricJet:
    """Polynomial jet of the canonical-coordinate metric at the origin.

    Fields: q, n, degree, space (the PolySpace over n variables), and g,
    an array of shape (n, n, space.size) holding the coefficient vector
    of every metric entry.  g is symmetric in the first two axes and
    g(0) is the identity.
    """

    def __init__(self, q, n, degree, space, g):
        self.q = q
        self.n = n
        self.degree = degree
        self.space = space
        self.g = g

    @property
    def exact(self):
        return self.g.dtype == object

    def coefficient(self, i, j, alpha):
        """Coefficient of x^alpha in g_ij."""
        return self.g[i, j, self.space.index[tuple(alpha)]]

    def evaluate(self, x):
        """The metric matrix at a coordinate point (partial sums)."""
        return self.space.evaluate(self.g, x)

    def to_dict(self):
        entries = []
        for i in range(self.n):
            for j in range(i, self.n):
                for idx, alpha in enumerate(self.space.monomials):
                    v = self.g[i, j, idx]
                    if v != 0:
                        entries.append([i, j, list(alpha), float(v)])
        return {"q": self.q, "n": self.n, "degree": self.degree, "entries": entries}


def metric_jet(mu, degree):
    """Taylor coefficients of the coordinate metric up to a total degree.

    Exact Fraction arithmetic is used when the bracket stores exact
    constants, float64 otherwise.  Only the splitting and the structure
    constants enter; the purely isotropy-isotropy part of the bracket
    does not affect the result.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    report = check_membership(mu)
    if not report.passed:
        raise ValueError(f"bracket fails the membership check: {report!r}")
    q, n, dim = mu.q, mu.n, mu.dim
    exact = mu.exact
    space = PolySpace(n, degree)
    c = mu.c

    # ad(e_{q+k}) as (q+n) x (q+n) matrices; exact path keeps Fractions
    if exact:
        ads = np.empty((n, dim, dim), dtype=object)
        for k in range(n):
            for u in range(dim):
                for v in range(dim):
                    ads[k, u, v] = Fraction(c[q + k, v, u])
    else:
        ads = np.array([c[q + k].T for k in range(n)])

    # W recursion over monomials: W_alpha = sum_k W_{alpha - e_k} ad_k,
    # so W_alpha is the sum of all |alpha|-letter matrix words with
    # letter multiset alpha.  B_alpha = (-1)^m / (m+1)! W_alpha.
    if exact:
        w = np.empty((space.size, dim, dim), dtype=object)
        w[...] = Fraction(0)
        for u in range(dim):
            w[0, u, u] = Fraction(1)
    else:
        w = np.zeros((space.size, dim, dim))
        w[0] = np.eye(dim)
    for idx, alpha in enumerate(space.monomials):
        m = sum(alpha)
        if m == 0:
            continue
        acc = None
        for k in range(n):
            if alpha[k] == 0:
                continue
            beta = list(alpha)
            beta[k] -= 1
            prev = w[space.index[tuple(beta)]]
            term = np.dot(prev, ads[k])
            acc = term if acc is None else acc + term
        w[idx] = acc

    if exact:
        b = np.empty_like(w)
        for idx in range(space.size):
            m = int(space.degrees[idx])
            b[idx] = w[idx] * Fraction((-1) ** m, math.factorial(m + 1))
    else:
        scale = np.array([(-1.0) ** m / math.factorial(m + 1) for m in space.degrees])
        b = w * scale[:, None, None]

    # tangent block of B and the convolution g = P^T P
    p = b[:, q:, q:]
    i1, i2, it = space._mul_i1, space._mul_i2, space._mul_it
    if exact:
        g = space.zeros((n, n), exact)
        for s, t, u in zip(i1, i2, it):
            g[:, :, u] = g[:, :, u] + np.dot(p[s].T, p[t])
    else:
        acc = np.zeros((space.size, n, n))
        prod = np.einsum("pki,pkj->pij", p[i1], p[i2])
        np.add.at(acc, it, prod)
        g = np.moveaxis(acc, 0, -1)
    return MetricJet(q, n, degree, space, g)


def _christoffel(space, g):
    """Christoffel symbols Gamma^k_{ij} of a polynomial metric.

    The inverse metric comes from the Neumann series of g = I + h,
    which terminates within the truncation degree because h has no
    constant term.
    """
    n = space.nvars
    exact = g.dtype == object
    half = Fraction(1, 2) if exact else 0.5

    eye = space.zeros((n, n), exact)
    one = Fraction(1) if exact else 1.0
    for i in range(n):
        eye[i, i, 0] = one
    h = g - eye
    ginv = eye.copy()
    term = eye.copy()
    for _ in range(space.degree):
        term = -space.matmul(term, h)
        ginv = ginv + term

    dg = np.stack([space.diff(g, m) for m in range(n)])   # dg[m, i, j]
    # c[l, i, j] = d_i g_{jl} + d_j g_{il} - d_l g_{ij}
    cc = (np.transpose(dg, (2, 0, 1, 3)) + np.transpose(dg, (2, 1, 0, 3))
          - np.transpose(dg, (0, 1, 2, 3)))
    gam = space.zeros((n, n, n), exact)
    for k in range(n):
        for l in range(n):
            gam[k] = gam[k] + space.mul(ginv[k, l][None, None, :], cc[l])
    return half * gam, ginv


def _riemann_poly(space, g, gam):
    """Lowered curvature tensor Riem_{ijkl} = <R(d_i, d_j) d_k, d_l>."""
    n = space.nvars
    exact = g.dtype == object
    dgam = np.stack([space.diff(gam, m) for m in range(n)])   # dgam[m, k, i, j]
    rup = space.zeros((n, n, n, n), exact)                    # rup[l, k, i, j]
    for l in range(n):
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    rup[l, k, i, j] = dgam[i, l, j, k] - dgam[j, l, i, k]
    for m in range(n):
        term = space.mul(gam[:, :, m, None, None, :], gam[None, None, m, :, :, :])
        # term[l, i, j, k] = Gamma^l_{im} Gamma^m_{jk}
        rup = rup + np.transpose(term, (0, 3, 1, 2, 4)) - np.transpose(term, (0, 3, 2, 1, 4))
    low = space.zeros((n, n, n, n), exact)       # low[k, i, j, l]
    for l in range(n):
        for m in range(n):
            low[:, :, :, l] = low[:, :, :, l] + space.mul(
                g[l, m][None, None, None, :], rup[m, :, :, :])
    # reorder low[k, i, j, l] -> riem[i, j, k, l]
    return np.transpose(low, (1, 2, 0, 3, 4))


def _covariant_derivative(space, gam, t):
    """One covariant derivative of a covariant poly tensor, index prepended."""
    n = space.nvars
    rank = t.ndim - 1
    out = np.stack([space.diff(t, m) for m in range(n)])
    for s in range(rank):
        ts = np.moveaxis(t, s, 0)          # slot s first
        shape_ones = (1,) * (rank - 1)
        corr = None
        for p in range(n):
            gp = gam[p].reshape((n, n) + shape_ones + (space.size,))
            tp = ts[p][None, None, ...]
            contrib = space.mul(gp, tp)     # (m, j, rest..., size)
            corr = contrib if corr is None else corr + contrib
        out = out - np.moveaxis(corr, 1, s + 1)
    return out


def curvature_derivatives(jet, order):
    """[Riem, nabla Riem, ..., nabla^order Riem] at the origin.

    Entry k has rank 4 + k with the derivative indices prepended in
    application order: entry 2 is (nabla_m2 nabla_m1 Riem)_{i j k l}
    indexed [m2, m1, i, j, k, l].  Requires jet.degree >= order + 2.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if jet.degree < order + 2:
        raise ValueError(
            f"jet of degree {jet.degree} cannot determine order-{order} "
            f"derivatives; need degree >= {order + 2}")
    space = jet.space
    gam, _ = _christoffel(space, jet.g)
    riem = _riemann_poly(space, jet.g, gam)
    out = [space.value_at_zero(riem)]
    t = riem
    for _ in range(order):
        t = _covariant_derivative(space, gam, t)
        out.append(space.value_at_zero(t))
    if jet.exact:
        return out
    return [np.asarray(a, dtype=float) for a in out]


def coordinate_curvature_oracle(jet, order):
    """nabla^order Riem at the origin from a metric jet (series path)."""
    return curvature_derivatives(jet, order)[-1]


# ---------------------------------------------------------------------------
# injectivity radius bounds
# ---------------------------------------------------------------------------

class InjectivityBound:
    """Certified lower bound for the injectivity radius at the base point."""

    __slots__ = ("lower", "method", "heuristic")

    def __init__(self, lower, method, heuristic):
        self.lower = lower
        self.method = method
        self.heuristic = heuristic

    def __repr__(self):
        return (f"InjectivityBound(lower={self.lower!r}, method={self.method!r}, "
                f"heuristic={self.heuristic})")


def is_completely_solvable(mu, seed=0, samples=64):
    """Certify or refute that every ad(x) has only real eigenvalues.

    Only meaningful for q = 0 (Lie groups).  Returns one of

    * "certified"  -- the bracket is nilpotent (lower central series
      reaches zero), which forces all-real (in fact zero) spectra;
    * "refuted"    -- some sampled ad(x), over basis vectors and random
      unit directions, has an eigenvalue with clearly nonzero imaginary
      part;
    * "unknown"    -- neither test fired.  Solvable non-nilpotent
      brackets with real spectra land here; no attempt is made to
      certify them.

    The refutation threshold is deliberately loose (1e-4 relative)
    because defective real-spectrum matrices acquire spurious imaginary
    parts of order eps^(1/k) under roundoff.
    """
    if mu.q != 0:
        raise ValueError("complete solvability test applies to q = 0 only")
    dim = mu.dim
    c = mu.as_float() if mu.exact else mu.c
    ads = np.array([c[i].T for i in range(dim)])

    # nilpotency via the lower central series
    span = np.eye(dim)
    for _ in range(dim + 1):
        images = np.concatenate([a @ span for a in ads], axis=1)
        sv = np.linalg.svd(images, compute_uv=False)
        smax = sv[0] if sv.size else 0.0
        if smax <= 1e-12 * (1.0 + bracket_norm(mu)):
            return "certified"
        rank = int(np.sum(sv > 1e-10 * smax))
        u, _, _ = np.linalg.svd(images)
        span = u[:, :rank]

    rng = np.random.default_rng(seed)
    directions = list(np.eye(dim))
    for _ in range(samples):
        v = rng.standard_normal(dim)
        directions.append(v / np.linalg.norm(v))
    for x in directions:
        adx = np.einsum("k,kvu->uv", x, c)
        eig = np.linalg.eigvals(adx)
        scale = 1.0 + np.max(np.abs(adx))
        if np.max(np.abs(eig.imag)) > 1e-4 * scale:
            return "refuted"
    return "unknown"


def injectivity_bound(mu, seed=0):
    """Lower bound for the injectivity radius at the base point.

    For q = 0 a certified nilpotent bracket gives an infinite bound (the
    exponential chart is global); otherwise the bound pi / ||mu|| is
    returned, which is rigorous for q = 0 and only a heuristic for
    q > 0, flagged accordingly.
    """
    if mu.q == 0:
        if is_completely_solvable(mu, seed=seed) == "certified":
            return InjectivityBound(math.inf, "completely_solvable", False)
        nrm = bracket_norm(mu)
        if nrm == 0.0:
            return InjectivityBound(math.inf, "completely_solvable", False)
        return InjectivityBound(math.pi / nrm, "norm_bound", False)
    nrm = bracket_norm(mu)
    lower = math.inf if nrm == 0.0 else math.pi / nrm
    return InjectivityBound(lower, "norm_bound", True)
