"""Lie brackets on R^(q+n) with a fixed orthogonal splitting R^q + R^n.

A bracket is stored as a dense rank-3 array of structure constants
c[i, j, k] = <mu(e_i, e_j), e_k> on the standard basis of R^(q+n).  The
first q indices span the isotropy block, the remaining n indices the
tangent block.  Such a bracket describes a simply connected homogeneous
Riemannian space once it passes the four structural conditions below,
with the inner product on the tangent block being the standard one:

(h1) mu satisfies the Jacobi identity, mu(R^q, R^q) is contained in R^q
     and mu(R^q, R^n) in R^n;
(h2) the connected subgroup generated by the isotropy block is closed in
     the simply connected group of mu (decided by family bookkeeping,
     not numerically);
(h3) ad(z) restricted to R^n is skew-symmetric for every z in R^q;
(h4) no nonzero z in R^q brackets trivially with all of R^n.

(h1) and (h3) are polynomial equations checked against a residual
tolerance, (h4) is a numerical rank condition, and (h2) is undecidable
from the structure constants alone, so it rides along as a tri-state
derived from the family tag of the bracket.

Conventions used throughout the package:

* indices are 0-based; isotropy indices are 0..q-1, tangent q..q+n-1;
* the bracket norm is the Frobenius norm of the full tensor,
  ||mu||^2 = sum_{i,j} ||mu(e_i,e_j)||^2 over ordered pairs (i, j);
* the group action is (h.mu)(x, y) = h mu(h^-1 x, h^-1 y).
"""

import json
import math
from fractions import Fraction

import numpy as np

__all__ = [
    "Bracket",
    "MembershipReport",
    "bracket_norm",
    "jacobiator",
    "check_membership",
    "gl_action",
    "check_equivariant_conditions",
    "flat_degeneration",
    "resplit",
    "milnor_bracket",
    "circle_isotropy3",
    "circle_isotropy5",
    "aloff_wallach_bracket",
    "random_member",
    "read_bracket",
    "write_bracket",
    "bracket_to_dict",
    "bracket_from_dict",
]

_EXACT_TYPES = (int, Fraction)


def _is_exact(values):
    return all(isinstance(v, _EXACT_TYPES) and not isinstance(v, bool) for v in values)


def _zeros(shape, exact):
    if exact:
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr
    return np.zeros(shape)


class Bracket:
    """Antisymmetric bilinear map on R^(q+n), dense structure constants.

    Parameters
    ----------
    q, n : int
        Isotropy and tangent dimensions, q >= 0, n >= 1.
    c : array_like, shape (q+n, q+n, q+n)
        Structure constants, c[i, j, k] = <mu(e_i, e_j), e_k>.  Must be
        exactly antisymmetric in (i, j).  dtype float64 for numeric
        brackets or object (Fraction entries) for exact ones.
    family, params : optional
        Tag identifying a constructor family; carries the information
        needed to decide condition (h2).

    The constant array is frozen after construction; operations return
    new Bracket instances.
    """

    __slots__ = ("q", "n", "c", "family", "params")

    def __init__(self, q, n, c, family=None, params=None):
        q = int(q)
        n = int(n)
        if q < 0 or n < 1:
            raise ValueError("need q >= 0 and n >= 1")
        dim = q + n
        c = np.asarray(c)
        if c.shape != (dim, dim, dim):
            raise ValueError(f"structure constants must have shape {(dim, dim, dim)}, got {c.shape}")
        if c.dtype != object:
            c = c.astype(float)
        sym = c + np.swapaxes(c, 0, 1)
        if not np.all(sym == 0):
            raise ValueError("structure constants are not antisymmetric in the first two slots")
        c.flags.writeable = False
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", dict(params) if params else None)

    def __setattr__(self, name, value):
        raise AttributeError("Bracket is immutable")

    @property
    def dim(self):
        return self.q + self.n

    @property
    def exact(self):
        """True when the constants are stored as exact Fractions."""
        return self.c.dtype == object

    def as_float(self):
        """Structure constants as a writable float64 array (a copy)."""
        return np.array(self.c, dtype=float)

    def apply(self, x, y):
        """Evaluate mu(x, y) for coordinate vectors x, y."""
        c = self.as_float() if self.exact else self.c
        return np.einsum("i,j,ijk->k", np.asarray(x, float), np.asarray(y, float), c)

    def norm(self):
        return bracket_norm(self)

    def retag(self, family, params=None):
        """Copy with a replaced family tag."""
        return Bracket(self.q, self.n, self.c, family=family, params=params)

    @classmethod
    def from_entries(cls, q, n, entries, family=None, params=None):
        """Build from sparse entries [(i, j, k, value), ...] with i < j.

        Antisymmetric counterparts are filled in automatically.  Exact
        (int / Fraction) values produce an exact bracket.
        """
        dim = q + n
        exact = _is_exact([e[3] for e in entries]) and len(entries) > 0
        c = _zeros((dim, dim, dim), exact)
        for i, j, k, v in entries:
            if not (0 <= i < j < dim) or not 0 <= k < dim:
                raise ValueError(f"entry ({i}, {j}, {k}) out of range or not upper-triangular")
            v = Fraction(v) if exact else float(v)
            c[i, j, k] = c[i, j, k] + v
            c[j, i, k] = c[j, i, k] - v
        return cls(q, n, c, family=family, params=params)

    def __repr__(self):
        tag = f", family={self.family!r}" if self.family else ""
        return f"Bracket(q={self.q}, n={self.n}{tag})"


def bracket_norm(mu):
    """Frobenius norm of the structure tensor.

    ||mu||^2 = sum_{i,j,k} c[i,j,k]^2, the sum running over ordered
    index pairs, so each unordered bracket value is counted twice.
    """
    c = mu.as_float() if mu.exact else mu.c
    return float(np.sqrt(np.sum(c * c)))


def jacobiator(mu):
    """Jacobi residual tensor of a bracket.

    Returns J with shape (d, d, d, d), d = q + n, where J[i, j, k, :]
    are the components of

        mu(mu(e_i,e_j), e_k) + mu(mu(e_j,e_k), e_i) + mu(mu(e_k,e_i), e_j).

    The bracket is a Lie bracket iff J vanishes identically.
    """
    c = mu.as_float() if mu.exact else mu.c
    t = np.einsum("ijl,lkm->ijkm", c, c)
    return t + t.transpose((2, 0, 1, 3)) + t.transpose((1, 2, 0, 3))


class MembershipReport:
    """Outcome of check_membership, one field per structural condition."""

    __slots__ = ("q", "n", "tol", "h1_jacobi_residual", "h1_subspace_residual",
                 "h2_status", "h3_residual", "h4_kernel_dim")

    def __init__(self, q, n, tol, h1_jacobi_residual, h1_subspace_residual,
                 h2_status, h3_residual, h4_kernel_dim):
        self.q = q
        self.n = n
        self.tol = tol
        self.h1_jacobi_residual = h1_jacobi_residual
        self.h1_subspace_residual = h1_subspace_residual
        self.h2_status = h2_status
        self.h3_residual = h3_residual
        self.h4_kernel_dim = h4_kernel_dim

    @property
    def passed(self):
        return (self.h1_jacobi_residual <= self.tol
                and self.h1_subspace_residual <= self.tol
                and self.h3_residual <= self.tol
                and self.h4_kernel_dim == 0
                and self.h2_status != "fails")

    def __repr__(self):
        return ("MembershipReport(passed={}, jacobi={:.3e}, subspace={:.3e}, "
                "h2={}, h3={:.3e}, h4_kernel_dim={})".format(
                    self.passed, self.h1_jacobi_residual, self.h1_subspace_residual,
                    self.h2_status, self.h3_residual, self.h4_kernel_dim))


def _h2_status(mu):
    # q = 0: the isotropy subgroup is trivial, hence closed.
    if mu.q == 0:
        return "holds"
    fam = mu.family
    if fam in ("milnor", "circle3", "flat"):
        return "holds"
    if fam in ("circle5", "aloff_wallach"):
        params = mu.params or {}
        return "holds" if params.get("rational_ratio", True) else "fails"
    return "unknown"


def default_tolerance(mu):
    """Residual tolerance 1e-10 * (1 + ||mu||^2) used by the checks."""
    nrm = bracket_norm(mu)
    return 1e-10 * (1.0 + nrm * nrm)


def check_membership(mu, tol=None):
    """Test the structural conditions (h1)-(h4) for a bracket.

    (h1) and (h3) are reported as max-abs residuals, (h4) as the
    numerical kernel dimension of z in R^q |-> mu(z, .)|_{R^n} (singular
    values below tol * sigma_max count as zero), and (h2) as the
    tri-state derived from the family tag.  The bracket is accepted iff
    both residuals are <= tol, the kernel dimension is 0, and (h2) does
    not fail.
    """
    if tol is None:
        tol = default_tolerance(mu)
    q, n = mu.q, mu.n
    c = mu.as_float() if mu.exact else mu.c
    jac = float(np.max(np.abs(jacobiator(mu)))) if mu.dim > 0 else 0.0

    # mu(R^q, R^q) subset R^q and mu(R^q, R^n) subset R^n
    sub = 0.0
    if q > 0:
        sub = max(sub, float(np.max(np.abs(c[:q, :q, q:]))) if n > 0 else 0.0)
        sub = max(sub, float(np.max(np.abs(c[:q, q:, :q]))))

    # skewness of ad(z) on the tangent block
    h3 = 0.0
    if q > 0:
        blocks = c[:q, q:, q:]                      # blocks[z, v, u] = <mu(e_z, e_v), e_u>
        h3 = float(np.max(np.abs(blocks + np.swapaxes(blocks, 1, 2))))

    # kernel of z |-> mu(z, R^n)
    h4_dim = 0
    if q > 0:
        k = c[:q, q:, :].reshape(q, -1)
        sv = np.linalg.svd(k, compute_uv=False)
        smax = sv[0] if sv.size else 0.0
        if smax == 0.0:
            h4_dim = q
        else:
            h4_dim = int(np.sum(sv <= tol * smax))

    return MembershipReport(q, n, float(tol), jac, sub, _h2_status(mu), h3, h4_dim)


def gl_action(h, mu):
    """Change of basis (h.mu)(x, y) = h mu(h^-1 x, h^-1 y).

    h must be an invertible (q+n) x (q+n) matrix with condition number
    below 1e12; the result carries no family tag.
    """
    h = np.asarray(h, float)
    dim = mu.dim
    if h.shape != (dim, dim):
        raise ValueError(f"h must be {dim} x {dim}")
    cond = np.linalg.cond(h)
    if not np.isfinite(cond) or cond > 1e12:
        raise ValueError(f"h is numerically singular (condition number {cond:.3e})")
    hinv = np.linalg.inv(h)
    c = mu.as_float() if mu.exact else mu.c
    new_c = np.einsum("kl,abl,ai,bj->ijk", h, c, hinv, hinv, optimize=True)
    # Re-symmetrize to kill roundoff asymmetry from the two inverse factors.
    new_c = 0.5 * (new_c - np.swapaxes(new_c, 0, 1))
    return Bracket(mu.q, mu.n, new_c)


def check_equivariant_conditions(h, mu, tol=None):
    """Check the two commutation conditions under which a block map

        h = [[h_q, A], [0, h_n]]

    sends one member to another with ad(z) conjugated by h_n.  Returns
    (cond_a, cond_b):

    * cond_a : h_n^T h_n commutes with every ad(z)|_{R^n}, z in R^q;
    * cond_b : A ad(z)|_{R^n} = h_q ad(z)|_{R^q} h_q^-1 A for all z.

    Raises ValueError if the lower-left block of h is nonzero.
    """
    if tol is None:
        tol = default_tolerance(mu)
    q, n = mu.q, mu.n
    h = np.asarray(h, float)
    if h.shape != (mu.dim, mu.dim):
        raise ValueError("h has wrong shape")
    if q == 0:
        return True, True
    if np.max(np.abs(h[q:, :q])) > tol:
        raise ValueError("h is not block upper-triangular for the splitting")
    hq = h[:q, :q]
    a = h[:q, q:]
    hn = h[q:, q:]
    c = mu.as_float() if mu.exact else mu.c
    g = hn.T @ hn
    hq_inv = np.linalg.inv(hq)
    cond_a = True
    cond_b = True
    for z in range(q):
        m = c[z, q:, q:].T          # ad(e_z) on the tangent block
        if np.max(np.abs(g @ m - m @ g)) > tol:
            cond_a = False
        mq = c[z, :q, :q].T         # ad(e_z) on the isotropy block
        if np.max(np.abs(a @ m - hq @ mq @ hq_inv @ a)) > tol:
            cond_b = False
    return cond_a, cond_b


def flat_degeneration(mu, tol=None):
    """Kill the tangent-tangent part of a member bracket.

    The result lam agrees with mu whenever one argument lies in R^q and
    vanishes on R^n x R^n.  It passes the structural conditions whenever
    mu does and describes a flat space, so the output is tagged with
    family "flat" (closedness holds for it).  Raises ValueError when mu
    itself fails the membership check.
    """
    rep = check_membership(mu, tol=tol)
    if not rep.passed:
        raise ValueError(f"flat_degeneration requires a member bracket, got {rep!r}")
    q = mu.q
    c = np.array(mu.c, dtype=mu.c.dtype)
    if mu.exact:
        c[q:, q:, :] = Fraction(0)
    else:
        c[q:, q:, :] = 0.0
    return Bracket(mu.q, mu.n, c, family="flat")


def resplit(mu, q):
    """Reinterpret the same structure constants with a new isotropy size.

    Useful when a degenerate limit fails the conditions for the original
    splitting but passes them after moving extra directions into the
    isotropy block.  The family tag is dropped.
    """
    dim = mu.dim
    if not 0 <= q < dim:
        raise ValueError("new isotropy dimension out of range")
    return Bracket(q, dim - q, mu.c)


# ---------------------------------------------------------------------------
# family constructors
# ---------------------------------------------------------------------------

def milnor_bracket(a, b, c):
    """Diagonal bracket on R^3 (q = 0): in the orthonormal frame e1, e2, e3

        mu(e2, e3) = a e1,  mu(e3, e1) = b e2,  mu(e1, e2) = c e3.

    Every unimodular 3-dimensional Lie algebra appears for suitable
    signs: all positive gives su(2), two positive one negative sl(2,R),
    (a, b > 0, c = 0) the Euclidean motion algebra, (a > 0, b = 0,
    c < 0) the motions of the Minkowski plane, (a > 0, b = c = 0) the
    Heisenberg algebra, and the zero bracket is abelian.
    """
    entries = [(1, 2, 0, a), (0, 2, 1, -b), (0, 1, 2, c)]
    return Bracket.from_entries(0, 3, entries, family="milnor",
                                params={"a": a, "b": b, "c": c})


def circle_isotropy3(a, b, c, d):
    """Four-parameter family with q = 1, n = 3 (e0 spans the isotropy).

        mu(e0, e2) = d e3,   mu(e0, e3) = -d e2,
        mu(e2, e3) = a e1 + b e0,
        mu(e1, e2) = c e3,   mu(e1, e3) = -c e2.

    Jacobi and the skewness condition hold identically; the
    nondegeneracy condition (h4) holds iff d != 0.  The closedness
    condition holds for every parameter choice.  The underlying algebra
    is R + su(2) when ac + bd > 0 and R + sl(2, R) when ac + bd < 0.
    """
    entries = [
        (0, 2, 3, d), (0, 3, 2, -d),
        (2, 3, 1, a), (2, 3, 0, b),
        (1, 2, 3, c), (1, 3, 2, -c),
    ]
    return Bracket.from_entries(1, 3, entries, family="circle3",
                                params={"a": a, "b": b, "c": c, "d": d})


def circle_isotropy5(p, q, a, b, c, d, e, f, rational_ratio=True):
    """Eight-parameter family with one isotropy direction and n = 5.

    e0 spans the isotropy; e1..e5 are tangent.  Nonzero brackets:

        mu(e0, e2) = p e3,  mu(e0, e3) = -p e2,
        mu(e0, e4) = q e5,  mu(e0, e5) = -q e4,
        mu(e1, e2) = e e3,  mu(e1, e3) = -e e2,
        mu(e1, e4) = f e5,  mu(e1, e5) = -f e4,
        mu(e2, e3) = a e0 + b e1,
        mu(e4, e5) = c e0 + d e1.

    The Jacobi identity holds iff a q + b f = 0 and c p + d e = 0; (h4)
    holds iff (p, q) != (0, 0).  Closedness of the isotropy subgroup
    requires the ratio p / q to be rational; numeric inputs are treated
    as exact rationals, so pass rational_ratio=False when the pair
    stands for an irrational ratio.
    """
    entries = [
        (0, 2, 3, p), (0, 3, 2, -p), (0, 4, 5, q), (0, 5, 4, -q),
        (1, 2, 3, e), (1, 3, 2, -e), (1, 4, 5, f), (1, 5, 4, -f),
        (2, 3, 0, a), (2, 3, 1, b), (4, 5, 0, c), (4, 5, 1, d),
    ]
    return Bracket.from_entries(1, 5, entries, family="circle5",
                                params={"p": p, "q": q, "a": a, "b": b, "c": c,
                                        "d": d, "e": e, "f": f,
                                        "rational_ratio": bool(rational_ratio)})


def aloff_wallach_bracket(p, q, a, b, c, d, rational_ratio=True):
    """Bracket presenting an Aloff-Wallach space with a 4-parameter metric.

    q = 1, n = 7; requires a, b, c, d > 0.  The underlying algebra is
    su(3) for every admissible parameter choice and every integer pair
    (p, q); scaling (p, q) by a common factor does not change the
    space.  Closedness of the isotropy circle requires p / q rational
    (see circle_isotropy5 for the rational_ratio convention).
    """
    if not (a > 0 and b > 0 and c > 0 and d > 0):
        raise ValueError("metric parameters a, b, c, d must be positive")
    if p == 0 and q == 0:
        raise ValueError("(p, q) must not both vanish")
    s1 = math.sqrt(3.0 * b * c * d / a)
    s2 = math.sqrt(3.0 * a * c * d / b)
    s3 = math.sqrt(3.0 * a * b * d / c)
    # Projection of mu(p-part, p-part) back onto the two isotropy
    # directions; obtained by expressing the diagonal commutators
    # [e_{2i}, e_{2i+1}] of the matrix model in the (e_0, e_1) basis.
    r = float(p * p + p * q + q * q)
    entries = [
        (0, 2, 3, -d * (p + 2 * q)), (0, 3, 2, d * (p + 2 * q)),
        (0, 4, 5, -d * (2 * p + q)), (0, 5, 4, d * (2 * p + q)),
        (0, 6, 7, -d * (p - q)), (0, 7, 6, d * (p - q)),
        (1, 2, 3, -p), (1, 3, 2, p),
        (1, 4, 5, q), (1, 5, 4, -q),
        (1, 6, 7, p + q), (1, 7, 6, -(p + q)),
        (4, 6, 2, -s1), (5, 7, 2, -s1), (5, 6, 3, -s1), (4, 7, 3, s1),
        (2, 6, 4, s2), (3, 7, 4, -s2), (2, 7, 5, s2), (3, 6, 5, s2),
        (2, 4, 6, -s3), (3, 5, 6, -s3), (3, 4, 7, s3), (2, 5, 7, -s3),
        (2, 3, 0, -3 * a * (p + 2 * q) / r), (2, 3, 1, -9 * a * d * p / r),
        (4, 5, 0, -3 * b * (2 * p + q) / r), (4, 5, 1, 9 * b * d * q / r),
        (6, 7, 0, -3 * c * (p - q) / r), (6, 7, 1, 9 * c * d * (p + q) / r),
    ]
    return Bracket.from_entries(1, 7, entries, family="aloff_wallach",
                                params={"p": p, "q": q, "a": a, "b": b, "c": c,
                                        "d": d,
                                        "rational_ratio": bool(rational_ratio)})


# ---------------------------------------------------------------------------
# random member generation
# ---------------------------------------------------------------------------

def _random_orthogonal(dim, rng):
    m = rng.standard_normal((dim, dim))
    qmat, r = np.linalg.qr(m)
    return qmat * np.sign(np.diag(r))


def _random_member_q0(n, rng):
    if n == 2:
        kind = 0
    elif n == 3:
        kind = int(rng.integers(0, 3))
    else:
        kind = int(rng.integers(0, 2))
    c = np.zeros((n, n, n))
    if kind == 0:
        # almost abelian: only ad(e_0) acts, on span(e_1..e_{n-1}); Jacobi
        # holds for an arbitrary matrix there.
        m = rng.standard_normal((n - 1, n - 1))
        for v in range(1, n):
            for u in range(1, n):
                c[0, v, u] = m[u - 1, v - 1]
                c[v, 0, u] = -m[u - 1, v - 1]
    elif kind == 1 and n >= 3:
        # diagonal 3-dimensional block, abelian complement
        a, b, cc = rng.standard_normal(3)
        c[1, 2, 0], c[2, 1, 0] = a, -a
        c[2, 0, 1], c[0, 2, 1] = b, -b
        c[0, 1, 2], c[1, 0, 2] = cc, -cc
    else:
        # solvable non-unimodular on R^3: ad(e_0) arbitrary on span(e_1, e_2)
        m = rng.standard_normal((2, 2))
        for v in (1, 2):
            for u in (1, 2):
                c[0, v, u] = m[u - 1, v - 1]
                c[v, 0, u] = -m[u - 1, v - 1]
    mu = Bracket(0, n, c)
    h = _random_orthogonal(n, rng) * float(rng.uniform(0.5, 1.5))
    return gl_action(h, mu)


def random_member(q, n, rng=None, seed=0):
    """Draw a random bracket passing the membership check.

    Brackets satisfying the Jacobi identity form a measure-zero variety,
    so plain rejection sampling of dense tensors can never succeed.
    Samples are instead drawn from structured families that satisfy
    Jacobi identically (almost abelian, diagonal 3-dimensional, random
    isotropy families for q = 1) and then moved around by a random
    change of basis, which preserves membership.  Supported: q = 0 with
    n >= 2, and q = 1 with n = 3.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if q == 0:
        if n < 2:
            raise ValueError("need n >= 2")
        return _random_member_q0(n, rng)
    if q == 1 and n == 3:
        a, b, c = rng.standard_normal(3)
        d = float(rng.uniform(0.3, 1.5)) * (1 if rng.integers(0, 2) else -1)
        mu = circle_isotropy3(a, b, c, d)
        h = np.zeros((4, 4))
        h[0, 0] = float(rng.uniform(0.5, 1.5)) * (1 if rng.integers(0, 2) else -1)
        h[1:, 1:] = _random_orthogonal(3, rng)
        out = gl_action(h, mu)
        # block changes of basis preserve closedness of the isotropy
        # subgroup, so the family tag may be kept
        return Bracket(1, 3, out.c, family="circle3", params=mu.params)
    raise ValueError(f"no generator for q={q}, n={n}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def bracket_to_dict(mu):
    """JSON-ready dict with sparse upper-triangular entries."""
    c = mu.as_float() if mu.exact else mu.c
    entries = []
    dim = mu.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            for k in range(dim):
                v = c[i, j, k]
                if v != 0.0:
                    entries.append([i, j, k, float(v)])
    out = {"q": mu.q, "n": mu.n, "entries": entries}
    if mu.family is not None:
        out["family"] = mu.family
        if mu.params:
            out["params"] = {k: (v if isinstance(v, bool) else float(v))
                             for k, v in mu.params.items()}
    return out


def bracket_from_dict(data):
    try:
        q = int(data["q"])
        n = int(data["n"])
        entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed bracket document: {exc}") from exc
    dim = q + n
    c = np.zeros((dim, dim, dim))
    for ent in entries:
        if len(ent) != 4:
            raise ValueError(f"malformed entry {ent!r}")
        i, j, k, v = int(ent[0]), int(ent[1]), int(ent[2]), float(ent[3])
        if not (0 <= i < j < dim and 0 <= k < dim):
            raise ValueError(f"entry indices out of range in {ent!r}")
        c[i, j, k] += v
        c[j, i, k] -= v
    return Bracket(q, n, c, family=data.get("family"), params=data.get("params"))


def write_bracket(path, mu):
    """Write a bracket as a JSON text document (round-trips doubles)."""
    with open(path, "w") as fh:
        json.dump(bracket_to_dict(mu), fh, indent=1)
        fh.write("\n")


def read_bracket(path):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON: {exc}") from exc
    return bracket_from_dict(data)
