"""Equivalence diagnostics: commutants, invariant comparison, topology.

Three unrelated ways two brackets can describe "the same" space are
covered here:

* isometry up to order K, decided (negatively) by comparing scalar
  curvature invariants computed from the fingerprints;
* equivariant equivalence of the isotropy action, whose linear-algebra
  shadow is the commutant of ad(R^q) on the tangent block;
* topological identification of the 7-dimensional circle-quotient
  family by classical congruence invariants in the integer parameters.

For coprime integers (p, q) the topology invariants are

    r = p^2 + p q + q^2,       s = p q (p + q),

and two parameter pairs give homotopy-equivalent spaces iff r matches
and s = +-s' mod r, homeomorphic iff additionally s = +-s' mod 2^3 3 r,
diffeomorphic iff s = +-s' mod 2^5 3 7 r (the factor 7 drops out when
7 divides r), and equivariantly diffeomorphic iff the multisets
{p, q, -(p+q)} agree up to an overall sign.  All arithmetic is exact.
"""

import math
from itertools import combinations

import numpy as np

from .brackets import bracket_norm, check_membership
from .brackets import milnor_bracket, circle_isotropy3, circle_isotropy5, aloff_wallach_bracket
from .coordinates import injectivity_bound
from .curvature import fingerprint, scalar_invariants

__all__ = [
    "commutant",
    "isometry_test",
    "AWReport",
    "aw_equivalence",
    "aw_find_witnesses",
    "sequence_diagnostics",
]

FAMILY_CONSTRUCTORS = {
    "milnor": milnor_bracket,
    "circle3": circle_isotropy3,
    "circle5": circle_isotropy5,
    "aloff_wallach": aloff_wallach_bracket,
}


def commutant(mu, cutoff=1e-10):
    """Basis of the matrices commuting with every ad(z)|_tangent, z in R^q.

    Returns a list of n x n matrices, orthonormal in the Frobenius inner
    product, spanning the real commutant algebra.  The dimension
    reconstructs the isotypic decomposition of the isotropy action: each
    isotypic block of multiplicity m over R, C or H contributes a full
    matrix algebra gl_m over that division algebra.  Requires q >= 1.
    """
    q, n = mu.q, mu.n
    if q < 1:
        raise ValueError("commutant needs at least one isotropy direction")
    c = mu.as_float() if mu.exact else mu.c
    eye = np.eye(n)
    rows = []
    for z in range(q):
        m = c[z, q:, q:].T
        rows.append(np.kron(eye, m.T) - np.kron(m, eye))
    a = np.vstack(rows)
    u, sv, vt = np.linalg.svd(a)
    smax = sv[0] if sv.size else 0.0
    null_mask = sv <= cutoff * max(1.0, smax)
    basis = [vt[i].reshape(n, n) for i in range(len(sv)) if null_mask[i]]
    basis.extend(vt[i].reshape(n, n) for i in range(len(sv), n * n))
    return basis


def isometry_test(mu, lam, order=2, tol=1e-8):
    """Compare curvature invariants of two brackets up to a given order.

    The scalars compared are the Ricci power traces f_1..f_n and the
    squared norms of nabla^k Riem for k = 0..order; all of them are
    invariant under orthogonal changes of tangent basis, so a genuine
    isometry forces equality.  Returns "distinct" when some scalar
    differs by more than tol * (1 + magnitude), otherwise the string
    "indistinguishable_at_order_<order>".  Isotropy dimensions may
    differ; the tangent dimensions must agree.
    """
    if mu.n != lam.n:
        return "distinct"
    sa = scalar_invariants(mu)
    sb = scalar_invariants(lam)
    fa = fingerprint(mu, order)
    fb = fingerprint(lam, order)
    sa += [float(np.sum(t * t)) for t in fa.tensors]
    sb += [float(np.sum(t * t)) for t in fb.tensors]
    for a, b in zip(sa, sb):
        if abs(a - b) > tol * (1.0 + max(abs(a), abs(b))):
            return "distinct"
    return f"indistinguishable_at_order_{order}"


class AWReport:
    """Topology comparison of two integer parameter pairs."""

    __slots__ = ("pair", "pair_other", "r", "s", "r_other", "s_other",
                 "homotopy_equivalent", "homeomorphic", "diffeomorphic",
                 "equivariantly_diffeomorphic")

    def __init__(self, pair, pair_other, r, s, r_other, s_other,
                 homotopy_equivalent, homeomorphic, diffeomorphic,
                 equivariantly_diffeomorphic):
        self.pair = pair
        self.pair_other = pair_other
        self.r = r
        self.s = s
        self.r_other = r_other
        self.s_other = s_other
        self.homotopy_equivalent = homotopy_equivalent
        self.homeomorphic = homeomorphic
        self.diffeomorphic = diffeomorphic
        self.equivariantly_diffeomorphic = equivariantly_diffeomorphic

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def __repr__(self):
        return ("AWReport(pair={}, pair_other={}, homotopy={}, homeo={}, "
                "diffeo={}, equivariant={})".format(
                    self.pair, self.pair_other, self.homotopy_equivalent,
                    self.homeomorphic, self.diffeomorphic,
                    self.equivariantly_diffeomorphic))


def _aw_invariants(p, q):
    if not (isinstance(p, int) and isinstance(q, int)):
        raise ValueError("parameters must be integers")
    if math.gcd(p, q) != 1:
        raise ValueError(f"parameters must be coprime, got ({p}, {q})")
    return p * p + p * q + q * q, p * q * (p + q)


def _cong(s, s_other, modulus):
    return (s - s_other) % modulus == 0 or (s + s_other) % modulus == 0


def aw_equivalence(p, q, p_other, q_other):
    """Classify the relation between two coprime integer pairs.

    Exact integer arithmetic throughout; raises ValueError for
    non-integer or non-coprime input.  The four booleans are nested:
    equivariant implies diffeomorphic implies homeomorphic implies
    homotopy equivalent.
    """
    r, s = _aw_invariants(p, q)
    r2, s2 = _aw_invariants(p_other, q_other)
    same_r = r == r2
    homotopy = same_r and _cong(s, s2, r)
    homeo = same_r and _cong(s, s2, 24 * r)
    diffeo_mod = 96 * r if r % 7 == 0 else 672 * r
    diffeo = same_r and _cong(s, s2, diffeo_mod)
    triple = sorted((p, q, -(p + q)))
    triple2 = sorted((p_other, q_other, -(p_other + q_other)))
    triple2_neg = sorted((-p_other, -q_other, p_other + q_other))
    equivariant = triple == triple2 or triple == triple2_neg
    return AWReport((p, q), (p_other, q_other), r, s, r2, s2,
                    homotopy, homeo, diffeo, equivariant)


def aw_find_witnesses(r_max):
    """Exhaustively search p >= q >= 1 coprime with r <= r_max.

    Returns a dict with the first (by increasing r, then lexicographic)
    witness pairs for "homotopy equivalent but not homeomorphic" and
    "homeomorphic but not diffeomorphic", or None where none exists in
    range.
    """
    by_r = {}
    p = 1
    while p * p + p + 1 <= r_max:
        p += 1
    p_cap = p
    for p in range(1, p_cap + 1):
        for q in range(1, p + 1):
            r = p * p + p * q + q * q
            if r > r_max:
                break
            if math.gcd(p, q) != 1:
                continue
            by_r.setdefault(r, []).append((p, q))
    homotopy_not_homeo = None
    homeo_not_diffeo = None
    for r in sorted(by_r):
        group = sorted(by_r[r])
        if len(group) < 2:
            continue
        for (pa, qa), (pb, qb) in combinations(group, 2):
            rep = aw_equivalence(pa, qa, pb, qb)
            if homotopy_not_homeo is None and rep.homotopy_equivalent and not rep.homeomorphic:
                homotopy_not_homeo = ((pa, qa), (pb, qb))
            if homeo_not_diffeo is None and rep.homeomorphic and not rep.diffeomorphic:
                homeo_not_diffeo = ((pa, qa), (pb, qb))
        if homotopy_not_homeo and homeo_not_diffeo:
            break
    return {"homotopy_not_homeo": homotopy_not_homeo,
            "homeo_not_diffeo": homeo_not_diffeo}


def sequence_diagnostics(family, params_seq, limit, topology_pairs=None,
                         limit_pair=None, invariant_count=3):
    """Tabulate convergence diagnostics of a parameter sequence.

    Builds family members for every parameter tuple and compares them
    with the limit bracket: structure-constant distance (when the
    ambient dimensions agree), membership verdicts, Ricci power traces
    f_1..f_count with gaps against the limit, injectivity lower bounds,
    and topology flags against limit_pair when integer pairs are
    supplied.  Returns a list of plain dicts, one per member.
    """
    try:
        ctor = FAMILY_CONSTRUCTORS[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    limit_member = check_membership(limit).passed
    f_limit = scalar_invariants(limit, invariant_count) if limit_member else None
    rows = []
    for idx, params in enumerate(params_seq):
        mu = ctor(*params)
        rep = check_membership(mu)
        row = {
            "index": idx,
            "params": tuple(params),
            "member": rep.passed,
            "h2_status": rep.h2_status,
        }
        if mu.dim == limit.dim:
            diff = mu.as_float() - limit.as_float()
            row["bracket_distance"] = float(np.sqrt(np.sum(diff * diff)))
        else:
            row["bracket_distance"] = None
        fs = scalar_invariants(mu, invariant_count)
        for j, v in enumerate(fs, start=1):
            row[f"f{j}"] = v
        if f_limit is not None:
            for j, (a, b) in enumerate(zip(fs, f_limit), start=1):
                row[f"gap{j}"] = abs(a - b)
        bound = injectivity_bound(mu)
        row["inj_lower"] = bound.lower
        row["inj_heuristic"] = bound.heuristic
        if topology_pairs is not None and limit_pair is not None:
            pq = topology_pairs[idx]
            rep_aw = aw_equivalence(pq[0], pq[1], limit_pair[0], limit_pair[1])
            row["homotopy_equivalent_to_limit"] = rep_aw.homotopy_equivalent
            row["homeomorphic_to_limit"] = rep_aw.homeomorphic
        rows.append(row)
    return rows
