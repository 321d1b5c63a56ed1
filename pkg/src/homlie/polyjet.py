"""Dense truncated multivariate polynomial arithmetic.

Polynomials in nvars variables, truncated at a fixed total degree, are
stored as coefficient arrays whose last axis runs over all monomials
x^alpha with |alpha| <= degree in graded-lexicographic order: ascending
total degree, ties broken by lexicographic comparison of the exponent
tuples.  Index 0 is always the constant term.

Leading axes are free, so a matrix of polynomials is simply an array of
shape (n, n, size); all operations broadcast over leading axes.  Both
float64 and object (Fraction) coefficients are supported; products of
object arrays go through an explicit loop, float products through a
precomputed index table and np.add.at.

Truncation is degree-exact: multiplying two truncated polynomials gives
coefficients that agree with the untruncated product in every degree
<= the truncation degree, because total degree is additive.
"""

import itertools
from fractions import Fraction

import numpy as np

__all__ = ["PolySpace", "monomial_tuples"]


def monomial_tuples(nvars, degree):
    """All exponent tuples with |alpha| <= degree, graded-lex order."""
    out = []
    for d in range(degree + 1):
        block = [alpha for alpha in itertools.product(range(d + 1), repeat=nvars)
                 if sum(alpha) == d]
        block.sort()
        out.extend(block)
    return out


class PolySpace:
    """Shared tables for one (nvars, degree) truncation."""

    def __init__(self, nvars, degree):
        if nvars < 1 or degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        self.nvars = nvars
        self.degree = degree
        self.monomials = monomial_tuples(nvars, degree)
        self.size = len(self.monomials)
        self.index = {alpha: i for i, alpha in enumerate(self.monomials)}
        self.degrees = np.array([sum(a) for a in self.monomials], dtype=int)

        # multiplication table: all (i1, i2) with deg_i1 + deg_i2 <= degree
        i1, i2, it = [], [], []
        for a, alpha in enumerate(self.monomials):
            da = sum(alpha)
            for b, beta in enumerate(self.monomials):
                if da + sum(beta) > degree:
                    continue
                gamma = tuple(x + y for x, y in zip(alpha, beta))
                i1.append(a)
                i2.append(b)
                it.append(self.index[gamma])
        self._mul_i1 = np.array(i1, dtype=int)
        self._mul_i2 = np.array(i2, dtype=int)
        self._mul_it = np.array(it, dtype=int)

        # derivative tables: x^alpha -> alpha_k x^(alpha - e_k)
        self._diff_src = []
        self._diff_dst = []
        self._diff_fac = []
        for k in range(nvars):
            src, dst, fac = [], [], []
            for a, alpha in enumerate(self.monomials):
                if alpha[k] > 0:
                    beta = list(alpha)
                    beta[k] -= 1
                    src.append(a)
                    dst.append(self.index[tuple(beta)])
                    fac.append(alpha[k])
            self._diff_src.append(np.array(src, dtype=int))
            self._diff_dst.append(np.array(dst, dtype=int))
            self._diff_fac.append(np.array(fac, dtype=int))

    # -- constructors -------------------------------------------------

    def zeros(self, shape=(), exact=False):
        full = tuple(shape) + (self.size,)
        if exact:
            arr = np.empty(full, dtype=object)
            arr[...] = Fraction(0)
            return arr
        return np.zeros(full)

    def constant(self, value, exact=False):
        out = self.zeros((), exact)
        out[0] = Fraction(value) if exact else float(value)
        return out

    def variable(self, k, exact=False):
        alpha = tuple(1 if i == k else 0 for i in range(self.nvars))
        out = self.zeros((), exact)
        one = Fraction(1) if exact else 1.0
        out[self.index[alpha]] = one
        return out

    # -- arithmetic ----------------------------------------------------

    def mul(self, a, b):
        """Truncated product; broadcasts over leading axes."""
        a = np.asarray(a)
        b = np.asarray(b)
        lead = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        exact = a.dtype == object or b.dtype == object
        out = self.zeros(lead, exact)
        if exact:
            for s, t, u in zip(self._mul_i1, self._mul_i2, self._mul_it):
                out[..., u] = out[..., u] + a[..., s] * b[..., t]
        else:
            prod = a[..., self._mul_i1] * b[..., self._mul_i2]
            np.add.at(out, (Ellipsis, self._mul_it), prod)
        return out

    def matmul(self, a, b):
        """Contract poly matrices: (..., r, k, size) x (..., k, s, size)."""
        return self.mul(a[..., :, :, None, :], b[..., None, :, :, :]).sum(axis=-3)

    def diff(self, a, k):
        """Partial derivative in variable k; broadcasts over leading axes."""
        a = np.asarray(a)
        out = self.zeros(a.shape[:-1], a.dtype == object)
        src = self._diff_src[k]
        if src.size:
            fac = self._diff_fac[k]
            if a.dtype == object:
                fac = np.array([Fraction(int(f)) for f in fac], dtype=object)
            out[..., self._diff_dst[k]] = a[..., src] * fac
        return out

    def gradient(self, a):
        """Stack of partials along a new leading axis."""
        return np.stack([self.diff(a, k) for k in range(self.nvars)])

    # -- evaluation ----------------------------------------------------

    def value_at_zero(self, a):
        return np.asarray(a)[..., 0]

    def monomial_values(self, x):
        """Values of every basis monomial at the point x."""
        exact = all(isinstance(v, (int, Fraction)) for v in x)
        vals = []
        for alpha in self.monomials:
            v = Fraction(1) if exact else 1.0
            for xk, ak in zip(x, alpha):
                if ak:
                    v = v * xk ** ak
            vals.append(v)
        if exact:
            out = np.empty(len(vals), dtype=object)
            out[:] = vals
            return out
        return np.array(vals)

    def evaluate(self, a, x):
        """Evaluate coefficients at the point x (per leading index)."""
        a = np.asarray(a)
        mv = self.monomial_values(x)
        if a.dtype == object or mv.dtype == object:
            return (a * mv).sum(axis=-1)
        return a @ mv

    def truncate(self, a, degree):
        """Zero out all coefficients above the given total degree."""
        a = np.asarray(a).copy()
        mask = self.degrees > degree
        if a.dtype == object:
            a[..., mask] = Fraction(0)
        else:
            a[..., mask] = 0.0
        return a
