"""Bracket flow: an ODE on structure constants driven by Ricci curvature.

The flow moves the bracket instead of the metric.  With D the block
endomorphism that vanishes on the isotropy block and equals the Ricci
endomorphism on the tangent block, the right-hand side is

    d/dt mu = mu(D . , .) + mu(. , D .) - D mu(. , .),

which is minus the infinitesimal change of basis by D, so the solution
stays inside the structural-condition set and evolves the underlying
space by a Ricci-type deformation.  Stationary directions of the
norm-normalized flow are exactly the brackets whose right-hand side is
a multiple of the bracket itself (algebraic solitons); the scale-free
defect of that property is reported by soliton_residual.

Integration uses an embedded Dormand-Prince 5(4) pair with standard
step control.  In normalized mode the state is rescaled to unit bracket
norm after every accepted step, which keeps trajectories on the sphere
without changing their direction field.
"""

import numpy as np

from .brackets import Bracket, bracket_norm, check_membership
from .curvature import ricci_operator

__all__ = [
    "bracket_flow_rhs",
    "soliton_residual",
    "FlowSample",
    "FlowTrajectory",
    "integrate",
]

# Dormand-Prince 5(4) tableau; stage 7 equals the 5th-order solution,
# so the last error coefficient folds in the b* weight of stage 7.
BUTCHER_C = [0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0]

BUTCHER_A = {
    1: [1 / 5],
    2: [3 / 40, 9 / 40],
    3: [44 / 45, -56 / 15, 32 / 9],
    4: [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    5: [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    6: [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
}

WEIGHTS = [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0]

# difference between 5th- and 4th-order weights
ERROR_COEFFS = [71 / 57600, 0.0, -71 / 16695, 71 / 1920,
                -17253 / 339200, 22 / 525, -1 / 40]


def _flow_matrix(mu):
    d = np.zeros((mu.dim, mu.dim))
    d[mu.q:, mu.q:] = ricci_operator(mu)
    return d


def _require_member(mu):
    rep = check_membership(mu)
    if not rep.passed:
        raise ValueError(f"bracket fails the membership check: {rep!r}")


def _rhs(mu):
    c = mu.as_float() if mu.exact else mu.c
    d = _flow_matrix(mu)
    rhs = (np.einsum("ai,ajk->ijk", d, c)
           + np.einsum("bj,ibk->ijk", d, c)
           - np.einsum("kb,ijb->ijk", d, c))
    rhs = 0.5 * (rhs - np.swapaxes(rhs, 0, 1))
    return Bracket(mu.q, mu.n, rhs)


def bracket_flow_rhs(mu):
    """Right-hand side of the flow as a bracket on the same splitting.

    Requires a membership-passing bracket; raises ValueError otherwise.
    """
    _require_member(mu)
    return _rhs(mu)


def soliton_residual(mu):
    """Scale-invariant distance of the flow direction from the ray of mu.

    Computes r = rhs - (<rhs, mu> / ||mu||^2) mu and returns
    ||r|| / ||mu||^3, which is invariant under mu -> c mu.  The value is
    zero exactly for algebraic solitons (the normalized flow is then
    stationary up to reparameterization).  Requires a nonzero member
    bracket; the residual of the zero bracket is undefined (0/0).
    """
    _require_member(mu)
    c = mu.as_float() if mu.exact else mu.c
    nrm2 = float(np.sum(c * c))
    if nrm2 == 0.0:
        raise ValueError("soliton residual is undefined for the zero bracket")
    rhs = _rhs(mu).c
    coeff = float(np.sum(rhs * c)) / nrm2
    res = rhs - coeff * c
    return float(np.sqrt(np.sum(res * res))) / nrm2 ** 1.5


class FlowSample:
    """One recorded state: time, bracket, norm, Ricci eigenvalues.

    scale is the product of all rescaling factors applied so far by the
    normalized flow (1.0 throughout for the plain flow).  The ODE keeps
    every component with an isotropy input slot constant, so dividing
    such components by scale recovers their initial values up to
    integrator error.
    """

    __slots__ = ("t", "bracket", "norm", "ricci_eigenvalues", "scale")

    def __init__(self, t, bracket, norm, ricci_eigenvalues, scale=1.0):
        self.t = t
        self.bracket = bracket
        self.norm = norm
        self.ricci_eigenvalues = ricci_eigenvalues
        self.scale = scale


class FlowTrajectory:
    """Integration result: status and the recorded samples.

    status is one of "completed", "blow_up_detected", "max_steps",
    "step_underflow"; for everything except "completed" the samples
    cover only the reached time span.
    """

    __slots__ = ("status", "samples", "q", "n")

    def __init__(self, status, samples, q, n):
        self.status = status
        self.samples = samples
        self.q = q
        self.n = n

    @property
    def final(self):
        return self.samples[-1]

    def times(self):
        return np.array([s.t for s in self.samples])

    def __repr__(self):
        return (f"FlowTrajectory(status={self.status!r}, samples={len(self.samples)}, "
                f"t_final={self.final.t:.6g})")


def integrate(mu0, t_end, normalized=False, rtol=1e-9, atol=1e-12,
              max_steps=100000, blow_up=1e8, record_stride=1):
    """Integrate the bracket flow from mu0 over [0, t_end].

    mu0 must pass the membership check.  normalized=True rescales to
    unit bracket norm after every accepted step.  Steps are controlled
    by the embedded 5(4) error estimate against atol + rtol * |state|;
    blow-up is declared when the bracket norm exceeds blow_up.  Every
    record_stride-th accepted step is recorded (plus the initial and
    final states).
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    _require_member(mu0)
    q, n = mu0.q, mu0.n
    dim = mu0.dim
    shape = (dim, dim, dim)

    def f(y):
        return _rhs(Bracket(q, n, y.reshape(shape))).c.ravel()

    y = mu0.as_float().ravel()
    scale = 1.0
    if normalized:
        nrm = np.linalg.norm(y)
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero bracket")
        y = y / nrm
        scale = 1.0 / nrm

    def sample(t, y):
        mu = Bracket(q, n, y.reshape(shape).copy())
        eigs = np.sort(np.linalg.eigvalsh(ricci_operator(mu)))[::-1]
        return FlowSample(t, mu, float(np.linalg.norm(y)), eigs, scale)

    samples = [sample(0.0, y)]
    t = 0.0
    fy = f(y)
    scale0 = np.linalg.norm(fy) / (1.0 + np.linalg.norm(y))
    dt = min(0.01, 0.1 / scale0) if scale0 > 0 else 0.01
    dt = min(dt, t_end)
    steps = 0
    accepted = 0
    status = "max_steps"

    while steps < max_steps:
        steps += 1
        k = [fy]
        for s in range(1, 7):
            ys = y + dt * sum(a * ki for a, ki in zip(BUTCHER_A[s], k))
            k.append(f(ys))
        y_new = y + dt * sum(w * ki for w, ki in zip(WEIGHTS, k))
        err = dt * sum(e * ki for e, ki in zip(ERROR_COEFFS, k))
        tol = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = np.sqrt(np.mean((err / tol) ** 2))

        if err_norm <= 1.0:
            t += dt
            y = y_new
            if normalized:
                nrm = np.linalg.norm(y)
                y = y / nrm
                scale = scale / nrm
            fy = f(y)
            accepted += 1
            done = t >= t_end - 1e-12 * max(1.0, t_end)
            if np.linalg.norm(y) > blow_up:
                samples.append(sample(t, y))
                status = "blow_up_detected"
                break
            if done or accepted % record_stride == 0:
                samples.append(sample(t, y))
            if done:
                status = "completed"
                break

        factor = 0.9 * err_norm ** -0.2 if err_norm > 0 else 5.0
        dt = dt * min(5.0, max(0.2, factor))
        if t + dt > t_end:
            dt = t_end - t
        if dt < 1e-14 * max(1.0, abs(t)):
            samples.append(sample(t, y))
            status = "step_underflow"
            break

    if status == "max_steps" and samples[-1].t < t:
        samples.append(sample(t, y))
    return FlowTrajectory(status, samples, q, n)
