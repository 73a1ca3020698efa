"""Parameters, derived exponents and the quadratic phase-space model.

The radial quasilinear system

    -div(|grad u|^{p-2} grad u) = eps1 |x|^a u^s v^delta,
    -div(|grad v|^{q-2} grad v) = eps2 |x|^b u^mu v^m,

restricted to radial profiles (u(r), v(r)) maps, via

    X = -r u'/u,   Y = -r v'/v,
    Z = -eps1 r^{1+a} u^s v^delta u'/|u'|^p,
    W = -eps2 r^{1+b} u^mu v^m   v'/|v'|^q,      t = ln r,

onto the autonomous quadratic system of Kolmogorov type

    X_t = X [ X - (N-p)/(p-1) + Z/(p-1) ],
    Y_t = Y [ Y - (N-q)/(q-1) + W/(q-1) ],
    Z_t = Z [ N + a - s X - delta Y - Z ],
    W_t = W [ N + b - mu X - m Y - W ].

This module owns the parameter record, the decay exponents gamma, xi, the
vector field, and the bidirectional chart maps between radial-profile space
and phase space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegeneratePoint, PreconditionViolated, ZeroCoordinate, ZeroDiscriminant

PARAM_KEYS = ("N", "p", "q", "a", "b", "s", "m", "delta", "mu", "eps1", "eps2")


@dataclass(frozen=True)
class SystemParams:
    """The nine real exponents plus the two signs defining the system.

    N is deliberately a *real* parameter: the rescaling of `rescale_system`
    moves between non-integer effective dimensions.
    """

    N: float
    p: float
    q: float
    a: float = 0.0
    b: float = 0.0
    s: float = 0.0
    m: float = 0.0
    delta: float = 1.0
    mu: float = 1.0
    eps1: int = 1
    eps2: int = 1

    def __post_init__(self):
        if self.p == 1.0 or self.q == 1.0:
            raise PreconditionViolated("p and q must differ from 1")
        if self.eps1 not in (-1, 1) or self.eps2 not in (-1, 1):
            raise PreconditionViolated("eps1 and eps2 must be +1 or -1")

    # -- derived scalars used everywhere -------------------------------
    @property
    def D(self) -> float:
        return self.delta * self.mu - (self.p - 1 - self.s) * (self.q - 1 - self.m)

    @property
    def x_bound(self) -> float:
        """Upper X face of the invariant box, (N-p)/(p-1)."""
        return (self.N - self.p) / (self.p - 1)

    @property
    def y_bound(self) -> float:
        return (self.N - self.q) / (self.q - 1)

    @property
    def z_bound(self) -> float:
        return self.N + self.a

    @property
    def w_bound(self) -> float:
        return self.N + self.b

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in PARAM_KEYS}

    @classmethod
    def from_dict(cls, d: dict) -> "SystemParams":
        return cls(**{k: d[k] for k in PARAM_KEYS if k in d})

    def replace(self, **kw) -> "SystemParams":
        return replace(self, **kw)


# -- named families --------------------------------------------------------

def hamiltonian_params(N, delta, mu, a=0.0, b=0.0) -> SystemParams:
    """p = q = 2, s = m = 0: the coupled-Laplacian system with pure powers."""
    return SystemParams(N=N, p=2.0, q=2.0, a=a, b=b, s=0.0, m=0.0, delta=delta, mu=mu)


def nonvariational_params(N, s, delta, mu, a=0.0) -> SystemParams:
    """p = q = 2, equal weights and equal self-exponents s = m > 0."""
    return SystemParams(N=N, p=2.0, q=2.0, a=a, b=a, s=s, m=s, delta=delta, mu=mu)


def potential_params(N, p, q, s, m, a=0.0) -> SystemParams:
    """delta = m+1, mu = s+1: the gradient system of the single potential u^{s+1} v^{m+1}."""
    return SystemParams(N=N, p=p, q=q, a=a, b=a, s=s, m=m, delta=m + 1.0, mu=s + 1.0)


def symmetric_scalar_embedding(N, p, Q, a=0.0, eps=1) -> SystemParams:
    """Symmetric system whose diagonal solutions (u, u) solve -Lap_p u = eps |x|^a u^Q."""
    return SystemParams(N=N, p=p, q=p, a=a, b=a, s=0.0, m=0.0, delta=Q, mu=Q,
                        eps1=eps, eps2=eps)


def exchange_params(params: SystemParams) -> SystemParams:
    """Swap the roles of the two equations: (p,delta,s,a,eps1) <-> (q,mu,m,b,eps2).

    Composed with the coordinate swap (X<->Y, Z<->W) this is a symmetry of the
    phase system; the fixed-point catalog and the local analysis respect it.
    """
    return SystemParams(N=params.N, p=params.q, q=params.p, a=params.b, b=params.a,
                        s=params.m, m=params.s, delta=params.mu, mu=params.delta,
                        eps1=params.eps2, eps2=params.eps1)


# -- validation -------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintCheck:
    name: str
    ok: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ConstraintCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[ConstraintCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail}
                           for c in self.checks]}


def validate_params(params: SystemParams, regime: str = "source") -> ValidationReport:
    """Report-style constraint check; names the violated inequality, never raises.

    regime="source" enforces the standing assumptions for the source system:
    1 < p, q < N, min(p+a, q+b) > 0, delta, mu > 0, s, m >= 0 and D > 0.
    regime="none" only checks p, q != 1 and D != 0.
    """
    P = params
    checks = [
        ConstraintCheck("p != 1", P.p != 1.0, f"p = {P.p}"),
        ConstraintCheck("q != 1", P.q != 1.0, f"q = {P.q}"),
        ConstraintCheck("D != 0", P.D != 0.0, f"D = {P.D}"),
    ]
    if regime == "source":
        checks += [
            ConstraintCheck("1 < p < N", 1.0 < P.p < P.N, f"p = {P.p}, N = {P.N}"),
            ConstraintCheck("1 < q < N", 1.0 < P.q < P.N, f"q = {P.q}, N = {P.N}"),
            ConstraintCheck("p + a > 0", P.p + P.a > 0.0, f"p + a = {P.p + P.a}"),
            ConstraintCheck("q + b > 0", P.q + P.b > 0.0, f"q + b = {P.q + P.b}"),
            ConstraintCheck("delta > 0", P.delta > 0.0, f"delta = {P.delta}"),
            ConstraintCheck("mu > 0", P.mu > 0.0, f"mu = {P.mu}"),
            ConstraintCheck("s >= 0", P.s >= 0.0, f"s = {P.s}"),
            ConstraintCheck("m >= 0", P.m >= 0.0, f"m = {P.m}"),
            ConstraintCheck("D > 0", P.D > 0.0, f"D = {P.D}"),
            ConstraintCheck("eps1 = eps2 = +1", P.eps1 == 1 and P.eps2 == 1,
                            f"eps = ({P.eps1}, {P.eps2})"),
        ]
    elif regime != "none":
        raise PreconditionViolated(f"unknown regime {regime!r}")
    return ValidationReport(tuple(checks))


# -- derived exponents ------------------------------------------------------

@dataclass(frozen=True)
class DerivedExponents:
    D: float
    gamma: float
    xi: float
    p_conj: float   # p/(p-1)
    q_conj: float   # q/(q-1)


def derive_exponents(params: SystemParams) -> DerivedExponents:
    """Decay exponents gamma, xi solving the coupled linear identities

        (p-1-s) gamma + p + a = delta xi,
        (q-1-m) xi  + q + b = mu gamma.
    """
    P = params
    D = P.D
    if D == 0.0:
        raise ZeroDiscriminant("delta*mu = (p-1-s)(q-1-m): exponents undefined")
    gamma = ((P.p + P.a) * (P.q - 1 - P.m) + (P.q + P.b) * P.delta) / D
    xi = ((P.q + P.b) * (P.p - 1 - P.s) + (P.p + P.a) * P.mu) / D
    return DerivedExponents(D=D, gamma=gamma, xi=xi,
                            p_conj=P.p / (P.p - 1), q_conj=P.q / (P.q - 1))


# -- states -----------------------------------------------------------------

@dataclass(frozen=True)
class PhaseState:
    """A phase point (X, Y, Z, W) at log-radius t = ln r."""

    t: float
    X: float
    Y: float
    Z: float
    W: float

    @property
    def coords(self) -> np.ndarray:
        return np.array([self.X, self.Y, self.Z, self.W])

    @property
    def r(self) -> float:
        return math.exp(self.t)

    @classmethod
    def from_coords(cls, t, coords) -> "PhaseState":
        X, Y, Z, W = coords
        return cls(t=float(t), X=float(X), Y=float(Y), Z=float(Z), W=float(W))


@dataclass(frozen=True)
class RadialState:
    """Profile values (u, v) and radial derivatives (du, dv) at radius r > 0."""

    r: float
    u: float
    v: float
    du: float
    dv: float


# -- vector field -----------------------------------------------------------

def vector_field_arr(params: SystemParams, coords) -> np.ndarray:
    """Right-hand side of the phase system at raw coordinates [X, Y, Z, W].

    The bilinear sums are grouped so that exchange-symmetric parameters acting
    on exchange-symmetric states produce bitwise-symmetric derivatives; the
    diagonal of a symmetric system is then exactly invariant in floating point.
    """
    P = params
    X, Y, Z, W = coords
    return np.array([
        X * (X - P.x_bound + Z / (P.p - 1)),
        Y * (Y - P.y_bound + W / (P.q - 1)),
        Z * ((P.N + P.a) - (P.s * X + P.delta * Y) - Z),
        W * ((P.N + P.b) - (P.mu * X + P.m * Y) - W),
    ])


def vector_field(params: SystemParams, state: PhaseState) -> np.ndarray:
    """Time derivatives (X_t, Y_t, Z_t, W_t); each component carries its own
    coordinate as a factor, so coordinate hyperplanes are exactly invariant."""
    return vector_field_arr(params, state.coords)


# -- chart maps -------------------------------------------------------------

def to_phase(params: SystemParams, rstate: RadialState) -> PhaseState:
    """Map a radial state to phase space; the chart needs u, v > 0 and du, dv != 0.

    Powers of |du|, |dv| are taken on absolute values with the signs tracked
    separately, so no negative base is ever raised to a real power.
    """
    P = params
    r, u, v, du, dv = rstate.r, rstate.u, rstate.v, rstate.du, rstate.dv
    if u == 0.0 or v == 0.0 or du == 0.0 or dv == 0.0:
        raise DegeneratePoint("u, v, du, dv must all be nonzero on the chart")
    if r <= 0.0:
        raise DegeneratePoint("radius must be positive")
    X = -r * du / u
    Y = -r * dv / v
    Z = -P.eps1 * r ** (1 + P.a) * u ** P.s * v ** P.delta \
        * math.copysign(abs(du) ** (1 - P.p), du)
    W = -P.eps2 * r ** (1 + P.b) * u ** P.mu * v ** P.m \
        * math.copysign(abs(dv) ** (1 - P.q), dv)
    return PhaseState(t=math.log(r), X=X, Y=Y, Z=Z, W=W)


def from_phase(params: SystemParams, state: PhaseState) -> tuple[float, float]:
    """Recover (u, v) at r = e^t from a phase point with all coordinates nonzero.

    Computed in log space: the exponents (q-1-m)/D etc. can push the direct
    products far outside double range.
    """
    P = params
    D = P.D
    if D == 0.0:
        raise ZeroDiscriminant("D = 0: the chart inversion is undefined")
    X, Y, Z, W = state.X, state.Y, state.Z, state.W
    for name, val in (("X", X), ("Y", Y), ("Z", Z), ("W", W)):
        if val == 0.0:
            raise ZeroCoordinate(f"{name} = 0: state off the invertible chart")
    lx = (P.p - 1) * math.log(abs(X)) + math.log(abs(Z))
    ly = (P.q - 1) * math.log(abs(Y)) + math.log(abs(W))
    ln_u = -derive_exponents(P).gamma * state.t + ((P.q - 1 - P.m) * lx + P.delta * ly) / D
    ln_v = -derive_exponents(P).xi * state.t + (P.mu * lx + (P.p - 1 - P.s) * ly) / D
    return math.exp(ln_u), math.exp(ln_v)


def regular_initial_values(params: SystemParams, x: float, y: float) -> tuple[float, float]:
    """Initial data (u0, v0) of the regular solution whose trajectory passes,
    at t = 0, through the point of the regular manifold with X = x, Y = y.

    Inverts the startup asymptotics X ~ (u0^{s+1-p} v0^delta/(N+a))^{1/(p-1)} r^{(p+a)/(p-1)}
    (and its v-counterpart) at r = 1.
    """
    P = params
    if x <= 0.0 or y <= 0.0:
        raise PreconditionViolated("x and y must be positive")
    D = P.D
    if D == 0.0:
        raise ZeroDiscriminant("D = 0")
    lx = math.log(P.N + P.a) + (P.p - 1) * math.log(x)
    ly = math.log(P.N + P.b) + (P.q - 1) * math.log(y)
    u0 = math.exp(((P.q - 1 - P.m) * lx + P.delta * ly) / D)
    v0 = math.exp((P.mu * lx + (P.p - 1 - P.s) * ly) / D)
    return u0, v0


def normalized_regular_data(params: SystemParams, x: float, y: float) -> tuple[float, float, float]:
    """Initial data with u0 = 1 on the scaling orbit of the seed (x, y) plus
    the log-radius shift tau.

    The solution from the returned data traces the same phase curve as the
    regular solution through chart point (x, y), time-shifted: a phase sample
    at log-radius t on the seed's curve sits at t - tau on the normalized one.
    Keeping the data at unit scale keeps the radial integration's absolute
    error control meaningful for arbitrarily small seeds.
    """
    ex = derive_exponents(params)
    u0, v0 = regular_initial_values(params, x, y)
    ln_theta = -math.log(u0) / ex.gamma
    return 1.0, v0 * math.exp(ex.xi * ln_theta), ln_theta


# -- rescaling (p = q, a = b) ------------------------------------------------

@dataclass(frozen=True)
class RescaleMap:
    """Coordinate change t = k t_hat, (X,Y,Z,W) -> k (X,Y,Z,W) between the
    original system and the one with (N_hat, a_hat)."""

    k: float

    def apply(self, state: PhaseState) -> PhaseState:
        return PhaseState(t=state.t / self.k, X=self.k * state.X, Y=self.k * state.Y,
                          Z=self.k * state.Z, W=self.k * state.W)


def rescale_system(params: SystemParams, k: float) -> tuple[SystemParams, RescaleMap]:
    """Trade dimension against weight: requires p = q and a = b, k != 0.

    Returns parameters with N_hat = p + k(N-p) and a_hat = k(p+a) - p, so that
    (N_hat - p)/(N - p) = k = (N_hat + a_hat)/(N + a), together with the phase
    map. gamma and xi rescale by k.
    """
    P = params
    if P.p != P.q or P.a != P.b:
        raise PreconditionViolated("rescaling needs p = q and a = b")
    if k == 0.0:
        raise PreconditionViolated("k must be nonzero")
    n_hat = P.p + k * (P.N - P.p)
    a_hat = k * (P.p + P.a) - P.p
    new = P.replace(N=n_hat, a=a_hat, b=a_hat)
    return new, RescaleMap(k=k)


def rescale_to_unweighted(params: SystemParams) -> tuple[SystemParams, RescaleMap]:
    """Remove the radial weight (a_hat = 0) via k = p/(p+a)."""
    return rescale_system(params, params.p / (params.p + params.a))


def effective_unweighted_dimension(params: SystemParams) -> float:
    """Dimension of the weightless system equivalent to (N, a): p(N+a)/(p+a)."""
    return params.p * (params.N + params.a) / (params.p + params.a)
