"""The scalar equation -Lap_p u = eps |x|^a |u|^{Q-1} u in its 2D phase plane.

With X = -r u'/u and Z = -eps r^{1+a} |u|^{Q-1} u u'/|u'|^p, t = ln r, both
signs eps = +/-1 share one system

    X_t = X [ X - (N-p)/(p-1) + Z/(p-1) ],
    Z_t = Z [ N + a - Q X - Z ],

the sign of X Z distinguishing them (source: quadrants 1 and 3; absorption:
2 and 4). Two exponent thresholds organize everything:

    Q1 = (N+a)(p-1)/(N-p),     Q2 = (N(p-1) + p + pa)/(N-p),

and at Q = Q2 the segment joining N0 = (0, N+a) to A0 = ((N-p)/(p-1), 0) is
invariant, carrying the explicit ground states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from .errors import NotApplicable, PreconditionViolated
from .numerics import DEFAULT_NUMERICS, NumericsConfig


@dataclass(frozen=True)
class ScalarParams:
    N: float
    p: float
    a: float
    Q: float
    eps: int = 1

    def __post_init__(self):
        if not 1.0 < self.p < self.N:
            raise PreconditionViolated("need 1 < p < N")
        if self.p + self.a <= 0.0:
            raise PreconditionViolated("need p + a > 0")
        if self.Q == self.p - 1.0:
            raise PreconditionViolated("need Q != p - 1")
        if self.eps not in (-1, 1):
            raise PreconditionViolated("eps must be +1 or -1")

    @property
    def Q1(self) -> float:
        return (self.N + self.a) * (self.p - 1) / (self.N - self.p)

    @property
    def Q2(self) -> float:
        return (self.N * (self.p - 1) + self.p + self.p * self.a) / (self.N - self.p)

    @property
    def gamma(self) -> float:
        return (self.p + self.a) / (self.Q + 1 - self.p)

    @property
    def x_bound(self) -> float:
        return (self.N - self.p) / (self.p - 1)

    def to_dict(self) -> dict:
        return {"N": self.N, "p": self.p, "a": self.a, "Q": self.Q, "eps": self.eps}


def scalar_vector_field(sp: ScalarParams, coords) -> np.ndarray:
    X, Z = coords
    return np.array([
        X * (X - sp.x_bound + Z / (sp.p - 1)),
        Z * (sp.N + sp.a - sp.Q * X - Z),
    ])


def scalar_jacobian(sp: ScalarParams, coords) -> np.ndarray:
    X, Z = coords
    return np.array([
        [2 * X - sp.x_bound + Z / (sp.p - 1), X / (sp.p - 1)],
        [-sp.Q * Z, sp.N + sp.a - sp.Q * X - 2 * Z],
    ])


def scalar_fixed_points(sp: ScalarParams) -> dict[str, tuple[float, float]]:
    g = sp.gamma
    return {
        "M0": (g, sp.N - sp.p - (sp.p - 1) * g),
        "O": (0.0, 0.0),
        "N0": (0.0, sp.N + sp.a),
        "A0": (sp.x_bound, 0.0),
    }


def scalar_to_phase(sp: ScalarParams, r: float, u: float, du: float) -> tuple[float, float]:
    X = -r * du / u
    Z = -sp.eps * r ** (1 + sp.a) * abs(u) ** (sp.Q - 1) * u \
        * math.copysign(abs(du) ** (1 - sp.p), du)
    return X, Z

def scalar_profile_from_phase(sp: ScalarParams, t: float, X: float, Z: float) -> float:
    """|u| at r = e^t from the phase point."""
    return math.exp(-sp.gamma * t
                    + (math.log(abs(Z)) + (sp.p - 1) * math.log(abs(X))) / (sp.Q + 1 - sp.p))


def line_quantity(sp: ScalarParams, X: float, Z: float) -> float:
    """X/p' + Z/(Q+1) - (N-p)/p; its zero set at Q = Q2 is the invariant segment."""
    return X * (sp.p - 1) / sp.p + Z / (sp.Q + 1) - (sp.N - sp.p) / sp.p


def particular_amplitude(sp: ScalarParams) -> float:
    """A with u = A r^{-gamma} an exact solution; needs eps * gamma^{p-1} (N-p-(p-1)gamma) > 0."""
    g = sp.gamma
    base = sp.eps * abs(g) ** (sp.p - 1) * math.copysign(1.0, g) * (sp.N - sp.p - (sp.p - 1) * g)
    if g <= 0 or base <= 0.0:
        raise NotApplicable(f"power-solution base {base} is not positive")
    return base ** (1.0 / (sp.Q - sp.p + 1))


def explicit_critical_solution(sp: ScalarParams, c: float = 1.0):
    """Closed-form ground state at Q = Q2 (source sign): returns (u, du) callables.

    u(r) = c (K^2 + r^{(p+a)/(p-1)})^{(p-N)/(p+a)},
    K^2 = c^{Q-p+1} (N+a)^{-1} ((N-p)/(p-1))^{1-p}.
    """
    if sp.eps != 1:
        raise NotApplicable("closed-form ground state is for the source sign")
    if abs(sp.Q - sp.Q2) > 1e-12 * (1 + abs(sp.Q2)):
        raise NotApplicable("explicit solution exists at Q = Q2 only")
    kappa = (sp.p + sp.a) / (sp.p - 1)
    nu = (sp.N - sp.p) / (sp.p + sp.a)
    K2 = c ** (sp.Q - sp.p + 1) / (sp.N + sp.a) * sp.x_bound ** (1 - sp.p)

    def u(r):
        return c * (K2 + r ** kappa) ** (-nu)

    def du(r):
        return -c * nu * (K2 + r ** kappa) ** (-nu - 1) * kappa * r ** (kappa - 1)

    return u, du


# -- integration -------------------------------------------------------------

@dataclass(frozen=True)
class ScalarTrajectory:
    t: np.ndarray
    states: np.ndarray          # shape (n, 2)
    termination: str            # "max-time", "blow-up", "converged:<name>"
    events: tuple[tuple[float, str], ...] = ()


def scalar_integrate(sp: ScalarParams, init, t_span,
                     cfg: NumericsConfig = DEFAULT_NUMERICS,
                     stop_x: float | None = None) -> ScalarTrajectory:
    blow = cfg.blow_up

    def hit_blow(t, y):
        return np.max(np.abs(y)) - blow
    hit_blow.terminal = True

    events = [hit_blow]
    if stop_x is not None:
        def hit_x(t, y):
            return y[0] - stop_x
        hit_x.terminal = True
        hit_x.direction = 1.0
        events.append(hit_x)

    sol = solve_ivp(lambda t, y: scalar_vector_field(sp, y), t_span, np.asarray(init, float),
                    method="DOP853", rtol=cfg.ode_rtol, atol=cfg.ode_atol,
                    events=events, dense_output=False)
    if sol.status == 1:
        term = "stopped:x" if stop_x is not None and len(sol.t_events[1]) else "blow-up"
    else:
        term = "max-time" if sol.status == 0 else "failed"
    states = sol.y.T
    # convergence detection against the fixed points
    for name, pt in scalar_fixed_points(sp).items():
        d = np.hypot(states[:, 0] - pt[0], states[:, 1] - pt[1])
        if len(d) >= cfg.capture_steps and np.all(d[-cfg.capture_steps:] < cfg.capture_dist):
            term = f"converged:{name}"
            break
    return ScalarTrajectory(t=sol.t, states=states, termination=term)


def regular_seed(sp: ScalarParams, rho: float) -> tuple[float, float]:
    """Point at parameter rho on the one-dimensional regular manifold leaving N0.

    The unstable eigendirection at N0 has slope dZ/dX = -Q(N+a)/(lam1 + N + a),
    lam1 = (p+a)/(p-1); the regular branch has sign(X) = eps.
    """
    lam1 = (sp.p + sp.a) / (sp.p - 1)
    slope = -sp.Q * (sp.N + sp.a) / (lam1 + sp.N + sp.a)
    x = sp.eps * rho
    return x, sp.N + sp.a + slope * x


def _radial_rhs(sp: ScalarParams, t, y):
    # y = (u, U) with U = |u'|^{p-2} u', in t = ln r
    u, U = y
    r = math.exp(t)
    du = math.copysign(abs(U) ** (1 / (sp.p - 1)), U) if U != 0.0 else 0.0
    return [r * du, -sp.eps * r ** (1 + sp.a) * abs(u) ** (sp.Q - 1) * u - (sp.N - 1) * U]


@dataclass(frozen=True)
class ScalarRadialTrajectory:
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    termination: str
    zero_radius: float | None = None


def scalar_integrate_radial(sp: ScalarParams, u0: float, r_max: float,
                            cfg: NumericsConfig = DEFAULT_NUMERICS) -> ScalarRadialTrajectory:
    """Regular solution with u(0) = u0, integrated from the startup series."""
    r0 = cfg.radial_r0
    cu = (u0 ** sp.Q / (sp.N + sp.a)) ** (1 / (sp.p - 1))
    kappa = (sp.p + sp.a) / (sp.p - 1)
    u_init = u0 - sp.eps * cu * (sp.p - 1) / (sp.p + sp.a) * r0 ** kappa
    U_init = -sp.eps * r0 ** (1 + sp.a) * u0 ** sp.Q / (sp.N + sp.a)

    def u_zero(t, y):
        return y[0]
    u_zero.terminal = True

    def u_blow(t, y):
        return abs(y[0]) - cfg.blow_up
    u_blow.terminal = True

    sol = solve_ivp(lambda t, y: _radial_rhs(sp, t, y), (math.log(r0), math.log(r_max)),
                    [u_init, U_init], method="DOP853", rtol=cfg.ode_rtol, atol=cfg.ode_atol,
                    events=[u_zero, u_blow])
    r = np.exp(sol.t)
    u = sol.y[0]
    du = np.sign(sol.y[1]) * np.abs(sol.y[1]) ** (1 / (sp.p - 1))
    if sol.status == 1 and len(sol.t_events[0]):
        term, zero = "u-zero", float(np.exp(sol.t_events[0][0]))
    elif sol.status == 1:
        term, zero = "blow-up", None
    else:
        term, zero = "max-time", None
    return ScalarRadialTrajectory(r=r, u=u, du=du, termination=term, zero_radius=zero)


# -- Poincare-return sampling (limit-cycle evidence) --------------------------

def poincare_returns(sp: ScalarParams, start_offset: float = 0.05, max_returns: int = 6,
                     horizon: float = 200.0,
                     cfg: NumericsConfig = DEFAULT_NUMERICS) -> list[float]:
    """Signed section offsets of successive returns to the half-line X = X0, Z > Z0.

    Strictly monotone |offsets| are evidence against a limit cycle around M0;
    at Q = Q2 (a center) the offsets stall instead.
    """
    X0, Z0 = scalar_fixed_points(sp)["M0"]

    def section(t, y):
        return y[0] - X0
    section.terminal = False
    section.direction = 1.0

    def hit_blow(t, y):
        return np.max(np.abs(y)) - cfg.blow_up
    hit_blow.terminal = True

    sol = solve_ivp(lambda t, y: scalar_vector_field(sp, y), (0.0, horizon),
                    [X0, Z0 + start_offset], method="DOP853",
                    rtol=cfg.ode_rtol, atol=cfg.ode_atol, events=[section, hit_blow])
    offsets = []
    for t_ev, y_ev in zip(sol.t_events[0], sol.y_events[0]):
        if t_ev > 1e-9 and y_ev[1] > Z0:
            offsets.append(float(y_ev[1] - Z0))
        if len(offsets) >= max_returns:
            break
    return offsets


# -- behaviour catalog ---------------------------------------------------------

class ScalarBehavior(str, Enum):
    SIGN_CHANGING = "regular solutions change sign; no ground state"
    GROUND_STATE_ON_LINE = "ground state on the invariant line joining N0 and A0"
    ALL_REGULAR_ARE_GS = "regular solutions are ground states with r^gamma u -> A"
    THRESHOLD_Q1 = "boundary case Q = Q1"
    ABSORPTION_ALL_REGULAR = "all solutions near 0 regular; they blow up at finite radius"
    ABSORPTION_CONNECTION = "connecting solution u1 exists (r^{(N-p)/(p-1)} u -> alpha at 0, r^gamma u -> A at infinity)"


@dataclass(frozen=True)
class ScalarReport:
    params: ScalarParams
    Q1: float
    Q2: float
    gamma: float
    behavior: ScalarBehavior
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"params": self.params.to_dict(), "Q1": self.Q1, "Q2": self.Q2,
                "gamma": self.gamma, "behavior": self.behavior.value,
                "evidence": self.evidence}


def _fit_slope(lr: np.ndarray, lu: np.ndarray) -> float:
    A = np.vstack([lr, np.ones_like(lr)]).T
    sol, *_ = np.linalg.lstsq(A, lu, rcond=None)
    return float(sol[0])


def scalar_classify(N: float, p: float, a: float, Q: float, eps: int = 1,
                    rho: float = 1e-4, r_max: float = 1e5,
                    cfg: NumericsConfig = DEFAULT_NUMERICS) -> ScalarReport:
    """Classify the scalar equation's regular solutions and back it numerically.

    The verdict is keyed by Q against the thresholds Q1, Q2 (source sign) or Q1
    (absorption sign); the evidence dict carries the integration findings:
    zero radii, amplitude fits, invariant-line drift, Poincare return offsets.
    """
    sp = ScalarParams(N=N, p=p, a=a, Q=Q, eps=eps)
    tol = 1e-12 * (1 + abs(Q))
    evidence: dict = {}

    # Poincare-return sampling whenever M0 sits in the source quadrant
    if eps == 1 and Q > sp.Q1 + tol and abs(Q - sp.Q2) > tol:
        offs = poincare_returns(sp, cfg=cfg)
        evidence["poincare_offsets"] = offs
        diffs = np.diff(np.abs(offs))
        evidence["poincare_monotone"] = bool(len(offs) < 2 or
                                             np.all(diffs > 0) or np.all(diffs < 0))

    if eps == 1:
        if abs(Q - sp.Q1) <= tol:
            return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma, ScalarBehavior.THRESHOLD_Q1, evidence)
        if Q < sp.Q2 - tol:
            rad = scalar_integrate_radial(sp, 1.0, r_max, cfg)
            evidence["zero_radius"] = rad.zero_radius
            evidence["termination"] = rad.termination
            return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma,
                                ScalarBehavior.SIGN_CHANGING, evidence)
        if abs(Q - sp.Q2) <= tol:
            x0, z0 = regular_seed(sp, rho)
            # the connecting trajectory runs along the invariant segment; stop
            # just short of its endpoint, where the outgoing axis direction
            # starts amplifying roundoff
            traj = scalar_integrate(sp, (x0, z0), (0.0, cfg.t_end), cfg,
                                    stop_x=0.98 * sp.x_bound)
            drift = max(abs(line_quantity(sp, X, Z)) for X, Z in traj.states)
            evidence["line_drift"] = drift
            evidence["termination"] = traj.termination
            return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma,
                                ScalarBehavior.GROUND_STATE_ON_LINE, evidence)
        # Q > Q2: regular trajectory converges to the sink M0
        rad = scalar_integrate_radial(sp, 1.0, r_max, cfg)
        mask = rad.r > 0.3 * r_max
        fit_A = float(np.exp(np.mean(np.log(rad.u[mask]) + sp.gamma * np.log(rad.r[mask]))))
        evidence["amplitude_fit"] = fit_A
        try:
            evidence["amplitude_exact"] = particular_amplitude(sp)
        except NotApplicable:
            pass
        evidence["termination"] = rad.termination
        return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma,
                            ScalarBehavior.ALL_REGULAR_ARE_GS, evidence)

    # absorption sign
    if Q > sp.Q1 + tol:
        rad = scalar_integrate_radial(sp, 1.0, r_max, cfg)
        evidence["termination"] = rad.termination
        return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma,
                            ScalarBehavior.ABSORPTION_ALL_REGULAR, evidence)
    if abs(Q - sp.Q1) <= tol:
        return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma, ScalarBehavior.THRESHOLD_Q1, evidence)

    # Q < Q1: saddle connection A0 -> M0 found by integrating the stable
    # eigendirection of M0 backwards
    X0, Z0 = scalar_fixed_points(sp)["M0"]
    J = scalar_jacobian(sp, (X0, Z0))
    w, V = np.linalg.eig(J)
    i_st = int(np.argmin(w.real))
    v = np.real(V[:, i_st])
    if v[0] > 0:        # the branch with X between (N-p)/(p-1) and X0 has X < X0
        v = -v
    eta = 1e-7 * (1 + abs(X0) + abs(Z0))
    traj = scalar_integrate(sp, (X0 + eta * v[0], Z0 + eta * v[1]), (0.0, -60.0), cfg)
    # map to u(r) and fit both end slopes of ln u vs ln r
    ts, Xs, Zs = traj.t, traj.states[:, 0], traj.states[:, 1]
    lu = np.array([math.log(scalar_profile_from_phase(sp, t, X, Z))
                   for t, X, Z in zip(ts, Xs, Zs)])
    n = len(ts)
    tail = slice(max(0, n - max(5, n // 5)), n)      # backward end: r -> 0
    head = slice(0, max(5, n // 5))                  # start near M0: r -> infinity
    evidence["slope_origin"] = _fit_slope(ts[tail], lu[tail])
    evidence["slope_infinity"] = _fit_slope(ts[head], lu[head])
    evidence["termination"] = traj.termination
    return ScalarReport(sp, sp.Q1, sp.Q2, sp.gamma,
                        ScalarBehavior.ABSORPTION_CONNECTION, evidence)
