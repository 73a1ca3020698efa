"""Trajectory integration and the shooting classification.

Regular solutions form a two-parameter family leaving N0 = (0, 0, N+a, N+b);
seeds are placed on the first-order unstable-manifold graph over the (X, Y)
chart. Forward integration classifies each seed by which face of the rectangle

    (0, (N-p)/(p-1)) x (0, (N-q)/(q-1))

the (X, Y) projection reaches first (S1 / S2 / S3) or whether it never leaves
(S); the blow-up pattern after exit distinguishes which profile vanishes first
(M1 / M2) or whether both vanish at one radius (M3, the Dirichlet case).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .equilibria import FixedPointLabel, fixed_point_catalog
from .errors import (Inconclusive, PreconditionViolated, SeriesInvalid,
                     StepSizeUnderflow)
from .model import (PhaseState, RadialState, SystemParams, derive_exponents,
                    normalized_regular_data, regular_initial_values, to_phase,
                    vector_field_arr)
from .numerics import DEFAULT_NUMERICS, NumericsConfig
from .scalar import scalar_classify  # re-exported: scalar runs live beside the 4D ones

__all__ = [
    "Termination", "Trajectory", "RadialTrajectory", "BoxBounds", "EventSpec",
    "integrate_m", "integrate_radial", "launch_regular", "classify_shot",
    "ShotOutcome", "SClass", "MClass", "search_ground_state", "search_dirichlet",
    "GroundStateSearch", "DirichletSearch", "scalar_classify", "sweep_angles",
]


@dataclass(frozen=True)
class Termination:
    kind: str                                  # "blow-up-x" | "blow-up-y" | "blow-up-both"
                                               # | "converged" | "max-time" | "event"
    label: FixedPointLabel | None = None       # for "converged"
    event: str | None = None                   # for "event"

    def to_dict(self) -> dict:
        return {"kind": self.kind,
                "label": self.label.value if self.label else None,
                "event": self.event}


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    states: np.ndarray                          # shape (n, 4)
    termination: Termination
    events: tuple[tuple[float, str], ...] = ()
    dense: Callable | None = None               # interpolant t -> coords

    def state_at(self, t: float) -> np.ndarray:
        if self.dense is not None:
            return np.asarray(self.dense(t))
        i = int(np.argmin(np.abs(self.t - t)))
        return self.states[i]

    def first_event(self, name: str) -> float | None:
        for t, n in self.events:
            if n == name:
                return t
        return None


@dataclass(frozen=True)
class RadialTrajectory:
    r: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    termination: Termination
    events: tuple[tuple[float, str], ...] = ()   # times are t = ln r
    dense: Callable | None = None                # t -> (u, v, U, V)
    _params: SystemParams | None = None

    def first_event(self, name: str) -> float | None:
        for t, n in self.events:
            if n == name:
                return t
        return None

    def state(self, i: int) -> RadialState:
        return RadialState(r=float(self.r[i]), u=float(self.u[i]), v=float(self.v[i]),
                           du=float(self.du[i]), dv=float(self.dv[i]))

    def state_at(self, t: float) -> RadialState:
        """Interpolated radial state at t = ln r (needs dense output)."""
        if self.dense is None:
            raise PreconditionViolated("trajectory was integrated without dense output")
        u, v, U, V = self.dense(t)
        P = self._params
        du = math.copysign(abs(U) ** (1 / (P.p - 1)), U) if U != 0.0 else 0.0
        dv = math.copysign(abs(V) ** (1 / (P.q - 1)), V) if V != 0.0 else 0.0
        return RadialState(r=math.exp(t), u=float(u), v=float(v), du=du, dv=dv)

    def phase_at(self, t: float) -> PhaseState:
        return to_phase(self._params, self.state_at(t))


@dataclass(frozen=True)
class BoxBounds:
    """The open box that trajectories of global positive solutions never leave."""

    x_max: float
    y_max: float
    z_max: float
    w_max: float

    @classmethod
    def from_params(cls, params: SystemParams) -> "BoxBounds":
        return cls(params.x_bound, params.y_bound, params.z_bound, params.w_bound)

    def contains(self, coords, strict: bool = True) -> bool:
        X, Y, Z, W = coords
        lo = 0.0
        if strict:
            return (lo < X < self.x_max and lo < Y < self.y_max
                    and lo < Z < self.z_max and lo < W < self.w_max)
        return (lo <= X <= self.x_max and lo <= Y <= self.y_max
                and lo <= Z <= self.z_max and lo <= W <= self.w_max)


@dataclass(frozen=True)
class EventSpec:
    name: str
    fn: Callable[[float, np.ndarray], float]
    terminal: bool = False
    direction: float = 0.0


def _make_event(spec: EventSpec):
    def ev(t, y):
        return spec.fn(t, y)
    ev.terminal = spec.terminal
    ev.direction = spec.direction
    return ev


def _detect_convergence(params, t, states, cfg) -> Termination | None:
    pts = [(fp.label, np.array(fp.coords)) for fp in fixed_point_catalog(params, cfg)
           if fp.defined]
    n = len(t)
    if n < cfg.capture_steps:
        return None
    for label, pt in pts:
        d = np.max(np.abs(states - pt), axis=1)
        if np.all(d[-cfg.capture_steps:] < cfg.capture_dist):
            return Termination(kind="converged", label=label)
    return None


def integrate_m(params: SystemParams, initial: PhaseState,
                horizon: tuple[float, float] | None = None,
                events: Sequence[EventSpec] = (),
                cfg: NumericsConfig = DEFAULT_NUMERICS,
                dense: bool = False) -> Trajectory:
    """Integrate the phase system with an adaptive embedded Runge-Kutta pair.

    Blow-up (any coordinate beyond cfg.blow_up) terminates; scipy locates all
    event roots by sign-change bisection on the dense interpolant. A
    convergence termination is reported when the accepted steps sit within
    cfg.capture_dist of a catalog point for cfg.capture_steps steps.
    """
    if horizon is None:
        horizon = (initial.t, cfg.t_end)
    y0 = initial.coords
    if not np.all(np.isfinite(y0)):
        raise PreconditionViolated("initial state must be finite")

    def blow_x(t, y):
        return abs(y[0]) - cfg.blow_up
    blow_x.terminal = True

    def blow_y(t, y):
        return abs(y[1]) - cfg.blow_up
    blow_y.terminal = True

    ev_list = [blow_x, blow_y] + [_make_event(s) for s in events]
    sol = solve_ivp(lambda t, y: vector_field_arr(params, y), horizon, y0,
                    method="DOP853", rtol=cfg.ode_rtol, atol=cfg.ode_atol,
                    events=ev_list, dense_output=dense)
    if sol.status == -1:
        partial = Trajectory(t=sol.t, states=sol.y.T,
                             termination=Termination(kind="failed"))
        raise StepSizeUnderflow(sol.message, trajectory=partial)

    named = []
    for idx, spec in enumerate(events):
        for te in sol.t_events[idx + 2]:
            named.append((float(te), spec.name))
    named.sort()

    if sol.status == 1:
        hit_x = len(sol.t_events[0]) > 0
        hit_y = len(sol.t_events[1]) > 0
        if hit_x and hit_y:
            term = Termination(kind="blow-up-both")
        elif hit_x:
            # the companion coordinate may be effectively blown up as well
            ratio = abs(sol.y[1, -1]) / cfg.blow_up
            term = Termination(kind="blow-up-both" if ratio > 0.99 else "blow-up-x")
        elif hit_y:
            ratio = abs(sol.y[0, -1]) / cfg.blow_up
            term = Termination(kind="blow-up-both" if ratio > 0.99 else "blow-up-y")
        else:
            # terminated by a user event
            term = Termination(kind="event", event=named[-1][1] if named else None)
    else:
        term = _detect_convergence(params, sol.t, sol.y.T, cfg) \
            or Termination(kind="max-time")
    return Trajectory(t=sol.t, states=sol.y.T, termination=term,
                      events=tuple(named), dense=sol.sol if dense else None)


# -- radial oracle ------------------------------------------------------------

def _radial_rhs(params: SystemParams, t, y):
    # y = (u, v, U, V) with U = |u'|^{p-2} u', V = |v'|^{q-2} v', in t = ln r
    P = params
    u, v, U, V = y
    r = math.exp(t)
    du = math.copysign(abs(U) ** (1 / (P.p - 1)), U) if U != 0.0 else 0.0
    dv = math.copysign(abs(V) ** (1 / (P.q - 1)), V) if V != 0.0 else 0.0
    uu, vv = max(u, 0.0), max(v, 0.0)   # powers only see the positive part
    return [r * du, r * dv,
            -P.eps1 * r ** (1 + P.a) * uu ** P.s * vv ** P.delta - (P.N - 1) * U,
            -P.eps2 * r ** (1 + P.b) * uu ** P.mu * vv ** P.m - (P.N - 1) * V]


def integrate_radial(params: SystemParams, u0: float, v0: float, r_max: float,
                     cfg: NumericsConfig = DEFAULT_NUMERICS,
                     r0: float | None = None, dense: bool = False) -> RadialTrajectory:
    """Regular solution of the radial system with data (u0, v0), in log-radius.

    Startup at r0 uses the first-order series: the flux potentials start as
    U = -r^{1+a} u0^s v0^delta/(N+a) (and symmetrically for V), which is exact
    to the order needed at r0 ~ 1e-6. Integration stops at u = 0, v = 0 or r_max.
    """
    P = params
    if min(P.p + P.a, P.q + P.b) <= 0.0:
        raise SeriesInvalid("startup series needs min(p+a, q+b) > 0")
    if u0 <= 0.0 or v0 <= 0.0:
        raise PreconditionViolated("u0 and v0 must be positive")
    r0 = cfg.radial_r0 if r0 is None else r0
    cu = (u0 ** P.s * v0 ** P.delta / (P.N + P.a)) ** (1 / (P.p - 1))
    cv = (u0 ** P.mu * v0 ** P.m / (P.N + P.b)) ** (1 / (P.q - 1))
    u_init = u0 - cu * (P.p - 1) / (P.p + P.a) * r0 ** ((P.p + P.a) / (P.p - 1))
    v_init = v0 - cv * (P.q - 1) / (P.q + P.b) * r0 ** ((P.q + P.b) / (P.q - 1))
    U_init = -r0 ** (1 + P.a) * u0 ** P.s * v0 ** P.delta / (P.N + P.a)
    V_init = -r0 ** (1 + P.b) * u0 ** P.mu * v0 ** P.m / (P.N + P.b)

    def u_zero(t, y):
        return y[0]
    u_zero.terminal = False
    u_zero.direction = -1.0

    def v_zero(t, y):
        return y[1]
    v_zero.terminal = False
    v_zero.direction = -1.0

    def both_gone(t, y):
        return max(y[0], y[1])
    both_gone.terminal = True
    both_gone.direction = -1.0

    sol = solve_ivp(lambda t, y: _radial_rhs(params, t, y),
                    (math.log(r0), math.log(r_max)),
                    [u_init, v_init, U_init, V_init],
                    method="DOP853", rtol=cfg.ode_rtol, atol=cfg.ode_atol,
                    events=[u_zero, v_zero, both_gone], dense_output=dense)
    if sol.status == -1:
        raise StepSizeUnderflow(sol.message)
    events = [(float(t), "u-zero") for t in sol.t_events[0]]
    events += [(float(t), "v-zero") for t in sol.t_events[1]]
    events.sort()
    if events:
        term = Termination(kind="event", event=events[0][1])
    else:
        term = Termination(kind="max-time")
    u, v, U, V = sol.y
    du = np.sign(U) * np.abs(U) ** (1 / (P.p - 1))
    dv = np.sign(V) * np.abs(V) ** (1 / (P.q - 1))
    return RadialTrajectory(r=np.exp(sol.t), u=u, v=v, du=du, dv=dv,
                            termination=term, events=tuple(events),
                            dense=sol.sol if dense else None, _params=params)


def oracle_compare(params: SystemParams, x: float, y: float,
                   rho: float | None = None,
                   cfg: NumericsConfig = DEFAULT_NUMERICS,
                   n_samples: int = 25) -> float:
    """Max relative deviation between the two routes to the regular trajectory:
    direct radial integration mapped through the chart, versus phase-space
    integration from the manifold seed.

    The radial route runs from scale-normalized data (the scaling law makes
    the curves agree up to a log-radius shift); the shift is pinned by matching
    X at the last comparison sample, then all four coordinates are compared
    along the stretch where the trajectory is still inside 60% of the box.
    """
    from scipy.optimize import brentq

    seed = launch_regular(params, x, y, rho, cfg)
    ph = integrate_m(params, seed, horizon=(0.0, cfg.t_end), cfg=cfg, dense=True)
    u0h, v0h, tau = normalized_regular_data(params, x, y)
    rad = integrate_radial(params, u0h, v0h, r_max=math.exp(cfg.t_end), cfg=cfg,
                           dense=True)

    rad_lo, rad_hi = math.log(rad.r[0]), math.log(rad.r[-1])
    t_lo = max(0.0, rad_lo + tau + 1e-9)
    t_hi = min(ph.t[-1], rad_hi + tau - 1e-9)
    for t in np.linspace(t_lo, t_hi, 400):
        Xp, Yp = ph.dense(t)[0], ph.dense(t)[1]
        if Xp > 0.6 * params.x_bound or Yp > 0.6 * params.y_bound:
            t_hi = t
            break
    if t_hi - t_lo < 1e-3:
        raise Inconclusive("no overlap window for the oracle comparison")

    # refine the shift so X agrees exactly at the end of the window
    x_target = float(ph.dense(t_hi)[0])

    def shift_residual(dt):
        return float(rad.phase_at(t_hi - tau + dt).X) - x_target

    lo, hi = -0.5, 0.5
    lo = max(lo, rad_lo - (t_hi - tau) + 1e-9)
    hi = min(hi, rad_hi - (t_hi - tau) - 1e-9)
    d_tau = 0.0
    if shift_residual(lo) * shift_residual(hi) < 0:
        d_tau = brentq(shift_residual, lo, hi, xtol=1e-14)
    shift = tau - d_tau

    worst = 0.0
    for t in np.linspace(t_lo, t_hi, n_samples):
        if not rad_lo + 1e-9 <= t - shift <= rad_hi - 1e-9:
            continue
        ref = rad.phase_at(t - shift).coords
        got = np.asarray(ph.dense(t))
        worst = max(worst, float(np.max(np.abs(got - ref) / (1.0 + np.abs(ref)))))
    return worst


def radial_to_phase_arrays(params: SystemParams, rad: RadialTrajectory):
    """Map a radial trajectory through the chart; returns (t, states) arrays,
    dropping samples outside the chart (u, v <= 0 or vanishing derivatives)."""
    ts, rows = [], []
    for i in range(len(rad.r)):
        if rad.u[i] <= 0 or rad.v[i] <= 0 or rad.du[i] == 0 or rad.dv[i] == 0:
            continue
        st = to_phase(params, rad.state(i))
        ts.append(st.t)
        rows.append([st.X, st.Y, st.Z, st.W])
    return np.array(ts), np.array(rows)


# -- regular-manifold seeding --------------------------------------------------

def launch_regular(params: SystemParams, x: float, y: float,
                   rho: float | None = None,
                   cfg: NumericsConfig = DEFAULT_NUMERICS) -> PhaseState:
    """Seed on the unstable manifold of N0 at chart point (x, y), first order.

    The linearization at N0 has unstable rates lam1 = (p+a)/(p-1) (X) and
    lam2 = (q+b)/(q-1) (Y); the manifold graph starts as

        Z = N + a - (N+a) [ s x/(lam1 + N + a) + delta y/(lam2 + N + a) ],
        W = N + b - (N+b) [ mu x/(lam1 + N + b) + m y/(lam2 + N + b) ].
    """
    P = params
    rho = cfg.manifold_rho if rho is None else rho
    if x < 0 or y < 0 or (x == 0.0 and y == 0.0) or x * x + y * y > rho * rho * (1 + 1e-12):
        raise PreconditionViolated("need x, y >= 0, (x, y) != 0, x^2 + y^2 <= rho^2")
    lam1 = (P.p + P.a) / (P.p - 1)
    lam2 = (P.q + P.b) / (P.q - 1)
    Na, Nb = P.N + P.a, P.N + P.b
    Z = Na - Na * (P.s * x / (lam1 + Na) + P.delta * y / (lam2 + Na))
    W = Nb - Nb * (P.mu * x / (lam1 + Nb) + P.m * y / (lam2 + Nb))
    return PhaseState(t=0.0, X=x, Y=y, Z=Z, W=W)


# -- shot classification ---------------------------------------------------------

class SClass(str, Enum):
    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S = "S"


class MClass(str, Enum):
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"
    GS = "GS"


@dataclass(frozen=True)
class ShotOutcome:
    seed: tuple[float, float]
    s_class: SClass
    m_class: MClass
    hit_times: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"seed": list(self.seed), "sClass": self.s_class.value,
                "mClass": self.m_class.value, "hitTimes": self.hit_times}


def _shoot_once(params, x, y, rho, t_end, cfg):
    seed = launch_regular(params, x, y, rho, cfg)
    # tiny hysteresis keeps asymptotic approaches to the face (X -> bound from
    # below, with integration noise) from registering as crossings
    cp = params.x_bound * (1 + 1e-9)
    cq = params.y_bound * (1 + 1e-9)
    evs = [EventSpec("x-bound", lambda t, v: v[0] - cp, terminal=False, direction=1.0),
           EventSpec("y-bound", lambda t, v: v[1] - cq, terminal=False, direction=1.0)]
    return integrate_m(params, seed, horizon=(0.0, t_end), events=evs, cfg=cfg)


def classify_shot(params: SystemParams, x: float, y: float,
                  rho: float | None = None,
                  cfg: NumericsConfig = DEFAULT_NUMERICS) -> ShotOutcome:
    """Classify one regular seed; widens the horizon (twice) when undecided."""
    t_end = cfg.t_end
    last = None
    for attempt in range(cfg.max_horizon_extensions + 1):
        traj = _shoot_once(params, x, y, rho, t_end, cfg)
        last = traj
        t_x = traj.first_event("x-bound")
        t_y = traj.first_event("y-bound")
        hit = {}
        if t_x is not None:
            hit["x-bound"] = t_x
        if t_y is not None:
            hit["y-bound"] = t_y
        blew = traj.termination.kind.startswith("blow-up")
        if blew:
            hit["blow-up"] = float(traj.t[-1])

        if t_x is None and t_y is None:
            if blew:      # left the box without crossing a face first: numerical corner case
                t_end *= 2
                continue
            final = traj.states[-1]
            near_face = (abs(final[0] - params.x_bound) < 1e-6 * (1 + params.x_bound)
                         or abs(final[1] - params.y_bound) < 1e-6 * (1 + params.y_bound))
            if near_face and attempt < cfg.max_horizon_extensions:
                t_end *= 2
                continue
            return ShotOutcome((x, y), SClass.S, MClass.GS, hit)

        if t_x is not None and t_y is not None:
            s_class = SClass.S3 if abs(t_x - t_y) <= cfg.sim_window else \
                (SClass.S1 if t_x < t_y else SClass.S2)
        else:
            s_class = SClass.S1 if t_y is None else SClass.S2

        if not blew:
            if attempt < cfg.max_horizon_extensions:
                t_end *= 2
                continue
            raise Inconclusive(f"seed ({x}, {y}): crossed at t = {min(hit.values())} "
                               f"but no blow-up within t = {t_end}")
        X_end, Y_end = traj.states[-1, 0], traj.states[-1, 1]
        if Y_end != 0 and abs(X_end / Y_end - 1.0) < cfg.hopf_ratio_tol:
            m_class = MClass.M3
        elif X_end >= Y_end:
            m_class = MClass.M1
        else:
            m_class = MClass.M2
        return ShotOutcome((x, y), s_class, m_class, hit)
    raise Inconclusive(f"seed ({x}, {y}) unresolved after extensions")


# -- searches --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryHit:
    angle: float
    kind: str            # "ground-state" | "dirichlet"
    outcome: ShotOutcome


@dataclass(frozen=True)
class GroundStateSearch:
    found: bool
    witness_angles: tuple[float, ...]
    boundary_angles: tuple[float, ...]
    boundaries: tuple[BoundaryHit, ...]
    outcomes: tuple[ShotOutcome, ...]
    angles: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"found": self.found,
                "witness_angles": list(self.witness_angles),
                "boundary_angles": list(self.boundary_angles),
                "boundaries": [{"angle": b.angle, "kind": b.kind,
                                "outcome": b.outcome.to_dict()} for b in self.boundaries],
                "outcomes": [o.to_dict() for o in self.outcomes]}


def _seed(theta: float, rho: float) -> tuple[float, float]:
    return rho * math.cos(theta), rho * math.sin(theta)


def sweep_angles(params: SystemParams, n_angles: int = 33,
                 rho: float | None = None,
                 cfg: NumericsConfig = DEFAULT_NUMERICS) -> tuple[tuple[float, ...], list[ShotOutcome]]:
    """Classify seeds on a uniform angle grid over (0, pi/2); parallel across
    seeds when EFDYN_THREADS > 1, results ordered by angle either way."""
    rho = cfg.manifold_rho if rho is None else rho
    thetas = tuple(np.linspace(0.0, math.pi / 2, n_angles + 2)[1:-1])
    workers = int(os.environ.get("EFDYN_THREADS", "1") or "1")

    def job(th):
        x, y = _seed(th, rho)
        return classify_shot(params, x, y, rho, cfg)

    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, thetas))
    else:
        outcomes = [job(th) for th in thetas]
    return thetas, outcomes


def _bisect_boundary(params, th_lo, th_hi, side_lo, rho, cfg) -> BoundaryHit:
    """Shrink an S1/S2 flip interval to cfg.angle_tol and decide what sits on it."""
    lo, hi = th_lo, th_hi
    mid_out = None
    while hi - lo > cfg.angle_tol:
        mid = 0.5 * (lo + hi)
        out = classify_shot(params, *_seed(mid, rho), rho, cfg)
        mid_out = out
        if out.s_class in (SClass.S, SClass.S3):
            break
        if out.s_class == side_lo:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if mid_out is None:
        mid_out = classify_shot(params, *_seed(mid, rho), rho, cfg)
    if mid_out.s_class is SClass.S:
        return BoundaryHit(mid, "ground-state", mid_out)
    if mid_out.s_class is SClass.S3 or mid_out.m_class is MClass.M3:
        # simultaneous blow-up survives the bisection limit: both profiles
        # vanish at one radius on the boundary trajectory
        return BoundaryHit(mid, "dirichlet", mid_out)
    # one-sided exit at the limit: the boundary trajectory itself never leaves
    # the rectangle (a corner exit would have forced the ratio toward 1)
    return BoundaryHit(mid, "ground-state", mid_out)


def search_ground_state(params: SystemParams, n_angles: int = 33,
                        rho: float | None = None,
                        cfg: NumericsConfig = DEFAULT_NUMERICS) -> GroundStateSearch:
    """Angle sweep plus bisection of every S1/S2 flip.

    A ground state is witnessed either by a grid seed that never leaves the
    rectangle, or by a flip boundary whose limiting shot stays (or lands near
    an interior fixed point). Deterministic for fixed grid and tolerances.
    """
    rho = cfg.manifold_rho if rho is None else rho
    thetas, outcomes = sweep_angles(params, n_angles, rho, cfg)
    witnesses = [th for th, o in zip(thetas, outcomes) if o.s_class is SClass.S]
    boundaries: list[BoundaryHit] = []
    for i in range(len(thetas) - 1):
        a, b = outcomes[i], outcomes[i + 1]
        flip = {a.s_class, b.s_class} == {SClass.S1, SClass.S2}
        if flip:
            boundaries.append(_bisect_boundary(params, thetas[i], thetas[i + 1],
                                               a.s_class, rho, cfg))
    for th, o in zip(thetas, outcomes):
        if o.s_class is SClass.S3:
            boundaries.append(BoundaryHit(th, "dirichlet", o))
    gs_boundaries = [b for b in boundaries if b.kind == "ground-state"]
    found = bool(witnesses or gs_boundaries)
    return GroundStateSearch(
        found=found,
        witness_angles=tuple(witnesses + [b.angle for b in gs_boundaries]),
        boundary_angles=tuple(b.angle for b in boundaries),
        boundaries=tuple(boundaries),
        outcomes=tuple(outcomes),
        angles=thetas,
    )


@dataclass(frozen=True)
class DirichletSearch:
    found: bool
    radius: float | None = None
    v_zero_radius: float | None = None
    initial_values: tuple[float, float] | None = None
    angle: float | None = None
    profile: RadialTrajectory | None = None

    def to_dict(self) -> dict:
        return {"found": self.found, "radius": self.radius,
                "v_zero_radius": self.v_zero_radius,
                "initial_values": list(self.initial_values) if self.initial_values else None,
                "angle": self.angle}


def search_dirichlet(params: SystemParams, u0: float | None = None,
                     n_angles: int = 33, rho: float | None = None,
                     cfg: NumericsConfig = DEFAULT_NUMERICS) -> DirichletSearch:
    """Find a positive radial solution vanishing at one radius.

    Locates a simultaneous-vanishing seed by the angle search, maps it to
    regular initial data, then integrates the radial system to read off the
    common zero radius. When u0 is given, the solution is rescaled by the
    exact scaling law (theta^gamma u(theta r), theta^xi v(theta r)) so that
    u(0) = u0, and the rescaled data is re-integrated.
    """
    rho = cfg.manifold_rho if rho is None else rho
    res = search_ground_state(params, n_angles, rho, cfg)
    hits = [b for b in res.boundaries if b.kind == "dirichlet"]
    # direct grid M3 outcomes also qualify
    for th, o in zip(res.angles, res.outcomes):
        if o.m_class is MClass.M3 and o.s_class is not SClass.S:
            hits.append(BoundaryHit(th, "dirichlet", o))
    if not hits:
        return DirichletSearch(found=False)
    hit = min(hits, key=lambda h: h.angle)
    x, y = _seed(hit.angle, rho)
    u0_star, v0_star = regular_initial_values(params, x, y)
    if u0 is not None:
        ex = derive_exponents(params)
        scale = (u0 / u0_star) ** (1.0 / ex.gamma)
        u0_star, v0_star = u0, v0_star * scale ** ex.xi
    # integrate far enough to capture both zeros
    rad = integrate_radial(params, u0_star, v0_star, r_max=1e12, cfg=cfg)
    tu = rad.first_event("u-zero")
    tv = rad.first_event("v-zero")
    if tu is None and tv is None:
        return DirichletSearch(found=False, initial_values=(u0_star, v0_star),
                               angle=hit.angle, profile=rad)
    r_u = math.exp(tu) if tu is not None else None
    r_v = math.exp(tv) if tv is not None else None
    return DirichletSearch(found=True, radius=r_u if r_u is not None else r_v,
                           v_zero_radius=r_v, initial_values=(u0_star, v0_star),
                           angle=hit.angle, profile=rad)
