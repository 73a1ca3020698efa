import math

import numpy as np
import pytest

from efdyn import (BoxBounds, MClass, PhaseState, PreconditionViolated, SClass,
                   classify_shot, derive_exponents, hamiltonian_params, integrate_m,
                   integrate_radial, launch_regular, nonvariational_params,
                   potential_params, search_dirichlet, search_ground_state,
                   to_phase, vector_field_arr)
from efdyn.dynamics import EventSpec, oracle_compare, sweep_angles
from efdyn.errors import SeriesInvalid
from efdyn.numerics import DEFAULT_NUMERICS as CFG

HAM6 = hamiltonian_params(6.0, 2.0, 2.0)
RHO = 1e-4


class TestIntegrateM:
    def test_equilibrium_stays_put(self):
        st = PhaseState(0.0, 4.0, 4.0, 0.0, 0.0)
        traj = integrate_m(HAM6, st, horizon=(0.0, 10.0))
        assert traj.termination.kind in ("max-time", "converged")
        assert np.max(np.abs(traj.states - st.coords)) == 0.0

    def test_invariant_hyperplane_exact(self):
        seed = launch_regular(HAM6, RHO, 0.0)
        traj = integrate_m(HAM6, seed, horizon=(0.0, 30.0))
        assert np.max(np.abs(traj.states[:, 1])) < 1e-12

    def test_blow_up_termination_consistent(self):
        seed = launch_regular(HAM6, RHO, 0.0)
        traj = integrate_m(HAM6, seed, horizon=(0.0, 30.0))
        assert traj.termination.kind == "blow-up-x"
        assert abs(traj.states[-1, 0]) >= CFG.blow_up * (1 - 1e-9)

    def test_event_detection(self):
        seed = launch_regular(HAM6, RHO, 0.0)
        ev = EventSpec("x-cross", lambda t, y: y[0] - 1.0, direction=1.0)
        traj = integrate_m(HAM6, seed, horizon=(0.0, 30.0), events=[ev], dense=True)
        t_cross = traj.first_event("x-cross")
        assert t_cross is not None
        assert abs(float(traj.state_at(t_cross)[0]) - 1.0) < 1e-9

    def test_monotone_departure_from_regular_corner(self):
        seed = launch_regular(HAM6, 0.6 * RHO, 0.4 * RHO)
        traj = integrate_m(HAM6, seed, horizon=(0.0, 2.0))
        head = traj.states[:6]
        assert np.all(np.diff(head[:, 0]) > 0)
        assert np.all(np.diff(head[:, 1]) > 0)
        assert np.all(np.diff(head[:, 2]) < 0)
        assert np.all(np.diff(head[:, 3]) < 0)

    def test_backward_integration_approaches_corner(self):
        # seed-quality check: the first-order manifold truncation decays going
        # backward while the off-manifold residue grows at rate N+a, so the
        # distance dips through 1e-6 before turning around
        rho = 1e-6
        seed = launch_regular(HAM6, 0.6 * rho, 0.4 * rho, rho)
        traj = integrate_m(HAM6, seed, horizon=(0.0, -4.0))
        corner = np.array([0.0, 0.0, 6.0, 6.0])
        d = np.max(np.abs(traj.states - corner), axis=1)
        i_min = int(np.argmin(d))
        assert d[i_min] < 1e-6
        assert np.all(np.diff(d[:i_min + 1]) < 1e-12)   # monotone shrink to the dip

    def test_critical_diagonal_approaches_decay_corner(self):
        seed = launch_regular(HAM6, RHO / math.sqrt(2), RHO / math.sqrt(2))
        traj = integrate_m(HAM6, seed, horizon=(0.0, 12.0))
        corner = np.array([4.0, 4.0, 0.0, 0.0])
        assert np.min(np.max(np.abs(traj.states - corner), axis=1)) < 5e-3


class TestLaunch:
    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            launch_regular(HAM6, 0.0, 0.0)
        with pytest.raises(PreconditionViolated):
            launch_regular(HAM6, 2 * RHO, 2 * RHO, RHO)
        with pytest.raises(PreconditionViolated):
            launch_regular(HAM6, -RHO / 2, RHO / 2, RHO)

    def test_axis_seed_allowed(self):
        st = launch_regular(HAM6, RHO, 0.0)
        assert st.Y == 0.0
        assert st.Z == pytest.approx(6.0)           # s = 0: no X correction
        assert st.W == pytest.approx(6.0 * (1 - 2 * RHO / 8), rel=1e-12)

    def test_shrinking_radius_tends_to_corner(self):
        for rho in (1e-4, 1e-6, 1e-8):
            st = launch_regular(HAM6, rho / 2, rho / 2, rho)
            assert abs(st.Z - 6.0) < 3 * rho
            assert abs(st.W - 6.0) < 3 * rho


class TestRadialOracle:
    def test_series_guard(self):
        P = HAM6.replace(a=-2.5, b=0.0)
        with pytest.raises(SeriesInvalid):
            integrate_radial(P, 1.0, 1.0, 10.0)

    def test_critical_symmetric_profile_stays_positive(self):
        rad = integrate_radial(HAM6, 1.0, 1.0, r_max=1e4)
        assert rad.termination.kind == "max-time"
        assert np.all(rad.u > 0) and np.all(rad.v > 0)
        assert np.max(np.abs(rad.u - rad.v)) < 1e-12   # symmetric data stays symmetric

    def test_consistency_with_phase_system(self):
        # chart image of the radial trajectory satisfies the phase ODE
        rad = integrate_radial(HAM6, 1.0, 1.0, r_max=50.0, dense=True)
        for t in np.linspace(-2.0, math.log(40.0), 10):
            st = rad.phase_at(t)
            h = 1e-5
            fd = (rad.phase_at(t + h).coords - rad.phase_at(t - h).coords) / (2 * h)
            assert fd == pytest.approx(vector_field_arr(HAM6, st.coords),
                                       rel=1e-6, abs=1e-7)

    def test_subcritical_zero_detected(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        rad = integrate_radial(P, 1.0, 1.0, r_max=1e4)
        tu = rad.first_event("u-zero")
        tv = rad.first_event("v-zero")
        assert tu is not None and tv is not None
        assert tu == pytest.approx(tv, abs=1e-10)   # symmetric: same radius


class TestClassification:
    def test_seed_on_axis_is_s1_side(self):
        # the one-sided comparison trajectory: X escapes through its face
        traj = integrate_m(HAM6, launch_regular(HAM6, RHO, 0.0),
                           horizon=(0.0, 30.0),
                           events=[EventSpec("x-bound", lambda t, y: y[0] - 4.0,
                                             direction=1.0)])
        assert traj.first_event("x-bound") is not None

    def test_subcritical_diagonal_is_simultaneous(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        out = classify_shot(P, RHO / math.sqrt(2), RHO / math.sqrt(2), RHO)
        assert out.s_class is SClass.S3
        assert out.m_class is MClass.M3

    def test_supercritical_diagonal_stays(self):
        P = hamiltonian_params(6.0, 2.5, 2.5)
        out = classify_shot(P, RHO / math.sqrt(2), RHO / math.sqrt(2), RHO)
        assert out.s_class is SClass.S
        assert out.m_class is MClass.GS

    def test_subcritical_off_diagonal_one_sided(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        out = classify_shot(P, 0.9 * RHO, 0.2 * RHO, RHO)
        assert out.s_class is SClass.S1
        assert out.m_class is MClass.M1
        out2 = classify_shot(P, 0.2 * RHO, 0.9 * RHO, RHO)
        assert out2.s_class is SClass.S2
        assert out2.m_class is MClass.M2

    def test_hopf_ratio_on_simultaneous_shots(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        seed = launch_regular(P, RHO / math.sqrt(2), RHO / math.sqrt(2), RHO)
        traj = integrate_m(P, seed, horizon=(0.0, 40.0))
        X, Y = traj.states[-1, 0], traj.states[-1, 1]
        assert abs(X / Y - 1.0) < 0.05

    def test_box_invariance_of_staying_shot(self):
        P = hamiltonian_params(6.0, 2.5, 2.5)
        seed = launch_regular(P, RHO / math.sqrt(2), RHO / math.sqrt(2), RHO)
        traj = integrate_m(P, seed, horizon=(0.0, 40.0))
        box = BoxBounds.from_params(P)
        for st in traj.states:
            assert box.contains(st, strict=True)

    def test_derived_profile_bounds_along_global_solution(self):
        # u^{s-p+1} v^delta <= (N+a) ((N-p)/(p-1))^{p-1} r^{-(p+a)} pointwise
        P = hamiltonian_params(6.0, 2.5, 2.5)
        rad = integrate_radial(P, 1.0, 1.0, r_max=1e4)
        C1 = (P.N + P.a) * P.x_bound ** (P.p - 1)
        C2 = (P.N + P.b) * P.y_bound ** (P.q - 1)
        lhs1 = rad.u ** (P.s - P.p + 1) * rad.v ** P.delta
        lhs2 = rad.u ** P.mu * rad.v ** (P.m - P.q + 1)
        assert np.all(lhs1 <= C1 * rad.r ** (-(P.p + P.a)) * (1 + 1e-9))
        assert np.all(lhs2 <= C2 * rad.r ** (-(P.q + P.b)) * (1 + 1e-9))


class TestSearches:
    def test_dichotomy_across_families(self):
        cases = [
            (hamiltonian_params(6.0, 2.5, 2.5), True),
            (hamiltonian_params(6.0, 3.0, 2.0), True),    # asymmetric, above
            (hamiltonian_params(6.0, 1.5, 1.5), False),
            (hamiltonian_params(6.0, 1.8, 1.2), False),   # asymmetric, below
            (nonvariational_params(6.0, 0.5, 2.5, 2.5), True),
            (potential_params(6.0, 2.0, 2.0, 0.7, 0.7), True),
            (potential_params(6.0, 2.0, 2.0, 0.3, 0.3), False),
        ]
        for P, expect in cases:
            res = search_ground_state(P, n_angles=9)
            assert res.found == expect, (P, res.found)

    def test_search_is_deterministic(self):
        P = hamiltonian_params(6.0, 1.8, 1.2)
        r1 = search_ground_state(P, n_angles=9)
        r2 = search_ground_state(P, n_angles=9)
        assert r1.boundary_angles == r2.boundary_angles
        assert [o.to_dict() for o in r1.outcomes] == [o.to_dict() for o in r2.outcomes]

    def test_dirichlet_zero_radii_agree(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        d = search_dirichlet(P, n_angles=9)
        assert d.found
        assert d.radius == pytest.approx(d.v_zero_radius, rel=1e-6)

    def test_dirichlet_scaling_law(self):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        g = derive_exponents(P).gamma
        d1 = search_dirichlet(P, u0=1.0, n_angles=9)
        d2 = search_dirichlet(P, u0=0.5, n_angles=9)
        assert d2.radius / d1.radius == pytest.approx(2.0 ** (1.0 / g), rel=1e-6)

    def test_no_dirichlet_when_supercritical(self):
        d = search_dirichlet(hamiltonian_params(6.0, 2.5, 2.5), n_angles=9)
        assert not d.found

    def test_dirichlet_for_symmetric_scalar_embedding(self):
        # N=3, Q=4 sits between the scalar thresholds: regular profiles change
        # sign, so a vanishing radius exists for the symmetric system
        from efdyn import symmetric_scalar_embedding
        P = symmetric_scalar_embedding(3.0, 2.0, 4.0)
        d = search_dirichlet(P, n_angles=9)
        assert d.found and d.radius is not None
        assert d.radius == pytest.approx(d.v_zero_radius, rel=1e-6)

    def test_angle_sweep_shape(self):
        thetas, outs = sweep_angles(hamiltonian_params(6.0, 1.5, 1.5), n_angles=9)
        assert len(thetas) == 9 and len(outs) == 9
        assert all(o.s_class in SClass for o in outs)

    def test_threaded_sweep_matches_serial(self, monkeypatch):
        P = hamiltonian_params(6.0, 1.5, 1.5)
        _, serial = sweep_angles(P, n_angles=7)
        monkeypatch.setenv("EFDYN_THREADS", "4")
        _, threaded = sweep_angles(P, n_angles=7)
        assert [o.to_dict() for o in serial] == [o.to_dict() for o in threaded]


class TestOracleEquivalence:
    @pytest.mark.parametrize("params,xy", [
        (HAM6, (0.6, 0.4)),
        (hamiltonian_params(5.0, 2.4, 1.7, a=0.3, b=-0.4), (0.5, 0.5)),
        (potential_params(6.0, 2.0, 2.3, 0.4, 0.6), (0.4, 0.7)),
    ])
    def test_routes_agree(self, params, xy):
        rho = 1e-6
        err = oracle_compare(params, xy[0] * rho, xy[1] * rho, rho)
        assert err < 1e-5
