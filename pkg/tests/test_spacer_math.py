import math
import random

import pytest
from hypothesis import given, strategies as st

from spacerfab.spacer_math import (
    DomainError,
    MachineGeometry,
    Orientation,
    RelaxationState,
    SpacerFamilySpec,
    db_dsigma,
    equilibrium_ratio,
    equilibrium_residual,
    inclination_angle,
    inter_panel_distance,
    solve_float_count,
    stitch_width_from_gauge,
    triangle_for_family,
)

H14 = 25.4 / 14


def machine(h=H14, v=2.5, bed=3.0):
    return MachineGeometry(gauge=25.4 / h, stitch_width_mm=h, course_height_mm=v,
                           bed_distance_mm=bed)


def h_family(m=2, **kw):
    return SpacerFamilySpec(orientation=Orientation.COURSE_PARALLEL, float_count=m, **kw)


def v_family(n=3, s=0, **kw):
    return SpacerFamilySpec(orientation=Orientation.WALE_PARALLEL, float_count=n,
                            wale_shift=s, **kw)


def triangle_oracle(a_initial, b_initial, a_relaxed):
    """Independent oracle: place the triangle corners as points and
    measure distances."""
    p0, p1, p2 = (0.0, 0.0), (a_initial, 0.0), (a_initial, b_initial)
    c = math.dist(p0, p2)
    assert math.dist(p0, p1) == a_initial and math.dist(p1, p2) == b_initial
    b = math.sqrt(c * c - a_relaxed * a_relaxed)
    return c, b


class TestStitchWidth:
    def test_gauge_14(self):
        assert stitch_width_from_gauge(14) == pytest.approx(1.814286, abs=5e-7)

    def test_definition(self):
        assert stitch_width_from_gauge(25.4) == 1.0
        assert stitch_width_from_gauge(1) == 25.4

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError, match="gauge"):
            stitch_width_from_gauge(0)
        with pytest.raises(DomainError, match="gauge"):
            stitch_width_from_gauge(-2)

    def test_from_gauge_consistency(self):
        m = MachineGeometry.from_gauge(14, course_height_mm=2.5, bed_distance_mm=3.0)
        assert abs(m.stitch_width_mm - 25.4 / 14) <= 1e-12


class TestTriangle:
    def test_unshrunk_course_parallel(self):
        tri = triangle_for_family(h_family(2), machine(), RelaxationState(1.0, 1.0))
        c, b = triangle_oracle(2 * H14, 3.0, 2 * H14)
        assert tri.a_initial == pytest.approx(3.628571, abs=5e-7)
        assert tri.c_rest == pytest.approx(c, rel=1e-12)
        assert tri.b_relaxed == 3.0

    def test_shrunk_course_parallel(self):
        tri = triangle_for_family(h_family(2), machine(), RelaxationState(0.98, 1.0))
        c, b = triangle_oracle(2 * H14, 3.0, 0.98 * 2 * H14)
        assert tri.a_relaxed == pytest.approx(3.556, rel=1e-9)
        assert tri.b_relaxed == pytest.approx(b, rel=1e-12)
        assert tri.b_relaxed == pytest.approx(3.0856757, abs=5e-7)

    def test_vertical_no_shrink(self):
        tri = triangle_for_family(v_family(3, 0), machine(), RelaxationState(0.97, 1.0))
        assert tri.b_relaxed == 3.0

    def test_skewed_vertical(self):
        relax = RelaxationState(0.98, 0.99)
        tri = triangle_for_family(v_family(3, 1), machine(), relax)
        a_i = math.hypot(3 * 2.5, 1 * H14)
        a = math.hypot(0.99 * 3 * 2.5, 0.98 * 1 * H14)
        c, b = triangle_oracle(a_i, 3.0, a)
        assert tri.c_rest == pytest.approx(c, rel=1e-12)
        assert tri.b_relaxed == pytest.approx(b, rel=1e-12)

    @given(
        m=st.integers(1, 8),
        h=st.floats(0.5, 5.0),
        bed=st.floats(0.5, 10.0),
        sigma=st.floats(0.5, 1.0),
        tau=st.floats(0.5, 1.0),
    )
    def test_pythagoras_invariants(self, m, h, bed, sigma, tau):
        mach = machine(h=h, bed=bed)
        tri = triangle_for_family(h_family(m), mach, RelaxationState(sigma, tau))
        assert tri.c_rest**2 == pytest.approx(tri.a_initial**2 + tri.b_initial**2,
                                              rel=1e-9)
        assert tri.a_relaxed <= tri.a_initial <= tri.c_rest
        assert tri.b_relaxed**2 == pytest.approx(tri.c_rest**2 - tri.a_relaxed**2,
                                                 rel=1e-9)
        assert tri.b_relaxed >= tri.b_initial

    @given(
        sigma=st.floats(0.5, 1.0, exclude_max=True),
        tau=st.floats(0.5, 1.0),
    )
    def test_rest_length_independent_of_shrink(self, sigma, tau):
        mach = machine()
        rest = triangle_for_family(h_family(3), mach, RelaxationState(1.0, 1.0)).c_rest
        tri = triangle_for_family(h_family(3), mach, RelaxationState(sigma, tau))
        assert tri.c_rest == pytest.approx(rest, rel=1e-12)


class TestInterPanelDistance:
    def test_no_shrink_is_bed_distance(self):
        assert inter_panel_distance(h_family(2), machine(), RelaxationState(1.0)) == 3.0

    def test_closed_form_m2(self):
        b = inter_panel_distance(h_family(2), machine(), RelaxationState(0.98))
        assert b == pytest.approx(math.sqrt(9 + (2 * H14) ** 2 * (1 - 0.98**2)),
                                  rel=1e-12)
        assert b == pytest.approx(3.0856757, abs=5e-7)

    def test_closed_form_m4(self):
        b = inter_panel_distance(h_family(4), machine(), RelaxationState(0.98))
        assert b == pytest.approx(3.3295012, abs=5e-7)

    @given(
        m=st.integers(1, 8),
        s1=st.floats(0.6, 0.999),
        s2=st.floats(0.6, 0.999),
    )
    def test_strictly_decreasing_in_sigma(self, m, s1, s2):
        if s1 == s2:
            return
        lo, hi = sorted((s1, s2))
        b_lo = inter_panel_distance(h_family(m), machine(), RelaxationState(lo))
        b_hi = inter_panel_distance(h_family(m), machine(), RelaxationState(hi))
        assert b_lo > b_hi

    @given(k=st.floats(0.1, 10.0), sigma=st.floats(0.6, 1.0))
    def test_scaling_all_lengths(self, k, sigma):
        relax = RelaxationState(sigma)
        b1 = inter_panel_distance(h_family(3), machine(), relax)
        scaled = machine(h=H14 * k, v=2.5 * k, bed=3.0 * k)
        bk = inter_panel_distance(h_family(3), scaled, relax)
        assert bk == pytest.approx(k * b1, rel=1e-9)


class TestEquilibrium:
    def test_symmetric_ratio(self):
        mach = machine(h=2.0, v=2.0)
        assert equilibrium_ratio(mach, RelaxationState(0.97, 0.97)) == pytest.approx(1.0)

    def test_ratio_value(self):
        r = equilibrium_ratio(machine(), RelaxationState(0.98, 0.99))
        assert r == pytest.approx((2.5 / H14) * math.sqrt(1 - 0.99**2)
                                  / math.sqrt(1 - 0.98**2), rel=1e-12)
        assert r == pytest.approx(0.9768171, abs=5e-7)

    def test_tau_one_gives_zero(self):
        assert equilibrium_ratio(machine(), RelaxationState(0.98, 1.0)) == 0.0

    def test_sigma_one_rejected(self):
        with pytest.raises(DomainError, match="sigma"):
            equilibrium_ratio(machine(), RelaxationState(1.0, 0.99))

    def test_residual_zero_for_identical_triangles(self):
        mach = machine(h=H14, v=H14)
        relax = RelaxationState(0.98, 0.98)
        assert equilibrium_residual(h_family(2), v_family(2, 0), mach, relax) == 0.0

    def test_residual_value_skewed(self):
        r = equilibrium_residual(h_family(2), v_family(3, 1), machine(),
                                 RelaxationState(0.98, 0.99))
        expected = (2 * H14) ** 2 * (1 - 0.98**2) - (
            (1 * H14) ** 2 * (1 - 0.98**2) + (3 * 2.5) ** 2 * (1 - 0.99**2)
        )
        assert r == pytest.approx(expected, rel=1e-12)
        assert r == pytest.approx(-0.7283290, abs=5e-7)

    def test_orientation_checked(self):
        with pytest.raises(DomainError):
            equilibrium_residual(v_family(), v_family(), machine(), RelaxationState(0.98))

    def test_residual_sign_matches_distance_order(self):
        # residual = 0 <=> equal panel distances, and sign matches, both ways
        rng = random.Random(7)
        mach_base = machine()
        for _ in range(1000):
            h = rng.uniform(0.8, 3.0)
            v = rng.uniform(0.8, 4.0)
            bed = rng.uniform(1.0, 6.0)
            mach = machine(h=h, v=v, bed=bed)
            relax = RelaxationState(rng.uniform(0.85, 0.999), rng.uniform(0.85, 0.999))
            hf = h_family(rng.randint(1, 6))
            vf = v_family(rng.randint(1, 6), rng.randint(0, 2))
            res = equilibrium_residual(hf, vf, mach, relax)
            bh = inter_panel_distance(hf, mach, relax)
            bv = inter_panel_distance(vf, mach, relax)
            if res == 0.0:
                assert abs(bh - bv) <= 1e-9 * bed
            else:
                assert (res > 0) == (bh > bv)
            if abs(bh - bv) <= 1e-15 * bed:
                assert abs(res) < 1e-12


class TestSolveFloatCount:
    def test_symmetric(self):
        mach = machine(h=2.0, v=2.0)
        sol = solve_float_count(v_family(2, 0), mach, RelaxationState(0.97, 0.97), "m")
        assert sol.feasible
        assert sol.real_value == pytest.approx(2.0, rel=1e-12)
        assert [k for k, _ in sol.candidates] == [2]

    def test_ratio_example(self):
        sol = solve_float_count(v_family(1, 0), machine(),
                                RelaxationState(0.98, 0.99), "m")
        assert sol.real_value == pytest.approx(0.9768171, abs=5e-7)
        assert [k for k, _ in sol.candidates] == [1]  # floor 0 rejected

    def test_candidates_residuals_zero_the_equation(self):
        relax = RelaxationState(0.98, 0.99)
        sol = solve_float_count(v_family(3, 1), machine(), relax, "m")
        for k, res in sol.candidates:
            assert res == pytest.approx(
                equilibrium_residual(h_family(k), v_family(3, 1), machine(), relax),
                rel=1e-12,
            )

    def test_infeasible_large_skew(self):
        # skew term alone exceeds the horizontal push: no n balances
        sol = solve_float_count(h_family(1), machine(), RelaxationState(0.98, 0.99),
                                "n", wale_shift=5)
        assert not sol.feasible
        assert "infeasible" in sol.reason

    def test_solve_for_n(self):
        relax = RelaxationState(0.98, 0.99)
        sol = solve_float_count(h_family(4), machine(), relax, "n", wale_shift=1)
        assert sol.feasible
        n = sol.real_value
        res = (4 * H14) ** 2 * (1 - 0.98**2) - (
            (1 * H14) ** 2 * (1 - 0.98**2) + (n * 2.5) ** 2 * (1 - 0.99**2)
        )
        assert res == pytest.approx(0.0, abs=1e-12)

    def test_no_shrink_rejected(self):
        with pytest.raises(DomainError, match="sigma"):
            solve_float_count(v_family(2), machine(), RelaxationState(1.0, 0.99), "m")
        with pytest.raises(DomainError, match="tau"):
            solve_float_count(h_family(2), machine(), RelaxationState(0.98, 1.0), "n")


class TestInclination:
    def test_isoceles(self):
        tri = triangle_for_family(h_family(2), machine(h=1.5, bed=3.0),
                                  RelaxationState(1.0))
        assert tri.a_relaxed == tri.b_relaxed
        assert inclination_angle(tri) == pytest.approx(math.pi / 4, rel=1e-12)

    def test_shrunk_value(self):
        tri = triangle_for_family(h_family(2), machine(), RelaxationState(0.98))
        ang = inclination_angle(tri)
        assert ang == pytest.approx(math.atan(tri.b_relaxed / 3.556), rel=1e-9)
        assert math.degrees(ang) == pytest.approx(40.95, abs=0.01)

    def test_unshrunk_value(self):
        tri = triangle_for_family(h_family(2), machine(), RelaxationState(1.0))
        assert inclination_angle(tri) == pytest.approx(math.atan(3.0 / (2 * H14)),
                                                       rel=1e-12)

    @given(k=st.floats(0.2, 5.0))
    def test_scale_invariant(self, k):
        relax = RelaxationState(0.95)
        a1 = inclination_angle(triangle_for_family(h_family(2), machine(), relax))
        ak = inclination_angle(
            triangle_for_family(h_family(2), machine(h=H14 * k, v=2.5 * k, bed=3.0 * k),
                                relax)
        )
        assert ak == pytest.approx(a1, rel=1e-9)


class TestDerivative:
    def test_sigma_one(self):
        d = db_dsigma(h_family(2), machine(), RelaxationState(1.0))
        assert d == pytest.approx(-((2 * H14) ** 2) / 3.0, rel=1e-12)

    def test_value(self):
        d = db_dsigma(h_family(2), machine(), RelaxationState(0.98))
        assert d == pytest.approx(-4.1816449, abs=5e-7)

    def test_finite_difference_draws(self):
        rng = random.Random(11)
        step = 1e-6
        for _ in range(200):
            mach = machine(h=rng.uniform(0.8, 3.0), bed=rng.uniform(1.0, 6.0))
            fam = h_family(rng.randint(1, 6))
            sigma = rng.uniform(0.85, 0.999)
            d = db_dsigma(fam, mach, RelaxationState(sigma))
            fd = (
                inter_panel_distance(fam, mach, RelaxationState(sigma + step))
                - inter_panel_distance(fam, mach, RelaxationState(sigma - step))
            ) / (2 * step)
            assert abs(d - fd) <= 1e-6 * abs(fd)


class TestTypeInvariants:
    def test_relaxation_bounds(self):
        with pytest.raises(DomainError, match="sigma"):
            RelaxationState(1.2)
        with pytest.raises(DomainError, match="sigma"):
            RelaxationState(0.0)
        with pytest.raises(DomainError, match="tau"):
            RelaxationState(0.98, 1.01)

    def test_family_invariants(self):
        with pytest.raises(DomainError, match="float_count"):
            h_family(0)
        with pytest.raises(DomainError, match="wale_shift"):
            SpacerFamilySpec(Orientation.COURSE_PARALLEL, 2, wale_shift=1)

    def test_machine_invariants(self):
        with pytest.raises(DomainError):
            MachineGeometry(gauge=14, stitch_width_mm=-1, course_height_mm=2.5,
                            bed_distance_mm=3.0)
