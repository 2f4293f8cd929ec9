import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from lefschetz_lab import linalg
from lefschetz_lab.apolar import ak_basis, hilbert_vector
from lefschetz_lab.errors import NoSplitError
from lefschetz_lab.families import (
    gen_exceptional,
    gen_gnp,
    gen_prop44,
    gen_thmwlp,
    gen_wlpodd,
)
from lefschetz_lab.hessian import hessian_matrix
from lefschetz_lab.lefschetz import (
    LinearForm,
    key_criterion,
    mult_map,
    slp_check_element,
    slp_generic,
    verify_key_certificate,
    verify_obstruction_certificate,
    wlp_check_element,
    wlp_generic,
    wlp_obstruction,
)
from lefschetz_lab.polycore import VariableSet, eval_poly, parse_poly

from conftest import homogeneous_polys

IKEDA_VARS = VariableSet(("x0", "x1", "u1", "u2"), n_x=2)
IKEDA = parse_poly("x0*u1^3*u2 + x1*u1*u2^3 + x0^3*x1^2", IKEDA_VARS)


def random_linear_form(rng, n, bound=9):
    coeffs = [rng.randint(-bound, bound) for _ in range(n)]
    if not any(coeffs):
        coeffs[0] = 1
    return LinearForm.from_coeffs(coeffs)


class TestLinearForm:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            LinearForm.from_coeffs((0, 0))

    def test_operator(self):
        vs = VariableSet(("x", "y"))
        op = LinearForm.from_coeffs((2, -1)).as_operator(vs)
        assert op == parse_poly("2*X - Y", vs.dual())


class TestMultMap:
    def test_one_variable_isomorphism(self):
        vs = VariableSet(("x",))
        f = parse_poly("x^3", vs)
        m = mult_map(f, LinearForm.from_coeffs((1,)), 1, 1)
        assert len(m) == 1 and m[0][0] != 0

    def test_quartic_injective_level_one(self):
        vs = VariableSet(("x", "y", "z", "u", "v"), n_x=3)
        f = parse_poly("x*u^3 + y*u^2*v + z*u*v^2 + v^4", vs)
        m = mult_map(f, LinearForm.from_coeffs((0, 0, 0, 1, 1)), 1, 1)
        assert len(m[0]) == 5
        assert linalg.rank(m) == 5

    def test_ikeda_middle_map_singular(self):
        rng = random.Random(7)
        for _ in range(3):
            L = random_linear_form(rng, 4)
            m = mult_map(IKEDA, L, 2, 1)
            assert len(m) == 10 and len(m[0]) == 10
            assert linalg.rank(m) < 10


class TestSlpElement:
    def test_binary_quintic(self):
        vs = VariableSet(("x", "y"))
        ok, checks = slp_check_element(
            parse_poly("x^5 + y^5", vs), LinearForm.from_coeffs((1, 1))
        )
        assert ok and all(c.maximal for c in checks)

    def test_ikeda_fails_for_every_form(self):
        rng = random.Random(3)
        for _ in range(3):
            ok, checks = slp_check_element(IKEDA, random_linear_form(rng, 4))
            assert not ok
            assert not checks[2].maximal

    def test_binary_quadric(self):
        vs = VariableSet(("x", "y"))
        ok, _ = slp_check_element(
            parse_poly("x^2 + y^2", vs), LinearForm.from_coeffs((1, 0))
        )
        assert ok


class TestSlpGeneric:
    def test_exceptional_fails_at_two(self):
        report = slp_generic(gen_exceptional(3, 5, 2).f)
        assert report.verdict == "fails" and report.level == 2

    def test_fermat_holds_with_witness(self):
        vs = VariableSet(("x", "y", "z"))
        report = slp_generic(parse_poly("x^4 + y^4 + z^4", vs))
        assert report.verdict == "holds"
        ok, _ = slp_check_element(parse_poly("x^4 + y^4 + z^4", vs), report.witness)
        assert ok

    def test_perazzo_shape_fails_at_one(self):
        report = slp_generic(gen_gnp(2, 2, 1, 2).f)
        assert report.verdict == "fails" and report.level == 1


class TestWlpElement:
    def test_quartic_example_level_one(self):
        vs = VariableSet(("x", "y", "z", "u", "v"), n_x=3)
        f = parse_poly("x*u^3 + y*u^2*v + z*u*v^2 + v^4", vs)
        _, checks = wlp_check_element(f, LinearForm.from_coeffs((0, 0, 0, 1, 1)))
        assert checks[1].rank == 5 and checks[1].required == 5

    def test_prop44_witness(self):
        inst = gen_prop44("i")
        ok, _ = wlp_check_element(inst.f, inst.manifest.wlp_witness)
        assert ok

    def test_cubic_single_variable(self):
        vs = VariableSet(("x",))
        ok, _ = wlp_check_element(parse_poly("x^3", vs), LinearForm.from_coeffs((1,)))
        assert ok


class TestWlpGeneric:
    def test_thmwlp54_fails_with_certificate(self):
        report = wlp_generic(gen_thmwlp(5, 4).f)
        assert report.verdict == "fails"
        assert report.level == 1 and report.map == (1, 2)
        assert report.certificate is not None

    def test_wlpodd45_fails_middle(self):
        report = wlp_generic(gen_wlpodd(4, 5).f)
        assert report.verdict == "fails" and report.level == 2

    def test_fermat_holds(self):
        vs = VariableSet(("x", "y", "z"))
        report = wlp_generic(parse_poly("x^4 + y^4 + z^4", vs))
        assert report.verdict == "holds"
        assert report.witness is not None

    def test_report_serializes(self):
        report = wlp_generic(gen_thmwlp(5, 4).f)
        data = report.to_json_dict()
        assert data["verdict"] == "fails"
        assert data["certificate"]["ops"] == ["X2", "X3", "X4", "X5"]


class TestKeyCriterion:
    def test_ikeda(self):
        cert = key_criterion(IKEDA, 2)
        assert cert is not None
        assert {op.to_text() for op in cert.ops} == {
            "X0*U1", "X0*U2", "X1*U1", "X1*U2",
        }
        assert cert.s == 4 and cert.bound == 3
        assert verify_key_certificate(IKEDA, cert)

    def test_split_powers_no_certificate(self):
        vs = VariableSet(("x", "y"), n_x=1)
        f = parse_poly("x^4 + y^4", vs)
        for k in (1, 2):
            assert key_criterion(f, k) is None

    def test_gnp_dual_ops(self):
        f = gen_gnp(2, 2, 2, 3).f
        cert = key_criterion(f, 2)
        assert cert is not None and cert.s == 4

    def test_requires_split(self):
        vs = VariableSet(("x", "y"))
        with pytest.raises(NoSplitError):
            key_criterion(parse_poly("x^2 + y^2", vs), 1)

    def test_tampered_certificate_rejected(self):
        cert = key_criterion(IKEDA, 2)
        from dataclasses import replace

        bad = replace(cert, bound=cert.s)
        assert not verify_key_certificate(IKEDA, bad)


class TestWlpObstruction:
    def test_degree_four(self):
        f = gen_thmwlp(5, 4).f
        cert = wlp_obstruction(f, 1)
        assert {op.to_text() for op in cert.ops} == {"X2", "X3", "X4", "X5"}
        assert cert.s == 4 and cert.bound == 3
        assert verify_obstruction_certificate(f, cert)

    def test_degree_six(self):
        f = gen_thmwlp(4, 6).f
        cert = wlp_obstruction(f, 2)
        assert cert.s == 5
        assert {op.to_text() for op in cert.ops} == {
            "X2*U", "X2*V", "X3*U", "X3*V", "X4*U",
        }

    def test_degree_eight(self):
        f = gen_thmwlp(3, 8).f
        cert = wlp_obstruction(f, 3)
        assert cert.s == 6 and cert.bound == 5

    def test_empty_regime(self):
        # image degree gives no room once deg(f) <= 2k
        assert wlp_obstruction(IKEDA, 3) is None

    def test_certificate_forces_kernels(self):
        f = gen_thmwlp(5, 4).f
        cert = wlp_obstruction(f, 1)
        assert cert is not None
        rng = random.Random(11)
        h1 = len(ak_basis(f, 1))
        for _ in range(20):
            L = random_linear_form(rng, len(f.vars))
            assert linalg.rank(mult_map(f, L, 1, 1)) < h1


class TestRankConsistency:
    @given(homogeneous_polys(max_vars=3, min_degree=2, max_degree=5), st.data())
    @settings(max_examples=30)
    def test_hessian_rank_equals_multiplication_rank(self, f, data):
        d = f.degree
        k = data.draw(st.integers(0, d // 2))
        coeffs = [data.draw(st.integers(-5, 5)) for _ in range(len(f.vars))]
        if not any(coeffs):
            coeffs[0] = 1
        L = LinearForm.from_coeffs(coeffs)
        H = hessian_matrix(f, k)
        evaluated = [[eval_poly(e, L.coeffs) for e in row] for row in H.entries]
        assert linalg.rank(evaluated) == linalg.rank(mult_map(f, L, k, d - 2 * k))

    @given(homogeneous_polys(max_vars=3, min_degree=2, max_degree=5), st.data())
    @settings(max_examples=20)
    def test_consecutive_rank_duality(self, f, data):
        d = f.degree
        i = data.draw(st.integers(0, d - 1))
        coeffs = [data.draw(st.integers(-5, 5)) for _ in range(len(f.vars))]
        if not any(coeffs):
            coeffs[0] = 1
        L = LinearForm.from_coeffs(coeffs)
        r1 = linalg.rank(mult_map(f, L, i, 1))
        r2 = linalg.rank(mult_map(f, L, d - i - 1, 1))
        assert r1 == r2

    @given(homogeneous_polys(max_vars=3, min_degree=2, max_degree=4), st.data())
    @settings(max_examples=15)
    def test_scaling_invariance(self, f, data):
        coeffs = [data.draw(st.integers(-4, 4)) for _ in range(len(f.vars))]
        if not any(coeffs):
            coeffs[0] = 1
        c = data.draw(st.sampled_from((2, -1, 7, Fraction(1, 3))))
        L = LinearForm.from_coeffs(coeffs)
        scaled = LinearForm.from_coeffs([c * x for x in coeffs])
        ok1, checks1 = wlp_check_element(f, L)
        ok2, checks2 = wlp_check_element(f, scaled)
        assert ok1 == ok2
        assert [c.rank for c in checks1] == [c.rank for c in checks2]


class TestUndetermined:
    def test_no_trials_no_certificate(self):
        vs = VariableSet(("x", "y", "z"))
        report = wlp_generic(parse_poly("x^4 + y^4 + z^4", vs), trials=0)
        assert report.verdict == "undetermined"
        assert report.witness is None


class TestNonUnimodalFailure:
    def test_wide_product_family_dips_in_the_middle(self):
        from lefschetz_lab.families import gen_gnp

        f = gen_gnp(3, None, 1, 3, "maximal").f
        assert hilbert_vector(f).dims == (1, 13, 12, 13, 1)
        report = wlp_generic(f)
        assert report.verdict == "fails"
        assert "non-unimodal" in str(report.certificate)


class TestKeyCriterionSoundnessRandom:
    @given(homogeneous_polys(min_vars=3, max_vars=4, min_degree=2, max_degree=5), st.data())
    @settings(max_examples=25)
    def test_certificate_always_implies_vanishing(self, f, data):
        from lefschetz_lab.hessian import hessian_vanishes
        from lefschetz_lab.polycore import VariableSet, Poly

        n_x = data.draw(st.integers(1, len(f.vars) - 1))
        vs = VariableSet(f.vars.names, n_x)
        f = Poly(vs, f.coeff_map())
        for k in range(1, f.degree // 2 + 1):
            cert = key_criterion(f, k)
            if cert is not None:
                assert verify_key_certificate(f, cert)
                assert hessian_vanishes(f, k).vanishes
