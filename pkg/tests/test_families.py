import pytest

from lefschetz_lab.apolar import catalecticant, hilbert_vector
from lefschetz_lab.errors import InfeasibleParametersError
from lefschetz_lab.families import (
    FamilySpec,
    gen_exceptional,
    gen_gn,
    gen_gnp,
    gen_ikeda,
    gen_perazzo,
    gen_permutti,
    gen_prop44,
    gen_thmwlp,
    gen_wlpodd,
    generate,
    replay_manifest,
)
from lefschetz_lab.hessian import hessian_vanishes
from lefschetz_lab.lefschetz import wlp_check_element
from lefschetz_lab.polycore import VariableSet, parse_poly


def assert_replays(instance, **kwargs):
    results = replay_manifest(instance, **kwargs)
    failed = [(name, detail) for name, ok, detail in results if not ok]
    assert not failed, failed


SMALLEST = [
    lambda: gen_ikeda(),
    lambda: gen_exceptional(3, 5, 2),
    lambda: gen_gnp(2, 2, 1, 2, "lemma_m2"),
    lambda: gen_gnp(2, None, 1, 2, "maximal"),
    lambda: gen_gnp(2, 2, 1, 2, "minimal"),
    lambda: gen_perazzo(2, 2, 3),
    lambda: gen_permutti(2, 2, 3, 3),
    lambda: gen_gn(2, 2, 1, 3, 4),
    lambda: gen_wlpodd(4, 5),
    lambda: gen_thmwlp(5, 4),
    lambda: gen_prop44("i"),
]


@pytest.mark.parametrize("build", SMALLEST, ids=lambda b: b().spec.kind)
def test_smallest_instances_replay(build):
    assert_replays(build())


@pytest.mark.parametrize("build", SMALLEST, ids=lambda b: b().spec.kind)
def test_determinism(build):
    a, b = build(), build()
    assert a.f == b.f
    assert a.to_json_dict() == b.to_json_dict()


class TestIkeda:
    def test_polynomial(self):
        inst = gen_ikeda()
        assert inst.f.to_text() == "x0^3*x1^2 + x0*u1^3*u2 + x1*u1*u2^3"

    def test_manifest_values(self):
        man = gen_ikeda().manifest
        assert man.hilbert == (1, 4, 10, 10, 4, 1)
        assert dict(man.hess_pattern) == {1: False, 2: True}


class TestExceptional:
    def test_bad_parameters(self):
        with pytest.raises(InfeasibleParametersError):
            gen_exceptional(2, 5, 2)
        with pytest.raises(InfeasibleParametersError):
            gen_exceptional(3, 4, 2)
        with pytest.raises(InfeasibleParametersError):
            gen_exceptional(3, 5, 1)
        with pytest.raises(InfeasibleParametersError):
            gen_exceptional(3, 6, 3)  # k = d/2 excluded

    def test_intermediate_orders_vanish(self):
        inst = gen_exceptional(3, 7, 3)
        assert dict(inst.manifest.hess_pattern) == {1: False, 2: True, 3: True}

    def test_above_order_nonzero_when_in_range(self):
        inst = gen_exceptional(4, 8, 3)
        assert dict(inst.manifest.hess_pattern)[4] is False

    def test_tail_override_validated(self):
        vs = VariableSet(("x2", "x3", "u", "v"), n_x=2)
        with pytest.raises(InfeasibleParametersError):
            gen_exceptional(3, 5, 2, h=parse_poly("u^5", vs))


class TestGnp:
    def test_lemma_shape(self):
        assert gen_gnp(2, 2, 1, 2).f.to_text() == "x*u^2 + y*u*v + z*v^2"
        assert (
            gen_gnp(2, 2, 2, 3).f.to_text()
            == "x^2*u^3 + x*y*u^2*v + y^2*u*v^2 + z^2*v^3"
        )

    def test_lemma_dim_a1_is_five(self):
        for k, e in ((1, 2), (2, 3), (1, 4)):
            inst = gen_gnp(2, 2, k, e)
            assert catalecticant(inst.f, 1).rank() == 5

    def test_maximal_codimension_formula(self):
        from math import comb

        for m, e in ((2, 2), (2, 3), (3, 2)):
            inst = gen_gnp(m, None, 1, e, "maximal")
            assert catalecticant(inst.f, 1).rank() == m + comb(m - 1 + e, e)

    def test_e_must_exceed_k(self):
        with pytest.raises(InfeasibleParametersError):
            gen_gnp(2, 2, 2, 2)

    def test_minimal_needs_enough_u_forms(self):
        with pytest.raises(InfeasibleParametersError):
            gen_gnp(2, 5, 2, 3, "minimal")  # 21 x-monomials, only 4 u-forms

    def test_unknown_variant(self):
        with pytest.raises(InfeasibleParametersError):
            gen_gnp(2, 2, 1, 2, "fancy")


class TestPerazzo:
    def test_canonical_cubic(self):
        inst = gen_perazzo(2, 2, 3)
        assert inst.f.to_text() == "x0*u1^2 + x1*u1*u2 + x2*u2^2"

    def test_quartic_vanishes(self):
        inst = gen_perazzo(2, 3, 4)
        assert hessian_vanishes(inst.f, 1, "exact").vanishes

    def test_needs_more_x_than_u(self):
        with pytest.raises(InfeasibleParametersError):
            gen_perazzo(3, 2, 3)

    def test_needs_enough_monomials(self):
        with pytest.raises(InfeasibleParametersError):
            gen_perazzo(2, 4, 3)  # five monomials of degree 2 in two variables


class TestPermutti:
    def test_perazzo_special_case(self):
        vs = gen_perazzo(2, 2, 3).f.vars
        h = parse_poly("u1^3", vs)
        perazzo = gen_perazzo(2, 2, 3, h=h)
        permutti = gen_permutti(2, 2, 3, 3)
        assert permutti.f == perazzo.f

    def test_higher_power_vanishes(self):
        inst = gen_permutti(2, 2, 3, 6)
        assert hessian_vanishes(inst.f, 1).vanishes

    def test_degree_two_core_impossible(self):
        # linear base forms cannot be both linearly independent and
        # algebraically dependent, so e = 2 admits no instance
        with pytest.raises(InfeasibleParametersError):
            gen_permutti(2, 2, 2, 4)
        with pytest.raises(InfeasibleParametersError):
            gen_permutti(2, 3, 2, 5)

    def test_zero_overrides(self):
        inst = gen_permutti(2, 2, 3, 6)
        from lefschetz_lab.families import gen_permutti as gp

        trimmed = gp(2, 2, 3, 6, Ps={1: None})
        assert trimmed.f != inst.f
        assert hessian_vanishes(trimmed.f, 1).vanishes


class TestGn:
    def test_single_core_matches_permutti(self):
        assert gen_gn(2, 2, 1, 3, 4).f == gen_permutti(2, 2, 3, 4).f

    def test_two_cores(self):
        inst = gen_gn(2, 3, 1, 2, 4)
        assert hessian_vanishes(inst.f, 1, "exact").vanishes
        assert catalecticant(inst.f, 1).rank() == 6

    def test_degenerate_parameters_rejected(self):
        with pytest.raises(InfeasibleParametersError):
            gen_gn(2, 2, 1, 2, 3)  # three x-variables, two degree-1 forms
        with pytest.raises(InfeasibleParametersError):
            gen_gn(3, 3, 1, 3, 4)  # canonical base forms need m = r + 1


class TestWlpOdd:
    def test_hilbert_manifest(self):
        assert gen_wlpodd(4, 5).manifest.hilbert == (1, 5, 12, 12, 5, 1)
        assert gen_wlpodd(6, 5).manifest.hilbert == (1, 7, 23, 23, 7, 1)
        assert gen_wlpodd(5, 7).manifest.hilbert == (1, 6, 14, 25, 25, 14, 6, 1)

    def test_computed_hilbert_matches(self):
        for N, d in ((4, 5), (5, 7)):
            inst = gen_wlpodd(N, d)
            assert hilbert_vector(inst.f).dims == inst.manifest.hilbert

    def test_parameter_validation(self):
        with pytest.raises(InfeasibleParametersError):
            gen_wlpodd(3, 5)
        with pytest.raises(InfeasibleParametersError):
            gen_wlpodd(4, 4)
        with pytest.raises(InfeasibleParametersError):
            gen_wlpodd(4, 3)


class TestThmWlp:
    @pytest.mark.parametrize("N,d", [(3, 3), (3, 4), (4, 4), (3, 6)])
    def test_exclusions_carry_reasons(self, N, d):
        with pytest.raises(InfeasibleParametersError, match="satisfies the"):
            gen_thmwlp(N, d)

    def test_range_validation(self):
        with pytest.raises(InfeasibleParametersError):
            gen_thmwlp(5, 5)
        with pytest.raises(InfeasibleParametersError):
            gen_thmwlp(4, 4 - 2)

    def test_fixed_hilbert_vectors(self):
        assert gen_thmwlp(5, 4).manifest.hilbert == (1, 6, 6, 6, 1)
        assert gen_thmwlp(4, 6).manifest.hilbert == (1, 5, 8, 8, 8, 5, 1)

    def test_obstruction_sizes(self):
        assert gen_thmwlp(5, 4).manifest.obstruction_size == 4
        assert gen_thmwlp(4, 6).manifest.obstruction_size == 5
        assert gen_thmwlp(3, 8).manifest.obstruction_size == 6
        assert gen_thmwlp(3, 10).manifest.obstruction_size == 7

    def test_spare_variables(self):
        inst = gen_thmwlp(7, 4)
        assert "x6" in inst.f.vars.names and "x7" in inst.f.vars.names
        assert_replays(inst)


class TestProp44:
    def test_zero_tail_is_allowed(self):
        vs = VariableSet(("x0", "x1", "x2", "u", "v"), n_x=3)
        inst = gen_prop44("ii", h=parse_poly("0", vs))
        assert hessian_vanishes(inst.f, 1, "exact").vanishes

    def test_case_iii_with_pure_power(self):
        vs = VariableSet(("x0", "x1", "x2", "u", "v"), n_x=3)
        inst = gen_prop44("iii", h=parse_poly("u^4", vs))
        ok, _ = wlp_check_element(inst.f, inst.manifest.wlp_witness)
        assert ok

    def test_unknown_case(self):
        with pytest.raises(InfeasibleParametersError):
            gen_prop44("iv")

    def test_bad_tail_rejected(self):
        vs = VariableSet(("x0", "x1", "x2", "u", "v"), n_x=3)
        with pytest.raises(InfeasibleParametersError):
            gen_prop44("i", h=parse_poly("x0*u^3", vs))


class TestDispatch:
    def test_generate_by_spec(self):
        inst = generate(FamilySpec("gnp", {"m": 2, "n": 2, "k": 1, "e": 2}))
        assert inst.f.to_text() == "x*u^2 + y*u*v + z*v^2"

    def test_unknown_kind(self):
        with pytest.raises(InfeasibleParametersError):
            generate(FamilySpec("mystery", {}))

    def test_instance_poly_round_trips(self):
        inst = gen_thmwlp(5, 4)
        data = inst.to_json_dict()
        vs = VariableSet(tuple(data["vars"]), data["split"])
        assert parse_poly(data["poly"], vs) == inst.f


class TestOverrideSerialization:
    def test_recorded_in_spec(self):
        vs = gen_perazzo(2, 2, 3).f.vars
        inst = gen_perazzo(2, 2, 3, h=parse_poly("u1^3", vs))
        assert inst.spec.overrides == {"h": "u1^3"}
        assert inst.to_json_dict()["overrides"] == {"h": "u1^3"}

    def test_absent_by_default(self):
        assert "overrides" not in gen_perazzo(2, 2, 3).to_json_dict()
