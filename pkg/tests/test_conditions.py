"""Contractive-condition evaluators, gauges, factors, and certificates."""
from itertools import islice

import pytest

import gmetric as gm
from gmetric import catalog, sampling
from gmetric.conditions import FAILS, HOLDS_STRICT, VACUOUS
from gmetric.spaces import FAIL, PASS


@pytest.fixture
def absmax():
    return catalog.space_absmax()


@pytest.fixture
def halving(absmax):
    return catalog.get_map("scale-0.5", absmax)


@pytest.fixture
def moebius(absmax):
    return catalog.get_map("moebius", absmax)


class TestConditionSpec:
    def test_q_required_in_range(self):
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="C-Q")
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="C-Q", q=1.0)
        assert gm.ConditionSpec(id="C-Q", q=0.5).a.kind == "zero"

    def test_gauge_required(self):
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="C-GAUGE")

    def test_extension_ranges(self):
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="EXT-I", alpha=3.0)
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="EXT-II", beta=0.4)
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="EXT-III", delta=1.0)
        assert gm.ConditionSpec(id="EXT-III", delta=0.0).delta == 0.0

    def test_foreign_parameters_rejected(self):
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="C-UNIT", q=0.5)
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="EXT-I", alpha=2.0, delta=0.5)
        with pytest.raises(gm.ParameterError):
            gm.ConditionSpec(id="EXT-III", delta=0.5,
                             a=gm.AuxWeight.zero())


class TestEvalCondition:
    def test_halving_holds_strict(self, absmax, halving):
        spec = gm.ConditionSpec(id="C-Q", q=0.6)
        v = gm.eval_condition(absmax, halving, spec, 1, 2, 2)
        assert v.status == HOLDS_STRICT
        assert v.lhs == pytest.approx(0.5)
        assert v.rhs == pytest.approx(0.6)
        assert v.excluded_terms == ()

    def test_moebius_fails_near_zero(self, absmax, moebius):
        spec = gm.ConditionSpec(id="C-Q", q=0.9)
        v = gm.eval_condition(absmax, moebius, spec, 0.0, 0.05, 0.05)
        assert v.status == FAILS
        assert v.lhs == pytest.approx(0.05 / 1.05, abs=1e-12)
        assert v.rhs == pytest.approx(0.045, abs=1e-12)

    def test_vacuous_at_fixed_image(self, absmax):
        const = catalog.get_map("constant-2", absmax)
        spec = gm.ConditionSpec(id="C-Q", q=0.5)
        v = gm.eval_condition(absmax, const, spec, 1.0, 2.0, 2.0)
        assert v.status == VACUOUS
        assert v.lhs == 0.0

    def test_equal_arguments_rejected(self, absmax, halving):
        spec = gm.ConditionSpec(id="C-Q", q=0.5)
        with pytest.raises(gm.DomainError):
            gm.eval_condition(absmax, halving, spec, 2.0, 2.0, 1.0)

    def test_verdict_recomputable(self, absmax, moebius):
        spec = gm.ConditionSpec(id="C-GAUGE", h=catalog.get_gauge("ratio1"))
        v1 = gm.eval_condition(absmax, moebius, spec, 3.0, 7.0, 11.0)
        v2 = gm.eval_condition(absmax, moebius, spec, *v1.triple)
        assert (v1.status, v1.lhs, v1.rhs) == (v2.status, v2.lhs, v2.rhs)

    def test_third_term_includes_lhs_literally(self, absmax, halving):
        # triple (1, 2, 2): the reciprocal-product term evaluates to exactly 1
        spec = gm.ConditionSpec(id="C-Q", q=0.6)
        v = gm.eval_condition(absmax, halving, spec, 1, 2, 2)
        assert v.rhs == pytest.approx(0.6 * 1.0)

    def test_undefined_third_term_excluded(self):
        # a deliberately broken ternary function makes G(x,y,z) = 0 with x != y,
        # while the squared map keeps the left side positive
        sp = gm.GMetricSpace(carrier=gm.RealCarrier(1),
                             g=lambda x, y, z: abs(x - 2 * y + z),
                             symmetric_claimed=False)
        square = gm.SelfMap(domain=sp.carrier, apply=lambda x: x * x, name="square")
        spec = gm.ConditionSpec(id="C-Q", q=0.9)
        v = gm.eval_condition(sp, square, spec, 1.0, 1.5, 2.0)
        assert v.excluded_terms == ("M3",)
        assert v.lhs > 0
        assert v.status == FAILS  # majorant collapses to q * max(0, 0)

    def test_gauge_condition_argument_order(self, absmax, halving):
        # a gauge reading only its third slot sees the weighted product there
        probe = gm.GaugeFunction(evaluate=lambda t1, t2, t3: t3, name="third-slot")
        spec = gm.ConditionSpec(id="C-GAUGE", h=probe,
                                a=gm.AuxWeight.constant(1.0))
        v = gm.eval_condition(absmax, halving, spec, 1.0, 2.0, 3.0)
        # weighted product: G(Tx,y,z) * G(x,Ty,z) * G(x,y,Tz)
        expected = (gm.eval_g(absmax, 0.5, 2, 3) * gm.eval_g(absmax, 1, 1, 3)
                    * gm.eval_g(absmax, 1, 2, 1.5))
        assert v.rhs == pytest.approx(expected)


class TestEvalExtension:
    def test_halving_third_condition(self, absmax, halving):
        out = gm.eval_extension(absmax, halving, 1, 2, 3, delta=0.6)
        assert out.iii.lhs == pytest.approx(1.0)
        assert out.iii.rhs == pytest.approx(1.2)
        assert out.iii.status == HOLDS_STRICT
        assert out.any_holds

    def test_identity_first_condition_vacuous(self, absmax):
        ident = catalog.get_map("identity", absmax)
        out = gm.eval_extension(absmax, ident, 0.0, 5.0, 9.0, alpha=1.0)
        assert out.i.status == VACUOUS
        assert out.any_holds

    def test_constant_map_fixed_triple(self, absmax):
        const = catalog.get_map("constant-2", absmax)
        out = gm.eval_extension(absmax, const, 2.0, 2.0, 2.0, delta=0.0)
        assert out.iii.status == VACUOUS
        assert out.any_holds

    def test_requires_some_parameter(self, absmax, halving):
        with pytest.raises(gm.ParameterError):
            gm.eval_extension(absmax, halving, 1, 2, 3)

    def test_disabled_conditions_are_none(self, absmax, halving):
        out = gm.eval_extension(absmax, halving, 1, 2, 3, delta=0.5)
        assert out.i is None and out.ii is None


class TestContractionFactor:
    def test_paper_mode_min(self):
        fr = gm.contraction_factor(2, 0.6, 0.5, "paper")
        assert fr.lam == pytest.approx(0.25)
        assert fr.factors["i"] == pytest.approx(0.5)
        assert fr.admissible

    def test_all_zero(self):
        for mode in ("paper", "sound"):
            fr = gm.contraction_factor(1, 0.5, 0, mode)
            assert fr.lam == 0

    def test_sound_mode_flags_large_beta(self):
        fr = gm.contraction_factor(2, 0.8, 0.5, "sound")
        assert not fr.admissible
        assert fr.factors["ii"] == pytest.approx(1.5)
        assert fr.lam == pytest.approx(1.5)

    def test_paper_never_exceeds_sound(self):
        for args in [(1.5, 0.6, 0.3), (2.9, 0.55, 0.99), (1.0, 0.5, 0.0),
                     (2.0, 0.74, 0.7)]:
            p = gm.contraction_factor(*args, mode="paper")
            s = gm.contraction_factor(*args, mode="sound")
            assert p.lam <= s.lam

    def test_range_errors(self):
        with pytest.raises(gm.ParameterError):
            gm.contraction_factor(0.5, 0.6, 0.5)
        with pytest.raises(gm.ParameterError):
            gm.contraction_factor(2, 1.0, 0.5)
        with pytest.raises(gm.ParameterError):
            gm.contraction_factor(2, 0.6, -0.1)


GRID = [1e-3, 0.1, 1.0, 10.0, 1e3]


class TestGaugeAdmissibility:
    def test_reciprocal_gauge_passes_everything(self):
        r = gm.check_gauge_admissible(catalog.get_gauge("ratio1"), GRID,
                                      n_max=500, thresh=1e-8)
        assert r.monotone.status == PASS
        assert r.diagonal_strict.status == PASS
        assert r.iterates_vanish.status == PASS
        assert r.equivalence_consistent

    def test_reciprocal_iterates_closed_form(self):
        g = catalog.get_gauge("ratio1")
        t = 1.0
        v = t
        for n in range(1, 6):
            v = g.diagonal(v)
            assert v == pytest.approx(t / (1 + n * t), abs=1e-12)

    def test_identity_fails_both_consistently(self):
        r = gm.check_gauge_admissible(catalog.get_gauge("identity-diag"), GRID,
                                      n_max=500, thresh=1e-8)
        assert r.diagonal_strict.status == FAIL
        assert r.iterates_vanish.status == FAIL
        assert r.equivalence_consistent
        assert not r.admissible()

    def test_half_max_passes(self):
        r = gm.check_gauge_admissible(catalog.get_gauge("half"), GRID,
                                      n_max=500, thresh=1e-8)
        assert r.admissible()
        # closed form 2^-n * t reaches the threshold quickly
        hits = r.details["iterates"][1.0]
        assert hits["hit_iteration"] is not None

    def test_decreasing_gauge_fails_monotone(self):
        bad = gm.GaugeFunction(evaluate=lambda a, b, c: 1.0 / (1.0 + a), name="decreasing")
        r = gm.check_gauge_admissible(bad, [0.5, 1.0, 2.0], n_max=50, thresh=1e-8)
        assert r.monotone.status == FAIL

    def test_empty_grid_rejected(self):
        with pytest.raises(gm.ParameterError):
            gm.check_gauge_admissible(catalog.get_gauge("half"), [])


class TestUniqueness:
    def test_halving_first_separation_holds(self, absmax, halving):
        # at x=1: G(0, 0.5, 0.5) = 0.5 < G(1, 1, 0) + G(1, 0.5, 0.5) = 1.5
        rep = gm.check_uniqueness_conditions(absmax, halving, 0.0, [1.0, 2.0, 5.0])
        assert rep.v.status == PASS
        assert rep.checked == 3
        # the second separation telescopes to an equality for shrinking maps
        # on the half-line (x = x/2 + x/2), so strictness fails
        assert rep.vi.status == FAIL

    def test_doubling_second_separation_holds(self, absmax):
        doubling = gm.SelfMap(domain=absmax.carrier, apply=lambda x: 2.0 * x,
                              name="doubling")
        rep = gm.check_uniqueness_conditions(absmax, doubling, 0.0, [1.0, 3.0])
        assert rep.vi.status == PASS   # x < 2x + x strictly
        assert rep.v.status == FAIL    # 2x = x + x exactly

    def test_identity_fails_strictness(self, absmax):
        ident = catalog.get_map("identity", absmax)
        rep = gm.check_uniqueness_conditions(absmax, ident, 0.0, [1.0])
        assert rep.vi.status == FAIL
        assert rep.vi.values == (1.0, 1.0)

    def test_candidate_must_be_fixed(self, absmax, halving):
        with pytest.raises(gm.DomainError):
            gm.check_uniqueness_conditions(absmax, halving, 1.0, [2.0], tol=1e-9)

    def test_candidate_excluded_from_sample(self, absmax, halving):
        rep = gm.check_uniqueness_conditions(absmax, halving, 0.0, [0.0, 1.0])
        assert rep.checked == 1


class TestCertify:
    def test_moebius_gauge_certificate_clean(self, absmax, moebius):
        spec = gm.ConditionSpec(id="C-GAUGE", h=catalog.get_gauge("ratio1"))
        stream = sampling.triple_stream(absmax, seed=0, lo=0.0, hi=100.0)
        cert = gm.certify_on_samples(absmax, moebius, spec, stream, 2000)
        assert cert.checked == 2000
        assert cert.fails == 0
        assert cert.holds == 2000

    def test_identity_fails_q_condition(self, absmax):
        ident = catalog.get_map("identity", absmax)
        spec = gm.ConditionSpec(id="C-Q", q=0.9)
        stream = sampling.triple_stream(absmax, seed=1, lo=0.0, hi=10.0)
        cert = gm.certify_on_samples(absmax, ident, spec, stream, 500)
        assert cert.fails > 0
        assert cert.worst
        worst = cert.worst[0]
        assert worst.lhs - worst.rhs >= cert.worst[-1].lhs - cert.worst[-1].rhs

    def test_constant_map_all_vacuous(self, absmax):
        const = catalog.get_map("constant-1", absmax)
        spec = gm.ConditionSpec(id="C-Q", q=0.5)
        stream = sampling.triple_stream(absmax, seed=2, lo=0.0, hi=10.0)
        cert = gm.certify_on_samples(absmax, const, spec, stream, 200)
        assert cert.vacuous == 200
        assert cert.fails == 0

    def test_extension_condition_routed(self, absmax, halving):
        spec = gm.ConditionSpec(id="EXT-III", delta=0.9)
        stream = sampling.triple_stream(absmax, seed=3, lo=0.0, hi=10.0)
        cert = gm.certify_on_samples(absmax, halving, spec, stream, 300)
        assert cert.checked == 300
        assert cert.fails == 0

    def test_sampler_must_respect_distinctness(self, absmax):
        ident = catalog.get_map("identity", absmax)
        spec = gm.ConditionSpec(id="C-Q", q=0.5)
        with pytest.raises(gm.DomainError):
            gm.certify_on_samples(absmax, ident, spec,
                                  iter([(1.0, 1.0, 2.0)]), 1)

    def test_worst_list_order_independent(self, absmax):
        ident = catalog.get_map("identity", absmax)
        spec = gm.ConditionSpec(id="C-Q", q=0.9)
        triples = list(islice(
            sampling.triple_stream(absmax, seed=4, lo=0.0, hi=10.0), 400))
        a = gm.certify_on_samples(absmax, ident, spec, iter(triples), 400)
        b = gm.certify_on_samples(absmax, ident, spec, iter(reversed(triples)), 400)
        assert [w.triple for w in a.worst] == [w.triple for w in b.worst]
        assert (a.fails, a.holds, a.vacuous) == (b.fails, b.holds, b.vacuous)


class TestScaleCoherence:
    def test_linear_contraction_never_fails_above_ratio(self, absmax):
        c = 0.45
        cmap = catalog.get_map(f"scale-{c}", absmax)
        stream = sampling.triple_stream(absmax, seed=5, lo=0.0, hi=50.0)
        for q in (0.5, 0.7, 0.99):
            spec = gm.ConditionSpec(id="C-Q", q=q)
            for (x, y, _z) in islice(stream, 150):
                v = gm.eval_condition(absmax, cmap, spec, x, y, y)
                assert v.status != FAILS


class TestGapGaugeChain:
    def test_moebius_gaps_follow_diagonal(self, absmax, moebius):
        # successive gaps contract through the diagonal of the certified gauge
        g = catalog.get_gauge("ratio1")
        tr = gm.orbit(absmax, moebius, 1.0, 60)
        for a, b in zip(tr.gaps, tr.gaps[1:]):
            assert b <= g.diagonal(a) + 1e-12 * (1 + a)


class TestAuxWeights:
    def test_reciprocal_cap_respects_bound(self, absmax, halving):
        a = gm.AuxWeight.reciprocal_cap(2.0)
        stream = sampling.triple_stream(absmax, seed=6, lo=0.0, hi=10.0)
        triples = list(islice(stream, 100))
        assert gm.check_aux_bound(absmax, halving, a, triples).status == PASS

    def test_large_constant_violates_bound(self, absmax, halving):
        a = gm.AuxWeight.constant(1e9)
        stream = sampling.triple_stream(absmax, seed=7, lo=1.0, hi=10.0)
        triples = list(islice(stream, 100))
        assert gm.check_aux_bound(absmax, halving, a, triples).status == FAIL

    def test_negative_constant_rejected(self):
        with pytest.raises(gm.ParameterError):
            gm.AuxWeight.constant(-1.0)
