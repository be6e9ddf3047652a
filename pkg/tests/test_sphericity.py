from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homcr import expr
from homcr.catalog import family
from homcr.fields import GRAPH_UNIT
from homcr.series import CR_CHART, GRAPH_CHART, GaussianRational, TruncatedSeries
from homcr.sphericity import (
    JetMapping,
    PreparedJets,
    SphericityError,
    build_step_system,
    certificate_text,
    is_spherical,
    jet_transport,
    linear_effect,
    normalize_step0,
    parse_certificate,
    prepared_jets,
    replay_certificate,
    to_zzbar,
    tube_cross_check,
)


def poly(text, vars):
    env = {n: TruncatedSeries.variable(vars, n) for n in vars.names}
    return expr.evaluate(expr.parse(text), env)


def zero_jets():
    z = TruncatedSeries.zero(GRAPH_CHART)
    return PreparedJets({3: z, 4: z, 5: z}, {4: z, 5: z, 6: z})


# ---------------------------------------------------------------- step 0
def test_cubic_prepares_to_model():
    assert prepared_jets(family("2.1").instance()).jets.is_zero()


def test_via_2_4_has_corrections():
    P = prepared_jets(family("3.10").instance({"alpha": 2, "beta": 4})).jets
    assert not P.is_zero()


def test_model_form_needs_no_change():
    F = poly("x^2 + y^2", GRAPH_UNIT).truncate(7)
    G = poly("2*x^3 + 2*x*y^2", GRAPH_UNIT).truncate(7)
    res = normalize_step0(F, G)
    assert res.maps == []
    assert res.jets.is_zero()


def test_degenerate_leading_terms_are_rejected():
    F = poly("y^2", GRAPH_UNIT).truncate(7)
    G = poly("y^2", GRAPH_UNIT).truncate(7)
    with pytest.raises(SphericityError):
        normalize_step0(F, G)


# ---------------------------------------------------------------- transport
def test_identity_transport():
    P = prepared_jets(family("3.10").instance({"alpha": 2, "beta": 4})).jets
    assert jet_transport(JetMapping(), P) == P


def test_f2_equals_z_squared_on_model():
    m = JetMapping(f={2: poly("z^2", CR_CHART)})
    P = jet_transport(m, zero_jets())
    # hand expansion: F3 = -2 Re(conj(z) z^2), G4 = -2 Re((2|z|^2 + conj(z)^2) z^2)
    assert to_zzbar(P.F[3]) == poly("-z^2*zb - z*zb^2", to_zzbar(P.F[3]).vars)
    zzb = to_zzbar(P.G[4]).vars
    assert to_zzbar(P.G[4]) == poly("-2*z^3*zb - 2*z*zb^3 - 2*z^2*zb^2", zzb)


def test_linear_effect_matches_transport():
    s = poly("z*w2 + i*z^3", CR_CHART)
    for part in ("g",):
        dF, dG = linear_effect(part, s)
        P = jet_transport(JetMapping(g={3: s}), zero_jets())
        assert P.F[3] == dF.homogeneous_part(3)


coef = st.builds(GaussianRational, st.integers(-2, 2), st.integers(-2, 2))


@settings(max_examples=25, deadline=None)
@given(coef, coef, coef, coef, coef)
def test_step1_linearization_is_exact(a, b, c, d, e):
    f2 = poly("z^2", CR_CHART).scale(a) + poly("w2", CR_CHART).scale(b)
    g3 = poly("z^3", CR_CHART).scale(c) + poly("z*w2", CR_CHART).scale(d)
    h4 = poly("z*w3", CR_CHART).scale(e)
    P = jet_transport(JetMapping(f={2: f2}, g={3: g3}, h={4: h4}), zero_jets())
    effF = linear_effect("f", f2)[0] + linear_effect("g", g3)[0]
    effG = linear_effect("f", f2)[1] + linear_effect("h", h4)[1]
    assert P.F[3] == effF.homogeneous_part(3)
    assert P.G[4] == effG.homogeneous_part(4)


# ---------------------------------------------------------------- systems
def test_step_unknown_counts_and_rank():
    P = prepared_jets(family("2.1").instance()).jets
    s1 = build_step_system(1, P)
    assert s1.shape[1] == 18
    assert s1.rank() == 18  # no weight-one infinitesimal automorphisms of the cubic
    s2 = build_step_system(2, P)
    s3 = build_step_system(3, P)
    assert s2.shape[1] == 24 and s3.shape[1] == 32
    assert s2.rank() == 24 and s3.rank() == 32
    assert s3.shape[0] == 39


def test_steps_in_order():
    P = prepared_jets(family("3.10").instance({"alpha": 2, "beta": 4})).jets
    with pytest.raises(SphericityError):
        build_step_system(2, P)


# ---------------------------------------------------------------- verdicts
def test_cubic_is_spherical():
    res = is_spherical(family("2.1").instance())
    assert res.spherical
    assert all(m.is_identity() for m in res.steps)


def test_via_2_3_is_spherical():
    res = is_spherical(family("3.10").instance({"alpha": 2, "beta": 3}))
    assert res.spherical and res.prepared.is_zero()


def test_vii_is_not_spherical():
    res = is_spherical(family("3.19").instance())
    assert res.verdict == "non_spherical" and res.stage in (2, 3)
    assert res.witness


def test_degenerate_input():
    with pytest.raises(SphericityError):
        is_spherical(family("1.2").instance())


def test_certificate_round_trip_and_replay():
    spec = family("3.3").instance({"alpha": 2, "gamma": Fraction(1, 2)})
    res = is_spherical(spec)
    assert res.spherical
    text = certificate_text(spec, res)
    step0, steps = parse_certificate(text)
    assert [tuple(h) for h in step0] == [tuple(h) for h in res.step0_maps]
    assert replay_certificate(spec, step0, steps).is_zero()


# ---------------------------------------------------------------- tube cross-check
def test_tube_cross_check():
    assert tube_cross_check(family("2.1").instance()) is True
    assert tube_cross_check(family("3.10").instance({"alpha": 2, "beta": 3})) is True
    assert tube_cross_check(family("3.10").instance({"alpha": 2, "beta": 4})) is False
    assert tube_cross_check(family("3.1").instance({"gamma": 0})) is None
