from fractions import Fraction

import pytest

from homcr import expr
from homcr.catalog import (
    CatalogError,
    all_samples,
    default_catalog,
    dumps,
    families,
    family,
    format_record,
    loads,
    parse_record,
)
from homcr.fields import GRAPH_UNIT
from homcr.series import TruncatedSeries, elementary_expand
from homcr.surfaces import (
    automorphism_reports,
    basis_algebra,
    compile,
    total_nondegeneracy,
    verify_automorphism,
    verify_homogeneity,
)
from homcr.catalog import Automorphism


def graph(text, cutoff):
    env = {n: TruncatedSeries.variable(GRAPH_UNIT, n) for n in GRAPH_UNIT.names}
    return expr.evaluate(expr.parse(text), env).truncate(cutoff)


def test_catalog_lists_every_entry():
    ids = [f.id for f in families()]
    assert ids[:4] == ["1.1", "1.2", "1.3", "2.1"]
    assert ids[4:] == [f"3.{k}" for k in range(1, 20)]
    assert len([f for f in families() if "degenerate" in f.tags]) == 3


def test_filters():
    assert [f.id for f in families(tag="symmetric")] == ["2.1", "3.2", "3.5", "3.12", "3.19"]
    assert [f.id for f in families(type_name="VI")] == [f"3.{k}" for k in range(10, 20)]


def test_base_points_lie_on_surfaces():
    for spec in all_samples():
        compile(spec, 5)  # raises if the base point is off the surface


def test_cubic_jets():
    comp = compile(family("2.1").instance(), 8)
    assert comp.F == graph("y^2", 8)
    assert comp.G == graph("y^3", 8)


def test_type_iv_jets_are_exponentials():
    comp = compile(family("3.7").instance({"delta": 0}), 6)
    ey = elementary_expand("exp", 0, 6).retable(GRAPH_UNIT, {"t": "y"})
    ex = elementary_expand("exp", 0, 6).retable(GRAPH_UNIT, {"t": "x"})
    assert comp.F == ey - 1
    assert comp.G == ex - 1


def test_iiia_jets():
    comp = compile(family("3.5").instance({"gamma": 0}), 6)
    # v2 = x sqrt(1 - y^2) + gamma*arcsin(y) at gamma = 0
    assert comp.F == graph("x - 1/2*x*y^2 - 1/8*x*y^4", 6)


def test_implicit_iiib_compiles():
    spec = family("3.6").instance({"q": 1, "gamma": 0})
    comp = compile(spec, 6)
    assert comp.G.constant_term() == 0


# ---------------------------------------------------------------- record format
def test_records_round_trip():
    specs = default_catalog() + all_samples()
    text = dumps(specs)
    again = loads(text)
    assert dumps(again) == text
    for a, b in zip(specs, again):
        assert format_record(a) == format_record(b)


def test_record_rejects_non_canonical_expression():
    rec = format_record(family("2.1").instance()).replace("eq.v2: y^2", "eq.v2: y ^ 2")
    with pytest.raises(CatalogError):
        parse_record(rec)


def test_out_of_range_parameters_are_flagged():
    spec = family("3.3").instance({"alpha": 2, "gamma": 0})
    assert not spec.in_range and "cubic" in spec.range_note
    assert "spherical" in spec.tags
    with pytest.raises(CatalogError):
        family("3.3").instance({"alpha": 2, "gamma": 0}, allow_out_of_range=False)


# ---------------------------------------------------------------- verifiers
def test_type_ia_passes():
    rep = verify_homogeneity(family("3.1").instance({"gamma": 0}))
    assert rep.passed, rep.to_dict()


def test_vid_passes_with_abelian_ideal():
    spec = family("3.14").instance()
    rep = verify_homogeneity(spec)
    assert rep.passed
    alg = basis_algebra(spec)
    assert all(not any(alg.c[a][b]) for a in range(3) for b in range(3))


def test_cubic_with_bad_field_fails():
    spec = family("2.1").instance()
    bad = spec.fields[:3] + (("z^2", "0", "0"),)
    from dataclasses import replace
    rep = verify_homogeneity(replace(spec, fields=bad))
    assert not rep.passed
    assert any(c.name == "tangent X4" and not c.passed for c in rep.checks)


def test_nondegeneracy_labels():
    assert total_nondegeneracy(family("2.1").instance()) == "totally_nondegenerate"
    assert total_nondegeneracy(family("1.1").instance()) == "degenerate"
    assert total_nondegeneracy(family("1.2").instance()) == "degenerate"


def test_sigma_and_epsilon():
    sigma = family("3.2").automorphisms[0]
    rep = verify_automorphism(sigma, family("3.2").instance({"gamma": 1}))
    assert rep.passed and any(c.name == "basis law" for c in rep.checks)
    eps = family("3.5").automorphisms[0]
    assert verify_automorphism(eps, family("3.5").instance({"gamma": 0})).passed


def test_identity_map_passes():
    ident = Automorphism("identity", ("z", "w2", "w3"), ("0", "i", "0"), None)
    assert verify_automorphism(ident, family("3.12").instance()).passed


def test_wrong_map_is_caught():
    bad = Automorphism("conjugate-ish", ("-z", "w2", "w3"), ("0", "i", "0"), None)
    rep = verify_automorphism(bad, family("3.12").instance())
    assert not rep.passed


def test_all_listed_automorphisms():
    reps = automorphism_reports()
    assert len(reps) >= 7
    assert all(r.passed for r in reps), [r.surface for r in reps if not r.passed]
