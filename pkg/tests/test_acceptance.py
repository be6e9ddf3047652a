"""The eight acceptance criteria, one test each.  Each test prints a single
PASS/FAIL line (collected again in the terminal summary) and then asserts,
so a failing criterion shows up both in the summary and as a red test."""

import random
import time
from fractions import Fraction
from functools import lru_cache

from homcr.catalog import all_samples, families, family
from homcr.fields import CR_UNIT, HoloVectorField, lie_bracket
from homcr.lie import TypeTag, classify_type, fingerprint
from homcr.realize import realize_algebra, self_check
from homcr.series import CR_CHART, GaussianRational, TruncatedSeries, VariableTable, implicit_solve
from homcr.sphericity import STATED_DIMENSIONS, is_spherical, replay_certificate
from homcr.surfaces import (
    basis_algebra,
    total_nondegeneracy,
    verify_automorphism,
    verify_homogeneity,
)

CLASSIFIED = [f for f in families() if f.id == "2.1" or f.id.startswith("3.")]


def classified_samples():
    return [s for f in CLASSIFIED for s in f.sample_instances()]


@lru_cache(maxsize=None)
def sphericity(fid, params):
    return is_spherical(family(fid).instance(dict(params)))


def key(spec):
    return spec.id, tuple(sorted(spec.params.items()))


# ---------------------------------------------------------------- 1
def test_criterion_1_homogeneity(criterion):
    t0 = time.perf_counter()
    bad, count = [], 0
    for f in CLASSIFIED:
        samples = f.sample_instances()
        if f.parametric and len(samples) < 3:
            bad.append(f"{f.id}: only {len(samples)} samples")
        for spec in samples:
            count += 1
            rep = verify_homogeneity(spec, 8)
            if not rep.passed:
                bad.append(spec.label())
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 120
    criterion(1, "homogeneity suite", ok, f"{count} surfaces, {elapsed:.1f}s" + (f", failures {bad}" if bad else ""))
    assert ok


# ---------------------------------------------------------------- 2
def test_criterion_2_nondegeneracy(criterion):
    bad = []
    for fid in ("1.1", "1.2"):
        if total_nondegeneracy(family(fid).instance()) != "degenerate":
            bad.append(fid)
    for spec in classified_samples():
        if total_nondegeneracy(spec) != "totally_nondegenerate":
            bad.append(spec.label())
    criterion(2, "non-degeneracy suite", not bad, f"failures {bad}" if bad else "1.1, 1.2 degenerate; all others totally non-degenerate")
    assert not bad


# ---------------------------------------------------------------- 3
SPHERICAL = [("2.1", {}), ("3.3", {"alpha": 2, "gamma": 0}), ("3.3", {"alpha": 2, "gamma": Fraction(1, 2)}),
             ("3.10", {"alpha": 2, "beta": 3})]
REGRESSION = [
    ("3.1", {"gamma": 0}), ("3.1", {"gamma": 1}), ("3.2", {"gamma": 0}), ("3.4", {"gamma": 0}),
    ("3.5", {"gamma": 0}), ("3.7", {"delta": 0}), ("3.8", {"alpha": 0, "beta": 2}),
    ("3.10", {"alpha": 2, "beta": 4}), ("3.11", {"a": Fraction(1, 2)}), ("3.19", {}),
]


def _params(d):
    return tuple(sorted((k, Fraction(v)) for k, v in d.items()))


def test_criterion_3_sphericity_verdicts(criterion):
    bad = []
    for fid, p in SPHERICAL:
        if sphericity(fid, _params(p)).verdict != "spherical":
            bad.append(f"{fid} {p} should be spherical")
    for fid, p in REGRESSION:
        if sphericity(fid, _params(p)).verdict != "non_spherical":
            bad.append(f"{fid} {p} should be non-spherical")
    # every other sampled entry must be non-spherical as well
    for spec in classified_samples():
        want = "spherical" if spec.id == "2.1" else "non_spherical"
        if sphericity(*key(spec)).verdict != want:
            bad.append(f"{spec.label()} should be {want}")
    criterion(3, "sphericity verdicts", not bad,
              "; ".join(bad) if bad else f"{len(SPHERICAL)} spherical, {len(REGRESSION)} regression entries plus all samples")
    assert not bad


# ---------------------------------------------------------------- 4
def test_criterion_4_system_dimensions(criterion):
    seen = {}
    for spec in classified_samples() + [family(f).instance(p) for f, p in SPHERICAL]:
        res = sphericity(*key(spec))
        for k, dims in res.systems.items():
            seen.setdefault(k, set()).add(dims)
    mismatches = []
    for k, want in STATED_DIMENSIONS.items():
        got = seen.get(k, set())
        if got != {want}:
            mismatches.append(f"step {k}: stated {want}, built {sorted(got)}")
    ok = not mismatches
    criterion(4, "system dimensions (17,18), (26,24), (39,32)", ok,
              "; ".join(mismatches) if mismatches else "all steps match")
    assert ok, mismatches


# ---------------------------------------------------------------- 5
def test_criterion_5_certificates(criterion):
    bad, n = [], 0
    for fid, p in SPHERICAL:
        spec = family(fid).instance(p)
        res = sphericity(*key(spec))
        if not res.spherical:
            bad.append(f"{spec.label()} not spherical")
            continue
        n += 1
        P = replay_certificate(spec, res.step0_maps, res.steps)
        if not P.is_zero(3):
            bad.append(spec.label())
    criterion(5, "certificate soundness", not bad, f"{n} certificates replayed to zero jets" if not bad else f"failures {bad}")
    assert not bad


# ---------------------------------------------------------------- 6
def _tag_samples():
    rng = random.Random(2024)
    out = [TypeTag("I", Fraction(1)), TypeTag("II"), TypeTag("IV"), TypeTag("V"), TypeTag("VII"), TypeTag("VIII")]
    qs = set()
    while len(qs) < 10:
        qs.add(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    for q in sorted(qs):
        out.append(TypeTag("I", max(min(q, Fraction(1)), Fraction(-1))))
        out.append(TypeTag("III", abs(q)))
    return out


def test_criterion_6_classifier_round_trip(criterion):
    bad, n = [], 0
    for tag in _tag_samples():
        r = realize_algebra(tag)
        ok, alg, rank = self_check(r)
        n += 1
        if not ok or classify_type(alg).tag != tag:
            bad.append(str(tag))
    rng = random.Random(6)
    for _ in range(10):
        C = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3)] for _ in range(3)]
        r = realize_algebra("VI", C)
        ok, alg, rank = self_check(r, C)
        n += 1
        if not ok or classify_type(alg).tag != TypeTag("VI"):
            bad.append(f"VI {C}")
    criterion(6, "classifier round trip", not bad, f"{n} realizations" if not bad else f"failures {bad}")
    assert not bad


def test_declared_types_are_separated_by_fingerprints():
    by_print = {}
    for spec in classified_samples():
        tag = spec.declared_type()
        fp = repr(fingerprint(basis_algebra(spec)))
        if tag.name != "VI":
            by_print.setdefault(fp, set()).add(str(tag))
    assert all(len(v) == 1 for v in by_print.values()), by_print


# ---------------------------------------------------------------- 7
def test_criterion_7_automorphisms(criterion):
    bad, n, law = [], 0, False
    cases = [("3.2", "sigma"), ("3.5", "epsilon"), ("3.12", "involution"), ("3.19", "involution"), ("2.1", "scaling")]
    for fid, name in cases:
        fam = family(fid)
        autos = [a for a in fam.automorphisms if a.name.startswith(name)]
        if not autos:
            bad.append(f"{fid}: no {name}")
        for spec in fam.sample_instances():
            for auto in autos:
                rep = verify_automorphism(auto, spec, 8)
                n += 1
                if not rep.passed:
                    bad.append(f"{spec.label()} {auto.name}")
                if name == "sigma" and any(c.name == "basis law" and c.passed for c in rep.checks):
                    law = True
    lams = sorted(a.params[0][1] for a in family("2.1").automorphisms)
    if lams != sorted([Fraction(-1), Fraction(2), Fraction(1, 3)]):
        bad.append(f"scaling family {lams}")
    ok = not bad and law
    criterion(7, "automorphism suite", ok, f"{n} map checks, basis law for sigma {'verified' if law else 'missing'}"
              + (f", failures {bad}" if bad else ""))
    assert ok


# ---------------------------------------------------------------- 8
def _rand_gauss(rng):
    return GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)), rng.randint(-2, 2))


def _rand_series(rng, vars, cutoff, terms=5):
    exps = [(a, b, c) for a in range(cutoff + 1) for b in range(3) for c in range(2)
            if vars.weight_of((a, b, c)) <= cutoff]
    return TruncatedSeries(vars, {rng.choice(exps): _rand_gauss(rng) for _ in range(terms)}, cutoff)


def test_criterion_8_kernel_properties(criterion):
    rng = random.Random(8)
    failures = {}
    N = 100
    for _ in range(N):
        a, b, c = (_rand_series(rng, CR_CHART, 5) for _ in range(3))
        if not (a + b == b + a and a * b == b * a and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c):
            failures["ring"] = failures.get("ring", 0) + 1
    for _ in range(N):
        a = _rand_series(rng, CR_CHART, 4)
        z = TruncatedSeries.variable(CR_CHART, "z", 4)
        p = z + _rand_series(rng, CR_CHART, 4).truncate(4) * z
        q = z + _rand_series(rng, CR_CHART, 4).truncate(4) * z
        left = a.substitute({"z": p}).substitute({"z": q})
        right = a.substitute({"z": p.substitute({"z": q})})
        cut = min(left.cutoff, right.cutoff)
        if left.truncate(cut) != right.truncate(cut):
            failures["composition"] = failures.get("composition", 0) + 1
    for _ in range(N):
        def fld():
            return HoloVectorField(*(_rand_series(rng, CR_UNIT, 2, 3).with_cutoff_none() for _ in range(3)))
        X, Y, Z = fld(), fld(), fld()
        jac = lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X)) + lie_bracket(Z, lie_bracket(X, Y))
        if lie_bracket(X, Y) != lie_bracket(Y, X).scale(-1) or not all(cf.is_zero() for cf in jac.coeffs):
            failures["bracket"] = failures.get("bracket", 0) + 1
    ys = VariableTable(("y", "s"))
    for _ in range(N):
        terms = {(0, 1): Fraction(rng.randint(1, 4), rng.randint(1, 3))}
        for e in [(1, 0), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2)]:
            terms[e] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        eq = TruncatedSeries(ys, terms, 6)
        sol = implicit_solve(eq, "s")
        back = eq.substitute({"y": TruncatedSeries.variable(sol.vars, "y", 6), "s": sol}, sol.vars)
        if not back.is_zero():
            failures["implicit"] = failures.get("implicit", 0) + 1
    ok = not failures
    criterion(8, "kernel property suite", ok,
              f"{N} instances each of ring laws, composition, bracket, implicit solve" + (f", failures {failures}" if failures else ""))
    assert ok
