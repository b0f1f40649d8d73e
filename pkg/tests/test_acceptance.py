"""Acceptance gate: every criterion runs at its stated tolerance (exact
arithmetic throughout) and within its stated wall-clock budget, printing one
pass/fail line per criterion."""

import time

import pytest

from morita_lab.fields import F2, F3
from morita_lab import algebras as alg
from morita_lab import morita as mor
from morita_lab import homology as hml
from morita_lab import classes as cls
from morita_lab import lab


def _finish(name, ok, t0, budget):
    elapsed = time.perf_counter() - t0
    print(f"acceptance {name}: {'PASS' if ok else 'FAIL'} "
          f"({elapsed:.2f}s, budget {budget}s)")
    assert ok
    assert elapsed < budget, f"{name} exceeded its {budget}s budget: {elapsed:.2f}s"


def _claims(report):
    return {c.id: c for c in report.claims}


def test_criterion_1_example_ie_suite():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F3)
    rep = lab.run_suite("example-ie", inst, lab.SampleConfig(count=20))
    claims = _claims(rep)
    expected = [
        "ie.dim-lambda", "ie.tensor-M-Ae1", "ie.hom-M-Ae1", "ie.NN-vanishes",
        "ie.L-memberships", "ie.ext-L-L-nonzero", "ie.displayed-extension-split",
        "ie.projdim-L", "ie.Ae1-zero-module", "ie.TA-S2-projective",
        "ie.witness-first-vs-second", "ie.witness-first-vs-third",
        "ie.witness-second-vs-third", "ie.witness-third-vs-fourth",
    ]
    ok = rep.passed and all(claims[e].verdict == "pass" for e in expected)
    _finish("1 (two-vertex worked example, F_3)", ok, t0, 1.0)


def test_criterion_2_characteristic_sensitivity():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F2)
    rep = lab.run_suite("char2", inst, lab.SampleConfig(count=10))
    claims = _claims(rep)
    ok = rep.passed and claims["char2.displayed-extension-splits"].verdict == "pass"
    _finish("2 (the displayed extension splits over F_2)", ok, t0, 1.0)


def test_criterion_3_gorenstein_suite():
    t0 = time.perf_counter()
    inst = lab.catalog("examctp4", F3, n=3, h=2, i=1, j=3)
    rep = lab.run_suite("ctp4", inst, lab.SampleConfig(count=200))
    claims = _claims(rep)
    ok = rep.passed
    ok = ok and inst.properties["A_self_injective"]
    ok = ok and claims["ctp4.gp-eq-mon"].witness["count"] >= 200
    ok = ok and not claims["ctp4.gp-eq-mon"].witness["mismatches"]
    ok = ok and claims["ctp4.gi-eq-epi"].witness["count"] >= 200
    ok = ok and not claims["ctp4.gi-eq-epi"].witness["mismatches"]
    ok = ok and claims["resolutions.pq"].witness["count"] >= 50
    ok = ok and claims["resolutions.ij"].witness["count"] >= 50
    _finish("3 (self-injective instance: Gorenstein classes)", ok, t0, 60.0)


def test_criterion_4_adjunction_identities():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F3)
    rep = lab.run_suite("adjunction", inst, lab.SampleConfig(count=100))
    claims = _claims(rep)
    ok = rep.passed
    for i in (1, 2):
        for j in (1, 2, 3, 4):
            c = claims[f"adjunction.extadj{i}.{j}"]
            ok = ok and c.witness["checked"] >= 100 and not c.witness["mismatches"]
    _finish("4 (eight Ext-adjunction identities)", ok, t0, 60.0)


def test_criterion_5_orthogonality_descriptions():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F3)
    rep = lab.run_suite("orthogonality", inst, lab.SampleConfig(count=100))
    claims = _claims(rep)
    ok = rep.passed
    for cid in ("orthogonality.destheta.1", "orthogonality.destheta.2",
                "orthogonality.desdelta.1", "orthogonality.desdelta.2"):
        ok = ok and claims[cid].witness["checked"] >= 100
    rep2 = lab.run_suite("compare", inst, lab.SampleConfig(count=100))
    ok = ok and rep2.passed
    for c in rep2.claims:
        ok = ok and c.witness["checked"] >= 100 and not c.witness["failures"]
    _finish("5 (orthogonal-description biconditionals)", ok, t0, 60.0)


def test_criterion_6_completeness_constructions():
    t0 = time.perf_counter()
    inst = lab.catalog("examctp4", F3, n=3, h=2, i=1, j=3)
    rep = lab.run_suite("completeness", inst, lab.SampleConfig(count=100))
    claims = _claims(rep)
    ok = rep.passed
    for cid in ("completeness.c1", "completeness.c2", "completeness.c3",
                "completeness.c4"):
        ok = ok and claims[cid].witness["count"] >= 100
        ok = ok and not claims[cid].witness["failures"]
    for cid in ("completeness.ctp2-1", "completeness.ctp2-2",
                "completeness.ctp3-1", "completeness.ctp3-2"):
        ok = ok and claims[cid].verdict == "pass"
    ok = ok and claims["completeness.triangular"].verdict == "pass"
    _finish("6 (approximation constructions)", ok, t0, 60.0)


def test_criterion_7_green_correspondence():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F3)
    rep = lab.run_suite("green", inst, lab.SampleConfig(count=100))
    claims = _claims(rep)
    ok = rep.passed
    ok = ok and claims["green.roundtrip"].witness["count"] >= 100
    ok = ok and claims["green.hom-dimension"].witness["count"] >= 100
    ok = ok and claims["green.exactness-correspondence"].witness["count"] >= 50
    for name, params in (("ie", {}), ("a2", {}), ("triangular", {}),
                         ("product", {}), ("irem1", {}),
                         ("examctp4", dict(n=3, h=2, i=1, j=3))):
        other = lab.catalog(name, F3, **params)
        simples = mor.lambda_simples(other.data)
        want = (len(other.data.A.quiver.vertices)
                + len(other.data.B.quiver.vertices))
        ok = ok and len(simples) == want
    _finish("7 (category correspondence round trips)", ok, t0, 30.0)


def test_criterion_8_oracle_crosscheck():
    t0 = time.perf_counter()
    inst = lab.catalog("ie", F2)
    rep = lab.run_suite("oracle", inst, lab.SampleConfig(count=20))
    claims = _claims(rep)
    ok = rep.passed
    for tag in ("product", "ie"):
        ok = ok and claims[f"oracle.projectivity-two-routes-{tag}"].verdict == "pass"
        ok = ok and claims[f"oracle.green-exhaustive-{tag}"].verdict == "pass"
        ok = ok and claims[f"oracle.adjunction-exhaustive-{tag}"].verdict == "pass"
    # the sampled suites reach the same verdicts as the exhaustive ones
    sampled_green = lab.run_suite("green", inst, lab.SampleConfig(count=30))
    sampled_adj = lab.run_suite("adjunction", inst, lab.SampleConfig(count=30))
    ok = ok and (sampled_green.passed
                 == (claims["oracle.green-exhaustive-ie"].verdict == "pass"))
    ok = ok and (sampled_adj.passed
                 == (claims["oracle.adjunction-exhaustive-ie"].verdict == "pass"))
    _finish("8 (exhaustive oracle agreement)", ok, t0, 120.0)
