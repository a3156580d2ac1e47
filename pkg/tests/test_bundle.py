from fractions import Fraction

import pytest

from hnil import linalg
from hnil.algebra import AlgebraSignature, GeneratorSymbol
from hnil.bundle import (
    BundleModel,
    characteristic_classes,
    compute_N_lin,
    fiber_degree_count,
    normalize_generators,
    validate_bundle,
    _lower_module_span,
)
from hnil.cdga import CDGA, class_of
from hnil.parser import parse_model


def test_remark_model_is_valid(remark):
    assert validate_bundle(remark) == []


def test_even_fiber_degree_rejected():
    sig = AlgebraSignature((GeneratorSymbol("u", 4),), truncation=6)
    model = BundleModel(
        base=CDGA(sig, {}),
        fiber=(GeneratorSymbol("w", 2, "fiber"),),
        D_values={},
    )
    assert any("odd" in v for v in validate_bundle(model))


def test_non_cocycle_D_value_rejected(cp3):
    # D(w) := z with d(z) = a^4 != 0 (the even fiber degree is flagged too).
    bad = BundleModel(
        base=cp3.base,
        fiber=(GeneratorSymbol("w", 6, "fiber"),),
        D_values={"w": cp3.base.signature.gen("z")},
    )
    violations = validate_bundle(bad)
    assert any("not a cocycle" in v for v in violations)
    assert any("odd" in v for v in violations)


def test_small_truncation_rejected(remark):
    sig = AlgebraSignature((GeneratorSymbol("e", 2),), truncation=4)
    model = BundleModel(
        base=CDGA(sig, {}),
        fiber=(GeneratorSymbol("x", 1, "fiber"), GeneratorSymbol("y", 3, "fiber")),
        D_values={},
    )
    assert any("truncation" in v for v in validate_bundle(model))


def test_low_degree_base_generator_rejected():
    sig = AlgebraSignature((GeneratorSymbol("t", 1),), truncation=5)
    model = BundleModel(
        base=CDGA(sig, {}), fiber=(GeneratorSymbol("y", 3, "fiber"),), D_values={}
    )
    assert any("simply connected" in v for v in validate_bundle(model))


def test_characteristic_classes_remark(remark):
    classes = characteristic_classes(remark)
    assert not classes["x"].is_zero()
    assert not classes["y"].is_zero()
    assert classes["x"].degree == 2 and classes["y"].degree == 4


def test_characteristic_classes_hopf(hopf):
    classes = characteristic_classes(hopf)
    assert classes["y"].coordinates == (Fraction(1),)


def test_characteristic_classes_trivial(trivial_s1s3):
    assert all(c.is_zero() for c in characteristic_classes(trivial_s1s3).values())


def test_fiber_degree_count(remark):
    assert fiber_degree_count(remark) == 2
    two_same = BundleModel(
        base=remark.base,
        fiber=(GeneratorSymbol("y1", 3, "fiber"), GeneratorSymbol("y2", 3, "fiber")),
        D_values={},
    )
    assert fiber_degree_count(two_same) == 1
    single = BundleModel(
        base=remark.base, fiber=(GeneratorSymbol("y", 3, "fiber"),), D_values={}
    )
    assert fiber_degree_count(single) == 1


def test_N_lin_remark(remark):
    report = compute_N_lin(remark)
    assert [(v.degree, v.injective) for v in report.verdicts] == [(1, True), (3, False)]
    assert report.n_lin == 1 and report.n == 2


def test_N_lin_trivial(trivial_s1s3):
    report = compute_N_lin(trivial_s1s3)
    assert report.n_lin == 0
    assert all(not v.injective for v in report.verdicts)


def test_N_lin_cp3(cp3):
    report = compute_N_lin(cp3)
    assert [(v.degree, v.injective) for v in report.verdicts] == [(3, True), (5, False)]
    assert report.n_lin == 1


def test_normalize_remark_exact_witness(remark):
    substitutions, normalized = normalize_generators(remark)
    assert len(substitutions) == 1
    sub = substitutions[0]
    assert sub.target == "y"
    sig = remark.total_signature
    assert sub.correction == sig.gen("e") * sig.gen("x")
    assert "y" not in normalized.D_values
    assert validate_bundle(normalized) == []
    # Replaying the substituted generator in the original model: D(y - e*x) = 0.
    from hnil.cdga import apply_differential

    new_gen = sig.gen("y") - sub.correction
    assert apply_differential(remark.total, new_gen).is_zero()


def test_normalize_cp3_witness(cp3):
    substitutions, normalized = normalize_generators(cp3)
    assert len(substitutions) == 1
    sub = substitutions[0]
    sig = cp3.total_signature
    assert sub.target == "y5"
    assert sub.correction == sig.gen("a") * sig.gen("y3")
    from hnil.cdga import apply_differential

    assert apply_differential(cp3.total, sig.gen("y5") - sub.correction).is_zero()


def test_normalize_trivial_empty(trivial_s1s3):
    substitutions, normalized = normalize_generators(trivial_s1s3)
    assert substitutions == []
    assert normalized == trivial_s1s3


def _direct_injective_count(model):
    """Injectivity of v -> [Dv] per degree, no lower-degree quotient."""
    count = 0
    for m in model.fiber_degrees():
        W = [g for g in model.fiber if g.degree == m]
        cols = [
            class_of(model.base, model.D_value(g.name), degree=m + 1).coordinates
            for g in W
        ]
        matrix = linalg.Matrix.from_columns(cols, nrows=len(cols[0]) if cols else 0)
        if not linalg.kernel_basis(matrix):
            count += 1
    return count


@pytest.mark.parametrize(
    "name", ["remark-s1s3", "cp3-su-type", "hopf-s7", "trivial-s4-s1s3", "circle-any"]
)
def test_normalized_model_achieves_its_bound(catalog_models, name):
    model = catalog_models[name]
    report = compute_N_lin(model)
    _, normalized = normalize_generators(model)
    assert _direct_injective_count(normalized) == report.n_lin


@pytest.mark.parametrize("name", ["remark-s1s3", "cp3-su-type", "trivial-s4-s3s5s7"])
def test_untouched_classes_invariant_under_normalization(catalog_models, name):
    model = catalog_models[name]
    before = characteristic_classes(model)
    substitutions, normalized = normalize_generators(model)
    touched = {s.target for s in substitutions}
    after = characteristic_classes(normalized)
    for g in model.fiber:
        if g.name not in touched:
            assert before[g.name] == after[g.name]


@pytest.mark.parametrize("name", ["remark-s1s3", "cp3-su-type", "trivial-s4-s3s5s7"])
def test_lower_module_span_invariant_under_normalization(catalog_models, name):
    model = catalog_models[name]
    _, normalized = normalize_generators(model)
    for m in model.fiber_degrees():
        original = linalg.row_space_basis(
            [s for s, _, _ in _lower_module_span(model, m)]
        )
        renormalized = linalg.row_space_basis(
            [s for s, _, _ in _lower_module_span(normalized, m)]
        )
        assert original == renormalized


def test_N_lin_bounds(catalog_models):
    for model in catalog_models.values():
        report = compute_N_lin(model)
        assert 0 <= report.n_lin <= report.n


def test_mixed_degree_kernel_substitutes_one_generator():
    # Two degree-3 generators with proportional classes: one substitution.
    text = """
base { truncate 5
  gen e:2 }
fiber { gen y1:3
  gen y2:3
  D y1 = e^2
  D y2 = 2*e^2 }
"""
    model = parse_model(text)
    report = compute_N_lin(model)
    (verdict,) = report.verdicts
    assert not verdict.injective
    assert verdict.kernel_vector == (Fraction(-2), Fraction(1))
    sub = verdict.substitution
    assert sub.target == "y1"
    from hnil.cdga import apply_differential

    sig = model.total_signature
    new_gen = sig.gen(sub.target) - sub.correction
    assert apply_differential(model.total, new_gen).is_zero()
