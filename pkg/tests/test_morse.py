"""Weight vectors, the positivity pipeline, thresholds, leading coefficients."""

import pytest

from jetbound import (
    EvaluatedClass,
    MorseReport,
    TowerContext,
    WeightVector,
    compact_hypersurface,
    compute_report,
    default_weights,
    degree_threshold,
    is_admissible,
    leading_degree_coefficient,
    logarithmic_pair,
    morse_class,
    morse_polynomial,
    symbolic_leading_form,
)
from jetbound.errors import InadmissibleWeightsError
from jetbound.morse import _linear_power


# ---- weight vectors --------------------------------------------------------


def test_default_weights_examples():
    assert default_weights(1).a == (1,)
    assert default_weights(3).a == (6, 2, 1)
    assert default_weights(5).a == (54, 18, 6, 2, 1)
    assert default_weights(5).total == 81 == 3**4


@pytest.mark.parametrize("k", range(1, 6))
def test_default_weights_match_reference_construction(k):
    # a_j = 2*3^(k-j-1) for j < k, a_k = 1; the h-twist weight is 2*3^(k-1)
    w = default_weights(k)
    assert w.a[-1] == 1
    for j in range(1, k):
        assert w.a[j - 1] == 2 * 3 ** (k - j - 1)
    assert 2 * w.total == 2 * 3 ** (k - 1)


@pytest.mark.parametrize(
    "a,expected",
    [
        ((6, 2, 1), True),
        ((1, 1), False),
        ((3, 1), True),
        ((2, 1), True),
        ((1,), True),
        ((0,), False),
        ((-2, 1), False),
        ((54, 18, 6, 2, 1), True),
        ((18, 6, 2, 1), True),
        ((17, 6, 2, 1), False),
        ((9, 3, 1), True),
        ((8, 3, 1), False),
        ((), False),
    ],
)
def test_is_admissible(a, expected):
    assert is_admissible(a) is expected


def test_weight_vector_partial_sums():
    w = WeightVector((6, 2, 1))
    assert w.b == (6, 8, 9)
    assert w.total == 9
    assert w.k == 3
    assert str(w) == "6,2,1"
    assert all(b > 0 for b in w.b)


def test_weight_vector_rejects_inadmissible():
    with pytest.raises(InadmissibleWeightsError):
        WeightVector((1, 1))
    with pytest.raises(InadmissibleWeightsError):
        WeightVector(())


# ---- the Morse class ----------------------------------------------------------


def test_morse_class_matches_formula():
    ctx = TowerContext(2, 2)
    ring = ctx.ring
    u1, u2, h = (ring.variable(x) for x in ("u1", "u2", "h"))
    F = 2 * u1 + u2 + 6 * h
    G = 6 * h
    N = ctx.total_dim
    assert N == 4
    assert morse_class(ctx, (2, 1)) == (F - N * G) * F ** (N - 1)


def test_morse_class_homogeneous():
    ctx = TowerContext(3, 2)
    cls = morse_class(ctx, (2, 1))
    weights = ctx.cohomology_weights
    assert cls.is_homogeneous(weights)
    assert cls.weighted_degree(weights) == ctx.total_dim


def test_morse_class_validates_weights():
    ctx = TowerContext(2, 2)
    with pytest.raises(InadmissibleWeightsError):
        morse_class(ctx, (1, 1))
    with pytest.raises(InadmissibleWeightsError):
        morse_class(ctx, (2, 1, 1))


def test_linear_power_equals_binary_power():
    ctx = TowerContext(2, 3)
    ring = ctx.ring
    F = ring.parse("6*u1 + 2*u2 + u3 + 18*h")
    for e in (0, 1, 2, 5, 9):
        assert _linear_power(F, e) == F**e


# ---- pipeline golden values ---------------------------------------------------


def test_pipeline_log_2_2():
    P = morse_polynomial(logarithmic_pair(2), 2, (2, 1))
    assert P.coeffs == (0, -378, -153, 12)
    assert P.leading_coefficient > 0
    assert degree_threshold(P) == 15


def test_pipeline_low_order_leading_vanishes():
    for spec in (logarithmic_pair(2), compact_hypersurface(2)):
        P = morse_polynomial(spec, 1, (1,))
        assert P.coefficient(3) == 0


def test_pipeline_rejects_wrong_weight_count():
    with pytest.raises(InadmissibleWeightsError):
        morse_polynomial(logarithmic_pair(2), 2, (3, 1, 1))


# ---- thresholds ------------------------------------------------------------------


def test_threshold_linear():
    assert degree_threshold(EvaluatedClass.from_coefficients([-3, 1])) == 4


def test_threshold_positive_everywhere():
    assert degree_threshold(EvaluatedClass.from_coefficients([1, 0, 1])) == 1


def test_threshold_absent_for_negative_leading():
    assert degree_threshold(EvaluatedClass.from_coefficients([5, -1])) is None
    assert degree_threshold(EvaluatedClass.from_coefficients([])) is None


def test_threshold_integer_root_is_excluded():
    # P(3) = 0 must not count as positive: smallest good degree is 4
    assert degree_threshold(EvaluatedClass.from_coefficients([0, -3, 1])) == 4


def test_threshold_dips_after_sign_change():
    # (d-2)(d-5)(d-6) is positive at 3,4 but dips negative again up to 6
    P = EvaluatedClass.from_coefficients([-60, 52, -13, 1])
    assert P(3) > 0 and P(5) == 0
    assert degree_threshold(P) == 7


@pytest.mark.parametrize("n,k", [(2, 2), (3, 3)])
def test_threshold_scaling_invariance(n, k):
    spec = logarithmic_pair(n)
    base = default_weights(k)
    doubled = tuple(2 * a for a in base.a)
    P1 = morse_polynomial(spec, k, base)
    P2 = morse_polynomial(spec, k, doubled)
    N = n + k * (n - 1)
    assert P2.coeffs == tuple(c * 2**N for c in P1.coeffs)
    assert degree_threshold(P1) == degree_threshold(P2)


# ---- leading coefficients --------------------------------------------------------


def test_leading_coefficient_vanishes_below_order_n():
    spec = compact_hypersurface(3)
    for k, a in [(1, (5,)), (2, (2, 1)), (2, (9, 4))]:
        assert leading_degree_coefficient(spec, k, a) == 0
    assert leading_degree_coefficient(logarithmic_pair(3), 2, (2, 1)) == 0


def test_leading_coefficient_matches_symbolic_form():
    # symbolic-weight mode (n = 2): the top-coefficient function of the weights
    form = symbolic_leading_form(compact_hypersurface(2), 2)
    sym_ring = form.ring
    expected = sym_ring.parse("6*a1^2*a2^2 - 8*a1*a2^3 + 4*a2^4")
    assert form == expected
    for a in [(2, 1), (5, 2), (9, 3)]:
        value = leading_degree_coefficient(compact_hypersurface(2), 2, a)
        assert value == 6 * a[0] ** 2 * a[1] ** 2 - 8 * a[0] * a[1] ** 3 + 4 * a[1] ** 4


def test_leading_coefficient_geometry_independent():
    for a in [(2, 1), (4, 1)]:
        compact = leading_degree_coefficient(compact_hypersurface(2), 2, a)
        log = leading_degree_coefficient(logarithmic_pair(2), 2, a)
        assert compact == log


@pytest.mark.parametrize("make_spec", [logarithmic_pair, compact_hypersurface])
@pytest.mark.parametrize("n,k,a", [(2, 2, (2, 1)), (2, 2, (5, 2)), (3, 3, (6, 2, 1))])
def test_top_degree_coefficient_agrees_with_self_intersection(make_spec, n, k, a):
    # the twisted difference and the bare top self-intersection share the
    # d^(n+1) coefficient, and neither exceeds degree n+1
    spec = make_spec(n)
    P = morse_polynomial(spec, k, a)
    assert P.degree <= n + 1
    assert P.coefficient(n + 1) == leading_degree_coefficient(spec, k, a)


# ---- reports ---------------------------------------------------------------------


def test_report_fields_and_json_round_trip():
    report = compute_report(logarithmic_pair(2), 2)
    assert (report.n, report.k, report.geometry) == (2, 2, "log")
    assert report.weights == (2, 1)
    assert report.total_dim == 4
    assert report.leading_coeff == 12
    assert report.threshold == 15
    assert report.elapsed_ms >= 0
    data = report.to_json_dict()
    assert list(data) == [
        "dim", "order", "geometry", "weights", "total_dim",
        "polynomial", "leading_coeff", "threshold", "elapsed_ms",
    ]
    assert data["polynomial"] == ["0", "-378", "-153", "12"]
    assert data["leading_coeff"] == "12"
    rebuilt = MorseReport.from_json_dict(data)
    assert rebuilt == report


@pytest.mark.parametrize("n", (2, 3))
def test_existence_shape_at_order_n(n):
    # at k = n with default weights the top coefficient is strictly positive,
    # so a finite threshold exists (both geometries)
    for make_spec in (logarithmic_pair, compact_hypersurface):
        P = morse_polynomial(make_spec(n), n)
        assert P.coefficient(n + 1) > 0
        assert degree_threshold(P) is not None


def test_report_threshold_absent_iff_leading_not_positive():
    report = compute_report(logarithmic_pair(3), 2, (2, 1))
    assert report.leading_coeff < 0
    assert report.threshold is None
    report = compute_report(logarithmic_pair(2), 2)
    assert report.leading_coeff > 0
    assert report.threshold is not None
