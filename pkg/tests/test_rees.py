import pytest

from brim import (
    GeneratorSet,
    GradedSubmodule,
    InfiniteColength,
    InvalidInput,
    RingSpec,
    SubmoduleSpec,
    SupportOffOrigin,
    embed_w,
    mprimary_check,
    parse_polynomial,
    power,
    product,
    submodule_eq,
)

R11 = RingSpec(d=1, p=1)
R21 = RingSpec(d=2, p=1)
R22 = RingSpec(d=2, p=2)
R12 = RingSpec(d=1, p=2)


def mk(ring, gens, tdeg=1):
    return GradedSubmodule.from_gens(ring, tdeg, gens)


def spans_equal(a, b):
    return submodule_eq(
        GeneratorSet(a.ring, a.tdeg, a.gens), GeneratorSet(b.ring, b.tdeg, b.gens)
    )


def test_embed_w_unit_vector():
    assert embed_w(R22, ["1", "0"]) == parse_polynomial(R22, "t1")


def test_embed_w_linear_vector():
    assert embed_w(R22, ["x1", "x2"]) == parse_polynomial(R22, "x1*t1 + x2*t2")


def test_embed_w_zero():
    assert embed_w(R22, ["0", "0"]).is_zero()


def test_embed_w_wrong_length():
    with pytest.raises(InvalidInput):
        embed_w(R22, ["x1"])


def test_embed_w_injective_on_fixture_vectors():
    vectors = [["x1", "x2"], ["x1^2", "0"], ["x2", "x1 + x2"]]
    for vec in vectors:
        assert not embed_w(R22, vec).is_zero()


def test_power_single_generator():
    e = mk(R11, ["x1*t1"])
    cube = power(e, 3)
    assert cube.tdeg == 3
    assert [str(g) for g in cube.gens] == ["x1^3*t1^3"]


def test_power_two_generators():
    e = mk(R21, ["x1*t1", "x2*t1"])
    sq = power(e, 2)
    assert spans_equal(sq, mk(R21, ["x1^2*t1^2", "x1*x2*t1^2", "x2^2*t1^2"], tdeg=2))


def test_power_rank_two():
    e = mk(R12, ["x1^2*t1", "x1^3*t2"])
    sq = power(e, 2)
    expected = mk(R12, ["x1^4*t1^2", "x1^5*t1*t2", "x1^6*t2^2"], tdeg=2)
    assert spans_equal(sq, expected)


def test_product_single_terms():
    a = mk(R21, ["x1*t1"])
    b = mk(R21, ["x2*t1"])
    ab = product(a, b)
    assert [str(g) for g in ab.gens] == ["x1*x2*t1^2"]


def test_product_commutes_with_power():
    m = mk(R21, ["x1*t1", "x2*t1"])
    assert spans_equal(product(m, m), power(m, 2))


def test_product_ring_mismatch():
    with pytest.raises(InvalidInput):
        product(mk(R21, ["x1*t1"]), mk(R11, ["x1*t1"]))


def test_power_additivity():
    fixtures = [
        mk(R21, ["x1*t1", "x2*t1"]),
        mk(R11, ["x1^2*t1"]),
        mk(R22, ["x1*t1", "x2*t1", "x1*t2", "x2*t2"]),
        mk(R21, ["x1^2*t1 + x2*t1", "x2^2*t1"]),
    ]
    for e in fixtures:
        for a, b in [(1, 1), (1, 2), (2, 1), (3, 1)]:
            lhs = power(e, a + b)
            rhs = product(power(e, a), power(e, b))
            assert spans_equal(lhs, rhs)


def test_mprimary_mF_certificate():
    mf = mk(R22, ["x1*t1", "x2*t1", "x1*t2", "x2*t2"])
    cert = mprimary_check(mf)
    assert cert.colength == 2
    assert cert.nakayama_exponent == 1


def test_mprimary_infinite():
    with pytest.raises(InfiniteColength):
        mprimary_check(mk(R21, ["x1*t1"]))


def test_mprimary_support_off_origin():
    # (x^2 - x) has colength 2 but vanishes at x = 1 as well
    with pytest.raises(SupportOffOrigin):
        mprimary_check(mk(R11, ["x1^2*t1 - x1*t1"]))


def test_mprimary_implies_powers_finite():
    fixtures = [
        mk(R21, ["x1*t1", "x2*t1"]),
        mk(R21, ["x1^2*t1", "x2*t1"]),
        mk(R12, ["x1^2*t1", "x1^3*t2"]),
    ]
    for e in fixtures:
        mprimary_check(e)
        for n in range(1, 5):
            assert power(e, n).colength_report().finite


def test_from_vectors_matches_embed():
    sub = GradedSubmodule.from_vectors(R22, 1, [["x1", "x2"], ["0", "x1^2"]])
    expected = GradedSubmodule(
        SubmoduleSpec(
            R22,
            1,
            [embed_w(R22, ["x1", "x2"]), embed_w(R22, ["0", "x1^2"])],
        )
    )
    assert spans_equal(sub, expected)


def test_zero_generators_dropped():
    sub = GradedSubmodule.from_gens(R11, 1, ["0", "x1*t1"])
    assert len(sub.spec.gens) == 1
