from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hermring import series as S
from hermring.lattice import HermitianIndex as H, SiegelIndex, enumerate_hermitian, enumerate_siegel
from hermring.series import (
    EllipticSeries,
    HermitianSeries,
    NotPIntegralError,
    SiegelSeries,
    from_text,
    naive_mul,
    restrict_to_siegel,
)

H8_BLOCK = {(1, 0, 0, 1): 4, (1, 1, 0, 1): -2, (1, -1, 0, 1): -2, (1, 0, 1, 1): -2, (1, 0, -1, 1): -2,
            (1, 1, 1, 1): 1, (1, 1, -1, 1): 1, (1, -1, 1, 1): 1, (1, -1, -1, 1): 1}

coefficient = st.one_of(
    st.integers(-10**6, 10**6),
    st.integers(-10**40, 10**40),
    st.fractions(max_denominator=50).filter(lambda x: abs(x) < 10**6),
)


def hermitian_series(M, max_terms=60):
    return st.dictionaries(st.sampled_from(enumerate_hermitian(M)), coefficient, max_size=max_terms).map(
        lambda d: HermitianSeries(d, M))


def siegel_series(M):
    return st.dictionaries(st.sampled_from(enumerate_siegel(M)), coefficient, max_size=40).map(
        lambda d: SiegelSeries(d, M))


def big_hermitian(seed, M=3, density=0.9):
    import random

    rng = random.Random(seed)
    return HermitianSeries({h: rng.randint(-10**12, 10**12) for h in enumerate_hermitian(M) if rng.random() < density}, M)


# -- additive structure --------------------------------------------------------


@given(hermitian_series(2))
def test_additive_examples(F):
    assert (F - F).is_zero()
    assert F.scale(1) == F
    assert (F.scale(-1) + F).is_zero()


def test_zero_pruning_and_support_check():
    F = HermitianSeries({(1, 0, 0, 1): 0, (1, 1, 1, 1): 2}, 1)
    assert F.coeffs == {H(1, 1, 1, 1): 2}
    with pytest.raises(ValueError):
        HermitianSeries({(1, 3, 0, 1): 1}, 1)
    with pytest.raises(ValueError):
        HermitianSeries({(2, 0, 0, 2): 1}, 1)


def test_mixed_truncations_use_minimum():
    a = HermitianSeries({(2, 0, 0, 2): 1, (1, 0, 0, 1): 1}, 2)
    b = HermitianSeries({(1, 0, 0, 1): 1}, 1)
    assert (a + b).trunc == 1 and (a + b)[H(1, 0, 0, 1)] == 2
    assert (a * b).trunc == 1


# -- multiplication --------------------------------------------------------------


def block(M):
    return HermitianSeries({H(*h): c for h, c in H8_BLOCK.items()}, M)


def test_unit_is_identity():
    F = big_hermitian(1)
    assert F * HermitianSeries.one(3) == F


def test_square_of_h8_block_by_hand():
    # oracle: explicit double loop over the nine displayed terms
    total = sum(c1 * c2 for h1, c1 in H8_BLOCK.items() for h2, c2 in H8_BLOCK.items()
                if tuple(x + y for x, y in zip(h1, h2)) == (2, 0, 0, 2))
    assert (block(2) * block(2))[H(2, 0, 0, 2)] == total == 36


@settings(max_examples=60, deadline=None)
@given(hermitian_series(3), hermitian_series(3))
def test_product_matches_schoolbook(F, G):
    fast = S.HermitianSeries._mul_coeffs(F.coeffs, G.coeffs, 3)
    assert fast == naive_mul(F.coeffs, G.coeffs, lambda h: HermitianSeries._valid(h, 3))


@pytest.mark.parametrize("seed", range(4))
def test_kronecker_path_on_dense_operands(seed, monkeypatch):
    F, G = big_hermitian(seed), big_hermitian(seed + 100)
    assert len(F.coeffs) * len(G.coeffs) > S._NAIVE_CUTOFF
    oracle = naive_mul(F.coeffs, G.coeffs, lambda h: HermitianSeries._valid(h, 3))
    assert (F * G).coeffs == oracle
    Fq = F / 7
    assert (Fq * G).coeffs == {k: S._norm(Fraction(v, 7)) for k, v in oracle.items()}


def test_kronecker_siegel_and_elliptic_against_schoolbook():
    import random

    rng = random.Random(5)
    a = SiegelSeries({t: rng.randint(-10**9, 10**9) for t in enumerate_siegel(6)}, 6)
    b = SiegelSeries({t: rng.randint(-10**9, 10**9) for t in enumerate_siegel(6)}, 6)
    assert (a * b).coeffs == naive_mul(a.coeffs, b.coeffs, lambda t: SiegelSeries._valid(t, 6))
    e = EllipticSeries.from_list([rng.randint(-99, 99) for _ in range(200)])
    f = EllipticSeries.from_list([rng.randint(-99, 99) for _ in range(200)])
    assert (e * f).coeffs == naive_mul(e.coeffs, f.coeffs, lambda n: n <= 199)


@settings(max_examples=30, deadline=None)
@given(hermitian_series(2), hermitian_series(2), hermitian_series(2))
def test_ring_axioms(F, G, K):
    assert F * G == G * F
    assert (F * G) * K == F * (G * K)
    assert F * (G + K) == F * G + F * K


def test_weights_add_on_multiplication():
    F = HermitianSeries({(1, 0, 0, 1): 1}, 2, weight=4)
    G = HermitianSeries({(1, 0, 0, 1): 1}, 2, weight=6)
    assert (F * G).weight == 10
    assert (F * HermitianSeries({(1, 0, 0, 1): 1}, 2)).weight is None
    assert (F**3).weight == 12


# -- elliptic side --------------------------------------------------------------


def test_elliptic_examples():
    from hermring.eisenlift import f2, theta_sq

    th = theta_sq(10)
    sq = th * th
    # oracle: r_4(n) = 8 * sum of divisors not divisible by 4
    r4 = [1] + [8 * sum(d for d in range(1, n + 1) if n % d == 0 and d % 4) for n in range(1, 11)]
    assert sq.to_list() == r4
    assert (f2(10) * EllipticSeries.one(10)) == f2(10)
    assert (th * f2(10))[1] == 1


# -- valuations and reduction ----------------------------------------------------


def test_vp_examples():
    assert HermitianSeries.zero(2).vp(2) == float("inf")
    F = big_hermitian(3, M=2)
    assert F.scale(3).vp(3) == F.vp(3) + 1
    assert block(1).vp(2) == 0


@settings(max_examples=50, deadline=None)
@given(hermitian_series(2), hermitian_series(2), st.sampled_from([2, 3, 5, 7]))
def test_vp_superadditive(F, G, p):
    assert (F * G).vp(p) >= F.vp(p) + G.vp(p)


def test_vp_equality_witnesses():
    sq = block(2) * block(2)
    for p in (2, 3):
        assert sq.vp(p) == 2 * block(2).vp(p) == 0


def test_reduce_mod():
    F = big_hermitian(7, M=2)
    assert F.scale(5).reduce_mod(5).is_zero()
    assert HermitianSeries.one(2).reduce_mod(3).coeffs == {H(0, 0, 0, 0): 1}
    assert HermitianSeries({(1, 0, 0, 1): Fraction(2, 3)}, 1).reduce_mod(5).coeffs == {H(1, 0, 0, 1): 4}
    with pytest.raises(NotPIntegralError, match=r"\(1,0,0,1\)"):
        HermitianSeries({(1, 0, 0, 1): Fraction(1, 5)}, 1).reduce_mod(5)


# -- restriction -------------------------------------------------------------------


def test_restriction_of_h8_block_vanishes_on_leading_coefficients():
    r = restrict_to_siegel(block(1))
    assert r[SiegelIndex(1, 0, 1)] == 0 and r[SiegelIndex(1, 1, 1)] == 0 and r[SiegelIndex(1, -1, 1)] == 0
    assert restrict_to_siegel(HermitianSeries.one(3)) == SiegelSeries.one(3)


@settings(max_examples=40, deadline=None)
@given(hermitian_series(2), hermitian_series(2))
def test_restriction_is_a_ring_homomorphism(F, G):
    assert restrict_to_siegel(F * G) == restrict_to_siegel(F) * restrict_to_siegel(G)
    assert restrict_to_siegel(F + G) == restrict_to_siegel(F) + restrict_to_siegel(G)


# -- serialization ---------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(hermitian_series(3), st.one_of(st.none(), st.integers(0, 90)))
def test_text_round_trip_byte_exact(F, w):
    F = F.renamed("F", w)
    text = F.to_text()
    G = from_text(text)
    assert G == F and G.weight == w and G.to_text() == text


@given(siegel_series(3))
def test_siegel_round_trip(F):
    assert from_text(F.to_text("x")).to_text("x") == F.to_text("x")


def test_text_format_layout():
    F = HermitianSeries({(1, 1, 1, 1): 1, (0, 0, 0, 0): Fraction(-1, 2)}, 1, 4, "demo")
    assert F.to_text().splitlines() == [
        "# name=demo", "# weight=4", "# trunc=1", "# kind=hermitian", "# version=1",
        "0 0 0 0 -1 2", "1 1 1 1 1 1",
    ]


def test_from_text_errors():
    with pytest.raises(ValueError):
        from_text("# kind=hermitian\n1 2 3\n")
    with pytest.raises(ValueError):
        from_text("# trunc=1\n")
    with pytest.raises(ValueError):
        from_text("# kind=elliptic\n# trunc=2\n1 x 1\n")
