"""Operation words: parsing, admissibility, Adem normalization."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from steencalc import (
    MixedPrimes,
    SteenrodElement,
    admissible_monomials,
    binom_mod_ell,
    parse_operation,
    render_operation,
)
from steencalc.steenrod import SteenrodMonomial

from oracles import Model2, ModelOdd, binom_mod


def _word_element(word, prime):
    return SteenrodElement(prime, {tuple(word): 1})


def test_binom_small_values():
    assert binom_mod_ell(4, 2, 2) == 0
    assert binom_mod_ell(4, 2, 3) == 0
    assert binom_mod_ell(5, 2, 3) == 1
    assert binom_mod_ell(0, 0, 5) == 1
    assert binom_mod_ell(3, 5, 7) == 0


def test_binom_negative_upper():
    # C(-1, k) = (-1)^k
    for k in range(8):
        for ell in (2, 3, 5):
            assert binom_mod_ell(-1, k, ell) == (ell - 1 if k % 2 else 1) % ell
    # C(-n-1, k) drives the inverse-series coefficients
    assert binom_mod_ell(-3, 2, 5) == math.comb(2 + 3 - 1, 2) % 5


@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from([2, 3, 5, 7]))
def test_binom_lucas_matches_comb(a, k, ell):
    assert binom_mod_ell(a, k, ell) == math.comb(a, k) % ell


@given(st.integers(-60, -1), st.integers(0, 40), st.sampled_from([2, 3, 5]))
def test_binom_negative_matches_reflection(a, k, ell):
    assert binom_mod_ell(a, k, ell) == binom_mod(a, k, ell)


def test_parse_render_roundtrip():
    for text, prime in [
        ("Sq^3 Sq^1", 2),
        ("Sq^1", 2),
        ("b P^2 b", 3),
        ("P^1 P^1", 5),
        ("b", 3),
    ]:
        op = parse_operation(text, prime)
        assert parse_operation(render_operation(op), prime) == op


def test_parse_rejects_wrong_prime():
    with pytest.raises(Exception):
        parse_operation("P^1", 2)
    with pytest.raises(Exception):
        parse_operation("Sq^2", 3)


def test_admissibility_even_prime():
    assert SteenrodMonomial(2, (3, 1)).is_admissible()
    assert not SteenrodMonomial(2, (2, 2)).is_admissible()
    assert SteenrodMonomial(2, (6, 3, 1)).is_admissible()


def test_excess_even_prime():
    # excess of Sq^{i1}..Sq^{ik} is i1 - (i2 + ... + ik)
    assert SteenrodMonomial(2, (3, 1)).excess() == 2
    assert SteenrodMonomial(2, (1,)).excess() == 1
    assert SteenrodMonomial(2, (6, 3, 1)).excess() == 2


def test_degree_bookkeeping():
    assert SteenrodMonomial(2, (3, 1)).degree() == 4
    # at l=3 the letter 0 has degree 1 and P^s has degree 4s
    assert SteenrodMonomial(3, (0, 1, 0)).degree() == 6


def test_adem_golden_even():
    assert render_operation(parse_operation("Sq^1 Sq^1", 2).adem_normalize()) == "0"
    assert (
        render_operation(parse_operation("Sq^2 Sq^2", 2).adem_normalize())
        == "Sq^3 Sq^1"
    )
    assert (
        render_operation(parse_operation("Sq^1 Sq^2", 2).adem_normalize()) == "Sq^3"
    )


def test_adem_golden_odd():
    # P^1 P^1 = 2 P^2 at l=3 is the classical first relation
    out = parse_operation("P^1 P^1", 3).adem_normalize()
    assert render_operation(out) == "2 P^2"
    # b b = 0
    assert render_operation(parse_operation("b b", 3).adem_normalize()) == "0"


def test_normalization_is_admissible():
    for prime, words in [
        (2, [(2, 2), (1, 2, 3), (5, 5), (4, 4, 4)]),
        (3, [(1, 1), (0, 1, 0, 1), (2, 1), (1, 0, 1)]),
    ]:
        for word in words:
            normal = _word_element(word, prime).adem_normalize()
            for mono in normal.monomials():
                assert mono.is_admissible(), (prime, word, mono)


def test_mixed_primes_rejected():
    a = _word_element((1,), 2)
    b = _word_element((1,), 3)
    with pytest.raises(MixedPrimes):
        a + b


def test_admissible_monomials_count_low_degrees():
    # dimensions of the mod-2 Steenrod algebra in low degrees
    for d, want in [(0, 1), (1, 1), (2, 1), (3, 2), (4, 2), (5, 2), (6, 3)]:
        got = [m for m in admissible_monomials(2, d) if m.degree() == d]
        assert len(got) == want, (d, got)


def test_admissible_monomials_odd_include_bocksteins():
    mons = list(admissible_monomials(3, 6))
    degrees = {m.degree() for m in mons}
    assert 1 in degrees  # b alone
    assert 4 in degrees  # P^1
    assert 5 in degrees  # b P^1 and P^1 b
    assert any(m.word == (0, 1) for m in mons)
    assert any(m.word == (1, 0) for m in mons)


# ----------------------------------------------------- action comparisons


def _model_apply_element(model, elt, probe):
    out = {}
    for mono, coeff in elt.terms.items():
        hit = model.apply_word(mono.word, probe)
        for m, c in hit.items():
            v = (out.get(m, 0) + coeff * c) % model.ell
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


word2 = st.lists(st.integers(1, 8), min_size=1, max_size=4).map(tuple)
word3 = st.lists(st.integers(0, 3), min_size=1, max_size=4).map(tuple)


@settings(max_examples=120, deadline=None)
@given(word2)
def test_normalize_preserves_action_l2(word):
    """A word and its admissible form act identically on the model."""
    model = Model2(3)
    probe = {(1, 1, 1): 1, (2, 1, 0): 1}
    direct = model.apply_word(word, probe)
    via_normal = _model_apply_element(
        model, _word_element(word, 2).adem_normalize(), probe
    )
    assert direct == via_normal, (word, direct, via_normal)


@settings(max_examples=120, deadline=None)
@given(word3)
def test_normalize_preserves_action_l3(word):
    model = ModelOdd(3, 2)
    probe = {((1, 1), (0, 0)): 1, ((0, 0), (2, 1)): 1}
    direct = model.apply_word(word, probe)
    via_normal = _model_apply_element(
        model, _word_element(word, 3).adem_normalize(), probe
    )
    assert direct == via_normal, (word, direct, via_normal)


def test_normalization_degree_preserved():
    for prime, word in [(2, (2, 2, 2)), (3, (1, 1, 0)), (5, (1, 1))]:
        base = SteenrodMonomial(prime, word).degree()
        for mono in _word_element(word, prime).adem_normalize().monomials():
            assert mono.degree() == base


def test_bockstein_squared_is_zero_odd():
    for prime in (3, 5):
        elt = _word_element((0, 0), prime).adem_normalize()
        assert not elt.monomials()
