import random

import pytest
from hypothesis import given, strategies as st

from negsphere import sl2z
from negsphere.sl2z import GroupElement, IDENTITY, compose, generator, is_identity, word_to_matrix


# Independent oracle: plain nested-list matrix product, no shared code.
def mat_mul(a, b):
    return [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]


def mat_word(word):
    gens = {"a": [[1, 1], [0, 1]], "b": [[1, 0], [-1, 1]]}
    out = [[1, 0], [0, 1]]
    for ch in word:
        out = mat_mul(out, gens[ch])
    return out


def test_generator_matrices():
    assert generator("a").to_lists() == [[1, 1], [0, 1]]
    assert generator("b").to_lists() == [[1, 0], [-1, 1]]
    assert generator("A") == generator("a")
    assert generator("B") == generator("b")


def test_generator_unknown():
    with pytest.raises(ValueError, match="unknown generator"):
        generator("c")


def test_compose_a_then_b():
    # computed by hand with the independent oracle
    assert mat_word("ab") == [[0, 1], [-1, 1]]
    assert compose(generator("a"), generator("b")).to_lists() == [[0, 1], [-1, 1]]


def test_compose_identity_law():
    g = word_to_matrix("abbaab")
    assert compose(IDENTITY, g) == g
    assert compose(g, IDENTITY) == g


def test_inverse_via_torsion():
    # (ab)^3 * (ab)^3 = (ab)^6 = 1, so (ab)^3 is its own inverse
    g = word_to_matrix("ab" * 3)
    assert is_identity(compose(g, g))


def test_braid_relation():
    assert word_to_matrix("aba") == word_to_matrix("bab")
    assert word_to_matrix("aba").to_lists() == [[0, 1], [-1, 0]]


def test_word_to_matrix_empty():
    assert word_to_matrix("") == IDENTITY


def test_torsion_relation():
    assert is_identity(word_to_matrix("ab" * 6))
    minus_one = GroupElement(-1, 0, 0, -1)
    assert word_to_matrix("ab" * 3) == minus_one


def test_torsion_powers_up_to_50():
    power = IDENTITY
    block = word_to_matrix("ab" * 6)
    for _ in range(50):
        power = compose(power, block)
        assert is_identity(power)


def test_aba_squared_is_ab_cubed():
    aba = word_to_matrix("aba")
    assert compose(aba, aba) == word_to_matrix("ab" * 3)


def test_is_identity():
    assert is_identity(IDENTITY)
    assert not is_identity(word_to_matrix("ab" * 3))
    assert is_identity(word_to_matrix("ab" * 12))


def test_homomorphism_random_pairs():
    rng = random.Random(20240901)
    for _ in range(1000):
        u = "".join(rng.choice("ab") for _ in range(rng.randint(0, 30)))
        v = "".join(rng.choice("ab") for _ in range(rng.randint(0, 30)))
        joined = word_to_matrix(u + v)
        assert joined == compose(word_to_matrix(u), word_to_matrix(v))
        assert joined.to_lists() == mat_word(u + v)


@given(st.text(alphabet="ab", max_size=40))
def test_word_matches_oracle_and_det(word):
    g = word_to_matrix(word)
    assert g.to_lists() == mat_word(word)
    assert g.m11 * g.m22 - g.m12 * g.m21 == 1


def test_word_rejects_bad_letters():
    with pytest.raises(ValueError, match="invalid letter"):
        word_to_matrix("abc")


def test_uppercase_words_accepted():
    assert word_to_matrix("AB") == word_to_matrix("ab")


def test_determinant_enforced():
    with pytest.raises(ValueError, match="determinant"):
        GroupElement(2, 0, 0, 2)


def test_overflow_rejected_on_construction():
    with pytest.raises(OverflowError):
        GroupElement(1, 2**63, 0, 1)


def test_overflow_rejected_on_compose():
    big = GroupElement(1, 2**63 - 1, 0, 1)
    with pytest.raises(OverflowError):
        compose(big, generator("a"))


def test_serialization_round_trip():
    g = word_to_matrix("abab")
    assert GroupElement.from_lists(g.to_lists()) == g
