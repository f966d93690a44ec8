import pytest

from negsphere import sl2z
from negsphere.fibers import (
    FIBER_ORDER,
    FRAGMENT_FIBERS,
    RESOLVABLE_FIBERS,
    catalog,
    catalog_json,
    cusp_replacement,
    fiber,
    resolve,
)

EXPECTED_WORDS = {
    "E8t": "ab" * 5,
    "E7t": "ab" * 4 + "a",
    "E6t": "ab" * 4,
    "I0star": "ab" * 3,
    "IV": "ab" * 2,
    "III": "aba",
    "II_cusp": "ab",
    "I1_nodal": "a",
}


def test_catalog_has_eight_entries_in_order():
    names = [entry.name for entry in catalog()]
    assert names == list(FIBER_ORDER)
    assert len(names) == 8


def test_words_and_euler_numbers():
    for entry in catalog():
        assert entry.word == EXPECTED_WORDS[entry.name]
        assert entry.euler == len(entry.word)


def test_fragment_and_resolution_presence():
    for entry in catalog():
        assert (entry.fragment is not None) == (entry.name in FRAGMENT_FIBERS)
        assert (entry.resolution is not None) == (entry.name in RESOLVABLE_FIBERS)
    nodal = fiber("I1_nodal")
    assert nodal.fragment is None and nodal.resolution is None


@pytest.mark.parametrize("name,vertices", [("E8t", 9), ("E7t", 8), ("E6t", 7), ("I0star", 5)])
def test_fragment_shapes(name, vertices):
    fragment = fiber(name).fragment
    assert fragment.vertex_count == vertices
    assert fragment.edge_count == vertices - 1
    assert all(w == -2 for w in fragment.weights)
    # the fragment Euler characteristic 2V - E equals the fiber's Euler number
    assert fragment.euler_characteristic() == fiber(name).euler


def test_i0star_is_a_star():
    fragment = fiber("I0star").fragment
    degrees = [0] * fragment.vertex_count
    for u, v in fragment.edges:
        degrees[u] += 1
        degrees[v] += 1
    assert sorted(degrees) == [1, 1, 1, 1, 4]


def test_attachment_is_a_leaf():
    for name in FRAGMENT_FIBERS:
        fragment = fiber(name).fragment
        degree = sum(1 for e in fragment.edges if fragment.attachment in e)
        assert degree == 1


def test_resolve_cusp():
    fragment, blowups = resolve("II_cusp")
    assert blowups == 3
    assert sorted(fragment.weights) == [-6, -3, -2, -1]
    assert fragment.edge_count == 3
    # the (-1)-sphere meets the other three
    minus_one = fragment.weights.index(-1)
    neighbors = sorted(
        fragment.weights[u if v == minus_one else v]
        for u, v in fragment.edges
        if minus_one in (u, v)
    )
    assert neighbors == [-6, -3, -2]
    # the section still meets the proper transform of the fiber
    assert fragment.weights[fragment.attachment] == -6


def test_resolve_iii():
    fragment, blowups = resolve("III")
    assert blowups == 2
    assert sorted(fragment.weights) == [-4, -4, -2, -1]
    center = fragment.weights.index(-1)
    assert all(center in e for e in fragment.edges)
    assert fragment.weights[fragment.attachment] == -4


def test_resolve_iv():
    fragment, blowups = resolve("IV")
    assert blowups == 1
    assert sorted(fragment.weights) == [-3, -3, -3, -1]
    center = fragment.weights.index(-1)
    assert all(center in e for e in fragment.edges)
    assert fragment.weights[fragment.attachment] == -3


def test_resolved_euler_characteristics():
    # chi(resolved fragment) = euler(fiber) + blow-ups used
    for name in RESOLVABLE_FIBERS:
        fragment, blowups = resolve(name)
        assert fragment.euler_characteristic() == fiber(name).euler + blowups


def test_resolve_rejects_other_types():
    for name in ("E8t", "E6t", "I0star", "I1_nodal"):
        with pytest.raises(ValueError, match="not a resolvable singular type"):
            resolve(name)


def test_cusp_replacement():
    fragment, blowups = cusp_replacement()
    assert fragment.weights == (-9,)
    assert fragment.edge_count == 0
    assert blowups == 1
    # attached through one section edge it contributes -9 - 2 = -11
    assert sum(fragment.weights) - 2 * fragment.edge_count - 2 == -11


def test_unknown_fiber_name():
    with pytest.raises(ValueError, match="unknown fiber type"):
        fiber("II*")


def test_word_products_land_in_center():
    # concatenations of (ab)-power words land in {+1, -1} according to the
    # total (ab)-power mod 6 / mod 3
    minus_one = sl2z.GroupElement(-1, 0, 0, -1)
    cases = {
        "II_cusp II_cusp (ab)^10": fiber("II_cusp").word * 2 + "ab" * 10,  # (ab)^12
        "IV IV IV (ab)^3": fiber("IV").word * 3 + "ab" * 3,  # (ab)^9
        "I0star I0star": fiber("I0star").word * 2,  # (ab)^6
    }
    assert sl2z.word_to_matrix(cases["II_cusp II_cusp (ab)^10"]) == sl2z.IDENTITY
    assert sl2z.word_to_matrix(cases["IV IV IV (ab)^3"]) == minus_one
    assert sl2z.word_to_matrix(cases["I0star I0star"]) == sl2z.IDENTITY


def test_catalog_json():
    data = catalog_json()
    assert len(data) == 8
    by_name = {item["name"]: item for item in data}
    assert by_name["E8t"]["word"] == "ababababab"
    assert "fragment" in by_name["E8t"] and "resolution" not in by_name["E8t"]
    assert by_name["II_cusp"]["resolution"]["blowups"] == 3
    assert "fragment" not in by_name["I1_nodal"]


def test_fragment_dot_output():
    text = fiber("I0star").fragment.to_dot("d4")
    assert text.startswith("graph d4 {")
    assert '[label="-2"]' in text
    assert "--" in text
