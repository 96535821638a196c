import pytest

from hopfore import catalog
from hopfore.expr import parse_element
from hopfore.ncpoly import UnmappedGenerator
from hopfore.orext import ConfluenceFailure, NonInvertibleT, OreData, OreMaps, build_ore_extension, check_ore_data


def _ore(pres, tau, delta):
    return OreData({k: parse_element(v, pres) for k, v in tau.items()},
                   {k: parse_element(v, pres) for k, v in delta.items()})


def test_valid_data_on_nonabelian_env():
    H = catalog.build_env(2, "nonabelian")
    data = _ore(H.pres, {"a": "a", "b": "b + 1"}, {"a": "a", "b": "5*a + b"})
    assert check_ore_data(H.pres, data).passed
    E = build_ore_extension(H.pres, data)
    z, a, b = E.gen("z"), E.gen("a"), E.gen("b")
    assert z * a == a * z + a
    assert z * b == b * z + z + 5 * a + b
    # normal words are base words followed by a power of z
    zi = E.index["z"]
    for w in (z * z * a * b).terms:
        k = w.count(zi)
        assert w[len(w) - k:] == (zi,) * k


def test_tau_must_respect_relations():
    H = catalog.build_env(2, "nonabelian")
    data = _ore(H.pres, {"a": "b", "b": "a"}, {"a": "0", "b": "0"})
    diag = check_ore_data(H.pres, data)
    assert [e.check for e in diag.failures()] == ["tau-relation"]


def test_delta_must_be_a_tau_derivation():
    H = catalog.build_env(2, "nonabelian")
    data = _ore(H.pres, {"a": "a", "b": "b"}, {"a": "b", "b": "0"})
    diag = check_ore_data(H.pres, data)
    assert {e.check for e in diag.failures()} == {"delta-relation"}


def test_tau_derivation_rule_on_products():
    H = catalog.build_env(2, "nonabelian")
    data = _ore(H.pres, {"a": "a", "b": "b + 1"}, {"a": "a", "b": "5*a + b"})
    maps = OreMaps(H.pres, data)
    a, b = H.pres.gen("a"), H.pres.gen("b")
    for u, v in ((a, b), (b, a), (a * b, b), (b * b, a * a)):
        lhs = maps.apply_delta(u * v)
        rhs = maps.apply_tau(u) * maps.apply_delta(v) + maps.apply_delta(u) * v
        assert lhs == rhs
        assert maps.apply_tau(u * v) == maps.apply_tau(u) * maps.apply_tau(v)


def test_group_algebra_needs_invertible_tau():
    H = catalog.build_group_algebra(1)
    with pytest.raises(NonInvertibleT):
        OreMaps(H.pres, _ore(H.pres, {"g": "g + 1"}, {"g": "0"}))


def test_missing_generator_is_reported():
    H = catalog.build_env(2)
    with pytest.raises(UnmappedGenerator):
        OreMaps(H.pres, _ore(H.pres, {"a": "a"}, {"a": "0", "b": "0"}))


def test_inverse_letters_follow_the_derivation_rule():
    H = catalog.build_group_algebra(1)
    data = _ore(H.pres, {"g": "2*g"}, {"g": "g - g^2"})
    maps = OreMaps(H.pres, data)
    g = H.pres.gen("g")
    gi = g.inverse()
    # δ(g g^-1) = τ(g)δ(g^-1) + δ(g)g^-1 = δ(1) = 0
    assert maps.apply_tau(g) * maps.apply_delta(gi) + maps.apply_delta(g) * gi == H.pres.zero()


def test_every_catalog_extension_is_confluent():
    for name in catalog.DEFAULT_NAMES:
        e = catalog.build_named(name)
        if e.kind != "ghoe":
            continue
        build_ore_extension(e.hopf.pres, e.ghoe.ore)


def test_mutated_catalog_data_is_caught_before_extension():
    e = catalog.build_named("P2.8a!mut")
    assert not check_ore_data(e.hopf.pres, e.ghoe.ore).passed
    with pytest.raises(ConfluenceFailure):
        build_ore_extension(e.hopf.pres, e.ghoe.ore)
