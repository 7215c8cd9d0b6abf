import pytest

from hallcrest.errors import InputError, InstabilityError
from hallcrest.gfarith import QPolynomial
from hallcrest.hallpoly import (
    ChiConfig,
    ChiResult,
    cached_chi_keys,
    chi_ext_middle,
    chi_filtration,
    recompute_with_ladder,
)
from hallcrest.quiverlab import parse_quiver
from hallcrest.repcore import IndecTable, IsoClass

from importlib import resources


def load_quiver(name):
    text = resources.files("hallcrest.quivers").joinpath(f"{name}.qv").read_text()
    return parse_quiver(text)


@pytest.fixture(scope="module")
def a2_table():
    return IndecTable(load_quiver("a2"), (2, 2))


@pytest.fixture(scope="module")
def loop2_table():
    return IndecTable(load_quiver("loop2"), (3,))


def iso(table, text):
    return table.validate_iso(IsoClass.parse(text))


def test_double_simple_filtration(a2_table):
    s1 = iso(a2_table, "S1")
    res = chi_filtration([s1, s1], iso(a2_table, "2*S1"), a2_table)
    assert res.value == 2
    assert res.polynomial == QPolynomial([1, 1])
    assert res.stable
    assert res.verification_prime == res.samples[-1][0]
    # adaptive mode: passes at sizes 3 and 4, so exactly 4 samples
    assert [p for p, _ in res.samples] == [2, 3, 5, 7]
    assert all(n == p + 1 for p, n in res.samples)


def test_projective_filtration_values(a2_table):
    s1, s2 = iso(a2_table, "S1"), iso(a2_table, "S2")
    m11 = iso(a2_table, "M11")
    # the dim (1,1) indecomposable has socle at vertex 2
    assert chi_filtration([s2, s1], m11, a2_table).value == 1
    assert chi_filtration([s1, s2], m11, a2_table).value == 0
    assert chi_filtration([s1, s2], m11, a2_table).polynomial == QPolynomial([])


def test_filtration_dimension_mismatch(a2_table):
    with pytest.raises(InputError):
        chi_filtration([iso(a2_table, "S1")], iso(a2_table, "S2"), a2_table)


def test_ext_middle_nonsplit_vanishes(a2_table):
    s1, s2 = iso(a2_table, "S1"), iso(a2_table, "S2")
    m11 = iso(a2_table, "M11")
    res = chi_ext_middle(s1, s2, m11, a2_table)
    assert res.value == 0
    assert res.polynomial == QPolynomial([-1, 1])
    assert all(n == p - 1 for p, n in res.samples)


def test_ext_middle_split_is_one(a2_table):
    s1, s2 = iso(a2_table, "S1"), iso(a2_table, "S2")
    split = iso(a2_table, "S1+S2")
    assert chi_ext_middle(s1, s2, split, a2_table).value == 1
    # no extensions in the other direction beyond the split one
    assert chi_ext_middle(s2, s1, iso(a2_table, "M11"), a2_table).value == 0
    assert chi_ext_middle(s2, s1, iso(a2_table, "M11"), a2_table).polynomial == QPolynomial([])


def test_ext_middle_dimension_mismatch_is_zero(a2_table):
    s1 = iso(a2_table, "S1")
    res = chi_ext_middle(s1, s1, iso(a2_table, "M11"), a2_table)
    assert res.value == 0
    assert res.polynomial == QPolynomial([])


def test_ext_vanishing_dim_one_one(a2_table):
    # chi of the extension space with fixed middle is 1 exactly when the
    # middle is the direct sum of the two arguments
    s1, s2 = iso(a2_table, "S1"), iso(a2_table, "S2")
    for a, b in [(s1, s2), (s2, s1)]:
        for x in a2_table.iso_classes((1, 1)):
            expected = 1 if x == a.union(b) else 0
            assert chi_ext_middle(a, b, x, a2_table).value == expected


def test_loop_ext_values(loop2_table):
    s = iso(loop2_table, "S1")
    two_s = iso(loop2_table, "2*S1")
    m2 = iso(loop2_table, "M2")
    assert chi_ext_middle(s, s, two_s, loop2_table).value == 1
    # p-1 non-split classes collapse at q=1
    assert chi_ext_middle(s, s, m2, loop2_table).value == 0
    assert chi_filtration([s, s], m2, loop2_table).value == 1
    assert chi_filtration([s, s], two_s, loop2_table).value == 2


def test_congruence_mod_p_minus_one(a2_table):
    # each sampled count is congruent to the q=1 value mod p-1
    s1, s2 = iso(a2_table, "S1"), iso(a2_table, "S2")
    cases = [
        chi_filtration([s1, s1], iso(a2_table, "2*S1"), a2_table),
        chi_ext_middle(s1, s2, iso(a2_table, "M11"), a2_table),
        chi_filtration([s2, s1], iso(a2_table, "M11"), a2_table),
    ]
    for res in cases:
        for p, n in res.samples:
            if p > 2:
                assert (n - res.value) % (p - 1) == 0


def test_explicit_ladder_reproduces_polynomial(a2_table):
    s1 = iso(a2_table, "S1")
    adaptive = chi_filtration([s1, s1], iso(a2_table, "2*S1"), a2_table)
    fixed = chi_filtration(
        [s1, s1], iso(a2_table, "2*S1"), a2_table, ChiConfig(primes=(3, 5, 7, 11))
    )
    assert fixed.polynomial == adaptive.polynomial
    assert [p for p, _ in fixed.samples] == [3, 5, 7, 11]
    assert fixed.stable and fixed.verification_prime == 11


def test_short_explicit_ladder_is_unstable(a2_table):
    s1 = iso(a2_table, "S1")
    cfg = ChiConfig(primes=(2, 3), strict=False)
    res = chi_filtration([s1, s1], iso(a2_table, "2*S1"), a2_table, cfg)
    assert not res.stable
    assert res.value is None
    assert res.verification_prime is None
    with pytest.raises(InstabilityError):
        chi_filtration(
            [s1, s1], iso(a2_table, "2*S1"), a2_table, ChiConfig(primes=(2, 3))
        )


def test_config_validation(a2_table):
    with pytest.raises(InputError):
        ChiConfig(primes=(4, 5)).resolved_ladder(a2_table.presentation)
    with pytest.raises(InputError):
        ChiConfig(primes=(5,)).resolved_ladder(a2_table.presentation)
    with pytest.raises(InputError):
        ChiConfig(min_samples=1)


def test_registry_and_rerun(a2_table):
    s2 = iso(a2_table, "S2")
    first = chi_filtration([s2, s2], iso(a2_table, "2*S2"), a2_table)
    again = chi_filtration([s2, s2], iso(a2_table, "2*S2"), a2_table)
    assert again is first
    keys = [k for k in cached_chi_keys(a2_table) if k[1:3] == ((s2, s2), iso(a2_table, "2*S2"))]
    assert len(keys) == 1
    rerun = recompute_with_ladder(a2_table, keys[0], (3, 5, 7, 11))
    assert rerun.polynomial == first.polynomial
    assert rerun.value == first.value


def test_as_dict_shape(a2_table):
    s1 = iso(a2_table, "S1")
    res = chi_filtration([s1, s1], iso(a2_table, "2*S1"), a2_table)
    d = res.as_dict()
    assert d["value"] == 2
    assert d["coefficients"] == ["1", "1"]
    assert d["stable"] is True
    assert all(isinstance(pair, list) and len(pair) == 2 for pair in d["samples"])
