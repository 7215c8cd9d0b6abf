import pytest

from hallcrest import hallalg as H
from hallcrest.errors import InputError, InternalCheckError
from hallcrest.hallpoly import ChiConfig, cached_chi_keys
from hallcrest.quiverlab import parse_quiver
from hallcrest.repcore import IndecTable, IsoClass

from importlib import resources
from math import factorial


def load_quiver(name):
    text = resources.files("hallcrest.quivers").joinpath(f"{name}.qv").read_text()
    return parse_quiver(text)


@pytest.fixture(scope="module")
def a2_table():
    return IndecTable(load_quiver("a2"), (2, 2))


@pytest.fixture(scope="module")
def a3_table():
    return IndecTable(load_quiver("a3"), (1, 1, 1))


@pytest.fixture(scope="module")
def loop2_table():
    return IndecTable(load_quiver("loop2"), (3,))


@pytest.fixture(scope="module")
def sv_table():
    # one vertex, no arrows: semisimple with a single simple
    return IndecTable(parse_quiver("vertex 1\n"), (4,))


def u(text):
    return H.HallElement.basis(IsoClass.parse(text))


# -- elements


def test_hall_element_basics():
    e = u("S1").scale(2) + u("S2") - u("S2")
    assert e.as_dict() == {"S1": 2}
    assert e.coefficient(IsoClass.of("S1")) == 2
    assert e.coefficient(IsoClass.of("S2")) == 0
    assert (e - e).is_zero()
    assert repr(u("S1") + u("M11").scale(3)) == "3*u[M11] + u[S1]"
    assert repr(H.HallElement.zero()) == "0"
    with pytest.raises(InputError):
        H.HallElement({"S1": 1})


def test_tensor_element_basics():
    s1, s2 = IsoClass.of("S1"), IsoClass.of("S2")
    t = H.TensorElement({(s1, s2): 1, (s2, s1): 2, (s1, s1): 0})
    assert t.coefficient(s2, s1) == 2
    assert t.coefficient(s1, s1) == 0
    assert len(t.support()) == 2
    assert t.as_list()[0] == {"left": "S1", "right": "S2", "coefficient": 1}
    assert t == H.TensorElement({(s2, s1): 2, (s1, s2): 1})


# -- product / bracket


def test_a2_multiplication_table(a2_table):
    assert H.product(u("S2"), u("S1"), a2_table).as_dict() == {"M11": 1, "S1+S2": 1}
    assert H.product(u("S1"), u("S2"), a2_table).as_dict() == {"S1+S2": 1}
    assert H.bracket(u("S2"), u("S1"), a2_table).as_dict() == {"M11": 1}


def test_unit_is_two_sided(a2_table):
    one = H.HallElement.unit()
    for e in [u("S1"), u("M11") + u("S1+S2").scale(2)]:
        assert H.product(one, e, a2_table) == e
        assert H.product(e, one, a2_table) == e


def test_loop_products(loop2_table):
    s = u("S1")
    assert H.product(s, s, loop2_table).as_dict() == {"2*S1": 2, "M2": 1}
    assert H.bracket(s, u("M2"), loop2_table).is_zero()


def test_single_vertex_powers(sv_table):
    s = u("S1")
    for k in range(1, 5):
        powk = H.hall_power(s, k, sv_table)
        assert powk.as_dict() == {f"{k}*S1" if k > 1 else "S1": factorial(k)}
    with pytest.raises(InputError):
        H.hall_power(s, -1, sv_table)


# -- comultiplication


def test_comult_examples(a2_table):
    d = H.comult(u("M11"), a2_table)
    zero = IsoClass.zero()
    m11 = IsoClass.of("M11")
    assert d == H.TensorElement({(m11, zero): 1, (zero, m11): 1})

    d = H.comult(u("S1+S2"), a2_table)
    assert len(d.coeffs) == 4
    assert all(c == 1 for c in d.coeffs.values())
    assert d.coefficient(IsoClass.of("S1"), IsoClass.of("S2")) == 1

    assert H.comult(H.HallElement.unit(), a2_table) == H.TensorElement({(zero, zero): 1})
    with pytest.raises(InputError):
        H.comult(u("S1"), a2_table, mode="nonsense")


def test_comult_multiplicity_splittings(a2_table):
    d = H.comult(u("2*S1"), a2_table)
    assert len(d.coeffs) == 3
    assert d.coefficient(IsoClass.of("S1"), IsoClass.of("S1")) == 1


def test_comult_hom_example_has_six_terms(a2_table):
    uv = H.product(u("S2"), u("S1"), a2_table)
    lhs = H.comult(uv, a2_table)
    rhs = H._eta_product(
        H.comult(u("S2"), a2_table), H.comult(u("S1"), a2_table), a2_table, None
    )
    assert lhs == rhs
    assert len(lhs.coeffs) == 6


# -- suites


def test_associativity_suites(a2_table, a3_table, loop2_table):
    for table, bound in [(a2_table, (2, 2)), (a3_table, (1, 1, 1)), (loop2_table, (3,))]:
        report = H.verify_associativity(table, bound)
        assert report.passed
        assert len(report.checks) > 10


def test_initial_terms(a2_table, loop2_table):
    report = H.verify_initial_terms(a2_table, (2, 2))
    assert report.passed
    names = [c.name for c in report.checks]
    assert "power S1^2" in names
    assert "mixed monomial M11+S1" in names
    assert H.verify_initial_terms(loop2_table, (3,)).passed


def test_pbw(a2_table, loop2_table):
    assert H.verify_pbw(a2_table, (2, 2)).passed
    assert H.verify_pbw(loop2_table, (3,)).passed
    # PBW holds for any total order on the generators
    reversed_order = list(reversed(a2_table.labels()))
    assert H.verify_pbw(a2_table, (2, 2), ordering=reversed_order).passed
    with pytest.raises(InputError):
        H.verify_pbw(a2_table, (2, 2), ordering=["S1", "S1", "S2"])
    with pytest.raises(InputError):
        H.verify_pbw(a2_table, (2, 2), ordering=["S1"])


def test_green_degenerate_examples(sv_table, a2_table):
    s = IsoClass.of("S1")
    check = H.verify_green_degenerate(sv_table, s, s, s, s)
    assert check.passed
    check = H.verify_green_degenerate(
        a2_table, IsoClass.of("S2"), IsoClass.of("S1"), IsoClass.of("M11"), IsoClass.zero()
    )
    assert check.passed
    check = H.verify_green_degenerate(
        a2_table, IsoClass.zero(), IsoClass.of("S1"), IsoClass.of("S1"), IsoClass.zero()
    )
    assert check.passed
    with pytest.raises(InputError):
        H.verify_green_degenerate(a2_table, s, s, s, IsoClass.of("S2"))


def test_green_degenerate_suite_loop(loop2_table):
    report = H.green_degenerate_suite(loop2_table, (3,))
    assert report.passed
    assert len(report.checks) == 94


def test_green_classical(a2_table, loop2_table):
    check = H.verify_green_classical(
        a2_table, IsoClass.of("S1"), IsoClass.of("S2"), IsoClass.of("S2"), IsoClass.of("S1"), 2
    )
    assert check.passed
    # mismatched dimensions: both sides empty sums
    check = H.verify_green_classical(
        a2_table, IsoClass.of("S1"), IsoClass.of("S1"), IsoClass.of("S2"), IsoClass.of("S2"), 2
    )
    assert check.passed
    with pytest.raises(InputError):
        H.verify_green_classical(
            loop2_table, IsoClass.of("S1"), IsoClass.of("S1"),
            IsoClass.of("S1"), IsoClass.of("S1"), 2,
        )


def test_green_classical_suite_p2(a2_table):
    report = H.green_classical_suite(a2_table, (2, 2), 2)
    assert report.passed
    assert len(report.checks) == 663


def test_comult_hom_suites(a2_table, loop2_table):
    assert H.verify_comult_hom(a2_table, (2, 2)).passed
    assert H.verify_comult_hom(loop2_table, (3,)).passed


def test_comult_agreement_small(a2_table):
    report = H.verify_comult_agreement(a2_table, (1, 1))
    assert report.passed
    assert len(report.checks) == 5


def test_coassociativity(a2_table, loop2_table):
    assert H.verify_coassociativity(a2_table, (2, 2)).passed
    assert H.verify_coassociativity(loop2_table, (3,)).passed


def test_lie_suite(a2_table):
    report = H.verify_lie(a2_table, (2, 2))
    assert report.passed
    br = H.bracket(u("S2"), u("S1"), a2_table)
    assert all(x.gamma == 1 for x in br.coeffs)


def test_structure_constants(a2_table):
    out = H.structure_constants(a2_table, (2, 2))
    assert ("S2", "S1", "M11", 1) in out["rows"]
    assert ("S1", "S2", "M11", -1) in out["rows"]
    assert all(a != b for a, b, _, _ in out["rows"])
    assert out["lie"].passed
    csv_text = H.structure_constants_csv(out["rows"])
    lines = csv_text.strip().splitlines()
    assert lines[0] == "A,B,C,coefficient"
    assert len(lines) == len(out["rows"]) + 1


def test_chi_stability_audit_fresh_table():
    table = IndecTable(load_quiver("a2"), (1, 1))
    H.product(u("S2"), u("S1"), table)
    # explicit-ladder entries are outside the audit's scope
    from hallcrest.hallpoly import chi_filtration

    chi_filtration(
        (IsoClass.of("S1"), IsoClass.of("S2")),
        IsoClass.of("M11"),
        table,
        ChiConfig(primes=(3, 5, 7)),
    )
    audited = H.verify_chi_stability(table)
    assert audited.passed
    adaptive_keys = [k for k in cached_chi_keys(table) if k[-1].primes is None]
    assert len(audited.checks) == len({k for k in adaptive_keys if k[-1].base_ladder is None})


def test_report_shapes(a2_table):
    report = H.verify_coassociativity(a2_table, (1, 1))
    d = report.as_dict()
    assert d["suite"] == "coassociativity"
    assert d["passed"] is True
    assert d["failed"] == 0
    assert len(d["checks"]) == d["total"]
    assert all(set(c) <= {"name", "passed", "details"} for c in d["checks"])


def test_convention_gate_detects_bad_wiring(monkeypatch):
    class FakeChi:
        value = 3

    monkeypatch.setattr(H, "_CONVENTION_OK", False)
    monkeypatch.setattr(H, "chi_filtration", lambda *a, **k: FakeChi())
    with pytest.raises(InternalCheckError, match="convention gate"):
        H._convention_gate()
