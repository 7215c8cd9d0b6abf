"""Parser, path algebra, and dimension vector checks."""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

import pytest

from hallcrest.errors import QuiverParseError
from hallcrest.gfarith import FMatrix
from hallcrest.quiverlab import (
    Arrow,
    QuiverPresentation,
    dim_add,
    dim_leq,
    dim_sub,
    dim_total,
    dim_vectors_upto,
    euler_form,
    krull_schmidt_vectors,
    parse_quiver,
    path_matrix_raw,
    relations_satisfied,
    unit_dim,
)


def _bundled(name: str) -> str:
    return (resources.files("hallcrest") / "quivers" / name).read_text()


def test_parse_a2():
    pres = parse_quiver(_bundled("a2.qv"))
    assert pres.vertices == ("1", "2")
    assert pres.arrows == (Arrow("a", "1", "2"),)
    assert pres.is_hereditary()
    assert pres.excluded_primes() == set()


def test_parse_loop2():
    pres = parse_quiver(_bundled("loop2.qv"))
    assert pres.vertices == ("1",)
    assert pres.relations == (((Fraction(1), ("a", "a")),),)
    assert not pres.is_hereditary()


def test_parse_multi_term_relation():
    text = """
vertex 1
vertex 2
vertex 3
arrow a: 1 -> 2
arrow b: 2 -> 3
arrow c: 1 -> 2
arrow d: 2 -> 3
relation 1/2 a*b + -1 c*d
"""
    pres = parse_quiver(text)
    assert pres.relations[0] == ((Fraction(1, 2), ("a", "b")), (Fraction(-1), ("c", "d")))
    assert pres.excluded_primes() == {2}


@pytest.mark.parametrize(
    "text,code",
    [
        ("vertex 1\nvertex 1", "duplicate"),
        ("arrow a: 1 -> 2", "unknown-vertex"),
        ("vertex 1\nfoo bar", "syntax"),
        ("vertex 1\narrow a: 1 -> 1\nrelation 1 a", "short-relation"),
        ("vertex 1\narrow a: 1 -> 1\nrelation 1 a*b", "unknown-arrow"),
        ("vertex 1\narrow a: 1 -> 1\nrelation x a*a", "syntax"),
        ("vertex 1\narrow a: 1 -> 1\nrelation 1 a*a 2 a*a", "syntax"),
        ("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation 1 a*a", "bad-path"),
        (
            "vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n"
            "relation 1 a*b + 1 b*a",
            "mismatched-endpoints",
        ),
    ],
)
def test_parse_rejections(text, code):
    with pytest.raises(QuiverParseError) as exc:
        parse_quiver(text)
    assert exc.value.code == code


def test_path_matrix_composition_order():
    # a: 1 -> 2 then b: 2 -> 3; the matrix of a*b must be x_b @ x_a
    pres = parse_quiver(_bundled("a3.qv"))
    xa = FMatrix(5, [[2]])
    xb = FMatrix(5, [[3]])
    maps = {"a": xa, "b": xb}
    assert path_matrix_raw(pres, maps, ("a", "b")) == FMatrix(5, [[6 % 5]])
    with pytest.raises(QuiverParseError):
        path_matrix_raw(pres, maps, ("b", "a"))


def test_relations_satisfied_loop():
    pres = parse_quiver(_bundled("loop2.qv"))
    nilp = {"a": FMatrix(3, [[0, 1], [0, 0]])}
    assert relations_satisfied(pres, 3, nilp)
    bad = {"a": FMatrix(3, [[1, 0], [0, 0]])}
    assert not relations_satisfied(pres, 3, bad)


def test_dim_vector_helpers():
    assert dim_add((1, 2), (3, 4)) == (4, 6)
    assert dim_sub((3, 4), (1, 2)) == (2, 2)
    with pytest.raises(ValueError):
        dim_sub((1, 0), (0, 1))
    assert dim_leq((1, 1), (2, 1))
    assert not dim_leq((2, 0), (1, 1))
    assert dim_total((2, 3)) == 5
    assert unit_dim(3, 1) == (0, 1, 0)
    vecs = dim_vectors_upto((1, 1))
    assert vecs == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_krull_schmidt_vectors_plain_pairs():
    # one-vertex catalog: S of dim (1), R of dim (2)
    pairs = [("S", (1,)), ("R", (2,))]
    out = krull_schmidt_vectors((3,), pairs)
    assert sorted(out) == sorted([((("R", 1), ("S", 1))), (("S", 3),)])
    assert krull_schmidt_vectors((0,), pairs) == [()]
    # a2-style catalog
    pairs2 = [("S1", (1, 0)), ("S2", (0, 1)), ("M11", (1, 1))]
    out2 = krull_schmidt_vectors((1, 1), pairs2)
    assert sorted(out2) == sorted([(("M11", 1),), (("S1", 1), ("S2", 1))])


def test_euler_form_a2():
    pres = parse_quiver(_bundled("a2.qv"))
    assert euler_form(pres, (1, 0), (0, 1)) == -1
    assert euler_form(pres, (0, 1), (1, 0)) == 0
    assert euler_form(pres, (1, 1), (1, 1)) == 1
    loop = parse_quiver(_bundled("loop2.qv"))
    with pytest.raises(ValueError):
        euler_form(loop, (1,), (1,))
