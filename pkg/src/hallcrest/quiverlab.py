"""Quivers with relations: presentation type, file format, path algebra helpers.

A presentation is a finite quiver (named vertices and arrows) together with a
list of relations.  Each relation is a rational linear combination of paths of
length >= 2 sharing a common source and target.  Paths are written in
traversal order a1*a2*...*am (first arrow first); as linear maps they compose
later-after-earlier, so the matrix of a path is x_{am} @ ... @ x_{a1}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import CatalogBoundError, QuiverParseError
from .gfarith import FMatrix, PrimeField

_NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


# one relation: ((coeff, (arrow, arrow, ...)), ...)
Relation = tuple[tuple[Fraction, tuple[str, ...]], ...]


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        names = [v for v in self.vertices] + [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverParseError("duplicate vertex/arrow name", code="duplicate")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise QuiverParseError(
                    f"arrow {a.name} references undeclared vertex", code="unknown-vertex"
                )
        for rel in self.relations:
            if not rel:
                raise QuiverParseError("empty relation", code="syntax")
            endpoints = set()
            for coeff, path in rel:
                if coeff == 0:
                    raise QuiverParseError("zero coefficient in relation", code="syntax")
                if len(path) < 2:
                    raise QuiverParseError(
                        "relation paths must have length >= 2", code="short-relation"
                    )
                endpoints.add((self.path_source(path), self.path_target(path)))
            if len(endpoints) != 1:
                raise QuiverParseError(
                    "relation terms must share source and target", code="mismatched-endpoints"
                )

    # -- lookups ---------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name: str) -> int:
        try:
            return self.vertices.index(name)
        except ValueError:
            raise QuiverParseError(f"unknown vertex {name!r}", code="unknown-vertex") from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise QuiverParseError(f"unknown arrow {name!r}", code="unknown-arrow")

    def is_hereditary(self) -> bool:
        return not self.relations

    def path_source(self, path) -> str:
        self._check_path(path)
        return self.arrow(path[0]).source

    def path_target(self, path) -> str:
        return self.arrow(path[-1]).target

    def _check_path(self, path) -> None:
        if not path:
            raise QuiverParseError("empty path", code="bad-path")
        for a, b in zip(path, path[1:]):
            if self.arrow(a).target != self.arrow(b).source:
                raise QuiverParseError(
                    f"path not composable at {a}*{b}", code="bad-path"
                )

    def excluded_primes(self) -> set[int]:
        """Primes at which a relation coefficient cannot be reduced faithfully.

        A prime dividing a denominator makes reduction impossible; a prime
        dividing a numerator silently kills the term and changes the variety
        being counted, so those are excluded as well.
        """
        out: set[int] = set()
        for rel in self.relations:
            for coeff, _ in rel:
                for n in (abs(coeff.numerator), coeff.denominator):
                    d = 2
                    while d * d <= n:
                        if n % d == 0:
                            out.add(d)
                            while n % d == 0:
                                n //= d
                        d += 1
                    if n > 1:
                        out.add(n)
        return out


# -- dimension vectors (plain int tuples) ---------------------------------


def dim_add(d, e):
    return tuple(a + b for a, b in zip(d, e))


def dim_sub(d, e):
    out = tuple(a - b for a, b in zip(d, e))
    if any(a < 0 for a in out):
        raise ValueError(f"dimension vector subtraction {d} - {e} goes negative")
    return out


def dim_leq(d, e) -> bool:
    return all(a <= b for a, b in zip(d, e))


def dim_total(d) -> int:
    return sum(d)


def zero_dim(n: int):
    return (0,) * n


def unit_dim(n: int, i: int):
    return tuple(1 if j == i else 0 for j in range(n))


def dim_vectors_upto(bound):
    """All dimension vectors d <= bound, ordered by (total dimension, lex)."""
    vecs = list(product(*(range(b + 1) for b in bound)))
    vecs.sort(key=lambda d: (sum(d), d))
    return vecs


# -- path algebra over a representation ------------------------------------


def path_matrix(rep, path) -> FMatrix:
    """Matrix of the path acting on a representation.

    `rep` needs `.presentation` and `.maps` (arrow name -> FMatrix).  The path
    is traversed left to right, composing later-after-earlier.
    """
    return path_matrix_raw(rep.presentation, rep.maps, path)


def path_matrix_raw(pres: QuiverPresentation, maps, path) -> FMatrix:
    pres._check_path(path)
    out = maps[path[0]]
    for name in path[1:]:
        out = maps[name] @ out
    return out


def relations_satisfied(pres: QuiverPresentation, p: int, maps) -> bool:
    """Do the given arrow matrices satisfy every relation over F_p?"""
    field = PrimeField(p)
    for rel in pres.relations:
        acc = None
        for coeff, path in rel:
            c = field.from_fraction(coeff)
            m = path_matrix_raw(pres, maps, path).scale(c)
            acc = m if acc is None else acc + m
        if acc is not None and not acc.is_zero():
            return False
    return True


def check_relations(rep) -> bool:
    return relations_satisfied(rep.presentation, rep.p, rep.maps)


# -- Krull-Schmidt multisets ------------------------------------------------


def krull_schmidt_vectors(d, table):
    """All multisets of indecomposable labels whose dimension vectors sum to d.

    `table` is either an indecomposable catalog (anything with
    `indecomposable_dims()` returning (label, dim vector) pairs and a
    `dim_bound` attribute) or a plain iterable of such pairs.  Returns a list
    of label/multiplicity tuples, deterministically ordered.
    """
    if hasattr(table, "indecomposable_dims"):
        if table.dim_bound is not None and not dim_leq(d, table.dim_bound):
            raise CatalogBoundError(
                f"dimension vector {d} exceeds catalogued bound {table.dim_bound}"
            )
        pairs = list(table.indecomposable_dims())
    else:
        pairs = list(table)
    pairs.sort(key=lambda lv: lv[0])
    out = []

    def rec(i, remaining, acc):
        if all(x == 0 for x in remaining):
            out.append(tuple(acc))
            return
        if i == len(pairs):
            return
        label, dv = pairs[i]
        if dim_total(dv) == 0:
            rec(i + 1, remaining, acc)
            return
        max_mult = min(
            (r // v for r, v in zip(remaining, dv) if v > 0), default=0
        )
        for m in range(max_mult + 1):
            rest = tuple(r - m * v for r, v in zip(remaining, dv))
            rec(i + 1, rest, acc + ([(label, m)] if m else []))

    rec(0, tuple(d), [])
    out.sort()
    return out


# -- Euler form (hereditary only) -------------------------------------------


def euler_form(pres: QuiverPresentation, d, e) -> int:
    """<d, e> = sum d_i e_i - sum over arrows d_{source} e_{target}.

    Only valid without relations; raises ValueError otherwise.
    """
    if not pres.is_hereditary():
        raise ValueError("euler_form requires a relation-free presentation")
    total = sum(a * b for a, b in zip(d, e))
    for arr in pres.arrows:
        total -= d[pres.vertex_index(arr.source)] * e[pres.vertex_index(arr.target)]
    return total


# -- parser -----------------------------------------------------------------


def parse_quiver(text: str) -> QuiverPresentation:
    """Parse the line-oriented quiver file format.

    Grammar (one declaration per line; blank lines and '#' comments ignored):

        vertex <name>
        arrow <name>: <src> -> <tgt>
        relation <c1> <p1> [+ <c2> <p2> ...]

    Coefficients are integers or fractions like -1 or 2/3; paths are
    '*'-joined arrow names in traversal order.  Vertices and arrows must be
    declared before use.  Ambiguous or malformed input is rejected with a
    diagnostic, never guessed at.
    """
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[Relation] = []
    declared: set[str] = set()
    arrow_names: set[str] = set()

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            name = rest
            if not _NAME_RE.match(name):
                raise QuiverParseError(f"bad vertex name {name!r}", code="syntax", line=ln)
            if name in declared:
                raise QuiverParseError(f"duplicate name {name!r}", code="duplicate", line=ln)
            declared.add(name)
            vertices.append(name)
        elif head == "arrow":
            m = re.match(r"^([A-Za-z0-9_]+)\s*:\s*([A-Za-z0-9_]+)\s*->\s*([A-Za-z0-9_]+)$", rest)
            if not m:
                raise QuiverParseError(
                    f"cannot parse arrow declaration {rest!r}", code="syntax", line=ln
                )
            name, src, tgt = m.groups()
            if name in declared:
                raise QuiverParseError(f"duplicate name {name!r}", code="duplicate", line=ln)
            for v in (src, tgt):
                if v not in vertices:
                    raise QuiverParseError(
                        f"arrow {name} uses undeclared vertex {v!r}",
                        code="unknown-vertex",
                        line=ln,
                    )
            declared.add(name)
            arrow_names.add(name)
            arrows.append(Arrow(name, src, tgt))
        elif head == "relation":
            tokens = rest.split()
            terms = []
            expect = "coeff"
            coeff: Fraction | None = None
            for tok in tokens:
                if expect == "plus":
                    if tok != "+":
                        raise QuiverParseError(
                            f"expected '+' between relation terms, got {tok!r}",
                            code="syntax",
                            line=ln,
                        )
                    expect = "coeff"
                elif expect == "coeff":
                    try:
                        coeff = Fraction(tok)
                    except (ValueError, ZeroDivisionError):
                        raise QuiverParseError(
                            f"bad coefficient {tok!r}", code="syntax", line=ln
                        ) from None
                    expect = "path"
                else:  # path
                    names = tok.split("*")
                    if len(names) < 2:
                        raise QuiverParseError(
                            "relation paths must have length >= 2",
                            code="short-relation",
                            line=ln,
                        )
                    for nm in names:
                        if nm not in arrow_names:
                            raise QuiverParseError(
                                f"unknown arrow {nm!r} in relation", code="unknown-arrow", line=ln
                            )
                    terms.append((coeff, tuple(names)))
                    expect = "plus"
            if expect != "plus" or not terms:
                raise QuiverParseError("truncated relation", code="syntax", line=ln)
            relations.append(tuple(terms))
        else:
            raise QuiverParseError(f"unknown directive {head!r}", code="syntax", line=ln)

    pres = QuiverPresentation(tuple(vertices), tuple(arrows), tuple(relations))
    # composability and endpoint agreement are validated by the constructor,
    # but without line numbers; re-raise is acceptable at this granularity
    return pres
