"""Module categories over F_p: representations, decomposition, catalogs.

A representation assigns to each vertex a space F_p^{d_i} and to each arrow a
matrix of shape (target dim x source dim), subject to the relations.  The
isomorphism classes of indecomposables up to a dimension bound are catalogued
once per prime and aligned across primes by fingerprint; every other module is
named by its Krull-Schmidt multiset of catalog labels.

Two catalog strategies are provided and cross-validated in the test suite:

* "exhaustive": enumerate every point of the representation variety, decompose
  each point, and collect the indecomposable classes.  Ground truth, cost
  grows as p^(number of matrix entries).
* "extensions": walk dimension vectors in increasing total dimension and glue
  every extension of each simple S_i onto every known iso class of dimension
  d - e_i.  Every nonzero module has a simple quotient, so every
  indecomposable of dimension d arises among the glued middle terms.  This
  stays cheap at the larger primes the interpolation ladder needs.

Indecomposability verdicts come from a Fitting sweep (split off ker/im of
powers of endomorphisms drawn from the End basis and pairwise sums).  The
sweep alone is not provably complete, so each "no split found" candidate is
additionally checked, by exact budgeted enumeration of Hom, against every
proper direct sum with the same dimension vector; by induction on total
dimension the resulting catalog is sound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations, product

from .errors import (
    BudgetError,
    CatalogIncompleteError,
    CrossPrimeMismatchError,
    FingerprintCollisionError,
    InputError,
)
from .gfarith import FMatrix, gl_order
from .quiverlab import (
    QuiverPresentation,
    dim_add,
    dim_leq,
    dim_total,
    dim_vectors_upto,
    krull_schmidt_vectors,
    relations_satisfied,
    unit_dim,
    zero_dim,
)

HOM_ENUM_BUDGET = 500_000  # max p^dim(Hom) for exact invertible-map searches
AUTO_EXHAUSTIVE_POINTS = 4_096  # "auto" catalog method switches above this
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19)
EXHAUSTIVE_POINT_BUDGET = 300_000  # hard refusal for explicit exhaustive builds
EXT_GLUE_BUDGET = 300_000  # max p^dim(Z) when gluing extensions


class Rep:
    """A representation of a presentation over F_p."""

    __slots__ = ("presentation", "p", "dim", "maps", "_key")

    def __init__(self, presentation: QuiverPresentation, p: int, dim, maps, check: bool = True):
        self.presentation = presentation
        self.p = p
        self.dim = tuple(int(x) for x in dim)
        if len(self.dim) != presentation.n_vertices:
            raise ValueError("dimension vector length mismatch")
        self.maps = {a.name: maps[a.name] for a in presentation.arrows}
        for a in presentation.arrows:
            m = self.maps[a.name]
            want = (
                self.dim[presentation.vertex_index(a.target)],
                self.dim[presentation.vertex_index(a.source)],
            )
            if (m.rows, m.cols) != want or m.p != p:
                raise ValueError(f"arrow {a.name}: expected {want} matrix over F_{p}")
        if check and not relations_satisfied(presentation, p, self.maps):
            raise ValueError("arrow matrices do not satisfy the relations")
        self._key = None

    @property
    def key(self):
        """Hashable exact identity (same presentation and prime assumed)."""
        if self._key is None:
            self._key = (
                self.dim,
                tuple(self.maps[a.name].data for a in self.presentation.arrows),
            )
        return self._key

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    @classmethod
    def zero(cls, presentation: QuiverPresentation, p: int) -> "Rep":
        n = presentation.n_vertices
        d = zero_dim(n)
        maps = {
            a.name: FMatrix.zeros(p, 0, 0) for a in presentation.arrows
        }
        return cls(presentation, p, d, maps, check=False)

    @classmethod
    def simple(cls, presentation: QuiverPresentation, p: int, vertex: str) -> "Rep":
        i = presentation.vertex_index(vertex)
        d = unit_dim(presentation.n_vertices, i)
        maps = {}
        for a in presentation.arrows:
            t = presentation.vertex_index(a.target)
            s = presentation.vertex_index(a.source)
            maps[a.name] = FMatrix.zeros(p, d[t], d[s])
        return cls(presentation, p, d, maps, check=False)

    def __repr__(self):
        return f"Rep(dim={self.dim}, p={self.p})"


def direct_sum(m: Rep, n: Rep) -> Rep:
    """Block-diagonal direct sum (m's coordinates first)."""
    pres, p = m.presentation, m.p
    if n.presentation != pres or n.p != p:
        raise ValueError("direct sum across presentations or primes")
    dim = dim_add(m.dim, n.dim)
    maps = {}
    for a in pres.arrows:
        am, an = m.maps[a.name], n.maps[a.name]
        top = am.hstack(FMatrix.zeros(p, am.rows, an.cols))
        bot = FMatrix.zeros(p, an.rows, am.cols).hstack(an)
        maps[a.name] = top.vstack(bot)
    return Rep(pres, p, dim, maps, check=False)


def direct_sum_list(pres: QuiverPresentation, p: int, reps) -> Rep:
    out = Rep.zero(pres, p)
    for r in reps:
        out = direct_sum(out, r)
    return out


# -- graded maps -------------------------------------------------------------
# A graded map M -> N is a tuple of FMatrix, one per vertex, shaped
# (N.dim[i] x M.dim[i]).  Module homomorphisms are the graded maps commuting
# with every arrow.


def graded_identity(m: Rep):
    return tuple(FMatrix.identity(m.p, d) for d in m.dim)


def graded_add(f, g):
    return tuple(a + b for a, b in zip(f, g))


def graded_scale(f, c: int):
    return tuple(a.scale(c) for a in f)


def graded_compose(f, g):
    """f after g (per vertex)."""
    return tuple(a @ b for a, b in zip(f, g))


def graded_is_invertible(f) -> bool:
    return all(m.rows == m.cols and m.is_invertible() for m in f)


def is_module_map(m: Rep, n: Rep, f) -> bool:
    pres = m.presentation
    for a in pres.arrows:
        t = pres.vertex_index(a.target)
        s = pres.vertex_index(a.source)
        if f[t] @ m.maps[a.name] != n.maps[a.name] @ f[s]:
            return False
    return True


def _hom_system(m: Rep, n: Rep):
    """Linear system whose kernel is Hom(m, n) in flattened coordinates."""
    pres, p = m.presentation, m.p
    nv = pres.n_vertices
    offsets = []
    off = 0
    for i in range(nv):
        offsets.append(off)
        off += n.dim[i] * m.dim[i]
    total = off
    rows = []
    for arr in pres.arrows:
        t = pres.vertex_index(arr.target)
        s = pres.vertex_index(arr.source)
        ma = m.maps[arr.name]
        na = n.maps[arr.name]
        # equation block: f_t @ ma - na @ f_s = 0, entry (a, b)
        for a in range(n.dim[t]):
            for b in range(m.dim[s]):
                row = [0] * total
                for k in range(m.dim[t]):
                    row[offsets[t] + a * m.dim[t] + k] = (
                        row[offsets[t] + a * m.dim[t] + k] + ma.data[k][b]
                    ) % p
                for k in range(n.dim[s]):
                    row[offsets[s] + k * m.dim[s] + b] = (
                        row[offsets[s] + k * m.dim[s] + b] - na.data[a][k]
                    ) % p
                rows.append(tuple(row))
    if not rows:
        system = FMatrix.zeros(p, 0, total)
    else:
        system = FMatrix(p, tuple(rows))
    return system, offsets, total


def _unflatten(m: Rep, n: Rep, offsets, vec):
    out = []
    for i in range(m.presentation.n_vertices):
        r, c = n.dim[i], m.dim[i]
        block = [
            tuple(vec[offsets[i] + a * c + b] for b in range(c)) for a in range(r)
        ]
        out.append(FMatrix(m.p, tuple(block), cols=c))
    return tuple(out)


def hom_space(m: Rep, n: Rep):
    """Basis of Hom(m, n) as graded map tuples, deterministic order."""
    system, offsets, total = _hom_system(m, n)
    if total == 0:
        return []
    kernel = system.right_kernel()
    return [_unflatten(m, n, offsets, row) for row in kernel.data]


def hom_dim(m: Rep, n: Rep) -> int:
    system, offsets, total = _hom_system(m, n)
    return total - system.rank


def end_space(m: Rep):
    return hom_space(m, m)


# -- Fitting decomposition ---------------------------------------------------


def fitting_split(m: Rep, phi):
    """Split m as ker(phi^N) + im(phi^N) for a module endomorphism phi.

    Returns (kernel part, image part) as Reps in new coordinates, or None when
    the split is trivial (phi nilpotent or invertible).
    """
    pres, p = m.presentation, m.p
    if m.total_dim == 0:
        return None
    expo = max(m.dim)
    powers = [f.matpow(expo) for f in phi]
    kers = [f.right_kernel() for f in powers]  # rows = kernel basis
    ims = [f.column_space_basis() for f in powers]  # rows = image basis
    kdims = [k.rows for k in kers]
    if sum(kdims) == 0 or sum(kdims) == m.total_dim:
        return None
    qs = []
    qinvs = []
    for i in range(pres.n_vertices):
        cols = kers[i].transpose().hstack(ims[i].transpose())
        if not cols.is_invertible():
            raise RuntimeError("Fitting decomposition produced a singular basis")
        qs.append(cols)
        qinvs.append(cols.inverse())
    amaps, bmaps = {}, {}
    for arr in pres.arrows:
        t = pres.vertex_index(arr.target)
        s = pres.vertex_index(arr.source)
        new = qinvs[t] @ m.maps[arr.name] @ qs[s]
        kt, ks = kdims[t], kdims[s]
        if not new.take(range(kt, m.dim[t]), range(0, ks)).is_zero() or not new.take(
            range(0, kt), range(ks, m.dim[s])
        ).is_zero():
            raise RuntimeError("Fitting blocks are not arrow-stable")
        amaps[arr.name] = new.take(range(0, kt), range(0, ks))
        bmaps[arr.name] = new.take(range(kt, m.dim[t]), range(ks, m.dim[s]))
    adim = tuple(kdims)
    bdim = tuple(d - k for d, k in zip(m.dim, kdims))
    return (
        Rep(pres, p, adim, amaps, check=False),
        Rep(pres, p, bdim, bmaps, check=False),
    )


def _sweep(basis):
    for f in basis:
        yield f
    for f, g in combinations(basis, 2):
        yield graded_add(f, g)


def decompose_reps(m: Rep):
    """Indecomposable summands of m (as Reps), via the Fitting sweep."""
    if m.total_dim == 0:
        return []
    basis = end_space(m)
    for phi in _sweep(basis):
        split = fitting_split(m, phi)
        if split is not None:
            a, b = split
            return decompose_reps(a) + decompose_reps(b)
    return [m]


# -- isomorphism testing -----------------------------------------------------


def has_invertible_hom(m: Rep, n: Rep, budget: int = HOM_ENUM_BUDGET) -> bool:
    """Exact search for an isomorphism m -> n by enumerating Hom(m, n).

    Sound and complete within the budget; raises BudgetError beyond it.
    """
    if m.dim != n.dim:
        return False
    if m.total_dim == 0:
        return True
    basis = hom_space(m, n)
    if not basis:
        return False
    for f in basis:
        if graded_is_invertible(f):
            return True
    p = m.p
    h = len(basis)
    if p**h > budget:
        raise BudgetError(
            f"invertible-Hom search needs {p}^{h} combinations (budget {budget})"
        )
    for coeffs in product(range(p), repeat=h):
        f = None
        for c, b in zip(coeffs, basis):
            if c == 0:
                continue
            part = graded_scale(b, c)
            f = part if f is None else graded_add(f, part)
        if f is not None and graded_is_invertible(f):
            return True
    return False


def is_isomorphic(m: Rep, n: Rep, table: "IndecTable | None" = None) -> bool:
    """Isomorphism test: Krull-Schmidt comparison when a catalog is given,
    exact budgeted Hom enumeration otherwise."""
    if m.dim != n.dim:
        return False
    if table is not None:
        return table.decompose(m) == table.decompose(n)
    if hom_dim(m, m) != hom_dim(n, n):
        return False
    return has_invertible_hom(m, n)


def aut_order(m: Rep, budget: int = HOM_ENUM_BUDGET) -> int:
    """|Aut(m)| by exact enumeration of the endomorphism space."""
    if m.total_dim == 0:
        return 1
    basis = end_space(m)
    p = m.p
    h = len(basis)
    if p**h > budget:
        raise BudgetError(f"Aut enumeration needs {p}^{h} elements (budget {budget})")
    count = 0
    for coeffs in product(range(p), repeat=h):
        f = None
        for c, b in zip(coeffs, basis):
            if c == 0:
                continue
            part = graded_scale(b, c)
            f = part if f is None else graded_add(f, part)
        if f is not None and graded_is_invertible(f):
            count += 1
    return count


# -- submodule / quotient coordinates ----------------------------------------


def sub_quotient_from_subspaces(m: Rep, bases):
    """Sub and quotient representations for arrow-stable subspaces.

    `bases` gives, per vertex, an FMatrix whose rows are a basis of the chosen
    subspace.  Returns (sub, quot, incl, proj, sec) where incl (graded,
    sub -> m) and proj (graded, m -> quot) are the canonical maps and sec is a
    graded section of proj (quot coordinates -> m, with proj o sec = id).
    Raises ValueError if the subspaces are not arrow-stable.
    """
    pres, p = m.presentation, m.p
    qs, qinvs, kdims = [], [], []
    for i in range(pres.n_vertices):
        b = bases[i]
        k = b.rows
        kdims.append(k)
        _, red, pivots = b.rref()
        if len(pivots) != k:
            raise ValueError("subspace basis rows are dependent")
        comp = [j for j in range(m.dim[i]) if j not in set(pivots)]
        comp_cols = FMatrix(
            p, tuple(tuple(1 if r == j else 0 for j in comp) for r in range(m.dim[i]))
        ) if comp else FMatrix.zeros(p, m.dim[i], 0)
        q = b.transpose().hstack(comp_cols)
        if not q.is_invertible():
            raise RuntimeError("subspace coordinate change is singular")
        qs.append(q)
        qinvs.append(q.inverse())
    smaps, qmaps = {}, {}
    for arr in pres.arrows:
        t = pres.vertex_index(arr.target)
        s = pres.vertex_index(arr.source)
        new = qinvs[t] @ m.maps[arr.name] @ qs[s]
        kt, ks = kdims[t], kdims[s]
        if not new.take(range(kt, m.dim[t]), range(0, ks)).is_zero():
            raise ValueError("subspaces are not arrow-stable")
        smaps[arr.name] = new.take(range(0, kt), range(0, ks))
        qmaps[arr.name] = new.take(range(kt, m.dim[t]), range(ks, m.dim[s]))
    sdim = tuple(kdims)
    qdim = tuple(d - k for d, k in zip(m.dim, kdims))
    sub = Rep(pres, p, sdim, smaps, check=False)
    quot = Rep(pres, p, qdim, qmaps, check=False)
    incl = tuple(qs[i].take(range(m.dim[i]), range(0, kdims[i])) for i in range(pres.n_vertices))
    proj = tuple(
        qinvs[i].take(range(kdims[i], m.dim[i]), range(m.dim[i]))
        for i in range(pres.n_vertices)
    )
    sec = tuple(
        qs[i].take(range(m.dim[i]), range(kdims[i], m.dim[i]))
        for i in range(pres.n_vertices)
    )
    return sub, quot, incl, proj, sec


# -- iso classes --------------------------------------------------------------


@dataclass(frozen=True)
class IsoClass:
    """A finite multiset of indecomposable labels (one iso class of modules)."""

    parts: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted((str(l), int(m)) for l, m in self.parts if m))
        if any(m < 0 for _, m in cleaned):
            raise ValueError("negative multiplicity")
        if len({l for l, _ in cleaned}) != len(cleaned):
            raise ValueError("duplicate label in parts")
        object.__setattr__(self, "parts", cleaned)

    @staticmethod
    def zero() -> "IsoClass":
        return IsoClass(())

    @staticmethod
    def of(label: str, mult: int = 1) -> "IsoClass":
        return IsoClass(((label, mult),))

    @staticmethod
    def from_counts(counts) -> "IsoClass":
        return IsoClass(tuple(counts.items() if hasattr(counts, "items") else counts))

    @property
    def gamma(self) -> int:
        """Number of indecomposable summands, counted with multiplicity."""
        return sum(m for _, m in self.parts)

    def is_zero(self) -> bool:
        return not self.parts

    def union(self, other: "IsoClass") -> "IsoClass":
        counts: dict[str, int] = dict(self.parts)
        for l, m in other.parts:
            counts[l] = counts.get(l, 0) + m
        return IsoClass(tuple(counts.items()))

    def splittings(self):
        """All ordered pairs (left, right) with left + right = self."""
        labels = [l for l, _ in self.parts]
        mults = [m for _, m in self.parts]
        for choice in product(*(range(m + 1) for m in mults)):
            left = IsoClass(tuple((l, k) for l, k in zip(labels, choice) if k))
            right = IsoClass(
                tuple((l, m - k) for l, m, k in zip(labels, mults, choice) if m - k)
            )
            yield left, right

    def __str__(self):
        if not self.parts:
            return "0"
        return "+".join(l if m == 1 else f"{m}*{l}" for l, m in self.parts)

    @staticmethod
    def parse(text: str) -> "IsoClass":
        """Parse '0', 'S1', 'S1+S2', '2*S1+M11' (labels validated elsewhere)."""
        text = text.strip()
        if text == "0":
            return IsoClass.zero()
        counts: dict[str, int] = {}
        for term in text.split("+"):
            term = term.strip()
            if "*" in term:
                mult_s, label = term.split("*", 1)
                try:
                    mult = int(mult_s)
                except ValueError:
                    raise InputError(f"bad multiplicity in class term {term!r}") from None
            else:
                mult, label = 1, term
            label = label.strip()
            if not label or mult <= 0:
                raise InputError(f"bad class term {term!r}")
            counts[label] = counts.get(label, 0) + mult
        return IsoClass(tuple(counts.items()))


# -- catalog building ---------------------------------------------------------


def _point_cost(pres: QuiverPresentation, p: int, d) -> int:
    entries = 0
    for a in pres.arrows:
        entries += d[pres.vertex_index(a.target)] * d[pres.vertex_index(a.source)]
    return p**entries


def _iter_points(pres: QuiverPresentation, p: int, d):
    shapes = []
    for a in pres.arrows:
        t = pres.vertex_index(a.target)
        s = pres.vertex_index(a.source)
        shapes.append((a.name, d[t], d[s]))
    total_entries = sum(r * c for _, r, c in shapes)
    for flat in product(range(p), repeat=total_entries):
        maps = {}
        pos = 0
        for name, r, c in shapes:
            block = tuple(tuple(flat[pos + i * c : pos + (i + 1) * c]) for i in range(r))
            maps[name] = FMatrix(p, block) if r * c else FMatrix.zeros(p, r, c)
            pos += r * c
        yield maps


def _matches_existing(m: Rep, candidates, end_dims) -> bool:
    me = hom_dim(m, m)
    for c, ce in zip(candidates, end_dims):
        if ce == me and has_invertible_hom(m, c):
            return True
    return False


def _proper_sum_filter(found, classes_so_far, pres, p, d):
    """Drop sweep survivors that are in fact isomorphic to a proper direct sum
    of smaller catalogued indecomposables (sweep incompleteness backstop)."""
    if not found:
        return found
    pairs = [(str(i), r.dim) for i, r in enumerate(classes_so_far)]
    sums = []
    for multiset in krull_schmidt_vectors(d, pairs):
        gamma = sum(m for _, m in multiset)
        if gamma < 2:
            continue
        reps = []
        for label, mult in multiset:
            reps.extend([classes_so_far[int(label)]] * mult)
        sums.append(direct_sum_list(pres, p, reps))
    if not sums:
        return found
    kept = []
    sum_ends = [hom_dim(s, s) for s in sums]
    for m in found:
        me = hom_dim(m, m)
        clash = any(
            se == me and has_invertible_hom(m, s) for s, se in zip(sums, sum_ends)
        )
        if clash:
            warnings.warn(
                f"Fitting sweep missed a split at dimension {d}; "
                "candidate reclassified as decomposable"
            )
        else:
            kept.append(m)
    return kept


def _exhaustive_prime_classes(pres: QuiverPresentation, p: int, dim_bound, point_budget: int):
    cost = sum(_point_cost(pres, p, d) for d in dim_vectors_upto(dim_bound))
    if cost > point_budget:
        raise BudgetError(
            f"exhaustive catalog needs {cost} points at p={p} (budget {point_budget})"
        )
    classes: list[Rep] = []
    for d in dim_vectors_upto(dim_bound):
        if dim_total(d) == 0:
            continue
        found: list[Rep] = []
        found_ends: list[int] = []
        for maps in _iter_points(pres, p, d):
            if not relations_satisfied(pres, p, maps):
                continue
            m = Rep(pres, p, d, maps, check=False)
            if len(decompose_reps(m)) != 1:
                continue
            if _matches_existing(m, found, found_ends):
                continue
            found.append(m)
            found_ends.append(hom_dim(m, m))
        found = _proper_sum_filter(found, classes, pres, p, d)
        classes.extend(found)
    return classes


def _extension_prime_classes(pres: QuiverPresentation, p: int, dim_bound):
    # local import: countkit depends on this module
    from .countkit import ext_cocycle_spaces, glued_rep

    classes: list[Rep] = []
    for d in dim_vectors_upto(dim_bound):
        if dim_total(d) == 0:
            continue
        found: list[Rep] = []
        found_ends: list[int] = []
        pairs = [(str(i), r.dim) for i, r in enumerate(classes)]
        for vi, vname in enumerate(pres.vertices):
            if d[vi] == 0:
                continue
            simple = Rep.simple(pres, p, vname)
            below = tuple(x - (1 if j == vi else 0) for j, x in enumerate(d))
            for multiset in krull_schmidt_vectors(below, pairs):
                reps = []
                for label, mult in multiset:
                    reps.extend([classes[int(label)]] * mult)
                base = direct_sum_list(pres, p, reps)
                space = ext_cocycle_spaces(simple, base)
                if p**space.dim_z > EXT_GLUE_BUDGET:
                    raise BudgetError(
                        f"extension gluing needs {p}^{space.dim_z} candidates"
                    )
                for delta in space.iter_z():
                    m = glued_rep(simple, base, delta)
                    if len(decompose_reps(m)) != 1:
                        continue
                    if _matches_existing(m, found, found_ends):
                        continue
                    found.append(m)
                    found_ends.append(hom_dim(m, m))
        found = _proper_sum_filter(found, classes, pres, p, d)
        classes.extend(found)
    return classes


def _build_prime_classes(pres, p, dim_bound, method, point_budget):
    if method == "auto":
        cost = sum(_point_cost(pres, p, d) for d in dim_vectors_upto(dim_bound))
        method = "exhaustive" if cost <= AUTO_EXHAUSTIVE_POINTS else "extensions"
    if method == "exhaustive":
        return _exhaustive_prime_classes(pres, p, dim_bound, point_budget)
    if method == "extensions":
        return _extension_prime_classes(pres, p, dim_bound)
    raise InputError(f"unknown catalog method {method!r}")


def _canonical_order_and_fingerprints(reps: list[Rep]):
    """Deterministic, prime-independent ordering of indecomposable classes.

    Classes are ordered by (dimension vector lex, dim End) and remaining ties
    are broken by iterated partition refinement on mutual Hom dimensions.
    Unresolvable ties mean two classes are indistinguishable by fingerprint,
    which is a hard error.
    """
    n = len(reps)
    hom = [[hom_dim(reps[i], reps[j]) for j in range(n)] for i in range(n)]
    keys = [(reps[i].dim, hom[i][i]) for i in range(n)]
    while True:
        refined = []
        for i in range(n):
            sig = tuple(sorted((keys[j], hom[i][j], hom[j][i]) for j in range(n)))
            refined.append((keys[i], sig))
        old_groups = sorted(
            tuple(sorted(j for j in range(n) if keys[j] == k)) for k in set(keys)
        )
        new_groups = sorted(
            tuple(sorted(j for j in range(n) if refined[j] == k)) for k in set(refined)
        )
        keys = refined
        if new_groups == old_groups:
            break
    order = sorted(range(n), key=lambda i: keys[i])
    for a, b in zip(order, order[1:]):
        if keys[a] == keys[b]:
            raise FingerprintCollisionError(
                f"classes with dimension vectors {reps[a].dim} and {reps[b].dim} "
                "are indistinguishable by fingerprint; input is outside the "
                "validated envelope"
            )
    fingerprints = []
    for pos, i in enumerate(order):
        profile = tuple(
            (hom[i][order[j]], hom[order[j]][i]) for j in range(pos)
        )
        fingerprints.append((reps[i].dim, hom[i][i], profile))
    return order, fingerprints


def _default_labels(pres: QuiverPresentation, dims):
    """Label simples 'S<vertex>'; everything else 'M<dims>' with letter
    suffixes when several classes share a dimension vector."""
    labels = []
    by_dim: dict[tuple, int] = {}
    for d in dims:
        by_dim[d] = by_dim.get(d, 0) + 1
    seen: dict[tuple, int] = {}
    for d in dims:
        unit = [i for i, x in enumerate(d) if x]
        if sum(d) == 1:
            labels.append(f"S{pres.vertices[unit[0]]}")
            continue
        if max(d) > 9:
            body = "_".join(str(x) for x in d)
        else:
            body = "".join(str(x) for x in d)
        if by_dim[d] > 1:
            idx = seen.get(d, 0)
            seen[d] = idx + 1
            body += chr(ord("a") + idx)
        labels.append(f"M{body}")
    return labels


@dataclass
class IndecClass:
    label: str
    dim: tuple
    dim_end: int
    fingerprint: tuple
    reps: dict  # prime -> Rep


class IndecTable:
    """Catalog of indecomposable classes up to a dimension bound, per prime.

    Labels and fingerprints are computed once (from the first prime built) and
    every further prime must reproduce them exactly, otherwise the input is
    outside the validated envelope and a hard error is raised.
    """

    def __init__(self, presentation: QuiverPresentation, dim_bound, method: str = "auto",
                 point_budget: int = EXHAUSTIVE_POINT_BUDGET):
        self.presentation = presentation
        self.dim_bound = tuple(dim_bound)
        self.method = method
        self.point_budget = point_budget
        self._classes: list[IndecClass] = []
        self._by_label: dict[str, IndecClass] = {}
        self._primes: list[int] = []
        self._decompose_cache: dict[tuple[int, tuple], IsoClass] = {}
        self._label_cache: dict[tuple[int, tuple], str] = {}
        self._aut_cache: dict[tuple[IsoClass, int], int] = {}
        self.cache: dict = {}  # cross-layer memoization slot (counts etc.)

    # -- construction

    @classmethod
    def build(cls, presentation, dim_bound, primes=(), method: str = "auto") -> "IndecTable":
        table = cls(presentation, dim_bound, method=method)
        for p in primes:
            table.ensure_prime(p)
        return table

    def ensure_prime(self, p: int) -> None:
        if p in self._primes:
            return
        if p in self.presentation.excluded_primes():
            raise InputError(
                f"prime {p} is excluded by the relation coefficients"
            )
        reps = _build_prime_classes(
            self.presentation, p, self.dim_bound, self.method, self.point_budget
        )
        order, fingerprints = _canonical_order_and_fingerprints(reps)
        ordered = [reps[i] for i in order]
        if not self._primes:
            labels = _default_labels(self.presentation, [r.dim for r in ordered])
            for label, rep, fp in zip(labels, ordered, fingerprints):
                rec = IndecClass(label, rep.dim, fp[1], fp, {p: rep})
                self._classes.append(rec)
                self._by_label[label] = rec
            self._absolute_indecomposability_diagnostic(p)
        else:
            if len(ordered) != len(self._classes) or [
                fp for fp in fingerprints
            ] != [c.fingerprint for c in self._classes]:
                raise CrossPrimeMismatchError(
                    f"catalog at p={p} does not match the catalog at "
                    f"p={self._primes[0]} class-by-class"
                )
            for rec, rep in zip(self._classes, ordered):
                rec.reps[p] = rep
        self._primes.append(p)

    def _absolute_indecomposability_diagnostic(self, p: int) -> None:
        # |End| - |Aut| = |rad End| is a p-power for local End; the residue
        # division ring F_{p^r} has r = dim End - dim rad, and r > 1 means the
        # class may split after base change (labels then need not transfer)
        for rec in self._classes:
            try:
                aut = aut_order(rec.reps[p])
            except BudgetError:
                continue
            nonunits = p**rec.dim_end - aut
            r = rec.dim_end
            if nonunits > 0:
                k = 0
                while nonunits % p == 0:
                    nonunits //= p
                    k += 1
                if nonunits != 1:
                    raise CrossPrimeMismatchError(
                        f"End({rec.label}) is not local at p={p}"
                    )
                r = rec.dim_end - k
            if r != 1:
                warnings.warn(
                    f"class {rec.label} is not absolutely indecomposable "
                    f"(residue field F_{p}^{r}); cross-prime labels may be "
                    "unsound for this input"
                )

    # -- queries

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(self._primes)

    @property
    def classes(self) -> list[IndecClass]:
        self._ensure_built()
        return self._classes

    def _ensure_built(self):
        if not self._primes:
            # labels exist once a catalog has been built at some prime
            excluded = self.presentation.excluded_primes()
            self.ensure_prime(next(p for p in DEFAULT_PRIMES if p not in excluded))

    def labels(self) -> list[str]:
        self._ensure_built()
        return [c.label for c in self.classes]

    def indecomposable_dims(self):
        self._ensure_built()
        return [(c.label, c.dim) for c in self.classes]

    def class_of(self, label: str) -> IndecClass:
        self._ensure_built()
        try:
            return self._by_label[label]
        except KeyError:
            raise InputError(f"unknown class label {label!r}") from None

    def rep(self, label: str, p: int) -> Rep:
        self.ensure_prime(p)
        return self.class_of(label).reps[p]

    def dim_of(self, iso: IsoClass):
        d = zero_dim(self.presentation.n_vertices)
        for label, mult in iso.parts:
            cd = self.class_of(label).dim
            d = dim_add(d, tuple(x * mult for x in cd))
        return d

    def rep_of(self, iso: IsoClass, p: int) -> Rep:
        self.ensure_prime(p)
        reps = []
        for label, mult in iso.parts:
            reps.extend([self.rep(label, p)] * mult)
        return direct_sum_list(self.presentation, p, reps)

    def iso_classes(self, d) -> list[IsoClass]:
        """All iso classes with dimension vector d, via Krull-Schmidt multisets."""
        return [IsoClass(ms) for ms in krull_schmidt_vectors(d, self)]

    def validate_iso(self, iso: IsoClass) -> IsoClass:
        for label, _ in iso.parts:
            self.class_of(label)
        return iso

    # -- decomposition against the catalog

    def _label_of_indec(self, m: Rep) -> str:
        key = (m.p, m.key)
        hit = self._label_cache.get(key)
        if hit is not None:
            return hit
        me = hom_dim(m, m)
        for rec in self.classes:
            if rec.dim != m.dim or rec.dim_end != me:
                continue
            if has_invertible_hom(m, rec.reps[m.p]):
                self._label_cache[key] = rec.label
                return rec.label
        raise CatalogIncompleteError(
            f"indecomposable of dimension {m.dim} (dim End {me}) matches no "
            f"catalogued class; raise the dimension bound {self.dim_bound}"
        )

    def decompose(self, m: Rep) -> IsoClass:
        """Krull-Schmidt class of an arbitrary representation."""
        self.ensure_prime(m.p)
        key = (m.p, m.key)
        hit = self._decompose_cache.get(key)
        if hit is not None:
            return hit
        counts: dict[str, int] = {}
        for summand in decompose_reps(m):
            label = self._label_of_indec(summand)
            counts[label] = counts.get(label, 0) + 1
        iso = IsoClass(tuple(counts.items()))
        self._decompose_cache[key] = iso
        return iso

    def aut_order_of(self, iso: IsoClass, p: int) -> int:
        key = (iso, p)
        hit = self._aut_cache.get(key)
        if hit is None:
            hit = aut_order(self.rep_of(iso, p))
            self._aut_cache[key] = hit
        return hit

    # -- export

    def export(self, primes=None):
        """JSON-ready list of classes sorted by label."""
        ps = list(primes) if primes is not None else list(self._primes)
        for p in ps:
            self.ensure_prime(p)
        out = []
        for rec in sorted(self.classes, key=lambda c: c.label):
            item = {
                "label": rec.label,
                "dim": list(rec.dim),
                "dim_end": rec.dim_end,
                "fingerprint": {
                    "dim": list(rec.dim),
                    "dim_end": rec.dim_end,
                    "hom_profile": [list(pair) for pair in rec.fingerprint[2]],
                },
                "reps": {
                    str(p): {
                        a.name: [list(row) for row in rec.reps[p].maps[a.name].data]
                        for a in self.presentation.arrows
                    }
                    for p in ps
                },
            }
            out.append(item)
        return out


def catalog_indecomposables(
    presentation: QuiverPresentation, prime: int, dim_bound, method: str = "auto"
) -> IndecTable:
    """Build the indecomposable catalog at one prime."""
    return IndecTable.build(presentation, dim_bound, primes=(prime,), method=method)


def orbit_count_identity(table: IndecTable, p: int, d) -> tuple[int, int]:
    """(sum over classes of |G_d|/|Aut|, |E_d(F_p)|) for one dimension vector.

    The two numbers agree exactly when the catalog is complete at d; the
    second is computed by brute-force point enumeration, so keep d small.
    """
    table.ensure_prime(p)
    pres = table.presentation
    gd = 1
    for di in d:
        gd *= gl_order(di, p)
    total = 0
    for iso in table.iso_classes(d):
        a = table.aut_order_of(iso, p)
        assert gd % a == 0
        total += gd // a
    points = 0
    for maps in _iter_points(pres, p, d):
        if relations_satisfied(pres, p, maps):
            points += 1
    return total, points
