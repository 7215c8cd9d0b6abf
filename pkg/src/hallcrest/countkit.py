"""Counting kernels over F_p.

Everything the polynomial layer interpolates is counted here at a single
prime: arrow-stable submodules, filtrations with prescribed subquotients, and
extensions with a prescribed middle term (via cocycle spaces).  The module
also houses the two exact-sequence constructions used by the functional
equation checks: the mono/epi factorization search and the pushout/pullback
splice with full exactness verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import BudgetError, CatalogBoundError, InputError, InternalCheckError
from .gfarith import FMatrix, PrimeField, enumerate_subspaces, solve_matrix
from .quiverlab import dim_add, dim_leq, dim_sub, path_matrix_raw
from .repcore import (
    HOM_ENUM_BUDGET,
    IndecTable,
    IsoClass,
    Rep,
    _hom_system,
    _unflatten,
    direct_sum,
    graded_compose,
    hom_dim,
    hom_space,
    is_module_map,
    sub_quotient_from_subspaces,
)

EXT_ENUM_BUDGET = 200_000  # max p^dim(Z) for middle-term distributions


# -- submodules ----------------------------------------------------------------


@dataclass
class SubmodulePoint:
    """One arrow-stable graded subspace of an ambient representation.

    incl: sub -> ambient, proj: ambient -> quot, sec: section of proj.
    """

    ambient: Rep
    bases: tuple
    sub: Rep
    quot: Rep
    incl: tuple
    proj: tuple
    sec: tuple


def _arrow_stable(x: Rep, bases) -> bool:
    pres = x.presentation
    for a in pres.arrows:
        t = pres.vertex_index(a.target)
        s = pres.vertex_index(a.source)
        bs, bt = bases[s], bases[t]
        if bs.rows == 0:
            continue
        img = bs @ x.maps[a.name].transpose()  # rows = images of basis vectors
        if bt.rows == 0:
            if not img.is_zero():
                return False
        elif bt.vstack(img).rank != bt.rows:
            return False
    return True


def submodules(x: Rep, d1) -> list[SubmodulePoint]:
    """All arrow-stable graded subspaces of x with dimension vector d1."""
    d1 = tuple(int(v) for v in d1)
    if len(d1) != len(x.dim) or any(v < 0 or v > m for v, m in zip(d1, x.dim)):
        raise InputError(f"submodule dimension {d1} not within {x.dim}")
    per_vertex = [
        list(enumerate_subspaces(x.dim[i], d1[i], x.p)) for i in range(len(d1))
    ]
    out = []
    for bases in product(*per_vertex):
        if not _arrow_stable(x, bases):
            continue
        sub, quot, incl, proj, sec = sub_quotient_from_subspaces(x, bases)
        out.append(SubmodulePoint(x, tuple(bases), sub, quot, incl, proj, sec))
    return out


def _rational_rank(rows) -> int:
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    rank = 0
    for col in range(len(m[0])):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                c = m[r][col]
                m[r] = [a - c * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def iso_classifier(table: IndecTable, p: int, d):
    """Classify dimension-d representations by their Hom-dimension profile.

    The profile of M is (dim Hom(N, M)) over catalogued indecomposables N with
    dim N <= d; it is additive in M, so it separates all classes of dimension d
    exactly when the matrix of profiles between those indecomposables is
    nonsingular over the rationals.  That condition is checked here, once per
    (prime, d); when it fails (or d is outside the catalog bound) the result is
    None and callers fall back to full decomposition.  Each classification then
    costs a handful of small Hom solves instead of a Fitting split cascade.
    """
    d = tuple(int(v) for v in d)
    key = ("classifier", p, d)
    if key in table.cache:
        return table.cache[key]
    table.ensure_prime(p)
    out = None
    try:
        candidates = table.iso_classes(d)
    except CatalogBoundError:
        candidates = None
    if candidates is not None:
        probes = [c for c in table.classes if any(c.dim) and dim_leq(c.dim, d)]
        h = {
            (a.label, b.label): hom_dim(a.reps[p], b.reps[p])
            for a in probes
            for b in probes
        }
        matrix = [[h[(a.label, b.label)] for b in probes] for a in probes]
        if _rational_rank(matrix) == len(probes):
            vecs = {}
            for cand in candidates:
                vec = tuple(
                    sum(h[(a.label, lbl)] * m for lbl, m in cand.parts)
                    for a in probes
                )
                if vec in vecs:
                    raise InternalCheckError("Hom profiles collide despite full rank")
                vecs[vec] = cand
            probe_reps = tuple(c.reps[p] for c in probes)

            def classify(rep, _probes=probe_reps, _vecs=vecs):
                profile = tuple(hom_dim(q, rep) for q in _probes)
                try:
                    return _vecs[profile]
                except KeyError:
                    raise InternalCheckError(
                        "Hom profile matches no catalogued class"
                    ) from None

            out = classify
    table.cache[key] = out
    return out


def filtration_distribution(x: Rep, d1, table: IndecTable):
    """Counts of two-step filtrations of x, grouped by (sub class, quot class).

    One submodule sweep serves every (sub, quot) pair of this shape, so the
    result is cached on the table.
    """
    table.ensure_prime(x.p)
    d1 = tuple(int(v) for v in d1)
    key = ("filtdist", x.p, x.key, d1)
    hit = table.cache.get(key)
    if hit is not None:
        return hit
    cls_sub = iso_classifier(table, x.p, d1)
    cls_quot = iso_classifier(table, x.p, dim_sub(x.dim, d1))
    dist: dict[tuple[IsoClass, IsoClass], int] = {}
    for pt in submodules(x, d1):
        pair = (
            cls_sub(pt.sub) if cls_sub else table.decompose(pt.sub),
            cls_quot(pt.quot) if cls_quot else table.decompose(pt.quot),
        )
        dist[pair] = dist.get(pair, 0) + 1
    table.cache[key] = dist
    return dist


def count_filtrations(classes, x: Rep, table: IndecTable) -> int:
    """Number of chains 0 = M_0 <= M_1 <= ... <= M_r = x over F_p with
    M_i / M_{i-1} in classes[i-1].  classes[0] sits at the bottom."""
    classes = list(classes)
    want = x.dim
    got = tuple(0 for _ in want)
    for c in classes:
        got = dim_add(got, table.dim_of(c))
    if got != want:
        raise InputError(
            f"filtration classes sum to dimension {got}, ambient has {want}"
        )
    return _count_filtrations(tuple(classes), x, table)


def _count_filtrations(classes, x, table):
    r = len(classes)
    if r == 0:
        return 1
    if r == 1:
        return 1 if table.decompose(x) == classes[0] else 0
    if r == 2:
        dist = filtration_distribution(x, table.dim_of(classes[0]), table)
        return dist.get((classes[0], classes[1]), 0)
    key = ("filtchain", x.p, classes, x.key)
    hit = table.cache.get(key)
    if hit is not None:
        return hit
    total = 0
    d1 = table.dim_of(classes[0])
    for pt in submodules(x, d1):
        if table.decompose(pt.sub) != classes[0]:
            continue
        total += _count_filtrations(classes[1:], pt.quot, table)
    table.cache[key] = total
    return total


# -- extensions ----------------------------------------------------------------
# Ext^1(quot, sub) classifies 0 -> sub -> E -> quot -> 0.  A cocycle is a
# per-arrow matrix tuple delta; the glued representation puts sub coordinates
# first, with arrow maps [[sub_a, delta_a], [0, quot_a]].


def _delta_shapes(quot: Rep, sub: Rep):
    pres = quot.presentation
    out = []
    for a in pres.arrows:
        t = pres.vertex_index(a.target)
        s = pres.vertex_index(a.source)
        out.append((a.name, sub.dim[t], quot.dim[s]))
    return out


def _unflatten_blocks(p, shapes, vec):
    out = {}
    pos = 0
    for name, r, c in shapes:
        if r * c:
            out[name] = FMatrix(
                p, tuple(tuple(vec[pos + i * c : pos + (i + 1) * c]) for i in range(r))
            )
        else:
            out[name] = FMatrix.zeros(p, r, c)
        pos += r * c
    return out


def _glued_maps(quot: Rep, sub: Rep, delta):
    pres, p = quot.presentation, quot.p
    maps = {}
    for a in pres.arrows:
        t = pres.vertex_index(a.target)
        s = pres.vertex_index(a.source)
        top = sub.maps[a.name].hstack(delta[a.name])
        bot = FMatrix.zeros(p, quot.dim[t], sub.dim[s]).hstack(quot.maps[a.name])
        maps[a.name] = top.vstack(bot)
    return maps


def glued_rep(quot: Rep, sub: Rep, delta) -> Rep:
    """Middle term of the extension determined by a cocycle delta."""
    return Rep(
        quot.presentation,
        quot.p,
        dim_add(sub.dim, quot.dim),
        _glued_maps(quot, sub, delta),
        check=False,
    )


def _relation_values_flat(pres, p, maps):
    field = PrimeField(p)
    out = []
    for rel in pres.relations:
        acc = None
        for coeff, path in rel:
            m = path_matrix_raw(pres, maps, path).scale(field.from_fraction(coeff))
            acc = m if acc is None else acc + m
        out.extend(v for row in acc.data for v in row)
    return out


@dataclass
class CocycleSpace:
    """Z(quot, sub) and its coboundary subspace T(quot, sub)."""

    quot: Rep
    sub: Rep
    shapes: list
    z_basis: list  # each element: arrow name -> FMatrix
    t_basis: list

    @property
    def dim_z(self) -> int:
        return len(self.z_basis)

    @property
    def dim_t(self) -> int:
        return len(self.t_basis)

    @property
    def dim_ext(self) -> int:
        return self.dim_z - self.dim_t

    def zero_delta(self):
        p = self.quot.p
        return {name: FMatrix.zeros(p, r, c) for name, r, c in self.shapes}

    def iter_z(self):
        """Every cocycle, as a delta dict; p^dim_z of them including zero."""
        p = self.quot.p
        for coeffs in product(range(p), repeat=self.dim_z):
            delta = self.zero_delta()
            for c, b in zip(coeffs, self.z_basis):
                if c == 0:
                    continue
                delta = {n: delta[n] + b[n].scale(c) for n in delta}
            yield delta


def ext_cocycle_spaces(quot: Rep, sub: Rep) -> CocycleSpace:
    """Cocycles Z and coboundaries T for extensions of quot by sub.

    Z is cut out by the linear conditions making every relation vanish on the
    glued representation; T is the image of the coboundary map on graded maps
    eta (delta_a = sub_a @ eta_source - eta_target @ quot_a).
    """
    pres, p = quot.presentation, quot.p
    if sub.presentation != pres or sub.p != p:
        raise InputError("cocycle space across presentations or primes")
    shapes = _delta_shapes(quot, sub)
    u_total = sum(r * c for _, r, c in shapes)

    def rel_flat(delta):
        return _relation_values_flat(pres, p, _glued_maps(quot, sub, delta))

    zero = _unflatten_blocks(p, shapes, [0] * u_total)
    if pres.relations and any(rel_flat(zero)):
        raise InternalCheckError("sub or quotient violates the relations")
    if not pres.relations or u_total == 0:
        kernel = FMatrix.identity(p, u_total)
    else:
        cols = []
        for u in range(u_total):
            vec = [0] * u_total
            vec[u] = 1
            cols.append(tuple(rel_flat(_unflatten_blocks(p, shapes, vec))))
        kernel = FMatrix(p, tuple(cols)).transpose().right_kernel()
    z_basis = [_unflatten_blocks(p, shapes, row) for row in kernel.data]

    nv = pres.n_vertices
    eta_shapes = [(i, sub.dim[i], quot.dim[i]) for i in range(nv)]
    h_total = sum(r * c for _, r, c in eta_shapes)
    t_cols = []
    for u in range(h_total):
        vec = [0] * h_total
        vec[u] = 1
        eta = []
        pos = 0
        for _, r, c in eta_shapes:
            eta.append(
                FMatrix(p, tuple(tuple(vec[pos + i * c : pos + (i + 1) * c]) for i in range(r)))
                if r * c
                else FMatrix.zeros(p, r, c)
            )
            pos += r * c
        flat = []
        for a in pres.arrows:
            t = pres.vertex_index(a.target)
            s = pres.vertex_index(a.source)
            d = sub.maps[a.name] @ eta[s] - eta[t] @ quot.maps[a.name]
            flat.extend(v for row in d.data for v in row)
        t_cols.append(tuple(flat))
    if t_cols:
        t_image = FMatrix(p, tuple(t_cols)).transpose().column_space_basis()
    else:
        t_image = FMatrix.zeros(p, 0, u_total)
    t_basis = [_unflatten_blocks(p, shapes, row) for row in t_image.data]
    if h_total - t_image.rows != hom_dim(quot, sub):
        raise InternalCheckError("coboundary kernel disagrees with Hom")
    for tb in t_basis:
        if pres.relations and any(rel_flat(tb)):
            raise InternalCheckError("coboundary outside the cocycle space")
    return CocycleSpace(quot, sub, shapes, z_basis, t_basis)


def ext_distribution(quot: Rep, sub: Rep, table: IndecTable, budget: int = EXT_ENUM_BUDGET):
    """|Ext^1(quot, sub)_X| for every middle-term class X, as a dict.

    Counts cocycles by the iso class of their glued representation and divides
    by |T|; the division is exact because every fibre is a union of T-cosets.
    """
    p = quot.p
    table.ensure_prime(p)
    key = ("extdist", p, quot.key, sub.key)
    hit = table.cache.get(key)
    if hit is not None:
        return hit
    space = ext_cocycle_spaces(quot, sub)
    if p**space.dim_z > budget:
        raise BudgetError(
            f"middle-term distribution needs {p}^{space.dim_z} cocycles (budget {budget})"
        )
    classify = iso_classifier(table, p, dim_add(quot.dim, sub.dim))
    tally: dict[IsoClass, int] = {}
    for delta in space.iter_z():
        glued = glued_rep(quot, sub, delta)
        iso = classify(glued) if classify else table.decompose(glued)
        tally[iso] = tally.get(iso, 0) + 1
    t_size = p**space.dim_t
    dist = {}
    for iso, n in tally.items():
        if n % t_size:
            raise InternalCheckError(
                f"fibration count {n} not divisible by |T| = {t_size}"
            )
        dist[iso] = n // t_size
    table.cache[key] = dist
    return dist


def count_ext_with_middle(
    quot: Rep, sub: Rep, middle: IsoClass, table: IndecTable, budget: int = EXT_ENUM_BUDGET
) -> int:
    """|Ext^1(quot, sub) with middle term in the given class| over F_p."""
    if dim_add(quot.dim, sub.dim) != table.dim_of(middle):
        return 0
    return ext_distribution(quot, sub, table, budget=budget).get(middle, 0)


# -- factorization search ------------------------------------------------------


def _graded_zero_map(src: Rep, dst: Rep):
    return tuple(
        FMatrix.zeros(src.p, dst.dim[i], src.dim[i]) for i in range(len(src.dim))
    )


def _iter_monos(y: Rep, l: Rep, budget: int):
    """Injective module maps y -> l.  Complete within budget; beyond it, a
    deterministic spanning sweep is tried and then BudgetError is raised, so
    exhaustion of this generator without the error means "none exist"."""
    basis = hom_space(y, l)
    if not basis:
        if y.total_dim == 0:
            yield _graded_zero_map(y, l)
        return
    p = y.p

    def is_mono(d):
        return all(d[i].rank == y.dim[i] for i in range(len(y.dim)))

    h = len(basis)
    if p**h <= budget:
        for coeffs in product(range(p), repeat=h):
            d = None
            for c, b in zip(coeffs, basis):
                if c == 0:
                    continue
                part = tuple(m.scale(c) for m in b)
                d = part if d is None else tuple(a + b2 for a, b2 in zip(d, part))
            if d is not None and is_mono(d):
                yield d
        return
    for d in basis:
        if is_mono(d):
            yield d
    for f, g in combinations(basis, 2):
        d = tuple(a + b2 for a, b2 in zip(f, g))
        if is_mono(d):
            yield d
    raise BudgetError(
        f"injective-map search needs {p}^{h} candidates (budget {budget})"
    )


def _solve_epi(l: Rep, x: Rep, y: Rep, d, f, budget: int):
    """A surjective module map c: l -> x with c o d = f, or None.

    Raises BudgetError when the affine solution space is too large to sweep
    exhaustively and no witness was found."""
    p = l.p
    nv = len(l.dim)

    def is_epi(c):
        return all(c[i].rank == x.dim[i] for i in range(nv))

    system, offsets, u_total = _hom_system(l, x)
    if u_total == 0:
        c = _graded_zero_map(l, x)
        if graded_compose(c, d) == tuple(f) and is_epi(c):
            return c
        return None
    comp_rows = []
    rhs = []
    for i in range(nv):
        for a in range(x.dim[i]):
            for b in range(y.dim[i]):
                row = [0] * u_total
                for k in range(l.dim[i]):
                    row[offsets[i] + a * l.dim[i] + k] = d[i].data[k][b]
                comp_rows.append(tuple(row))
                rhs.append(f[i].data[a][b])
    if comp_rows:
        full = system.vstack(FMatrix(p, tuple(comp_rows)))
    else:
        full = system
    if full.rows == 0:
        flat_part = (0,) * u_total
        kernel = FMatrix.identity(p, u_total)
    else:
        b_col = FMatrix(
            p, tuple((0,) for _ in range(system.rows)) + tuple((v,) for v in rhs)
        )
        part = solve_matrix(full, b_col)
        if part is None:
            return None
        flat_part = tuple(part.data[k][0] for k in range(u_total))
        kernel = full.right_kernel()

    def candidate(flat):
        return _unflatten(l, x, offsets, flat)

    first = candidate(flat_part)
    if is_epi(first):
        return first
    kn = kernel.rows
    if p**kn <= budget:
        for coeffs in product(range(p), repeat=kn):
            if not any(coeffs):
                continue
            flat = list(flat_part)
            for c, row in zip(coeffs, kernel.data):
                if c == 0:
                    continue
                flat = [(a + c * b) % p for a, b in zip(flat, row)]
            cmap = candidate(tuple(flat))
            if is_epi(cmap):
                return cmap
        return None
    for row in kernel.data:
        cmap = candidate(tuple((a + b) % p for a, b in zip(flat_part, row)))
        if is_epi(cmap):
            return cmap
    for r1, r2 in combinations(kernel.data, 2):
        cmap = candidate(
            tuple((a + b + c) % p for a, b, c in zip(flat_part, r1, r2))
        )
        if is_epi(cmap):
            return cmap
    raise BudgetError(
        f"surjection search needs {p}^{kn} candidates (budget {budget})"
    )


def factorization_exists(
    f, y: Rep, x: Rep, table: IndecTable, budget: int = HOM_ENUM_BUDGET
) -> bool:
    """Does f: y -> x factor as (mono into L) followed by (epi onto x), over
    some L with dim L = dim y + dim x - dim(im f)?

    Searches every catalogued iso class of the forced dimension vector.  A
    found witness is definitive; "no witness" is only returned when every
    enumeration ran to completion, otherwise BudgetError is raised.
    """
    if y.presentation != x.presentation or y.p != x.p:
        raise InputError("factorization across presentations or primes")
    if not is_module_map(y, x, f):
        raise InputError("f is not a module homomorphism")
    p = y.p
    table.ensure_prime(p)
    target = tuple(
        y.dim[i] + x.dim[i] - f[i].rank for i in range(len(y.dim))
    )
    refused = False
    for iso in table.iso_classes(target):
        l = table.rep_of(iso, p)
        try:
            for d in _iter_monos(y, l, budget):
                try:
                    c = _solve_epi(l, x, y, d, f, budget)
                except BudgetError:
                    refused = True
                    continue
                if c is not None:
                    return True
        except BudgetError:
            refused = True
    if refused:
        raise BudgetError(
            "factorization search exhausted its budget without a witness"
        )
    return False


# -- pushout/pullback splice ---------------------------------------------------


@dataclass
class SpliceResult:
    """Verified four-term exact sequence 0 -> T -> Y -> X -> A/S -> 0."""

    y: Rep
    x: Rep
    f: tuple  # graded map y -> x
    modules: tuple  # (T, Y, X, A/S)
    maps: tuple  # (T -> Y, Y -> X, X -> A/S)


def _graded_rank(f):
    return tuple(m.rank for m in f)


def _check_column(sub: Rep, mid: Rep, quot: Rep, mono, epi, what: str):
    if not is_module_map(sub, mid, mono):
        raise InputError(f"{what}: injection is not a module map")
    if not is_module_map(mid, quot, epi):
        raise InputError(f"{what}: surjection is not a module map")
    if _graded_rank(mono) != sub.dim:
        raise InputError(f"{what}: injection is not injective")
    if _graded_rank(epi) != quot.dim:
        raise InputError(f"{what}: surjection is not surjective")
    if any(not m.is_zero() for m in graded_compose(epi, mono)):
        raise InputError(f"{what}: composite is nonzero")
    if mid.dim != dim_add(sub.dim, quot.dim):
        raise InputError(f"{what}: middle dimension is not sub + quot")


def splice_pushout_pullback(
    s_in_a: SubmodulePoint,
    t_in_b: SubmodulePoint,
    bprime: Rep,
    e1,
    e3,
    aprime: Rep,
    e2,
    e4,
) -> SpliceResult:
    """Splice two short exact columns into one four-term exact sequence.

    Inputs: S <= A and T <= B as submodule points, plus exact columns
    0 -> T -e1-> B' -e3-> S -> 0 and 0 -> B/T -e2-> A' -e4-> A/S -> 0.
    Y is the pushout (B + B')/{(t, -e1 t)}, X is the pullback
    {(a, a') : q_S a = e4 a'}, and f[b + b'] = (u_S e3 b', e2 q_T b).
    Exactness of 0 -> T -> Y -> X -> A/S -> 0 is verified by rank counts and
    any failure is an internal error.
    """
    a_amb, s_sub = s_in_a.ambient, s_in_a.sub
    b_amb, t_sub = t_in_b.ambient, t_in_b.sub
    pres, p = a_amb.presentation, a_amb.p
    for r in (b_amb, bprime, aprime):
        if r.presentation != pres or r.p != p:
            raise InputError("splice inputs across presentations or primes")
    _check_column(t_sub, bprime, s_sub, e1, e3, "first column")
    _check_column(t_in_b.quot, aprime, s_in_a.quot, e2, e4, "second column")
    nv = pres.n_vertices

    # pushout Y = (B + B') / image of t |-> (u_T t, -e1 t)
    amb_b = direct_sum(b_amb, bprime)
    w_map = tuple(t_in_b.incl[i].vstack(-e1[i]) for i in range(nv))
    w_bases = tuple(m.column_space_basis() for m in w_map)
    w_sub, y, _, proj_y, sec_y = sub_quotient_from_subspaces(amb_b, w_bases)
    if w_sub.dim != t_sub.dim:
        raise InternalCheckError("pushout relation subspace has wrong dimension")

    # pullback X = kernel of (a, a') |-> q_S a - e4 a' inside A + A'
    amb_x = direct_sum(a_amb, aprime)
    g = tuple(s_in_a.proj[i].hstack(-e4[i]) for i in range(nv))
    x_bases = tuple(m.right_kernel() for m in g)
    x, _, incl_x, _, _ = sub_quotient_from_subspaces(amb_x, x_bases)

    # f on ambient coordinates: (b, b') |-> (u_S e3 b', e2 q_T b)
    big_f = []
    for i in range(nv):
        top = FMatrix.zeros(p, a_amb.dim[i], b_amb.dim[i]).hstack(
            s_in_a.incl[i] @ e3[i]
        )
        bot = (e2[i] @ t_in_b.proj[i]).hstack(
            FMatrix.zeros(p, aprime.dim[i], bprime.dim[i])
        )
        big_f.append(top.vstack(bot))
    big_f = tuple(big_f)
    if any(not m.is_zero() for m in graded_compose(big_f, w_map)):
        raise InternalCheckError("splice map does not kill the pushout relations")
    f = []
    for i in range(nv):
        sol = solve_matrix(incl_x[i], big_f[i] @ sec_y[i])
        if sol is None:
            raise InternalCheckError("splice map does not land in the pullback")
        f.append(sol)
    f = tuple(f)

    # boundary maps of the four-term sequence
    incl_b = tuple(
        FMatrix.identity(p, b_amb.dim[i]).vstack(
            FMatrix.zeros(p, bprime.dim[i], b_amb.dim[i])
        )
        for i in range(nv)
    )
    g0 = graded_compose(proj_y, graded_compose(incl_b, t_in_b.incl))
    proj_a = tuple(
        FMatrix.identity(p, a_amb.dim[i]).hstack(
            FMatrix.zeros(p, a_amb.dim[i], aprime.dim[i])
        )
        for i in range(nv)
    )
    g2 = graded_compose(s_in_a.proj, graded_compose(proj_a, incl_x))

    for name, src, dst, mp in (
        ("T -> Y", t_sub, y, g0),
        ("Y -> X", y, x, f),
        ("X -> A/S", x, s_in_a.quot, g2),
    ):
        if not is_module_map(src, dst, mp):
            raise InternalCheckError(f"splice map {name} is not a module map")

    r0, r1, r2 = _graded_rank(g0), _graded_rank(f), _graded_rank(g2)
    for i in range(nv):
        ok = (
            r0[i] == t_sub.dim[i]
            and r1[i] == y.dim[i] - t_sub.dim[i]
            and r2[i] == x.dim[i] - r1[i]
            and r2[i] == s_in_a.quot.dim[i]
        )
        if not ok:
            raise InternalCheckError(f"splice sequence not exact at vertex {i}")
    if any(not m.is_zero() for m in graded_compose(f, g0)):
        raise InternalCheckError("splice composite T -> X is nonzero")
    if any(not m.is_zero() for m in graded_compose(g2, f)):
        raise InternalCheckError("splice composite Y -> A/S is nonzero")

    return SpliceResult(
        y=y,
        x=x,
        f=f,
        modules=(t_sub, y, x, s_in_a.quot),
        maps=(g0, f, g2),
    )
