"""Affine semigroup engine: membership, saturation, weak normalization,
pure-inseparability index, F-nilpotency verdicts and Frobenius-test-exponent
bounds.

Geometry is exact throughout: integer lattices are handled through Smith
normal form with verified unimodular transforms, cone facets come from a
rank-(r-1) subset sweep of the generators, and all arithmetic uses Python
integers (no wraparound is possible).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import (
    BasisNotClosed,
    CapExceeded,
    DimensionCapExceeded,
    NotFNilpotentRing,
)

Vector = tuple[int, ...]

DIMENSION_CAP = 4
DEFAULT_E_MAX = 12
DEFAULT_BOX_FACTOR = 3


# -- integer matrices --------------------------------------------------------


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _mat_mul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def _det(m) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclass
class IntMatrixNF:
    """Smith normal form with transforms: U * M * V = D, U and V unimodular."""

    original: list[list[int]]
    U: list[list[int]]
    V: list[list[int]]
    D: list[list[int]]
    rank: int

    def __post_init__(self):
        assert _mat_mul(_mat_mul(self.U, self.original), self.V) == self.D
        assert abs(_det(self.U)) == 1
        assert abs(_det(self.V)) == 1

    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def smith_normal_form(M: Sequence[Sequence[int]]) -> IntMatrixNF:
    """Smith normal form over the integers with transform tracking."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    D = [list(map(int, row)) for row in M]
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row dst += c * row src
        D[dst] = [a + c * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in D:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(rows, cols):
        # pick the smallest nonzero entry of the trailing submatrix as pivot
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if D[t][t] < 0:
            negate_row(t)
        # clear the pivot row and column; restart if a remainder appears
        dirty = False
        for i in range(t + 1, rows):
            if D[i][t] != 0:
                q = D[i][t] // D[t][t]
                add_row(t, i, -q)
                if D[i][t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if D[t][j] != 0:
                q = D[t][j] // D[t][t]
                add_col(t, j, -q)
                if D[t][j] != 0:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility: d_t must divide every remaining entry
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % D[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1
    rank = sum(1 for i in range(min(rows, cols)) if D[i][i] != 0)
    return IntMatrixNF([list(map(int, row)) for row in M], U, V, D, rank)


def solve_integer(nf: IntMatrixNF, b: Sequence[int]) -> Optional[list[int]]:
    """An integer solution x of (original) * x = b, or None."""
    rows = len(nf.original)
    cols = len(nf.original[0]) if rows else 0
    ub = [sum(nf.U[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        d = nf.D[i][i] if i < min(rows, cols) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    return [sum(nf.V[i][k] * y[k] for k in range(cols)) for i in range(cols)]


def integer_kernel(rows_: Sequence[Vector]) -> list[Vector]:
    """Primitive integer basis of {x : row . x = 0 for every row}."""
    if not rows_:
        raise ValueError("kernel of an empty system is the whole space; handle upstream")
    n = len(rows_[0])
    nf = smith_normal_form([list(r) for r in rows_])
    out = []
    for j in range(nf.rank, n):
        col = [nf.V[i][j] for i in range(n)]
        g = gcd(*col) if any(col) else 1
        out.append(tuple(c // g for c in col))
    return out


# -- affine semigroups -------------------------------------------------------


def _dot(a: Vector, b: Vector) -> int:
    return sum(x * y for x, y in zip(a, b))


class AffineSemigroup:
    """Finitely generated sub-monoid of N^n, with lattice and cone caches."""

    def __init__(self, generators: Sequence[Sequence[int]]):
        gens = []
        seen = set()
        n = None
        for g in generators:
            v = tuple(int(x) for x in g)
            if n is None:
                n = len(v)
            elif len(v) != n:
                raise ValueError("generators of mixed dimension")
            if any(x < 0 for x in v):
                raise ValueError(f"generator {v} is not in N^n")
            if v == (0,) * n:
                continue
            if v not in seen:
                seen.add(v)
                gens.append(v)
        if not gens:
            raise ValueError("need at least one nonzero generator")
        self.n = n
        self.generators: tuple[Vector, ...] = tuple(sorted(gens))
        self._lattice_nf: Optional[IntMatrixNF] = None  # columns = generators
        self._facets: Optional[list[Vector]] = None
        self._equations: Optional[list[Vector]] = None
        self._sat_points: Optional[set[Vector]] = None
        self._hilbert_basis: Optional[tuple[Vector, ...]] = None
        self._member_cache: dict[Vector, bool] = {}
        self._numerical: Optional[_NumericalData] = None

    def __repr__(self):
        return f"AffineSemigroup(n={self.n}, generators={list(self.generators)})"

    def lattice_nf(self) -> IntMatrixNF:
        """SNF of the matrix whose columns are the generators; used to solve
        lattice membership sum x_j * g_j = v over the integers."""
        if self._lattice_nf is None:
            mat = [[g[i] for g in self.generators] for i in range(self.n)]
            self._lattice_nf = smith_normal_form(mat)
        return self._lattice_nf

    def in_lattice(self, v: Vector) -> bool:
        return solve_integer(self.lattice_nf(), list(v)) is not None

    def in_cone(self, v: Vector) -> bool:
        facets, eqs = cone_geometry(self)
        return all(_dot(w, v) >= 0 for w in facets) and all(_dot(w, v) == 0 for w in eqs)


@dataclass
class _NumericalData:
    """Gap structure of a numerical semigroup (n = 1)."""

    step: int            # gcd of the generators
    reachable: list[bool]
    conductor: int       # of the gcd-reduced semigroup
    frobenius: int       # -1 when the reduced semigroup is all of N

    def contains(self, a: int) -> bool:
        if a < 0 or a % self.step:
            return False
        a //= self.step
        return a >= self.conductor or (a < len(self.reachable) and self.reachable[a])


def _numerical_data(A: AffineSemigroup) -> _NumericalData:
    if A._numerical is not None:
        return A._numerical
    gens = [g[0] for g in A.generators]
    step = gcd(*gens)
    reduced = [g // step for g in gens]
    bound = max(reduced) ** 2 + 1  # Frobenius number of <a,..> is < max^2
    reachable = [False] * (bound + 1)
    reachable[0] = True
    for i in range(bound + 1):
        if reachable[i]:
            for g in reduced:
                if i + g <= bound:
                    reachable[i + g] = True
    gaps = [i for i in range(bound + 1) if not reachable[i]]
    frob = max(gaps) if gaps else -1
    A._numerical = _NumericalData(step, reachable, frob + 1, frob)
    return A._numerical


def frobenius_number(A: AffineSemigroup) -> int:
    """Largest integer not in a gcd-1 numerical semigroup (-1 for N)."""
    if A.n != 1:
        raise ValueError("Frobenius numbers are defined for numerical semigroups")
    data = _numerical_data(A)
    if data.step != 1:
        raise ValueError("generators must have gcd 1")
    return data.frobenius


def membership(A: AffineSemigroup, a: Sequence[int]) -> bool:
    """Is a an N-combination of the generators?  Memoized descent with a
    lattice/cone pre-filter; n = 1 goes through the gap table."""
    v = tuple(int(x) for x in a)
    if len(v) != A.n:
        raise ValueError("dimension mismatch")
    if any(x < 0 for x in v):
        return False
    if A.n == 1:
        return _numerical_data(A).contains(v[0])
    if v == (0,) * A.n:
        return True
    if not A.in_cone(v) or not A.in_lattice(v):
        return False
    return _member_dfs(A, v)


def _member_dfs(A: AffineSemigroup, v: Vector) -> bool:
    cache = A._member_cache
    hit = cache.get(v)
    if hit is not None:
        return hit
    stack = [(v, iter(A.generators))]
    path = {v}
    while stack:
        cur, gens = stack[-1]
        found = None
        for g in gens:
            nxt = tuple(a - b for a, b in zip(cur, g))
            if any(x < 0 for x in nxt):
                continue
            if nxt == (0,) * A.n or cache.get(nxt):
                found = True
                break
            if cache.get(nxt) is False or nxt in path:
                continue
            stack.append((nxt, iter(A.generators)))
            path.add(nxt)
            found = "descend"
            break
        if found is True:
            for node, _ in stack:
                cache[node] = True
            return True
        if found is None:
            cache[cur] = False
            stack.pop()
            path.discard(cur)
    return cache.get(v, False)


def cone_geometry(A: AffineSemigroup) -> tuple[list[Vector], list[Vector]]:
    """(facet inequalities, span equations) of the rational cone of A.

    Facet normals come from rank-(r-1) subsets of the generators whose
    kernel functional is single-signed on all generators; equations cut out
    the linear span when the cone is not full-dimensional.
    """
    if A._facets is not None:
        return A._facets, A._equations
    if A.n > DIMENSION_CAP:
        raise DimensionCapExceeded(f"ambient dimension {A.n} exceeds cap {DIMENSION_CAP}")
    gens = A.generators
    n = A.n
    r = smith_normal_form([list(g) for g in gens]).rank
    equations = integer_kernel(gens) if r < n else []
    facets: list[Vector] = []
    seen_patterns = set()
    for subset in itertools.combinations(range(len(gens)), r - 1):
        sub = [gens[i] for i in subset]
        if sub:
            if smith_normal_form([list(g) for g in sub]).rank != r - 1:
                continue
            kernel = integer_kernel(sub)
        else:
            kernel = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        w = None
        for b in kernel:
            dots = [_dot(b, g) for g in gens]
            if not any(dots):
                continue
            if all(d >= 0 for d in dots):
                w = b
            elif all(d <= 0 for d in dots):
                w = tuple(-x for x in b)
                dots = [-d for d in dots]
            else:
                break
            g0 = gcd(*[d for d in dots if d]) if any(dots) else 1
            pattern = tuple(d // g0 for d in dots)
            if pattern not in seen_patterns:
                seen_patterns.add(pattern)
                gw = gcd(*[x for x in w if x])
                facets.append(tuple(x // gw for x in w))
            break
    facets.sort()
    A._facets = facets
    A._equations = equations
    return facets, equations


def cone_facets(A: AffineSemigroup) -> list[Vector]:
    """Irredundant facet inequalities; span equations are folded in as
    opposite inequality pairs when the cone is not full-dimensional."""
    facets, eqs = cone_geometry(A)
    out = list(facets)
    for w in eqs:
        out.append(w)
        out.append(tuple(-x for x in w))
    return out


def _saturation_points(A: AffineSemigroup, box_factor: int) -> set[Vector]:
    """Nonzero points of group(A) ∩ cone(A) within the enumeration box."""
    bounds = [box_factor * max(g[i] for g in A.generators) for i in range(A.n)]
    pts = set()
    for v in itertools.product(*(range(b + 1) for b in bounds)):
        if v == (0,) * A.n:
            continue
        if A.in_cone(v) and A.in_lattice(v):
            pts.add(v)
    return pts


def _minimal_elements(points: set[Vector], n: int) -> list[Vector]:
    """Points not expressible as a sum of two nonzero points of the set.

    Generators lie in the first orthant, so both summands of a point are
    componentwise below it and the check stays inside the set."""
    out = []
    for v in sorted(points, key=lambda u: (sum(u), u)):
        decomposable = False
        for u in points:
            if u == v or not all(a <= b for a, b in zip(u, v)):
                continue
            if tuple(b - a for a, b in zip(u, v)) in points:
                decomposable = True
                break
        if not decomposable:
            out.append(v)
    return out


def saturation_hilbert_basis(
    A: AffineSemigroup, box_factor: int = DEFAULT_BOX_FACTOR, retries: int = 2
) -> tuple[Vector, ...]:
    """Minimal generating set of the saturation group(A) ∩ cone(A).

    Enumerates lattice-and-cone points in a bounded box, extracts minimal
    elements and verifies that they generate every enumerated point; on
    failure the box is doubled up to `retries` times."""
    if A._hilbert_basis is not None:
        return A._hilbert_basis
    factor = box_factor
    last_error: Optional[BasisNotClosed] = None
    for _ in range(retries + 1):
        points = _saturation_points(A, factor)
        basis = _minimal_elements(points, A.n)
        closure = AffineSemigroup(basis)
        bad = next((v for v in sorted(points) if not membership(closure, v)), None)
        if bad is None:
            A._hilbert_basis = tuple(sorted(basis))
            A._sat_points = points
            return A._hilbert_basis
        last_error = BasisNotClosed(
            f"saturation point {bad} is not generated by the candidate basis "
            f"(box factor {factor})"
        )
        factor *= 2
    raise last_error


# -- eventual p-power membership and pure inseparability ----------------------


@dataclass(frozen=True)
class PMembership:
    """Yes(e_min) / No(lattice certificate) / Undetermined(e_max)."""

    status: str  # "yes" | "no" | "undetermined"
    e: Optional[int] = None
    certificate: Optional[dict] = None


def _face_lattice(A: AffineSemigroup, a: Vector):
    """Generators on the minimal face of cone(A) containing a, given by the
    facets vanishing at a."""
    facets, eqs = cone_geometry(A)
    vanishing = [w for w in facets if _dot(w, a) == 0]
    face_gens = [
        g for g in A.generators if all(_dot(w, g) == 0 for w in vanishing)
    ]
    return vanishing, face_gens


def eventual_p_membership(
    A: AffineSemigroup, a: Sequence[int], p: int, e_max: int = DEFAULT_E_MAX
) -> PMembership:
    """Decide whether p^e * a lands in A for some e.

    Phase 1 is a lattice obstruction: any N-combination representing
    p^e * a can only use generators on the minimal face containing a, so
    the order of a modulo the face lattice must be a power of p.  Phase 2
    searches exponents up to e_max."""
    v = tuple(int(x) for x in a)
    if v == (0,) * A.n:
        return PMembership("yes", 0)
    vanishing, face_gens = _face_lattice(A, v)
    order = _torsion_order(face_gens, v, A.n)
    if order is None or any(_prime_not(order, p)):
        cert = {
            "vanishing_facets": [list(w) for w in vanishing],
            "face_generators": [list(g) for g in face_gens],
            "torsion_order": order,
        }
        return PMembership("no", certificate=cert)
    for e in range(e_max + 1):
        q = p**e
        if membership(A, tuple(q * x for x in v)):
            return PMembership("yes", e)
    return PMembership("undetermined", e=e_max)


def _prime_not(order: int, p: int):
    # yields a truthy value when order has a prime factor other than p
    m = order
    while m % p == 0:
        m //= p
    if m != 1:
        yield m


def _torsion_order(face_gens: list[Vector], a: Vector, n: int) -> Optional[int]:
    """Order of a in (L + Za)/L for L the lattice of the face generators;
    None when the order is infinite."""
    if not face_gens:
        return None
    mat = [[g[i] for g in face_gens] for i in range(n)]
    nf = smith_normal_form(mat)
    rows = n
    ua = [sum(nf.U[i][k] * a[k] for k in range(rows)) for i in range(rows)]
    m = 1
    for i in range(rows):
        d = nf.D[i][i] if i < min(rows, len(face_gens)) else 0
        if d == 0:
            if ua[i] != 0:
                return None
        else:
            m = lcm(m, d // gcd(d, ua[i]) if ua[i] else 1)
    return m


def verify_no_certificate(
    A: AffineSemigroup, a: Sequence[int], p: int, cert: dict, e_cap: int = DEFAULT_E_MAX
) -> bool:
    """Soundness check of a No certificate: p^e * a stays outside the face
    lattice for every e <= e_cap (checked by direct lattice solve)."""
    face_gens = [tuple(g) for g in cert["face_generators"]]
    v = tuple(int(x) for x in a)
    if not face_gens:
        return all(any(x for x in (p**e * y for y in v)) for e in range(e_cap + 1))
    mat = [[g[i] for g in face_gens] for i in range(A.n)]
    nf = smith_normal_form(mat)
    for e in range(e_cap + 1):
        target = [p**e * x for x in v]
        if solve_integer(nf, target) is not None:
            return False
    return True


@dataclass(frozen=True)
class FNilpotencyReport:
    """Verdict on F-nilpotence of k[A] at characteristic p.

    FNilpotent carries the pure inseparability index e0; NotFNilpotent
    carries the witness Hilbert-basis element and its lattice certificate."""

    p: int
    verdict: str  # "f-nilpotent" | "not-f-nilpotent" | "undetermined"
    e0: Optional[int] = None
    witness: Optional[Vector] = None
    certificate: Optional[dict] = None
    e_max: Optional[int] = None
    hilbert_basis: tuple[Vector, ...] = ()
    per_element: dict = field(default_factory=dict)


def pure_insep_index(A: AffineSemigroup, p: int, e_max: int = DEFAULT_E_MAX) -> FNilpotencyReport:
    """Pure inseparability index of k[A] -> k[saturation(A)].

    Semigroups are closed under addition, so p^e * h in A for every Hilbert
    basis element h forces p^e * s in A for every saturation element s; the
    index is the max of the per-element minimal exponents."""
    basis = saturation_hilbert_basis(A)
    per_element: dict[Vector, PMembership] = {}
    e0 = 0
    witness = None
    certificate = None
    undetermined = False
    for h in basis:
        res = eventual_p_membership(A, h, p, e_max)
        per_element[h] = res
        if res.status == "no" and witness is None:
            witness = h
            certificate = res.certificate
        elif res.status == "undetermined":
            undetermined = True
        elif res.status == "yes":
            e0 = max(e0, res.e)
    if witness is not None:
        verdict = "not-f-nilpotent"
        e0 = None
    elif undetermined:
        verdict = "undetermined"
        e0 = None
    else:
        verdict = "f-nilpotent"
    return FNilpotencyReport(
        p=p,
        verdict=verdict,
        e0=e0,
        witness=witness,
        certificate=certificate,
        e_max=e_max,
        hilbert_basis=basis,
        per_element=per_element,
    )


def is_f_nilpotent(A: AffineSemigroup, p: int, e_max: int = DEFAULT_E_MAX) -> FNilpotencyReport:
    """F-nilpotence of the semigroup ring k[A]: holds exactly when the
    normalization map is purely inseparable."""
    return pure_insep_index(A, p, e_max)


@dataclass(frozen=True)
class WeakNormalizationResult:
    generators: tuple[Vector, ...]
    undetermined: tuple[Vector, ...]


def weak_normalization(
    A: AffineSemigroup, p: int, e_max: int = DEFAULT_E_MAX
) -> WeakNormalizationResult:
    """Minimal generators of *A = {a in saturation : p^e * a in A for some e}."""
    saturation_hilbert_basis(A)
    star = set()
    undetermined = []
    for v in sorted(A._sat_points):
        res = eventual_p_membership(A, v, p, e_max)
        if res.status == "yes":
            star.add(v)
        elif res.status == "undetermined":
            undetermined.append(v)
    gens = _minimal_elements(star, A.n)
    return WeakNormalizationResult(tuple(sorted(gens)), tuple(undetermined))


# -- tight closure and Frobenius test exponents --------------------------------


def tight_closure_membership_monomial(
    A: AffineSemigroup,
    p: int,
    ideal: Sequence[Sequence[int]],
    u: Sequence[int],
    report: FNilpotencyReport,
) -> bool:
    """Membership of the monomial of exponent u in the tight closure of the
    monomial ideal, via the single Frobenius check at exponent e0.

    In an F-nilpotent semigroup ring I* = I^F and Fte I <= e0, so one
    bracket-power test decides membership."""
    if report.verdict != "f-nilpotent":
        raise NotFNilpotentRing(
            f"tight-closure shortcut requires an F-nilpotent verdict, got {report.verdict}"
        )
    uu = tuple(int(x) for x in u)
    gens = [tuple(int(x) for x in v) for v in ideal]
    if not membership(A, uu):
        raise ValueError(f"element {uu} is not in the semigroup")
    for v in gens:
        if not membership(A, v):
            raise ValueError(f"ideal generator {v} is not in the semigroup")
    q = p**report.e0
    for v in gens:
        diff = tuple(q * (a - b) for a, b in zip(uu, v))
        if membership(A, diff):
            return True
    return False


def frobenius_closure_exponent(
    A: AffineSemigroup, p: int, ideal: Sequence[int], a: int, e_cap: int
) -> Optional[int]:
    """Minimal e <= e_cap with p^e * a in the bracket power of the monomial
    ideal of a numerical semigroup; None if no exponent works."""
    for e in range(e_cap + 1):
        q = p**e
        if any(membership(A, (q * (a - v),)) for v in ideal):
            return e
    return None


def fte_bruteforce(
    A: AffineSemigroup,
    p: int,
    ideal: Sequence[int],
    report: FNilpotencyReport,
    e_cap: Optional[int] = None,
) -> int:
    """Frobenius test exponent of a monomial ideal in a numerical semigroup
    ring, by exhaustive search below the conductor bound.

    Every semigroup element above max(ideal) + Frobenius number lies in the
    ideal outright, so the finite window determines I^F."""
    if A.n != 1:
        raise ValueError("brute-force Fte is implemented for numerical semigroups only")
    if report.verdict != "f-nilpotent":
        raise NotFNilpotentRing("Fte bound requires an F-nilpotent verdict")
    gens = sorted(int(v[0] if isinstance(v, (tuple, list)) else v) for v in ideal)
    if not gens:
        raise ValueError("ideal must have at least one generator")
    frob = frobenius_number(A)
    e0 = report.e0
    if e_cap is None:
        e_cap = e0 + 2
    if e_cap < e0:
        raise CapExceeded(f"exponent cap {e_cap} is below the certified bound e0 = {e0}")
    bound = max(gens) + frob + 1
    fte = 0
    for a in range(bound + 1):
        if not membership(A, (a,)):
            continue
        e = frobenius_closure_exponent(A, p, gens, a, e_cap)
        if e is not None:
            fte = max(fte, e)
    assert fte <= e0, f"computed Fte {fte} exceeds the pure inseparability bound {e0}"
    return fte
