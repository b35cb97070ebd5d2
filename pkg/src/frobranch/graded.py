"""Per-degree exact linear algebra on standard-graded quotients k[x1..xn]/I.

Every question asked here (Hilbert functions, linear reductions, Frobenius
powers and closures, the branch-count formula) is homogeneous, so a
Macaulay-style degree-slice matrix replaces Groebner bases entirely: the
degree-d piece of I is the row span of {m*g : g a relation, deg(m*g) = d}
inside the degree-d monomial space, under a fixed graded reverse
lexicographic column order.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DegreeCapExceeded,
    FieldMismatch,
    NoReductionFound,
    NotOneDimensional,
    PowerVanishes,
)
from .ffield import (
    ExtensionField,
    Field,
    FieldElement,
    UniPoly,
    extend_field,
    squarefree_decomposition,
)
from .linalg import Echelon, kernel_for

Monomial = tuple  # exponent vector, one entry per variable

DEFAULT_DEGREE_CAP = 64
DEFAULT_S_MAX = 3
HF_VALUE_CAP = 4096


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in nvars variables, grevlex-descending.

    Within a fixed degree, grevlex-descending equals lexicographic order on
    the reversed exponent vector, ascending.
    """
    def gen(n, total):
        if n == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in gen(n - 1, total - first):
                yield (first,) + rest

    monos = list(gen(nvars, d))
    monos.sort(key=lambda m: tuple(reversed(m)))
    return tuple(monos)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class HomogPoly:
    """Homogeneous polynomial: a degree tag plus monomial->coefficient terms.

    The zero polynomial keeps its degree tag with an empty term map.
    """

    __slots__ = ("field", "nvars", "degree", "terms")

    def __init__(self, field: Field, nvars: int, degree: int, terms: dict):
        clean = {}
        for mono, coeff in terms.items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for {nvars} variables")
            if sum(mono) != degree:
                raise ValueError(f"term {mono} has degree {sum(mono)}, expected {degree}")
            if coeff.field != field:
                raise FieldMismatch("coefficient from a different field")
            if coeff:
                clean[tuple(mono)] = coeff
        self.field = field
        self.nvars = nvars
        self.degree = degree
        self.terms = clean

    @classmethod
    def from_ints(cls, field, nvars, int_terms: dict) -> "HomogPoly":
        degrees = {sum(m) for m in int_terms}
        if len(degrees) != 1:
            raise ValueError("terms of mixed degree")
        return cls(
            field, nvars, degrees.pop(),
            {tuple(m): field.from_int(c) for m, c in int_terms.items()},
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
            and (self.terms or self.degree == other.degree)
        )

    def __hash__(self):
        return hash((self.field, self.nvars, self.degree, frozenset(self.terms.items())))

    def _check(self, other):
        if self.field != other.field or self.nvars != other.nvars:
            raise FieldMismatch("polynomials over different rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError("sum of different degrees is not homogeneous")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            terms[m] = c if s is None else s + c
        return HomogPoly(self.field, self.nvars, max(self.degree, other.degree), terms)

    def __mul__(self, other):
        self._check(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = monomial_mul(ma, mb)
                c = ca * cb
                s = out.get(m)
                out[m] = c if s is None else s + c
        return HomogPoly(self.field, self.nvars, self.degree + other.degree, out)

    def scale(self, c: FieldElement) -> "HomogPoly":
        return HomogPoly(
            self.field, self.nvars, self.degree,
            {m: a * c for m, a in self.terms.items()},
        )

    def __pow__(self, n: int) -> "HomogPoly":
        result = HomogPoly(self.field, self.nvars, 0, {(0,) * self.nvars: self.field.one()})
        for _ in range(n):
            result = result * self
        return result

    def frobenius_power(self, e: int) -> "HomogPoly":
        """p^e-th power, computed termwise (freshman's dream in char p)."""
        q = self.field.p**e
        return HomogPoly(
            self.field, self.nvars, self.degree * q,
            {tuple(x * q for x in m): c**q for m, c in self.terms.items()},
        )

    def map_to(self, field: ExtensionField) -> "HomogPoly":
        """Image under the constant embedding into a scalar extension."""
        return HomogPoly(
            field, self.nvars, self.degree,
            {m: field.embed(c) for m, c in self.terms.items()},
        )

    def format(self, var_names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda mm: tuple(reversed(mm))):
            c = self.terms[m]
            factors = []
            for name, e in zip(var_names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(f"{c}")
            elif repr(c) == "1":
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return self.format([f"x{i+1}" for i in range(self.nvars)])


@dataclass
class _SliceData:
    columns: tuple[Monomial, ...]
    col_index: dict
    echelon: Echelon          # RREF of the degree-d piece of I
    std_monomials: tuple[Monomial, ...]


@dataclass(frozen=True)
class BranchReport:
    """Result of the closure-quotient branch count with cross-checks."""

    dim_quotient: int
    branches_formula: int
    branches_multiplicity: int
    reduction_form: str
    reduction_scalar_extension: int
    n_used: int
    consistent: bool
    oracle_branches: Optional[int] = None


@dataclass(frozen=True)
class ClosureMembership:
    """Outcome of a Frobenius-closure probe: In(e_min) or NotInUpTo(e_max)."""

    contained: bool
    e: int


@dataclass
class ReductionResult:
    form: HomogPoly
    scalar_extension: int
    ring: "GradedQuotient"   # base-changed when scalar_extension > 1


class GradedQuotient:
    """Standard-graded quotient R = k[x1..xn]/I with per-degree caches.

    The degree cache is the only mutable state; population is serialized by
    an internal lock, after which reads are safe to share across threads.
    """

    def __init__(
        self,
        field: Field,
        nvars: int,
        relations: Sequence[HomogPoly],
        var_names: Optional[Sequence[str]] = None,
    ):
        if nvars < 1:
            raise ValueError("need at least one variable")
        rels = []
        for g in relations:
            if g.field != field or g.nvars != nvars:
                raise FieldMismatch("relation over a different ring")
            if g.is_zero():
                continue
            if g.degree < 1:
                raise ValueError("relations must have positive degree")
            rels.append(g)
        self.field = field
        self.nvars = nvars
        self.relations = tuple(rels)
        self.var_names = tuple(var_names) if var_names else tuple(f"x{i+1}" for i in range(nvars))
        self.kernel = kernel_for(field)
        self.max_rel_degree = max((g.degree for g in rels), default=0)
        self.stabilization: Optional[tuple[int, int]] = None  # (N, e)
        self._cache: dict[int, _SliceData] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        rels = ", ".join(g.format(self.var_names) for g in self.relations)
        return f"{self.field}[{','.join(self.var_names)}]/({rels or '0'})"

    # -- degree slices -----------------------------------------------------

    def slice(self, d: int) -> _SliceData:
        if d < 0:
            raise ValueError("degree must be >= 0")
        with self._lock:
            data = self._cache.get(d)
            if data is not None:
                return data
            data = self._build_slice(d)
            self._cache[d] = data
            return data

    def _build_slice(self, d: int) -> _SliceData:
        columns = monomials_of_degree(self.nvars, d)
        col_index = {m: i for i, m in enumerate(columns)}
        ech = Echelon(self.kernel, len(columns))
        enc = self.kernel.encode
        for g in self.relations:
            shift = d - g.degree
            if shift < 0:
                continue
            codes = [(m, enc(c)) for m, c in g.terms.items()]
            for mult in monomials_of_degree(self.nvars, shift):
                row = np.zeros(len(columns), dtype=np.int64)
                for m, code in codes:
                    row[col_index[monomial_mul(mult, m)]] = code
                ech.add_row(row)
        pivots = set(ech.pivots)
        std = tuple(m for i, m in enumerate(columns) if i not in pivots)
        return _SliceData(columns, col_index, ech, std)

    def to_vector(self, f: HomogPoly, data: Optional[_SliceData] = None) -> np.ndarray:
        if data is None:
            data = self.slice(f.degree)
        vec = np.zeros(len(data.columns), dtype=np.int64)
        enc = self.kernel.encode
        for m, c in f.terms.items():
            vec[data.col_index[m]] = enc(c)
        return vec

    def normal_form_vector(self, f: HomogPoly) -> np.ndarray:
        """Coordinates of f's class modulo I, in the full degree slice."""
        data = self.slice(f.degree)
        return data.echelon.reduce(self.to_vector(f, data))


# -- operations --------------------------------------------------------------


def degree_basis(R: GradedQuotient, d: int):
    """Standard-monomial basis of [R]_d and the rank of the degree-d slice of I."""
    data = R.slice(d)
    return data.std_monomials, data.echelon.rank


def hilbert_function(R: GradedQuotient, d: int) -> int:
    data = R.slice(d)
    hf = len(data.std_monomials)
    if hf > HF_VALUE_CAP:
        raise NotOneDimensional(
            f"Hilbert function value {hf} at degree {d} exceeds the cap; "
            "the quotient is not one-dimensional at desk scale"
        )
    return hf


def stabilization_window(R: GradedQuotient) -> int:
    return R.nvars + R.max_rel_degree


def multiplicity(R: GradedQuotient) -> tuple[int, int]:
    """Stable Hilbert function value e and the smallest index N where the
    function is constant over [N, N + window]."""
    if R.stabilization is not None:
        n, e = R.stabilization
        return e, n
    window = stabilization_window(R)
    cap = 4 * max(R.max_rel_degree, 1) * R.nvars
    values: list[int] = []

    def hf(d):
        while len(values) <= d:
            values.append(hilbert_function(R, len(values)))
        return values[d]

    for n in range(cap + 1):
        e = hf(n)
        if all(hf(n + i) == e for i in range(1, window + 1)):
            R.stabilization = (n, e)
            return e, n
    raise NotOneDimensional(
        f"Hilbert function did not stabilize below degree {cap}"
    )


def ideal_membership(R: GradedQuotient, f: HomogPoly, J: Sequence[HomogPoly]) -> bool:
    """Is f in the ideal J*R, tested in the degree-(deg f) slice?"""
    if f.field != R.field or f.nvars != R.nvars:
        raise FieldMismatch("element over a different ring")
    if f.is_zero():
        return True
    d = f.degree
    data = R.slice(d)
    ech = data.echelon.clone()
    enc = R.kernel.encode
    for h in J:
        if h.field != R.field or h.nvars != R.nvars:
            raise FieldMismatch("ideal generator over a different ring")
        if h.is_zero():
            continue
        shift = d - h.degree
        if shift < 0:
            continue
        codes = [(m, enc(c)) for m, c in h.terms.items()]
        for mult in monomials_of_degree(R.nvars, shift):
            row = np.zeros(len(data.columns), dtype=np.int64)
            for m, code in codes:
                row[data.col_index[monomial_mul(mult, m)]] = code
            ech.add_row(row)
    return ech.contains(R.to_vector(f, data))


def linear_form(R: GradedQuotient, coeffs: Sequence[FieldElement]) -> HomogPoly:
    terms = {}
    for i, c in enumerate(coeffs):
        mono = tuple(1 if j == i else 0 for j in range(R.nvars))
        terms[mono] = c
    return HomogPoly(R.field, R.nvars, 1, terms)


def is_linear_reduction(R: GradedQuotient, x: HomogPoly) -> tuple[bool, int]:
    """Does multiplication by x map [R]_d onto [R]_{d+1} for all d in the
    stabilization window?  Returns the verdict and the stabilization index."""
    if x.degree != 1:
        raise ValueError("reduction candidate must be a linear form")
    _, n0 = multiplicity(R)
    window = stabilization_window(R)
    for d in range(n0, n0 + window + 1):
        data = R.slice(d)
        target = R.slice(d + 1)
        image = Echelon(R.kernel, len(target.columns))
        for mono in data.std_monomials:
            g = HomogPoly(R.field, R.nvars, d, {mono: R.field.one()})
            image.add_row(R.normal_form_vector(x * g))
        if image.rank != len(target.std_monomials):
            return False, n0
    return True, n0


def find_linear_reduction(R: GradedQuotient, s_max: int = DEFAULT_S_MAX) -> ReductionResult:
    """First linear form (in a fixed enumeration order) that reduces the
    irrelevant ideal, extending scalars to GF(q^s), s <= s_max, if needed."""
    multiplicity(R)  # propagate NotOneDimensional early
    for s in range(1, s_max + 1):
        ring = R if s == 1 else base_change(R, s)
        multiplicity(ring)
        elems = list(ring.field.elements())
        nonzero = [c for c in elems if c]

        def candidates():
            # forms with no zero coordinate are the generic ones and come
            # first; the remaining nonzero forms follow in product order
            yield from itertools.product(nonzero, repeat=ring.nvars)
            for combo in itertools.product(elems, repeat=ring.nvars):
                if any(combo) and not all(combo):
                    yield combo

        for combo in candidates():
            x = linear_form(ring, combo)
            ok, _ = is_linear_reduction(ring, x)
            if ok:
                return ReductionResult(x, s, ring)
    raise NoReductionFound(s_max)


def base_change(R: GradedQuotient, s: int) -> GradedQuotient:
    """R tensored up to the degree-s scalar extension of its base field."""
    ext = extend_field(R.field, s)
    return GradedQuotient(
        ext, R.nvars, [g.map_to(ext) for g in R.relations], R.var_names
    )


def frobenius_power(J: Sequence[HomogPoly], e: int) -> list[HomogPoly]:
    """Bracket power J^[p^e]: raise each generator to the p^e-th power."""
    if e < 0:
        raise ValueError("Frobenius exponent must be >= 0")
    return [g.frobenius_power(e) for g in J]


def frobenius_closure_membership(
    R: GradedQuotient,
    f: HomogPoly,
    J: Sequence[HomogPoly],
    e_max: int,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> ClosureMembership:
    """Smallest e <= e_max with f^(p^e) in J^[p^e]*R, else NotInUpTo(e_max)."""
    if f.is_zero():
        return ClosureMembership(True, 0)
    p = R.field.p
    for e in range(e_max + 1):
        if f.degree * p**e > degree_cap:
            raise DegreeCapExceeded(
                f"degree {f.degree * p**e} at e={e} exceeds the cap {degree_cap}"
            )
        if ideal_membership(R, f.frobenius_power(e), frobenius_power(J, e)):
            return ClosureMembership(True, e)
    return ClosureMembership(False, e_max)


def closure_quotient_dim(R: GradedQuotient, x: HomogPoly, n: int) -> int:
    """dim_k m^n / ((x^n) + m^(n+1)), computed in the degree-n slice.

    The degree-n piece of m^n is all of [R]_n and the degree-n piece of
    (x^n) + m^(n+1) is the span of x^n, so the dimension is HF(n) minus one
    provided x^n does not vanish in R.
    """
    nf = R.normal_form_vector(x**n)
    if not np.any(nf) and n > 0:
        raise PowerVanishes(
            f"{x.format(R.var_names)}^{n} = 0 in R: the ring is not reduced "
            "or the form is not a parameter"
        )
    return hilbert_function(R, n) - 1


def reducedness_status(R: GradedQuotient) -> str:
    """Partial reducedness verification.

    Monomial ideals are checked via squarefreeness of the minimal
    generators; a single relation in two variables via squarefree
    decomposition of both dehomogenizations.  Everything else is reported
    unverified.
    """
    rels = R.relations
    if not rels:
        return "verified-polynomial-ring"
    if all(len(g.terms) == 1 for g in rels):
        monos = [next(iter(g.terms)) for g in rels]
        minimal = [
            m for m in monos
            if not any(o != m and all(a <= b for a, b in zip(o, m)) for o in monos)
        ]
        if all(all(e <= 1 for e in m) for m in minimal):
            return "verified-monomial"
        return "not-reduced"
    if R.nvars == 2 and len(rels) == 1:
        f = rels[0]
        if _is_squarefree_binary(f):
            return "verified-squarefree"
        return "not-reduced"
    return "unverified"


def dehomogenize(f: HomogPoly, at: int) -> UniPoly:
    """Set variable `at` to 1 in a two-variable form; the other becomes t."""
    if f.nvars != 2:
        raise ValueError("dehomogenization is defined for two variables")
    other = 1 - at
    coeffs = [f.field.zero()] * (f.degree + 1)
    for m, c in f.terms.items():
        coeffs[m[other]] = c
    return UniPoly(f.field, coeffs)


def _is_squarefree_binary(f: HomogPoly) -> bool:
    if f.is_zero():
        return False
    for at in (0, 1):
        g = dehomogenize(f, at)
        if g.degree >= 1 and any(m > 1 for _, m in squarefree_decomposition(g)):
            return False
    return True


def branch_count(
    R: GradedQuotient,
    s_max: int = DEFAULT_S_MAX,
    oracle_branches: Optional[int] = None,
) -> BranchReport:
    """Branch count via the closure-quotient formula, cross-checked against
    the Hilbert-Samuel multiplicity.

    The caller asserts R is reduced and one-dimensional; see
    reducedness_status for the partial checks.
    """
    e, n0 = multiplicity(R)
    red = find_linear_reduction(R, s_max)
    n = n0
    dim = closure_quotient_dim(red.ring, red.form, n)
    formula = dim + 1
    consistent = formula == e and (oracle_branches is None or oracle_branches == formula)
    return BranchReport(
        dim_quotient=dim,
        branches_formula=formula,
        branches_multiplicity=e,
        reduction_form=red.form.format(R.var_names),
        reduction_scalar_extension=red.scalar_extension,
        n_used=n,
        consistent=consistent,
        oracle_branches=oracle_branches,
    )


def with_oracle(report: BranchReport, oracle_branches: int) -> BranchReport:
    return replace(
        report,
        oracle_branches=oracle_branches,
        consistent=report.consistent and oracle_branches == report.branches_formula,
    )
