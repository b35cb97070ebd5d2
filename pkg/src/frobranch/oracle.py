"""Independent branch counts for structured families.

For plane hypersurface curves the branch count over a perfect base field is
the number of distinct points of the projective zero locus over the
algebraic closure, obtained from squarefree root counting of a
dehomogenization.  Coordinate-axes rings have a closed form.  Both serve as
oracles validating the closure-quotient formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import NotSquarefree
from .ffield import Field, distinct_root_count
from .graded import (
    BranchReport,
    GradedQuotient,
    HomogPoly,
    branch_count,
    dehomogenize,
    with_oracle,
    _is_squarefree_binary,
)


@dataclass(frozen=True)
class HypersurfaceCurve:
    """A reduced plane curve k[x,y]/(f) with f homogeneous squarefree."""

    field: Field
    f: HomogPoly

    def __post_init__(self):
        if self.f.nvars != 2 or self.f.field != self.field:
            raise ValueError("hypersurface oracle needs a form in two variables")
        if not _is_squarefree_binary(self.f):
            raise NotSquarefree(f"{self.f} has a repeated factor")


def hypersurface_branches(curve: HypersurfaceCurve) -> int:
    """Distinct projective zeros of f over the algebraic closure.

    Divide out the x-power (at most one by squarefreeness), count the
    distinct affine roots of the dehomogenization at x=1, and add one for
    the point at infinity when x divides f.
    """
    f = curve.f
    x_mult = min(m[0] for m in f.terms)
    if x_mult > 1:
        raise NotSquarefree("x divides the form more than once")
    if x_mult == 1:
        f = HomogPoly(
            f.field, 2, f.degree - 1,
            {(m[0] - 1, m[1]): c for m, c in f.terms.items()},
        )
    g = dehomogenize(f, at=0)
    count = distinct_root_count(g) if g.degree >= 1 else 0
    return count + x_mult


def axes_branches(d: int) -> int:
    """Branches of the coordinate-axes ring k[x1..xd]/(xi*xj, i<j)."""
    if d < 1:
        raise ValueError("need at least one axis")
    return d


def axes_ring(field: Field, d: int) -> GradedQuotient:
    rels = []
    for i in range(d):
        for j in range(i + 1, d):
            mono = tuple(1 if k in (i, j) else 0 for k in range(d))
            rels.append(HomogPoly(field, d, 2, {mono: field.one()}))
    return GradedQuotient(field, d, rels)


def _match_axes(R: GradedQuotient) -> Optional[int]:
    d = R.nvars
    if d == 1:
        return 1 if not R.relations else None
    expected = {
        tuple(1 if k in (i, j) else 0 for k in range(d))
        for i in range(d)
        for j in range(i + 1, d)
    }
    seen = set()
    for g in R.relations:
        if len(g.terms) != 1:
            return None
        mono = next(iter(g.terms))
        if mono not in expected:
            return None
        seen.add(mono)
    return d if seen == expected else None


@dataclass(frozen=True)
class CrosscheckResult:
    """Match(b) / Mismatch(formula, oracle) / NoOracle, with the report."""

    status: str  # "match" | "mismatch" | "no-oracle"
    report: BranchReport
    oracle_branches: Optional[int] = None


def oracle_branch_count(R: GradedQuotient) -> Optional[int]:
    """Oracle count when the presentation fits a known family, else None."""
    d = _match_axes(R)
    if d is not None:
        return axes_branches(d)
    if R.nvars == 2 and len(R.relations) == 1 and _is_squarefree_binary(R.relations[0]):
        return hypersurface_branches(HypersurfaceCurve(R.field, R.relations[0]))
    return None


def crosscheck(R: GradedQuotient, s_max: int = 3) -> CrosscheckResult:
    """Run the formula and the applicable oracle side by side."""
    report = branch_count(R, s_max=s_max)
    oracle = oracle_branch_count(R)
    if oracle is None:
        return CrosscheckResult("no-oracle", report)
    report = with_oracle(report, oracle)
    status = "match" if oracle == report.branches_formula else "mismatch"
    return CrosscheckResult(status, report, oracle)
