"""Certified rank bookkeeping.

Bounds for the four notions (border, smoothable, cactus, rank) are kept with
their provenance and closed under the two inequality chains
border <= smoothable <= rank and cactus <= smoothable <= rank; every notion
is also bounded below by the number of essential variables.  Inconsistent
evidence is an error, since it means some certificate is wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .apolarity import ann_slice, concise_dim, hilbert_function
from .poly import Poly
from .poly import uni_derivative, uni_gcd, uni_trim

NOTIONS = ("border", "smoothable", "cactus", "rank")


class InconsistentEvidenceError(ValueError):
    """Certified bounds contradict each other — some certificate is buggy."""


@dataclass(frozen=True)
class Deduction:
    """One certified fact: a bound for one notion (or all four).

    `basis` distinguishes machine-verified computations from cited literature
    rules applied to verified hypotheses.
    """

    notion: str  # one of NOTIONS or "all"
    side: str  # "lower" | "upper" | "exact"
    value: int
    rule: str
    detail: str = ""
    basis: str = "computed"  # "computed" | "cited"

    def __post_init__(self):
        if self.notion not in NOTIONS + ("all",):
            raise ValueError(f"unknown notion {self.notion!r}")
        if self.side not in ("lower", "upper", "exact"):
            raise ValueError(f"unknown side {self.side!r}")


@dataclass
class RankReport:
    """Tightest consistent bounds per notion, with full provenance."""

    lows: dict
    ups: dict
    provenance: tuple

    def lower(self, notion: str) -> int:
        return self.lows[notion]

    def upper(self, notion: str) -> Optional[int]:
        return self.ups[notion]

    def value(self, notion: str) -> Optional[int]:
        u = self.ups[notion]
        return u if u is not None and u == self.lows[notion] else None

    def extended(self, extra: Sequence[Deduction]) -> "RankReport":
        return _aggregate_deductions(list(self.provenance) + list(extra))

    def as_dict(self) -> dict:
        out = {}
        for n in NOTIONS:
            out[n] = {
                "lower": self.lows[n],
                "upper": self.ups[n],
                "exact": self.value(n),
            }
        return out


def _min_opt(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _aggregate_deductions(deductions: Sequence[Deduction]) -> RankReport:
    lows = {n: 0 for n in NOTIONS}
    ups = {n: None for n in NOTIONS}
    for ded in deductions:
        targets = NOTIONS if ded.notion == "all" else (ded.notion,)
        for n in targets:
            if ded.side in ("lower", "exact"):
                lows[n] = max(lows[n], ded.value)
            if ded.side in ("upper", "exact"):
                ups[n] = _min_opt(ups[n], ded.value)
    # close under border <= smoothable <= rank and cactus <= smoothable <= rank
    lows["smoothable"] = max(lows["smoothable"], lows["border"], lows["cactus"])
    lows["rank"] = max(lows["rank"], lows["smoothable"])
    ups["smoothable"] = _min_opt(ups["smoothable"], ups["rank"])
    ups["border"] = _min_opt(ups["border"], ups["smoothable"])
    ups["cactus"] = _min_opt(ups["cactus"], ups["smoothable"])
    for n in NOTIONS:
        if ups[n] is not None and lows[n] > ups[n]:
            raise InconsistentEvidenceError(
                f"{n}: certified lower bound {lows[n]} exceeds upper bound {ups[n]}"
            )
    return RankReport(lows=lows, ups=ups, provenance=tuple(deductions))


def conciseness_deduction(f: Poly) -> Deduction:
    return Deduction(
        notion="all",
        side="lower",
        value=concise_dim(f).dim,
        rule="conciseness",
        detail="every notion is at least the number of essential variables",
    )


def aggregate(f: Poly, evidence: Sequence[Deduction]) -> RankReport:
    """Close the given evidence under the inequality chains; the conciseness
    lower bound is always injected."""
    return _aggregate_deductions([conciseness_deduction(f)] + list(evidence))


def catalecticant_lower_bound(f: Poly) -> int:
    """max_i H_f(i); a lower bound for all four notions."""
    return hilbert_function(f).max()


def catalecticant_deduction(f: Poly) -> Deduction:
    h = hilbert_function(f)
    return Deduction(
        notion="all",
        side="lower",
        value=h.max(),
        rule="catalecticant",
        detail=f"hilbert function {tuple(h.values)}",
    )


def quadric_rank(f: Poly) -> int:
    """All four notions coincide for quadrics; the common value is H_f(1)."""
    if f.homogeneous_degree() != 2:
        raise ValueError("quadric_rank expects a homogeneous quadric")
    return hilbert_function(f)(1)


def _binary_coeff_list(g: Poly) -> list:
    """Ascending coefficients of a binary form in (first variable)^k."""
    d = g.homogeneous_degree()
    out = [g.coeff((k, d - k)) for k in range(d + 1)]
    return uni_trim(out)


def _binary_square_free(g: Poly) -> bool:
    """Square-freeness of a binary form over the algebraic closure, decided
    by gcd with the derivative over Q (valid in characteristic zero)."""
    d = g.homogeneous_degree()
    u = _binary_coeff_list(g)
    if d - (len(u) - 1) > 1:
        return False  # the second variable divides at least twice
    if len(u) - 1 <= 1:
        return True
    return len(uni_gcd(u, uni_derivative(u))) == 1


@dataclass(frozen=True)
class SylvesterResult:
    d1: int
    d2: int
    border: int
    rank: int
    report: RankReport


def sylvester_binary(f: Poly) -> SylvesterResult:
    """Exact ranks of a form in at most two essential variables.

    The annihilator of a binary form is a complete intersection in degrees
    d1 <= d2 with d1 + d2 = d + 2; cactus, smoothable and border rank all
    equal d1, and the rank is d1 exactly when the degree-d1 slice contains a
    square-free form, else d2.
    """
    d = f.homogeneous_degree()
    if d is None or f.is_zero():
        raise ValueError("sylvester_binary expects a homogeneous nonzero polynomial")
    es = concise_dim(f)
    if es.dim > 2:
        raise ValueError(f"not essentially binary: {es.dim} essential variables")
    if es.dim == 1:
        d1, d2, rank_val = 1, d + 1, 1
    else:
        g = es.reduced
        d1 = None
        for i in range(1, d + 1):
            sl = ann_slice(g, i)
            if sl.dim > 0:
                d1 = i
                break
        d2 = d + 2 - d1
        if sl.dim == 1:
            rank_val = d1 if _binary_square_free(sl.basis[0]) else d2
        else:
            # d1 == d2: scan the pencil; a binary form pencil with no
            # square-free member has an identically vanishing discriminant,
            # which 2*d1 - 1 samples refute or confirm
            members = [sl.basis[1]] + [
                sl.basis[0] + t * sl.basis[1] for t in range(2 * d1 - 1)
            ]
            rank_val = d1 if any(_binary_square_free(m) for m in members) else d2
    evidence = [
        Deduction("border", "exact", d1, rule="binary-kernel",
                  detail=f"complete intersection degrees d1={d1}, d2={d2}"),
        Deduction("smoothable", "exact", d1, rule="binary-kernel"),
        Deduction("cactus", "exact", d1, rule="binary-kernel"),
        Deduction("rank", "exact", rank_val, rule="binary-square-free",
                  detail="square-free slice member" if rank_val == d1 else "no square-free member in first slice"),
    ]
    report = aggregate(f, evidence)
    return SylvesterResult(d1=d1, d2=d2, border=d1, rank=rank_val, report=report)


def tameness_rule(report: RankReport, d: int) -> RankReport:
    """If the certified border-rank upper bound is at most d+1, smoothable
    rank equals border rank; copy the border bounds across."""
    b_up = report.upper("border")
    if b_up is None or b_up > d + 1:
        return report
    extra = [
        Deduction("smoothable", "upper", b_up, rule="tameness",
                  detail=f"border rank <= {d + 1}", basis="cited"),
        Deduction("smoothable", "lower", report.lower("border"),
                  rule="tameness", basis="cited"),
    ]
    return report.extended(extra)
