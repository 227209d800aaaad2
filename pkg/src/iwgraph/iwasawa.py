"""Iwasawa invariants of a tower and the Stickelberger element of a voltage graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .graph import Graph, is_prime, valuation
from .laurent import GroupRingElement, det_bareiss
from .tower import TowerReport, TowerSpec, analyze_tower
from .voltage import SizeGuardError, VoltageAssignment, single_voltage, voltage_laplacian

INF = float("inf")


class FitError(ValueError):
    """The exponent sequence does not follow mu*p^m + lambda*m + nu on any tail."""

    def __init__(self, message: str, diagnostics: Optional[dict] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class IwasawaFit:
    mu: int
    lam: int
    nu: int
    m0: int
    verified_levels: int
    p: int

    def predict(self, m: int) -> int:
        return self.mu * self.p ** m + self.lam * m + self.nu

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "lambda": self.lam,
            "nu": self.nu,
            "m0": self.m0,
            "verified_levels": self.verified_levels,
        }


def _try_tail(e: Sequence[int], p: int, m0: int):
    d0 = e[m0 + 1] - e[m0]
    d1 = e[m0 + 2] - e[m0 + 1]
    scale = p ** m0 * (p - 1)
    mu, r = divmod(d1 - d0, scale * (p - 1))
    if r or mu < 0:
        return None, f"second difference {d1 - d0} is not a nonnegative multiple of {scale * (p - 1)}"
    lam = d0 - mu * scale
    if lam < 0:
        return None, f"lambda would be negative ({lam})"
    nu = e[m0] - mu * p ** m0 - lam * m0
    residuals = [e[m] - (mu * p ** m + lam * m + nu) for m in range(m0, len(e))]
    if any(residuals):
        return None, f"residuals {residuals}"
    return (mu, lam, nu), None


def fit_invariants(e: Sequence[int], p: int) -> IwasawaFit:
    """Fit e_m = mu*p^m + lambda*m + nu exactly on the longest possible tail.

    Tries m0 = 0, 1, ... while at least four points remain (three to solve,
    one or more to check).  Differences give the unknowns:
    e_{m+1} - e_m = mu*p^m*(p-1) + lambda, and the second difference is
    mu*p^m*(p-1)^2.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = [int(x) for x in e]
    if len(e) < 4:
        raise FitError(f"need at least 4 levels to fit, got {len(e)}")
    diagnostics = {}
    for m0 in range(len(e) - 3):
        sol, why = _try_tail(e, p, m0)
        if sol is not None:
            mu, lam, nu = sol
            return IwasawaFit(mu, lam, nu, m0, len(e) - m0, p)
        diagnostics[m0] = why
    raise FitError("insufficient or non-conforming data", diagnostics)


@dataclass(frozen=True)
class StickelbergerReport:
    theta: GroupRingElement
    p: int
    content_valuation: Union[int, float]
    verdict: str  # "bounded" | "unbounded" | "zero"
    level_reductions: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "theta": {str(k): str(c) for k, c in self.theta.terms.items()},
            "content_valuation": "inf" if self.content_valuation == INF else self.content_valuation,
            "verdict": self.verdict,
        }


def content_valuation(theta: GroupRingElement, p: int) -> Union[int, float]:
    if theta.is_zero():
        return INF
    return valuation(theta.content(), p)


def stickelberger(va: VoltageAssignment, levels: Iterable[int] = ()) -> StickelbergerReport:
    """Determinant of the voltage Laplacian and the p-rank verdict it implies.

    Monomials are units, so p divides theta in the Iwasawa algebra exactly
    when p divides every coefficient.
    """
    theta = det_bareiss(voltage_laplacian(va))
    p = va.prime
    cv = content_valuation(theta, p)
    if cv == INF:
        verdict = "zero"
    elif cv == 0:
        verdict = "bounded"
    else:
        verdict = "unbounded"
    reductions = {m: theta.fold(p ** m) for m in levels}
    return StickelbergerReport(theta, p, cv, verdict, reductions)


@dataclass(frozen=True)
class RankCheck:
    status: str  # "pass" | "fail" | "inconclusive"
    ranks: tuple[int, ...]
    expectation: Optional[str]
    note: str = "finite-sample proxy for a statement about m -> infinity"


def rank_trajectory_check(report: TowerReport, sr: StickelbergerReport) -> RankCheck:
    """Compare the last two observed p-ranks with the Stickelberger verdict."""
    ranks = tuple(report.ranks())
    if len(ranks) < 3:
        return RankCheck("inconclusive", ranks, None, "fewer than 3 connected levels")
    if sr.verdict == "zero":
        return RankCheck("inconclusive", ranks, None, "theta is zero; no verdict")
    if sr.verdict == "bounded":
        ok = ranks[-1] == ranks[-2]
        return RankCheck("pass" if ok else "fail", ranks, "constant")
    ok = ranks[-1] > ranks[-2]
    return RankCheck("pass" if ok else "fail", ranks, "increasing")


def example1_expected(n: int, p: int) -> tuple[int, int]:
    """(mu, lambda) for the complete graph K_n with one generator voltage."""
    if n < 3:
        raise ValueError("the complete-graph formula needs n >= 3")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return valuation((n - 2) * n ** (n - 3), p), 1


@dataclass(frozen=True)
class Example1Result:
    n: int
    p: int
    levels: int
    passed: bool
    method: str  # "fit" | "differences"
    expected: tuple[int, int]
    exponents: tuple[int, ...]
    fit: Optional[IwasawaFit] = None
    detail: str = ""

    def summary(self) -> str:
        mu, lam = self.expected
        tag = "PASS" if self.passed else "FAIL"
        if self.fit is not None:
            return (f"{tag}: μ={self.fit.mu} λ={self.fit.lam} (expected μ={mu} λ={lam}); "
                    f"ν={self.fit.nu} m0={self.fit.m0}")
        return f"{tag}: first differences {self.detail} (expected μ={mu} λ={lam})"


def example1_assignment(n: int, p: int) -> VoltageAssignment:
    return single_voltage(Graph.complete(n), p, (1, 2), 1)


def verify_example1(n: int, p: int, M: int, max_vertices: Optional[int] = None) -> Example1Result:
    """Run the K_n single-voltage tower and compare with the closed form."""
    expected = example1_expected(n, p)
    report = analyze_tower(TowerSpec(example1_assignment(n, p), p, M), max_vertices)
    if report.truncated_at is not None:
        raise SizeGuardError(report.notes[0])
    e = report.exponents()
    mu, lam = expected
    if len(e) >= 4:
        fit = fit_invariants(e, p)
        ok = (fit.mu, fit.lam) == expected
        return Example1Result(n, p, M, ok, "fit", expected, tuple(e), fit)
    diffs = [e[m + 1] - e[m] for m in range(len(e) - 1)]
    want = [mu * p ** m * (p - 1) + lam for m in range(len(e) - 1)]
    ok = bool(diffs) and diffs == want
    return Example1Result(n, p, M, ok, "differences", expected, tuple(e), None,
                          f"observed {diffs}, predicted {want}")
