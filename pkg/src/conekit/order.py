"""Cone order, monotone Wick norm, and finite completeness certificates.

Sequential completeness is not finitely decidable, so the certificate
verifies the proof mechanism on a finite prefix: monotone time components,
the telescoping Cauchy bound on the spatial parts (exact), and a declared
limit once the tail residual drops below 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import Cone, contains, leq
from .errors import PreconditionFailed
from .lorentz import LorentzFrame, decompose, wick_inner, wick_norm
from .numerics import Vector

LIMIT_RESIDUAL = 1e-9


@dataclass(frozen=True)
class SeqCheck:
    ok: bool
    fail_index: int | None = None

    def __bool__(self) -> bool:
        return self.ok


class OrderedSequence:
    """Finite prefix of a sequence in span(F), with the cone order."""

    __slots__ = ("cone", "frame", "terms")

    def __init__(self, cone: Cone, frame: LorentzFrame, terms: Sequence[Vector]):
        object.__setattr__(self, "cone", cone)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, *a):
        raise AttributeError("OrderedSequence is immutable")

    @classmethod
    def geometric(
        cls, cone: Cone, frame: LorentzFrame, target: Vector, ratio=Fraction(1, 2), n: int = 64
    ) -> "OrderedSequence":
        """v_k = (1 - ratio^k) * target, approaching target from below."""
        ratio = Fraction(ratio)
        terms = []
        r = Fraction(1)
        for _ in range(n):
            terms.append(target.scale(1 - r))
            r *= ratio
        return cls(cone, frame, terms)

    @classmethod
    def affine(
        cls, cone: Cone, frame: LorentzFrame, start: Vector, step: Vector, n: int
    ) -> "OrderedSequence":
        terms = [start]
        for _ in range(n - 1):
            terms.append(terms[-1] + step)
        return cls(cone, frame, terms)


def is_nondecreasing(s: OrderedSequence) -> SeqCheck:
    """Consecutive differences must lie in the cone (exact)."""
    for k in range(len(s.terms) - 1):
        if not contains(s.cone, s.terms[k + 1] - s.terms[k]):
            return SeqCheck(False, k)
    return SeqCheck(True)


def is_bounded_above(s: OrderedSequence, y: Vector) -> SeqCheck:
    for k, v in enumerate(s.terms):
        if not leq(v, y, s.cone):
            return SeqCheck(False, k)
    return SeqCheck(True)


@dataclass(frozen=True)
class CompletenessCertificate:
    alpha_monotone: bool
    cauchy_bound_ok: bool
    limit: Vector | None
    max_residual: float
    converged: bool


def completeness_certificate(
    s: OrderedSequence, y: Vector, tail: int = 5
) -> CompletenessCertificate:
    """Verify the convergence mechanism on the finite prefix.

    (a) time components alpha_k nondecreasing and bounded by alpha_y;
    (b) n(w_j - w_k)^2 <= (alpha_j - alpha_k)^2 for all j > k, exactly
        (the telescoping bound from the future-defect inequality);
    (c) limit declared as the last term once consecutive Wick distance
        drops below 1e-9, with the max tail residual reported.
    """
    if not is_nondecreasing(s):
        raise PreconditionFailed("sequence is not nondecreasing")
    if not is_bounded_above(s, y):
        raise PreconditionFailed("sequence is not bounded above by y")
    if not s.terms:
        raise PreconditionFailed("empty sequence")
    frame = s.frame
    decs = [decompose(frame, v) for v in s.terms]
    alphas = [d.alpha for d in decs]
    alpha_y = decompose(frame, y).alpha
    alpha_monotone = all(
        alphas[k] <= alphas[k + 1] for k in range(len(alphas) - 1)
    ) and all(a <= alpha_y for a in alphas)
    cauchy_ok = True
    for k in range(len(decs)):
        for j in range(k + 1, len(decs)):
            dw = decs[j].w - decs[k].w
            da = alphas[j] - alphas[k]
            if da < 0 or wick_inner(frame, dw, dw) > da * da:
                cauchy_ok = False
                break
        if not cauchy_ok:
            break
    limit = None
    converged = False
    max_residual = float("inf")
    if len(s.terms) >= 2:
        last_gap = wick_norm(frame, s.terms[-1] - s.terms[-2])
        if last_gap < LIMIT_RESIDUAL:
            limit = s.terms[-1]
            converged = True
            tail_terms = s.terms[-(tail + 1) : -1]
            max_residual = max(
                (wick_norm(frame, v - limit) for v in tail_terms), default=0.0
            )
    return CompletenessCertificate(alpha_monotone, cauchy_ok, limit, max_residual, converged)


def monotone_wick_check(frame: LorentzFrame, cone: Cone, x: Vector, y: Vector) -> bool:
    """Wick norm monotonicity along the cone order, in exact squares."""
    if not (contains(cone, x) and contains(cone, y) and leq(x, y, cone)):
        raise PreconditionFailed("need x, y in F with x <= y")
    return wick_inner(frame, x, x) <= wick_inner(frame, y, y)
