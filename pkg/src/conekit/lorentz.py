"""Gram forms, signature classification, Lorentz decomposition, Wick rotation.

A ``GramForm`` stores a symmetric bilinear form through a basis of ambient
vectors and the Gram matrix of that basis.  On construction the form is
re-expressed in standard ambient coordinates, so evaluating ``inner(u, v)``
on arbitrary vectors costs one exact quadratic form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DependentBasis,
    DimensionMismatch,
    NotFutureCausal,
    NotLorentzian,
)
from .numerics import (
    Scalar,
    SymMatrix,
    Vector,
    exact_inverse,
    exact_rank,
    fraction_sqrt_bounds,
)


class FormKind(enum.Enum):
    POSITIVE_DEFINITE = "positive_definite"
    LORENTZIAN = "lorentzian"
    DEGENERATE = "degenerate"
    OTHER = "other"


@dataclass(frozen=True)
class Signature:
    kind: FormKind
    plus: int
    minus: int
    zero: int


class GramForm:
    """Symmetric bilinear form given on a basis spanning the ambient space."""

    __slots__ = ("basis", "gram", "std")

    def __init__(self, basis: Sequence[Vector], gram: SymMatrix):
        basis = tuple(basis)
        n = len(basis)
        if n == 0 or any(b.dim != n for b in basis):
            raise DimensionMismatch("basis must consist of dim-many ambient vectors")
        if gram.dim != n:
            raise DimensionMismatch("gram matrix size must match basis size")
        bmat = [[basis[i].coords[j] for i in range(n)] for j in range(n)]  # columns = basis
        if exact_rank(bmat) != n:
            raise DependentBasis("basis vectors are linearly dependent")
        inv = exact_inverse(bmat)
        # form in standard coordinates: S = B^-T G B^-1
        g = gram.rows
        tmp = [[sum(g[i][k] * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        s = [[sum(inv[k][i] * tmp[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "std", SymMatrix(s))

    def __setattr__(self, *a):
        raise AttributeError("GramForm is immutable")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def inner(self, u: Vector, v: Vector) -> Scalar:
        return self.std.quad(u, v)

    def in_standard_coordinates(self) -> SymMatrix:
        return self.std

    def __repr__(self):
        return f"GramForm(dim={self.dim})"


def minkowski_form(spatial_dim: int) -> GramForm:
    """diag(1, -1, ..., -1) on the standard basis of R^{1+n}."""
    n = spatial_dim + 1
    basis = [Vector.unit(n, i) for i in range(n)]
    gram = SymMatrix(
        [[Fraction(int(i == j)) * (1 if i == 0 else -1) for j in range(n)] for i in range(n)]
    )
    return GramForm(basis, gram)


def _exact_signature(rows) -> tuple[int, int, int]:
    """Signature of a symmetric rational matrix by congruence elimination."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    pos = neg = zero = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += n - k
                break
            i, j = pair
            # congruence row_i += row_j, col_i += col_j makes a[i][i] = 2 a[i][j] != 0
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            continue
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for r in range(n):
                a[r][k], a[r][piv] = a[r][piv], a[r][k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(n):
                    a[i][j] -= f * a[k][j]
                for j in range(n):
                    a[j][i] -= f * a[j][k]
        k += 1
    return pos, neg, zero


def _float_signature(rows, rel_zero: float = 1e-9) -> tuple[int, int, int]:
    import numpy as np

    evals = np.linalg.eigvalsh(np.array([[float(x) for x in r] for r in rows]))
    cutoff = rel_zero * max(1.0, float(np.max(np.abs(evals))))
    pos = int(np.sum(evals > cutoff))
    neg = int(np.sum(evals < -cutoff))
    return pos, neg, len(rows) - pos - neg


def classify(g: GramForm | SymMatrix) -> Signature:
    """Classify a symmetric form by its signature.

    Exact rational mode uses congruence elimination (Sylvester inertia is a
    congruence invariant); float mode uses a symmetric eigensolver with a
    relative zero threshold.
    """
    m = g.gram if isinstance(g, GramForm) else g
    rows = m.rows
    if m.exact:
        pos, neg, zero = _exact_signature(rows)
    else:
        pos, neg, zero = _float_signature(rows)
    n = len(rows)
    if zero > 0:
        kind = FormKind.DEGENERATE
    elif pos == n:
        kind = FormKind.POSITIVE_DEFINITE
    elif pos == 1 and neg == n - 1:
        kind = FormKind.LORENTZIAN
    else:
        kind = FormKind.OTHER
    return Signature(kind, pos, neg, zero)


class LorentzFrame:
    """A Lorentzian form together with a unit timelike vector t."""

    __slots__ = ("form", "t")

    def __init__(self, form: GramForm, t: Vector):
        sig = classify(form)
        if sig.kind is not FormKind.LORENTZIAN:
            raise NotLorentzian(f"form has signature {sig}")
        if form.inner(t, t) != 1:
            raise NotLorentzian("frame vector must satisfy <t,t> = 1 exactly")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "t", t)

    def __setattr__(self, *a):
        raise AttributeError("LorentzFrame is immutable")

    @property
    def dim(self) -> int:
        return self.form.dim

    def inner(self, u: Vector, v: Vector) -> Scalar:
        return self.form.inner(u, v)


def minkowski_frame(spatial_dim: int) -> LorentzFrame:
    form = minkowski_form(spatial_dim)
    return LorentzFrame(form, Vector.unit(spatial_dim + 1, 0))


@dataclass(frozen=True)
class Decomposition:
    alpha: Scalar
    w: Vector


def decompose(frame: LorentzFrame, v: Vector) -> Decomposition:
    """Split v = alpha*t + w with w orthogonal to t."""
    alpha = frame.inner(v, frame.t)
    w = v - frame.t.scale(alpha)
    return Decomposition(alpha, w)


def wick_inner(frame: LorentzFrame, u: Vector, v: Vector) -> Scalar:
    """Positive definite pairing alpha_u*alpha_v - <w_u, w_v> (exact)."""
    au = frame.inner(u, frame.t)
    av = frame.inner(v, frame.t)
    # <w_u, w_v> = <u,v> - au*av, so the Wick pairing is 2*au*av - <u,v>
    return 2 * au * av - frame.inner(u, v)


def wick_norm(frame: LorentzFrame, v: Vector) -> float:
    q = wick_inner(frame, v, v)
    return math.sqrt(max(float(q), 0.0))


class CausalClass(enum.Enum):
    FUTURE_CAUSAL = "future_causal"
    PAST_CAUSAL = "past_causal"
    SPACELIKE = "spacelike"
    ZERO = "zero"


def causal_class(frame: LorentzFrame, v: Vector) -> CausalClass:
    if v.is_zero():
        return CausalClass.ZERO
    q = frame.inner(v, v)
    if q < 0:
        return CausalClass.SPACELIKE
    return CausalClass.FUTURE_CAUSAL if frame.inner(v, frame.t) >= 0 else CausalClass.PAST_CAUSAL


def future_defect(frame: LorentzFrame, x: Vector) -> float:
    """alpha_x - n(w_x), nonnegative on the causal future."""
    if causal_class(frame, x) not in (CausalClass.FUTURE_CAUSAL, CausalClass.ZERO):
        raise NotFutureCausal(f"{x!r} is not future-causal")
    d = decompose(frame, x)
    return float(d.alpha) - wick_norm(frame, d.w)


def future_defect_exact(frame: LorentzFrame, x: Vector) -> Scalar:
    """Exact-mode variant: alpha_x^2 - n(w_x)^2 (same sign as the defect)."""
    if causal_class(frame, x) not in (CausalClass.FUTURE_CAUSAL, CausalClass.ZERO):
        raise NotFutureCausal(f"{x!r} is not future-causal")
    d = decompose(frame, x)
    return d.alpha * d.alpha - wick_inner(frame, d.w, d.w)


def spatial_basis(frame: LorentzFrame) -> list[Vector]:
    """An exact basis of the orthogonal complement of t."""
    n = frame.dim
    t = frame.t
    out: list[Vector] = []
    rows: list[list] = []
    for i in range(n):
        cand = Vector.unit(n, i)
        w = cand - t.scale(frame.inner(cand, t))
        trial = rows + [list(w.coords)]
        if exact_rank(trial) == len(trial):
            out.append(w)
            rows = trial
        if len(out) == n - 1:
            break
    return out


_WICK_BASIS_CACHE: dict = {}


def wick_orthogonal_basis(frame: LorentzFrame) -> list[Vector]:
    """Exact Gram-Schmidt of the spatial complement under the Wick pairing.

    Returned vectors are mutually Wick-orthogonal but not normalized
    (normalization generally needs square roots).  Cached per frame:
    frames are immutable and samplers call this in a tight loop.
    """
    cached = _WICK_BASIS_CACHE.get(id(frame))
    if cached is not None and cached[0] is frame:
        return list(cached[1])
    basis = spatial_basis(frame)
    out: list[Vector] = []
    for b in basis:
        w = b
        for u in out:
            w = w - u.scale(wick_inner(frame, b, u) / wick_inner(frame, u, u))
        out.append(w)
    # keep the frame alive so the id() key cannot be recycled
    _WICK_BASIS_CACHE[id(frame)] = (frame, tuple(out))
    return out


def gram_from_cone_basis(h, basis: Sequence[Vector]) -> GramForm:
    """Gram matrix of a cone basis under the polarization inner product."""
    from .hypnorm import polar_inner  # deferred: hypnorm depends on cone on us

    basis = list(basis)
    n = len(basis)
    rows = [list(b.coords) for b in basis]
    if exact_rank(rows) != n:
        raise DependentBasis("cone basis is linearly dependent")
    entries = [[polar_inner(h, basis[i], basis[j]) for j in range(n)] for i in range(n)]
    return GramForm(basis, SymMatrix(entries))


def frame_from_unit_vector(form: GramForm, candidate: Vector) -> LorentzFrame:
    """Build a frame from any timelike vector whose norm is a rational square."""
    q = form.inner(candidate, candidate)
    if not isinstance(q, Fraction) or q <= 0:
        raise NotLorentzian("candidate frame vector is not exactly timelike")
    lo, hi = fraction_sqrt_bounds(q)
    if lo != hi:
        raise NotLorentzian("candidate <t,t> is not a perfect rational square")
    return LorentzFrame(form, candidate.scale(Fraction(1) / lo))
