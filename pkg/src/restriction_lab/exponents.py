"""Exact extended-rational exponent arithmetic and boundedness-region classifiers.

Every exponent (alpha, beta, gamma, r, q, ...) is an :class:`ExtScalar`: an
exact rational extended with a single point at infinity.  The classifiers in
this module decide membership in the sharp boundedness regions for the
weighted circle-extension operators with weights (1+|x|)^a (1+|y|)^b and
(1+|x|+|y|)^g.  All comparisons are exact; no floating point enters any
decision, because the strict-versus-nonstrict distinctions at the region
boundaries are precisely what is being decided.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "ExtScalar",
    "INF",
    "DomainError",
    "conjugate_exponent",
    "SeparableParams",
    "RadialParams",
    "Verdict",
    "classify_unweighted",
    "classify_separable",
    "classify_radial",
    "riesz_diagram",
    "DiagramRow",
    "diagram_to_csv",
]

ScalarLike = Union["ExtScalar", Fraction, int, str]


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's stated domain."""


class ExtScalar:
    """Exact nonnegative-capable rational extended with a unique +infinity.

    Canonical form is a reduced :class:`fractions.Fraction`; infinity is the
    single value ``INF``.  The reciprocal is total (recip(0) = inf,
    recip(inf) = 0) and comparison is a total order with infinity maximal.
    Intermediate threshold arithmetic may produce negative values; the
    nonnegativity constraints of the domain types are enforced by the
    parameter classes, not here.
    """

    __slots__ = ("_frac",)

    def __init__(self, value: ScalarLike = 0):
        if isinstance(value, ExtScalar):
            self._frac = value._frac
        elif isinstance(value, str):
            self._frac = _parse_fraction(value)
        elif isinstance(value, (int, Fraction)):
            self._frac = Fraction(value)
        else:
            raise TypeError(f"cannot build ExtScalar from {type(value).__name__}")

    @classmethod
    def _wrap(cls, frac: Fraction | None) -> "ExtScalar":
        obj = object.__new__(cls)
        obj._frac = frac
        return obj

    @classmethod
    def infinity(cls) -> "ExtScalar":
        return cls._wrap(None)

    @classmethod
    def coerce(cls, value: ScalarLike) -> "ExtScalar":
        return value if isinstance(value, ExtScalar) else cls(value)

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def is_finite(self) -> bool:
        return self._frac is not None

    def as_fraction(self) -> Fraction:
        if self._frac is None:
            raise DomainError("infinity has no Fraction value")
        return self._frac

    def recip(self) -> "ExtScalar":
        """Total reciprocal: recip(inf) = 0, recip(0) = inf."""
        if self._frac is None:
            return ExtScalar._wrap(Fraction(0))
        if self._frac == 0:
            return ExtScalar._wrap(None)
        return ExtScalar._wrap(1 / self._frac)

    # -- arithmetic (partial where genuinely ambiguous: inf-inf, 0*inf, ...) --

    def __add__(self, other: ScalarLike) -> "ExtScalar":
        a, b = self._frac, ExtScalar.coerce(other)._frac
        if a is None or b is None:
            return ExtScalar._wrap(None)
        return ExtScalar._wrap(a + b)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "ExtScalar":
        a, b = self._frac, ExtScalar.coerce(other)._frac
        if b is None:
            raise DomainError("subtraction of infinity is undefined")
        if a is None:
            return ExtScalar._wrap(None)
        return ExtScalar._wrap(a - b)

    def __mul__(self, other: ScalarLike) -> "ExtScalar":
        a, b = self._frac, ExtScalar.coerce(other)._frac
        if a is None or b is None:
            fin = b if a is None else a
            if fin is not None and fin == 0:
                raise DomainError("0 * infinity is undefined")
            if fin is not None and fin < 0:
                raise DomainError("negative * infinity not supported")
            return ExtScalar._wrap(None)
        return ExtScalar._wrap(a * b)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "ExtScalar":
        return self * ExtScalar.coerce(other).recip()

    def __neg__(self) -> "ExtScalar":
        if self._frac is None:
            raise DomainError("negation of infinity not supported")
        return ExtScalar._wrap(-self._frac)

    # -- total order with infinity maximal --

    def _cmp(self, other: ScalarLike) -> int:
        b = ExtScalar.coerce(other)._frac
        a = self._frac
        if a is None and b is None:
            return 0
        if a is None:
            return 1
        if b is None:
            return -1
        return (a > b) - (a < b)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (ExtScalar, Fraction, int, str)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: ScalarLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: ScalarLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: ScalarLike) -> bool:
        return self._cmp(other) >= 0

    def __hash__(self) -> int:
        return hash(self._frac)

    def __float__(self) -> float:
        return float("inf") if self._frac is None else float(self._frac)

    def __str__(self) -> str:
        if self._frac is None:
            return "inf"
        if self._frac.denominator == 1:
            return str(self._frac.numerator)
        return f"{self._frac.numerator}/{self._frac.denominator}"

    def __repr__(self) -> str:
        return f"ExtScalar({str(self)!r})"


def _parse_fraction(text: str) -> Fraction | None:
    t = text.strip()
    if t in ("inf", "infinity", "oo"):
        return None
    if "/" in t:
        num, _, den = t.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(t))


INF = ExtScalar.infinity()

_ZERO = Fraction(0)
_ONE = Fraction(1)


def conjugate_exponent(r: ScalarLike) -> ExtScalar:
    """Holder conjugate r/(r-1), with conjugate(1) = inf and conjugate(inf) = 1."""
    r = ExtScalar.coerce(r)
    if r < 1:
        raise DomainError(f"conjugate exponent needs r >= 1, got {r}")
    if r.is_infinite:
        return ExtScalar(1)
    rf = r.as_fraction()
    if rf == 1:
        return INF
    return ExtScalar(rf / (rf - 1))


def _inv_conjugate(r: ExtScalar) -> Fraction:
    # 1/r' = 1 - 1/r in exact arithmetic; total since r >= 1.
    return _ONE - r.recip().as_fraction()


# ---------------------------------------------------------------------------
# parameter tuples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparableParams:
    """Arguments of the separable-weight extension estimate: L^r -> L^q with
    weight exponents (alpha, beta)."""

    alpha: ExtScalar
    beta: ExtScalar
    r: ExtScalar
    q: ExtScalar

    def __init__(self, alpha: ScalarLike, beta: ScalarLike, r: ScalarLike, q: ScalarLike):
        alpha = ExtScalar.coerce(alpha)
        beta = ExtScalar.coerce(beta)
        r = ExtScalar.coerce(r)
        q = ExtScalar.coerce(q)
        if alpha.is_infinite or beta.is_infinite or alpha < 0 or beta < 0:
            raise DomainError("weight exponents must be finite and >= 0")
        if r < 1:
            raise DomainError("r must lie in [1, inf]")
        if q <= 0:
            raise DomainError("q must lie in (0, inf]")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class RadialParams:
    """Arguments of the radial-weight extension estimate (exponent gamma)."""

    gamma: ExtScalar
    r: ExtScalar
    q: ExtScalar

    def __init__(self, gamma: ScalarLike, r: ScalarLike, q: ScalarLike):
        gamma = ExtScalar.coerce(gamma)
        r = ExtScalar.coerce(r)
        q = ExtScalar.coerce(q)
        if gamma.is_infinite or gamma < 0:
            raise DomainError("gamma must be finite and >= 0")
        if r < 1:
            raise DomainError("r must lie in [1, inf]")
        if q <= 0:
            raise DomainError("q must lie in (0, inf]")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "q", q)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of a region classifier.

    Exactly one of ``case_tag`` (when bounded) and ``violated`` (the first
    failed condition, when unbounded) is set.
    """

    bounded: bool
    case_tag: str | None = None
    violated: str | None = None

    def __post_init__(self):
        if self.bounded and (self.case_tag is None or self.violated is not None):
            raise ValueError("bounded verdict must carry exactly a case tag")
        if not self.bounded and (self.violated is None or self.case_tag is not None):
            raise ValueError("unbounded verdict must carry exactly a violation")

    @property
    def decision(self) -> str:
        return "bounded" if self.bounded else "unbounded"

    @property
    def label(self) -> str:
        return self.case_tag if self.bounded else self.violated  # type: ignore[return-value]

    def __str__(self) -> str:
        if self.bounded:
            return f"BOUNDED case={self.case_tag}"
        return f"UNBOUNDED violated={self.violated}"


def _bounded(tag: str) -> Verdict:
    return Verdict(True, case_tag=tag)


def _unbounded(name: str) -> Verdict:
    return Verdict(False, violated=name)


def classify_unweighted(r: ScalarLike, q: ScalarLike) -> Verdict:
    """Sharp unweighted region: bounded iff q = inf, or q >= 3r' and q > 4.

    The equality case q = 3r' is tagged ``fz-endpoint``.
    """
    r = ExtScalar.coerce(r)
    q = ExtScalar.coerce(q)
    if r < 1:
        raise DomainError("r must lie in [1, inf]")
    if q <= 0:
        raise DomainError("q must lie in (0, inf]")
    if q.is_infinite:
        return _bounded("q-infinite")
    qf = q.as_fraction()
    inv_rc = _inv_conjugate(r)  # 1/r', zero when r = 1
    # q >= 3r'  <=>  3/q <= 1/r' in total arithmetic (r = 1 forces q = inf).
    if 3 / qf > inv_rc:
        return _unbounded("q-below-3r-conjugate")
    if qf <= 4:
        return _unbounded("q-at-most-4")
    if 3 / qf == inv_rc:
        return _bounded("fz-endpoint")
    return _bounded("fz-interior")


def classify_separable(p: SeparableParams) -> Verdict:
    """Sharp boundedness region for the separable weight, all cases exact.

    Normalizes to M = max(alpha, beta), m = min(alpha, beta).  Bounded iff
    q = inf, or the constant-density condition alpha+beta > 2/q - 1/2 holds
    together with one of

      (i)   M >= 1/q and 2m > 2/q - 1/r'
      (ii)  M <  1/q and alpha+beta+m > 3/q - 1/r'
      (iii) 1 < r <= q and M > 1/q and 2m = 2/q - 1/r'
      (iv)  1 < r <= q and M < 1/q and alpha+beta+m = 3/q - 1/r'

    The case tag reports the first matching clause in the order i..iv.
    """
    if p.q.is_infinite:
        return _bounded("q-infinite")
    qf = p.q.as_fraction()
    a = p.alpha.as_fraction()
    b = p.beta.as_fraction()
    big, small = (a, b) if a >= b else (b, a)
    inv_q = 1 / qf
    inv_rc = _inv_conjugate(p.r)

    if a + b <= 2 * inv_q - Fraction(1, 2):
        return _unbounded("constant-density")

    pair_thresh = 2 * inv_q - inv_rc  # threshold for 2*min
    triple_thresh = 3 * inv_q - inv_rc  # threshold for alpha+beta+min
    r_window = p.r > 1 and p.r <= p.q

    if big >= inv_q and 2 * small > pair_thresh:
        return _bounded("i")
    if big < inv_q and a + b + small > triple_thresh:
        return _bounded("ii")
    if r_window and big > inv_q and 2 * small == pair_thresh:
        return _bounded("iii")
    if r_window and big < inv_q and a + b + small == triple_thresh:
        return _bounded("iv")

    # Unbounded: name the first failed condition, following the necessity
    # lemmas for the Knapp example and its endpoints.
    if big > inv_q:
        if 2 * small < pair_thresh:
            return _unbounded("knapp-min-weight")
        # equality endpoint, r-window must have failed
        if p.r == 1:
            return _unbounded("endpoint-r-equals-one")
        return _unbounded("endpoint-r-greater-q")
    if big == inv_q:
        if 2 * small < pair_thresh:
            return _unbounded("knapp-min-weight")
        return _unbounded("endpoint-max-weight-at-inv-q")
    if a + b + small < triple_thresh:
        return _unbounded("knapp-sum-weight")
    if p.r == 1:
        return _unbounded("endpoint-r-equals-one")
    return _unbounded("endpoint-r-greater-q")


def classify_radial(p: RadialParams) -> Verdict:
    """Sharp boundedness region for the radial weight, all cases exact.

    With T = max(3/(2q) - 1/(2r'), 2/q - 1/r'): bounded iff q = inf, or
    gamma > 2/q - 1/2 together with gamma > T, or gamma = T with
    1 < r <= q and q != r'.
    """
    if p.q.is_infinite:
        return _bounded("q-infinite")
    qf = p.q.as_fraction()
    g = p.gamma.as_fraction()
    inv_q = 1 / qf
    inv_rc = _inv_conjugate(p.r)

    if g <= 2 * inv_q - Fraction(1, 2):
        return _unbounded("constant-density")

    threshold = max(
        Fraction(3, 2) * inv_q - inv_rc / 2,
        2 * inv_q - inv_rc,
    )
    if g > threshold:
        return _bounded("radial-strict")
    if g < threshold:
        return _unbounded("knapp-threshold")
    # gamma sits exactly on the threshold
    if p.r == 1:
        return _unbounded("endpoint-r-equals-one")
    if p.r > p.q:
        return _unbounded("endpoint-r-greater-q")
    if inv_q == inv_rc:  # q = r'
        return _unbounded("endpoint-q-equals-r-conjugate")
    return _bounded("radial-endpoint")


# ---------------------------------------------------------------------------
# Riesz diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramRow:
    inv_r: Fraction
    inv_q: Fraction
    verdict: Verdict


def riesz_diagram(
    kind: str,
    weights: dict[str, ScalarLike],
    grid_n: int,
) -> list[DiagramRow]:
    """Classify the (1/r, 1/q) grid {(i/n, j/n)} at fixed weight exponents.

    ``kind`` is ``"separable"`` (weights alpha, beta) or ``"radial"``
    (weight gamma).  1/r ranges over [0, 1] (i = 0..n, 0 meaning r = inf)
    and 1/q over (0, 1] (j = 1..n).  Rows carry the verdict with its case
    tag so the colored regions of the diagrams are reconstructible.
    """
    if grid_n < 2:
        raise DomainError("grid_n must be >= 2")
    rows: list[DiagramRow] = []
    for i in range(grid_n + 1):
        inv_r = Fraction(i, grid_n)
        r = INF if inv_r == 0 else ExtScalar(1 / inv_r)
        for j in range(1, grid_n + 1):
            inv_q = Fraction(j, grid_n)
            q = ExtScalar(1 / inv_q)
            if kind == "separable":
                verdict = classify_separable(
                    SeparableParams(weights["alpha"], weights["beta"], r, q)
                )
            elif kind == "radial":
                verdict = classify_radial(RadialParams(weights["gamma"], r, q))
            else:
                raise DomainError(f"unknown diagram kind {kind!r}")
            rows.append(DiagramRow(inv_r, inv_q, verdict))
    return rows


def diagram_to_csv(rows: Iterable[DiagramRow], metadata: dict[str, str]) -> str:
    """Render diagram rows as CSV with '#'-prefixed metadata lines."""
    buf = io.StringIO()
    for key in sorted(metadata):
        buf.write(f"#{key}={metadata[key]}\n")
    buf.write("inv_r,inv_q,decision,case\n")
    for row in rows:
        buf.write(f"{row.inv_r},{row.inv_q},{row.verdict.decision},{row.verdict.label}\n")
    return buf.getvalue()
