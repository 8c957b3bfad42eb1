"""Constructive solvers and exact verifiers for interpolation-exponent feasibility.

Two families of certificates are produced.  Both witness that a target
weighted estimate interpolates between an unweighted endpoint (the sharp
unweighted region, strictly inside) and a weak-type weighted endpoint:

* :func:`solve_one` / :func:`verify_one` for the separable weight with
  exponent pair (alpha, beta), alpha below 1/q;
* :func:`solve_two` / :func:`verify_two` for the radial weight exponent gamma.

Solvability is equivalent to explicit inequalities in the input exponents,
and the solvers are exact: they pick the interpolation parameter theta by a
deterministic midpoint rule inside the feasible window, back-substitute the
remaining exponents, and check every constraint with rational arithmetic.
A returned certificate always verifies; a constructed certificate failing
its verifier indicates an implementation bug and aborts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exponents import INF, DomainError, ExtScalar, ScalarLike

__all__ = [
    "CertificateOne",
    "CertificateTwo",
    "Infeasible",
    "InternalSolverError",
    "solve_one",
    "verify_one",
    "solve_two",
    "verify_two",
    "VerifyResult",
]


class InternalSolverError(RuntimeError):
    """A constructed certificate failed its own verifier (implementation bug)."""


@dataclass(frozen=True)
class Infeasible:
    """Negative solver outcome with the inequality that rules a witness out."""

    reason: str


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _record(pairs: list[tuple[str, ExtScalar]]) -> str:
    return " ".join(f"{k}={v}" for k, v in pairs)


@dataclass(frozen=True)
class CertificateOne:
    """Witness (theta, q0, q1, r0, r1) for the separable-weight proposition."""

    theta: ExtScalar
    q0: ExtScalar
    q1: ExtScalar
    r0: ExtScalar
    r1: ExtScalar

    def record(self) -> str:
        return _record(
            [("theta", self.theta), ("q0", self.q0), ("q1", self.q1),
             ("r0", self.r0), ("r1", self.r1)]
        )


@dataclass(frozen=True)
class CertificateTwo:
    """Witness (theta, q0, q1, r0, r1, gamma1) for the radial-weight proposition."""

    theta: ExtScalar
    q0: ExtScalar
    q1: ExtScalar
    r0: ExtScalar
    r1: ExtScalar
    gamma1: ExtScalar

    def record(self) -> str:
        return _record(
            [("theta", self.theta), ("q0", self.q0), ("q1", self.q1),
             ("r0", self.r0), ("r1", self.r1), ("gamma1", self.gamma1)]
        )


def _frac(x: ScalarLike) -> Fraction:
    return ExtScalar.coerce(x).as_fraction()


def _inv(x: ExtScalar) -> Fraction:
    # 1/x with 1/inf = 0; exact.
    return x.recip().as_fraction()


def _from_inv(value: Fraction) -> ExtScalar:
    # exponent from its reciprocal; 0 maps to infinity
    return INF if value == 0 else ExtScalar(1 / value)


def _inv_conj_from_r(r: ExtScalar) -> Fraction:
    return Fraction(1) - _inv(r)


# ---------------------------------------------------------------------------
# Proposition one: separable weight, alpha < 1/q
# ---------------------------------------------------------------------------


def solve_one(
    alpha: ScalarLike, beta: ScalarLike, r: ScalarLike, q: ScalarLike
) -> CertificateOne | Infeasible:
    """Construct an interpolation certificate for the separable weight.

    Preconditions: 0 <= beta <= alpha < 1/q, alpha > 0, 1 <= r < inf,
    0 < q < inf, all exact rationals.  A certificate exists iff
    alpha + beta > 2/q - 1/2 and alpha + 2 beta >= 3/q - 1/r'.
    """
    a = _frac(alpha)
    b = _frac(beta)
    r = ExtScalar.coerce(r)
    q = ExtScalar.coerce(q)
    if r.is_infinite or r < 1:
        raise DomainError("solve_one needs 1 <= r < inf")
    if q.is_infinite or q <= 0:
        raise DomainError("solve_one needs 0 < q < inf")
    qf = q.as_fraction()
    if not (0 <= b <= a):
        raise DomainError("solve_one needs 0 <= beta <= alpha")
    if a == 0:
        raise DomainError("solve_one needs alpha > 0 (q1 = theta/alpha)")

    # Feasibility is decided before the alpha < 1/q domain check so that
    # infeasible inputs sitting on that boundary still report Infeasible.
    inv_q = 1 / qf
    inv_rc = _inv_conj_from_r(r)
    if a + b <= 2 * inv_q - Fraction(1, 2):
        return Infeasible("alpha+beta <= 2/q - 1/2")
    if a + 2 * b < 3 * inv_q - inv_rc:
        return Infeasible("alpha+2beta < 3/q - 1/r'")
    if a >= inv_q:
        raise DomainError("solve_one needs alpha < 1/q")

    # theta window (max(2a-2b, 0), 1 - 4/q + 4a), clipped by 1 - 3/q + 3a and 1
    lo = max(2 * a - 2 * b, Fraction(0))
    hi = min(1 - 4 * inv_q + 4 * a, 1 - 3 * inv_q + 3 * a, Fraction(1))
    if not lo < hi:
        raise InternalSolverError("empty theta window despite feasible inequalities")
    theta = (lo + hi) / 2
    if theta == a * qf:  # would force q0 = q1; move to the quarter point
        theta = lo + (hi - lo) / 4

    inv_r = Fraction(1) - inv_rc
    t1 = max(2 * a - 2 * b, theta - inv_r, Fraction(0))  # theta / r1'
    inv_r1c = t1 / theta
    inv_r0c = (inv_rc - t1) / (1 - theta)

    cert = CertificateOne(
        theta=ExtScalar(theta),
        q0=_from_inv((inv_q - a) / (1 - theta)),
        q1=ExtScalar(theta / a),
        r0=_from_inv(1 - inv_r0c),
        r1=_from_inv(1 - inv_r1c),
    )
    check = verify_one(cert, a, b, r, q)
    if not check.ok:
        raise InternalSolverError(f"constructed certificate fails: {check.violations}")
    return cert


def verify_one(
    cert: CertificateOne, alpha: ScalarLike, beta: ScalarLike,
    r: ScalarLike, q: ScalarLike,
) -> VerifyResult:
    """Check every constraint of the separable proposition exactly.

    Returns a pass/fail result; on failure the violated constraints are
    listed by name, one entry per failed constraint.
    """
    a = _frac(alpha)
    b = _frac(beta)
    r = ExtScalar.coerce(r)
    q = ExtScalar.coerce(q)
    bad: list[str] = []

    theta = cert.theta
    if not (theta.is_finite and 0 < theta.as_fraction() < 1):
        bad.append("theta-range")
        return VerifyResult(False, tuple(bad))
    th = theta.as_fraction()

    if cert.q0 < 1:
        bad.append("q0-range")
    if not (cert.q1.is_finite and cert.q1 > 0):
        bad.append("q1-range")
    if cert.r0 < 1:
        bad.append("r0-range")
    if cert.r1.is_infinite or cert.r1 < 1:
        bad.append("r1-range")

    inv_q0, inv_q1 = _inv(cert.q0), _inv(cert.q1)
    inv_r0, inv_r1 = _inv(cert.r0), _inv(cert.r1)
    inv_r0c, inv_r1c = 1 - inv_r0, 1 - inv_r1

    if (1 - th) * inv_q0 + th * inv_q1 != _inv(q):
        bad.append("q-convexity")
    if (1 - th) * inv_r0 + th * inv_r1 != _inv(r):
        bad.append("r-convexity")
    if inv_q0 > inv_r0c / 3:
        bad.append("q0-fz-region")
    if inv_q0 >= Fraction(1, 4):
        bad.append("q0-above-4")
    if a / th != inv_q1:
        bad.append("alpha-split")
    if b / th < inv_q1 - inv_r1c / 2:
        bad.append("beta-split")
    if cert.q0 == cert.q1:
        bad.append("q0-ne-q1")
    return VerifyResult(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# Proposition two: radial weight
# ---------------------------------------------------------------------------


def _pick_theta_two(g: Fraction, inv_q: Fraction, inv_rc: Fraction) -> list[Fraction]:
    lo = max(
        4 * inv_q - 2 * g - Fraction(4, 3) * inv_rc,
        12 * inv_q - 6 * g - 4 * inv_rc,
        Fraction(0),
    )
    hi = min(1 - 4 * inv_q + 4 * g, Fraction(1))
    if not lo < hi:
        raise InternalSolverError("empty theta window despite feasible inequalities")
    # candidates, all strictly interior; tried in order until a certificate verifies
    return [lo + (hi - lo) * w for w in (Fraction(1, 2), Fraction(1, 4), Fraction(3, 4))]


def solve_two(
    gamma: ScalarLike, r: ScalarLike, q: ScalarLike
) -> CertificateTwo | Infeasible:
    """Construct an interpolation certificate for the radial weight.

    Preconditions: gamma > 0 rational, 1 <= r <= inf, 0 < q < inf.  A
    certificate exists iff gamma >= max(3/(2q) - 1/(2r'), 2/q - 1/r') and
    gamma > 2/q - 1/2.
    """
    g = _frac(gamma)
    r = ExtScalar.coerce(r)
    q = ExtScalar.coerce(q)
    if g <= 0:
        raise DomainError("solve_two needs gamma > 0")
    if r < 1:
        raise DomainError("solve_two needs 1 <= r <= inf")
    if q.is_infinite or q <= 0:
        raise DomainError("solve_two needs 0 < q < inf")
    inv_q = _inv(q)
    inv_rc = _inv_conj_from_r(r)

    if g < max(Fraction(3, 2) * inv_q - inv_rc / 2, 2 * inv_q - inv_rc):
        return Infeasible("gamma < max(3/(2q) - 1/(2r'), 2/q - 1/r')")
    if g <= 2 * inv_q - Fraction(1, 2):
        return Infeasible("gamma <= 2/q - 1/2")

    last_failure: tuple[str, ...] = ()
    for theta in _pick_theta_two(g, inv_q, inv_rc):
        # window for u = (1-theta)/q0 below the strict caps (1-theta)/4 and 1/q
        low = max(inv_q - g, inv_q - g / 2 - theta / 4, Fraction(0))
        high = min(inv_q, inv_rc / 3, g - 2 * inv_q + inv_rc)
        strict_cap = min((1 - theta) / 4, inv_q)
        if low > high:
            continue
        for weight in (Fraction(1, 2), Fraction(1, 4)):
            cap = min(high, strict_cap)
            u = low + (cap - low) * weight if low < cap else low
            if not (low <= u <= high and u < strict_cap):
                continue
            v = max(3 * u, inv_rc - theta)  # (1-theta)/r0'
            cert = CertificateTwo(
                theta=ExtScalar(theta),
                q0=_from_inv(u / (1 - theta)),
                q1=_from_inv((inv_q - u) / theta),
                r0=_from_inv(1 - v / (1 - theta)),
                r1=_from_inv(1 - (inv_rc - v) / theta),
                gamma1=ExtScalar(g / theta),
            )
            check = verify_two(cert, g, r, q)
            if check.ok:
                return cert
            last_failure = check.violations
    raise InternalSolverError(f"no verified certificate found: {last_failure}")


def verify_two(
    cert: CertificateTwo, gamma: ScalarLike, r: ScalarLike, q: ScalarLike
) -> VerifyResult:
    """Check every constraint of the radial proposition exactly."""
    g = _frac(gamma)
    r = ExtScalar.coerce(r)
    q = ExtScalar.coerce(q)
    bad: list[str] = []

    theta = cert.theta
    if not (theta.is_finite and 0 < theta.as_fraction() < 1):
        bad.append("theta-range")
        return VerifyResult(False, tuple(bad))
    th = theta.as_fraction()

    if cert.q0 < 1:
        bad.append("q0-range")
    if not (cert.q1.is_finite and cert.q1 > 0):
        bad.append("q1-range")
    if cert.r0 < 1:
        bad.append("r0-range")
    if cert.r1 < 1:
        bad.append("r1-range")

    inv_q0, inv_q1 = _inv(cert.q0), _inv(cert.q1)
    inv_r0c = 1 - _inv(cert.r0)
    inv_r1c = 1 - _inv(cert.r1)

    if (1 - th) * inv_q0 + th * inv_q1 != _inv(q):
        bad.append("q-convexity")
    if (1 - th) * _inv(cert.r0) + th * _inv(cert.r1) != _inv(r):
        bad.append("r-convexity")
    if 3 * inv_q0 > inv_r0c:
        bad.append("q0-fz-region")
    if inv_q0 >= Fraction(1, 4):
        bad.append("q0-above-4")
    if cert.q0 == cert.q1:
        bad.append("q0-ne-q1")
    if cert.gamma1.is_infinite or th * cert.gamma1.as_fraction() != g:
        bad.append("gamma-split")
        return VerifyResult(False, tuple(bad))
    g1 = cert.gamma1.as_fraction()
    if g1 < max(inv_q1, 2 * inv_q1 - inv_r1c, 2 * inv_q1 - Fraction(1, 2)):
        bad.append("gamma1-floor")
    return VerifyResult(not bad, tuple(bad))
