import random
from fractions import Fraction

import pytest

from restriction_lab.exponents import DomainError, ExtScalar
from restriction_lab.feasibility import (
    CertificateOne,
    CertificateTwo,
    Infeasible,
    solve_one,
    solve_two,
    verify_one,
    verify_two,
)


def rational(rng, lo, hi, max_den=30):
    den = rng.randint(1, max_den)
    lo_n = int(Fraction(lo) * den) + 1
    hi_n = int(Fraction(hi) * den)
    if hi_n < lo_n:
        return None
    return Fraction(rng.randint(lo_n, hi_n), den)


class TestSolveOne:
    def test_boundary_case_has_certificate(self):
        cert = solve_one("1/3", "1/3", 2, 2)
        assert isinstance(cert, CertificateOne)
        assert verify_one(cert, "1/3", "1/3", 2, 2).ok

    def test_infeasible_triple_inequality(self):
        out = solve_one("1/5", 0, 2, 2)
        assert isinstance(out, Infeasible)

    def test_infeasible_on_alpha_boundary(self):
        out = solve_one("1/100", 0, 1, 100)
        assert isinstance(out, Infeasible)
        assert "alpha+2beta" in out.reason

    def test_preconditions(self):
        with pytest.raises(DomainError):
            solve_one("1/3", "1/2", 2, 2)  # beta > alpha
        with pytest.raises(DomainError):
            solve_one(0, 0, 2, 8)  # alpha = 0 rejected
        with pytest.raises(DomainError):
            solve_one("1/3", "1/3", "inf", 2)  # r must be finite

    def test_determinism(self):
        a = solve_one("2/7", "1/9", "5/3", "7/4")
        b = solve_one("2/7", "1/9", "5/3", "7/4")
        assert a == b

    def test_record_format(self):
        cert = solve_one("1/3", "1/3", 2, 2)
        rec = cert.record()
        assert rec.split(" ")[0].startswith("theta=")
        assert all("=" in part for part in rec.split(" "))


class TestVerifyOne:
    def test_detects_forced_q0_equals_q1(self):
        # theta = alpha*q makes q1 = q and the back-substituted q0 = q as well
        a = Fraction(1, 3)
        q = Fraction(2)
        theta = a * q
        q0 = (1 - theta) / (Fraction(1) / q - a)
        bad = CertificateOne(
            theta=ExtScalar(theta),
            q0=ExtScalar(q0),
            q1=ExtScalar(theta / a),
            r0=ExtScalar(2),
            r1=ExtScalar(2),
        )
        result = verify_one(bad, a, Fraction(1, 3), 2, 2)
        assert not result.ok
        assert "q0-ne-q1" in result.violations

    def test_explicit_q0_equals_q1(self):
        cert = solve_one("1/3", "1/3", 2, 2)
        tampered = CertificateOne(cert.theta, cert.q1, cert.q1, cert.r0, cert.r1)
        result = verify_one(tampered, "1/3", "1/3", 2, 2)
        assert not result.ok and "q0-ne-q1" in result.violations

    def test_theta_out_of_range(self):
        cert = solve_one("1/3", "1/3", 2, 2)
        tampered = CertificateOne(ExtScalar(2), cert.q0, cert.q1, cert.r0, cert.r1)
        result = verify_one(tampered, "1/3", "1/3", 2, 2)
        assert result.violations == ("theta-range",)


class TestSolveTwo:
    def test_endpoint_case(self):
        cert = solve_two("2/3", "3/2", 2)
        assert isinstance(cert, CertificateTwo)
        assert verify_two(cert, "2/3", "3/2", 2).ok

    def test_infeasible(self):
        out = solve_two("1/10", 2, 2)
        assert isinstance(out, Infeasible)

    def test_r_one_feasible(self):
        cert = solve_two(1, 1, 4)
        assert isinstance(cert, CertificateTwo)
        assert verify_two(cert, 1, 1, 4).ok

    def test_r_infinite_allowed(self):
        out = solve_two(2, "inf", 2)
        assert isinstance(out, CertificateTwo)
        assert verify_two(out, 2, "inf", 2).ok

    def test_preconditions(self):
        with pytest.raises(DomainError):
            solve_two(0, 2, 2)
        with pytest.raises(DomainError):
            solve_two(1, 2, "inf")

    def test_determinism(self):
        assert solve_two("5/7", "4/3", "9/5") == solve_two("5/7", "4/3", "9/5")


class TestVerifyTwo:
    def test_gamma_split_violation(self):
        cert = solve_two("2/3", "3/2", 2)
        tampered = CertificateTwo(
            cert.theta, cert.q0, cert.q1, cert.r0, cert.r1, cert.gamma1 + 1
        )
        result = verify_two(tampered, "2/3", "3/2", 2)
        assert not result.ok and "gamma-split" in result.violations

    def test_theta_range_violation(self):
        cert = solve_two("2/3", "3/2", 2)
        tampered = CertificateTwo(
            ExtScalar("3/2"), cert.q0, cert.q1, cert.r0, cert.r1, cert.gamma1
        )
        result = verify_two(tampered, "2/3", "3/2", 2)
        assert result.violations == ("theta-range",)


class TestIffProperty:
    def test_solve_one_iff_sample(self):
        rng = random.Random(101)
        hits = {True: 0, False: 0}
        for _ in range(2000):
            q = rational(rng, Fraction(1, 6), 8)
            r = rational(rng, 1, 10)
            if q is None or r is None:
                continue
            a = rational(rng, 0, Fraction(1) / q)
            if a is None or a <= 0 or a >= 1 / q:
                continue
            b = rng.choice([Fraction(0), rational(rng, 0, a) or Fraction(0)])
            if b > a:
                continue
            feasible = (a + b > 2 / q - Fraction(1, 2)) and (
                a + 2 * b >= 3 / q - (1 - 1 / r)
            )
            out = solve_one(a, b, r, q)
            assert (not isinstance(out, Infeasible)) == feasible
            hits[feasible] += 1
            if feasible:
                assert verify_one(out, a, b, r, q).ok
        assert min(hits.values()) > 50  # both branches exercised

    def test_solve_two_iff_sample(self):
        rng = random.Random(103)
        hits = {True: 0, False: 0}
        for _ in range(2000):
            q = rational(rng, Fraction(1, 6), 8)
            if q is None:
                continue
            r = rng.choice(["inf", rational(rng, 1, 10) or Fraction(2)])
            g = rational(rng, 0, 3)
            if g is None or g <= 0:
                continue
            inv_rc = Fraction(1) if r == "inf" else 1 - 1 / r
            feasible = (
                g >= max(Fraction(3, 2) / q - inv_rc / 2, 2 / q - inv_rc)
                and g > 2 / q - Fraction(1, 2)
            )
            out = solve_two(g, r, q)
            assert (not isinstance(out, Infeasible)) == feasible
            hits[feasible] += 1
            if feasible:
                assert verify_two(out, g, r, q).ok
        assert min(hits.values()) > 50
