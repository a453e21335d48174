#include <doctest.h>

#include <cmath>

#include "flagproj/combinatorics.hpp"
#include "flagproj/errors.hpp"
#include "flagproj/random.hpp"
#include "flagproj/rational.hpp"

using namespace flagproj;

namespace {

Rational rat(long long n, long long d) { return Rational(BigInt(n), BigInt(d)); }

}  // namespace

TEST_CASE("rational arithmetic and normalization") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat(3, -6) == rat(-1, 2));
    CHECK(Rational(0).is_zero());
    CHECK(rat(0, 7) == Rational(0));
    CHECK((rat(1, 3) + rat(1, 6)) == rat(1, 2));
    CHECK((rat(1, 2) - rat(1, 3)) == rat(1, 6));
    CHECK((rat(2, 3) * rat(9, 4)) == rat(3, 2));
    CHECK((rat(2, 3) / rat(4, 3)) == rat(1, 2));
    CHECK(rat(-3, 4).abs() == rat(3, 4));
    CHECK(rat(-3, 4).reciprocal() == rat(-4, 3));
    CHECK(rat(1, 3) < rat(1, 2));
    CHECK(rat(-1, 2) < rat(0, 1));
    CHECK(rat(7, 2).to_string() == "7/2");
    CHECK(rat(-4, 2).to_string() == "-2");
    CHECK(rat(1, 8).to_double() == doctest::Approx(0.125).epsilon(1e-15));
    CHECK_THROWS_AS(rat(1, 2) / Rational(0), PoleEncountered);
    CHECK_THROWS_AS((void)Rational(0).reciprocal(), PoleEncountered);
}

TEST_CASE("factorial and generalized binomial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK_THROWS_AS(factorial(-1), OutOfRange);

    CHECK(binomial(5, 2) == Rational(10));
    CHECK(binomial(5, 0) == Rational(1));
    CHECK(binomial(5, 6) == Rational(0));
    CHECK(binomial(5, -1) == Rational(0));
    // Negative and rational upper arguments follow the falling-factorial rule.
    CHECK(binomial(-1, 2) == Rational(1));
    CHECK(binomial(-2, 3) == Rational(-4));
    CHECK(binomial(rat(1, 2), 2) == rat(-1, 8));
    // Pascal recurrence on a sweep that crosses zero.
    for (long long z = -4; z <= 8; ++z)
        for (long a = 1; a <= 6; ++a)
            CHECK(binomial(z, a) == binomial(z - 1, a) + binomial(z - 1, a - 1));
}

TEST_CASE("coupling factor F: hand values and j/m symmetry") {
    CHECK(F_term(3, 1, 0, 0, 0) == Rational(1));
    // Values entering D(3,1), checked by expanding the single surviving l.
    CHECK(F_term(3, 1, 1, 0, 0) == Rational(0));
    CHECK(F_term(3, 1, 0, 0, 1) == Rational(0));
    CHECK(F_term(3, 1, 1, 0, 1) == Rational(1));
    CHECK(F_term(3, 1, 0, 1, 0) == Rational(0));
    CHECK(F_term(3, 1, 1, 1, 0) == Rational(2));
    CHECK(F_term(3, 1, 0, 1, 1) == Rational(1));
    CHECK(F_term(3, 1, 1, 1, 1) == Rational(1));

    for (int d = 2; d <= 7; ++d)
        for (int k = 1; k < d; ++k) {
            const int imax = std::min(k, d - k);
            for (int j = 0; j <= imax; ++j)
                for (int m = 0; m <= imax; ++m)
                    for (int i = 0; i <= imax; ++i)
                        CHECK(F_term(d, k, j, m, i) == F_term(d, k, m, j, i));
        }
}

TEST_CASE("subspace pair moments: closed form") {
    CHECK(c_closed(3, 1, 0) == rat(1, 5));
    CHECK(c_closed(3, 1, 1) == rat(1, 15));
    CHECK(c_closed(2, 1, 0) == rat(3, 8));
    CHECK(c_closed(4, 2, 1) == rat(1, 45));
    // k = 0 pairs two zero-dimensional subspaces; the moment is exactly 1.
    for (int d = 1; d <= 8; ++d) CHECK(c_closed(d, 0, 0) == Rational(1));
}

TEST_CASE("subspace pair moments: recursions and duality") {
    CHECK(recursion_factors(3, 1).off_diagonal == rat(1, 5));
    CHECK(recursion_factors(3, 1).diagonal == rat(1, 15));
    for (int d = 2; d <= 8; ++d)
        for (int k = 1; 2 * k <= d; ++k) {
            const auto f = recursion_factors(d, k);
            for (int i = 0; i < k; ++i)
                CHECK(c_closed(d, k, i) == f.off_diagonal * c_closed(d - 1, k - 1, i));
            CHECK(c_closed(d, k, k) == f.diagonal * c_closed(d - 1, k - 1, k - 1));
        }
    // Orthocomplement duality c(d,k,i) = c(d,d-k,i).
    for (int d = 2; d <= 8; ++d)
        for (int k = 1; k < d; ++k)
            for (int i = 0; i <= std::min(k, d - k); ++i)
                CHECK(c_closed(d, k, i) == c_closed(d, d - k, i));
}

TEST_CASE("subspace pair moments: monte carlo agrees with the closed form") {
    RandomStream rng(20260816u);
    const double c = c_closed(3, 1, 0).to_double();
    auto est = c_montecarlo(3, 1, 0, 20000, rng);
    CHECK(est.n == 20000);
    CHECK(est.z_against(c) < 4.0);

    RandomStream rng2(20260816u, 7);
    const double c2 = c_closed(4, 2, 1).to_double();
    CHECK(c_montecarlo(4, 2, 1, 20000, rng2).z_against(c2) < 4.0);
}

TEST_CASE("moment coupling matrix D(3,1)") {
    const auto d31 = D_matrix(3, 1);
    REQUIRE(d31.rows() == 2);
    REQUIRE(d31.cols() == 2);
    CHECK(d31.at(0, 0) == rat(1, 5));
    CHECK(d31.at(0, 1) == rat(1, 15));
    CHECK(d31.at(1, 0) == rat(2, 15));
    CHECK(d31.at(1, 1) == rat(4, 15));
}

TEST_CASE("kernel coefficients solve the moment system") {
    const auto a31 = alpha_explicit(3, 1);
    REQUIRE(a31.coeff.size() == 2);
    CHECK(a31.coeff[0] == Rational(6));
    CHECK(a31.coeff[1] == rat(-3, 2));

    for (int d = 2; d <= 6; ++d)
        for (int k = 1; k < d; ++k) {
            const auto ae = alpha_explicit(d, k);
            const auto as = alpha_solve(d, k);
            REQUIRE(ae.coeff.size() == as.coeff.size());
            for (size_t m = 0; m < ae.coeff.size(); ++m) CHECK(ae.coeff[m] == as.coeff[m]);

            const auto product = D_matrix(d, k).left_multiply(ae.coeff);
            CHECK(product[0] == Rational(1));
            for (size_t i = 1; i < product.size(); ++i) CHECK(product[i].is_zero());
        }
}

TEST_CASE("binomial contraction identity") {
    CHECK(verify_identity(3, 1, 0) == Rational(0));
    CHECK(verify_identity(3, 1, 1) == Rational(1));
    CHECK(verify_identity(5, 2, 1) == Rational(0));
    CHECK(verify_identity(5, 2, 2) == Rational(1));
    CHECK(verify_identity(6, 3, 3) == Rational(1));
    for (int d = 0; d <= 7; ++d)
        for (int k = 0; k <= d; ++k)
            for (int i = 0; i <= k; ++i)
                CHECK(verify_identity(d, k, i) == binomial(static_cast<long long>(i), k));
}

TEST_CASE("half-integer gamma values") {
    const auto g1 = gamma_half(1);  // Gamma(1/2) = sqrt(pi)
    CHECK(g1.coeff == Rational(1));
    CHECK(g1.half_pi_exponent == 1);
    const auto g3 = gamma_half(3);  // Gamma(3/2) = sqrt(pi)/2
    CHECK(g3.coeff == rat(1, 2));
    CHECK(g3.half_pi_exponent == 1);
    const auto g4 = gamma_half(4);  // Gamma(2) = 1
    CHECK(g4.coeff == Rational(1));
    CHECK(g4.half_pi_exponent == 0);
    const auto g5 = gamma_half(5);  // Gamma(5/2) = 3 sqrt(pi)/4
    CHECK(g5.coeff == rat(3, 4));
    CHECK(g5.half_pi_exponent == 1);

    for (int n = 1; n <= 12; ++n)
        CHECK(gamma_half(n).value() ==
              doctest::Approx(std::tgamma(0.5 * n)).epsilon(1e-12));
}

TEST_CASE("sphere moments: exact path matches the floating-point path") {
    for (int d = 2; d <= 6; ++d)
        for (int p = 0; p <= 4; ++p) {
            CHECK(sphere_moment_exact(d, p).value() ==
                  doctest::Approx(sphere_moment(d, p)).epsilon(1e-12));
            for (int q = 0; q <= 3; ++q)
                CHECK(sphere_moment_exact(d, p, q).value() ==
                      doctest::Approx(sphere_moment(d, p, q)).epsilon(1e-12));
        }
    // p = 0 recovers the total sphere measure.
    CHECK(sphere_moment_exact(3, 0).value() == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("sphere surface measures") {
    CHECK(omega(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(omega(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(omega(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(omega(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
}
