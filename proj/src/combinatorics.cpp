#include "flagproj/combinatorics.hpp"

#include <algorithm>
#include <cmath>

#include "flagproj/subspace.hpp"

namespace flagproj {

Rational F_term(int d, int k, int j, int m, int i) {
    if (d < 0 || k < 0 || j < 0 || m < 0 || i < 0)
        throw OutOfRange("F_term arguments must be nonnegative");
    Rational total(0);
    for (int l = 0; l <= k; ++l) {
        Rational t = binomial(k - i, l);
        if (t.is_zero()) continue;
        t *= binomial(i, k - m - l);
        if (t.is_zero()) continue;
        t *= binomial(i, k - j - l);
        if (t.is_zero()) continue;
        t *= binomial(d - k - i, j + l + m - k);
        total += t;
    }
    return total;
}

Rational c_closed(int d, int k, int i) {
    if (d < 1 || k < 0 || k > d - 1) throw OutOfRange("c_closed needs 0 <= k <= d-1");
    if (i < 0 || i > std::min(k, d - k)) throw OutOfRange("c_closed index i out of range");
    Rational r = Rational((k + 1) * (k + 2)) / Rational((i + 1) * (i + 2));
    return r * binomial(static_cast<long long>(d), k).reciprocal() *
           binomial(static_cast<long long>(d) + 2, k).reciprocal();
}

MCEstimate c_montecarlo(int d, int k, int i, long n_samples, RandomStream& rng) {
    if (d < 1 || k < 0 || k > d - 1) throw OutOfRange("c_montecarlo needs 0 <= k <= d-1");
    if (i < 0 || i > std::min(k, d - k)) throw OutOfRange("c_montecarlo index i out of range");
    if (n_samples < 1) throw OutOfRange("need at least one sample");

    std::vector<int> e_axes, f_axes;
    for (int a = 0; a < k; ++a) e_axes.push_back(a);
    for (int a = 0; a < k - i; ++a) f_axes.push_back(a);
    for (int a = k; a < k + i; ++a) f_axes.push_back(a);
    const Subspace e = Subspace::coordinate(d, e_axes);
    const Subspace f = Subspace::coordinate(d, f_axes);

    Accumulator acc;
    for (long s = 0; s < n_samples; ++s) {
        const Subspace v = sample_grassmannian(d, k, rng);
        const double pe = det_projection(e, v);
        const double pf = det_projection(f, v);
        acc.add(pe * pe * pf * pf);
    }
    return acc.estimate(rng.seed());
}

RecursionFactors recursion_factors(int d, int k) {
    if (k < 1 || 2 * k > d) throw OutOfRange("recursion factors need 1 <= k and 2k <= d");
    const Rational denom(static_cast<long long>(d) * (d + 2));
    return RecursionFactors{
        Rational(static_cast<long long>(k) * (k + 2)) / denom,
        Rational(static_cast<long long>(k) * k) / denom,
    };
}

RationalMatrix D_matrix(int d, int k) {
    if (d < 1 || k < 0 || k > d) throw OutOfRange("D_matrix needs 0 <= k <= d");
    const int imax = std::min(k, d - k);
    RationalMatrix m(imax + 1, imax + 1);
    for (int row = 0; row <= imax; ++row)
        for (int col = 0; col <= imax; ++col) {
            Rational acc(0);
            for (int j = 0; j <= imax; ++j) acc += c_closed(d, k, j) * F_term(d, k, j, row, col);
            m.at(row, col) = acc;
        }
    return m;
}

AlphaVector alpha_explicit(int d, int k) {
    if (d < 1 || k < 0 || k > d) throw OutOfRange("alpha needs 0 <= k <= d");
    const int imax = std::min(k, d - k);
    AlphaVector a;
    a.d = d;
    a.k = k;
    a.coeff.resize(static_cast<size_t>(imax) + 1);
    const Rational scale =
        binomial(static_cast<long long>(d), k) * binomial(static_cast<long long>(d) + 1, k) /
        Rational(k + 1);
    for (int m = 0; m <= imax; ++m) {
        Rational v = scale / binomial(static_cast<long long>(d) + 1, m);
        if (m % 2 == 1) v = -v;
        a.coeff[static_cast<size_t>(m)] = v;
    }
    return a;
}

AlphaVector alpha_solve(int d, int k) {
    const RationalMatrix m = D_matrix(d, k);
    std::vector<Rational> e0(static_cast<size_t>(m.cols()));
    e0[0] = Rational(1);
    AlphaVector a;
    a.d = d;
    a.k = k;
    a.coeff = m.solve_left(e0);
    return a;
}

Rational verify_identity(int d, int k, int i) {
    if (k < 0 || i < 0) throw OutOfRange("identity needs k, i >= 0");
    if (d < k - 1) throw OutOfRange("identity needs d >= k-1");
    Rational outer(0);
    for (int m = 0; m <= k; ++m) {
        Rational mid(0);
        for (int j = 0; j <= k; ++j) {
            Rational inner(0);
            for (int l = 0; l <= i; ++l) {
                Rational t = binomial(i, l);
                if (t.is_zero()) continue;
                t *= binomial(k - i, m - l);
                if (t.is_zero()) continue;
                t *= binomial(k - i, j - l);
                if (t.is_zero()) continue;
                t *= binomial(d - 2 * k + i, k + l - m - j);
                inner += t;
            }
            mid += inner / binomial(static_cast<long long>(k) + 2 - j, 2);
        }
        mid = mid / binomial(static_cast<long long>(d) + 1, k - m);
        if ((k - m) % 2 == 1) mid = -mid;
        outer += mid;
    }
    return outer * Rational(d + 2 - k) / Rational(d + 2) * Rational(k + 2) / Rational(2);
}

double PiHalfPower::value() const {
    return coeff.to_double() * std::pow(3.14159265358979323846264338327950288, half_pi_exponent / 2.0);
}

PiHalfPower gamma_half(int n) {
    if (n < 1) throw PoleEncountered("gamma_half defined for positive arguments only");
    if (n % 2 == 0) return PiHalfPower{Rational(factorial(n / 2 - 1)), 0};
    // Gamma(n/2) = (n-2)!! / 2^((n-1)/2) * sqrt(pi)
    BigInt dbl_fact = 1;
    for (int v = n - 2; v >= 1; v -= 2) dbl_fact *= v;
    BigInt pow2 = BigInt(1) << ((n - 1) / 2);
    return PiHalfPower{Rational(dbl_fact, pow2), 1};
}

PiHalfPower sphere_moment_exact(int d, int p, std::optional<int> q) {
    if (d < 1) throw OutOfRange("sphere moments need d >= 1");
    if (p < 0 || (q && *q < 0)) throw OutOfRange("sphere moment exponents must be >= 0");
    PiHalfPower numer = gamma_half(p + 1);
    int pi_exp = d - 1;
    int gamma_arg = d + p;
    if (q) {
        const PiHalfPower gq = gamma_half(*q + 1);
        numer.coeff *= gq.coeff;
        numer.half_pi_exponent += gq.half_pi_exponent;
        pi_exp = d - 2;
        gamma_arg = d + p + *q;
    }
    const PiHalfPower denom = gamma_half(gamma_arg);
    // pi_exp counts full powers of sqrt(pi): the formulas carry pi^(pi_exp/2).
    return PiHalfPower{Rational(2) * numer.coeff / denom.coeff,
                       pi_exp + numer.half_pi_exponent - denom.half_pi_exponent};
}

double sphere_moment(int d, double p, std::optional<double> q) {
    if (d < 1) throw OutOfRange("sphere moments need d >= 1");
    if (p < 0 || (q && *q < 0)) throw OutOfRange("sphere moment exponents must be >= 0");
    const double log_pi = std::log(3.14159265358979323846264338327950288);
    double log_val;
    if (q) {
        log_val = std::log(2.0) + 0.5 * (d - 2) * log_pi + std::lgamma((p + 1) / 2.0) +
                  std::lgamma((*q + 1) / 2.0) - std::lgamma((d + p + *q) / 2.0);
    } else {
        log_val = std::log(2.0) + 0.5 * (d - 1) * log_pi + std::lgamma((p + 1) / 2.0) -
                  std::lgamma((d + p) / 2.0);
    }
    return std::exp(log_val);
}

double omega(int n) { return sphere_moment(n, 0.0); }

}  // namespace flagproj
