#pragma once

#include <optional>
#include <vector>

#include "flagproj/mc.hpp"
#include "flagproj/random.hpp"
#include "flagproj/rational.hpp"

namespace flagproj {

/// Exact coefficient machinery for the Grassmannian kernel construction.
///
/// Conventions used throughout:
///  * d is the ambient dimension, k the subspace dimension, and graded
///    indices run from 0 to min(k, d-k).
///  * c(d, k, j) is the moment of <E,V>^2 <F,V>^2 over Haar-random
///    V in G(d,k), where E is spanned by the first k coordinate axes and F
///    by axes 1..k-j together with k+1..k+j (so E and F share a
///    (k-j)-dimensional intersection).
///  * D(d, k) is the square matrix coupling the graded products of a fixed
///    pair (A,B) to the moments of <A,U>_m^2 <U,B>^2, row index m, column
///    index i.
///  * alpha(d, k) is the coefficient row vector with alpha * D = (1,0,...,0),
///    which turns U -> sum_m alpha_m <A,U>_m^2 into a reproducing kernel for
///    U -> <A,B>^2.

/// Combinatorial factor coupling graded indices:
/// F(d,k,j,m,i) = sum_l C(k-i,l) C(i,k-m-l) C(i,k-j-l) C(d-k-i, j+l+m-k).
/// Symmetric in j and m. Integer-valued for arguments in range.
Rational F_term(int d, int k, int j, int m, int i);

/// Closed form c(d,k,i) = (k+1)(k+2)/((i+1)(i+2)) * C(d,k)^-1 * C(d+2,k)^-1,
/// valid for 0 <= k <= d-1, 0 <= i <= min(k, d-k).
Rational c_closed(int d, int k, int i);

/// Monte Carlo estimate of the same moment from Haar-uniform subspaces.
MCEstimate c_montecarlo(int d, int k, int i, long n_samples, RandomStream& rng);

/// Dimension-reduction factors for the c moments (defined for 2k <= d):
/// off-diagonal (i < k):  c(d,k,i) = k(k+2)/(d(d+2)) * c(d-1,k-1,i)
/// diagonal     (i = k):  c(d,k,k) = k^2   /(d(d+2)) * c(d-1,k-1,k-1)
struct RecursionFactors {
    Rational off_diagonal;  // k(k+2)/(d(d+2))
    Rational diagonal;      // k^2/(d(d+2))
};
RecursionFactors recursion_factors(int d, int k);

/// Moment-coupling matrix: D(m,i) = sum_j c(d,k,j) F(d,k,j,m,i),
/// square of size min(k,d-k)+1. Exact.
RationalMatrix D_matrix(int d, int k);

/// Kernel coefficient vector.
struct AlphaVector {
    int d = 0;
    int k = 0;
    std::vector<Rational> coeff;  // index m = 0..min(k,d-k)

    [[nodiscard]] std::vector<double> to_doubles() const {
        std::vector<double> out;
        out.reserve(coeff.size());
        for (const auto& c : coeff) out.push_back(c.to_double());
        return out;
    }
};

/// Explicit solution alpha_m = (-1)^m C(d,k) C(d+1,k) / ((k+1) C(d+1,m)).
AlphaVector alpha_explicit(int d, int k);

/// Same coefficients obtained by exactly solving alpha * D = e_0.
AlphaVector alpha_solve(int d, int k);

/// Left-hand side of the binomial contraction identity; equals C(i,k)
/// (so delta_{ik} on 0 <= i <= k) for all integers d >= k-1 >= -1, i >= 0.
Rational verify_identity(int d, int k, int i);

/// Exact value r * pi^(e/2) with rational r; used for sphere moments at
/// integer exponents.
struct PiHalfPower {
    Rational coeff;
    int half_pi_exponent = 0;

    [[nodiscard]] double value() const;
};

/// Gamma(n/2) for integer n >= 1, as rational * sqrt(pi)^(0 or 1).
PiHalfPower gamma_half(int n);

/// Exact moment of |<u,v>|^p (and optionally |<u,w>|^q for a second
/// direction w orthogonal to v) over the sphere S^{d-1} with respect to
/// (d-1)-dimensional Hausdorff measure, for integer exponents >= 0:
///   int |<u,v>|^p dH = 2 pi^{(d-1)/2} Gamma((p+1)/2) / Gamma((d+p)/2)
///   int |<u,v>|^p |<u,w>|^q dH
///     = 2 pi^{(d-2)/2} Gamma((p+1)/2) Gamma((q+1)/2) / Gamma((d+p+q)/2)
PiHalfPower sphere_moment_exact(int d, int p, std::optional<int> q = std::nullopt);

/// Floating-point path for arbitrary real exponents p, q >= 0.
double sphere_moment(int d, double p, std::optional<double> q = std::nullopt);

/// Total measure of the unit sphere in R^n: omega(n) = 2 pi^{n/2}/Gamma(n/2).
double omega(int n);

}  // namespace flagproj
