#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "flagproj/errors.hpp"

namespace flagproj {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with positive
/// denominator. Arbitrary precision: the combinatorial sweeps multiply
/// binomials well past 2^64.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    [[nodiscard]] const BigInt& numerator() const { return num_; }
    [[nodiscard]] const BigInt& denominator() const { return den_; }

    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rational operator-() const { return raw(-num_, den_); }

    Rational& operator+=(const Rational& o) {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator-=(const Rational& o) { return *this += -o; }
    Rational& operator*=(const Rational& o) {
        num_ *= o.num_;
        den_ *= o.den_;
        normalize();
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.num_ == 0) throw PoleEncountered("rational division by zero");
        num_ *= o.den_;
        den_ *= o.num_;
        normalize();
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    [[nodiscard]] Rational abs() const { return num_ < 0 ? -*this : *this; }

    [[nodiscard]] Rational reciprocal() const {
        if (num_ == 0) throw PoleEncountered("reciprocal of zero");
        return raw(den_ * (num_ < 0 ? -1 : 1), boost::multiprecision::abs(num_));
    }

    [[nodiscard]] double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    [[nodiscard]] std::string to_string() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    static Rational raw(BigInt n, BigInt d) {
        Rational r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }

    void normalize() {
        if (den_ == 0) throw PoleEncountered("rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

/// n! as a big integer, n >= 0.
inline BigInt factorial(long n) {
    if (n < 0) throw OutOfRange("factorial of negative argument");
    BigInt f = 1;
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Generalized binomial coefficient over any (possibly negative or rational)
/// upper argument: C(z, 0) = 1, C(z, a) = 0 for a < 0, and
/// C(z, a) = z (z-1) ... (z-a+1) / a! for a >= 1.
inline Rational binomial(const Rational& z, long a) {
    if (a < 0) return Rational(0);
    if (a == 0) return Rational(1);
    Rational prod(1);
    for (long i = 0; i < a; ++i) prod *= (z - Rational(i));
    return prod / Rational(factorial(a));
}

inline Rational binomial(long long z, long a) { return binomial(Rational(z), a); }

/// Dense matrix of rationals. Just enough for the coefficient systems here:
/// construction, element access, row-vector multiply and an exact solve.
class RationalMatrix {
public:
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw OutOfRange("matrix with negative extent");
    }

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }

    Rational& at(int r, int c) {
        check(r, c);
        return data_[static_cast<size_t>(r) * cols_ + c];
    }
    [[nodiscard]] const Rational& at(int r, int c) const {
        check(r, c);
        return data_[static_cast<size_t>(r) * cols_ + c];
    }

    /// row_vec * M, with row_vec of length rows().
    [[nodiscard]] std::vector<Rational> left_multiply(const std::vector<Rational>& row_vec) const {
        if (static_cast<int>(row_vec.size()) != rows_) throw DimMismatch("row vector length != rows");
        std::vector<Rational> out(static_cast<size_t>(cols_));
        for (int c = 0; c < cols_; ++c) {
            Rational acc(0);
            for (int r = 0; r < rows_; ++r) acc += row_vec[static_cast<size_t>(r)] * at(r, c);
            out[static_cast<size_t>(c)] = acc;
        }
        return out;
    }

    /// Solve x * M = rhs for the row vector x (exact Gaussian elimination on
    /// the transposed system). Throws SingularMatrix when no unique solution.
    [[nodiscard]] std::vector<Rational> solve_left(const std::vector<Rational>& rhs) const {
        if (rows_ != cols_) throw DimMismatch("solve needs a square matrix");
        if (static_cast<int>(rhs.size()) != cols_) throw DimMismatch("rhs length != cols");
        const int n = rows_;
        // Augmented transposed system: M^T x = rhs^T.
        std::vector<std::vector<Rational>> aug(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n) + 1));
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) aug[r][c] = at(c, r);
            aug[r][static_cast<size_t>(n)] = rhs[static_cast<size_t>(r)];
        }
        for (int col = 0; col < n; ++col) {
            int pivot = -1;
            for (int r = col; r < n; ++r) {
                if (!aug[r][col].is_zero()) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) throw SingularMatrix("exact elimination found a zero column");
            std::swap(aug[col], aug[pivot]);
            Rational inv = aug[col][col].reciprocal();
            for (int c = col; c <= n; ++c) aug[col][c] *= inv;
            for (int r = 0; r < n; ++r) {
                if (r == col || aug[r][col].is_zero()) continue;
                Rational f = aug[r][col];
                for (int c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
            }
        }
        std::vector<Rational> x(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) x[static_cast<size_t>(r)] = aug[r][static_cast<size_t>(n)];
        return x;
    }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw IndexOutOfRange("matrix index");
    }

    int rows_;
    int cols_;
    std::vector<Rational> data_;
};

}  // namespace flagproj
