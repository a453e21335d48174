#include "flagproj/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flagproj/detail/smalldet.hpp"

namespace flagproj {

namespace {

double orthonormality_defect_of(const Eigen::MatrixXd& basis) {
    if (basis.cols() == 0) return 0.0;
    Eigen::MatrixXd gram = basis.transpose() * basis;
    gram -= Eigen::MatrixXd::Identity(basis.cols(), basis.cols());
    return gram.cwiseAbs().maxCoeff();
}

}  // namespace

Subspace Subspace::from_orthonormal(Eigen::MatrixXd basis) {
    if (basis.rows() < basis.cols()) throw DimMismatch("subspace dimension exceeds ambient dimension");
    if (orthonormality_defect_of(basis) > tol::kOrthonormality)
        throw RankDeficient("basis is not orthonormal within 1e-12");
    return Subspace(std::move(basis));
}

Subspace Subspace::zero(int ambient_dim) {
    if (ambient_dim < 0) throw OutOfRange("negative ambient dimension");
    return Subspace(Eigen::MatrixXd(ambient_dim, 0));
}

Subspace Subspace::full(int ambient_dim) {
    if (ambient_dim < 0) throw OutOfRange("negative ambient dimension");
    return Subspace(Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::coordinate(int ambient_dim, const std::vector<int>& axes) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(ambient_dim, static_cast<int>(axes.size()));
    for (int c = 0; c < static_cast<int>(axes.size()); ++c) {
        int ax = axes[static_cast<size_t>(c)];
        if (ax < 0 || ax >= ambient_dim) throw IndexOutOfRange("coordinate axis out of range");
        b(ax, c) = 1.0;
    }
    return from_orthonormal(std::move(b));
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& v) const {
    if (v.size() != basis_.rows()) throw DimMismatch("vector/ambient dimension mismatch");
    return basis_ * (basis_.transpose() * v);
}

Eigen::VectorXd Subspace::coords(const Eigen::VectorXd& v) const {
    if (v.size() != basis_.rows()) throw DimMismatch("vector/ambient dimension mismatch");
    return basis_.transpose() * v;
}

double Subspace::projection_norm(const Eigen::VectorXd& v) const {
    return coords(v).norm();
}

bool Subspace::contains(const Eigen::VectorXd& v, double tolerance) const {
    if (v.size() != basis_.rows()) throw DimMismatch("vector/ambient dimension mismatch");
    return (v - project(v)).norm() <= tolerance;
}

double Subspace::orthonormality_defect() const { return orthonormality_defect_of(basis_); }

bool FlagElement::valid(double tolerance) const {
    if (u.size() != U.ambient_dim()) return false;
    if (std::abs(u.norm() - 1.0) > tolerance) return false;
    return U.contains(u, tolerance);
}

// ---------------------------------------------------------------------------
// Orthonormalization
// ---------------------------------------------------------------------------

namespace {

/// Modified Gram-Schmidt with a second pass per vector. Returns the indices
/// of inputs that were dependent; accepted columns land in `out`.
std::vector<int> mgs(const Eigen::MatrixXd& in, double rank_tol, Eigen::MatrixXd& out) {
    const int d = static_cast<int>(in.rows());
    out.resize(d, in.cols());
    int accepted = 0;
    std::vector<int> dropped;
    for (int c = 0; c < in.cols(); ++c) {
        Eigen::VectorXd v = in.col(c);
        const double original = v.norm();
        if (original == 0.0) {
            dropped.push_back(c);
            continue;
        }
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < accepted; ++j) v -= out.col(j).dot(v) * out.col(j);
        if (v.norm() <= rank_tol * original) {
            dropped.push_back(c);
            continue;
        }
        out.col(accepted++) = v / v.norm();
    }
    out.conservativeResize(d, accepted);
    return dropped;
}

}  // namespace

Subspace orthonormalize(const std::vector<Eigen::VectorXd>& vectors) {
    if (vectors.empty()) throw RankDeficient("no vectors given");
    const int d = static_cast<int>(vectors.front().size());
    if (static_cast<int>(vectors.size()) > d)
        throw RankDeficient("more vectors than ambient dimension");
    Eigen::MatrixXd in(d, static_cast<int>(vectors.size()));
    for (int c = 0; c < in.cols(); ++c) {
        if (vectors[static_cast<size_t>(c)].size() != d) throw DimMismatch("mixed vector dimensions");
        in.col(c) = vectors[static_cast<size_t>(c)];
    }
    Eigen::MatrixXd out;
    if (!mgs(in, tol::kRank, out).empty())
        throw RankDeficient("input vectors are linearly dependent within tolerance 1e-10");
    return Subspace::from_orthonormal(std::move(out));
}

Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& vectors, double rank_tol) {
    Eigen::MatrixXd out;
    mgs(vectors, rank_tol, out);
    return out;
}

Subspace complement(const Subspace& a) {
    const int d = a.ambient_dim();
    const int k = a.dim();
    if (k == 0) return Subspace::full(d);
    if (k == d) return Subspace::zero(d);
    // Full Householder QR of the basis: the trailing d-k columns of Q span
    // the complement and are exactly orthonormal.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a.basis());
    Eigen::MatrixXd q = qr.householderQ();
    return Subspace::from_orthonormal(q.rightCols(d - k));
}

double det_projection(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimMismatch("subspaces in different ambient spaces");
    if (a.dim() != b.dim()) throw DimMismatch("det_projection needs equal dimensions");
    if (a.dim() == 0) return 1.0;
    return std::abs(detail::det_small(b.basis().transpose() * a.basis()));
}

std::vector<double> products_all(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimMismatch("subspaces in different ambient spaces");
    if (a.dim() != b.dim()) throw DimMismatch("graded products need equal dimensions");
    const int d = a.ambient_dim();
    const int k = a.dim();
    const int imax = std::min(k, d - k);
    std::vector<double> sums(static_cast<size_t>(imax) + 1, 0.0);
    if (k == 0) {
        sums[0] = 1.0;
        return sums;
    }

    // Coordinates of B's basis in the orthogonal frame [A | A^perp].
    const Subspace ap = complement(a);
    Eigen::MatrixXd top = a.basis().transpose() * b.basis();    // k rows
    Eigen::MatrixXd bot = ap.basis().transpose() * b.basis();   // d-k rows

    // Enumerate row subsets: k-i rows from the A block, i from the A^perp
    // block, and accumulate squared minors.
    Eigen::MatrixXd minor(k, k);
    std::vector<int> rows_a, rows_p;
    for (int i = 0; i <= imax; ++i) {
        const int na = k - i;
        rows_a.resize(static_cast<size_t>(na));
        std::iota(rows_a.begin(), rows_a.end(), 0);
        double total = 0.0;
        bool more_a = true;
        while (more_a) {
            rows_p.resize(static_cast<size_t>(i));
            std::iota(rows_p.begin(), rows_p.end(), 0);
            bool more_p = true;
            while (more_p) {
                for (int r = 0; r < na; ++r) minor.row(r) = top.row(rows_a[static_cast<size_t>(r)]);
                for (int r = 0; r < i; ++r) minor.row(na + r) = bot.row(rows_p[static_cast<size_t>(r)]);
                const double det = detail::det_small(minor);
                total += det * det;
                // next combination of rows_p out of d-k
                more_p = false;
                for (int pos = i - 1; pos >= 0; --pos) {
                    if (rows_p[static_cast<size_t>(pos)] < d - k - (i - pos)) {
                        ++rows_p[static_cast<size_t>(pos)];
                        for (int q = pos + 1; q < i; ++q)
                            rows_p[static_cast<size_t>(q)] = rows_p[static_cast<size_t>(q - 1)] + 1;
                        more_p = true;
                        break;
                    }
                }
                if (i == 0) break;  // single empty combination
            }
            // next combination of rows_a out of k
            more_a = false;
            for (int pos = na - 1; pos >= 0; --pos) {
                if (rows_a[static_cast<size_t>(pos)] < k - (na - pos)) {
                    ++rows_a[static_cast<size_t>(pos)];
                    for (int q = pos + 1; q < na; ++q)
                        rows_a[static_cast<size_t>(q)] = rows_a[static_cast<size_t>(q - 1)] + 1;
                    more_a = true;
                    break;
                }
            }
            if (na == 0) break;
        }
        sums[static_cast<size_t>(i)] = std::sqrt(total);
    }
    return sums;
}

double product_i(const Subspace& a, const Subspace& b, int i) {
    const int imax = std::min(a.dim(), a.ambient_dim() - a.dim());
    if (i < 0 || i > imax) throw IndexOutOfRange("graded product index out of range");
    return products_all(a, b)[static_cast<size_t>(i)];
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

Subspace sample_grassmannian(int d, int k, RandomStream& rng) {
    if (d < 1) throw OutOfRange("ambient dimension must be positive");
    if (k < 0 || k > d) throw OutOfRange("subspace dimension out of range");
    if (k == 0) return Subspace::zero(d);
    for (;;) {
        Eigen::MatrixXd g(d, k);
        for (int c = 0; c < k; ++c)
            for (int r = 0; r < d; ++r) g(r, c) = rng.gaussian();
        Eigen::MatrixXd q = orthonormal_span(g);
        if (q.cols() == k) return Subspace::from_orthonormal(std::move(q));
        // rank-deficient gaussian draw: probability zero, redraw
    }
}

Subspace sample_grassmannian_containing_line(const Eigen::VectorXd& u, int q, RandomStream& rng) {
    const int d = static_cast<int>(u.size());
    if (q < 1 || q > d) throw OutOfRange("subspace dimension out of range");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw DimMismatch("direction must be a unit vector");
    const Eigen::VectorXd un = u.normalized();
    Eigen::MatrixXd b(d, q);
    b.col(0) = un;
    if (q > 1) {
        // Uniform (q-1)-subspace of u^perp, rotation invariance around u
        // makes [u | W] Haar-uniform among subspaces containing u.
        const Subspace uperp = complement(Subspace::from_orthonormal(un));
        for (;;) {
            Eigen::MatrixXd g(d - 1, q - 1);
            for (int c = 0; c < q - 1; ++c)
                for (int r = 0; r < d - 1; ++r) g(r, c) = rng.gaussian();
            Eigen::MatrixXd w = orthonormal_span(g);
            if (w.cols() == q - 1) {
                b.rightCols(q - 1) = uperp.basis() * w;
                break;
            }
        }
    }
    return Subspace::from_orthonormal(std::move(b));
}

Eigen::VectorXd sample_sphere_in_subspace(const Subspace& l, RandomStream& rng) {
    if (l.dim() == 0) throw DimZero("cannot sample the sphere of the zero subspace");
    for (;;) {
        Eigen::VectorXd g(l.dim());
        for (int i = 0; i < l.dim(); ++i) g(i) = rng.gaussian();
        const double n = g.norm();
        if (n > 1e-12) return l.basis() * (g / n);
    }
}

Eigen::VectorXd sample_unit_sphere(int d, RandomStream& rng) {
    if (d < 1) throw DimZero("cannot sample the sphere of a zero-dimensional space");
    for (;;) {
        Eigen::VectorXd g(d);
        for (int i = 0; i < d; ++i) g(i) = rng.gaussian();
        const double n = g.norm();
        if (n > 1e-12) return g / n;
    }
}

Subspace intersect_with_hyperplane(const Subspace& a, const Eigen::VectorXd& u) {
    if (u.size() != a.ambient_dim()) throw DimMismatch("vector/ambient dimension mismatch");
    const Eigen::VectorXd w = a.project(u);
    const double nw = w.norm();
    if (nw <= tol::kDegenerateLow) return a;  // u effectively orthogonal to A
    if (nw < tol::kDegenerateHigh)
        throw DegenerateConfiguration("projection norm inside the ambiguity band (1e-10, 1e-8)");
    const Eigen::VectorXd wh = w / nw;
    if (a.dim() == 1) return Subspace::zero(a.ambient_dim());
    // The section is A intersected with the hyperplane normal to wh, i.e.
    // A times the orthocomplement of coords(wh) inside R^dim(A). Build that
    // complement from a Householder reflector: exactly orthonormal, and no
    // near-annihilated difference vector is ever normalized (Gram-Schmidt on
    // the reduced basis columns loses up to 1/|column| digits when wh nearly
    // coincides with a basis column, which downstream determinant identities
    // cannot absorb).
    Eigen::VectorXd c = a.basis().transpose() * wh;
    c /= c.norm();
    Eigen::VectorXd v = c;
    v(0) += c(0) >= 0.0 ? 1.0 : -1.0;
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(a.dim(), a.dim()) -
                              (2.0 / v.squaredNorm()) * (v * v.transpose());
    // column 0 of h is proportional to c; the rest span its orthocomplement
    return Subspace::from_orthonormal(a.basis() * h.rightCols(a.dim() - 1));
}

}  // namespace flagproj
