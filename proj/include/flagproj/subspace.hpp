#pragma once

#include <Eigen/Dense>

#include <vector>

#include "flagproj/errors.hpp"
#include "flagproj/random.hpp"

namespace flagproj {

/// Tolerances shared across the linear-algebra layer.
namespace tol {
inline constexpr double kOrthonormality = 1e-12;  // max |B^T B - I| allowed on construction
inline constexpr double kRank = 1e-10;            // relative residual below which a vector is dependent
inline constexpr double kDegenerateLow = 1e-10;   // at or below: treat projection as zero
inline constexpr double kDegenerateHigh = 1e-8;   // between low and high: ambiguous, refuse
}  // namespace tol

/// Linear subspace of R^d held as a d x k matrix with orthonormal columns.
/// k = 0 (the zero subspace, empty basis) and k = d are both valid.
class Subspace {
public:
    /// The zero subspace of R^0; placeholder so aggregates can default-construct.
    Subspace() : basis_(0, 0) {}

    /// Wrap a matrix whose columns are already orthonormal within 1e-12.
    static Subspace from_orthonormal(Eigen::MatrixXd basis);

    /// The zero subspace {0} of R^d.
    static Subspace zero(int ambient_dim);

    /// All of R^d with the standard basis.
    static Subspace full(int ambient_dim);

    /// Span of the standard basis vectors e_{i} for i in axes (0-based).
    static Subspace coordinate(int ambient_dim, const std::vector<int>& axes);

    [[nodiscard]] int ambient_dim() const { return static_cast<int>(basis_.rows()); }
    [[nodiscard]] int dim() const { return static_cast<int>(basis_.cols()); }
    [[nodiscard]] const Eigen::MatrixXd& basis() const { return basis_; }

    /// Orthogonal projection of v onto this subspace, in ambient coordinates.
    [[nodiscard]] Eigen::VectorXd project(const Eigen::VectorXd& v) const;

    /// Coefficients of the projection in this basis (length dim()).
    [[nodiscard]] Eigen::VectorXd coords(const Eigen::VectorXd& v) const;

    /// Norm of the projection of v onto this subspace.
    [[nodiscard]] double projection_norm(const Eigen::VectorXd& v) const;

    [[nodiscard]] bool contains(const Eigen::VectorXd& v, double tolerance) const;

    /// max |B^T B - I|; construction guarantees <= 1e-12.
    [[nodiscard]] double orthonormality_defect() const;

private:
    explicit Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}
    Eigen::MatrixXd basis_;
};

/// Flag element: a unit vector u together with a subspace U containing it.
struct FlagElement {
    Eigen::VectorXd u;
    Subspace U;

    [[nodiscard]] bool valid(double tolerance = 1e-9) const;
};

/// Gram-Schmidt with one re-orthogonalization pass. Throws RankDeficient if
/// the vectors are dependent within relative tolerance 1e-10.
Subspace orthonormalize(const std::vector<Eigen::VectorXd>& vectors);

/// Same, but silently drops dependent directions instead of throwing.
/// Columns of the input matrix are the spanning vectors.
Eigen::MatrixXd orthonormal_span(const Eigen::MatrixXd& vectors, double rank_tol = tol::kRank);

/// Orthogonal complement A^perp (dimension d - dim A).
Subspace complement(const Subspace& a);

/// |det| of the orthogonal projection from A onto B, both of dimension k:
/// the absolute determinant of B^T A in orthonormal bases. Symmetric in its
/// arguments and invariant under the choice of bases. Zero-dimensional
/// subspaces give 1 (empty determinant).
double det_projection(const Subspace& a, const Subspace& b);

/// All graded projection products <A,B>_i for i = 0..min(k, d-k) at once.
/// <A,B>_i^2 sums the squared k x k minors of B's basis written in the
/// [A | A^perp] frame that pick exactly i rows from the A^perp block;
/// <A,B>_0 = det_projection(A,B) and sum_i <A,B>_i^2 = 1.
std::vector<double> products_all(const Subspace& a, const Subspace& b);

/// Single graded product <A,B>_i; see products_all.
double product_i(const Subspace& a, const Subspace& b, int i);

/// Haar-uniform k-dimensional subspace of R^d.
Subspace sample_grassmannian(int d, int k, RandomStream& rng);

/// Haar-uniform q-dimensional subspace containing the line spanned by
/// the given unit vector (q >= 1).
Subspace sample_grassmannian_containing_line(const Eigen::VectorXd& u, int q, RandomStream& rng);

/// Uniform point on the unit sphere of a subspace (needs dim >= 1).
Eigen::VectorXd sample_sphere_in_subspace(const Subspace& l, RandomStream& rng);

/// Uniform point on the unit sphere of R^d.
Eigen::VectorXd sample_unit_sphere(int d, RandomStream& rng);

/// A with the direction of u's projection removed: the orthogonal complement
/// of proj_A(u) within A, which equals A when u is orthogonal to A (within
/// 1e-10) and A intersect u^perp otherwise. Projection norms inside
/// (1e-10, 1e-8) are ambiguous and raise DegenerateConfiguration.
Subspace intersect_with_hyperplane(const Subspace& a, const Eigen::VectorXd& u);

}  // namespace flagproj
