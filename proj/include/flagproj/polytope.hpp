#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "flagproj/hull.hpp"
#include "flagproj/mc.hpp"
#include "flagproj/random.hpp"
#include "flagproj/subspace.hpp"

namespace flagproj {

/// Face of a polytope: dimension, incidences, k-content, tangent space
/// (direction space of the affine hull) and its orthogonal complement.
struct Face {
    int k = 0;
    std::vector<int> vertex_ids;       // sorted indices into the vertex list
    std::vector<int> incident_facets;  // sorted facet indices
    double volume = 0.0;               // k-content; 1 for vertices
    Subspace tangent;                  // dim k
    Subspace normal_span;              // dim d-k, contains the normal cone
};

/// Full-dimensional convex polytope given by its vertices, with the complete
/// face lattice precomputed. Construction validates that the input points
/// are exactly the extreme points.
class Polytope {
public:
    /// Construct from vertices. Throws NotFullDimensional when the points do
    /// not span R^d (or there are fewer than d+1), TooLarge beyond the
    /// supported size (dimension 6, 100 vertices), NotVerticesOfHull when
    /// some input point is not extreme.
    static Polytope build(std::vector<Eigen::VectorXd> vertices);

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
    [[nodiscard]] const std::vector<HullFacet>& facets() const { return facets_; }

    /// All k-faces, 0 <= k <= d-1 (k = d-1 are the facets).
    [[nodiscard]] const std::vector<Face>& faces(int k) const;

    [[nodiscard]] double volume() const { return volume_; }
    [[nodiscard]] double diameter() const;

    /// Re-checks the structural invariants (facet inequalities, incidence
    /// sets, lattice consistency, closedness of the facet normals weighted
    /// by area). Throws on violation.
    void validate(double tolerance = kGeomTol) const;

private:
    Polytope() = default;

    int dim_ = 0;
    std::vector<Eigen::VectorXd> vertices_;
    std::vector<HullFacet> facets_;
    std::vector<std::vector<Face>> faces_by_dim_;  // index k
    double volume_ = 0.0;
};

/// Rejection sampler for the normal cone of a face: proposals are uniform on
/// the unit sphere of the face's normal span, accepted when the face is the
/// argmax of v -> <u, v> over the vertices (within 1e-9).
class ConeSampler {
public:
    ConeSampler(const Polytope& p, int k, int face_index);

    /// One proposal; the accepted direction or nothing.
    [[nodiscard]] std::optional<Eigen::VectorXd> propose(RandomStream& rng) const;

    /// Draw until accepted; EmptyCone after 10^6 consecutive rejections.
    [[nodiscard]] Eigen::VectorXd sample(RandomStream& rng) const;

    /// Acceptance-rate estimate of the external angle
    /// H^{d-1-k}(normal cone on the sphere) / omega_{d-k}.
    [[nodiscard]] MCEstimate estimate_angle(RandomStream& rng, long n_proposals) const;

    [[nodiscard]] const Face& face() const { return *face_; }

private:
    const Polytope* poly_;
    const Face* face_;
};

/// Single accepted normal-cone direction for a face.
Eigen::VectorXd sample_normal_cone(const Polytope& p, int k, int face_index, RandomStream& rng);

/// Exact external angle for codimension 1 (always 1/2) and codimension 2
/// (exterior dihedral angle / 2 pi).
double external_angle_exact(const Polytope& p, int k, int face_index);

/// Intrinsic volume V_k, exact: k = d (volume), d-1 (half surface area),
/// d-2 (dihedral angle sum). Lower k needs the Monte Carlo variant.
double intrinsic_volume(const Polytope& p, int k);

/// Intrinsic volume for any 0 <= k <= d; k <= d-3 uses per-face
/// acceptance-rate estimates (n_proposals each), higher k returns the exact
/// value with zero standard error.
MCEstimate intrinsic_volume_mc(const Polytope& p, int k, RandomStream& rng, long n_proposals);

/// Facet atoms (outward unit normal, facet content) of the surface area
/// measure.
std::vector<std::pair<Eigen::VectorXd, double>> surface_area_measure_atoms(const Polytope& p);

/// Content of the orthogonal projection of the polytope onto a subspace
/// (dim E >= 1). Degenerate projections have content 0.
double project_and_volume(const Polytope& p, const Subspace& e);

/// Empirical check of the projection boundary bound: points x sampled
/// uniformly on facets whose unit normal n has ||n|L|| >= sqrt(1 - eps^2)
/// must project within eps * diam(P) of the relative boundary of P|L.
/// True when every trial satisfies the bound.
bool boundary_bound_check(const Polytope& p, const Subspace& l, double eps, long trials,
                          RandomStream& rng);

/// Fixtures.
Polytope make_cube(int d);           // [0,1]^d
Polytope make_simplex(int d);        // conv{0, e_1, ..., e_d}
Polytope make_cross_polytope(int d); // conv{+-e_i}
Polytope make_random_polytope(int d, RandomStream& rng);  // hull of 2 d^2 gaussians

}  // namespace flagproj
