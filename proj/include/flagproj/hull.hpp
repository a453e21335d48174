#pragma once

#include <Eigen/Dense>

#include <vector>

#include "flagproj/errors.hpp"
#include "flagproj/random.hpp"

namespace flagproj {

/// Supporting hyperplane of a hull: {x : <normal, x> = offset} with
/// <normal, p> <= offset for every input point, unit normal.
struct HullFacet {
    Eigen::VectorXd normal;
    double offset = 0.0;
    std::vector<int> vertex_ids;  // indices of incident input points, sorted
};

struct Hull {
    std::vector<HullFacet> facets;
    std::vector<int> vertex_ids;  // extreme points, sorted
};

/// Geometric incidence tolerance used by the hull/lattice layer.
inline constexpr double kGeomTol = 1e-9;

/// Affine dimension of a point set (rank of the difference vectors).
int affine_rank(const std::vector<Eigen::VectorXd>& points, double tolerance = kGeomTol);

/// Convex hull by supporting-hyperplane enumeration. Exhaustive over point
/// subsets, intended for the small vertex counts used here (<= 100 points,
/// dimension 2..6). Requires the points to span the ambient space affinely.
Hull compute_hull(const std::vector<Eigen::VectorXd>& points, double tolerance = kGeomTol);

/// Volume of a full-dimensional simplex given as d+1 points, and content of
/// a lower-dimensional one via the Gram determinant: sqrt(det(E^T E)) / k!
/// for the k edge vectors E.
double simplex_content(const std::vector<Eigen::VectorXd>& simplex_points);

/// Fan triangulation of the hull into simplices (each a list of d+1 point
/// indices). Dimension 1 yields the single segment [argmin, argmax].
std::vector<std::vector<int>> triangulate_hull(const std::vector<Eigen::VectorXd>& points);

/// d-volume of the convex hull. Zero when the points do not span the
/// ambient space. Dimension-generic (d >= 1).
double hull_volume(const std::vector<Eigen::VectorXd>& points);

/// Uniform point in the convex hull of a full-dimensional point set:
/// a volume-weighted simplex of the triangulation, then uniform barycentric
/// coordinates.
Eigen::VectorXd sample_in_hull(const std::vector<Eigen::VectorXd>& points,
                               const std::vector<std::vector<int>>& triangulation,
                               RandomStream& rng);

}  // namespace flagproj
