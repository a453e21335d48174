#include "flagproj/hull.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "flagproj/detail/smalldet.hpp"
#include "flagproj/subspace.hpp"

namespace flagproj {

namespace {

double coordinate_scale(const std::vector<Eigen::VectorXd>& points) {
    double s = 1.0;
    for (const auto& p : points) s = std::max(s, p.cwiseAbs().maxCoeff());
    return s;
}

/// Advance a sorted index combination drawn from {0..n-1}; false when done.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int pos = k - 1; pos >= 0; --pos) {
        if (c[static_cast<size_t>(pos)] < n - (k - pos)) {
            ++c[static_cast<size_t>(pos)];
            for (int q = pos + 1; q < k; ++q)
                c[static_cast<size_t>(q)] = c[static_cast<size_t>(q - 1)] + 1;
            return true;
        }
    }
    return false;
}

/// Vector orthogonal to the rows of the (d-1) x d matrix `diffs` via cofactor
/// expansion; length is proportional to the (d-1)-content of the spanned
/// parallelepiped, so a tiny result flags affine dependence.
Eigen::VectorXd generalized_cross(const Eigen::MatrixXd& diffs, Eigen::MatrixXd& scratch) {
    const int d = static_cast<int>(diffs.cols());
    Eigen::VectorXd n(d);
    for (int skip = 0; skip < d; ++skip) {
        int c = 0;
        for (int j = 0; j < d; ++j) {
            if (j == skip) continue;
            scratch.col(c++) = diffs.col(j);
        }
        const double minor_det = detail::det_small(scratch);
        n(skip) = (skip % 2 == 0) ? minor_det : -minor_det;
    }
    return n;
}

std::vector<Eigen::VectorXd> gather(const std::vector<Eigen::VectorXd>& points,
                                    const std::vector<int>& ids) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(points[static_cast<size_t>(id)]);
    return out;
}

/// Coordinates of a facet's points inside its own hyperplane.
std::vector<Eigen::VectorXd> facet_coordinates(const std::vector<Eigen::VectorXd>& facet_points) {
    const int d = static_cast<int>(facet_points.front().size());
    const int nf = static_cast<int>(facet_points.size());
    Eigen::MatrixXd diffs(d, nf - 1);
    for (int i = 1; i < nf; ++i) diffs.col(i - 1) = facet_points[static_cast<size_t>(i)] - facet_points[0];
    Eigen::MatrixXd t = orthonormal_span(diffs, kGeomTol);
    std::vector<Eigen::VectorXd> coords;
    coords.reserve(facet_points.size());
    for (const auto& p : facet_points) coords.emplace_back(t.transpose() * (p - facet_points[0]));
    return coords;
}

}  // namespace

int affine_rank(const std::vector<Eigen::VectorXd>& points, double tolerance) {
    if (points.size() < 2) return 0;
    const int d = static_cast<int>(points.front().size());
    Eigen::MatrixXd diffs(d, static_cast<int>(points.size()) - 1);
    for (size_t i = 1; i < points.size(); ++i) diffs.col(static_cast<int>(i) - 1) = points[i] - points[0];
    return static_cast<int>(orthonormal_span(diffs, tolerance).cols());
}

Hull compute_hull(const std::vector<Eigen::VectorXd>& points, double tolerance) {
    if (points.empty()) throw NotFullDimensional("no points");
    const int d = static_cast<int>(points.front().size());
    if (d < 2) throw OutOfRange("hyperplane enumeration needs dimension >= 2");
    const int n = static_cast<int>(points.size());
    if (n < d + 1) throw NotFullDimensional("fewer points than dimension + 1");
    if (affine_rank(points, tolerance) < d)
        throw NotFullDimensional("points do not span the ambient space");

    const double scale = coordinate_scale(points);
    const double tol = tolerance * scale;
    const double dep_tol = 1e-12 * std::pow(scale, d - 1);

    Hull hull;
    Eigen::MatrixXd diffs(d - 1, d);
    Eigen::MatrixXd scratch(d - 1, d - 1);
    std::vector<double> side(static_cast<size_t>(n));
    std::vector<int> sub(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) sub[static_cast<size_t>(i)] = i;

    do {
        const Eigen::VectorXd& base = points[static_cast<size_t>(sub[0])];
        for (int r = 1; r < d; ++r)
            diffs.row(r - 1) = (points[static_cast<size_t>(sub[static_cast<size_t>(r)])] - base).transpose();
        Eigen::VectorXd normal = generalized_cross(diffs, scratch);
        const double len = normal.norm();
        if (len <= dep_tol) continue;  // affinely dependent subset
        normal /= len;

        double offset = normal.dot(base);
        bool above = false, below = false;
        for (int i = 0; i < n; ++i) {
            const double s = normal.dot(points[static_cast<size_t>(i)]);
            side[static_cast<size_t>(i)] = s;
            if (s > offset + tol) {
                above = true;
                if (below) break;
            } else if (s < offset - tol) {
                below = true;
                if (above) break;
            }
        }
        if (above && below) continue;  // not supporting
        if (above) {
            normal = -normal;
            offset = -offset;
            for (auto& s : side) s = -s;
        }

        bool duplicate = false;
        for (const auto& f : hull.facets) {
            if (std::abs(f.offset - offset) <= 1e-7 * scale &&
                (f.normal - normal).cwiseAbs().maxCoeff() <= 1e-7) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;

        HullFacet facet;
        facet.normal = normal;
        facet.offset = offset;
        for (int i = 0; i < n; ++i)
            if (side[static_cast<size_t>(i)] >= offset - tol) facet.vertex_ids.push_back(i);
        hull.facets.push_back(std::move(facet));
    } while (next_combination(sub, n));

    if (hull.facets.size() < static_cast<size_t>(d) + 1)
        throw NotFullDimensional("hull enumeration found too few supporting hyperplanes");

    // A point is extreme iff its incident facet normals span the space.
    std::vector<std::vector<int>> incident(static_cast<size_t>(n));
    for (size_t f = 0; f < hull.facets.size(); ++f)
        for (int v : hull.facets[f].vertex_ids) incident[static_cast<size_t>(v)].push_back(static_cast<int>(f));
    for (int i = 0; i < n; ++i) {
        const auto& inc = incident[static_cast<size_t>(i)];
        if (static_cast<int>(inc.size()) < d) continue;
        Eigen::MatrixXd normals(d, static_cast<int>(inc.size()));
        for (size_t c = 0; c < inc.size(); ++c)
            normals.col(static_cast<int>(c)) = hull.facets[static_cast<size_t>(inc[c])].normal;
        if (static_cast<int>(orthonormal_span(normals, kGeomTol).cols()) == d)
            hull.vertex_ids.push_back(i);
    }
    return hull;
}

double simplex_content(const std::vector<Eigen::VectorXd>& simplex_points) {
    const int k = static_cast<int>(simplex_points.size()) - 1;
    if (k < 0) throw OutOfRange("empty simplex");
    if (k == 0) return 1.0;
    const int d = static_cast<int>(simplex_points.front().size());
    Eigen::MatrixXd edges(d, k);
    for (int i = 1; i <= k; ++i)
        edges.col(i - 1) = simplex_points[static_cast<size_t>(i)] - simplex_points[0];
    double content;
    if (k == d) {
        content = std::abs(edges.determinant());
    } else {
        content = std::sqrt(std::max(0.0, (edges.transpose() * edges).determinant()));
    }
    for (int i = 2; i <= k; ++i) content /= i;
    return content;
}

std::vector<std::vector<int>> triangulate_hull(const std::vector<Eigen::VectorXd>& points) {
    const int d = static_cast<int>(points.front().size());
    if (d == 1) {
        int lo = 0, hi = 0;
        for (int i = 1; i < static_cast<int>(points.size()); ++i) {
            if (points[static_cast<size_t>(i)](0) < points[static_cast<size_t>(lo)](0)) lo = i;
            if (points[static_cast<size_t>(i)](0) > points[static_cast<size_t>(hi)](0)) hi = i;
        }
        if (lo == hi) throw NotFullDimensional("degenerate segment");
        return {{lo, hi}};
    }

    const Hull hull = compute_hull(points);
    const int apex = hull.vertex_ids.front();
    const Eigen::VectorXd& apex_pt = points[static_cast<size_t>(apex)];

    std::vector<std::vector<int>> simplices;
    for (const auto& facet : hull.facets) {
        if (std::binary_search(facet.vertex_ids.begin(), facet.vertex_ids.end(), apex)) continue;
        if (facet.offset - facet.normal.dot(apex_pt) <= 0) continue;  // numerically flat pyramid
        const auto facet_pts = gather(points, facet.vertex_ids);
        const auto coords = facet_coordinates(facet_pts);
        for (const auto& sub : triangulate_hull(coords)) {
            std::vector<int> simplex;
            simplex.reserve(static_cast<size_t>(d) + 1);
            for (int local : sub) simplex.push_back(facet.vertex_ids[static_cast<size_t>(local)]);
            simplex.push_back(apex);
            simplices.push_back(std::move(simplex));
        }
    }
    return simplices;
}

double hull_volume(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) return 0.0;
    const int d = static_cast<int>(points.front().size());
    if (d == 0) return 0.0;
    if (affine_rank(points) < d) return 0.0;
    if (d == 1) {
        double lo = points.front()(0), hi = lo;
        for (const auto& p : points) {
            lo = std::min(lo, p(0));
            hi = std::max(hi, p(0));
        }
        return hi - lo;
    }
    double total = 0.0;
    for (const auto& simplex : triangulate_hull(points)) total += simplex_content(gather(points, simplex));
    return total;
}

Eigen::VectorXd sample_in_hull(const std::vector<Eigen::VectorXd>& points,
                               const std::vector<std::vector<int>>& triangulation,
                               RandomStream& rng) {
    if (triangulation.empty()) throw NotFullDimensional("empty triangulation");
    std::vector<double> cumulative;
    cumulative.reserve(triangulation.size());
    double total = 0.0;
    for (const auto& s : triangulation) {
        total += simplex_content(gather(points, s));
        cumulative.push_back(total);
    }
    if (total <= 0.0) throw NotFullDimensional("triangulation has zero content");
    const double pick = rng.uniform() * total;
    size_t idx = static_cast<size_t>(std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
                                     cumulative.begin());
    if (idx >= triangulation.size()) idx = triangulation.size() - 1;
    const auto& simplex = triangulation[idx];

    // Uniform barycentric weights: spacings of sorted uniforms.
    const size_t m = simplex.size();
    std::vector<double> cuts(m - 1);
    for (auto& c : cuts) c = rng.uniform();
    std::sort(cuts.begin(), cuts.end());
    Eigen::VectorXd x = Eigen::VectorXd::Zero(points.front().size());
    double prev = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double next = (i + 1 < m) ? cuts[i] : 1.0;
        x += (next - prev) * points[static_cast<size_t>(simplex[i])];
        prev = next;
    }
    return x;
}

}  // namespace flagproj
