#include "flagproj/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "flagproj/combinatorics.hpp"
#include "flagproj/errors.hpp"

namespace flagproj {

namespace {

constexpr int kMaxDim = 6;
constexpr int kMaxVertices = 100;
constexpr long kEmptyConeLimit = 1000000;

std::vector<Eigen::VectorXd> gather(const std::vector<Eigen::VectorXd>& points,
                                    const std::vector<int>& ids) {
    std::vector<Eigen::VectorXd> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(points[static_cast<size_t>(id)]);
    return out;
}

/// Tangent space of a point set: span of the differences from the first
/// point, as an orthonormal basis.
Subspace tangent_of(const std::vector<Eigen::VectorXd>& pts, int expected_dim) {
    const int d = static_cast<int>(pts.front().size());
    if (expected_dim == 0) return Subspace::zero(d);
    Eigen::MatrixXd diffs(d, static_cast<int>(pts.size()) - 1);
    for (size_t i = 1; i < pts.size(); ++i) diffs.col(static_cast<int>(i) - 1) = pts[i] - pts[0];
    Eigen::MatrixXd t = orthonormal_span(diffs, kGeomTol);
    if (static_cast<int>(t.cols()) != expected_dim)
        throw DegenerateConfiguration("face tangent space has unexpected dimension");
    return Subspace::from_orthonormal(std::move(t));
}

/// k-content of a face given by its points, measured inside its tangent space.
double face_content(const std::vector<Eigen::VectorXd>& pts, const Subspace& tangent) {
    if (tangent.dim() == 0) return 1.0;
    std::vector<Eigen::VectorXd> coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) coords.emplace_back(tangent.basis().transpose() * (p - pts[0]));
    return hull_volume(coords);
}

}  // namespace

Polytope Polytope::build(std::vector<Eigen::VectorXd> vertices) {
    if (vertices.empty()) throw NotFullDimensional("no vertices");
    const int d = static_cast<int>(vertices.front().size());
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != d) throw DimMismatch("mixed vertex dimensions");
    if (d > kMaxDim) throw TooLarge("dimension above 6 not supported");
    if (static_cast<int>(vertices.size()) > kMaxVertices) throw TooLarge("more than 100 vertices");
    if (d < 2) throw NotFullDimensional("dimension must be at least 2");
    if (static_cast<int>(vertices.size()) < d + 1)
        throw NotFullDimensional("need at least d+1 vertices");
    if (affine_rank(vertices) < d) throw NotFullDimensional("vertices do not span R^d");

    Hull hull = compute_hull(vertices);
    if (hull.vertex_ids.size() != vertices.size())
        throw NotVerticesOfHull("input contains non-extreme points");

    Polytope p;
    p.dim_ = d;
    p.vertices_ = std::move(vertices);
    p.facets_ = std::move(hull.facets);
    std::sort(p.facets_.begin(), p.facets_.end(), [](const HullFacet& a, const HullFacet& b) {
        return a.vertex_ids < b.vertex_ids;
    });

    p.faces_by_dim_.assign(static_cast<size_t>(d), {});

    // Top level: facets themselves.
    auto& top = p.faces_by_dim_[static_cast<size_t>(d - 1)];
    for (size_t f = 0; f < p.facets_.size(); ++f) {
        Face face;
        face.k = d - 1;
        face.vertex_ids = p.facets_[f].vertex_ids;
        face.incident_facets = {static_cast<int>(f)};
        const auto pts = gather(p.vertices_, face.vertex_ids);
        face.tangent = tangent_of(pts, d - 1);
        face.normal_span = complement(face.tangent);
        face.volume = face_content(pts, face.tangent);
        top.push_back(std::move(face));
    }

    // Every k-face arises as the intersection of a (k+1)-face with a facet.
    for (int k = d - 2; k >= 0; --k) {
        std::set<std::vector<int>> seen;
        auto& level = p.faces_by_dim_[static_cast<size_t>(k)];
        for (const Face& parent : p.faces_by_dim_[static_cast<size_t>(k + 1)]) {
            for (const auto& facet : p.facets_) {
                std::vector<int> common;
                std::set_intersection(parent.vertex_ids.begin(), parent.vertex_ids.end(),
                                      facet.vertex_ids.begin(), facet.vertex_ids.end(),
                                      std::back_inserter(common));
                if (static_cast<int>(common.size()) < k + 1) continue;
                if (common == parent.vertex_ids) continue;
                if (!seen.insert(common).second) continue;
                const auto pts = gather(p.vertices_, common);
                if (affine_rank(pts) != k) continue;

                Face face;
                face.k = k;
                face.vertex_ids = std::move(common);
                for (size_t f = 0; f < p.facets_.size(); ++f) {
                    if (std::includes(p.facets_[f].vertex_ids.begin(), p.facets_[f].vertex_ids.end(),
                                      face.vertex_ids.begin(), face.vertex_ids.end()))
                        face.incident_facets.push_back(static_cast<int>(f));
                }
                face.tangent = tangent_of(pts, k);
                face.normal_span = complement(face.tangent);
                face.volume = face_content(pts, face.tangent);
                level.push_back(std::move(face));
            }
        }
        std::sort(level.begin(), level.end(),
                  [](const Face& a, const Face& b) { return a.vertex_ids < b.vertex_ids; });
    }

    if (p.faces_by_dim_[0].size() != p.vertices_.size())
        throw DegenerateConfiguration("face lattice did not recover all vertices");

    p.volume_ = hull_volume(p.vertices_);
    p.validate();
    return p;
}

const std::vector<Face>& Polytope::faces(int k) const {
    if (k < 0 || k >= dim_) throw IndexOutOfRange("face dimension out of range");
    return faces_by_dim_[static_cast<size_t>(k)];
}

double Polytope::diameter() const {
    double best = 0.0;
    for (size_t i = 0; i < vertices_.size(); ++i)
        for (size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, (vertices_[i] - vertices_[j]).norm());
    return best;
}

void Polytope::validate(double tolerance) const {
    double scale = 1.0;
    for (const auto& v : vertices_) scale = std::max(scale, v.cwiseAbs().maxCoeff());
    const double tol = tolerance * scale;

    // Facet inequalities and incidence sets.
    for (const auto& facet : facets_) {
        std::vector<int> on_plane;
        for (size_t i = 0; i < vertices_.size(); ++i) {
            const double s = facet.normal.dot(vertices_[i]) - facet.offset;
            if (s > tol) throw DegenerateConfiguration("vertex violates a facet inequality");
            if (s >= -tol) on_plane.push_back(static_cast<int>(i));
        }
        if (on_plane != facet.vertex_ids)
            throw DegenerateConfiguration("facet incidence set mismatch");
    }

    // Interior point: the vertex centroid must clear every facet.
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim_);
    for (const auto& v : vertices_) centroid += v;
    centroid /= static_cast<double>(vertices_.size());
    for (const auto& facet : facets_)
        if (facet.offset - facet.normal.dot(centroid) <= tol)
            throw NotFullDimensional("no interior point cleared the facets");

    // Lattice consistency: each face is the intersection of its incident
    // facets' vertex sets, and its normal span contains their normals.
    for (int k = 0; k < dim_; ++k) {
        for (const auto& face : faces_by_dim_[static_cast<size_t>(k)]) {
            if (face.volume <= 0.0) throw DegenerateConfiguration("face with nonpositive content");
            std::vector<int> meet;
            bool first = true;
            for (int f : face.incident_facets) {
                const auto& fv = facets_[static_cast<size_t>(f)].vertex_ids;
                if (first) {
                    meet = fv;
                    first = false;
                } else {
                    std::vector<int> tmp;
                    std::set_intersection(meet.begin(), meet.end(), fv.begin(), fv.end(),
                                          std::back_inserter(tmp));
                    meet = std::move(tmp);
                }
            }
            if (k < dim_ - 1 && meet != face.vertex_ids)
                throw DegenerateConfiguration("face is not the meet of its incident facets");
            for (int f : face.incident_facets) {
                const auto& n = facets_[static_cast<size_t>(f)].normal;
                if ((n - face.normal_span.project(n)).norm() > 1e-9)
                    throw DegenerateConfiguration("facet normal escapes the face normal span");
            }
        }
    }

    // Closedness: area-weighted facet normals sum to zero.
    Eigen::VectorXd closing = Eigen::VectorXd::Zero(dim_);
    const auto& top = faces_by_dim_[static_cast<size_t>(dim_ - 1)];
    for (const auto& facet_face : top)
        closing += facet_face.volume *
                   facets_[static_cast<size_t>(facet_face.incident_facets.front())].normal;
    if (closing.norm() > 1e-7 * scale)
        throw DegenerateConfiguration("surface normals do not close up");
}

// ---------------------------------------------------------------------------
// Normal cones
// ---------------------------------------------------------------------------

ConeSampler::ConeSampler(const Polytope& p, int k, int face_index) : poly_(&p) {
    const auto& level = p.faces(k);
    if (face_index < 0 || face_index >= static_cast<int>(level.size()))
        throw IndexOutOfRange("face index out of range");
    face_ = &level[static_cast<size_t>(face_index)];
}

std::optional<Eigen::VectorXd> ConeSampler::propose(RandomStream& rng) const {
    Eigen::VectorXd u = sample_sphere_in_subspace(face_->normal_span, rng);
    const auto& verts = poly_->vertices();
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : verts) best = std::max(best, u.dot(v));
    for (int id : face_->vertex_ids)
        if (u.dot(verts[static_cast<size_t>(id)]) < best - kGeomTol) return std::nullopt;
    return u;
}

Eigen::VectorXd ConeSampler::sample(RandomStream& rng) const {
    for (long attempt = 0; attempt < kEmptyConeLimit; ++attempt)
        if (auto u = propose(rng)) return *u;
    throw EmptyCone("normal cone acceptance rate indistinguishable from zero");
}

MCEstimate ConeSampler::estimate_angle(RandomStream& rng, long n_proposals) const {
    if (n_proposals < 1) throw OutOfRange("need at least one proposal");
    Accumulator acc;
    for (long i = 0; i < n_proposals; ++i) acc.add(propose(rng) ? 1.0 : 0.0);
    return acc.estimate(rng.seed());
}

Eigen::VectorXd sample_normal_cone(const Polytope& p, int k, int face_index, RandomStream& rng) {
    return ConeSampler(p, k, face_index).sample(rng);
}

double external_angle_exact(const Polytope& p, int k, int face_index) {
    const int d = p.dim();
    if (k == d - 1) return 0.5;
    if (k != d - 2) throw OutOfRange("exact external angle only at codimension 1 or 2");
    const Face& face = p.faces(k)[static_cast<size_t>(face_index)];
    if (face.incident_facets.size() != 2)
        throw DegenerateConfiguration("codimension-2 face without exactly two incident facets");
    const auto& n1 = p.facets()[static_cast<size_t>(face.incident_facets[0])].normal;
    const auto& n2 = p.facets()[static_cast<size_t>(face.incident_facets[1])].normal;
    const double c = std::clamp(n1.dot(n2), -1.0, 1.0);
    return std::acos(c) / (2.0 * 3.14159265358979323846264338327950288);
}

double intrinsic_volume(const Polytope& p, int k) {
    const int d = p.dim();
    if (k == d) return p.volume();
    if (k == d - 1) {
        double s = 0.0;
        for (const auto& f : p.faces(d - 1)) s += f.volume;
        return 0.5 * s;
    }
    if (k == d - 2) {
        double s = 0.0;
        const auto& level = p.faces(d - 2);
        for (size_t i = 0; i < level.size(); ++i)
            s += level[i].volume * external_angle_exact(p, d - 2, static_cast<int>(i));
        return s;
    }
    throw OutOfRange("exact intrinsic volume only for k >= d-2; use the Monte Carlo variant");
}

MCEstimate intrinsic_volume_mc(const Polytope& p, int k, RandomStream& rng, long n_proposals) {
    const int d = p.dim();
    if (k < 0 || k > d) throw IndexOutOfRange("intrinsic volume index out of range");
    if (k >= d - 2) return MCEstimate{intrinsic_volume(p, k), 0.0, 0, rng.seed()};
    EstimateSum sum;
    // Fresh child per call so repeated calls on one stream stay independent;
    // per-face substreams keep the result independent of evaluation order.
    const RandomStream base = rng.substream(rng.next_u64());
    const auto& level = p.faces(k);
    for (size_t i = 0; i < level.size(); ++i) {
        RandomStream face_rng = base.substream(static_cast<std::uint64_t>(i));
        ConeSampler sampler(p, k, static_cast<int>(i));
        MCEstimate angle = sampler.estimate_angle(face_rng, n_proposals);
        sum.add(MCEstimate{level[i].volume * angle.mean, level[i].volume * angle.std_err, angle.n,
                           angle.seed});
    }
    return sum.total(rng.seed());
}

std::vector<std::pair<Eigen::VectorXd, double>> surface_area_measure_atoms(const Polytope& p) {
    std::vector<std::pair<Eigen::VectorXd, double>> atoms;
    const auto& level = p.faces(p.dim() - 1);
    atoms.reserve(level.size());
    for (const auto& f : level)
        atoms.emplace_back(p.facets()[static_cast<size_t>(f.incident_facets.front())].normal,
                           f.volume);
    return atoms;
}

double project_and_volume(const Polytope& p, const Subspace& e) {
    if (e.ambient_dim() != p.dim()) throw DimMismatch("subspace/polytope dimension mismatch");
    if (e.dim() < 1) throw DimZero("projection target must have dimension >= 1");
    std::vector<Eigen::VectorXd> shadow;
    shadow.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) shadow.emplace_back(e.coords(v));
    return hull_volume(shadow);
}

bool boundary_bound_check(const Polytope& p, const Subspace& l, double eps, long trials,
                          RandomStream& rng) {
    const int d = p.dim();
    const int m = l.dim();
    if (m < 1 || m > d - 1) throw OutOfRange("projection subspace dimension must be in [1, d-1]");
    if (eps <= 0.0 || eps > 1.0) throw OutOfRange("eps must be in (0, 1]");

    const double bound = eps * p.diameter() + 1e-9;
    const double threshold = std::sqrt(std::max(0.0, 1.0 - eps * eps));

    // Facets whose normals project long enough onto L.
    std::vector<int> qualifying;
    const auto& level = p.faces(d - 1);
    for (size_t i = 0; i < level.size(); ++i) {
        const auto& n = p.facets()[static_cast<size_t>(level[i].incident_facets.front())].normal;
        if (l.projection_norm(n) >= threshold) qualifying.push_back(static_cast<int>(i));
    }
    if (qualifying.empty()) return true;  // nothing to test

    // Shadow geometry in L coordinates.
    std::vector<Eigen::VectorXd> shadow;
    shadow.reserve(p.vertices().size());
    for (const auto& v : p.vertices()) shadow.emplace_back(l.coords(v));
    if (affine_rank(shadow) < m)
        throw DegenerateConfiguration("projection of the polytope is lower-dimensional");
    std::vector<HullFacet> shadow_facets;
    double lo = 0.0, hi = 0.0;
    if (m == 1) {
        lo = hi = shadow.front()(0);
        for (const auto& s : shadow) {
            lo = std::min(lo, s(0));
            hi = std::max(hi, s(0));
        }
    } else {
        shadow_facets = compute_hull(shadow).facets;
    }
    const auto dist_to_relbd = [&](const Eigen::VectorXd& y) {
        if (m == 1) return std::max(0.0, std::min(y(0) - lo, hi - y(0)));
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& f : shadow_facets) dist = std::min(dist, f.offset - f.normal.dot(y));
        return std::max(0.0, dist);
    };

    // Cumulative areas for facet choice proportional to content.
    std::vector<double> cum;
    double total = 0.0;
    for (int id : qualifying) {
        total += level[static_cast<size_t>(id)].volume;
        cum.push_back(total);
    }

    // Cache triangulations of the sampled facets in tangent coordinates.
    struct FacetCache {
        std::vector<Eigen::VectorXd> pts;
        std::vector<std::vector<int>> tri;
    };
    std::vector<std::optional<FacetCache>> cache(qualifying.size());

    for (long t = 0; t < trials; ++t) {
        const double pick = rng.uniform() * total;
        size_t j = static_cast<size_t>(std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin());
        if (j >= qualifying.size()) j = qualifying.size() - 1;
        const Face& face = level[static_cast<size_t>(qualifying[j])];
        if (!cache[j]) {
            FacetCache fc;
            fc.pts = gather(p.vertices(), face.vertex_ids);
            std::vector<Eigen::VectorXd> coords;
            coords.reserve(fc.pts.size());
            for (const auto& q : fc.pts)
                coords.emplace_back(face.tangent.basis().transpose() * (q - fc.pts[0]));
            fc.tri = triangulate_hull(coords);
            std::swap(fc.pts, coords);
            cache[j] = std::move(fc);
        }
        const Eigen::VectorXd local = sample_in_hull(cache[j]->pts, cache[j]->tri, rng);
        const auto face_pts = gather(p.vertices(), face.vertex_ids);
        const Eigen::VectorXd x = face_pts[0] + face.tangent.basis() * local;
        if (dist_to_relbd(l.coords(x)) > bound) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

Polytope make_cube(int d) {
    if (d < 2 || d > kMaxDim) throw OutOfRange("cube dimension out of range");
    std::vector<Eigen::VectorXd> verts;
    verts.reserve(1u << d);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v(i) = (mask >> i) & 1u ? 1.0 : 0.0;
        verts.push_back(std::move(v));
    }
    return Polytope::build(std::move(verts));
}

Polytope make_simplex(int d) {
    if (d < 2 || d > kMaxDim) throw OutOfRange("simplex dimension out of range");
    std::vector<Eigen::VectorXd> verts;
    verts.reserve(static_cast<size_t>(d) + 1);
    verts.push_back(Eigen::VectorXd::Zero(d));
    for (int i = 0; i < d; ++i) verts.push_back(Eigen::VectorXd::Unit(d, i));
    return Polytope::build(std::move(verts));
}

Polytope make_cross_polytope(int d) {
    if (d < 2 || d > kMaxDim) throw OutOfRange("cross polytope dimension out of range");
    std::vector<Eigen::VectorXd> verts;
    verts.reserve(2 * static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        verts.push_back(Eigen::VectorXd::Unit(d, i));
        verts.push_back(-Eigen::VectorXd::Unit(d, i));
    }
    return Polytope::build(std::move(verts));
}

Polytope make_random_polytope(int d, RandomStream& rng) {
    if (d < 2 || d > kMaxDim) throw OutOfRange("random polytope dimension out of range");
    for (;;) {
        std::vector<Eigen::VectorXd> pts;
        const int n = 2 * d * d;
        pts.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd v(d);
            for (int c = 0; c < d; ++c) v(c) = rng.gaussian();
            pts.push_back(std::move(v));
        }
        const Hull hull = compute_hull(pts);
        if (static_cast<int>(hull.vertex_ids.size()) < d + 1) continue;
        return Polytope::build(gather(pts, hull.vertex_ids));
    }
}

}  // namespace flagproj
