#include "flagproj/flags.hpp"

#include <algorithm>
#include <cmath>

#include "flagproj/combinatorics.hpp"
#include "flagproj/errors.hpp"

namespace flagproj {

namespace {

/// Sum over a fixed number of proposals where only accepted samples carry a
/// value; rejected proposals are implicit zeros.
struct ProposalSum {
    double s = 0.0;
    double s2 = 0.0;

    void add(double v) {
        s += v;
        s2 += v * v;
    }

    /// Estimate of the per-face contribution (the sum scaled by 1/n is the
    /// proposal mean; we return the total directly).
    [[nodiscard]] MCEstimate over(long n) const {
        MCEstimate e;
        e.mean = s / static_cast<double>(n);
        if (n > 1) {
            double var = (s2 - s * s / static_cast<double>(n)) / static_cast<double>(n - 1);
            if (var < 0.0) var = 0.0;
            e.std_err = std::sqrt(var / static_cast<double>(n));
        }
        e.n = n;
        return e;
    }
};

void check_projection_args(const Polytope& p, const Subspace& e) {
    if (e.ambient_dim() != p.dim()) throw DimMismatch("subspace/polytope dimension mismatch");
    if (e.dim() < 1 || e.dim() > p.dim() - 1)
        throw OutOfRange("projection subspace dimension must be in [1, d-1]");
}

/// ||u|E^perp|| with full relative accuracy near zero (explicit complement
/// coordinates rather than 1 - ||u|E||^2, which underflows the tolerance
/// bands).
double perp_norm(const Subspace& eperp, const Eigen::VectorXd& u) {
    return eperp.projection_norm(u);
}

double kernel_phi(const Subspace& a, const Subspace& w, const std::vector<double>& alpha) {
    const std::vector<double> prods = products_all(a, w);
    double phi = 0.0;
    for (size_t pidx = 0; pidx < prods.size(); ++pidx)
        phi += alpha[pidx] * prods[pidx] * prods[pidx];
    return phi;
}

double conormal_integrand_impl(const Subspace& eperp, const Eigen::VectorXd& u,
                               const Subspace& big_u) {
    const int d = static_cast<int>(u.size());
    const int k = d - big_u.dim();
    const double t = perp_norm(eperp, u);
    if (t <= tol::kDegenerateLow) return 0.0;
    if (t < tol::kDegenerateHigh)
        throw DegenerateConfiguration("direction inside the ambiguity band around E");
    const Subspace w1 = intersect_with_hyperplane(big_u, u);
    const Subspace w2 = intersect_with_hyperplane(eperp, u);
    const double det = det_projection(w1, w2);
    return det * det * std::pow(t, -(d - k - 2));
}

double flag_kernel_impl(const Subspace& eperp, const Eigen::VectorXd& u, const Subspace& big_u,
                        const std::vector<double>& alpha, double omega_dk) {
    const int d = static_cast<int>(u.size());
    const int k = d - big_u.dim();
    const double t = perp_norm(eperp, u);
    if (t <= tol::kDegenerateLow) return 0.0;
    if (t < tol::kDegenerateHigh)
        throw DegenerateConfiguration("direction inside the ambiguity band around E");

    // Sections by u^perp, then everything expressed in u^perp coordinates.
    const Subspace a = intersect_with_hyperplane(eperp, u);
    const Subspace w = intersect_with_hyperplane(big_u, u);
    const Subspace u_line = Subspace::from_orthonormal(u.normalized());
    const Subspace frame = complement(u_line);
    Subspace a_in = Subspace::from_orthonormal(frame.basis().transpose() * a.basis());
    Subspace w_in = Subspace::from_orthonormal(frame.basis().transpose() * w.basis());

    const double phi = kernel_phi(a_in, w_in, alpha);
    return phi * std::pow(t, k - d + 2) / omega_dk;
}

}  // namespace

double conormal_integrand(const Subspace& e, const Eigen::VectorXd& u, const Subspace& big_u) {
    const int d = static_cast<int>(u.size());
    if (e.ambient_dim() != d || big_u.ambient_dim() != d)
        throw DimMismatch("ambient dimension mismatch");
    if (e.dim() + big_u.dim() != d) throw DimMismatch("flag subspace must have dimension d-k");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw DimMismatch("direction must be a unit vector");
    if (!big_u.contains(u, 1e-9)) throw DimMismatch("direction must lie in the flag subspace");
    return conormal_integrand_impl(complement(e), u, big_u);
}

double flag_kernel(const Subspace& e, const Eigen::VectorXd& u, const Subspace& big_u) {
    const int d = static_cast<int>(u.size());
    if (e.ambient_dim() != d || big_u.ambient_dim() != d)
        throw DimMismatch("ambient dimension mismatch");
    if (e.dim() + big_u.dim() != d) throw DimMismatch("flag subspace must have dimension d-k");
    if (std::abs(u.norm() - 1.0) > 1e-9) throw DimMismatch("direction must be a unit vector");
    if (!big_u.contains(u, 1e-9)) throw DimMismatch("direction must lie in the flag subspace");
    const int k = e.dim();
    const std::vector<double> alpha = alpha_explicit(d - 1, d - 1 - k).to_doubles();
    return flag_kernel_impl(complement(e), u, big_u, alpha, omega(d - k));
}

bool general_position(const Polytope& p, int k, const Subspace& e, double threshold) {
    for (const auto& face : p.faces(k))
        if (det_projection(face.tangent, e) <= threshold) return false;
    return true;
}

Subspace sample_general_position_subspace(const Polytope& p, int k, RandomStream& rng,
                                          int max_attempts) {
    for (int i = 0; i < max_attempts; ++i) {
        Subspace e = sample_grassmannian(p.dim(), k, rng);
        if (general_position(p, k, e)) return e;
    }
    throw GeneralPositionViolated("no transversal subspace found within the attempt budget");
}

// ---------------------------------------------------------------------------
// Flag sampling
// ---------------------------------------------------------------------------

void stream_conormal_flags(
    const Polytope& p, int k, long n_per_face, RandomStream& rng,
    const std::function<void(int face, const Eigen::VectorXd& u, double weight)>& sink) {
    if (k < 0 || k >= p.dim()) throw IndexOutOfRange("face dimension out of range");
    if (n_per_face < 1) throw OutOfRange("need at least one proposal per face");
    const double om = omega(p.dim() - k);
    const RandomStream base = rng.substream(rng.next_u64());
    const auto& level = p.faces(k);
    for (size_t i = 0; i < level.size(); ++i) {
        RandomStream face_rng = base.substream(static_cast<std::uint64_t>(i));
        const ConeSampler sampler(p, k, static_cast<int>(i));
        const double weight = level[i].volume * om / static_cast<double>(n_per_face);
        for (long s = 0; s < n_per_face; ++s)
            if (auto u = sampler.propose(face_rng)) sink(static_cast<int>(i), *u, weight);
    }
}

void stream_weighted_flags(
    const Polytope& p, int k, long n_per_face, RandomStream& rng,
    const std::function<void(int face, const Eigen::VectorXd& u, const Subspace& big_u,
                             double weight)>& sink) {
    if (k < 0 || k >= p.dim()) throw IndexOutOfRange("face dimension out of range");
    if (n_per_face < 1) throw OutOfRange("need at least one proposal per face");
    const int d = p.dim();
    const double om = omega(d - k);
    const RandomStream base = rng.substream(rng.next_u64());
    const auto& level = p.faces(k);
    for (size_t i = 0; i < level.size(); ++i) {
        RandomStream face_rng = base.substream(static_cast<std::uint64_t>(i));
        const ConeSampler sampler(p, k, static_cast<int>(i));
        const double base_weight = level[i].volume * om / static_cast<double>(n_per_face);
        for (long s = 0; s < n_per_face; ++s) {
            auto u = sampler.propose(face_rng);
            if (!u) continue;
            const Subspace big_u = sample_grassmannian_containing_line(*u, d - k, face_rng);
            const double proj = det_projection(big_u, level[i].normal_span);
            sink(static_cast<int>(i), *u, big_u, base_weight * proj * proj);
        }
    }
}

std::vector<WeightedFlagSample> sample_conormal_flags(const Polytope& p, int k, long n_per_face,
                                                      RandomStream& rng) {
    std::vector<WeightedFlagSample> out;
    const auto& level = p.faces(k);
    stream_conormal_flags(p, k, n_per_face, rng,
                          [&](int face, const Eigen::VectorXd& u, double weight) {
                              out.push_back(WeightedFlagSample{
                                  FlagElement{u, level[static_cast<size_t>(face)].normal_span},
                                  weight, face});
                          });
    return out;
}

std::vector<WeightedFlagSample> sample_weighted_flags(const Polytope& p, int k, long n_per_face,
                                                      RandomStream& rng) {
    std::vector<WeightedFlagSample> out;
    stream_weighted_flags(
        p, k, n_per_face, rng,
        [&](int face, const Eigen::VectorXd& u, const Subspace& big_u, double weight) {
            out.push_back(WeightedFlagSample{FlagElement{u, big_u}, weight, face});
        });
    return out;
}

// ---------------------------------------------------------------------------
// Projection-function estimators
// ---------------------------------------------------------------------------

PairEstimate v_k_face_and_conormal(const Polytope& p, const Subspace& e, long n_per_face,
                                   RandomStream& rng) {
    check_projection_args(p, e);
    const int d = p.dim();
    const int k = e.dim();
    if (!general_position(p, k, e))
        throw GeneralPositionViolated("a k-face tangent is not transversal to E");

    const Subspace eperp = complement(e);
    const auto& level = p.faces(k);

    EstimateSum face_sum_total, conormal_total;
    double max_rel = 0.0;

    const RandomStream base = rng.substream(rng.next_u64());
    for (size_t i = 0; i < level.size(); ++i) {
        RandomStream face_rng = base.substream(static_cast<std::uint64_t>(i));
        const ConeSampler sampler(p, k, static_cast<int>(i));
        const Face& face = level[i];
        const double pd = det_projection(face.tangent, e);
        const double coupling = pd * pd * face.volume;

        ProposalSum acc_face, acc_conormal;
        for (long s = 0; s < n_per_face; ++s) {
            auto u = sampler.propose(face_rng);
            if (!u) continue;
            const double t = perp_norm(eperp, *u);
            double x = 0.0, y = 0.0;
            if (t > tol::kDegenerateLow) {
                x = coupling * std::pow(t, k - d);
                try {
                    y = face.volume * conormal_integrand_impl(eperp, *u, face.normal_span);
                } catch (const DegenerateConfiguration&) {
                    x = 0.0;  // ambiguity band: zero-measure event, drop the sample in both
                }
            }
            acc_face.add(x);
            acc_conormal.add(y);
            const double big = std::max(std::abs(x), std::abs(y));
            if (big > 0.0) max_rel = std::max(max_rel, std::abs(x - y) / big);
        }
        face_sum_total.add(acc_face.over(n_per_face));
        conormal_total.add(acc_conormal.over(n_per_face));
    }

    PairEstimate pair;
    pair.face_sum = face_sum_total.total(rng.seed());
    pair.conormal = conormal_total.total(rng.seed());
    pair.max_rel_difference = max_rel;
    return pair;
}

MCEstimate v_k_face_sum(const Polytope& p, const Subspace& e, long n_per_face, RandomStream& rng) {
    return v_k_face_and_conormal(p, e, n_per_face, rng).face_sum;
}

MCEstimate v_k_conormal_flags(const Polytope& p, const Subspace& e, long n_per_face,
                              RandomStream& rng) {
    return v_k_face_and_conormal(p, e, n_per_face, rng).conormal;
}

MCEstimate v_k_weighted_flags(const Polytope& p, const Subspace& e, long n_per_face,
                              RandomStream& rng) {
    check_projection_args(p, e);
    const int d = p.dim();
    const int k = e.dim();
    if (k <= d - 3 && !general_position(p, k, e))
        throw GeneralPositionViolated("a k-face tangent is not transversal to E");

    const Subspace eperp = complement(e);
    const double om = omega(d - k);
    const std::vector<double> alpha = alpha_explicit(d - 1, d - 1 - k).to_doubles();
    const auto& level = p.faces(k);

    EstimateSum total;
    const RandomStream base = rng.substream(rng.next_u64());
    for (size_t i = 0; i < level.size(); ++i) {
        RandomStream face_rng = base.substream(static_cast<std::uint64_t>(i));
        const ConeSampler sampler(p, k, static_cast<int>(i));
        const Face& face = level[i];

        ProposalSum acc;
        for (long s = 0; s < n_per_face; ++s) {
            auto u = sampler.propose(face_rng);
            if (!u) continue;
            const Subspace big_u = sample_grassmannian_containing_line(*u, d - k, face_rng);
            const double proj = det_projection(big_u, face.normal_span);
            double g = 0.0;
            try {
                g = flag_kernel_impl(eperp, *u, big_u, alpha, om);
            } catch (const DegenerateConfiguration&) {
                g = 0.0;  // ambiguity band: zero-measure event
            }
            acc.add(face.volume * om * proj * proj * g);
        }
        total.add(acc.over(n_per_face));
    }
    return total.total(rng.seed());
}

double v_codim1_exact(const Polytope& p, const Eigen::VectorXd& x) {
    if (x.size() != p.dim()) throw DimMismatch("vector/polytope dimension mismatch");
    double s = 0.0;
    for (const auto& [normal, area] : surface_area_measure_atoms(p))
        s += area * std::abs(x.dot(normal));
    return 0.5 * s;
}

}  // namespace flagproj
