#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

#include "flagproj/mc.hpp"
#include "flagproj/polytope.hpp"
#include "flagproj/random.hpp"
#include "flagproj/subspace.hpp"

namespace flagproj {

/// Flag sample with importance weight. The flag pairs a unit normal
/// direction u with a subspace U containing it (dimension d-k).
struct WeightedFlagSample {
    FlagElement flag;
    double weight = 0.0;
    int face_index = -1;
};

/// Conormal flag measure of the k-skeleton: for each k-face F, directions u
/// uniform in the spherical normal cone paired with the fixed conormal space
/// F^perp, carrying weight V_k(F) per unit spherical measure. Each accepted
/// draw gets weight V_k(F) * omega_{d-k} / n_per_face, so the weight total
/// estimates the full mass omega_{d-k} * V_k(P).
std::vector<WeightedFlagSample> sample_conormal_flags(const Polytope& p, int k, long n_per_face,
                                                      RandomStream& rng);

/// Projection-weighted flag measure: same cone directions u, but the
/// subspace is drawn uniformly among (d-k)-subspaces containing u and the
/// weight carries the squared projection determinant onto F^perp. Total
/// mass is omega_{d-k} / C(d-1, k) * V_k(P).
std::vector<WeightedFlagSample> sample_weighted_flags(const Polytope& p, int k, long n_per_face,
                                                      RandomStream& rng);

/// Streaming variants (no sample materialization). The sink receives the
/// face index, the accepted direction, (for the weighted family) the drawn
/// subspace, and the sample weight. Rejected proposals are not reported;
/// callers know n_per_face.
void stream_conormal_flags(
    const Polytope& p, int k, long n_per_face, RandomStream& rng,
    const std::function<void(int face, const Eigen::VectorXd& u, double weight)>& sink);
void stream_weighted_flags(
    const Polytope& p, int k, long n_per_face, RandomStream& rng,
    const std::function<void(int face, const Eigen::VectorXd& u, const Subspace& big_u,
                             double weight)>& sink);

/// Integrand of the conormal-flag representation of the projection function:
/// squared projection determinant between the hyperplane sections U cap
/// u^perp and E^perp cap u^perp, divided by ||u|E^perp||^{d-k-2}. Defined as
/// 0 when u lies in E (within 1e-10); projection norms in (1e-10, 1e-8)
/// raise DegenerateConfiguration.
double conormal_integrand(const Subspace& e, const Eigen::VectorXd& u, const Subspace& big_u);

/// Reproducing kernel of the projection-weighted representation:
///   omega_{d-k}^{-1} ||u|E^perp||^{k-d+2} phi(U cap u^perp)
/// where phi reproduces squared projection determinants against
/// E^perp cap u^perp inside the ambient space u^perp. Same degenerate-u
/// conventions as conormal_integrand. May be negative for d-k >= 3.
double flag_kernel(const Subspace& e, const Eigen::VectorXd& u, const Subspace& big_u);

/// Transversality test: every k-face tangent has nonvanishing projection
/// determinant onto E (threshold 1e-8).
bool general_position(const Polytope& p, int k, const Subspace& e, double threshold = 1e-8);

/// Haar-random k-subspace in general position w.r.t. the k-faces of p;
/// GeneralPositionViolated after max_attempts rejections.
Subspace sample_general_position_subspace(const Polytope& p, int k, RandomStream& rng,
                                          int max_attempts = 100);

/// The face-sum and conormal-flag estimators of v_k(P, E) computed from one
/// shared set of cone draws, plus the largest relative difference between
/// the two integrand evaluations over all accepted samples (an exact
/// algebraic identity, so this measures only floating-point noise).
struct PairEstimate {
    MCEstimate face_sum;
    MCEstimate conormal;
    double max_rel_difference = 0.0;
};
PairEstimate v_k_face_and_conormal(const Polytope& p, const Subspace& e, long n_per_face,
                                   RandomStream& rng);

/// Face-sum estimator: sum over k-faces of <E,F>^2 V_k(F) times the cone
/// average of ||u|E^perp||^{k-d}. Requires general position.
MCEstimate v_k_face_sum(const Polytope& p, const Subspace& e, long n_per_face, RandomStream& rng);

/// Conormal-flag estimator of v_k(P, E). Requires general position;
/// identical draws to v_k_face_sum when given an equal stream state.
MCEstimate v_k_conormal_flags(const Polytope& p, const Subspace& e, long n_per_face,
                              RandomStream& rng);

/// Projection-weighted flag estimator of v_k(P, E) through the reproducing
/// kernel. Requires general position only for k <= d-3 (the kernel exponent
/// is nonnegative at codimension 1 and 2).
MCEstimate v_k_weighted_flags(const Polytope& p, const Subspace& e, long n_per_face,
                              RandomStream& rng);

/// Exact projection function at codimension 1 from the facet atoms:
/// v_{d-1}(P, x^perp) = 1/2 sum_i area_i |<x, n_i>| for unit x.
double v_codim1_exact(const Polytope& p, const Eigen::VectorXd& x);

}  // namespace flagproj
