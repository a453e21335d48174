#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "flagproj/combinatorics.hpp"
#include "flagproj/flags.hpp"
#include "flagproj/harness.hpp"
#include "flagproj/polytope.hpp"
#include "flagproj/subspace.hpp"

namespace flagproj {

namespace {

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

/// Tally for exact (rational or fp-exact) case sweeps.
struct ExactSweep {
    long cases = 0;
    long failures = 0;
    std::string first_failure;

    void require(bool ok, const std::string& desc) {
        ++cases;
        if (!ok) {
            ++failures;
            if (first_failure.empty()) first_failure = desc;
        }
    }

    void finish(CheckRecord& rec) const {
        rec.observed = static_cast<double>(failures);
        rec.expected = 0.0;
        rec.tolerance = 0.0;
        rec.n = cases;
        if (failures > 0) {
            rec.status = "fail";
            rec.detail = fmt("%ld of %ld cases failed; first: ", failures, cases) + first_failure;
        } else {
            rec.detail = fmt("%ld exact cases", cases);
        }
    }
};

/// Tally for statistical case sweeps: each comparison gets an independent
/// substream and one retry at 4x samples before counting as a failure.
/// When both sides are exact (zero standard error) the comparison degrades
/// to an fp-equality band of 1e-12 relative.
class ZSweep {
public:
    explicit ZSweep(const RunConfig& cfg) : cfg_(cfg) {}

    void compare(const RandomStream& case_stream, long n0, const std::string& desc,
                 const std::function<MCEstimate(long, RandomStream&)>& run,
                 const MCEstimate& reference) {
        MCEstimate est;
        double z = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
            RandomStream rng = case_stream.substream(static_cast<std::uint64_t>(attempt));
            est = run(attempt == 0 ? n0 : 4 * n0, rng);
            const double se = std::sqrt(est.std_err * est.std_err +
                                        reference.std_err * reference.std_err);
            const double diff = std::abs(est.mean - reference.mean);
            if (se > 0.0) {
                z = diff / se;
                ok = z <= cfg_.z_threshold;
            } else {
                z = 0.0;
                ok = diff <= 1e-12 * std::max(1.0, std::abs(reference.mean));
                if (!ok) z = std::numeric_limits<double>::infinity();
                break;  // both sides deterministic, retry is pointless
            }
        }
        ++cases_;
        n_total_ += est.n;
        if (z >= worst_z_) {
            worst_z_ = z;
            worst_desc_ = desc;
        }
        if (!ok) {
            ++failures_;
            if (fail_desc_.empty()) fail_desc_ = desc;
        }
    }

    void finish(CheckRecord& rec) const {
        rec.observed = worst_z_;
        rec.expected = 0.0;
        rec.tolerance = cfg_.z_threshold;
        rec.n = n_total_;
        if (failures_ > 0) {
            rec.status = "fail";
            rec.detail =
                fmt("%ld of %ld comparisons outside the band; first: ", failures_, cases_) +
                fail_desc_;
        } else {
            rec.detail = fmt("%ld comparisons, worst |z| at ", cases_) + worst_desc_;
        }
    }

private:
    const RunConfig& cfg_;
    long cases_ = 0;
    long failures_ = 0;
    std::int64_t n_total_ = 0;
    double worst_z_ = 0.0;
    std::string worst_desc_ = "(none)";
    std::string fail_desc_;
};

bool rational_is(const Rational& r, const Rational& want) { return (r - want).is_zero(); }

// ---------------------------------------------------------------------------
// combinatorics
// ---------------------------------------------------------------------------

void check_alpha(const RunConfig& cfg, RandomStream&, CheckRecord& rec) {
    const int dlo = std::max(3, cfg.d_min), dhi = std::min(8, cfg.d_max);
    if (dlo > dhi) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3..8";
        return;
    }
    ExactSweep sweep;
    for (int d = dlo; d <= dhi; ++d)
        for (int k = 1; k <= d - 1; ++k) {
            const AlphaVector a = alpha_explicit(d, k);
            const std::vector<Rational> prod = D_matrix(d, k).left_multiply(a.coeff);
            bool ok = rational_is(prod[0], Rational(1));
            for (size_t i = 1; i < prod.size(); ++i) ok = ok && prod[i].is_zero();
            sweep.require(ok, fmt("coefficients d=%d k=%d do not left-solve to e0", d, k));

            const AlphaVector solved = alpha_solve(d, k);
            bool same = solved.coeff.size() == a.coeff.size();
            for (size_t i = 0; same && i < a.coeff.size(); ++i)
                same = rational_is(solved.coeff[i], a.coeff[i]);
            sweep.require(same, fmt("solver disagrees with closed form at d=%d k=%d", d, k));
        }
    sweep.finish(rec);
}

void check_contraction(const RunConfig& cfg, RandomStream&, CheckRecord& rec) {
    const int dhi = std::min(8, cfg.d_max);
    if (std::max(0, cfg.d_min) > dhi) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 0..8";
        return;
    }
    ExactSweep sweep;
    for (int d = std::max(0, cfg.d_min); d <= dhi; ++d)
        for (int k = 0; k <= d; ++k)
            for (int i = 0; i <= k; ++i)
                sweep.require(
                    rational_is(verify_identity(d, k, i), binomial(static_cast<long long>(i), k)),
                    fmt("contraction value at d=%d k=%d i=%d", d, k, i));
    sweep.finish(rec);
}

void check_c_recursion(const RunConfig& cfg, RandomStream&, CheckRecord& rec) {
    const int dhi = std::min(8, cfg.d_max);
    if (dhi < 2) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 2..8";
        return;
    }
    ExactSweep sweep;
    for (int d = 2; d <= dhi; ++d) {
        for (int k = 1; k <= d - 1; ++k)
            for (int i = 0; i <= std::min(k, d - k); ++i)
                sweep.require(rational_is(c_closed(d, k, i), c_closed(d, d - k, i)),
                              fmt("symmetry at d=%d k=%d i=%d", d, k, i));
        for (int k = 1; 2 * k <= d; ++k) {
            const RecursionFactors f = recursion_factors(d, k);
            for (int i = 0; i < k; ++i)
                sweep.require(
                    rational_is(c_closed(d, k, i), f.off_diagonal * c_closed(d - 1, k - 1, i)),
                    fmt("off-diagonal recursion at d=%d k=%d i=%d", d, k, i));
            sweep.require(rational_is(c_closed(d, k, k), f.diagonal * c_closed(d - 1, k - 1, k - 1)),
                          fmt("diagonal recursion at d=%d k=%d", d, k));
        }
    }
    sweep.finish(rec);
}

void check_c_montecarlo(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    const int dlo = std::max(1, cfg.d_min), dhi = std::min(5, cfg.d_max);
    if (dlo > dhi) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 1..5";
        return;
    }
    ZSweep sweep(cfg);
    std::uint64_t case_id = 0;
    for (int d = dlo; d <= dhi; ++d)
        for (int k = 0; k <= d - 1; ++k)
            for (int i = 0; i <= std::min(k, d - k); ++i) {
                const MCEstimate target{c_closed(d, k, i).to_double(), 0.0, 0, cfg.seed};
                sweep.compare(
                    rng.substream(case_id++), cfg.grassmannian_samples,
                    fmt("subspace moment d=%d k=%d i=%d", d, k, i),
                    [d, k, i](long n, RandomStream& r) { return c_montecarlo(d, k, i, n, r); },
                    target);
            }
    sweep.finish(rec);
}

// ---------------------------------------------------------------------------
// grassmann
// ---------------------------------------------------------------------------

void check_kernel_equation(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    bool any = false;
    ZSweep sweep(cfg);
    for (int n = 3; n <= 4; ++n) {
        if (n < cfg.d_min || n > cfg.d_max) continue;
        any = true;
        for (int pair = 0; pair < 10; ++pair) {
            const int q = 1 + pair % (n - 1);
            RandomStream cs = rng.substream(static_cast<std::uint64_t>(n) * 100 + pair);
            RandomStream draw = cs.substream(999);
            const Subspace a = sample_grassmannian(n, q, draw);
            const Subspace b = sample_grassmannian(n, q, draw);
            const double pab = det_projection(a, b);
            const std::vector<double> alpha = alpha_explicit(n, q).to_doubles();
            const MCEstimate target{pab * pab, 0.0, 0, cfg.seed};
            sweep.compare(
                cs, cfg.grassmannian_samples, fmt("ambient n=%d q=%d pair=%d", n, q, pair),
                [&a, &b, &alpha, n, q](long nn, RandomStream& r) {
                    Accumulator acc;
                    for (long s = 0; s < nn; ++s) {
                        const Subspace u = sample_grassmannian(n, q, r);
                        const std::vector<double> pa = products_all(a, u);
                        double phi = 0.0;
                        for (size_t p = 0; p < pa.size(); ++p) phi += alpha[p] * pa[p] * pa[p];
                        const double ub = det_projection(u, b);
                        acc.add(phi * ub * ub);
                    }
                    return acc.estimate(r.seed());
                },
                target);
        }
    }
    if (!any) {
        rec.status = "skip";
        rec.detail = "dimension range excludes ambient 3..4";
        return;
    }
    sweep.finish(rec);
}

void check_parseval(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    const int dlo = std::max(2, cfg.d_min), dhi = std::min(6, cfg.d_max);
    if (dlo > dhi) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 2..6";
        return;
    }
    double worst = 0.0;
    std::string worst_desc;
    long cases = 0;
    for (long idx = 0; idx < 1000; ++idx) {
        RandomStream cs = rng.substream(static_cast<std::uint64_t>(idx));
        const int d = dlo + static_cast<int>(idx % (dhi - dlo + 1));
        const int k = static_cast<int>(idx / (dhi - dlo + 1)) % (d + 1);
        const Subspace a = sample_grassmannian(d, k, cs);
        const Subspace b = sample_grassmannian(d, k, cs);
        double s = 0.0;
        for (double p : products_all(a, b)) s += p * p;
        const double err = std::abs(s - 1.0);
        ++cases;
        if (err >= worst) {
            worst = err;
            worst_desc = fmt("d=%d k=%d pair %ld", d, k, idx);
        }
    }
    rec.observed = worst;
    rec.expected = 0.0;
    rec.tolerance = 1e-10;
    rec.n = cases;
    if (worst > 1e-10) {
        rec.status = "fail";
        rec.detail = "largest deviation of the squared-product sum from 1 at " + worst_desc;
    } else {
        rec.detail = fmt("%ld pairs, largest deviation at ", cases) + worst_desc;
    }
}

// ---------------------------------------------------------------------------
// sphere moments
// ---------------------------------------------------------------------------

void check_sphere_moments(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    bool any = false;
    ZSweep sweep(cfg);
    std::uint64_t case_id = 0;
    for (int d = 3; d <= 5; ++d) {
        if (d < cfg.d_min || d > cfg.d_max) continue;
        any = true;
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; q <= 2; q += 2) {
                const double exact = sphere_moment_exact(d, p, q).value() / omega(d);
                const MCEstimate target{exact, 0.0, 0, cfg.seed};
                sweep.compare(
                    rng.substream(case_id++), cfg.sphere_samples,
                    fmt("moment d=%d p=%d q=%d", d, p, q),
                    [d, p, q](long n, RandomStream& r) {
                        Accumulator acc;
                        for (long s = 0; s < n; ++s) {
                            const Eigen::VectorXd u = sample_unit_sphere(d, r);
                            acc.add(std::pow(std::abs(u(0)), p) * std::pow(std::abs(u(1)), q));
                        }
                        return acc.estimate(r.seed());
                    },
                    target);
            }
    }
    if (!any) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3..5";
        return;
    }
    sweep.finish(rec);
}

// ---------------------------------------------------------------------------
// projections
// ---------------------------------------------------------------------------

void check_codim1(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    bool any = false;
    double worst = 0.0;
    std::string worst_desc = "(none)";
    long cases = 0;
    for (int d = 3; d <= 5; ++d) {
        if (d < cfg.d_min || d > cfg.d_max) continue;
        any = true;
        for (int shape = 0; shape < 3; ++shape) {
            RandomStream cs = rng.substream(static_cast<std::uint64_t>(d) * 10 + shape);
            const char* names[] = {"cube", "simplex", "random"};
            const Polytope p = shape == 0   ? make_cube(d)
                               : shape == 1 ? make_simplex(d)
                                            : make_random_polytope(d, cs);
            for (int t = 0; t < 20; ++t) {
                const Eigen::VectorXd x = sample_unit_sphere(d, cs);
                Eigen::MatrixXd col(d, 1);
                col.col(0) = x;
                const Subspace e = complement(Subspace::from_orthonormal(col));
                const double a = v_codim1_exact(p, x);
                const double b = project_and_volume(p, e);
                const double err = std::abs(a - b);
                ++cases;
                if (err >= worst) {
                    worst = err;
                    worst_desc = fmt("%s d=%d direction %d", names[shape], d, t);
                }
            }
        }
    }
    if (!any) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3..5";
        return;
    }
    rec.observed = worst;
    rec.expected = 0.0;
    rec.tolerance = 1e-9;
    rec.n = cases;
    if (worst > 1e-9) {
        rec.status = "fail";
        rec.detail = "facet-atom value vs projected hull volume differs at " + worst_desc;
    } else {
        rec.detail = fmt("%ld directions, largest gap at ", cases) + worst_desc;
    }
}

void check_four_way(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    bool any = false;
    long cases = 0, failures = 0;
    std::int64_t n_total = 0;
    double worst_z = 0.0, worst_rel = 0.0;
    std::string worst_desc = "(none)", fail_desc;

    for (int d = 3; d <= 4; ++d) {
        if (d < cfg.d_min || d > cfg.d_max) continue;
        any = true;
        for (int shape = 0; shape < 2; ++shape) {
            const char* names[] = {"cube", "simplex"};
            const Polytope p = shape == 0 ? make_cube(d) : make_simplex(d);
            for (int k = 1; k <= d - 1; ++k)
                for (int rep = 0; rep < 5; ++rep) {
                    RandomStream cs = rng.substream(
                        ((static_cast<std::uint64_t>(d) * 10 + shape) * 10 + k) * 10 + rep);
                    RandomStream erng = cs.substream(0);
                    Subspace e = Subspace::zero(d);
                    bool got = false;
                    for (int t = 0; t < 100 && !got; ++t) {
                        e = sample_grassmannian(d, k, erng);
                        got = general_position(p, k, e, 1e-4);
                    }
                    ++cases;
                    const std::string where = fmt("%s d=%d k=%d rep=%d", names[shape], d, k, rep);
                    if (!got) {
                        ++failures;
                        if (fail_desc.empty()) fail_desc = where + " (no transversal subspace)";
                        continue;
                    }
                    const MCEstimate direct{project_and_volume(p, e), 0.0, 0, cfg.seed};

                    bool ok = false;
                    double case_z = 0.0, case_rel = 0.0;
                    std::string case_pair;
                    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
                        const long mult = attempt == 0 ? 1 : 4;
                        const long n_pair = cfg.samples_per_face * mult;
                        const long n_wt =
                            cfg.samples_per_face * (k <= d - 3 ? 10 : 1) * mult;
                        RandomStream r1 = cs.substream(10 + attempt);
                        RandomStream r2 = cs.substream(20 + attempt);
                        const PairEstimate pr = v_k_face_and_conormal(p, e, n_pair, r1);
                        const MCEstimate wt = v_k_weighted_flags(p, e, n_wt, r2);
                        n_total += pr.face_sum.n + wt.n;
                        case_rel = pr.max_rel_difference;

                        const struct {
                            const char* pair;
                            double z;
                        } zs[] = {
                            {"face_sum vs direct", z_between(pr.face_sum, direct)},
                            {"conormal vs direct", z_between(pr.conormal, direct)},
                            {"weighted vs direct", z_between(wt, direct)},
                            {"face_sum vs conormal", z_between(pr.face_sum, pr.conormal)},
                            {"face_sum vs weighted", z_between(pr.face_sum, wt)},
                            {"conormal vs weighted", z_between(pr.conormal, wt)},
                        };
                        case_z = 0.0;
                        for (const auto& zc : zs)
                            if (zc.z >= case_z) {
                                case_z = zc.z;
                                case_pair = zc.pair;
                            }
                        ok = case_z <= cfg.z_threshold && case_rel <= 1e-10;
                    }
                    if (case_z >= worst_z) {
                        worst_z = case_z;
                        worst_desc = where + " " + case_pair;
                    }
                    worst_rel = std::max(worst_rel, case_rel);
                    if (!ok) {
                        ++failures;
                        if (fail_desc.empty())
                            fail_desc = where + " " + case_pair +
                                        fmt(" z=%.2f rel=%.3g", case_z, case_rel);
                    }
                }
        }
    }
    if (!any) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3..4";
        return;
    }
    rec.observed = worst_z;
    rec.expected = 0.0;
    rec.tolerance = cfg.z_threshold;
    rec.n = n_total;
    if (failures > 0) {
        rec.status = "fail";
        rec.detail = fmt("%ld of %ld cases failed; first: ", failures, cases) + fail_desc;
    } else {
        rec.detail = fmt("%ld cases, worst |z| at ", cases) + worst_desc +
                     fmt("; largest per-sample integrand gap %.3g (bound 1e-10)", worst_rel);
    }
}

void check_boundary_bound(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    if (3 < cfg.d_min || 3 > cfg.d_max) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3";
        return;
    }
    long cases = 0, violations = 0;
    std::string first_violation;
    for (int i = 0; i < 10; ++i) {
        RandomStream cs = rng.substream(static_cast<std::uint64_t>(i));
        const Polytope p = make_random_polytope(3, cs);
        for (int dim_l = 1; dim_l <= 2; ++dim_l) {
            const Subspace l = sample_grassmannian(3, dim_l, cs);
            for (double eps : {0.1, 0.3}) {
                RandomStream trial = cs.substream(static_cast<std::uint64_t>(dim_l) * 8 +
                                                  (eps < 0.2 ? 0 : 1));
                ++cases;
                if (!boundary_bound_check(p, l, eps, 1000, trial)) {
                    ++violations;
                    if (first_violation.empty())
                        first_violation =
                            fmt("polytope %d, target dim %d, eps=%.1f", i, dim_l, eps);
                }
            }
        }
    }
    rec.observed = static_cast<double>(violations);
    rec.expected = 0.0;
    rec.tolerance = 0.0;
    rec.n = cases * 1000;
    if (violations > 0) {
        rec.status = "fail";
        rec.detail = "projected facet point strayed from the shadow boundary: " + first_violation;
    } else {
        rec.detail = fmt("%ld configurations, 1000 trials each", cases);
    }
}

// ---------------------------------------------------------------------------
// masses
// ---------------------------------------------------------------------------

MCEstimate mass_total(const Polytope& p, int k, long n_per_face, RandomStream& rng, bool weighted) {
    const size_t nf = p.faces(k).size();
    std::vector<double> s(nf, 0.0), s2(nf, 0.0);
    if (weighted) {
        stream_weighted_flags(p, k, n_per_face, rng,
                              [&](int f, const Eigen::VectorXd&, const Subspace&, double w) {
                                  s[static_cast<size_t>(f)] += w;
                                  s2[static_cast<size_t>(f)] += w * w;
                              });
    } else {
        stream_conormal_flags(p, k, n_per_face, rng, [&](int f, const Eigen::VectorXd&, double w) {
            s[static_cast<size_t>(f)] += w;
            s2[static_cast<size_t>(f)] += w * w;
        });
    }
    MCEstimate out;
    const double n = static_cast<double>(n_per_face);
    double var = 0.0;
    for (size_t f = 0; f < nf; ++f) {
        out.mean += s[f];
        var += std::max(0.0, (n * s2[f] - s[f] * s[f]) / (n - 1.0));
    }
    out.std_err = std::sqrt(var);
    out.n = static_cast<std::int64_t>(nf) * n_per_face;
    out.seed = rng.seed();
    return out;
}

void check_mass_identities(const RunConfig& cfg, RandomStream& rng, CheckRecord& rec) {
    bool any = false;
    ZSweep sweep(cfg);
    const long n0 = std::max<long>(1000, cfg.samples_per_face / 10);
    for (int d = 3; d <= 4; ++d) {
        if (d < cfg.d_min || d > cfg.d_max) continue;
        any = true;
        for (int shape = 0; shape < 2; ++shape) {
            const char* names[] = {"cube", "simplex"};
            const Polytope p = shape == 0 ? make_cube(d) : make_simplex(d);
            for (int k = 0; k <= d - 1; ++k) {
                RandomStream cs =
                    rng.substream((static_cast<std::uint64_t>(d) * 10 + shape) * 10 + k);
                const std::string where = fmt("%s d=%d k=%d", names[shape], d, k);

                // Intrinsic-volume reference: exact where available, the
                // external-angle estimator on its own stream otherwise.
                MCEstimate vk;
                if (k >= d - 2) {
                    vk = MCEstimate{intrinsic_volume(p, k), 0.0, 0, cfg.seed};
                } else {
                    RandomStream vrng = cs.substream(777);
                    vk = intrinsic_volume_mc(p, k, vrng, 4 * n0);
                }

                const double om = omega(d - k);
                const MCEstimate tau_ref{om * vk.mean, om * vk.std_err, vk.n, cfg.seed};
                sweep.compare(
                    cs.substream(1), n0, where + " conormal mass",
                    [&p, k](long n, RandomStream& r) { return mass_total(p, k, n, r, false); },
                    tau_ref);

                const double cdk = binomial(static_cast<long long>(d) - 1, k).to_double();
                const MCEstimate psi_ref{om / cdk * vk.mean, om / cdk * vk.std_err, vk.n,
                                         cfg.seed};
                sweep.compare(
                    cs.substream(2), n0, where + " weighted mass",
                    [&p, k](long n, RandomStream& r) { return mass_total(p, k, n, r, true); },
                    psi_ref);

                if (shape == 0) {
                    const MCEstimate bin_ref{binomial(static_cast<long long>(d), k).to_double(),
                                             0.0, 0, cfg.seed};
                    sweep.compare(
                        cs.substream(3), n0, where + " intrinsic volume vs binomial",
                        [&p, k](long n, RandomStream& r) {
                            return intrinsic_volume_mc(p, k, r, n);
                        },
                        bin_ref);
                }
            }
        }
    }
    if (!any) {
        rec.status = "skip";
        rec.detail = "dimension range excludes 3..4";
        return;
    }
    sweep.finish(rec);
}

}  // namespace

const std::vector<Check>& check_registry() {
    static const std::vector<Check> registry = [] {
        std::vector<Check> v = {
            {"alpha-solves-moment-system", "combinatorics", check_alpha},
            {"binomial-contraction", "combinatorics", check_contraction},
            {"c-montecarlo-agreement", "combinatorics", check_c_montecarlo},
            {"c-recursion-symmetry", "combinatorics", check_c_recursion},
            {"codim1-exact-vs-direct", "projections", check_codim1},
            {"estimator-four-way-agreement", "projections", check_four_way},
            {"flag-mass-identities", "masses", check_mass_identities},
            {"graded-product-parseval", "grassmann", check_parseval},
            {"kernel-reproduces-projection", "grassmann", check_kernel_equation},
            {"projection-boundary-bound", "projections", check_boundary_bound},
            {"sphere-moment-closed-forms", "sphere-moments", check_sphere_moments},
        };
        std::sort(v.begin(), v.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
        return v;
    }();
    return registry;
}

}  // namespace flagproj
