#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "flagproj/combinatorics.hpp"
#include "flagproj/errors.hpp"
#include "flagproj/flags.hpp"
#include "flagproj/polytope.hpp"
#include "flagproj/random.hpp"
#include "flagproj/subspace.hpp"

using namespace flagproj;

namespace {

Eigen::VectorXd unit(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v / v.norm();
}

}  // namespace

TEST_CASE("conormal integrand and kernel at codimension 1") {
    // k = d-1: the hyperplane sections are zero-dimensional, so the integrand
    // collapses to t = ||u|E^perp|| and the kernel to t / omega_1 = t / 2.
    const auto e = Subspace::coordinate(3, {0, 1});
    const Eigen::VectorXd u = unit({0.3, -0.5, 0.8});
    const auto big_u = orthonormalize({u});
    const double t = std::abs(u(2));
    CHECK(conormal_integrand(e, u, big_u) == doctest::Approx(t).epsilon(1e-12));
    CHECK(flag_kernel(e, u, big_u) == doctest::Approx(t / 2.0).epsilon(1e-12));

    // u inside E: both vanish by convention
    const Eigen::VectorXd in_e = unit({0.6, 0.8, 0.0});
    CHECK(conormal_integrand(e, in_e, orthonormalize({in_e})) == 0.0);
    CHECK(flag_kernel(e, in_e, orthonormalize({in_e})) == 0.0);
}

TEST_CASE("conormal integrand and kernel: hand values at d=3, k=1") {
    const auto e = Subspace::coordinate(3, {0});        // E = span{e1}
    const Eigen::VectorXd u = unit({0.0, 1.0, 0.0});    // t = 1

    // U = span{e2,e3} = conormal of an edge along e1: sections align, det = 1
    const auto aligned = Subspace::coordinate(3, {1, 2});
    CHECK(conormal_integrand(e, u, aligned) == doctest::Approx(1.0).epsilon(1e-12));
    // phi = 3 <A,W>_0^2 - <A,W>_1^2 with A = W = span{e3}
    CHECK(flag_kernel(e, u, aligned) == doctest::Approx(3.0 / (2.0 * M_PI)).epsilon(1e-12));

    // U = span{e1,e2}: section is span{e1}, orthogonal to E^perp section span{e3}
    const auto crossed = Subspace::coordinate(3, {0, 1});
    CHECK(conormal_integrand(e, u, crossed) == doctest::Approx(0.0));
    CHECK(flag_kernel(e, u, crossed) == doctest::Approx(-1.0 / (2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("flag evaluations validate their arguments") {
    const auto e = Subspace::coordinate(3, {0});
    const auto big_u = Subspace::coordinate(3, {1, 2});
    CHECK_THROWS_AS(conormal_integrand(e, unit({0.0, 2.0, 0.0}) * 2.0, big_u), DimMismatch);
    CHECK_THROWS_AS(conormal_integrand(e, unit({1.0, 0.0, 0.0}), big_u), DimMismatch);  // u not in U
    CHECK_THROWS_AS(conormal_integrand(e, unit({0.0, 1.0, 0.0}), Subspace::coordinate(3, {1})),
                    DimMismatch);  // dim E + dim U != d
    CHECK_THROWS_AS(flag_kernel(Subspace::coordinate(4, {0}), unit({0.0, 1.0, 0.0}), big_u),
                    DimMismatch);
}

TEST_CASE("general position") {
    const auto cube = make_cube(3);
    CHECK(!general_position(cube, 1, Subspace::coordinate(3, {0})));
    CHECK(!general_position(cube, 2, Subspace::coordinate(3, {0, 1})));
    CHECK(general_position(cube, 1, orthonormalize({unit({1.0, 2.0, 3.0})})));

    RandomStream rng(19);
    for (int k = 1; k <= 2; ++k) {
        const auto e = sample_general_position_subspace(cube, k, rng);
        CHECK(e.dim() == k);
        CHECK(general_position(cube, k, e));
    }

    CHECK_THROWS_AS(v_k_face_sum(cube, Subspace::coordinate(3, {0}), 100, rng),
                    GeneralPositionViolated);
    CHECK_THROWS_AS(v_k_conormal_flags(cube, Subspace::coordinate(3, {0}), 100, rng),
                    GeneralPositionViolated);
}

TEST_CASE("flag streams and materialized samples agree") {
    const auto cube = make_cube(3);
    const int k = 1;
    const long n_per_face = 500;

    RandomStream r1(13, 2);
    const auto samples = sample_conormal_flags(cube, k, n_per_face, r1);
    double vec_total = 0.0;
    for (const auto& s : samples) {
        CHECK(s.flag.valid(1e-9));
        CHECK(s.weight > 0.0);
        CHECK(s.face_index >= 0);
        CHECK(s.face_index < 12);
        CHECK(s.flag.U.dim() == 2);
        vec_total += s.weight;
    }

    RandomStream r2(13, 2);
    double stream_total = 0.0;
    long stream_count = 0;
    stream_conormal_flags(cube, k, n_per_face, r2,
                          [&](int, const Eigen::VectorXd&, double w) {
                              stream_total += w;
                              ++stream_count;
                          });
    CHECK(stream_count == static_cast<long>(samples.size()));
    CHECK(stream_total == doctest::Approx(vec_total).epsilon(1e-15));

    RandomStream r3(13, 2);
    const auto wsamples = sample_weighted_flags(cube, k, n_per_face, r3);
    for (const auto& s : wsamples) {
        CHECK(s.flag.valid(1e-9));
        CHECK(s.flag.U.dim() == 2);
        CHECK(s.weight >= 0.0);
    }

    CHECK_THROWS_AS(sample_conormal_flags(cube, 3, 10, r1), IndexOutOfRange);
    CHECK_THROWS_AS(sample_conormal_flags(cube, 1, 0, r1), OutOfRange);
}

TEST_CASE("flag measure masses") {
    // conormal mass: omega_{d-k} V_k;  projection-weighted: same / C(d-1,k).
    const auto cube = make_cube(3);
    const int k = 1;
    const double vk = 3.0;  // V_1 of the unit cube
    const long n_per_face = 20000;

    RandomStream rng(29);
    double tau = 0.0;
    stream_conormal_flags(cube, k, n_per_face, rng,
                          [&](int, const Eigen::VectorXd&, double w) { tau += w; });
    CHECK(std::abs(tau - omega(2) * vk) < 0.5);

    double psi = 0.0;
    stream_weighted_flags(
        cube, k, n_per_face, rng,
        [&](int, const Eigen::VectorXd&, const Subspace&, double w) { psi += w; });
    CHECK(std::abs(psi - omega(2) * vk / 2.0) < 0.5);
}

TEST_CASE("face-sum and conormal estimators share draws and agree per sample") {
    const auto cube = make_cube(3);
    RandomStream rng(37);
    const auto e = sample_general_position_subspace(cube, 1, rng);

    RandomStream pair_rng(37, 4);
    const auto pair = v_k_face_and_conormal(cube, e, 2000, pair_rng);
    CHECK(pair.max_rel_difference <= 1e-10);
    CHECK(pair.face_sum.n == 12 * 2000);
    CHECK(pair.conormal.n == pair.face_sum.n);
    CHECK(std::abs(pair.face_sum.mean - pair.conormal.mean) <=
          1e-10 * std::max(1.0, std::abs(pair.face_sum.mean)));

    RandomStream ra(37, 4), rb(37, 4);
    const auto fs = v_k_face_sum(cube, e, 2000, ra);
    const auto cf = v_k_conormal_flags(cube, e, 2000, rb);
    CHECK(fs.mean == pair.face_sum.mean);
    CHECK(cf.mean == pair.conormal.mean);
}

TEST_CASE("estimators are deterministic given the stream state") {
    const auto cube = make_cube(3);
    RandomStream rng(43);
    const auto e = sample_general_position_subspace(cube, 1, rng);

    RandomStream r1(9, 1), r2(9, 1);
    const auto a = v_k_weighted_flags(cube, e, 1000, r1);
    const auto b = v_k_weighted_flags(cube, e, 1000, r2);
    CHECK(a.mean == b.mean);
    CHECK(a.std_err == b.std_err);
    CHECK(a.n == b.n);
}

TEST_CASE("estimators recover projection contents") {
    const auto cube = make_cube(3);

    SUBCASE("codim 1 without general position") {
        const auto e = Subspace::coordinate(3, {0, 1});
        RandomStream rng(51);
        const auto est = v_k_weighted_flags(cube, e, 20000, rng);
        CHECK(est.z_against(1.0) < 4.0);
    }

    SUBCASE("codim 2 after the hyperplane-section fix") {
        RandomStream rng(53);
        const auto e = sample_general_position_subspace(cube, 1, rng);
        const double exact = project_and_volume(cube, e);
        const auto pair = v_k_face_and_conormal(cube, e, 10000, rng);
        const auto wt = v_k_weighted_flags(cube, e, 10000, rng);
        CHECK(pair.conormal.z_against(exact) < 4.0);
        CHECK(wt.z_against(exact) < 4.0);
        CHECK(z_between(wt, pair.conormal) < 4.0);
    }
}

TEST_CASE("exact codimension 1 projection function") {
    const auto cube = make_cube(3);
    CHECK(v_codim1_exact(cube, unit({0.0, 0.0, 1.0})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v_codim1_exact(cube, unit({1.0, 1.0, 1.0})) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    RandomStream rng(61);
    const auto rand_poly = make_random_polytope(3, rng);
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::VectorXd x = sample_unit_sphere(3, rng);
        const auto shadow = complement(orthonormalize({x}));
        CHECK(v_codim1_exact(cube, x) ==
              doctest::Approx(project_and_volume(cube, shadow)).epsilon(1e-9));
        CHECK(v_codim1_exact(rand_poly, x) ==
              doctest::Approx(project_and_volume(rand_poly, shadow)).epsilon(1e-9));
    }

    CHECK_THROWS_AS(v_codim1_exact(cube, Eigen::VectorXd::Ones(4)), DimMismatch);
}
