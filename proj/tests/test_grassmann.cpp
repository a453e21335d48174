#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "flagproj/errors.hpp"
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

Eigen::VectorXd vec(std::initializer_list<double> xs) {
    Eigen::VectorXd v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("subspace factories and basic queries") {
    const auto e12 = Subspace::coordinate(4, {0, 1});
    CHECK(e12.ambient_dim() == 4);
    CHECK(e12.dim() == 2);
    CHECK(e12.orthonormality_defect() == 0.0);

    CHECK(Subspace::zero(3).dim() == 0);
    CHECK(Subspace::full(3).dim() == 3);

    const Eigen::VectorXd v = vec({1.0, 2.0, 3.0, 4.0});
    CHECK((e12.project(v) - vec({1.0, 2.0, 0.0, 0.0})).norm() == doctest::Approx(0.0));
    CHECK(e12.coords(v).size() == 2);
    CHECK(e12.projection_norm(v) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(e12.contains(vec({1.0, -2.0, 0.0, 0.0}), 1e-12));
    CHECK(!e12.contains(v, 1e-12));

    CHECK_THROWS_AS(Subspace::coordinate(3, {3}), IndexOutOfRange);
    Eigen::MatrixXd bad(2, 3);
    CHECK_THROWS_AS(Subspace::from_orthonormal(bad), DimMismatch);
    Eigen::MatrixXd skew(3, 2);
    skew << 1, 1, 0, 1, 0, 0;
    CHECK_THROWS_AS(Subspace::from_orthonormal(skew), RankDeficient);
}

TEST_CASE("flag element validity") {
    const auto plane = Subspace::coordinate(3, {0, 1});
    CHECK(FlagElement{vec({1.0, 0.0, 0.0}), plane}.valid(1e-9));
    CHECK(!FlagElement{vec({0.0, 0.0, 1.0}), plane}.valid(1e-9));
    CHECK(!FlagElement{vec({2.0, 0.0, 0.0}), plane}.valid(1e-9));
}

TEST_CASE("orthonormalize") {
    const auto s = orthonormalize({vec({1.0, 0.0, 0.0}), vec({1.0, 1.0, 0.0})});
    CHECK(s.dim() == 2);
    CHECK(s.orthonormality_defect() < 1e-12);
    CHECK(s.contains(vec({0.0, 1.0, 0.0}), 1e-12));

    CHECK_THROWS_AS(orthonormalize({}), RankDeficient);
    CHECK_THROWS_AS(orthonormalize({vec({1.0, 0.0}), vec({1.0, 1e-13})}), RankDeficient);
    CHECK_THROWS_AS(
        orthonormalize({vec({1.0, 0.0}), vec({0.0, 1.0}), vec({1.0, 1.0})}),
        RankDeficient);
}

TEST_CASE("complement") {
    RandomStream rng(11);
    const auto a = sample_grassmannian(5, 2, rng);
    const auto c = complement(a);
    CHECK(c.dim() == 3);
    CHECK(c.orthonormality_defect() < 1e-12);
    CHECK((a.basis().transpose() * c.basis()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(det_projection(complement(c), a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(complement(Subspace::full(3)).dim() == 0);
    CHECK(complement(Subspace::zero(3)).dim() == 3);
}

TEST_CASE("projection determinants: hand values and symmetry") {
    const auto line = Subspace::coordinate(3, {0});
    const double theta = 0.3;
    const auto tilted = orthonormalize({vec({std::cos(theta), std::sin(theta), 0.0})});
    CHECK(det_projection(line, tilted) == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(det_projection(line, Subspace::coordinate(3, {1})) == doctest::Approx(0.0));

    // Plane pair rotated by independent angles in disjoint coordinate planes.
    const double phi = 0.7;
    const auto a = Subspace::coordinate(4, {0, 1});
    const auto b = orthonormalize({vec({std::cos(theta), 0.0, std::sin(theta), 0.0}),
                                   vec({0.0, std::cos(phi), 0.0, std::sin(phi)})});
    CHECK(det_projection(a, b) ==
          doctest::Approx(std::cos(theta) * std::cos(phi)).epsilon(1e-14));
    CHECK(det_projection(a, b) == doctest::Approx(det_projection(b, a)).epsilon(1e-14));

    RandomStream rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        auto u = sample_grassmannian(5, 2, rng);
        auto v = sample_grassmannian(5, 2, rng);
        const double duv = det_projection(u, v);
        CHECK(duv >= 0.0);
        CHECK(duv <= 1.0 + 1e-12);
        CHECK(duv == doctest::Approx(det_projection(v, u)).epsilon(1e-12));
        CHECK(det_projection(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("graded products: hand values, Parseval, consistency") {
    const double theta = 0.4;
    const auto line = Subspace::coordinate(3, {0});
    const auto tilted = orthonormalize({vec({std::cos(theta), 0.0, std::sin(theta)})});
    const auto p = products_all(line, tilted);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(std::cos(theta)).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(std::sin(theta)).epsilon(1e-14));

    CHECK(products_all(Subspace::zero(3), Subspace::zero(3)) == std::vector<double>{1.0});

    RandomStream rng(23);
    for (int rep = 0; rep < 10; ++rep) {
        const int d = 3 + rep % 3;
        const int k = 1 + rep % d;
        if (k >= d) continue;
        auto a = sample_grassmannian(d, k, rng);
        auto b = sample_grassmannian(d, k, rng);
        const auto prods = products_all(a, b);
        REQUIRE(static_cast<int>(prods.size()) == std::min(k, d - k) + 1);
        double total = 0.0;
        for (size_t i = 0; i < prods.size(); ++i) {
            CHECK(prods[i] >= 0.0);
            CHECK(product_i(a, b, static_cast<int>(i)) ==
                  doctest::Approx(prods[i]).epsilon(1e-12));
            total += prods[i] * prods[i];
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(prods[0] == doctest::Approx(det_projection(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("haar samplers: structure and determinism") {
    RandomStream rng(5);
    const auto g = sample_grassmannian(4, 2, rng);
    CHECK(g.ambient_dim() == 4);
    CHECK(g.dim() == 2);
    CHECK(g.orthonormality_defect() < 1e-12);

    RandomStream r1(42, 3), r2(42, 3);
    const auto s1 = sample_grassmannian(5, 3, r1);
    const auto s2 = sample_grassmannian(5, 3, r2);
    CHECK((s1.basis() - s2.basis()).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::VectorXd u = unit({1.0, -2.0, 0.5, 3.0});
    const auto thru = sample_grassmannian_containing_line(u, 3, rng);
    CHECK(thru.dim() == 3);
    CHECK(thru.contains(u, 1e-10));
    CHECK(thru.orthonormality_defect() < 1e-12);

    const auto sphere_pt = sample_sphere_in_subspace(g, rng);
    CHECK(sphere_pt.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.contains(sphere_pt, 1e-10));
    CHECK(sample_unit_sphere(6, rng).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("haar lines: second moment of the projection onto a fixed line") {
    // E[<E,V>^2] = 1/d for Haar lines V against any fixed line E.
    const int d = 4;
    const auto e = Subspace::coordinate(d, {0});
    RandomStream rng(31);
    double sum = 0.0, sum_sq = 0.0;
    const long n = 20000;
    for (long i = 0; i < n; ++i) {
        const double x = det_projection(e, sample_grassmannian(d, 1, rng));
        sum += x * x;
        sum_sq += x * x * x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq - n * mean * mean) / (n - 1.0) / n);
    CHECK(std::abs(mean - 1.0 / d) < 4.0 * se);
}

TEST_CASE("hyperplane sections") {
    const auto a = Subspace::coordinate(4, {0, 1, 2});

    SUBCASE("direction orthogonal to the subspace leaves it unchanged") {
        const auto s = intersect_with_hyperplane(a, vec({0.0, 0.0, 0.0, 1.0}));
        CHECK(s.dim() == 3);
        CHECK((s.basis() - a.basis()).cwiseAbs().maxCoeff() == 0.0);
    }

    SUBCASE("generic direction drops one dimension") {
        const Eigen::VectorXd u = unit({1.0, 2.0, -1.0, 0.5});
        const auto s = intersect_with_hyperplane(a, u);
        CHECK(s.dim() == 2);
        CHECK(s.orthonormality_defect() < 1e-12);
        for (int c = 0; c < s.dim(); ++c) {
            CHECK(a.contains(s.basis().col(c), 1e-10));
            CHECK(std::abs(u.dot(s.basis().col(c))) < 1e-10);
        }
    }

    SUBCASE("line sections collapse to the zero subspace") {
        const auto line = Subspace::coordinate(3, {2});
        CHECK(intersect_with_hyperplane(line, vec({0.0, 0.0, 1.0})).dim() == 0);
    }

    SUBCASE("projection norms inside the ambiguity band throw") {
        const auto plane = Subspace::coordinate(3, {0, 1});
        Eigen::VectorXd u = vec({5e-9, 0.0, 1.0});
        u.normalize();
        CHECK_THROWS_AS(intersect_with_hyperplane(plane, u), DegenerateConfiguration);
    }

    SUBCASE("direction equal to a basis column") {
        // The annihilated column must be filtered, not orthonormalized into a
        // rounding-noise direction. Regression for the weighted-flag sampler,
        // which always feeds subspaces whose first basis column is u itself.
        const auto big_u = Subspace::coordinate(4, {0, 2, 3});
        const auto s = intersect_with_hyperplane(big_u, vec({1.0, 0.0, 0.0, 0.0}));
        CHECK(s.dim() == 2);
        CHECK(det_projection(s, Subspace::coordinate(4, {2, 3})) ==
              doctest::Approx(1.0).epsilon(1e-12));

        RandomStream rng(77);
        for (int rep = 0; rep < 20; ++rep) {
            const Eigen::VectorXd u = sample_unit_sphere(5, rng);
            const auto thru = sample_grassmannian_containing_line(u, 3, rng);
            const auto w = intersect_with_hyperplane(thru, u);
            CHECK(w.dim() == 2);
            CHECK(w.orthonormality_defect() < 1e-10);
            for (int c = 0; c < w.dim(); ++c) {
                CHECK(thru.contains(w.basis().col(c), 1e-9));
                CHECK(std::abs(u.dot(w.basis().col(c))) < 1e-9);
            }
        }
    }
}
