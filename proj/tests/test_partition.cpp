#include <doctest.h>

#include <cmath>
#include <random>

#include "fractalhisto/errors.hpp"
#include "fractalhisto/partition.hpp"

using namespace fractalhisto;

TEST_CASE("build_partition validates ordering and arity") {
    const Partition p = build_partition({0.0, 0.5, 1.0});
    CHECK(p.size() == 2);
    CHECK(p.lo() == 0.0);
    CHECK(p.hi() == 1.0);

    const Partition q = build_partition({0.0, 1.0, 2.0});
    CHECK(q.size() == 2);
    CHECK(q.hi() == 2.0);

    CHECK_THROWS_WITH_AS(build_partition({0.0, 0.5, 0.5, 1.0}),
                         doctest::Contains("index 2"), ValidationError);
    CHECK_THROWS_AS(build_partition({0.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(build_partition({1.0, 0.0, 2.0}), ValidationError);
}

TEST_CASE("locate uses the left-closed convention with a closed last interval") {
    const Partition p = build_partition({0.0, 0.5, 1.0});
    CHECK(p.locate(0.0) == 0);
    CHECK(p.locate(0.25) == 0);
    CHECK(p.locate(0.5) == 1);  // knot belongs to the right interval
    CHECK(p.locate(0.75) == 1);
    CHECK(p.locate(1.0) == 1);  // t_N stays in the last interval
}

TEST_CASE("derive_affine_maps reproduces the endpoint conditions") {
    SUBCASE("dyadic unit interval") {
        const auto maps = derive_affine_maps(build_partition({0.0, 0.5, 1.0}));
        CHECK(maps[0].a == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(maps[0].b == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(maps[1].a == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(maps[1].b == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("symmetric on [0, 2]") {
        const auto maps = derive_affine_maps(build_partition({0.0, 1.0, 2.0}));
        CHECK(maps[0].a == 0.5);
        CHECK(maps[0].b == 0.0);
        CHECK(maps[1].a == 0.5);
        CHECK(maps[1].b == 1.0);
    }
    SUBCASE("uneven bins force the slopes") {
        const auto maps = derive_affine_maps(build_partition({0.0, 1.0, 4.0}));
        CHECK(maps[0].a == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(maps[0].b == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(maps[1].a == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(maps[1].b == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("map round trip and endpoint identities") {
    const AffineMap l1{0.5, 0.0};
    const AffineMap l2{0.5, 0.5};
    CHECK(l1(1.0) == 0.5);
    CHECK(l2.inverse(0.5) == 0.0);
    const AffineMap quarter{0.25, 0.0};
    CHECK(quarter.inverse(quarter(0.3)) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("derived maps hit the knots and tile the interval") {
    std::mt19937_64 rng(2024);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> knots;
        double t = -5.0 + 10.0 * u01();
        const int n = 2 + static_cast<int>(rng() % 6);
        knots.push_back(t);
        for (int i = 0; i < n; ++i) {
            t += 0.05 + 3.0 * u01();
            knots.push_back(t);
        }
        const Partition p = build_partition(knots);
        const auto maps = derive_affine_maps(p);
        for (std::size_t j = 0; j < p.size(); ++j) {
            CHECK(maps[j].a > 0.0);
            CHECK(maps[j].a < 1.0);
            const double left = maps[j](p.lo());
            const double right = maps[j](p.hi());
            CHECK(std::fabs(left - p.knot(j)) <= 1e-12 * (1.0 + std::fabs(p.knot(j))));
            CHECK(std::fabs(right - p.knot(j + 1)) <= 1e-12 * (1.0 + std::fabs(p.knot(j + 1))));
            if (j + 1 < p.size()) {
                // image j's right endpoint and image j+1's left endpoint meet
                // at the shared knot
                const double next_left = maps[j + 1](p.lo());
                CHECK(std::fabs(right - next_left) <= 1e-12 * (1.0 + std::fabs(next_left)));
            }
        }
    }
}
