#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "fractalhisto/attractor.hpp"
#include "fractalhisto/errors.hpp"
#include "fractalhisto/rb_operator.hpp"

using namespace fractalhisto;

TEST_CASE("product_map matches the branch construction") {
    const FractalSystem sine = fixtures::sine_system();
    const Point a = product_map(sine, 0, {0.0, 0.0});
    CHECK(a.t == 0.0);
    CHECK(a.x == 1.0 / 3.0);  // scaling vanishes at t = 0
    const Point b = product_map(sine, 1, {0.0, 0.0});
    CHECK(b.t == 0.5);
    CHECK(b.x == 1.0 / 6.0);

    const FractalSystem ctrl = fixtures::affine_control();
    const Point c = product_map(ctrl, 0, {0.25, 123.0});
    CHECK(c.x == 0.5 * 0.25 + 5.0);  // affine in t only
    CHECK_THROWS_AS(product_map(ctrl, 5, {0.0, 0.0}), ArgumentError);
}

TEST_CASE("eta from the aggregates") {
    CHECK(eta(fixtures::sine_system()) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(eta(fixtures::reciprocal_system({4.75, 5.875})) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    // alpha = 1/2, C = 0 gives 1/4
    Partition part = build_partition({0.0, 0.5, 1.0});
    ModulusSpec psi = ModulusSpec::linear(0.5);
    std::vector<ContractionSpec> s{{ContractionKind::linear, 0.5, psi},
                                   {ContractionKind::linear, 0.5, psi}};
    const FractalSystem flat = assemble_system(
        part, {0.0, 0.0}, {1.0, 2.0},
        {ScalingSpec::constant(0.5), ScalingSpec::constant(0.5)}, s, SystemMode::construction);
    CHECK(eta(flat) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("d_eta is the weighted taxicab metric") {
    CHECK(d_eta({0.0, 0.0}, {1.0, 1.0}, 1.0 / 6.0) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
    CHECK(d_eta({0.3, -2.0}, {0.3, -2.0}, 0.25) == 0.0);
    CHECK(d_eta({0.0, 3.0}, {0.0, 0.0}, 1.0 / 6.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("chaos game is deterministic per seed") {
    const FractalSystem sine = fixtures::sine_system();
    const PointCloud a = chaos_game(sine, 2000, 100, 7);
    const PointCloud b = chaos_game(sine, 2000, 100, 7);
    const PointCloud c = chaos_game(sine, 2000, 100, 8);
    REQUIRE(a.points.size() == 2000);
    bool identical = true;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        identical = identical && a.points[i].t == b.points[i].t && a.points[i].x == b.points[i].x;
    }
    CHECK(identical);
    bool differs = false;
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        differs = differs || a.points[i].t != c.points[i].t;
    }
    CHECK(differs);
}

TEST_CASE("chaos game clouds stay inside the strip") {
    const FractalSystem sine = fixtures::sine_system();
    const PointCloud cloud = chaos_game(sine, 5000, 100, 3);
    for (const Point& p : cloud.points) {
        CHECK(p.t >= -1e-9);
        CHECK(p.t <= 1.0 + 1e-9);
    }
}

TEST_CASE("a zero-scaling cloud lies on the affine graph") {
    const FractalSystem ctrl = fixtures::affine_control();
    const PointCloud cloud = chaos_game(ctrl, 20000, 100, 11);
    double worst = 0.0;
    for (const Point& p : cloud.points) {
        worst = std::max(worst, std::fabs(p.x - fixtures::affine_control_value(p.t)));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("chaos game t-values fill the interval") {
    const FractalSystem sine = fixtures::sine_system();
    const PointCloud cloud = chaos_game(sine, 100000, 100, 5);
    std::vector<bool> hit(100, false);
    for (const Point& p : cloud.points) {
        const int bin = std::min(99, std::max(0, static_cast<int>(p.t * 100.0)));
        hit[bin] = true;
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
}

TEST_CASE("deterministic_attractor counts and converges") {
    const FractalSystem ctrl = fixtures::affine_control();
    SUBCASE("one seed point grows N^depth images") {
        PointCloud init;
        init.points.push_back({0.0, 0.0});
        const PointCloud out = deterministic_attractor(ctrl, init, 3);
        CHECK(out.points.size() == 8);
    }
    SUBCASE("images approach the affine graph") {
        PointCloud init;
        init.points.push_back({0.3, 40.0});
        const PointCloud out = deterministic_attractor(ctrl, init, 24);
        double worst = 0.0;
        for (const Point& p : out.points) {
            worst = std::max(worst, std::fabs(p.x - fixtures::affine_control_value(p.t)));
        }
        CHECK(worst <= 1e-6);
    }
    SUBCASE("cap without decimation is an error") {
        PointCloud init;
        init.points.push_back({0.0, 0.0});
        AttractorOptions opts;
        opts.max_points = 16;
        opts.decimate = false;
        CHECK_THROWS_AS(deterministic_attractor(ctrl, init, 10, opts), ValidationError);
        opts.decimate = true;
        const PointCloud out = deterministic_attractor(ctrl, init, 10, opts);
        CHECK(out.points.size() <= 16);
    }
    SUBCASE("a cap below the branch count still keeps one point per level") {
        PointCloud init;
        init.points.push_back({0.0, 0.0});
        AttractorOptions opts;
        opts.max_points = 1;
        const PointCloud out = deterministic_attractor(ctrl, init, 6, opts);
        CHECK(out.points.size() >= 1);
        CHECK(out.points.size() <= 2);  // one survivor times N images
    }
    CHECK_THROWS_AS(deterministic_attractor(ctrl, PointCloud{}, 2), ArgumentError);
}

TEST_CASE("hausdorff_one_sided basics and oracle comparison") {
    const double w = 1.0 / 6.0;
    PointCloud a;
    a.points = {{0.0, 0.0}};
    PointCloud b;
    b.points = {{1.0, 0.0}};
    CHECK(hausdorff_one_sided(a, a, w) == 0.0);
    CHECK(hausdorff_one_sided(a, b, w) == 1.0);
    CHECK_THROWS_AS(hausdorff_one_sided(a, PointCloud{}, w), ArgumentError);

    // random clouds against the brute-force double loop
    std::mt19937_64 rng(17);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 5; ++trial) {
        PointCloud p, q;
        for (int i = 0; i < 100; ++i) {
            p.points.push_back({u01(), 4.0 * u01() - 2.0});
            q.points.push_back({u01(), 4.0 * u01() - 2.0});
        }
        double brute = 0.0;
        for (const Point& x : p.points) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& y : q.points) best = std::min(best, d_eta(x, y, w));
            brute = std::max(brute, best);
        }
        CHECK(hausdorff_one_sided(p, q, w) == brute);
    }
}

TEST_CASE("self-covering: images of a converged cloud stay near the cloud") {
    const FractalSystem sine = fixtures::sine_system();
    const double w = eta(sine);
    auto eps_for = [&](long n) {
        const PointCloud cloud = chaos_game(sine, n, 100, 23);
        PointCloud images;
        images.points.reserve(cloud.points.size() * 2);
        for (std::size_t j = 0; j < sine.branches(); ++j) {
            for (const Point& p : cloud.points) images.points.push_back(product_map(sine, j, p));
        }
        return hausdorff_one_sided(images, cloud, w);
    };
    const double coarse = eps_for(2000);
    const double fine = eps_for(50000);
    CHECK(fine <= coarse);
    CHECK(fine <= 0.1);
}

TEST_CASE("every product map is a Rakotch contraction in d_eta") {
    std::mt19937_64 rng(29);
    auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto check_system = [&](const FractalSystem& sys, double xlo, double xhi) {
        const double w = eta(sys);
        const ModulusSpec& psi = sys.modulus();
        const double affine_rate = sys.alpha() + w * sys.c_max() + w;
        for (int i = 0; i < 500; ++i) {
            const Point p{u01(), xlo + (xhi - xlo) * u01()};
            const Point q{u01(), xlo + (xhi - xlo) * u01()};
            const double dist = d_eta(p, q, w);
            if (dist == 0.0) continue;
            const double zeta_rate = sys.delta_max() * psi(dist) / dist;
            const double gamma = std::max(affine_rate, zeta_rate);
            CHECK(gamma < 1.0);
            for (std::size_t j = 0; j < sys.branches(); ++j) {
                const double mapped = d_eta(product_map(sys, j, p), product_map(sys, j, q), w);
                CHECK(mapped <= gamma * dist + 1e-12);
            }
        }
    };
    check_system(fixtures::sine_system(), -4.0, 4.0);
    check_system(fixtures::reciprocal_system({4.75, 5.875}), 0.0, 10.0);
    check_system(fixtures::affine_control(), -4.0, 4.0);
}

TEST_CASE("deep decimated iteration lands on the solved graph") {
    const FractalSystem sys = fixtures::reciprocal_system({4.672593550744938, 5.836296775372469});
    PointCloud init;
    init.points.push_back({0.0, 5.0});
    AttractorOptions opts;
    opts.max_points = 1 << 17;
    const PointCloud cloud = deterministic_attractor(sys, init, 16, opts);
    const auto [f, tr] = fixed_point(sys, make_sampled(sys.interval(), 1 << 12, 0.0), 1e-10, 500);
    const double gap = hausdorff_one_sided(cloud, graph_samples(f), eta(sys));
    CHECK(gap <= 0.02);
}

TEST_CASE("thread cap changes nothing observable") {
    const FractalSystem sys = fixtures::sine_system();
    const PointCloud cloud = chaos_game(sys, 30000, 100, 55);
    const auto [f, tr] = fixed_point(sys, make_sampled(sys.interval(), 1 << 10, 0.0), 1e-10, 500);
    const PointCloud graph = graph_samples(f);

    setenv("FRACTALHISTO_THREADS", "1", 1);
    const double serial = hausdorff_one_sided(cloud, graph, eta(sys));
    setenv("FRACTALHISTO_THREADS", "4", 1);
    const double threaded = hausdorff_one_sided(cloud, graph, eta(sys));
    unsetenv("FRACTALHISTO_THREADS");
    CHECK(serial == threaded);
}

TEST_CASE("graph_samples mirrors the grid") {
    const SampledFunction h = make_sampled({0.0, 1.0}, 16, [](double t) { return 2.0 * t; });
    const PointCloud cloud = graph_samples(h);
    REQUIRE(cloud.points.size() == 17);
    CHECK(cloud.points[8].t == 0.5);
    CHECK(cloud.points[8].x == 1.0);
}
