#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "fracstrip/domain.hpp"

namespace fs = fracstrip;

TEST_CASE("LipschitzProfile certifies a valid profile and rejects violations") {
    const fs::Box box = fs::interval(-2.0, 2.0);

    SECTION("accepts a sine profile under an honest bound") {
        auto eta = fs::LipschitzProfile::certify(
            [](const fs::Vec& x) { return 1.0 + 0.25 * std::sin(x[0]); }, 1, box, 0.26);
        REQUIRE(eta(fs::vec1(0.0)) == Catch::Approx(1.0));
        REQUIRE(eta.min_certified() > 0.7);
        REQUIRE(eta.max_certified() < 1.3);
        REQUIRE(eta.lip_bound() == Catch::Approx(0.26));
    }

    SECTION("rejects when the claimed Lipschitz bound is too small") {
        REQUIRE_THROWS_AS(
            fs::LipschitzProfile::certify(
                [](const fs::Vec& x) { return 1.0 + 0.25 * std::sin(4.0 * x[0]); }, 1, box, 0.3),
            std::domain_error);
    }

    SECTION("rejects non-positive profiles when positivity is required") {
        REQUIRE_THROWS_AS(
            fs::LipschitzProfile::certify([](const fs::Vec& x) { return x[0]; }, 1, box, 1.1),
            std::domain_error);
    }

    SECTION("allows sign changes when positivity is waived") {
        auto f = fs::LipschitzProfile::certify([](const fs::Vec& x) { return x[0]; }, 1, box, 1.1,
                                               /*require_positive=*/false);
        REQUIRE(f(fs::vec1(-1.0)) == Catch::Approx(-1.0));
    }

    SECTION("constant profile") {
        auto c = fs::LipschitzProfile::constant(0.75);
        REQUIRE(c(fs::vec1(123.0)) == Catch::Approx(0.75));
        REQUIRE(c.lip_bound() == 0.0);
        REQUIRE_THROWS_AS(fs::LipschitzProfile::constant(0.0), std::domain_error);
    }
}

TEST_CASE("StripDomain dimensions, containment, and guards") {
    const fs::StripDomain flat = fs::StripDomain::flat(2, fs::interval(-4.0, 4.0), 1.5);
    REQUIRE(flat.boundary_dim() == 1);
    REQUIRE(flat.max_height() == Catch::Approx(1.5));
    REQUIRE(flat.top(fs::vec1(2.0)) == Catch::Approx(1.5));
    REQUIRE(flat.contains(fs::vec2(0.0, 0.7)));
    REQUIRE_FALSE(flat.contains(fs::vec2(0.0, 1.6)));
    REQUIRE_FALSE(flat.contains(fs::vec2(5.0, 0.5)));
    REQUIRE_FALSE(flat.contains(fs::vec2(0.0, -0.1)));

    auto eta = fs::LipschitzProfile::certify(
        [](const fs::Vec& x) { return 1.0 + 0.25 * std::sin(x[0]); }, 1, fs::interval(-4.0, 4.0),
        0.26);
    const fs::StripDomain graph = fs::StripDomain::graph(2, fs::interval(-4.0, 4.0), eta);
    REQUIRE(graph.top(fs::vec1(0.0)) == Catch::Approx(1.0));
    REQUIRE(graph.contains(fs::vec2(0.0, 0.99)));
    REQUIRE_FALSE(graph.contains(fs::vec2(0.0, 1.01)));

    REQUIRE_THROWS_AS(fs::StripDomain::flat(2, fs::interval(-1.0, 1.0), -1.0), std::domain_error);
    REQUIRE_THROWS_AS(fs::StripDomain::graph(3, fs::Box{2, fs::vec2(-1, -1), fs::vec2(1, 1)}, eta),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(fs::StripDomain::flat(4, fs::interval(-1.0, 1.0), 1.0),
                      std::invalid_argument);
}

TEST_CASE("GridFunction sampling, interpolation, and CSV round-trip") {
    auto f = [](const fs::Vec& x) { return 2.0 * x[0] + 3.0 * x[1] + 0.5; };
    const auto g = fs::GridFunction::sample(2, {5, 4, 1}, fs::vec2(-1.0, 0.0),
                                            fs::vec2(0.5, 0.25), f);

    SECTION("multilinear interpolation is exact for affine data") {
        REQUIRE(g.interpolate(fs::vec2(-0.3, 0.4)) == Catch::Approx(f(fs::vec2(-0.3, 0.4))));
        REQUIRE(g.interpolate(fs::vec2(0.9, 0.7)) == Catch::Approx(f(fs::vec2(0.9, 0.7))));
    }

    SECTION("interpolation clamps at the grid box") {
        REQUIRE(g.interpolate(fs::vec2(-9.0, -9.0)) == Catch::Approx(f(fs::vec2(-1.0, 0.0))));
        REQUIRE(g.interpolate(fs::vec2(9.0, 9.0)) == Catch::Approx(f(fs::vec2(1.0, 0.75))));
    }

    SECTION("CSV round-trip preserves shape and values") {
        std::ostringstream os;
        g.write_csv(os);
        std::istringstream is(os.str());
        const auto h = fs::GridFunction::read_csv(is);
        REQUIRE(h.dim == g.dim);
        REQUIRE(h.dims == g.dims);
        REQUIRE(h.values.size() == g.values.size());
        for (std::size_t k = 0; k < g.values.size(); ++k)
            REQUIRE(h.values[k] == g.values[k]);
        REQUIRE(h.interpolate(fs::vec2(0.1, 0.3)) == Catch::Approx(f(fs::vec2(0.1, 0.3))));
    }

    SECTION("masked nodes round-trip as nan and poison interpolation") {
        auto inside = [](const fs::Vec& x) { return x[0] < 0.9; };
        const auto m = fs::GridFunction::sample(2, {5, 4, 1}, fs::vec2(-1.0, 0.0),
                                                fs::vec2(0.5, 0.25), f, inside);
        REQUIRE(std::isnan(m.interpolate(fs::vec2(1.0, 0.5))));
        REQUIRE(m.interpolate(fs::vec2(-0.8, 0.5)) == Catch::Approx(f(fs::vec2(-0.8, 0.5))));
        std::ostringstream os;
        m.write_csv(os);
        REQUIRE(os.str().find("nan") != std::string::npos);
        std::istringstream is(os.str());
        const auto r = fs::GridFunction::read_csv(is);
        REQUIRE(r.mask == m.mask);
        REQUIRE(std::isnan(r.interpolate(fs::vec2(1.0, 0.5))));
    }

    SECTION("malformed CSV is rejected") {
        std::istringstream bad("not,a,header\n");
        REQUIRE_THROWS_AS(fs::GridFunction::read_csv(bad), std::runtime_error);
    }
}

TEST_CASE("BoundaryFunction and BulkFunction call sugar") {
    fs::BoundaryFunction g{"line", 1, [](const fs::Vec& x) { return 2.0 * x[0]; }, {}};
    REQUIRE(g(1.5) == Catch::Approx(3.0));
    REQUIRE(g(fs::vec1(-2.0)) == Catch::Approx(-4.0));

    const fs::StripDomain dom = fs::StripDomain::flat(2, fs::interval(-1.0, 1.0), 1.0);
    fs::BulkFunction u{"plane", dom, [](const fs::Vec& x) { return x[0] + 10.0 * x[1]; }};
    REQUIRE(u(0.5, 0.25) == Catch::Approx(3.0));
}
