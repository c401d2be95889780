#include <doctest.h>

#include <cmath>
#include <map>

#include "hyplane/error.hpp"
#include "hyplane/repr.hpp"
#include "hyplane/synth.hpp"
#include "test_support.hpp"

using namespace hyplane;

namespace
{
std::map<std::string, FeatureGrid> grids_for(const VariantSpec& spec, int side, int channels, std::uint64_t seed)
{
    std::map<std::string, FeatureGrid> out;
    for (const auto& name : plane_names(spec))
        out.emplace(name, noise_grid(side, side, channels, seed++));
    return out;
}

std::map<std::string, FeatureGrid> constant_grids(const VariantSpec& spec, float c)
{
    std::map<std::string, FeatureGrid> out;
    for (const auto& name : plane_names(spec))
        out.emplace(name, constant_grid(4, 4, 3, c));
    return out;
}

const Feature& component_named(const QueryBreakdown& b, const std::string& name)
{
    for (const auto& nf : b.planes)
        if (nf.name == name)
            return nf.feature;
    throw Error("no component " + name);
}

double max_abs_diff(const Feature& a, const Feature& b)
{
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Vec3 nonzero_point(SplitMix64& rng)
{
    for (;;)
    {
        Vec3 p = test::random_in_cube(rng);
        if (norm(p) > 1e-3)
            return p;
    }
}

const Variant kAll[] = {Variant::TriPlane, Variant::TriGrid, Variant::SphericalTriPlane,
                        Variant::DualSphericalTriPlane, Variant::HyPlane31, Variant::HyPlane22};
}  // namespace

TEST_CASE("variant names round trip")
{
    for (Variant v : kAll)
        CHECK(variant_from_string(to_string(v)) == v);
    CHECK(to_string(Variant::HyPlane31) == "hy-plane-3+1");
    CHECK_THROWS_AS(variant_from_string("quad-plane"), Error);
}

TEST_CASE("constant grids aggregate to the constant")
{
    SplitMix64 rng(1);
    for (Variant v : kAll)
    {
        VariantSpec spec{v};
        Representation rep = assemble(spec, constant_grids(spec, 0.625f));
        CHECK(variant_of(rep) == v);
        for (int i = 0; i < 200; ++i)
            for (double x : query(rep, nonzero_point(rng)))
                REQUIRE(x == doctest::Approx(0.625).epsilon(1e-12));
    }
}

TEST_CASE("tri-plane mirror identities")
{
    VariantSpec spec{Variant::TriPlane};
    Representation rep = assemble(spec, grids_for(spec, 16, 4, 10));
    SplitMix64 rng(2);
    for (int i = 0; i < 1000; ++i)
    {
        Vec3 p = test::random_in_cube(rng);
        MirrorPair m = mirror_pair_features(rep, p);
        CHECK(m.mirrored.z == -p.z);
        REQUIRE(component_named(m.at_point, "planar_xy") == component_named(m.at_mirrored, "planar_xy"));
        auto b = query_breakdown(rep, {p.x, -p.y, p.z});
        REQUIRE(component_named(m.at_point, "planar_xz") == component_named(b, "planar_xz"));
        auto c = query_breakdown(rep, {-p.x, p.y, p.z});
        REQUIRE(component_named(m.at_point, "planar_yz") == component_named(c, "planar_yz"));
    }
}

TEST_CASE("hy-plane 3+1 breaks the mirror entanglement")
{
    VariantSpec spec{Variant::HyPlane31};
    Representation rep = assemble(spec, grids_for(spec, 16, 4, 20));
    SplitMix64 rng(3);
    int differ = 0;
    for (int i = 0; i < 1000; ++i)
    {
        MirrorPair m = mirror_pair_features(rep, nonzero_point(rng));
        if (m.at_point.aggregate != m.at_mirrored.aggregate)
            ++differ;
    }
    CHECK(differ >= 990);
}

TEST_CASE("spherical tri-plane under mirroring")
{
    VariantSpec spec{Variant::SphericalTriPlane};
    Representation rep = assemble(spec, grids_for(spec, 16, 4, 30));
    SplitMix64 rng(4);
    int sphere_differs = 0, r_phi_differs = 0;
    for (int i = 0; i < 1000; ++i)
    {
        MirrorPair m = mirror_pair_features(rep, nonzero_point(rng));
        sphere_differs += component_named(m.at_point, "sphere") != component_named(m.at_mirrored, "sphere");
        r_phi_differs += component_named(m.at_point, "r_phi") != component_named(m.at_mirrored, "r_phi");
        // colatitude from +y is blind to z -> -z
        REQUIRE(component_named(m.at_point, "r_theta") == component_named(m.at_mirrored, "r_theta"));
    }
    CHECK(sphere_differs >= 990);
    CHECK(r_phi_differs >= 990);
}

TEST_CASE("dual-sphere blend fixtures")
{
    Feature fa{1.0, -2.0}, fb{3.0, 5.0};
    CHECK(blend_dual_sphere(fa, fb, 0.0, 2.0) == fa);

    const double eq = std::sqrt(2.0);
    Feature mid = blend_dual_sphere(fa, fb, eq, eq);
    CHECK(mid[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(mid[1] == doctest::Approx(1.5).epsilon(1e-15));

    // theta_a = pi/3, theta_b = 2pi/3
    Feature f = blend_dual_sphere(fa, fb, 1.0, std::sqrt(3.0));
    for (int k = 0; k < 2; ++k)
        CHECK(std::abs(f[k] - (fa[k] + 0.07180 * fb[k]) / 1.07180) < 1e-4);

    CHECK(blend_weight(2.0) == 0.0);
    CHECK(blend_weight(0.5) == 2.25);
    CHECK(blend_weight(1.5, 1.0) == 0.0);
    CHECK_THROWS_AS(blend_dual_sphere(fa, fb, 2.0, 2.0), Error);
    CHECK_THROWS_AS(blend_dual_sphere(fa, fb, 2.5, 0.0), Error);
    CHECK_THROWS_AS(blend_dual_sphere(fa, Feature{1.0}, 0.0, 1.0), Error);
}

TEST_CASE("blend weights stay positive for antipodal frames")
{
    SphereFrame a = frames::hyplane22_sphere_a(), b = frames::hyplane22_sphere_b();
    SplitMix64 rng(5);
    double least = 1e9;
    for (int i = 0; i < 100000; ++i)
    {
        Vec3 d = test::random_unit(rng);
        double ra = laea_forward(cartesian_to_dir(d, a)).radius;
        double rb = laea_forward(cartesian_to_dir(d, b)).radius;
        least = std::min(least, blend_weight(ra) + blend_weight(rb));
    }
    const double floor = 2 * std::pow(2 - std::sqrt(2.0), 2);
    CHECK(least >= floor - 1e-9);
    CHECK(least < floor + 1e-2);
}

TEST_CASE("tri-grid with one layer reduces to tri-plane")
{
    VariantSpec tp{Variant::TriPlane};
    auto grids = grids_for(tp, 16, 5, 40);
    Representation tri = assemble(tp, grids);

    VariantSpec tg{Variant::TriGrid, WarpKind::LaeaElliptical, 1};
    std::map<std::string, FeatureGrid> layered;
    for (const char* axis : {"xy", "xz", "yz"})
        layered.emplace(std::string("grid_") + axis + "_0", grids.at(std::string("planar_") + axis));
    Representation grid = assemble(tg, layered);

    SplitMix64 rng(6);
    double worst = 0;
    for (int i = 0; i < 10000; ++i)
    {
        Vec3 p = test::random_in_cube(rng);
        worst = std::max(worst, max_abs_diff(query(tri, p), query(grid, p)));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("tri-grid interpolates along depth")
{
    VariantSpec spec{Variant::TriGrid, WarpKind::LaeaElliptical, 3};
    auto grids = grids_for(spec, 8, 2, 50);
    Representation rep = assemble(spec, grids);
    // at z = 0 the xy stack returns the middle layer exactly
    auto b = query_breakdown(rep, {0.1, 0.2, 0.0});
    Feature expect = sample_bilinear(grids.at("grid_xy_1"), {0.1, 0.2});
    CHECK(max_abs_diff(b.planes.front().feature, expect) < 1e-12);
}

TEST_CASE("hy-plane 2+2 is continuous through the poles")
{
    for (bool cap : {false, true})
    {
        VariantSpec spec{Variant::HyPlane22};
        auto grids = grids_for(spec, 32, 4, 60);
        if (cap)
            grids.at("sphere_a") = noise_grid(16, 16, 4, 99);
        Representation rep = assemble(spec, grids);
        const auto& h = std::get<HyPlane22>(rep);
        CHECK(h.sphere_a.is_cap() == cap);

        SplitMix64 rng(7);
        for (Vec3 pole : {Vec3{0, 0, 0.6}, Vec3{0, 0, -0.6}})
        {
            double coarse = 0, fine = 0;
            for (int i = 0; i < 500; ++i)
            {
                double a = rng.uniform(-kPi, kPi);
                Vec3 t{std::cos(a), std::sin(a), 0};
                // paired samples straddling the pole
                coarse = std::max(coarse, max_abs_diff(query(rep, pole + t * 1e-3), query(rep, pole - t * 1e-3)));
                fine = std::max(fine, max_abs_diff(query(rep, pole + t * 1e-5), query(rep, pole - t * 1e-5)));
            }
            CHECK(coarse > 0);
            CHECK(fine <= coarse * 0.02);
        }
    }
}

TEST_CASE("aggregate ignores plane order")
{
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i)
    {
        Feature a(3), b(3), c(3);
        for (int k = 0; k < 3; ++k)
        {
            a[k] = rng.uniform(-1, 1);
            b[k] = rng.uniform(-1, 1);
            c[k] = rng.uniform(-1, 1);
        }
        CHECK(max_abs_diff(mean_of({&a, &b, &c}), mean_of({&c, &a, &b})) < 1e-15);
    }
    VariantSpec spec{Variant::HyPlane31};
    Representation rep = assemble(spec, grids_for(spec, 8, 3, 70));
    QueryBreakdown br = query_breakdown(rep, {0.2, -0.4, 0.5});
    std::vector<const Feature*> reversed;
    for (auto it = br.planes.rbegin(); it != br.planes.rend(); ++it)
        reversed.push_back(&it->feature);
    CHECK(max_abs_diff(mean_of(reversed), br.aggregate) < 1e-15);
}

TEST_CASE("assemble validation")
{
    VariantSpec spec{Variant::HyPlane31};
    auto grids = grids_for(spec, 8, 3, 80);
    auto missing = grids;
    missing.erase("sphere");
    CHECK_THROWS_WITH_AS(assemble(spec, missing), doctest::Contains("missing [sphere]"), Error);
    auto extra = grids;
    extra.emplace("planar_zz", noise_grid(8, 8, 3, 1));
    CHECK_THROWS_WITH_AS(assemble(spec, extra), doctest::Contains("planar_zz"), Error);
    auto mixed = grids;
    mixed.at("planar_xy") = noise_grid(8, 8, 2, 1);
    CHECK_THROWS_AS(assemble(spec, mixed), Error);

    // frames must follow the variant conventions
    HyPlane31 h = std::get<HyPlane31>(assemble(spec, grids));
    h.sphere.frame = frames::hyplane22_sphere_b();
    CHECK_THROWS_AS(validate(Representation{h}), Error);

    CHECK_THROWS_AS(query(assemble(spec, grids), {0, 0, 0}), Error);
}

TEST_CASE("paired pole samples expose the theta/phi pole")
{
    VariantSpec spec{Variant::HyPlane31, WarpKind::NaiveThetaPhi};
    Representation rep = assemble(spec, grids_for(spec, 32, 4, 90));
    SplitMix64 rng(9);
    Vec3 pole{0, 0.6, 0};
    double coarse = 0, fine = 0;
    for (int i = 0; i < 500; ++i)
    {
        double a = rng.uniform(-kPi, kPi);
        Vec3 t{std::cos(a), 0, std::sin(a)};
        coarse = std::max(coarse, max_abs_diff(query(rep, pole + t * 1e-3), query(rep, pole - t * 1e-3)));
        fine = std::max(fine, max_abs_diff(query(rep, pole + t * 1e-5), query(rep, pole - t * 1e-5)));
    }
    CHECK(fine > coarse * 0.5);
}
