#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "hyplane/error.hpp"
#include "hyplane/layout.hpp"
#include "hyplane/metrics.hpp"
#include "hyplane/synth.hpp"

using namespace hyplane;

namespace
{
SphericalPlane random_sphere(WarpKind kind, std::uint64_t seed, int side = 64, int channels = 8)
{
    return {frames::head_up(), kind, noise_grid(side, side, channels, seed)};
}
}  // namespace

TEST_CASE("density CoV against the oracle")
{
    // numpy oracle at 64 bins and 1e6 samples: naive 0.48697, elliptical 0.22342
    MetricReport naive = density_cov(WarpKind::NaiveThetaPhi, 64, 1000000, 1);
    MetricReport ell = density_cov(WarpKind::LaeaElliptical, 64, 1000000, 1);
    CHECK(naive.scalar("cov") == doctest::Approx(0.48697).epsilon(0.02));
    CHECK(ell.scalar("cov") == doctest::Approx(0.22342).epsilon(0.03));
    CHECK(naive.scalar("cov") / ell.scalar("cov") > 2.0);
    CHECK(naive.scalar("inv_sin_profile_max_rel_error") < 0.10);
    CHECK(ell.scalar("bins_used") == 64 * 64);
    CHECK(ell.scalar("mean_count") == doctest::Approx(1e6 / 4096.0));

    const Histogram& rows = naive.histogram("row_counts");
    CHECK(rows.counts.size() == 64);
    CHECK(rows.edges.front() == -1.0);
    CHECK(rows.edges.back() == 1.0);
    std::uint64_t total = 0;
    for (auto c : rows.counts)
        total += c;
    CHECK(total == 1000000);
}

TEST_CASE("disc-only density ignores corner bins")
{
    MetricReport disc = density_cov(WarpKind::LaeaDiscOnly, 64, 1000000, 2);
    CHECK(disc.scalar("bins_used") < 64 * 64);
    CHECK(disc.scalar("bins_used") > 0.78 * 64 * 64);
    CHECK(disc.scalar("max_density") < 1.5);
}

TEST_CASE("square control sits at the Poisson noise floor")
{
    for (std::uint64_t n : {100000ull, 1600000ull})
    {
        MetricReport ctl = density_cov_square_control(64, n, 3);
        double floor = ctl.scalar("noise_floor");
        CHECK(floor == doctest::Approx(std::sqrt(4096.0 / n)));
        CHECK(ctl.scalar("cov") == doctest::Approx(floor).epsilon(0.05));
    }
}

TEST_CASE("utilization")
{
    // numpy oracle at 256 and 1e7: disc 0.79208, elliptical 1.0, naive 0.99811
    CHECK(utilization(WarpKind::LaeaDiscOnly, 256, 10000000, 4) == doctest::Approx(0.79208).epsilon(0.002));
    CHECK(std::abs(utilization(WarpKind::LaeaDiscOnly, 256, 10000000, 4) - kPi / 4) < 0.01);
    CHECK(utilization(WarpKind::LaeaElliptical, 256, 10000000, 4) >= 0.99);
    CHECK(utilization(WarpKind::NaiveThetaPhi, 256, 10000000, 4) == doctest::Approx(0.99811).epsilon(0.002));

    double previous = 0;
    for (std::uint64_t n : {100000ull, 400000ull, 1600000ull})
    {
        double u = utilization(WarpKind::LaeaElliptical, 128, n, 5);
        CHECK(u >= previous);
        previous = u;
    }
    MetricReport ctl = utilization_square_control(128, 2000000, 6);
    CHECK(ctl.scalar("fraction") > 0.99);
    CHECK_THROWS_AS(utilization(WarpKind::LaeaElliptical, 32, 100000, 1), Error);
}

TEST_CASE("deterministic regardless of thread count")
{
    setenv("HYPLANE_THREADS", "1", 1);
    MetricReport a = density_cov(WarpKind::LaeaElliptical, 32, 300000, 9);
    double ua = utilization(WarpKind::LaeaElliptical, 64, 300000, 9);
    setenv("HYPLANE_THREADS", "5", 1);
    MetricReport b = density_cov(WarpKind::LaeaElliptical, 32, 300000, 9);
    double ub = utilization(WarpKind::LaeaElliptical, 64, 300000, 9);
    unsetenv("HYPLANE_THREADS");
    CHECK(a.to_json() == b.to_json());
    CHECK(ua == ub);
    MetricReport c = density_cov(WarpKind::LaeaElliptical, 32, 300000, 10);
    CHECK(a.to_json() != c.to_json());
}

TEST_CASE("seam gap")
{
    MetricReport ell = seam_gap(random_sphere(WarpKind::LaeaElliptical, 11), 2000, 1e-3, 1);
    CHECK(ell.scalar("median_ratio") >= 0.5);
    CHECK(ell.scalar("median_ratio") <= 2.0);

    MetricReport naive = seam_gap(random_sphere(WarpKind::NaiveThetaPhi, 11), 2000, 1e-3, 1);
    CHECK(naive.scalar("seam_max_over_interior_median") >= 10);

    SphericalPlane wrapped = random_sphere(WarpKind::NaiveThetaPhi, 11);
    wrapped.wrap_longitude = true;
    CHECK(seam_gap(wrapped, 2000, 1e-3, 1).scalar("median_ratio") <= 2.0);

    CHECK_THROWS_AS(seam_gap(random_sphere(WarpKind::LaeaElliptical, 1), 10, 0.1, 1), Error);
    CHECK_THROWS_AS(seam_gap(random_sphere(WarpKind::LaeaElliptical, 1), 10, 0.0, 1), Error);
}

TEST_CASE("seam gap on a constant grid is zero")
{
    SphericalPlane flat{frames::head_up(), WarpKind::NaiveThetaPhi, constant_grid(8, 8, 2, 1.0f)};
    CHECK(seam_gap(flat, 100, 1e-3, 2).scalar("seam_max") < 1e-12);
    SphericalPlane zero{frames::head_up(), WarpKind::NaiveThetaPhi, constant_grid(8, 8, 2, 0.0f)};
    MetricReport r = seam_gap(zero, 100, 1e-3, 2);
    CHECK(r.scalar("seam_max") == 0);
    CHECK(r.scalar("median_ratio") == 1);
}

TEST_CASE("mirror entanglement")
{
    UnifiedMap tri(noise_grid(64, 64, 8, 12), even_layout(64, Variant::TriPlane));
    MetricReport t = mirror_entanglement(build(tri, {Variant::TriPlane}), 1000, 3);
    CHECK(t.scalar("identical_fraction/planar_xy") == 1.0);
    CHECK(t.scalar("similarity_mean/planar_xy") == 1.0);
    CHECK(t.scalar("below_one_fraction/planar_xz") > 0.9);

    UnifiedMap hy(noise_grid(64, 64, 8, 13), even_layout(64, Variant::HyPlane31));
    MetricReport h = mirror_entanglement(build(hy, {Variant::HyPlane31}), 1000, 3);
    CHECK(h.scalar("differs_fraction") >= 0.99);
    CHECK(h.scalar("identical_fraction/planar_xy") == 1.0);
    CHECK(h.scalar("identical_fraction/sphere") < 0.01);

    CHECK_THROWS_AS(mirror_entanglement(build(hy, {Variant::HyPlane31}), 50, 3), Error);
}

TEST_CASE("polar sensitivity")
{
    MetricReport r = polar_sensitivity(random_sphere(WarpKind::LaeaElliptical, 14), 4, 4000);
    // the theta/phi map stretches the polar rows over the full width
    CHECK(r.scalar("naive_texel_ratio") > 3.0);
    CHECK(r.scalar("naive_ratio") > 3.0);
    CHECK(r.scalar("elliptical_ratio") >= 0.5);
    CHECK(r.scalar("elliptical_ratio") <= 2.0);
    CHECK(r.scalar("elliptical_texel_ratio") >= 0.5);
    CHECK(r.scalar("elliptical_texel_ratio") <= 2.0);
}

TEST_CASE("report helpers")
{
    CHECK(safe_ratio(0, 0) == 1);
    CHECK(std::isinf(safe_ratio(1, 0)));
    MetricReport r;
    r.name = "x";
    r.set("a", 1.5);
    r.set("a", 2.5);
    CHECK(r.scalar("a") == 2.5);
    CHECK(r.scalars.size() == 1);
    CHECK_FALSE(r.has("b"));
    CHECK_THROWS_AS(r.scalar("b"), Error);
    CHECK_THROWS_AS(density_cov(WarpKind::LaeaElliptical, 4, 100000, 1), Error);
    CHECK_THROWS_AS(density_cov(WarpKind::LaeaElliptical, 16, 1000, 1), Error);
}
