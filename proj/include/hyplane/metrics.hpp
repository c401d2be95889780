#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyplane/plane.hpp"
#include "hyplane/repr.hpp"
#include "hyplane/splitmix64.hpp"

namespace hyplane
{

struct Histogram
{
    std::vector<double> edges;           //!< counts.size() + 1 entries
    std::vector<std::uint64_t> counts;
};

//! Named results of one diagnostic. Insertion order is preserved in JSON.
struct MetricReport
{
    std::string name;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::pair<std::string, Histogram>> histograms;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    void set(const std::string& key, double value);
    //! Throws Error if absent.
    double scalar(const std::string& key) const;
    bool has(const std::string& key) const;
    const Histogram& histogram(const std::string& key) const;

    nlohmann::ordered_json to_json() const;
};

//! a / b, with 0/0 read as 1 (the two populations agree).
double safe_ratio(double a, double b);

//! Uniform direction on the unit sphere (uniform azimuth, uniform cos colatitude).
SphericalDir uniform_direction(SplitMix64& rng);

//! Samples per bin after mapping uniform sphere directions to the square.
//! Scalars: cov, mean_count, min_count, max_count, min_density, max_density
//! (count / mean), bins_used, noise_floor. Only bins meeting the warp's image
//! enter the statistics. For NaiveThetaPhi also inv_sin_profile_max_rel_error:
//! the worst relative deviation of row feature density (mean / row mean) from
//! the 2/(pi sin theta) law over rows at least 10 degrees from either pole.
//! Histogram row_counts holds per-row totals (edges in v).
//! Throws Error unless bins >= 8 and n_samples >= 1e5.
MetricReport density_cov(WarpKind kind, int bins, std::uint64_t n_samples, std::uint64_t seed);
//! Control: uniform samples drawn directly on the square.
MetricReport density_cov_square_control(int bins, std::uint64_t n_samples, std::uint64_t seed);

//! Fraction of resolution^2 texels hit by at least one of n_samples uniform directions.
//! Throws Error for resolution < 64.
double utilization(WarpKind kind, int resolution, std::uint64_t n_samples, std::uint64_t seed);
MetricReport utilization_report(WarpKind kind, int resolution, std::uint64_t n_samples, std::uint64_t seed);
//! Control: uniform samples drawn directly on the square (what a planar plane sees).
MetricReport utilization_square_control(int resolution, std::uint64_t n_samples, std::uint64_t seed);

//! Feature gaps of direction pairs straddling the phi = +-pi meridian at
//! angular separation delta, against matched pairs (same colatitude) at random
//! interior longitudes. Colatitudes are area-uniform with |cos theta| <= 0.9.
//! Scalars: seam_max, seam_median, interior_max, interior_median,
//! median_ratio, seam_max_over_interior_median.
//! Throws Error unless delta is in (0, 1e-2].
MetricReport seam_gap(const SphericalPlane& plane, int n_pairs, double delta, std::uint64_t seed);

//! Cosine similarity between query(p) and query(x, y, -z) over random points in the cube.
//! Scalars: similarity_mean, identical_fraction, differs_fraction and per plane
//! similarity_mean/<plane>, identical_fraction/<plane>, below_one_fraction/<plane>.
//! Throws Error for n_points < 100.
MetricReport mirror_entanglement(const Representation& rep, int n_points, std::uint64_t seed);

//! Rate of feature change per radian (median |f(p') - f(p)| / delta for random
//! tangent steps) in the north polar cap theta < pi/18 against the band
//! |theta - pi/2| < pi/18, evaluated with both the theta/phi and the elliptical
//! warp on the plane's grid and frame. For each kind (prefix naive_ / elliptical_):
//! polar_rate, equatorial_rate, ratio, and texel_ratio (the same medians of
//! texel-space step length, i.e. the pure compression of the warp).
MetricReport polar_sensitivity(const SphericalPlane& plane, std::uint64_t seed, int n_samples = 20000,
                               double delta = 1e-4);

}  // namespace hyplane
