#include "hyplane/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "hyplane/error.hpp"
#include "hyplane/parallel.hpp"

namespace hyplane
{
namespace
{
constexpr std::uint64_t kChunk = 1 << 16;

// Monte-Carlo counting over fixed-size chunks, each with its own SplitMix64
// stream derived from the seed. Partial counts are integers, so the merge
// order (and the thread count) cannot change the result.
template<class Fill>
std::vector<std::uint64_t> chunked_counts(std::uint64_t n_samples, std::uint64_t seed, std::size_t n_cells,
                                          Fill fill)
{
    std::uint64_t n_chunks = (n_samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> seeds(n_chunks);
    SplitMix64 root(seed);
    for (auto& s : seeds)
        s = root();

    std::vector<std::uint64_t> total(n_cells, 0);
    std::mutex merge;
    parallel_for(n_chunks, [&](std::size_t k) {
        std::uint64_t count = std::min(kChunk, n_samples - k * kChunk);
        std::vector<std::uint64_t> local(n_cells, 0);
        SplitMix64 rng(seeds[k]);
        for (std::uint64_t i = 0; i < count; ++i)
            fill(rng, local);
        std::lock_guard lock(merge);
        for (std::size_t c = 0; c < n_cells; ++c)
            total[c] += local[c];
    });
    return total;
}

int cell_of(double coord, int cells)
{
    int i = static_cast<int>(std::floor((coord + 1.0) * 0.5 * cells));
    return std::clamp(i, 0, cells - 1);
}

bool bin_meets_disc(int row, int col, int bins)
{
    auto gap = [bins](int i) {
        double lo = -1.0 + 2.0 * i / bins, hi = -1.0 + 2.0 * (i + 1) / bins;
        return std::max({0.0, lo, -hi});
    };
    double dx = gap(col), dy = gap(row);
    return dx * dx + dy * dy < 1.0;
}

double median(std::vector<double> v)
{
    if (v.empty())
        return 0;
    std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double hi = v[mid];
    if (v.size() % 2 == 1)
        return hi;
    double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

double max_of(const std::vector<double>& v)
{
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double distance(const Feature& a, const Feature& b)
{
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

double cosine(const Feature& a, const Feature& b)
{
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        ab += a[k] * b[k];
        aa += a[k] * a[k];
        bb += b[k] * b[k];
    }
    if (aa == 0 && bb == 0)
        return 1.0;
    if (aa == 0 || bb == 0)
        return 0.0;
    return ab / std::sqrt(aa * bb);
}

MetricReport binned_report(const std::string& name, const std::vector<std::uint64_t>& counts, int bins,
                           std::uint64_t n_samples, const std::vector<bool>& used)
{
    MetricReport rep;
    rep.name = name;
    double sum = 0, sum_sq = 0, lo = std::numeric_limits<double>::infinity(), hi = 0;
    std::uint64_t n_used = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
    {
        if (!used[i])
            continue;
        double c = static_cast<double>(counts[i]);
        sum += c;
        sum_sq += c * c;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        ++n_used;
    }
    double mean = sum / n_used;
    double var = std::max(0.0, sum_sq / n_used - mean * mean);
    rep.set("cov", std::sqrt(var) / mean);
    rep.set("mean_count", mean);
    rep.set("min_count", lo);
    rep.set("max_count", hi);
    rep.set("min_density", lo / mean);
    rep.set("max_density", hi / mean);
    rep.set("bins_used", static_cast<double>(n_used));
    rep.set("noise_floor", std::sqrt(static_cast<double>(n_used) / static_cast<double>(n_samples)));

    Histogram rows;
    for (int r = 0; r <= bins; ++r)
        rows.edges.push_back(-1.0 + 2.0 * r / bins);
    rows.counts.assign(bins, 0);
    for (int r = 0; r < bins; ++r)
        for (int c = 0; c < bins; ++c)
            rows.counts[r] += counts[static_cast<std::size_t>(r) * bins + c];
    rep.histograms.emplace_back("row_counts", std::move(rows));

    rep.metadata["bins"] = bins;
    rep.metadata["n_samples"] = n_samples;
    return rep;
}

void check_density_args(int bins, std::uint64_t n_samples)
{
    if (bins < 8)
        throw Error("density_cov needs at least 8 bins");
    if (n_samples < 100000)
        throw Error("density_cov needs at least 1e5 samples");
}
}  // namespace

void MetricReport::set(const std::string& key, double value)
{
    for (auto& [k, v] : scalars)
        if (k == key)
        {
            v = value;
            return;
        }
    scalars.emplace_back(key, value);
}

double MetricReport::scalar(const std::string& key) const
{
    for (const auto& [k, v] : scalars)
        if (k == key)
            return v;
    throw Error("metric '" + name + "' has no scalar '" + key + "'");
}

bool MetricReport::has(const std::string& key) const
{
    return std::any_of(scalars.begin(), scalars.end(), [&](const auto& kv) { return kv.first == key; });
}

const Histogram& MetricReport::histogram(const std::string& key) const
{
    for (const auto& [k, h] : histograms)
        if (k == key)
            return h;
    throw Error("metric '" + name + "' has no histogram '" + key + "'");
}

nlohmann::ordered_json MetricReport::to_json() const
{
    nlohmann::ordered_json j;
    j["name"] = name;
    j["scalars"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : scalars)
        j["scalars"][k] = v;
    j["histograms"] = nlohmann::ordered_json::object();
    for (const auto& [k, h] : histograms)
        j["histograms"][k] = {{"edges", h.edges}, {"counts", h.counts}};
    j["metadata"] = metadata;
    return j;
}

double safe_ratio(double a, double b)
{
    if (a == 0 && b == 0)
        return 1.0;
    if (b == 0)
        return std::numeric_limits<double>::infinity();
    return a / b;
}

SphericalDir uniform_direction(SplitMix64& rng)
{
    double z = rng.uniform(-1.0, 1.0);
    double phi = wrap_angle(rng.uniform(-kPi, kPi));
    SphericalDir d{std::acos(z), phi};
    if (d.theta == 0 || d.theta == kPi)
        d.phi = 0;
    return d;
}

MetricReport density_cov(WarpKind kind, int bins, std::uint64_t n_samples, std::uint64_t seed)
{
    check_density_args(bins, n_samples);
    auto counts = chunked_counts(n_samples, seed, static_cast<std::size_t>(bins) * bins,
                                 [&](SplitMix64& rng, std::vector<std::uint64_t>& local) {
                                     UV q = sphere_to_uv(uniform_direction(rng), kind);
                                     ++local[static_cast<std::size_t>(cell_of(q.v, bins)) * bins
                                             + cell_of(q.u, bins)];
                                 });
    std::vector<bool> used(counts.size(), true);
    if (kind == WarpKind::LaeaDiscOnly)
        for (int r = 0; r < bins; ++r)
            for (int c = 0; c < bins; ++c)
                used[static_cast<std::size_t>(r) * bins + c] = bin_meets_disc(r, c, bins);

    MetricReport rep = binned_report("density_cov", counts, bins, n_samples, used);
    rep.metadata["warp"] = std::string(to_string(kind));
    rep.metadata["seed"] = seed;

    if (kind == WarpKind::NaiveThetaPhi)
    {
        // Row feature density (texels per solid angle, normalised) against 2 / (pi sin theta).
        const Histogram& rows = rep.histogram("row_counts");
        double mean_row = static_cast<double>(n_samples) / bins;
        double worst = 0;
        for (int r = 0; r < bins; ++r)
        {
            double theta = (r + 0.5) * kPi / bins;
            if (theta < kPi / 18 || theta > kPi - kPi / 18)
                continue;
            double feature_density = mean_row / static_cast<double>(rows.counts[r]);
            double law = 2.0 / (kPi * std::sin(theta));
            worst = std::max(worst, std::abs(feature_density / law - 1.0));
        }
        rep.set("inv_sin_profile_max_rel_error", worst);
    }
    return rep;
}

MetricReport density_cov_square_control(int bins, std::uint64_t n_samples, std::uint64_t seed)
{
    check_density_args(bins, n_samples);
    auto counts = chunked_counts(n_samples, seed, static_cast<std::size_t>(bins) * bins,
                                 [&](SplitMix64& rng, std::vector<std::uint64_t>& local) {
                                     double u = rng.uniform(-1, 1), v = rng.uniform(-1, 1);
                                     ++local[static_cast<std::size_t>(cell_of(v, bins)) * bins + cell_of(u, bins)];
                                 });
    MetricReport rep = binned_report("density_cov", counts, bins, n_samples, std::vector<bool>(counts.size(), true));
    rep.metadata["warp"] = "square-control";
    rep.metadata["seed"] = seed;
    return rep;
}

namespace
{
template<class SampleUV>
MetricReport texel_utilization(const std::string& label, int resolution, std::uint64_t n_samples,
                               std::uint64_t seed, SampleUV sample_uv)
{
    if (resolution < 64)
        throw Error("utilization needs resolution >= 64");
    auto counts = chunked_counts(n_samples, seed, static_cast<std::size_t>(resolution) * resolution,
                                 [&](SplitMix64& rng, std::vector<std::uint64_t>& local) {
                                     UV q = sample_uv(rng);
                                     ++local[static_cast<std::size_t>(cell_of(q.v, resolution)) * resolution
                                             + cell_of(q.u, resolution)];
                                 });
    std::uint64_t hit = std::count_if(counts.begin(), counts.end(), [](std::uint64_t c) { return c > 0; });
    MetricReport rep;
    rep.name = "utilization";
    rep.set("fraction", static_cast<double>(hit) / static_cast<double>(counts.size()));
    rep.set("texels_hit", static_cast<double>(hit));
    rep.metadata["warp"] = label;
    rep.metadata["resolution"] = resolution;
    rep.metadata["n_samples"] = n_samples;
    rep.metadata["seed"] = seed;
    return rep;
}

}  // namespace

MetricReport utilization_report(WarpKind kind, int resolution, std::uint64_t n_samples, std::uint64_t seed)
{
    return texel_utilization(std::string(to_string(kind)), resolution, n_samples, seed,
                             [kind](SplitMix64& rng) { return sphere_to_uv(uniform_direction(rng), kind); });
}

MetricReport utilization_square_control(int resolution, std::uint64_t n_samples, std::uint64_t seed)
{
    return texel_utilization("square-control", resolution, n_samples, seed, [](SplitMix64& rng) {
        double u = rng.uniform(-1, 1);
        return UV{u, rng.uniform(-1, 1)};
    });
}

double utilization(WarpKind kind, int resolution, std::uint64_t n_samples, std::uint64_t seed)
{
    return utilization_report(kind, resolution, n_samples, seed).scalar("fraction");
}

MetricReport seam_gap(const SphericalPlane& plane, int n_pairs, double delta, std::uint64_t seed)
{
    if (!(delta > 0) || delta > 1e-2)
        throw Error("seam_gap separation must lie in (0, 1e-2]");
    if (n_pairs < 1)
        throw Error("seam_gap needs at least one pair");
    SplitMix64 rng(seed);
    std::vector<double> seam, interior;
    seam.reserve(n_pairs);
    interior.reserve(n_pairs);
    auto gap = [&](double theta, double phi_a, double phi_b) {
        Vec3 a = dir_to_cartesian({theta, wrap_angle(phi_a)}, plane.frame);
        Vec3 b = dir_to_cartesian({theta, wrap_angle(phi_b)}, plane.frame);
        return distance(sample_spherical(plane, a), sample_spherical(plane, b));
    };
    for (int i = 0; i < n_pairs; ++i)
    {
        double theta = std::acos(rng.uniform(-0.9, 0.9));
        double half = std::asin(std::sin(0.5 * delta) / std::sin(theta));
        double phi0 = rng.uniform(-kPi + 0.1, kPi - 0.1);
        seam.push_back(gap(theta, kPi - half, -kPi + half));
        interior.push_back(gap(theta, phi0 - half, phi0 + half));
    }
    MetricReport rep;
    rep.name = "seam_gap";
    double seam_med = median(seam), int_med = median(interior);
    rep.set("seam_max", max_of(seam));
    rep.set("seam_median", seam_med);
    rep.set("interior_max", max_of(interior));
    rep.set("interior_median", int_med);
    rep.set("median_ratio", safe_ratio(seam_med, int_med));
    rep.set("seam_max_over_interior_median", safe_ratio(max_of(seam), int_med));
    rep.metadata["warp"] = std::string(to_string(plane.kind));
    rep.metadata["n_pairs"] = n_pairs;
    rep.metadata["delta"] = delta;
    rep.metadata["seed"] = seed;
    return rep;
}

MetricReport mirror_entanglement(const Representation& rep, int n_points, std::uint64_t seed)
{
    if (n_points < 100)
        throw Error("mirror_entanglement needs at least 100 points");
    SplitMix64 rng(seed);
    std::vector<std::string> names;
    std::vector<double> sim_sum, identical, below_one;
    double agg_sim = 0, agg_identical = 0;
    int used = 0;
    while (used < n_points)
    {
        Vec3 p{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        if (p.z == 0 || (has_spherical_plane(rep) && norm(p) == 0))
            continue;
        MirrorPair pair = mirror_pair_features(rep, p);
        if (names.empty())
        {
            for (const auto& nf : pair.at_point.planes)
                names.push_back(nf.name);
            sim_sum.assign(names.size(), 0);
            identical.assign(names.size(), 0);
            below_one.assign(names.size(), 0);
        }
        for (std::size_t i = 0; i < names.size(); ++i)
        {
            const Feature& a = pair.at_point.planes[i].feature;
            const Feature& b = pair.at_mirrored.planes[i].feature;
            double s = cosine(a, b);
            sim_sum[i] += s;
            identical[i] += (a == b) ? 1 : 0;
            below_one[i] += (s < 1.0) ? 1 : 0;
        }
        agg_sim += cosine(pair.at_point.aggregate, pair.at_mirrored.aggregate);
        agg_identical += (pair.at_point.aggregate == pair.at_mirrored.aggregate) ? 1 : 0;
        ++used;
    }
    MetricReport out;
    out.name = "mirror_entanglement";
    out.set("similarity_mean", agg_sim / n_points);
    out.set("identical_fraction", agg_identical / n_points);
    out.set("differs_fraction", 1.0 - agg_identical / n_points);
    for (std::size_t i = 0; i < names.size(); ++i)
    {
        out.set("similarity_mean/" + names[i], sim_sum[i] / n_points);
        out.set("identical_fraction/" + names[i], identical[i] / n_points);
        out.set("below_one_fraction/" + names[i], below_one[i] / n_points);
    }
    out.metadata["variant"] = std::string(to_string(variant_of(rep)));
    out.metadata["n_points"] = n_points;
    out.metadata["seed"] = seed;
    return out;
}

MetricReport polar_sensitivity(const SphericalPlane& plane, std::uint64_t seed, int n_samples, double delta)
{
    if (n_samples < 100)
        throw Error("polar_sensitivity needs at least 100 samples per region");
    if (!(delta > 0) || delta > 1e-2)
        throw Error("polar_sensitivity step must lie in (0, 1e-2]");
    MetricReport rep;
    rep.name = "polar_sensitivity";
    const double cap = kPi / 18;
    const int w = plane.grid.width(), h = plane.grid.height();

    for (WarpKind kind : {WarpKind::NaiveThetaPhi, WarpKind::LaeaElliptical})
    {
        SphericalPlane probe{plane.frame, kind, plane.grid};
        SplitMix64 rng(seed);
        auto region_rates = [&](double cos_lo, double cos_hi, std::vector<double>& feature_rate,
                                std::vector<double>& texel_rate) {
            for (int i = 0; i < n_samples; ++i)
            {
                SphericalDir d{std::acos(rng.uniform(cos_lo, cos_hi)), wrap_angle(rng.uniform(-kPi, kPi))};
                double psi = rng.uniform(-kPi, kPi);
                Vec3 p = dir_to_cartesian(d, probe.frame);
                Vec3 e_theta = dir_to_cartesian({d.theta + kPi / 2, d.phi}, probe.frame);
                Vec3 e_phi = cross(probe.frame.north(), p);
                e_phi = norm(e_phi) > 0 ? normalized(e_phi) : probe.frame.ref_azimuth();
                Vec3 t = e_theta * std::cos(psi) + e_phi * std::sin(psi);
                Vec3 p2 = p * std::cos(delta) + t * std::sin(delta);
                feature_rate.push_back(distance(sample_spherical(probe, p), sample_spherical(probe, p2)) / delta);
                UV a = probe.uv_of(cartesian_to_dir(p, probe.frame));
                UV b = probe.uv_of(cartesian_to_dir(p2, probe.frame));
                texel_rate.push_back(std::hypot(0.5 * (a.u - b.u) * (w - 1), 0.5 * (a.v - b.v) * (h - 1)) / delta);
            }
        };
        std::vector<double> polar_f, polar_t, eq_f, eq_t;
        region_rates(std::cos(cap), 1.0, polar_f, polar_t);
        region_rates(-std::sin(cap), std::sin(cap), eq_f, eq_t);
        std::string prefix = kind == WarpKind::NaiveThetaPhi ? "naive_" : "elliptical_";
        double pf = median(polar_f), ef = median(eq_f);
        rep.set(prefix + "polar_rate", pf);
        rep.set(prefix + "equatorial_rate", ef);
        rep.set(prefix + "ratio", safe_ratio(pf, ef));
        rep.set(prefix + "texel_ratio", safe_ratio(median(polar_t), median(eq_t)));
    }
    rep.metadata["n_samples"] = n_samples;
    rep.metadata["delta"] = delta;
    rep.metadata["seed"] = seed;
    return rep;
}

}  // namespace hyplane
