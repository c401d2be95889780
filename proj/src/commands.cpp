#include "hyplane/commands.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "hyplane/atomic_file.hpp"
#include "hyplane/error.hpp"
#include "hyplane/metrics.hpp"
#include "hyplane/splitmix64.hpp"
#include "hyplane/synth.hpp"

namespace hyplane
{
namespace
{
using ojson = nlohmann::ordered_json;
using RGB = std::array<double, 3>;

const std::vector<std::string> kPatterns = {"stripes", "checker", "polar-grid", "file"};

bool separate_planes(Variant v)
{
    return v == Variant::TriGrid || v == Variant::DualSphericalTriPlane;
}

template<class T>
void read_key(const nlohmann::json& j, const char* key, T& field)
{
    if (j.contains(key))
        field = j.at(key).get<T>();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt)
{
    SplitMix64 rng(seed ^ (salt * 0x9e3779b97f4a7c15ull));
    return rng();
}

// Primary sphere used for seam and polar diagnostics.
const SphericalPlane* primary_sphere(const Representation& rep)
{
    if (auto* s = std::get_if<SphericalTriPlane>(&rep))
        return &s->sphere;
    if (auto* d = std::get_if<DualSphericalTriPlane>(&rep))
        return &d->a.sphere;
    if (auto* h = std::get_if<HyPlane31>(&rep))
        return &h->sphere;
    if (auto* h2 = std::get_if<HyPlane22>(&rep))
        return h2->sphere_b.is_cap() ? &h2->sphere_a : &h2->sphere_b;
    return nullptr;
}

class ImageSource
{
  public:
    explicit ImageSource(const Config& c)
    {
        if (c.pattern == "file")
            image_ = load_pnm(c.input);
        pattern_ = c.pattern;
    }

    int native_height() const { return image_ ? image_->height : 0; }

    RGB at(double s, double t) const
    {
        if (!image_)
        {
            double v = pattern_value(pattern_, s, t);
            return {v, v, v};
        }
        const Image8& im = *image_;
        int x = std::clamp(static_cast<int>(std::floor(s * im.width)), 0, im.width - 1);
        int y = std::clamp(static_cast<int>(std::floor(t * im.height)), 0, im.height - 1);
        std::size_t base = (static_cast<std::size_t>(y) * im.width + x) * im.channels;
        RGB out;
        for (int k = 0; k < 3; ++k)
            out[k] = im.pixels[base + (im.channels == 3 ? k : 0)] / 255.0;
        return out;
    }

  private:
    std::optional<Image8> image_;
    std::string pattern_;
};

void put_rgb(Image8& img, int col, int row, const RGB& c)
{
    std::size_t base = (static_cast<std::size_t>(row) * img.width + col) * 3;
    for (int k = 0; k < 3; ++k)
        img.pixels[base + k] = quantize(c[k]);
}

ojson not_applicable(const char* name)
{
    return {{"name", name}, {"applicable", false}};
}

struct Check
{
    std::string name;
    bool passed;
    double value;
    std::string rule;
};
}  // namespace

void Config::validate() const
{
    Variant v = variant_from_string(variant);
    warp_kind_from_string(warp);
    if (layout != "even" && layout != "area-biased")
        throw Error("layout must be 'even' or 'area-biased'");
    if (layout == "area-biased" && v != Variant::HyPlane31 && v != Variant::HyPlane22 && !separate_planes(v))
        throw Error("area-biased layouts exist only for hy-plane variants");
    if (size < 8 || size % 2 != 0)
        throw Error("size must be an even number >= 8");
    if (channels < 1)
        throw Error("channels must be >= 1");
    if (depth < 1)
        throw Error("depth must be >= 1");
    if (!(cap_fraction > 0) || cap_fraction > 0.5)
        throw Error("cap_fraction must lie in (0, 0.5]");
    if (frames < 1)
        throw Error("frames must be >= 1");
    if (width < 1 || height < 1)
        throw Error("image width and height must be >= 1");
    if (steps < 2)
        throw Error("steps must be >= 2");
    if (!(fov > 0) || !(fov < kPi))
        throw Error("fov must lie in (0, pi)");
    if (!(orbit_radius > 0))
        throw Error("orbit_radius must be positive");
    if (std::find(kPatterns.begin(), kPatterns.end(), pattern) == kPatterns.end())
        throw Error("pattern must be one of stripes, checker, polar-grid, file");
    if (resolution < 0)
        throw Error("resolution must be >= 0");
    if (bins < 8)
        throw Error("bins must be >= 8");
    if (samples < 100000)
        throw Error("samples must be >= 1e5");
    if (seam_pairs < 1 || mirror_points < 100 || polar_samples < 100)
        throw Error("seam_pairs >= 1, mirror_points >= 100 and polar_samples >= 100 are required");
    for (const auto& r : rows)
    {
        variant_from_string(r.variant);
        warp_kind_from_string(r.warp);
        if (r.layout != "even" && r.layout != "area-biased")
            throw Error("report row layout must be 'even' or 'area-biased'");
    }
}

Config config_from_json(const nlohmann::json& j, Config c)
{
    static const std::vector<std::string> known = {
        "variant", "layout", "size", "channels", "warp", "wrap_longitude", "depth", "cap_fraction", "seed",
        "frames", "width", "height", "steps", "orbit_radius", "elevation", "fov", "pattern", "input",
        "resolution", "bins", "samples", "seam_pairs", "mirror_points", "polar_samples", "rows", "out", "threads"};
    if (!j.is_object())
        throw Error("config must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error("unknown config key '" + key + "'");
    try
    {
        read_key(j, "variant", c.variant);
        read_key(j, "layout", c.layout);
        read_key(j, "size", c.size);
        read_key(j, "channels", c.channels);
        read_key(j, "warp", c.warp);
        read_key(j, "wrap_longitude", c.wrap_longitude);
        read_key(j, "depth", c.depth);
        read_key(j, "cap_fraction", c.cap_fraction);
        read_key(j, "seed", c.seed);
        read_key(j, "frames", c.frames);
        read_key(j, "width", c.width);
        read_key(j, "height", c.height);
        read_key(j, "steps", c.steps);
        read_key(j, "orbit_radius", c.orbit_radius);
        read_key(j, "elevation", c.elevation);
        read_key(j, "fov", c.fov);
        read_key(j, "pattern", c.pattern);
        if (j.contains("input"))
            c.input = j.at("input").get<std::string>();
        read_key(j, "resolution", c.resolution);
        read_key(j, "bins", c.bins);
        read_key(j, "samples", c.samples);
        read_key(j, "seam_pairs", c.seam_pairs);
        read_key(j, "mirror_points", c.mirror_points);
        read_key(j, "polar_samples", c.polar_samples);
        if (j.contains("out"))
            c.out = j.at("out").get<std::string>();
        read_key(j, "threads", c.threads);
        if (j.contains("rows"))
        {
            c.rows.clear();
            for (const auto& r : j.at("rows"))
            {
                ReportRow row;
                read_key(r, "variant", row.variant);
                read_key(r, "layout", row.layout);
                read_key(r, "warp", row.warp);
                c.rows.push_back(row);
            }
        }
    }
    catch (const nlohmann::json::exception& e)
    {
        throw Error(std::string("bad config value: ") + e.what());
    }
    return c;
}

nlohmann::ordered_json config_to_json(const Config& c)
{
    ojson rows = ojson::array();
    for (const auto& r : c.rows)
        rows.push_back({{"variant", r.variant}, {"layout", r.layout}, {"warp", r.warp}});
    return {{"variant", c.variant},
            {"layout", c.layout},
            {"size", c.size},
            {"channels", c.channels},
            {"warp", c.warp},
            {"wrap_longitude", c.wrap_longitude},
            {"depth", c.depth},
            {"cap_fraction", c.cap_fraction},
            {"seed", c.seed},
            {"frames", c.frames},
            {"width", c.width},
            {"height", c.height},
            {"steps", c.steps},
            {"orbit_radius", c.orbit_radius},
            {"elevation", c.elevation},
            {"fov", c.fov},
            {"pattern", c.pattern},
            {"input", c.input.string()},
            {"resolution", c.resolution},
            {"bins", c.bins},
            {"samples", c.samples},
            {"seam_pairs", c.seam_pairs},
            {"mirror_points", c.mirror_points},
            {"polar_samples", c.polar_samples},
            {"rows", rows}};
}

VariantSpec variant_spec(const Config& c)
{
    VariantSpec spec;
    spec.variant = variant_from_string(c.variant);
    spec.warp = warp_kind_from_string(c.warp);
    spec.wrap_longitude = c.wrap_longitude;
    spec.depth = c.depth;
    return spec;
}

Synthesized synthesize(const Config& c)
{
    c.validate();
    VariantSpec spec = variant_spec(c);
    if (separate_planes(spec.variant))
    {
        std::map<std::string, FeatureGrid> planes;
        SplitMix64 seeds(c.seed);
        for (const auto& name : plane_names(spec))
            planes.emplace(name, noise_grid(c.size / 2, c.size / 2, c.channels, seeds()));
        Representation rep = assemble(spec, planes);
        return {spec, std::move(rep), std::nullopt, std::move(planes)};
    }
    RegionLayout layout = [&] {
        if (c.layout == "even")
            return even_layout(c.size, spec.variant);
        if (spec.variant == Variant::HyPlane31)
            return area_biased_layout_31(c.size);
        return area_biased_layout_22(c.size, c.cap_fraction);
    }();
    UnifiedMap um(noise_grid(c.size, c.size, c.channels, c.seed), layout);
    Representation rep = build(um, spec);
    return {spec, std::move(rep), std::move(um), split(um)};
}

std::filesystem::path cmd_generate(const Config& c)
{
    Synthesized s = synthesize(c);
    if (s.unified)
        save_bundle(c.out, s.spec, *s.unified);
    else
        save_bundle(c.out, s.spec, s.planes);
    return c.out;
}

ToyDecoder config_decoder(const Config& c, int channels)
{
    return ToyDecoder::from_seed(c.seed + 1, channels);
}

std::vector<std::filesystem::path> cmd_render_orbit(const Config& c, const Representation& rep,
                                                    const ToyDecoder& dec)
{
    c.validate();
    std::filesystem::create_directories(c.out);
    std::vector<std::filesystem::path> written;
    for (int k = 0; k < c.frames; ++k)
    {
        double azimuth = 2.0 * kPi * k / c.frames;
        Camera cam = Camera::orbit(azimuth, c.orbit_radius, c.elevation, c.fov, c.width, c.height);
        RenderedImage img = render(rep, cam, dec, c.steps, c.threads);
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04d", k);
        auto color = c.out / (std::string(name) + ".ppm");
        auto alpha = c.out / (std::string(name) + "_alpha.pgm");
        save_pnm(color, to_rgb8(img));
        save_pnm(alpha, to_alpha8(img));
        written.push_back(color);
        written.push_back(alpha);
    }
    return written;
}

std::vector<std::filesystem::path> cmd_render_orbit(const Config& c)
{
    Synthesized s = synthesize(c);
    return cmd_render_orbit(c, s.rep, config_decoder(c, c.channels));
}

double pattern_value(const std::string& pattern, double s, double t)
{
    if (pattern == "stripes")
        return static_cast<int>(std::floor(s * 16.0)) % 2 == 0 ? 1.0 : 0.0;
    if (pattern == "checker")
        return (static_cast<int>(std::floor(s * 8.0)) + static_cast<int>(std::floor(t * 8.0))) % 2 == 0 ? 1.0 : 0.0;
    if (pattern == "polar-grid")
    {
        // graticule every 30 degrees of longitude and latitude
        auto near_line = [](double x, double period) {
            double f = x / period - std::round(x / period);
            return std::abs(f) * period < 0.004;
        };
        return (near_line(s, 1.0 / 12.0) || near_line(t, 1.0 / 6.0)) ? 0.0 : 1.0;
    }
    throw Error("pattern '" + pattern + "' has no analytic definition");
}

WarpPatternResult warp_pattern(const Config& c)
{
    c.validate();
    WarpKind kind = warp_kind_from_string(c.warp);
    ImageSource source(c);
    int res = c.resolution > 0 ? c.resolution : source.native_height();
    if (res < 2)
        throw Error("warp-pattern needs a resolution of at least 2");

    WarpPatternResult out;
    out.square_view = Image8{res, res, 3, std::vector<std::uint8_t>(static_cast<std::size_t>(res) * res * 3, 0)};
    for (int row = 0; row < res; ++row)
        for (int col = 0; col < res; ++col)
        {
            UV q{2.0 * (col + 0.5) / res - 1.0, 1.0 - 2.0 * (row + 0.5) / res};
            if (kind == WarpKind::LaeaDiscOnly && q.u * q.u + q.v * q.v > 1.0)
            {
                ++out.unreachable_texels;
                continue;
            }
            SphericalDir d = uv_to_sphere(q, kind);
            put_rgb(out.square_view, col, row, source.at((d.phi + kPi) / (2 * kPi), d.theta / kPi));
        }

    const int w = 2 * res;
    out.sphere_view = Image8{w, res, 3, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * res * 3, 0)};
    for (int row = 0; row < res; ++row)
        for (int col = 0; col < w; ++col)
        {
            SphericalDir d{kPi * (row + 0.5) / res, wrap_angle(-kPi + 2 * kPi * (col + 0.5) / w)};
            UV q = sphere_to_uv(d, kind);
            if (std::abs(q.u) > 1.0 || std::abs(q.v) > 1.0)
                ++out.out_of_range_sources;
            put_rgb(out.sphere_view, col, row, source.at(0.5 * (q.u + 1.0), 0.5 * (1.0 - q.v)));
        }
    return out;
}

WarpPatternResult cmd_warp_pattern(const Config& c)
{
    WarpPatternResult r = warp_pattern(c);
    std::filesystem::create_directories(c.out);
    save_pnm(c.out / "square_view.ppm", r.square_view);
    save_pnm(c.out / "sphere_view.ppm", r.sphere_view);
    return r;
}

ReportResult run_report(const Config& c)
{
    c.validate();
    std::vector<ReportRow> rows = c.rows;
    if (rows.empty())
        rows = {{"tri-plane", "even", "elliptical"},
                {"tri-grid", "even", "elliptical"},
                {"spherical-tri-plane", "even", "naive"},
                {"dual-spherical-tri-plane", "even", "naive"},
                {"hy-plane-3+1", "even", "naive"},
                {"hy-plane-3+1", "even", "elliptical"},
                {"hy-plane-3+1", "area-biased", "elliptical"},
                {"hy-plane-2+2", "even", "elliptical"},
                {"hy-plane-2+2", "area-biased", "elliptical"}};

    // Thresholds pinned from the oracle runs (see README, "Diagnostics").
    constexpr double kDensityGain = 1.5;
    constexpr double kSeamBandLo = 0.5, kSeamBandHi = 2.0;
    constexpr double kNaiveSeamJump = 10.0;
    constexpr double kMirrorDiffers = 0.99;
    constexpr double kPolarBandLo = 0.5, kPolarBandHi = 2.0;
    constexpr double kNaivePolarExcess = 3.0;
    constexpr double kUtilization = 0.99;

    const std::uint64_t density_seed = derive_seed(c.seed, 1), util_seed = derive_seed(c.seed, 2);
    const std::uint64_t seam_seed = derive_seed(c.seed, 3), mirror_seed = derive_seed(c.seed, 4);
    const std::uint64_t polar_seed = derive_seed(c.seed, 5);
    const double naive_cov =
        density_cov(WarpKind::NaiveThetaPhi, c.bins, c.samples, density_seed).scalar("cov");

    std::vector<Check> checks;
    ojson rows_json = ojson::array();
    for (const auto& row : rows)
    {
        Config rc = c;
        rc.variant = row.variant;
        rc.layout = row.layout;
        rc.warp = row.warp;
        Synthesized s = synthesize(rc);
        const SphericalPlane* sphere = primary_sphere(s.rep);
        const std::string label = row.variant + "/" + row.layout + (sphere ? "/" + row.warp : "");
        const bool hyplane = s.spec.variant == Variant::HyPlane31 || s.spec.variant == Variant::HyPlane22;

        ojson metrics;
        MetricReport density = sphere ? density_cov(s.spec.warp, c.bins, c.samples, density_seed)
                                      : density_cov_square_control(c.bins, c.samples, density_seed);
        metrics["density_cov"] = density.to_json();
        MetricReport util = sphere ? utilization_report(s.spec.warp, c.resolution, c.samples, util_seed)
                                   : utilization_square_control(c.resolution, c.samples, util_seed);
        metrics["utilization"] = util.to_json();
        MetricReport mirror = mirror_entanglement(s.rep, c.mirror_points, mirror_seed);
        if (sphere)
        {
            MetricReport seam = seam_gap(*sphere, c.seam_pairs, 1e-3, seam_seed);
            MetricReport polar = polar_sensitivity(*sphere, polar_seed, c.polar_samples);
            metrics["seam_gap"] = seam.to_json();
            metrics["mirror_entanglement"] = mirror.to_json();
            metrics["polar_sensitivity"] = polar.to_json();

            if (s.spec.warp == WarpKind::NaiveThetaPhi)
            {
                double jump = seam.scalar("seam_max_over_interior_median");
                checks.push_back({label + ": seam jump", jump >= kNaiveSeamJump, jump, ">= 10"});
                double excess = polar.scalar("naive_ratio");
                checks.push_back({label + ": polar excess", excess >= kNaivePolarExcess, excess, ">= 3"});
            }
            else
            {
                double cov = density.scalar("cov");
                checks.push_back({label + ": density CoV vs theta-phi", cov * kDensityGain <= naive_cov,
                                  naive_cov / cov, ">= 1.5"});
                double used = util.scalar("fraction");
                checks.push_back({label + ": utilization", used >= kUtilization, used, ">= 0.99"});
                double ratio = seam.scalar("median_ratio");
                checks.push_back({label + ": seam continuity", ratio >= kSeamBandLo && ratio <= kSeamBandHi, ratio,
                                  "in [0.5, 2]"});
                double polar_ratio = polar.scalar("elliptical_ratio");
                checks.push_back({label + ": polar uniformity",
                                  polar_ratio >= kPolarBandLo && polar_ratio <= kPolarBandHi, polar_ratio,
                                  "in [0.5, 2]"});
            }
        }
        else
        {
            metrics["seam_gap"] = not_applicable("seam_gap");
            metrics["mirror_entanglement"] = mirror.to_json();
            metrics["polar_sensitivity"] = not_applicable("polar_sensitivity");
        }

        if (s.spec.variant == Variant::TriPlane)
        {
            double sim = mirror.scalar("similarity_mean/planar_xy");
            double same = mirror.scalar("identical_fraction/planar_xy");
            checks.push_back({label + ": xy plane mirrored", sim == 1.0 && same == 1.0, same, "== 1"});
        }
        if (hyplane)
        {
            double differs = mirror.scalar("differs_fraction");
            checks.push_back({label + ": mirror disentangled", differs >= kMirrorDiffers, differs, ">= 0.99"});
        }

        rows_json.push_back({{"label", label},
                             {"variant", row.variant},
                             {"layout", row.layout},
                             {"warp", sphere ? row.warp : "none"},
                             {"metrics", std::move(metrics)}});
    }

    ReportResult result;
    result.passed = true;
    ojson checks_json = ojson::array();
    for (const auto& ch : checks)
    {
        checks_json.push_back({{"name", ch.name}, {"passed", ch.passed}, {"value", ch.value}, {"rule", ch.rule}});
        if (!ch.passed)
        {
            result.passed = false;
            result.failures.push_back(ch.name);
        }
    }
    result.json = {{"report", "hyplane-diagnostics"},
                   {"schema_version", 1},
                   {"config", config_to_json(c)},
                   {"reference", {{"naive_density_cov", naive_cov}}},
                   {"rows", std::move(rows_json)},
                   {"checks", std::move(checks_json)},
                   {"passed", result.passed}};
    return result;
}

ReportResult cmd_report(const Config& c)
{
    ReportResult r = run_report(c);
    std::filesystem::create_directories(c.out);
    write_file_atomic(c.out / "report.json", r.json.dump(2) + "\n");
    return r;
}

namespace
{
// Union of two schemas: objects merge their keys, differing leaf types join as "a|b".
ojson merge_schema(const ojson& a, const ojson& b)
{
    if (a.is_object() && b.is_object())
    {
        ojson out = a;
        for (const auto& [k, v] : b.items())
            out[k] = out.contains(k) ? merge_schema(out[k], v) : v;
        return out;
    }
    if (a.is_array() && b.is_array())
    {
        if (a.empty() || b.empty())
            return a.empty() ? b : a;
        return ojson::array({merge_schema(a.front(), b.front())});
    }
    if (a == b)
        return a;
    return a.dump() + "|" + b.dump();
}
}  // namespace

nlohmann::ordered_json json_schema_of(const nlohmann::ordered_json& j)
{
    switch (j.type())
    {
        case ojson::value_t::object:
        {
            ojson out = ojson::object();
            for (const auto& [k, v] : j.items())
                out[k] = json_schema_of(v);
            return out;
        }
        case ojson::value_t::array:
        {
            if (j.empty())
                return ojson::array();
            ojson element = json_schema_of(j.front());
            for (std::size_t i = 1; i < j.size(); ++i)
                element = merge_schema(element, json_schema_of(j[i]));
            return ojson::array({element});
        }
        case ojson::value_t::string: return "string";
        case ojson::value_t::boolean: return "boolean";
        case ojson::value_t::null: return "null";
        default: return "number";
    }
}

}  // namespace hyplane
