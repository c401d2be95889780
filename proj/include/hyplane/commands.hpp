#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyplane/bundle.hpp"
#include "hyplane/image_io.hpp"
#include "hyplane/render.hpp"

namespace hyplane
{

//! One row of the diagnostics report (a representation / split / warp combination).
struct ReportRow
{
    std::string variant = "hy-plane-3+1";
    std::string layout = "even";
    std::string warp = "elliptical";
};

//! Settings shared by every command. JSON keys match the field names.
struct Config
{
    std::string variant = "hy-plane-3+1";
    std::string layout = "even";  //!< even | area-biased
    int size = 256;                //!< unified map side in texels
    int channels = kDefaultChannels;
    std::string warp = "elliptical";
    bool wrap_longitude = false;
    int depth = 3;
    double cap_fraction = 0.25;
    std::uint64_t seed = 0;

    // rendering
    int frames = 1;
    int width = 64;
    int height = 64;
    int steps = 48;
    double orbit_radius = 3.0;
    double elevation = 0.15;
    double fov = 0.75;

    // warp patterns
    std::string pattern = "stripes";  //!< stripes | checker | polar-grid | file
    std::filesystem::path input;
    int resolution = 256;

    // diagnostics
    int bins = 64;
    std::uint64_t samples = 1000000;
    int seam_pairs = 2000;
    int mirror_points = 1000;
    int polar_samples = 4000;
    std::vector<ReportRow> rows;  //!< empty = the default ablation grid

    std::filesystem::path out = "out";
    unsigned threads = 0;

    //! Throws Error naming the first invalid field.
    void validate() const;
};

//! Starts from base and overrides every key present in j. Unknown keys throw Error.
Config config_from_json(const nlohmann::json& j, Config base = {});
nlohmann::ordered_json config_to_json(const Config& c);

VariantSpec variant_spec(const Config& c);

//! Synthetic representation described by the config: a noise-filled unified
//! map for variants that fit a four-region split, separate noise planes otherwise.
struct Synthesized
{
    VariantSpec spec;
    Representation rep;
    std::optional<UnifiedMap> unified;
    std::map<std::string, FeatureGrid> planes;
};
Synthesized synthesize(const Config& c);

//! Writes the synthesized representation as a bundle into c.out.
std::filesystem::path cmd_generate(const Config& c);

//! Decoder seeded from the config seed (offset so it differs from the feature noise stream).
ToyDecoder config_decoder(const Config& c, int channels);

//! Renders c.frames cameras evenly spaced on a horizontal orbit and writes
//! frame_%04d.ppm plus frame_%04d_alpha.pgm into c.out. Returns the paths written.
std::vector<std::filesystem::path> cmd_render_orbit(const Config& c, const Representation& rep,
                                                    const ToyDecoder& dec);
std::vector<std::filesystem::path> cmd_render_orbit(const Config& c);

struct WarpPatternResult
{
    Image8 square_view;   //!< resolution^2: the pattern pulled through uv_to_sphere from an equirectangular source
    Image8 sphere_view;   //!< 2*resolution x resolution equirectangular view of the pattern laid on the square
    std::uint64_t out_of_range_sources = 0;  //!< sphere-view pixels whose UV left [-1,1]^2
    std::uint64_t unreachable_texels = 0;    //!< square texels with no preimage (corners of the disc-only warp)
};

//! Pattern intensity at normalised coordinates (s, t) in [0,1]^2, t = 0 at the top.
double pattern_value(const std::string& pattern, double s, double t);

WarpPatternResult warp_pattern(const Config& c);
//! warp_pattern plus square_view.ppm / sphere_view.ppm in c.out.
WarpPatternResult cmd_warp_pattern(const Config& c);

struct ReportResult
{
    nlohmann::ordered_json json;
    bool passed = false;
    std::vector<std::string> failures;
};

//! Runs every diagnostic on each report row and evaluates the pinned thresholds.
ReportResult run_report(const Config& c);
//! run_report plus report.json in c.out.
ReportResult cmd_report(const Config& c);

//! Keys and value types of a JSON document; array elements are merged into one element schema.
nlohmann::ordered_json json_schema_of(const nlohmann::ordered_json& j);

}  // namespace hyplane
