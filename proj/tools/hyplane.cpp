#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hyplane/bundle.hpp"
#include "hyplane/commands.hpp"
#include "hyplane/error.hpp"

using namespace hyplane;

namespace
{
struct Flags
{
    std::string config_path;
    std::optional<std::string> variant, layout, warp, pattern, input, out, bundle;
    std::optional<int> size, channels, frames, bins, resolution, width, height, steps;
    std::optional<std::uint64_t> seed, samples;
    std::optional<unsigned> threads;
    bool wrap = false;
};

void add_common(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
    cmd->add_option("--variant", f.variant, "tri-plane | tri-grid | spherical-tri-plane | dual-spherical-tri-plane | hy-plane-3+1 | hy-plane-2+2");
    cmd->add_option("--layout", f.layout, "even | area-biased");
    cmd->add_option("--size", f.size, "unified map side in texels");
    cmd->add_option("--channels", f.channels, "feature channels");
    cmd->add_option("--warp", f.warp, "naive | disc | elliptical");
    cmd->add_flag("--wrap", f.wrap, "periodic longitude addressing for the naive warp");
    cmd->add_option("--seed", f.seed, "random seed");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--threads", f.threads, "worker threads (0 = default)");
}

Config resolve(const Flags& f)
{
    Config c;
    if (!f.config_path.empty())
    {
        std::ifstream in(f.config_path);
        if (!in)
            throw Error("cannot read config " + f.config_path);
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::exception& e)
        {
            throw Error(std::string("config is not valid JSON: ") + e.what());
        }
        c = config_from_json(j, c);
    }
    auto apply = [](auto& field, const auto& opt) {
        if (opt)
            field = *opt;
    };
    apply(c.variant, f.variant);
    apply(c.layout, f.layout);
    apply(c.warp, f.warp);
    apply(c.pattern, f.pattern);
    apply(c.size, f.size);
    apply(c.channels, f.channels);
    apply(c.frames, f.frames);
    apply(c.bins, f.bins);
    apply(c.resolution, f.resolution);
    apply(c.width, f.width);
    apply(c.height, f.height);
    apply(c.steps, f.steps);
    apply(c.seed, f.seed);
    apply(c.samples, f.samples);
    apply(c.threads, f.threads);
    if (f.input)
        c.input = *f.input;
    if (f.out)
        c.out = *f.out;
    if (f.wrap)
        c.wrap_longitude = true;
    c.validate();
    return c;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hy-plane feature representation toolkit"};
    app.require_subcommand(1);
    Flags f;

    auto* warp_cmd = app.add_subcommand("warp-pattern", "resample a test pattern through a sphere/square warp");
    add_common(warp_cmd, f);
    warp_cmd->add_option("--pattern", f.pattern, "stripes | checker | polar-grid | file");
    warp_cmd->add_option("--input", f.input, "PPM/PGM image for --pattern file");
    warp_cmd->add_option("--resolution", f.resolution, "square side (default: input height for files)");

    auto* gen_cmd = app.add_subcommand("generate", "write a noise-filled representation bundle");
    add_common(gen_cmd, f);

    auto* render_cmd = app.add_subcommand("render", "render frames on a horizontal orbit");
    add_common(render_cmd, f);
    render_cmd->add_option("--bundle", f.bundle, "render a saved bundle instead of synthesizing one");
    render_cmd->add_option("--frames", f.frames, "number of frames");
    render_cmd->add_option("--width", f.width, "image width");
    render_cmd->add_option("--height", f.height, "image height");
    render_cmd->add_option("--steps", f.steps, "samples per ray");

    auto* report_cmd = app.add_subcommand("report", "run the geometric diagnostics");
    add_common(report_cmd, f);
    report_cmd->add_option("--bins", f.bins, "density histogram bins per axis");
    report_cmd->add_option("--samples", f.samples, "Monte Carlo samples");
    report_cmd->add_option("--resolution", f.resolution, "utilization texture resolution");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*warp_cmd)
        {
            if (f.pattern && *f.pattern == "file" && !f.resolution)
                f.resolution = 0;
            WarpPatternResult r = cmd_warp_pattern(resolve(f));
            std::cout << "square_view " << r.square_view.width << "x" << r.square_view.height
                      << ", sphere_view " << r.sphere_view.width << "x" << r.sphere_view.height
                      << ", unreachable texels " << r.unreachable_texels << ", out-of-range sources "
                      << r.out_of_range_sources << "\n";
        }
        else if (*gen_cmd)
        {
            std::cout << "wrote bundle " << cmd_generate(resolve(f)).string() << "\n";
        }
        else if (*render_cmd)
        {
            Config c = resolve(f);
            std::vector<std::filesystem::path> written;
            if (f.bundle)
            {
                LoadedBundle b = load_bundle(*f.bundle);
                int ch = channels(b.rep);
                written = cmd_render_orbit(c, b.rep, config_decoder(c, ch));
            }
            else
                written = cmd_render_orbit(c);
            for (const auto& p : written)
                std::cout << p.string() << "\n";
        }
        else if (*report_cmd)
        {
            ReportResult r = cmd_report(resolve(f));
            for (const auto& name : r.failures)
                std::cerr << "FAIL " << name << "\n";
            std::cout << (r.passed ? "all checks passed" : "some checks failed") << "\n";
            return r.passed ? 0 : 1;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "hyplane: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
