#include "hyplane/grid_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "hyplane/atomic_file.hpp"
#include "hyplane/error.hpp"

namespace hyplane
{
namespace
{
constexpr std::array<char, 4> kMagic{'H', 'Y', 'P', 'L'};
// Guards against absurd headers before allocating.
constexpr std::uint64_t kMaxValues = std::uint64_t{1} << 32;

void put_u32(std::ostream& out, std::uint32_t v)
{
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in)
{
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
        throw Error("truncated HYPL header");
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16)
           | (std::uint32_t{b[3]} << 24);
}
}  // namespace

void write_grid(std::ostream& out, const FeatureGrid& grid)
{
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kHyplVersion);
    put_u32(out, static_cast<std::uint32_t>(grid.height()));
    put_u32(out, static_cast<std::uint32_t>(grid.width()));
    put_u32(out, static_cast<std::uint32_t>(grid.channels()));
    for (float v : grid.values())
        put_u32(out, std::bit_cast<std::uint32_t>(v));
    if (!out)
        throw Error("failed writing HYPL grid");
}

FeatureGrid read_grid(std::istream& in)
{
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw Error("not a HYPL grid (bad magic)");
    std::uint32_t version = get_u32(in);
    if (version != kHyplVersion)
        throw Error("unsupported HYPL version " + std::to_string(version));
    std::uint32_t h = get_u32(in), w = get_u32(in), c = get_u32(in);
    std::uint64_t count = std::uint64_t{h} * w * c;
    if (h > 1u << 20 || w > 1u << 20 || c > 1u << 16 || count > kMaxValues)
        throw Error("HYPL grid dimensions too large");
    std::vector<float> data(count);
    for (auto& v : data)
        v = std::bit_cast<float>(get_u32(in));
    return FeatureGrid(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c), std::move(data));
}

void save_grid(const std::filesystem::path& path, const FeatureGrid& grid)
{
    std::ostringstream buf(std::ios::binary);
    write_grid(buf, grid);
    write_file_atomic(path, buf.view());
}

FeatureGrid load_grid(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open grid file " + path.string());
    return read_grid(in);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw Error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

}  // namespace hyplane
