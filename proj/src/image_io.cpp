#include "hyplane/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

#include "hyplane/atomic_file.hpp"
#include "hyplane/error.hpp"

namespace hyplane
{

std::uint8_t quantize(double v)
{
    double q = std::floor(v * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

Image8 to_rgb8(const RenderedImage& img)
{
    Image8 out{img.width, img.height, 3, {}};
    out.pixels.reserve(img.rgb.size());
    for (double v : img.rgb)
        out.pixels.push_back(quantize(v));
    return out;
}

Image8 to_alpha8(const RenderedImage& img)
{
    Image8 out{img.width, img.height, 1, {}};
    out.pixels.reserve(img.alpha.size());
    for (double v : img.alpha)
        out.pixels.push_back(quantize(v));
    return out;
}

std::string encode_pnm(const Image8& img)
{
    if (img.channels != 1 && img.channels != 3)
        throw Error("PNM images have 1 or 3 channels");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw Error("pixel buffer does not match image size");
    std::string out = (img.channels == 3 ? "P6\n" : "P5\n") + std::to_string(img.width) + " "
                      + std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

Image8 decode_pnm(const std::string& bytes)
{
    std::size_t pos = 0;
    auto skip_space = [&] {
        while (pos < bytes.size())
        {
            if (bytes[pos] == '#')
                while (pos < bytes.size() && bytes[pos] != '\n')
                    ++pos;
            else if (std::isspace(static_cast<unsigned char>(bytes[pos])))
                ++pos;
            else
                break;
        }
    };
    auto read_int = [&] {
        skip_space();
        std::size_t start = pos;
        while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos])))
            ++pos;
        if (start == pos || pos - start > 9)
            throw Error("malformed PNM header");
        return std::stoi(bytes.substr(start, pos - start));
    };
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '6' && bytes[1] != '5'))
        throw Error("not a binary PPM/PGM file");
    Image8 img;
    img.channels = bytes[1] == '6' ? 3 : 1;
    pos = 2;
    img.width = read_int();
    img.height = read_int();
    int maxval = read_int();
    if (maxval != 255 || img.width < 1 || img.height < 1)
        throw Error("only 8-bit PNM images are supported");
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw Error("malformed PNM header");
    ++pos;
    std::size_t n = static_cast<std::size_t>(img.width) * img.height * img.channels;
    if (bytes.size() - pos < n)
        throw Error("truncated PNM pixel data");
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
    return img;
}

void save_pnm(const std::filesystem::path& path, const Image8& img)
{
    write_file_atomic(path, encode_pnm(img));
}

Image8 load_pnm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open image " + path.string());
    return decode_pnm(std::string(std::istreambuf_iterator<char>(in), {}));
}

}  // namespace hyplane
