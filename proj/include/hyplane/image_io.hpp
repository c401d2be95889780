#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hyplane/render.hpp"

namespace hyplane
{

//! 8-bit raster; channels is 3 (PPM P6) or 1 (PGM P5).
struct Image8
{
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<std::uint8_t> pixels;
};

//! floor(v * 255 + 0.5), clamped to [0, 255].
std::uint8_t quantize(double v);

Image8 to_rgb8(const RenderedImage& img);
Image8 to_alpha8(const RenderedImage& img);

std::string encode_pnm(const Image8& img);
//! Parses binary P6/P5 with maxval 255 (comments allowed in the header).
Image8 decode_pnm(const std::string& bytes);

void save_pnm(const std::filesystem::path& path, const Image8& img);
Image8 load_pnm(const std::filesystem::path& path);

}  // namespace hyplane
