#pragma once

#include <filesystem>
#include <string_view>

namespace hyplane
{

//! Writes bytes to path via a temporary file in the same directory and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace hyplane
