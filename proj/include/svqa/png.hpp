#pragma once

#include <filesystem>

#include "svqa/scene.hpp"

namespace svqa {

// Minimal RGB8 PNG writer (single IDAT, filter 0). For inspection only; the
// canonical image representation stays raw row-major RGB bytes.
void write_png(const Image& image, const std::filesystem::path& path);

}  // namespace svqa
