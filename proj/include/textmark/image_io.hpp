#pragma once

#include <filesystem>

#include "textmark/image.hpp"

namespace textmark {

// PNG/JPEG (anything OpenCV decodes). Throws IoError.
RgbImage load_image(const std::filesystem::path& path);
// Format from the extension; PNG is lossless. Throws IoError.
void save_image(const RgbImage& image, const std::filesystem::path& path);

}  // namespace textmark
