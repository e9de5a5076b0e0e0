#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "obmo/label_io.hpp"

namespace obmo {

// Sorted stems of the `.txt` files in `dir`. Throws PathError.
std::vector<std::string> list_frame_ids(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

// `<labels_dir>/<id>.txt` plus the P2 camera of `<calib_dir>/<id>.txt`.
FrameAnnotation load_frame(const std::filesystem::path& labels_dir,
                           const std::filesystem::path& calib_dir,
                           const std::string& frame_id,
                           std::vector<std::string>& warnings);

}  // namespace obmo
