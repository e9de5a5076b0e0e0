#include "obmo/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "obmo/errors.hpp"

namespace obmo {

namespace fs = std::filesystem;

std::vector<std::string> list_frame_ids(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw PathError("not a directory: " + dir.string());
  std::vector<std::string> ids;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      ids.push_back(entry.path().stem().string());
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PathError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PathError("cannot write " + path.string());
  out << content;
  if (!out) throw PathError("write failed: " + path.string());
}

FrameAnnotation load_frame(const fs::path& labels_dir, const fs::path& calib_dir,
                           const std::string& frame_id, std::vector<std::string>& warnings) {
  const fs::path calib_path = calib_dir / (frame_id + ".txt");
  if (!fs::exists(calib_path)) throw PathError("missing calibration " + calib_path.string());
  const Calibration calib = parse_calibration(read_text_file(calib_path));
  FrameAnnotation frame{frame_id, {}, calib.p2(), std::nullopt};
  frame.labels = parse_labels(read_text_file(labels_dir / (frame_id + ".txt")), warnings);
  return frame;
}

}  // namespace obmo
