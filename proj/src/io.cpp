#include "gnflow/io.hpp"

#include <cstdio>
#include <fstream>

#include "gnflow/errors.hpp"

namespace gnflow {

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::config_error, "cannot write " + tmp.string());
    out << contents;
    if (!out.good())
      fail(ErrorKind::config_error, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[40];
  // 17 significant digits round-trips any double.
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace gnflow
