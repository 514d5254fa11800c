#include "pddlkit/file_io.hpp"

#include <unistd.h>

#include <cerrno>
#include <fstream>
#include <iterator>
#include <system_error>

namespace pddlkit {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw fs::filesystem_error("cannot open for reading", path,
                               std::make_error_code(std::errc::io_error));
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  fs::path temp = path;
  temp += ".tmp-" + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw fs::filesystem_error("cannot open for writing", temp,
                                 std::make_error_code(std::errc::io_error));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw fs::filesystem_error("write failed", temp,
                                 std::make_error_code(std::errc::io_error));
    }
  }
  std::error_code ec;
  // Keep the permissions of the file being replaced.
  if (fs::exists(path, ec)) {
    fs::permissions(temp, fs::status(path).permissions(), ec);
  }
  fs::rename(temp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw fs::filesystem_error("rename failed", temp, path, ec);
  }
}

}  // namespace pddlkit
