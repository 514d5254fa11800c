#ifndef PDDLKIT_TESTS_TEST_SUPPORT_HPP_
#define PDDLKIT_TESTS_TEST_SUPPORT_HPP_

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "pddlkit/file_io.hpp"

namespace pddlkit::testing {

inline std::filesystem::path data_dir() { return PDDLKIT_TEST_DATA; }
inline std::filesystem::path corpus(const std::string& name) {
  return data_dir() / "corpus" / name;
}
inline std::filesystem::path fixture(const std::string& name) {
  return data_dir() / "fixtures" / name;
}
inline std::string corpus_text(const std::string& name) {
  return read_file(corpus(name));
}
inline std::string fixture_text(const std::string& name) {
  return read_file(fixture(name));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("pddlkit-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& p) const { return path_ / p; }

 private:
  std::filesystem::path path_;
};

/// Changes the working directory for the lifetime of the object.
class ScopedCwd {
 public:
  explicit ScopedCwd(const std::filesystem::path& dir)
      : old_(std::filesystem::current_path()) {
    std::filesystem::current_path(dir);
  }
  ~ScopedCwd() { std::filesystem::current_path(old_); }

 private:
  std::filesystem::path old_;
};

}  // namespace pddlkit::testing

#endif  // PDDLKIT_TESTS_TEST_SUPPORT_HPP_
