#ifndef PDDLKIT_FILE_IO_HPP_
#define PDDLKIT_FILE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace pddlkit {

/// Whole-file read; throws std::filesystem::filesystem_error on failure.
std::string read_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it over `path`, so readers
/// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view contents);

}  // namespace pddlkit

#endif  // PDDLKIT_FILE_IO_HPP_
