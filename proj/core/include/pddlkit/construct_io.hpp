#ifndef PDDLKIT_CONSTRUCT_IO_HPP_
#define PDDLKIT_CONSTRUCT_IO_HPP_

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pddlkit/sexpr.hpp"

namespace pddlkit {

class ConstructError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blocks pulled out of one source text. Spans index into `source`.
struct ConstructSet {
  std::string source;
  std::vector<SExprNode> blocks;

  std::string text_of(std::size_t i) const {
    const Span& s = blocks.at(i).span;
    return source.substr(s.start, s.size());
  }
};

ConstructSet read_construct_text(std::string_view keyword, std::string text);

/// Every block headed by `keyword` in `file`, in document order.
ConstructSet read_construct(std::string_view keyword,
                            const std::filesystem::path& file);

/// Returns `text` with each construct appended, in order, as the last child
/// of the first block headed by `keyword`. Each goes on its own line,
/// indented like the block's last existing child. No other byte changes.
std::string add_construct_text(std::string_view text, std::string_view keyword,
                               std::span<const SExprNode> constructs);

enum class WriteMode { InPlace, DryRun };

/// File version of add_construct_text. With WriteMode::InPlace the file is
/// replaced atomically.
std::string add_construct(const std::filesystem::path& file,
                          std::string_view keyword,
                          std::span<const SExprNode> constructs,
                          WriteMode mode = WriteMode::InPlace);

/// Parses construct text such as "(hungry gisela) (at a b)" into nodes.
/// Throws ConstructError when the text is not balanced.
std::vector<SExprNode> parse_constructs(std::string_view text);

}  // namespace pddlkit

#endif  // PDDLKIT_CONSTRUCT_IO_HPP_
