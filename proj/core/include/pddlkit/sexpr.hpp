#ifndef PDDLKIT_SEXPR_HPP_
#define PDDLKIT_SEXPR_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pddlkit {

/// Half-open byte range [start, end) into a source text.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  constexpr std::size_t size() const { return end - start; }
  constexpr bool empty() const { return start == end; }
  constexpr bool contains(std::size_t offset) const {
    return offset >= start && offset < end;
  }
  constexpr bool overlaps(const Span& other) const {
    return start < other.end && other.start < end;
  }
  friend constexpr bool operator==(const Span&, const Span&) = default;
};

enum class Severity { Error, Warning };

struct ParseDiagnostic {
  Span span;
  Severity severity = Severity::Error;
  std::string message;
  /// Stable short identifier, e.g. "unclosed-list".
  std::string code;
};

using Diagnostics = std::vector<ParseDiagnostic>;

std::string_view to_string(Severity severity);

bool has_errors(std::span<const ParseDiagnostic> diagnostics);

enum class NodeKind { Atom, List, Comment, Whitespace };

/// Concrete-syntax node. Atoms, comments and whitespace keep their verbatim
/// text; lists keep every child, trivia included, so that writing a forest
/// back out reproduces the input exactly.
struct SExprNode {
  NodeKind kind = NodeKind::Atom;
  std::string text;
  std::vector<SExprNode> children;
  Span span;
  /// False for a list that reached end of input without its ')'.
  bool closed = true;

  bool is_atom() const { return kind == NodeKind::Atom; }
  bool is_list() const { return kind == NodeKind::List; }
  bool is_trivia() const {
    return kind == NodeKind::Comment || kind == NodeKind::Whitespace;
  }

  /// Non-trivia children in order.
  std::vector<const SExprNode*> elements() const;
  /// First non-trivia child, or nullptr.
  const SExprNode* head() const;
  /// True when this is a list whose head is an atom equal to `keyword`
  /// (ASCII case-insensitive).
  bool is_headed_by(std::string_view keyword) const;

  static SExprNode atom(std::string text);
  static SExprNode whitespace(std::string text);
  static SExprNode list(std::vector<SExprNode> children);
};

struct ParseResult {
  std::vector<SExprNode> forest;
  Diagnostics diagnostics;
};

/// Reads `text` into a lossless forest. Never fails: an unclosed list is
/// closed at end of input and a stray ')' becomes an atom, each with an
/// Error diagnostic.
ParseResult parse_sexpr(std::string_view text);

std::string serialize(std::span<const SExprNode> forest);
std::string serialize(const SExprNode& node);

/// Every list (depth-first, document order) headed by `keyword`.
/// Matching is ASCII case-insensitive.
std::vector<const SExprNode*> find_blocks(std::span<const SExprNode> forest,
                                          std::string_view keyword);

bool iequals(std::string_view a, std::string_view b);

/// Maps byte offsets to 1-based line and byte column.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text);

  struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
  };

  Position position(std::size_t offset) const;
  std::size_t line_start(std::size_t line) const;
  std::size_t line_count() const { return starts_.size(); }

 private:
  std::vector<std::size_t> starts_;
};

}  // namespace pddlkit

#endif  // PDDLKIT_SEXPR_HPP_
