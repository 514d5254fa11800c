#ifndef PDDLKIT_HIGHLIGHT_HPP_
#define PDDLKIT_HIGHLIGHT_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pddlkit/sexpr.hpp"

namespace pddlkit {

/// Closed set of highlighting scopes. Whitespace is reported as
/// Punctuation. Unscoped marks text that fits no grammar rule where it
/// appears.
enum class Scope {
  Keyword,
  Variable,
  Name,
  TypeName,
  Number,
  Comment,
  Requirement,
  Punctuation,
  Unscoped,
};

std::string_view to_string(Scope scope);
std::optional<Scope> scope_from_string(std::string_view name);

struct Token {
  Span span;
  Scope scope = Scope::Unscoped;

  friend bool operator==(const Token&, const Token&) = default;
};

/// Scopes every byte of `text`. The result tiles [0, text.size()) with
/// disjoint, ordered spans.
std::vector<Token> tokenize(std::string_view text);

/// Maximal runs of Unscoped tokens; runs separated only by whitespace are
/// merged. `text` is needed to tell whitespace apart from punctuation.
std::vector<Span> invalid_regions(std::span<const Token> tokens,
                                  std::string_view text);

/// JSON array of {"start","end","scope","text"} records sorted by start.
std::string emit_tokens_json(std::span<const Token> tokens,
                             std::string_view text);

/// Standalone HTML page; one <span> per scoped token and one
/// class="unscoped" span per invalid region.
std::string render_html(std::span<const Token> tokens, std::string_view text,
                        std::string_view title = "PDDL");

}  // namespace pddlkit

#endif  // PDDLKIT_HIGHLIGHT_HPP_
