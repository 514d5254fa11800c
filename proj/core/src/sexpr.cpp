#include "pddlkit/sexpr.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace pddlkit {

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

bool has_errors(std::span<const ParseDiagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const ParseDiagnostic& d) {
                       return d.severity == Severity::Error;
                     });
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto ca = static_cast<unsigned char>(a[i]);
    auto cb = static_cast<unsigned char>(b[i]);
    if (std::tolower(ca) != std::tolower(cb)) return false;
  }
  return true;
}

std::vector<const SExprNode*> SExprNode::elements() const {
  std::vector<const SExprNode*> out;
  for (const auto& child : children) {
    if (!child.is_trivia()) out.push_back(&child);
  }
  return out;
}

const SExprNode* SExprNode::head() const {
  for (const auto& child : children) {
    if (!child.is_trivia()) return &child;
  }
  return nullptr;
}

bool SExprNode::is_headed_by(std::string_view keyword) const {
  if (!is_list()) return false;
  const SExprNode* h = head();
  return h != nullptr && h->is_atom() && iequals(h->text, keyword);
}

SExprNode SExprNode::atom(std::string text) {
  SExprNode node;
  node.kind = NodeKind::Atom;
  node.text = std::move(text);
  return node;
}

SExprNode SExprNode::whitespace(std::string text) {
  SExprNode node;
  node.kind = NodeKind::Whitespace;
  node.text = std::move(text);
  return node;
}

SExprNode SExprNode::list(std::vector<SExprNode> children) {
  SExprNode node;
  node.kind = NodeKind::List;
  node.children = std::move(children);
  return node;
}

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_delimiter(char c) {
  return is_space(c) || c == '(' || c == ')' || c == ';';
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  ParseResult run() {
    ParseResult result;
    while (pos_ < text_.size()) {
      result.forest.push_back(read_node());
    }
    result.diagnostics = std::move(diagnostics_);
    std::stable_sort(result.diagnostics.begin(), result.diagnostics.end(),
                     [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                       return a.span.start < b.span.start;
                     });
    return result;
  }

 private:
  SExprNode read_node() {
    const char c = text_[pos_];
    if (is_space(c)) return read_while(NodeKind::Whitespace, is_space);
    if (c == ';') {
      return read_while(NodeKind::Comment,
                        [](char ch) { return ch != '\n' && ch != '\r'; });
    }
    if (c == '(') return read_list();
    if (c == ')') {
      // Inside a list the caller consumes ')', so this is always stray.
      SExprNode stray = SExprNode::atom(")");
      stray.span = {pos_, pos_ + 1};
      diagnostics_.push_back({stray.span, Severity::Error,
                              "unmatched ')'", "stray-close"});
      ++pos_;
      return stray;
    }
    return read_while(NodeKind::Atom,
                      [](char ch) { return !is_delimiter(ch); });
  }

  template <typename Pred>
  SExprNode read_while(NodeKind kind, Pred pred) {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < text_.size() && pred(text_[pos_])) ++pos_;
    SExprNode node;
    node.kind = kind;
    node.text = std::string(text_.substr(start, pos_ - start));
    node.span = {start, pos_};
    return node;
  }

  SExprNode read_list() {
    SExprNode list;
    list.kind = NodeKind::List;
    const std::size_t start = pos_++;
    while (pos_ < text_.size() && text_[pos_] != ')') {
      list.children.push_back(read_node());
    }
    if (pos_ < text_.size()) {
      ++pos_;  // ')'
    } else {
      list.closed = false;
      diagnostics_.push_back({{start, pos_},
                              Severity::Error,
                              "'(' is never closed",
                              "unclosed-list"});
    }
    list.span = {start, pos_};
    return list;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Diagnostics diagnostics_;
};

void append_node(std::string& out, const SExprNode& node) {
  if (node.kind != NodeKind::List) {
    out += node.text;
    return;
  }
  out += '(';
  for (const auto& child : node.children) append_node(out, child);
  if (node.closed) out += ')';
}

void collect_blocks(const SExprNode& node, std::string_view keyword,
                    std::vector<const SExprNode*>& out) {
  if (!node.is_list()) return;
  if (node.is_headed_by(keyword)) out.push_back(&node);
  for (const auto& child : node.children) collect_blocks(child, keyword, out);
}

}  // namespace

ParseResult parse_sexpr(std::string_view text) { return Reader(text).run(); }

std::string serialize(std::span<const SExprNode> forest) {
  std::string out;
  for (const auto& node : forest) append_node(out, node);
  return out;
}

std::string serialize(const SExprNode& node) {
  std::string out;
  append_node(out, node);
  return out;
}

std::vector<const SExprNode*> find_blocks(std::span<const SExprNode> forest,
                                          std::string_view keyword) {
  std::vector<const SExprNode*> out;
  for (const auto& node : forest) collect_blocks(node, keyword, out);
  return out;
}

LineIndex::LineIndex(std::string_view text) {
  starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') starts_.push_back(i + 1);
  }
}

LineIndex::Position LineIndex::position(std::size_t offset) const {
  auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
  const auto line = static_cast<std::size_t>(it - starts_.begin());
  return {line, offset - starts_[line - 1] + 1};
}

std::size_t LineIndex::line_start(std::size_t line) const {
  return starts_.at(line - 1);
}

}  // namespace pddlkit
