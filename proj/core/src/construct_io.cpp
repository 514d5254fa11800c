#include "pddlkit/construct_io.hpp"

#include "pddlkit/file_io.hpp"

namespace pddlkit {

ConstructSet read_construct_text(std::string_view keyword, std::string text) {
  ConstructSet set;
  set.source = std::move(text);
  auto parsed = parse_sexpr(set.source);
  for (const SExprNode* block : find_blocks(parsed.forest, keyword)) {
    set.blocks.push_back(*block);
  }
  return set;
}

ConstructSet read_construct(std::string_view keyword,
                            const std::filesystem::path& file) {
  return read_construct_text(keyword, read_file(file));
}

std::string add_construct_text(std::string_view text, std::string_view keyword,
                               std::span<const SExprNode> constructs) {
  auto parsed = parse_sexpr(text);
  if (parsed.forest.empty()) {
    throw ConstructError("nothing to edit: the file is empty");
  }
  auto blocks = find_blocks(parsed.forest, keyword);
  if (blocks.empty()) {
    throw ConstructError("no block headed by '" + std::string(keyword) + "'");
  }
  const SExprNode& block = *blocks.front();
  if (!block.closed) {
    throw ConstructError("the '" + std::string(keyword) +
                         "' block is never closed");
  }
  if (constructs.empty()) return std::string(text);

  // Anchor after the last non-whitespace child, so a trailing comment stays
  // on its own line.
  const SExprNode* last = nullptr;
  const SExprNode* last_element = nullptr;
  for (const auto& child : block.children) {
    if (child.kind == NodeKind::Whitespace) continue;
    last = &child;
    if (!child.is_trivia()) last_element = &child;
  }
  const std::size_t insert_at = last->span.end;

  const std::size_t column_from = last_element->span.start;
  const std::size_t line_begin = text.rfind('\n', column_from == 0 ? 0 : column_from - 1);
  const std::size_t indent_start = line_begin == std::string_view::npos ? 0 : line_begin + 1;
  std::string indent;
  for (std::size_t i = indent_start; i < column_from; ++i) {
    indent += text[i] == '\t' ? '\t' : ' ';
  }

  std::string inserted;
  for (const auto& construct : constructs) {
    inserted += '\n';
    inserted += indent;
    inserted += serialize(construct);
  }

  std::string out;
  out.reserve(text.size() + inserted.size());
  out.append(text.substr(0, insert_at));
  out.append(inserted);
  out.append(text.substr(insert_at));
  return out;
}

std::string add_construct(const std::filesystem::path& file,
                          std::string_view keyword,
                          std::span<const SExprNode> constructs,
                          WriteMode mode) {
  const std::string original = read_file(file);
  std::string updated = add_construct_text(original, keyword, constructs);
  if (mode == WriteMode::InPlace && updated != original) {
    write_file_atomic(file, updated);
  }
  return updated;
}

std::vector<SExprNode> parse_constructs(std::string_view text) {
  auto parsed = parse_sexpr(text);
  if (has_errors(parsed.diagnostics)) {
    throw ConstructError("construct text is not balanced: " +
                         parsed.diagnostics.front().message);
  }
  std::vector<SExprNode> out;
  for (auto& node : parsed.forest) {
    if (!node.is_trivia()) out.push_back(std::move(node));
  }
  return out;
}

}  // namespace pddlkit
