#include "pddlkit/pddl_model.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace pddlkit {

bool is_pddl_name(std::string_view text) {
  if (text.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(text.front())) ||
      static_cast<unsigned char>(text.front()) >= 0x80) {
    return false;
  }
  return std::all_of(text.begin() + 1, text.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return u < 0x80 && (std::isalnum(u) || c == '-' || c == '_');
  });
}

bool is_pddl_variable(std::string_view text) {
  return text.size() > 1 && text.front() == '?' &&
         is_pddl_name(text.substr(1));
}

bool is_pddl_number(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  bool seen_digit = false;
  bool seen_dot = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
    } else if (c == '.' && !seen_dot && seen_digit && i + 1 < text.size()) {
      seen_dot = true;
    } else {
      return false;
    }
  }
  return seen_digit;
}

namespace {

std::vector<const SExprNode*> elements_after_head(const SExprNode& list) {
  auto elems = list.elements();
  if (!elems.empty()) elems.erase(elems.begin());
  return elems;
}

std::string slice(std::string_view text, const Span& span) {
  return std::string(text.substr(span.start, span.size()));
}

void warn(Diagnostics& diags, const Span& span, std::string message,
          std::string code) {
  diags.push_back({span, Severity::Warning, std::move(message),
                   std::move(code)});
}

void error(Diagnostics& diags, const Span& span, std::string message,
           std::string code) {
  diags.push_back({span, Severity::Error, std::move(message),
                   std::move(code)});
}

const SExprNode* find_define(const std::vector<SExprNode>& forest) {
  for (const auto& node : forest) {
    if (node.is_headed_by("define")) return &node;
  }
  return nullptr;
}

/// Returns (keyword, name) of the "(domain x)" / "(problem x)" header.
std::pair<std::string, const SExprNode*> read_header(const SExprNode& define) {
  auto elems = define.elements();
  if (elems.size() < 2 || !elems[1]->is_list()) return {"", nullptr};
  auto header = elems[1]->elements();
  if (header.empty() || !header[0]->is_atom()) return {"", nullptr};
  std::string keyword = header[0]->text;
  std::transform(keyword.begin(), keyword.end(), keyword.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  const SExprNode* name =
      header.size() >= 2 && header[1]->is_atom() ? header[1] : nullptr;
  return {keyword, name};
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

void append(TypedList& into, TypedList from) {
  into.entries.insert(into.entries.end(),
                      std::make_move_iterator(from.entries.begin()),
                      std::make_move_iterator(from.entries.end()));
}

std::vector<std::string> atoms_of(const std::vector<const SExprNode*>& elems,
                                  Diagnostics& diags) {
  std::vector<std::string> out;
  for (const auto* e : elems) {
    if (e->is_atom()) {
      out.push_back(e->text);
    } else {
      warn(diags, e->span, "expected a requirement flag", "unexpected-list");
    }
  }
  return out;
}

/// Typed list whose items are function skeletons "(f ?x - t)".
std::vector<FunctionDecl> parse_functions(
    std::string_view text, const std::vector<const SExprNode*>& elems,
    Diagnostics& diags) {
  std::vector<FunctionDecl> out;
  std::size_t pending_from = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const SExprNode* e = elems[i];
    if (e->is_list()) {
      FunctionDecl decl;
      auto parts = e->elements();
      if (parts.empty() || !parts[0]->is_atom()) {
        warn(diags, e->span, "function declaration needs a name",
             "bad-function");
        continue;
      }
      decl.name = parts[0]->text;
      parts.erase(parts.begin());
      decl.parameters = parse_typed_list(parts, diags);
      decl.signature_text = slice(text, e->span);
      decl.span = e->span;
      out.push_back(std::move(decl));
    } else if (e->text == "-") {
      if (i + 1 >= elems.size() || !elems[i + 1]->is_atom()) {
        error(diags, e->span, "'-' must be followed by a type",
              "dangling-dash");
        continue;
      }
      for (std::size_t k = pending_from; k < out.size(); ++k) {
        out[k].result_type = elems[i + 1]->text;
      }
      pending_from = out.size();
      ++i;
    } else {
      warn(diags, e->span, "unexpected atom in :functions", "unexpected-atom");
    }
  }
  return out;
}

ActionDecl parse_action(const SExprNode& block, bool durative,
                        Diagnostics& diags) {
  ActionDecl action;
  action.durative = durative;
  action.span = block.span;
  auto elems = elements_after_head(block);
  std::size_t i = 0;
  if (i < elems.size() && elems[i]->is_atom() && elems[i]->text[0] != ':') {
    action.name = elems[i++]->text;
  } else {
    error(diags, block.span, "action has no name", "missing-action-name");
  }
  for (; i < elems.size(); ++i) {
    const SExprNode* key = elems[i];
    if (!key->is_atom()) {
      warn(diags, key->span, "expected an action property keyword",
           "unexpected-list");
      continue;
    }
    const SExprNode* value = i + 1 < elems.size() ? elems[i + 1] : nullptr;
    const std::string k = lower(key->text);
    const bool known = k == ":parameters" || k == ":effect" ||
                       (!durative && k == ":precondition") ||
                       (durative && (k == ":condition" || k == ":duration"));
    if (!known) {
      warn(diags, key->span, "unknown action property '" + key->text + "'",
           "unknown-property");
      if (value != nullptr && value->is_list()) ++i;
      continue;
    }
    if (value == nullptr) {
      error(diags, key->span, "'" + key->text + "' has no value",
            "missing-value");
      continue;
    }
    ++i;
    if (k == ":parameters") {
      if (value->is_list()) {
        action.parameters = parse_typed_list(value->elements(), diags);
      } else {
        error(diags, value->span, ":parameters expects a list",
              "bad-parameters");
      }
    } else if (k == ":precondition" || k == ":condition") {
      action.precondition = *value;
    } else if (k == ":effect") {
      action.effect = *value;
    } else {
      action.duration = *value;
    }
  }
  return action;
}

DerivedDecl parse_derived(const SExprNode& block, Diagnostics& diags) {
  DerivedDecl derived;
  derived.span = block.span;
  auto elems = elements_after_head(block);
  if (elems.empty() || !elems[0]->is_list() || elems[0]->elements().empty()) {
    error(diags, block.span, ":derived needs a predicate skeleton",
          "bad-derived");
    return derived;
  }
  auto skeleton = elems[0]->elements();
  derived.name = skeleton[0]->text;
  skeleton.erase(skeleton.begin());
  derived.parameters = parse_typed_list(skeleton, diags);
  if (elems.size() >= 2) derived.body = *elems[1];
  return derived;
}

}  // namespace

TypedList parse_typed_list(std::span<const SExprNode* const> nodes,
                           Diagnostics& diagnostics) {
  TypedList list;
  std::size_t pending_from = 0;
  auto assign_pending = [&](const std::string& type,
                            const std::vector<std::string>& either) {
    for (std::size_t k = pending_from; k < list.entries.size(); ++k) {
      list.entries[k].type = type;
      list.entries[k].either_types = either;
    }
    pending_from = list.entries.size();
  };

  std::vector<const SExprNode*> elems;
  for (const auto* node : nodes) {
    if (!node->is_trivia()) elems.push_back(node);
  }

  for (std::size_t i = 0; i < elems.size(); ++i) {
    const SExprNode* node = elems[i];
    if (node->is_list()) {
      error(diagnostics, node->span, "unexpected list in typed list",
            "unexpected-list");
      continue;
    }
    if (node->text != "-") {
      TypedEntry entry;
      entry.name = node->text;
      entry.type = std::string(kObjectType);
      entry.span = node->span;
      list.entries.push_back(std::move(entry));
      continue;
    }
    if (i + 1 >= elems.size()) {
      error(diagnostics, node->span, "'-' at end of typed list has no type",
            "dangling-dash");
      break;
    }
    const SExprNode* type = elems[++i];
    if (pending_from == list.entries.size()) {
      error(diagnostics, node->span, "'-' has no names to apply to",
            "orphan-type");
      continue;
    }
    if (type->is_atom()) {
      assign_pending(type->text, {});
    } else if (type->is_headed_by("either")) {
      std::vector<std::string> members;
      for (const auto* m : elements_after_head(*type)) {
        if (m->is_atom()) members.push_back(m->text);
      }
      if (members.empty()) {
        error(diagnostics, type->span, "(either) needs at least one type",
              "empty-either");
        assign_pending(std::string(kObjectType), {});
      } else {
        assign_pending(serialize(*type), members);
      }
    } else {
      error(diagnostics, type->span, "expected a type name after '-'",
            "bad-type");
      assign_pending(std::string(kObjectType), {});
    }
  }
  return list;
}

TypedList parse_typed_list(std::span<const SExprNode* const> nodes) {
  Diagnostics ignored;
  return parse_typed_list(nodes, ignored);
}

TypedList parse_typed_list(std::string_view text) {
  auto parsed = parse_sexpr(text);
  std::vector<const SExprNode*> nodes;
  for (const auto& node : parsed.forest) nodes.push_back(&node);
  return parse_typed_list(nodes);
}

std::string to_pddl(const TypedList& list) {
  std::string out;
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += list.entries[i].name;
    const bool last_of_group = i + 1 == list.entries.size() ||
                               list.entries[i + 1].type != list.entries[i].type;
    if (last_of_group) {
      out += " - ";
      out += list.entries[i].type;
    }
  }
  return out;
}

FileKind detect_file_kind(std::string_view text) {
  auto parsed = parse_sexpr(text);
  const SExprNode* define = find_define(parsed.forest);
  if (define == nullptr) return FileKind::Unknown;
  auto [keyword, name] = read_header(*define);
  if (keyword == "domain") return FileKind::Domain;
  if (keyword == "problem") return FileKind::Problem;
  return FileKind::Unknown;
}

DomainParse parse_domain(std::string_view text) {
  DomainParse out;
  auto parsed = parse_sexpr(text);
  out.diagnostics = std::move(parsed.diagnostics);
  Diagnostics& diags = out.diagnostics;
  PddlDomain& domain = out.domain;

  const SExprNode* define = find_define(parsed.forest);
  if (define == nullptr) {
    error(diags, {0, text.size()}, "missing (define (domain ...))",
          "missing-define");
    return out;
  }
  auto [keyword, name] = read_header(*define);
  if (keyword != "domain") {
    error(diags, define->span, "expected a (domain <name>) header",
          "missing-domain-header");
  } else if (name == nullptr) {
    error(diags, define->span, "domain has no name", "missing-name");
  } else {
    domain.name = name->text;
  }

  bool seen_types = false;
  bool seen_constants = false;
  bool seen_predicates = false;
  auto elems = define->elements();
  for (std::size_t i = 2; i < elems.size(); ++i) {
    const SExprNode* block = elems[i];
    const SExprNode* head = block->is_list() ? block->head() : nullptr;
    if (head == nullptr || !head->is_atom()) {
      warn(diags, block->span, "unexpected element in domain body",
           "unexpected-element");
      continue;
    }
    const std::string kind = lower(head->text);
    auto rest = elements_after_head(*block);
    auto note_duplicate = [&](bool& seen) {
      if (seen) {
        warn(diags, block->span, "duplicate " + kind + " block",
             "duplicate-block");
      }
      seen = true;
    };
    if (kind == ":requirements") {
      auto reqs = atoms_of(rest, diags);
      domain.requirements.insert(domain.requirements.end(), reqs.begin(),
                                 reqs.end());
    } else if (kind == ":types") {
      note_duplicate(seen_types);
      append(domain.types, parse_typed_list(rest, diags));
    } else if (kind == ":constants") {
      note_duplicate(seen_constants);
      append(domain.constants, parse_typed_list(rest, diags));
    } else if (kind == ":predicates") {
      note_duplicate(seen_predicates);
      for (const auto* p : rest) {
        auto parts = p->is_list() ? p->elements()
                                  : std::vector<const SExprNode*>{};
        if (parts.empty() || !parts[0]->is_atom()) {
          warn(diags, p->span, "expected a predicate declaration",
               "bad-predicate");
          continue;
        }
        PredicateDecl decl;
        decl.name = parts[0]->text;
        parts.erase(parts.begin());
        decl.parameters = parse_typed_list(parts, diags);
        decl.signature_text = slice(text, p->span);
        decl.span = p->span;
        domain.predicates.push_back(std::move(decl));
      }
    } else if (kind == ":functions") {
      auto fns = parse_functions(text, rest, diags);
      domain.functions.insert(domain.functions.end(), fns.begin(), fns.end());
    } else if (kind == ":action") {
      domain.actions.push_back(parse_action(*block, false, diags));
    } else if (kind == ":durative-action") {
      domain.durative_actions.push_back(parse_action(*block, true, diags));
    } else if (kind == ":derived") {
      domain.derived.push_back(parse_derived(*block, diags));
    } else if (kind == ":constraints") {
      if (!rest.empty()) domain.constraints = *rest.front();
    } else {
      warn(diags, block->span, "unrecognized domain block '" + head->text + "'",
           "unknown-block");
    }
  }

  for (const auto& entry : domain.types.entries) {
    if (entry.is_either()) {
      warn(diags, entry.span,
           "either-type for '" + entry.name + "' is ignored by the type graph",
           "either-type");
    }
  }
  std::stable_sort(diags.begin(), diags.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return a.span.start < b.span.start;
                   });
  return out;
}

ProblemParse parse_problem(std::string_view text) {
  ProblemParse out;
  auto parsed = parse_sexpr(text);
  out.diagnostics = std::move(parsed.diagnostics);
  Diagnostics& diags = out.diagnostics;
  PddlProblem& problem = out.problem;

  const SExprNode* define = find_define(parsed.forest);
  if (define == nullptr) {
    error(diags, {0, text.size()}, "missing (define (problem ...))",
          "missing-define");
    return out;
  }
  auto [keyword, name] = read_header(*define);
  if (keyword != "problem") {
    error(diags, define->span, "expected a (problem <name>) header",
          "missing-problem-header");
  } else if (name == nullptr) {
    error(diags, define->span, "problem has no name", "missing-name");
  } else {
    problem.name = name->text;
  }

  bool seen_init = false;
  auto elems = define->elements();
  for (std::size_t i = 2; i < elems.size(); ++i) {
    const SExprNode* block = elems[i];
    const SExprNode* head = block->is_list() ? block->head() : nullptr;
    if (head == nullptr || !head->is_atom()) {
      warn(diags, block->span, "unexpected element in problem body",
           "unexpected-element");
      continue;
    }
    const std::string kind = lower(head->text);
    auto rest = elements_after_head(*block);
    if (kind == ":domain") {
      if (!rest.empty() && rest[0]->is_atom()) {
        problem.domain_ref = rest[0]->text;
      } else {
        error(diags, block->span, ":domain needs a name", "missing-name");
      }
    } else if (kind == ":requirements") {
      auto reqs = atoms_of(rest, diags);
      problem.requirements.insert(problem.requirements.end(), reqs.begin(),
                                  reqs.end());
    } else if (kind == ":objects") {
      append(problem.objects, parse_typed_list(rest, diags));
    } else if (kind == ":init") {
      if (seen_init) {
        warn(diags, block->span, "duplicate :init block", "duplicate-block");
      } else {
        problem.init_span = block->span;
      }
      seen_init = true;
      for (const auto* fact : rest) {
        if (fact->is_list()) {
          problem.init.push_back(*fact);
        } else {
          warn(diags, fact->span, "init facts must be lists",
               "unexpected-atom");
        }
      }
    } else if (kind == ":goal") {
      if (!rest.empty()) problem.goal = *rest.front();
      if (rest.size() > 1) {
        warn(diags, rest[1]->span, ":goal takes a single condition",
             "extra-goal");
      }
    } else if (kind == ":constraints") {
      if (!rest.empty()) problem.constraints = *rest.front();
    } else if (kind == ":metric") {
      problem.metric = *block;
    } else {
      warn(diags, block->span,
           "unrecognized problem block '" + head->text + "'", "unknown-block");
    }
  }
  if (problem.domain_ref.empty()) {
    warn(diags, define->span, "problem does not name its domain",
         "missing-domain");
  }
  if (!problem.goal) {
    warn(diags, define->span, "problem has no :goal", "missing-goal");
  }
  std::stable_sort(diags.begin(), diags.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) {
                     return a.span.start < b.span.start;
                   });
  return out;
}

}  // namespace pddlkit
