#include "pddlkit/snippets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>

#include "pddlkit/file_io.hpp"

namespace pddlkit {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kDescriptionPrefix = "# description:";

constexpr std::string_view kDomainBody = R"((define (domain ${1:domain-name})
  (:requirements :strips :typing)

  (:types
    ${2:type-name} - ${3:object})

  (:predicates
    (${4:pred-name} ?x - ${5:type-name}))

  (:action ${6:action-name}
    :parameters (?x - ${7:type-name})
    :precondition (${8:pred-name} ?x)
    :effect (not (${9:pred-name} ?x)))
))";

constexpr std::string_view kProblemBody = R"((define (problem ${1:problem-name})
  (:domain ${2:domain-name})

  (:objects
    ${3:obj} - ${4:object})

  (:init
    ${5:(pred-name obj)})

  (:goal (and
    ${6:(pred-name obj)}))
))";

constexpr std::string_view kActionBody = R"((:action ${1:action-name}
  :parameters (${2:?x - object})
  :precondition (and ${3:(pred-name ?x)})
  :effect (and ${4:(not (pred-name ?x))})))";

constexpr std::string_view kDurativeActionBody = R"((:durative-action ${1:action-name}
  :parameters (${2:?x - object})
  :duration (= ?duration ${3:1})
  :condition (and (at start ${4:(pred-name ?x)}))
  :effect (and (at end ${5:(not (pred-name ?x))}))))";

std::string stop(int index, std::string_view value) {
  return "${" + std::to_string(index) + ":" + std::string(value) + "}";
}

std::string type_body(int arity) {
  if (arity == 1) return stop(1, "type-name") + " - " + stop(2, "object");
  std::string out;
  for (int i = 1; i <= arity; ++i) {
    if (i > 1) out += '\n';
    out += stop(2 * i - 1, "type-name-" + std::to_string(i)) + " - " +
           stop(2 * i, "object");
  }
  return out;
}

std::string predicate_body(int arity) {
  std::string out = "(" + stop(1, "pred-name");
  for (int i = 0; i < arity; ++i) {
    out += " " + slot_variable(i) + " - " + stop(i + 2, "object");
  }
  return out + ")";
}

std::string function_body(int arity) {
  std::string out = "(" + stop(1, "func-name");
  for (int i = 0; i < arity; ++i) {
    out += " " + slot_variable(i) + " - " + stop(i + 2, "object");
  }
  return out + ") - " + stop(arity + 2, "number");
}

std::string generate(std::string_view base, int arity) {
  if (base == "t") return type_body(arity);
  if (base == "p") return predicate_body(arity);
  return function_body(arity);
}

bool builtin_parametric(std::string_view base) {
  return base == "t" || base == "p" || base == "f";
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

/// Replaces tab stops starting at `pos` until `stop_char` (or the end).
std::string substitute_from(std::string_view body, std::size_t& pos,
                            char stop_char) {
  std::string out;
  while (pos < body.size()) {
    const char c = body[pos];
    if (stop_char != '\0' && c == stop_char) return out;
    if (c == '$' && pos + 1 < body.size() && body[pos + 1] == '{') {
      std::size_t p = pos + 2;
      while (p < body.size() &&
             std::isdigit(static_cast<unsigned char>(body[p]))) {
        ++p;
      }
      if (p > pos + 2 && p < body.size() && (body[p] == ':' || body[p] == '}')) {
        if (body[p] == '}') {
          pos = p + 1;
          continue;
        }
        pos = p + 1;
        out += substitute_from(body, pos, '}');
        if (pos < body.size()) ++pos;  // '}'
        continue;
      }
    }
    out += c;
    ++pos;
  }
  return out;
}

}  // namespace

std::string slot_variable(int index) {
  static constexpr std::string_view kFirst[] = {"?x", "?y", "?z"};
  if (index < 3) return std::string(kFirst[index]);
  return "?x" + std::to_string(index - 2);
}

std::string substitute_defaults(std::string_view body) {
  std::size_t pos = 0;
  return substitute_from(body, pos, '\0');
}

SnippetSet SnippetSet::builtin() {
  SnippetSet set;
  set.snippets_ = {
      {"domain", "domain skeleton", std::string(kDomainBody), false},
      {"problem", "problem skeleton", std::string(kProblemBody), false},
      {"t", "type declaration (t1, t2, ...)", type_body(1), true},
      {"p", "typed predicate declaration (p1, p2, ...)", predicate_body(1),
       true},
      {"f", "typed function declaration (f1, f2, ...)", function_body(1), true},
      {"action", "action skeleton", std::string(kActionBody), false},
      {"durative-action", "durative action skeleton",
       std::string(kDurativeActionBody), false},
  };
  return set;
}

void SnippetSet::add(SnippetDef snippet) {
  auto it = std::find_if(snippets_.begin(), snippets_.end(),
                         [&](const SnippetDef& s) {
                           return s.trigger == snippet.trigger;
                         });
  if (it == snippets_.end()) {
    snippets_.push_back(std::move(snippet));
    return;
  }
  warnings_.push_back({{}, Severity::Warning,
                       "snippet '" + snippet.trigger +
                           "' overrides an existing snippet",
                       "snippet-override"});
  *it = std::move(snippet);
}

void SnippetSet::load_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw SnippetError("snippet directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".snippet") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::string body = read_file(file);
    SnippetDef def;
    def.trigger = file.stem().string();
    if (body.compare(0, kDescriptionPrefix.size(), kDescriptionPrefix) == 0) {
      const auto eol = body.find('\n');
      std::string desc = body.substr(kDescriptionPrefix.size(),
                                     eol == std::string::npos
                                         ? std::string::npos
                                         : eol - kDescriptionPrefix.size());
      desc.erase(0, desc.find_first_not_of(' '));
      def.description = desc;
      body = eol == std::string::npos ? "" : body.substr(eol + 1);
    } else {
      def.description = "user snippet";
    }
    if (!body.empty() && body.back() == '\n') body.pop_back();
    def.body = std::move(body);
    add(std::move(def));
  }
}

const SnippetDef* SnippetSet::find(std::string_view trigger) const {
  for (const auto& s : snippets_) {
    if (s.trigger == trigger) return &s;
  }
  return nullptr;
}

SnippetExpansion expand(std::string_view trigger_text, const SnippetSet& set) {
  auto finish = [](std::string body) {
    SnippetExpansion out;
    out.text = substitute_defaults(body);
    out.template_text = std::move(body);
    return out;
  };

  if (const SnippetDef* exact = set.find(trigger_text)) {
    if (exact->parametric && builtin_parametric(exact->trigger)) {
      return finish(generate(exact->trigger, 1));
    }
    return finish(exact->body);
  }

  std::size_t digits = trigger_text.size();
  while (digits > 0 &&
         std::isdigit(static_cast<unsigned char>(trigger_text[digits - 1]))) {
    --digits;
  }
  const std::string_view base = trigger_text.substr(0, digits);
  const std::string_view suffix = trigger_text.substr(digits);
  if (!suffix.empty() && !base.empty()) {
    const SnippetDef* def = set.find(base);
    if (def != nullptr && def->parametric) {
      int arity = 0;
      auto [ptr, ec] =
          std::from_chars(suffix.data(), suffix.data() + suffix.size(), arity);
      if (ec != std::errc() || arity < 1 || arity > kMaxSnippetArity) {
        throw SnippetError("arity for '" + std::string(base) +
                           "' must be between 1 and " +
                           std::to_string(kMaxSnippetArity) + ", got " +
                           std::string(suffix));
      }
      return finish(generate(base, arity));
    }
  }

  std::string message = "unknown snippet trigger '" + std::string(trigger_text) + "'";
  std::vector<std::string> near;
  for (const auto& s : set.snippets()) {
    const std::string label = s.parametric ? s.trigger + "N" : s.trigger;
    if (edit_distance(trigger_text, s.trigger) <= 2 ||
        (!base.empty() && edit_distance(base, s.trigger) <= 1)) {
      near.push_back(label);
    }
  }
  if (!near.empty()) {
    message += "; did you mean ";
    for (std::size_t i = 0; i < near.size(); ++i) {
      if (i > 0) message += ", ";
      message += near[i];
    }
    message += "?";
  }
  throw SnippetError(message);
}

std::vector<SnippetListing> list_snippets(const SnippetSet& set) {
  std::vector<SnippetListing> out;
  for (const auto& s : set.snippets()) {
    out.push_back({s.parametric ? s.trigger + "1, " + s.trigger + "2, ..."
                                : s.trigger,
                   s.description});
  }
  return out;
}

void export_snippets(const SnippetSet& set, const fs::path& dir) {
  fs::create_directories(dir);
  for (const auto& s : set.snippets()) {
    std::ofstream out(dir / (s.trigger + ".snippet"), std::ios::binary);
    if (!out) throw SnippetError("cannot write into " + dir.string());
    out << kDescriptionPrefix << ' ' << s.description << '\n' << s.body << '\n';
  }
}

}  // namespace pddlkit
