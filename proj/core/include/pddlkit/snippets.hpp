#ifndef PDDLKIT_SNIPPETS_HPP_
#define PDDLKIT_SNIPPETS_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pddlkit/sexpr.hpp"

namespace pddlkit {

/// A trigger-keyed template. Bodies use "${k:default}" tab stops.
/// Parametric snippets take an arity suffix ("p2") and have their body
/// generated from it.
struct SnippetDef {
  std::string trigger;
  std::string description;
  std::string body;
  bool parametric = false;
};

class SnippetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxSnippetArity = 26;

class SnippetSet {
 public:
  /// domain, problem, t, p, f, action, durative-action.
  static SnippetSet builtin();

  /// Adds or replaces by trigger. Replacing a trigger records a Warning.
  void add(SnippetDef snippet);

  /// Loads every "<trigger>.snippet" file in `dir`. A leading line
  /// "# description: ..." sets the description.
  void load_directory(const std::filesystem::path& dir);

  const std::vector<SnippetDef>& snippets() const { return snippets_; }
  const Diagnostics& warnings() const { return warnings_; }
  const SnippetDef* find(std::string_view trigger) const;

 private:
  std::vector<SnippetDef> snippets_;
  Diagnostics warnings_;
};

struct SnippetExpansion {
  /// Body with "${k:default}" tab stops intact.
  std::string template_text;
  /// Body with every tab stop replaced by its default.
  std::string text;
};

/// Expands "p2", "action", ... Unknown triggers throw SnippetError listing
/// near matches; an arity outside 1..26 throws as well.
SnippetExpansion expand(std::string_view trigger_text, const SnippetSet& set);

struct SnippetListing {
  std::string trigger;
  std::string description;
};

std::vector<SnippetListing> list_snippets(const SnippetSet& set);

/// "${1:pred-name}" -> "pred-name", "${2}" -> "".
std::string substitute_defaults(std::string_view body);

/// ?x, ?y, ?z, then ?x1, ?x2, ... for slot index 0, 1, 2, 3, ...
std::string slot_variable(int index);

/// Writes each snippet as "<trigger>.snippet" under `dir`. Parametric
/// snippets are written with their arity-1 body.
void export_snippets(const SnippetSet& set, const std::filesystem::path& dir);

}  // namespace pddlkit

#endif  // PDDLKIT_SNIPPETS_HPP_
