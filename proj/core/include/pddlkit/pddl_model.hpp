#ifndef PDDLKIT_PDDL_MODEL_HPP_
#define PDDLKIT_PDDL_MODEL_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pddlkit/sexpr.hpp"

namespace pddlkit {

inline constexpr std::string_view kObjectType = "object";

struct TypedEntry {
  std::string name;
  /// "object" when the group had no "- type" suffix. For an either-type this
  /// holds the literal "(either ...)" text and `either_types` is filled.
  std::string type;
  std::vector<std::string> either_types;
  Span span;

  bool is_either() const { return !either_types.empty(); }
};

/// "a b - t c - u" style declaration list.
struct TypedList {
  std::vector<TypedEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

/// Parses the typed-list region `nodes` (trivia allowed). A trailing group
/// with no "- type" suffix defaults to "object".
TypedList parse_typed_list(std::span<const SExprNode* const> nodes,
                           Diagnostics& diagnostics);
TypedList parse_typed_list(std::span<const SExprNode* const> nodes);
TypedList parse_typed_list(std::string_view text);

/// Canonical text for a typed list; consecutive entries sharing a type are
/// grouped.
std::string to_pddl(const TypedList& list);

struct PredicateDecl {
  std::string name;
  TypedList parameters;
  /// Verbatim source slice, e.g. "(at ?l - lech ?r - ruffisplisus)".
  std::string signature_text;
  Span span;
};

struct FunctionDecl {
  std::string name;
  TypedList parameters;
  std::string result_type = "number";
  std::string signature_text;
  Span span;
};

struct ActionDecl {
  std::string name;
  TypedList parameters;
  bool durative = false;
  std::optional<SExprNode> duration;
  /// :precondition, or :condition for durative actions.
  std::optional<SExprNode> precondition;
  std::optional<SExprNode> effect;
  Span span;
};

struct DerivedDecl {
  std::string name;
  TypedList parameters;
  std::optional<SExprNode> body;
  Span span;
};

struct PddlDomain {
  std::string name;
  std::vector<std::string> requirements;
  TypedList types;
  TypedList constants;
  std::vector<PredicateDecl> predicates;
  std::vector<FunctionDecl> functions;
  std::vector<ActionDecl> actions;
  std::vector<ActionDecl> durative_actions;
  std::vector<DerivedDecl> derived;
  std::optional<SExprNode> constraints;
};

struct PddlProblem {
  std::string name;
  std::string domain_ref;
  std::vector<std::string> requirements;
  TypedList objects;
  std::vector<SExprNode> init;
  std::optional<Span> init_span;
  std::optional<SExprNode> goal;
  std::optional<SExprNode> constraints;
  std::optional<SExprNode> metric;
};

struct DomainParse {
  PddlDomain domain;
  Diagnostics diagnostics;
};

struct ProblemParse {
  PddlProblem problem;
  Diagnostics diagnostics;
};

enum class FileKind { Domain, Problem, Unknown };

/// Looks at the "(define (domain|problem ...))" header only.
FileKind detect_file_kind(std::string_view text);

DomainParse parse_domain(std::string_view text);
ProblemParse parse_problem(std::string_view text);

bool is_pddl_name(std::string_view text);
bool is_pddl_variable(std::string_view text);
bool is_pddl_number(std::string_view text);

}  // namespace pddlkit

#endif  // PDDLKIT_PDDL_MODEL_HPP_
