#include "pddlkit/highlight.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "pddlkit/pddl_model.hpp"

namespace pddlkit {

namespace {

constexpr std::array<std::pair<Scope, std::string_view>, 9> kScopeNames = {{
    {Scope::Keyword, "Keyword"},
    {Scope::Variable, "Variable"},
    {Scope::Name, "Name"},
    {Scope::TypeName, "TypeName"},
    {Scope::Number, "Number"},
    {Scope::Comment, "Comment"},
    {Scope::Requirement, "Requirement"},
    {Scope::Punctuation, "Punctuation"},
    {Scope::Unscoped, "Unscoped"},
}};

constexpr std::array<std::string_view, 21> kRequirements = {
    ":strips",
    ":typing",
    ":negative-preconditions",
    ":disjunctive-preconditions",
    ":equality",
    ":existential-preconditions",
    ":universal-preconditions",
    ":quantified-preconditions",
    ":conditional-effects",
    ":fluents",
    ":numeric-fluents",
    ":object-fluents",
    ":adl",
    ":durative-actions",
    ":duration-inequalities",
    ":continuous-effects",
    ":derived-predicates",
    ":timed-initial-literals",
    ":preferences",
    ":constraints",
    ":action-costs",
};

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_whitespace_text(std::string_view text) {
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  });
}

using Vars = std::set<std::string, std::less<>>;

enum class FileKind { Domain, Problem, Unknown };

class Scoper;

/// Walks the children of one list, emitting its parentheses and any
/// trivia between the elements handed out by next().
class ListWalker {
 public:
  ListWalker(Scoper& scoper, const SExprNode& list);

  const SExprNode* next();
  const SExprNode* peek() const;
  /// Marks every remaining element Unscoped and emits the closing paren.
  void finish();

 private:
  Scoper& scoper_;
  const SExprNode& list_;
  std::size_t index_ = 0;
};

class Scoper {
 public:
  explicit Scoper(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    auto parsed = parse_sexpr(text_);
    for (const auto& node : parsed.forest) {
      if (node.is_trivia()) {
        trivia(node);
      } else if (node.is_headed_by("define")) {
        define(node);
      } else {
        invalid(node);
      }
    }
    return std::move(tokens_);
  }

  void emit(const Span& span, Scope scope) {
    if (!span.empty()) tokens_.push_back({span, scope});
  }

  void trivia(const SExprNode& node) {
    emit(node.span, node.kind == NodeKind::Comment ? Scope::Comment
                                                   : Scope::Punctuation);
  }

  void open(const SExprNode& list) {
    emit({list.span.start, list.span.start + 1},
         list.closed ? Scope::Punctuation : Scope::Unscoped);
  }

  void close(const SExprNode& list) {
    if (list.closed) emit({list.span.end - 1, list.span.end}, Scope::Punctuation);
  }

  /// Whole subtree is out of place; only trivia keeps its scope.
  void invalid(const SExprNode& node) {
    if (node.is_trivia()) {
      trivia(node);
      return;
    }
    if (node.is_atom()) {
      emit(node.span, Scope::Unscoped);
      return;
    }
    emit({node.span.start, node.span.start + 1}, Scope::Unscoped);
    for (const auto& child : node.children) invalid(child);
    if (node.closed) emit({node.span.end - 1, node.span.end}, Scope::Unscoped);
  }

  void atom_if(const SExprNode* node, bool ok, Scope scope) {
    if (node == nullptr) return;
    if (ok && node->is_atom()) {
      emit(node->span, scope);
    } else {
      invalid(*node);
    }
  }

 private:
  // ---- file structure ------------------------------------------------------

  void define(const SExprNode& list) {
    ListWalker w(*this, list);
    emit(w.next()->span, Scope::Keyword);
    FileKind kind = FileKind::Unknown;
    if (const SExprNode* header = w.next()) {
      const bool is_domain = header->is_headed_by("domain");
      const bool is_problem = header->is_headed_by("problem");
      if ((is_domain || is_problem) && header->elements().size() >= 2) {
        kind = is_domain ? FileKind::Domain : FileKind::Problem;
        ListWalker h(*this, *header);
        emit(h.next()->span, Scope::Keyword);
        const SExprNode* name = h.next();
        atom_if(name, is_pddl_name(name->text), Scope::Name);
        h.finish();
      } else {
        invalid(*header);
      }
    }
    while (const SExprNode* block = w.next()) this->block(*block, kind);
    w.finish();
  }

  void block(const SExprNode& node, FileKind kind) {
    const SExprNode* head = node.is_list() ? node.head() : nullptr;
    if (head == nullptr || !head->is_atom()) {
      invalid(node);
      return;
    }
    const std::string key = lower(head->text);
    const bool domain_ok = kind != FileKind::Problem;
    const bool problem_ok = kind != FileKind::Domain;

    if (key == ":requirements") {
      requirements_block(node);
    } else if (key == ":types" && domain_ok) {
      typed_list_block(node, Scope::TypeName);
    } else if (key == ":constants" && domain_ok) {
      typed_list_block(node, Scope::Name);
    } else if (key == ":predicates" && domain_ok) {
      predicates_block(node);
    } else if (key == ":functions" && domain_ok) {
      functions_block(node);
    } else if (key == ":action" && domain_ok) {
      action_block(node, false);
    } else if (key == ":durative-action" && domain_ok) {
      action_block(node, true);
    } else if (key == ":derived" && domain_ok) {
      derived_block(node);
    } else if (key == ":constraints") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* body = w.next()) constraint_gd(*body, {});
      w.finish();
    } else if (key == ":domain" && problem_ok) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      const SExprNode* name = w.next();
      atom_if(name, name != nullptr && is_pddl_name(name->text), Scope::Name);
      w.finish();
    } else if (key == ":objects" && problem_ok) {
      typed_list_block(node, Scope::Name);
    } else if (key == ":init" && problem_ok) {
      init_block(node);
    } else if (key == ":goal" && problem_ok) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* goal = w.next()) gd(*goal, {});
      w.finish();
    } else if (key == ":metric" && problem_ok) {
      metric_block(node);
    } else {
      invalid(node);
    }
  }

  void requirements_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    while (const SExprNode* req = w.next()) {
      const bool known =
          req->is_atom() &&
          std::find(kRequirements.begin(), kRequirements.end(),
                    lower(req->text)) != kRequirements.end();
      if (known) requirements_.insert(lower(req->text));
      atom_if(req, known, Scope::Requirement);
    }
    w.finish();
  }

  bool has_requirement(std::string_view req) const {
    return requirements_.count(std::string(req)) != 0;
  }

  void typed_list_block(const SExprNode& node, Scope item_scope) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    typed_list(w, item_scope, nullptr);
    w.finish();
  }

  /// Consumes the rest of `w` as a typed list. Items are variables when
  /// `item_scope` is Variable, otherwise names. Bound variables are added
  /// to `bind`.
  void typed_list(ListWalker& w, Scope item_scope, Vars* bind) {
    std::size_t pending = 0;
    while (const SExprNode* e = w.next()) {
      if (e->is_atom() && e->text == "-") {
        const SExprNode* type = w.peek();
        if (pending == 0 || type == nullptr) {
          invalid(*e);
          if (type != nullptr) invalid(*w.next());
          continue;
        }
        emit(e->span, Scope::Punctuation);
        type_ref(*w.next());
        pending = 0;
        continue;
      }
      ++pending;
      const bool ok = e->is_atom() && (item_scope == Scope::Variable
                                           ? is_pddl_variable(e->text)
                                           : is_pddl_name(e->text));
      if (ok && bind != nullptr) bind->insert(e->text);
      atom_if(e, ok, item_scope);
    }
  }

  void type_ref(const SExprNode& node) {
    if (node.is_atom()) {
      atom_if(&node, is_pddl_name(node.text), Scope::TypeName);
      return;
    }
    if (!node.is_headed_by("either")) {
      invalid(node);
      return;
    }
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    while (const SExprNode* t = w.next()) {
      atom_if(t, t->is_atom() && is_pddl_name(t->text), Scope::TypeName);
    }
    w.finish();
  }

  /// "(name ?x - t ...)" as found in :predicates, :functions and :derived.
  bool skeleton(const SExprNode& node, Vars* bind) {
    const SExprNode* head = node.is_list() ? node.head() : nullptr;
    if (head == nullptr || !head->is_atom() || !is_pddl_name(head->text)) {
      invalid(node);
      return false;
    }
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Name);
    typed_list(w, Scope::Variable, bind);
    w.finish();
    return true;
  }

  void predicates_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    while (const SExprNode* p = w.next()) skeleton(*p, nullptr);
    w.finish();
  }

  void functions_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    std::size_t pending = 0;
    while (const SExprNode* e = w.next()) {
      if (e->is_atom() && e->text == "-") {
        const SExprNode* type = w.peek();
        if (pending == 0 || type == nullptr || !type->is_atom()) {
          invalid(*e);
          if (type != nullptr) invalid(*w.next());
          continue;
        }
        emit(e->span, Scope::Punctuation);
        const SExprNode* t = w.next();
        atom_if(t, is_pddl_name(t->text), Scope::TypeName);
        pending = 0;
        continue;
      }
      if (skeleton(*e, nullptr)) ++pending;
    }
    w.finish();
  }

  void action_block(const SExprNode& node, bool durative) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    const SExprNode* name = w.next();
    if (name == nullptr) {
      w.finish();
      return;
    }
    atom_if(name, name->is_atom() && is_pddl_name(name->text), Scope::Name);

    Vars vars;
    if (durative) vars.insert("?duration");
    std::set<std::string> seen;
    while (const SExprNode* key = w.next()) {
      const std::string k = key->is_atom() ? lower(key->text) : std::string();
      const bool known =
          k == ":parameters" || k == ":effect" ||
          (!durative && k == ":precondition") ||
          (durative && (k == ":duration" || k == ":condition"));
      const SExprNode* value = w.peek();
      if (!known || value == nullptr || seen.count(k) != 0) {
        invalid(*key);
        if (value != nullptr && value->is_list()) invalid(*w.next());
        continue;
      }
      seen.insert(k);
      emit(key->span, Scope::Keyword);
      value = w.next();
      if (k == ":parameters") {
        if (!value->is_list()) {
          invalid(*value);
          continue;
        }
        ListWalker p(*this, *value);
        typed_list(p, Scope::Variable, &vars);
        p.finish();
      } else if (k == ":precondition") {
        gd(*value, vars);
      } else if (k == ":condition") {
        timed_gd(*value, vars);
      } else if (k == ":duration") {
        duration_constraint(*value, vars);
      } else if (durative) {
        timed_effect(*value, vars);
      } else {
        effect(*value, vars);
      }
    }
    w.finish();
  }

  void derived_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    Vars vars;
    if (const SExprNode* head = w.next()) {
      skeleton(*head, &vars);
      if (const SExprNode* body = w.next()) gd(*body, vars);
    }
    w.finish();
  }

  void init_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    while (const SExprNode* fact = w.next()) init_element(*fact);
    w.finish();
  }

  void init_element(const SExprNode& node) {
    if (!node.is_list()) {
      invalid(node);
      return;
    }
    auto elems = node.elements();
    if (elems.empty() || !elems[0]->is_atom()) {
      invalid(node);
      return;
    }
    const std::string head = lower(elems[0]->text);
    const bool timed = head == "at" && elems.size() == 3 &&
                       elems[1]->is_atom() && is_pddl_number(elems[1]->text) &&
                       elems[2]->is_list();
    if (timed) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      emit(w.next()->span, Scope::Number);
      init_element(*w.next());
      w.finish();
    } else if (head == "not") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* literal = w.next()) atomic_formula(*literal, {}, true);
      w.finish();
    } else if (head == "=") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* fn = w.next()) {
        if (fn->is_list()) {
          atomic_formula(*fn, {}, true);
        } else {
          atom_if(fn, is_pddl_name(fn->text), Scope::Name);
        }
      }
      if (const SExprNode* value = w.next()) ground_term(*value);
      w.finish();
    } else {
      atomic_formula(node, {}, true);
    }
  }

  void ground_term(const SExprNode& node) {
    if (node.is_atom() && is_pddl_number(node.text)) {
      emit(node.span, Scope::Number);
    } else {
      atom_if(&node, node.is_atom() && is_pddl_name(node.text), Scope::Name);
    }
  }

  void metric_block(const SExprNode& node) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    const SExprNode* direction = w.next();
    if (direction == nullptr) {
      w.finish();
      return;
    }
    const std::string d = direction->is_atom() ? lower(direction->text) : "";
    atom_if(direction, d == "minimize" || d == "maximize", Scope::Keyword);
    if (const SExprNode* expr = w.next()) metric_fexp(*expr);
    w.finish();
  }

  void metric_fexp(const SExprNode& node) {
    if (node.is_atom()) {
      if (iequals(node.text, "total-time")) {
        emit(node.span, Scope::Keyword);
      } else {
        fexp(node, {});
      }
      return;
    }
    if (node.is_headed_by("is-violated")) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      const SExprNode* name = w.next();
      atom_if(name, name != nullptr && is_pddl_name(name->text), Scope::Name);
      w.finish();
      return;
    }
    const SExprNode* head = node.head();
    if (head != nullptr && head->is_atom() && is_arithmetic(head->text)) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) metric_fexp(*arg);
      w.finish();
      return;
    }
    fexp(node, {});
  }

  // ---- conditions and effects ----------------------------------------------

  static bool is_arithmetic(std::string_view op) {
    return op == "+" || op == "-" || op == "*" || op == "/";
  }

  static bool is_comparison(std::string_view op) {
    return op == "=" || op == "<" || op == ">" || op == "<=" || op == ">=";
  }

  static bool is_assign_op(std::string_view op) {
    return op == "assign" || op == "increase" || op == "decrease" ||
           op == "scale-up" || op == "scale-down";
  }

  /// Returns the lower-cased head atom of a non-empty list, or "".
  static std::string head_of(const SExprNode& node) {
    const SExprNode* head = node.is_list() ? node.head() : nullptr;
    return head != nullptr && head->is_atom() ? lower(head->text) : "";
  }

  static bool is_empty_list(const SExprNode& node) {
    return node.is_list() && node.head() == nullptr;
  }

  void empty_list(const SExprNode& node) {
    ListWalker w(*this, node);
    w.finish();
  }

  /// "(forall (?x - t) ...)" style binder; returns the extended scope.
  Vars binder(ListWalker& w, const Vars& vars) {
    Vars inner = vars;
    const SExprNode* params = w.next();
    if (params == nullptr) return inner;
    if (!params->is_list()) {
      invalid(*params);
      return inner;
    }
    ListWalker p(*this, *params);
    typed_list(p, Scope::Variable, &inner);
    p.finish();
    return inner;
  }

  void gd(const SExprNode& node, const Vars& vars) {
    if (is_empty_list(node)) {
      empty_list(node);
      return;
    }
    const std::string op = head_of(node);
    if (op.empty()) {
      invalid(node);
      return;
    }
    if (op == "and" || op == "or") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) gd(*arg, vars);
      w.finish();
    } else if (op == "not" || op == "imply") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      const int arity = op == "not" ? 1 : 2;
      for (int i = 0; i < arity; ++i) {
        if (const SExprNode* arg = w.next()) gd(*arg, vars);
      }
      w.finish();
    } else if (op == "exists" || op == "forall") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      Vars inner = binder(w, vars);
      if (const SExprNode* body = w.next()) gd(*body, inner);
      w.finish();
    } else if (op == "preference") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      const SExprNode* next = w.next();
      if (next != nullptr && next->is_atom()) {
        atom_if(next, is_pddl_name(next->text), Scope::Name);
        next = w.next();
      }
      if (next != nullptr) gd(*next, vars);
      w.finish();
    } else if (is_comparison(op)) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      for (int i = 0; i < 2; ++i) {
        if (const SExprNode* arg = w.next()) fexp(*arg, vars);
      }
      w.finish();
    } else {
      atomic_formula(node, vars, false);
    }
  }

  void atomic_formula(const SExprNode& node, const Vars& vars, bool ground) {
    const SExprNode* head = node.is_list() ? node.head() : nullptr;
    if (head == nullptr || !head->is_atom() || !is_pddl_name(head->text)) {
      invalid(node);
      return;
    }
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Name);
    while (const SExprNode* arg = w.next()) term(*arg, vars, ground);
    w.finish();
  }

  void term(const SExprNode& node, const Vars& vars, bool ground) {
    if (node.is_list()) {
      // Function terms need :object-fluents.
      if (has_requirement(":object-fluents")) {
        atomic_formula(node, vars, ground);
      } else {
        invalid(node);
      }
      return;
    }
    const std::string_view text = node.text;
    if (is_pddl_variable(text)) {
      atom_if(&node, !ground && vars.count(text) != 0, Scope::Variable);
    } else if (is_pddl_number(text)) {
      emit(node.span, Scope::Number);
    } else {
      atom_if(&node, is_pddl_name(text), Scope::Name);
    }
  }

  void fexp(const SExprNode& node, const Vars& vars) {
    if (node.is_atom()) {
      const std::string_view text = node.text;
      if (is_pddl_number(text)) {
        emit(node.span, Scope::Number);
      } else if (text == "#t") {
        emit(node.span, Scope::Keyword);
      } else if (is_pddl_variable(text)) {
        atom_if(&node, vars.count(text) != 0, Scope::Variable);
      } else {
        atom_if(&node, is_pddl_name(text), Scope::Name);
      }
      return;
    }
    const std::string op = head_of(node);
    if (is_arithmetic(op)) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) fexp(*arg, vars);
      w.finish();
      return;
    }
    // Function application, e.g. (fuel ?v) or (total-cost).
    const SExprNode* head = node.head();
    if (head == nullptr || !head->is_atom() || !is_pddl_name(head->text)) {
      invalid(node);
      return;
    }
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Name);
    while (const SExprNode* arg = w.next()) term(*arg, vars, false);
    w.finish();
  }

  void effect(const SExprNode& node, const Vars& vars) {
    if (is_empty_list(node)) {
      empty_list(node);
      return;
    }
    const std::string op = head_of(node);
    if (op.empty()) {
      invalid(node);
      return;
    }
    if (op == "and") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) effect(*arg, vars);
      w.finish();
    } else if (op == "not") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* arg = w.next()) atomic_formula(*arg, vars, false);
      w.finish();
    } else if (op == "forall") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      Vars inner = binder(w, vars);
      if (const SExprNode* body = w.next()) effect(*body, inner);
      w.finish();
    } else if (op == "when") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* cond = w.next()) gd(*cond, vars);
      if (const SExprNode* body = w.next()) effect(*body, vars);
      w.finish();
    } else if (is_assign_op(op)) {
      assignment(node, vars);
    } else {
      atomic_formula(node, vars, false);
    }
  }

  void assignment(const SExprNode& node, const Vars& vars) {
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    if (const SExprNode* target = w.next()) fexp(*target, vars);
    if (const SExprNode* value = w.next()) fexp(*value, vars);
    w.finish();
  }

  /// "(at start X)", "(at end X)" or "(over all X)"; returns false when
  /// `node` has none of these shapes.
  template <typename Body>
  bool time_specifier(const SExprNode& node, bool allow_over_all, Body body) {
    auto elems = node.elements();
    if (elems.size() < 2 || !elems[0]->is_atom() || !elems[1]->is_atom()) {
      return false;
    }
    const std::string first = lower(elems[0]->text);
    const std::string second = lower(elems[1]->text);
    const bool ok = (first == "at" && (second == "start" || second == "end")) ||
                    (allow_over_all && first == "over" && second == "all");
    if (!ok) return false;
    ListWalker w(*this, node);
    emit(w.next()->span, Scope::Keyword);
    emit(w.next()->span, Scope::Keyword);
    if (const SExprNode* inner = w.next()) body(*inner);
    w.finish();
    return true;
  }

  void timed_gd(const SExprNode& node, const Vars& vars) {
    if (is_empty_list(node)) {
      empty_list(node);
      return;
    }
    const std::string op = head_of(node);
    if (op == "and") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) timed_gd(*arg, vars);
      w.finish();
      return;
    }
    if (op == "forall") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      Vars inner = binder(w, vars);
      if (const SExprNode* body = w.next()) timed_gd(*body, inner);
      w.finish();
      return;
    }
    if (op == "preference") {
      gd(node, vars);
      return;
    }
    if (!time_specifier(node, true,
                        [&](const SExprNode& inner) { gd(inner, vars); })) {
      invalid(node);
    }
  }

  void timed_effect(const SExprNode& node, const Vars& vars) {
    if (is_empty_list(node)) {
      empty_list(node);
      return;
    }
    const std::string op = head_of(node);
    if (op == "and") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) timed_effect(*arg, vars);
      w.finish();
    } else if (op == "forall") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      Vars inner = binder(w, vars);
      if (const SExprNode* body = w.next()) timed_effect(*body, inner);
      w.finish();
    } else if (op == "when") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      if (const SExprNode* cond = w.next()) timed_gd(*cond, vars);
      if (const SExprNode* body = w.next()) timed_effect(*body, vars);
      w.finish();
    } else if (is_assign_op(op)) {
      // Continuous effects, e.g. (increase (fuel ?v) (* #t 2)).
      assignment(node, vars);
    } else if (!time_specifier(
                   node, false,
                   [&](const SExprNode& inner) { effect(inner, vars); })) {
      invalid(node);
    }
  }

  void duration_constraint(const SExprNode& node, const Vars& vars) {
    if (is_empty_list(node)) {
      empty_list(node);
      return;
    }
    const std::string op = head_of(node);
    if (op == "and") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) duration_constraint(*arg, vars);
      w.finish();
    } else if (op == "=" || op == "<=" || op == ">=") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      const SExprNode* target = w.next();
      atom_if(target, target != nullptr && iequals(target->text, "?duration"),
              Scope::Variable);
      if (const SExprNode* value = w.next()) fexp(*value, vars);
      w.finish();
    } else if (!time_specifier(node, false, [&](const SExprNode& inner) {
                 duration_constraint(inner, vars);
               })) {
      invalid(node);
    }
  }

  void constraint_gd(const SExprNode& node, const Vars& vars) {
    const std::string op = head_of(node);
    auto numbers_then_gds = [&](int numbers, int gds) {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      for (int i = 0; i < numbers; ++i) {
        const SExprNode* n = w.next();
        atom_if(n, n != nullptr && is_pddl_number(n->text), Scope::Number);
      }
      for (int i = 0; i < gds; ++i) {
        if (const SExprNode* g = w.next()) gd(*g, vars);
      }
      w.finish();
    };
    if (op == "and") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      while (const SExprNode* arg = w.next()) constraint_gd(*arg, vars);
      w.finish();
    } else if (op == "forall") {
      ListWalker w(*this, node);
      emit(w.next()->span, Scope::Keyword);
      Vars inner = binder(w, vars);
      if (const SExprNode* body = w.next()) constraint_gd(*body, inner);
      w.finish();
    } else if (op == "preference") {
      gd(node, vars);
    } else if (op == "always" || op == "sometime" || op == "at-most-once") {
      numbers_then_gds(0, 1);
    } else if (op == "within" || op == "hold-after") {
      numbers_then_gds(1, 1);
    } else if (op == "sometime-after" || op == "sometime-before") {
      numbers_then_gds(0, 2);
    } else if (op == "always-within") {
      numbers_then_gds(1, 2);
    } else if (op == "hold-during") {
      numbers_then_gds(2, 1);
    } else if (!time_specifier(node, false,
                               [&](const SExprNode& inner) { gd(inner, vars); })) {
      invalid(node);
    }
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::set<std::string> requirements_;
};

ListWalker::ListWalker(Scoper& scoper, const SExprNode& list)
    : scoper_(scoper), list_(list) {
  scoper_.open(list_);
}

const SExprNode* ListWalker::next() {
  const auto& children = list_.children;
  while (index_ < children.size() && children[index_].is_trivia()) {
    scoper_.trivia(children[index_++]);
  }
  return index_ < children.size() ? &children[index_++] : nullptr;
}

const SExprNode* ListWalker::peek() const {
  for (std::size_t i = index_; i < list_.children.size(); ++i) {
    if (!list_.children[i].is_trivia()) return &list_.children[i];
  }
  return nullptr;
}

void ListWalker::finish() {
  while (const SExprNode* rest = next()) scoper_.invalid(*rest);
  scoper_.close(list_);
}

std::string css_class(Scope scope) {
  switch (scope) {
    case Scope::Keyword: return "keyword";
    case Scope::Variable: return "variable";
    case Scope::Name: return "name";
    case Scope::TypeName: return "type-name";
    case Scope::Number: return "number";
    case Scope::Comment: return "comment";
    case Scope::Requirement: return "requirement";
    case Scope::Punctuation: return "punctuation";
    case Scope::Unscoped: return "unscoped";
  }
  return "unscoped";
}

void append_escaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
}

}  // namespace

std::string_view to_string(Scope scope) {
  for (const auto& [s, name] : kScopeNames) {
    if (s == scope) return name;
  }
  return "Unscoped";
}

std::optional<Scope> scope_from_string(std::string_view name) {
  for (const auto& [s, n] : kScopeNames) {
    if (n == name) return s;
  }
  return std::nullopt;
}

std::vector<Token> tokenize(std::string_view text) {
  return Scoper(text).run();
}

std::vector<Span> invalid_regions(std::span<const Token> tokens,
                                  std::string_view text) {
  std::vector<Span> regions;
  std::optional<Span> current;
  for (const auto& token : tokens) {
    if (token.scope == Scope::Unscoped) {
      if (current) {
        current->end = token.span.end;
      } else {
        current = token.span;
      }
      continue;
    }
    const bool whitespace =
        token.scope == Scope::Punctuation &&
        is_whitespace_text(text.substr(token.span.start, token.span.size()));
    if (current && !whitespace) {
      regions.push_back(*current);
      current.reset();
    }
  }
  if (current) regions.push_back(*current);
  return regions;
}

std::string emit_tokens_json(std::span<const Token> tokens,
                             std::string_view text) {
  if (tokens.empty()) return "[]";
  std::vector<Token> sorted(tokens.begin(), tokens.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Token& a, const Token& b) {
                     return a.span.start < b.span.start;
                   });
  std::string out = "[";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Token& token = sorted[i];
    nlohmann::ordered_json record;
    record["start"] = token.span.start;
    record["end"] = token.span.end;
    record["scope"] = to_string(token.scope);
    record["text"] = text.substr(token.span.start, token.span.size());
    out += i == 0 ? "\n  " : ",\n  ";
    out += record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  }
  out += "\n]";
  return out;
}

std::string render_html(std::span<const Token> tokens, std::string_view text,
                        std::string_view title) {
  std::string out =
      "<!DOCTYPE html>\n"
      "<html>\n"
      "<head>\n"
      "<meta charset=\"utf-8\">\n"
      "<title>";
  append_escaped(out, title);
  out +=
      "</title>\n"
      "<style>\n"
      "pre.pddl { background: #272822; color: #f8f8f2; padding: 1em; }\n"
      ".keyword { color: #f92672; }\n"
      ".variable { color: #fd971f; }\n"
      ".name { color: #a6e22e; }\n"
      ".type-name { color: #66d9ef; font-style: italic; }\n"
      ".number { color: #ae81ff; }\n"
      ".comment { color: #75715e; }\n"
      ".requirement { color: #e6db74; }\n"
      ".punctuation { color: #a0a0a0; }\n"
      ".unscoped { color: #ffffff; }\n"
      "</style>\n"
      "</head>\n"
      "<body>\n"
      "<pre class=\"pddl\">";

  const auto regions = invalid_regions(tokens, text);
  std::size_t region = 0;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Token& token = tokens[i];
    if (region < regions.size() && token.span.start == regions[region].start) {
      const Span r = regions[region++];
      out += "<span class=\"unscoped\">";
      append_escaped(out, text.substr(r.start, r.size()));
      out += "</span>";
      while (i < tokens.size() && tokens[i].span.start < r.end) ++i;
      continue;
    }
    const std::string_view slice = text.substr(token.span.start, token.span.size());
    if (token.scope == Scope::Punctuation && is_whitespace_text(slice)) {
      out += slice;
    } else {
      out += "<span class=\"" + css_class(token.scope) + "\">";
      append_escaped(out, slice);
      out += "</span>";
    }
    ++i;
  }
  out +=
      "</pre>\n"
      "</body>\n"
      "</html>\n";
  return out;
}

}  // namespace pddlkit
