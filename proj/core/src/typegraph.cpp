#include "pddlkit/typegraph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "pddlkit/file_io.hpp"
#include "pddlkit/process.hpp"

namespace pddlkit {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kNoPredicates;

void warn(Diagnostics& diags, const Span& span, std::string message,
          std::string code) {
  diags.push_back({span, Severity::Warning, std::move(message),
                   std::move(code)});
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::string quote_id(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

/// Escapes text placed inside a quoted record label.
std::string record_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '{': case '}': case '|': case '<': case '>': case '"': case '\\':
        out += '\\';
        [[fallthrough]];
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

class TypeGraphBuilder {
 public:
  explicit TypeGraphBuilder(Diagnostics& diags) : diags_(diags) {}

  TypeGraph build(const PddlDomain& domain) {
    for (const auto& entry : domain.types.entries) add_declaration(entry);
    attach_predicates(domain);
    link_roots();
    std::sort(graph_.edges_.begin(), graph_.edges_.end());
    mark_cycles();
    find_orphans();
    return std::move(graph_);
  }

 private:
  void add_declaration(const TypedEntry& entry) {
    // Either-types are reported by the domain parser and left out here.
    if (entry.is_either()) return;
    if (entry.name == kObjectType) {
      warn(diags_, entry.span, "'object' cannot be given a supertype",
           "object-subtype");
      return;
    }
    graph_.nodes_.insert(entry.name);
    graph_.nodes_.insert(entry.type);
    if (entry.name == entry.type) {
      warn(diags_, entry.span, "type '" + entry.name + "' is its own parent",
           "self-parent");
      return;
    }
    const TypeEdge edge{entry.name, entry.type};
    auto& edges = graph_.edges_;
    if (std::find(edges.begin(), edges.end(), edge) != edges.end()) return;
    const bool has_other_parent =
        std::any_of(edges.begin(), edges.end(),
                    [&](const TypeEdge& e) { return e.child == entry.name; });
    if (has_other_parent) {
      warn(diags_, entry.span,
           "type '" + entry.name + "' is declared under more than one parent",
           "multiple-parents");
    }
    edges.push_back(edge);
  }

  void mark_cycles() {
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> marks;
    std::function<void(const std::string&)> visit = [&](const std::string& n) {
      marks[n] = Mark::Active;
      for (auto& edge : graph_.edges_) {
        if (edge.child != n) continue;
        const Mark m = marks[edge.parent];
        if (m == Mark::Active) {
          edge.back_edge = true;
          diags_.push_back({{}, Severity::Error,
                            "type hierarchy cycle through '" + edge.child +
                                "' -> '" + edge.parent + "'",
                            "type-cycle"});
        } else if (m == Mark::None) {
          visit(edge.parent);
        }
      }
      marks[n] = Mark::Done;
    };
    for (const auto& node : graph_.nodes_) {
      if (marks[node] == Mark::None) visit(node);
    }
  }

  void attach_predicates(const PddlDomain& domain) {
    for (const auto& pred : domain.predicates) {
      std::vector<std::string> types;
      for (const auto& param : pred.parameters.entries) {
        if (param.is_either()) {
          types.insert(types.end(), param.either_types.begin(),
                       param.either_types.end());
        } else {
          types.push_back(param.type);
        }
      }
      if (types.empty()) continue;
      std::vector<std::string> seen;
      for (const auto& type : types) {
        if (std::find(seen.begin(), seen.end(), type) != seen.end()) continue;
        seen.push_back(type);
        if (!graph_.has_node(type)) {
          warn(diags_, pred.span,
               "predicate '" + pred.name + "' uses undeclared type '" + type +
                   "'",
               "undeclared-type");
          graph_.nodes_.insert(type);
        }
        graph_.predicates_by_type_[type].push_back(pred.signature_text);
      }
    }
  }

  // Types that only appear as a parent (or only in predicates) are
  // implicitly subtypes of object.
  void link_roots() {
    for (const auto& node : graph_.nodes_) {
      if (node == kObjectType) continue;
      const bool has_parent =
          std::any_of(graph_.edges_.begin(), graph_.edges_.end(),
                      [&](const TypeEdge& e) { return e.child == node; });
      if (!has_parent) {
        graph_.edges_.push_back({node, std::string(kObjectType)});
      }
    }
  }

  bool reaches_object(const std::string& node,
                      std::set<std::string>& visiting) const {
    if (node == kObjectType) return true;
    if (!visiting.insert(node).second) return false;
    for (const auto& edge : graph_.edges_) {
      if (edge.child == node && reaches_object(edge.parent, visiting)) {
        return true;
      }
    }
    return false;
  }

  void find_orphans() {
    for (const auto& node : graph_.nodes_) {
      if (node == kObjectType) continue;
      std::set<std::string> visiting;
      if (!reaches_object(node, visiting)) {
        graph_.orphans_.insert(node);
        warn(diags_, {},
             "type '" + node + "' does not descend from 'object'",
             "orphan-type");
      }
    }
  }

  TypeGraph graph_;
  Diagnostics& diags_;
};

TypeGraph::TypeGraph() { nodes_.insert(std::string(kObjectType)); }

bool TypeGraph::has_node(std::string_view name) const {
  return nodes_.find(std::string(name)) != nodes_.end();
}

std::vector<std::string> TypeGraph::parents_of(std::string_view name) const {
  std::vector<std::string> out;
  for (const auto& edge : edges_) {
    if (edge.child == name) out.push_back(edge.parent);
  }
  return out;
}

const std::vector<std::string>& TypeGraph::predicates_of(
    std::string_view type) const {
  auto it = predicates_by_type_.find(std::string(type));
  return it == predicates_by_type_.end() ? kNoPredicates : it->second;
}

std::size_t TypeGraph::depth(bool count_object) const {
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> height =
      [&](const std::string& node) -> std::size_t {
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    memo[node] = 0;  // guards against cycles that escaped back-edge marking
    std::size_t best = 0;
    for (const auto& edge : edges_) {
      if (edge.child != node || edge.back_edge) continue;
      best = std::max(best, height(edge.parent));
    }
    const bool counted = count_object || node != kObjectType;
    memo[node] = best + (counted ? 1 : 0);
    return memo[node];
  };
  std::size_t deepest = 0;
  for (const auto& node : nodes_) deepest = std::max(deepest, height(node));
  return deepest;
}

TypeGraphBuild build_type_graph(const PddlDomain& domain) {
  TypeGraphBuild out;
  out.graph = TypeGraphBuilder(out.diagnostics).build(domain);
  return out;
}

std::string emit_dot(const TypeGraph& graph, std::string_view graph_name) {
  std::string out = "digraph " + quote_id(graph_name) + " {\n";
  out += "  rankdir=BT;\n";
  out += "  node [shape=record, fontname=\"Helvetica\", fontsize=10];\n";
  out += "  edge [arrowhead=empty];\n\n";
  for (const auto& node : graph.nodes()) {
    std::string label = "{" + record_escape(node) + "|";
    for (const auto& signature : graph.predicates_of(node)) {
      label += record_escape(collapse_whitespace(signature));
      label += "\\l";
    }
    label += "}";
    out += "  " + quote_id(node) + " [label=\"" + label + "\"];\n";
  }
  if (!graph.edges().empty()) out += "\n";
  for (const auto& edge : graph.edges()) {
    out += "  " + quote_id(edge.child) + " -> " + quote_id(edge.parent);
    if (edge.back_edge) out += " [style=dashed, color=red]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

int latest_revision(const fs::path& output_root, std::string_view base) {
  int latest = 0;
  const std::string prefix = std::string(base) + "_";
  for (const char* dir : {"domains", "dot", "diagrams"}) {
    const fs::path folder = output_root / dir;
    std::error_code ec;
    if (!fs::is_directory(folder, ec)) continue;
    for (const auto& entry : fs::directory_iterator(folder, ec)) {
      const std::string stem = entry.path().stem().string();
      if (stem.size() <= prefix.size() || stem.compare(0, prefix.size(), prefix) != 0) {
        continue;
      }
      const std::string digits = stem.substr(prefix.size());
      if (!std::all_of(digits.begin(), digits.end(),
                       [](unsigned char c) { return std::isdigit(c); }) ||
          digits.size() > 9) {
        continue;
      }
      latest = std::max(latest, std::stoi(digits));
    }
  }
  return latest;
}

DiagramArtifacts render_diagram(const fs::path& domain_file,
                                const fs::path& output_root,
                                const DiagramOptions& options) {
  const std::string text = read_file(domain_file);
  const std::string base = domain_file.stem().string();

  DiagramArtifacts artifacts;
  artifacts.revision = latest_revision(output_root, base) + 1;
  const std::string stem = base + "_" + std::to_string(artifacts.revision);

  fs::create_directories(output_root / "domains");
  fs::create_directories(output_root / "dot");
  fs::create_directories(output_root / "diagrams");

  const std::string ext =
      domain_file.has_extension() ? domain_file.extension().string() : ".pddl";
  artifacts.copied_domain_path = output_root / "domains" / (stem + ext);
  write_file_atomic(artifacts.copied_domain_path, text);

  auto parsed = parse_domain(text);
  auto built = build_type_graph(parsed.domain);
  artifacts.diagnostics = std::move(parsed.diagnostics);
  artifacts.diagnostics.insert(artifacts.diagnostics.end(),
                               built.diagnostics.begin(),
                               built.diagnostics.end());

  const std::string graph_name =
      parsed.domain.name.empty() ? base : parsed.domain.name;
  artifacts.dot_path = output_root / "dot" / (stem + ".dot");
  write_file_atomic(artifacts.dot_path, emit_dot(built.graph, graph_name));

  const bool render = options.renderer && !options.renderer->empty();
  if (!render) {
    warn(artifacts.diagnostics, {}, "no renderer configured; PNG skipped",
         "no-renderer");
    return artifacts;
  }

  const fs::path image = output_root / "diagrams" / (stem + ".png");
  std::vector<std::string> argv = split_command_line(*options.renderer);
  argv.insert(argv.end(),
              {"-Tpng", artifacts.dot_path.string(), "-o", image.string()});
  ProcessResult result;
  try {
    result = run_process(argv);
  } catch (const SpawnError& e) {
    throw RenderError(e.what(), "");
  }
  if (result.exit_code != 0) {
    throw RenderError("renderer exited with status " +
                          std::to_string(result.exit_code),
                      result.err);
  }
  artifacts.image_path = image;
  return artifacts;
}

}  // namespace pddlkit
