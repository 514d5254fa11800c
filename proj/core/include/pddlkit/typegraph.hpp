#ifndef PDDLKIT_TYPEGRAPH_HPP_
#define PDDLKIT_TYPEGRAPH_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "pddlkit/pddl_model.hpp"
#include "pddlkit/sexpr.hpp"

namespace pddlkit {

struct TypeEdge {
  std::string child;
  std::string parent;
  /// Closes a cycle in the hierarchy.
  bool back_edge = false;

  friend bool operator<(const TypeEdge& a, const TypeEdge& b) {
    return std::tie(a.child, a.parent) < std::tie(b.child, b.parent);
  }
  friend bool operator==(const TypeEdge& a, const TypeEdge& b) {
    return a.child == b.child && a.parent == b.parent;
  }
};

/// Subtype -> supertype graph with the predicate signatures that mention
/// each type. "object" is always a node.
class TypeGraph {
 public:
  TypeGraph();

  const std::set<std::string>& nodes() const { return nodes_; }
  /// Sorted by (child, parent).
  const std::vector<TypeEdge>& edges() const { return edges_; }
  const std::map<std::string, std::vector<std::string>>& predicates_by_type()
      const {
    return predicates_by_type_;
  }
  /// Types from which no chain of parents reaches "object" (cycles).
  const std::set<std::string>& orphans() const { return orphans_; }

  bool has_node(std::string_view name) const;
  std::vector<std::string> parents_of(std::string_view name) const;
  const std::vector<std::string>& predicates_of(std::string_view type) const;

  /// Declared types, i.e. every node except "object".
  std::size_t declared_type_count() const { return nodes_.size() - 1; }

  /// Layers on the longest chain from a root down to a leaf. With
  /// `count_object` false the implicit "object" root is not a layer.
  std::size_t depth(bool count_object) const;

 private:
  friend class TypeGraphBuilder;

  std::set<std::string> nodes_;
  std::vector<TypeEdge> edges_;
  std::map<std::string, std::vector<std::string>> predicates_by_type_;
  std::set<std::string> orphans_;
};

struct TypeGraphBuild {
  TypeGraph graph;
  Diagnostics diagnostics;
};

TypeGraphBuild build_type_graph(const PddlDomain& domain);

/// Deterministic DOT: nodes sorted by name, edges by (child, parent). Each
/// node is a two-part record (name | signatures); edges run child -> parent
/// with an open arrowhead.
std::string emit_dot(const TypeGraph& graph, std::string_view graph_name = "types");

class RenderError : public std::runtime_error {
 public:
  RenderError(const std::string& what, std::string renderer_stderr)
      : std::runtime_error(what), stderr_(std::move(renderer_stderr)) {}
  const std::string& renderer_stderr() const { return stderr_; }

 private:
  std::string stderr_;
};

struct DiagramArtifacts {
  std::filesystem::path copied_domain_path;
  std::filesystem::path dot_path;
  std::optional<std::filesystem::path> image_path;
  int revision = 1;
  Diagnostics diagnostics;
};

struct DiagramOptions {
  /// Renderer command, e.g. "dot". It is run as
  /// `<renderer...> -Tpng <dot file> -o <png file>`. Empty disables
  /// rendering.
  std::optional<std::string> renderer;
};

/// Copies the domain into <out>/domains/, writes <out>/dot/<base>_<rev>.dot
/// and, with a renderer, <out>/diagrams/<base>_<rev>.png. The revision is one
/// more than the highest revision already present for <base>.
DiagramArtifacts render_diagram(const std::filesystem::path& domain_file,
                                const std::filesystem::path& output_root,
                                const DiagramOptions& options = {});

/// Highest `<base>_<n>.*` revision in the three output folders, or 0.
int latest_revision(const std::filesystem::path& output_root,
                    std::string_view base);

}  // namespace pddlkit

#endif  // PDDLKIT_TYPEGRAPH_HPP_
