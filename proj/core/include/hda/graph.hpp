#pragma once

#include <compare>
#include <string>
#include <vector>

#include "hda/prop.hpp"

namespace hda {

// Where a wire starts: a global input leg or a vertex out-port (0-based).
struct Source {
  int vertex = -1;  // -1 for a global input
  int port = 0;

  static Source input(int k) { return {-1, k}; }
  static Source at(int v, int p) { return {v, p}; }
  bool is_input() const { return vertex < 0; }
  auto operator<=>(const Source&) const = default;
};

// Where a wire ends: a vertex in-port or a global output leg.
struct Sink {
  int vertex = -1;  // -1 for a global output
  int port = 0;

  bool is_output() const { return vertex < 0; }
  auto operator<=>(const Sink&) const = default;
};

// An (m,n)-graph with a flat vertex list. Leg labels are global positions;
// components are recovered by connectivity.
struct MNGraph {
  int n_in = 0;
  std::vector<int> v_out;                 // out-port count per vertex
  std::vector<std::vector<Source>> v_in;  // source of each vertex in-port
  std::vector<Source> out;                // source of each output leg

  int n_out() const { return static_cast<int>(out.size()); }
  int n_vertices() const { return static_cast<int>(v_in.size()); }
  int add_vertex(std::vector<Source> ins, int n_outs);
  // Sink fed by each source; throws if a source is unused or reused.
  Sink sink_of(const Source& s) const;
  bool operator==(const MNGraph&) const = default;
};

struct Component {
  std::vector<int> vertices;  // ascending
  std::vector<int> inputs;    // ascending global labels
  std::vector<int> outputs;   // ascending global labels
  bool formal() const { return vertices.empty(); }
};

// Connected components, ordered by least vertex; edge-only (formal)
// components come last, ordered by input label.
std::vector<Component> components(const MNGraph& g);

struct Issue {
  std::string condition;
  std::string where;
};

struct Report {
  std::vector<Issue> issues;
  bool ok() const { return issues.empty(); }
  json to_json() const;
  void add(std::string condition, std::string where) { issues.push_back({std::move(condition), std::move(where)}); }
  void merge(const Report& r, const std::string& prefix = "");
};

// Checks ports, single-use wiring, leg counts, components and acyclicity.
// Edge-only components are allowed only when allow_formal is set.
Report validate_mn_graph(const MNGraph& g, bool allow_formal = false);

// Vertices in a topological order; throws Validation on a wheel.
std::vector<int> topological_order(const MNGraph& g);

// Byte-stable serialization; the structure itself is rigid, so
// canonicalize only normalizes storage and is idempotent.
MNGraph canonicalize(const MNGraph& g);
json graph_json(const MNGraph& g);
MNGraph parse_graph(const json& j);

struct DecoratedGraph {
  MNGraph g;
  std::vector<Element> deco;
  Profile in_colors;

  Color source_color(const Source& s) const;
  Profile out_colors() const;
  bool operator==(const DecoratedGraph& o) const;
};

Report validate_decoration(const DecoratedGraph& dg, const Prop* p = nullptr, bool allow_formal = false);

// One-vertex graph decorated by x.
DecoratedGraph unit_graph(const Element& x);

// Renumbers vertices by a DFS from the input legs (label order), visiting
// in-port sources before out-port sinks. Labels of legs are preserved.
DecoratedGraph normal_form(const DecoratedGraph& dg);
// Applies a vertex renumbering: new index of vertex v is order position.
DecoratedGraph reorder_vertices(const DecoratedGraph& dg, const std::vector<int>& order);

// Replaces vertex v by h, splicing h's legs onto v's ports in order.
// The result lists g's vertices before v, then h's, then g's after v.
DecoratedGraph substitute(const DecoratedGraph& g, int v, const DecoratedGraph& h);

json decorated_json(const DecoratedGraph& dg);
DecoratedGraph parse_decorated(const json& j, const Prop& p);

// Random wiring of the given decorations, in a shuffled vertex order. Each
// in-port takes either a fresh input leg or an unused earlier out-port of the
// matching color; leftover out-ports become outputs. Legs are shuffled.
DecoratedGraph random_wiring(const std::vector<Element>& decos, Rng& rng, double reuse = 0.6);

}  // namespace hda
