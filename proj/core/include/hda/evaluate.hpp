#pragma once

#include <vector>

#include "hda/graph.hpp"

namespace hda {

// One tensor factor of a layer: a vertex, or a formal identity carrying a
// wire across the layer (identified by its sink).
struct LayerItem {
  int vertex = -1;
  Sink wire;
  bool identity() const { return vertex < 0; }
};

struct Layer {
  std::vector<LayerItem> items;
  // π applied to the previous layer's outputs so they line up with this
  // layer's inputs (identity for the first layer).
  Perm interface;
};

struct ComponentLayers {
  Component component;
  std::vector<Layer> layers;
  Perm top;     // σ₁
  Perm bottom;  // σ₂
};

struct LevelDecomposition {
  std::vector<ComponentLayers> components;
  // Assembly of the horizontal composite of the components.
  Perm out_assembly;
  Perm in_assembly;
};

// Longest-path layering; layer 1 lists vertices by label then crossing
// inputs, later layers order factors by their first consumed wire.
LevelDecomposition level_decompose(const DecoratedGraph& dg);

// Layering from an arbitrary level assignment (strictly increasing along
// edges). With a generator, factors inside each layer are shuffled.
LevelDecomposition decompose_with(const DecoratedGraph& dg, const std::vector<int>& level, Rng* shuffle = nullptr);

std::vector<int> longest_path_levels(const MNGraph& g);
std::vector<int> alap_levels(const MNGraph& g);
// One vertex per level following a random topological order.
std::vector<int> random_levels(const MNGraph& g, Rng& rng);

Element evaluate_with(const Prop& p, const DecoratedGraph& dg, const LevelDecomposition& d);
Element evaluate(const Prop& p, const DecoratedGraph& dg);

json decomposition_json(const LevelDecomposition& d);

}  // namespace hda
