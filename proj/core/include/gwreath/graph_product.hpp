#pragma once

// Elements of the graph product G(Delta): words of syllables g_(v), one copy of
// Delta per vertex, copies at adjacent vertices commuting.
//
// The canonical form solves the word problem. A word is first reduced (no two
// syllables at the same vertex can be brought together by commuting swaps),
// then its syllables are laid out in the lexicographically least order that
// the commutation relations allow, comparing vertices by the total order on
// Vertex. Two words are equal in G(Delta) iff their canonical forms coincide.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gwreath/gamma_graph.hpp"
#include "gwreath/groups.hpp"

namespace gwreath {

struct Syllable {
  Vertex vertex;
  GroupElement value;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

struct Word {
  std::vector<Syllable> syllables;

  bool empty() const noexcept { return syllables.empty(); }
  std::size_t size() const noexcept { return syllables.size(); }
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Rejects identity values.
Syllable make_syllable(const GroupSpec& delta, const Vertex& v, GroupElement value);

// Adjacency seen by the graph product, plus optional loop flags (quotient
// graphs). Same-vertex pairs are never queried.
struct GraphView {
  std::function<bool(const Vertex&, const Vertex&)> adjacent;
  std::function<bool(const Vertex&)> has_loop;
};

GraphView view_of(const GammaGraph& graph);
// Quotient vertices are addressed as finite_vertex(orbit id).
GraphView view_of(const QuotientGraph& quotient);

Word canonical_form(const GraphView& graph, const GroupSpec& delta, const Word& w);
Word canonical_form(const GammaGraph& graph, const GroupSpec& delta, const Word& w);

Word gp_compose(const GraphView& graph, const GroupSpec& delta, const Word& a, const Word& b);
Word gp_compose(const GammaGraph& graph, const GroupSpec& delta, const Word& a, const Word& b);
Word gp_invert(const GraphView& graph, const GroupSpec& delta, const Word& w);
Word gp_invert(const GammaGraph& graph, const GroupSpec& delta, const Word& w);

bool is_trivial(const GammaGraph& graph, const GroupSpec& delta, const Word& w);
bool equal(const GammaGraph& graph, const GroupSpec& delta, const Word& a, const Word& b);

// Letters of the canonical form, sorted.
std::vector<Vertex> support(const GammaGraph& graph, const GroupSpec& delta, const Word& w);

// Kills the copies at vertices outside `keep`.
Word retract(const GammaGraph& graph, const GroupSpec& delta, const Word& w,
             const std::vector<Vertex>& keep);

using VertexMap = std::function<std::optional<Vertex>(const Vertex&)>;

// Applies a vertex map and a vertex-group homomorphism letterwise, then
// canonicalises in the destination. Letters at unmapped vertices are killed. Throws LoopObstruction when an image
// vertex carries a loop and the target group is non-abelian.
Word push_forward(const GammaGraph& source, const Word& w, const VertexMap& vertex_map,
                  const Homomorphism& delta_map, const GraphView& destination);

// "a:0^1 a:2^[1,0,2]", or "e" for the empty word.
std::string to_string(const Word& w, const std::function<std::string(const Vertex&)>& name);
std::string to_string(const GammaGraph& graph, const Word& w);

}  // namespace gwreath
