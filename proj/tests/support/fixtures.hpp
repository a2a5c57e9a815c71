#pragma once

#include <random>

#include "gwreath/graph_wreath.hpp"

namespace fixtures {

using namespace gwreath;

inline GammaGraph line_graph() {
  return GammaGraph::translation({"a"}, {{{0, 0}, {DifferenceFamily::finite({1})}}});
}

inline GammaGraph factorial_graph(std::int64_t shift) {
  return GammaGraph::translation({"a"}, {{{0, 0}, {DifferenceFamily::factorial(shift)}}});
}

inline GammaGraph complete_z() {
  return GammaGraph::translation({"a"}, {{{0, 0}, {DifferenceFamily::arithmetic(1, 1)}}});
}

inline GammaGraph edgeless() { return GammaGraph::translation({"a"}, {}); }

inline GammaGraph two_orbit_graph() {
  return GammaGraph::translation({"a", "b"}, {{{0, 0}, {DifferenceFamily::finite({1})}},
                                              {{1, 1}, {DifferenceFamily::finite({1})}},
                                              {{0, 1}, {DifferenceFamily::finite({1})}}});
}

// Finite translation graph with a few offsets per pair.
inline GammaGraph finite_mix() {
  return GammaGraph::translation({"a", "b"}, {{{0, 0}, {DifferenceFamily::finite({1, 3})}},
                                              {{1, 1}, {DifferenceFamily::finite({2})}},
                                              {{0, 1}, {DifferenceFamily::finite({1, 2})}}});
}

inline GammaGraph complete_k5() {
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
  for (std::int64_t i = 0; i < 5; ++i)
    for (std::int64_t j = i + 1; j < 5; ++j) edges.push_back({i, j});
  return GammaGraph::finite(5, edges, {{1, 2, 3, 4, 0}});
}

// 5-cycle with the rotation.
inline GammaGraph cycle5() {
  return GammaGraph::finite(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, {{1, 2, 3, 4, 0}});
}

// Path 0-1-2 as a finite graph with trivial action.
inline GammaGraph path3() { return GammaGraph::finite(3, {{0, 1}, {1, 2}}, {{0, 1, 2}}); }

// Two disjoint triangles, rank-2 action: rotate each triangle independently.
inline GammaGraph two_triangles() {
  return GammaGraph::finite(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}},
                            {{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}});
}

inline Instance instance(GroupSpec delta, GammaGraph graph) { return Instance{std::move(delta), std::move(graph)}; }

inline Vertex v(std::int64_t position, int label = 0) { return Vertex{label, position}; }
inline GammaElement g1(std::int64_t x) { return GammaElement{{x}}; }

inline Syllable syl(const GroupSpec& delta, const Vertex& at, std::int64_t r) {
  return Syllable{at, residue(delta, r)};
}

// Random nontrivial values of a finite group.
inline GroupElement random_nontrivial(const GroupSpec& delta, std::mt19937_64& rng) {
  const auto all = elements(delta);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (;;) {
    auto g = all[pick(rng)];
    if (!is_identity(delta, g)) return g;
  }
}

// Random word with vertices drawn from `pool`.
inline Word random_word(const GroupSpec& delta, const std::vector<Vertex>& pool, std::size_t max_len,
                        std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  Word w;
  const auto n = len(rng);
  for (std::size_t i = 0; i < n; ++i) w.syllables.push_back(Syllable{pool[pick(rng)], random_nontrivial(delta, rng)});
  return w;
}

inline std::vector<Vertex> window(const GammaGraph& graph, std::int64_t lo, std::int64_t hi) {
  std::vector<Vertex> out;
  if (graph.is_translation()) {
    for (int c = 0; c < static_cast<int>(graph.labels().size()); ++c)
      for (auto x = lo; x <= hi; ++x) out.push_back(Vertex{c, x});
  } else {
    for (std::size_t i = 0; i < graph.vertex_count(); ++i) out.push_back(finite_vertex(static_cast<std::int64_t>(i)));
  }
  return out;
}

inline GammaElement random_gamma(const GammaGraph& graph, std::int64_t range, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(-range, range);
  GammaElement g;
  for (int i = 0; i < graph.rank(); ++i) g.coords.push_back(d(rng));
  return g;
}

}  // namespace fixtures
