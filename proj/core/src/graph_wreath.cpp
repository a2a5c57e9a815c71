#include "gwreath/graph_wreath.hpp"

#include <algorithm>
#include <set>

#include "gwreath/error.hpp"

namespace gwreath {

Word act_word(const GammaGraph& graph, const GroupSpec& delta, const GammaElement& gamma,
              const Word& w) {
  graph.require_gamma(gamma);
  Word moved;
  moved.syllables.reserve(w.size());
  for (const auto& s : w.syllables) {
    graph.require_vertex(s.vertex);
    moved.syllables.push_back(Syllable{graph.act(gamma, s.vertex), s.value});
  }
  return canonical_form(graph, delta, moved);
}

WreathElement gw_identity(const Instance& instance) {
  return WreathElement{Word{}, instance.graph.gamma_identity()};
}

WreathElement gw_make(const Instance& instance, const Word& w, const GammaElement& gamma) {
  instance.graph.require_gamma(gamma);
  return WreathElement{canonical_form(instance.graph, instance.delta, w), gamma};
}

WreathElement gw_compose(const Instance& instance, const WreathElement& a, const WreathElement& b) {
  const auto& g = instance.graph;
  g.require_gamma(a.gamma);
  g.require_gamma(b.gamma);
  Word moved = act_word(g, instance.delta, a.gamma, b.word);
  return WreathElement{gp_compose(g, instance.delta, a.word, moved),
                       gamma_compose(a.gamma, b.gamma)};
}

WreathElement gw_invert(const Instance& instance, const WreathElement& a) {
  const auto& g = instance.graph;
  g.require_gamma(a.gamma);
  const GammaElement inv = gamma_invert(a.gamma);
  return WreathElement{act_word(g, instance.delta, inv, gp_invert(g, instance.delta, a.word)), inv};
}

bool gw_is_identity(const Instance& instance, const WreathElement& a) {
  return a.gamma.is_identity() && is_trivial(instance.graph, instance.delta, a.word);
}

std::string to_string(const Instance& instance, const WreathElement& x) {
  return to_string(instance.graph, x.word) + " @ " + to_string(x.gamma);
}

// ------------------------------------------------------------ restriction

std::optional<Vertex> OrbitRestriction::map_vertex(const Vertex& original, bool translation) const {
  const std::int64_t key = translation ? original.label : original.position;
  auto it = std::lower_bound(kept.begin(), kept.end(), key);
  if (it == kept.end() || *it != key) return std::nullopt;
  const auto index = static_cast<std::int64_t>(it - kept.begin());
  if (translation) return Vertex{static_cast<int>(index), original.position};
  return finite_vertex(index);
}

OrbitRestriction restrict_orbits(const Instance& instance, const WreathElement& x) {
  const auto& graph = instance.graph;
  const Word word = canonical_form(graph, instance.delta, x.word);
  graph.require_gamma(x.gamma);
  const auto letters = support(graph, instance.delta, word);

  std::vector<std::int64_t> kept;
  std::optional<GammaGraph> restricted;
  if (graph.is_translation()) {
    std::set<std::int64_t> labels;
    for (const auto& v : letters) labels.insert(v.label);
    kept.assign(labels.begin(), labels.end());
    std::vector<std::string> names;
    for (auto c : kept) names.push_back(graph.labels()[static_cast<std::size_t>(c)]);
    GammaGraph::FamilyMap families;
    for (std::size_t i = 0; i < kept.size(); ++i)
      for (std::size_t j = i; j < kept.size(); ++j) {
        const auto& list =
            graph.families(static_cast<int>(kept[i]), static_cast<int>(kept[j]));
        if (!list.empty()) families[{static_cast<int>(i), static_cast<int>(j)}] = list;
      }
    restricted = GammaGraph::translation(std::move(names), std::move(families));
  } else {
    const auto& img = graph.image();
    std::vector<std::size_t> everything(img.size());
    for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
    const auto orbit = img.orbits(everything);
    std::set<std::size_t> hit;
    for (const auto& v : letters) hit.insert(orbit[static_cast<std::size_t>(v.position)]);
    std::vector<std::int64_t> renumber(graph.vertex_count(), -1);
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
      if (hit.count(orbit[v])) {
        renumber[v] = static_cast<std::int64_t>(kept.size());
        kept.push_back(static_cast<std::int64_t>(v));
      }
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (auto [a, b] : graph.edge_set()) {
      const auto ra = renumber[static_cast<std::size_t>(a)];
      const auto rb = renumber[static_cast<std::size_t>(b)];
      if (ra >= 0 && rb >= 0) edges.emplace_back(ra, rb);
    }
    std::vector<Permutation> generators;
    for (const auto& g : graph.generators()) {
      Permutation p;
      for (auto v : kept) p.push_back(renumber[static_cast<std::size_t>(g[static_cast<std::size_t>(v)])]);
      generators.push_back(std::move(p));
    }
    restricted = GammaGraph::finite(kept.size(), edges, std::move(generators));
  }

  OrbitRestriction out{Instance{instance.delta, std::move(*restricted)}, WreathElement{}, kept};
  Word moved;
  for (const auto& s : word.syllables)
    moved.syllables.push_back(Syllable{*out.map_vertex(s.vertex, graph.is_translation()), s.value});
  out.element = gw_make(out.instance, moved, x.gamma);
  return out;
}

}  // namespace gwreath
