#include "gwreath/graph_product.hpp"

#include <algorithm>
#include <set>

#include "gwreath/error.hpp"

namespace gwreath {

namespace {

// Single left-to-right pass. Appending a syllable to a reduced word either
// merges it into the last same-vertex syllable reachable through commuting
// letters, cancels that syllable, or leaves the word reduced.
std::vector<Syllable> reduce(const GraphView& graph, const GroupSpec& delta, const Word& w) {
  std::vector<Syllable> out;
  out.reserve(w.size());
  for (const auto& s : w.syllables) {
    require_valid(delta, s.value);
    if (is_identity(delta, s.value)) continue;
    bool absorbed = false;
    for (std::size_t p = out.size(); p-- > 0;) {
      if (out[p].vertex == s.vertex) {
        GroupElement merged = compose(delta, out[p].value, s.value);
        if (is_identity(delta, merged)) out.erase(out.begin() + static_cast<std::ptrdiff_t>(p));
        else out[p].value = std::move(merged);
        absorbed = true;
        break;
      }
      if (!graph.adjacent(out[p].vertex, s.vertex)) break;
    }
    if (!absorbed) out.push_back(s);
  }
  return out;
}

// Lexicographically least linear extension of the dependency order of a
// reduced word (two letters are dependent when their vertices are equal or
// non-adjacent).
std::vector<Syllable> lex_normal_form(const GraphView& graph, std::vector<Syllable> letters) {
  const std::size_t n = letters.size();
  std::vector<std::vector<std::size_t>> successors(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool dependent = letters[i].vertex == letters[j].vertex ||
                             !graph.adjacent(letters[i].vertex, letters[j].vertex);
      if (dependent) {
        successors[i].push_back(j);
        ++pending[j];
      }
    }
  std::vector<bool> taken(n, false);
  std::vector<Syllable> out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (taken[j] || pending[j] != 0) continue;
      if (best == n || letters[j].vertex < letters[best].vertex) best = j;
    }
    taken[best] = true;
    for (auto k : successors[best]) --pending[k];
    out.push_back(std::move(letters[best]));
  }
  return out;
}

void require_vertices(const GammaGraph& graph, const Word& w) {
  for (const auto& s : w.syllables) graph.require_vertex(s.vertex);
}

}  // namespace

Syllable make_syllable(const GroupSpec& delta, const Vertex& v, GroupElement value) {
  require_valid(delta, value);
  if (is_identity(delta, value)) throw InvalidArgument("syllables must carry a nontrivial value");
  return Syllable{v, std::move(value)};
}

GraphView view_of(const GammaGraph& graph) {
  const GammaGraph* g = &graph;
  return GraphView{[g](const Vertex& a, const Vertex& b) { return g->adjacent(a, b); },
                   [](const Vertex&) { return false; }};
}

GraphView view_of(const QuotientGraph& quotient) {
  const QuotientGraph* q = &quotient;
  auto id = [q](const Vertex& v) {
    if (v.label != 0 || v.position < 0 || static_cast<std::size_t>(v.position) >= q->size())
      throw InvalidArgument("vertex is not an orbit of the quotient graph");
    return static_cast<std::size_t>(v.position);
  };
  return GraphView{[q, id](const Vertex& a, const Vertex& b) { return q->adjacent(id(a), id(b)); },
                   [q, id](const Vertex& a) { return static_cast<bool>(q->loop[id(a)]); }};
}

Word canonical_form(const GraphView& graph, const GroupSpec& delta, const Word& w) {
  return Word{lex_normal_form(graph, reduce(graph, delta, w))};
}

Word canonical_form(const GammaGraph& graph, const GroupSpec& delta, const Word& w) {
  require_vertices(graph, w);
  return canonical_form(view_of(graph), delta, w);
}

Word gp_compose(const GraphView& graph, const GroupSpec& delta, const Word& a, const Word& b) {
  Word joined = a;
  joined.syllables.insert(joined.syllables.end(), b.syllables.begin(), b.syllables.end());
  return canonical_form(graph, delta, joined);
}

Word gp_compose(const GammaGraph& graph, const GroupSpec& delta, const Word& a, const Word& b) {
  require_vertices(graph, a);
  require_vertices(graph, b);
  return gp_compose(view_of(graph), delta, a, b);
}

Word gp_invert(const GraphView& graph, const GroupSpec& delta, const Word& w) {
  Word out;
  out.syllables.reserve(w.size());
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    out.syllables.push_back(Syllable{it->vertex, invert(delta, it->value)});
  return canonical_form(graph, delta, out);
}

Word gp_invert(const GammaGraph& graph, const GroupSpec& delta, const Word& w) {
  require_vertices(graph, w);
  return gp_invert(view_of(graph), delta, w);
}

bool is_trivial(const GammaGraph& graph, const GroupSpec& delta, const Word& w) {
  return canonical_form(graph, delta, w).empty();
}

bool equal(const GammaGraph& graph, const GroupSpec& delta, const Word& a, const Word& b) {
  return canonical_form(graph, delta, a) == canonical_form(graph, delta, b);
}

std::vector<Vertex> support(const GammaGraph& graph, const GroupSpec& delta, const Word& w) {
  std::set<Vertex> letters;
  for (const auto& s : canonical_form(graph, delta, w).syllables) letters.insert(s.vertex);
  return {letters.begin(), letters.end()};
}

Word retract(const GammaGraph& graph, const GroupSpec& delta, const Word& w,
             const std::vector<Vertex>& keep) {
  require_vertices(graph, w);
  const std::set<Vertex> kept(keep.begin(), keep.end());
  Word out;
  for (const auto& s : w.syllables)
    if (kept.count(s.vertex)) out.syllables.push_back(s);
  return canonical_form(view_of(graph), delta, out);
}

Word push_forward(const GammaGraph& source, const Word& w, const VertexMap& vertex_map,
                  const Homomorphism& delta_map, const GraphView& destination) {
  require_vertices(source, w);
  const bool abelian_target = is_abelian(delta_map.target());
  Word image;
  image.syllables.reserve(w.size());
  for (const auto& s : w.syllables) {
    auto v = vertex_map(s.vertex);
    if (!v) continue;
    image.syllables.push_back(Syllable{*v, delta_map(s.value)});
  }
  if (!abelian_target && destination.has_loop) {
    for (const auto& v : support(source, delta_map.source(), w)) {
      const auto target = vertex_map(v);
      if (target && destination.has_loop(*target))
        throw LoopObstruction("image of vertex " + source.vertex_name(v) +
                              " carries a loop and the vertex group is non-abelian");
    }
  }
  return canonical_form(destination, delta_map.target(), image);
}

std::string to_string(const Word& w, const std::function<std::string(const Vertex&)>& name) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& s : w.syllables) {
    if (!out.empty()) out += ' ';
    out += name(s.vertex) + "^" + to_string(s.value);
  }
  return out;
}

std::string to_string(const GammaGraph& graph, const Word& w) {
  return to_string(w, [&](const Vertex& v) { return graph.vertex_name(v); });
}

}  // namespace gwreath
