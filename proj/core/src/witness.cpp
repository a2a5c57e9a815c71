#include <algorithm>
#include <cstdlib>

#include "gwreath/error.hpp"
#include "gwreath/graph_wreath.hpp"

namespace gwreath {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::optional<ObstructionLemma> lemma_for(const DifferenceFamily& f, std::int64_t t) {
  switch (f.kind()) {
    case DifferenceFamily::Kind::Finite:
      return std::nullopt;
    case DifferenceFamily::Kind::Factorial:
      if (f.shift() == 0 && t == 0) return ObstructionLemma::FactorialDivisibility;
      if (std::abs(t) == f.shift()) return ObstructionLemma::FactorialTail;
      return std::nullopt;
    case DifferenceFamily::Kind::Arithmetic:
      if (floor_mod(t - f.start(), f.step()) == 0 || floor_mod(-t - f.start(), f.step()) == 0)
        return ObstructionLemma::ArithmeticCover;
      return std::nullopt;
  }
  return std::nullopt;
}

const std::vector<DifferenceFamily>& families_between(const GammaGraph& graph, int c, int d) {
  return graph.families(std::min(c, d), std::max(c, d));
}

Word syllables(std::initializer_list<Syllable> list) { return Word{std::vector<Syllable>(list)}; }

}  // namespace

std::optional<Obstruction> find_obstruction(const GammaGraph& graph, int from_label, int to_label,
                                            std::int64_t offset) {
  if (!graph.is_translation()) return std::nullopt;
  for (const auto& f : families_between(graph, from_label, to_label))
    if (auto lemma = lemma_for(f, offset))
      return Obstruction{*lemma, from_label, to_label, f, offset};
  return std::nullopt;
}

bool lemma_applies(const GammaGraph& graph, const Obstruction& obstruction) {
  if (!graph.is_translation()) return false;
  const int labels = static_cast<int>(graph.labels().size());
  if (obstruction.from_label < 0 || obstruction.to_label < 0 || obstruction.from_label >= labels ||
      obstruction.to_label >= labels)
    return false;
  const auto& list = families_between(graph, obstruction.from_label, obstruction.to_label);
  if (std::find(list.begin(), list.end(), obstruction.family) == list.end()) return false;
  const auto lemma = lemma_for(obstruction.family, obstruction.offset);
  return lemma && *lemma == obstruction.lemma;
}

bool offset_hit_up_to(const Obstruction& obstruction, std::int64_t max_modulus) {
  for (std::int64_t m = 1; m <= max_modulus; ++m)
    if (!obstruction.family.residues_mod(m).contains(obstruction.offset)) return false;
  return true;
}

std::string lemma_name(ObstructionLemma lemma) {
  switch (lemma) {
    case ObstructionLemma::FactorialDivisibility: return "factorial-divisibility";
    case ObstructionLemma::FactorialTail: return "factorial-tail";
    case ObstructionLemma::ArithmeticCover: return "arithmetic-cover";
  }
  return "?";
}

std::string describe(const GammaGraph& graph, const Obstruction& o) {
  const std::string pair = graph.labels().at(static_cast<std::size_t>(o.from_label)) + "-" +
                           graph.labels().at(static_cast<std::size_t>(o.to_label));
  const std::string t = std::to_string(o.offset);
  const auto& f = o.family;
  switch (o.lemma) {
    case ObstructionLemma::FactorialDivisibility:
      return "offset 0 lies in " + to_string(f) + " (" + pair +
             ") modulo every m: m divides n! for n >= m";
    case ObstructionLemma::FactorialTail:
      return "offset " + t + " lies in " + to_string(f) + " (" + pair + ") modulo every m: " +
             std::to_string(f.shift()) + " + n! = " + std::to_string(f.shift()) +
             " (mod m) for n >= m";
    case ObstructionLemma::ArithmeticCover:
      return "offset " + t + " lies in " + to_string(f) + " (" + pair + ") modulo every m: " +
             std::to_string(f.step()) + " divides +-" + t + " - " + std::to_string(f.start());
  }
  return {};
}

std::string witness_tag(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::NonAbelianLoop: return "nonabelian-loop";
    case WitnessKind::NonNeighbourCollapse: return "non-neighbour-collapse";
    case WitnessKind::OrbitCollapse: return "orbit-collapse";
  }
  return "?";
}

std::optional<WitnessKind> parse_witness_tag(const std::string& tag) {
  for (auto k : {WitnessKind::NonAbelianLoop, WitnessKind::NonNeighbourCollapse,
                 WitnessKind::OrbitCollapse})
    if (witness_tag(k) == tag) return k;
  return std::nullopt;
}

namespace {

// Vertex group elements of the witness, defaults filled in and hypotheses on
// them checked.
std::vector<GroupElement> resolve_elements(const Instance& instance, WitnessKind kind,
                                           const WitnessParams& params) {
  const auto& delta = instance.delta;
  const auto& graph = instance.graph;
  const std::size_t want_vertices = kind == WitnessKind::NonAbelianLoop ? 1 : 2;
  if (params.vertices.size() != want_vertices)
    throw InvalidArgument(witness_tag(kind) + " takes " + std::to_string(want_vertices) +
                          " vertex argument(s)");
  for (const auto& v : params.vertices) graph.require_vertex(v);
  for (const auto& g : params.delta_elements) require_valid(delta, g);

  if (kind == WitnessKind::NonAbelianLoop) {
    if (params.delta_elements.empty()) {
      auto pair = non_commuting_pair(delta);
      if (!pair) throw NotCertifiable("vertex group " + to_string(delta) + " is abelian");
      return {pair->first, pair->second};
    }
    if (params.delta_elements.size() != 2)
      throw InvalidArgument(witness_tag(kind) + " takes two vertex group elements");
    if (commute(delta, params.delta_elements[0], params.delta_elements[1]))
      throw NotCertifiable("the given vertex group elements commute");
    return params.delta_elements;
  }

  if (params.vertices[0] == params.vertices[1])
    throw InvalidArgument(witness_tag(kind) + " needs two distinct vertices");
  if (kind == WitnessKind::NonNeighbourCollapse && graph.adjacent(params.vertices[0], params.vertices[1]))
    throw NotCertifiable("the two vertices are adjacent");
  if (params.delta_elements.empty()) {
    auto some = some_nontrivial(delta);
    if (!some) throw NotCertifiable("vertex group is trivial");
    return {*some};
  }
  if (params.delta_elements.size() != 1)
    throw InvalidArgument(witness_tag(kind) + " takes one vertex group element");
  if (is_identity(delta, params.delta_elements[0]))
    throw InvalidArgument("vertex group element must be nontrivial");
  return params.delta_elements;
}

WreathElement build(const Instance& instance, WitnessKind kind, const std::vector<Vertex>& vs,
                    const std::vector<GroupElement>& gs) {
  const auto& delta = instance.delta;
  const GammaElement e = instance.graph.gamma_identity();
  const Vertex v = vs[0];
  const GroupElement& g = gs[0];
  switch (kind) {
    case WitnessKind::NonAbelianLoop: {
      const GroupElement& h = gs[1];
      return gw_make(instance,
                     syllables({{v, g}, {v, h}, {v, invert(delta, g)}, {v, invert(delta, h)}}), e);
    }
    case WitnessKind::NonNeighbourCollapse: {
      const Vertex w = vs[1];
      const GroupElement gi = invert(delta, g);
      return gw_make(instance, syllables({{v, g}, {w, g}, {v, gi}, {w, gi}}), e);
    }
    case WitnessKind::OrbitCollapse:
      return gw_make(instance, syllables({{v, g}, {vs[1], invert(delta, g)}}), e);
  }
  throw InvalidArgument("unknown witness kind");
}

std::optional<Obstruction> obstruction_for(const GammaGraph& graph, WitnessKind kind,
                                           const std::vector<Vertex>& vs) {
  switch (kind) {
    case WitnessKind::NonAbelianLoop:
      return find_obstruction(graph, vs[0].label, vs[0].label, 0);
    case WitnessKind::NonNeighbourCollapse:
      return find_obstruction(graph, vs[0].label, vs[1].label, vs[1].position - vs[0].position);
    case WitnessKind::OrbitCollapse:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

WreathElement witness_element(const Instance& instance, WitnessKind kind,
                              const WitnessParams& params) {
  return build(instance, kind, params.vertices, resolve_elements(instance, kind, params));
}

NonRFWitness witness(const Instance& instance, WitnessKind kind, const WitnessParams& params) {
  const auto& graph = instance.graph;
  NonRFWitness out;
  out.kind = kind;
  out.vertices = params.vertices;
  out.delta_elements = resolve_elements(instance, kind, params);
  out.element = build(instance, kind, out.vertices, out.delta_elements);
  if (gw_is_identity(instance, out.element)) throw NotCertifiable("witness element is trivial");
  if (!graph.is_translation())
    throw NotCertifiable(
        "finite-mode actions factor through a finite group whose trivial subgroup separates "
        "all vertices");
  if (kind == WitnessKind::OrbitCollapse)
    throw NotCertifiable("distinct vertices of a translation graph are separated by mZ for large m");
  auto obstruction = obstruction_for(graph, kind, out.vertices);
  if (!obstruction) {
    const std::int64_t t = kind == WitnessKind::NonAbelianLoop
                               ? 0
                               : out.vertices[1].position - out.vertices[0].position;
    throw NotCertifiable("no built-in lemma shows offset " + std::to_string(t) +
                         " is hit modulo every m");
  }
  out.obstruction = *obstruction;
  return out;
}

bool verify_witness(const Instance& instance, const NonRFWitness& w, std::int64_t max_modulus) {
  try {
    const WitnessParams params{w.vertices, w.delta_elements};
    if (resolve_elements(instance, w.kind, params) != w.delta_elements) return false;
    const WreathElement element = build(instance, w.kind, w.vertices, w.delta_elements);
    if (element != w.element || gw_is_identity(instance, element)) return false;
    const auto expected = obstruction_for(instance.graph, w.kind, w.vertices);
    if (!expected || !(*expected == w.obstruction)) return false;
    return lemma_applies(instance.graph, w.obstruction) && offset_hit_up_to(w.obstruction, max_modulus);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace gwreath
