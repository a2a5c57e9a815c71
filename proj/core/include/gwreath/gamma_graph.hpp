#pragma once

// Graphs with an action of a finitely generated free abelian group.
//
// Two shapes are supported:
//
//  * Translation graphs. Vertices are C x Z for a finite label set C, and Z
//    acts by shifting the second coordinate. Edges are translation invariant,
//    so they are described by difference families: (c, x) ~ (c', y) iff
//    y - x lies in one of the families attached to {c, c'}.
//
//  * Finite graphs with Z^n acting through n commuting automorphisms.
//
// Quotients by finite-index subgroups K keep loops: an orbit Kv carries a loop
// when two distinct vertices of Kv are adjacent.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gwreath {

// Residues modulo m, as a membership bitmap.
class ResidueSet {
 public:
  explicit ResidueSet(std::int64_t modulus);
  std::int64_t modulus() const noexcept { return modulus_; }
  // Accepts any integer; reduces it first.
  bool contains(std::int64_t value) const;
  void insert(std::int64_t value);
  void merge(const ResidueSet& other);
  std::vector<std::int64_t> values() const;
  bool empty() const;

  friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

 private:
  std::int64_t modulus_;
  std::vector<bool> bits_;
};

// A symmetric set of nonzero edge offsets.
class DifferenceFamily {
 public:
  enum class Kind { Finite, Factorial, Arithmetic };

  // {+-d : d in offsets}; zero is rejected.
  static DifferenceFamily finite(const std::vector<std::int64_t>& offsets);
  // {+-(shift + n!) : n >= 1}
  static DifferenceFamily factorial(std::int64_t shift);
  // {+-(a + b n) : n >= 0}
  static DifferenceFamily arithmetic(std::int64_t a, std::int64_t b);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  // Positive members of a Finite family, ascending.
  const std::vector<std::int64_t>& magnitudes() const noexcept { return magnitudes_; }
  std::int64_t shift() const noexcept { return a_; }
  std::int64_t start() const noexcept { return a_; }
  std::int64_t step() const noexcept { return b_; }

  // Exact membership; factorial members are generated until they pass |d|.
  bool contains(std::int64_t d) const;
  // { d mod m : d in family }
  ResidueSet residues_mod(std::int64_t m) const;
  // Largest integer appearing in the description (offsets, shift, a, b).
  std::int64_t largest_datum() const;

  friend bool operator==(const DifferenceFamily&, const DifferenceFamily&) = default;

 private:
  DifferenceFamily(Kind kind, std::vector<std::int64_t> magnitudes, std::int64_t a, std::int64_t b)
      : kind_(kind), magnitudes_(std::move(magnitudes)), a_(a), b_(b) {}
  Kind kind_;
  std::vector<std::int64_t> magnitudes_;
  std::int64_t a_ = 0;
  std::int64_t b_ = 0;
};

std::string to_string(const DifferenceFamily& family);

// Translation graphs: (label index, position). Finite graphs: label 0 and the
// vertex id as position. Ordered lexicographically.
struct Vertex {
  int label = 0;
  std::int64_t position = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline Vertex finite_vertex(std::int64_t id) { return Vertex{0, id}; }

// Element of Z^n; translation graphs use n = 1.
struct GammaElement {
  std::vector<std::int64_t> coords;

  bool is_identity() const;
  friend bool operator==(const GammaElement&, const GammaElement&) = default;
  friend auto operator<=>(const GammaElement&, const GammaElement&) = default;
};

GammaElement gamma_compose(const GammaElement& a, const GammaElement& b);
GammaElement gamma_invert(const GammaElement& a);
std::string to_string(const GammaElement& g);

using Permutation = std::vector<std::int64_t>;

// Finite image of Z^n in Sym(V) for a finite-mode graph, with its subgroup
// lattice. Element 0 is the identity.
class ActionImage {
 public:
  ActionImage(std::size_t vertex_count, std::vector<Permutation> generators);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const Permutation& element(std::size_t i) const { return elements_[i]; }
  // A preimage in Z^n of element i.
  const GammaElement& exponents(std::size_t i) const { return exponents_[i]; }
  std::size_t product(std::size_t a, std::size_t b) const { return table_[a * size() + b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t image_of(const GammaElement& gamma) const;
  std::size_t index_of(const Permutation& p) const;

  // Smallest subgroup containing the given elements, as sorted indices.
  std::vector<std::size_t> closure(const std::vector<std::size_t>& generators) const;
  bool is_subgroup(const std::vector<std::size_t>& members) const;
  // Subgroup generated by the N-th powers of the generators.
  std::vector<std::size_t> power_subgroup(std::int64_t n) const;
  // All subgroups, ascending by index, ties broken by member list.
  const std::vector<std::vector<std::size_t>>& subgroups() const;
  // Orbit id of every vertex under the given subgroup; orbits numbered by
  // their smallest vertex.
  std::vector<std::size_t> orbits(const std::vector<std::size_t>& subgroup) const;

 private:
  void enumerate_subgroups() const;

  std::size_t vertex_count_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
  std::vector<GammaElement> exponents_;
  std::map<Permutation, std::size_t> index_;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generator_index_;
  std::vector<std::int64_t> generator_order_;
  mutable std::once_flag subgroups_once_;
  mutable std::vector<std::vector<std::size_t>> subgroups_;
};

struct ModulusSubgroup {
  std::int64_t modulus = 1;
  friend bool operator==(const ModulusSubgroup&, const ModulusSubgroup&) = default;
};

// K = preimage(P) intersected with lattice * Z^n, where P is a subgroup of the
// finite action image given by its member indices.
struct FiniteSubgroup {
  std::vector<std::size_t> members;
  std::int64_t lattice = 1;
  friend bool operator==(const FiniteSubgroup&, const FiniteSubgroup&) = default;
};

using Subgroup = std::variant<ModulusSubgroup, FiniteSubgroup>;

struct QuotientGraph {
  // lift[i] is the chosen representative of orbit i.
  std::vector<Vertex> lift;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // i < j
  std::vector<bool> loop;
  // Translation quotients: modulus (orbit of (c, x) is c * modulus + x mod m).
  std::int64_t modulus = 0;
  // Finite quotients: orbit id per vertex.
  std::vector<std::size_t> vertex_orbit;

  std::size_t size() const noexcept { return lift.size(); }
  bool adjacent(std::size_t a, std::size_t b) const;
  std::size_t orbit_of(const Vertex& v) const;

  friend bool operator==(const QuotientGraph&, const QuotientGraph&) = default;
};

// A finite graph on an explicit vertex list; edges index into `vertices`.
struct InducedGraph {
  std::vector<Vertex> vertices;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  friend bool operator==(const InducedGraph&, const InducedGraph&) = default;
};

struct OrbitCounts {
  std::int64_t vertex_orbits = 0;
  std::optional<std::int64_t> edge_orbits;  // nullopt means infinitely many
};

class GammaGraph {
 public:
  enum class Mode { Translation, Finite };
  using FamilyMap = std::map<std::pair<int, int>, std::vector<DifferenceFamily>>;

  // Family keys are label index pairs (c, c') with c <= c'.
  static GammaGraph translation(std::vector<std::string> labels, FamilyMap families);
  // Vertices 0..n-1; generators are image arrays of commuting automorphisms.
  static GammaGraph finite(std::size_t vertex_count,
                           const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                           std::vector<Permutation> generators);

  Mode mode() const noexcept { return mode_; }
  bool is_translation() const noexcept { return mode_ == Mode::Translation; }
  // Rank of the acting free abelian group.
  int rank() const noexcept;
  GammaElement gamma_identity() const;

  // Translation mode.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const FamilyMap& family_map() const noexcept { return families_; }
  const std::vector<DifferenceFamily>& families(int c, int d) const;
  int label_index(const std::string& name) const;
  bool all_families_finite() const;
  // Largest datum over all families, 0 when there are none.
  std::int64_t largest_datum() const;
  // Residues of the union of the families between c and d.
  ResidueSet residues(int c, int d, std::int64_t m) const;

  // Finite mode.
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::set<std::pair<std::int64_t, std::int64_t>>& edge_set() const noexcept {
    return edges_;
  }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const ActionImage& image() const;

  bool contains(const Vertex& v) const;
  void require_vertex(const Vertex& v) const;
  void require_gamma(const GammaElement& g) const;

  bool adjacent(const Vertex& v, const Vertex& w) const;
  Vertex act(const GammaElement& gamma, const Vertex& v) const;

  std::string vertex_name(const Vertex& v) const;
  Vertex parse_vertex(const std::string& text) const;

 private:
  GammaGraph() = default;
  Mode mode_ = Mode::Translation;
  std::vector<std::string> labels_;
  FamilyMap families_;
  std::size_t vertex_count_ = 0;
  std::set<std::pair<std::int64_t, std::int64_t>> edges_;
  std::vector<std::vector<bool>> adjacency_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const ActionImage> image_;
};

// { d mod m : d in family }, m >= 1.
ResidueSet residues_mod(const DifferenceFamily& family, std::int64_t m);

bool adjacent(const GammaGraph& graph, const Vertex& v, const Vertex& w);
Vertex act(const GammaGraph& graph, const GammaElement& gamma, const Vertex& v);

// Subgroup of the finite action image generated by the images of `gammas`.
FiniteSubgroup finite_subgroup(const GammaGraph& graph, const std::vector<GammaElement>& gammas,
                               std::int64_t lattice = 1);
// Validates the descriptor against the graph (mode, modulus, subgroup closure).
void require_subgroup(const GammaGraph& graph, const Subgroup& k);

QuotientGraph quotient_graph(const GammaGraph& graph, const Subgroup& k);
bool gamma_in_subgroup(const GammaGraph& graph, const Subgroup& k, const GammaElement& gamma);
// Canonical representative of gamma K in Gamma/K. Translation: {gamma mod m}.
// Finite: {smallest image index of the coset, gamma_i mod lattice...}.
GammaElement gamma_image(const GammaGraph& graph, const Subgroup& k, const GammaElement& gamma);
// Index of K in Gamma.
std::int64_t subgroup_index(const GammaGraph& graph, const Subgroup& k);

InducedGraph induced(const GammaGraph& graph, const std::vector<Vertex>& vertices);
OrbitCounts orbit_counts(const GammaGraph& graph);

std::string to_string(const Subgroup& k);

}  // namespace gwreath
