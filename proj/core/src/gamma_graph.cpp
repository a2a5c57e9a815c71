#include "gwreath/gamma_graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "gwreath/error.hpp"

namespace gwreath {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

__extension__ using Wide = __int128;

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<Wide>(a) * b) % m);
}

std::int64_t parse_int(std::string_view s, const std::string& context) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidArgument("bad integer in '" + context + "'");
  return v;
}

}  // namespace

// ---------------------------------------------------------------- ResidueSet

ResidueSet::ResidueSet(std::int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw InvalidArgument("modulus must be >= 1");
  bits_.assign(static_cast<std::size_t>(modulus), false);
}

bool ResidueSet::contains(std::int64_t value) const {
  return bits_[static_cast<std::size_t>(mod(value, modulus_))];
}

void ResidueSet::insert(std::int64_t value) {
  bits_[static_cast<std::size_t>(mod(value, modulus_))] = true;
}

void ResidueSet::merge(const ResidueSet& other) {
  if (other.modulus_ != modulus_) throw InvalidArgument("residue sets with different moduli");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] || other.bits_[i];
}

std::vector<std::int64_t> ResidueSet::values() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

bool ResidueSet::empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

// ----------------------------------------------------------- DifferenceFamily

DifferenceFamily DifferenceFamily::finite(const std::vector<std::int64_t>& offsets) {
  std::vector<std::int64_t> mags;
  for (auto d : offsets) {
    if (d == 0) throw InvalidArgument("difference families cannot contain 0");
    mags.push_back(d < 0 ? -d : d);
  }
  std::sort(mags.begin(), mags.end());
  mags.erase(std::unique(mags.begin(), mags.end()), mags.end());
  return DifferenceFamily(Kind::Finite, std::move(mags), 0, 0);
}

DifferenceFamily DifferenceFamily::factorial(std::int64_t shift) {
  if (shift < 0) throw InvalidArgument("factorial family shift must be >= 0");
  return DifferenceFamily(Kind::Factorial, {}, shift, 0);
}

DifferenceFamily DifferenceFamily::arithmetic(std::int64_t a, std::int64_t b) {
  if (a < 1) throw InvalidArgument("arithmetic family start must be >= 1");
  if (b < 1) throw InvalidArgument("arithmetic family step must be >= 1");
  return DifferenceFamily(Kind::Arithmetic, {}, a, b);
}

bool DifferenceFamily::contains(std::int64_t d) const {
  if (d == 0) return false;
  const std::int64_t x = d < 0 ? -d : d;
  switch (kind_) {
    case Kind::Finite: return std::binary_search(magnitudes_.begin(), magnitudes_.end(), x);
    case Kind::Factorial: {
      const std::int64_t target = x - a_;
      if (target < 1) return false;
      std::int64_t f = 1;
      for (std::int64_t n = 1;; ++n) {
        if (f > target / n) return false;  // n! would pass the target
        f *= n;
        if (f == target) return true;
        if (f > target) return false;
      }
    }
    case Kind::Arithmetic: return x >= a_ && (x - a_) % b_ == 0;
  }
  return false;
}

ResidueSet DifferenceFamily::residues_mod(std::int64_t m) const {
  ResidueSet out(m);
  switch (kind_) {
    case Kind::Finite:
      for (auto d : magnitudes_) {
        out.insert(d);
        out.insert(-d);
      }
      break;
    case Kind::Factorial: {
      // n! is divisible by m once n >= m, so the tail contributes +-shift.
      const std::int64_t s = mod(a_, m);
      std::int64_t fact = 1 % m;
      for (std::int64_t n = 1; n < std::max<std::int64_t>(m, 2); ++n) {
        fact = mulmod(fact, n % m, m);
        const std::int64_t r = mod(s + fact, m);
        out.insert(r);
        out.insert(-r);
      }
      out.insert(s);
      out.insert(-s);
      break;
    }
    case Kind::Arithmetic: {
      const std::int64_t a = mod(a_, m);
      const std::int64_t b = mod(b_, m);
      for (std::int64_t k = 0; k < m; ++k) {
        const std::int64_t r = mod(a + mulmod(b, k, m), m);
        out.insert(r);
        out.insert(-r);
      }
      break;
    }
  }
  return out;
}

std::int64_t DifferenceFamily::largest_datum() const {
  switch (kind_) {
    case Kind::Finite: return magnitudes_.empty() ? 0 : magnitudes_.back();
    case Kind::Factorial: return a_;
    case Kind::Arithmetic: return std::max(a_, b_);
  }
  return 0;
}

std::string to_string(const DifferenceFamily& family) {
  std::ostringstream os;
  switch (family.kind()) {
    case DifferenceFamily::Kind::Finite:
      os << "finite";
      for (auto d : family.magnitudes()) os << ' ' << d;
      break;
    case DifferenceFamily::Kind::Factorial: os << "factorial " << family.shift(); break;
    case DifferenceFamily::Kind::Arithmetic:
      os << "arithmetic " << family.start() << ' ' << family.step();
      break;
  }
  return os.str();
}

ResidueSet residues_mod(const DifferenceFamily& family, std::int64_t m) {
  return family.residues_mod(m);
}

// --------------------------------------------------------------- GammaElement

bool GammaElement::is_identity() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t x) { return x == 0; });
}

GammaElement gamma_compose(const GammaElement& a, const GammaElement& b) {
  if (a.coords.size() != b.coords.size()) throw InvalidArgument("gamma rank mismatch");
  GammaElement out{a.coords};
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

GammaElement gamma_invert(const GammaElement& a) {
  GammaElement out{a.coords};
  for (auto& x : out.coords) x = -x;
  return out;
}

std::string to_string(const GammaElement& g) {
  std::string out;
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(g.coords[i]);
  }
  return out;
}

// ------------------------------------------------------------- QuotientGraph

bool QuotientGraph::adjacent(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return edges.count({a, b}) != 0;
}

std::size_t QuotientGraph::orbit_of(const Vertex& v) const {
  if (modulus > 0)
    return static_cast<std::size_t>(v.label) * static_cast<std::size_t>(modulus) +
           static_cast<std::size_t>(mod(v.position, modulus));
  if (v.position < 0 || static_cast<std::size_t>(v.position) >= vertex_orbit.size())
    throw InvalidArgument("vertex outside the quotient's graph");
  return vertex_orbit[static_cast<std::size_t>(v.position)];
}

// ----------------------------------------------------------------- GammaGraph

GammaGraph GammaGraph::translation(std::vector<std::string> labels, FamilyMap families) {
  GammaGraph g;
  g.mode_ = Mode::Translation;
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty()) throw InvalidArgument("orbit labels must be nonempty");
    if (l.find_first_of(": \t") != std::string::npos)
      throw InvalidArgument("orbit label '" + l + "' contains a reserved character");
    if (!seen.insert(l).second) throw InvalidArgument("duplicate orbit label '" + l + "'");
  }
  const int n = static_cast<int>(labels.size());
  for (const auto& [key, list] : families) {
    if (key.first < 0 || key.second >= n || key.first > key.second)
      throw InvalidArgument("family key must be a label pair (c, d) with c <= d");
    (void)list;
  }
  // Drop empty lists so that equality and iteration see a canonical map.
  for (auto it = families.begin(); it != families.end();) {
    if (it->second.empty()) it = families.erase(it);
    else ++it;
  }
  g.labels_ = std::move(labels);
  g.families_ = std::move(families);
  return g;
}

GammaGraph GammaGraph::finite(std::size_t vertex_count,
                              const std::vector<std::pair<std::int64_t, std::int64_t>>& edges,
                              std::vector<Permutation> generators) {
  GammaGraph g;
  g.mode_ = Mode::Finite;
  g.vertex_count_ = vertex_count;
  g.adjacency_.assign(vertex_count, std::vector<bool>(vertex_count, false));
  const auto n = static_cast<std::int64_t>(vertex_count);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw InvalidArgument("edge endpoint out of range");
    if (a == b) throw InvalidArgument("graphs must be simplicial: loop at " + std::to_string(a));
    if (a > b) std::swap(a, b);
    g.edges_.insert({a, b});
    g.adjacency_[a][b] = g.adjacency_[b][a] = true;
  }
  for (const auto& p : generators) {
    if (p.size() != vertex_count) throw InvalidArgument("generator has the wrong length");
    std::vector<bool> hit(vertex_count, false);
    for (auto x : p) {
      if (x < 0 || x >= n || hit[x]) throw InvalidArgument("generator is not a permutation");
      hit[x] = true;
    }
    for (auto [a, b] : g.edges_)
      if (!g.adjacency_[p[a]][p[b]]) throw InvalidArgument("generator does not preserve edges");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      for (std::size_t x = 0; x < vertex_count; ++x)
        if (generators[i][generators[j][x]] != generators[j][generators[i][x]])
          throw InvalidArgument("generators must commute");
  g.generators_ = std::move(generators);
  g.image_ = std::make_shared<const ActionImage>(vertex_count, g.generators_);
  return g;
}

int GammaGraph::rank() const noexcept {
  return is_translation() ? 1 : static_cast<int>(generators_.size());
}

GammaElement GammaGraph::gamma_identity() const {
  return GammaElement{std::vector<std::int64_t>(static_cast<std::size_t>(rank()), 0)};
}

const std::vector<DifferenceFamily>& GammaGraph::families(int c, int d) const {
  static const std::vector<DifferenceFamily> kNone;
  if (c > d) std::swap(c, d);
  auto it = families_.find({c, d});
  return it == families_.end() ? kNone : it->second;
}

int GammaGraph::label_index(const std::string& name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  if (it == labels_.end()) throw InvalidArgument("unknown orbit label '" + name + "'");
  return static_cast<int>(it - labels_.begin());
}

bool GammaGraph::all_families_finite() const {
  for (const auto& [key, list] : families_)
    for (const auto& f : list)
      if (!f.is_finite()) return false;
  return true;
}

std::int64_t GammaGraph::largest_datum() const {
  std::int64_t best = 0;
  for (const auto& [key, list] : families_)
    for (const auto& f : list) best = std::max(best, f.largest_datum());
  return best;
}

ResidueSet GammaGraph::residues(int c, int d, std::int64_t m) const {
  ResidueSet out(m);
  for (const auto& f : families(c, d)) out.merge(f.residues_mod(m));
  return out;
}

const ActionImage& GammaGraph::image() const {
  if (!image_) throw InvalidArgument("translation graphs have no finite action image");
  return *image_;
}

bool GammaGraph::contains(const Vertex& v) const {
  if (is_translation()) return v.label >= 0 && v.label < static_cast<int>(labels_.size());
  return v.label == 0 && v.position >= 0 &&
         v.position < static_cast<std::int64_t>(vertex_count_);
}

void GammaGraph::require_vertex(const Vertex& v) const {
  if (!contains(v))
    throw InvalidArgument("vertex (" + std::to_string(v.label) + ", " +
                          std::to_string(v.position) + ") is not in the graph");
}

void GammaGraph::require_gamma(const GammaElement& g) const {
  if (g.coords.size() != static_cast<std::size_t>(rank()))
    throw InvalidArgument("group element has rank " + std::to_string(g.coords.size()) +
                          ", expected " + std::to_string(rank()));
}

bool GammaGraph::adjacent(const Vertex& v, const Vertex& w) const {
  require_vertex(v);
  require_vertex(w);
  if (v == w) return false;
  if (!is_translation())
    return adjacency_[static_cast<std::size_t>(v.position)][static_cast<std::size_t>(w.position)];
  const std::int64_t d = w.position - v.position;
  for (const auto& f : families(v.label, w.label))
    if (f.contains(d)) return true;
  return false;
}

Vertex GammaGraph::act(const GammaElement& gamma, const Vertex& v) const {
  require_vertex(v);
  require_gamma(gamma);
  if (is_translation()) return Vertex{v.label, v.position + gamma.coords[0]};
  const auto& p = image_->element(image_->image_of(gamma));
  return finite_vertex(p[static_cast<std::size_t>(v.position)]);
}

std::string GammaGraph::vertex_name(const Vertex& v) const {
  if (!is_translation()) return std::to_string(v.position);
  const std::string label = contains(v) ? labels_[static_cast<std::size_t>(v.label)]
                                        : "#" + std::to_string(v.label);
  return label + ":" + std::to_string(v.position);
}

Vertex GammaGraph::parse_vertex(const std::string& text) const {
  if (!is_translation()) {
    Vertex v = finite_vertex(parse_int(text, text));
    require_vertex(v);
    return v;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw InvalidArgument("vertex '" + text + "' must be written label:position");
  const int label = label_index(text.substr(0, colon));
  return Vertex{label, parse_int(std::string_view(text).substr(colon + 1), text)};
}

bool adjacent(const GammaGraph& graph, const Vertex& v, const Vertex& w) {
  return graph.adjacent(v, w);
}

Vertex act(const GammaGraph& graph, const GammaElement& gamma, const Vertex& v) {
  return graph.act(gamma, v);
}

// ------------------------------------------------------------------ Subgroups

FiniteSubgroup finite_subgroup(const GammaGraph& graph, const std::vector<GammaElement>& gammas,
                               std::int64_t lattice) {
  const auto& img = graph.image();
  std::vector<std::size_t> gens;
  for (const auto& g : gammas) {
    graph.require_gamma(g);
    gens.push_back(img.image_of(g));
  }
  if (lattice < 1) throw InvalidArgument("lattice scale must be >= 1");
  return FiniteSubgroup{img.closure(gens), lattice};
}

void require_subgroup(const GammaGraph& graph, const Subgroup& k) {
  if (graph.is_translation()) {
    const auto* m = std::get_if<ModulusSubgroup>(&k);
    if (m == nullptr) throw InvalidArgument("translation graphs take a modulus subgroup");
    if (m->modulus < 1) throw InvalidArgument("modulus must be >= 1");
    return;
  }
  const auto* p = std::get_if<FiniteSubgroup>(&k);
  if (p == nullptr) throw InvalidArgument("finite graphs take a subgroup of the action image");
  if (p->lattice < 1) throw InvalidArgument("lattice scale must be >= 1");
  if (!graph.image().is_subgroup(p->members)) throw InvalidArgument("P is not a subgroup");
}

namespace {

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Image of K in the action image: P intersected with the lattice powers.
std::vector<std::size_t> effective_image(const GammaGraph& graph, const FiniteSubgroup& k) {
  if (k.lattice == 1) return k.members;
  return intersect(k.members, graph.image().power_subgroup(k.lattice));
}

std::size_t coset_representative(const ActionImage& img, const std::vector<std::size_t>& members,
                                 std::size_t g) {
  std::size_t best = img.size();
  for (auto p : members) best = std::min(best, img.product(g, p));
  return best;
}

}  // namespace

QuotientGraph quotient_graph(const GammaGraph& graph, const Subgroup& k) {
  require_subgroup(graph, k);
  QuotientGraph q;
  if (graph.is_translation()) {
    const std::int64_t m = std::get<ModulusSubgroup>(k).modulus;
    const int labels = static_cast<int>(graph.labels().size());
    q.modulus = m;
    for (int c = 0; c < labels; ++c)
      for (std::int64_t r = 0; r < m; ++r) q.lift.push_back(Vertex{c, r});
    q.loop.assign(q.lift.size(), false);
    for (int c = 0; c < labels; ++c)
      for (int d = c; d < labels; ++d) {
        if (graph.families(c, d).empty()) continue;
        const ResidueSet res = graph.residues(c, d, m);
        for (std::int64_t r = 0; r < m; ++r)
          for (std::int64_t s = 0; s < m; ++s) {
            if (!res.contains(s - r)) continue;
            const std::size_t a = q.orbit_of(Vertex{c, r});
            const std::size_t b = q.orbit_of(Vertex{d, s});
            if (a == b) q.loop[a] = true;
            else q.edges.insert({std::min(a, b), std::max(a, b)});
          }
      }
    return q;
  }
  const auto& img = graph.image();
  q.vertex_orbit = img.orbits(effective_image(graph, std::get<FiniteSubgroup>(k)));
  std::size_t count = 0;
  for (auto o : q.vertex_orbit) count = std::max(count, o + 1);
  q.lift.assign(count, Vertex{});
  std::vector<bool> lifted(count, false);
  for (std::size_t v = 0; v < q.vertex_orbit.size(); ++v) {
    const auto o = q.vertex_orbit[v];
    if (!lifted[o]) {
      q.lift[o] = finite_vertex(static_cast<std::int64_t>(v));
      lifted[o] = true;
    }
  }
  q.loop.assign(count, false);
  for (auto [x, y] : graph.edge_set()) {
    const auto a = q.vertex_orbit[static_cast<std::size_t>(x)];
    const auto b = q.vertex_orbit[static_cast<std::size_t>(y)];
    if (a == b) q.loop[a] = true;
    else q.edges.insert({std::min(a, b), std::max(a, b)});
  }
  return q;
}

bool gamma_in_subgroup(const GammaGraph& graph, const Subgroup& k, const GammaElement& gamma) {
  require_subgroup(graph, k);
  graph.require_gamma(gamma);
  if (graph.is_translation())
    return mod(gamma.coords[0], std::get<ModulusSubgroup>(k).modulus) == 0;
  const auto& p = std::get<FiniteSubgroup>(k);
  for (auto x : gamma.coords)
    if (mod(x, p.lattice) != 0) return false;
  return std::binary_search(p.members.begin(), p.members.end(), graph.image().image_of(gamma));
}

GammaElement gamma_image(const GammaGraph& graph, const Subgroup& k, const GammaElement& gamma) {
  require_subgroup(graph, k);
  graph.require_gamma(gamma);
  if (graph.is_translation())
    return GammaElement{{mod(gamma.coords[0], std::get<ModulusSubgroup>(k).modulus)}};
  const auto& p = std::get<FiniteSubgroup>(k);
  const auto& img = graph.image();
  GammaElement out;
  out.coords.push_back(
      static_cast<std::int64_t>(coset_representative(img, p.members, img.image_of(gamma))));
  for (auto x : gamma.coords) out.coords.push_back(mod(x, p.lattice));
  return out;
}

std::int64_t subgroup_index(const GammaGraph& graph, const Subgroup& k) {
  require_subgroup(graph, k);
  if (graph.is_translation()) return std::get<ModulusSubgroup>(k).modulus;
  // Gamma/K is generated by the images of the unit vectors; enumerate it.
  const int n = graph.rank();
  std::set<GammaElement> seen;
  std::vector<GammaElement> frontier{graph.gamma_identity()};
  seen.insert(gamma_image(graph, k, graph.gamma_identity()));
  while (!frontier.empty()) {
    std::vector<GammaElement> next;
    for (const auto& g : frontier)
      for (int i = 0; i < n; ++i) {
        GammaElement h = g;
        h.coords[static_cast<std::size_t>(i)] += 1;
        if (seen.insert(gamma_image(graph, k, h)).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return static_cast<std::int64_t>(seen.size());
}

// ---------------------------------------------------------- induced / counts

InducedGraph induced(const GammaGraph& graph, const std::vector<Vertex>& vertices) {
  InducedGraph out;
  for (const auto& v : vertices) {
    graph.require_vertex(v);
    if (std::find(out.vertices.begin(), out.vertices.end(), v) == out.vertices.end())
      out.vertices.push_back(v);
  }
  for (std::size_t i = 0; i < out.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j)
      if (graph.adjacent(out.vertices[i], out.vertices[j])) out.edges.insert({i, j});
  return out;
}

OrbitCounts orbit_counts(const GammaGraph& graph) {
  OrbitCounts out;
  if (graph.is_translation()) {
    out.vertex_orbits = static_cast<std::int64_t>(graph.labels().size());
    if (!graph.all_families_finite()) return out;
    std::int64_t edges = 0;
    for (const auto& [key, list] : graph.family_map()) {
      std::set<std::int64_t> mags;
      for (const auto& f : list) mags.insert(f.magnitudes().begin(), f.magnitudes().end());
      // Within one orbit an edge class is fixed by |d|; between two orbits
      // the signed offset matters.
      edges += static_cast<std::int64_t>(mags.size()) * (key.first == key.second ? 1 : 2);
    }
    out.edge_orbits = edges;
    return out;
  }
  const auto& img = graph.image();
  std::vector<std::size_t> everything(img.size());
  for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
  const auto orbit = img.orbits(everything);
  out.vertex_orbits = orbit.empty() ? 0 : static_cast<std::int64_t>(
                                              *std::max_element(orbit.begin(), orbit.end()) + 1);
  std::set<std::pair<std::int64_t, std::int64_t>> classes;
  for (auto [x, y] : graph.edge_set()) {
    std::pair<std::int64_t, std::int64_t> best{x, y};
    for (std::size_t g = 0; g < img.size(); ++g) {
      const auto& p = img.element(g);
      std::pair<std::int64_t, std::int64_t> e{p[static_cast<std::size_t>(x)],
                                              p[static_cast<std::size_t>(y)]};
      if (e.first > e.second) std::swap(e.first, e.second);
      best = std::min(best, e);
    }
    classes.insert(best);
  }
  out.edge_orbits = static_cast<std::int64_t>(classes.size());
  return out;
}

std::string to_string(const Subgroup& k) {
  if (const auto* m = std::get_if<ModulusSubgroup>(&k)) return std::to_string(m->modulus) + "Z";
  const auto& p = std::get<FiniteSubgroup>(k);
  std::string out = "P{";
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.members[i]);
  }
  out += "}";
  if (p.lattice != 1) out += " & " + std::to_string(p.lattice) + "Z^n";
  return out;
}

}  // namespace gwreath
