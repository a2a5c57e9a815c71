#include "gwreath/lef.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "gwreath/error.hpp"

namespace gwreath {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

template <typename T>
std::vector<T> dedupe(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Integers that must stay distinct modulo m: A, the positions of E, and
// e + |b| for every realised offset b at a label pair touching e.
std::vector<std::int64_t> spread_set(const Truncation& t, const std::vector<GammaElement>& a,
                                     const std::vector<Vertex>& e) {
  std::set<std::int64_t> out;
  for (const auto& g : a) out.insert(g.coords[0]);
  for (const auto& v : e) {
    out.insert(v.position);
    for (const auto& [key, mags] : t.retained)
      if (key.first == v.label || key.second == v.label)
        for (auto b : mags) out.insert(v.position + b);
  }
  return {out.begin(), out.end()};
}

bool distinct_mod(const std::vector<std::int64_t>& values, std::int64_t m) {
  std::set<std::int64_t> seen;
  for (auto x : values)
    if (!seen.insert(floor_mod(x, m)).second) return false;
  return true;
}

LEFCertificate translation_certificate(const GammaGraph& graph, const std::vector<GammaElement>& a,
                                       const std::vector<Vertex>& e, std::int64_t bound) {
  Truncation trunc = truncate_graph(graph, e);
  const auto spread = spread_set(trunc, a, e);
  const std::int64_t rule_modulus = spread.empty() ? 1 : spread.back() - spread.front() + 1;

  auto new_label = [&trunc](int c) {
    const auto it = std::find(trunc.kept_labels.begin(), trunc.kept_labels.end(), c);
    return static_cast<int>(it - trunc.kept_labels.begin());
  };

  for (std::int64_t m = 1; m <= bound; ++m) {
    if (!distinct_mod(spread, m)) continue;
    const QuotientGraph y = quotient_graph(trunc.graph, ModulusSubgroup{m});
    std::vector<std::size_t> psi;
    for (const auto& v : e) psi.push_back(y.orbit_of(Vertex{new_label(v.label), v.position}));
    if (dedupe(psi).size() != psi.size()) continue;
    bool induced = true;
    for (std::size_t i = 0; i < e.size() && induced; ++i) {
      induced = !y.loop[psi[i]];
      for (std::size_t j = i + 1; j < e.size() && induced; ++j)
        induced = graph.adjacent(e[i], e[j]) == y.adjacent(psi[i], psi[j]);
    }
    if (!induced) continue;

    LEFCertificate cert;
    cert.q = GroupSpec::cyclic(m);
    cert.a = a;
    cert.e = e;
    cert.y = y;
    cert.modulus = m;
    cert.rule_modulus = rule_modulus;
    cert.rule = "any m > max - min of A, E and E + |B| (here " + std::to_string(rule_modulus - 1) + ")";
    for (const auto& g : a) cert.phi.push_back(residue(cert.q, floor_mod(g.coords[0], m)));
    cert.psi = psi;
    const std::size_t labels = trunc.kept_labels.size();
    cert.action.assign(static_cast<std::size_t>(m), std::vector<std::size_t>(y.size()));
    for (std::int64_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < labels; ++c)
        for (std::int64_t x = 0; x < m; ++x)
          cert.action[static_cast<std::size_t>(r)][y.orbit_of(Vertex{static_cast<int>(c), x})] =
              y.orbit_of(Vertex{static_cast<int>(c), x + r});
    cert.truncation = std::move(trunc);
    return cert;
  }
  throw SearchExhausted("no LEF modulus <= " + std::to_string(bound), bound);
}

LEFCertificate finite_certificate(const GammaGraph& graph, const std::vector<GammaElement>& a,
                                  const std::vector<Vertex>& e) {
  constexpr std::size_t kMaxTable = 128;
  const auto& img = graph.image();
  if (img.size() > kMaxTable)
    throw InvalidArgument("action image too large for a table group (" +
                          std::to_string(img.size()) + " elements)");
  std::vector<std::vector<std::size_t>> rows(img.size(), std::vector<std::size_t>(img.size()));
  for (std::size_t i = 0; i < img.size(); ++i)
    for (std::size_t j = 0; j < img.size(); ++j) rows[i][j] = img.product(i, j);

  LEFCertificate cert;
  cert.q = GroupSpec::finite_table(rows, 0);
  cert.a = a;
  cert.e = e;
  cert.y = quotient_graph(graph, FiniteSubgroup{{0}, 1});
  cert.modulus = 1;
  cert.rule_modulus = 1;
  cert.rule = "Q is the action image and Y the graph";
  for (const auto& g : a) cert.phi.push_back(table_element(cert.q, img.image_of(g)));
  for (const auto& v : e) cert.psi.push_back(cert.y.orbit_of(v));
  cert.action.resize(img.size());
  for (std::size_t g = 0; g < img.size(); ++g)
    for (std::size_t v = 0; v < graph.vertex_count(); ++v)
      cert.action[g].push_back(cert.y.vertex_orbit[static_cast<std::size_t>(img.element(g)[v])]);
  return cert;
}

}  // namespace

Truncation truncate_graph(const GammaGraph& graph, const std::vector<Vertex>& e) {
  if (!graph.is_translation()) throw InvalidArgument("truncation needs a translation graph");
  for (const auto& v : e) graph.require_vertex(v);
  std::set<int> labels;
  for (const auto& v : e) labels.insert(v.label);
  std::vector<int> kept(labels.begin(), labels.end());

  std::map<std::pair<int, int>, std::set<std::int64_t>> realised;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (e[i] != e[j] && graph.adjacent(e[i], e[j])) {
        const auto key = std::minmax(e[i].label, e[j].label);
        realised[{key.first, key.second}].insert(std::abs(e[j].position - e[i].position));
      }

  std::vector<std::string> names;
  for (auto c : kept) names.push_back(graph.labels()[static_cast<std::size_t>(c)]);
  GammaGraph::FamilyMap families;
  std::map<std::pair<int, int>, std::vector<std::int64_t>> retained;
  for (const auto& [key, mags] : realised) {
    std::vector<std::int64_t> list(mags.begin(), mags.end());
    const auto c = static_cast<int>(std::find(kept.begin(), kept.end(), key.first) - kept.begin());
    const auto d = static_cast<int>(std::find(kept.begin(), kept.end(), key.second) - kept.begin());
    families[{c, d}] = {DifferenceFamily::finite(list)};
    retained[key] = std::move(list);
  }
  return Truncation{kept, std::move(retained),
                    GammaGraph::translation(std::move(names), std::move(families))};
}

LEFCertificate lef_certificate(const GammaGraph& graph, const std::vector<GammaElement>& a_in,
                               const std::vector<Vertex>& e_in, std::int64_t bound) {
  if (bound < 1) throw InvalidArgument("search bound must be >= 1");
  for (const auto& g : a_in) graph.require_gamma(g);
  for (const auto& v : e_in) graph.require_vertex(v);
  const auto a = dedupe(a_in);
  const auto e = dedupe(e_in);
  LEFCertificate cert = graph.is_translation() ? translation_certificate(graph, a, e, bound)
                                               : finite_certificate(graph, a, e);
  const LEFCheck check = check_lef(cert, graph, a, e);
  if (!check.ok) throw Error("internal: LEF certificate fails verification: " + check.failures[0]);
  return cert;
}

LEFCheck check_lef(const LEFCertificate& cert, const GammaGraph& graph,
                   const std::vector<GammaElement>& a_in, const std::vector<Vertex>& e_in) {
  LEFCheck out;
  auto fail = [&out](std::string why) {
    out.ok = false;
    out.failures.push_back(std::move(why));
  };
  try {
    const auto a = dedupe(a_in);
    const auto e = dedupe(e_in);
    if (cert.a != a) fail("A does not match the certificate");
    if (cert.e != e) fail("E does not match the certificate");
    if (cert.phi.size() != cert.a.size() || cert.psi.size() != cert.e.size()) {
      fail("phi or psi has the wrong length");
      return out;
    }
    const auto& q = cert.q;
    if (!q.is_finite()) fail("Q is not finite");
    const std::size_t qn = static_cast<std::size_t>(*q.order());
    const std::size_t yn = cert.y.size();
    if (cert.action.size() != qn) fail("action table has the wrong number of rows");
    for (const auto& row : cert.action) {
      if (row.size() != yn || dedupe(row).size() != yn ||
          std::any_of(row.begin(), row.end(), [yn](std::size_t x) { return x >= yn; }))
        fail("action row is not a permutation of Y");
    }
    for (auto p : cert.psi)
      if (p >= yn) fail("psi leaves Y");
    if (!out.ok) return out;
    for (std::size_t g = 0; g < qn; ++g) {
      const auto& row = cert.action[g];
      for (auto [x, y] : cert.y.edges)
        if (!cert.y.adjacent(row[x], row[y])) fail("Q does not act by graph automorphisms");
      for (std::size_t x = 0; x < yn; ++x)
        if (cert.y.loop[x] != cert.y.loop[row[x]]) fail("Q does not preserve loops");
    }
    for (const auto& g : cert.phi) require_valid(q, g);

    // phi injective, psi injective.
    if (dedupe(cert.phi).size() != cert.phi.size()) fail("phi is not injective");
    if (dedupe(cert.psi).size() != cert.psi.size()) fail("psi is not injective");

    // psi(E) is an induced copy of E.
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (cert.y.loop[cert.psi[i]]) fail("loop at psi(" + graph.vertex_name(e[i]) + ")");
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (graph.adjacent(e[i], e[j]) != cert.y.adjacent(cert.psi[i], cert.psi[j]))
          fail("adjacency of " + graph.vertex_name(e[i]) + ", " + graph.vertex_name(e[j]) +
               " is not preserved");
    }

    // Partial homomorphism on A.
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) {
        const auto ab = gamma_compose(a[i], a[j]);
        const auto it = std::lower_bound(a.begin(), a.end(), ab);
        if (it == a.end() || *it != ab) continue;
        const auto k = static_cast<std::size_t>(it - a.begin());
        if (compose(q, cert.phi[i], cert.phi[j]) != cert.phi[k])
          fail("phi(a) phi(b) != phi(ab) for a = " + to_string(a[i]) + ", b = " + to_string(a[j]));
      }

    // Equivariance.
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < e.size(); ++j) {
        const Vertex moved = graph.act(a[i], e[j]);
        const auto it = std::lower_bound(e.begin(), e.end(), moved);
        if (it == e.end() || *it != moved) continue;
        const auto k = static_cast<std::size_t>(it - e.begin());
        const std::size_t g = element_index(q, cert.phi[i]);
        if (cert.action[g][cert.psi[j]] != cert.psi[k])
          fail("phi(a) psi(e) != psi(ae) for a = " + to_string(a[i]) + ", e = " +
               graph.vertex_name(e[j]));
      }
  } catch (const Error& ex) {
    fail(ex.what());
  }
  return out;
}

bool verify_lef(const LEFCertificate& cert, const GammaGraph& graph,
                const std::vector<GammaElement>& a, const std::vector<Vertex>& e) {
  return check_lef(cert, graph, a, e).ok;
}

}  // namespace gwreath
