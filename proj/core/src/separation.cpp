#include <algorithm>

#include "gwreath/error.hpp"
#include "gwreath/graph_wreath.hpp"

namespace gwreath {

namespace {

std::vector<Subgroup> candidates_at(const GammaGraph& graph, std::int64_t step) {
  if (graph.is_translation()) return {ModulusSubgroup{step}};
  std::vector<Subgroup> out;
  for (const auto& p : graph.image().subgroups()) out.push_back(FiniteSubgroup{p, step});
  return out;
}

struct Evaluation {
  CertificateChecks checks;
  GammaElement gamma_image;
  Word word_image;
};

// The checks on one candidate K, run against a given quotient graph.
Evaluation evaluate(const Instance& restricted, const WreathElement& x, const Subgroup& k,
                    const QuotientGraph& q) {
  const auto& graph = restricted.graph;
  const auto& delta = restricted.delta;
  Evaluation ev;
  const bool gamma_survives = !gamma_in_subgroup(graph, k, x.gamma);
  ev.checks.gamma_injective = x.gamma.is_identity() || gamma_survives;

  const auto letters = support(graph, delta, x.word);
  bool iso = true;
  for (std::size_t i = 0; i < letters.size() && iso; ++i)
    for (std::size_t j = i + 1; j < letters.size() && iso; ++j) {
      const auto a = q.orbit_of(letters[i]);
      const auto b = q.orbit_of(letters[j]);
      iso = a != b && graph.adjacent(letters[i], letters[j]) == q.adjacent(a, b);
    }
  ev.checks.induced_isomorphism = iso;

  ev.checks.loop_free = is_abelian(delta) ||
                        std::none_of(q.loop.begin(), q.loop.end(), [](bool b) { return b; });

  ev.gamma_image = gamma_image(graph, k, x.gamma);
  if (ev.checks.gamma_injective && ev.checks.induced_isomorphism && ev.checks.loop_free) {
    ev.word_image = push_forward(
        graph, x.word, [&q](const Vertex& v) { return finite_vertex(static_cast<std::int64_t>(q.orbit_of(v))); },
        Homomorphism::identity(delta), view_of(q));
    ev.checks.image_nontrivial = !ev.word_image.empty() || gamma_survives;
  }
  return ev;
}

}  // namespace

RFCertificate separate(const Instance& instance, const WreathElement& x, std::int64_t bound) {
  if (bound < 1) throw InvalidArgument("search bound must be >= 1");
  if (gw_is_identity(instance, x)) throw DegenerateInput("cannot separate the identity element");
  const OrbitRestriction r = restrict_orbits(instance, x);
  const auto& graph = r.instance.graph;
  for (std::int64_t step = 1; step <= bound; ++step) {
    for (const auto& k : candidates_at(graph, step)) {
      QuotientGraph q = quotient_graph(graph, k);
      Evaluation ev = evaluate(r.instance, r.element, k, q);
      if (!(ev.checks.gamma_injective && ev.checks.induced_isomorphism && ev.checks.loop_free))
        continue;
      // An isomorphism on the support cannot kill a nontrivial element.
      if (!ev.checks.image_nontrivial)
        throw Error("internal: separating quotient maps " + to_string(r.instance, r.element) +
                    " to the identity");
      RFCertificate cert;
      cert.element = gw_make(instance, x.word, x.gamma);
      cert.kept = r.kept;
      cert.subgroup = k;
      cert.index = subgroup_index(graph, k);
      cert.quotient = std::move(q);
      cert.gamma_image = std::move(ev.gamma_image);
      cert.word_image = std::move(ev.word_image);
      cert.checks = ev.checks;
      return cert;
    }
  }
  throw SearchExhausted("no separating subgroup with modulus or lattice scale <= " +
                            std::to_string(bound),
                        bound);
}

Verification verify_certificate(const Instance& instance, const RFCertificate& cert) {
  Verification out;
  auto fail = [&out](std::string why) {
    out.ok = false;
    out.failures.push_back(std::move(why));
  };
  try {
    const WreathElement x = gw_make(instance, cert.element.word, cert.element.gamma);
    if (!(x == cert.element)) fail("element is not in canonical form");
    if (gw_is_identity(instance, x)) fail("element is the identity");
    const OrbitRestriction r = restrict_orbits(instance, x);
    if (r.kept != cert.kept) fail("orbit restriction differs");
    require_subgroup(r.instance.graph, cert.subgroup);
    if (subgroup_index(r.instance.graph, cert.subgroup) != cert.index) fail("subgroup index differs");
    if (!(quotient_graph(r.instance.graph, cert.subgroup) == cert.quotient))
      fail("quotient graph differs from the recomputed one");
    const Evaluation ev = evaluate(r.instance, r.element, cert.subgroup, cert.quotient);
    if (!ev.checks.gamma_injective) fail("gamma lies in K");
    if (!ev.checks.induced_isomorphism) fail("quotient map is not an isomorphism on the support");
    if (!ev.checks.loop_free) fail("quotient carries a loop and the vertex group is non-abelian");
    if (!ev.checks.image_nontrivial) fail("image is trivial");
    if (!(ev.checks == cert.checks)) fail("recorded checks differ");
    if (!(ev.gamma_image == cert.gamma_image)) fail("gamma image differs");
    if (!(ev.word_image == cert.word_image)) fail("word image differs");
  } catch (const Error& e) {
    fail(e.what());
  }
  return out;
}

}  // namespace gwreath
