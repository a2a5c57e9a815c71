#include "gwreath/rf_checker.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "gwreath/error.hpp"

namespace gwreath {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool all_finite(const std::vector<DifferenceFamily>& families) {
  return std::all_of(families.begin(), families.end(),
                     [](const DifferenceFamily& f) { return f.is_finite(); });
}

std::int64_t max_offset(const std::vector<DifferenceFamily>& families) {
  std::int64_t out = 0;
  for (const auto& f : families)
    if (f.is_finite() && !f.magnitudes().empty()) out = std::max(out, f.magnitudes().back());
  return out;
}

bool member(const std::vector<DifferenceFamily>& families, std::int64_t t) {
  return std::any_of(families.begin(), families.end(),
                     [t](const DifferenceFamily& f) { return f.contains(t); });
}

// If the arithmetic families cover every residue class in the positive
// direction, every offset t with |t| >= the returned value is a member.
std::optional<std::int64_t> arithmetic_cover(const std::vector<DifferenceFamily>& families) {
  constexpr std::int64_t kMaxPeriod = std::int64_t{1} << 20;
  std::int64_t period = 1;
  std::int64_t reach = 0;
  bool any = false;
  for (const auto& f : families) {
    if (f.kind() != DifferenceFamily::Kind::Arithmetic) continue;
    any = true;
    period = std::lcm(period, f.step());
    if (period > kMaxPeriod) return std::nullopt;
    reach = std::max(reach, f.start());
  }
  if (!any) return std::nullopt;
  for (std::int64_t r = 0; r < period; ++r) {
    const bool covered = std::any_of(families.begin(), families.end(), [r](const DifferenceFamily& f) {
      return f.kind() == DifferenceFamily::Kind::Arithmetic && floor_mod(r - f.start(), f.step()) == 0;
    });
    if (!covered) return std::nullopt;
  }
  return reach;
}

std::vector<std::int64_t> orbit_representatives(const ActionImage& img) {
  std::vector<std::size_t> everything(img.size());
  std::iota(everything.begin(), everything.end(), 0);
  const auto orbit = img.orbits(everything);
  std::vector<std::int64_t> reps;
  for (std::size_t v = 0; v < orbit.size(); ++v)
    if (orbit[v] == reps.size()) reps.push_back(static_cast<std::int64_t>(v));
  return reps;
}

std::int64_t image_index(const ActionImage& img, const std::vector<std::size_t>& p) {
  return static_cast<std::int64_t>(img.size() / p.size());
}

Status merge(Status acc, Status s) {
  if (acc == Status::Fails || s == Status::Fails) return Status::Fails;
  if (acc == Status::Unknown || s == Status::Unknown) return Status::Unknown;
  return Status::Holds;
}

// ------------------------------------------------------------------ cond2

Cond2Result cond2_translation(const Instance& instance, const CheckOptions& options) {
  const auto& graph = instance.graph;
  Cond2Result out;
  out.abelian_branch = is_abelian(instance.delta);
  out.status = Status::Holds;
  const int labels = static_cast<int>(graph.labels().size());
  for (int c = 0; c < labels; ++c) {
    Cond2Orbit o;
    o.orbit = c;
    const auto& fams = graph.families(c, c);
    for (std::int64_t m = 1; m <= options.bound; ++m)
      if (!graph.residues(c, c, m).contains(0)) {
        o.loop_free = ModulusSubgroup{m};
        o.loop_free_index = m;
        break;
      }
    if (out.abelian_branch) {
      o.status = Status::Holds;
      o.rule = "abelian: neighbour at offset t leaves Kv for m(t) = |t| + 1";
    } else if (o.loop_free) {
      o.status = Status::Holds;
      o.rule = "m = " + std::to_string(*o.loop_free_index) + ": 0 not in D(c,c) mod m";
    } else if (all_finite(fams)) {
      const std::int64_t m = max_offset(fams) + 1;
      o.status = Status::Holds;
      o.loop_free = ModulusSubgroup{m};
      o.loop_free_index = m;
      o.rule = "m = max offset + 1 = " + std::to_string(m);
    } else if (auto obs = find_obstruction(graph, c, c, 0)) {
      o.status = Status::Fails;
      o.obstruction = obs;
      o.rule = "0 in D(c,c) mod m for every m";
    } else {
      o.status = Status::Unknown;
      o.rule = "no loop-free modulus <= " + std::to_string(options.bound);
    }
    out.status = merge(out.status, o.status);
    out.orbits.push_back(std::move(o));
  }
  return out;
}

Cond2Result cond2_finite(const Instance& instance) {
  const auto& graph = instance.graph;
  const auto& img = graph.image();
  Cond2Result out;
  out.abelian_branch = is_abelian(instance.delta);
  out.status = Status::Holds;
  for (auto v : orbit_representatives(img)) {
    Cond2Orbit o;
    o.orbit = v;
    for (const auto& p : img.subgroups()) {
      const bool ok = std::none_of(p.begin(), p.end(), [&](std::size_t g) {
        const auto u = img.element(g)[static_cast<std::size_t>(v)];
        return u != v && graph.adjacent(finite_vertex(v), finite_vertex(u));
      });
      if (ok) {
        o.loop_free = FiniteSubgroup{p, 1};
        o.loop_free_index = image_index(img, p);
        break;
      }
    }
    // The trivial subgroup always qualifies.
    o.status = Status::Holds;
    o.rule = out.abelian_branch ? "abelian: the trivial subgroup separates every neighbour"
                                : "subgroup of index " + std::to_string(*o.loop_free_index);
    out.orbits.push_back(std::move(o));
  }
  return out;
}

// ------------------------------------------------------------------ cond3

Cond3Pair cond3_translation_pair(const GammaGraph& graph, int c, int d, std::int64_t t_max,
                                 std::int64_t bound) {
  Cond3Pair pair;
  pair.from = c;
  pair.to = d;
  const auto& fams = graph.families(c, d);
  const bool same = c == d;

  std::vector<ResidueSet> hit;
  hit.reserve(static_cast<std::size_t>(bound));
  for (std::int64_t m = 1; m <= bound; ++m) {
    ResidueSet r = graph.residues(c, d, m);
    if (same) r.insert(0);
    hit.push_back(std::move(r));
  }

  // Offset candidates: a window, plus the classes the lemmas talk about.
  std::set<std::int64_t> raw;
  for (std::int64_t t = -t_max; t <= t_max; ++t) raw.insert(t);
  for (const auto& f : fams) {
    if (f.kind() == DifferenceFamily::Kind::Factorial) {
      raw.insert(f.shift());
      raw.insert(-f.shift());
    } else if (f.kind() == DifferenceFamily::Kind::Arithmetic) {
      for (std::int64_t k = 1; k <= 3; ++k) {
        raw.insert(f.start() - k * f.step());
        raw.insert(k * f.step() - f.start());
      }
    }
  }
  std::vector<std::int64_t> candidates;
  for (auto t : raw) {
    if (same && t <= 0) continue;  // t and -t are the same condition within a label
    if (member(fams, t)) continue;
    candidates.push_back(t);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](std::int64_t a, std::int64_t b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  });

  for (auto t : candidates) {
    OffsetModulus om{t, std::nullopt};
    if (auto obs = find_obstruction(graph, c, d, t)) {
      if (!pair.failing_offset) {
        pair.failing_offset = t;
        pair.obstruction = obs;
      }
    } else {
      for (std::int64_t m = 1; m <= bound; ++m)
        if (!hit[static_cast<std::size_t>(m - 1)].contains(t)) {
          om.modulus = m;
          break;
        }
    }
    pair.offsets.push_back(om);
  }

  if (pair.failing_offset) {
    pair.status = Status::Fails;
    pair.rule = "offset " + std::to_string(*pair.failing_offset) + " is hit modulo every m";
    return pair;
  }
  if (all_finite(fams)) {
    pair.status = Status::Holds;
    pair.rule = "m(t) = |t| + " + std::to_string(max_offset(fams) + 1);
    return pair;
  }
  if (auto reach = arithmetic_cover(fams)) {
    // Only offsets below the reach can be non-edges; each of them would sit
    // in a covered class and be caught by the cover lemma.
    for (std::int64_t t = -*reach; t <= *reach; ++t) {
      if ((same && t == 0) || member(fams, t)) continue;
      pair.status = Status::Fails;
      pair.failing_offset = t;
      pair.obstruction = find_obstruction(graph, c, d, t);
      if (!pair.obstruction) throw Error("internal: covered offset without obstruction");
      pair.rule = "offset " + std::to_string(t) + " is hit modulo every m";
      return pair;
    }
    pair.status = Status::Holds;
    pair.rule = same ? "every nonzero offset is an edge" : "every offset is an edge";
    return pair;
  }
  pair.status = Status::Unknown;
  pair.rule = "infinite families: offsets beyond " + std::to_string(t_max) + " not decided";
  return pair;
}

Cond3Result cond3_finite(const Instance& instance) {
  const auto& graph = instance.graph;
  const auto& img = graph.image();
  std::vector<std::size_t> everything(img.size());
  std::iota(everything.begin(), everything.end(), 0);
  const auto orbit = img.orbits(everything);
  const auto reps = orbit_representatives(img);

  Cond3Result out;
  out.status = Status::Holds;
  for (auto v : reps) {
    std::map<std::int64_t, Cond3Pair> by_orbit;
    for (std::size_t w = 0; w < graph.vertex_count(); ++w) {
      const auto wid = static_cast<std::int64_t>(w);
      if (wid == v || graph.adjacent(finite_vertex(v), finite_vertex(wid))) continue;
      const auto to = reps[orbit[w]];
      auto& pair = by_orbit[to];
      pair.from = v;
      pair.to = to;
      OffsetModulus om{wid, std::nullopt};
      for (const auto& p : img.subgroups()) {
        const bool ok = std::none_of(p.begin(), p.end(), [&](std::size_t g) {
          const auto u = img.element(g)[w];
          return u == v || graph.adjacent(finite_vertex(v), finite_vertex(u));
        });
        if (ok) {
          om.modulus = image_index(img, p);
          break;
        }
      }
      pair.offsets.push_back(om);
    }
    for (auto& [to, pair] : by_orbit) {
      const bool found = std::all_of(pair.offsets.begin(), pair.offsets.end(),
                                     [](const OffsetModulus& o) { return o.modulus.has_value(); });
      pair.status = found ? Status::Holds : Status::Fails;
      pair.rule = "subgroup search over the action image (offset = vertex id, modulus = index)";
      out.status = merge(out.status, pair.status);
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

std::int64_t default_t_max(const GammaGraph& graph) {
  return 3 * std::max<std::int64_t>(1, graph.largest_datum());
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::ResiduallyFinite: return "RF";
    case VerdictKind::NotResiduallyFinite: return "NOT_RF";
    case VerdictKind::Unknown: return "UNKNOWN";
  }
  return "?";
}

Cond2Result check_cond2(const Instance& instance, const CheckOptions& options) {
  if (options.bound < 1) throw InvalidArgument("search bound must be >= 1");
  return instance.graph.is_translation() ? cond2_translation(instance, options)
                                         : cond2_finite(instance);
}

Cond3Result check_cond3(const Instance& instance, const CheckOptions& options) {
  if (options.bound < 1) throw InvalidArgument("search bound must be >= 1");
  const auto& graph = instance.graph;
  if (!graph.is_translation()) return cond3_finite(instance);
  Cond3Result out;
  out.status = Status::Holds;
  out.t_max = options.t_max.value_or(default_t_max(graph));
  if (out.t_max < 0) throw InvalidArgument("t-max must be >= 0");
  const int labels = static_cast<int>(graph.labels().size());
  for (int c = 0; c < labels; ++c)
    for (int d = c; d < labels; ++d) {
      auto pair = cond3_translation_pair(graph, c, d, out.t_max, options.bound);
      out.status = merge(out.status, pair.status);
      out.pairs.push_back(std::move(pair));
    }
  return out;
}

Verdict classify(const Instance& instance, const CheckOptions& options) {
  Verdict out;
  out.bound = options.bound;
  if (instance.delta.order() == std::optional<std::int64_t>{1}) {
    out.kind = VerdictKind::ResiduallyFinite;
    out.reason = "trivial vertex group: the group is Gamma itself";
    return out;
  }
  out.cond2 = check_cond2(instance, options);
  out.cond3 = check_cond3(instance, options);
  const auto& graph = instance.graph;

  if (out.cond2->status == Status::Fails) {
    for (const auto& o : out.cond2->orbits) {
      if (o.status != Status::Fails) continue;
      out.witness = witness(instance, WitnessKind::NonAbelianLoop,
                            WitnessParams{{Vertex{static_cast<int>(o.orbit), 0}}, {}});
      out.kind = VerdictKind::NotResiduallyFinite;
      out.reason = "non-abelian vertex group and every quotient has a loop at label " +
                   graph.labels()[static_cast<std::size_t>(o.orbit)];
      return out;
    }
  }
  if (out.cond3->status == Status::Fails) {
    for (const auto& p : out.cond3->pairs) {
      if (p.status != Status::Fails) continue;
      const Vertex v{static_cast<int>(p.from), 0};
      const Vertex w{static_cast<int>(p.to), *p.failing_offset};
      out.witness = witness(instance, WitnessKind::NonNeighbourCollapse, WitnessParams{{v, w}, {}});
      out.kind = VerdictKind::NotResiduallyFinite;
      out.reason = "non-neighbours " + graph.vertex_name(v) + " and " + graph.vertex_name(w) +
                   " collapse into a neighbourhood in every quotient";
      return out;
    }
  }
  if (out.cond2->status == Status::Holds && out.cond3->status == Status::Holds) {
    out.kind = VerdictKind::ResiduallyFinite;
    out.reason = "both graph conditions hold";
    return out;
  }
  out.kind = VerdictKind::Unknown;
  out.failing_condition = out.cond2->status != Status::Holds ? "cond2" : "cond3";
  out.reason = out.failing_condition + " not settled within the search limits";
  return out;
}

bool is_complete(const GammaGraph& graph) {
  if (!graph.is_translation()) {
    const auto n = static_cast<std::int64_t>(graph.vertex_count());
    return static_cast<std::int64_t>(graph.edge_set().size()) == n * (n - 1) / 2;
  }
  const int labels = static_cast<int>(graph.labels().size());
  for (int c = 0; c < labels; ++c)
    for (int d = c; d < labels; ++d) {
      const auto& fams = graph.families(c, d);
      const auto reach = arithmetic_cover(fams);
      if (!reach) return false;
      for (std::int64_t t = -*reach; t <= *reach; ++t)
        if (!(c == d && t == 0) && !member(fams, t)) return false;
    }
  return true;
}

Verdict classify_wreath(const Instance& instance) {
  const auto& graph = instance.graph;
  if (!is_complete(graph)) throw InvalidArgument("classify_wreath needs a complete graph");
  Verdict out;
  if (is_abelian(instance.delta)) {
    out.kind = VerdictKind::ResiduallyFinite;
    out.reason = "complete graph, abelian vertex group";
  } else if (!graph.is_translation()) {
    out.kind = VerdictKind::ResiduallyFinite;
    out.reason = "complete graph, vertex stabilisers of finite index";
  } else if (graph.labels().empty()) {
    out.kind = VerdictKind::ResiduallyFinite;
    out.reason = "empty graph";
  } else {
    out.kind = VerdictKind::NotResiduallyFinite;
    out.reason = "complete graph, non-abelian vertex group, vertex stabilisers of infinite index";
    out.witness = witness(instance, WitnessKind::NonAbelianLoop, WitnessParams{{Vertex{0, 0}}, {}});
  }
  return out;
}

FinitePresentationReport check_finitely_presented(const Instance& instance) {
  FinitePresentationReport r;
  r.counts = orbit_counts(instance.graph);
  r.finite_edge_orbits = r.counts.edge_orbits.has_value();
  if (!r.finite_edge_orbits) r.failures.push_back("infinitely many edge orbits");
  r.finitely_presented = r.vertex_group_fp && r.acting_group_fp && r.finite_vertex_orbits &&
                         r.finite_edge_orbits && r.stabilisers_fg;
  return r;
}

std::optional<std::int64_t> separation_budget(const Instance& instance, const WreathElement& x) {
  const auto& graph = instance.graph;
  if (!graph.is_translation() || !graph.all_families_finite()) return std::nullopt;
  const std::int64_t big = graph.largest_datum();
  std::int64_t m = big + 1;
  if (!x.gamma.is_identity()) m = std::max(m, std::abs(x.gamma.coords[0]) + 1);
  const auto letters = support(graph, instance.delta, x.word);
  for (std::size_t i = 0; i < letters.size(); ++i)
    for (std::size_t j = i + 1; j < letters.size(); ++j)
      m = std::max(m, std::abs(letters[j].position - letters[i].position) + big + 1);
  return m;
}

}  // namespace gwreath
