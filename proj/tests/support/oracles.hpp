#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's algorithms; only descriptors and plain data are read.

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gwreath/graph_wreath.hpp"
#include "gwreath/lef.hpp"

namespace oracle {

// Cyclic or symmetric group on plain integer vectors.
struct SmallGroup {
  enum class Kind { Cyclic, Symmetric };
  Kind kind = Kind::Cyclic;
  int n = 1;

  using Value = std::vector<std::int64_t>;
  Value identity() const;
  Value mul(const Value& a, const Value& b) const;
  Value inv(const Value& a) const;
  bool is_identity(const Value& a) const { return a == identity(); }
  std::vector<Value> all() const;

  static SmallGroup from(const gwreath::GroupSpec& spec);
};

// Right-to-left: (s t)(x) = s(t(x)).
std::vector<std::int64_t> perm_compose(const std::vector<std::int64_t>& s, const std::vector<std::int64_t>& t);

using Letter = std::pair<std::int64_t, SmallGroup::Value>;
using OWord = std::vector<Letter>;
using Adjacency = std::function<bool(std::int64_t, std::int64_t)>;

// Every word reachable from w by commuting swaps of adjacent-vertex letters,
// merging neighbouring same-vertex letters and deleting identity letters.
std::set<OWord> rewrite_closure(const OWord& w, const Adjacency& adjacent, const SmallGroup& g);
bool trivial_by_rewriting(const OWord& w, const Adjacency& adjacent, const SmallGroup& g);

// Membership straight from the family descriptor.
bool family_member(const gwreath::DifferenceFamily& f, std::int64_t t);
bool adjacent(const gwreath::GammaGraph& graph, const gwreath::Vertex& v, const gwreath::Vertex& w);

std::set<std::int64_t> factorial_residues(std::int64_t shift, std::int64_t m);
std::set<std::int64_t> family_residues(const gwreath::DifferenceFamily& f, std::int64_t m);

struct BruteQuotient {
  std::size_t size = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> loop;
  bool adjacent(std::size_t a, std::size_t b) const;
};

// Translation graph mod m; class of (c, x) is c * m + (x mod m). Lifts are
// taken from positions in [-reach, reach].
BruteQuotient brute_quotient(const gwreath::GammaGraph& graph, std::int64_t m, std::int64_t reach);
// Finite graph modulo the permutation group generated by `perms`.
BruteQuotient brute_quotient(const gwreath::GammaGraph& graph, const std::vector<std::vector<std::int64_t>>& perms,
                             std::vector<std::size_t>* orbit_of = nullptr);

// Re-checks a translation separation certificate from scratch; returns the
// failed checks.
std::vector<std::string> check_separation(const gwreath::Instance& instance, const gwreath::RFCertificate& cert);

// Re-checks a translation LEF certificate; returns the failed checks.
std::vector<std::string> check_lef(const gwreath::GammaGraph& graph, const gwreath::LEFCertificate& cert,
                                   const std::vector<gwreath::GammaElement>& a,
                                   const std::vector<gwreath::Vertex>& e);
// Spread of A, E and E + |B| plus one.
std::int64_t lef_rule_modulus(const gwreath::GammaGraph& graph, const std::vector<gwreath::GammaElement>& a,
                              const std::vector<gwreath::Vertex>& e);

}  // namespace oracle
