#pragma once

// Three-valued residual finiteness classification of an instance, by the
// two graph conditions:
//
//  cond2  Delta abelian, or every vertex v has a finite-index K with
//         Kv disjoint from N(v);
//  cond3  for all v != w non-adjacent there is a finite-index K with Kw
//         disjoint from N(v) + {v}.
//
// The conditions on Delta and Gamma themselves hold for every supported
// group class. Negative answers are only produced from the obstruction
// lemmas in graph_wreath.hpp; anything not settled is Unknown.

#include <optional>
#include <string>
#include <vector>

#include "gwreath/graph_wreath.hpp"

namespace gwreath {

enum class Status { Holds, Fails, Unknown };
std::string to_string(Status s);

struct CheckOptions {
  std::int64_t bound = 64;
  // Offsets examined per label pair; default 3 * max(1, largest datum).
  std::optional<std::int64_t> t_max;
};

struct Cond2Orbit {
  // Translation: label index. Finite: smallest vertex of the orbit.
  std::int64_t orbit = 0;
  Status status = Status::Unknown;
  // Least m <= bound with 0 outside the residues of D(c, c) (translation),
  // or the first subgroup P with Pv disjoint from N(v) (finite).
  std::optional<Subgroup> loop_free;
  std::optional<std::int64_t> loop_free_index;
  std::string rule;
  std::optional<Obstruction> obstruction;
};

struct Cond2Result {
  Status status = Status::Unknown;
  bool abelian_branch = false;
  std::vector<Cond2Orbit> orbits;
};

struct OffsetModulus {
  std::int64_t offset = 0;
  std::optional<std::int64_t> modulus;  // least working m, if found within bound
};

struct Cond3Pair {
  // Translation: label indices (from <= to). Finite: orbit representatives.
  std::int64_t from = 0;
  std::int64_t to = 0;
  Status status = Status::Unknown;
  std::string rule;
  std::vector<OffsetModulus> offsets;
  std::optional<std::int64_t> failing_offset;
  std::optional<Obstruction> obstruction;
};

struct Cond3Result {
  Status status = Status::Unknown;
  std::int64_t t_max = 0;
  std::vector<Cond3Pair> pairs;
};

Cond2Result check_cond2(const Instance& instance, const CheckOptions& options = {});
Cond3Result check_cond3(const Instance& instance, const CheckOptions& options = {});

enum class VerdictKind { ResiduallyFinite, NotResiduallyFinite, Unknown };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::string reason;
  std::int64_t bound = 0;
  std::optional<Cond2Result> cond2;
  std::optional<Cond3Result> cond3;
  std::optional<NonRFWitness> witness;
  // Unknown: "cond2" or "cond3".
  std::string failing_condition;
};

Verdict classify(const Instance& instance, const CheckOptions& options = {});

// Translation: every offset (nonzero within a label) is an edge offset.
// Finite: every pair of distinct vertices is an edge.
bool is_complete(const GammaGraph& graph);

// Complete graphs only; throws InvalidArgument otherwise.
Verdict classify_wreath(const Instance& instance);

struct FinitePresentationReport {
  bool finitely_presented = false;
  bool vertex_group_fp = true;
  bool acting_group_fp = true;
  bool finite_vertex_orbits = true;
  bool finite_edge_orbits = false;
  bool stabilisers_fg = true;
  OrbitCounts counts;
  std::vector<std::string> failures;
};

FinitePresentationReport check_finitely_presented(const Instance& instance);

// Translation instances with only finite families: a modulus m such that
// every m' >= m separates x, from the explicit rules
// m > |t| + max offset for support offsets t, m > |gamma|, m > max offset.
std::optional<std::int64_t> separation_budget(const Instance& instance, const WreathElement& x);

}  // namespace gwreath
