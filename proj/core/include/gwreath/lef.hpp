#pragma once

// Finite partial models of a Gamma-action: a finite group Q acting on a finite
// graph Y, a map phi: A -> Q that is injective and multiplicative where
// defined, and an injective map psi: E -> Y onto an induced subgraph with
// phi(a) psi(e) = psi(a e) whenever a e lies in E.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gwreath/gamma_graph.hpp"
#include "gwreath/groups.hpp"

namespace gwreath {

// Translation graph cut down to the offsets realised inside a finite vertex
// set E, on the labels that occur in E.
struct Truncation {
  // Original label index of each label of `graph`.
  std::vector<int> kept_labels;
  // Realised offset magnitudes per original label pair (c <= d).
  std::map<std::pair<int, int>, std::vector<std::int64_t>> retained;
  GammaGraph graph;
};

Truncation truncate_graph(const GammaGraph& graph, const std::vector<Vertex>& e);

struct LEFCertificate {
  GroupSpec q;
  std::vector<GammaElement> a;
  std::vector<Vertex> e;
  QuotientGraph y;
  // action[element_index(q, g)][y-vertex] = g . y-vertex
  std::vector<std::vector<std::size_t>> action;
  std::vector<GroupElement> phi;  // aligned with a
  std::vector<std::size_t> psi;   // aligned with e
  std::optional<Truncation> truncation;
  // Translation: Q = Z/modulus. Finite: 1 (Q is the action image).
  std::int64_t modulus = 1;
  // Every modulus above this spread works (translation).
  std::int64_t rule_modulus = 1;
  std::string rule;
};

// Translation: least m <= bound such that Z -> Z/m and the quotient of the
// truncated graph satisfy all four conditions and A, E and E + |B| stay
// distinct modulo m. Finite: Q is the action image and Y the graph itself.
// The result is checked with verify_lef before it is returned.
LEFCertificate lef_certificate(const GammaGraph& graph, const std::vector<GammaElement>& a,
                               const std::vector<Vertex>& e, std::int64_t bound);

struct LEFCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// Exhaustive re-check against the original graph and action.
LEFCheck check_lef(const LEFCertificate& cert, const GammaGraph& graph,
                   const std::vector<GammaElement>& a, const std::vector<Vertex>& e);
bool verify_lef(const LEFCertificate& cert, const GammaGraph& graph,
                const std::vector<GammaElement>& a, const std::vector<Vertex>& e);

}  // namespace gwreath
