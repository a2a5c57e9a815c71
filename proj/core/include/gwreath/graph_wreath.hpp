#pragma once

// The graph wreath product G(Delta) x| Gamma: arithmetic, the Gamma-action on
// words, explicit witnesses of non-residual-finiteness, and the separation
// engine that maps a nontrivial element to a nontrivial element of a finite
// quotient graph wreath product.

#include <optional>
#include <string>
#include <vector>

#include "gwreath/gamma_graph.hpp"
#include "gwreath/graph_product.hpp"
#include "gwreath/groups.hpp"

namespace gwreath {

struct Instance {
  GroupSpec delta;
  GammaGraph graph;
};

struct WreathElement {
  Word word;
  GammaElement gamma;

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

// gamma . g_(v) = g_(gamma . v), canonicalised.
Word act_word(const GammaGraph& graph, const GroupSpec& delta, const GammaElement& gamma,
              const Word& w);

WreathElement gw_identity(const Instance& instance);
// Validates and canonicalises.
WreathElement gw_make(const Instance& instance, const Word& w, const GammaElement& gamma);
// (w1, g1)(w2, g2) = (w1 . g1(w2), g1 g2)
WreathElement gw_compose(const Instance& instance, const WreathElement& a, const WreathElement& b);
// (w, g)^-1 = (g^-1(w^-1), g^-1)
WreathElement gw_invert(const Instance& instance, const WreathElement& a);
bool gw_is_identity(const Instance& instance, const WreathElement& a);

std::string to_string(const Instance& instance, const WreathElement& x);

// ------------------------------------------------------------ obstructions
//
// Universal statements "offset t is hit modulo every m" that certify a
// necessary condition for residual finiteness fails (translation graphs).
//
//  FactorialDivisibility: factorial(0) contains n! and m | m!, so 0 is hit.
//  FactorialTail:         factorial(s) contains s + n! = s (mod m) for n >= m,
//                         so +-s is hit.
//  ArithmeticCover:       arithmetic(a, b) hits t whenever b | (t - a) or
//                         b | (-t - a): take n = (t - a) / b (mod m).

enum class ObstructionLemma { FactorialDivisibility, FactorialTail, ArithmeticCover };

struct Obstruction {
  ObstructionLemma lemma = ObstructionLemma::FactorialDivisibility;
  int from_label = 0;
  int to_label = 0;
  DifferenceFamily family = DifferenceFamily::finite({});
  // Offset t = position(w) - position(v) that every subgroup mZ hits.
  std::int64_t offset = 0;

  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

// First family between the labels for which a lemma proves `offset` is hit
// modulo every m.
std::optional<Obstruction> find_obstruction(const GammaGraph& graph, int from_label, int to_label,
                                            std::int64_t offset);
// Structural re-check: the family is attached to the label pair and the
// lemma's arithmetic side condition holds.
bool lemma_applies(const GammaGraph& graph, const Obstruction& obstruction);
// Numeric sanity check of the universal claim for m = 1..max_modulus.
bool offset_hit_up_to(const Obstruction& obstruction, std::int64_t max_modulus);
std::string describe(const GammaGraph& graph, const Obstruction& obstruction);
std::string lemma_name(ObstructionLemma lemma);

// ---------------------------------------------------------------- witnesses

enum class WitnessKind { NonAbelianLoop, NonNeighbourCollapse, OrbitCollapse };

// "nonabelian-loop", "non-neighbour-collapse", "orbit-collapse"
std::string witness_tag(WitnessKind kind);
std::optional<WitnessKind> parse_witness_tag(const std::string& tag);

struct WitnessParams {
  std::vector<Vertex> vertices;              // one for NonAbelianLoop, else two
  std::vector<GroupElement> delta_elements;  // optional; defaults are chosen
};

struct NonRFWitness {
  WitnessKind kind = WitnessKind::NonAbelianLoop;
  std::vector<Vertex> vertices;
  std::vector<GroupElement> delta_elements;
  WreathElement element;
  Obstruction obstruction;
};

// [g_(v), h_(v)], [g_(v), g_(w)] or g_(v) g_(w)^-1 with trivial gamma; no
// hypothesis checking beyond parameter shapes.
WreathElement witness_element(const Instance& instance, WitnessKind kind,
                              const WitnessParams& params);
// Builds the witness and certifies its hypotheses from the obstruction
// lemmas; throws NotCertifiable otherwise.
NonRFWitness witness(const Instance& instance, WitnessKind kind, const WitnessParams& params);
// Re-checks element, nontriviality and obstruction; numeric check up to
// max_modulus.
bool verify_witness(const Instance& instance, const NonRFWitness& w, std::int64_t max_modulus);

// ---------------------------------------------------------------- separation

// The sub-instance on the Gamma-orbits meeting the support, with the element
// pushed forward by killing every other orbit.
struct OrbitRestriction {
  Instance instance;
  WreathElement element;
  // Translation: kept label indices; finite: kept vertex ids. Position i holds
  // the original index of restricted label / vertex i.
  std::vector<std::int64_t> kept;

  std::optional<Vertex> map_vertex(const Vertex& original, bool translation) const;
};

OrbitRestriction restrict_orbits(const Instance& instance, const WreathElement& x);

struct CertificateChecks {
  bool gamma_injective = false;       // Gamma -> Gamma/K injective on {e, gamma}
  bool induced_isomorphism = false;   // quotient map is an isomorphism on supp(w)
  bool loop_free = false;             // no loops (or Delta abelian)
  bool image_nontrivial = false;

  bool all() const { return gamma_injective && induced_isomorphism && loop_free && image_nontrivial; }
  friend bool operator==(const CertificateChecks&, const CertificateChecks&) = default;
};

// Finite quotient (K\G')(Delta) x| Gamma/K of the restricted instance G' in
// which the image of `element` is nontrivial. Coordinates in `quotient`,
// `word_image` and `subgroup` refer to the restricted instance.
struct RFCertificate {
  WreathElement element;
  std::vector<std::int64_t> kept;
  Subgroup subgroup;
  std::int64_t index = 0;
  QuotientGraph quotient;
  GammaElement gamma_image;
  Word word_image;
  CertificateChecks checks;
};

// Searches K in ascending order (translation: m = 1..bound; finite: lattice
// scale N = 1..bound, then subgroups of the action image by ascending index).
// Throws DegenerateInput for the identity and SearchExhausted when nothing
// within the bound works.
RFCertificate separate(const Instance& instance, const WreathElement& x, std::int64_t bound);

struct Verification {
  bool ok = true;
  std::vector<std::string> failures;
};

// Recomputes the restriction, the quotient graph and all checks from scratch.
Verification verify_certificate(const Instance& instance, const RFCertificate& certificate);

}  // namespace gwreath
