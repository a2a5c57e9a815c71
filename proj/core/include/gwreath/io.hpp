#pragma once

// Instance files, structured certificate documents and text rendering.
//
// Instance file: line oriented, '#' starts a comment, four sections.
//
//   [delta]      cyclic N | symmetric N | free-abelian R | table N identity I
//                (table groups follow with N lines "row x0 x1 ...")
//   [gamma]      translation | finite
//   [graph]      translation: "labels a b ...", "family a b finite 1 2",
//                "family a a factorial S", "family a b arithmetic A B"
//                finite: "vertices N", "edge X Y", "generator p0 p1 ..."
//   [elements]   "name = a:0^1 a:2^1 @ 0"  ("e" is the empty word; "@ g"
//                is optional, finite-mode gammas are comma separated)
//
// Structured documents are JSON Lines: a header line
// {"format":"gwreath","version":1,"type":...} followed by one object per
// record, keys in a fixed order.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gwreath/graph_wreath.hpp"
#include "gwreath/lef.hpp"
#include "gwreath/rf_checker.hpp"

namespace gwreath {

inline constexpr int kFormatVersion = 1;

struct InstanceFile {
  Instance instance;
  std::vector<std::pair<std::string, WreathElement>> elements;

  // Throws InvalidArgument for unknown names.
  const WreathElement& element(const std::string& name) const;
};

InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::string& path);

// "a:0^1 a:2^[1,0,2] @ 3"
WreathElement parse_element_literal(const Instance& instance, std::string_view text);
GammaElement parse_gamma(const GammaGraph& graph, std::string_view text);
// "cyclic 5", "symmetric 3", "free-abelian 2", "cyclic-product 4 2".
GroupSpec parse_group_spec(std::string_view text);

// ------------------------------------------------------------- structured

std::string structured_separation(const Instance& instance, const RFCertificate& cert);
std::string structured_witness(const Instance& instance, const NonRFWitness& w);
std::string structured_lef(const GammaGraph& graph, const LEFCertificate& cert);
std::string structured_verdict(const Instance& instance, const Verdict& verdict);
std::string structured_element(const Instance& instance, const WreathElement& x);
std::string structured_quotient(const GammaGraph& graph, const Subgroup& k, const QuotientGraph& q);
std::string structured_finite_presentation(const FinitePresentationReport& report);

struct ParsedCertificate {
  std::string type;  // "separation-certificate", "non-rf-witness", "lef-certificate"
  std::optional<RFCertificate> separation;
  std::optional<NonRFWitness> witness;
  std::optional<LEFCertificate> lef;
};

ParsedCertificate parse_certificate(const Instance& instance, std::string_view text);

// ------------------------------------------------------------------- text

std::string render_verdict(const Instance& instance, const Verdict& verdict);
std::string render_separation(const Instance& instance, const RFCertificate& cert);
std::string render_witness(const Instance& instance, const NonRFWitness& w);
std::string render_lef(const GammaGraph& graph, const LEFCertificate& cert);
std::string render_quotient(const GammaGraph& graph, const QuotientGraph& q);
std::string render_finite_presentation(const FinitePresentationReport& report);

}  // namespace gwreath
