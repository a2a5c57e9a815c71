#include <sstream>

#include "gwreath/io.hpp"

namespace gwreath {

namespace {

std::string orbit_name(const GammaGraph& graph, std::int64_t o) {
  return graph.is_translation() ? graph.labels()[static_cast<std::size_t>(o)] : std::to_string(o);
}

std::string lift_name(const GammaGraph& graph, const Vertex& v) {
  if (graph.is_translation()) {
    const auto c = static_cast<std::size_t>(v.label);
    return (c < graph.labels().size() ? graph.labels()[c] : "#" + std::to_string(c)) + ":" +
           std::to_string(v.position);
  }
  return std::to_string(v.position);
}

std::string orbit_word(const Word& w) {
  return to_string(w, [](const Vertex& v) { return "K" + std::to_string(v.position); });
}

}  // namespace

std::string render_quotient(const GammaGraph& graph, const QuotientGraph& q) {
  std::ostringstream out;
  out << "vertices: " << q.size() << "\n";
  for (std::size_t i = 0; i < q.size(); ++i)
    out << "  K" << i << " = orbit of " << lift_name(graph, q.lift[i]) << (q.loop[i] ? " (loop)" : "")
        << "\n";
  out << "edges:";
  if (q.edges.empty()) out << " none";
  for (auto [a, b] : q.edges) out << " K" << a << "-K" << b;
  out << "\n";
  return out.str();
}

std::string render_witness(const Instance& instance, const NonRFWitness& w) {
  const auto& graph = instance.graph;
  std::ostringstream out;
  out << "witness: " << witness_tag(w.kind) << "\n";
  out << "vertices:";
  for (const auto& v : w.vertices) out << " " << graph.vertex_name(v);
  out << "\nvertex group elements:";
  for (const auto& g : w.delta_elements) out << " " << to_string(g);
  out << "\nelement: " << to_string(instance, w.element) << "\n";
  out << "obstruction (" << lemma_name(w.obstruction.lemma) << "): " << describe(graph, w.obstruction)
      << "\n";
  return out.str();
}

std::string render_verdict(const Instance& instance, const Verdict& verdict) {
  const auto& graph = instance.graph;
  std::ostringstream out;
  switch (verdict.kind) {
    case VerdictKind::ResiduallyFinite: out << "RESIDUALLY FINITE\n"; break;
    case VerdictKind::NotResiduallyFinite:
      out << "NOT RESIDUALLY FINITE (" << (verdict.witness ? witness_tag(verdict.witness->kind) : "")
          << " witness)\n";
      break;
    case VerdictKind::Unknown: out << "UNKNOWN (" << verdict.failing_condition << ")\n"; break;
  }
  out << "reason: " << verdict.reason << "\n";
  if (verdict.cond2) {
    out << "cond2: " << to_string(verdict.cond2->status)
        << (verdict.cond2->abelian_branch ? " (abelian vertex group)" : "") << "\n";
    for (const auto& o : verdict.cond2->orbits) {
      out << "  orbit " << orbit_name(graph, o.orbit) << ": " << to_string(o.status);
      if (o.loop_free) out << ", loop-free subgroup " << to_string(*o.loop_free);
      out << "; " << o.rule << "\n";
      if (o.obstruction) out << "    " << describe(graph, *o.obstruction) << "\n";
    }
  }
  if (verdict.cond3) {
    out << "cond3: " << to_string(verdict.cond3->status);
    if (graph.is_translation()) out << " (offsets up to " << verdict.cond3->t_max << ")";
    out << "\n";
    for (const auto& p : verdict.cond3->pairs) {
      out << "  pair " << orbit_name(graph, p.from) << "-" << orbit_name(graph, p.to) << ": "
          << to_string(p.status) << "; " << p.rule << "\n";
      if (!p.offsets.empty()) {
        out << "    offsets:";
        for (const auto& om : p.offsets)
          out << " " << om.offset << "->" << (om.modulus ? std::to_string(*om.modulus) : "-");
        out << "\n";
      }
      if (p.obstruction) out << "    " << describe(graph, *p.obstruction) << "\n";
    }
  }
  if (verdict.witness) out << render_witness(instance, *verdict.witness);
  return out.str();
}

std::string render_separation(const Instance& instance, const RFCertificate& cert) {
  const auto& graph = instance.graph;
  std::ostringstream out;
  out << "element: " << to_string(instance, cert.element) << "\n";
  out << "orbits kept:";
  if (cert.kept.empty()) out << " none";
  for (auto k : cert.kept) out << " " << orbit_name(graph, k);
  out << "\nsubgroup: " << to_string(cert.subgroup) << " (index " << cert.index << ")\n";
  if (const auto* m = std::get_if<ModulusSubgroup>(&cert.subgroup)) out << "modulus: " << m->modulus << "\n";
  out << "quotient graph (restricted labels):\n";
  std::ostringstream q;
  for (std::size_t i = 0; i < cert.quotient.size(); ++i) {
    Vertex v = cert.quotient.lift[i];
    if (graph.is_translation()) v.label = static_cast<int>(cert.kept[static_cast<std::size_t>(v.label)]);
    else v.position = cert.kept[static_cast<std::size_t>(v.position)];
    q << "  K" << i << " = orbit of " << lift_name(graph, v) << (cert.quotient.loop[i] ? " (loop)" : "")
      << "\n";
  }
  out << q.str() << "  edges:";
  if (cert.quotient.edges.empty()) out << " none";
  for (auto [a, b] : cert.quotient.edges) out << " K" << a << "-K" << b;
  out << "\nimage: " << orbit_word(cert.word_image) << " @ " << to_string(cert.gamma_image) << "\n";
  out << "checks: gamma-injective=" << cert.checks.gamma_injective
      << " induced-isomorphism=" << cert.checks.induced_isomorphism
      << " loop-free=" << cert.checks.loop_free << " image-nontrivial=" << cert.checks.image_nontrivial
      << "\n";
  return out.str();
}

std::string render_lef(const GammaGraph& graph, const LEFCertificate& cert) {
  std::ostringstream out;
  out << "Q: " << to_string(cert.q) << "\n";
  if (cert.truncation) {
    out << "retained offsets:";
    if (cert.truncation->retained.empty()) out << " none";
    for (const auto& [key, mags] : cert.truncation->retained) {
      out << " " << graph.labels()[static_cast<std::size_t>(key.first)] << "-"
          << graph.labels()[static_cast<std::size_t>(key.second)] << "{";
      for (std::size_t i = 0; i < mags.size(); ++i) out << (i ? "," : "") << mags[i];
      out << "}";
    }
    out << "\n";
  }
  out << "modulus: " << cert.modulus << " (rule: " << cert.rule << ")\n";
  out << "Y: " << cert.y.size() << " vertices, " << cert.y.edges.size() << " edges\n";
  out << "phi:";
  for (std::size_t i = 0; i < cert.a.size(); ++i)
    out << " " << to_string(cert.a[i]) << "->" << to_string(cert.phi[i]);
  out << "\npsi:";
  for (std::size_t i = 0; i < cert.e.size(); ++i)
    out << " " << graph.vertex_name(cert.e[i]) << "->Y" << cert.psi[i];
  out << "\n";
  return out.str();
}

std::string render_finite_presentation(const FinitePresentationReport& r) {
  std::ostringstream out;
  out << (r.finitely_presented ? "FINITELY PRESENTED" : "NOT FINITELY PRESENTED") << "\n";
  out << "vertex group finitely presented: " << (r.vertex_group_fp ? "yes" : "no") << "\n";
  out << "acting group finitely presented: " << (r.acting_group_fp ? "yes" : "no") << "\n";
  out << "vertex orbits: " << r.counts.vertex_orbits << "\n";
  out << "edge orbits: "
      << (r.counts.edge_orbits ? std::to_string(*r.counts.edge_orbits) : std::string("infinite")) << "\n";
  out << "vertex stabilisers finitely generated: " << (r.stabilisers_fg ? "yes" : "no") << "\n";
  for (const auto& f : r.failures) out << "fails: " << f << "\n";
  return out.str();
}

}  // namespace gwreath
