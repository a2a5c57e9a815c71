#include <json.hpp>
#include <sstream>

#include "gwreath/error.hpp"
#include "gwreath/io.hpp"

namespace gwreath {

namespace {

using json = nlohmann::ordered_json;

json header(const std::string& type) {
  json h;
  h["format"] = "gwreath";
  h["version"] = kFormatVersion;
  h["type"] = type;
  return h;
}

std::string join(const std::vector<json>& records) {
  std::string out;
  for (const auto& r : records) {
    out += r.dump();
    out += '\n';
  }
  return out;
}

json word_json(const GammaGraph& graph, const Word& w) {
  json out = json::array();
  for (const auto& s : w.syllables) out.push_back(json::array({graph.vertex_name(s.vertex), to_string(s.value)}));
  return out;
}

json orbit_word_json(const Word& w) {
  json out = json::array();
  for (const auto& s : w.syllables) out.push_back(json::array({s.vertex.position, to_string(s.value)}));
  return out;
}

json element_record(const Instance& instance, const WreathElement& x) {
  json r;
  r["record"] = "element";
  r["word"] = word_json(instance.graph, x.word);
  r["gamma"] = x.gamma.coords;
  r["text"] = to_string(instance, x);
  return r;
}

json quotient_json(const QuotientGraph& q) {
  json r;
  json lift = json::array();
  for (const auto& v : q.lift) lift.push_back(json::array({v.label, v.position}));
  r["lift"] = lift;
  json edges = json::array();
  for (auto [a, b] : q.edges) edges.push_back(json::array({a, b}));
  r["edges"] = edges;
  json loops = json::array();
  for (std::size_t i = 0; i < q.loop.size(); ++i)
    if (q.loop[i]) loops.push_back(i);
  r["loops"] = loops;
  r["modulus"] = q.modulus;
  r["vertex_orbit"] = q.vertex_orbit;
  return r;
}

json subgroup_json(const Subgroup& k) {
  json r;
  if (const auto* m = std::get_if<ModulusSubgroup>(&k)) {
    r["kind"] = "modulus";
    r["modulus"] = m->modulus;
  } else {
    const auto& p = std::get<FiniteSubgroup>(k);
    r["kind"] = "finite";
    r["members"] = p.members;
    r["lattice"] = p.lattice;
  }
  return r;
}

std::vector<json> witness_records(const Instance& instance, const NonRFWitness& w) {
  const auto& graph = instance.graph;
  json head;
  head["record"] = "witness";
  head["kind"] = witness_tag(w.kind);
  json vs = json::array();
  for (const auto& v : w.vertices) vs.push_back(graph.vertex_name(v));
  head["vertices"] = vs;
  json gs = json::array();
  for (const auto& g : w.delta_elements) gs.push_back(to_string(g));
  head["delta_elements"] = gs;
  json ob;
  ob["record"] = "obstruction";
  ob["lemma"] = lemma_name(w.obstruction.lemma);
  ob["from"] = graph.labels().at(static_cast<std::size_t>(w.obstruction.from_label));
  ob["to"] = graph.labels().at(static_cast<std::size_t>(w.obstruction.to_label));
  ob["family"] = to_string(w.obstruction.family);
  ob["offset"] = w.obstruction.offset;
  ob["statement"] = describe(graph, w.obstruction);
  return {head, element_record(instance, w.element), ob};
}

// ----------------------------------------------------------------- parsing

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t number = 0;
    for (std::string line; std::getline(in, line);) {
      ++number;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        records_.push_back({number, json::parse(line)});
      } catch (const json::exception& e) {
        throw ParseError(number, "json", e.what());
      }
    }
    if (records_.empty()) throw ParseError(1, "format", "empty document");
    const auto& h = records_[0].second;
    if (!h.is_object() || h.value("format", "") != "gwreath")
      throw ParseError(records_[0].first, "format", "not a gwreath document");
    if (h.value("version", 0) != kFormatVersion)
      throw ParseError(records_[0].first, "version", "unsupported version");
    type_ = h.value("type", "");
  }

  const std::string& type() const { return type_; }

  const json& record(const std::string& name) {
    for (const auto& [line, r] : records_)
      if (r.is_object() && r.value("record", "") == name) {
        current_line_ = line;
        return r;
      }
    throw ParseError(records_.back().first, name, "missing record");
  }

  template <typename F>
  auto field(const json& r, const std::string& key, F&& convert) {
    if (!r.contains(key)) throw ParseError(current_line_, key, "missing field");
    try {
      return convert(r.at(key));
    } catch (const ParseError&) {
      throw;
    } catch (const json::exception& e) {
      throw ParseError(current_line_, key, e.what());
    } catch (const Error& e) {
      throw ParseError(current_line_, key, e.what());
    }
  }

 private:
  std::vector<std::pair<std::size_t, json>> records_;
  std::string type_;
  std::size_t current_line_ = 0;
};

Word parse_word(const Instance& instance, const json& j) {
  Word w;
  for (const auto& s : j)
    w.syllables.push_back(Syllable{instance.graph.parse_vertex(s.at(0).get<std::string>()),
                                   parse_element(instance.delta, s.at(1).get<std::string>())});
  return w;
}

Word parse_orbit_word(const GroupSpec& delta, const json& j) {
  Word w;
  for (const auto& s : j)
    w.syllables.push_back(
        Syllable{finite_vertex(s.at(0).get<std::int64_t>()), parse_element(delta, s.at(1).get<std::string>())});
  return w;
}

QuotientGraph parse_quotient(const json& r) {
  QuotientGraph q;
  for (const auto& v : r.at("lift")) q.lift.push_back(Vertex{v.at(0).get<int>(), v.at(1).get<std::int64_t>()});
  for (const auto& e : r.at("edges")) q.edges.insert({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
  q.loop.assign(q.lift.size(), false);
  for (const auto& i : r.at("loops")) q.loop.at(i.get<std::size_t>()) = true;
  q.modulus = r.at("modulus").get<std::int64_t>();
  q.vertex_orbit = r.at("vertex_orbit").get<std::vector<std::size_t>>();
  return q;
}

Subgroup parse_subgroup(const json& r) {
  const auto kind = r.at("kind").get<std::string>();
  if (kind == "modulus") return ModulusSubgroup{r.at("modulus").get<std::int64_t>()};
  if (kind == "finite")
    return FiniteSubgroup{r.at("members").get<std::vector<std::size_t>>(), r.at("lattice").get<std::int64_t>()};
  throw InvalidArgument("unknown subgroup kind '" + kind + "'");
}

WreathElement parse_element_record(Reader& in, const Instance& instance) {
  const json& r = in.record("element");
  Word w = in.field(r, "word", [&](const json& j) { return parse_word(instance, j); });
  GammaElement g{in.field(r, "gamma", [](const json& j) { return j.get<std::vector<std::int64_t>>(); })};
  return WreathElement{std::move(w), std::move(g)};
}

RFCertificate parse_separation(Reader& in, const Instance& instance) {
  RFCertificate c;
  c.element = parse_element_record(in, instance);
  const json& restriction = in.record("restriction");
  c.kept = in.field(restriction, "kept", [](const json& j) { return j.get<std::vector<std::int64_t>>(); });
  const json& sub = in.record("subgroup");
  c.subgroup = in.field(sub, "subgroup", [](const json& j) { return parse_subgroup(j); });
  c.index = in.field(sub, "index", [](const json& j) { return j.get<std::int64_t>(); });
  const json& q = in.record("quotient");
  c.quotient = in.field(q, "graph", [](const json& j) { return parse_quotient(j); });
  const json& image = in.record("image");
  c.gamma_image.coords = in.field(image, "gamma", [](const json& j) { return j.get<std::vector<std::int64_t>>(); });
  c.word_image = in.field(image, "word", [&](const json& j) { return parse_orbit_word(instance.delta, j); });
  const json& checks = in.record("checks");
  auto flag = [&](const char* key) { return in.field(checks, key, [](const json& j) { return j.get<bool>(); }); };
  c.checks.gamma_injective = flag("gamma_injective");
  c.checks.induced_isomorphism = flag("induced_isomorphism");
  c.checks.loop_free = flag("loop_free");
  c.checks.image_nontrivial = flag("image_nontrivial");
  return c;
}

NonRFWitness parse_witness(Reader& in, const Instance& instance) {
  NonRFWitness w;
  const auto& graph = instance.graph;
  const json& head = in.record("witness");
  w.kind = in.field(head, "kind", [](const json& j) {
    auto k = parse_witness_tag(j.get<std::string>());
    if (!k) throw InvalidArgument("unknown witness kind");
    return *k;
  });
  w.vertices = in.field(head, "vertices", [&](const json& j) {
    std::vector<Vertex> out;
    for (const auto& v : j) out.push_back(graph.parse_vertex(v.get<std::string>()));
    return out;
  });
  w.delta_elements = in.field(head, "delta_elements", [&](const json& j) {
    std::vector<GroupElement> out;
    for (const auto& g : j) out.push_back(parse_element(instance.delta, g.get<std::string>()));
    return out;
  });
  w.element = parse_element_record(in, instance);
  const json& ob = in.record("obstruction");
  const auto lemma = in.field(ob, "lemma", [](const json& j) {
    const auto name = j.get<std::string>();
    for (auto l : {ObstructionLemma::FactorialDivisibility, ObstructionLemma::FactorialTail,
                   ObstructionLemma::ArithmeticCover})
      if (lemma_name(l) == name) return l;
    throw InvalidArgument("unknown lemma '" + name + "'");
  });
  const int from = in.field(ob, "from", [&](const json& j) { return graph.label_index(j.get<std::string>()); });
  const int to = in.field(ob, "to", [&](const json& j) { return graph.label_index(j.get<std::string>()); });
  const auto offset = in.field(ob, "offset", [](const json& j) { return j.get<std::int64_t>(); });
  const auto family = in.field(ob, "family", [&](const json& j) {
    const auto text = j.get<std::string>();
    for (const auto& f : graph.families(std::min(from, to), std::max(from, to)))
      if (to_string(f) == text) return f;
    throw InvalidArgument("family '" + text + "' is not attached to the label pair");
  });
  w.obstruction = Obstruction{lemma, from, to, family, offset};
  return w;
}

GroupSpec parse_q(const json& r) {
  const auto text = r.at("group").get<std::string>();
  if (text.rfind("table", 0) == 0) {
    std::vector<std::vector<std::size_t>> rows = r.at("rows").get<std::vector<std::vector<std::size_t>>>();
    return GroupSpec::finite_table(rows, r.at("identity").get<std::size_t>());
  }
  return parse_group_spec(text);
}

LEFCertificate parse_lef(Reader& in, const GammaGraph& graph) {
  LEFCertificate c;
  const json& sets = in.record("sets");
  c.a = in.field(sets, "a", [](const json& j) {
    std::vector<GammaElement> out;
    for (const auto& g : j) out.push_back(GammaElement{g.get<std::vector<std::int64_t>>()});
    return out;
  });
  c.e = in.field(sets, "e", [&](const json& j) {
    std::vector<Vertex> out;
    for (const auto& v : j) out.push_back(graph.parse_vertex(v.get<std::string>()));
    return out;
  });
  const json& q = in.record("q");
  c.q = in.field(q, "group", [&](const json&) { return parse_q(q); });
  const json& y = in.record("y");
  c.y = in.field(y, "graph", [](const json& j) { return parse_quotient(j); });
  const json& maps = in.record("maps");
  c.phi = in.field(maps, "phi", [&](const json& j) {
    std::vector<GroupElement> out;
    for (const auto& g : j) out.push_back(parse_element(c.q, g.get<std::string>()));
    return out;
  });
  c.psi = in.field(maps, "psi", [](const json& j) { return j.get<std::vector<std::size_t>>(); });
  c.action = in.field(maps, "action", [](const json& j) { return j.get<std::vector<std::vector<std::size_t>>>(); });
  const json& m = in.record("modulus");
  c.modulus = in.field(m, "modulus", [](const json& j) { return j.get<std::int64_t>(); });
  c.rule_modulus = in.field(m, "rule_modulus", [](const json& j) { return j.get<std::int64_t>(); });
  c.rule = in.field(m, "rule", [](const json& j) { return j.get<std::string>(); });
  if (graph.is_translation()) c.truncation = truncate_graph(graph, c.e);
  return c;
}

}  // namespace

std::string structured_separation(const Instance& instance, const RFCertificate& cert) {
  std::vector<json> out{header("separation-certificate"), element_record(instance, cert.element)};
  json restriction;
  restriction["record"] = "restriction";
  restriction["kept"] = cert.kept;
  out.push_back(restriction);
  json sub;
  sub["record"] = "subgroup";
  sub["subgroup"] = subgroup_json(cert.subgroup);
  sub["index"] = cert.index;
  sub["text"] = to_string(cert.subgroup);
  out.push_back(sub);
  json q;
  q["record"] = "quotient";
  q["graph"] = quotient_json(cert.quotient);
  out.push_back(q);
  json image;
  image["record"] = "image";
  image["gamma"] = cert.gamma_image.coords;
  image["word"] = orbit_word_json(cert.word_image);
  out.push_back(image);
  json checks;
  checks["record"] = "checks";
  checks["gamma_injective"] = cert.checks.gamma_injective;
  checks["induced_isomorphism"] = cert.checks.induced_isomorphism;
  checks["loop_free"] = cert.checks.loop_free;
  checks["image_nontrivial"] = cert.checks.image_nontrivial;
  checks["note"] = "nontriviality is verified directly by the word problem in the finite quotient";
  out.push_back(checks);
  return join(out);
}

std::string structured_witness(const Instance& instance, const NonRFWitness& w) {
  std::vector<json> out{header("non-rf-witness")};
  for (auto& r : witness_records(instance, w)) out.push_back(std::move(r));
  return join(out);
}

std::string structured_lef(const GammaGraph& graph, const LEFCertificate& cert) {
  std::vector<json> out{header("lef-certificate")};
  json sets;
  sets["record"] = "sets";
  json a = json::array();
  for (const auto& g : cert.a) a.push_back(g.coords);
  sets["a"] = a;
  json e = json::array();
  for (const auto& v : cert.e) e.push_back(graph.vertex_name(v));
  sets["e"] = e;
  out.push_back(sets);
  json q;
  q["record"] = "q";
  q["group"] = to_string(cert.q);
  if (const auto* t = cert.q.as_table()) {
    json rows = json::array();
    for (std::size_t i = 0; i < t->size; ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < t->size; ++j) row.push_back(t->product(i, j));
      rows.push_back(row);
    }
    q["identity"] = t->identity;
    q["rows"] = rows;
  }
  out.push_back(q);
  json y;
  y["record"] = "y";
  y["graph"] = quotient_json(cert.y);
  out.push_back(y);
  json maps;
  maps["record"] = "maps";
  json phi = json::array();
  for (const auto& g : cert.phi) phi.push_back(to_string(g));
  maps["phi"] = phi;
  maps["psi"] = cert.psi;
  maps["action"] = cert.action;
  out.push_back(maps);
  if (cert.truncation) {
    json t;
    t["record"] = "truncation";
    json retained = json::array();
    for (const auto& [key, mags] : cert.truncation->retained) {
      json r;
      r["from"] = graph.labels()[static_cast<std::size_t>(key.first)];
      r["to"] = graph.labels()[static_cast<std::size_t>(key.second)];
      r["offsets"] = mags;
      retained.push_back(r);
    }
    t["retained"] = retained;
    out.push_back(t);
  }
  json m;
  m["record"] = "modulus";
  m["modulus"] = cert.modulus;
  m["rule_modulus"] = cert.rule_modulus;
  m["rule"] = cert.rule;
  out.push_back(m);
  return join(out);
}

std::string structured_verdict(const Instance& instance, const Verdict& verdict) {
  const auto& graph = instance.graph;
  auto orbit_name = [&](std::int64_t o) {
    return graph.is_translation() ? graph.labels()[static_cast<std::size_t>(o)] : std::to_string(o);
  };
  std::vector<json> out{header("verdict")};
  json v;
  v["record"] = "verdict";
  v["verdict"] = to_string(verdict.kind);
  v["reason"] = verdict.reason;
  v["bound"] = verdict.bound;
  v["failing_condition"] = verdict.failing_condition;
  out.push_back(v);
  if (verdict.cond2) {
    json c;
    c["record"] = "cond2";
    c["status"] = to_string(verdict.cond2->status);
    c["abelian_branch"] = verdict.cond2->abelian_branch;
    out.push_back(c);
    for (const auto& o : verdict.cond2->orbits) {
      json r;
      r["record"] = "cond2-orbit";
      r["orbit"] = orbit_name(o.orbit);
      r["status"] = to_string(o.status);
      r["loop_free"] = o.loop_free ? json(to_string(*o.loop_free)) : json(nullptr);
      r["loop_free_index"] = o.loop_free_index ? json(*o.loop_free_index) : json(nullptr);
      r["rule"] = o.rule;
      r["obstruction"] = o.obstruction ? json(describe(graph, *o.obstruction)) : json(nullptr);
      out.push_back(r);
    }
  }
  if (verdict.cond3) {
    json c;
    c["record"] = "cond3";
    c["status"] = to_string(verdict.cond3->status);
    c["t_max"] = verdict.cond3->t_max;
    out.push_back(c);
    for (const auto& p : verdict.cond3->pairs) {
      json r;
      r["record"] = "cond3-pair";
      r["from"] = orbit_name(p.from);
      r["to"] = orbit_name(p.to);
      r["status"] = to_string(p.status);
      r["rule"] = p.rule;
      json offs = json::array();
      for (const auto& om : p.offsets)
        offs.push_back(json::array({om.offset, om.modulus ? json(*om.modulus) : json(nullptr)}));
      r["offsets"] = offs;
      r["failing_offset"] = p.failing_offset ? json(*p.failing_offset) : json(nullptr);
      r["obstruction"] = p.obstruction ? json(describe(graph, *p.obstruction)) : json(nullptr);
      out.push_back(r);
    }
  }
  if (verdict.witness)
    for (auto& r : witness_records(instance, *verdict.witness)) out.push_back(std::move(r));
  return join(out);
}

std::string structured_element(const Instance& instance, const WreathElement& x) {
  return join({header("element"), element_record(instance, x)});
}

std::string structured_quotient(const GammaGraph& graph, const Subgroup& k, const QuotientGraph& q) {
  json sub;
  sub["record"] = "subgroup";
  sub["subgroup"] = subgroup_json(k);
  sub["index"] = subgroup_index(graph, k);
  sub["text"] = to_string(k);
  json r;
  r["record"] = "quotient";
  r["graph"] = quotient_json(q);
  return join({header("quotient"), sub, r});
}

std::string structured_finite_presentation(const FinitePresentationReport& report) {
  json r;
  r["record"] = "finite-presentation";
  r["finitely_presented"] = report.finitely_presented;
  r["vertex_group_fp"] = report.vertex_group_fp;
  r["acting_group_fp"] = report.acting_group_fp;
  r["finite_vertex_orbits"] = report.finite_vertex_orbits;
  r["finite_edge_orbits"] = report.finite_edge_orbits;
  r["stabilisers_fg"] = report.stabilisers_fg;
  r["vertex_orbits"] = report.counts.vertex_orbits;
  r["edge_orbits"] = report.counts.edge_orbits ? json(*report.counts.edge_orbits) : json("infinite");
  r["failures"] = report.failures;
  return join({header("finite-presentation"), r});
}

ParsedCertificate parse_certificate(const Instance& instance, std::string_view text) {
  Reader in(text);
  ParsedCertificate out;
  out.type = in.type();
  if (out.type == "separation-certificate") out.separation = parse_separation(in, instance);
  else if (out.type == "non-rf-witness") out.witness = parse_witness(in, instance);
  else if (out.type == "lef-certificate") out.lef = parse_lef(in, instance.graph);
  else throw ParseError(1, "type", "unsupported document type '" + out.type + "'");
  return out;
}

}  // namespace gwreath
