// gwreath: command-line front end.
//
// Exit status: 0 success (including a certified NOT RESIDUALLY FINITE),
// 2 undecided (UNKNOWN, search exhausted, not certifiable), 1 input errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gwreath/error.hpp"
#include "gwreath/io.hpp"

namespace {

using namespace gwreath;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kUndecided = 2;

struct Options {
  std::string instance;
  std::string certificate;
  std::int64_t bound = 64;
  std::optional<std::int64_t> t_max;
  std::string format = "text";
  std::string output;
  std::vector<std::string> elements;
  std::optional<std::int64_t> modulus;
  std::vector<std::string> subgroup;
  std::int64_t lattice = 1;
  std::vector<std::string> a;
  std::vector<std::string> e;
  std::string kind;
  std::vector<std::string> vertices;
  std::string g;
  std::string h;
  bool wreath = false;
};

bool structured(const Options& o) { return o.format == "structured"; }

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + o.output + "'");
  out << text;
}

// A named element of the instance file, or an inline literal.
WreathElement element_arg(const InstanceFile& file, const std::string& text) {
  for (const auto& [name, x] : file.elements)
    if (name == text) return x;
  return parse_element_literal(file.instance, text);
}

std::vector<WreathElement> element_args(const InstanceFile& file, const Options& o, std::size_t min) {
  if (o.elements.size() < min)
    throw InvalidArgument("need at least " + std::to_string(min) + " --element argument(s)");
  std::vector<WreathElement> out;
  for (const auto& s : o.elements) out.push_back(element_arg(file, s));
  return out;
}

int element_result(const Options& o, const Instance& instance, const WreathElement& x) {
  emit(o, structured(o) ? structured_element(instance, x) : to_string(instance, x) + "\n");
  return kOk;
}

int run_normalize(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto x = element_args(file, o, 1).front();
  return element_result(o, file.instance, gw_make(file.instance, x.word, x.gamma));
}

int run_mul(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto xs = element_args(file, o, 2);
  WreathElement acc = gw_identity(file.instance);
  for (const auto& x : xs) acc = gw_compose(file.instance, acc, x);
  return element_result(o, file.instance, acc);
}

int run_invert(const Options& o) {
  const auto file = load_instance(o.instance);
  return element_result(o, file.instance, gw_invert(file.instance, element_args(file, o, 1).front()));
}

int run_check(const Options& o) {
  const auto file = load_instance(o.instance);
  CheckOptions opts;
  opts.bound = o.bound;
  opts.t_max = o.t_max;
  const Verdict v = o.wreath ? classify_wreath(file.instance) : classify(file.instance, opts);
  emit(o, structured(o) ? structured_verdict(file.instance, v) : render_verdict(file.instance, v));
  return v.kind == VerdictKind::Unknown ? kUndecided : kOk;
}

int run_check_fp(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto r = check_finitely_presented(file.instance);
  emit(o, structured(o) ? structured_finite_presentation(r) : render_finite_presentation(r));
  return kOk;
}

int run_separate(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto x = element_args(file, o, 1).front();
  const auto cert = separate(file.instance, x, o.bound);
  emit(o, structured(o) ? structured_separation(file.instance, cert) : render_separation(file.instance, cert));
  return kOk;
}

int run_witness(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto kind = parse_witness_tag(o.kind);
  if (!kind) throw InvalidArgument("unknown witness kind '" + o.kind + "'");
  WitnessParams params;
  for (const auto& v : o.vertices) params.vertices.push_back(file.instance.graph.parse_vertex(v));
  if (!o.g.empty()) {
    params.delta_elements.push_back(parse_element(file.instance.delta, o.g));
    if (!o.h.empty()) params.delta_elements.push_back(parse_element(file.instance.delta, o.h));
  } else if (!o.h.empty()) {
    throw InvalidArgument("--h needs --g");
  }
  const auto w = witness(file.instance, *kind, params);
  emit(o, structured(o) ? structured_witness(file.instance, w) : render_witness(file.instance, w));
  return kOk;
}

int run_quotient(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto& graph = file.instance.graph;
  Subgroup k;
  if (graph.is_translation()) {
    if (!o.modulus) throw InvalidArgument("--modulus is required for translation graphs");
    if (!o.subgroup.empty()) throw InvalidArgument("--subgroup applies to finite graphs only");
    k = ModulusSubgroup{*o.modulus};
  } else {
    if (o.modulus) throw InvalidArgument("--modulus applies to translation graphs only; use --lattice");
    std::vector<GammaElement> gens;
    for (const auto& s : o.subgroup) gens.push_back(parse_gamma(graph, s));
    k = finite_subgroup(graph, gens, o.lattice);
  }
  require_subgroup(graph, k);
  const auto q = quotient_graph(graph, k);
  if (structured(o)) {
    emit(o, structured_quotient(graph, k, q));
  } else {
    emit(o, "subgroup: " + to_string(k) + " (index " + std::to_string(subgroup_index(graph, k)) + ")\n" +
                render_quotient(graph, q));
  }
  return kOk;
}

int run_lef(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto& graph = file.instance.graph;
  std::vector<GammaElement> a;
  std::vector<Vertex> e;
  for (const auto& s : o.a) a.push_back(parse_gamma(graph, s));
  for (const auto& s : o.e) e.push_back(graph.parse_vertex(s));
  const auto cert = lef_certificate(graph, a, e, o.bound);
  emit(o, structured(o) ? structured_lef(graph, cert) : render_lef(graph, cert));
  return kOk;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_verify(const Options& o) {
  const auto file = load_instance(o.instance);
  const auto& instance = file.instance;
  const auto parsed = parse_certificate(instance, slurp(o.certificate));
  std::vector<std::string> failures;
  if (parsed.separation) {
    failures = verify_certificate(instance, *parsed.separation).failures;
  } else if (parsed.witness) {
    if (!verify_witness(instance, *parsed.witness, o.bound)) failures.push_back("witness does not verify");
  } else if (parsed.lef) {
    failures = check_lef(*parsed.lef, instance.graph, parsed.lef->a, parsed.lef->e).failures;
  }
  std::ostringstream out;
  out << (failures.empty() ? "VERIFIED" : "REJECTED") << " " << parsed.type << "\n";
  for (const auto& f : failures) out << "  " << f << "\n";
  emit(o, out.str());
  return failures.empty() ? kOk : kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation in graph wreath products"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("instance", o.instance, "Instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    sub->add_option("--output", o.output, "Write output to this file");
  };
  auto add_bound = [&o](CLI::App* sub) {
    sub->add_option("--bound", o.bound, "Search bound")->check(CLI::PositiveNumber)->capture_default_str();
  };
  auto add_elements = [&o](CLI::App* sub) {
    sub->add_option("--element", o.elements, "Element name from the instance file, or a literal")
        ->take_all();
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;

  auto* normalize = app.add_subcommand("normalize", "Canonical form of an element");
  add_common(normalize);
  add_elements(normalize);
  commands.emplace_back(normalize, run_normalize);

  auto* mul = app.add_subcommand("mul", "Product of elements, left to right");
  add_common(mul);
  add_elements(mul);
  commands.emplace_back(mul, run_mul);

  auto* invert = app.add_subcommand("invert", "Inverse of an element");
  add_common(invert);
  add_elements(invert);
  commands.emplace_back(invert, run_invert);

  auto* check = app.add_subcommand("check", "Residual finiteness verdict");
  add_common(check);
  add_bound(check);
  check->add_option("--t-max", o.t_max, "Largest offset examined per label pair")->check(CLI::NonNegativeNumber);
  check->add_flag("--wreath", o.wreath, "Classify the wreath product of a complete graph");
  commands.emplace_back(check, run_check);

  auto* check_fp = app.add_subcommand("check-fp", "Finite presentability");
  add_common(check_fp);
  commands.emplace_back(check_fp, run_check_fp);

  auto* sep = app.add_subcommand("separate", "Separation certificate for a nontrivial element");
  add_common(sep);
  add_bound(sep);
  add_elements(sep);
  commands.emplace_back(sep, run_separate);

  auto* wit = app.add_subcommand("witness", "Non-residual-finiteness witness");
  wit->set_help_flag("--help", "Print this help message and exit");
  add_common(wit);
  wit->add_option("--kind", o.kind, "nonabelian-loop | non-neighbour-collapse | orbit-collapse")->required();
  wit->add_option("--vertex", o.vertices, "Vertex, repeated for two-vertex witnesses")->required();
  wit->add_option("--g", o.g, "First vertex group element");
  wit->add_option("--h", o.h, "Second vertex group element");
  commands.emplace_back(wit, run_witness);

  auto* quot = app.add_subcommand("quotient", "Quotient graph by a finite-index subgroup");
  add_common(quot);
  quot->add_option("--modulus", o.modulus, "Translation graphs: K = m Z")->check(CLI::PositiveNumber);
  quot->add_option("--subgroup", o.subgroup, "Finite graphs: generators of the image subgroup");
  quot->add_option("--lattice", o.lattice, "Finite graphs: lattice factor N")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  commands.emplace_back(quot, run_quotient);

  auto* lef = app.add_subcommand("lef", "LEF certificate for finite A and E");
  add_common(lef);
  add_bound(lef);
  lef->add_option("--a", o.a, "Element of A, repeated");
  lef->add_option("--e", o.e, "Vertex of E, repeated");
  commands.emplace_back(lef, run_lef);

  auto* ver = app.add_subcommand("verify", "Re-verify a structured certificate");
  add_common(ver);
  add_bound(ver);
  ver->add_option("certificate", o.certificate, "Structured certificate")->required()->check(CLI::ExistingFile);
  commands.emplace_back(ver, run_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    for (const auto& [sub, fn] : commands)
      if (sub->parsed()) return fn(o);
  } catch (const SearchExhausted& e) {
    std::cerr << "search exhausted: " << e.what() << "\n";
    return kUndecided;
  } catch (const NotCertifiable& e) {
    std::cerr << "not certifiable: " << e.what() << "\n";
    return kUndecided;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
