#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gwreath/error.hpp"
#include "gwreath/io.hpp"

namespace gwreath {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string text;
};

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t number = 0;
    std::string section;
    std::istringstream in{std::string(text)};
    for (std::string raw; std::getline(in, raw);) {
      ++number;
      std::string_view s = raw;
      if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
      s = trim(s);
      if (s.empty()) continue;
      if (s.front() == '[') {
        if (s.back() != ']') throw ParseError(number, "section", "unterminated section header");
        section = std::string(trim(s.substr(1, s.size() - 2)));
        if (section != "delta" && section != "gamma" && section != "graph" && section != "elements")
          throw ParseError(number, "section", "unknown section '" + section + "'");
        if (sections_.count(section))
          throw ParseError(number, "section", "duplicate section '" + section + "'");
        sections_[section];
        header_[section] = number;
        continue;
      }
      if (section.empty()) throw ParseError(number, "section", "content before the first section");
      sections_[section].push_back(Line{number, split(s), std::string(s)});
    }
  }

  InstanceFile run() {
    for (const char* required : {"delta", "gamma", "graph"})
      if (!sections_.count(required))
        throw ParseError(header_line("graph"), required, "missing section [" + std::string(required) + "]");
    GroupSpec delta = parse_delta();
    const bool translation = parse_gamma();
    GammaGraph graph = translation ? parse_translation() : parse_finite();
    InstanceFile out{Instance{std::move(delta), std::move(graph)}, {}};
    if (sections_.count("elements")) {
      for (const auto& line : sections_["elements"]) {
        const auto eq = line.text.find('=');
        if (eq == std::string::npos) throw ParseError(line.number, "elements", "expected 'name = literal'");
        const std::string name(trim(std::string_view(line.text).substr(0, eq)));
        if (name.empty() || name.find(' ') != std::string::npos)
          throw ParseError(line.number, "elements", "bad element name '" + name + "'");
        for (const auto& [existing, _] : out.elements)
          if (existing == name) throw ParseError(line.number, name, "duplicate element name");
        try {
          out.elements.emplace_back(
              name, parse_element_literal(out.instance, std::string_view(line.text).substr(eq + 1)));
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(line.number, name, e.what());
        }
      }
    }
    return out;
  }

 private:
  std::size_t header_line(const std::string& section) const {
    auto it = header_.find(section);
    return it == header_.end() ? 1 : it->second;
  }

  std::int64_t integer(const Line& line, std::size_t i, const std::string& field) const {
    if (i >= line.tokens.size()) throw ParseError(line.number, field, "missing value");
    auto v = to_int(line.tokens[i]);
    if (!v) throw ParseError(line.number, field, "'" + line.tokens[i] + "' is not an integer");
    return *v;
  }

  void arity(const Line& line, std::size_t n, const std::string& field) const {
    if (line.tokens.size() != n)
      throw ParseError(line.number, field, "expected " + std::to_string(n - 1) + " value(s)");
  }

  GroupSpec parse_delta() {
    const auto& lines = sections_["delta"];
    if (lines.empty()) throw ParseError(header_line("delta"), "delta", "empty section");
    const Line& head = lines[0];
    const std::string& kind = head.tokens[0];
    try {
      if (kind == "table") {
        if (head.tokens.size() != 4 || head.tokens[2] != "identity")
          throw ParseError(head.number, "table", "expected 'table N identity I'");
        const auto n = integer(head, 1, "table");
        const auto id = integer(head, 3, "identity");
        if (n < 1) throw ParseError(head.number, "table", "size must be >= 1");
        if (static_cast<std::int64_t>(lines.size()) - 1 != n)
          throw ParseError(head.number, "table", "expected " + std::to_string(n) + " row lines");
        std::vector<std::vector<std::size_t>> rows;
        for (std::size_t r = 1; r < lines.size(); ++r) {
          const Line& line = lines[r];
          if (line.tokens[0] != "row") throw ParseError(line.number, line.tokens[0], "unknown field");
          arity(line, static_cast<std::size_t>(n) + 1, "row");
          std::vector<std::size_t> row;
          for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const auto x = integer(line, i, "row");
            if (x < 0 || x >= n) throw ParseError(line.number, "row", "entry out of range");
            row.push_back(static_cast<std::size_t>(x));
          }
          rows.push_back(std::move(row));
        }
        if (id < 0 || id >= n) throw ParseError(head.number, "identity", "out of range");
        return GroupSpec::finite_table(rows, static_cast<std::size_t>(id));
      }
      if (lines.size() != 1) throw ParseError(lines[1].number, lines[1].tokens[0], "unknown field");
      arity(head, 2, kind);
      const auto n = integer(head, 1, kind);
      if (kind == "cyclic") return GroupSpec::cyclic(n);
      if (kind == "symmetric") return GroupSpec::symmetric(static_cast<int>(n));
      if (kind == "free-abelian") return GroupSpec::free_abelian(static_cast<int>(n));
      throw ParseError(head.number, kind, "unknown group kind");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(head.number, kind, e.what());
    }
  }

  bool parse_gamma() {
    const auto& lines = sections_["gamma"];
    if (lines.size() != 1) throw ParseError(header_line("gamma"), "gamma", "expected one line");
    const Line& line = lines[0];
    arity(line, 1, "gamma");
    if (line.tokens[0] == "translation") return true;
    if (line.tokens[0] == "finite") return false;
    throw ParseError(line.number, "gamma", "expected 'translation' or 'finite'");
  }

  GammaGraph parse_translation() {
    std::vector<std::string> labels;
    bool have_labels = false;
    GammaGraph::FamilyMap families;
    auto label = [&](const Line& line, const std::string& name) {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == name) return static_cast<int>(i);
      throw ParseError(line.number, "family", "unknown label '" + name + "'");
    };
    for (const auto& line : sections_["graph"]) {
      const std::string& key = line.tokens[0];
      if (key == "labels") {
        if (have_labels) throw ParseError(line.number, "labels", "labels given twice");
        have_labels = true;
        labels.assign(line.tokens.begin() + 1, line.tokens.end());
        for (const auto& l : labels)
          if (l.find(':') != std::string::npos)
            throw ParseError(line.number, "labels", "label '" + l + "' contains ':'");
      } else if (key == "family") {
        if (!have_labels) throw ParseError(line.number, "family", "families must follow 'labels'");
        if (line.tokens.size() < 4) throw ParseError(line.number, "family", "expected 'family c d kind ...'");
        int c = label(line, line.tokens[1]);
        int d = label(line, line.tokens[2]);
        if (c > d) std::swap(c, d);
        const std::string& kind = line.tokens[3];
        try {
          if (kind == "finite") {
            std::vector<std::int64_t> offsets;
            for (std::size_t i = 4; i < line.tokens.size(); ++i) offsets.push_back(integer(line, i, "finite"));
            if (offsets.empty()) throw ParseError(line.number, "finite", "no offsets");
            families[{c, d}].push_back(DifferenceFamily::finite(offsets));
          } else if (kind == "factorial") {
            arity(line, 5, "factorial");
            families[{c, d}].push_back(DifferenceFamily::factorial(integer(line, 4, "factorial")));
          } else if (kind == "arithmetic") {
            arity(line, 6, "arithmetic");
            families[{c, d}].push_back(
                DifferenceFamily::arithmetic(integer(line, 4, "arithmetic"), integer(line, 5, "arithmetic")));
          } else {
            throw ParseError(line.number, "family", "unknown family kind '" + kind + "'");
          }
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(line.number, kind, e.what());
        }
      } else {
        throw ParseError(line.number, key, "unknown field for a translation graph");
      }
    }
    if (!have_labels) throw ParseError(header_line("graph"), "labels", "missing 'labels'");
    try {
      return GammaGraph::translation(labels, families);
    } catch (const Error& e) {
      throw ParseError(header_line("graph"), "graph", e.what());
    }
  }

  GammaGraph parse_finite() {
    std::optional<std::int64_t> n;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::vector<Permutation> generators;
    for (const auto& line : sections_["graph"]) {
      const std::string& key = line.tokens[0];
      if (key == "vertices") {
        if (n) throw ParseError(line.number, "vertices", "given twice");
        arity(line, 2, "vertices");
        n = integer(line, 1, "vertices");
        if (*n < 0) throw ParseError(line.number, "vertices", "must be >= 0");
      } else if (key == "edge") {
        arity(line, 3, "edge");
        edges.emplace_back(integer(line, 1, "edge"), integer(line, 2, "edge"));
      } else if (key == "generator") {
        Permutation p;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) p.push_back(integer(line, i, "generator"));
        generators.push_back(std::move(p));
      } else {
        throw ParseError(line.number, key, "unknown field for a finite graph");
      }
    }
    if (!n) throw ParseError(header_line("graph"), "vertices", "missing 'vertices'");
    try {
      return GammaGraph::finite(static_cast<std::size_t>(*n), edges, std::move(generators));
    } catch (const Error& e) {
      throw ParseError(header_line("graph"), "graph", e.what());
    }
  }

  std::map<std::string, std::vector<Line>> sections_;
  std::map<std::string, std::size_t> header_;
};

}  // namespace

const WreathElement& InstanceFile::element(const std::string& name) const {
  for (const auto& [n, x] : elements)
    if (n == name) return x;
  throw InvalidArgument("no element named '" + name + "'");
}

InstanceFile parse_instance(std::string_view text) { return Parser(text).run(); }

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

GammaElement parse_gamma(const GammaGraph& graph, std::string_view text) {
  text = trim(text);
  GammaElement g;
  while (true) {
    const auto comma = text.find(',');
    const auto part = trim(text.substr(0, comma));
    auto v = to_int(part);
    if (!v) throw InvalidArgument("bad group element '" + std::string(text) + "'");
    g.coords.push_back(*v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  graph.require_gamma(g);
  return g;
}

WreathElement parse_element_literal(const Instance& instance, std::string_view text) {
  const auto at = text.find('@');
  const std::string_view word_part = trim(text.substr(0, at));
  GammaElement gamma = instance.graph.gamma_identity();
  if (at != std::string_view::npos) gamma = parse_gamma(instance.graph, text.substr(at + 1));
  Word w;
  for (const auto& tok : split(word_part)) {
    if (tok == "e") continue;
    const auto caret = tok.rfind('^');
    if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
      throw InvalidArgument("syllable '" + tok + "' must be written vertex^value");
    w.syllables.push_back(Syllable{instance.graph.parse_vertex(tok.substr(0, caret)),
                                   parse_element(instance.delta, tok.substr(caret + 1))});
  }
  return gw_make(instance, w, gamma);
}

GroupSpec parse_group_spec(std::string_view text) {
  const auto tokens = split(text);
  auto num = [&](std::size_t i) {
    if (i >= tokens.size()) throw InvalidArgument("group '" + std::string(text) + "' is incomplete");
    auto v = to_int(tokens[i]);
    if (!v) throw InvalidArgument("bad integer in group '" + std::string(text) + "'");
    return *v;
  };
  if (tokens.empty()) throw InvalidArgument("empty group description");
  const auto& kind = tokens[0];
  const std::size_t want = kind == "cyclic-product" ? 3 : 2;
  if (tokens.size() != want) throw InvalidArgument("group '" + std::string(text) + "' is malformed");
  if (kind == "cyclic") return GroupSpec::cyclic(num(1));
  if (kind == "symmetric") return GroupSpec::symmetric(static_cast<int>(num(1)));
  if (kind == "free-abelian") return GroupSpec::free_abelian(static_cast<int>(num(1)));
  if (kind == "cyclic-product") return GroupSpec::cyclic_product(num(1), static_cast<int>(num(2)));
  throw InvalidArgument("unknown group kind '" + kind + "'");
}

}  // namespace gwreath
