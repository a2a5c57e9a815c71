#include "gwreath/groups.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "gwreath/error.hpp"

namespace gwreath {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

GroupElement make(GroupKind kind, std::vector<std::int64_t> data) {
  return GroupElement{kind, std::move(data)};
}

const char* kind_name(GroupKind k) {
  switch (k) {
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::Symmetric: return "symmetric";
    case GroupKind::FiniteTable: return "table";
    case GroupKind::FreeAbelian: return "free-abelian";
    case GroupKind::CyclicProduct: return "cyclic-product";
  }
  return "?";
}

}  // namespace

GroupSpec GroupSpec::cyclic(std::int64_t order) {
  if (order < 1) throw InvalidArgument("cyclic group order must be >= 1");
  return GroupSpec(Cyclic{order});
}

GroupSpec GroupSpec::symmetric(int degree) {
  if (degree < 1) throw InvalidArgument("symmetric group degree must be >= 1");
  if (degree > 20) throw InvalidArgument("symmetric group degree must be <= 20");
  return GroupSpec(Symmetric{degree});
}

GroupSpec GroupSpec::finite_table(const std::vector<std::vector<std::size_t>>& rows,
                                  std::size_t identity) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("group table must have at least one row");
  if (identity >= n) throw InvalidArgument("identity index out of range");
  auto flat = std::make_shared<std::vector<std::size_t>>();
  flat->reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw InvalidArgument("group table must be square");
    for (std::size_t v : row) {
      if (v >= n) throw InvalidArgument("group table is not closed");
      flat->push_back(v);
    }
  }
  FiniteTable t{n, identity, flat};
  for (std::size_t a = 0; a < n; ++a) {
    if (t.product(identity, a) != a || t.product(a, identity) != a)
      throw InvalidArgument("declared identity is not a two-sided identity");
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (std::size_t b = 0; b < n && !has_inverse; ++b)
      has_inverse = t.product(a, b) == identity && t.product(b, a) == identity;
    if (!has_inverse) throw InvalidArgument("element " + std::to_string(a) + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t.product(t.product(a, b), c) != t.product(a, t.product(b, c)))
          throw InvalidArgument("group table is not associative");
  return GroupSpec(std::move(t));
}

GroupSpec GroupSpec::free_abelian(int rank) {
  if (rank < 0) throw InvalidArgument("free abelian rank must be >= 0");
  return GroupSpec(FreeAbelian{rank});
}

GroupSpec GroupSpec::cyclic_product(std::int64_t modulus, int rank) {
  if (modulus < 1) throw InvalidArgument("cyclic product modulus must be >= 1");
  if (rank < 0) throw InvalidArgument("cyclic product rank must be >= 0");
  return GroupSpec(CyclicProduct{modulus, rank});
}

GroupKind GroupSpec::kind() const noexcept {
  return std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Cyclic>) return GroupKind::Cyclic;
        else if constexpr (std::is_same_v<T, Symmetric>) return GroupKind::Symmetric;
        else if constexpr (std::is_same_v<T, FiniteTable>) return GroupKind::FiniteTable;
        else if constexpr (std::is_same_v<T, FreeAbelian>) return GroupKind::FreeAbelian;
        else return GroupKind::CyclicProduct;
      },
      rep_);
}

std::optional<std::int64_t> GroupSpec::order() const {
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  if (auto c = as_cyclic()) return c->order;
  if (auto s = as_symmetric()) {
    std::int64_t f = 1;
    for (int i = 2; i <= s->degree; ++i) f *= i;
    return f;
  }
  if (auto t = as_table()) return static_cast<std::int64_t>(t->size);
  if (auto p = as_cyclic_product()) {
    std::int64_t r = 1;
    for (int i = 0; i < p->rank; ++i) {
      if (r > kMax / p->modulus) throw InvalidArgument("group order overflows");
      r *= p->modulus;
    }
    return r;
  }
  return std::nullopt;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind() != b.kind()) return false;
  if (auto c = a.as_cyclic()) return c->order == b.as_cyclic()->order;
  if (auto s = a.as_symmetric()) return s->degree == b.as_symmetric()->degree;
  if (auto t = a.as_table()) {
    const auto* u = b.as_table();
    return t->size == u->size && t->identity == u->identity && *t->table == *u->table;
  }
  if (auto f = a.as_free_abelian()) return f->rank == b.as_free_abelian()->rank;
  const auto* p = a.as_cyclic_product();
  const auto* q = b.as_cyclic_product();
  return p->modulus == q->modulus && p->rank == q->rank;
}

bool is_valid(const GroupSpec& spec, const GroupElement& a) {
  if (a.kind != spec.kind()) return false;
  if (auto c = spec.as_cyclic())
    return a.data.size() == 1 && a.data[0] >= 0 && a.data[0] < c->order;
  if (auto s = spec.as_symmetric()) {
    if (a.data.size() != static_cast<std::size_t>(s->degree)) return false;
    std::vector<bool> seen(a.data.size(), false);
    for (auto x : a.data) {
      if (x < 0 || x >= s->degree || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }
  if (auto t = spec.as_table())
    return a.data.size() == 1 && a.data[0] >= 0 && static_cast<std::size_t>(a.data[0]) < t->size;
  if (auto f = spec.as_free_abelian()) return a.data.size() == static_cast<std::size_t>(f->rank);
  const auto* p = spec.as_cyclic_product();
  if (a.data.size() != static_cast<std::size_t>(p->rank)) return false;
  return std::all_of(a.data.begin(), a.data.end(),
                     [&](std::int64_t x) { return x >= 0 && x < p->modulus; });
}

void require_valid(const GroupSpec& spec, const GroupElement& a) {
  if (!is_valid(spec, a))
    throw InvalidArgument("element " + to_string(a) + " does not belong to " + to_string(spec));
}

GroupElement identity(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::Cyclic: return make(GroupKind::Cyclic, {0});
    case GroupKind::Symmetric: {
      std::vector<std::int64_t> id(spec.as_symmetric()->degree);
      std::iota(id.begin(), id.end(), 0);
      return make(GroupKind::Symmetric, std::move(id));
    }
    case GroupKind::FiniteTable:
      return make(GroupKind::FiniteTable, {static_cast<std::int64_t>(spec.as_table()->identity)});
    case GroupKind::FreeAbelian:
      return make(GroupKind::FreeAbelian,
                  std::vector<std::int64_t>(spec.as_free_abelian()->rank, 0));
    case GroupKind::CyclicProduct:
      return make(GroupKind::CyclicProduct,
                  std::vector<std::int64_t>(spec.as_cyclic_product()->rank, 0));
  }
  return {};
}

bool is_identity(const GroupSpec& spec, const GroupElement& a) { return a == identity(spec); }

GroupElement compose(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  require_valid(spec, a);
  require_valid(spec, b);
  switch (spec.kind()) {
    case GroupKind::Cyclic: {
      // Both residues are below the order, so the sum cannot overflow for
      // orders up to 2^62.
      const std::int64_t n = spec.as_cyclic()->order;
      return make(GroupKind::Cyclic, {(a.data[0] + b.data[0]) % n});
    }
    case GroupKind::Symmetric: {
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t x = 0; x < out.size(); ++x) out[x] = a.data[b.data[x]];
      return make(GroupKind::Symmetric, std::move(out));
    }
    case GroupKind::FiniteTable: {
      const auto* t = spec.as_table();
      return make(GroupKind::FiniteTable,
                  {static_cast<std::int64_t>(t->product(a.data[0], b.data[0]))});
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.data[i] + b.data[i];
      return make(GroupKind::FreeAbelian, std::move(out));
    }
    case GroupKind::CyclicProduct: {
      const std::int64_t m = spec.as_cyclic_product()->modulus;
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a.data[i] + b.data[i]) % m;
      return make(GroupKind::CyclicProduct, std::move(out));
    }
  }
  return {};
}

GroupElement invert(const GroupSpec& spec, const GroupElement& a) {
  require_valid(spec, a);
  switch (spec.kind()) {
    case GroupKind::Cyclic:
      return make(GroupKind::Cyclic, {mod(-a.data[0], spec.as_cyclic()->order)});
    case GroupKind::Symmetric: {
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t x = 0; x < out.size(); ++x) out[a.data[x]] = static_cast<std::int64_t>(x);
      return make(GroupKind::Symmetric, std::move(out));
    }
    case GroupKind::FiniteTable: {
      const auto* t = spec.as_table();
      for (std::size_t b = 0; b < t->size; ++b)
        if (t->product(a.data[0], b) == t->identity)
          return make(GroupKind::FiniteTable, {static_cast<std::int64_t>(b)});
      throw InvalidArgument("table element has no inverse");
    }
    case GroupKind::FreeAbelian: {
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = -a.data[i];
      return make(GroupKind::FreeAbelian, std::move(out));
    }
    case GroupKind::CyclicProduct: {
      const std::int64_t m = spec.as_cyclic_product()->modulus;
      std::vector<std::int64_t> out(a.data.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(-a.data[i], m);
      return make(GroupKind::CyclicProduct, std::move(out));
    }
  }
  return {};
}

GroupElement commutator(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  // [a, b] = a b a^-1 b^-1
  return compose(spec, compose(spec, a, b), compose(spec, invert(spec, a), invert(spec, b)));
}

bool commute(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  return compose(spec, a, b) == compose(spec, b, a);
}

bool is_abelian(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::Cyclic:
    case GroupKind::FreeAbelian:
    case GroupKind::CyclicProduct: return true;
    case GroupKind::Symmetric: return spec.as_symmetric()->degree <= 2;
    case GroupKind::FiniteTable: {
      const auto* t = spec.as_table();
      for (std::size_t a = 0; a < t->size; ++a)
        for (std::size_t b = a + 1; b < t->size; ++b)
          if (t->product(a, b) != t->product(b, a)) return false;
      return true;
    }
  }
  return false;
}

GroupElement residue(const GroupSpec& spec, std::int64_t r) {
  auto e = make(GroupKind::Cyclic, {r});
  require_valid(spec, e);
  return e;
}

GroupElement permutation(const GroupSpec& spec, std::vector<std::int64_t> images) {
  auto e = make(GroupKind::Symmetric, std::move(images));
  require_valid(spec, e);
  return e;
}

GroupElement table_element(const GroupSpec& spec, std::size_t index) {
  auto e = make(GroupKind::FiniteTable, {static_cast<std::int64_t>(index)});
  require_valid(spec, e);
  return e;
}

GroupElement vector_element(const GroupSpec& spec, std::vector<std::int64_t> coords) {
  auto e = make(spec.kind(), std::move(coords));
  if (spec.kind() != GroupKind::FreeAbelian && spec.kind() != GroupKind::CyclicProduct)
    throw InvalidArgument("vector elements need a free abelian or cyclic product group");
  require_valid(spec, e);
  return e;
}

std::vector<GroupElement> elements(const GroupSpec& spec) {
  if (!spec.is_finite()) throw InvalidArgument("cannot enumerate an infinite group");
  const std::int64_t n = *spec.order();
  if (n > 5'000'000) throw InvalidArgument("group too large to enumerate");
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(element_at(spec, static_cast<std::size_t>(i)));
  return out;
}

std::size_t element_index(const GroupSpec& spec, const GroupElement& a) {
  require_valid(spec, a);
  switch (spec.kind()) {
    case GroupKind::Cyclic:
    case GroupKind::FiniteTable: return static_cast<std::size_t>(a.data[0]);
    case GroupKind::Symmetric: {
      // Lehmer code gives the lexicographic rank.
      const std::size_t n = a.data.size();
      std::size_t rank = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
          if (a.data[j] < a.data[i]) ++smaller;
        rank = rank * (n - i) + smaller;
      }
      return rank;
    }
    case GroupKind::CyclicProduct: {
      const std::int64_t m = spec.as_cyclic_product()->modulus;
      std::size_t idx = 0;
      for (auto x : a.data) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(x);
      return idx;
    }
    case GroupKind::FreeAbelian: break;
  }
  throw InvalidArgument("element_index needs a finite group");
}

GroupElement element_at(const GroupSpec& spec, std::size_t index) {
  if (!spec.is_finite()) throw InvalidArgument("element_at needs a finite group");
  if (static_cast<std::int64_t>(index) >= *spec.order())
    throw InvalidArgument("element index out of range");
  switch (spec.kind()) {
    case GroupKind::Cyclic:
    case GroupKind::FiniteTable: return make(spec.kind(), {static_cast<std::int64_t>(index)});
    case GroupKind::Symmetric: {
      const int n = spec.as_symmetric()->degree;
      std::vector<std::int64_t> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      std::vector<std::size_t> digits(n);
      for (int i = n - 1; i >= 0; --i) {
        const std::size_t base = static_cast<std::size_t>(n - i);
        digits[i] = index % base;
        index /= base;
      }
      std::vector<std::int64_t> out;
      out.reserve(n);
      for (int i = 0; i < n; ++i) {
        out.push_back(pool[digits[i]]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[i]));
      }
      return make(GroupKind::Symmetric, std::move(out));
    }
    case GroupKind::CyclicProduct: {
      const auto* p = spec.as_cyclic_product();
      std::vector<std::int64_t> out(p->rank);
      for (int i = p->rank - 1; i >= 0; --i) {
        out[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(p->modulus));
        index /= static_cast<std::size_t>(p->modulus);
      }
      return make(GroupKind::CyclicProduct, std::move(out));
    }
    case GroupKind::FreeAbelian: break;
  }
  return {};
}

std::optional<GroupElement> some_nontrivial(const GroupSpec& spec) {
  switch (spec.kind()) {
    case GroupKind::Cyclic:
      if (spec.as_cyclic()->order < 2) return std::nullopt;
      return make(GroupKind::Cyclic, {1});
    case GroupKind::Symmetric: {
      const int n = spec.as_symmetric()->degree;
      if (n < 2) return std::nullopt;
      auto p = identity(spec);
      std::swap(p.data[0], p.data[1]);
      return p;
    }
    case GroupKind::FiniteTable: {
      const auto* t = spec.as_table();
      for (std::size_t i = 0; i < t->size; ++i)
        if (i != t->identity) return make(GroupKind::FiniteTable, {static_cast<std::int64_t>(i)});
      return std::nullopt;
    }
    case GroupKind::FreeAbelian:
    case GroupKind::CyclicProduct: {
      auto e = identity(spec);
      if (e.data.empty()) return std::nullopt;
      if (spec.kind() == GroupKind::CyclicProduct && spec.as_cyclic_product()->modulus < 2)
        return std::nullopt;
      e.data[0] = 1;
      return e;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<GroupElement, GroupElement>> non_commuting_pair(const GroupSpec& spec) {
  if (is_abelian(spec)) return std::nullopt;
  if (spec.kind() == GroupKind::Symmetric) {
    auto g = identity(spec);
    auto h = identity(spec);
    std::swap(g.data[0], g.data[1]);
    std::swap(h.data[0], h.data[2]);
    return std::make_pair(g, h);
  }
  const auto all = elements(spec);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (!commute(spec, all[i], all[j])) return std::make_pair(all[i], all[j]);
  return std::nullopt;
}

Homomorphism Homomorphism::identity(const GroupSpec& spec) {
  return Homomorphism(spec, spec, Identity{});
}

Homomorphism Homomorphism::reduce_mod(const GroupSpec& source, std::int64_t modulus) {
  const auto* f = source.as_free_abelian();
  if (f == nullptr) throw InvalidArgument("reduce_mod needs a free abelian source");
  if (modulus < 1) throw InvalidArgument("reduce_mod modulus must be >= 1");
  GroupSpec target = f->rank == 1 ? GroupSpec::cyclic(modulus)
                                  : GroupSpec::cyclic_product(modulus, f->rank);
  return Homomorphism(source, std::move(target), ReduceMod{modulus});
}

Homomorphism Homomorphism::from_table(const GroupSpec& source, const GroupSpec& target,
                                      std::vector<GroupElement> images) {
  if (!source.is_finite()) throw InvalidArgument("table homomorphisms need a finite source");
  const auto all = elements(source);
  if (images.size() != all.size())
    throw InvalidArgument("table homomorphism must map every source element");
  for (const auto& im : images) require_valid(target, im);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) {
      const auto ab = element_index(source, compose(source, all[i], all[j]));
      if (images[ab] != compose(target, images[i], images[j]))
        throw InvalidArgument("table does not respect composition");
    }
  return Homomorphism(source, target, Table{std::move(images)});
}

GroupElement Homomorphism::apply(const GroupElement& a) const {
  require_valid(source_, a);
  return std::visit(
      [&](const auto& r) -> GroupElement {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return a;
        } else if constexpr (std::is_same_v<T, ReduceMod>) {
          std::vector<std::int64_t> out(a.data.size());
          for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(a.data[i], r.modulus);
          return make(target_.kind(), std::move(out));
        } else {
          return r.images[element_index(source_, a)];
        }
      },
      rule_);
}

SeparatingQuotient separating_quotient(const GroupSpec& spec, const GroupElement& a) {
  require_valid(spec, a);
  if (is_identity(spec, a)) throw DegenerateInput("cannot separate the identity element");
  if (spec.is_finite()) {
    auto h = Homomorphism::identity(spec);
    auto image = h(a);
    return {std::move(h), std::move(image)};
  }
  for (std::int64_t m = 2;; ++m) {
    const bool works = std::any_of(a.data.begin(), a.data.end(),
                                   [m](std::int64_t x) { return mod(x, m) != 0; });
    if (works) {
      auto h = Homomorphism::reduce_mod(spec, m);
      auto image = h(a);
      if (is_identity(h.target(), image)) throw Error("separating quotient produced the identity");
      return {std::move(h), std::move(image)};
    }
  }
}

std::string to_string(const GroupSpec& spec) {
  std::ostringstream os;
  os << kind_name(spec.kind());
  if (auto c = spec.as_cyclic()) os << ' ' << c->order;
  else if (auto s = spec.as_symmetric()) os << ' ' << s->degree;
  else if (auto t = spec.as_table()) os << ' ' << t->size;
  else if (auto f = spec.as_free_abelian()) os << ' ' << f->rank;
  else if (auto p = spec.as_cyclic_product()) os << ' ' << p->modulus << ' ' << p->rank;
  return os.str();
}

std::string to_string(const GroupElement& a) {
  if (a.kind == GroupKind::Cyclic || a.kind == GroupKind::FiniteTable)
    return a.data.empty() ? "?" : std::to_string(a.data[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(a.data[i]);
  }
  return out + "]";
}

GroupElement parse_element(const GroupSpec& spec, const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    std::int64_t v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw InvalidArgument("bad integer '" + std::string(s) + "' in element '" + text + "'");
    return v;
  };
  std::string_view s = text;
  GroupElement e;
  e.kind = spec.kind();
  if (spec.kind() == GroupKind::Cyclic || spec.kind() == GroupKind::FiniteTable) {
    e.data = {parse_int(s)};
  } else {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
      throw InvalidArgument("element '" + text + "' must be written as [x,y,...]");
    s = s.substr(1, s.size() - 2);
    while (!s.empty()) {
      const auto comma = s.find(',');
      e.data.push_back(parse_int(s.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      s.remove_prefix(comma + 1);
    }
  }
  if (!is_valid(spec, e))
    throw InvalidArgument("element '" + text + "' does not belong to " + to_string(spec));
  return e;
}

}  // namespace gwreath
