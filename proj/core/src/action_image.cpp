#include <algorithm>
#include <numeric>

#include "gwreath/error.hpp"
#include "gwreath/gamma_graph.hpp"

namespace gwreath {

namespace {

constexpr std::size_t kMaxImage = 4096;

Permutation compose_perm(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = a[static_cast<std::size_t>(b[x])];
  return out;
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

ActionImage::ActionImage(std::size_t vertex_count, std::vector<Permutation> generators)
    : vertex_count_(vertex_count), generators_(std::move(generators)) {
  Permutation id(vertex_count);
  std::iota(id.begin(), id.end(), 0);
  const std::size_t n = generators_.size();
  elements_.push_back(id);
  exponents_.push_back(GammaElement{std::vector<std::int64_t>(n, 0)});
  index_[id] = 0;
  // Breadth-first closure; forward steps suffice in a finite group.
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      Permutation next = compose_perm(generators_[i], elements_[head]);
      if (index_.count(next)) continue;
      if (elements_.size() >= kMaxImage)
        throw InvalidArgument("action image has more than " + std::to_string(kMaxImage) +
                              " elements");
      GammaElement e = exponents_[head];
      e.coords[i] += 1;
      index_[next] = elements_.size();
      elements_.push_back(std::move(next));
      exponents_.push_back(std::move(e));
    }
  }
  const std::size_t sz = elements_.size();
  table_.resize(sz * sz);
  inverse_.resize(sz);
  for (std::size_t a = 0; a < sz; ++a)
    for (std::size_t b = 0; b < sz; ++b) {
      const std::size_t c = index_.at(compose_perm(elements_[a], elements_[b]));
      table_[a * sz + b] = c;
      if (c == 0) inverse_[a] = b;
    }
  for (const auto& g : generators_) {
    const std::size_t gi = index_.at(g);
    std::int64_t order = 1;
    for (std::size_t p = gi; p != 0; p = product(p, gi)) ++order;
    generator_index_.push_back(gi);
    generator_order_.push_back(order);
  }
}

std::size_t ActionImage::image_of(const GammaElement& gamma) const {
  if (gamma.coords.size() != generators_.size())
    throw InvalidArgument("group element rank does not match the number of generators");
  std::size_t acc = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const std::size_t g = generator_index_[i];
    std::int64_t e = mod(gamma.coords[i], generator_order_[i]);
    for (; e > 0; --e) acc = product(acc, g);
  }
  return acc;
}

std::size_t ActionImage::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) throw InvalidArgument("permutation is not in the action image");
  return it->second;
}

std::vector<std::size_t> ActionImage::closure(const std::vector<std::size_t>& generators) const {
  std::vector<bool> in(size(), false);
  std::vector<std::size_t> members{0};
  in[0] = true;
  for (std::size_t head = 0; head < members.size(); ++head)
    for (auto g : generators) {
      if (g >= size()) throw InvalidArgument("subgroup generator out of range");
      const std::size_t next = product(members[head], g);
      if (!in[next]) {
        in[next] = true;
        members.push_back(next);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

bool ActionImage::is_subgroup(const std::vector<std::size_t>& members) const {
  if (members.empty() || !std::is_sorted(members.begin(), members.end())) return false;
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) return false;
  if (members.back() >= size() || members.front() != 0) return false;
  for (auto a : members)
    for (auto b : members)
      if (!std::binary_search(members.begin(), members.end(), product(a, b))) return false;
  return true;
}

std::vector<std::size_t> ActionImage::power_subgroup(std::int64_t n) const {
  std::vector<std::size_t> gens;
  for (const auto& g : generators_) {
    std::size_t acc = 0;
    const std::size_t gi = index_.at(g);
    for (std::int64_t k = 0; k < n; ++k) acc = product(acc, gi);
    gens.push_back(acc);
  }
  return closure(gens);
}

const std::vector<std::vector<std::size_t>>& ActionImage::subgroups() const {
  std::call_once(subgroups_once_, [this] { enumerate_subgroups(); });
  return subgroups_;
}

void ActionImage::enumerate_subgroups() const {
  // Cyclic subgroups first, then joins until nothing new appears. The image
  // is abelian, so the join of H and K is the product set HK.
  std::set<std::vector<std::size_t>> found;
  for (std::size_t g = 0; g < size(); ++g) found.insert(closure({g}));
  std::vector<std::vector<std::size_t>> work(found.begin(), found.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<std::size_t> gens = work[i];
      gens.insert(gens.end(), work[j].begin(), work[j].end());
      auto joined = closure(gens);
      if (found.insert(joined).second) work.push_back(std::move(joined));
    }
  std::vector<std::vector<std::size_t>> all(found.begin(), found.end());
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.size() > b.size();
  });
  subgroups_ = std::move(all);
}

std::vector<std::size_t> ActionImage::orbits(const std::vector<std::size_t>& subgroup) const {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit(vertex_count_, kUnset);
  std::size_t next = 0;
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (orbit[v] != kUnset) continue;
    for (auto g : subgroup) orbit[static_cast<std::size_t>(elements_[g][v])] = next;
    ++next;
  }
  return orbit;
}

}  // namespace gwreath
