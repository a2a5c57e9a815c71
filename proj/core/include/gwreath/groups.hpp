#pragma once

// Concrete groups used as vertex groups, acting groups and finite quotients.
//
// Five families are supported: cyclic groups Z/n, symmetric groups S_n,
// groups given by a full multiplication table, free abelian groups Z^r and
// products (Z/m)^r. The last one only appears as the target of a reduction
// homomorphism Z^r -> (Z/m)^r.
//
// Permutations are stored as image arrays and compose right-to-left:
// (s * t)(x) = s(t(x)).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gwreath {

enum class GroupKind { Cyclic, Symmetric, FiniteTable, FreeAbelian, CyclicProduct };

struct GroupElement {
  GroupKind kind = GroupKind::Cyclic;
  // Cyclic: {residue}; Symmetric: image array; FiniteTable: {index};
  // FreeAbelian / CyclicProduct: coordinate vector.
  std::vector<std::int64_t> data;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

class GroupSpec {
 public:
  struct Cyclic {
    std::int64_t order;
  };
  struct Symmetric {
    int degree;
  };
  struct FiniteTable {
    std::size_t size;
    std::size_t identity;
    std::shared_ptr<const std::vector<std::size_t>> table;  // row-major size*size
    std::size_t product(std::size_t a, std::size_t b) const { return (*table)[a * size + b]; }
  };
  struct FreeAbelian {
    int rank;
  };
  struct CyclicProduct {
    std::int64_t modulus;
    int rank;
  };

  // Default is the trivial group Z/1.
  GroupSpec() : rep_(Cyclic{1}) {}

  static GroupSpec cyclic(std::int64_t order);
  static GroupSpec symmetric(int degree);
  // Validates closure, associativity, identity and inverses by exhaustive scan.
  static GroupSpec finite_table(const std::vector<std::vector<std::size_t>>& rows,
                                std::size_t identity);
  static GroupSpec free_abelian(int rank);
  static GroupSpec cyclic_product(std::int64_t modulus, int rank);

  GroupKind kind() const noexcept;
  bool is_finite() const noexcept { return kind() != GroupKind::FreeAbelian; }
  // Number of elements, or nullopt for infinite groups. Throws if the order
  // does not fit in 63 bits.
  std::optional<std::int64_t> order() const;

  const Cyclic* as_cyclic() const noexcept { return std::get_if<Cyclic>(&rep_); }
  const Symmetric* as_symmetric() const noexcept { return std::get_if<Symmetric>(&rep_); }
  const FiniteTable* as_table() const noexcept { return std::get_if<FiniteTable>(&rep_); }
  const FreeAbelian* as_free_abelian() const noexcept { return std::get_if<FreeAbelian>(&rep_); }
  const CyclicProduct* as_cyclic_product() const noexcept {
    return std::get_if<CyclicProduct>(&rep_);
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  using Rep = std::variant<Cyclic, Symmetric, FiniteTable, FreeAbelian, CyclicProduct>;
  explicit GroupSpec(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

bool is_valid(const GroupSpec& spec, const GroupElement& a);
// Throws InvalidArgument when `a` does not belong to `spec`.
void require_valid(const GroupSpec& spec, const GroupElement& a);

GroupElement identity(const GroupSpec& spec);
bool is_identity(const GroupSpec& spec, const GroupElement& a);
GroupElement compose(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupSpec& spec, const GroupElement& a);
GroupElement commutator(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
bool commute(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
bool is_abelian(const GroupSpec& spec);

// Element constructors with validation.
GroupElement residue(const GroupSpec& spec, std::int64_t r);
GroupElement permutation(const GroupSpec& spec, std::vector<std::int64_t> images);
GroupElement table_element(const GroupSpec& spec, std::size_t index);
GroupElement vector_element(const GroupSpec& spec, std::vector<std::int64_t> coords);

// Enumeration of finite groups, in a fixed order (index 0 is not necessarily
// the identity for symmetric groups: permutations come in lexicographic order).
std::vector<GroupElement> elements(const GroupSpec& spec);
std::size_t element_index(const GroupSpec& spec, const GroupElement& a);
GroupElement element_at(const GroupSpec& spec, std::size_t index);

// A fixed nontrivial element, if the group has one.
std::optional<GroupElement> some_nontrivial(const GroupSpec& spec);
// First non-commuting pair in enumeration order; S_n (n >= 3) yields the
// transpositions (1 2), (1 3).
std::optional<std::pair<GroupElement, GroupElement>> non_commuting_pair(const GroupSpec& spec);

class Homomorphism {
 public:
  struct Identity {};
  struct ReduceMod {
    std::int64_t modulus;
  };
  struct Table {
    std::vector<GroupElement> images;  // indexed by element_index in the source
  };
  using Rule = std::variant<Identity, ReduceMod, Table>;

  static Homomorphism identity(const GroupSpec& spec);
  // Z^r -> Z/m (r = 1) or (Z/m)^r (r > 1).
  static Homomorphism reduce_mod(const GroupSpec& source, std::int64_t modulus);
  // Checks the homomorphism property on every pair of the finite source.
  static Homomorphism from_table(const GroupSpec& source, const GroupSpec& target,
                                 std::vector<GroupElement> images);

  GroupElement apply(const GroupElement& a) const;
  GroupElement operator()(const GroupElement& a) const { return apply(a); }

  const GroupSpec& source() const noexcept { return source_; }
  const GroupSpec& target() const noexcept { return target_; }
  const Rule& rule() const noexcept { return rule_; }

 private:
  Homomorphism(GroupSpec source, GroupSpec target, Rule rule)
      : source_(std::move(source)), target_(std::move(target)), rule_(std::move(rule)) {}
  GroupSpec source_;
  GroupSpec target_;
  Rule rule_;
};

struct SeparatingQuotient {
  Homomorphism map;
  GroupElement image;
};

// A homomorphism to a finite group under which `a` stays nontrivial. Finite
// groups map to themselves; Z^r reduces modulo the least m >= 2 that keeps
// some coordinate of `a` nonzero.
SeparatingQuotient separating_quotient(const GroupSpec& spec, const GroupElement& a);

std::string to_string(const GroupSpec& spec);
// Cyclic: "3"; table: "2"; permutations and vectors: "[1,0,2]".
std::string to_string(const GroupElement& a);
GroupElement parse_element(const GroupSpec& spec, const std::string& text);

}  // namespace gwreath
