#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "normdebt/error.hpp"

namespace normdebt {

using AttributeSet = std::set<std::string>;

struct Attribute {
  std::string name;
  bool atomic = true;  // false marks a repeating group or composite domain (fails 1NF)

  bool operator==(const Attribute&) const = default;
};

struct FunctionalDependency {
  AttributeSet lhs;
  AttributeSet rhs;

  bool operator==(const FunctionalDependency&) const = default;
};

struct MultivaluedDependency {
  AttributeSet lhs;
  AttributeSet rhs;

  // Trivial iff rhs is contained in lhs or lhs and rhs together cover every attribute.
  bool is_trivial(const AttributeSet& all_attributes) const;

  bool operator==(const MultivaluedDependency&) const = default;
};

struct TableDef {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<FunctionalDependency> fds;
  std::vector<MultivaluedDependency> mvds;

  AttributeSet attribute_names() const;
  bool has_attribute(std::string_view attribute) const;

  bool operator==(const TableDef&) const = default;
};

// Throws InputError describing the first broken invariant (empty or duplicate attribute
// names, empty dependency sides, references to undeclared attributes).
void validate_table(const TableDef& table);

enum class NormalForm { unf, nf1, nf2, nf3, bcnf, nf4 };

std::string_view to_string(NormalForm level);
std::optional<NormalForm> parse_normal_form(std::string_view text);

std::string to_string(const AttributeSet& attributes);
std::string to_string(const FunctionalDependency& fd);
std::string to_string(const MultivaluedDependency& mvd);

struct NFViolation {
  // The level this violation keeps the table from reaching.
  NormalForm target_level = NormalForm::nf1;
  // Offending dependency, or the name of a non-atomic attribute.
  std::variant<FunctionalDependency, MultivaluedDependency, std::string> witness;
  std::string explanation;

  std::string witness_text() const;
};

inline constexpr std::size_t kKeySearchLimit = 30;

// Smallest superset of `attributes` closed under `fds`.
AttributeSet attribute_closure(const AttributeSet& attributes, std::span<const FunctionalDependency> fds);

// Same, checked against the table's declared attributes. Throws InputError on an unknown name.
AttributeSet attribute_closure(const TableDef& table, const AttributeSet& attributes);

// Canonical cover: singleton right-hand sides, no extraneous left-hand attributes, no
// redundant dependencies. Output follows the declaration order of the source dependencies.
std::vector<FunctionalDependency> minimal_cover(std::span<const FunctionalDependency> fds);

// All minimal keys, ordered by size and then by attribute declaration order.
// Throws CapacityError when the table has more than `key_search_limit` attributes.
std::vector<AttributeSet> candidate_keys(const TableDef& table, std::size_t key_search_limit = kKeySearchLimit);

// Violations of one level's own condition, without requiring the lower levels to hold:
//   nf1  - non-atomic attributes
//   nf2  - non-prime attributes determined by a proper subset of a candidate key
//   nf3  - cover dependencies X -> A with X not a superkey and A non-prime
//   bcnf - cover dependencies whose left-hand side is not a superkey
//   nf4  - nontrivial declared multivalued dependencies whose left-hand side is not a superkey
// Asking for `unf` returns an empty list.
std::vector<NFViolation> level_violations(const TableDef& table, NormalForm level,
                                          std::size_t key_search_limit = kKeySearchLimit);

struct Classification {
  NormalForm level = NormalForm::unf;
  std::vector<NFViolation> violations;  // what blocks the next level; empty at nf4
};

Classification classify_normal_form(const TableDef& table, std::size_t key_search_limit = kKeySearchLimit);

struct DebtTable {
  std::string name;
  NormalForm level = NormalForm::unf;
  std::vector<NFViolation> violations;
};

struct TableFailure {
  std::string name;
  ErrorKind kind = ErrorKind::input;
  std::string message;
};

struct DebtScan {
  std::vector<DebtTable> debt_tables;  // input order
  std::vector<TableFailure> failures;

  bool partial() const { return !failures.empty(); }
};

// Tables classified below 4NF. A table that fails to classify is recorded in `failures`
// and the scan continues with the remaining tables.
DebtScan find_debt_tables(std::span<const TableDef> tables, std::size_t key_search_limit = kKeySearchLimit);

}  // namespace normdebt
