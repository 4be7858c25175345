#include "normdebt/schema.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include <fmt/format.h>

namespace normdebt {

namespace {

using Mask = std::uint64_t;

// Bitmask search is bounded by the mask width regardless of the configured limit.
constexpr std::size_t kMaskAttributeLimit = 62;

struct MaskedDependency {
  Mask lhs = 0;
  Mask rhs = 0;
  std::size_t source = 0;  // index of the declared dependency this came from

  bool operator==(const MaskedDependency& other) const { return lhs == other.lhs && rhs == other.rhs; }
};

Mask bit(std::size_t index) { return Mask{1} << index; }

bool contains(Mask outer, Mask inner) { return (outer & inner) == inner; }

Mask closure_of(Mask attributes, std::span<const MaskedDependency> fds) {
  auto result = attributes;
  auto changed = true;
  while (changed) {
    changed = false;
    for (const auto& fd : fds) {
      if (contains(result, fd.lhs) && !contains(result, fd.rhs)) {
        result |= fd.rhs;
        changed = true;
      }
    }
  }
  return result;
}

// Closure that ignores the dependency at position `skip`.
Mask closure_without(Mask attributes, std::span<const MaskedDependency> fds, std::size_t skip) {
  auto result = attributes;
  auto changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < fds.size(); ++i) {
      if (i == skip) continue;
      if (contains(result, fds[i].lhs) && !contains(result, fds[i].rhs)) {
        result |= fds[i].rhs;
        changed = true;
      }
    }
  }
  return result;
}

std::vector<MaskedDependency> cover_of(std::span<const MaskedDependency> fds) {
  std::vector<MaskedDependency> cover;
  for (const auto& fd : fds) {
    auto rhs = fd.rhs & ~fd.lhs;
    while (rhs != 0) {
      const auto lowest = rhs & (~rhs + 1);
      cover.push_back({fd.lhs, lowest, fd.source});
      rhs &= rhs - 1;
    }
  }

  for (auto& fd : cover) {
    for (std::size_t index = 0; index < 64; ++index) {
      if ((fd.lhs & bit(index)) == 0 || std::popcount(fd.lhs) == 1) continue;
      const auto reduced = fd.lhs & ~bit(index);
      if (contains(closure_of(reduced, cover), fd.rhs)) fd.lhs = reduced;
    }
  }

  std::vector<MaskedDependency> unique;
  for (const auto& fd : cover) {
    if (std::find(unique.begin(), unique.end(), fd) == unique.end()) unique.push_back(fd);
  }

  for (std::size_t i = 0; i < unique.size();) {
    if (contains(closure_without(unique[i].lhs, unique, i), unique[i].rhs)) {
      unique.erase(unique.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return unique;
}

class AttributeIndex {
 public:
  explicit AttributeIndex(std::vector<std::string> names) : _names(std::move(names)) {
    for (std::size_t i = 0; i < _names.size(); ++i) _positions.emplace(_names[i], i);
  }

  std::size_t size() const { return _names.size(); }
  Mask all() const { return _names.size() >= 64 ? ~Mask{0} : bit(_names.size()) - 1; }

  Mask mask(const AttributeSet& attributes) const {
    Mask result = 0;
    for (const auto& name : attributes) result |= bit(_positions.at(name));
    return result;
  }

  AttributeSet names(Mask mask) const {
    AttributeSet result;
    for (std::size_t i = 0; i < _names.size(); ++i) {
      if (mask & bit(i)) result.insert(_names[i]);
    }
    return result;
  }

 private:
  std::vector<std::string> _names;
  std::map<std::string, std::size_t, std::less<>> _positions;
};

// Orders masks by size, then lexicographically by the attribute indices they hold.
bool key_order(Mask a, Mask b) {
  const auto size_a = std::popcount(a);
  const auto size_b = std::popcount(b);
  if (size_a != size_b) return size_a < size_b;
  while (a != 0 && b != 0) {
    const auto low_a = std::countr_zero(a);
    const auto low_b = std::countr_zero(b);
    if (low_a != low_b) return low_a < low_b;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

// Calls `visit` on every subset of `universe` with exactly `size` members.
template <typename Visit>
void for_each_subset_of_size(Mask universe, int size, Visit&& visit) {
  const auto width = std::popcount(universe);
  if (size > width) return;
  std::vector<Mask> bits;
  for (auto rest = universe; rest != 0; rest &= rest - 1) bits.push_back(rest & (~rest + 1));
  if (size == 0) {
    visit(Mask{0});
    return;
  }
  // Gosper's hack over the compressed index space.
  std::uint64_t combo = (std::uint64_t{1} << size) - 1;
  const std::uint64_t limit = std::uint64_t{1} << width;
  while (combo < limit) {
    Mask expanded = 0;
    for (auto rest = combo; rest != 0; rest &= rest - 1) expanded |= bits[std::countr_zero(rest)];
    if (!visit(expanded)) return;
    const auto lowest = combo & (~combo + 1);
    const auto ripple = combo + lowest;
    combo = (((ripple ^ combo) >> 2) / lowest) | ripple;
  }
}

class TableAnalysis {
 public:
  TableAnalysis(const TableDef& table, std::size_t key_search_limit)
      : _table(table), _index(declared_names(table)), _limit(std::min(key_search_limit, kMaskAttributeLimit)) {}

  std::vector<NFViolation> violations(NormalForm level) {
    switch (level) {
      case NormalForm::unf:
        return {};
      case NormalForm::nf1:
        return atomicity_violations();
      case NormalForm::nf2:
        return partial_dependency_violations();
      case NormalForm::nf3:
        return cover_violations(NormalForm::nf3);
      case NormalForm::bcnf:
        return cover_violations(NormalForm::bcnf);
      case NormalForm::nf4:
        return multivalued_violations();
    }
    return {};
  }

  const std::vector<Mask>& keys() {
    if (!_keys) _keys = search_keys();
    return *_keys;
  }

  const AttributeIndex& index() const { return _index; }

 private:
  static std::vector<std::string> declared_names(const TableDef& table) {
    std::vector<std::string> names;
    names.reserve(table.attributes.size());
    for (const auto& attribute : table.attributes) names.push_back(attribute.name);
    return names;
  }

  void ensure_searchable() const {
    if (_index.size() > _limit) {
      throw CapacityError(fmt::format(
          "table '{}' has {} attributes; candidate-key search is limited to {} attributes. "
          "Split the table or declare its keys manually and classify it outside the tool",
          _table.name, _index.size(), _limit));
    }
  }

  const std::vector<MaskedDependency>& declared_fds() {
    if (!_fds) {
      _fds.emplace();
      for (std::size_t i = 0; i < _table.fds.size(); ++i) {
        _fds->push_back({_index.mask(_table.fds[i].lhs), _index.mask(_table.fds[i].rhs), i});
      }
    }
    return *_fds;
  }

  const std::vector<MaskedDependency>& cover() {
    if (!_cover) _cover = cover_of(declared_fds());
    return *_cover;
  }

  Mask prime() {
    Mask result = 0;
    for (const auto key : keys()) result |= key;
    return result;
  }

  bool is_superkey(Mask attributes) { return closure_of(attributes, declared_fds()) == _index.all(); }

  std::vector<Mask> search_keys() {
    ensure_searchable();
    const auto& fds = declared_fds();
    const auto all = _index.all();

    Mask on_right = 0;
    Mask on_left = 0;
    for (const auto& fd : fds) {
      on_left |= fd.lhs;
      on_right |= fd.rhs & ~fd.lhs;
    }
    const Mask core = all & ~on_right;
    const Mask middle = all & on_right & on_left;

    std::vector<Mask> found;
    if (closure_of(core, fds) == all) return {core};

    const auto width = std::popcount(middle);
    for (int size = 1; size <= width; ++size) {
      for_each_subset_of_size(middle, size, [&](Mask subset) {
        const auto candidate = core | subset;
        for (const auto key : found) {
          if (contains(candidate, key)) return true;
        }
        if (closure_of(candidate, fds) == all) found.push_back(candidate);
        return true;
      });
    }
    std::sort(found.begin(), found.end(), key_order);
    return found;
  }

  FunctionalDependency to_fd(Mask lhs, Mask rhs) const { return {_index.names(lhs), _index.names(rhs)}; }

  std::string list(Mask mask) const { return normdebt::to_string(_index.names(mask)); }

  std::vector<NFViolation> atomicity_violations() const {
    std::vector<NFViolation> result;
    for (const auto& attribute : _table.attributes) {
      if (attribute.atomic) continue;
      result.push_back({NormalForm::nf1, attribute.name,
                        fmt::format("attribute '{}' holds non-atomic values", attribute.name)});
    }
    return result;
  }

  std::vector<NFViolation> partial_dependency_violations() {
    const auto& fds = declared_fds();
    const auto non_prime = _index.all() & ~prime();
    std::vector<NFViolation> result;
    Mask reported = 0;
    for (const auto key : keys()) {
      const auto key_size = std::popcount(key);
      for (int size = 1; size < key_size; ++size) {
        for_each_subset_of_size(key, size, [&](Mask part) {
          const auto dependent = closure_of(part, fds) & ~part & non_prime & ~reported;
          if (dependent != 0) {
            reported |= dependent;
            result.push_back({NormalForm::nf2, to_fd(part, dependent),
                              fmt::format("partial dependency: non-prime {} depends on {}, a proper subset of key {}",
                                          list(dependent), list(part), list(key))});
          }
          return true;
        });
      }
    }
    return result;
  }

  std::vector<NFViolation> cover_violations(NormalForm level) {
    const auto prime_attributes = level == NormalForm::nf3 ? prime() : Mask{0};
    std::vector<NFViolation> result;
    std::vector<MaskedDependency> offending;
    for (const auto& fd : cover()) {
      if (is_superkey(fd.lhs)) continue;
      if (level == NormalForm::nf3 && contains(prime_attributes, fd.rhs)) continue;
      // Merge cover entries that split one declared dependency.
      if (!offending.empty() && offending.back().source == fd.source && offending.back().lhs == fd.lhs) {
        offending.back().rhs |= fd.rhs;
      } else {
        offending.push_back(fd);
      }
    }
    for (const auto& fd : offending) {
      auto explanation =
          level == NormalForm::nf3
              ? fmt::format("transitive dependency: {} is not a superkey and {} is non-prime", list(fd.lhs),
                            list(fd.rhs))
              : fmt::format("determinant {} of {} is not a superkey", list(fd.lhs), list(fd.rhs));
      result.push_back({level, to_fd(fd.lhs, fd.rhs), std::move(explanation)});
    }
    return result;
  }

  std::vector<NFViolation> multivalued_violations() {
    const auto all = _index.all();
    std::vector<NFViolation> result;
    for (const auto& mvd : _table.mvds) {
      const auto lhs = _index.mask(mvd.lhs);
      const auto rhs = _index.mask(mvd.rhs);
      if (contains(lhs, rhs) || (lhs | rhs) == all) continue;
      if (is_superkey(lhs)) continue;
      result.push_back({NormalForm::nf4, mvd,
                        fmt::format("multivalued dependency {} ->> {} has a determinant that is not a superkey",
                                    list(lhs), list(rhs))});
    }
    return result;
  }

  const TableDef& _table;
  AttributeIndex _index;
  std::size_t _limit;
  std::optional<std::vector<MaskedDependency>> _fds;
  std::optional<std::vector<MaskedDependency>> _cover;
  std::optional<std::vector<Mask>> _keys;
};

void check_known(const TableDef& table, const AttributeSet& attributes, std::string_view context) {
  for (const auto& name : attributes) {
    if (!table.has_attribute(name)) {
      throw InputError(fmt::format("table '{}': {} references unknown attribute '{}'", table.name, context, name));
    }
  }
}

}  // namespace

bool MultivaluedDependency::is_trivial(const AttributeSet& all_attributes) const {
  if (std::includes(lhs.begin(), lhs.end(), rhs.begin(), rhs.end())) return true;
  AttributeSet both = lhs;
  both.insert(rhs.begin(), rhs.end());
  return std::includes(both.begin(), both.end(), all_attributes.begin(), all_attributes.end());
}

AttributeSet TableDef::attribute_names() const {
  AttributeSet names;
  for (const auto& attribute : attributes) names.insert(attribute.name);
  return names;
}

bool TableDef::has_attribute(std::string_view attribute) const {
  return std::any_of(attributes.begin(), attributes.end(),
                     [&](const Attribute& candidate) { return candidate.name == attribute; });
}

void validate_table(const TableDef& table) {
  if (table.name.empty()) throw InputError("table name must not be empty");
  if (table.attributes.empty()) throw InputError(fmt::format("table '{}' declares no attributes", table.name));
  AttributeSet seen;
  for (const auto& attribute : table.attributes) {
    if (attribute.name.empty()) throw InputError(fmt::format("table '{}' has an unnamed attribute", table.name));
    if (!seen.insert(attribute.name).second) {
      throw InputError(fmt::format("table '{}' declares attribute '{}' twice", table.name, attribute.name));
    }
  }
  for (std::size_t i = 0; i < table.fds.size(); ++i) {
    const auto& fd = table.fds[i];
    const auto context = fmt::format("functional dependency #{}", i + 1);
    if (fd.lhs.empty() || fd.rhs.empty()) {
      throw InputError(fmt::format("table '{}': {} needs non-empty lhs and rhs", table.name, context));
    }
    check_known(table, fd.lhs, context);
    check_known(table, fd.rhs, context);
  }
  for (std::size_t i = 0; i < table.mvds.size(); ++i) {
    const auto& mvd = table.mvds[i];
    const auto context = fmt::format("multivalued dependency #{}", i + 1);
    if (mvd.lhs.empty()) throw InputError(fmt::format("table '{}': {} needs a non-empty lhs", table.name, context));
    check_known(table, mvd.lhs, context);
    check_known(table, mvd.rhs, context);
  }
}

std::string_view to_string(NormalForm level) {
  switch (level) {
    case NormalForm::unf:
      return "UNF";
    case NormalForm::nf1:
      return "1NF";
    case NormalForm::nf2:
      return "2NF";
    case NormalForm::nf3:
      return "3NF";
    case NormalForm::bcnf:
      return "BCNF";
    case NormalForm::nf4:
      return "4NF";
  }
  return "?";
}

std::optional<NormalForm> parse_normal_form(std::string_view text) {
  for (const auto level : {NormalForm::unf, NormalForm::nf1, NormalForm::nf2, NormalForm::nf3, NormalForm::bcnf,
                           NormalForm::nf4}) {
    if (to_string(level) == text) return level;
  }
  return std::nullopt;
}

std::string to_string(const AttributeSet& attributes) {
  if (attributes.size() == 1) return *attributes.begin();
  return fmt::format("{{{}}}", fmt::join(attributes, ", "));
}

std::string to_string(const FunctionalDependency& fd) {
  return fmt::format("{} -> {}", to_string(fd.lhs), to_string(fd.rhs));
}

std::string to_string(const MultivaluedDependency& mvd) {
  return fmt::format("{} ->> {}", to_string(mvd.lhs), to_string(mvd.rhs));
}

std::string NFViolation::witness_text() const {
  return std::visit(
      [](const auto& value) -> std::string {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, std::string>) {
          return value;
        } else {
          return to_string(value);
        }
      },
      witness);
}

AttributeSet attribute_closure(const AttributeSet& attributes, std::span<const FunctionalDependency> fds) {
  auto result = attributes;
  auto changed = true;
  while (changed) {
    changed = false;
    for (const auto& fd : fds) {
      if (!std::includes(result.begin(), result.end(), fd.lhs.begin(), fd.lhs.end())) continue;
      for (const auto& name : fd.rhs) changed |= result.insert(name).second;
    }
  }
  return result;
}

AttributeSet attribute_closure(const TableDef& table, const AttributeSet& attributes) {
  check_known(table, attributes, "closure request");
  validate_table(table);
  return attribute_closure(attributes, table.fds);
}

std::vector<FunctionalDependency> minimal_cover(std::span<const FunctionalDependency> fds) {
  std::vector<std::string> names;
  AttributeSet seen;
  for (const auto& fd : fds) {
    for (const auto* side : {&fd.lhs, &fd.rhs}) {
      for (const auto& name : *side) {
        if (seen.insert(name).second) names.push_back(name);
      }
    }
  }
  if (names.size() > 64) throw CapacityError("minimal cover supports at most 64 distinct attributes");
  const AttributeIndex index(std::move(names));

  std::vector<MaskedDependency> masked;
  for (std::size_t i = 0; i < fds.size(); ++i) masked.push_back({index.mask(fds[i].lhs), index.mask(fds[i].rhs), i});

  std::vector<FunctionalDependency> result;
  for (const auto& fd : cover_of(masked)) result.push_back({index.names(fd.lhs), index.names(fd.rhs)});
  return result;
}

std::vector<AttributeSet> candidate_keys(const TableDef& table, std::size_t key_search_limit) {
  validate_table(table);
  TableAnalysis analysis(table, key_search_limit);
  std::vector<AttributeSet> keys;
  for (const auto key : analysis.keys()) keys.push_back(analysis.index().names(key));
  return keys;
}

std::vector<NFViolation> level_violations(const TableDef& table, NormalForm level, std::size_t key_search_limit) {
  validate_table(table);
  TableAnalysis analysis(table, key_search_limit);
  return analysis.violations(level);
}

Classification classify_normal_form(const TableDef& table, std::size_t key_search_limit) {
  validate_table(table);
  TableAnalysis analysis(table, key_search_limit);
  if (auto violations = analysis.violations(NormalForm::nf1); !violations.empty()) {
    return {NormalForm::unf, std::move(violations)};
  }
  auto reached = NormalForm::nf1;
  for (const auto level : {NormalForm::nf2, NormalForm::nf3, NormalForm::bcnf, NormalForm::nf4}) {
    if (auto violations = analysis.violations(level); !violations.empty()) return {reached, std::move(violations)};
    reached = level;
  }
  return {NormalForm::nf4, {}};
}

DebtScan find_debt_tables(std::span<const TableDef> tables, std::size_t key_search_limit) {
  DebtScan scan;
  for (const auto& table : tables) {
    try {
      auto classification = classify_normal_form(table, key_search_limit);
      if (classification.level < NormalForm::nf4) {
        scan.debt_tables.push_back({table.name, classification.level, std::move(classification.violations)});
      }
    } catch (const Error& error) {
      scan.failures.push_back({table.name, error.kind(), error.what()});
    }
  }
  return scan;
}

}  // namespace normdebt
