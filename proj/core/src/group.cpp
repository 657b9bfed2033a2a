#include "multfree/group.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "multfree/errors.hpp"

namespace multfree {

FiniteGroup::FiniteGroup(std::vector<std::string> names,
                         std::vector<std::vector<std::size_t>> table)
    : names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = names_.size();
  if (n == 0) throw PreconditionError("group must have at least one element");
  if (table_.size() != n) throw PreconditionError("multiplication table has wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw PreconditionError("multiplication table is not square");
    for (std::size_t x : row)
      if (x >= n) throw PreconditionError("multiplication table entry out of range");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n)
    throw PreconditionError("element names are not distinct");

  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw PreconditionError("multiplication table has no identity element");

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw PreconditionError("multiplication table is not associative");

  inverses_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) inverses_[a] = b;
  for (std::size_t a = 0; a < n; ++a)
    if (inverses_[a] == n) throw PreconditionError("element '" + names_[a] + "' has no inverse");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({"e"}, {{0}}); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic group of order 0");
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(k == 0 ? "e" : k == 1 ? "g" : "g^" + std::to_string(k));
    for (std::size_t l = 0; l < n; ++l) table[k][l] = (k + l) % n;
  }
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(std::move(names), std::move(table));
}

FiniteGroup FiniteGroup::signs(std::size_t k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    std::string s = "(";
    for (std::size_t i = 0; i < k; ++i) s += std::string(i ? "," : "") + ((x >> i) & 1 ? "-1" : "1");
    names.push_back(s + ")");
    for (std::size_t y = 0; y < n; ++y) table[x][y] = x ^ y;
  }
  return FiniteGroup(std::move(names), std::move(table));
}

std::optional<FiniteGroup> FiniteGroup::by_name(const std::string& name) {
  if (name == "trivial") return trivial();
  static const std::regex sign_group("signs([1-4])");
  if (std::smatch m; std::regex_match(name, m, sign_group)) return signs(std::stoul(m[1].str()));
  static const std::regex factor("Z([1-9][0-9]*)");
  std::optional<FiniteGroup> g;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t end = name.find('x', start);
    if (end == std::string::npos) end = name.size();
    std::smatch m;
    const std::string part = name.substr(start, end - start);
    if (!std::regex_match(part, m, factor)) return std::nullopt;
    const std::size_t n = std::stoul(m[1].str());
    if (n > 1024) return std::nullopt;
    FiniteGroup c = cyclic(n);
    g = g ? product(*g, c) : c;
    start = end + 1;
  }
  return g;
}

std::optional<std::size_t> FiniteGroup::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::optional<std::vector<std::size_t>> FiniteGroup::as_subgroup(
    std::vector<std::size_t> elements) const {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) return std::nullopt;
  for (std::size_t x : elements)
    if (x >= order()) return std::nullopt;
  const std::set<std::size_t> members(elements.begin(), elements.end());
  for (std::size_t a : elements)
    for (std::size_t b : elements)
      if (!members.count(mul(a, b))) return std::nullopt;
  // Finite and closed under multiplication, hence a subgroup.
  return elements;
}

GroupEmbedding::GroupEmbedding(FiniteGroup source, const FiniteGroup& target,
                               std::vector<std::size_t> image)
    : source_(std::move(source)), image_(std::move(image)), target_order_(target.order()) {
  if (image_.size() != source_.order()) throw PreconditionError("embedding image has wrong size");
  for (std::size_t x : image_)
    if (x >= target.order()) throw PreconditionError("embedding image out of range");
  for (std::size_t a = 0; a < source_.order(); ++a)
    for (std::size_t b = 0; b < source_.order(); ++b)
      if (image_[source_.mul(a, b)] != target.mul(image_[a], image_[b]))
        throw PreconditionError("embedding is not a group homomorphism");
}

GroupEmbedding GroupEmbedding::subgroup(const FiniteGroup& target, std::vector<std::size_t> elements) {
  auto sub = target.as_subgroup(std::move(elements));
  if (!sub) throw PreconditionError("element set is not a subgroup");
  const std::vector<std::size_t>& idx = *sub;
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(idx.size(), std::vector<std::size_t>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    names.push_back(target.name(idx[i]));
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t p = target.mul(idx[i], idx[j]);
      table[i][j] = static_cast<std::size_t>(std::lower_bound(idx.begin(), idx.end(), p) - idx.begin());
    }
  }
  return GroupEmbedding(FiniteGroup(std::move(names), std::move(table)), target, idx);
}

GroupEmbedding GroupEmbedding::identity(const FiniteGroup& g) {
  std::vector<std::size_t> image(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) image[i] = i;
  return GroupEmbedding(g, g, std::move(image));
}

bool GroupEmbedding::is_injective() const {
  return std::set<std::size_t>(image_.begin(), image_.end()).size() == image_.size();
}

bool GroupEmbedding::is_bijective() const { return is_injective() && image_.size() == target_order_; }

}  // namespace multfree
