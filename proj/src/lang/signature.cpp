#include "contlogic/lang/signature.hpp"

#include <cctype>

#include "contlogic/errors.hpp"

namespace contlogic {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  if (name.size() > 3 && name.compare(0, 3, "med") == 0 &&
      name.find_first_not_of("0123456789", 3) == std::string::npos) {
    return false;
  }
  static const char* const kReserved[] = {"sup", "inf", "not", "half", "min", "max", "med"};
  for (const char* r : kReserved) {
    if (name == r) return false;
  }
  return true;
}

}  // namespace

void Signature::claim_name(const std::string& name) {
  if (!valid_identifier(name)) throw StructuralError("invalid symbol name '" + name + "'");
  if (function_index_.count(name) || predicate_index_.count(name) || metric_index_.count(name) ||
      (name == "d" && !sorts_.empty())) {
    throw StructuralError("symbol '" + name + "' declared twice");
  }
}

int Signature::add_sort(const std::string& name, const std::string& metric_name) {
  if (!valid_identifier(name)) throw StructuralError("invalid sort name '" + name + "'");
  if (sort_index_.count(name)) throw StructuralError("sort '" + name + "' declared twice");
  std::string metric = metric_name;
  if (metric.empty()) metric = sorts_.empty() ? "d" : "d_" + name;
  if (metric != "d" || !sorts_.empty()) claim_name(metric);
  int id = static_cast<int>(sorts_.size());
  sorts_.push_back(name);
  metric_names_.push_back(metric);
  sort_index_[name] = id;
  metric_index_[metric] = id;
  return id;
}

static void check_moduli(const std::string& name, std::size_t arity, std::vector<PLMonotone>& moduli) {
  if (moduli.empty()) moduli.assign(arity, PLMonotone::identity());
  if (moduli.size() != arity) throw StructuralError("symbol '" + name + "' needs one modulus per argument");
  for (const PLMonotone& u : moduli) {
    if (!u.is_inverse_modulus()) throw StructuralError("modulus of '" + name + "' does not vanish at 0");
  }
}

int Signature::add_function(const std::string& name, std::vector<int> arg_sorts, int target_sort,
                            std::vector<PLMonotone> moduli) {
  claim_name(name);
  for (int s : arg_sorts) {
    if (s < 0 || s >= sort_count()) throw StructuralError("function '" + name + "' uses an unknown sort");
  }
  if (target_sort < 0 || target_sort >= sort_count()) throw StructuralError("function '" + name + "' has an unknown target sort");
  check_moduli(name, arg_sorts.size(), moduli);
  int id = static_cast<int>(functions_.size());
  functions_.push_back({name, std::move(arg_sorts), target_sort, std::move(moduli)});
  function_index_[name] = id;
  return id;
}

int Signature::add_predicate(const std::string& name, std::vector<int> arg_sorts, std::vector<PLMonotone> moduli) {
  claim_name(name);
  for (int s : arg_sorts) {
    if (s < 0 || s >= sort_count()) throw StructuralError("predicate '" + name + "' uses an unknown sort");
  }
  check_moduli(name, arg_sorts.size(), moduli);
  int id = static_cast<int>(predicates_.size());
  predicates_.push_back({name, std::move(arg_sorts), std::move(moduli)});
  predicate_index_[name] = id;
  return id;
}

std::optional<int> Signature::find_sort(const std::string& name) const {
  auto it = sort_index_.find(name);
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::find_metric(const std::string& name) const {
  auto it = metric_index_.find(name);
  if (it == metric_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::find_function(const std::string& name) const {
  auto it = function_index_.find(name);
  if (it == function_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::find_predicate(const std::string& name) const {
  auto it = predicate_index_.find(name);
  if (it == predicate_index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const Signature& a, const Signature& b) {
  if (a.sorts_ != b.sorts_ || a.metric_names_ != b.metric_names_) return false;
  if (a.functions_.size() != b.functions_.size() || a.predicates_.size() != b.predicates_.size()) return false;
  for (std::size_t i = 0; i < a.functions_.size(); ++i) {
    const auto& f = a.functions_[i];
    const auto& g = b.functions_[i];
    if (f.name != g.name || f.arg_sorts != g.arg_sorts || f.target_sort != g.target_sort || f.moduli != g.moduli) return false;
  }
  for (std::size_t i = 0; i < a.predicates_.size(); ++i) {
    const auto& p = a.predicates_[i];
    const auto& q = b.predicates_[i];
    if (p.name != q.name || p.arg_sorts != q.arg_sorts || p.moduli != q.moduli) return false;
  }
  return true;
}

}  // namespace contlogic
