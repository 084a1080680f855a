#include "contlogic/model/structure.hpp"

#include "contlogic/errors.hpp"

namespace contlogic {

FiniteStructure::FiniteStructure(Signature sig, std::vector<std::vector<std::string>> carriers)
    : sig_(std::move(sig)), carriers_(std::move(carriers)) {
  if (static_cast<int>(carriers_.size()) != sig_.sort_count()) {
    throw StructuralError("structure needs one carrier per sort");
  }
  for (int s = 0; s < sig_.sort_count(); ++s) {
    std::unordered_map<std::string, int> idx;
    for (std::size_t i = 0; i < carriers_[s].size(); ++i) {
      if (!idx.emplace(carriers_[s][i], static_cast<int>(i)).second) {
        throw StructuralError("element '" + carriers_[s][i] + "' listed twice in sort " + sig_.sort_name(s));
      }
    }
    index_.push_back(std::move(idx));
    std::size_t n = carriers_[s].size();
    std::vector<UnitValue> m(n * n, UnitValue::one());
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = UnitValue::zero();
    metric_.push_back(std::move(m));
  }
  for (const FunctionSymbol& f : sig_.functions()) functions_.emplace_back(tuple_count(f.arg_sorts), -1);
  for (const PredicateSymbol& p : sig_.predicates()) predicates_.emplace_back(tuple_count(p.arg_sorts), UnitValue::zero());
}

std::optional<int> FiniteStructure::find_element(int sort, const std::string& name) const {
  auto it = index_.at(sort).find(name);
  if (it == index_[sort].end()) return std::nullopt;
  return it->second;
}

void FiniteStructure::set_dist(int sort, int a, int b, const UnitValue& value) {
  int n = carrier_size(sort);
  metric_[sort].at(a * n + b) = value;
  metric_[sort].at(b * n + a) = value;
}

std::size_t FiniteStructure::tuple_index(const std::vector<int>& arg_sorts, std::span<const int> args) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < arg_sorts.size(); ++i) idx = idx * carriers_[arg_sorts[i]].size() + args[i];
  return idx;
}

std::size_t FiniteStructure::tuple_count(const std::vector<int>& arg_sorts) const {
  std::size_t n = 1;
  for (int s : arg_sorts) {
    n *= carriers_.at(s).size();
    if (n > (std::size_t{1} << 26)) throw DomainError("symbol table too large");
  }
  return n;
}

std::vector<int> FiniteStructure::tuple_at(const std::vector<int>& arg_sorts, std::size_t index) const {
  std::vector<int> out(arg_sorts.size());
  for (std::size_t i = arg_sorts.size(); i-- > 0;) {
    std::size_t n = carriers_[arg_sorts[i]].size();
    out[i] = static_cast<int>(index % n);
    index /= n;
  }
  return out;
}

void FiniteStructure::set_function(int function, std::span<const int> args, int value) {
  const FunctionSymbol& f = sig_.function(function);
  if (value < 0 || value >= carrier_size(f.target_sort)) throw StructuralError("function value out of range for " + f.name);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0 || args[i] >= carrier_size(f.arg_sorts[i])) throw StructuralError("argument out of range for " + f.name);
  }
  functions_[function][tuple_index(f.arg_sorts, args)] = value;
}

void FiniteStructure::set_pred(int predicate, std::span<const int> args, const UnitValue& value) {
  const PredicateSymbol& p = sig_.predicate(predicate);
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] < 0 || args[i] >= carrier_size(p.arg_sorts[i])) throw StructuralError("argument out of range for " + p.name);
  }
  predicates_[predicate][tuple_index(p.arg_sorts, args)] = value;
}

bool FiniteStructure::is_total() const {
  for (const auto& table : functions_) {
    for (int v : table) {
      if (v < 0) return false;
    }
  }
  return true;
}

bool FiniteStructure::is_metric() const {
  for (int s = 0; s < sig_.sort_count(); ++s) {
    int n = carrier_size(s);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && dist(s, a, b) == UnitValue::zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace contlogic
