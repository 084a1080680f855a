#include "contlogic/stab/ladder.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <unordered_map>

#include "contlogic/errors.hpp"
#include "contlogic/util/parallel.hpp"

namespace contlogic {

namespace {

struct Bits {
  std::vector<std::uint64_t> w;

  Bits() = default;
  explicit Bits(std::size_t n, bool full = false) : w((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    if (full && n % 64) w.back() = (std::uint64_t{1} << (n % 64)) - 1;
  }
  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
    return r;
  }
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < w.size(); ++k) {
      for (std::uint64_t x = w[k]; x; x &= x - 1) fn(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
    }
  }
  friend bool operator==(const Bits&, const Bits&) = default;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : b.w) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

struct PairHash {
  std::size_t operator()(const std::pair<Bits, Bits>& p) const { return BitsHash{}(p.first) * 31 + BitsHash{}(p.second); }
};

struct MemoEntry {
  int value = 0;
  bool exact = false;
};

// Ladders whose conditions are pairwise between positions i < j: the future only
// depends on the set of pairs still compatible with everything chosen so far.
class PairwiseSearch {
 public:
  PairwiseSearch(const PhiMatrix& m, std::function<bool(int, int, int, int)> compat)
      : m_(m), compat_(std::move(compat)), n_(static_cast<std::size_t>(m.rows()) * m.cols()) {}

  std::size_t universe() const { return n_; }
  Bits all() const { return Bits(n_, true); }

  Bits next(std::size_t q) const {
    int a = static_cast<int>(q / m_.cols()), b = static_cast<int>(q % m_.cols());
    Bits r(n_);
    for (std::size_t p = 0; p < n_; ++p) {
      if (compat_(a, b, static_cast<int>(p / m_.cols()), static_cast<int>(p % m_.cols()))) r.set(p);
    }
    return r;
  }

  // Longest extension from candidate set c, capped at need.
  int ext(const Bits& c, int need) {
    if (need <= 0) return 0;
    auto it = memo_.find(c);
    if (it != memo_.end() && (it->second.exact || it->second.value >= need)) return std::min(it->second.value, need);
    int best = 0;
    bool capped = false;
    c.for_each([&](std::size_t q) {
      if (capped) return;
      Bits nc = c & cached_next(q);
      if (1 + nc.count() <= best) return;
      int v = 1 + ext(nc, need - 1);
      if (v > best) best = v;
      if (best >= need) capped = true;
    });
    memo_[c] = {best, !capped};
    return best;
  }

  // Lexicographically least sequence of the given length starting from c.
  void reconstruct(Bits c, int length, std::vector<std::size_t>& out) {
    while (length > 0) {
      bool moved = false;
      for (std::size_t q = 0; q < n_ && !moved; ++q) {
        if (!c.test(q)) continue;
        Bits nc = c & cached_next(q);
        if (1 + ext(nc, length - 1) >= length) {
          out.push_back(q);
          c = nc;
          --length;
          moved = true;
        }
      }
      if (!moved) throw std::logic_error("ladder reconstruction failed");
    }
  }

 private:
  const Bits& cached_next(std::size_t q) {
    auto it = next_.find(q);
    if (it != next_.end()) return it->second;
    return next_.emplace(q, next(q)).first->second;
  }

  const PhiMatrix& m_;
  std::function<bool(int, int, int, int)> compat_;
  std::size_t n_;
  std::unordered_map<Bits, MemoEntry, BitsHash> memo_;
  std::unordered_map<std::size_t, Bits> next_;
};

std::vector<std::pair<int, int>> search_pairwise(const PhiMatrix& m, std::function<bool(int, int, int, int)> compat,
                                                 int max_len) {
  PairwiseSearch root(m, compat);
  std::size_t n = root.universe();
  std::vector<int> best_from(n, 0);
  parallel_for(n, [&](std::size_t q) {
    PairwiseSearch local(m, compat);
    Bits nc = local.all() & local.next(q);
    best_from[q] = 1 + local.ext(nc, max_len - 1);
  });
  int best = 0;
  for (int v : best_from) best = std::max(best, v);
  std::vector<std::size_t> seq;
  if (best > 0) root.reconstruct(root.all(), best, seq);
  std::vector<std::pair<int, int>> out;
  for (std::size_t q : seq) out.emplace_back(static_cast<int>(q / m.cols()), static_cast<int>(q % m.cols()));
  return out;
}

// Triple ladders: after choosing (a_k, b_k) the admissible future columns shrink
// by the constraint of a_k against the columns used before it. The state is the
// admissible column set together with the set of columns used so far.
class TripleSearch {
 public:
  TripleSearch(const PhiMatrix& m, const UnitValue& eps) : m_(m), eps_(eps) {}

  Bits allowed_after(int a, const Bits& used) const {
    Bits r(m_.cols(), true);
    used.for_each([&](std::size_t bi) {
      for (int b = 0; b < m_.cols(); ++b) {
        if (r.test(b) && absdiff(m_.at(a, static_cast<int>(bi)), m_.at(a, b)) < eps_) r.reset(b);
      }
    });
    return r;
  }

  // Distinct successor states from (B, used), in the lexicographic order of their first option.
  std::vector<std::pair<std::pair<int, int>, std::pair<Bits, Bits>>> options(const Bits& B, const Bits& used) const {
    std::vector<std::pair<std::pair<int, int>, std::pair<Bits, Bits>>> out;
    std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> seen;
    for (int a = 0; a < m_.rows(); ++a) {
      Bits narrowed = B & allowed_after(a, used);
      for (int b = 0; b < m_.cols(); ++b) {
        if (!B.test(b)) continue;
        Bits nu = used;
        nu.set(b);
        if (!seen.insert({narrowed.w, nu.w}).second) continue;
        out.push_back({{a, b}, {narrowed, nu}});
      }
    }
    return out;
  }

  int ext(const Bits& B, const Bits& used, int need) {
    if (need <= 0) return 0;
    auto key = std::make_pair(B, used);
    auto it = memo_.find(key);
    if (it != memo_.end() && (it->second.exact || it->second.value >= need)) return std::min(it->second.value, need);
    int best = 0;
    bool capped = false;
    for (const auto& [choice, state] : options(B, used)) {
      if (1 + 2 * state.first.count() <= best) continue;
      int v = 1 + ext(state.first, state.second, need - 1);
      best = std::max(best, v);
      if (best >= need) {
        capped = true;
        break;
      }
    }
    memo_[key] = {best, !capped};
    return best;
  }

  void reconstruct(Bits B, Bits used, int length, std::vector<std::pair<int, int>>& out) {
    while (length > 0) {
      bool moved = false;
      for (int a = 0; a < m_.rows() && !moved; ++a) {
        Bits narrowed = B & allowed_after(a, used);
        for (int b = 0; b < m_.cols() && !moved; ++b) {
          if (!B.test(b)) continue;
          Bits nu = used;
          nu.set(b);
          if (1 + ext(narrowed, nu, length - 1) >= length) {
            out.emplace_back(a, b);
            B = narrowed;
            used = nu;
            --length;
            moved = true;
          }
        }
      }
      if (!moved) throw std::logic_error("ladder reconstruction failed");
    }
  }

 private:
  const PhiMatrix& m_;
  UnitValue eps_;
  std::unordered_map<std::pair<Bits, Bits>, MemoEntry, PairHash> memo_;
};

std::vector<std::pair<int, int>> search_triple(const PhiMatrix& m, const UnitValue& eps, int max_len) {
  // The first row never takes part in a condition, so every first choice (a, b)
  // leads to the state (all columns, {b}).
  std::vector<int> best_from(m.cols(), 0);
  parallel_for(m.cols(), [&](std::size_t b) {
    TripleSearch local(m, eps);
    Bits used(m.cols());
    used.set(b);
    best_from[b] = 1 + local.ext(Bits(m.cols(), true), used, max_len - 1);
  });
  int best = 0;
  for (int v : best_from) best = std::max(best, v);
  std::vector<std::pair<int, int>> out;
  TripleSearch root(m, eps);
  root.reconstruct(Bits(m.cols(), true), Bits(m.cols()), best, out);
  return out;
}

}  // namespace

std::string_view ladder_kind_name(LadderKind kind) {
  switch (kind) {
    case LadderKind::Antisymmetric: return "antisym";
    case LadderKind::Order: return "order";
    case LadderKind::Triple: return "triple";
  }
  return "";
}

std::optional<LadderKind> ladder_kind_from_name(std::string_view name) {
  for (LadderKind k : {LadderKind::Antisymmetric, LadderKind::Order, LadderKind::Triple}) {
    if (ladder_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

LadderWitness find_ladder(const PhiMatrix& m, const UnitValue& epsilon, LadderKind kind, int max_len) {
  if (epsilon == UnitValue::zero()) throw DomainError("ladder search needs epsilon > 0");
  if (max_len < 1) throw DomainError("ladder search needs max_len >= 1");
  LadderWitness w;
  w.kind = kind;
  w.epsilon = epsilon;
  w.max_len = max_len;
  if (m.rows() == 0 || m.cols() == 0) return w;
  switch (kind) {
    case LadderKind::Antisymmetric:
      w.pairs = search_pairwise(
          m, [&](int ai, int bi, int aj, int bj) { return absdiff(m.at(ai, bj), m.at(aj, bi)) >= epsilon; }, max_len);
      break;
    case LadderKind::Triple:
      w.pairs = search_triple(m, epsilon, max_len);
      break;
    case LadderKind::Order: {
      std::set<UnitValue> value_set;
      for (const auto& row : m.values) value_set.insert(row.begin(), row.end());
      std::vector<UnitValue> vals(value_set.begin(), value_set.end());
      for (const UnitValue& r : vals) {
        for (const UnitValue& s : vals) {
          if (s.value() - r.value() < epsilon.value()) continue;
          auto seq = search_pairwise(
              m, [&](int ai, int bi, int aj, int bj) { return m.at(ai, bj) <= r && m.at(aj, bi) >= s; }, max_len);
          if (!w.r || seq.size() > w.pairs.size()) {
            w.pairs = std::move(seq);
            w.r = r;
            w.s = s;
          }
          if (w.length() >= max_len) return w;
        }
      }
      if (!w.r) {
        // No thresholds eps apart: a single pair is still a (vacuous) ladder.
        w.pairs = {{0, 0}};
      }
      break;
    }
  }
  return w;
}

bool recheck_ladder(const PhiMatrix& m, const LadderWitness& w) {
  const auto& p = w.pairs;
  for (const auto& [a, b] : p) {
    if (a < 0 || a >= m.rows() || b < 0 || b >= m.cols()) return false;
  }
  std::size_t n = p.size();
  switch (w.kind) {
    case LadderKind::Antisymmetric:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (absdiff(m.at(p[i].first, p[j].second), m.at(p[j].first, p[i].second)) < w.epsilon) return false;
        }
      }
      return true;
    case LadderKind::Order:
      if (n <= 1) return true;
      if (!w.r || !w.s || w.s->value() - w.r->value() < w.epsilon.value()) return false;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (m.at(p[i].first, p[j].second) > *w.r || m.at(p[j].first, p[i].second) < *w.s) return false;
        }
      }
      return true;
    case LadderKind::Triple:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          for (std::size_t k = j + 1; k < n; ++k) {
            if (absdiff(m.at(p[j].first, p[i].second), m.at(p[j].first, p[k].second)) < w.epsilon) return false;
          }
        }
      }
      return true;
  }
  return false;
}

NValue compute_N(const PhiMatrix& m, const UnitValue& epsilon, int max_len) {
  if (m.rows() == 0 || m.cols() == 0) throw DomainError("N(phi, eps) needs a nonempty structure");
  if (max_len < 2) throw DomainError("N(phi, eps) search needs max_len >= 2");
  NValue out;
  out.witness = find_ladder(m, epsilon, LadderKind::Triple, max_len);
  out.N = out.witness.length();
  out.at_bound = out.witness.at_bound();
  return out;
}

}  // namespace contlogic
