#include "vanet/connectivity.hpp"

#include <bit>
#include <deque>
#include <stdexcept>

#include "vanet/disjoint_set.hpp"

namespace vanet {
namespace {

// C = A * B over (OR, AND). Row i of C is the union of rows l of B with A(i, l).
Adjacency bool_multiply(const Adjacency& a, const Adjacency& b) {
  const std::size_t n = a.size();
  Adjacency c(n, Direction::full);
  const std::size_t words = a.words_per_row();
  for (std::size_t i = 0; i < n; ++i) {
    auto out = c.row_words(i);
    auto lhs = a.row_words(i);
    for (std::size_t w = 0; w < words; ++w) {
      Adjacency::Word bits = lhs[w];
      while (bits) {
        const std::size_t l = w * Adjacency::kWordBits + std::countr_zero(bits);
        bits &= bits - 1;
        auto rhs = b.row_words(l);
        for (std::size_t v = 0; v < words; ++v) out[v] |= rhs[v];
      }
    }
  }
  return c;
}

Adjacency power(Adjacency base, std::size_t k) {
  if (k == 0) throw std::invalid_argument("bool_power_reach: k must be positive");
  Adjacency result;
  bool have_result = false;
  while (true) {
    if (k & 1U) {
      result = have_result ? bool_multiply(result, base) : base;
      have_result = true;
    }
    k >>= 1U;
    if (k == 0) break;
    base = bool_multiply(base, base);
  }
  return result;
}

// Builds a copy whose diagonal may be set; Adjacency::set does not police it.
Adjacency with_self_loops(const Adjacency& a) {
  Adjacency out(a.size(), Direction::full);
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto dst = out.row_words(i);
    auto src = a.row_words(i);
    for (std::size_t w = 0; w < dst.size(); ++w) dst[w] = src[w];
    out.set(i, i);
  }
  return out;
}

}  // namespace

Adjacency bool_power_reach(const Adjacency& a, std::size_t k) { return power(a, k); }

Adjacency bool_power_reach_relaxed(const Adjacency& a, std::size_t k) {
  return power(with_self_loops(a), k);
}

bool is_connected_exponent(const Adjacency& a, bool relaxed) {
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("is_connected_exponent: need at least two vehicles");
  const Adjacency p = relaxed ? bool_power_reach_relaxed(a, n - 1) : bool_power_reach(a, n - 1);
  return p.test(0, n - 1);
}

ComponentCount oracle_components(const Adjacency& a) {
  const std::size_t n = a.size();
  DisjointSet sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.test(i, j) || a.test(j, i)) sets.unite(i, j);
    }
  }
  return {sets.set_count()};
}

bool oracle_reachable(const Adjacency& a, std::size_t src, std::size_t dst) {
  const std::size_t n = a.size();
  if (src >= n || dst >= n) throw std::out_of_range("oracle_reachable: index out of range");
  if (src == dst) return true;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> frontier{src};
  seen[src] = true;
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      if (!a.test(u, v) || seen[v]) continue;
      if (v == dst) return true;
      seen[v] = true;
      frontier.push_back(v);
    }
  }
  return false;
}

bool consecutive_chain(const Adjacency& a) {
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (!a.test(i, i + 1)) return false;
  }
  return true;
}

}  // namespace vanet
