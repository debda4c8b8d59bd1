#include "sptsim/observables.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace sptsim {

namespace {

// prefix[i] = parity of d[0..i-1]; window parities in O(1) after O(L) setup.
std::vector<uint8_t> prefix_parity(const SublatticeState& s) {
  std::vector<uint8_t> p(s.L + 1, 0);
  for (int i = 0; i < s.L; ++i) p[i + 1] = p[i] ^ uint8_t(s.d.get(i));
  return p;
}

double string_order_from_prefix(const std::vector<uint8_t>& p, int L, int l) {
  uint8_t total = p[L];
  long long sum = 0;
  for (int i = 0; i < L; ++i) {
    int j = i + l;
    uint8_t par = j <= L ? uint8_t(p[j] ^ p[i]) : uint8_t(total ^ p[i] ^ p[j - L]);
    sum += par ? -1 : +1;
  }
  return double(sum) / L;
}

}  // namespace

double string_order(const SublatticeState& s, int l) {
  if (l < 1 || l > s.L) throw std::invalid_argument("string_order: l out of range");
  return string_order_from_prefix(prefix_parity(s), s.L, l);
}

std::vector<double> string_order_many(const SublatticeState& s, const std::vector<int>& ls) {
  auto p = prefix_parity(s);
  std::vector<double> out;
  out.reserve(ls.size());
  for (int l : ls) {
    if (l < 1 || l > s.L) throw std::invalid_argument("string_order: l out of range");
    out.push_back(string_order_from_prefix(p, s.L, l));
  }
  return out;
}

double unheralded_density(const SublatticeState& s) {
  int count = 0;
  for (int m = 0; m < s.L; ++m) {
    int mp1 = m + 1 == s.L ? 0 : m + 1;
    if (s.d.get(m) && !s.e.get(m) && !s.e.get(mp1)) ++count;
  }
  return double(count) / s.L;
}

double erasure_correlator(const SublatticeState& s, int l) {
  if (l < 1 || l > s.L) throw std::invalid_argument("erasure_correlator: l out of range");
  int count = 0;
  for (int i = 0; i < s.L; ++i) {
    int j = i + l;
    if (j >= s.L) j -= s.L;
    if (!s.e.get(i) && !s.e.get(j)) ++count;
  }
  return double(count) / s.L;
}

std::vector<double> erasure_correlator_many(const SublatticeState& s, const std::vector<int>& ls) {
  std::vector<double> out;
  out.reserve(ls.size());
  for (int l : ls) out.push_back(erasure_correlator(s, l));
  return out;
}

namespace {

struct MatchDp {
  const std::vector<int>& p;
  int ring;
  int n;
  std::vector<long long> memo;  // interval cost, -1 = unset
  static constexpr long long kInf = 1LL << 60;

  MatchDp(const std::vector<int>& pos, int ring_size)
      : p(pos), ring(ring_size), n(int(pos.size())), memo(size_t(n) * n, -1) {}

  long long dist(int i, int j) const {
    int d = std::abs(p[i] - p[j]);
    return std::min(d, ring - d);
  }

  // Min cost of a non-crossing matching of points i..j (inclusive).
  long long cost(int i, int j) {
    if (i > j) return 0;
    if ((j - i) % 2 == 0) return kInf;
    long long& m = memo[size_t(i) * n + j];
    if (m >= 0) return m;
    long long best = kInf;
    for (int k = i + 1; k <= j; k += 2) {
      long long c = dist(i, k) + cost(i + 1, k - 1) + cost(k + 1, j);
      best = std::min(best, c);
    }
    return m = best;
  }

  // Lexicographically smallest optimal reconstruction: the lowest unmatched
  // index always takes its smallest cost-feasible partner.
  void reconstruct(int i, int j, std::vector<std::pair<int, int>>& pairs) {
    if (i > j) return;
    long long total = cost(i, j);
    for (int k = i + 1; k <= j; k += 2) {
      if (dist(i, k) + cost(i + 1, k - 1) + cost(k + 1, j) == total) {
        pairs.emplace_back(i, k);
        reconstruct(i + 1, k - 1, pairs);
        reconstruct(k + 1, j, pairs);
        return;
      }
    }
    throw std::logic_error("matching reconstruction failed");
  }
};

}  // namespace

MatchingResult min_weight_matching(const std::vector<int>& positions, int ring_size) {
  MatchingResult r;
  if (positions.size() % 2 != 0)
    throw std::domain_error("min_weight_matching: odd number of positions");
  if (positions.empty()) return r;

  std::vector<int> pos = positions;
  std::sort(pos.begin(), pos.end());

  MatchDp dp(pos, ring_size);
  r.total_weight = dp.cost(0, dp.n - 1);
  std::vector<std::pair<int, int>> idx_pairs;
  dp.reconstruct(0, dp.n - 1, idx_pairs);
  std::sort(idx_pairs.begin(), idx_pairs.end());
  for (auto [i, k] : idx_pairs) {
    r.pairs.emplace_back(pos[i], pos[k]);
    r.max_separation = std::max(r.max_separation, int(dp.dist(i, k)));
  }
  return r;
}

int zeta(const SublatticeState& s) {
  std::vector<int> pos;
  for (int m = 0; m < s.L; ++m)
    if (s.d.get(m)) pos.push_back(m);
  if (pos.size() % 2 != 0)
    throw std::domain_error("zeta: odd defect count violates the strong symmetry");
  if (pos.empty()) return 0;
  return min_weight_matching(pos, s.L).max_separation;
}

std::vector<double> center_string_orders(const SublatticeState& s) {
  int K = s.L / 2;
  std::vector<double> out(K, 0.0);
  // Window for k is [k, L-k] inclusive; build the innermost one, then grow.
  int k = K;
  int par = 0;
  for (int i = k; i <= s.L - k; ++i) par ^= s.d.get(i);
  out[K - 1] = par ? -1.0 : 1.0;
  for (k = K - 1; k >= 1; --k) {
    par ^= s.d.get(k);
    if (s.L - k != k) par ^= s.d.get(s.L - k);
    out[k - 1] = par ? -1.0 : 1.0;
  }
  return out;
}

}  // namespace sptsim
