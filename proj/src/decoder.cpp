#include "heraldsim/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "heraldsim/matching.hpp"

namespace heraldsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kScale = 1e6;  // float weight -> integer matching weight

int64_t to_int(double w) {
  return static_cast<int64_t>(std::llround(w * kScale));
}
}  // namespace

Decoder::Decoder(const DetectorGraph& graph) : n_(graph.num_detectors) {
  // Deduplicated adjacency (parallel edges keep the lighter one).
  struct Adj {
    uint32_t v;
    double w;
    uint8_t obs;
  };
  std::vector<std::vector<Adj>> adj(n_);
  bdist_.assign(n_, kInf);
  bobs_.assign(n_, 0);
  for (const auto& e : graph.edges) {
    const double w = std::max(e.weight, 0.0);
    if (e.v == DetectorGraph::kBoundary) {
      if (w < bdist_[e.u]) {
        bdist_[e.u] = w;
        bobs_[e.u] = e.obs_mask;
      }
    } else {
      adj[e.u].push_back({e.v, w, e.obs_mask});
      adj[e.v].push_back({e.u, w, e.obs_mask});
    }
  }

  component_.assign(n_, -1);
  int32_t comp = 0;
  for (uint32_t s = 0; s < n_; ++s) {
    if (component_[s] >= 0) continue;
    std::vector<uint32_t> stack{s};
    component_[s] = comp;
    while (!stack.empty()) {
      uint32_t u = stack.back();
      stack.pop_back();
      for (const auto& a : adj[u]) {
        if (component_[a.v] < 0) {
          component_[a.v] = comp;
          stack.push_back(a.v);
        }
      }
    }
    ++comp;
  }

  dist_.assign(static_cast<size_t>(n_) * n_, kInf);
  path_obs_.assign(static_cast<size_t>(n_) * n_, 0);
  using Item = std::pair<double, uint32_t>;
  std::vector<double> d(n_);
  std::vector<uint8_t> o(n_);
  std::vector<uint8_t> done(n_);
  for (uint32_t s = 0; s < n_; ++s) {
    std::fill(d.begin(), d.end(), kInf);
    std::fill(o.begin(), o.end(), 0);
    std::fill(done.begin(), done.end(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      for (const auto& a : adj[u]) {
        double nd = du + a.w;
        if (nd < d[a.v]) {
          d[a.v] = nd;
          o[a.v] = o[u] ^ a.obs;
          pq.push({nd, a.v});
        }
      }
    }
    for (uint32_t v = 0; v < n_; ++v) {
      dist_[static_cast<size_t>(s) * n_ + v] = d[v];
      path_obs_[static_cast<size_t>(s) * n_ + v] = o[v];
    }
    // Best boundary exit anywhere along a path from s.
    double bb = kInf;
    uint8_t bo = 0;
    for (uint32_t v = 0; v < n_; ++v) {
      if (d[v] + bdist_[v] < bb) {
        bb = d[v] + bdist_[v];
        bo = o[v] ^ bobs_[v];
      }
    }
    if (bb < bdist_[s]) {
      // keep as effective boundary distance for matching
      bdist_[s] = bb;
      bobs_[s] = bo;
    }
  }
}

double Decoder::distance(uint32_t u, uint32_t v) const {
  return dist_[static_cast<size_t>(u) * n_ + v];
}
double Decoder::boundary_distance(uint32_t u) const { return bdist_[u]; }

MatchResult Decoder::decode(const std::vector<uint32_t>& defects) const {
  MatchResult res;
  if (defects.empty()) return res;

  // Group defects by graph component; each group matches independently.
  std::map<int32_t, std::vector<uint32_t>> groups;
  for (uint32_t u : defects) {
    if (u >= n_) throw std::out_of_range("defect index");
    groups[component_[u]].push_back(u);
  }

  for (auto& [comp, grp] : groups) {
    const size_t k = grp.size();
    if (k == 1) {
      uint32_t u = grp[0];
      if (!std::isfinite(bdist_[u])) {
        res.ok = false;
        continue;
      }
      res.pairs.push_back({u, DetectorGraph::kBoundary});
      res.total_weight += bdist_[u];
      res.obs_mask ^= bobs_[u];
      continue;
    }
    const size_t m = k + (k % 2);  // virtual boundary node if odd
    std::vector<std::vector<int64_t>> w(m, std::vector<int64_t>(m, 0));
    bool feasible = true;
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = i + 1; j < k; ++j) {
        double dij = distance(grp[i], grp[j]);
        double via_b = bdist_[grp[i]] + bdist_[grp[j]];
        double best = std::min(dij, via_b);
        if (!std::isfinite(best)) {
          feasible = false;
          best = 0;
        }
        w[i][j] = w[j][i] = to_int(best);
      }
      if (m > k) {
        double bw = bdist_[grp[i]];
        if (!std::isfinite(bw)) {
          feasible = false;
          bw = 0;
        }
        w[i][k] = w[k][i] = to_int(bw);
      }
    }
    if (!feasible) {
      res.ok = false;
      continue;
    }
    std::vector<int> mate;
    if (k == 2 && m == 2) {
      mate = {1, 0};
    } else {
      mate = min_weight_perfect_matching(w);
    }
    for (size_t i = 0; i < k; ++i) {
      size_t j = static_cast<size_t>(mate[i]);
      if (j < i) continue;
      if (j == k) {
        res.pairs.push_back({grp[i], DetectorGraph::kBoundary});
        res.total_weight += bdist_[grp[i]];
        res.obs_mask ^= bobs_[grp[i]];
        continue;
      }
      double dij = distance(grp[i], grp[j]);
      double via_b = bdist_[grp[i]] + bdist_[grp[j]];
      if (dij <= via_b) {
        res.pairs.push_back({grp[i], grp[j]});
        res.total_weight += dij;
        res.obs_mask ^= path_obs_[static_cast<size_t>(grp[i]) * n_ + grp[j]];
      } else {
        res.pairs.push_back({grp[i], DetectorGraph::kBoundary});
        res.pairs.push_back({grp[j], DetectorGraph::kBoundary});
        res.total_weight += via_b;
        res.obs_mask ^= bobs_[grp[i]] ^ bobs_[grp[j]];
      }
    }
  }
  return res;
}

MatchResult Decoder::decode_shot(const std::vector<uint8_t>& bits) const {
  std::vector<uint32_t> defects;
  for (uint32_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) defects.push_back(i);
  }
  return decode(defects);
}

MatchResult decode_mwpm(const DetectorGraph& graph,
                        const std::vector<uint32_t>& defects) {
  return Decoder(graph).decode(defects);
}

int decode_bacon_shor(const std::vector<std::vector<uint8_t>>& history) {
  if (history.empty()) return 0;
  const size_t k = history[0].size();
  std::vector<uint8_t> syndrome(k, 0);
  for (size_t i = 0; i < k; ++i) {
    size_t ones = 0;
    for (const auto& round : history) ones += round[i];
    syndrome[i] = ones * 2 > history.size();
  }
  // Minimum-weight chain on the length-(k+1) repetition code: cumulative
  // parity from position 0 vs its complement.
  size_t w0 = 0;
  uint8_t cum = 0;
  size_t weight = 0;
  for (size_t i = 0; i < k; ++i) {
    cum ^= syndrome[i];
    weight += cum;
  }
  w0 = weight;  // error pattern with position 0 clean
  size_t w1 = (k + 1) - w0;
  return w1 < w0 ? 1 : 0;
}

}  // namespace heraldsim
