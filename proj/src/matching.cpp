#include "heraldsim/matching.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace heraldsim {

namespace {

// O(n^3) maximum-weight general matching with blossom shrinking (Galil's
// primal-dual scheme).  Vertices are 1-indexed; blossoms occupy n+1..2n.
class Blossom {
 public:
  explicit Blossom(int n) : n_(n), n_x_(n) {
    const int m = 2 * n + 1;
    g_.assign(m, std::vector<E>(m));
    lab_.assign(m, 0);
    match_.assign(m, 0);
    slack_.assign(m, 0);
    st_.assign(m, 0);
    pa_.assign(m, 0);
    s_.assign(m, -1);
    vis_.assign(m, 0);
    flower_.assign(m, {});
    flower_from_.assign(m, std::vector<int>(n + 1, 0));
    for (int u = 1; u <= n; ++u) {
      for (int v = 1; v <= n; ++v) g_[u][v] = E{u, v, 0};
    }
  }

  void set_weight(int u, int v, int64_t w) {
    g_[u][v].w = g_[v][u].w = w;
  }

  std::vector<int> solve() {
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_from_[u][u] = u;
    }
    int64_t w_max = 0;
    for (int u = 1; u <= n_; ++u) {
      for (int v = 1; v <= n_; ++v) w_max = std::max(w_max, g_[u][v].w);
    }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (matching()) {
    }
    std::vector<int> mate(n_, -1);
    for (int u = 1; u <= n_; ++u) {
      if (match_[u]) mate[u - 1] = match_[u] - 1;
    }
    return mate;
  }

 private:
  struct E {
    int u = 0, v = 0;
    int64_t w = 0;
  };
  static constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;

  int64_t e_delta(const E& e) const {
    return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2;
  }
  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) {
      slack_[x] = u;
    }
  }
  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u) {
      if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) update_slack(u, x);
    }
  }
  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
    } else {
      for (int p : flower_[x]) q_push(p);
    }
  }
  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_) {
      for (int p : flower_[x]) set_st(p, b);
    }
  }
  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(),
                                        xr) -
                              flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }
  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u > n_) {
      const E& e = g_[u][v];
      int xr = flower_from_[u][e.u];
      int pr = get_pr(u, xr);
      for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
      set_match(xr, v);
      std::rotate(flower_[u].begin(), flower_[u].begin() + pr,
                  flower_[u].end());
    }
  }
  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }
  int get_lca(int u, int v) {
    for (++t_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == t_) return u;
      vis_[u] = t_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }
  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    s_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) g_[b][x].w = g_[x][b].w = 0;
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x) {
        if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
          g_[b][x] = g_[xs][x];
          g_[x][b] = g_[x][xs];
        }
      }
      for (int x = 1; x <= n_; ++x) {
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
      }
    }
    set_slack(b);
  }
  void expand_blossom(int b) {
    for (int ss : flower_[b]) set_st(ss, ss);
    int xr = flower_from_[b][g_[b][pa_[b]].u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i];
      int xns = flower_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      s_[xs] = 1;
      s_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    s_[xr] = 1;
    pa_[xr] = pa_[b];
    for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][i];
      s_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }
  bool on_found_edge(const E& e) {
    int u = st_[e.u], v = st_[e.v];
    if (s_[v] == -1) {
      pa_[v] = e.u;
      s_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      s_[nu] = 0;
      q_push(nu);
    } else if (s_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }
  bool matching() {
    std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x) {
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        s_[x] = 0;
        q_push(x);
      }
    }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (s_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v) {
          if (g_[u][v].w > 0 && st_[u] != st_[v]) {
            if (e_delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
        }
      }
      int64_t d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1) d = std::min(d, lab_[b] / 2);
      }
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x]) {
          if (s_[x] == -1) {
            d = std::min(d, e_delta(g_[slack_[x]][x]));
          } else if (s_[x] == 0) {
            d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
          }
        }
      }
      for (int u = 1; u <= n_; ++u) {
        if (s_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (s_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b) {
          if (s_[b] == 0) {
            lab_[b] += d * 2;
          } else if (s_[b] == 1) {
            lab_[b] -= d * 2;
          }
        }
      }
      q_.clear();
      for (int x = 1; x <= n_x_; ++x) {
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            e_delta(g_[slack_[x]][x]) == 0) {
          if (on_found_edge(g_[slack_[x]][x])) return true;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b) {
        if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) expand_blossom(b);
      }
    }
  }

  int n_, n_x_;
  int t_ = 0;
  std::vector<std::vector<E>> g_;
  std::vector<int64_t> lab_;
  std::vector<int> match_, slack_, st_, pa_, s_, vis_;
  std::vector<std::vector<int>> flower_, flower_from_;
  std::deque<int> q_;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(
    const std::vector<std::vector<int64_t>>& w) {
  const int n = static_cast<int>(w.size());
  if (n == 0) return {};
  if (n % 2) throw std::invalid_argument("odd vertex count");
  if (n == 2) return {1, 0};
  int64_t w_max = 0;
  for (const auto& row : w) {
    for (int64_t x : row) {
      if (x < 0) throw std::invalid_argument("negative weight");
      w_max = std::max(w_max, x);
    }
  }
  // Complement to a maximization problem; +1 keeps every weight positive so
  // the complete graph stays fully connected and the matching is perfect.
  Blossom b(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      b.set_weight(u + 1, v + 1, w_max - w[u][v] + 1);
    }
  }
  std::vector<int> mate = b.solve();
  for (int u = 0; u < n; ++u) {
    if (mate[u] < 0) throw std::logic_error("matching not perfect");
  }
  return mate;
}

std::vector<int> brute_force_min_perfect(
    const std::vector<std::vector<int64_t>>& w) {
  const int n = static_cast<int>(w.size());
  if (n % 2) throw std::invalid_argument("odd vertex count");
  std::vector<int> best(n, -1), cur(n, -1);
  int64_t best_w = std::numeric_limits<int64_t>::max();
  auto rec = [&](auto&& self, int64_t acc) -> void {
    int u = 0;
    while (u < n && cur[u] >= 0) ++u;
    if (u == n) {
      if (acc < best_w) {
        best_w = acc;
        best = cur;
      }
      return;
    }
    for (int v = u + 1; v < n; ++v) {
      if (cur[v] >= 0) continue;
      cur[u] = v;
      cur[v] = u;
      self(self, acc + w[u][v]);
      cur[u] = cur[v] = -1;
    }
  };
  rec(rec, 0);
  return best;
}

int64_t matching_weight(const std::vector<std::vector<int64_t>>& w,
                        const std::vector<int>& mate) {
  int64_t total = 0;
  for (size_t u = 0; u < mate.size(); ++u) {
    if (mate[u] >= 0 && static_cast<size_t>(mate[u]) > u) total += w[u][mate[u]];
  }
  return total;
}

}  // namespace heraldsim
