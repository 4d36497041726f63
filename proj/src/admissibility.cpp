#include "strukt/admissibility.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <deque>
#include <optional>

#include "strukt/error.hpp"

namespace strukt {

Depth parse_depth(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return kInfiniteDepth;
  int d = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ec != std::errc() || p != text.data() + text.size() || d < 1)
    throw DomainError("depth must be a positive integer or 'inf': " + std::string(text));
  return d;
}

std::string format_depth(Depth d) { return d == kInfiniteDepth ? "inf" : std::to_string(d); }

namespace {

// Dense view: vertex i is g.vertices()[i]; role[i] tells prefix / suffix / root.
enum Role : char { kSuffix = 0, kPrefix = 1, kRoot = 2 };

struct Dense {
  std::vector<std::vector<int>> adj;

  explicit Dense(const Graph& g) : adj(g.num_vertices()) {
    for (std::size_t i = 0; i < adj.size(); ++i) {
      for (Vertex w : g.neighbors(g.vertices()[i])) adj[i].push_back(g.index_of(w));
    }
  }
  int size() const { return static_cast<int>(adj.size()); }
};

class NodeMeter {
 public:
  explicit NodeMeter(const SearchBudget& b) : cap_(b.max_nodes) {}
  void tick() {
    if (++used_ > cap_) throw ResourceError("search budget exceeded");
  }

 private:
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

// Unit vertex capacities on the suffix, every prefix vertex drains to the sink once.
int fan_flow(const Dense& g, int root, const std::vector<char>& role) {
  const int n = g.size();
  const int sink = 2 * n;
  struct Arc {
    int to, cap, rev;
  };
  std::vector<std::vector<Arc>> net(2 * n + 1);
  auto link = [&](int a, int b) {
    net[a].push_back({b, 1, static_cast<int>(net[b].size())});
    net[b].push_back({a, 0, static_cast<int>(net[a].size()) - 1});
  };
  for (int x = 0; x < n; ++x) {
    if (role[x] == kSuffix) link(2 * x, 2 * x + 1);
    if (role[x] == kPrefix) link(2 * x, sink);
    if (role[x] == kPrefix) continue;
    for (int y : g.adj[x]) {
      if (role[y] != kRoot) link(2 * x + 1, 2 * y);
    }
  }
  const int src = 2 * root + 1;
  int flow = 0;
  std::vector<std::pair<int, int>> from(net.size());
  for (;;) {
    std::fill(from.begin(), from.end(), std::pair{-1, -1});
    from[src] = {src, -1};
    std::deque<int> q{src};
    while (!q.empty() && from[sink].first < 0) {
      int a = q.front();
      q.pop_front();
      for (int i = 0; i < static_cast<int>(net[a].size()); ++i) {
        const Arc& e = net[a][i];
        if (e.cap > 0 && from[e.to].first < 0) {
          from[e.to] = {a, i};
          q.push_back(e.to);
        }
      }
    }
    if (from[sink].first < 0) return flow;
    for (int b = sink; b != src;) {
      auto [a, i] = from[b];
      Arc& e = net[a][i];
      e.cap -= 1;
      net[b][e.rev].cap += 1;
      b = a;
    }
    ++flow;
  }
}

class BoundedFan {
 public:
  BoundedFan(const Dense& g, int root, std::vector<char> role, Depth d, NodeMeter& meter)
      : g_(g), role_(std::move(role)), used_(g.size(), 0), d_(d), meter_(meter) {
    for (int y : g_.adj[root]) {
      if (role_[y] == kPrefix) {
        ++direct_;
        used_[y] = 1;
      } else if (role_[y] == kSuffix) {
        starts_.push_back(y);
      }
    }
    used_[root] = 1;
  }

  int solve(int upper) {
    upper_ = upper;
    best_ = direct_;
    if (d_ >= 2 && best_ < upper_) branch(0, direct_);
    return best_;
  }

 private:
  void branch(std::size_t i, int have) {
    meter_.tick();
    if (best_ >= upper_) return;
    if (have + static_cast<int>(starts_.size() - i) <= best_) return;
    if (i == starts_.size()) {
      best_ = have;
      return;
    }
    int s = starts_[i];
    if (!used_[s]) {
      used_[s] = 1;
      extend(s, 1, i, have);
      used_[s] = 0;
    }
    branch(i + 1, have);
  }

  // A path root..x of `len` edges is laid; x is an unused suffix vertex.
  void extend(int x, int len, std::size_t i, int have) {
    if (len >= d_) return;
    for (int y : g_.adj[x]) {
      if (used_[y]) continue;
      meter_.tick();
      used_[y] = 1;
      if (role_[y] == kPrefix) {
        branch(i + 1, have + 1);
      } else {
        extend(y, len + 1, i, have);
      }
      used_[y] = 0;
      if (best_ >= upper_) return;
    }
  }

  const Dense& g_;
  std::vector<char> role_;
  std::vector<char> used_;
  std::vector<int> starts_;
  Depth d_;
  NodeMeter& meter_;
  int direct_ = 0;
  int upper_ = 0;
  int best_ = 0;
};

int fan(const Dense& g, int root, const std::vector<char>& role, Depth d, NodeMeter& meter) {
  if (d == 1) {
    int c = 0;
    for (int y : g.adj[root]) c += role[y] == kPrefix;
    return c;
  }
  int suffix = 0;
  for (char r : role) suffix += r == kSuffix;
  int flow = fan_flow(g, root, role);
  // A path with internal vertices in the suffix has at most suffix + 1 edges.
  if (d == kInfiniteDepth || d > suffix) return flow;
  return BoundedFan(g, root, role, d, meter).solve(flow);
}

std::vector<int> positions(const Graph& g, const Ordering& order) {
  if (!order.is_permutation_of(g)) throw ContractError("ordering is not a permutation of the vertex set");
  std::vector<int> idx;
  idx.reserve(order.sequence.size());
  for (Vertex v : order.sequence) idx.push_back(g.index_of(v));
  return idx;
}

void check_depth(Depth d) {
  if (d < 1) throw DomainError("depth must be positive");
}

AdmissibilityReport make_report(const Graph& g, std::vector<int> seq_idx, const std::vector<int>& bc) {
  AdmissibilityReport r;
  for (std::size_t i = 0; i < seq_idx.size(); ++i) {
    Vertex v = g.vertices()[seq_idx[i]];
    r.ordering.sequence.push_back(v);
    r.per_vertex[v] = bc[i];
    r.value = std::max(r.value, bc[i]);
  }
  return r;
}

}  // namespace

int backconnectivity(const Graph& g, const Ordering& order, int k, Depth d, const SearchBudget& budget) {
  check_depth(d);
  auto idx = positions(g, order);
  if (k < 1 || k > static_cast<int>(idx.size())) throw DomainError("position out of range");
  Dense dense(g);
  std::vector<char> role(dense.size(), kSuffix);
  for (int i = 0; i + 1 < k; ++i) role[idx[i]] = kPrefix;
  role[idx[k - 1]] = kRoot;
  NodeMeter meter(budget);
  return fan(dense, idx[k - 1], role, d, meter);
}

AdmissibilityReport ordering_admissibility(const Graph& g, const Ordering& order, Depth d,
                                           const SearchBudget& budget) {
  check_depth(d);
  auto idx = positions(g, order);
  Dense dense(g);
  NodeMeter meter(budget);
  std::vector<char> role(dense.size(), kSuffix);
  std::vector<int> bc(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    role[idx[k]] = kRoot;
    bc[k] = fan(dense, idx[k], role, d, meter);
    role[idx[k]] = kPrefix;
  }
  return make_report(g, idx, bc);
}

AdmissibilityReport admissibility_greedy(const Graph& g, Depth d, const SearchBudget& budget) {
  check_depth(d);
  Dense dense(g);
  const int n = dense.size();
  NodeMeter meter(budget);
  std::vector<char> role(n, kPrefix);
  std::vector<int> seq(n), bc(n);
  for (int slot = n - 1; slot >= 0; --slot) {
    int pick = -1, pick_bc = 0;
    for (int x = 0; x < n; ++x) {
      if (role[x] != kPrefix) continue;
      role[x] = kRoot;
      int b = fan(dense, x, role, d, meter);
      role[x] = kPrefix;
      if (pick < 0 || b < pick_bc) pick = x, pick_bc = b;
    }
    role[pick] = kSuffix;
    seq[slot] = pick;
    bc[slot] = pick_bc;
  }
  return make_report(g, seq, bc);
}

namespace {

// Places the vertices back to front. A vertex whose value does not exceed
// `cap` may always take the last free slot: moving it to the end of any
// valid ordering only shrinks the earlier sets of the others, and truncating
// their paths at the first earlier vertex shows values cannot grow.
std::optional<std::pair<std::vector<int>, std::vector<int>>> peel_under(const Dense& g, Depth d, int cap,
                                                                       NodeMeter& meter) {
  const int n = g.size();
  std::vector<char> role(n, kPrefix);
  std::vector<int> seq(n), bc(n);
  for (int slot = n - 1; slot >= 0; --slot) {
    int pick = -1;
    for (int x = 0; x < n && pick < 0; ++x) {
      if (role[x] != kPrefix) continue;
      meter.tick();
      role[x] = kRoot;
      int b = fan(g, x, role, d, meter);
      role[x] = kPrefix;
      if (b <= cap) pick = x, bc[slot] = b;
    }
    if (pick < 0) return std::nullopt;
    role[pick] = kSuffix;
    seq[slot] = pick;
  }
  return std::pair{seq, bc};
}

}  // namespace

AdmissibilityReport admissibility_exact(const Graph& g, Depth d, const SearchBudget& budget, int max_vertices) {
  check_depth(d);
  const int n = static_cast<int>(g.num_vertices());
  if (n > max_vertices)
    throw ResourceError("exact admissibility limited to " + std::to_string(max_vertices) + " vertices, graph has " +
                        std::to_string(n));
  if (n == 0) return {};
  // Every earlier neighbour is a path of length one, so degeneracy is a lower bound.
  int lower = admissibility_greedy(g, 1, budget).value;
  Dense dense(g);
  NodeMeter meter(budget);
  for (int cap = lower;; ++cap) {
    if (auto found = peel_under(dense, d, cap, meter)) return make_report(g, found->first, found->second);
  }
}

}  // namespace strukt
