#include "rotation_search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <queue>
#include <thread>

#include "strukt/error.hpp"

namespace strukt::detail {

namespace {

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

void set_rotation(std::vector<int>& next, std::vector<int>& prev, const std::vector<int>& cyc) {
  const std::size_t k = cyc.size();
  for (std::size_t i = 0; i < k; ++i) {
    next[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % k];
    prev[static_cast<std::size_t>(cyc[(i + 1) % k])] = cyc[i];
  }
}

/// k-th (lexicographic) arrangement of darts[1..] after the pinned darts[0].
std::vector<int> kth_rotation(const std::vector<int>& darts, std::uint64_t k) {
  std::vector<int> pool(darts.begin() + 1, darts.end());
  std::vector<int> cyc{darts.front()};
  while (!pool.empty()) {
    std::uint64_t f = factorial(static_cast<int>(pool.size()) - 1);
    auto idx = static_cast<std::size_t>(k / f);
    k %= f;
    cyc.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return cyc;
}

}  // namespace

DenseMap DenseMap::skeleton(const Graph& g) {
  DenseMap d;
  d.n = static_cast<int>(g.num_vertices());
  const auto edges = g.edges();
  d.m = static_cast<int>(edges.size());
  d.tail.resize(2 * edges.size());
  d.head.resize(2 * edges.size());
  d.sign.assign(edges.size(), 1);
  d.out.assign(g.num_vertices(), {});
  for (std::size_t j = 0; j < edges.size(); ++j) {
    int u = g.index_of(edges[j].u);
    int v = g.index_of(edges[j].v);
    d.tail[2 * j] = u;
    d.head[2 * j] = v;
    d.tail[2 * j + 1] = v;
    d.head[2 * j + 1] = u;
    d.out[static_cast<std::size_t>(u)].push_back(static_cast<int>(2 * j));
    d.out[static_cast<std::size_t>(v)].push_back(static_cast<int>(2 * j + 1));
  }
  for (auto& o : d.out) {
    std::sort(o.begin(), o.end(), [&](int a, int b) { return d.head[static_cast<std::size_t>(a)] < d.head[static_cast<std::size_t>(b)]; });
  }
  d.next.assign(2 * edges.size(), 0);
  d.prev.assign(2 * edges.size(), 0);
  for (const auto& o : d.out) {
    if (!o.empty()) set_rotation(d.next, d.prev, o);
  }
  return d;
}

DenseMap DenseMap::from_embedding(const Embedding& e) {
  const Graph& g = e.graph();
  DenseMap d = skeleton(g);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto& rot = e.rotations()[i];
    std::vector<int> cyc;
    for (Vertex w : rot) {
      int wi = g.index_of(w);
      for (int dart : d.out[i]) {
        if (d.head[static_cast<std::size_t>(dart)] == wi) cyc.push_back(dart);
      }
    }
    if (!cyc.empty()) set_rotation(d.next, d.prev, cyc);
  }
  if (!e.signature().empty()) d.sign = e.signature();
  return d;
}

std::vector<std::vector<int>> DenseMap::faces() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(static_cast<std::size_t>(4 * m), 0);
  for (int k = 0; k < 4 * m; ++k) {
    const int s = k < 2 * m ? 2 * k : 2 * (k - 2 * m) + 1;
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> cyc;
    int cur = s;
    do {
      cyc.push_back(cur);
      seen[static_cast<std::size_t>(cur)] = 1;
      cur = transition(cur);
    } while (cur != s);
    for (int st : cyc) seen[static_cast<std::size_t>(mirror(st))] = 1;
    out.push_back(std::move(cyc));
  }
  return out;
}

int DenseMap::face_count() const {
  if (m == 0) return n > 0 ? 1 : 0;
  return static_cast<int>(faces().size());
}

int min_face_length(const Graph& g) {
  const std::size_t m = g.num_edges();
  if (m <= 1) return static_cast<int>(2 * m);
  if (m + 1 == g.num_vertices()) return 3;  // tree: its single face is long
  int girth = std::numeric_limits<int>::max();
  const auto& vs = g.vertices();
  for (Vertex s : vs) {
    std::vector<int> dist(vs.size(), -1);
    std::vector<int> parent(vs.size(), -1);
    std::queue<int> q;
    int si = g.index_of(s);
    dist[static_cast<std::size_t>(si)] = 0;
    q.push(si);
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (Vertex w : g.neighbors(vs[static_cast<std::size_t>(x)])) {
        int wi = g.index_of(w);
        if (dist[static_cast<std::size_t>(wi)] < 0) {
          dist[static_cast<std::size_t>(wi)] = dist[static_cast<std::size_t>(x)] + 1;
          parent[static_cast<std::size_t>(wi)] = x;
          q.push(wi);
        } else if (parent[static_cast<std::size_t>(x)] != wi) {
          girth = std::min(girth, dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(wi)] + 1);
        }
      }
    }
  }
  return std::max(3, girth == std::numeric_limits<int>::max() ? 3 : girth);
}

RotationEnumerator::RotationEnumerator(const Graph& g, bool orientable) : orientable_(orientable) {
  base_ = DenseMap::skeleton(g);
  min_len_ = min_face_length(g);
  const int n = base_.n;
  fixed_at_start_.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> branching;
  for (int v = 0; v < n; ++v) {
    if (base_.out[static_cast<std::size_t>(v)].size() <= 2) {
      fixed_at_start_[static_cast<std::size_t>(v)] = 1;
    } else {
      branching.push_back(v);
    }
  }
  // Greedy order: start at the largest degree, then the vertex with most placed neighbors.
  std::vector<char> placed = fixed_at_start_;
  auto deg = [&](int v) { return static_cast<int>(base_.out[static_cast<std::size_t>(v)].size()); };
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (std::size_t step = 0; step < branching.size(); ++step) {
    int best = -1;
    int best_key1 = -1;
    int best_key2 = -1;
    for (int v : branching) {
      if (used[static_cast<std::size_t>(v)]) continue;
      int links = 0;
      for (int d : base_.out[static_cast<std::size_t>(v)]) {
        if (placed[static_cast<std::size_t>(base_.head[static_cast<std::size_t>(d)])]) ++links;
      }
      int k1 = step == 0 ? deg(v) : links;
      int k2 = deg(v);
      if (k1 > best_key1 || (k1 == best_key1 && k2 > best_key2)) {
        best = v;
        best_key1 = k1;
        best_key2 = k2;
      }
    }
    used[static_cast<std::size_t>(best)] = 1;
    placed[static_cast<std::size_t>(best)] = 1;
    order_.push_back(best);
  }
  if (!order_.empty()) {
    first_rotations_ = static_cast<std::size_t>(factorial(deg(order_.front()) - 1));
  }

  const std::size_t levels = std::max<std::size_t>(order_.size(), 1);
  level_edges_.assign(levels, {});
  if (orientable_ || base_.m == 0) return;
  std::vector<int> level(static_cast<std::size_t>(n), 0);
  for (std::size_t k = 0; k < order_.size(); ++k) level[static_cast<std::size_t>(order_[k])] = static_cast<int>(k);
  // BFS tree from the first placed vertex; its edges keep sign +1.
  std::vector<char> in_tree(static_cast<std::size_t>(base_.m), 0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  const int root = order_.empty() ? 0 : order_.front();
  std::queue<int> q;
  q.push(root);
  seen[static_cast<std::size_t>(root)] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int d : base_.out[static_cast<std::size_t>(v)]) {
      int w = base_.head[static_cast<std::size_t>(d)];
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      in_tree[static_cast<std::size_t>(d >> 1)] = 1;
      q.push(w);
    }
  }
  for (int j = 0; j < base_.m; ++j) {
    if (in_tree[static_cast<std::size_t>(j)]) continue;
    int lv = std::max(level[static_cast<std::size_t>(base_.tail[static_cast<std::size_t>(2 * j)])],
                      level[static_cast<std::size_t>(base_.head[static_cast<std::size_t>(2 * j)])]);
    level_edges_[static_cast<std::size_t>(lv)].push_back(j);
  }
}

namespace {

struct SearchState {
  DenseMap map;  // rotations and signs as currently assigned
  std::vector<char> fixed;
  std::vector<char> assigned;  // per edge
  std::vector<char> seen;
  bool orientable;
  int min_len;

  /// Upper bound on the final face count; exact when everything is assigned.
  /// Known successor links cut the states into closed cycles and open chains;
  /// a face holds either a chain of length >= min_len or short chains adding up to it.
  int face_upper_bound() {
    const DenseMap& b = map;
    const int states = 4 * b.m;
    const int stride = orientable ? 2 : 1;
    auto determined = [&](int s) {
      const int d = s >> 1;
      return fixed[static_cast<std::size_t>(b.head[static_cast<std::size_t>(d)])] &&
             assigned[static_cast<std::size_t>(d >> 1)];
    };
    std::fill(seen.begin(), seen.end(), 0);  // 1 = has a determined predecessor
    for (int s = 0; s < states; s += stride) {
      if (determined(s)) seen[static_cast<std::size_t>(b.transition(s))] = 1;
    }
    int cycles = 0;
    int long_chains = 0;
    int short_total = 0;
    for (int s = 0; s < states; s += stride) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      int len = 1;
      int cur = s;
      seen[static_cast<std::size_t>(cur)] = 2;
      while (determined(cur)) {
        cur = b.transition(cur);
        seen[static_cast<std::size_t>(cur)] = 2;
        ++len;
      }
      if (len >= min_len) ++long_chains;
      else short_total += len;
    }
    for (int s = 0; s < states; s += stride) {
      if (seen[static_cast<std::size_t>(s)] != 1) continue;
      ++cycles;
      int cur = s;
      do {
        seen[static_cast<std::size_t>(cur)] = 2;
        cur = b.transition(cur);
      } while (cur != s);
    }
    const int total = cycles + long_chains + short_total / min_len;
    return orientable ? total : total / 2;
  }
};

}  // namespace

ItemResult RotationEnumerator::run_item(std::size_t item, const std::function<int()>& max_eg,
                                        const LeafVisitor& visit, std::uint64_t node_cap) const {
  ItemResult res;
  const int n = base_.n;
  const int m = base_.m;
  const int euler_base = 2 - n + m;

  if (m == 0) {
    res.nodes = 1;
    if (orientable_ && euler_base - 1 <= max_eg()) visit(base_, euler_base - 1);
    return res;
  }

  SearchState st{base_, fixed_at_start_, std::vector<char>(static_cast<std::size_t>(m), 1),
                 std::vector<char>(static_cast<std::size_t>(4 * m)), orientable_, min_len_};
  for (const auto& lv : level_edges_) {
    for (int j : lv) st.assigned[static_cast<std::size_t>(j)] = 0;
  }
  bool stop = false;
  int negatives = 0;

  if (!order_.empty()) {
    const int first = order_.front();
    set_rotation(st.map.next, st.map.prev, kth_rotation(base_.out[static_cast<std::size_t>(first)], item));
    st.fixed[static_cast<std::size_t>(first)] = 1;
  }
  const std::size_t levels = level_edges_.size();

  std::function<void(std::size_t)> at_level;
  // Everything up to level k is assigned.
  auto node = [&](std::size_t k) {
    if (++res.nodes > node_cap) {
      res.exhausted = true;
      stop = true;
      return;
    }
    const int eg_lower = euler_base - st.face_upper_bound();
    if (eg_lower > max_eg()) return;
    if (k + 1 == levels) {
      if (!orientable_ && negatives == 0) return;
      if (visit(st.map, eg_lower)) stop = true;
      return;
    }
    const int v = order_[k + 1];
    std::vector<int> darts = base_.out[static_cast<std::size_t>(v)];
    st.fixed[static_cast<std::size_t>(v)] = 1;
    do {
      set_rotation(st.map.next, st.map.prev, darts);
      at_level(k + 1);
      if (stop) break;
    } while (std::next_permutation(darts.begin() + 1, darts.end()));
    st.fixed[static_cast<std::size_t>(v)] = 0;
  };
  std::function<void(std::size_t, std::size_t)> signs = [&](std::size_t k, std::size_t i) {
    const auto& lv = level_edges_[k];
    if (i == lv.size()) {
      node(k);
      return;
    }
    const auto j = static_cast<std::size_t>(lv[i]);
    st.assigned[j] = 1;
    for (int sg : {1, -1}) {
      st.map.sign[j] = sg;
      if (sg == -1) ++negatives;
      signs(k, i + 1);
      if (sg == -1) --negatives;
      if (stop) break;
    }
    st.map.sign[j] = 1;
    st.assigned[j] = 0;
  };
  at_level = [&](std::size_t k) { signs(k, 0); };
  at_level(0);
  return res;
}

std::optional<std::vector<int>> min_face_cover(const std::vector<std::uint64_t>& masks, std::size_t nbits, int limit) {
  const std::uint64_t full = nbits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nbits) - 1;
  if (full == 0) return std::vector<int>{};
  std::vector<int> pick;
  std::function<bool(std::uint64_t, int)> dfs = [&](std::uint64_t covered, int k) {
    if (covered == full) return true;
    if (k == 0) return false;
    const int low = std::countr_zero(~covered & full);
    std::vector<std::uint64_t> tried;
    for (std::size_t f = 0; f < masks.size(); ++f) {
      if (!(masks[f] >> low & 1U)) continue;
      const std::uint64_t next = covered | masks[f];
      if (std::find(tried.begin(), tried.end(), next) != tried.end()) continue;
      tried.push_back(next);
      pick.push_back(static_cast<int>(f));
      if (dfs(next, k - 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= limit; ++k) {
    if (dfs(0, k)) {
      std::sort(pick.begin(), pick.end());
      return pick;
    }
  }
  return std::nullopt;
}

Embedding to_embedding(const Graph& g, const DenseMap& map) {
  std::vector<std::vector<Vertex>> rot(g.num_vertices());
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto& out = map.out[i];
    if (out.empty()) continue;
    int d = out.front();
    do {
      rot[i].push_back(g.vertices()[static_cast<std::size_t>(map.head[static_cast<std::size_t>(d)])]);
      d = map.next[static_cast<std::size_t>(d)];
    } while (d != out.front());
  }
  return Embedding(g, std::move(rot), map.sign);
}

void run_parallel(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& work) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned k = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  for (unsigned t = 0; t < k; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          work(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace strukt::detail
