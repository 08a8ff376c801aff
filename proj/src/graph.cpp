#include "kneserlab/graph.hpp"

#include <algorithm>
#include <string>

#include "kneserlab/errors.hpp"

namespace kneserlab {

Graph::Graph(std::size_t num_vertices) : adj_(num_vertices, Bitset(num_vertices)) {}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v || adj_[u].test(v)) return;
  adj_[u].set(v);
  adj_[v].set(u);
  ++num_edges_;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& row : adj_) best = std::max(best, row.count());
  return best;
}

std::size_t Graph::induced_edges(const Bitset& subset) const {
  std::size_t twice = 0;
  subset.for_each([&](std::size_t v) { twice += adj_[v].intersect_count(subset); });
  return twice / 2;
}

Graph Graph::induced(std::span<const std::size_t> vertices) const {
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) out.add_edge(i, j);
    }
  }
  return out;
}

bool Graph::is_independent(const Bitset& subset) const {
  bool ok = true;
  subset.for_each([&](std::size_t v) { ok = ok && !adj_[v].intersects(subset); });
  return ok;
}

namespace {

void check_cap(const Graph& g, std::size_t cap, const char* what) {
  if (g.num_vertices() > cap) {
    throw ResourceError(std::string(what) + ": " + std::to_string(g.num_vertices()) +
                        " vertices exceeds the exact-solver cap of " + std::to_string(cap) +
                        "; use the analytic bounds instead");
  }
}

std::vector<Bitset> complement_rows(const Graph& g) {
  std::vector<Bitset> rows;
  rows.reserve(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    Bitset row = g.neighbors(v);
    row.flip();
    row.reset(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Greedy cover of `p` by cliques of g (colour classes of the complement).
// order[i] is a vertex, bound[i] the number of classes opened up to it.
void clique_cover(const Graph& g, const Bitset& p, std::vector<std::size_t>& order,
                  std::vector<std::size_t>& bound) {
  order.clear();
  bound.clear();
  Bitset uncovered = p;
  std::size_t classes = 0;
  while (uncovered.any()) {
    ++classes;
    Bitset q = uncovered;
    for (std::size_t v = q.first(); v != Bitset::npos; v = q.first()) {
      q.reset(v);
      uncovered.reset(v);
      q &= g.neighbors(v);
      order.push_back(v);
      bound.push_back(classes);
    }
  }
}

std::size_t cover_size(const Graph& g, const Bitset& p) {
  std::vector<std::size_t> order;
  std::vector<std::size_t> bound;
  clique_cover(g, p, order, bound);
  return bound.empty() ? 0 : bound.back();
}

// Maximum independent set in g == maximum clique in the complement.
class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : g_(g), nonadj_(complement_rows(g)) {}

  std::size_t solve(const Bitset& candidates, std::size_t floor, std::size_t stop_at) {
    best_ = floor;
    stop_at_ = stop_at;
    done_ = false;
    current_.clear();
    expand(candidates);
    return best_;
  }

 private:
  void expand(Bitset p) {
    std::vector<std::size_t> order;
    std::vector<std::size_t> bound;
    clique_cover(g_, p, order, bound);
    for (std::size_t i = order.size(); i-- > 0;) {
      if (current_.size() + bound[i] <= best_) return;
      const std::size_t v = order[i];
      current_.push_back(v);
      Bitset next = p & nonadj_[v];
      if (next.none()) {
        if (current_.size() > best_) {
          best_ = current_.size();
          if (best_ >= stop_at_) done_ = true;
        }
      } else {
        expand(std::move(next));
      }
      current_.pop_back();
      if (done_) return;
      p.reset(v);
    }
  }

  const Graph& g_;
  std::vector<Bitset> nonadj_;
  std::vector<std::size_t> current_;
  std::size_t best_ = 0;
  std::size_t stop_at_ = 0;
  bool done_ = false;
};

}  // namespace

std::size_t independence_number(const Graph& g, std::size_t cap) {
  check_cap(g, cap, "independence_number");
  if (g.num_vertices() == 0) return 0;
  IndependentSetSearch search(g);
  return search.solve(g.all_vertices(), 0, g.num_vertices() + 1);
}

bool has_independent_set(const Graph& g, const Bitset& candidates, std::size_t target) {
  if (target == 0) return true;
  if (candidates.count() < target) return false;
  IndependentSetSearch search(g);
  return search.solve(candidates, target - 1, target) >= target;
}

MisResult maximum_independent_set(const Graph& g, std::size_t cap) {
  MisResult result;
  result.size = independence_number(g, cap);

  // Lexicographically least witness: take each vertex in ascending order
  // whenever the remaining budget can still be completed above it.
  IndependentSetSearch search(g);
  const auto nonadj = complement_rows(g);
  Bitset candidates = g.all_vertices();
  std::size_t need = result.size;
  for (std::size_t v = 0; v < g.num_vertices() && need > 0; ++v) {
    if (!candidates.test(v)) continue;
    Bitset next = candidates & nonadj[v];
    next.clear_through(v);
    const bool completes =
        need == 1 || (next.count() >= need - 1 && search.solve(next, need - 2, need - 1) >= need - 1);
    if (completes) {
      result.witness.push_back(v);
      candidates = std::move(next);
      --need;
    } else {
      candidates.reset(v);
    }
  }
  if (need != 0) throw InvariantError("maximum_independent_set: witness reconstruction failed");
  return result;
}

namespace {

class IndependentSetEnumerator {
 public:
  IndependentSetEnumerator(const Graph& g, std::size_t min_size,
                           const std::function<bool(std::span<const std::size_t>)>& visit)
      : g_(g), nonadj_(complement_rows(g)), min_size_(min_size), visit_(visit) {}

  void run() { recurse(g_.all_vertices()); }

 private:
  void recurse(const Bitset& p) {
    if (current_.size() >= min_size_ && !visit_(current_)) {
      stopped_ = true;
      return;
    }
    if (p.none()) return;
    if (current_.size() + cover_size(g_, p) < min_size_) return;
    std::size_t remaining = p.count();
    for (std::size_t v = p.first(); v != Bitset::npos; v = p.next(v + 1)) {
      if (current_.size() + remaining < min_size_) return;
      --remaining;
      Bitset next = p & nonadj_[v];
      next.clear_through(v);
      current_.push_back(v);
      recurse(next);
      current_.pop_back();
      if (stopped_) return;
    }
  }

  const Graph& g_;
  std::vector<Bitset> nonadj_;
  std::size_t min_size_;
  const std::function<bool(std::span<const std::size_t>)>& visit_;
  std::vector<std::size_t> current_;
  bool stopped_ = false;
};

class InducedMatchingSearch {
 public:
  explicit InducedMatchingSearch(const Graph& g) : g_(g) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      Bitset row = g.neighbors(v);
      row.set(v);
      closed_.push_back(std::move(row));
    }
  }

  std::size_t run() {
    recurse(g_.all_vertices(), 0);
    return best_;
  }

 private:
  void recurse(Bitset avail, std::size_t matched) {
    // Vertices that can still be matched: those with an available neighbour.
    std::size_t live = 0;
    std::size_t pivot = Bitset::npos;
    avail.for_each([&](std::size_t v) {
      if (g_.neighbors(v).intersects(avail)) {
        ++live;
        if (pivot == Bitset::npos) pivot = v;
      }
    });
    if (pivot == Bitset::npos) {
      best_ = std::max(best_, matched);
      return;
    }
    if (matched + live / 2 <= best_) return;

    const Bitset partners = g_.neighbors(pivot) & avail;
    partners.for_each([&](std::size_t x) {
      Bitset next = avail;
      next.subtract(closed_[pivot]);
      next.subtract(closed_[x]);
      recurse(std::move(next), matched + 1);
    });
    avail.reset(pivot);
    recurse(std::move(avail), matched);
  }

  const Graph& g_;
  std::vector<Bitset> closed_;
  std::size_t best_ = 0;
};

}  // namespace

void for_each_independent_set(const Graph& g, std::size_t min_size,
                              const std::function<bool(std::span<const std::size_t>)>& visit) {
  IndependentSetEnumerator(g, min_size, visit).run();
}

std::size_t induced_matching_number(const Graph& g, std::size_t cap) {
  check_cap(g, cap, "induced_matching_number");
  return InducedMatchingSearch(g).run();
}

}  // namespace kneserlab
