#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rumple/errors.hpp"
#include "rumple/iso.hpp"
#include "rumple/magma.hpp"

namespace rumple {

// Rows of a left quasigroup are permutations, so the raw space is (n!)^n.
// The defaults keep exhaustive runs within desk time; latin tables thin out
// fast enough that the column-constrained search reaches further.
constexpr int kMaxEnumOrder = 8;
constexpr int kMaxLatinEnumOrder = 11;

struct SearchConfig {
  int order = 0;
  bool latin_only = false;
  bool count_only = false;
  int worker_count = 1;
  std::optional<std::uint64_t> node_cap;
};

struct SearchResult {
  std::uint64_t count = 0;
  std::vector<Magma> tables;  // canonical forms, lexicographically ascending
  std::uint64_t nodes = 0;    // attempted cell assignments across the run
};

// Delivered once per finished task in ascending task id order.  Ids are
// stable across runs with the same order and latin flag, which is what makes
// a checkpoint written by one run usable by the next.
struct TaskReport {
  std::uint64_t task_id = 0;
  std::uint64_t count = 0;
  std::vector<Magma> tables;  // empty when count_only
};
using TaskObserver = std::function<void(const TaskReport&)>;

namespace detail {

struct NodeBudget {
  std::atomic<std::uint64_t> total{0};
  std::atomic<bool> tripped{false};
  std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
};

struct cap_trip {};

// Partial table plus the propagation machinery for the left Rump law.
// Assignments and equality links are trailed so a subtree unwinds in O(work).
struct SearchState {
  int n;
  bool latin;
  std::vector<int> flat;  // row-major, kUnset = undecided
  std::vector<std::uint32_t> row_used, col_used;
  std::vector<std::vector<int>> links;  // cell -> cells forced equal to it
  std::vector<std::pair<int, int>> link_trail;
  std::vector<int> cell_trail;

  SearchState(int order, bool latin_only)
      : n(order),
        latin(latin_only),
        flat(static_cast<std::size_t>(order) * order, kUnset),
        row_used(static_cast<std::size_t>(order), 0),
        col_used(static_cast<std::size_t>(order), 0),
        links(flat.size()) {}

  struct Mark {
    std::size_t cells, edges;
  };
  Mark mark() const { return {cell_trail.size(), link_trail.size()}; }

  bool place(int cell, int v) {
    if (flat[cell] != kUnset) return flat[cell] == v;
    std::uint32_t bit = 1u << v;
    if (row_used[cell / n] & bit) return false;
    if (latin && (col_used[cell % n] & bit)) return false;
    flat[cell] = v;
    row_used[cell / n] |= bit;
    if (latin) col_used[cell % n] |= bit;
    cell_trail.push_back(cell);
    return true;
  }

  void link(int e1, int e2) {
    auto& l = links[e1];
    if (std::find(l.begin(), l.end(), e2) != l.end()) return;
    l.push_back(e2);
    links[e2].push_back(e1);
    link_trail.emplace_back(e1, e2);
  }

  // (x*y)*(x*z) = (y*x)*(y*z) in table form: with a = T[x][y], b = T[x][z],
  // c = T[y][x], d = T[y][z] the law reads T[a][b] == T[c][d].  Once the four
  // address cells are decided the equality either checks, forces the one
  // unknown side, or is linked to fire when either side is placed.
  bool wake(int x, int y, int z) {
    if (x == y) return true;
    int a = flat[x * n + y];
    if (a == kUnset) return true;
    int b = flat[x * n + z];
    if (b == kUnset) return true;
    int c = flat[y * n + x];
    if (c == kUnset) return true;
    int d = flat[y * n + z];
    if (d == kUnset) return true;
    int e1 = a * n + b, e2 = c * n + d;
    if (e1 == e2) return true;
    if (flat[e1] != kUnset) return place(e2, flat[e1]);
    if (flat[e2] != kUnset) return place(e1, flat[e2]);
    link(e1, e2);
    return true;
  }

  // Consequences of a placed cell: equality links recorded on it earlier,
  // plus every law instance with the cell in an address slot.  The (x,y) and
  // (y,x) slots give the same instance, so three scans cover all four.
  bool settle(int cell) {
    int v = flat[cell];
    for (int other : links[cell])
      if (!place(other, v)) return false;
    int p = cell / n, q = cell % n;
    for (int t = 0; t < n; ++t) {
      if (!wake(p, q, t)) return false;
      if (!wake(p, t, q)) return false;
      if (!wake(t, p, q)) return false;
    }
    return true;
  }

  bool assign(int cell, int v) {
    std::size_t head = cell_trail.size();
    if (!place(cell, v)) return false;
    while (head < cell_trail.size())
      if (!settle(cell_trail[head++])) return false;
    return true;
  }

  void undo(const Mark& m) {
    while (link_trail.size() > m.edges) {
      auto [e1, e2] = link_trail.back();
      link_trail.pop_back();
      links[e1].pop_back();
      links[e2].pop_back();
    }
    while (cell_trail.size() > m.cells) {
      int cell = cell_trail.back();
      cell_trail.pop_back();
      std::uint32_t bit = 1u << flat[cell];
      flat[cell] = kUnset;
      row_used[cell / n] &= ~bit;
      if (latin) col_used[cell % n] &= ~bit;
    }
  }

  int next_free(int cell) const {
    int total = n * n;
    while (cell < total && flat[cell] != kUnset) ++cell;
    return cell;
  }
};

// Decisions that rebuild one task's leading rows; replaying them repeats the
// forced fills identically.  checked = row boundaries the symmetry cut
// already cleared during task generation.
struct TaskSeed {
  std::vector<std::pair<int, int>> choices;
  int checked = 0;
};

struct SearchDriver {
  SearchState st;
  NodeBudget* budget;
  std::uint64_t pending_nodes = 0;
  int stop_cell;
  std::function<void(int)> sink;                    // gets the cleared boundary
  std::vector<std::pair<int, int>>* picks = nullptr;  // decision log, if wanted

  SearchDriver(int order, bool latin_only, NodeBudget* b)
      : st(order, latin_only), budget(b), stop_cell(order * order) {}

  void note_node() {
    if (++pending_nodes < 4096) return;
    flush();
    if (budget->tripped.load(std::memory_order_relaxed)) throw cap_trip{};
  }

  void flush() {
    if (pending_nodes == 0) return;
    std::uint64_t t = budget->total.fetch_add(pending_nodes) + pending_nodes;
    pending_nodes = 0;
    if (t > budget->cap) budget->tripped.store(true, std::memory_order_relaxed);
  }

  // Row-major DFS with an orderly cut: checked rows are known minimal under
  // every relabeling that keeps them among the leading rows, and completed
  // rows are immutable deeper in the tree, so each boundary is tested once
  // per path.  A relabeled copy of the leading rows depends on those rows
  // alone, hence a smaller copy rules out every completion.  At cell == n*n
  // the r = n test is exact canonicity, so whatever reaches the sink is its
  // own canonical form, each class exactly once.
  void dfs(int cell, int checked) {
    cell = st.next_free(cell);
    int n = st.n;
    int row = cell == n * n ? n : cell / n;
    for (int r = checked + 1; r <= row; ++r)
      if (prefix_has_smaller_relabel(st.flat.data(), n, r)) return;
    if (cell >= stop_cell) {
      sink(row);
      return;
    }
    std::uint32_t used = st.row_used[cell / n];
    if (st.latin) used |= st.col_used[cell % n];
    for (int v = 0; v < n; ++v) {
      if (used & (1u << v)) continue;
      note_node();
      auto m = st.mark();
      if (st.assign(cell, v)) {
        if (picks) picks->push_back({cell, v});
        dfs(cell + 1, row);
        if (picks) picks->pop_back();
      }
      st.undo(m);
    }
  }
};

inline SearchResult run_search(const SearchConfig& cfg, bool latin, const TaskObserver* obs,
                               const std::vector<std::uint64_t>& completed) {
  int n = cfg.order;
  int max_n = latin ? kMaxLatinEnumOrder : kMaxEnumOrder;
  if (n < 1 || n > max_n)
    fail(errc::bound_exceeded,
         "order " + std::to_string(n) + " outside 1.." + std::to_string(max_n));
  if (cfg.worker_count < 1) fail(errc::bound_exceeded, "worker count must be positive");

  NodeBudget budget;
  if (cfg.node_cap) budget.cap = *cfg.node_cap;

  // One task per surviving assignment of the first two rows, in DFS order,
  // which is lexicographic on the table prefix.  Every emitted table matches
  // its own task's prefix, so tasks partition the output and ascending task
  // order is ascending table order.
  std::vector<TaskSeed> seeds;
  {
    SearchDriver gen(n, latin, &budget);
    std::vector<std::pair<int, int>> log;
    gen.picks = &log;
    gen.stop_cell = std::min(2, n) * n;
    gen.sink = [&](int checked) { seeds.push_back({log, checked}); };
    try {
      gen.dfs(0, 0);
      gen.flush();
    } catch (const cap_trip&) {
      gen.flush();
    }
  }

  std::vector<std::uint64_t> done(completed);
  std::sort(done.begin(), done.end());
  done.erase(std::unique(done.begin(), done.end()), done.end());
  if (!done.empty() && done.back() >= seeds.size())
    fail(errc::bound_exceeded, "checkpoint names task " + std::to_string(done.back()) +
                                   " but only " + std::to_string(seeds.size()) + " exist");
  std::vector<std::uint64_t> run;
  for (std::uint64_t t = 0; t < seeds.size(); ++t)
    if (!std::binary_search(done.begin(), done.end(), t)) run.push_back(t);

  SearchResult out;
  std::mutex deliver_mu;
  std::map<std::size_t, TaskReport> parked;
  std::size_t next_seq = 0;
  auto deliver = [&](std::size_t seq, TaskReport rep) {
    std::lock_guard<std::mutex> lk(deliver_mu);
    parked.emplace(seq, std::move(rep));
    while (!parked.empty() && parked.begin()->first == next_seq) {
      TaskReport& r = parked.begin()->second;
      if (obs && *obs) (*obs)(r);
      out.count += r.count;
      out.tables.insert(out.tables.end(), std::make_move_iterator(r.tables.begin()),
                        std::make_move_iterator(r.tables.end()));
      parked.erase(parked.begin());
      ++next_seq;
    }
  };

  std::atomic<std::size_t> cursor{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto work = [&]() {
    SearchDriver drv(n, latin, &budget);
    try {
      for (;;) {
        std::size_t seq = cursor.fetch_add(1);
        if (seq >= run.size()) break;
        if (budget.tripped.load(std::memory_order_relaxed)) throw cap_trip{};
        const TaskSeed& seed = seeds[run[seq]];
        TaskReport rep;
        rep.task_id = run[seq];
        auto base = drv.st.mark();
        for (auto [cell, v] : seed.choices)
          if (!drv.st.assign(cell, v))
            throw std::logic_error("task seed replay hit a contradiction");
        drv.sink = [&](int) {
          Magma M{n, drv.st.flat};
          // 2-divisibility is a theorem for finite tables with the left Rump
          // law; it is not part of the search constraints, so its failure
          // means the engine is broken.
          if (!is_uniquely_2_divisible(M))
            throw std::logic_error("enumerated Rump table with non-bijective squaring");
          ++rep.count;
          if (!cfg.count_only) rep.tables.push_back(std::move(M));
        };
        drv.dfs(0, seed.checked);
        drv.st.undo(base);
        deliver(seq, std::move(rep));
      }
      drv.flush();
    } catch (const cap_trip&) {
      drv.flush();
    } catch (...) {
      drv.flush();
      std::lock_guard<std::mutex> lk(err_mu);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.worker_count),
                                              std::max<std::size_t>(run.size(), 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  out.nodes = budget.total.load();
  if (budget.tripped.load() || out.nodes > budget.cap)
    fail(errc::node_cap_exceeded, "node budget " + std::to_string(budget.cap) + " exhausted");

  // Safety net over the orderly argument: sink-level canonicity should make
  // duplicates and disorder impossible.
  if (!cfg.count_only) {
    if (out.count != out.tables.size())
      throw std::logic_error("enumeration count disagrees with table list");
    for (std::size_t i = 0; i + 1 < out.tables.size(); ++i)
      if (!(out.tables[i] < out.tables[i + 1]))
        throw std::logic_error("enumeration emitted duplicate or out-of-order canonical forms");
  }
  return out;
}

}  // namespace detail

inline SearchResult enumerate_rumples(const SearchConfig& cfg, const TaskObserver& on_task,
                                      const std::vector<std::uint64_t>& completed_tasks = {}) {
  return detail::run_search(cfg, cfg.latin_only, &on_task, completed_tasks);
}

inline SearchResult enumerate_rumples(const SearchConfig& cfg) {
  return detail::run_search(cfg, cfg.latin_only, nullptr, {});
}

inline SearchResult enumerate_latin_rumples(const SearchConfig& cfg, const TaskObserver& on_task,
                                            const std::vector<std::uint64_t>& completed_tasks = {}) {
  return detail::run_search(cfg, true, &on_task, completed_tasks);
}

inline SearchResult enumerate_latin_rumples(const SearchConfig& cfg) {
  return detail::run_search(cfg, true, nullptr, {});
}

}  // namespace rumple
