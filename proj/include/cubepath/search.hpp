#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "core.hpp"
#include "paths.hpp"
#include "symmetry.hpp"

namespace cubepath {

enum class SearchStatus { found, exhausted, limit_reached };

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::limit_reached: return "limit-reached";
  }
  return "?";
}

struct SearchLimits {
  std::uint64_t node_limit = 0;  // 0: no limit
  double time_limit_secs = 0;    // 0: no limit
};

namespace detail {

class Clock {
 public:
  explicit Clock(const SearchLimits& lim) : limits_(lim), start_(std::chrono::steady_clock::now()) {}

  // Called once per node.
  bool expired(std::uint64_t nodes) {
    if (limits_.node_limit && nodes > limits_.node_limit) return true;
    if (limits_.time_limit_secs > 0 && (nodes & 1023) == 0) {
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (s > limits_.time_limit_secs) timed_out_ = true;
    }
    return timed_out_;
  }

 private:
  SearchLimits limits_;
  std::chrono::steady_clock::time_point start_;
  bool timed_out_ = false;
};

// Exhaustive search for a loose path from a to b covering every vertex of
// Q(d) except the omitted ones, phrased as a choice of lines.
//
// A set F of lines is the edge set of such a path iff
//   (1) omitted vertices lie on no line of F, a and b on exactly one, every
//       other vertex on one or two;
//   (2) the graph on F joining lines that share a vertex (a "joint") is a
//       forest, lines through a or b have at most one joint, others at most two;
//   (3) |F| = (n-1)/2 where n is the number of vertices to cover.
// Two lines of Q(d) meet in at most one vertex. Under (1) and (2) every
// component of F is a loose path covering 2|F_c|+1 vertices, so (3) forces a
// single component. Its end lines are the only lines with fewer than two
// joints, so a and b sit on different end lines, away from the joints, which
// is exactly a loose path from a to b up to the first-two/last-two reading.
// The one exception is a and b on a common line; that line is removed up
// front unless it is the whole path.
//
// The search branches on a vertex still below its lower degree bound and
// tries each undecided incident line, marking earlier alternatives unused.
// Every solution contains some line through that vertex, so the branching is
// complete; the propagation rules below only remove assignments that violate
// (1)-(3), so a run that ends without a solution is a proof of absence.
class LineSearch {
 public:
  struct Options {
    bool propagate = true;
    bool class_counts = true;
    bool connectivity = true;
    std::uint64_t seed = 0;
  };

  LineSearch(const CubeIndex& cube, int a, int b, const std::vector<int>& omitted, Options opt)
      : cube_(cube), opt_(opt), a_(a), b_(b) {
    int n = cube.vertex_count();
    int L = cube.line_count();
    st_.assign(L, undecided);
    incnt_.assign(n, 0);
    undcnt_.assign(n, 0);
    for (int v = 0; v < n; ++v) undcnt_[v] = static_cast<int>(cube.incident(v).size());
    lo_.assign(n, 1);
    hi_.assign(n, 2);
    joints_.assign(L, 0);
    cap_.assign(L, 2);
    uf_par_.resize(L);
    std::iota(uf_par_.begin(), uf_par_.end(), 0);
    uf_size_.assign(L, 1);
    cover_ = n;
    for (int x : omitted) {
      lo_[x] = hi_[x] = 0;
      --cover_;
    }
    lo_[a] = hi_[a] = 1;
    lo_[b] = hi_[b] = 1;
    for (int l : cube.incident(a)) cap_[l] = 1;
    for (int l : cube.incident(b)) cap_[l] = 1;
    target_ = (cover_ - 1) / 2;
    rank_.resize(n);
    std::iota(rank_.begin(), rank_.end(), 0);
    if (opt_.seed) {
      std::mt19937_64 rng(opt_.seed);
      std::shuffle(rank_.begin(), rank_.end(), rng);
    }
    if (opt_.class_counts) setup_classes();
  }

  SearchStatus run(const SearchLimits& limits, std::vector<int>& path) {
    path.clear();
    nodes_ = 0;
    if (a_ == b_ || cover_ % 2 == 0 || lo_[a_] == 0 || lo_[b_] == 0) return SearchStatus::exhausted;
    if (target_ == 1) return single_line(path);
    for (int l : cube_.incident(a_)) {
      const auto& m = cube_.line(l);
      if (std::find(m.begin(), m.end(), b_) != m.end() && !set_line(l, out_)) return SearchStatus::exhausted;
    }
    for (int f = 0; f < static_cast<int>(class_target_.size()); ++f)
      for (int k = 0; k < 3; ++k)
        if (class_target_[f][k] < 0) return SearchStatus::exhausted;
    Clock clock(limits);
    clock_ = &clock;
    aborted_ = false;
    bool ok = dfs();
    clock_ = nullptr;
    if (ok) {
      path = extract();
      return SearchStatus::found;
    }
    return aborted_ ? SearchStatus::limit_reached : SearchStatus::exhausted;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  enum : std::uint8_t { undecided = 0, in_ = 1, out_ = 2 };
  enum : std::uint8_t { k_line, k_union, k_lo, k_hi };
  struct TrailEntry {
    std::uint8_t kind;
    int x;
    int old;
  };

  // Lines of Q(d) meet every residue class of c.v mod 3 exactly once when all
  // c_i are nonzero. Counting vertices of class k with multiplicity over F
  // gives |F| = (covered vertices of class k) + (joints of class k), so the
  // number of joints in each class is fixed in advance.
  void setup_classes() {
    int d = cube_.dim();
    int n = cube_.vertex_count();
    if (d == 0) return;
    for (int mask = 0; mask < (1 << (d - 1)); ++mask) {
      std::vector<int> c(d, 1);
      for (int i = 1; i < d; ++i)
        if (mask >> (i - 1) & 1) c[i] = 2;
      std::vector<std::uint8_t> col(n);
      std::array<int, 3> covered{0, 0, 0};
      for (int v = 0; v < n; ++v) {
        int s = 0, t = v;
        for (int i = d - 1; i >= 0; --i) {
          s += c[i] * (t % 3);
          t /= 3;
        }
        col[v] = static_cast<std::uint8_t>(s % 3);
        if (lo_[v] >= 1) ++covered[col[v]];
      }
      std::array<int, 3> jt{};
      for (int k = 0; k < 3; ++k) jt[k] = target_ - covered[k];
      class_of_.push_back(col);
      class_target_.push_back(jt);
      class_joints_.push_back({0, 0, 0});
    }
  }

  SearchStatus single_line(std::vector<int>& path) {
    for (int l : cube_.incident(a_)) {
      const auto& m = cube_.line(l);
      if (std::find(m.begin(), m.end(), b_) == m.end()) continue;
      int mid = m[0] + m[1] + m[2] - a_ - b_;
      if (lo_[mid] == 1) {
        path = {a_, mid, b_};
        return SearchStatus::found;
      }
    }
    return SearchStatus::exhausted;
  }

  int find(int x) const {
    while (uf_par_[x] != x) x = uf_par_[x];
    return x;
  }

  int other_in(int v, int except) const {
    for (int m : cube_.incident(v))
      if (m != except && st_[m] == in_) return m;
    return -1;
  }

  // Always completes its bookkeeping so that undo stays exact; the return
  // value reports whether a constraint broke.
  bool set_line(int l, std::uint8_t s) {
    st_[l] = s;
    trail_.push_back({k_line, l, 0});
    const auto& m = cube_.line(l);
    for (int v : m) --undcnt_[v];
    bool ok = true;
    if (s == in_) {
      ++nin_;
      for (int v : m) {
        ++incnt_[v];
        if (incnt_[v] > hi_[v]) ok = false;
        if (incnt_[v] == 2) {
          int other = other_in(v, l);
          int r1 = find(l), r2 = find(other);
          if (r1 == r2) {
            ok = false;
          } else {
            if (uf_size_[r1] > uf_size_[r2]) std::swap(r1, r2);
            uf_par_[r1] = r2;
            uf_size_[r2] += uf_size_[r1];
            trail_.push_back({k_union, r1, 0});
          }
          ++joints_[l];
          ++joints_[other];
          if (joints_[l] > cap_[l] || joints_[other] > cap_[other]) ok = false;
          for (std::size_t f = 0; f < class_of_.size(); ++f) {
            int k = class_of_[f][v];
            if (++class_joints_[f][k] > class_target_[f][k]) ok = false;
          }
        }
      }
      if (nin_ > target_) ok = false;
    }
    return ok;
  }

  void set_lo(int v, int x) {
    trail_.push_back({k_lo, v, lo_[v]});
    lo_[v] = x;
  }

  void set_hi(int v, int x) {
    trail_.push_back({k_hi, v, hi_[v]});
    hi_[v] = x;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      TrailEntry e = trail_.back();
      trail_.pop_back();
      if (e.kind == k_union) {
        int r2 = uf_par_[e.x];
        uf_size_[r2] -= uf_size_[e.x];
        uf_par_[e.x] = e.x;
      } else if (e.kind == k_lo) {
        lo_[e.x] = e.old;
      } else if (e.kind == k_hi) {
        hi_[e.x] = e.old;
      } else {
        int l = e.x;
        const auto& m = cube_.line(l);
        if (st_[l] == in_) {
          --nin_;
          for (int v : m) {
            if (incnt_[v] == 2) {
              int other = other_in(v, l);
              --joints_[other];
              --joints_[l];
              for (std::size_t f = 0; f < class_of_.size(); ++f) --class_joints_[f][class_of_[f][v]];
            }
            --incnt_[v];
          }
        }
        for (int v : m) ++undcnt_[v];
        st_[l] = undecided;
      }
    }
  }

  // Fixpoint of the forcing rules. Each rule only discards assignments that
  // cannot be extended to a set F satisfying (1)-(3).
  bool propagate() {
    int n = cube_.vertex_count();
    int L = cube_.line_count();
    bool changed = true;
    while (changed) {
      changed = false;
      // Degree bounds: a vertex at its upper bound excludes its other lines; a
      // vertex that needs all its remaining lines takes them.
      for (int v = 0; v < n; ++v) {
        if (incnt_[v] + undcnt_[v] < lo_[v] || incnt_[v] > hi_[v]) return false;
        if (undcnt_[v] > 0 && incnt_[v] == hi_[v]) {
          for (int m : cube_.incident(v))
            if (st_[m] == undecided && !set_line(m, out_)) return false;
          changed = true;
        } else if (undcnt_[v] > 0 && incnt_[v] + undcnt_[v] == lo_[v]) {
          for (int m : cube_.incident(v))
            if (st_[m] == undecided && !set_line(m, in_)) return false;
          changed = true;
        }
        if (undcnt_[v] == 0 && hi_[v] > incnt_[v]) set_hi(v, incnt_[v]);
      }
      // A chosen line ends with exactly cap joints: an end line of the path
      // has one, every other line two.
      for (int l = 0; l < L; ++l) {
        if (st_[l] != in_) continue;
        int nj = 0, single = 0;
        const auto& m = cube_.line(l);
        for (int v : m) {
          if (incnt_[v] == 2)
            ++nj;
          else if (hi_[v] == 1)
            ++single;
        }
        if (nj > cap_[l] || single > 3 - cap_[l]) return false;
        if (nj == cap_[l])
          for (int v : m)
            if (incnt_[v] == 1 && hi_[v] > 1) {
              set_hi(v, 1);
              changed = true;
            }
        if (single == 3 - cap_[l])
          for (int v : m)
            if (incnt_[v] == 1 && hi_[v] > 1 && lo_[v] < 2) {
              set_lo(v, 2);
              changed = true;
            }
      }
      // An undecided line that would break a degree bound, a joint cap, or
      // close a cycle can never be chosen.
      for (int l = 0; l < L; ++l) {
        if (st_[l] != undecided) continue;
        bool bad = false;
        int nj = 0, nr = 0;
        std::array<int, 3> roots{};
        for (int v : cube_.line(l)) {
          if (incnt_[v] >= hi_[v]) {
            bad = true;
            break;
          }
          if (incnt_[v] == 1) {
            ++nj;
            int other = other_in(v, -1);
            if (joints_[other] >= cap_[other]) {
              bad = true;
              break;
            }
            int r = find(other);
            for (int i = 0; i < nr; ++i)
              if (roots[i] == r) bad = true;
            roots[nr++] = r;
          }
        }
        if (!bad && nj > cap_[l]) bad = true;
        if (bad) {
          if (!set_line(l, out_)) return false;
          changed = true;
        }
      }
    }
    if (opt_.class_counts) {
      // Joints still possible per class must reach the fixed class totals.
      for (std::size_t f = 0; f < class_of_.size(); ++f) {
        std::array<int, 3> possible{0, 0, 0};
        for (int v = 0; v < n; ++v)
          if (hi_[v] >= 2 && incnt_[v] + undcnt_[v] >= 2) ++possible[class_of_[f][v]];
        for (int k = 0; k < 3; ++k)
          if (possible[k] < class_target_[f][k]) return false;
      }
    }
    if (opt_.connectivity && !connected()) return false;
    return true;
  }

  // Vertices that must be covered have to be linked through lines not yet excluded.
  bool connected() {
    int n = cube_.vertex_count();
    seen_.assign(n, 0);
    stack_.clear();
    stack_.push_back(a_);
    seen_[a_] = 1;
    while (!stack_.empty()) {
      int u = stack_.back();
      stack_.pop_back();
      for (int m : cube_.incident(u))
        if (st_[m] != out_)
          for (int w : cube_.line(m))
            if (!seen_[w]) {
              seen_[w] = 1;
              stack_.push_back(w);
            }
    }
    for (int v = 0; v < n; ++v)
      if (lo_[v] >= 1 && !seen_[v]) return false;
    return true;
  }

  // Constraint violations only, for the unpropagated mode: every chosen line
  // was accepted by set_line, so only the lower bounds remain to be checked.
  bool leaf_ok() const {
    if (nin_ != target_) return false;
    for (int v = 0; v < cube_.vertex_count(); ++v)
      if (incnt_[v] < lo_[v]) return false;
    return true;
  }

  int choose_vertex() const {
    int best = -1, best_score = 1 << 30;
    for (int v = 0; v < cube_.vertex_count(); ++v) {
      if (incnt_[v] >= lo_[v]) continue;
      int need = lo_[v] - incnt_[v];
      int adj = 0;
      for (int m : cube_.incident(v))
        if (st_[m] == undecided)
          for (int w : cube_.line(m))
            if (incnt_[w] > 0) ++adj;
      int score = (undcnt_[v] - need) * 64 - adj;
      if (score < best_score || (score == best_score && rank_[v] < rank_[best])) {
        best_score = score;
        best = v;
      }
    }
    return best;
  }

  bool dfs() {
    ++nodes_;
    if (clock_->expired(nodes_)) {
      aborted_ = true;
      return false;
    }
    if (opt_.propagate && !propagate()) return false;
    int v = choose_vertex();
    if (v < 0) return opt_.propagate ? nin_ == target_ : leaf_ok();
    std::vector<int> cand;
    for (int m : cube_.incident(v))
      if (st_[m] == undecided) cand.push_back(m);
    std::size_t mark = trail_.size();
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (aborted_) break;
      std::size_t here = trail_.size();
      if (st_[cand[k]] == out_) continue;
      if (st_[cand[k]] == in_) {
        // forced in by the previous exclusions: no alternatives remain
        bool r = dfs();
        if (!r) undo_to(mark);
        return r;
      }
      if (set_line(cand[k], in_) && dfs()) return true;
      undo_to(here);
      if (aborted_) break;
      if (!set_line(cand[k], out_)) break;
      if (opt_.propagate && k + 1 < cand.size() && !propagate()) break;
    }
    undo_to(mark);
    return false;
  }

  std::vector<int> extract() const {
    std::vector<int> chosen;
    for (int l = 0; l < cube_.line_count(); ++l)
      if (st_[l] == in_) chosen.push_back(l);
    std::vector<int> path{a_};
    int cur = -1;
    for (int l : cube_.incident(a_))
      if (st_[l] == in_) cur = l;
    int prev_joint = a_;
    while (cur >= 0) {
      const auto& m = cube_.line(cur);
      int joint = -1;
      for (int v : m)
        if (v != prev_joint && incnt_[v] == 2) joint = v;
      int end = joint >= 0 ? joint : b_;
      int mid = m[0] + m[1] + m[2] - prev_joint - end;
      path.push_back(mid);
      path.push_back(end);
      if (joint < 0) break;
      cur = other_in(joint, cur);
      prev_joint = joint;
    }
    return path;
  }

  const CubeIndex& cube_;
  Options opt_;
  int a_, b_;
  int cover_ = 0, target_ = 0, nin_ = 0;
  std::vector<std::uint8_t> st_;
  std::vector<int> incnt_, undcnt_, lo_, hi_, joints_, cap_, uf_par_, uf_size_, rank_;
  std::vector<std::vector<std::uint8_t>> class_of_;
  std::vector<std::array<int, 3>> class_target_, class_joints_;
  std::vector<TrailEntry> trail_;
  std::vector<char> seen_;
  std::vector<int> stack_;
  std::uint64_t nodes_ = 0;
  Clock* clock_ = nullptr;
  bool aborted_ = false;
};

// Backtracking over edges extending the current tail of the path, with the
// most constrained continuation tried first.
class TailSearch {
 public:
  struct Options {
    bool prune = true;
    std::uint64_t seed = 0;
  };

  // b < 0 leaves the end free.
  TailSearch(const CubeIndex& cube, int a, int b, const std::vector<int>& omitted, Options opt)
      : cube_(cube), opt_(opt), a_(a), b_(b) {
    int n = cube.vertex_count();
    free_.assign(n, 1);
    for (int x : omitted) free_[x] = 0;
    remaining_ = 0;
    for (int v = 0; v < n; ++v) remaining_ += free_[v];
    rank_.resize(n);
    std::iota(rank_.begin(), rank_.end(), 0);
    if (opt_.seed) {
      std::mt19937_64 rng(opt_.seed);
      std::shuffle(rank_.begin(), rank_.end(), rng);
    }
  }

  SearchStatus run(const SearchLimits& limits, std::vector<int>& path) {
    path_.clear();
    nodes_ = 0;
    if (!free_[a_] || (b_ >= 0 && (!free_[b_] || b_ == a_))) return SearchStatus::exhausted;
    // Every step covers two new vertices, so the count beyond the start must be even.
    if (opt_.prune && (remaining_ - 1) % 2 != 0) return SearchStatus::exhausted;
    Clock clock(limits);
    clock_ = &clock;
    aborted_ = false;
    take(a_);
    path_.push_back(a_);
    bool ok = dfs();
    clock_ = nullptr;
    if (ok) {
      path = path_;
      return SearchStatus::found;
    }
    return aborted_ ? SearchStatus::limit_reached : SearchStatus::exhausted;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Move {
    int mid, next, score;
  };

  void take(int v) {
    free_[v] = 0;
    --remaining_;
  }
  void give(int v) {
    free_[v] = 1;
    ++remaining_;
  }

  bool usable(int mid, int next) const {
    if (!free_[mid] || !free_[next]) return false;
    if (b_ >= 0) {
      if (mid == b_) return false;
      if (next == b_ && remaining_ != 2) return false;
    }
    return true;
  }

  int count_moves(int tail) const {
    int c = 0;
    for (int l : cube_.incident(tail)) {
      const auto& m = cube_.line(l);
      int u = -1, w = -1;
      for (int v : m)
        if (v != tail) (u < 0 ? u : w) = v;
      c += usable(u, w) + usable(w, u);
    }
    return c;
  }

  // A vertex not yet on the path is covered later by some line whose other two
  // members are then new, or are the current tail at the next step. If no line
  // through it has that shape now, it never will, since vertices only get used.
  bool coverable(int tail) const {
    for (int v = 0; v < cube_.vertex_count(); ++v) {
      if (!free_[v]) continue;
      bool ok = false;
      for (int l : cube_.incident(v)) {
        bool line_ok = true;
        for (int w : cube_.line(l))
          if (w != v && !free_[w] && w != tail) line_ok = false;
        if (line_ok) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
    return true;
  }

  bool dfs() {
    ++nodes_;
    if (clock_->expired(nodes_)) {
      aborted_ = true;
      return false;
    }
    int tail = path_.back();
    if (remaining_ == 0) return b_ < 0 || tail == b_;
    if (opt_.prune && !coverable(tail)) return false;
    std::vector<Move> moves;
    for (int l : cube_.incident(tail)) {
      const auto& m = cube_.line(l);
      int u = -1, w = -1;
      for (int v : m)
        if (v != tail) (u < 0 ? u : w) = v;
      for (auto [mid, next] : {std::pair{u, w}, std::pair{w, u}}) {
        if (!usable(mid, next)) continue;
        free_[mid] = free_[next] = 0;
        remaining_ -= 2;
        int s = count_moves(next);
        free_[mid] = free_[next] = 1;
        remaining_ += 2;
        moves.push_back({mid, next, s});
      }
    }
    std::sort(moves.begin(), moves.end(), [&](const Move& p, const Move& q) {
      if (p.score != q.score) return p.score < q.score;
      return rank_[p.next] < rank_[q.next] || (p.next == q.next && rank_[p.mid] < rank_[q.mid]);
    });
    for (const auto& mv : moves) {
      take(mv.mid);
      take(mv.next);
      path_.push_back(mv.mid);
      path_.push_back(mv.next);
      if (dfs()) return true;
      path_.pop_back();
      path_.pop_back();
      give(mv.next);
      give(mv.mid);
      if (aborted_) return false;
    }
    return false;
  }

  const CubeIndex& cube_;
  Options opt_;
  int a_, b_;
  int remaining_ = 0;
  std::vector<std::uint8_t> free_;
  std::vector<int> rank_, path_;
  std::uint64_t nodes_ = 0;
  Clock* clock_ = nullptr;
  bool aborted_ = false;
};

inline std::vector<TritVector> to_vertices(const std::vector<int>& idx, int d) {
  std::vector<TritVector> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(TritVector::from_index(static_cast<std::uint64_t>(i), d));
  return out;
}

}  // namespace detail

enum class Engine { line_selection, tail_extension };

struct SearchResult {
  SearchStatus status = SearchStatus::exhausted;
  std::optional<PathCertificate> certificate;
  std::uint64_t nodes = 0;
};

// Looks for a loose path from c.a() to c.b() covering all of Q(d) except the
// remaining vertices of c. "exhausted" is a proof that none exists.
inline SearchResult find_covering_path(const Configuration& c, const SearchLimits& limits = {},
                                       Engine engine = Engine::line_selection, std::uint64_t seed = 0,
                                       const CubeIndex* cube = nullptr) {
  int d = c.dim();
  if (d < 1) throw std::invalid_argument("search needs d >= 1");
  if (d > 6) throw std::invalid_argument("exhaustive search is limited to d <= 6");
  std::optional<CubeIndex> own;
  if (!cube || cube->dim() != d) {
    own.emplace(d);
    cube = &*own;
  }
  int a = static_cast<int>(c.a().index()), b = static_cast<int>(c.b().index());
  std::vector<int> omitted;
  std::vector<TritVector> omitted_v;
  for (std::size_t i = 2; i < c.size(); ++i) {
    omitted.push_back(static_cast<int>(c[i].index()));
    omitted_v.push_back(c[i]);
  }
  SearchResult r;
  std::vector<int> path;
  if (engine != Engine::tail_extension) {
    detail::LineSearch s(*cube, a, b, omitted, {.seed = seed});
    r.status = s.run(limits, path);
    r.nodes = s.nodes();
  } else {
    detail::TailSearch s(*cube, a, b, omitted, {.prune = true, .seed = seed});
    r.status = s.run(limits, path);
    r.nodes = s.nodes();
  }
  if (r.status == SearchStatus::found) {
    auto cert = certify(LoosePath(detail::to_vertices(path, d)), omitted_v);
    auto v = verify(cert);
    if (!v) throw std::logic_error("search produced an invalid certificate: " + v.diagnostic);
    r.certificate = cert;
  }
  return r;
}

// ---- the d=4 base case ----

enum class Coverage { covered, uncovered, inconclusive };

struct CoverageLedger {
  std::map<Configuration, PathCertificate> covered;
  std::set<Configuration> uncovered;     // proven by exhaustive search
  std::set<Configuration> inconclusive;  // limits hit before a decision
  std::map<Configuration, std::uint64_t> exhaustive_nodes;
};

// All normalized configurations whose covering is witnessed by the given
// almost-Hamilton path, with the certificate mapped into each normalized frame.
inline std::vector<std::pair<Configuration, PathCertificate>> settled_by(const PathCertificate& cert) {
  std::vector<std::pair<Configuration, PathCertificate>> out;
  if (cert.omitted.size() != 2) return out;
  std::vector<LoosePath> readings;
  for (const auto& v : endpoint_variants(cert.path)) {
    readings.push_back(v.path);
    readings.push_back(reverse(v.path));
  }
  for (const auto& p : readings) {
    if (p.front() == p.back()) continue;
    Configuration raw(p.front(), p.back(), cert.omitted[0], cert.omitted[1]);
    auto nz = normalize(raw);
    PathCertificate mapped = apply(nz.symmetry, certify(p, cert.omitted));
    mapped.omitted = {nz.config.x(), nz.config.y()};
    bool dup = false;
    for (const auto& [k, _] : out) dup = dup || k == nz.config;
    if (!dup) out.emplace_back(nz.config, mapped);
  }
  return out;
}

struct BaseCaseOptions {
  SearchLimits find_limits{100000, 0};  // per attempt while looking for a path
  std::vector<std::uint64_t> seeds{0};
  SearchLimits exhaustive_limits{};     // for the final decision; default unlimited
  int jobs = 1;
  std::function<void(std::size_t covered, std::size_t remaining)> progress;
  std::function<void(const Configuration&, SearchStatus, std::uint64_t nodes)> decided;
  const std::map<Configuration, PathCertificate>* known = nullptr;  // reused after re-verification
};

namespace detail {

inline std::optional<PathCertificate> quick_find(const Configuration& c, const BaseCaseOptions& opt,
                                                 const CubeIndex& cube) {
  for (std::uint64_t seed : opt.seeds) {
    auto r = find_covering_path(c, opt.find_limits, Engine::line_selection, seed, &cube);
    if (r.certificate) return r.certificate;
    if (r.status == SearchStatus::exhausted) return std::nullopt;
  }
  return std::nullopt;
}

template <class F>
void parallel_for(std::size_t count, int jobs, F&& f) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) f(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Decides every normalized 4-configuration of Q(4): a verified certificate, or
// a proof of absence from an exhaustive run, or "inconclusive" if the
// exhaustive limits were hit. Output depends only on the options.
inline CoverageLedger run_base_case(const BaseCaseOptions& opt = {}) {
  const int d = 4;
  CubeIndex cube(d);
  auto all = enumerate_normalized_4configs(d);
  CoverageLedger ledger;
  auto settle = [&](const PathCertificate& cert) {
    for (auto& [k, c] : settled_by(cert))
      if (!ledger.covered.count(k)) ledger.covered.emplace(k, c);
  };
  if (opt.known)
    for (const auto& [k, c] : *opt.known)
      if (verify(c) && c.dim() == d) settle(c);
  auto report = [&] {
    if (opt.progress) opt.progress(ledger.covered.size(), all.size() - ledger.covered.size());
  };
  report();

  // Pass 1: bounded attempts, in batches of `jobs` configurations; results are
  // merged in configuration order so the outcome does not depend on timing.
  std::vector<Configuration> hard;
  std::size_t batch = static_cast<std::size_t>(std::max(1, opt.jobs));
  for (std::size_t i = 0; i < all.size();) {
    std::vector<Configuration> work;
    for (; i < all.size() && work.size() < batch; ++i)
      if (!ledger.covered.count(all[i])) work.push_back(all[i]);
    std::vector<std::optional<PathCertificate>> found(work.size());
    detail::parallel_for(work.size(), opt.jobs, [&](std::size_t j) { found[j] = detail::quick_find(work[j], opt, cube); });
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (ledger.covered.count(work[j])) continue;
      if (found[j])
        settle(*found[j]);
      else
        hard.push_back(work[j]);
    }
    report();
  }

  // Pass 2: everything left is run to exhaustion.
  std::vector<Configuration> todo;
  for (const auto& c : hard)
    if (!ledger.covered.count(c)) todo.push_back(c);
  std::vector<SearchResult> results(todo.size());
  std::mutex mu;
  detail::parallel_for(todo.size(), opt.jobs, [&](std::size_t j) {
    results[j] = find_covering_path(todo[j], opt.exhaustive_limits, Engine::line_selection, 0, &cube);
    std::lock_guard lock(mu);
    if (opt.decided) opt.decided(todo[j], results[j].status, results[j].nodes);
  });
  for (std::size_t j = 0; j < todo.size(); ++j) {
    const auto& c = todo[j];
    if (ledger.covered.count(c)) continue;
    if (results[j].certificate) {
      settle(*results[j].certificate);
    } else if (results[j].status == SearchStatus::exhausted) {
      ledger.uncovered.insert(c);
      ledger.exhaustive_nodes[c] = results[j].nodes;
    } else {
      ledger.inconclusive.insert(c);
    }
  }
  report();
  return ledger;
}

// ---- loose Hamilton paths in small cubes ----

struct NonexistenceReport {
  int dim = 0;
  bool absent = false;
  std::optional<PathCertificate> counterexample;
  std::uint64_t tail_nodes = 0;  // free-end search from the one start orbit
  std::uint64_t line_nodes = 0;  // fixed-end search over all endpoint orbits
  int endpoint_orbits = 0;
};

// Two independent exhaustive runs. The symmetry group acts transitively on
// vertices, so a tail search from 0...0 with a free end sees every loose
// Hamilton path up to symmetry. The orbits of ordered pairs (a,b) are given by
// hamming(a,b), so the line-selection search runs once per distance.
inline NonexistenceReport check_lhp_nonexistence(int d, const SearchLimits& limits = {}) {
  if (d < 1 || d > 4) throw std::invalid_argument("nonexistence check supports 1 <= d <= 4");
  CubeIndex cube(d);
  NonexistenceReport rep;
  rep.dim = d;
  std::vector<int> path;
  detail::TailSearch tail(cube, 0, -1, {}, {});
  auto ts = tail.run(limits, path);
  rep.tail_nodes = tail.nodes();
  if (ts == SearchStatus::found) {
    rep.counterexample = certify(LoosePath(detail::to_vertices(path, d)), {});
    return rep;
  }
  bool decided = ts == SearchStatus::exhausted;
  for (int k = 1; k <= d; ++k) {
    TritVector b(d);
    for (int i = d - k + 1; i <= d; ++i) b = b.with(i, 1);
    detail::LineSearch ls(cube, 0, static_cast<int>(b.index()), {}, {});
    auto s = ls.run(limits, path);
    rep.line_nodes += ls.nodes();
    ++rep.endpoint_orbits;
    if (s == SearchStatus::found) {
      rep.counterexample = certify(LoosePath(detail::to_vertices(path, d)), {});
      return rep;
    }
    decided = decided && s == SearchStatus::exhausted;
  }
  rep.absent = decided;
  return rep;
}

struct WitnessFileReport {
  CoverageLedger ledger;  // uncovered = every normalized configuration not witnessed
  std::vector<std::string> diagnostics;
  std::size_t records = 0;
  std::size_t accepted = 0;
};

// Re-verifies every record from scratch and derives the covered
// configurations from the verified paths alone; configuration lines and
// headers in the file are not trusted and are skipped.
inline WitnessFileReport verify_witness_stream(std::istream& is) {
  std::string text;
  std::vector<std::string> kept;
  for (std::string line; std::getline(is, line);) {
    auto t = detail::tokens(line);
    bool header = !t.empty() && t[0].rfind("cubepath-witness", 0) == 0;
    kept.push_back(header ? std::string() : line);
  }
  // A line of 2 or 4 vertices directly before a "d=" line is a key, not a record.
  for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
    int dim = 0;
    auto t = detail::tokens(kept[i]);
    if ((t.size() == 2 || t.size() == 4) && parse_dim_line(kept[i + 1], dim)) kept[i].clear();
  }
  for (const auto& l : kept) text += l + "\n";
  std::istringstream in(text);
  WitnessFileReport rep;
  for (const auto& rec : read_certificates(in)) {
    ++rep.records;
    std::string where = "record at line " + std::to_string(rec.line) + ": ";
    if (!rec.certificate) {
      rep.diagnostics.push_back(where + rec.error);
      continue;
    }
    const auto& c = *rec.certificate;
    if (c.dim() != 4 || c.omitted.size() != 2) {
      rep.diagnostics.push_back(where + "not an almost-Hamilton path of Q(4)");
      continue;
    }
    auto v = verify(c);
    if (!v) {
      rep.diagnostics.push_back(where + v.diagnostic);
      continue;
    }
    ++rep.accepted;
    for (auto& [k, mapped] : settled_by(c))
      if (!rep.ledger.covered.count(k)) rep.ledger.covered.emplace(k, mapped);
  }
  for (const auto& c : enumerate_normalized_4configs(4))
    if (!rep.ledger.covered.count(c)) rep.ledger.uncovered.insert(c);
  return rep;
}

inline WitnessFileReport verify_witness_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open witness file " + path);
  return verify_witness_stream(is);
}

}  // namespace cubepath
