#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <set>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "core.hpp"
#include "paths.hpp"
#include "store.hpp"
#include "symmetry.hpp"

namespace cubepath {

// ---- auxiliary vertices ----

namespace detail {

inline void check_aux_input(const TritVector& al, const TritVector& be, const TritVector& ga, const TritVector& de) {
  Configuration(al, be, ga, de);  // throws on repeats or mixed dimensions
  if (al.dim() < 3) throw std::invalid_argument("auxiliary vertex choice needs dimension at least 3");
}

inline trit smallest_outside(trit p, trit q) {
  for (trit t = 0; t < 3; ++t)
    if (t != p && t != q) return t;
  return 3;
}

}  // namespace detail

namespace detail {

// The constructions below never rely on the four inputs being distinct: they
// only steer clear of them. The builder calls them on restrictions to [d-2],
// where coordinates of a, b, x, y can coincide.
inline std::pair<TritVector, TritVector> aux_i(const TritVector& al, const TritVector& be, const TritVector& ga,
                                               const TritVector& de) {
  int d = al.dim();
  TritVector v(d);
  int shared = -1;
  for (int i = 1; i <= d && shared < 0; ++i)
    if (al.at(i) == be.at(i)) shared = i;
  if (shared > 0) {
    std::vector<int> rest;
    for (int i = 1; i <= d; ++i)
      if (i != shared) rest.push_back(i);
    v = v.with(shared, al.at(shared));
    v = v.with(rest[0], smallest_outside(al.at(rest[0]), be.at(rest[0])));
    v = v.with(rest[1], smallest_outside(ga.at(rest[1]), de.at(rest[1])));
  } else {
    v = v.with(1, al.at(1)).with(2, be.at(2)).with(3, smallest_outside(ga.at(3), de.at(3)));
  }
  std::uint64_t n = pow3(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    TritVector w = TritVector::from_index(i, d);
    if (w != al && w != be && w != ga && w != de && w != v) return {v, w};
  }
  throw std::logic_error("no free vertex left");
}

inline std::pair<TritVector, TritVector> aux_ii(const TritVector& al, const TritVector& be, const TritVector& ga,
                                                const TritVector& de) {
  int d = al.dim();
  trit c2 = smallest_outside(al.at(2), be.at(2));
  trit c3 = smallest_outside(ga.at(3), de.at(3));
  TritVector v = TritVector(d).with(1, al.at(1)).with(2, c2).with(3, c3);
  TritVector w = v.with(1, al.at(1) == 0 ? 1 : 0);
  return {v, w};
}

}  // namespace detail

// v' agrees with alpha somewhere and with beta somewhere; v', w' avoid the
// four inputs. w' is the lexicographically first vertex that is still free.
inline std::pair<TritVector, TritVector> choose_aux_i(const TritVector& al, const TritVector& be, const TritVector& ga,
                                                      const TritVector& de) {
  detail::check_aux_input(al, be, ga, de);
  return detail::aux_i(al, be, ga, de);
}

// v' agrees with alpha in coordinate 1, and v', w' agree in coordinates 2 and 3.
inline std::pair<TritVector, TritVector> choose_aux_ii(const TritVector& al, const TritVector& be, const TritVector& ga,
                                                       const TritVector& de) {
  detail::check_aux_input(al, be, ga, de);
  return detail::aux_ii(al, be, ga, de);
}

// ---- recursion frames ----

enum class AuxRule { rule_i, rule_ii };

// Which fixed vertex plays alpha in the auxiliary choice; the other three
// follow in the order a, b, x, y.
enum class AuxAnchor { a, b, x, y };

// One scheme per (type, penultimate row): the last coordinates of v and w and
// the auxiliary rule. Layer sub-configurations, in V_{d-1} coordinates:
//   t1: L2 (a,v,y,w), L0 (v,w,x,a), L1 (w,b,a,v); joined e_a P2 (v2,v1,v0) P0 (w0,w2,w1) P1
//   t2: L1 (a,v,x,w), L2 (v,w,y,a), L0 (w,b,a,v); joined (a,a2,a1) P1 (v1,v0,v2) P2 (w2,w1,w0) P0
//   t3: L0 (a,v,w,x), L2 a full path v..w, L1 (w,b,v,y); joined P0 (v0,v1,v2) P2 (w2,w0,w1) P1
// expected[] lists, per sub-configuration in the order above, the type its
// split-coordinate pattern has at coordinate d-1.
struct SchemeEntry {
  int type;
  int row;
  trit v_last;
  trit w_last;
  AuxRule rule;
  AuxAnchor anchor;
  std::array<int, 3> expected;  // 0 for the full-path layer of t3
};

inline const std::vector<SchemeEntry>& scheme_table() {
  using R = AuxRule;
  using A = AuxAnchor;
  static const std::vector<SchemeEntry> table{
      {1, 3, 1, 2, R::rule_ii, A::a, {1, 1, 4}},  {1, 4, 1, 2, R::rule_ii, A::a, {4, 1, 4}},
      {1, 5, 2, 1, R::rule_ii, A::a, {4, 4, 4}},  {1, 9, 2, 1, R::rule_ii, A::a, {1, 4, 2}},
      {1, 10, 1, 0, R::rule_ii, A::a, {3, 3, 3}}, {1, 11, 2, 1, R::rule_ii, A::a, {4, 4, 2}},
      {1, 12, 2, 1, R::rule_ii, A::a, {1, 1, 2}}, {1, 13, 1, 0, R::rule_ii, A::a, {3, 4, 3}},
      {1, 14, 2, 1, R::rule_ii, A::a, {4, 1, 2}},
      {2, 2, 2, 1, R::rule_ii, A::a, {1, 4, 4}},  {2, 4, 1, 2, R::rule_ii, A::a, {4, 1, 4}},
      {2, 5, 1, 2, R::rule_ii, A::a, {4, 4, 4}},  {2, 7, 2, 1, R::rule_ii, A::a, {1, 4, 2}},
      {2, 10, 1, 0, R::rule_ii, A::y, {3, 3, 3}}, {2, 13, 2, 1, R::rule_ii, A::a, {4, 4, 2}},
      {2, 14, 2, 1, R::rule_ii, A::a, {4, 1, 2}},
      {3, 3, 2, 2, R::rule_i, A::a, {4, 0, 3}},   {3, 4, 2, 2, R::rule_i, A::a, {4, 0, 1}},
      {3, 9, 2, 2, R::rule_i, A::a, {4, 0, 1}},   {3, 10, 2, 2, R::rule_i, A::a, {4, 0, 3}},
      {3, 13, 2, 0, R::rule_ii, A::a, {3, 0, 4}}, {3, 14, 0, 1, R::rule_ii, A::a, {5, 0, 2}},
  };
  return table;
}

inline const SchemeEntry* find_scheme(int type, int row) {
  for (const auto& e : scheme_table())
    if (e.type == type && e.row == row) return &e;
  return nullptr;
}

struct RecursionFrame {
  int dim = 0;
  Configuration config;      // canonical: split coordinate last, row d-1 in first-traversal form
  TypeAssignment assignment;  // base type 1..3, split at d
  int row = 0;
  TritVector aux_v, aux_w;    // in V_{d-1}
  // config == apply(symmetry, input relabeled by `reversed` (a<->b) and `xy_swapped`)
  Symmetry symmetry;
  bool reversed = false;
  bool xy_swapped = false;
  std::string reduction;      // empty, or "<from> -> <to>" for a row reduction
  bool table_aux = true;      // false when the bounded fallback chose the auxiliary vertices

  std::string str() const {
    std::string s = "frame d=" + std::to_string(dim) + " type=t" + std::to_string(assignment.base_type) +
                    " row=r" + std::to_string(row) + " v=" + aux_v.str() + " w=" + aux_w.str() +
                    " reversed=" + (reversed ? "1" : "0") + " swap=" + (xy_swapped ? "1" : "0");
    if (!reduction.empty()) s += " reduction=" + reduction;
    if (!table_aux) s += " aux=fallback";
    return s;
  }
};

namespace detail {

// Which types hold for the four values p,q,r,s of (a,b,x,y) at one coordinate,
// ignoring conditions on the other coordinates; bit k set for type k.
inline int pattern_types(int p, int q, int r, int s) {
  int out = 0;
  for (int sw = 0; sw < 2; ++sw) {
    int R = sw ? s : r, S = sw ? r : s;
    if (p == R && distinct3(p, q, S)) out |= 1 << 1;
    if (p == q && distinct3(p, R, S)) out |= (1 << 2) | (1 << 5);
    if (p == R && q == S && p != q) out |= 1 << 3;
    if (q == R && distinct3(p, q, S)) out |= 1 << 4;
  }
  return out;
}

inline std::array<trit, 4> row_values(int row) {
  const char* s = penultimate_rows.at(row - 1);
  return {static_cast<trit>(s[0] - '0'), static_cast<trit>(s[1] - '0'), static_cast<trit>(s[2] - '0'),
          static_cast<trit>(s[3] - '0')};
}

// Sub-configurations of a scheme, as index tuples into (a,b,x,y,v,w).
inline std::vector<std::array<int, 4>> layer_configs(int type) {
  enum { A, B, X, Y, V, W };
  switch (type) {
    case 1: return {{V, W, X, A}, {A, V, Y, W}, {W, B, A, V}};  // L0, L2, L1
    case 2: return {{W, B, A, V}, {A, V, X, W}, {V, W, Y, A}};  // L0, L1, L2
    default: return {{A, V, W, X}, {W, B, V, Y}};               // L0, L1
  }
}

inline std::vector<int> layer_order_expected(const SchemeEntry& e) {
  // expected[] follows the order of the scheme comment; layer_configs does not.
  if (e.type == 1) return {e.expected[1], e.expected[0], e.expected[2]};
  if (e.type == 2) return {e.expected[2], e.expected[0], e.expected[1]};
  return {e.expected[0], e.expected[2]};
}

}  // namespace detail

// Checks every table entry against the split-coordinate patterns of its layer
// sub-configurations; returns the list of mismatches (empty when consistent).
inline std::vector<std::string> check_scheme_table() {
  std::vector<std::string> problems;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : scheme_table()) {
    if (!seen.insert({e.type, e.row}).second) problems.push_back("duplicate entry");
    auto r = detail::row_values(e.row);
    std::array<int, 6> val{r[0], r[1], r[2], r[3], e.v_last, e.w_last};
    auto layers = detail::layer_configs(e.type);
    auto expected = detail::layer_order_expected(e);
    for (std::size_t k = 0; k < layers.size(); ++k) {
      const auto& L = layers[k];
      int mask = detail::pattern_types(val[L[0]], val[L[1]], val[L[2]], val[L[3]]);
      if (!(mask >> expected[k] & 1))
        problems.push_back("t" + std::to_string(e.type) + " r" + std::to_string(e.row) + " layer " +
                           std::to_string(k) + " is not of type t" + std::to_string(expected[k]));
    }
  }
  return problems;
}

inline bool row_constructible(int type, int row) { return find_scheme(type, row) != nullptr; }

namespace detail {


// Builds the canonical frame for: relabel (reverse, xy), then split at
// coordinate i (moved last) with coordinate j moved to d-1.
inline std::optional<RecursionFrame> make_frame(const Configuration& c, int type, int i, int j, bool reversed,
                                                bool xy_swapped) {
  int d = c.dim();
  if (i == j) return std::nullopt;
  Configuration r = c;
  if (xy_swapped) r = r.with_xy_swapped();
  if (reversed) r = Configuration(r.b(), r.a(), r.x(), r.y());
  std::vector<TypeAssignment> here;
  classify_at(r.a(), r.b(), r.x(), r.y(), i - 1, false, here);
  bool holds = false;
  for (const auto& t : here) holds = holds || t.base_type == type;
  if (!holds) return std::nullopt;
  const TritVector &a = r.a(), &b = r.b(), &x = r.x(), &y = r.y();
  bool distinguishes = type == 2 ? a.at(j) != y.at(j) : a.at(j) != x.at(j);
  if (!distinguishes) return std::nullopt;
  std::vector<int> images(d);
  int next = 1;
  for (int k = 1; k <= d; ++k) {
    if (k == i)
      images[k - 1] = d;
    else if (k == j)
      images[k - 1] = d - 1;
    else
      images[k - 1] = next++;
  }
  std::vector<ValuePerm> vp(d, identity_value_perm);
  ValuePerm last{3, 3, 3};
  auto assign = [&](trit from, trit to) { last[from] = to; };
  if (type == 1) {
    assign(a.at(i), 0), assign(b.at(i), 1), assign(y.at(i), 2);
  } else if (type == 2) {
    assign(a.at(i), 0), assign(x.at(i), 1), assign(y.at(i), 2);
  } else {
    assign(a.at(i), 0), assign(b.at(i), 1);
    assign(3 - a.at(i) - b.at(i), 2);
  }
  vp[d - 1] = last;
  std::array<trit, 4> row{a.at(j), b.at(j), x.at(j), y.at(j)};
  vp[d - 2] = first_traversal_row(std::span<const trit>(row)).second;
  RecursionFrame f;
  f.dim = d;
  f.symmetry = Symmetry(images, vp);
  f.config = apply(f.symmetry, r);
  f.assignment = TypeAssignment{type, d, false, std::nullopt};
  f.row = penultimate_row(f.config);
  f.reversed = reversed;
  f.xy_swapped = xy_swapped;
  return f;
}

// The largest distinguishing coordinate for a given split, so that a
// configuration already split at d with a distinguishing coordinate d-1 keeps
// its coordinate order.
inline std::optional<RecursionFrame> first_frame(const Configuration& c, int type, int i, bool reversed,
                                                 bool xy_swapped) {
  for (int j = c.dim(); j >= 1; --j)
    if (auto f = make_frame(c, type, i, j, reversed, xy_swapped)) return f;
  return std::nullopt;
}

inline std::string row_tag(int type, int row) { return "t" + std::to_string(type) + ":r" + std::to_string(row); }

}  // namespace detail

// Recursion frames without auxiliary vertices: the preferred classification
// of c, turned into t1/t2/t3 form, with the row reductions applied when its
// penultimate row has no direct scheme. Returns frames in preference order:
// the preferred choice first, then every other directly constructible frame.
inline std::vector<RecursionFrame> candidate_frames(const Configuration& c) {
  int d = c.dim();
  if (d < 5) throw std::invalid_argument("recursion frames need d >= 5");
  auto types = classify(c);
  if (types.empty()) throw std::invalid_argument(c.str() + " is not in S(d)");
  std::vector<RecursionFrame> out;
  auto push = [&](RecursionFrame f) {
    for (const auto& g : out)
      if (g.config == f.config && g.reversed == f.reversed && g.xy_swapped == f.xy_swapped &&
          g.symmetry == f.symmetry)
        return;
    out.push_back(std::move(f));
  };
  // prefer the largest split coordinate, then the unswapped reading, then the smallest type
  std::stable_sort(types.begin(), types.end(), [](const TypeAssignment& p, const TypeAssignment& q) {
    return p.split_coordinate > q.split_coordinate;
  });
  const auto& first = types.front();
  bool reversed = first.base_type >= 4;
  int type = reversed ? first.base_type - 3 : first.base_type;
  auto f = detail::first_frame(c, type, first.split_coordinate, reversed, first.xy_swapped);
  if (!f) throw std::logic_error("classification of " + c.str() + " has no frame");
  if (row_constructible(type, f->row)) {
    push(*f);
  } else {
    // Row reductions, each an exchange of the last two coordinates and/or a relabeling.
    const int i = first.split_coordinate;
    int j = 0;  // the distinguishing coordinate used by f
    for (int k = 1; k <= d && !j; ++k)
      if (f->symmetry.image(k) == d - 1) j = k;
    std::optional<RecursionFrame> g;
    bool xy = first.xy_swapped;
    if (type == 2 && f->row == 8) {
      g = detail::make_frame(c, 1, j, i, reversed, xy);
    } else if (type == 2 && f->row == 11) {
      // exchanging a and b (t2 <-> t5) turns r11 into r8, then on to t1:r5
      g = detail::make_frame(c, 1, j, i, !reversed, xy);
    } else if (type == 3 && f->row == 5) {
      g = detail::make_frame(c, 2, j, i, reversed, xy);
    } else if (type == 3 && f->row == 11) {
      g = detail::make_frame(c, 3, i, j, !reversed, !xy);
    } else if (type == 3 && f->row == 12) {
      g = detail::make_frame(c, 1, j, i, reversed, !xy);
    }
    if (g && row_constructible(g->assignment.base_type, g->row)) {
      g->reduction = detail::row_tag(type, f->row) + "->" + detail::row_tag(g->assignment.base_type, g->row);
      push(*g);
    }
  }
  // Every other directly constructible frame, for the bounded fallback.
  for (int rev = 0; rev < 2; ++rev)
    for (int xy = 0; xy < 2; ++xy)
      for (int t = 1; t <= 3; ++t)
        for (int i = d; i >= 1; --i)
          for (int j = d; j >= 1; --j)
            if (auto g = detail::make_frame(c, t, i, j, rev, xy); g && row_constructible(t, g->row)) push(*g);
  return out;
}

namespace detail {

// The layer sub-configurations of a frame for auxiliary vertices v, w, in the
// order of layer_configs; nullopt unless each is a 4-configuration in S'(d-1).
inline std::optional<std::vector<Configuration>> layers_for(const RecursionFrame& f, const TritVector& v,
                                                            const TritVector& w) {
  int d1 = f.dim - 1;
  std::array<TritVector, 6> val{f.config.a().prefix(d1), f.config.b().prefix(d1), f.config.x().prefix(d1),
                                f.config.y().prefix(d1), v, w};
  std::vector<Configuration> out;
  for (const auto& L : layer_configs(f.assignment.base_type)) {
    std::vector<TritVector> vs{val[L[0]], val[L[1]], val[L[2]], val[L[3]]};
    for (std::size_t p = 0; p < 4; ++p)
      for (std::size_t q = p + 1; q < 4; ++q)
        if (vs[p] == vs[q]) return std::nullopt;
    Configuration sub(vs);
    if (!in_Sprime(sub)) return std::nullopt;
    out.push_back(sub);
  }
  return out;
}

struct AuxOption {
  TritVector v, w;  // in V_{d-1}
  bool table;
};

// Auxiliary pairs to try for a frame, the table's choice first, then every
// auxiliary choice over all anchors and all last-coordinate values.
inline std::vector<AuxOption> aux_options(const RecursionFrame& f, const SchemeEntry& e) {
  int d2 = f.dim - 2;
  std::array<TritVector, 4> fixed{f.config.a().prefix(d2), f.config.b().prefix(d2), f.config.x().prefix(d2),
                                  f.config.y().prefix(d2)};
  auto choose = [&](AuxRule rule, AuxAnchor an) {
    int k = static_cast<int>(an);
    std::array<TritVector, 4> o;
    o[0] = fixed[k];
    int pos = 1;
    for (int m = 0; m < 4; ++m)
      if (m != k) o[pos++] = fixed[m];
    return rule == AuxRule::rule_i ? aux_i(o[0], o[1], o[2], o[3]) : aux_ii(o[0], o[1], o[2], o[3]);
  };
  std::vector<AuxOption> out;
  auto base = choose(e.rule, e.anchor);
  out.push_back({base.first.extended(e.v_last), base.second.extended(e.w_last), true});
  std::vector<std::pair<TritVector, TritVector>> prefixes{base};
  for (AuxRule rule : {AuxRule::rule_ii, AuxRule::rule_i})
    for (AuxAnchor an : {AuxAnchor::a, AuxAnchor::b, AuxAnchor::x, AuxAnchor::y}) {
      auto p = choose(rule, an);
      if (std::find(prefixes.begin(), prefixes.end(), p) == prefixes.end()) prefixes.push_back(p);
    }
  for (const auto& p : prefixes)
    for (trit vl = 0; vl < 3; ++vl)
      for (trit wl = 0; wl < 3; ++wl)
        if (!(p == base && vl == e.v_last && wl == e.w_last))
          out.push_back({p.first.extended(vl), p.second.extended(wl), false});
  return out;
}

}  // namespace detail

struct FramePlan {
  RecursionFrame frame;
  std::vector<Configuration> layers;  // sub-configurations in V_{d-1}, in scheme order
  bool first_candidate = true;        // false when an alternative frame was needed
};

// The first candidate frame whose auxiliary choice gives sub-configurations in
// S'(d-1). The table's choice is tried first; the bounded fallback covers the
// remaining auxiliary choices and then the remaining frames. Fails hard when
// nothing passes.
inline FramePlan plan_frame(const Configuration& c) {
  auto frames = candidate_frames(c);
  int d2 = c.dim() - 2;
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    RecursionFrame f = frames[fi];
    const SchemeEntry* e = find_scheme(f.assignment.base_type, f.row);
    if (!e) continue;
    std::array<TritVector, 4> fixed{f.config.a().prefix(d2), f.config.b().prefix(d2), f.config.x().prefix(d2),
                                    f.config.y().prefix(d2)};
    for (const auto& opt : detail::aux_options(f, *e)) {
      TritVector vp = opt.v.prefix(d2), wp = opt.w.prefix(d2);
      if (vp == wp || std::find(fixed.begin(), fixed.end(), vp) != fixed.end() ||
          std::find(fixed.begin(), fixed.end(), wp) != fixed.end())
        throw std::logic_error("auxiliary vertices of " + f.str() + " collide with the configuration");
      auto layers = detail::layers_for(f, opt.v, opt.w);
      if (!layers) continue;
      f.aux_v = opt.v;
      f.aux_w = opt.w;
      f.table_aux = opt.table;
      return {f, *layers, fi == 0};
    }
  }
  throw std::logic_error("no frame of " + c.str() + " has sub-configurations in S'(" + std::to_string(c.dim() - 1) +
                         ")");
}

inline RecursionFrame canonicalize_frame(const Configuration& c) { return plan_frame(c).frame; }

// ---- construction ----

struct BuildStats {
  std::size_t frames = 0;
  std::size_t store_lookups = 0;
  std::size_t fallback_aux = 0;     // frames whose table auxiliary choice was replaced
  std::size_t fallback_frames = 0;  // frames other than the first candidate
};

class Builder {
 public:
  explicit Builder(const WitnessStore& store, std::ostream* trace = nullptr) : store_(store), trace_(trace) {}

  const BuildStats& stats() const { return stats_; }

  // A verified loose path from c.a() to c.b() covering V_d \ {c.x(), c.y()}.
  PathCertificate cover(const Configuration& c) {
    if (c.size() != 4) throw std::invalid_argument("cover needs a 4-configuration");
    int d = c.dim();
    if (d < 4) throw std::invalid_argument("cover needs d >= 4");
    if (d == 4) {
      if (!in_Sprime(c)) throw std::invalid_argument(c.str() + " is not in S'(4)");
      return from_store(c);
    }
    if (!in_S(c)) throw std::invalid_argument(c.str() + " is not in S(" + std::to_string(d) + ")");
    return checked(build(c), c.a(), c.b(), {c.x(), c.y()}, "cover " + c.str());
  }

  // A verified loose Hamilton path of Q(d) from a to b.
  PathCertificate lhc_path(const TritVector& a, const TritVector& b) {
    check_same_dim(a, b);
    int d = a.dim();
    if (d < 4) throw std::invalid_argument("loose Hamilton paths are built for d >= 4");
    if (a == b) throw std::invalid_argument("endpoints must differ");
    // move a to 0...0 by relabeling each coordinate
    std::vector<int> images(d);
    std::vector<ValuePerm> vp(d);
    for (int k = 1; k <= d; ++k) {
      images[k - 1] = k;
      ValuePerm p = identity_value_perm;
      std::swap(p[0], p[a.at(k)]);
      vp[k - 1] = p;
    }
    Symmetry sigma(images, vp);
    TritVector bb = apply(sigma, b);
    int shared = 0;
    for (int k = d; k >= 1 && !shared; --k)
      if (bb.at(k) == 0) shared = k;
    if (shared) sigma = compose(Symmetry::swap_coordinates(d, shared, d), sigma);
    bb = apply(sigma, b);
    TritVector z(d), u, v;
    std::optional<Configuration> sub;
    if (shared) {
      u = bb.with(d, 1);
      v = bb.with(d, 2);
      sub.emplace(z, u, bb, v);
    } else {
      v = bb.with(d, 0);
      u = bb.with(d, static_cast<trit>(3 - bb.at(d)));
      sub.emplace(z, u, v, bb);
    }
    // at d = 4 the store answers for every covered configuration, not only S'(4)
    PathCertificate inner = d == 4 ? from_store(*sub) : cover(*sub);
    LoosePath p = concat(inner.path, u, v, bb, LoosePath({bb}));
    LoosePath back = apply(inverse(sigma), p);
    return checked(certify(back, {}), a, b, {}, "loose Hamilton path " + a.str() + " -> " + b.str());
  }

 private:
  PathCertificate from_store(const Configuration& c) {
    ++stats_.store_lookups;
    return checked(lookup(store_, c), c.a(), c.b(), {c.x(), c.y()}, "stored witness for " + c.str());
  }

  PathCertificate checked(PathCertificate cert, const TritVector& a, const TritVector& b,
                          const std::vector<TritVector>& omitted, const std::string& what) {
    auto v = verify(cert);
    if (!v) throw std::logic_error(what + ": constructed certificate rejected: " + v.diagnostic);
    if (cert.start != a || cert.end != b) throw std::logic_error(what + ": constructed path has the wrong ends");
    std::vector<TritVector> got = cert.omitted, want = omitted;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want) throw std::logic_error(what + ": constructed path omits the wrong vertices");
    return cert;
  }

  static LoosePath lift(const LoosePath& p, trit layer) {
    LoosePath r;
    r.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) r.vertices.push_back(v.extended(layer));
    return r;
  }

  PathCertificate build(const Configuration& c) {
    FramePlan plan = plan_frame(c);
    const RecursionFrame& f = plan.frame;
    ++stats_.frames;
    if (!f.table_aux) ++stats_.fallback_aux;
    if (!plan.first_candidate) ++stats_.fallback_frames;
    if (trace_) *trace_ << f.str() << '\n';
    LoosePath p;
    try {
      p = join(f, plan.layers);
    } catch (const std::invalid_argument& ex) {
      throw std::logic_error(f.str() + ": " + ex.what());
    }
    LoosePath back = apply(inverse(f.symmetry), p);
    if (f.reversed) back = reverse(back);
    auto cert = certify(back, {c.x(), c.y()});
    auto v = verify(cert);
    if (!v) throw std::logic_error(f.str() + ": joined path rejected: " + v.diagnostic);
    return cert;
  }

  LoosePath join(const RecursionFrame& f, const std::vector<Configuration>& layers) {
    int d1 = f.dim - 1;
    TritVector a = f.config.a().prefix(d1);
    const TritVector &v = f.aux_v, &w = f.aux_w;
    auto at = [](const TritVector& t, trit s) { return t.extended(s); };
    switch (f.assignment.base_type) {
      case 1: {
        LoosePath p0 = lift(cover(layers[0]).path, 0);  // v..w
        LoosePath p2 = lift(cover(layers[1]).path, 2);  // a..v
        LoosePath p1 = lift(cover(layers[2]).path, 1);  // w..b
        LoosePath p = concat(LoosePath({at(a, 0)}), at(a, 0), at(a, 1), at(a, 2), p2);
        p = concat(p, at(v, 2), at(v, 1), at(v, 0), p0);
        return concat(p, at(w, 0), at(w, 2), at(w, 1), p1);
      }
      case 2: {
        LoosePath p0 = lift(cover(layers[0]).path, 0);  // w..b
        LoosePath p1 = lift(cover(layers[1]).path, 1);  // a..v
        LoosePath p2 = lift(cover(layers[2]).path, 2);  // v..w
        LoosePath p = concat(LoosePath({at(a, 0)}), at(a, 0), at(a, 2), at(a, 1), p1);
        p = concat(p, at(v, 1), at(v, 0), at(v, 2), p2);
        return concat(p, at(w, 2), at(w, 1), at(w, 0), p0);
      }
      default: {
        LoosePath p0 = lift(cover(layers[0]).path, 0);  // a..v
        LoosePath p1 = lift(cover(layers[1]).path, 1);  // w..b
        LoosePath p2 = lift(lhc_path(v, w).path, 2);    // v..w
        LoosePath p = concat(p0, at(v, 0), at(v, 1), at(v, 2), p2);
        return concat(p, at(w, 2), at(w, 0), at(w, 1), p1);
      }
    }
  }

  const WitnessStore& store_;
  std::ostream* trace_;
  BuildStats stats_;
};

inline PathCertificate cover(const Configuration& c, const WitnessStore& store) { return Builder(store).cover(c); }

inline PathCertificate lhc_path(const TritVector& a, const TritVector& b, const WitnessStore& store) {
  return Builder(store).lhc_path(a, b);
}

}  // namespace cubepath
