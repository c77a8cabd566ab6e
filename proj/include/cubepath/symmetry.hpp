#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "core.hpp"

namespace cubepath {

using ValuePerm = std::array<trit, 3>;

inline constexpr ValuePerm identity_value_perm{0, 1, 2};

inline ValuePerm invert(const ValuePerm& p) {
  ValuePerm r{};
  for (trit v = 0; v < 3; ++v) r[p[v]] = v;
  return r;
}

inline bool is_value_perm(const ValuePerm& p) {
  return p[0] < 3 && p[1] < 3 && p[2] < 3 && p[0] != p[1] && p[0] != p[2] && p[1] != p[2];
}

// A coordinate permutation plus one value permutation per target coordinate.
// Source coordinate j moves to coordinate image(j), where its value is
// relabeled by value_perm(image(j)).
class Symmetry {
 public:
  Symmetry() = default;

  // images and value perms are indexed from 0 here; images are 1-based values.
  Symmetry(std::vector<int> images, std::vector<ValuePerm> value_perms) : values_(std::move(value_perms)) {
    int d = static_cast<int>(images.size());
    check_dim(d);
    if (static_cast<int>(values_.size()) != d) throw std::invalid_argument("need one value permutation per coordinate");
    perm_.resize(d);
    std::vector<bool> hit(d, false);
    for (int j = 0; j < d; ++j) {
      int img = images[j];
      if (img < 1 || img > d || hit[img - 1]) throw std::invalid_argument("coordinate map is not a permutation of [d]");
      hit[img - 1] = true;
      perm_[j] = img - 1;
    }
    for (const auto& p : values_)
      if (!is_value_perm(p)) throw std::invalid_argument("value map is not a permutation of {0,1,2}");
  }

  static Symmetry identity(int d) {
    std::vector<int> images(d);
    std::iota(images.begin(), images.end(), 1);
    return Symmetry(images, std::vector<ValuePerm>(d, identity_value_perm));
  }

  static Symmetry swap_coordinates(int d, int i, int j) {
    if (i < 1 || i > d || j < 1 || j > d) throw std::out_of_range("coordinate out of range");
    std::vector<int> images(d);
    std::iota(images.begin(), images.end(), 1);
    std::swap(images[i - 1], images[j - 1]);
    return Symmetry(images, std::vector<ValuePerm>(d, identity_value_perm));
  }

  static Symmetry relabel(int d, int coord, const ValuePerm& p) {
    if (coord < 1 || coord > d) throw std::out_of_range("coordinate out of range");
    Symmetry s = identity(d);
    if (!is_value_perm(p)) throw std::invalid_argument("value map is not a permutation of {0,1,2}");
    s.values_[coord - 1] = p;
    return s;
  }

  template <class Rng>
  static Symmetry random(int d, Rng& rng) {
    std::vector<int> images(d);
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    std::vector<ValuePerm> vp(d);
    for (auto& p : vp) {
      p = identity_value_perm;
      std::shuffle(p.begin(), p.end(), rng);
    }
    return Symmetry(images, vp);
  }

  int dim() const { return static_cast<int>(perm_.size()); }
  int image(int coord) const { return perm_.at(coord - 1) + 1; }
  const ValuePerm& value_perm(int coord) const { return values_.at(coord - 1); }

  friend bool operator==(const Symmetry&, const Symmetry&) = default;

 private:
  friend TritVector apply(const Symmetry& s, const TritVector& v);
  friend Symmetry compose(const Symmetry& s, const Symmetry& t);
  friend Symmetry inverse(const Symmetry& s);

  std::vector<int> perm_;        // 0-based source -> 0-based target
  std::vector<ValuePerm> values_;  // by 0-based target
};

inline TritVector apply(const Symmetry& s, const TritVector& v) {
  if (v.dim() != s.dim())
    throw std::invalid_argument("symmetry of dimension " + std::to_string(s.dim()) + " applied to " + v.str());
  TritVector r(v.dim());
  for (int j = 0; j < v.dim(); ++j) {
    int t = s.perm_[j];
    r.data()[t] = s.values_[t][v.data()[j]];
  }
  return r;
}

inline Hyperedge apply(const Symmetry& s, const Hyperedge& e) {
  const auto& vs = e.vertices();
  return Hyperedge(apply(s, vs[0]), apply(s, vs[1]), apply(s, vs[2]));
}

inline Configuration apply(const Symmetry& s, const Configuration& c) {
  std::vector<TritVector> vs;
  for (const auto& v : c.vertices()) vs.push_back(apply(s, v));
  return Configuration(std::move(vs));
}

// apply(compose(s, t), v) == apply(s, apply(t, v))
inline Symmetry compose(const Symmetry& s, const Symmetry& t) {
  if (s.dim() != t.dim()) throw std::invalid_argument("composing symmetries of different dimension");
  int d = s.dim();
  Symmetry r;
  r.perm_.resize(d);
  r.values_.resize(d);
  for (int j = 0; j < d; ++j) {
    int mid = t.perm_[j];
    int dst = s.perm_[mid];
    r.perm_[j] = dst;
    const ValuePerm& outer = s.values_[dst];
    const ValuePerm& inner = t.values_[mid];
    for (trit v = 0; v < 3; ++v) r.values_[dst][v] = outer[inner[v]];
  }
  return r;
}

inline Symmetry inverse(const Symmetry& s) {
  int d = s.dim();
  Symmetry r;
  r.perm_.resize(d);
  r.values_.resize(d);
  for (int j = 0; j < d; ++j) {
    int t = s.perm_[j];
    r.perm_[t] = j;
    r.values_[j] = invert(s.values_[t]);
  }
  return r;
}

// Relabels values in order of first appearance as 0, 1, 2. Returns the new row
// and the relabeling; values that never appear take the remaining labels in order.
inline std::pair<std::vector<trit>, ValuePerm> first_traversal_row(std::span<const trit> row) {
  if (row.empty()) throw std::invalid_argument("first traversal of an empty row");
  ValuePerm p{3, 3, 3};
  trit next = 0;
  for (trit v : row) {
    if (v > 2) throw std::invalid_argument("row entry out of range");
    if (p[v] == 3) p[v] = next++;
  }
  for (trit v = 0; v < 3; ++v)
    if (p[v] == 3) p[v] = next++;
  std::vector<trit> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = p[row[i]];
  return {out, p};
}

inline std::pair<std::vector<trit>, ValuePerm> first_traversal_row(std::initializer_list<trit> row) {
  return first_traversal_row(std::span<const trit>(row.begin(), row.size()));
}

// d rows of k entries; column j is vertex j of the configuration.
struct ConfigMatrix {
  std::vector<std::vector<trit>> rows;

  static ConfigMatrix of(const Configuration& c) {
    ConfigMatrix m;
    for (int i = 0; i < c.dim(); ++i) {
      std::vector<trit> row;
      for (const auto& v : c.vertices()) row.push_back(v.data()[i]);
      m.rows.push_back(row);
    }
    return m;
  }

  Configuration columns() const {
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    std::size_t k = rows[0].size();
    std::vector<TritVector> vs(k, TritVector(static_cast<int>(rows.size())));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != k) throw std::invalid_argument("ragged matrix");
      for (std::size_t j = 0; j < k; ++j) vs[j].data()[i] = rows[i][j];
    }
    return Configuration(std::move(vs));
  }

  std::vector<std::string> row_strings() const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
      std::string s;
      for (trit t : r) s += static_cast<char>('0' + t);
      out.push_back(s);
    }
    return out;
  }

  friend bool operator==(const ConfigMatrix&, const ConfigMatrix&) = default;
  friend auto operator<=>(const ConfigMatrix&, const ConfigMatrix&) = default;
};

struct Normalization {
  Configuration config;
  Symmetry symmetry;
  // When set, x and y were exchanged before the symmetry was applied:
  // config == apply(symmetry, input.with_xy_swapped()).
  bool xy_swapped = false;
};

namespace detail {

struct NormalForm {
  ConfigMatrix matrix;
  Symmetry symmetry;
};

inline NormalForm normal_form(const Configuration& c) {
  int d = c.dim();
  ConfigMatrix m = ConfigMatrix::of(c);
  std::vector<ValuePerm> perms(d);
  for (int i = 0; i < d; ++i) {
    auto [row, p] = first_traversal_row(std::span<const trit>(m.rows[i]));
    m.rows[i] = row;
    perms[i] = p;
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return m.rows[i] < m.rows[j]; });
  NormalForm nf;
  std::vector<int> images(d);
  std::vector<ValuePerm> vp(d);
  for (int pos = 0; pos < d; ++pos) {
    nf.matrix.rows.push_back(m.rows[order[pos]]);
    images[order[pos]] = pos + 1;
    vp[pos] = perms[order[pos]];
  }
  nf.symmetry = Symmetry(images, vp);
  return nf;
}

}  // namespace detail

inline Normalization normalize(const Configuration& c) {
  if (c.size() != 2 && c.size() != 4) throw std::invalid_argument("normalize needs 2 or 4 vertices");
  if (c.dim() == 0) throw std::invalid_argument("normalize needs dimension at least 1");
  auto plain = detail::normal_form(c);
  if (c.size() == 4) {
    auto swapped = detail::normal_form(c.with_xy_swapped());
    if (swapped.matrix < plain.matrix) return {swapped.matrix.columns(), swapped.symmetry, true};
  }
  return {plain.matrix.columns(), plain.symmetry, false};
}

inline bool is_normalized(const Configuration& c) { return normalize(c).config == c; }

// All normalized 4-configurations of Q(d), by brute force over ordered 4-tuples
// of distinct vertices. Rows are handled as base-3 codes of their 4 entries.
inline std::vector<Configuration> enumerate_normalized_4configs(int d) {
  check_dim(d);
  if (d < 2) throw std::invalid_argument("Q(d) needs at least 4 vertices");
  if (d > 9) throw std::invalid_argument("normalized 4-configuration enumeration is limited to d <= 9");
  // canon[code] = first-traversal form of the row with that code
  std::array<int, 81> canon{};
  for (int code = 0; code < 81; ++code) {
    std::array<trit, 4> row{static_cast<trit>(code / 27), static_cast<trit>(code / 9 % 3),
                            static_cast<trit>(code / 3 % 3), static_cast<trit>(code % 3)};
    auto [r, p] = first_traversal_row(std::span<const trit>(row));
    canon[code] = r[0] * 27 + r[1] * 9 + r[2] * 3 + r[3];
  }
  int n = static_cast<int>(pow3(d));
  std::vector<std::array<int, max_dim>> digits(n);
  for (int v = 0; v < n; ++v) {
    int t = v;
    for (int i = d - 1; i >= 0; --i) {
      digits[v][i] = t % 3;
      t /= 3;
    }
  }
  auto key_of = [&](int a, int b, int x, int y) {
    std::array<int, max_dim> rows{};
    for (int i = 0; i < d; ++i)
      rows[i] = canon[digits[a][i] * 27 + digits[b][i] * 9 + digits[x][i] * 3 + digits[y][i]];
    std::sort(rows.begin(), rows.begin() + d);
    std::uint64_t key = 0;
    for (int i = 0; i < d; ++i) key = key * 81 + static_cast<std::uint64_t>(rows[i]);
    return key;
  };
  std::unordered_set<std::uint64_t> keys;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      for (int x = 0; x < n; ++x) {
        if (x == a || x == b) continue;
        for (int y = 0; y < n; ++y) {
          if (y == a || y == b || y == x) continue;
          keys.insert(std::min(key_of(a, b, x, y), key_of(a, b, y, x)));
        }
      }
    }
  std::vector<std::uint64_t> sorted(keys.begin(), keys.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<Configuration> out;
  out.reserve(sorted.size());
  for (std::uint64_t key : sorted) {
    ConfigMatrix m;
    m.rows.assign(d, std::vector<trit>(4));
    for (int i = d - 1; i >= 0; --i) {
      int code = static_cast<int>(key % 81);
      key /= 81;
      m.rows[i] = {static_cast<trit>(code / 27), static_cast<trit>(code / 9 % 3), static_cast<trit>(code / 3 % 3),
                   static_cast<trit>(code % 3)};
    }
    out.push_back(m.columns());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubepath
