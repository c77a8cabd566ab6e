#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#ifndef CUBEPATH_MAX_DIM
#define CUBEPATH_MAX_DIM 12
#endif

namespace cubepath {

inline constexpr int max_dim = CUBEPATH_MAX_DIM;

using trit = std::uint8_t;

inline void check_dim(int d) {
  if (d < 0 || d > max_dim)
    throw std::invalid_argument("dimension " + std::to_string(d) + " outside [0, " +
                                std::to_string(max_dim) + "]");
}

inline std::uint64_t pow3(int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

// A vertex of Q(d). Coordinates are 1-based at the interface; coordinate 1 is
// the first character of the text form and the most significant base-3 digit
// of index(), so index order equals lexicographic order.
class TritVector {
 public:
  TritVector() = default;

  explicit TritVector(int dim) : dim_(dim) { check_dim(dim); }

  TritVector(std::initializer_list<int> values) : dim_(static_cast<int>(values.size())) {
    check_dim(dim_);
    int i = 0;
    for (int v : values) {
      if (v < 0 || v > 2) throw std::invalid_argument("trit value " + std::to_string(v) + " not in {0,1,2}");
      t_[i++] = static_cast<trit>(v);
    }
  }

  static TritVector parse(std::string_view text) {
    if (text.size() > static_cast<std::size_t>(max_dim))
      throw std::invalid_argument("vertex '" + std::string(text) + "' longer than the maximum dimension");
    TritVector v(static_cast<int>(text.size()));
    for (std::size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '2') throw std::invalid_argument("vertex '" + std::string(text) + "' has a character outside 0,1,2");
      v.t_[i] = static_cast<trit>(c - '0');
    }
    return v;
  }

  static TritVector from_index(std::uint64_t index, int dim) {
    TritVector v(dim);
    if (index >= pow3(dim)) throw std::out_of_range("vertex index " + std::to_string(index) + " out of range");
    for (int i = dim - 1; i >= 0; --i) {
      v.t_[i] = static_cast<trit>(index % 3);
      index /= 3;
    }
    return v;
  }

  int dim() const { return dim_; }

  // 1-based coordinate access.
  trit at(int coord) const {
    check_coord(coord);
    return t_[coord - 1];
  }

  TritVector with(int coord, trit value) const {
    check_coord(coord);
    if (value > 2) throw std::invalid_argument("trit value out of range");
    TritVector r = *this;
    r.t_[coord - 1] = value;
    return r;
  }

  // The restriction to the first n coordinates.
  TritVector prefix(int n) const {
    if (n < 0 || n > dim_) throw std::out_of_range("prefix length " + std::to_string(n) + " out of range");
    TritVector r(n);
    std::copy_n(t_.begin(), n, r.t_.begin());
    return r;
  }

  // (v, value): one more coordinate appended at the end.
  TritVector extended(trit value) const {
    if (dim_ + 1 > max_dim) throw std::invalid_argument("dimension would exceed the maximum");
    if (value > 2) throw std::invalid_argument("trit value out of range");
    TritVector r = *this;
    r.t_[dim_] = value;
    r.dim_ = dim_ + 1;
    return r;
  }

  std::uint64_t index() const {
    std::uint64_t r = 0;
    for (int i = 0; i < dim_; ++i) r = r * 3 + t_[i];
    return r;
  }

  std::string str() const {
    std::string s(static_cast<std::size_t>(dim_), '0');
    for (int i = 0; i < dim_; ++i) s[i] = static_cast<char>('0' + t_[i]);
    return s;
  }

  // Raw 0-based storage, for the dense inner loops of this library.
  const trit* data() const { return t_.data(); }
  trit* data() { return t_.data(); }

  friend bool operator==(const TritVector&, const TritVector&) = default;
  friend auto operator<=>(const TritVector&, const TritVector&) = default;

 private:
  void check_coord(int coord) const {
    if (coord < 1 || coord > dim_)
      throw std::out_of_range("coordinate " + std::to_string(coord) + " outside [1, " + std::to_string(dim_) + "]");
  }

  int dim_ = 0;
  std::array<trit, max_dim> t_{};
};

inline void check_same_dim(const TritVector& u, const TritVector& v) {
  if (u.dim() != v.dim())
    throw std::invalid_argument("dimension mismatch between " + u.str() + " and " + v.str());
}

inline int hamming(const TritVector& u, const TritVector& v) {
  check_same_dim(u, v);
  int n = 0;
  for (int i = 0; i < u.dim(); ++i) n += u.data()[i] != v.data()[i];
  return n;
}

inline bool agree_somewhere(const TritVector& u, const TritVector& v) { return hamming(u, v) < u.dim(); }

// 0 when the three vectors do not form a line, otherwise the 1-based free coordinate.
inline int edge_direction(const TritVector& a, const TritVector& b, const TritVector& c) {
  check_same_dim(a, b);
  check_same_dim(a, c);
  int dir = 0;
  for (int i = 0; i < a.dim(); ++i) {
    trit p = a.data()[i], q = b.data()[i], r = c.data()[i];
    if (p == q && q == r) continue;
    if (p == q || q == r || p == r || dir != 0) return 0;
    dir = i + 1;
  }
  return dir;
}

inline bool is_edge(const TritVector& a, const TritVector& b, const TritVector& c) { return edge_direction(a, b, c) != 0; }

class Hyperedge {
 public:
  Hyperedge(TritVector a, TritVector b, TritVector c) : v_{a, b, c} {
    direction_ = edge_direction(a, b, c);
    if (direction_ == 0) throw std::invalid_argument("{" + a.str() + ", " + b.str() + ", " + c.str() + "} is not an edge");
    std::sort(v_.begin(), v_.end());
  }

  const std::array<TritVector, 3>& vertices() const { return v_; }
  int direction() const { return direction_; }
  bool contains(const TritVector& v) const { return v == v_[0] || v == v_[1] || v == v_[2]; }

  std::string str() const { return "{" + v_[0].str() + ", " + v_[1].str() + ", " + v_[2].str() + "}"; }

  friend bool operator==(const Hyperedge& e, const Hyperedge& f) { return e.v_ == f.v_; }
  friend auto operator<=>(const Hyperedge& e, const Hyperedge& f) { return e.v_ <=> f.v_; }

 private:
  std::array<TritVector, 3> v_;
  int direction_ = 0;
};

// The three copies of Q(d-1) obtained by fixing one coordinate.
struct Layer {
  int split_coordinate = 1;
  trit value = 0;

  bool contains(const TritVector& v) const { return v.at(split_coordinate) == value; }
};

inline std::vector<TritVector> enumerate_vertices(int d) {
  check_dim(d);
  std::uint64_t n = pow3(d);
  std::vector<TritVector> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(TritVector::from_index(i, d));
  return out;
}

// Grouped by free coordinate, then by the lexicographic order of the member with a 0 there.
inline std::vector<Hyperedge> enumerate_edges(int d) {
  check_dim(d);
  std::vector<Hyperedge> out;
  if (d == 0) return out;
  auto vs = enumerate_vertices(d);
  out.reserve(static_cast<std::size_t>(d) * pow3(d - 1));
  for (int coord = 1; coord <= d; ++coord)
    for (const auto& v : vs)
      if (v.at(coord) == 0) out.emplace_back(v, v.with(coord, 1), v.with(coord, 2));
  return out;
}

inline Hyperedge lifting_edge(const TritVector& v, int split_coordinate) {
  if (split_coordinate < 1 || split_coordinate > v.dim())
    throw std::out_of_range("split coordinate " + std::to_string(split_coordinate) + " out of range");
  return Hyperedge(v.with(split_coordinate, 0), v.with(split_coordinate, 1), v.with(split_coordinate, 2));
}

// Swap coordinate i with the last one.
inline TritVector split(const TritVector& v, int i) {
  if (i < 1 || i > v.dim()) throw std::out_of_range("split coordinate " + std::to_string(i) + " out of range");
  TritVector r = v;
  std::swap(r.data()[i - 1], r.data()[v.dim() - 1]);
  return r;
}

// Ordered tuple (a,b) or (a,b,x,y) of distinct vertices of one cube.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(std::vector<TritVector> vs) : v_(std::move(vs)) {
    if (v_.size() != 2 && v_.size() != 4)
      throw std::invalid_argument("a configuration has 2 or 4 vertices, got " + std::to_string(v_.size()));
    for (std::size_t i = 0; i < v_.size(); ++i)
      for (std::size_t j = i + 1; j < v_.size(); ++j) {
        check_same_dim(v_[i], v_[j]);
        if (v_[i] == v_[j]) throw std::invalid_argument("configuration repeats vertex " + v_[i].str());
      }
  }

  Configuration(TritVector a, TritVector b) : Configuration(std::vector<TritVector>{a, b}) {}
  Configuration(TritVector a, TritVector b, TritVector x, TritVector y)
      : Configuration(std::vector<TritVector>{a, b, x, y}) {}

  static Configuration parse(std::string_view line) {
    std::vector<TritVector> vs;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) vs.push_back(TritVector::parse(line.substr(i, j - i)));
      i = j;
    }
    return Configuration(std::move(vs));
  }

  std::size_t size() const { return v_.size(); }
  int dim() const { return v_.empty() ? 0 : v_[0].dim(); }
  const std::vector<TritVector>& vertices() const { return v_; }
  const TritVector& operator[](std::size_t i) const { return v_.at(i); }

  const TritVector& a() const { return v_.at(0); }
  const TritVector& b() const { return v_.at(1); }
  const TritVector& x() const { return v_.at(2); }
  const TritVector& y() const { return v_.at(3); }

  Configuration with_xy_swapped() const {
    if (v_.size() != 4) throw std::logic_error("x/y swap needs a 4-configuration");
    return Configuration(v_[0], v_[1], v_[3], v_[2]);
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) s += ' ';
      s += v_[i].str();
    }
    return s;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::vector<TritVector> v_;
};

// Dense index model of Q(d): vertex i is TritVector::from_index(i, d), line l
// holds its three members in increasing order.
class CubeIndex {
 public:
  explicit CubeIndex(int d) : d_(d) {
    check_dim(d);
    n_ = static_cast<int>(pow3(d));
    incident_.assign(n_, {});
    for (int coord = 1; coord <= d; ++coord) {
      std::uint64_t step = pow3(d - coord);
      for (int v = 0; v < n_; ++v)
        if ((v / step) % 3 == 0) {
          int l = static_cast<int>(lines_.size());
          std::array<int, 3> m{v, v + static_cast<int>(step), v + 2 * static_cast<int>(step)};
          lines_.push_back(m);
          for (int u : m) incident_[u].push_back(l);
        }
    }
  }

  int dim() const { return d_; }
  int vertex_count() const { return n_; }
  int line_count() const { return static_cast<int>(lines_.size()); }
  const std::array<int, 3>& line(int l) const { return lines_[l]; }
  const std::vector<int>& incident(int v) const { return incident_[v]; }

 private:
  int d_;
  int n_;
  std::vector<std::array<int, 3>> lines_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace cubepath

template <>
struct std::hash<cubepath::TritVector> {
  std::size_t operator()(const cubepath::TritVector& v) const noexcept {
    return std::hash<std::uint64_t>{}(v.index() * 16 + static_cast<std::uint64_t>(v.dim()));
  }
};
