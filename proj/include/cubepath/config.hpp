#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "symmetry.hpp"

namespace cubepath {

struct TypeAssignment {
  int base_type = 0;         // 1..5
  int split_coordinate = 0;  // 1-based
  bool xy_swapped = false;
  std::optional<int> phi;    // 1..4

  std::string str() const {
    return "t" + std::to_string(base_type) + " i=" + std::to_string(split_coordinate) +
           " swap=" + (xy_swapped ? "1" : "0") + " phi=" + (phi ? std::to_string(*phi) : "-");
  }

  friend bool operator==(const TypeAssignment&, const TypeAssignment&) = default;
  friend auto operator<=>(const TypeAssignment& p, const TypeAssignment& q) {
    return std::tuple(p.split_coordinate, p.xy_swapped, p.base_type, p.phi.value_or(0)) <=>
           std::tuple(q.split_coordinate, q.xy_swapped, q.base_type, q.phi.value_or(0));
  }
};

namespace detail {

// Does u differ from v in some coordinate other than skip (0-based)?
inline bool differs_off(const TritVector& u, const TritVector& v, int skip) {
  for (int k = 0; k < u.dim(); ++k)
    if (k != skip && u.data()[k] != v.data()[k]) return true;
  return false;
}

inline int agreements_off(const TritVector& u, const TritVector& v, int skip) {
  int n = 0;
  for (int k = 0; k < u.dim(); ++k)
    if (k != skip && u.data()[k] == v.data()[k]) ++n;
  return n;
}

inline bool distinct3(int p, int q, int r) { return p != q && p != r && q != r; }

// Types of (a,b,x,y) split at 0-based coordinate i, in the given x/y order.
inline void classify_at(const TritVector& a, const TritVector& b, const TritVector& x, const TritVector& y, int i,
                        bool swapped, std::vector<TypeAssignment>& out) {
  int A = a.data()[i], B = b.data()[i], X = x.data()[i], Y = y.data()[i];
  auto push = [&](int t, bool with_phi, int phi) {
    TypeAssignment ta{t, i + 1, swapped, std::nullopt};
    if (with_phi) ta.phi = phi;
    out.push_back(ta);
  };
  auto a_apart = [&] { return differs_off(a, b, i) && differs_off(a, x, i) && differs_off(a, y, i); };
  auto b_apart = [&] { return differs_off(b, a, i) && differs_off(b, x, i) && differs_off(b, y, i); };
  auto phi2 = [&] {
    return agreements_off(a, x, i) >= 2 || agreements_off(a, y, i) >= 2 || agreements_off(b, x, i) >= 2 ||
           agreements_off(b, y, i) >= 2;
  };
  if (A == X && distinct3(A, B, Y) && a_apart()) {
    bool phi = agreements_off(b, a, i) + agreements_off(b, x, i) + agreements_off(b, y, i) > 0;
    push(1, phi, 1);
  }
  if (A == B && distinct3(A, X, Y) && a_apart()) push(2, phi2(), 2);
  if (A == X && B == Y && A != B) push(3, agreements_off(a, y, i) > 0 || agreements_off(b, x, i) > 0, 3);
  if (B == X && distinct3(A, B, Y) && b_apart()) {
    bool phi = agreements_off(a, b, i) + agreements_off(a, x, i) + agreements_off(a, y, i) > 0;
    push(4, phi, 4);
  }
  if (A == B && distinct3(A, X, Y) && b_apart()) push(5, phi2(), 2);
}

}  // namespace detail

// Every (type, split coordinate, x/y order) whose pattern holds, with the phi
// refinement attached when its agreement condition also holds.
inline std::vector<TypeAssignment> classify(const Configuration& c) {
  if (c.size() != 4) throw std::invalid_argument("classify needs a 4-configuration");
  std::vector<TypeAssignment> out;
  for (int i = 0; i < c.dim(); ++i) {
    detail::classify_at(c.a(), c.b(), c.x(), c.y(), i, false, out);
    detail::classify_at(c.a(), c.b(), c.y(), c.x(), i, true, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool in_S(const Configuration& c) { return !classify(c).empty(); }

inline bool in_Sprime(const Configuration& c) {
  for (const auto& t : classify(c))
    if (t.phi) return true;
  return false;
}

inline constexpr std::array<const char*, 14> penultimate_rows{"0000", "0001", "0010", "0011", "0012", "0100", "0101",
                                                              "0102", "0110", "0111", "0112", "0120", "0121", "0122"};

// Index 1..14 of a row of (a,b,x,y) entries in the fixed list; rows outside
// the list are an error.
inline int row_number(const std::array<trit, 4>& row) {
  std::string s;
  for (trit t : row) s += static_cast<char>('0' + t);
  for (int k = 0; k < 14; ++k)
    if (s == penultimate_rows[k]) return k + 1;
  throw std::invalid_argument("row " + s + " is not one of the 14 valid penultimate rows");
}

// The penultimate row (coordinate d-1) of a configuration whose split
// coordinate is already last and whose row d-1 is in first-traversal form.
inline int penultimate_row(const Configuration& c) {
  if (c.size() != 4) throw std::invalid_argument("penultimate row needs a 4-configuration");
  if (c.dim() < 2) throw std::invalid_argument("penultimate row needs d >= 2");
  int k = c.dim() - 2;
  return row_number({c.a().data()[k], c.b().data()[k], c.x().data()[k], c.y().data()[k]});
}

}  // namespace cubepath
