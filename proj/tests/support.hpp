#pragma once

#include <random>
#include <string>

#include "cubepath/cubepath.hpp"

namespace cubepath::testing {

inline std::string data_path(const std::string& name) { return std::string(CUBEPATH_DATA_DIR) + "/" + name; }

// The four uncovered configurations of Q(4), vertices as columns of the matrix form.
inline Configuration matrix_A() { return Configuration::parse("0000 1111 1122 2211"); }
inline Configuration matrix_B() { return Configuration::parse("0000 1111 0022 2200"); }
inline Configuration matrix_C() { return Configuration::parse("0000 0001 1110 2221"); }
inline Configuration matrix_D() { return Configuration::parse("0000 0011 1100 1111"); }

inline TritVector random_vertex(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> pick(0, pow3(d) - 1);
  return TritVector::from_index(pick(rng), d);
}

inline Configuration random_config(int d, std::mt19937_64& rng) {
  for (;;) {
    TritVector a = random_vertex(d, rng), b = random_vertex(d, rng), x = random_vertex(d, rng),
               y = random_vertex(d, rng);
    if (a != b && a != x && a != y && b != x && b != y && x != y) return Configuration(a, b, x, y);
  }
}

inline Configuration random_S_config(int d, std::mt19937_64& rng) {
  for (;;) {
    auto c = random_config(d, rng);
    if (in_S(c)) return c;
  }
}

inline const WitnessStore& shipped_store() {
  static const WitnessStore store = load_store(data_path("witnesses-d4.txt"));
  return store;
}

}  // namespace cubepath::testing
