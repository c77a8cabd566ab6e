// Builds a loose Hamilton path of Q(d) between two vertices and checks it.
// usage: hamilton_path <witnesses-d4.txt> <a> <b>

#include <iostream>

#include "cubepath/cubepath.hpp"

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: hamilton_path <witnesses-d4.txt> <a> <b>\n";
    return 2;
  }
  try {
    auto store = cubepath::load_store(argv[1]);
    auto a = cubepath::TritVector::parse(argv[2]);
    auto b = cubepath::TritVector::parse(argv[3]);
    auto cert = cubepath::lhc_path(a, b, store);
    auto verdict = cubepath::verify(cert);
    std::cout << cert.path.vertices.size() << " vertices, " << cert.path.length() << " edges, "
              << (verdict.ok ? "verified" : "rejected: " + verdict.diagnostic) << '\n';
    return verdict.ok ? 0 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
