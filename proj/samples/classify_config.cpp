// Prints the normal form and the types of a 4-configuration given as four vertices a b x y.

#include <iostream>

#include "cubepath/cubepath.hpp"

int main(int argc, char** argv) {
  if (argc != 5) {
    std::cerr << "usage: classify_config <a> <b> <x> <y>\n";
    return 2;
  }
  try {
    cubepath::Configuration c(cubepath::TritVector::parse(argv[1]), cubepath::TritVector::parse(argv[2]),
                              cubepath::TritVector::parse(argv[3]), cubepath::TritVector::parse(argv[4]));
    std::cout << "normal form: " << cubepath::normalize(c).config.str() << '\n';
    for (const auto& t : cubepath::classify(c)) std::cout << t.str() << '\n';
    std::cout << "in S: " << cubepath::in_S(c) << ", in S': " << cubepath::in_Sprime(c) << '\n';
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
}
