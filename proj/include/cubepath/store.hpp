#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "paths.hpp"
#include "symmetry.hpp"

namespace cubepath {

inline constexpr const char* store_engine_version = "line-selection-1";

// Normalized 4-configurations of Q(4) with a covering almost-Hamilton path
// each, stored in the normalized frame.
struct WitnessStore {
  std::map<Configuration, PathCertificate> entries;
  std::uint64_t seed = 0;
  std::string engine = store_engine_version;
  std::vector<std::string> rejected;  // diagnostics from the last load
};

class base_case_incomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool covers_exactly(const PathCertificate& cert, const Configuration& key) {
  if (cert.start != key.a() || cert.end != key.b() || cert.omitted.size() != 2) return false;
  return (cert.omitted[0] == key.x() && cert.omitted[1] == key.y()) ||
         (cert.omitted[0] == key.y() && cert.omitted[1] == key.x());
}

}  // namespace detail

inline void save(const WitnessStore& s, std::ostream& os) {
  os << "cubepath-witness v1 d=4 seed=" << s.seed << " engine=" << s.engine << '\n';
  for (const auto& [key, cert] : s.entries) {
    os << key.str() << '\n';
    write_certificate(os, cert);
  }
}

inline void save(const WitnessStore& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write witness store " + path);
  save(s, os);
  if (!os) throw std::runtime_error("error while writing witness store " + path);
}

// Every entry is re-verified; entries that fail are dropped and reported in
// `rejected`. Records without a key line (plain certificates or 81-vertex
// witness lines) are filed under the normalization of their own endpoints.
inline WitnessStore load_store(std::istream& is) {
  WitnessStore s;
  std::vector<std::string> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  std::size_t i = 0;
  if (!lines.empty() && lines[0].rfind("cubepath-witness", 0) == 0) {
    for (const auto& t : detail::tokens(lines[0])) {
      if (t.rfind("seed=", 0) == 0) s.seed = std::stoull(t.substr(5));
      if (t.rfind("engine=", 0) == 0) s.engine = t.substr(7);
    }
    i = 1;
  }
  while (i < lines.size()) {
    if (detail::blank(lines[i])) {
      ++i;
      continue;
    }
    int start_line = static_cast<int>(i + 1);
    auto where = [&] { return "line " + std::to_string(start_line) + ": "; };
    std::optional<Configuration> key;
    int dim = 0;
    auto t = detail::tokens(lines[i]);
    if (t.size() == 4 && i + 1 < lines.size() && parse_dim_line(lines[i + 1], dim)) {
      try {
        key = Configuration::parse(lines[i]);
      } catch (const std::exception& ex) {
        s.rejected.push_back(where() + "bad key: " + ex.what());
      }
      ++i;
    }
    std::optional<PathCertificate> cert;
    try {
      if (parse_dim_line(lines[i], dim)) {
        if (i + 3 >= lines.size()) {
          s.rejected.push_back(where() + "truncated certificate");
          break;
        }
        cert = parse_certificate_body(dim, lines[i + 1], lines[i + 2], lines[i + 3]);
        i += 4;
      } else {
        cert = parse_witness_line(lines[i]);
        ++i;
      }
    } catch (const std::exception& ex) {
      s.rejected.push_back(where() + ex.what());
      if (!parse_dim_line(lines[i], dim)) ++i;
      else i += 4;
      continue;
    }
    if (!cert) continue;
    if (cert->dim() != 4 || cert->omitted.size() != 2) {
      s.rejected.push_back(where() + "not an almost-Hamilton path of Q(4)");
      continue;
    }
    auto v = verify(*cert);
    if (!v) {
      s.rejected.push_back(where() + v.diagnostic);
      continue;
    }
    if (!key) {
      auto nz = normalize(Configuration(cert->start, cert->end, cert->omitted[0], cert->omitted[1]));
      PathCertificate mapped = apply(nz.symmetry, *cert);
      mapped.omitted = {nz.config.x(), nz.config.y()};
      key = nz.config;
      cert = mapped;
    }
    if (!is_normalized(*key)) {
      s.rejected.push_back(where() + "key " + key->str() + " is not normalized");
      continue;
    }
    if (!detail::covers_exactly(*cert, *key)) {
      s.rejected.push_back(where() + "certificate does not match key " + key->str());
      continue;
    }
    if (!s.entries.emplace(*key, *cert).second) s.rejected.push_back(where() + "duplicate key " + key->str());
  }
  return s;
}

inline WitnessStore load_store(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("witness store " + path + " not found; generate it with `cubepath search-base --d 4 --out " +
                             path + "`");
  return load_store(is);
}

// A verified covering path for any 4-configuration of Q(4) whose normalized
// form is in the store, mapped back into the caller's frame.
inline PathCertificate lookup(const WitnessStore& s, const Configuration& c) {
  if (c.size() != 4 || c.dim() != 4) throw std::invalid_argument("lookup needs a 4-configuration of Q(4)");
  auto nz = normalize(c);
  auto it = s.entries.find(nz.config);
  if (it == s.entries.end()) throw base_case_incomplete("base case incomplete: no witness for " + c.str() +
                                                        " (normalized " + nz.config.str() + ")");
  PathCertificate cert = apply(inverse(nz.symmetry), it->second);
  cert.omitted = {c.x(), c.y()};
  auto v = verify(cert);
  if (!v) throw std::logic_error("stored witness for " + nz.config.str() + " failed verification: " + v.diagnostic);
  if (!detail::covers_exactly(cert, c)) throw std::logic_error("stored witness does not map onto " + c.str());
  return cert;
}

}  // namespace cubepath
