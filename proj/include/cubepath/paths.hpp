#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "core.hpp"
#include "symmetry.hpp"

namespace cubepath {

// v0 ... v_{2l}; edge i (1-based) is {v_{2i-2}, v_{2i-1}, v_{2i}}.
struct LoosePath {
  std::vector<TritVector> vertices;

  LoosePath() = default;
  explicit LoosePath(std::vector<TritVector> vs) : vertices(std::move(vs)) {}

  int dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }
  std::size_t length() const { return vertices.empty() ? 0 : (vertices.size() - 1) / 2; }
  const TritVector& front() const { return vertices.front(); }
  const TritVector& back() const { return vertices.back(); }

  // Throws if some triple is not a line.
  std::vector<Hyperedge> edges() const {
    std::vector<Hyperedge> out;
    for (std::size_t i = 0; i + 2 < vertices.size(); i += 2)
      out.emplace_back(vertices[i], vertices[i + 1], vertices[i + 2]);
    return out;
  }

  friend bool operator==(const LoosePath&, const LoosePath&) = default;
};

struct PathCertificate {
  LoosePath path;
  TritVector start;
  TritVector end;
  std::vector<TritVector> omitted;

  int dim() const { return start.dim(); }

  friend bool operator==(const PathCertificate&, const PathCertificate&) = default;
};

inline PathCertificate certify(LoosePath p, std::vector<TritVector> omitted) {
  if (p.vertices.empty()) throw std::invalid_argument("empty path");
  PathCertificate c;
  c.start = p.front();
  c.end = p.back();
  c.path = std::move(p);
  c.omitted = std::move(omitted);
  return c;
}

struct Verdict {
  bool ok = true;
  std::string diagnostic;

  explicit operator bool() const { return ok; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// Independent check of a certificate, working from the raw trits only.
inline Verdict verify(const PathCertificate& cert) {
  const auto& vs = cert.path.vertices;
  int d = cert.start.dim();
  if (d < 0 || d > max_dim) return Verdict::fail("dimension out of range");
  if (vs.empty()) return Verdict::fail("path has no vertices");
  if (vs.size() % 2 == 0) return Verdict::fail("path has an even number of vertices");
  auto bad_vertex = [&](const TritVector& v) {
    if (v.dim() != d) return true;
    for (int i = 0; i < d; ++i)
      if (v.data()[i] > 2) return true;
    return false;
  };
  if (bad_vertex(cert.end)) return Verdict::fail("end vertex " + cert.end.str() + " has the wrong dimension");
  for (const auto& v : vs)
    if (bad_vertex(v)) return Verdict::fail("path vertex " + v.str() + " has the wrong dimension");
  for (const auto& v : cert.omitted)
    if (bad_vertex(v)) return Verdict::fail("omitted vertex " + v.str() + " has the wrong dimension");
  std::uint64_t n = pow3(d);
  std::vector<char> seen(n, 0);
  for (const auto& v : vs) {
    if (seen[v.index()]) return Verdict::fail("vertices not distinct: " + v.str() + " repeats");
    seen[v.index()] = 1;
  }
  std::unordered_set<std::uint64_t> edge_keys;
  for (std::size_t i = 0; i + 2 < vs.size(); i += 2) {
    const TritVector &p = vs[i], &q = vs[i + 1], &r = vs[i + 2];
    int differing = 0;
    bool line = true;
    for (int k = 0; k < d; ++k) {
      int a = p.data()[k], b = q.data()[k], c = r.data()[k];
      if (a == b && b == c) continue;
      ++differing;
      if (a == b || b == c || a == c) line = false;
    }
    if (differing != 1 || !line)
      return Verdict::fail("edge " + std::to_string(i / 2 + 1) + " {" + p.str() + ", " + q.str() + ", " + r.str() +
                           "} is not a line of the cube");
    std::uint64_t lo = std::min({p.index(), q.index(), r.index()});
    std::uint64_t hi = std::max({p.index(), q.index(), r.index()});
    if (!edge_keys.insert(lo * n + hi).second) return Verdict::fail("edges not distinct");
  }
  if (cert.start != vs.front()) return Verdict::fail("start " + cert.start.str() + " is not the first path vertex");
  if (cert.end != vs.back()) return Verdict::fail("end " + cert.end.str() + " is not the last path vertex");
  for (const auto& v : cert.omitted) {
    if (seen[v.index()] == 1) return Verdict::fail("omitted vertex " + v.str() + " lies on the path");
    if (seen[v.index()] == 2) return Verdict::fail("omitted vertex " + v.str() + " listed twice");
    seen[v.index()] = 2;
  }
  for (std::uint64_t i = 0; i < n; ++i)
    if (!seen[i]) return Verdict::fail("vertex " + TritVector::from_index(i, d).str() + " neither covered nor omitted");
  return {};
}

// p, then the line e through p's last vertex and q's first vertex, then q.
inline LoosePath concat(const LoosePath& p, const Hyperedge& e, const LoosePath& q) {
  if (p.vertices.empty() || q.vertices.empty()) throw std::invalid_argument("concat of an empty path");
  const TritVector& s = p.back();
  const TritVector& t = q.front();
  if (!e.contains(s)) throw std::invalid_argument("joining edge " + e.str() + " misses the tail vertex " + s.str());
  if (!e.contains(t)) throw std::invalid_argument("joining edge " + e.str() + " misses the head vertex " + t.str());
  if (s == t) throw std::invalid_argument("joining edge meets both paths in " + s.str());
  TritVector mid;
  for (const auto& v : e.vertices())
    if (v != s && v != t) mid = v;
  std::unordered_set<TritVector> used(p.vertices.begin(), p.vertices.end());
  if (used.size() != p.vertices.size()) throw std::invalid_argument("first path repeats a vertex");
  if (used.count(mid)) throw std::invalid_argument("middle vertex " + mid.str() + " already on the first path");
  used.insert(mid);
  for (const auto& v : q.vertices)
    if (!used.insert(v).second) throw std::invalid_argument("vertex " + v.str() + " on both sides of the join");
  LoosePath r;
  r.vertices.reserve(p.vertices.size() + q.vertices.size() + 1);
  r.vertices = p.vertices;
  r.vertices.push_back(mid);
  r.vertices.insert(r.vertices.end(), q.vertices.begin(), q.vertices.end());
  return r;
}

// concat with the joining edge given by its three vertices in traversal order.
inline LoosePath concat(const LoosePath& p, const TritVector& s, const TritVector& mid, const TritVector& t,
                        const LoosePath& q) {
  if (p.back() != s) throw std::invalid_argument("join expected tail vertex " + s.str() + ", found " + p.back().str());
  if (q.front() != t) throw std::invalid_argument("join expected head vertex " + t.str() + ", found " + q.front().str());
  Hyperedge e(s, mid, t);
  return concat(p, e, q);
}

inline LoosePath reverse(const LoosePath& p) { return LoosePath({p.vertices.rbegin(), p.vertices.rend()}); }

inline PathCertificate reverse(const PathCertificate& c) {
  return PathCertificate{reverse(c.path), c.end, c.start, c.omitted};
}

struct EndpointVariant {
  TritVector start;
  TritVector end;
  LoosePath path;
};

// The readings of one edge sequence obtained by swapping the first two and/or
// the last two vertices. A path of length 0 has the single reading (v0, v0).
inline std::vector<EndpointVariant> endpoint_variants(const LoosePath& p) {
  std::vector<EndpointVariant> out;
  if (p.vertices.size() == 1) {
    out.push_back({p.front(), p.front(), p});
    return out;
  }
  for (int head = 0; head < 2; ++head)
    for (int tail = 0; tail < 2; ++tail) {
      LoosePath q = p;
      auto& vs = q.vertices;
      std::size_t n = vs.size();
      if (head) std::swap(vs[0], vs[1]);
      if (tail) std::swap(vs[n - 1], vs[n - 2]);
      bool dup = false;
      for (const auto& o : out) dup = dup || (o.start == vs.front() && o.end == vs.back());
      if (!dup) out.push_back({vs.front(), vs.back(), q});
    }
  return out;
}

inline LoosePath apply(const Symmetry& s, const LoosePath& p) {
  LoosePath r;
  r.vertices.reserve(p.vertices.size());
  for (const auto& v : p.vertices) r.vertices.push_back(apply(s, v));
  return r;
}

inline PathCertificate apply(const Symmetry& s, const PathCertificate& c) {
  PathCertificate r;
  r.path = apply(s, c.path);
  r.start = apply(s, c.start);
  r.end = apply(s, c.end);
  for (const auto& v : c.omitted) r.omitted.push_back(apply(s, v));
  return r;
}

// ---- text form ----

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == '\r') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::vector<TritVector> parse_vertices(const std::string& line) {
  std::vector<TritVector> out;
  for (const auto& t : tokens(line)) out.push_back(TritVector::parse(t));
  return out;
}

inline std::string join(const std::vector<TritVector>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += vs[i].str();
  }
  return s;
}

inline bool blank(const std::string& line) { return tokens(line).empty(); }

}  // namespace detail

inline void write_certificate(std::ostream& os, const PathCertificate& c) {
  os << "d=" << c.dim() << '\n';
  os << c.start.str() << ' ' << c.end.str() << '\n';
  os << detail::join(c.omitted) << '\n';
  os << detail::join(c.path.vertices) << '\n';
}

inline std::string to_string(const PathCertificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

// One record as read from text: either a certificate or a per-record error.
struct CertificateRecord {
  std::optional<PathCertificate> certificate;
  std::string error;
  int line = 0;  // 1-based line where the record starts
};

// Reads the remaining lines of a "d=<dim>" record. No validation beyond shape:
// callers run verify().
inline PathCertificate parse_certificate_body(int dim, const std::string& ends, const std::string& omitted,
                                              const std::string& path) {
  check_dim(dim);
  auto e = detail::parse_vertices(ends);
  if (e.size() != 2) throw std::invalid_argument("endpoint line needs exactly 2 vertices");
  PathCertificate c;
  c.start = e[0];
  c.end = e[1];
  c.omitted = detail::parse_vertices(omitted);
  c.path.vertices = detail::parse_vertices(path);
  for (const auto& v : c.path.vertices)
    if (v.dim() != dim) throw std::invalid_argument("vertex " + v.str() + " does not have dimension " + std::to_string(dim));
  if (c.start.dim() != dim || c.end.dim() != dim) throw std::invalid_argument("endpoint of the wrong dimension");
  for (const auto& v : c.omitted)
    if (v.dim() != dim) throw std::invalid_argument("omitted vertex of the wrong dimension");
  return c;
}

// The 81-token encoding for d=4: the 79 path vertices in order, then the 2 omitted ones.
inline PathCertificate parse_witness_line(const std::string& line) {
  auto vs = detail::parse_vertices(line);
  if (vs.size() != 81) throw std::invalid_argument("witness line needs 81 vertices, got " + std::to_string(vs.size()));
  for (const auto& v : vs)
    if (v.dim() != 4) throw std::invalid_argument("witness vertex " + v.str() + " is not 4-dimensional");
  LoosePath p(std::vector<TritVector>(vs.begin(), vs.begin() + 79));
  return certify(p, {vs[79], vs[80]});
}

inline bool parse_dim_line(const std::string& line, int& dim) {
  auto t = detail::tokens(line);
  if (t.size() != 1 || t[0].rfind("d=", 0) != 0) return false;
  try {
    std::size_t used = 0;
    dim = std::stoi(t[0].substr(2), &used);
    return used == t[0].size() - 2;
  } catch (const std::exception&) {
    return false;
  }
}

// Reads every record of a stream: native 4-line certificates and 81-vertex
// witness lines may be mixed. Lines that fit neither form are reported.
inline std::vector<CertificateRecord> read_certificates(std::istream& is) {
  std::vector<std::string> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  std::vector<CertificateRecord> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    if (detail::blank(lines[i])) {
      ++i;
      continue;
    }
    CertificateRecord rec;
    rec.line = static_cast<int>(i + 1);
    int dim = 0;
    if (parse_dim_line(lines[i], dim)) {
      if (i + 3 >= lines.size()) {
        rec.error = "truncated certificate";
        out.push_back(rec);
        break;
      }
      try {
        rec.certificate = parse_certificate_body(dim, lines[i + 1], lines[i + 2], lines[i + 3]);
      } catch (const std::exception& ex) {
        rec.error = ex.what();
      }
      i += 4;
    } else {
      try {
        rec.certificate = parse_witness_line(lines[i]);
      } catch (const std::exception& ex) {
        rec.error = ex.what();
      }
      ++i;
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace cubepath
