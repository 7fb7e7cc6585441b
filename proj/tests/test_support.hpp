#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "strelkit/matrix.hpp"
#include "strelkit/subspace.hpp"

namespace strelkit::testing {

// Seed for property tests; override with STRELKIT_SEED for shrinking a failure.
// Announced on stderr once so failing runs always record it.
inline std::uint64_t seed() {
  static const std::uint64_t value = [] {
    std::uint64_t v = 20260823ull;
    if (const char* s = std::getenv("STRELKIT_SEED")) v = std::strtoull(s, nullptr, 10);
    std::fprintf(stderr, "property test seed %llu\n", (unsigned long long)v);
    return v;
  }();
  return value;
}

using Rng = std::mt19937_64;

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class K>
Matrix<K> random_matrix(const K& f, Rng& rng, std::size_t rows, std::size_t cols,
                        int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix<K> m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.from_int(d(rng));
  return m;
}

template <class K>
Subspace<K> random_subspace(const K& f, Rng& rng, std::size_t ambient,
                            std::size_t max_gens) {
  std::uniform_int_distribution<std::size_t> g(0, max_gens);
  return Subspace<K>::span(random_matrix(f, rng, g(rng), ambient));
}

// Brute-force vector enumeration of a subspace over F_p; independent oracle
// for the subspace calculus at tiny sizes.
inline std::set<std::vector<std::int64_t>> enumerate_vectors(const PrimeField& f,
                                                             const Subspace<PrimeField>& s) {
  std::set<std::vector<std::int64_t>> out;
  std::size_t d = s.dim();
  std::vector<std::int64_t> c(d, 0);
  while (true) {
    std::vector<std::int64_t> v(s.ambient(), 0);
    for (std::size_t i = 0; i < d; ++i) {
      auto b = s.basis_vector(i);
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = f.add(v[j], f.mul(c[i], b[j]));
    }
    out.insert(v);
    std::size_t k = 0;
    while (k < d && ++c[k] == f.modulus()) c[k++] = 0;
    if (k == d) break;
  }
  return out;
}

}  // namespace strelkit::testing
