#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "strelkit/word.hpp"

namespace strelkit {

// A batch of side words C(i, eps) of a word C, either a single one (step 0)
// or the arithmetic progression i = start + k*step riding a periodic ray.
// All members share the vertex v_i(C) and the sign, so they are mutually
// comparable; direction records how consecutive members compare.
struct SideFamily {
  std::size_t vertex;
  int eps;
  long start;
  long step;       // 0 for a single side word, else +- the ray's block length
  int direction;   // -1 ascending, 0 constant, +1 descending
};

// Decision data for the descending chain condition on side words: the module
// of a non-periodic word is a direct sum of copies of itself in every
// elementary extension exactly when no side-word family strictly descends.
// A failure is witnessed by one descending family; unrolling it gives an
// explicit infinite strictly descending chain.
struct ChainCertificate {
  bool verdict;
  std::optional<SideFamily> witness;  // present exactly when the verdict is false
  std::vector<SideFamily> families;   // the full analysis, single side words included
};

inline std::vector<Word> family_members(const StringPresentation& pres, const Word& c,
                                        const SideFamily& fam, std::size_t count) {
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back(side_word(pres, c, fam.start + (long)k * fam.step, fam.eps));
  return out;
}

namespace detail {

struct IndexRanges {
  long core_lo, core_hi;                     // inclusive; positions handled one by one
  std::vector<std::pair<long, long>> rays;   // (start, step) arithmetic progressions
};

// Split the index set into a finite core and at most two periodic rays. Ray
// starts sit far enough inside the periodic zone that the vertex sequence is
// periodic along each progression.
inline IndexRanges side_index_ranges(const Word& c) {
  IndexRanges r{0, 0, {}};
  switch (c.shape()) {
    case Word::Shape::Trivial:
      return r;
    case Word::Shape::Finite:
      r.core_hi = (long)c.length();
      return r;
    case Word::Shape::RightInfinite: {
      long w = (long)c.window().size(), p = (long)c.right_block().size();
      r.core_hi = w;
      for (long j = 1; j <= p; ++j) r.rays.emplace_back(w + j, p);
      return r;
    }
    case Word::Shape::LeftInfinite: {
      long s = (long)c.window().size(), p = (long)c.left_block().size();
      r.core_lo = -s;
      for (long j = 1; j <= p; ++j) r.rays.emplace_back(-s - j, -p);
      return r;
    }
    case Word::Shape::BiInfinite: {
      long lo = c.window_start(), hi = lo + (long)c.window().size() - 1;
      long pr = (long)c.right_block().size(), pl = (long)c.left_block().size();
      r.core_lo = lo - 1;
      r.core_hi = hi;
      for (long j = 1; j <= pr; ++j) r.rays.emplace_back(hi + j, pr);
      for (long j = 1; j <= pl; ++j) r.rays.emplace_back(lo - 1 - j, -pl);
      return r;
    }
    case Word::Shape::Periodic:
      break;
  }
  throw error("periodic words give band modules, not string modules");
}

// Consecutive members of a family compare the same way at every step: they
// diverge at a fixed seam inside the periodic pattern. The first four
// comparisons are checked explicitly and must agree.
inline int family_direction(const StringPresentation& pres, const Word& c, long start,
                            long step, int eps) {
  int dir = 0;
  for (int k = 0; k < 4; ++k) {
    auto a = side_word(pres, c, start + k * step, eps);
    auto b = side_word(pres, c, start + (k + 1) * step, eps);
    int cmp = compare_words(pres, a, b);
    int d = (cmp > 0) - (cmp < 0);
    if (k == 0)
      dir = d;
    else if (d != dir)
      throw error("side-word family is not eventually monotone");
  }
  return dir;
}

// Representatives of one (vertex, sign) batch must order consistently; any
// cycle among them would break the chain analysis, so fail loudly instead.
inline void verify_order_consistency(const StringPresentation& pres,
                                     const std::vector<Word>& ws) {
  std::size_t n = ws.size();
  std::vector<std::vector<int>> cmp(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int c = compare_words(pres, ws[i], ws[j]);
      cmp[i][j] = (c > 0) - (c < 0);
      cmp[j][i] = -cmp[i][j];
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (cmp[i][j] <= 0 && cmp[j][k] <= 0 && cmp[i][k] > 0 &&
            (cmp[i][j] < 0 || cmp[j][k] < 0))
          throw error("side words do not form a total order");
}

}  // namespace detail

// All side words C(i, eps) at positions with vertex v, reported as single
// words (finite core) plus monotone arithmetic families (periodic rays).
inline std::vector<SideFamily> side_word_families(const StringPresentation& pres, const Word& c,
                                                  std::size_t v, int eps) {
  if (eps != 1 && eps != -1) throw error("sign must be +1 or -1");
  if (!is_valid_word(pres, c)) throw error("not a word over this presentation");
  auto ranges = detail::side_index_ranges(c);
  std::vector<SideFamily> out;
  for (long i = ranges.core_lo; i <= ranges.core_hi; ++i) {
    if (c.vertex_at(i, pres) != v) continue;
    out.push_back({v, eps, i, 0, 0});
  }
  for (auto [start, step] : ranges.rays) {
    if (c.vertex_at(start, pres) != v) continue;
    out.push_back({v, eps, start, step, detail::family_direction(pres, c, start, step, eps)});
  }
  return out;
}

// The descending chain condition on side words, per vertex and sign. Finite
// unions of single words and ascending or constant families satisfy it; one
// strictly descending family refutes it and becomes the witness.
inline ChainCertificate is_sigma_pure_injective(const Word& c, const StringPresentation& pres) {
  ChainCertificate cert{true, std::nullopt, {}};
  for (std::size_t v = 0; v < pres.num_vertices(); ++v)
    for (int eps : {1, -1}) {
      auto fams = side_word_families(pres, c, v, eps);
      std::vector<Word> probes;
      probes.reserve(fams.size());
      for (const auto& fam : fams) probes.push_back(family_members(pres, c, fam, 1).front());
      detail::verify_order_consistency(pres, probes);
      for (auto& fam : fams) {
        if (fam.direction > 0 && !cert.witness) {
          cert.verdict = false;
          cert.witness = fam;
        }
        cert.families.push_back(fam);
      }
    }
  return cert;
}

}  // namespace strelkit
