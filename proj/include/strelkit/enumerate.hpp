#pragma once

// Batch enumeration of the finite strings over a presentation, and the
// dimension of the algebra itself (finite or not).

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strelkit/representation.hpp"

namespace strelkit {

// dim of the quotient algebra as a vector space: trivial paths plus the
// composable arrow sequences avoiding every relation as a contiguous
// subpath. nullopt when infinitely many survive. Continuations of a path
// depend only on its last (longest relation - 1) arrows, so paths are
// counted on that finite state space; a reachable cycle means infinite.
inline std::optional<std::size_t> algebra_dimension(const StringPresentation& pres) {
  std::size_t rmax = 2;
  for (const auto& r : pres.relations()) rmax = std::max(rmax, r.size());
  auto truncate = [&](std::vector<std::size_t> s) {
    if (s.size() > rmax - 1) s.erase(s.begin(), s.end() - (rmax - 1));
    return s;
  };
  auto forbidden = [&](const std::vector<std::size_t>& s) {
    for (const auto& r : pres.relations())
      if (r.size() <= s.size() && std::equal(r.begin(), r.end(), s.end() - r.size()))
        return true;
    return false;
  };
  std::map<std::vector<std::size_t>, int> color;  // 1 on the stack, 2 done
  std::map<std::vector<std::size_t>, std::size_t> memo;
  std::function<std::optional<std::size_t>(const std::vector<std::size_t>&)> count =
      [&](const std::vector<std::size_t>& s) -> std::optional<std::size_t> {
    int& c = color[s];
    if (c == 1) return std::nullopt;
    if (c == 2) return memo[s];
    c = 1;
    std::size_t total = 1;
    for (std::size_t b = 0; b < pres.num_arrows(); ++b) {
      if (pres.arrow(s.back()).tail != pres.arrow(b).head) continue;
      auto ext = s;
      ext.push_back(b);
      if (forbidden(ext)) continue;
      auto sub = count(truncate(ext));
      if (!sub) return std::nullopt;
      total += *sub;
    }
    color[s] = 2;
    memo[s] = total;
    return total;
  };
  std::size_t dim = pres.num_vertices();
  for (std::size_t a = 0; a < pres.num_arrows(); ++a) {
    auto c = count(truncate({a}));
    if (!c) return std::nullopt;
    dim += *c;
  }
  return dim;
}

struct StringTableEntry {
  Word word;
  std::size_t dim = 0;
  bool indecomposable = false;
};

// All valid finite words of length <= max_len, trivial words under both
// signs and longer words modulo inversion (representative: the one whose
// text serialization is smaller). Sorted by length then text.
template <class K>
std::vector<StringTableEntry> enumerate_strings(const K& f, const StringPresentation& pres,
                                                std::size_t max_len) {
  std::vector<Word> words;
  for (std::size_t v = 0; v < pres.num_vertices(); ++v)
    for (int eps : {1, -1}) words.push_back(Word::trivial(v, eps));
  std::set<std::string> seen;
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& seq : layer)
      for (std::size_t a = 0; a < pres.num_arrows(); ++a)
        for (bool inv : {false, true}) {
          auto ext = seq;
          ext.push_back({static_cast<std::uint32_t>(a), inv});
          if (!is_valid_word(pres, Word::finite(ext))) continue;
          next.push_back(ext);
          auto w = Word::finite(ext);
          auto self = write_word(pres, w), other = write_word(pres, w.inverse());
          if (!seen.insert(std::min(self, other)).second) continue;
          words.push_back(self <= other ? w : w.inverse());
        }
    layer = std::move(next);
  }
  std::vector<StringTableEntry> out;
  for (auto& w : words) {
    auto m = string_module(f, pres, w);
    out.push_back({std::move(w), m.dim(), is_indecomposable(m)});
  }
  std::sort(out.begin(), out.end(), [&](const StringTableEntry& a, const StringTableEntry& b) {
    auto la = a.word.is_trivial() ? 0 : a.word.length();
    auto lb = b.word.is_trivial() ? 0 : b.word.length();
    if (la != lb) return la < lb;
    return write_word(pres, a.word) < write_word(pres, b.word);
  });
  return out;
}

}  // namespace strelkit
