#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "strelkit/presentation.hpp"

namespace strelkit {

inline bool letter_less(Letter a, Letter b) {
  if (a.arrow != b.arrow) return a.arrow < b.arrow;
  return a.inverse < b.inverse;
}

// A word over the letters of a string algebra. Index sets are intervals of
// integers; the stored letters sit at positions
//   finite:          1..n
//   right-infinite:  1..
//   left-infinite:   ..0
//   two-sided:       all of Z
// A trivial word is a vertex with a sign. Infinite tails are eventually
// periodic and stored as an explicit window plus repeating blocks; the
// constructors canonicalize (maximal absorption into the blocks, primitive
// blocks, lex-least rotation for the purely periodic case), so structural
// equality of the representation is equality of words.
class Word {
 public:
  enum class Shape { Trivial, Finite, RightInfinite, LeftInfinite, BiInfinite, Periodic };

  static Word trivial(std::size_t vertex, int eps) {
    if (eps != 1 && eps != -1) throw error("sign must be +1 or -1");
    Word w;
    w.shape_ = Shape::Trivial;
    w.vertex_ = vertex;
    w.eps_ = eps;
    return w;
  }

  static Word finite(std::vector<Letter> letters) {
    if (letters.empty()) throw error("finite word needs at least one letter");
    Word w;
    w.shape_ = Shape::Finite;
    w.window_ = std::move(letters);
    return w;
  }

  // prefix at positions 1..p, then block repeating forever
  static Word right_infinite(std::vector<Letter> prefix, std::vector<Letter> block) {
    if (block.empty()) throw error("empty repeating block");
    block = primitive(block);
    while (!prefix.empty() && prefix.back() == block.back()) {
      prefix.pop_back();
      rotate_right(block);
    }
    Word w;
    w.shape_ = Shape::RightInfinite;
    w.window_ = std::move(prefix);
    w.rblock_ = std::move(block);
    return w;
  }

  // block repeating to the left, then suffix ending at position 0
  static Word left_infinite(std::vector<Letter> block, std::vector<Letter> suffix) {
    if (block.empty()) throw error("empty repeating block");
    block = primitive(block);
    while (!suffix.empty() && suffix.front() == block.front()) {
      suffix.erase(suffix.begin());
      rotate_left(block);
    }
    Word w;
    w.shape_ = Shape::LeftInfinite;
    w.window_ = std::move(suffix);
    w.lblock_ = std::move(block);
    return w;
  }

  // left block for positions < lo, window at lo.., right block after it
  static Word bi_infinite(std::vector<Letter> left, std::vector<Letter> window,
                          std::vector<Letter> right, long lo) {
    if (left.empty() || right.empty()) throw error("empty repeating block");
    left = primitive(left);
    right = primitive(right);
    while (!window.empty() && window.back() == right.back()) {
      window.pop_back();
      rotate_right(right);
    }
    while (!window.empty() && window.front() == left.front()) {
      window.erase(window.begin());
      rotate_left(left);
      ++lo;
    }
    if (window.empty()) {
      if (left == right) {
        // purely periodic; anchor so that letter(i) = block[(i - lo) mod k]
        std::vector<Letter> strip(right.size());
        for (std::size_t j = 0; j < right.size(); ++j)
          strip[j] = right[mod(1 + (long)j - lo, right.size())];
        return periodic(std::move(strip));
      }
      // the seam between the two patterns can slide; push it left as far
      // as it goes so the representation is unique
      while (left.back() == right.back()) {
        rotate_right(left);
        rotate_right(right);
        --lo;
      }
    }
    Word w;
    w.shape_ = Shape::BiInfinite;
    w.window_ = std::move(window);
    w.lblock_ = std::move(left);
    w.rblock_ = std::move(right);
    w.lo_ = lo;
    return w;
  }

  // two-sided periodic word with letter(i) = block[(i - 1) mod k]
  static Word periodic(std::vector<Letter> block) {
    if (block.empty()) throw error("empty repeating block");
    block = primitive(block);
    std::size_t k = block.size(), best = 0;
    for (std::size_t r = 1; r < k; ++r) {
      for (std::size_t j = 0; j < k; ++j) {
        Letter a = block[(best + j) % k], b = block[(r + j) % k];
        if (a == b) continue;
        if (letter_less(b, a)) best = r;
        break;
      }
    }
    Word w;
    w.shape_ = Shape::Periodic;
    std::vector<Letter> rot(k);
    for (std::size_t j = 0; j < k; ++j) rot[j] = block[(best + j) % k];
    w.rblock_ = std::move(rot);
    // letter(i) = rblock_[(i - 1 + phase) mod k]; undo the rotation so
    // letter(1) is still block[0]
    w.phase_ = (long)mod(-(long)best, k);
    return w;
  }

  Shape shape() const { return shape_; }
  bool is_trivial() const { return shape_ == Shape::Trivial; }
  bool is_finite() const { return shape_ == Shape::Finite; }
  bool has_head() const {
    return shape_ == Shape::Trivial || shape_ == Shape::Finite ||
           shape_ == Shape::RightInfinite;
  }
  bool is_two_sided() const {
    return shape_ == Shape::BiInfinite || shape_ == Shape::Periodic;
  }

  std::size_t length() const {
    if (shape_ == Shape::Trivial) return 0;
    if (shape_ != Shape::Finite) throw error("length of an infinite word");
    return window_.size();
  }

  std::size_t trivial_vertex() const { return vertex_; }
  int trivial_sign() const { return eps_; }
  const std::vector<Letter>& left_block() const { return lblock_; }
  const std::vector<Letter>& right_block() const { return rblock_; }
  const std::vector<Letter>& window() const { return window_; }
  long window_start() const { return shape_ == Shape::BiInfinite ? lo_ : 1; }

  // primitive period of the underlying two-sided periodic word
  std::size_t period() const {
    if (shape_ != Shape::Periodic) throw error("not a periodic word");
    return rblock_.size();
  }

  bool has_letter(long i) const {
    switch (shape_) {
      case Shape::Trivial: return false;
      case Shape::Finite: return i >= 1 && i <= (long)window_.size();
      case Shape::RightInfinite: return i >= 1;
      case Shape::LeftInfinite: return i <= 0;
      default: return true;
    }
  }

  Letter letter(long i) const {
    switch (shape_) {
      case Shape::Trivial: break;
      case Shape::Finite:
        if (i >= 1 && i <= (long)window_.size()) return window_[i - 1];
        break;
      case Shape::RightInfinite: {
        if (i < 1) break;
        long p = (long)window_.size();
        if (i <= p) return window_[i - 1];
        return rblock_[mod(i - p - 1, rblock_.size())];
      }
      case Shape::LeftInfinite: {
        if (i > 0) break;
        long s = (long)window_.size();
        if (i >= 1 - s) return window_[i - (1 - s)];
        long t = (-s) - i;  // 0 at the last block letter
        return lblock_[lblock_.size() - 1 - mod(t, lblock_.size())];
      }
      case Shape::BiInfinite: {
        long hi = lo_ + (long)window_.size() - 1;
        if (i >= lo_ && i <= hi) return window_[i - lo_];
        if (i > hi) return rblock_[mod(i - hi - 1, rblock_.size())];
        long t = lo_ - 1 - i;
        return lblock_[lblock_.size() - 1 - mod(t, lblock_.size())];
      }
      case Shape::Periodic:
        return rblock_[mod(i - 1 + phase_, rblock_.size())];
    }
    throw error("letter index out of range");
  }

  std::vector<Letter> letters(long from, long to) const {
    std::vector<Letter> out;
    for (long i = from; i <= to; ++i) out.push_back(letter(i));
    return out;
  }

  // vertex at position i (between letters i and i+1)
  std::size_t vertex_at(long i, const StringPresentation& pres) const {
    if (shape_ == Shape::Trivial) {
      if (i != 0) throw error("position out of range");
      return vertex_;
    }
    if (has_letter(i)) return pres.tail_of(letter(i));
    if (has_letter(i + 1)) return pres.head_of(letter(i + 1));
    throw error("position out of range");
  }

  std::size_t head_vertex(const StringPresentation& pres) const {
    if (!has_head()) throw error("word has no head");
    return vertex_at(0, pres);
  }

  // sign of the word: the sign of its first letter, or the stored sign
  int sign(const StringPresentation& pres) const {
    if (!has_head()) throw error("word has no head");
    if (shape_ == Shape::Trivial) return eps_;
    return pres.signs().sign(letter(1));
  }

  Word inverse() const {
    auto inv_rev = [](const std::vector<Letter>& v) {
      std::vector<Letter> out(v.rbegin(), v.rend());
      for (auto& l : out) l = strelkit::inverse(l);
      return out;
    };
    switch (shape_) {
      case Shape::Trivial: return trivial(vertex_, -eps_);
      case Shape::Finite: return finite(inv_rev(window_));
      case Shape::RightInfinite: return left_infinite(inv_rev(rblock_), inv_rev(window_));
      case Shape::LeftInfinite: return right_infinite(inv_rev(window_), inv_rev(lblock_));
      case Shape::BiInfinite:
        // (C^-1)_i = (C_{1-i})^-1, so the window lands at 1-hi .. 1-lo
        return bi_infinite(inv_rev(rblock_), inv_rev(window_), inv_rev(lblock_),
                           1 - (lo_ + (long)window_.size() - 1));
      case Shape::Periodic: {
        std::vector<Letter> strip(rblock_.size());
        for (std::size_t j = 0; j < rblock_.size(); ++j)
          strip[j] = strelkit::inverse(letter(-(long)j));  // (C^-1)_{1+j} = (C_{-j})^-1
        return periodic(std::move(strip));
      }
    }
    throw error("unreachable");
  }

  // C[m]: the word i -> C_{i+m}; only two-sided words can be shifted
  Word shift(long m) const {
    if (shape_ == Shape::Periodic) {
      std::vector<Letter> strip(rblock_.size());
      for (std::size_t j = 0; j < rblock_.size(); ++j) strip[j] = letter(1 + (long)j + m);
      return periodic(std::move(strip));
    }
    if (shape_ == Shape::BiInfinite) {
      Word w = *this;
      w.lo_ -= m;
      return w;
    }
    throw error("only two-sided words can be shifted");
  }

  bool operator==(const Word&) const = default;

 private:
  static std::size_t mod(long a, std::size_t k) {
    long m = a % (long)k;
    return (std::size_t)(m < 0 ? m + (long)k : m);
  }
  static void rotate_left(std::vector<Letter>& b) {
    std::rotate(b.begin(), b.begin() + 1, b.end());
  }
  static void rotate_right(std::vector<Letter>& b) {
    std::rotate(b.begin(), b.end() - 1, b.end());
  }
  static std::vector<Letter> primitive(std::vector<Letter> b) {
    std::size_t k = b.size();
    for (std::size_t d = 1; d < k; ++d) {
      if (k % d) continue;
      bool per = true;
      for (std::size_t j = d; j < k && per; ++j)
        if (!(b[j] == b[j % d])) per = false;
      if (per) {
        b.resize(d);
        return b;
      }
    }
    return b;
  }

  Shape shape_ = Shape::Trivial;
  std::size_t vertex_ = 0;
  int eps_ = 1;
  std::vector<Letter> window_, lblock_, rblock_;
  long lo_ = 1;
  long phase_ = 0;
};

// Conditions for a letter sequence to be a word: consecutive letters are
// composable, never a letter followed by its own inverse, and no zero
// relation (or inverse of one) occurs as a run of consecutive letters.
// Violations in the periodic tails show up within two block repetitions
// plus the longest relation, so checking a bounded strip is complete.
inline std::vector<std::string> check_word(const StringPresentation& pres, const Word& w) {
  std::vector<std::string> bad;
  if (w.shape() == Word::Shape::Trivial) {
    if (w.trivial_vertex() >= pres.num_vertices()) bad.push_back("unknown vertex");
    return bad;
  }
  long relmax = 2;
  for (const auto& r : pres.relations()) relmax = std::max(relmax, (long)r.size());
  long from = 1, to = 1;
  switch (w.shape()) {
    case Word::Shape::Finite:
      from = 1;
      to = (long)w.length();
      break;
    case Word::Shape::RightInfinite:
      from = 1;
      to = (long)w.window().size() + 2 * (long)w.right_block().size() + relmax;
      break;
    case Word::Shape::LeftInfinite:
      to = 0;
      from = -((long)w.window().size() + 2 * (long)w.left_block().size() + relmax);
      break;
    case Word::Shape::BiInfinite:
      from = w.window_start() - 2 * (long)w.left_block().size() - relmax;
      to = w.window_start() + (long)w.window().size() - 1 +
           2 * (long)w.right_block().size() + relmax;
      break;
    case Word::Shape::Periodic:
      from = 1;
      to = 2 * (long)w.period() + relmax;
      break;
    default: break;
  }
  auto pos = [&](long i) { return "position " + std::to_string(i); };
  for (long i = from; i < to; ++i) {
    Letter a = w.letter(i), b = w.letter(i + 1);
    if (pres.tail_of(a) != pres.head_of(b))
      bad.push_back(pos(i) + ": " + pres.letter_name(a) + " then " + pres.letter_name(b) +
                    " is not composable");
    if (inverse(a) == b)
      bad.push_back(pos(i) + ": letter " + pres.letter_name(a) +
                    " followed by its inverse");
  }
  for (const auto& rel : pres.relations()) {
    long m = (long)rel.size();
    for (long i = from; i + m - 1 <= to; ++i) {
      bool direct = true, inv = true;
      for (long j = 0; j < m; ++j) {
        Letter l = w.letter(i + j);
        if (l.inverse || l.arrow != rel[j]) direct = false;
        Letter li = w.letter(i + m - 1 - j);
        if (!li.inverse || li.arrow != rel[j]) inv = false;
      }
      if (direct || inv) {
        std::string path;
        for (std::size_t j = 0; j < rel.size(); ++j)
          path += (j ? " " : "") + pres.arrow(rel[j]).name;
        bad.push_back(pos(i) + ": zero relation " + path + (direct ? "" : " (inverted)") +
                      " occurs");
      }
    }
  }
  return bad;
}

inline bool is_valid_word(const StringPresentation& pres, const Word& w) {
  return check_word(pres, w).empty();
}

// C_{>i}: the letters strictly after position i, re-indexed from 1.
// For a finite word cut at its end this is a trivial word whose sign is the
// one that lets C = C_{<=i} . C_{>i} compose.
inline Word slice_after(const StringPresentation& pres, const Word& w, long i) {
  switch (w.shape()) {
    case Word::Shape::Trivial:
      if (i != 0) throw error("position out of range");
      return w;
    case Word::Shape::Finite: {
      long n = (long)w.length();
      if (i < 0 || i > n) throw error("position out of range");
      if (i == n)
        return Word::trivial(w.vertex_at(n, pres),
                             -pres.signs().sign(inverse(w.letter(n))));
      return Word::finite(w.letters(i + 1, n));
    }
    case Word::Shape::RightInfinite: {
      if (i < 0) throw error("position out of range");
      long p = (long)w.window().size();
      if (i <= p) return Word::right_infinite(w.letters(i + 1, p), w.right_block());
      auto block = w.right_block();
      std::rotate(block.begin(), block.begin() + (std::size_t)((i - p) % (long)block.size()),
                  block.end());
      return Word::right_infinite({}, block);
    }
    case Word::Shape::LeftInfinite: {
      if (i > 0) throw error("position out of range");
      if (i == 0)
        return Word::trivial(w.vertex_at(0, pres),
                             -pres.signs().sign(inverse(w.letter(0))));
      return Word::finite(w.letters(i + 1, 0));
    }
    case Word::Shape::BiInfinite: {
      long hi = w.window_start() + (long)w.window().size() - 1;
      if (i >= hi) {
        auto block = w.right_block();
        std::rotate(block.begin(), block.begin() + (std::size_t)((i - hi) % (long)block.size()),
                    block.end());
        return Word::right_infinite({}, block);
      }
      return Word::right_infinite(w.letters(i + 1, hi), w.right_block());
    }
    case Word::Shape::Periodic: {
      std::vector<Letter> block(w.period());
      for (std::size_t j = 0; j < block.size(); ++j) block[j] = w.letter(i + 1 + (long)j);
      return Word::right_infinite({}, block);
    }
  }
  throw error("unreachable");
}

// C_{<=i}: the letters up to position i. Finite results keep indices 1..i;
// left-infinite results are re-anchored so position i becomes 0.
inline Word slice_upto(const StringPresentation& pres, const Word& w, long i) {
  switch (w.shape()) {
    case Word::Shape::Trivial:
      if (i != 0) throw error("position out of range");
      return w;
    case Word::Shape::Finite:
    case Word::Shape::RightInfinite: {
      if (i < 0 || !(i == 0 || w.has_letter(i))) throw error("position out of range");
      if (i == 0)
        return Word::trivial(w.vertex_at(0, pres), pres.signs().sign(w.letter(1)));
      return Word::finite(w.letters(1, i));
    }
    case Word::Shape::LeftInfinite: {
      if (i > 0) throw error("position out of range");
      long s = (long)w.window().size();
      if (i >= 1 - s) return Word::left_infinite(w.left_block(), w.letters(1 - s, i));
      // inside the periodic tail: re-anchor the block to end at position i
      long k = (long)w.left_block().size();
      std::vector<Letter> block(k);
      for (long j = 0; j < k; ++j) block[j] = w.letter(i - k + 1 + j);
      return Word::left_infinite(block, {});
    }
    case Word::Shape::BiInfinite: {
      long lo = w.window_start();
      if (i < lo) {
        long t = lo - 1 - i;
        auto block = w.left_block();
        std::rotate(block.begin(), block.end() - (std::size_t)(t % (long)block.size()),
                    block.end());
        return Word::left_infinite(block, {});
      }
      return Word::left_infinite(w.left_block(), w.letters(lo, i));
    }
    case Word::Shape::Periodic: {
      std::vector<Letter> block(w.period());
      // anchor so the last block letter is C_i
      for (std::size_t j = 0; j < block.size(); ++j)
        block[j] = w.letter(i - (long)block.size() + 1 + (long)j);
      return Word::left_infinite(block, {});
    }
  }
  throw error("unreachable");
}

// The two one-sided words of C at position i are C_{>i} and (C_{<=i})^-1;
// they have the same head and opposite signs, and C(i, d) selects the one
// of sign d. For a trivial word both sides collapse to 1_{(v, d)}.
inline Word side_word(const StringPresentation& pres, const Word& w, long i, int d) {
  if (d != 1 && d != -1) throw error("sign must be +1 or -1");
  if (w.is_trivial()) {
    if (i != 0) throw error("position out of range");
    return Word::trivial(w.trivial_vertex(), d);
  }
  Word after = slice_after(pres, w, i);
  if (after.sign(pres) == d) return after;
  return slice_upto(pres, w, i).inverse();
}

// Composition of words: B finite or trivial, D with a head, matching vertex
// and the usual sign conventions for trivial factors. Throws if the
// concatenation is not a word.
inline Word compose(const StringPresentation& pres, const Word& b, const Word& d) {
  if (!b.has_head() || !d.has_head()) throw error("compose needs words with a head");
  if (b.shape() == Word::Shape::RightInfinite)
    throw error("left factor of a composition must be finite");
  if (b.is_trivial()) {
    if (d.head_vertex(pres) != b.trivial_vertex() || d.sign(pres) != b.trivial_sign())
      throw error("composition undefined");
    return d;
  }
  long n = (long)b.length();
  std::size_t tailv = b.vertex_at(n, pres);
  int tsign = -pres.signs().sign(inverse(b.letter(n)));
  if (d.is_trivial()) {
    if (d.trivial_vertex() != tailv || d.trivial_sign() != tsign)
      throw error("composition undefined");
    return b;
  }
  if (d.head_vertex(pres) != tailv) throw error("composition undefined");
  Word out = [&] {
    auto letters = b.letters(1, n);
    if (d.is_finite()) {
      auto dl = d.letters(1, (long)d.length());
      letters.insert(letters.end(), dl.begin(), dl.end());
      return Word::finite(std::move(letters));
    }
    auto dp = d.window();
    letters.insert(letters.end(), dp.begin(), dp.end());
    return Word::right_infinite(std::move(letters), d.right_block());
  }();
  auto bad = check_word(pres, out);
  if (!bad.empty()) throw error("composition is not a word: " + bad.front());
  return out;
}

// All letters l such that C.l is a word (C finite or trivial).
inline std::vector<Letter> extensions_of(const StringPresentation& pres, const Word& w) {
  if (!w.has_head() || w.shape() == Word::Shape::RightInfinite)
    throw error("extensions need a finite or trivial word");
  std::vector<Letter> out;
  for (std::uint32_t a = 0; a < pres.num_arrows(); ++a) {
    for (bool inv : {false, true}) {
      Letter l{a, inv};
      Word cand = Word::finite({l});
      try {
        Word ext = compose(pres, w, cand);
        if (is_valid_word(pres, ext)) out.push_back(l);
      } catch (const error&) {
      }
    }
  }
  return out;
}

// Total order on the words with a fixed head and sign: at the first
// divergence one word continues with an arrow and the other with an inverse
// (the sign conditions force this), and the arrow side is smaller; a word
// that stops is smaller than one continuing with an inverse and larger than
// one continuing with an arrow. Eventual periodicity bounds how far two
// distinct words can agree, so the scan below terminates.
inline int compare_words(const StringPresentation& pres, const Word& a, const Word& b) {
  if (!a.has_head() || !b.has_head()) throw error("comparison needs words with a head");
  if (a.head_vertex(pres) != b.head_vertex(pres) || a.sign(pres) != b.sign(pres))
    throw error("words are not comparable (different head or sign)");
  auto tail_len = [](const Word& w) -> long {
    switch (w.shape()) {
      case Word::Shape::Trivial: return 0;
      case Word::Shape::Finite: return (long)w.length();
      case Word::Shape::RightInfinite:
        return (long)w.window().size() + (long)w.right_block().size();
      default: return 0;
    }
  };
  auto block_len = [](const Word& w) -> long {
    return w.shape() == Word::Shape::RightInfinite ? (long)w.right_block().size() : 1;
  };
  long bound = tail_len(a) + tail_len(b) + std::lcm(block_len(a), block_len(b)) + 1;
  for (long i = 1; i <= bound; ++i) {
    bool ha = a.has_letter(i), hb = b.has_letter(i);
    if (!ha && !hb) return 0;
    if (ha != hb) {
      const Word& longer = ha ? a : b;
      bool longer_is_arrow = !longer.letter(i).inverse;
      // continuing with an arrow sorts below stopping; with an inverse, above
      if (longer_is_arrow) return ha ? -1 : 1;
      return ha ? 1 : -1;
    }
    Letter la = a.letter(i), lb = b.letter(i);
    if (la == lb) continue;
    if (la.inverse == lb.inverse)
      throw error("divergent letters with equal direction; invalid words?");
    return la.inverse ? 1 : -1;
  }
  return 0;  // periodic agreement beyond the bound means equality
}

// ---------------------------------------------------------------------------
// text syntax
//
//   x y-                letters; a trailing '-' inverts
//   1(v,+)              trivial word at vertex v
//   x (y x-)^inf        eventually periodic to the right
//   (x y)^-inf x-       eventually periodic to the left
//   (y)^-inf x | (x)^inf  two-sided; '|' sits between positions 0 and 1
//   ^inf(x y-)^inf      two-sided periodic, first block letter at position 1
//
// For two-sided words without a bar the explicit letters start at position 1.

namespace detail {

struct WordTokens {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  bool done() const { return pos >= toks.size(); }
  const std::string& peek() const {
    static const std::string empty;
    return done() ? empty : toks[pos];
  }
  std::string next() {
    if (done()) throw error("unexpected end of word");
    return toks[pos++];
  }
  void expect(const std::string& t) {
    if (next() != t) throw error("expected '" + t + "' in word");
  }
};

inline WordTokens tokenize_word(const std::string& s) {
  WordTokens out;
  std::size_t i = 0;
  auto issp = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (i < s.size()) {
    char c = s[i];
    if (issp(c)) {
      ++i;
    } else if (c == '(' || c == ')' || c == '|' || c == ',') {
      out.toks.push_back(std::string(1, c));
      ++i;
    } else if (c == '^') {
      std::size_t j = i + 1;
      if (j < s.size() && s[j] == '-') ++j;
      if (s.compare(j, 3, "inf") != 0) throw error("expected ^inf or ^-inf");
      out.toks.push_back(s.substr(i, j + 3 - i));
      i = j + 3;
    } else {
      std::size_t j = i;
      while (j < s.size() && !issp(s[j]) && s[j] != '(' && s[j] != ')' && s[j] != '|' &&
             s[j] != ',' && s[j] != '^')
        ++j;
      out.toks.push_back(s.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

inline Letter parse_letter(const StringPresentation& pres, const std::string& tok) {
  std::string name = tok;
  bool inv = false;
  if (name.size() > 1 && name.back() == '-') {
    inv = true;
    name.pop_back();
  }
  auto id = pres.arrow_id(name);
  if (!id) throw error("unknown arrow '" + name + "'");
  return {(std::uint32_t)*id, inv};
}

}  // namespace detail

inline Word parse_word(const StringPresentation& pres, const std::string& text) {
  auto tk = detail::tokenize_word(text);
  if (tk.done()) throw error("empty word");

  // trivial word 1(v,s)
  if (tk.peek() == "1") {
    tk.next();
    tk.expect("(");
    std::string v = tk.next();
    tk.expect(",");
    std::string sg = tk.next();
    tk.expect(")");
    if (!tk.done()) throw error("trailing input after trivial word");
    auto vid = pres.vertex_id(v);
    if (!vid) throw error("unknown vertex '" + v + "'");
    if (sg != "+" && sg != "-") throw error("sign must be + or -");
    return Word::trivial(*vid, sg == "+" ? 1 : -1);
  }

  auto parse_block = [&](detail::WordTokens& t) {
    t.expect("(");
    std::vector<Letter> block;
    while (t.peek() != ")") block.push_back(detail::parse_letter(pres, t.next()));
    t.expect(")");
    return block;
  };

  // two-sided periodic ^inf( ... )^inf
  if (tk.peek() == "^inf") {
    tk.next();
    auto block = parse_block(tk);
    tk.expect("^inf");
    if (!tk.done()) throw error("trailing input after periodic word");
    if (block.empty()) throw error("empty repeating block");
    return Word::periodic(block);
  }

  std::optional<std::vector<Letter>> left, right;
  std::vector<Letter> before_bar, after_bar;
  bool seen_bar = false;
  if (tk.peek() == "(") {
    // could be a left block or a right block; decide by the marker after ')'
    std::size_t save = tk.pos;
    auto block = parse_block(tk);
    if (!tk.done() && tk.peek() == "^-inf") {
      tk.next();
      left = block;
    } else {
      tk.pos = save;
    }
  }
  while (!tk.done() && tk.peek() != "(") {
    if (tk.peek() == "|") {
      if (seen_bar) throw error("more than one '|' in word");
      seen_bar = true;
      tk.next();
      continue;
    }
    (seen_bar ? after_bar : before_bar).push_back(detail::parse_letter(pres, tk.next()));
  }
  if (!tk.done() && tk.peek() == "(") {
    auto block = parse_block(tk);
    tk.expect("^inf");
    right = block;
  }
  if (!tk.done()) throw error("trailing input after word");
  if (left && !left->empty() && right && !right->empty()) {
    std::vector<Letter> win = before_bar;
    win.insert(win.end(), after_bar.begin(), after_bar.end());
    long lo = seen_bar ? 1 - (long)before_bar.size() : 1;
    return Word::bi_infinite(*left, win, *right, lo);
  }
  if (left && !left->empty()) {
    if (seen_bar && !after_bar.empty()) throw error("letters after '|' in a left-infinite word");
    return Word::left_infinite(*left, before_bar);
  }
  std::vector<Letter> letters = before_bar;
  letters.insert(letters.end(), after_bar.begin(), after_bar.end());
  if (seen_bar && !before_bar.empty()) throw error("letters before '|' without a left block");
  if (right && !right->empty()) return Word::right_infinite(letters, *right);
  if (letters.empty()) throw error("empty word");
  return Word::finite(letters);
}

inline std::string write_word(const StringPresentation& pres, const Word& w) {
  auto join = [&](const std::vector<Letter>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? " " : "") + pres.letter_name(v[i]);
    return s;
  };
  switch (w.shape()) {
    case Word::Shape::Trivial:
      return "1(" + pres.vertex_name(w.trivial_vertex()) + "," +
             (w.trivial_sign() > 0 ? "+" : "-") + ")";
    case Word::Shape::Finite: return join(w.window());
    case Word::Shape::RightInfinite: {
      std::string s = join(w.window());
      if (!s.empty()) s += " ";
      return s + "(" + join(w.right_block()) + ")^inf";
    }
    case Word::Shape::LeftInfinite: {
      std::string s = "(" + join(w.left_block()) + ")^-inf";
      if (!w.window().empty()) s += " " + join(w.window());
      return s;
    }
    case Word::Shape::BiInfinite: {
      // widen the window so the bar between positions 0 and 1 is visible,
      // and re-anchor both blocks at the widened edges
      long lo = std::min(w.window_start(), 1l);
      long hi = std::max(w.window_start() + (long)w.window().size() - 1, 0l);
      long kl = (long)w.left_block().size(), kr = (long)w.right_block().size();
      std::string s = "(" + join(w.letters(lo - kl, lo - 1)) + ")^-inf";
      std::string b4 = join(w.letters(lo, 0)), b5 = join(w.letters(1, hi));
      if (!b4.empty()) s += " " + b4;
      s += " |";
      if (!b5.empty()) s += " " + b5;
      return s + " (" + join(w.letters(hi + 1, hi + kr)) + ")^inf";
    }
    case Word::Shape::Periodic:
      return "^inf(" + join(w.letters(1, (long)w.period())) + ")^inf";
  }
  throw error("unreachable");
}

}  // namespace strelkit
