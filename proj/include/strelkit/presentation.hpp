#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strelkit/field.hpp"

namespace strelkit {

// Which coefficient field a presentation file asks for.
struct FieldSpec {
  bool rational = true;
  std::int64_t p = 0;
  std::string str() const { return rational ? "Q" : "F " + std::to_string(p); }
};

struct Arrow {
  std::string name;
  std::size_t tail = 0;
  std::size_t head = 0;
};

// A letter is an arrow or its formal inverse.
struct Letter {
  std::uint32_t arrow = 0;
  bool inverse = false;
  bool operator==(const Letter&) const = default;
};

inline Letter inverse(Letter l) { return {l.arrow, !l.inverse}; }

// Quiver with monomial relations, as read from the line-oriented text format.
// Relations are stored in written order: in "rel x y" the arrow y is
// traversed first, so the consecutive-letter pattern it forbids is x then y.
class StringPresentation {
 public:
  static StringPresentation parse(const std::string& text) {
    StringPresentation p;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<std::string> tok;
      for (std::string t; ls >> t;) tok.push_back(t);
      if (tok.empty()) continue;
      auto fail = [&](const std::string& msg) {
        throw error("line " + std::to_string(lineno) + ": " + msg);
      };
      if (tok[0] == "field") {
        if (tok.size() == 2 && tok[1] == "Q") p.field_ = {true, 0};
        else if (tok.size() == 3 && tok[1] == "F") {
          try { p.field_ = {false, std::stoll(tok[2])}; }
          catch (const std::exception&) { fail("bad modulus"); }
        } else fail("expected 'field Q' or 'field F <p>'");
      } else if (tok[0] == "vertex") {
        if (tok.size() != 2) fail("expected 'vertex <name>'");
        if (p.vertex_ids_.count(tok[1])) fail("duplicate vertex " + tok[1]);
        p.vertex_ids_[tok[1]] = p.vertices_.size();
        p.vertices_.push_back(tok[1]);
      } else if (tok[0] == "arrow") {
        if (tok.size() != 6 || tok[2] != ":" || tok[4] != "->")
          fail("expected 'arrow <name> : <tail> -> <head>'");
        if (p.arrow_ids_.count(tok[1])) fail("duplicate arrow " + tok[1]);
        auto t = p.vertex_ids_.find(tok[3]);
        auto h = p.vertex_ids_.find(tok[5]);
        if (t == p.vertex_ids_.end()) fail("unknown vertex " + tok[3]);
        if (h == p.vertex_ids_.end()) fail("unknown vertex " + tok[5]);
        p.arrow_ids_[tok[1]] = p.arrows_.size();
        p.arrows_.push_back({tok[1], t->second, h->second});
      } else if (tok[0] == "rel") {
        if (tok.size() < 3) fail("relations are paths of length at least 2");
        std::vector<std::size_t> path;
        for (std::size_t i = 1; i < tok.size(); ++i) {
          auto a = p.arrow_ids_.find(tok[i]);
          if (a == p.arrow_ids_.end()) fail("unknown arrow " + tok[i]);
          path.push_back(a->second);
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          if (p.arrows_[path[i]].tail != p.arrows_[path[i + 1]].head)
            fail("relation path is not composable");
        p.relations_.push_back(path);
      } else {
        fail("unknown directive '" + tok[0] + "'");
      }
    }
    return p;
  }

  const FieldSpec& field_spec() const { return field_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::string& vertex_name(std::size_t v) const { return vertices_[v]; }
  const Arrow& arrow(std::size_t a) const { return arrows_[a]; }
  const std::vector<std::vector<std::size_t>>& relations() const { return relations_; }

  std::optional<std::size_t> vertex_id(const std::string& name) const {
    auto it = vertex_ids_.find(name);
    if (it == vertex_ids_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> arrow_id(const std::string& name) const {
    auto it = arrow_ids_.find(name);
    if (it == arrow_ids_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t head_of(Letter l) const {
    return l.inverse ? arrows_[l.arrow].tail : arrows_[l.arrow].head;
  }
  std::size_t tail_of(Letter l) const {
    return l.inverse ? arrows_[l.arrow].head : arrows_[l.arrow].tail;
  }
  std::string letter_name(Letter l) const {
    return arrows_[l.arrow].name + (l.inverse ? "-" : "");
  }

  bool has_length2_relation(std::size_t x, std::size_t y) const {
    for (const auto& r : relations_)
      if (r.size() == 2 && r[0] == x && r[1] == y) return true;
    return false;
  }

  // String-algebra axioms; empty result means valid.
  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      std::size_t in = 0, out = 0;
      for (const auto& a : arrows_) {
        if (a.head == v) ++in;
        if (a.tail == v) ++out;
      }
      if (in > 2)
        bad.push_back("vertex " + vertices_[v] + " is the head of " + std::to_string(in) +
                      " arrows (max 2)");
      if (out > 2)
        bad.push_back("vertex " + vertices_[v] + " is the tail of " + std::to_string(out) +
                      " arrows (max 2)");
    }
    for (std::size_t y = 0; y < arrows_.size(); ++y) {
      std::size_t left = 0, right = 0;  // arrows extending y on either side
      for (std::size_t x = 0; x < arrows_.size(); ++x) {
        if (arrows_[x].tail == arrows_[y].head && !has_length2_relation(x, y)) ++left;
        if (arrows_[y].tail == arrows_[x].head && !has_length2_relation(y, x)) ++right;
      }
      if (left > 1)
        bad.push_back("arrow " + arrows_[y].name + " has " + std::to_string(left) +
                      " continuations x with xy not a relation (max 1)");
      if (right > 1)
        bad.push_back("arrow " + arrows_[y].name + " has " + std::to_string(right) +
                      " continuations z with yz not a relation (max 1)");
    }
    return bad;
  }

  bool is_valid_string_algebra() const { return validate().empty(); }

  // Sign table: distinct letters with equal head may share a sign only as a
  // pair {x^{-1}, y} with xy a zero relation. Canonical assignment: letters
  // ordered arrows-then-inverses in declaration order, +1 preferred.
  struct SignTable {
    std::vector<int> direct, inv;
    int sign(Letter l) const { return l.inverse ? inv[l.arrow] : direct[l.arrow]; }
  };

  const SignTable& signs() const {
    if (signs_) return *signs_;
    SignTable t;
    t.direct.assign(arrows_.size(), 0);
    t.inv.assign(arrows_.size(), 0);
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      std::vector<Letter> letters;
      for (std::uint32_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].head == v) letters.push_back({a, false});
      for (std::uint32_t a = 0; a < arrows_.size(); ++a)
        if (arrows_[a].tail == v) letters.push_back({a, true});
      std::size_t k = letters.size();
      bool done = false;
      for (std::uint64_t mask = 0; mask < (1ull << k) && !done; ++mask) {
        std::vector<int> s(k);
        for (std::size_t i = 0; i < k; ++i)
          s[i] = ((mask >> (k - 1 - i)) & 1) ? -1 : +1;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
          for (std::size_t j = i + 1; j < k && ok; ++j)
            if (s[i] == s[j] && !same_sign_allowed(letters[i], letters[j])) ok = false;
        if (ok) {
          for (std::size_t i = 0; i < k; ++i)
            (letters[i].inverse ? t.inv : t.direct)[letters[i].arrow] = s[i];
          done = true;
        }
      }
      if (!done)
        throw error("no consistent sign table at vertex " + vertices_[v] +
                    " (is this a string algebra?)");
    }
    signs_ = std::move(t);
    return *signs_;
  }

 private:
  bool same_sign_allowed(Letter a, Letter b) const {
    // {x^{-1}, y} with xy a zero relation
    auto check = [&](Letter inv_l, Letter dir_l) {
      return inv_l.inverse && !dir_l.inverse &&
             has_length2_relation(inv_l.arrow, dir_l.arrow);
    };
    return check(a, b) || check(b, a);
  }

  FieldSpec field_;
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> relations_;
  std::map<std::string, std::size_t> vertex_ids_;
  std::map<std::string, std::size_t> arrow_ids_;
  mutable std::optional<SignTable> signs_;
};

}  // namespace strelkit
