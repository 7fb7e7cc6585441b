#pragma once

// Readers and writers for the line-oriented text formats: linear relations,
// Kronecker pencils, plain matrices, and modules over a presentation. In all
// of them '#' starts a comment, a vector is a comma-separated list of field
// literals, and the empty vector is written '.'.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "strelkit/kronecker.hpp"
#include "strelkit/relation.hpp"
#include "strelkit/representation.hpp"

namespace strelkit {

namespace detail {

struct FileLine {
  std::size_t no;
  std::vector<std::string> tok;
};

inline std::vector<FileLine> tokenize_file(const std::string& text) {
  std::vector<FileLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (!tok.empty()) out.push_back({no, std::move(tok)});
  }
  return out;
}

inline error at_line(std::size_t no, const std::string& msg) {
  return error("line " + std::to_string(no) + ": " + msg);
}

inline FieldSpec parse_field_tokens(const FileLine& l) {
  if (l.tok.size() == 2 && l.tok[1] == "Q") return {true, 0};
  if (l.tok.size() == 3 && l.tok[1] == "F") {
    try {
      return {false, std::stoll(l.tok[2])};
    } catch (const std::exception&) {
    }
  }
  throw at_line(l.no, "expected 'field Q' or 'field F <p>'");
}

inline FieldSpec field_spec_of(const RationalField&) { return {true, 0}; }
inline FieldSpec field_spec_of(const PrimeField& f) { return {false, f.modulus()}; }

inline bool spec_match(const FieldSpec& a, const FieldSpec& b) {
  return a.rational == b.rational && a.p == b.p;
}

template <class K>
void check_field_line(const K& f, const FileLine& l) {
  if (!spec_match(parse_field_tokens(l), field_spec_of(f)))
    throw at_line(l.no, "file declares field " + parse_field_tokens(l).str() +
                            " but " + f.name() + " was requested");
}

inline std::size_t parse_count(const std::string& s, std::size_t lineno) {
  try {
    if (!s.empty() && s[0] != '-') return std::stoull(s);
  } catch (const std::exception&) {
  }
  throw at_line(lineno, "bad count '" + s + "'");
}

template <class K>
std::vector<typename K::Elem> parse_vector(const K& f, const std::string& s,
                                           std::size_t lineno) {
  std::vector<typename K::Elem> v;
  if (s == ".") return v;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    auto piece = s.substr(start, comma == std::string::npos ? std::string::npos
                                                            : comma - start);
    if (piece.empty()) throw at_line(lineno, "empty vector entry");
    try {
      v.push_back(f.parse(piece));
    } catch (const error& e) {
      throw at_line(lineno, e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return v;
}

template <class K>
std::string format_vector(const K& f, const std::vector<typename K::Elem>& v) {
  if (v.empty()) return ".";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += f.str(v[i]);
  }
  return s;
}

}  // namespace detail

// The field a file declares on its 'field' line.
inline FieldSpec scan_field_spec(const std::string& text) {
  for (const auto& l : detail::tokenize_file(text))
    if (l.tok[0] == "field") return detail::parse_field_tokens(l);
  throw error("no 'field' line in file");
}

// Relation format: 'field', 'dim <n>' (or 'dim <target> <source>'), then one
// 'pair <out> <in>' line per spanning vector of the graph.
template <class K>
LinearRelation<K> read_relation(const K& f, const std::string& text) {
  std::optional<std::size_t> tdim, sdim;
  std::vector<std::vector<typename K::Elem>> rows;
  for (const auto& l : detail::tokenize_file(text)) {
    if (l.tok[0] == "field") {
      detail::check_field_line(f, l);
    } else if (l.tok[0] == "dim") {
      if (l.tok.size() != 2 && l.tok.size() != 3)
        throw detail::at_line(l.no, "expected 'dim <n>' or 'dim <target> <source>'");
      tdim = detail::parse_count(l.tok[1], l.no);
      sdim = l.tok.size() == 3 ? detail::parse_count(l.tok[2], l.no) : *tdim;
    } else if (l.tok[0] == "pair") {
      if (!tdim) throw detail::at_line(l.no, "'pair' before 'dim'");
      if (l.tok.size() != 3) throw detail::at_line(l.no, "expected 'pair <out> <in>'");
      auto out = detail::parse_vector(f, l.tok[1], l.no);
      auto in = detail::parse_vector(f, l.tok[2], l.no);
      if (out.size() != *tdim || in.size() != *sdim)
        throw detail::at_line(l.no, "vector length does not match dim");
      out.insert(out.end(), in.begin(), in.end());
      rows.push_back(std::move(out));
    } else {
      throw detail::at_line(l.no, "unknown directive '" + l.tok[0] + "'");
    }
  }
  if (!tdim) throw error("missing 'dim' line");
  auto graph = Subspace<K>::span(Matrix<K>::from_rows(f, *tdim + *sdim, rows));
  return LinearRelation<K>(f, *tdim, *sdim, graph);
}

template <class K>
std::string write_relation(const LinearRelation<K>& c) {
  const K& f = c.field();
  std::string s = "field " + detail::field_spec_of(f).str() + "\n";
  s += "dim " + std::to_string(c.target_dim());
  if (!c.is_square()) s += " " + std::to_string(c.source_dim());
  s += "\n";
  for (std::size_t i = 0; i < c.graph().dim(); ++i) {
    auto row = c.graph().basis_vector(i);
    std::vector<typename K::Elem> out(row.begin(), row.begin() + c.target_dim());
    std::vector<typename K::Elem> in(row.begin() + c.target_dim(), row.end());
    s += "pair " + detail::format_vector(f, out) + " " + detail::format_vector(f, in) + "\n";
  }
  return s;
}

// Pencil format: 'field', optional 'shape <rows> <cols>', then the rows of
// the two matrices as 'p: <vector>' and 'q: <vector>' lines.
template <class K>
KroneckerModule<K> read_pencil(const K& f, const std::string& text) {
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<std::vector<typename K::Elem>> prows, qrows;
  for (const auto& l : detail::tokenize_file(text)) {
    if (l.tok[0] == "field") {
      detail::check_field_line(f, l);
    } else if (l.tok[0] == "shape") {
      if (l.tok.size() != 3) throw detail::at_line(l.no, "expected 'shape <rows> <cols>'");
      shape = {detail::parse_count(l.tok[1], l.no), detail::parse_count(l.tok[2], l.no)};
    } else if (l.tok[0] == "p:" || l.tok[0] == "q:") {
      if (l.tok.size() != 2) throw detail::at_line(l.no, "expected '" + l.tok[0] + " <vector>'");
      auto v = detail::parse_vector(f, l.tok[1], l.no);
      if (shape && v.size() != shape->second)
        throw detail::at_line(l.no, "row length does not match shape");
      (l.tok[0] == "p:" ? prows : qrows).push_back(std::move(v));
    } else {
      throw detail::at_line(l.no, "unknown directive '" + l.tok[0] + "'");
    }
  }
  if (!shape) {
    if (prows.empty() || prows.size() != qrows.size())
      throw error("pencil needs matching p: and q: rows (or an explicit shape)");
    shape = {prows.size(), prows.front().size()};
  }
  if (prows.size() != shape->first || qrows.size() != shape->first)
    throw error("pencil row count does not match shape");
  auto p = Matrix<K>::from_rows(f, shape->second, prows);
  auto q = Matrix<K>::from_rows(f, shape->second, qrows);
  return KroneckerModule<K>(f, std::move(p), std::move(q));
}

template <class K>
std::string write_pencil(const KroneckerModule<K>& m) {
  const K& f = m.field;
  std::string s = "field " + detail::field_spec_of(f).str() + "\n";
  s += "shape " + std::to_string(m.y_dim) + " " + std::to_string(m.x_dim) + "\n";
  for (std::size_t i = 0; i < m.y_dim; ++i) s += "p: " + detail::format_vector(f, m.p.row(i)) + "\n";
  for (std::size_t i = 0; i < m.y_dim; ++i) s += "q: " + detail::format_vector(f, m.q.row(i)) + "\n";
  return s;
}

// Matrix format: one row per line; optional 'field' and 'shape' lines.
template <class K>
Matrix<K> read_matrix(const K& f, const std::string& text) {
  std::optional<std::pair<std::size_t, std::size_t>> shape;
  std::vector<std::vector<typename K::Elem>> rows;
  for (const auto& l : detail::tokenize_file(text)) {
    if (l.tok[0] == "field") {
      detail::check_field_line(f, l);
    } else if (l.tok[0] == "shape") {
      if (l.tok.size() != 3) throw detail::at_line(l.no, "expected 'shape <rows> <cols>'");
      shape = {detail::parse_count(l.tok[1], l.no), detail::parse_count(l.tok[2], l.no)};
    } else if (l.tok.size() == 1) {
      rows.push_back(detail::parse_vector(f, l.tok[0], l.no));
    } else {
      throw detail::at_line(l.no, "expected one vector per line");
    }
  }
  std::size_t cols = shape ? shape->second : (rows.empty() ? 0 : rows.front().size());
  if (shape && rows.size() != shape->first) throw error("matrix row count does not match shape");
  return Matrix<K>::from_rows(f, cols, rows);
}

template <class K>
std::string write_matrix(const Matrix<K>& m) {
  std::string s;
  if (m.rows() == 0 || m.cols() == 0)
    s += "shape " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i)
    s += detail::format_vector(m.field(), m.row(i)) + "\n";
  return s;
}

// Module format: 'field', one 'vertex <name> dim <n>' line per vertex, then
// per arrow its action written as a graph in the relation pair syntax.
template <class K>
std::string write_representation(const Representation<K>& m) {
  const K& f = m.field;
  const auto& pres = *m.pres;
  std::string s = "field " + detail::field_spec_of(f).str() + "\n";
  for (std::size_t v = 0; v < pres.num_vertices(); ++v)
    s += "vertex " + pres.vertex_name(v) + " dim " + std::to_string(m.vdim[v]) + "\n";
  for (std::size_t a = 0; a < pres.num_arrows(); ++a) {
    const auto& mat = m.action[a];
    s += "arrow " + pres.arrow(a).name + "\n";
    s += "dim " + std::to_string(mat.rows());
    if (mat.rows() != mat.cols()) s += " " + std::to_string(mat.cols());
    s += "\n";
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      std::vector<typename K::Elem> out(mat.rows(), f.zero());
      std::vector<typename K::Elem> in(mat.cols(), f.zero());
      for (std::size_t i = 0; i < mat.rows(); ++i) out[i] = mat(i, j);
      in[j] = f.one();
      s += "pair " + detail::format_vector(f, out) + " " + detail::format_vector(f, in) + "\n";
    }
  }
  return s;
}

template <class K>
Representation<K> read_representation(const StringPresentation& pres, const K& f,
                                      const std::string& text) {
  std::vector<std::optional<std::size_t>> dims(pres.num_vertices());
  // per arrow, the graph rows collected from its block
  std::vector<std::vector<std::vector<typename K::Elem>>> graphs(pres.num_arrows());
  std::optional<std::size_t> current;
  for (const auto& l : detail::tokenize_file(text)) {
    if (l.tok[0] == "field") {
      detail::check_field_line(f, l);
    } else if (l.tok[0] == "vertex") {
      if (l.tok.size() != 4 || l.tok[2] != "dim")
        throw detail::at_line(l.no, "expected 'vertex <name> dim <n>'");
      auto v = pres.vertex_id(l.tok[1]);
      if (!v) throw detail::at_line(l.no, "unknown vertex " + l.tok[1]);
      dims[*v] = detail::parse_count(l.tok[3], l.no);
    } else if (l.tok[0] == "arrow") {
      if (l.tok.size() != 2) throw detail::at_line(l.no, "expected 'arrow <name>'");
      auto a = pres.arrow_id(l.tok[1]);
      if (!a) throw detail::at_line(l.no, "unknown arrow " + l.tok[1]);
      current = *a;
    } else if (l.tok[0] == "dim") {
      if (!current) throw detail::at_line(l.no, "'dim' outside an arrow block");
    } else if (l.tok[0] == "pair") {
      if (!current) throw detail::at_line(l.no, "'pair' outside an arrow block");
      if (l.tok.size() != 3) throw detail::at_line(l.no, "expected 'pair <out> <in>'");
      auto out = detail::parse_vector(f, l.tok[1], l.no);
      auto in = detail::parse_vector(f, l.tok[2], l.no);
      out.insert(out.end(), in.begin(), in.end());
      graphs[*current].push_back(std::move(out));
    } else {
      throw detail::at_line(l.no, "unknown directive '" + l.tok[0] + "'");
    }
  }
  std::vector<std::size_t> vdim;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (!dims[v]) throw error("missing dimension for vertex " + pres.vertex_name(v));
    vdim.push_back(*dims[v]);
  }
  Representation<K> m(pres, f, vdim);
  for (std::size_t a = 0; a < pres.num_arrows(); ++a) {
    std::size_t h = vdim[pres.arrow(a).head], t = vdim[pres.arrow(a).tail];
    for (const auto& row : graphs[a])
      if (row.size() != h + t)
        throw error("arrow " + pres.arrow(a).name + ": pair does not match the vertex dimensions");
    auto rel = LinearRelation<K>(f, h, t,
                                 Subspace<K>::span(Matrix<K>::from_rows(f, h + t, graphs[a])));
    if (rel.apply(Subspace<K>::zero(f, t)).dim() != 0 || rel.graph().dim() != t)
      throw error("arrow " + pres.arrow(a).name + ": block is not the graph of a map");
    Matrix<K> mat(f, h, t);
    for (std::size_t j = 0; j < t; ++j) {
      std::vector<typename K::Elem> e(t, f.zero());
      e[j] = f.one();
      auto w = rel.apply_vector(e);
      if (!w) throw error("arrow " + pres.arrow(a).name + ": block is not the graph of a map");
      for (std::size_t i = 0; i < h; ++i) mat(i, j) = (*w)[i];
    }
    m.action[a] = std::move(mat);
  }
  if (!m.relations_annihilate()) throw error("matrices do not satisfy the zero relations");
  return m;
}

}  // namespace strelkit
