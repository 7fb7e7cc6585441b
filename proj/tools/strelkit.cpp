// Command-line front end: validation, word calculus, relation calculus,
// Kronecker decomposition, module construction, refined functors, the
// sigma decision and batch enumeration. Plain text by default, JSON with
// --machine; all output is deterministic for fixed inputs.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strelkit/enumerate.hpp"
#include "strelkit/filtration.hpp"
#include "strelkit/io.hpp"
#include "strelkit/sigma.hpp"

using json = nlohmann::json;
using namespace strelkit;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational) {
    RationalField f;
    return fn(f);
  }
  PrimeField f(spec.p);
  return fn(f);
}

const char* shape_name(Word::Shape s) {
  switch (s) {
    case Word::Shape::Trivial: return "trivial";
    case Word::Shape::Finite: return "finite";
    case Word::Shape::RightInfinite: return "right-infinite";
    case Word::Shape::LeftInfinite: return "left-infinite";
    case Word::Shape::BiInfinite: return "bi-infinite";
    case Word::Shape::Periodic: return "periodic";
  }
  return "?";
}

template <class K>
json matrix_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m.field().str(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit(bool machine, const json& j, const std::string& text) {
  if (machine)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_validate(const std::string& path, bool machine) {
  auto pres = StringPresentation::parse(slurp(path));
  auto issues = pres.validate();
  auto dim = algebra_dimension(pres);
  json j{{"vertices", pres.num_vertices()},
         {"arrows", pres.num_arrows()},
         {"relations", pres.relations().size()},
         {"dimension", dim ? json(*dim) : json(nullptr)},
         {"valid", issues.empty()},
         {"issues", issues}};
  std::ostringstream t;
  t << "vertices " << pres.num_vertices() << "\n"
    << "arrows " << pres.num_arrows() << "\n"
    << "relations " << pres.relations().size() << "\n";
  if (dim)
    t << "dimension " << *dim << "\n";
  else
    t << "infinite-dimensional\n";
  if (issues.empty()) {
    t << "valid string algebra\n";
  } else {
    t << "not a string algebra:\n";
    for (const auto& msg : issues) t << "  - " << msg << "\n";
  }
  emit(machine, j, t.str());
  return issues.empty() ? 0 : 1;
}

int cmd_word_check(const StringPresentation& pres, const std::string& text, bool machine) {
  Word w = parse_word(pres, text);
  auto issues = check_word(pres, w);
  json j{{"valid", issues.empty()},
         {"canonical", write_word(pres, w)},
         {"shape", shape_name(w.shape())},
         {"issues", issues}};
  std::ostringstream t;
  if (issues.empty()) {
    t << "valid " << shape_name(w.shape()) << " word: " << write_word(pres, w) << "\n";
  } else {
    t << "not a word:\n";
    for (const auto& msg : issues) t << "  - " << msg << "\n";
  }
  emit(machine, j, t.str());
  return issues.empty() ? 0 : 1;
}

int cmd_word_inverse(const StringPresentation& pres, const std::string& text, bool machine) {
  auto inv = parse_word(pres, text).inverse();
  emit(machine, json{{"inverse", write_word(pres, inv)}}, write_word(pres, inv) + "\n");
  return 0;
}

int cmd_word_compare(const StringPresentation& pres, const std::string& ta,
                     const std::string& tb, bool machine) {
  int c = compare_words(pres, parse_word(pres, ta), parse_word(pres, tb));
  emit(machine, json{{"compare", c}}, std::to_string(c) + "\n");
  return 0;
}

int cmd_word_slice(const StringPresentation& pres, const std::string& text, long i,
                   bool machine) {
  Word w = parse_word(pres, text);
  auto upto = w.is_trivial() ? w : slice_upto(pres, w, i);
  auto after = w.is_trivial() ? w : slice_after(pres, w, i);
  auto plus = side_word(pres, w, i, 1);
  auto minus = side_word(pres, w, i, -1);
  json j{{"upto", write_word(pres, upto)},
         {"after", write_word(pres, after)},
         {"side_plus", write_word(pres, plus)},
         {"side_minus", write_word(pres, minus)}};
  std::ostringstream t;
  t << "upto: " << write_word(pres, upto) << "\n"
    << "after: " << write_word(pres, after) << "\n"
    << "side+: " << write_word(pres, plus) << "\n"
    << "side-: " << write_word(pres, minus) << "\n";
  emit(machine, j, t.str());
  return 0;
}

int cmd_rel_sharpflat(const std::string& path, bool machine) {
  auto text = slurp(path);
  return with_field(scan_field_spec(text), [&](const auto& f) {
    auto c = read_relation(f, text);
    auto sf = c.sharp_flat();
    json j{{"dim", c.source_dim()},       {"orbit", sf.orbit.dim()},
           {"stable", sf.stable.dim()},   {"co_orbit", sf.co_orbit.dim()},
           {"co_stable", sf.co_stable.dim()}, {"plus", sf.plus.dim()},
           {"minus", sf.minus.dim()},     {"sharp", sf.sharp.dim()},
           {"flat", sf.flat.dim()},       {"automorphic", c.is_automorphic()}};
    std::ostringstream t;
    t << "dim " << c.source_dim() << "\n"
      << "orbit " << sf.orbit.dim() << "\n"
      << "stable " << sf.stable.dim() << "\n"
      << "co-orbit " << sf.co_orbit.dim() << "\n"
      << "co-stable " << sf.co_stable.dim() << "\n"
      << "plus " << sf.plus.dim() << "\n"
      << "minus " << sf.minus.dim() << "\n"
      << "sharp " << sf.sharp.dim() << "\n"
      << "flat " << sf.flat.dim() << "\n"
      << "automorphic " << (c.is_automorphic() ? "yes" : "no") << "\n";
    emit(machine, j, t.str());
    return 0;
  });
}

int cmd_rel_split(const std::string& path, bool machine) {
  auto text = slurp(path);
  return with_field(scan_field_spec(text), [&](const auto& f) {
    auto c = read_relation(f, text);
    auto sf = c.sharp_flat();
    auto u = c.split();
    json basis = json::array();
    for (std::size_t i = 0; i < u.dim(); ++i) {
      json row = json::array();
      for (const auto& e : u.basis_vector(i)) row.push_back(f.str(e));
      basis.push_back(std::move(row));
    }
    json j{{"sharp", sf.sharp.dim()},
           {"flat", sf.flat.dim()},
           {"summand_dim", u.dim()},
           {"basis", basis}};
    std::ostringstream t;
    t << "sharp " << sf.sharp.dim() << "\n"
      << "flat " << sf.flat.dim() << "\n"
      << "summand dim " << u.dim() << "\n";
    for (std::size_t i = 0; i < u.dim(); ++i)
      t << detail::format_vector(f, u.basis_vector(i)) << "\n";
    emit(machine, j, t.str());
    return 0;
  });
}

int cmd_rel_taction(const std::string& path, bool machine) {
  auto text = slurp(path);
  return with_field(scan_field_spec(text), [&](const auto& f) {
    auto c = read_relation(f, text);
    auto tm = c.induced_t();
    json j{{"quotient_dim", tm.dim()}, {"t", matrix_json(tm.t)}};
    std::ostringstream t;
    t << "quotient dim " << tm.dim() << "\n"
      << "t:\n"
      << write_matrix(tm.t);
    emit(machine, j, t.str());
    return 0;
  });
}

int cmd_kron_decompose(const std::string& path, bool machine) {
  auto text = slurp(path);
  return with_field(scan_field_spec(text), [&](const auto& f) {
    using K = std::decay_t<decltype(f)>;
    auto m = read_pencil(f, text);
    auto dec = decompose(m);
    json blocks = json::array();
    std::ostringstream t;
    t << "blocks " << dec.blocks.size() << "\n";
    for (const auto& b : dec.blocks) {
      using B = KroneckerBlock<K>;
      const char* fam = b.family == B::Preprojective   ? "P"
                        : b.family == B::Preinjective  ? "I"
                        : b.family == B::ZeroRegular   ? "Z"
                        : b.family == B::InfRegular    ? "R"
                                                       : "A";
      json jb{{"family", fam}, {"n", b.n}};
      t << fam << "(" << b.n << ")";
      if (b.family == B::Automorphic) {
        jb["rcf"] = matrix_json(b.aut);
        for (std::size_t i = 0; i < b.aut.rows(); ++i)
          t << (i ? ";" : " ") << detail::format_vector(f, b.aut.row(i));
      }
      t << "\n";
      blocks.push_back(std::move(jb));
    }
    emit(machine, blocks, t.str());
    return 0;
  });
}

template <class K>
int report_module(const StringPresentation& pres, const Representation<K>& m,
                  const std::string& wtext, bool machine) {
  json arrows;
  for (std::size_t a = 0; a < pres.num_arrows(); ++a)
    arrows[pres.arrow(a).name] = matrix_json(m.action[a]);
  json j{{"word", wtext}, {"dims", m.vdim}, {"arrows", arrows}};
  emit(machine, j, "# M(" + wtext + ")\n" + write_representation(m));
  return 0;
}

int cmd_module_string(const std::string& algebra, const std::string& wtext, bool machine) {
  auto pres = StringPresentation::parse(slurp(algebra));
  return with_field(pres.field_spec(), [&](const auto& f) {
    auto w = parse_word(pres, wtext);
    auto m = string_module(f, pres, w);
    return report_module(pres, m, write_word(pres, w), machine);
  });
}

int cmd_module_band(const std::string& algebra, const std::string& wtext,
                    const std::string& tpath, bool machine) {
  auto pres = StringPresentation::parse(slurp(algebra));
  return with_field(pres.field_spec(), [&](const auto& f) {
    auto w = parse_word(pres, wtext);
    auto t = read_matrix(f, slurp(tpath));
    auto m = band_module(f, pres, w, t);
    return report_module(pres, m, write_word(pres, w), machine);
  });
}

int cmd_functor(const std::string& algebra, const std::string& which, const std::string& btext,
                const std::string& dtext, const std::string& mpath, bool machine) {
  auto pres = StringPresentation::parse(slurp(algebra));
  return with_field(pres.field_spec(), [&](const auto& f) {
    auto b = parse_word(pres, btext);
    auto d = parse_word(pres, dtext);
    auto m = read_representation(pres, f, slurp(mpath));
    auto v = which == "G" ? g_functor(b, d, m) : refined_functor(b, d, m);
    json j{{"plus", v.plus.dim()},
           {"minus", v.minus.dim()},
           {"quotient", v.quotient_dim},
           {"t", v.t_matrix ? matrix_json(*v.t_matrix) : json(nullptr)}};
    std::ostringstream t;
    t << "plus " << v.plus.dim() << "\n"
      << "minus " << v.minus.dim() << "\n"
      << "quotient " << v.quotient_dim << "\n";
    if (v.t_matrix) t << "t:\n" << write_matrix(*v.t_matrix);
    emit(machine, j, t.str());
    return 0;
  });
}

int cmd_sigma(const std::string& algebra, const std::string& wtext, bool certificate,
              bool machine) {
  auto pres = StringPresentation::parse(slurp(algebra));
  auto w = parse_word(pres, wtext);
  auto cert = is_sigma_pure_injective(w, pres);
  bool formal = !algebra_dimension(pres).has_value();
  if (formal)
    std::cerr << "warning: the algebra is infinite-dimensional; the criterion assumes a "
                 "finite-dimensional algebra\n";

  auto dir_name = [](const SideFamily& fam) {
    if (fam.step == 0) return "single";
    if (fam.direction < 0) return "ascending";
    if (fam.direction > 0) return "descending";
    return "constant";
  };
  json families = json::array();
  for (const auto& fam : cert.families)
    families.push_back(json{{"vertex", pres.vertex_name(fam.vertex)},
                            {"eps", fam.eps},
                            {"start", fam.start},
                            {"step", fam.step},
                            {"direction", fam.direction}});
  json j{{"verdict", cert.verdict},
         {"formal", formal},
         {"witness", nullptr},
         {"families", families}};

  std::ostringstream t;
  t << "word: " << write_word(pres, w) << "\n";
  t << "verdict: " << (cert.verdict ? "sigma-pure-injective" : "not sigma-pure-injective");
  if (formal) t << " (criterion applied formally)";
  t << "\n";
  if (cert.witness) {
    const auto& fam = *cert.witness;
    j["witness"] = json{{"vertex", pres.vertex_name(fam.vertex)},
                        {"eps", fam.eps},
                        {"start", fam.start},
                        {"step", fam.step}};
    t << "witness: vertex " << pres.vertex_name(fam.vertex) << " sign "
      << (fam.eps > 0 ? "+1" : "-1") << " start " << fam.start << " step " << fam.step << "\n";
  }
  if (certificate) {
    if (cert.witness) {
      auto members = family_members(pres, w, *cert.witness, 11);
      json chain = json::array();
      t << "descending chain:\n";
      for (const auto& m : members) {
        chain.push_back(write_word(pres, m));
        t << "  " << write_word(pres, m) << "\n";
      }
      j["chain"] = chain;
    } else {
      t << "families:\n";
      for (const auto& fam : cert.families)
        t << "  " << pres.vertex_name(fam.vertex) << " " << (fam.eps > 0 ? "+1" : "-1")
          << " start " << fam.start << " step " << fam.step << " " << dir_name(fam) << "\n";
    }
  }
  emit(machine, j, t.str());
  return cert.verdict ? 0 : 1;
}

int cmd_enumerate(const std::string& algebra, std::size_t max_len, bool machine) {
  auto pres = StringPresentation::parse(slurp(algebra));
  return with_field(pres.field_spec(), [&](const auto& f) {
    auto table = enumerate_strings(f, pres, max_len);
    json j = json::array();
    std::ostringstream t;
    t << "count " << table.size() << "\n";
    for (const auto& e : table) {
      j.push_back(json{{"word", write_word(pres, e.word)},
                       {"dim", e.dim},
                       {"indecomposable", e.indecomposable}});
      t << write_word(pres, e.word) << " dim " << e.dim << " "
        << (e.indecomposable ? "indecomposable" : "decomposable") << "\n";
    }
    emit(machine, j, t.str());
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of strings, linear relations and refined functors"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "JSON output for harness consumption");

  std::function<int()> action;
  std::string file, algebra, w1, w2, mpath, tpath, which;
  long index = 0;
  std::size_t max_len = 3;
  bool certificate = false;

  auto* validate = app.add_subcommand("validate", "check a presentation file");
  validate->add_option("file", file)->required();
  validate->callback([&] { action = [&] { return cmd_validate(file, machine); }; });

  auto* word = app.add_subcommand("word", "word calculus");
  word->require_subcommand(1);
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra", algebra, "presentation file")->required();
  };
  auto* wcheck = word->add_subcommand("check", "validate a word");
  wcheck->add_option("word", w1)->required();
  add_algebra(wcheck);
  wcheck->callback([&] {
    action = [&] {
      return cmd_word_check(StringPresentation::parse(slurp(algebra)), w1, machine);
    };
  });
  auto* winv = word->add_subcommand("inverse", "formal inverse");
  winv->add_option("word", w1)->required();
  add_algebra(winv);
  winv->callback([&] {
    action = [&] {
      return cmd_word_inverse(StringPresentation::parse(slurp(algebra)), w1, machine);
    };
  });
  auto* wcmp = word->add_subcommand("compare", "order two words with a common head and sign");
  wcmp->add_option("a", w1)->required();
  wcmp->add_option("b", w2)->required();
  add_algebra(wcmp);
  wcmp->callback([&] {
    action = [&] {
      return cmd_word_compare(StringPresentation::parse(slurp(algebra)), w1, w2, machine);
    };
  });
  auto* wslice = word->add_subcommand("slice", "slices and side words at a position");
  wslice->add_option("word", w1)->required();
  wslice->add_option("index", index)->required();
  add_algebra(wslice);
  wslice->callback([&] {
    action = [&] {
      return cmd_word_slice(StringPresentation::parse(slurp(algebra)), w1, index, machine);
    };
  });

  auto* rel = app.add_subcommand("rel", "linear relation calculus");
  rel->require_subcommand(1);
  auto* rsf = rel->add_subcommand("sharpflat", "the eight canonical subspaces");
  rsf->add_option("file", file)->required();
  rsf->callback([&] { action = [&] { return cmd_rel_sharpflat(file, machine); }; });
  auto* rsplit = rel->add_subcommand("split", "automorphic complement of flat inside sharp");
  rsplit->add_option("file", file)->required();
  rsplit->callback([&] { action = [&] { return cmd_rel_split(file, machine); }; });
  auto* rt = rel->add_subcommand("taction", "induced automorphism of sharp over flat");
  rt->add_option("file", file)->required();
  rt->callback([&] { action = [&] { return cmd_rel_taction(file, machine); }; });

  auto* kron = app.add_subcommand("kron", "Kronecker pencils");
  kron->require_subcommand(1);
  auto* kd = kron->add_subcommand("decompose", "split a pencil into canonical blocks");
  kd->add_option("file", file)->required();
  kd->callback([&] { action = [&] { return cmd_kron_decompose(file, machine); }; });

  auto* module = app.add_subcommand("module", "string and band modules");
  module->require_subcommand(1);
  auto* mstr = module->add_subcommand("string", "module of a finite word");
  mstr->add_option("word", w1)->required();
  add_algebra(mstr);
  mstr->callback([&] { action = [&] { return cmd_module_string(algebra, w1, machine); }; });
  auto* mband = module->add_subcommand("band", "module of a periodic word");
  mband->add_option("word", w1)->required();
  add_algebra(mband);
  mband->add_option("--t-matrix", tpath, "matrix file for the T-action")->required();
  mband->callback([&] { action = [&] { return cmd_module_band(algebra, w1, tpath, machine); }; });

  auto* functor = app.add_subcommand("functor", "refined functors on a module");
  functor->add_option("which", which)->required()->check(CLI::IsMember({"F", "G"}));
  functor->add_option("B", w1)->required();
  functor->add_option("D", w2)->required();
  add_algebra(functor);
  functor->add_option("--module", mpath, "module file")->required();
  functor->callback(
      [&] { action = [&] { return cmd_functor(algebra, which, w1, w2, mpath, machine); }; });

  auto* sigma = app.add_subcommand("sigma", "decide the descending chain condition");
  sigma->add_option("word", w1)->required();
  add_algebra(sigma);
  sigma->add_flag("--certificate", certificate, "print the witness chain or family table");
  sigma->callback(
      [&] { action = [&] { return cmd_sigma(algebra, w1, certificate, machine); }; });

  auto* enumerate = app.add_subcommand("enumerate", "all finite strings up to a length");
  add_algebra(enumerate);
  enumerate->add_option("--max-len", max_len, "maximum word length");
  enumerate->callback([&] { action = [&] { return cmd_enumerate(algebra, max_len, machine); }; });

  CLI11_PARSE(app, argc, argv);
  try {
    return action ? action() : 0;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
