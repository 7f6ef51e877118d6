// fincat: command-line driver over .fincat documents.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fincat/fincat.hpp"

using json = nlohmann::json;
using namespace fincat;

namespace {

constexpr const char* kSchema = "fincat-cli/1";

struct Flags {
  std::string output = "text";
  std::uint64_t budget = Budget{}.max_steps;
  std::string variant = "all";
  std::size_t max_degree = 3;
};

struct Report {
  json result = json::object();
  std::string text;
};

std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::PreconditionFails, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::Document load(const std::string& path) { return dsl::parse(read_input(path)); }

json size_json(const SizeMatrix& m) {
  json j = json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

std::string size_text(const SizeMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + std::to_string(m[i][j]);
    s += "]";
  }
  return s + "]";
}

const char* tri_text(Tri t) { return t == Tri::Yes ? "yes" : t == Tri::No ? "no" : "unknown"; }

// A C-set or a biset by name, whichever the document holds.
struct Target {
  const dsl::CSetBlock* cset = nullptr;
  const dsl::BisetBlock* biset = nullptr;
};

Target find_set(const dsl::Document& d, const std::string& name) {
  Target t{d.find<dsl::CSetBlock>(name), d.find<dsl::BisetBlock>(name)};
  if (!t.cset && !t.biset) throw Error(ErrorKind::PreconditionFails, "no cset or biset named '" + name + "'");
  return t;
}

std::string category_text(const std::string& name, const CatPtr& c) {
  dsl::Document d;
  d.blocks.push_back(dsl::CategoryBlock{name, c});
  return dsl::serialize(d);
}

Report cmd_validate(const std::string& file) {
  auto d = load(file);
  Report r;
  r.result["blocks"] = json::array();
  for (const auto& b : d.blocks) {
    r.result["blocks"].push_back({{"kind", dsl::block_kind(b)}, {"name", dsl::block_name(b)}});
    r.text += std::string(dsl::block_kind(b)) + " " + dsl::block_name(b) + " ok\n";
  }
  return r;
}

Report cmd_compose(const std::string& file, const std::string& a, const std::string& b, bool trace) {
  auto d = load(file);
  const Biset& x = d.get<dsl::BisetBlock>(a).biset;
  const Biset& y = d.get<dsl::BisetBlock>(b).biset;
  CompositionTrace tr;
  Biset c = compose_bisets(x, y, &tr);
  Report r;
  r.result["size_matrix"] = size_json(c.size_matrix());
  r.text = size_text(c.size_matrix()) + "\n";
  if (trace) {
    json cells = json::array();
    for (std::size_t i = 0; i < tr.rows; ++i)
      for (std::size_t k = 0; k < tr.cols; ++k) {
        const auto& cell = tr.cell(i, k);
        cells.push_back({{"row", i}, {"col", k}, {"pairs", cell.candidate_pairs}, {"classes", cell.classes},
                         {"unions", cell.unions.size()}});
        r.text += "cell (" + std::to_string(i) + "," + std::to_string(k) + "): " + std::to_string(cell.candidate_pairs) +
                  " pairs -> " + std::to_string(cell.classes) + " classes\n";
      }
    r.result["trace"] = cells;
  }
  return r;
}

Report cmd_size_matrix(const std::string& file, const std::string& name) {
  auto d = load(file);
  SizeMatrix m = d.get<dsl::BisetBlock>(name).biset.size_matrix();
  return {{{"size_matrix", size_json(m)}}, size_text(m) + "\n"};
}

Report cmd_decompose(const std::string& file, const std::string& name) {
  auto d = load(file);
  Target t = find_set(d, name);
  const CSet& s = t.cset ? t.cset->set : t.biset->biset.carrier();
  auto parts = decompose(s).parts;
  Report r;
  r.result["parts"] = json::array();
  r.text = std::to_string(parts.size()) + " part(s)\n";
  for (const auto& p : parts) {
    r.result["parts"].push_back({{"sizes", p.sizes()}, {"total", p.total_size()}});
    r.text += "  total " + std::to_string(p.total_size()) + "\n";
  }
  return r;
}

Report cmd_iso(const std::string& file, const std::string& a, const std::string& b, Budget budget) {
  auto d = load(file);
  Target x = find_set(d, a), y = find_set(d, b);
  bool iso = false;
  if (x.cset && y.cset) iso = isomorphic(x.cset->set, y.cset->set, budget);
  else if (x.biset && y.biset) iso = isomorphic(x.biset->biset, y.biset->biset, budget);
  else throw Error(ErrorKind::CategoryMismatch, "cannot compare a cset with a biset");
  return {{{"isomorphic", iso}}, std::string(iso ? "isomorphic" : "not isomorphic") + "\n"};
}

Report cmd_burnside_mul(const std::string& file, const std::string& a, const std::string& b, Budget budget) {
  auto d = load(file);
  const CSet& x = d.get<dsl::CSetBlock>(a).set;
  const CSet& y = d.get<dsl::CSetBlock>(b).set;
  auto reg = make_registry(x.cat(), budget);
  auto ex = classify(reg, x), ey = classify(reg, y);
  auto p = mul(ex, ey);
  Report r;
  json terms = json::array();
  for (auto [id, k] : p.coeffs) terms.push_back({{"class", id}, {"coeff", k}, {"sizes", reg->rep(id).sizes()}});
  r.result["product"] = terms;
  r.result["text"] = to_string(p);
  r.text = to_string(ex) + " * " + to_string(ey) + " = " + to_string(p) + "\n";
  return r;
}

Report cmd_representable(const std::string& file, const std::string& name) {
  auto d = load(file);
  Target t = find_set(d, name);
  Report r;
  if (t.cset) {
    bool rep = is_representable(t.cset->set);
    r.result["representable"] = rep;
    r.text = std::string(rep ? "representable" : "not representable") + "\n";
  } else {
    bool l = is_left_representable(t.biset->biset), rr = is_right_representable(t.biset->biset);
    r.result = {{"left", l}, {"right", rr}, {"birepresentable", l && rr}};
    r.text = std::string("left ") + (l ? "yes" : "no") + "\nright " + (rr ? "yes" : "no") + "\nbirepresentable " +
             (l && rr ? "yes" : "no") + "\n";
  }
  return r;
}

Report cmd_cograph(const std::string& file, const std::string& name) {
  auto d = load(file);
  Cograph g = cograph(d.get<dsl::BisetBlock>(name).biset);
  std::string doc = category_text("Cograph_" + name, g.cat);
  return {{{"objects", g.cat->num_objects()}, {"morphisms", g.cat->num_morphisms()}, {"document", doc}}, doc};
}

Report cmd_dual_check(const std::string& file, const std::string& name) {
  auto d = load(file);
  bool ok = dual_object_check(d.get<dsl::CategoryBlock>(name).cat);
  return {{{"dual", ok}}, std::string(ok ? "dual ok" : "dual fails") + "\n"};
}

Report cmd_corresp_to_biset(const std::string& file, const std::string& name) {
  auto d = load(file);
  Biset b = corresp_to_biset(d.get<dsl::CorrespBlock>(name).corresp);
  std::string pat = pattern_matrix(b);
  return {{{"pattern", pat}, {"size_matrix", size_json(b.size_matrix())}}, pat};
}

Report cmd_biset_to_corresp(const std::string& file, const std::string& name) {
  auto d = load(file);
  Correspondence u = biset_to_corresp(d.get<dsl::BisetBlock>(name).biset);
  dsl::Document out;
  out.blocks.push_back(dsl::CorrespBlock{name, u});
  json rows = json::array();
  for (const auto& row : u.incidence) {
    std::string s;
    for (bool v : row) s += v ? '1' : '0';
    rows.push_back(s);
  }
  std::string text = dsl::serialize(out);
  return {{{"to", u.to_size}, {"from", u.from_size}, {"rows", rows}, {"document", text}}, text};
}

Report cmd_corresp_count(std::size_t nx, std::size_t ny, Budget budget) {
  if (nx * ny > 9) throw Error(ErrorKind::BudgetExceeded, "sizes above |X||Y| = 9 are out of range");
  std::size_t n = count_correspondence_bisets(nx, ny, budget);
  return {{{"count", n}, {"expected", std::size_t{1} << (nx * ny)}}, std::to_string(n) + "\n"};
}

Report cmd_simple_dim(const std::string& file, const std::string& name, Variant v) {
  auto d = load(file);
  CatPtr p = d.get<dsl::CategoryBlock>(name).cat;
  auto gens = poset_point_generators(p);
  std::size_t dim = simple_value_dim(point_oracle(), gens, v);
  SizeMatrix pat = generator_pattern(gens);
  Report r;
  r.result = {{"dim", dim}, {"variant", to_string(v)}, {"pattern", size_json(pat)}, {"lower_bound", true}};
  r.text = "dim >= " + std::to_string(dim) + " (variant " + to_string(v) + ")\n";
  return r;
}

Report cmd_homology(const std::string& file, const std::string& name, std::size_t max_degree, Budget budget) {
  auto d = load(file);
  auto h = homology(d.get<dsl::CategoryBlock>(name).cat, max_degree, budget);
  Report r;
  r.result["degrees"] = json::array();
  for (std::size_t k = 0; k < h.degrees.size(); ++k) {
    const auto& hd = h.degrees[k];
    json tor = json::array();
    std::string ttext;
    for (const auto& t : hd.torsion) {
      tor.push_back(t.get_str());
      ttext += " + Z/" + t.get_str();
    }
    r.result["degrees"].push_back({{"degree", k}, {"betti", hd.betti}, {"torsion", tor}, {"reliable", hd.reliable}});
    r.text += "H_" + std::to_string(k) + " = Z^" + std::to_string(hd.betti) + ttext + (hd.reliable ? "" : "  (truncated)") + "\n";
  }
  return r;
}

Report cmd_out(const std::string& file, const std::string& name, Budget budget) {
  auto d = load(file);
  auto g = out_group(d.get<dsl::CategoryBlock>(name).cat, budget);
  return {{{"order", g.reps.size()}, {"table", g.table}}, "|Out| = " + std::to_string(g.reps.size()) + "\n"};
}

Report cmd_equiv(const std::string& file, const std::string& a, const std::string& b, Budget budget) {
  auto d = load(file);
  auto e = are_equivalent(d.get<dsl::CategoryBlock>(a).cat, d.get<dsl::CategoryBlock>(b).cat, budget);
  return {{{"equivalent", tri_text(e.status)}}, std::string(tri_text(e.status)) + "\n"};
}

Report cmd_idempotent_complete(const std::string& file, const std::string& name) {
  auto d = load(file);
  Completion c = idempotent_completion(d.get<dsl::CategoryBlock>(name).cat);
  std::string doc = category_text(name + "_split", c.cat);
  return {{{"objects", c.cat->num_objects()}, {"morphisms", c.cat->num_morphisms()}, {"document", doc}}, doc};
}

json error_json(const Error& e) {
  json j = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (auto de = dynamic_cast<const dsl::DocumentError*>(&e)) {
    j["errors"] = json::array();
    for (const auto& pe : de->errors())
      j["errors"].push_back(
          {{"line", pe.line}, {"column", pe.column}, {"message", pe.message}, {"semantic", pe.semantic}});
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite categories, C-sets and bisets"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--output", flags.output, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", flags.budget, "search step limit")->check(CLI::PositiveNumber);
  app.add_option("--variant", flags.variant, "all, left-rep, right-rep or birep")
      ->check(CLI::IsMember({"all", "left-rep", "right-rep", "birep"}));
  app.add_option("--max-degree", flags.max_degree, "top homology degree");
  app.fallthrough();

  std::string file, a, b;
  std::size_t nx = 0, ny = 0;
  bool trace = false;
  std::function<Report()> run;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("file", file, "document path or -")->required();
    return s;
  };
  auto one = [&](const char* name, const char* help, Report (*fn)(const std::string&, const std::string&)) {
    auto* s = sub(name, help);
    s->add_option("name", a)->required();
    s->callback([&, fn] { run = [&, fn] { return fn(file, a); }; });
  };

  auto* validate = app.add_subcommand("validate", "parse and validate a document");
  validate->add_option("file", file)->required();
  validate->callback([&] { run = [&] { return cmd_validate(file); }; });

  auto* compose = sub("compose", "compose two bisets");
  compose->add_option("left", a)->required();
  compose->add_option("right", b)->required();
  compose->add_flag("--trace", trace, "per-cell union-find counts");
  compose->callback([&] { run = [&] { return cmd_compose(file, a, b, trace); }; });

  one("size-matrix", "size matrix of a biset", cmd_size_matrix);
  one("decompose", "orbit decomposition", cmd_decompose);
  one("representable", "representability of a cset or biset", cmd_representable);
  one("cograph", "cograph of a biset", cmd_cograph);
  one("dual-check", "zig-zag check for a category", cmd_dual_check);
  one("corresp-to-biset", "pattern matrix of a correspondence biset", cmd_corresp_to_biset);
  one("biset-to-corresp", "recover a correspondence", cmd_biset_to_corresp);
  one("idempotent-complete", "idempotent completion", cmd_idempotent_complete);

  auto two = [&](const char* name, const char* help, Report (*fn)(const std::string&, const std::string&,
                                                                    const std::string&, Budget)) {
    auto* s = sub(name, help);
    s->add_option("first", a)->required();
    s->add_option("second", b)->required();
    s->callback([&, fn] { run = [&, fn] { return fn(file, a, b, Budget{flags.budget}); }; });
  };
  two("iso", "isomorphism of csets or bisets", cmd_iso);
  two("burnside-mul", "product in the Burnside ring", cmd_burnside_mul);
  two("equiv", "equivalence of categories", cmd_equiv);

  auto* count = app.add_subcommand("corresp-count", "count correspondence bisets");
  count->add_option("nx", nx)->required();
  count->add_option("ny", ny)->required();
  count->callback([&] { run = [&] { return cmd_corresp_count(nx, ny, Budget{flags.budget}); }; });

  auto* simple = sub("simple-dim", "rank-method bound for S_1 at a poset");
  simple->add_option("name", a)->required();
  simple->callback([&] { run = [&] { return cmd_simple_dim(file, a, parse_variant(flags.variant)); }; });

  auto* hom = sub("homology", "integral homology of the nerve");
  hom->add_option("name", a)->required();
  hom->callback([&] { run = [&] { return cmd_homology(file, a, flags.max_degree, Budget{flags.budget}); }; });

  auto* out = sub("out", "order of Out(C)");
  out->add_option("name", a)->required();
  out->callback([&] { run = [&] { return cmd_out(file, a, Budget{flags.budget}); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool as_json = flags.output == "json";
  json envelope = {{"schema", kSchema}, {"command", app.get_subcommands().front()->get_name()}};
  try {
    Report r = run();
    if (as_json) {
      envelope["ok"] = true;
      envelope["result"] = r.result;
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cout << r.text;
    }
    return 0;
  } catch (const Error& e) {
    int code = 1;
    if (auto de = dynamic_cast<const dsl::DocumentError*>(&e); de && de->syntax()) code = 2;
    if (as_json) {
      envelope["ok"] = false;
      envelope["error"] = error_json(e);
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return code;
  }
}
