// a3pi: pi_6 and pi_7 of the indecomposable 2-connected 5-dimensional complexes.
#include "a3pi/catalog.hpp"
#include "a3pi/derivations.hpp"
#include "a3pi/errors.hpp"
#include "a3pi/smith.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace a3pi;
using nlohmann::json;

namespace {

// "1..10,inf" or "3" or "2,5".
std::vector<Exp> parse_range(const std::string& text) {
  std::vector<Exp> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(Exp::parse(item));
      continue;
    }
    const auto lo = Exp::parse(item.substr(0, dots)).value();
    const auto hi = Exp::parse(item.substr(dots + 2)).value();
    for (auto v = lo; v <= hi; ++v) out.push_back(Exp(v));
  }
  return out;
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> out;
  for (const auto& e : parse_range(text)) out.push_back(static_cast<int>(e.value()));
  return out;
}

json group_json(const CanonicalGroup& g) {
  return {{"free_rank", g.free_rank}, {"torsion_exponents", g.torsion_exponents}};
}

catalog::ComplexSpec make_spec(const std::string& space, int n_sphere, const std::string& r, const std::string& s) {
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) throw InvalidArgument(std::string(flag) + " is required for this space");
    return Exp::parse(v);
  };
  if (space == "S") return catalog::ComplexSpec::sphere(n_sphere);
  if (space == "M3") return catalog::ComplexSpec::moore(3, need(r, "--r"));
  if (space == "M4") return catalog::ComplexSpec::moore(4, need(r, "--r"));
  if (space == "Ceta") return catalog::ComplexSpec::chang_eta();
  if (space == "Cr") return catalog::ComplexSpec::chang_cr(need(r, "--r"));
  if (space == "Cs") return catalog::ComplexSpec::chang_cs(need(s, "--s"));
  if (space == "Crs") return catalog::ComplexSpec::chang_crs(need(r, "--r"), need(s, "--s"));
  throw InvalidArgument("unknown space '" + space + "'");
}

void print_matrix(const char* name, const IntMatrix& m) {
  std::cout << name << " (" << m.rows() << "x" << m.cols() << ")\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) std::cout << (j ? " " : "") << m(i, j).get_str();
    std::cout << "\n";
  }
}

int run_snf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw InvalidArgument("first line must be 'rows cols'");
  IntMatrix M(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) {
      std::string tok;
      if (!(in >> tok)) throw InvalidArgument("expected " + std::to_string(rows * cols) + " entries");
      if (M(i, j).set_str(tok, 10) != 0) throw InvalidArgument("bad entry '" + tok + "'");
    }
  const auto snf = smith_normal_form(M);
  std::cout << "D:";
  for (const auto& d : snf.diagonal()) std::cout << " " << d.get_str();
  std::cout << "\n";
  print_matrix("U", snf.U);
  print_matrix("V", snf.V);
  return 0;
}

int run_derive(const std::string& what, const std::string& r_text, const std::string& s_text) {
  const Exp r = r_text.empty() ? Exp(1) : Exp::parse(r_text);
  const Exp s = s_text.empty() ? Exp(1) : Exp::parse(s_text);
  std::vector<std::string> trace;
  if (what == "y") {
    trace = derivations::derive_y(r).trace;
  } else if (what == "ab") {
    trace = derivations::derive_ab(r).trace;
  } else if (what == "signs") {
    const auto& res = derivations::resolve_signs();
    trace = res.trace;
    trace.push_back("resolved σ = " + std::to_string(res.sign));
  } else if (what == "lemma45") {
    trace = derivations::lemma45_elimination(static_cast<int>(s.value())).trace;
  } else if (what == "lemma47") {
    trace = derivations::lemma47_check(r, s).trace;
  } else {
    throw InvalidArgument("unknown derivation '" + what + "'");
  }
  for (const auto& line : trace) std::cout << line << "\n";
  return 0;
}

int run_verify(const std::string& r_text, const std::string& s_text, const std::string& dims_text,
               const std::string& json_path) {
  const auto report = catalog::verify_sweep(parse_range(r_text), parse_range(s_text), parse_dims(dims_text));
  json cells = json::array();
  for (const auto& c : report.cells) {
    std::cout << catalog::status_name(c.status) << "  " << c.spec.name() << "  n=" << c.n;
    if (c.computed) std::cout << "  computed: " << c.computed->to_string();
    if (c.expected) std::cout << "  expected: " << c.expected->to_string();
    if (!c.note.empty()) std::cout << "  (" << c.note << ")";
    std::cout << "\n";
    json cell = {{"space", c.spec.name()}, {"n", c.n}, {"status", catalog::status_name(c.status)}};
    if (c.computed) cell["computed"] = group_json(*c.computed);
    if (c.expected) cell["expected"] = group_json(*c.expected);
    if (!c.note.empty()) cell["note"] = c.note;
    cells.push_back(std::move(cell));
  }
  std::cout << "total " << report.cells.size() << ", pass " << report.count(catalog::Status::Pass) << ", fail "
            << report.count(catalog::Status::Fail) << ", skip " << report.count(catalog::Status::Skip) << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw InvalidArgument("cannot write " + json_path);
    out << json{{"ok", report.ok()}, {"cells", cells}}.dump(2) << "\n";
  }
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-local pi_6 and pi_7 of indecomposable 2-connected 5-complexes"};
  app.require_subcommand(1);

  std::string space, r, s, dims = "6,7", json_path, matrix, what;
  int n_sphere = 0, dim = 0;

  auto* compute = app.add_subcommand("compute", "print pi_dim of one complex");
  compute->add_option("--space", space, "S, M3, M4, Ceta, Cr, Cs or Crs")
      ->required()
      ->check(CLI::IsMember({"S", "M3", "M4", "Ceta", "Cr", "Cs", "Crs"}));
  compute->add_option("--n-sphere", n_sphere, "sphere dimension for --space S");
  compute->add_option("--r", r, "r, a positive integer or inf");
  compute->add_option("--s", s, "s, a positive integer or inf");
  compute->add_option("--dim", dim, "6 or 7")->required()->check(CLI::IsMember({6, 7}));

  std::string vr = "1..10,inf", vs = "1..10,inf";
  auto* verify = app.add_subcommand("verify", "compare computed groups with the closed forms");
  verify->add_option("--r", vr, "range such as 1..10,inf");
  verify->add_option("--s", vs, "range such as 1..10,inf");
  verify->add_option("--dims", dims, "degrees, e.g. 6,7");
  verify->add_option("--json", json_path, "also write a JSON report");

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("--matrix", matrix, "file: 'rows cols' then row-major entries")->required();

  auto* derive = app.add_subcommand("derive", "print a coefficient derivation trace");
  derive->add_option("what", what, "y, ab, signs, lemma45 or lemma47")
      ->required()
      ->check(CLI::IsMember({"y", "ab", "signs", "lemma45", "lemma47"}));
  derive->add_option("--r", r, "r, a positive integer or inf");
  derive->add_option("--s", s, "s, a positive integer");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute) {
      if (space == "S" && n_sphere == 0) throw InvalidArgument("--n-sphere is required for --space S");
      const auto spec = make_spec(space, n_sphere, r, s);
      derivations::resolve_signs();
      std::cout << catalog::compute(spec, dim).to_string() << "\n";
      return 0;
    }
    if (*verify) return run_verify(vr, vs, dims, json_path);
    if (*snf) return run_snf(matrix);
    if (*derive) return run_derive(what, r, s);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
