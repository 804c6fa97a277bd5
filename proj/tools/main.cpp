// chainweight: command-line front end.
//
// Exit codes: 0 success, 1 mathematical negative, 2 malformed input or usage,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "chainweight/errors.hpp"
#include "chainweight/fuzz.hpp"
#include "chainweight/io.hpp"
#include "chainweight/kzero.hpp"

using namespace chainweight;

namespace {

struct Options {
  std::string input = "-";
  std::string ring;
  bool json = false;
};

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// --ring reduces an integral document modulo p.
ChainComplex change_ring(const ChainComplex& x, const std::string& ring) {
  return ring.empty() ? x : change_ring(x, RingSpec::parse(ring));
}

ChainComplex read_complex(const std::string& path, const std::string& ring) {
  return change_ring(parse_complex(slurp(path)), ring);
}

// Key-value report: "key: value" lines, or one JSON object with --json.
class Report {
 public:
  explicit Report(bool json) : json_(json), obj_(JsonValue::object()) {}

  void add(const std::string& key, const std::string& text, JsonValue value) {
    lines_ << key << ": " << text << "\n";
    obj_.set(key, std::move(value));
  }
  void add(const std::string& key, const std::string& text) { add(key, text, JsonValue(text)); }
  void line(const std::string& text) { lines_ << text << "\n"; }
  void print() const { std::cout << (json_ ? obj_.dump() + "\n" : lines_.str()); }

 private:
  bool json_;
  std::ostringstream lines_;
  JsonValue obj_;
};

JsonValue module_json(const ModulePresentation& m) {
  JsonValue o = JsonValue::object();
  o.set("free_rank", static_cast<unsigned long>(m.free_rank));
  JsonValue t = JsonValue::array();
  for (const auto& v : m.torsion) t.push(v);
  o.set("torsion", std::move(t));
  return o;
}

std::string bounds_text(const WeightBounds& wb) { return wb.zero ? "zero" : "[" + std::to_string(wb.lo) + ", " + std::to_string(wb.hi) + "]"; }

JsonValue bounds_json(const WeightBounds& wb) {
  if (wb.zero) return JsonValue("zero");
  JsonValue a = JsonValue::array();
  a.push(wb.lo);
  a.push(wb.hi);
  return a;
}

void cmd_homology(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto h = homology(x);
  if (o.json) {
    JsonValue groups = JsonValue::array();
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
      JsonValue g = module_json(h.at(i));
      g.set("degree", i);
      g.set("group", h.at(i).to_string(x.ring()));
      groups.push(std::move(g));
    }
    JsonValue out = JsonValue::object();
    out.set("ring", x.ring().name());
    out.set("homology", h.to_string(x.min_degree(), x.max_degree()));
    out.set("groups", std::move(groups));
    std::cout << out.dump() << "\n";
  } else {
    std::cout << h.to_string(x.min_degree(), x.max_degree()) << "\n";
  }
}

void cmd_weights(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto wb = weight_bounds(x);
  Report r(o.json);
  r.add("weights", bounds_text(wb), bounds_json(wb));
  r.add("heart", in_heart(x) ? "true" : "false", JsonValue(in_heart(x)));
  r.print();
}

void cmd_decompose(const Options& o, int n) {
  auto x = read_complex(o.input, o.ring);
  auto d = weight_decompose(x, n);
  Report r(o.json);
  r.add("n", std::to_string(n), JsonValue(n));
  r.add("a", serialize_complex(d.a), complex_to_json(d.a));
  r.add("b", serialize_complex(d.b), complex_to_json(d.b));
  r.add("a_weights", bounds_text(weight_bounds(d.a)), bounds_json(weight_bounds(d.a)));
  r.add("b_weights", bounds_text(weight_bounds(d.b)), bounds_json(weight_bounds(d.b)));
  r.add("verified", "true", JsonValue(true));
  r.print();
}

void cmd_filtrate(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto f = skeletal_filtration(x);
  if (auto d = verify_cell_filtration(f); !d) throw InvariantViolation("skeletal filtration failed: " + d.message);
  Report r(o.json);
  JsonValue levels = JsonValue::array();
  for (int k = f.lo; k <= f.hi; ++k) {
    auto q = level_quotient(f, k).complex;
    std::size_t rank = strictify_heart(q, k).free.rank(k);
    r.line("level " + std::to_string(k) + ": rank " + std::to_string(rank) + ", weights " + bounds_text(weight_bounds(q)));
    JsonValue l = JsonValue::object();
    l.set("level", k);
    l.set("rank", static_cast<unsigned long>(rank));
    l.set("quotient", complex_to_json(q));
    levels.push(std::move(l));
  }
  r.add("levels", std::to_string(f.hi - f.lo + 1), std::move(levels));
  auto k0 = k0_via_filtration(f);
  r.add("k0", std::to_string(k0.value), JsonValue(k0.value));
  r.print();
}

void cmd_factorize(const Options& o, int n, const std::string& target, const std::string& map) {
  auto x = read_complex(o.input, o.ring);
  auto y = read_complex(target, o.ring);
  auto f = parse_map(slurp(map), x, y);
  int c = connectivity(f);
  auto fac = factor_connected_map(f, n);
  if (auto d = fac.verify(f); !d) throw InvariantViolation("factorization failed: " + d.message);
  Report r(o.json);
  r.add("connectivity", connectivity_string(c), c == kInfiniteConnectivity ? JsonValue("infinity") : JsonValue(c));
  JsonValue stages = JsonValue::array();
  for (std::size_t i = 0; i < fac.stages.size(); ++i) {
    int k = fac.n + static_cast<int>(i);
    r.line("stage " + std::to_string(k) + ": " + serialize_complex(fac.stages[i]));
    stages.push(complex_to_json(fac.stages[i]));
  }
  r.add("stages", std::to_string(fac.stages.size()), std::move(stages));
  r.add("equivalence", is_homotopy_equivalence(fac.equivalence.forth, true) ? "verified" : "failed");
  r.add("verified", "true", JsonValue(true));
  r.print();
}

void cmd_k0(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto e = euler_char(x), eh = euler_char_homology(x);
  auto kf = k0_via_filtration(skeletal_filtration(x));
  if (!(e == eh && e == kf)) throw InvariantViolation("K0 values disagree");
  Report r(o.json);
  r.add("k0", std::to_string(kf.value), JsonValue(kf.value));
  r.add("euler_char", std::to_string(e.value), JsonValue(e.value));
  r.add("euler_char_homology", std::to_string(eh.value), JsonValue(eh.value));
  r.print();
}

void cmd_minimize(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto m = minimize(x);
  std::cout << serialize_complex(m.complex) << "\n";
}

void cmd_split_acyclic(const Options& o) {
  auto x = read_complex(o.input, o.ring);
  auto s = split_acyclic(x);
  if (auto d = s.verify(x); !d) throw InvariantViolation("acyclic splitting failed: " + d.message);
  Report r(o.json);
  std::string text;
  JsonValue pieces = JsonValue::array();
  for (const auto& [top, count] : s.pieces) {
    if (!text.empty()) text += ", ";
    text += std::to_string(count) + " in degrees " + std::to_string(top) + "," + std::to_string(top - 1);
    JsonValue p = JsonValue::object();
    p.set("top_degree", top);
    p.set("count", static_cast<unsigned long>(count));
    pieces.push(std::move(p));
  }
  r.add("pieces", text.empty() ? "none" : text, std::move(pieces));
  r.add("elementary", serialize_complex(s.elementary), complex_to_json(s.elementary));
  r.add("contraction", "verified");
  r.print();
}

void cmd_normalize(const Options& o) { std::cout << serialize_complex(read_complex(o.input, o.ring)) << "\n"; }

int cmd_verify(const Options& o, const std::string& suite, GenParams p, std::size_t trials, bool with_time) {
  if (!o.ring.empty()) p.ring = RingSpec::parse(o.ring);
  if (p.min_degree > p.max_degree || p.max_rank == 0 || p.max_entry < 1) throw UsageError("invalid generator bounds");
  auto r = run_suite(suite, p, trials);
  std::cout << (o.json ? r.to_json(with_time).dump() + "\n" : r.to_text(with_time));
  return r.passed() ? 0 : 1;
}

void cmd_suites() {
  for (const auto& s : suites()) std::cout << s.name << ": " << s.description << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chainweight: weight structures on bounded chain complexes"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "complex document (- for stdin)");
    sub->add_option("--ring", o.ring, "Z or F<p>; integral documents are reduced mod p");
    sub->add_flag("--json", o.json, "machine-readable output");
  };

  int n = 0;
  std::string target, map, suite;
  GenParams gp;
  std::size_t trials = 100;
  bool with_time = false;

  auto* homology_cmd = app.add_subcommand("homology", "H_i of the complex");
  auto* weights_cmd = app.add_subcommand("weights", "minimal weight range");
  auto* decompose_cmd = app.add_subcommand("decompose", "weight decomposition A -> X -> B at n");
  decompose_cmd->add_option("n", n)->required();
  auto* filtrate_cmd = app.add_subcommand("filtrate", "skeletal cellular filtration and its K0 class");
  auto* factorize_cmd = app.add_subcommand("factorize", "factor an n-connected map into cell attachments");
  factorize_cmd->add_option("n", n)->required();
  factorize_cmd->add_option("--target", target, "target complex document")->required();
  factorize_cmd->add_option("--map", map, "map document")->required();
  auto* k0_cmd = app.add_subcommand("k0", "class in K0 of the heart");
  auto* minimize_cmd = app.add_subcommand("minimize", "minimal model");
  auto* split_cmd = app.add_subcommand("split-acyclic", "split an acyclic complex into elementary pieces");
  auto* normalize_cmd = app.add_subcommand("normalize", "re-serialize a document in canonical form");
  auto* verify_cmd = app.add_subcommand("verify", "run a property suite");
  verify_cmd->add_option("suite", suite)->required();
  verify_cmd->add_option("--seed", gp.seed, "campaign seed");
  verify_cmd->add_option("--trials", trials, "number of trials");
  verify_cmd->add_option("--min-degree", gp.min_degree);
  verify_cmd->add_option("--max-degree", gp.max_degree);
  verify_cmd->add_option("--max-rank", gp.max_rank);
  verify_cmd->add_option("--max-entry", gp.max_entry);
  verify_cmd->add_option("--max-blocks", gp.max_blocks);
  verify_cmd->add_flag("--time", with_time, "include wall time");
  auto* suites_cmd = app.add_subcommand("suites", "list property suites");
  for (auto* sub : {homology_cmd, weights_cmd, decompose_cmd, filtrate_cmd, factorize_cmd, k0_cmd, minimize_cmd, split_cmd,
                    normalize_cmd})
    common(sub);
  verify_cmd->add_option("--ring", o.ring, "Z or F<p>");
  verify_cmd->add_flag("--json", o.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*homology_cmd) cmd_homology(o);
    else if (*weights_cmd) cmd_weights(o);
    else if (*decompose_cmd) cmd_decompose(o, n);
    else if (*filtrate_cmd) cmd_filtrate(o);
    else if (*factorize_cmd) cmd_factorize(o, n, target, map);
    else if (*k0_cmd) cmd_k0(o);
    else if (*minimize_cmd) cmd_minimize(o);
    else if (*split_cmd) cmd_split_acyclic(o);
    else if (*normalize_cmd) cmd_normalize(o);
    else if (*verify_cmd) return cmd_verify(o, suite, gp, trials, with_time);
    else if (*suites_cmd) cmd_suites();
    return 0;
  } catch (const MathNegative& e) {
    std::cerr << "negative: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  }
}
