// coha-cli: products, actions, coactions, Cartan series and identity suites
// on quivers with involution.  Exit status: 0 success, 1 failure, 2 usage.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "coha/hall/element_io.hpp"
#include "coha/harness/harness.hpp"

using namespace coha;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  bool text = false;
  bool timing = false;

  void emit(const json& j, const std::string& t) const {
    if (text)
      std::cout << t;
    else
      std::cout << j.dump(2) << "\n";
  }
};

std::string data_dir() {
  if (const char* e = std::getenv("COHA_DATA")) return e;
  return COHA_DATA_DIR;
}

DualityQuiver load_checked(const std::string& path) {
  auto q = load_quiver(path);
  require_valid(q);
  return q;
}

int vertex_arg(const DualityQuiver& q, const std::string& id) {
  int v = q.vertex_index(id);
  if (v < 0) throw Usage("unknown vertex '" + id + "'");
  return v;
}

// A grading is either a JSON object {"vertex": n} or a comma list in vertex order.
DimVec degree_arg(const DualityQuiver& q, const std::string& s) {
  if (!s.empty() && s.front() == '{') return dimvec_from_json(q, json::parse(s));
  DimVec d;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      d.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw Usage("bad degree '" + s + "'");
    }
  }
  if (static_cast<int>(d.size()) != q.num_vertices())
    throw Usage("degree needs " + std::to_string(q.num_vertices()) + " entries");
  return d;
}

json series_json(const LaurentSeries& s, const TextContext& ctx) {
  json c = json::array();
  for (const auto& [k, v] : s.coeffs) c.push_back({{"power", k}, {"coeff", to_text(v, ctx)}});
  return {{"order", s.order}, {"coeffs", c}};
}

std::string element_text(const json& j) {
  std::string out;
  auto one = [&](const json& c) { out += c.at("grading").dump() + "  " + c.at("poly").get<std::string>() + "\n"; };
  if (j.is_array()) {
    for (const auto& c : j) one(c);
    if (j.empty()) out = "0\n";
  } else {
    one(j);
  }
  return out;
}

std::string certificate_text(const Certificate& c) {
  std::string out;
  for (const auto& r : c.checks) {
    std::string s = r.status == CheckStatus::ProvedExact           ? "proved-exact"
                    : r.status == CheckStatus::PassedProbabilistic ? "passed-probabilistic"
                                                                   : "FAILED";
    out += s + (r.asserted ? "" : " (not asserted)") + "  " + r.name + "  instances=" + std::to_string(r.instances) + "\n";
    if (!r.passed()) out += "  witness: " + r.witness.dump() + "\n";
  }
  for (const auto& [n, why] : c.skipped) out += "skipped  " + n + "  " + why + "\n";
  out += c.passed() ? "all checks passed\n" : "some checks failed\n";
  return out;
}

const std::map<std::string, std::string> kExamples{
    {"jordan-sp", "jordan_sp"}, {"jordan-oeven", "jordan_oeven"}, {"jordan-oodd", "jordan_oodd"}, {"folded-a3", "folded_a3"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coha-cli"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  std::string format = "json";
  int jobs = 0;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", jobs, "worker count (default: COHA_JOBS or hardware)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", out.timing, "include timings in certificates");

  std::string quiver, f_path, g_path, m_path, vertex, degree, on_path, suite = "all", mode = "exact", mutation = "none";
  std::string example_name;
  bool framed = false;
  int order = 5, max_rank = 4, instances = 12;
  unsigned long seed = 1;

  auto* validate_cmd = app.add_subcommand("validate", "check a quiver file");
  validate_cmd->add_option("quiver", quiver)->required();

  auto* prod = app.add_subcommand("product", "shuffle product f*g");
  prod->add_option("quiver", quiver)->required();
  prod->add_option("f", f_path)->required();
  prod->add_option("g", g_path)->required();

  auto* actc = app.add_subcommand("act", "action f.m on the module");
  actc->add_option("quiver", quiver)->required();
  actc->add_option("f", f_path)->required();
  actc->add_option("m", m_path)->required();
  actc->add_flag("--framed", framed);

  auto* coact = app.add_subcommand("coact", "left coaction of a module element");
  coact->add_option("quiver", quiver)->required();
  coact->add_option("m", m_path)->required();
  coact->add_flag("--framed", framed);

  auto* phi = app.add_subcommand("phi", "phi_i(w) on an algebra degree");
  phi->add_option("quiver", quiver)->required();
  phi->add_option("--vertex", vertex)->required();
  phi->add_option("--degree", degree)->required();
  phi->add_option("--order", order)->check(CLI::NonNegativeNumber);

  auto* psi = app.add_subcommand("psi", "psi_i(w) on a module element (default the vacuum)");
  psi->add_option("quiver", quiver)->required();
  psi->add_option("--orbit", vertex)->required();
  psi->add_option("--order", order)->check(CLI::NonNegativeNumber);
  psi->add_option("--on", on_path);

  auto* verify = app.add_subcommand("verify", "run an identity suite and print a certificate");
  verify->add_option("quiver", quiver)->required();
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", seed);
  verify->add_option("--max-rank", max_rank)->check(CLI::PositiveNumber);
  verify->add_option("--instances", instances)->check(CLI::PositiveNumber);
  verify->add_option("--order", order)->check(CLI::NonNegativeNumber);
  verify->add_option("--mode", mode)->check(CLI::IsMember({"exact", "probabilistic"}));
  std::vector<std::string> mnames{"none"};
  for (auto m : all_mutations()) mnames.push_back(to_string(m));
  verify->add_option("--mutation", mutation)->check(CLI::IsMember(mnames));

  auto* example = app.add_subcommand("example", "regenerate a worked action formula and diff it against its fixture");
  std::vector<std::string> enames;
  for (const auto& [k, v] : kExamples) enames.push_back(k);
  example->add_option("name", example_name)->required()->check(CLI::IsMember(enames));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }
  out.text = format == "text";
  if (jobs > 0) setenv("COHA_JOBS", std::to_string(jobs).c_str(), 1);

  auto fail = [&](const std::string& code, const std::string& msg) {
    out.emit({{"error", {{"code", code}, {"message", msg}}}}, "error: " + msg + "\n");
    return 1;
  };

  try {
    if (*validate_cmd) {
      auto q = load_quiver(quiver);
      auto vs = validate(q);
      std::string t;
      for (const auto& v : vs) t += v.code + "  " + v.message + "\n";
      out.emit({{"valid", vs.empty()}, {"violations", violations_to_json(vs)}}, vs.empty() ? "valid\n" : t);
      return vs.empty() ? 0 : 1;
    }
    if (*prod) {
      auto q = load_checked(quiver);
      auto f = algebra_element_from_json(q, read_json_file(f_path));
      auto g = algebra_element_from_json(q, read_json_file(g_path));
      auto j = to_json(q, product(q, f, g, jobs));
      out.emit(j, element_text(j));
      return 0;
    }
    if (*actc) {
      auto q = load_checked(quiver);
      auto f = algebra_element_from_json(q, read_json_file(f_path));
      auto m = module_element_from_json(q, read_json_file(m_path));
      auto j = to_json(q, act(q, f, m, framed, {}, jobs));
      out.emit(j, element_text(j));
      return 0;
    }
    if (*coact) {
      auto q = load_checked(quiver);
      auto m = module_element_from_json(q, read_json_file(m_path));
      auto ctx = q.text_context();
      json a = json::array();
      std::string t;
      for (const auto& c : coact_left(q, m, framed)) {
        auto v = to_text(c.value, ctx);
        a.push_back({{"left", to_json_dimvec(q, c.left)}, {"right", to_json_ospdimvec(q, c.right)}, {"value", v}});
        t += to_json_dimvec(q, c.left).dump() + " | " + to_json_ospdimvec(q, c.right).dump() + "  " + v + "\n";
      }
      out.emit(a, t);
      return 0;
    }
    if (*phi) {
      auto q = load_checked(quiver);
      int i = vertex_arg(q, vertex);
      auto d = degree_arg(q, degree);
      check_algebra_grading(q, d);
      auto ctx = q.text_context();
      auto closed = phi_closed(q, i, d);
      auto s = expand_at_infinity(closed, spectral_var(), order);
      out.emit({{"vertex", vertex}, {"degree", to_json_dimvec(q, d)}, {"closed", to_text(closed, ctx)}, {"series", series_json(s, ctx)}},
               to_text(closed, ctx) + "\n" + to_text(s, ctx) + "\n");
      return 0;
    }
    if (*psi) {
      auto q = load_checked(quiver);
      int i = vertex_arg(q, vertex);
      if (q.vertex_orbits()[q.orbit_of(i)].rep != i) throw Usage("'" + vertex + "' is not an orbit representative");
      auto m = on_path.empty() ? vacuum(q) : module_element_from_json(q, read_json_file(on_path));
      auto ctx = q.text_context();
      json a = json::array();
      std::string t;
      for (const auto& [d, r] : psi_act(q, i, m)) {
        auto s = expand_at_infinity(r, spectral_var(), order);
        a.push_back({{"grading", to_json_ospdimvec(q, d)}, {"closed", to_text(r, ctx)}, {"series", series_json(s, ctx)}});
        t += to_json_ospdimvec(q, d).dump() + "  " + to_text(r, ctx) + "\n  " + to_text(s, ctx) + "\n";
      }
      out.emit(a.size() == 1 ? a[0] : a, t);
      return 0;
    }
    if (*verify) {
      auto q = load_checked(quiver);
      SuiteOptions o;
      o.seed = seed;
      o.max_rank = max_rank;
      o.instances = instances;
      o.order = order;
      o.jobs = jobs;
      o.mode = mode == "exact" ? EqualityMode::Exact : EqualityMode::Probabilistic;
      o.cfg.mutation = mutation_from_string(mutation);
      auto c = run_suite(q, suite, o);
      out.emit(to_json(c, out.timing), certificate_text(c));
      return c.passed() ? 0 : 1;
    }
    if (*example) {
      auto stem = kExamples.at(example_name);
      auto r = regression_check(data_dir() + "/fixtures/" + stem + ".json", data_dir());
      Certificate c;
      c.suite = "example";
      c.checks.push_back(r);
      out.emit(to_json(c, out.timing), certificate_text(c));
      return c.passed() ? 0 : 1;
    }
  } catch (const Usage& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == "usage") {
      std::cerr << e.what() << "\n";
      return 2;
    }
    return fail(e.code(), e.what());
  } catch (const ParseError& e) {
    return fail("parse-error", e.what());
  } catch (const json::exception& e) {
    return fail("parse-error", e.what());
  } catch (const std::exception& e) {
    return fail("error", e.what());
  }
  return 0;
}
