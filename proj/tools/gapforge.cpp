// gapforge: reductions, exact solvers and property suites from the command
// line.
//
// Exit status: 0 success (including inconclusive suites), 1 runtime error,
// 2 usage error, 3 property violation.

#include "gapforge/agreement.hpp"
#include "gapforge/downstream.hpp"
#include "gapforge/formula.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/setsys.hpp"
#include "gapforge/solvers.hpp"
#include "gapforge/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

using namespace gapforge;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolation = 3;
constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

Json frac(const Fraction& f) { return Json{{"exact", to_string(f)}, {"approx", to_double(f)}}; }

Json index_list(const IndexSet& xs) { return Json(std::vector<std::uint32_t>(xs.begin(), xs.end())); }

std::string bits(const std::vector<std::uint8_t>& xs) {
  std::string s;
  for (auto b : xs) s += b ? '1' : '0';
  return s;
}

/// Options shared by every command that reads one instance.
struct Common {
  std::string in;
  std::string out;
  std::string report;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  bool timings = false;
  bool json = false;
  std::vector<std::string> argv;

  std::uint64_t effective_budget() const { return budget ? *budget : default_budget(); }
};

std::string command_line(const std::vector<std::string>& argv) {
  std::string s;
  for (std::size_t i = 0; i < argv.size(); ++i) s += (i ? " " : "") + argv[i];
  return s;
}

/// Writes the instance and its provenance sidecar.
void emit_artifact(const Common& c, const std::string& kind, const std::string& input, const std::string& output,
                   const Json& params) {
  write_file(c.out, output);
  Json prov;
  prov["tool"] = "gapforge";
  prov["version"] = kVersion;
  prov["command"] = command_line(c.argv);
  prov["stage"] = kind;
  prov["seed"] = c.seed;
  prov["params"] = params;
  prov["input"] = Json{{"path", c.in}, {"sha256", sha256_hex(input)}};
  prov["output"] = Json{{"path", c.out}, {"sha256", sha256_hex(output)}};
  write_file(c.out + ".prov.json", prov.dump(2) + "\n");
}

void emit_report(const Common& c, Json report, const std::vector<std::string>& summary,
                 std::chrono::steady_clock::time_point start) {
  if (c.timings) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["wall_ms"] = ms;
  }
  if (!c.report.empty()) write_file(c.report, report.dump(2) + "\n");
  if (c.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& line : summary) std::cout << line << "\n";
  }
}

// ---------------------------------------------------------------------------
// reduce

struct ReduceArgs {
  std::string stage;
  std::size_t k = 0;
  std::size_t t = 2;
  std::string p;
  std::string delta = "1";
  std::size_t var_budget = 24;
  bool allow_vacuous = false;
  std::string sets_out;
  std::size_t threshold = 0;
  std::optional<std::size_t> multiplicity;
  unsigned norm = 1;
};

int cmd_reduce(const Common& c, const ReduceArgs& a) {
  const std::string input = read_file(c.in);
  const std::uint64_t budget = c.effective_budget();
  Json params;
  std::string output;
  if (a.stage == "labelcover") {
    if (a.k == 0 || a.p.empty()) throw UsageError("reduce labelcover needs --k and --p");
    const auto formula = parse_dimacs(input);
    const Fraction p = parse_fraction(a.p);
    const auto T = sample_random_subsets(formula.num_clauses(), a.k, p, c.seed);
    MainReductionOptions opts;
    opts.var_budget = a.var_budget;
    opts.allow_vacuous = a.allow_vacuous;
    const auto L = build_main_reduction(formula, T, a.t, opts);
    output = write_label_cover_json(L);
    params = Json{{"k", a.k}, {"t", a.t}, {"p", to_string(p)}, {"var_budget", a.var_budget},
                  {"allow_vacuous", a.allow_vacuous}};
    if (!a.sets_out.empty()) {
      write_file(a.sets_out, write_setsys(T));
      params["sets_out"] = a.sets_out;
    }
  } else if (a.stage == "alphabet") {
    const auto L = parse_label_cover_json(input);
    const Fraction delta = parse_fraction(a.delta);
    const auto R = reduce_alphabet(L, delta, budget);
    output = write_label_cover_json(R.instance);
    params = Json{{"delta", to_string(delta)}, {"q", R.q}, {"ell", R.ell}, {"block_length", R.block_length}};
  } else if (a.stage == "coverage" || a.stage == "unique-cover") {
    const auto L = parse_label_cover_json(input);
    const auto R = feige_coverage_reduction(L, budget);
    output = write_coverage(R.instance);
    params = Json{{"t", R.t}, {"universe", R.instance.universe()}, {"sets", R.instance.num_sets()}};
  } else if (a.stage == "clustering") {
    const auto I = parse_coverage(input);
    const auto C = guha_khuller_reduction(I, budget);
    output = write_clustering(C);
    params = Json{{"degenerate", C.degenerate}};
  } else if (a.stage == "ncp" || a.stage == "cvp") {
    const auto I = parse_coverage(input);
    const std::size_t threshold = a.threshold ? a.threshold : I.k();
    const std::size_t mult = a.multiplicity ? *a.multiplicity : threshold + 1;
    params = Json{{"threshold", threshold}, {"multiplicity", mult}};
    if (a.stage == "ncp") {
      output = write_code(abss_ncp_reduction(I, threshold, mult));
    } else {
      output = write_lattice(abss_cvp_reduction(I, threshold, mult, a.norm));
      params["p"] = a.norm;
    }
  }
  emit_artifact(c, a.stage, input, output, params);
  std::cout << "wrote " << c.out << " (" << a.stage << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string problem;
  std::string mode = "exact";
  std::optional<std::int64_t> box;
  std::size_t r = 1;
  std::size_t ell = 1;
  std::size_t t = 2;
  std::string eta = "0";
  std::string p = "1/2";
  std::string delta;
  std::string alpha = "0";
  std::uint64_t trials = 10000;
};

int cmd_solve(const Common& c, const SolveArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const std::string input = read_file(c.in);
  const std::uint64_t budget = c.effective_budget();
  Json r;
  r["problem"] = a.problem;
  r["input"] = Json{{"path", c.in}, {"sha256", sha256_hex(input)}};
  r["mode"] = a.mode;
  r["budget"] = budget;
  r["seed"] = c.seed;
  std::vector<std::string> summary;
  const auto line = [&](const std::string& s) { summary.push_back(s); };

  if (a.problem == "max-val") {
    const auto f = parse_dimacs(input);
    const auto res = brute_force_max_val(f, budget);
    r["value"] = frac(res.value);
    r["witness"] = bits(res.witness.values());
    r["enumerated"] = res.enumerated;
    line("max-val " + to_string(res.value) + " witness " + bits(res.witness.values()));
  } else if (a.problem == "lc-val" || a.problem == "lc-wval") {
    const auto L = parse_label_cover_json(input);
    const auto res = a.problem == "lc-val" ? brute_force_val(L, budget) : brute_force_wval(L, budget);
    r["value"] = frac(res.value);
    r["witness"] = Json{{"left", res.labeling.left}, {"right", res.labeling.right}};
    r["enumerated"] = res.enumerated;
    line(a.problem + " " + to_string(res.value) + " over " + std::to_string(res.enumerated) + " left labelings");
  } else if (a.problem == "max-coverage") {
    const auto I = parse_coverage(input);
    const auto g = greedy_max_coverage(I);
    r["greedy"] = Json{{"covered", g.covered}, {"sets", index_list(g.sets)}};
    line("greedy covers " + std::to_string(g.covered) + " of " + std::to_string(I.universe()));
    if (a.mode == "exact") {
      const auto e = exact_max_coverage(I, budget);
      const bool ok = Fraction(g.covered) >= greedy_ratio(I.k()) * e.covered;
      r["value"] = e.covered;
      r["witness"] = index_list(e.sets);
      r["enumerated"] = e.enumerated;
      r["greedy_ratio_bound"] = frac(greedy_ratio(I.k()));
      r["greedy_within_bound"] = ok;
      line("exact covers " + std::to_string(e.covered) + "; greedy within 1-(1-1/k)^k: " + (ok ? "yes" : "NO"));
    }
  } else if (a.problem == "set-cover") {
    const auto I = parse_coverage(input);
    const auto res = exact_min_set_cover(I, budget);
    if (res) {
      r["value"] = res->sets.size();
      r["witness"] = index_list(res->sets);
      r["enumerated"] = res->enumerated;
      r["unique"] = verify_unique_cover(I, res->sets);
      line("min set cover " + std::to_string(res->sets.size()) + (verify_unique_cover(I, res->sets) ? " (unique)" : ""));
    } else {
      r["value"] = nullptr;
      line("no cover exists");
    }
  } else if (a.problem == "kmedian" || a.problem == "kmean") {
    const auto I = parse_clustering(input);
    const auto res = a.problem == "kmedian" ? exact_kmedian(I, budget) : exact_kmean(I, budget);
    r["value"] = res.cost;
    r["witness"] = index_list(res.facilities);
    r["enumerated"] = res.enumerated;
    line(a.problem + " cost " + std::to_string(res.cost));
  } else if (a.problem == "ncp") {
    const auto I = parse_code(input);
    const auto res = exact_ncp(I, budget);
    r["value"] = res.cost;
    r["witness"] = bits(res.x);
    r["enumerated"] = res.enumerated;
    line("ncp cost " + std::to_string(res.cost));
  } else if (a.problem == "cvp") {
    const auto I = parse_lattice(input);
    const auto res = exact_cvp(I, a.box, budget);
    r["value"] = res.cost.str();
    r["witness"] = res.x;
    r["box"] = res.box;
    r["box_points"] = res.box_points;
    r["enumerated"] = res.enumerated;
    r["box_note"] = "any coordinate outside [-box, box] costs more than box through its identity row";
    line("cvp cost " + res.cost.str() + " within box " + std::to_string(res.box));
  } else if (a.problem == "disperser") {
    const auto S = parse_setsys(input);
    const Fraction eta = parse_fraction(a.eta);
    const auto mode = a.mode == "heuristic" ? CheckMode::heuristic : CheckMode::exact;
    const auto v = is_strong_intersection_disperser(S, a.r, a.ell, eta, mode, budget);
    r["params"] = Json{{"r", a.r}, {"ell", a.ell}, {"eta", to_string(eta)}};
    r["verdict"] = std::string(to_string(v.kind));
    Json w = Json::array();
    for (const auto& sub : v.witness) w.push_back(index_list(sub));
    r["witness"] = w;
    r["uncovered"] = v.uncovered;
    r["enumerated"] = v.combinations_checked;
    line("disperser verdict " + std::string(to_string(v.kind)));
  } else if (a.problem == "dnf-false-prob") {
    const auto f = parse_dnf(input);
    const Fraction p = parse_fraction(a.p);
    const auto res = a.mode == "montecarlo" ? dnf_false_prob(f, p, MonteCarlo{a.trials, c.seed})
                                            : dnf_false_prob(f, p, budget);
    if (res.exact) r["value"] = frac(*res.exact);
    else r["value"] = res.value;
    r["estimated"] = res.estimated;
    if (res.estimated) r["trials"] = res.trials;
    line("Pr[f = 0] = " + (res.exact ? to_string(*res.exact) : std::to_string(res.value)));
  } else if (a.problem == "t-wagr") {
    const auto F = parse_funcs(input);
    const auto res = a.mode == "montecarlo" ? t_wagr(F, a.t, MonteCarlo{a.trials, c.seed}) : t_wagr(F, a.t, budget);
    if (res.exact) r["value"] = frac(*res.exact);
    else r["value"] = res.value;
    r["estimated"] = res.estimated;
    line(std::to_string(a.t) + "-wise agreement " + (res.exact ? to_string(*res.exact) : std::to_string(res.value)));
  } else if (a.problem == "agreement-decode") {
    if (a.delta.empty()) throw UsageError("agreement-decode needs --delta");
    const auto F = parse_funcs(input);
    DecodeParams dp;
    dp.alpha = parse_fraction(a.alpha);
    dp.alpha_overridden = true;
    dp.mode = a.mode == "greedy" ? SearchMode::greedy : SearchMode::exact;
    dp.budget = budget;
    dp.seed = c.seed;
    const auto res = agreement_decode(F, a.t, parse_fraction(a.delta), dp);
    const auto& rep = res.report;
    r["subcollection"] = index_list(res.subcollection);
    r["g"] = bits(res.g);
    r["report"] = Json{{"k", rep.k},
                       {"n", rep.n},
                       {"t", rep.t},
                       {"delta", frac(rep.delta)},
                       {"alpha", frac(rep.alpha)},
                       {"alpha_overridden", rep.alpha_overridden},
                       {"beta", frac(rep.beta)},
                       {"k_large_enough", rep.k_large_enough},
                       {"blue_count", rep.blue_count},
                       {"red_count", rep.red_count},
                       {"blue_threshold", frac(rep.blue_threshold)},
                       {"blue_ok", rep.blue_ok},
                       {"h", rep.h},
                       {"rb_transitive", rep.rb_transitive},
                       {"d", rep.d},
                       {"search", rep.mode == SearchMode::exact ? "exact" : "greedy"},
                       {"density", frac(rep.density)},
                       {"density_bound", frac(rep.density_bound)},
                       {"density_ok", rep.density_ok},
                       {"rho", frac(rep.rho)},
                       {"eta", frac(rep.eta)},
                       {"mean_disagr", frac(rep.mean_disagr)},
                       {"final_bound", rep.final_bound},
                       {"final_ok", rep.final_ok},
                       {"estimated", rep.estimated},
                       {"proof_path_failed", rep.proof_path_failed}};
    line("decoded from " + std::to_string(res.subcollection.size()) + " sets; mean disagreement " +
         to_string(rep.mean_disagr) + (rep.proof_path_failed ? " (proof path failed)" : ""));
  }
  emit_report(c, r, summary, start);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

Json suite_json(const SuiteReport& rep) {
  Json notes = Json::object();
  for (const auto& [k, v] : rep.notes) notes[k] = v;
  Json j{{"suite", rep.name},
         {"status", std::string(to_string(rep.status))},
         {"cases", rep.cases},
         {"violations", rep.violations},
         {"inconclusive", rep.inconclusive},
         {"notes", notes}};
  if (!rep.repro.empty()) j["repro"] = rep.repro;
  return j;
}

int cmd_verify(const Common& c, const std::string& suite, std::size_t scale) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else names = {suite};
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.scale = scale;
  opt.budget = c.effective_budget();
  Json out;
  out["seed"] = c.seed;
  out["scale"] = scale;
  out["budget"] = opt.budget;
  out["suites"] = Json::array();
  std::vector<std::string> summary;
  bool failed = false;
  for (const auto& name : names) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = run_suite(name, opt);
    Json j = suite_json(rep);
    if (c.timings) j["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out["suites"].push_back(j);
    failed = failed || rep.status == SuiteStatus::fail;
    std::ostringstream os;
    os << std::left << std::setw(22) << rep.name << " " << std::setw(12) << to_string(rep.status) << " cases "
       << rep.cases << ", violations " << rep.violations << ", inconclusive " << rep.inconclusive;
    summary.push_back(os.str());
    if (!rep.repro.empty()) summary.push_back("  first violation:\n" + rep.repro);
  }
  emit_report(c, out, summary, start);
  return failed ? kExitViolation : 0;
}

// ---------------------------------------------------------------------------
// info

std::string first_token(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    return tok;
  }
  return "";
}

int cmd_info(const std::string& path) {
  const std::string text = read_file(path);
  const std::string tok = first_token(text);
  std::cout << "file    " << path << "\nsha256  " << sha256_hex(text) << "\n";
  if (tok == "p") {
    const auto f = parse_dimacs(text);
    std::cout << "format  dimacs\nvars    " << f.num_vars() << "\nclauses " << f.num_clauses() << "\nDelta   "
              << max_occurrence(f) << "\n";
  } else if (!tok.empty() && tok[0] == '{') {
    const auto L = parse_label_cover_json(text);
    std::uint64_t left_total = 0, right_max = 0;
    for (auto a : L.left_alphabets()) left_total += a;
    for (auto a : L.right_alphabets()) right_max = std::max(right_max, a);
    const auto t = L.right_degree();
    std::cout << "format  labelcover\nleft    " << L.num_left() << "\nright   " << L.num_right() << "\nedges   "
              << L.num_edges() << "\nsum |Σ_u| " << left_total << "\nmax |Σ_v| " << right_max << "\nright degree "
              << (t ? std::to_string(*t) : std::string("irregular")) << "\nbi-regular " << (L.is_bi_regular() ? "yes" : "no")
              << "\nleft labelings " << left_labeling_count(L) << "\n";
  } else if (tok == "setsys") {
    const auto S = parse_setsys(text);
    std::cout << "format  setsys\nuniverse " << S.universe_size() << "\nsets    " << S.num_sets() << "\nmax size "
              << max_set_size(S) << "\n";
    if (S.num_sets() >= 2) std::cout << "max pairwise " << pairwise_intersection_max(S) << "\n";
  } else if (tok == "dnf") {
    const auto f = parse_dnf(text);
    std::cout << "format  dnf\nvars    " << f.num_vars() << "\nterms   " << f.size() << "\nwidth   " << f.width() << "\n";
  } else if (tok == "funcs") {
    const auto F = parse_funcs(text);
    std::cout << "format  funcs\nn       " << F.n() << "\nk       " << F.k() << "\n";
  } else if (tok == "cov") {
    const auto I = parse_coverage(text);
    std::cout << "format  cov\nuniverse " << I.universe() << "\nsets    " << I.num_sets() << "\nk       " << I.k()
              << "\nuncovered elements " << I.uncovered_elements().size() << "\n";
  } else if (tok == "clustering") {
    const auto I = parse_clustering(text);
    std::cout << "format  clustering\nclients " << I.clients() << "\nfacilities " << I.facilities() << "\nk       "
              << I.k() << "\ntriangle " << (find_triangle_violation(I) ? "VIOLATED" : "ok") << "\n";
  } else if (tok == "code") {
    const auto I = parse_code(text);
    std::cout << "format  code\nrows    " << I.rows << "\ncols    " << I.cols << "\nk       " << I.k << "\n";
  } else if (tok == "lattice") {
    const auto I = parse_lattice(text);
    std::cout << "format  lattice\nrows    " << I.rows << "\ncols    " << I.cols << "\nk       " << I.k << "\np       "
              << I.p << "\n";
  } else {
    throw std::runtime_error("unrecognized file format in " + path);
  }
  return 0;
}

int cmd_params(const std::string& eps, std::size_t Delta, const std::string& delta, std::size_t t, std::size_t k) {
  const auto s = soundness_params(parse_fraction(eps), Delta, parse_fraction(delta), t, k);
  const std::map<std::string, std::string> values = {
      {"C", to_string(s.C)},         {"p", to_string(s.p)},         {"mu", to_string(s.mu)},
      {"gamma", to_string(s.gamma)}, {"kappa", to_string(s.kappa)}, {"alpha", to_string(s.alpha)},
      {"beta", to_string(s.beta)},   {"rho", to_string(s.rho)},     {"eta", to_string(s.eta)},
      {"d", to_string(s.d)}};
  for (const auto& [sym, formula] : s.formulas())
    std::cout << std::left << std::setw(6) << sym << " = " << std::setw(24) << values.at(sym) << "  " << formula << "\n";
  if (s.theory_only) std::cout << "p > 1: theory-only bundle, not usable for sampling\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gapforge: reductions out of 3-CNF through Label Cover, with exact oracles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: OpenMP default)")->check(CLI::NonNegativeNumber);

  Common common;
  for (int i = 0; i < argc; ++i) common.argv.emplace_back(argv[i]);
  const auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--in", common.in, "Input file")->required()->check(CLI::ExistingFile);
    if (needs_out) sub->add_option("--out", common.out, "Output file")->required();
    sub->add_option("--seed", common.seed, "Random seed (mandatory)")->required();
    sub->add_option("--budget", common.budget, "Enumeration budget (default GAPFORGE_BUDGET or 1e8)");
  };

  ReduceArgs ra;
  auto* reduce = app.add_subcommand("reduce", "Run one reduction stage and write its output instance");
  reduce->add_option("stage", ra.stage, "Stage")
      ->required()
      ->check(CLI::IsMember({"labelcover", "alphabet", "coverage", "unique-cover", "clustering", "ncp", "cvp"}));
  add_common(reduce, true);
  reduce->add_option("--k", ra.k, "Number of sampled clause subsets");
  reduce->add_option("--t", ra.t, "Right degree")->check(CLI::Range(2, 64));
  reduce->add_option("--p", ra.p, "Sampling probability, e.g. 1/2");
  reduce->add_option("--delta", ra.delta, "Alphabet-reduction δ");
  reduce->add_option("--var-budget", ra.var_budget, "Max |var(T)| per subset");
  reduce->add_flag("--allow-vacuous", ra.allow_vacuous, "Keep subsets with no satisfying assignment");
  reduce->add_option("--sets-out", ra.sets_out, "Also write the sampled clause subsets");
  reduce->add_option("--threshold", ra.threshold, "Soundness threshold (default k)");
  reduce->add_option("--multiplicity", ra.multiplicity, "Element-row copies (default threshold + 1)");
  reduce->add_option("--norm", ra.norm, "ℓ_p exponent for cvp")->check(CLI::Range(1, 8));

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve an instance exactly and report value and witness");
  solve->add_option("problem", sa.problem, "Problem")
      ->required()
      ->check(CLI::IsMember({"max-val", "lc-val", "lc-wval", "max-coverage", "set-cover", "kmedian", "kmean", "ncp",
                             "cvp", "disperser", "dnf-false-prob", "t-wagr", "agreement-decode"}));
  add_common(solve, false);
  solve->add_option("--mode", sa.mode, "exact | greedy | heuristic | montecarlo")
      ->check(CLI::IsMember({"exact", "greedy", "heuristic", "montecarlo"}));
  solve->add_option("--box", sa.box, "CVP coordinate bound (default k + 1)");
  solve->add_option("--r", sa.r, "Disperser r");
  solve->add_option("--ell", sa.ell, "Disperser ℓ");
  solve->add_option("--eta", sa.eta, "Disperser η");
  solve->add_option("--p", sa.p, "Bias for dnf-false-prob");
  solve->add_option("--t", sa.t, "t for t-wagr and agreement-decode");
  solve->add_option("--delta", sa.delta, "δ for agreement-decode");
  solve->add_option("--alpha", sa.alpha, "α for agreement-decode");
  solve->add_option("--trials", sa.trials, "Monte-Carlo trials");
  solve->add_option("--report", common.report, "Also write the JSON report here");
  solve->add_flag("--json", common.json, "Print the JSON report instead of the summary");
  solve->add_flag("--timings", common.timings, "Include wall time in the report");

  std::string suite;
  std::size_t scale = 1;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite, "Suite name or 'all'")->required()->check(CLI::IsMember(suites));
  verify->add_option("--seed", common.seed, "Random seed (mandatory)")->required();
  verify->add_option("--scale", scale, "Size multiplier")->check(CLI::PositiveNumber);
  verify->add_option("--budget", common.budget, "Enumeration budget");
  verify->add_option("--report", common.report, "Also write the JSON report here");
  verify->add_flag("--json", common.json, "Print the JSON report instead of the summary");
  verify->add_flag("--timings", common.timings, "Include wall time in the report");

  std::string info_path;
  auto* info = app.add_subcommand("info", "Describe an instance file, or print a soundness parameter bundle");
  info->add_option("file", info_path, "Instance file")->check(CLI::ExistingFile);
  std::string p_eps, p_delta;
  std::size_t p_Delta = 0, p_t = 0, p_k = 0;
  auto* params = info->add_subcommand("params", "Soundness parameter bundle");
  params->add_option("--epsilon", p_eps)->required();
  params->add_option("--delta", p_delta)->required();
  params->add_option("--Delta", p_Delta)->required();
  params->add_option("--t", p_t)->required();
  params->add_option("--k", p_k)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*reduce) return cmd_reduce(common, ra);
    if (*solve) return cmd_solve(common, sa);
    if (*verify) return cmd_verify(common, suite, scale);
    if (*params) return cmd_params(p_eps, p_Delta, p_delta, p_t, p_k);
    if (*info) {
      if (info_path.empty()) throw UsageError("info needs a file or the params subcommand");
      return cmd_info(info_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "gapforge: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
