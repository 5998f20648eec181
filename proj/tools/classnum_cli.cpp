// classnum: analyze a curve corpus, run the property suites, sweep tower
// formulas, or query the divisor-count oracle.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "classnum/classnum.hpp"

namespace {

using namespace classnum;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct RunConfig {
  std::string corpus;
  std::vector<unsigned> r;
  std::string format = "json";
  std::uint64_t ceiling = std::uint64_t{1} << 24;
  std::uint64_t oracle_ceiling = kDefaultOracleCeiling;
  unsigned precision = kDefaultPrecision;
  std::uint64_t seed = 20240601;
  std::vector<std::string> suites;
  std::string out;
  unsigned jobs = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string fault = "none";
  // towers
  std::string family = "gs";
  std::uint64_t q = 2;
  unsigned tower_r = 2;
  std::uint64_t l = 4;
  unsigned levels = 6;
  // oracle
  std::string curve;
  std::vector<std::string> B;
  std::uint64_t n = 0;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(cfg.out);
  if (!o) throw InputError("cannot write " + cfg.out);
  o << text;
}

void check_common(const RunConfig& cfg) {
  if (cfg.ceiling == 0 || cfg.oracle_ceiling == 0) throw InputError("ceilings must be positive");
  if (cfg.precision < 64) throw InputError("precision must be at least 64 bits");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "table")
    throw InputError("format must be json, csv or table");
}

std::filesystem::path cache_dir_for(const RunConfig& cfg) {
  if (cfg.no_cache) return {};
  auto dir = resolve_cache_dir(cfg.cache_dir);
  if (!dir.empty()) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "classnum";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache/classnum";
  return {};
}

int cmd_analyze(const RunConfig& cfg) {
  check_common(cfg);
  if (cfg.corpus.empty()) throw InputError("analyze needs --corpus");
  auto curves = load_corpus(cfg.corpus);
  AnalysisOptions opt;
  opt.count.ceiling = cfg.ceiling;
  opt.r_choices = cfg.r;
  opt.precision = cfg.precision;
  RunStats stats;
  const auto results = analyze_corpus(std::move(curves), opt, cache_dir_for(cfg), cfg.jobs, &stats);
  if (cfg.format == "json")
    emit(cfg, analysis_document(results).dump(2) + "\n");
  else if (cfg.format == "csv")
    emit(cfg, analysis_csv(results));
  else
    emit(cfg, analysis_table(results));
  bool all = true, bad_input = false;
  for (const auto& c : results) {
    if (c["status"] != "ok" && c["error"]["kind"] == "InputError") bad_input = true;
    if (!curve_passes(c)) {
      all = false;
      if (c["status"] != "ok")
        std::cerr << c["name"].get<std::string>() << ": " << c["error"]["kind"].get<std::string>() << ": "
                  << c["error"]["message"].get<std::string>() << '\n';
      else
        std::cerr << c["name"].get<std::string>() << ": verification failed\n";
    }
  }
  if (bad_input) return kExitInput;
  return all ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& cfg) {
  check_common(cfg);
  VerifyConfig vc;
  if (!cfg.corpus.empty()) vc.corpus = load_corpus(cfg.corpus);
  vc.seed = cfg.seed;
  vc.oracle_ceiling = cfg.oracle_ceiling;
  vc.count.ceiling = cfg.ceiling;
  vc.precision = cfg.precision;
  if (cfg.fault == "binomial-off-by-one")
    vc.fault = Fault::binomial_off_by_one;
  else if (cfg.fault != "none")
    throw InputError("unknown fault " + cfg.fault);
  const auto results = run_suites(vc, cfg.suites);
  const auto doc = verify_document(results, cfg.seed);
  if (cfg.format == "json") {
    emit(cfg, doc.dump(2) + "\n");
  } else {
    Json rows = Json::array();
    for (const auto& s : doc["suites"]) {
      Json r = s;
      r["counterexample"] = s["counterexample"].is_null() ? "" : s["counterexample"].dump();
      rows.push_back(r);
    }
    emit(cfg, cfg.format == "csv" ? rows_csv(rows) : rows_table(rows));
  }
  return doc["passed"].get<bool>() ? kExitOk : kExitFailure;
}

int cmd_towers(const RunConfig& cfg) {
  check_common(cfg);
  Json rows = Json::array();
  if (cfg.family == "gs") {
    for (const auto& t : gs_sweep(cfg.q, cfg.tower_r, cfg.levels, cfg.precision)) rows.push_back(to_json(t));
  } else if (cfg.family == "fermat") {
    rows.push_back(to_json(fermat_tame(cfg.l, cfg.tower_r, cfg.precision)));
  } else if (cfg.family == "catalog") {
    for (const auto& e : tower_catalog(cfg.precision)) rows.push_back(to_json(e));
  } else {
    throw InputError("family must be gs, fermat or catalog");
  }
  if (cfg.format == "json") {
    Json doc{{"schema", "classnum.towers"}, {"schema_version", kSchemaVersion}, {"code_version", kCodeVersion},
             {"family", cfg.family}, {"rows", rows}};
    emit(cfg, doc.dump(2) + "\n");
  } else {
    emit(cfg, cfg.format == "csv" ? rows_csv(rows) : rows_table(rows));
  }
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg) {
  check_common(cfg);
  PlaceSpectrum spec;
  std::string origin;
  if (!cfg.B.empty()) {
    for (const auto& b : cfg.B) {
      Integer v;
      if (v.set_str(b, 10) != 0 || v < 0) throw InputError("--B entries must be nonnegative integers");
      spec.B.push_back(v);
    }
    origin = "B";
  } else {
    if (cfg.corpus.empty() || cfg.curve.empty()) throw InputError("oracle needs --B or --corpus with --curve");
    const auto curves = load_corpus(cfg.corpus);
    auto it = std::find_if(curves.begin(), curves.end(), [&](const CurveSpec& c) { return c.name == cfg.curve; });
    if (it == curves.end()) throw InputError("no curve named " + cfg.curve);
    CountOptions co;
    co.ceiling = cfg.ceiling;
    spec = spectrum(*it, co);
    if (spec.size() < cfg.n) spec = extend_spectrum(spec, zeta_numerator(points_from_places(spec)), cfg.n);
    origin = it->name;
  }
  const Integer brute = brute_force_A_n(spec, cfg.n, cfg.oracle_ceiling);
  const Integer series = divisor_counts(spec, cfg.n).A[cfg.n];
  Json doc{{"schema", "classnum.oracle"}, {"schema_version", kSchemaVersion}, {"source", origin}, {"n", cfg.n},
           {"B", to_json(spec.B)}, {"enumeration", brute.get_str()}, {"series", series.get_str()},
           {"agree", brute == series}};
  if (cfg.format == "json")
    emit(cfg, doc.dump(2) + "\n");
  else {
    Json rows = Json::array();
    Json r = doc;
    r["B"] = doc["B"].dump();
    rows.push_back(r);
    emit(cfg, cfg.format == "csv" ? rows_csv(rows) : rows_table(rows));
  }
  return brute == series ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Class numbers, divisor counts and class-number bounds of curves over finite fields"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, csv or table")->capture_default_str();
    sub->add_option("--out", cfg.out, "write output to this file instead of stdout");
    sub->add_option("--precision", cfg.precision, "interval precision in bits (>= 64)")->capture_default_str();
    sub->add_option("--ceiling", cfg.ceiling, "largest enumeration size for point counting")->capture_default_str();
    sub->add_option("--oracle-ceiling", cfg.oracle_ceiling, "largest n for the enumeration oracle")
        ->capture_default_str();
  };

  auto* analyze = app.add_subcommand("analyze", "per-curve invariants and bound report");
  common(analyze);
  analyze->add_option("--corpus", cfg.corpus, "YAML corpus file")->required();
  analyze->add_option("--r", cfg.r, "degrees r used by the r-dependent bounds (default: all with B_r > 0)")
      ->delimiter(',');
  analyze->add_option("--jobs", cfg.jobs, "curves analyzed concurrently")->capture_default_str();
  analyze->add_option("--cache-dir", cfg.cache_dir, std::string("result cache (overrides $") + kCacheEnv + ")");
  analyze->add_flag("--no-cache", cfg.no_cache, "disable the result cache");

  auto* verify = app.add_subcommand("verify", "run property suites");
  common(verify);
  verify->add_option("--corpus", cfg.corpus, "YAML corpus file for the corpus-based suites");
  verify->add_option("--seed", cfg.seed, "seed of the random generators")->capture_default_str();
  verify->add_option("--suite", cfg.suites, "run only these suites")->delimiter(',');
  verify->add_option("--inject-fault", cfg.fault, "none or binomial-off-by-one")->capture_default_str();

  auto* towers = app.add_subcommand("towers", "tower genus, place-count and growth tables");
  common(towers);
  towers->add_option("--family", cfg.family, "gs, fermat or catalog")->capture_default_str();
  towers->add_option("--q", cfg.q, "base field size (gs)")->capture_default_str();
  towers->add_option("--r", cfg.tower_r, "degree r")->capture_default_str();
  towers->add_option("--l", cfg.l, "Fermat parameter l")->capture_default_str();
  towers->add_option("--levels", cfg.levels, "number of levels (gs)")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "A_n by direct enumeration and by the generating function");
  common(oracle);
  oracle->add_option("--corpus", cfg.corpus, "YAML corpus file");
  oracle->add_option("--curve", cfg.curve, "curve name in the corpus");
  oracle->add_option("--B", cfg.B, "place counts B_1,B_2,... given directly")->delimiter(',');
  oracle->add_option("--n", cfg.n, "degree n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (towers->parsed()) return cmd_towers(cfg);
    return cmd_oracle(cfg);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
