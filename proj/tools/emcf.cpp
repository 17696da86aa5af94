// emcf: digits of log 2, certified continued fractions, the convergent scan
// and the analytic checks, from one command line.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "emcf/arithmetic.hpp"
#include "emcf/asymptotics.hpp"
#include "emcf/cache.hpp"
#include "emcf/omega.hpp"
#include "emcf/parallel.hpp"
#include "emcf/report.hpp"
#include "emcf/scanner.hpp"
#include "emcf/verify.hpp"

namespace fs = std::filesystem;
using namespace emcf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBudget = 2;
constexpr int kExitResource = 3;

struct Globals {
  std::string cache_dir = ".emcf-cache";
  int threads = 0;
  bool json = false;
  std::string command_line;
};

// "2^8*3^5*5^3" or a plain integer.
BigInt parse_n(const std::string& text) {
  BigInt n = 1;
  std::stringstream ss(text);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    const auto caret = factor.find('^');
    const BigInt base = parse_bigint(factor.substr(0, caret));
    const unsigned long e = caret == std::string::npos ? 1 : std::stoul(factor.substr(caret + 1));
    n *= pow_ui(base, e);
  }
  if (n < 1) throw std::invalid_argument("N must be positive: " + text);
  return n;
}

CfMethod parse_method(const std::string& s) {
  if (s == "hgcd") return CfMethod::hgcd;
  if (s == "quadratic") return CfMethod::quadratic;
  throw std::invalid_argument("unknown method: " + s);
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void emit(const Json& report, const std::string& path) {
  if (!path.empty()) {
    std::ofstream(path) << report.dump(2) << "\n";
  }
}

struct ScanRun {
  ScanResult result;
  std::string digit_hash;
  std::string cf_hash;
};

ScanRun scan_with_cache(ArtifactCache& cache, const ScanConfig& cfg) {
  if (cfg.digit_budget > cfg.log_options.max_digits) return ScanRun{run_scan(cfg), "", ""};
  const auto digits = cache.digits("log2", cfg.digit_budget, cfg.log_options);
  ScanRun run;
  run.digit_hash = digits.hash;
  try {
    const auto terms = cache.log2_terms(cfg.N, cfg.digit_budget, digits.record, cfg.method, cfg.parallel);
    run.cf_hash = terms.hash;
    run.result = scan_terms(terms.terms, cfg);
  } catch (const CertificationError&) {
    run.result = ScanResult{};
    run.result.note = "no certified terms at this digit budget";
  }
  return run;
}

int cmd_logdigits(const Globals& g, long digits, std::uint64_t t, const std::string& out) {
  Timer timer;
  const std::string constant = t == 0 ? "log2" : "log1p:" + std::to_string(t);
  std::string hash;
  DigitRecord rec;
  if (out.empty()) {
    ArtifactCache cache(g.cache_dir);
    const auto d = cache.digits(constant, digits);
    rec = d.record;
    hash = d.hash;
  } else {
    rec = compute_digit_record(constant, digits);
    hash = write_digit_file(out, rec);
  }
  RunManifest m{g.command_line, {{"constant", constant}, {"digits", std::to_string(digits)}}, hash, "",
                timer.seconds(), "ok"};
  Json payload{{"constant", constant},
               {"digits", std::to_string(digits)},
               {"prefix", rec.expansion.substr(0, std::min<std::size_t>(rec.expansion.size(), 52))}};
  if (g.json) {
    std::cout << make_report(m, payload).dump(2) << "\n";
  } else {
    std::cout << constant << " = " << payload["prefix"].get<std::string>() << "...\n"
              << digits << " digits, sha256 " << hash << "\n";
  }
  return kExitOk;
}

int cmd_cf(const Globals& g, long digits, const std::string& denominator, const std::string& out, std::size_t show) {
  Timer timer;
  const BigInt den = parse_n(denominator);
  ArtifactCache cache(g.cache_dir);
  const auto d = cache.digits("log2", digits);
  PartialQuotients terms;
  std::string hash;
  std::string id = "log2/" + den.get_str();
  if (den % 2 == 0 && out.empty()) {
    const auto t = cache.log2_terms(den / 2, digits, d.record, CfMethod::hgcd);
    terms = t.terms;
    hash = t.hash;
  } else {
    terms = cf_certified(scale_interval(d.record.interval(), den));
    const fs::path path = out.empty() ? cache.dir() / ("cf_log2_" + den.get_str() + "_" + std::to_string(digits) + ".txt")
                                      : fs::path(out);
    hash = write_cf_file(path, CfFile{id, terms});
  }
  RunManifest m{g.command_line, {{"constant", id}, {"digits", std::to_string(digits)}}, d.hash, hash,
                timer.seconds(), "ok"};
  Json head = Json::array();
  for (std::size_t i = 0; i < std::min(show, terms.certified_count()); ++i) head.push_back(terms.at(i).get_str());
  Json payload{{"constant", id}, {"certified", std::to_string(terms.certified_count())}, {"head", head}};
  if (g.json) {
    std::cout << make_report(m, payload).dump(2) << "\n";
  } else {
    std::cout << id << ": " << terms.certified_count() << " certified partial quotients\n[";
    for (std::size_t i = 0; i < head.size(); ++i) std::cout << (i ? i == 1 ? "; " : ", " : "") << head[i].get<std::string>();
    std::cout << (terms.certified_count() > show ? ", ...]\n" : "]\n");
  }
  return kExitOk;
}

int cmd_scan(const Globals& g, const ScanConfig& cfg, const std::string& report_path) {
  Timer timer;
  ArtifactCache cache(g.cache_dir);
  const auto run = scan_with_cache(cache, cfg);
  const auto& r = run.result;
  RunManifest m{g.command_line, to_json(cfg), run.digit_hash, run.cf_hash, timer.seconds(), to_string(r.status)};
  const Json report = make_report(m, to_json(r));
  emit(report, report_path);
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "N = " << cfg.N.get_str() << ", " << r.certified_terms << " certified terms, "
              << r.tracked_primes << " tracked primes\n";
    for (const auto& row : r.candidates) {
      if (!row.order_checked) break;
      std::cout << "  " << row.format() << "\n";
    }
    if (r.accepted) {
      std::cout << "accepted j = " << r.accepted->j << ": m > " << r.bound->str() << " (log10 m > " << r.bound->log10
                << ")\n";
    } else {
      std::cout << "budget exhausted: no accepted convergent within " << cfg.digit_budget << " digits";
      if (!r.note.empty()) std::cout << " (" << r.note << ")";
      std::cout << "\n";
    }
  }
  return r.status == ScanStatus::accepted ? kExitOk : kExitBudget;
}

int cmd_table(const Globals& g, const std::vector<std::string>& rows, long digits, std::uint64_t prime_bound,
              const std::string& method) {
  Timer timer;
  ArtifactCache cache(g.cache_dir);
  Json out_rows = Json::array();
  if (!g.json) std::cout << "N | j | a_{j+1} | q_j | q_j mod 6 | p\n";
  for (const auto& text : rows) {
    ScanConfig cfg;
    cfg.N = parse_n(text);
    cfg.digit_budget = digits;
    cfg.prime_bound = prime_bound;
    cfg.method = parse_method(method);
    const auto run = scan_with_cache(cache, cfg);
    const TableRow* row = run.result.first_candidate();
    Json j;
    j["N"] = text;
    j["status"] = to_string(run.result.status);
    j["row"] = row ? to_json(*row) : Json(nullptr);
    j["accepted"] = run.result.accepted ? to_json(*run.result.accepted) : Json(nullptr);
    out_rows.push_back(j);
    if (g.json) continue;
    if (!row) {
      std::cout << text << " | budget exhausted before the first candidate\n";
      continue;
    }
    std::cout << row->format() << "\n";
    if (run.result.accepted && run.result.accepted->j != row->j) std::cout << "  " << run.result.accepted->format() << "\n";
  }
  if (g.json) {
    RunManifest m{g.command_line, {{"digits", std::to_string(digits)}}, "", "", timer.seconds(), "ok"};
    std::cout << make_report(m, Json{{"rows", out_rows}}).dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_solve(const Globals& g, std::int64_t m, int precision, std::uint64_t t) {
  Timer timer;
  const auto root = solve_k(m, precision, t);
  PrecisionGuard guard(precision + 20);
  Json payload = to_json(root, precision);
  payload["t"] = std::to_string(t);
  if (t == 1) payload["expansion_k"] = expansion_k(m, 3).str(precision);
  if (g.json) {
    RunManifest man{g.command_line, {{"m", std::to_string(m)}, {"precision", std::to_string(precision)}}, "", "",
                    timer.seconds(), "ok"};
    std::cout << make_report(man, payload).dump(2) << "\n";
  } else {
    std::cout << "m = " << m << "\nk = " << root.k.str(precision) << "\nresidual = " << root.residual.str(6) << "\n";
    if (t == 1) std::cout << "C_m = " << root.C_m.str(12) << "\n";
  }
  return kExitOk;
}

int cmd_omega(const Globals& g, const std::string& log10m) {
  PrecisionGuard guard(60);
  const auto b = min_omega_from_bound(Real(log10m));
  if (g.json) {
    std::cout << to_json(b).dump(2) << "\n";
  } else {
    std::cout << "omega(m-1) >= " << b.omega << " (" << b.branch << (b.tie ? ", boundary tie" : "") << ")\n";
  }
  return kExitOk;
}

int cmd_primes(const Globals& g, const std::string& n_text, std::uint64_t bound, std::size_t show) {
  const BigInt N = parse_n(n_text);
  const auto profiles = prime_set(N, bound);
  Json list = Json::array();
  for (const auto& p : profiles) {
    list.push_back({{"p", std::to_string(p.p)},
                    {"reason", to_string(p.reason)},
                    {"fermat_order", std::to_string(p.fermat_order)},
                    {"required_order", std::to_string(p.required_order)}});
  }
  if (g.json) {
    std::cout << Json{{"N", N.get_str()}, {"bound", std::to_string(bound)}, {"primes", list}}.dump(2) << "\n";
  } else {
    std::cout << profiles.size() << " primes 5 <= p <= " << bound << " in P(" << N.get_str() << ")\n";
    for (std::size_t i = 0; i < std::min(show, profiles.size()); ++i) {
      const auto& p = profiles[i];
      std::cout << "  " << p.p << "  " << to_string(p.reason) << "  nu_p(3^(p-1)-1) = " << p.fermat_order
                << "  required nu_p(q) = " << p.required_order << "\n";
    }
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const std::string& level) {
  if (level != "quick" && level != "full") throw std::invalid_argument("level must be quick or full");
  bool all_passed = true;
  run_verify(level == "full" ? VerifyLevel::full : VerifyLevel::quick, suite, [&](const CheckResult& r) {
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3f", r.seconds);
    Json line{{"suite", r.suite}, {"check", r.name}, {"status", r.passed ? "pass" : "fail"}, {"detail", r.detail},
              {"seconds", std::string(secs)}};
    std::cout << line.dump() << std::endl;
    all_passed = all_passed && r.passed;
  });
  return all_passed ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continued-fraction search for lower bounds on Erdos-Moser solutions"};
  app.require_subcommand(1);
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);
  app.add_option("--cache-dir", g.cache_dir, "Directory for digit and CF caches")->capture_default_str();
  app.add_option("--threads", g.threads, "OpenMP thread count (0 = runtime default)");
  app.add_flag("--json", g.json, "Print JSON reports");

  long digits = 2000;
  std::uint64_t t = 0;
  std::string out;
  auto* logdigits = app.add_subcommand("logdigits", "Digits of log 2 or log(1 + 1/t)");
  logdigits->add_option("--digits", digits)->required();
  logdigits->add_option("--t", t, "Compute log(1 + 1/t) instead of log 2");
  logdigits->add_option("--out", out, "Write here instead of the cache");

  std::string denominator = "2";
  std::size_t show = 20;
  auto* cf = app.add_subcommand("cf", "Certified partial quotients of (log 2)/D");
  cf->add_option("--digits", digits)->required();
  cf->add_option("--denominator", denominator, "D, e.g. 2 or 2*2^8*3")->capture_default_str();
  cf->add_option("--out", out);
  cf->add_option("--show", show, "Terms to print")->capture_default_str();

  ScanConfig scan_cfg;
  std::string n_text = "1";
  std::string method = "hgcd";
  std::string report_path;
  auto* scan = app.add_subcommand("scan", "Search convergents of (log 2)/(2N) for an admissible q_j");
  scan->add_option("--N", n_text, "N, e.g. 256 or 2^8*3")->capture_default_str();
  scan->add_option("--digits", scan_cfg.digit_budget)->capture_default_str();
  scan->add_option("--prime-bound", scan_cfg.prime_bound)->capture_default_str();
  scan->add_option("--method", method, "hgcd or quadratic")->capture_default_str();
  scan->add_option("--report", report_path, "Write the JSON report here");

  std::vector<std::string> rows{"1", "2", "2^2", "2^3", "2^4", "2^5"};
  std::uint64_t prime_bound = 100'000;
  auto* table = app.add_subcommand("table", "First candidate row per N, in the layout of the published table");
  table->add_option("--rows", rows, "Values of N")->delimiter(',')->capture_default_str();
  table->add_option("--digits", digits)->capture_default_str();
  table->add_option("--prime-bound", prime_bound)->capture_default_str();
  table->add_option("--method", method)->capture_default_str();

  std::int64_t m = 0;
  int precision = 40;
  std::uint64_t solve_t = 1;
  auto* solve = app.add_subcommand("solve", "Real k with 1^k + ... + (m-1)^k = t m^k");
  solve->add_option("--m", m)->required();
  solve->add_option("--precision", precision)->capture_default_str();
  solve->add_option("--t", solve_t)->capture_default_str();

  std::string log10m;
  auto* omega = app.add_subcommand("omega", "Lower bound on omega(m-1) from m > 10^X");
  omega->add_option("--log10m", log10m)->required();

  std::uint64_t bound = 1000;
  auto* primes = app.add_subcommand("primes", "Primes of P(N) with their required orders");
  primes->add_option("--N", n_text)->capture_default_str();
  primes->add_option("--bound", bound)->capture_default_str();
  primes->add_option("--show", show)->capture_default_str();

  std::string suite = "all";
  std::string level = "quick";
  auto* verify = app.add_subcommand("verify", "Run named invariant checks, one JSON line each");
  verify->add_option("suite", suite, "all, logcomp, cf, arithmetic, scanner, asymptotics or omega")
      ->capture_default_str();
  verify->add_option("--level", level, "quick or full")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (g.threads > 0) set_threads(g.threads);

  try {
    if (*logdigits) return cmd_logdigits(g, digits, t, out);
    if (*cf) return cmd_cf(g, digits, denominator, out, show);
    if (*scan) {
      scan_cfg.N = parse_n(n_text);
      scan_cfg.method = parse_method(method);
      return cmd_scan(g, scan_cfg, report_path);
    }
    if (*table) return cmd_table(g, rows, digits, prime_bound, method);
    if (*solve) return cmd_solve(g, m, precision, solve_t);
    if (*omega) return cmd_omega(g, log10m);
    if (*primes) return cmd_primes(g, n_text, bound, show);
    if (*verify) return cmd_verify(suite, level);
  } catch (const BudgetError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const CacheIntegrityError& e) {
    std::cerr << "cache error: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitFailed;
}
