#include "latcensus/cli.hpp"

#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latcensus/arith.hpp"
#include "latcensus/constants.hpp"
#include "latcensus/counting.hpp"
#include "latcensus/errors.hpp"
#include "latcensus/groups.hpp"
#include "latcensus/io.hpp"
#include "latcensus/lattice.hpp"
#include "latcensus/verify.hpp"

namespace latcensus::cli {

namespace {

using io::Json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  unsigned n = 2;
  std::uint64_t V = 1;
  std::uint64_t q = 1;
  std::string mode = "cyclic";
  std::string method = "formula";
  std::string format = "json";
  std::string name;
  std::string suite = "all";
  std::string predicate = "all";
  long double tol = constants::kDefaultTol;
  std::optional<std::uint64_t> seed;
  std::uint64_t count = 1;
  std::uint64_t prime_cutoff = 1'000'000;
  std::optional<std::uint64_t> cap;
  unsigned threads = 0;
  bool dump = false;
  bool cocyclic_only = false;
  bool n_given = false;

  std::uint64_t cap_or(std::uint64_t fallback) const { return cap.value_or(fallback); }
};

// "rank=M" -> M
std::optional<unsigned> rank_mode(const std::string& mode) {
  if (mode.rfind("rank=", 0) != 0 || mode.size() == 5) return std::nullopt;
  const std::string d = mode.substr(5);
  if (d.find_first_not_of("0123456789") != std::string::npos || d.size() > 4) return std::nullopt;
  return static_cast<unsigned>(std::stoul(d));
}

std::vector<std::uint64_t> ladder(std::uint64_t V) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 1; v < V; v *= 10) out.push_back(v);
  out.push_back(V);
  return out;
}

// ---- count ----

struct ModeCounts {
  mpz_class formula;
  ErrBoundedReal prediction;
};

ModeCounts formula_counts(const RunConfig& c, std::uint64_t V) {
  ModeCounts m;
  if (c.mode == "cyclic") {
    m.formula = counting::N_n(c.n, V, c.threads);
    if (c.n >= 2) m.prediction = counting::N_n_asymptotic(c.n, V, c.tol);
  } else if (c.mode == "squarefree") {
    m.formula = counting::N_sharp(c.n, V, c.threads);
    if (c.n >= 2) m.prediction = counting::N_sharp_asymptotic(c.n, V, c.tol);
  } else {
    m.formula = counting::total_count(c.n, V, c.threads);
    if (c.n >= 2) m.prediction = counting::total_asymptotic(c.n, V);
  }
  return m;
}

mpz_class oracle_count(const RunConfig& c, std::uint64_t V) {
  const auto census = counting::census_by_index(c.n, V, c.cap_or(lattice::kDefaultEnumerationCap), c.threads);
  const auto sieve = arith::sieve_for(V);
  mpz_class s = 0;
  const auto rank = rank_mode(c.mode);
  for (const auto& e : census) {
    if (rank) {
      if (*rank < e.by_rank.size()) s += static_cast<unsigned long>(e.by_rank[*rank]);
    } else if (c.mode == "cyclic") {
      s += static_cast<unsigned long>(e.by_rank[0] + (e.by_rank.size() > 1 ? e.by_rank[1] : 0));
    } else if (c.mode == "squarefree") {
      if (arith::is_squarefree(arith::factorize(e.q, *sieve))) s += static_cast<unsigned long>(e.total);
    } else {
      s += static_cast<unsigned long>(e.total);
    }
  }
  return s;
}

int cmd_count(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto rank = rank_mode(c.mode);
  if (!rank && c.mode != "cyclic" && c.mode != "squarefree" && c.mode != "all") {
    throw UsageError("--mode: expected cyclic, squarefree, all or rank=M");
  }
  if (c.n < 1) throw UsageError("--n: must be >= 1");
  if ((c.mode == "cyclic" || c.mode == "squarefree") && c.n < 2) throw UsageError("--n: must be >= 2 for this mode");
  if (c.V < 1) throw UsageError("--V: must be >= 1");
  if (rank && c.method != "bruteforce") {
    throw UsageError("--method: rank-stratified counts have no closed form; use --method bruteforce");
  }
  const bool want_formula = c.method != "bruteforce";
  const bool want_oracle = c.method != "formula";

  if (c.format == "csv") {
    io::write_csv_row(out, {"V", "count", "prediction", "ratio"});
    bool mismatch = false;
    for (const auto v : ladder(c.V)) {
      std::string count, pred, ratio;
      if (want_formula) {
        const ModeCounts m = formula_counts(c, v);
        count = m.formula.get_str();
        if (c.n >= 2) {
          pred = io::format_real(m.prediction.value);
          ratio = io::format_real((ErrBoundedReal::from_integer(m.formula) / m.prediction).value);
        }
        if (want_oracle && oracle_count(c, v) != m.formula) {
          err << "mismatch at V=" << v << '\n';
          mismatch = true;
        }
      } else {
        count = oracle_count(c, v).get_str();
      }
      io::write_csv_row(out, {std::to_string(v), count, pred, ratio});
    }
    return mismatch ? kVerificationFailed : kOk;
  }

  Json j;
  j["n"] = c.n;
  j["V"] = c.V;
  j["mode"] = c.mode;
  j["method"] = c.method;
  std::optional<mpz_class> formula, oracle;
  if (want_formula) {
    const ModeCounts m = formula_counts(c, c.V);
    formula = m.formula;
    j["count"] = m.formula.get_str();
    if (c.n >= 2) {
      j["prediction"] = io::to_json(m.prediction);
      j["prediction_note"] = "leading-order term only";
      j["ratio"] = io::to_json(ErrBoundedReal::from_integer(m.formula) / m.prediction);
    }
  }
  if (want_oracle) {
    oracle = oracle_count(c, c.V);
    if (!want_formula) j["count"] = oracle->get_str();
    j["oracle"] = oracle->get_str();
  }
  const bool agrees = !(formula && oracle) || *formula == *oracle;
  if (formula && oracle) j["agrees"] = agrees;
  if (want_formula && c.n >= 2) {
    counting::DensityOptions opts;
    opts.tol = c.tol;
    opts.threads = c.threads;
    j["report"] = io::to_json(counting::density_report(c.n, c.V, opts));
  }
  out << io::dump(j) << '\n';
  if (!agrees) {
    err << "mismatch: formula " << formula->get_str() << " vs oracle " << oracle->get_str() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

// ---- constants ----

struct ConstantValue {
  ErrBoundedReal value;
  std::uint64_t prime_cutoff = 0;
  Json extra;
};

using ConstantFn = std::function<ConstantValue(const RunConfig&)>;

constants::EulerOptions euler_options(const RunConfig& c) {
  constants::EulerOptions o;
  o.tol = c.tol;
  o.prime_cutoff = c.prime_cutoff;
  o.max_prime_cutoff = std::max(o.max_prime_cutoff, c.prime_cutoff);
  return o;
}

ConstantValue from_eval(const constants::Evaluation& e) { return {e.value, e.prime_cutoff, {}}; }

int need_n(const RunConfig& c, int min) {
  if (!c.n_given) throw UsageError("--n: required for this constant");
  if (static_cast<int>(c.n) < min) throw UsageError("--n: must be >= " + std::to_string(min));
  return static_cast<int>(c.n);
}

const std::map<std::string, ConstantFn>& constant_table() {
  static const std::map<std::string, ConstantFn> table = {
      {"zeta", [](const RunConfig& c) { return ConstantValue{constants::zeta(need_n(c, 2), c.tol), 0, {}}; }},
      {"xi_inf", [](const RunConfig& c) { return ConstantValue{constants::xi_inf(need_n(c, 2), c.tol), 0, {}}; }},
      {"xi_2_n", [](const RunConfig& c) { return ConstantValue{constants::xi(2, need_n(c, 2), c.tol), 0, {}}; }},
      {"theta", [](const RunConfig&) { return ConstantValue{constants::theta(), 0, {}}; }},
      {"theta_n", [](const RunConfig& c) { return from_eval(constants::theta_n_eval(need_n(c, 2), euler_options(c))); }},
      {"rho", [](const RunConfig&) { return ConstantValue{constants::rho(), 0, {}}; }},
      {"rho_n",
       [](const RunConfig& c) {
         const int n = need_n(c, 2);
         ConstantValue v = from_eval(constants::rho_n_eval(n, euler_options(c)));
         const auto prod = v.value * constants::zeta(n + 1);
         Json chk;
         chk["rho_n_times_zeta_n_plus_1"] = io::to_json(prod);
         chk["equals_one"] = prod.contains(1.0L);
         chk["equals_zeta_2"] = prod.overlaps(constants::zeta(2, 1e-14L));
         v.extra["checks"] = std::move(chk);
         return v;
       }},
      {"density-cocyclic", [](const RunConfig&) { return ConstantValue{constants::density_cocyclic_limit(), 0, {}}; }},
      {"density-squarefree",
       [](const RunConfig&) { return ConstantValue{constants::density_squarefree_limit(), 0, {}}; }},
      {"gekeler-cyclic", [](const RunConfig& c) { return from_eval(constants::gekeler_cyclic(euler_options(c))); }},
      {"gekeler-squarefree",
       [](const RunConfig& c) { return from_eval(constants::gekeler_squarefree(euler_options(c))); }},
      {"landau-prime-sum",
       [](const RunConfig& c) {
         auto o = euler_options(c);
         o.tol = std::max(o.tol, 1e-6L);
         return from_eval(constants::landau_prime_sum(o));
       }},
      {"delta-rank-at-most",
       [](const RunConfig& c) { return ConstantValue{groups::delta_rank_at_most(need_n(c, 1), c.tol), 0, {}}; }},
      {"delta-rank-at-least-bound",
       [](const RunConfig& c) { return ConstantValue{groups::delta_rank_at_least_bound(need_n(c, 2)), 0, {}}; }},
      {"uniform-cyclic", [](const RunConfig&) { return ConstantValue{groups::uniform_density_cyclic(), 0, {}}; }},
      {"uniform-squarefree",
       [](const RunConfig&) { return ConstantValue{groups::uniform_density_squarefree(), 0, {}}; }},
      {"euler-gamma", [](const RunConfig&) { return ConstantValue{arith::euler_gamma(), 0, {}}; }},
  };
  return table;
}

int cmd_constants(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto& table = constant_table();
  const auto it = table.find(c.name);
  if (it == table.end()) {
    std::string names;
    for (const auto& [k, v] : table) names += (names.empty() ? "" : ", ") + k;
    throw UsageError("--name: unknown constant '" + c.name + "' (known: " + names + ")");
  }
  if (!(c.tol > 0.0L)) throw UsageError("--tol: must be positive");
  const ConstantValue v = it->second(c);
  Json j;
  j["name"] = c.name;
  if (c.n_given) j["n"] = c.n;
  const Json vj = io::to_json(v.value);
  j["value"] = vj["value"];
  j["err"] = vj["err"];
  j["prime_cutoff"] = v.prime_cutoff;
  for (const auto& [k, x] : v.extra.items()) j[k] = x;
  out << io::dump(j) << '\n';
  return kOk;
}

// ---- sample / enumerate ----

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.q < 1) throw UsageError("--q: must be >= 1");
  if (c.n < 1) throw UsageError("--n: must be >= 1");
  if (c.count < 1) throw UsageError("--count: must be >= 1");
  std::uint64_t seed;
  if (c.seed) {
    seed = *c.seed;
  } else {
    std::random_device rd;
    seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "seed: " << seed << '\n';
  }
  Rng rng(seed);
  for (std::uint64_t i = 0; i < c.count; ++i) {
    out << io::dump(io::to_json(lattice::sample_cocyclic(c.n, c.q, rng))) << '\n';
  }
  return kOk;
}

int cmd_enumerate(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.q < 1) throw UsageError("--q: must be >= 1");
  if (c.n < 1) throw UsageError("--n: must be >= 1");
  lattice::for_each_sublattice(c.n, c.q, [&](const lattice::HnfBasis& b) {
    if (c.cocyclic_only && !lattice::is_cocyclic(b)) return;
    out << io::dump(io::to_json(b)) << '\n';
  }, c.cap_or(lattice::kDefaultEnumerationCap));
  return kOk;
}

// ---- clmass / groups ----

int cmd_clmass(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.V < 1) throw UsageError("--V: must be >= 1");
  const auto pred = groups::Predicate::parse(c.predicate);
  if (!pred) throw UsageError("--predicate: expected all, cyclic, squarefree or rank<=R");
  const std::uint64_t cap = c.cap_or(groups::kDefaultCensusCap);
  if (c.V > cap) throw CapExceeded("clmass: V exceeds census cap " + std::to_string(cap));
  const auto acc = groups::cl_total_mass(c.V, {*pred});
  const auto& pm = acc.predicates.front().second;
  Json j;
  j["V"] = c.V;
  j["exact"] = acc.total.exact.has_value();
  j["total_mass"] = io::to_json(acc.total.approx);
  if (acc.total.exact) j["total_mass_rational"] = acc.total.exact->get_str();
  j["predicate"] = pred->name();
  j["predicate_mass"] = io::to_json(pm.approx);
  if (pm.exact) j["predicate_mass_rational"] = pm.exact->get_str();
  const auto xi2 = constants::xi_inf(2);
  j["total_over_log_V"] = c.V >= 2 ? io::to_json(acc.total.approx / log(ErrBoundedReal::rounded(
                                                                        static_cast<long double>(c.V))))
                                   : Json();
  j["xi_2"] = io::to_json(xi2);
  out << io::dump(j) << '\n';
  return kOk;
}

int cmd_groups(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.V < 1) throw UsageError("--V: must be >= 1");
  const std::uint64_t cap = c.cap_or(groups::kDefaultCensusCap);
  if (c.dump) {
    io::write_csv_row(out, {"order", "primary_decomposition", "aut_order", "rank"});
    groups::for_each_group(c.V, [&](const groups::AbelianGroup& g) {
      io::write_csv_row(out, {g.order().get_str(), groups::primary_string(g), groups::aut_order(g).get_str(),
                              std::to_string(g.rank())});
    }, cap);
    return kOk;
  }
  if (c.V > cap) throw CapExceeded("groups: V exceeds census cap " + std::to_string(cap));
  const auto u = groups::uniform_census(c.V);
  Json j;
  j["V"] = c.V;
  j["classes"] = u.classes.get_str();
  j["cyclic"] = u.cyclic.get_str();
  j["squarefree_order"] = u.squarefree.get_str();
  j["cyclic_fraction"] = io::to_json(ErrBoundedReal::from_rational(mpq_class(u.cyclic, u.classes)));
  j["squarefree_fraction"] = io::to_json(ErrBoundedReal::from_rational(mpq_class(u.squarefree, u.classes)));
  j["uniform_density_cyclic"] = io::to_json(groups::uniform_density_cyclic());
  j["uniform_density_squarefree"] = io::to_json(groups::uniform_density_squarefree());
  out << io::dump(j) << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto checks = verify::suite(c.suite);
  if (checks.empty()) throw UsageError("--suite: unknown suite '" + c.suite + "'");
  const auto result = verify::run(checks, &err);
  Json j;
  j["suite"] = c.suite;
  j["passed"] = result.passed;
  j["ok"] = result.ok();
  if (result.failed) j["failed"] = *result.failed;
  out << io::dump(j) << '\n';
  if (result.failed) err << "violated: " << *result.failed << '\n';
  return result.ok() ? kOk : kVerificationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact census of integer sublattices of Z^n by their quotient group"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--threads", cfg.threads, "worker threads for partitioned sums (0 = all cores)");

  auto add_n = [&](CLI::App* s, const char* help) {
    s->add_option("--n", cfg.n, help)->each([&](const std::string&) { cfg.n_given = true; });
  };
  auto add_cap = [&](CLI::App* s) { s->add_option("--cap", cfg.cap, "enumeration cap"); };

  auto* count = app.add_subcommand("count", "count lattices of index <= V");
  add_n(count, "dimension");
  count->add_option("--V", cfg.V, "index bound")->required();
  count->add_option("--mode", cfg.mode, "cyclic, squarefree, all or rank=M");
  count->add_option("--method", cfg.method, "formula, bruteforce or both")
      ->check(CLI::IsMember({"formula", "bruteforce", "both"}));
  count->add_option("--format", cfg.format, "json or csv (csv emits a 10^k ladder)")
      ->check(CLI::IsMember({"json", "csv"}));
  count->add_option("--tol", cfg.tol, "tolerance for the constants in predictions");
  add_cap(count);

  auto* cons = app.add_subcommand("constants", "evaluate a constant with an error bound");
  cons->add_option("--name", cfg.name, "constant name")->required();
  add_n(cons, "parameter (n, k, m or r)");
  cons->add_option("--tol", cfg.tol, "absolute tolerance");
  cons->add_option("--prime-cutoff", cfg.prime_cutoff, "initial Euler-product prime cutoff");

  auto* sample = app.add_subcommand("sample", "uniform co-cyclic lattices of index q");
  add_n(sample, "dimension");
  sample->add_option("--q", cfg.q, "index")->required();
  sample->add_option("--seed", cfg.seed, "64-bit seed (random and printed to stderr if absent)");
  sample->add_option("--count", cfg.count, "number of samples");

  auto* en = app.add_subcommand("enumerate", "all sublattices of index q as HNF bases");
  add_n(en, "dimension");
  en->add_option("--q", cfg.q, "index")->required();
  en->add_flag("--cocyclic-only", cfg.cocyclic_only, "only lattices with cyclic quotient");
  add_cap(en);

  auto* cl = app.add_subcommand("clmass", "Cohen-Lenstra masses of groups of order <= V");
  cl->add_option("--V", cfg.V, "order bound")->required();
  cl->add_option("--predicate", cfg.predicate, "all, cyclic, squarefree or rank<=R");
  add_cap(cl);

  auto* gr = app.add_subcommand("groups", "census of abelian groups of order <= V");
  gr->add_option("--V", cfg.V, "order bound")->required();
  gr->add_flag("--dump", cfg.dump, "CSV rows: order, primary decomposition, aut order, rank");
  add_cap(gr);

  auto* ver = app.add_subcommand("verify", "run an invariant suite");
  ver->add_option("--suite", cfg.suite, "arith, constants, lattice, formulas, census, groups or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*count) return cmd_count(cfg, out, err);
    if (*cons) return cmd_constants(cfg, out, err);
    if (*sample) return cmd_sample(cfg, out, err);
    if (*en) return cmd_enumerate(cfg, out, err);
    if (*cl) return cmd_clmass(cfg, out, err);
    if (*gr) return cmd_groups(cfg, out, err);
    if (*ver) return cmd_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const PrecisionUnreachable& e) {
    err << "precision unreachable: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace latcensus::cli
