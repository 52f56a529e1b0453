#include "schemes/suites.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "schemes/constructions.hpp"
#include "schemes/metrics.hpp"
#include "schemes/random.hpp"

namespace schemes {

bool SuiteResult::all_hold() const {
  return !infeasible && std::all_of(rows.begin(), rows.end(),
                                    [](const SuiteRow& r) { return r.report.holds; });
}

const SuiteRow* SuiteResult::first_failure() const {
  for (auto const& r : rows)
    if (!r.report.holds) return &r;
  return nullptr;
}

const Scheme& CyclicSchemeCache::get(std::size_t q) {
  auto& slot = cache_[q];
  if (!slot) {
    std::vector<Permutation> gens{cyclic_rotation(q)};
    slot = std::make_unique<Scheme>(pair_orbit_scheme(gens));
  }
  return *slot;
}

Relation cyclic_cayley(std::size_t q, const std::vector<std::size_t>& connection) {
  Relation a(q);
  for (auto s : connection)
    for (Point x = 0; x < q; ++x) a.insert(x, (x + s) % q);
  return a;
}

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::string dense(const Relation& a) {
  std::ostringstream os;
  write_dense(os, a);
  return os.str();
}

std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

// Random nonzero residues generating Z_q, closed under negation if asked.
std::vector<std::size_t> random_connection(Rng& rng, std::size_t q, bool symmetric,
                                           std::size_t max_size) {
  while (true) {
    std::vector<std::size_t> s;
    std::size_t const size = 1 + rng.below(std::min(q - 1, max_size));
    while (s.size() < size) {
      std::size_t x = 1 + rng.below(q - 1);
      if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
    }
    if (symmetric) {
      std::vector<std::size_t> closed = s;
      for (auto x : s) closed.push_back(q - x);
      s = closed;
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::size_t g = q;
    for (auto x : s) g = std::gcd(g, x);
    if (g == 1) return s;
  }
}

std::vector<std::size_t> primes_up_to(std::size_t bound) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p <= bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

SuiteResult run_ruzsa(const SuiteParams& p) {
  std::size_t const n = or_default(p.n, 32), trials = or_default(p.trials, 1000);
  SuiteResult out;
  Rng master(p.seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = master.fork(i);
    Relation a = random_relation(rng, n, 1 + rng.below(4), 8);
    Relation c = random_relation(rng, n, 1 + rng.below(4), 8);
    Relation b = random_regular_relation(rng, n, 1 + rng.below(n));
    BoundReport r = check_ruzsa(a, b, c);
    if (!r.holds) r.witness = "a:\n" + dense(a) + "b:\n" + dense(b) + "c:\n" + dense(c);
    out.rows.push_back({"n=" + std::to_string(n) + " trial=" + std::to_string(i), r});
  }
  return out;
}

SuiteResult run_expand(const SuiteParams& p) {
  std::size_t const q_max = or_default(p.q, 16), max_t = or_default(p.max_t, 8),
                    trials = or_default(p.trials, 100);
  SuiteResult out;
  CyclicSchemeCache cache;
  Rng master(p.seed);
  for (std::size_t q = 3; q <= q_max; ++q) {
    Rng rng = master.fork(q);
    const Scheme& scheme = cache.get(q);
    auto const s = random_connection(rng, q, true, 3);
    Relation const b = cyclic_cayley(q, s);
    std::string const name = "q=" + std::to_string(q) + " S=" + join(s);
    ExpansionChecker checker(scheme, b);
    // b is translation invariant, so subsets through 0 cover every orbit
    auto sweep = checker.sweep(max_t, true);
    out.rows.push_back({name + " |T|<=" + std::to_string(max_t),
                        sweep.failure ? *sweep.failure : sweep.tightest});
    if (q > max_t) {
      std::optional<BoundReport> tight;
      for (std::size_t i = 0; i < trials; ++i) {
        std::size_t const t = max_t + 1 + rng.below(q - max_t);
        std::vector<std::size_t> pts(q);
        std::iota(pts.begin(), pts.end(), std::size_t{0});
        rng.shuffle(pts);
        PointSubset subset(q);
        for (std::size_t j = 0; j < t; ++j) subset.set(pts[j]);
        BoundReport r = checker.check(subset);
        auto slack = [](const BoundReport& x) { return x.rhs - x.lhs; };
        if (!tight || slack(r) < slack(*tight)) tight = r;
      }
      out.rows.push_back({name + " random |T|>" + std::to_string(max_t), *tight});
    }
    auto const counts = geodesic_counts(b);
    Rational lo = through_vertex_count(counts, 0), hi = lo;
    for (Point z = 1; z < q; ++z) {
      Rational v = through_vertex_count(counts, z);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    out.rows.push_back({name + " P_z", BoundReport::make_equal("pz_constant", lo, hi)});
    out.rows.push_back(
        {name + " P_z", BoundReport::make_equal("pz_sum", lo * q,
                                                Rational(distance_plus_one_sum(counts.distances())))});
  }
  return out;
}

SuiteResult run_commbound(const SuiteParams& p) {
  std::size_t const q_max = or_default(p.q, 512), trials = or_default(p.trials, 200);
  auto const primes = primes_up_to(q_max);
  if (primes.empty()) throw std::invalid_argument("commbound: no prime below --q");
  SuiteResult out;
  CyclicSchemeCache cache;
  Rng master(p.seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = master.fork(i);
    std::size_t const q = primes[rng.below(primes.size())];
    auto const s = random_connection(rng, q, false, 6);
    BoundReport r = comm_bound(cache.get(q), cyclic_cayley(q, s));
    out.rows.push_back({"trial=" + std::to_string(i) + " q=" + std::to_string(q) +
                            " S=" + join(s),
                        r});
  }
  return out;
}

SuiteResult run_mains_or_star(const SuiteParams& p, bool star) {
  std::size_t const q_max = or_default(p.q, 64), trials = or_default(p.trials, 200);
  if (q_max < 2) throw std::invalid_argument("mains: --q must be at least 2");
  SuiteResult out;
  CyclicSchemeCache cache;
  Rng master(p.seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = master.fork(i);
    std::size_t const q = 2 + rng.below(q_max - 1);
    auto const s = random_connection(rng, q, false, 4);
    const Scheme& scheme = cache.get(q);
    Relation const a = cyclic_cayley(q, s);
    std::string instance =
        "trial=" + std::to_string(i) + " q=" + std::to_string(q) + " S=" + join(s);
    if (!star) {
      out.rows.push_back({instance, check_mains(scheme, a)});
      continue;
    }
    // t: up to q/2 residues, possibly including 0
    std::vector<std::size_t> t;
    std::size_t const size = 1 + rng.below(q / 2);
    while (t.size() < size) {
      std::size_t x = rng.below(q);
      if (std::find(t.begin(), t.end(), x) == t.end()) t.push_back(x);
    }
    std::sort(t.begin(), t.end());
    out.rows.push_back(
        {instance + " t=" + join(t), check_star_ratio(scheme, a, cyclic_cayley(q, t))});
  }
  return out;
}

SuiteResult run_pigeonhole(const SuiteParams& p) {
  std::size_t const n_max = or_default(p.n, 32), trials = or_default(p.trials, 200);
  SuiteResult out;
  Rng master(p.seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng = master.fork(i);
    std::size_t const n = 1 + rng.below(n_max);
    std::size_t const size = n / 2 + 1 + rng.below(n - n / 2);
    std::vector<std::size_t> pts(n);
    std::iota(pts.begin(), pts.end(), std::size_t{0});
    rng.shuffle(pts);
    pts.resize(size);
    std::sort(pts.begin(), pts.end());
    out.rows.push_back({"trial=" + std::to_string(i) + " n=" + std::to_string(n) +
                            " S=" + join(pts),
                        check_pigeonhole_doubling(cyclic_cayley(n, pts))});
  }
  return out;
}

GirthexMode parse_mode(const std::string& mode) {
  if (mode.empty() || mode == "auto") return GirthexMode::automatic;
  if (mode == "gap") return GirthexMode::gap;
  if (mode == "cycle") return GirthexMode::cycle;
  throw std::invalid_argument("girthex: --mode must be auto, gap or cycle");
}

SuiteResult run_girthex(const SuiteParams& p) {
  GirthexOptions opt;
  opt.k = or_default(p.k, 2);
  opt.seed = p.seed;
  opt.mode = parse_mode(p.mode);
  opt.q_max = static_cast<Residue>(or_default(p.q, 10000));
  if (p.trials) opt.budget = p.trials;
  GirthexResult r = find_girthex(opt);
  SuiteResult out;
  out.details = to_json(r);
  if (!r.feasible) {
    out.infeasible = true;
    return out;
  }
  std::string const instance = "k=" + std::to_string(r.k) + " q=" + std::to_string(r.q) +
                               " route=" + to_string(*r.route);
  Rational const v = Rational(std::uint64_t{r.q} * r.q);
  out.rows.push_back({instance, BoundReport::make_equal("inner_sumset",
                                                        r.inner_sumset_covers ? v : 0, v)});
  out.rows.push_back({instance, BoundReport::make_equal("outer_sumset",
                                                        r.outer_sumset_covers ? v : 0, v)});
  for (auto const& rep : r.reports) out.rows.push_back({instance, rep});
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ruzsa", "expand",     "commbound", "mains",
                                              "star",  "pigeonhole", "girthex"};
  return names;
}

SuiteResult run_suite(const std::string& suite, const SuiteParams& params) {
  SuiteResult r;
  if (suite == "ruzsa")
    r = run_ruzsa(params);
  else if (suite == "expand")
    r = run_expand(params);
  else if (suite == "commbound")
    r = run_commbound(params);
  else if (suite == "mains")
    r = run_mains_or_star(params, false);
  else if (suite == "star")
    r = run_mains_or_star(params, true);
  else if (suite == "pigeonhole")
    r = run_pigeonhole(params);
  else if (suite == "girthex")
    r = run_girthex(params);
  else
    throw std::invalid_argument("unknown suite '" + suite + "'");
  r.suite = suite;
  return r;
}

std::string suite_csv_header() { return "suite,instance,check,lhs,rhs,holds"; }

std::string to_csv(const SuiteResult& result) {
  std::string out = suite_csv_header() + "\n";
  for (auto const& row : result.rows)
    out += result.suite + "," + csv_field(row.instance) + "," + row.report.name + "," +
           to_string(row.report.lhs) + "," + to_string(row.report.rhs) + "," +
           (row.report.holds ? "true" : "false") + "\n";
  return out;
}

nlohmann::json to_json(const SuiteResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto const& row : result.rows) {
    nlohmann::json j = to_json(row.report);
    j["instance"] = row.instance;
    rows.push_back(std::move(j));
  }
  nlohmann::json j{{"suite", result.suite},
                   {"all_hold", result.all_hold()},
                   {"infeasible", result.infeasible},
                   {"rows", std::move(rows)}};
  if (!result.details.is_null()) j["details"] = result.details;
  return j;
}

}  // namespace schemes
