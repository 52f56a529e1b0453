#include "schemes/cli.hpp"

#include <fstream>
#include <sstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "schemes/constructions.hpp"
#include "schemes/metrics.hpp"
#include "schemes/suites.hpp"

namespace schemes {

namespace {

using nlohmann::json;

struct Config {
  std::string input;
  std::string input_format = "auto";
  std::string suite;
  std::size_t n = 0, q = 0, q_min = 0, k = 0, trials = 0, max_t = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::string format = "human";
  std::string out_path;
  std::string graph_path;
};

/// Raised for anything the user should fix; maps to exit_input.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* const footer = R"(CSV columns:
  diameter   n,strongly_connected,weakly_connected,directed_diameter,undirected_diameter,girth
  scheme     relation,transpose,valency
  verify     suite,instance,check,lhs,rhs,holds
  search-hr  q,k,size,kA_size,covers,progression_x,A
  girthex    k,q,route,check,lhs,rhs,holds
Exit codes: 0 ok, 1 violation (witness printed), 2 input or connectivity error,
3 construction infeasible.)";

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

Relation load_relation(const Config& c) {
  auto in = open_input(c.input);
  if (c.input_format == "edges") return read_edge_list(in);
  if (c.input_format == "dense") return read_dense(in);
  return read_relation(in);
}

// Machine output: to --out when given, otherwise to `out`.
void emit(const Config& c, std::ostream& out, const std::string& human, const json& j,
          const std::string& csv) {
  if (c.format == "human") {
    out << human;
    return;
  }
  std::string const text = c.format == "json" ? j.dump(2) + "\n" : csv;
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + c.out_path + "'");
  file << text;
  out << human;
}

std::string opt_str(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("inf");
}

json opt_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(); }

int cmd_diameter(const Config& c, std::ostream& out, std::ostream& err) {
  Relation const a = load_relation(c);
  bool const strong = is_strongly_connected(a), weak = is_weakly_connected(a);
  std::optional<std::size_t> directed, undirected;
  if (strong) directed = directed_diameter(a);
  if (weak) undirected = undirected_diameter(a);
  auto const girth = directed_girth(a);

  std::ostringstream h;
  h << "n: " << a.size() << "\nstrongly connected: " << (strong ? "yes" : "no")
    << "\nweakly connected: " << (weak ? "yes" : "no")
    << "\ndirected diameter: " << opt_str(directed)
    << "\nundirected diameter: " << opt_str(undirected) << "\ngirth: " << opt_str(girth)
    << "\n";
  json j{{"n", a.size()},
         {"strongly_connected", strong},
         {"weakly_connected", weak},
         {"directed_diameter", opt_json(directed)},
         {"undirected_diameter", opt_json(undirected)},
         {"girth", opt_json(girth)}};
  std::string csv = "n,strongly_connected,weakly_connected,directed_diameter,"
                    "undirected_diameter,girth\n" +
                    std::to_string(a.size()) + "," + (strong ? "true" : "false") + "," +
                    (weak ? "true" : "false") + "," + (directed ? opt_str(directed) : "") +
                    "," + (undirected ? opt_str(undirected) : "") + "," +
                    (girth ? opt_str(girth) : "") + "\n";
  emit(c, out, h.str(), j, csv);
  if (!strong) {
    err << "relation is not strongly connected; directed diameter undefined\n";
    return exit_input;
  }
  return exit_ok;
}

json scheme_json(const Scheme& s) {
  std::vector<std::size_t> valencies;
  for (std::size_t i = 0; i < s.rank(); ++i) valencies.push_back(s.valency(i));
  return {{"n", s.size()},
          {"rank", s.rank()},
          {"color_matrix", std::vector<std::uint32_t>(s.color_matrix().begin(),
                                                      s.color_matrix().end())},
          {"transpose_map", std::vector<std::size_t>(s.transpose_map().begin(),
                                                     s.transpose_map().end())},
          {"valencies", valencies},
          {"certification",
           s.certification() == Certification::exhaustive ? "exhaustive" : "sampled"}};
}

json violation_json(const SchemeViolation& v) {
  json j{{"axiom", to_string(v.axiom)}, {"detail", v.detail}, {"relations", v.relations}};
  if (v.reference_pair)
    j["reference_pair"] = {v.reference_pair->first, v.reference_pair->second};
  if (v.offending_pair)
    j["offending_pair"] = {v.offending_pair->first, v.offending_pair->second};
  j["reference_count"] = v.reference_count;
  j["offending_count"] = v.offending_count;
  return j;
}

std::vector<Relation> basis_from_json(const json& j) {
  try {
    std::size_t const n = j.at("n").get<std::size_t>();
    std::size_t const rank = j.at("rank").get<std::size_t>();
    auto const colors = j.at("color_matrix").get<std::vector<std::size_t>>();
    if (n == 0 || colors.size() != n * n)
      throw InputError("scheme JSON: color_matrix must have n*n entries");
    std::vector<Relation> basis(rank, Relation(n));
    for (std::size_t i = 0; i < colors.size(); ++i) {
      if (colors[i] >= rank) throw InputError("scheme JSON: colour exceeds rank");
      basis[colors[i]].insert(i / n, i % n);
    }
    return basis;
  } catch (const json::exception& e) {
    throw InputError(std::string("scheme JSON: ") + e.what());
  }
}

int report_violation(const SchemeViolation& v, std::ostream& out, std::ostream& err) {
  out << "not a scheme: " << to_string(v.axiom) << " axiom fails: " << v.detail << "\n";
  err << violation_json(v).dump() << "\n";
  return exit_violation;
}

std::string scheme_csv(const Scheme& s) {
  std::string csv = "relation,transpose,valency\n";
  for (std::size_t i = 0; i < s.rank(); ++i)
    csv += std::to_string(i) + "," + std::to_string(s.transpose_of(i)) + "," +
           std::to_string(s.valency(i)) + "\n";
  return csv;
}

int cmd_scheme(const Config& c, std::ostream& out, std::ostream& err) {
  std::string const mode = c.mode.empty() ? "orbit" : c.mode;
  std::optional<Scheme> scheme;
  json extra = json::object();
  if (mode == "orbit") {
    auto in = open_input(c.input);
    auto const gens = read_generators(in);
    try {
      scheme = pair_orbit_scheme(gens);
    } catch (const IntransitiveGroupError& e) {
      err << e.what() << "\n";
      return exit_infeasible;
    }
  } else if (mode == "wl") {
    Relation const seed = load_relation(c);
    std::vector<Relation> seeds{seed};
    WlOutcome outcome = wl_closure(seeds);
    if (auto const* inh = std::get_if<InhomogeneousColoring>(&outcome)) {
      err << "coherent closure is not homogeneous: the diagonal splits into "
          << inh->diagonal_classes << " classes\n";
      return exit_infeasible;
    }
    if (auto const* v = std::get_if<SchemeViolation>(&outcome))
      return report_violation(*v, out, err);
    scheme = std::get<Scheme>(std::move(outcome));
    extra["seed_in_s_union"] = in_s_union(*scheme, seed);
  } else if (mode == "json") {
    auto in = open_input(c.input);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(std::string("scheme JSON: ") + e.what());
    }
    auto const basis = basis_from_json(j);
    auto outcome = verify_scheme(basis);
    if (auto const* v = std::get_if<SchemeViolation>(&outcome))
      return report_violation(*v, out, err);
    scheme = std::get<Scheme>(std::move(outcome));
    if (j.contains("transpose_map")) {
      // the file may number relations differently; compare through colours
      auto const claimed = j["transpose_map"].get<std::vector<std::size_t>>();
      auto const colors = j["color_matrix"].get<std::vector<std::size_t>>();
      std::size_t const n = scheme->size();
      for (std::size_t i = 0; i < colors.size(); ++i) {
        std::size_t const x = i / n, y = i % n;
        if (claimed.size() <= colors[i] || claimed[colors[i]] != colors[y * n + x]) {
          SchemeViolation v{Axiom::transpose, "transpose_map disagrees with color_matrix",
                            {colors[i]}, {}, PointPair{x, y}, 0, 0};
          return report_violation(v, out, err);
        }
      }
    }
  } else {
    throw InputError("scheme: --mode must be orbit, wl or json");
  }
  json j = scheme_json(*scheme);
  j.update(extra);
  std::ostringstream h;
  h << "n: " << scheme->size() << "\nrank: " << scheme->rank()
    << "\ncertified: exhaustive\nvalencies:";
  for (std::size_t i = 0; i < scheme->rank(); ++i) h << " " << scheme->valency(i);
  h << "\n";
  if (extra.contains("seed_in_s_union"))
    h << "seed in S^u: " << (extra["seed_in_s_union"].get<bool>() ? "yes" : "no") << "\n";
  emit(c, out, h.str(), j, scheme_csv(*scheme));
  return exit_ok;
}

int cmd_verify(const Config& c, std::ostream& out, std::ostream& err) {
  SuiteParams p{c.n, c.q, c.k, c.trials, c.max_t, c.seed, c.mode};
  SuiteResult const r = run_suite(c.suite, p);
  std::ostringstream h;
  if (r.infeasible) {
    h << r.suite << ": construction infeasible at tested q\n";
    emit(c, out, h.str(), to_json(r), to_csv(r));
    err << r.details.dump(2) << "\n";
    return exit_infeasible;
  }
  h << r.suite << ": " << r.rows.size() << " checks, ";
  if (auto const* f = r.first_failure()) {
    h << "VIOLATION at " << f->instance << " (" << f->report.name << ")\n";
    emit(c, out, h.str(), to_json(r), to_csv(r));
    json w = to_json(f->report);
    w["instance"] = f->instance;
    w["seed"] = c.seed;
    err << w.dump(2) << "\n";
    return exit_violation;
  }
  h << "all hold\n";
  emit(c, out, h.str(), to_json(r), to_csv(r));
  return exit_ok;
}

int cmd_search_hr(const Config& c, std::ostream& out, std::ostream& err) {
  std::size_t const k = c.k ? c.k : 2;
  std::uint64_t const budget = c.trials ? c.trials : 20000;
  if (c.q == 0 || !is_prime(c.q) || c.q <= k)
    throw InputError("search-hr: --q must be a prime greater than --k");
  auto const w = search_hr_set(static_cast<Residue>(c.q), k, budget, c.seed);
  if (!w) {
    out << "no set with A - A = Z_" << c.q << " found within " << budget << " steps\n";
    err << "search-hr: infeasible within budget\n";
    return exit_infeasible;
  }
  std::ostringstream h, csv;
  h << "q: " << w->q << "\nk: " << w->k << "\nA: " << to_string(w->a)
    << "\n|kA|: " << w->ka_size << "\ncovers: " << (w->covers ? "yes" : "no")
    << "\nprogression x: "
    << (w->progression_x ? std::to_string(*w->progression_x) : std::string("none")) << "\n";
  csv << "q,k,size,kA_size,covers,progression_x,A\n"
      << w->q << "," << w->k << "," << w->a.size() << "," << w->ka_size << ","
      << (w->covers ? "true" : "false") << ","
      << (w->progression_x ? std::to_string(*w->progression_x) : std::string()) << ",";
  for (std::size_t i = 0; i < w->a.size(); ++i) csv << (i ? " " : "") << w->a.elements()[i];
  csv << "\n";
  emit(c, out, h.str(), to_json(*w), csv.str());
  return exit_ok;
}

int cmd_girthex(const Config& c, std::ostream& out, std::ostream& err) {
  GirthexOptions opt;
  opt.k = c.k ? c.k : 2;
  opt.seed = c.seed;
  opt.q_min = static_cast<Residue>(c.q_min);
  opt.q_max = static_cast<Residue>(c.q ? c.q : 10000);
  if (c.trials) opt.budget = c.trials;
  if (c.mode.empty() || c.mode == "auto")
    opt.mode = GirthexMode::automatic;
  else if (c.mode == "gap")
    opt.mode = GirthexMode::gap;
  else if (c.mode == "cycle")
    opt.mode = GirthexMode::cycle;
  else
    throw InputError("girthex: --mode must be auto, gap or cycle");

  GirthexResult const r = find_girthex(opt);
  json const j = to_json(r);
  std::ostringstream h;
  std::string csv = "k,q,route,check,lhs,rhs,holds\n";
  if (!r.feasible) {
    h << "k = " << r.k << ": no certified construction for q <= " << opt.q_max << "\n";
    emit(c, out, h.str(), j, csv);
    err << j["log"].dump(2) << "\n";
    return exit_infeasible;
  }
  h << "k: " << r.k << "\nq: " << r.q << "\nroute: " << to_string(*r.route)
    << "\nA: " << to_string(r.witness->a) << "\n|B|: " << r.b.size()
    << "\n|2B|: " << r.doubled.size() << "\nvertices: " << r.outer->size()
    << "\nB-B+B-B = V: " << (r.inner_sumset_covers ? "yes" : "no")
    << "\n2B-2B = V: " << (r.outer_sumset_covers ? "yes" : "no") << "\n";
  for (auto const& rep : r.reports) {
    h << rep.name << ": " << to_string(rep.lhs) << " <= " << to_string(rep.rhs) << " "
      << (rep.holds ? "holds" : "FAILS") << "\n";
    csv += std::to_string(r.k) + "," + std::to_string(r.q) + "," + to_string(*r.route) +
           "," + rep.name + "," + to_string(rep.lhs) + "," + to_string(rep.rhs) + "," +
           (rep.holds ? "true" : "false") + "\n";
  }
  if (!c.graph_path.empty()) {
    std::ofstream g(c.graph_path, std::ios::binary);
    if (!g) throw InputError("cannot write '" + c.graph_path + "'");
    write_edge_list(g, *r.outer);
  }
  emit(c, out, h.str(), j, csv);
  return exit_ok;
}

void add_common(CLI::App* cmd, Config& c) {
  cmd->add_option("--seed", c.seed, "Random seed");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  cmd->add_option("--out", c.out_path, "File for json/csv output");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Relation algebra, coherent configurations and diameter bounds", "schemes"};
  app.footer(footer);
  app.require_subcommand(1);

  auto* diameter = app.add_subcommand("diameter", "Diameters, girth and connectivity");
  diameter->add_option("input", c.input, "Relation file")->required();
  diameter->add_option("--input-format", c.input_format, "auto, edges or dense")
      ->check(CLI::IsMember({"auto", "edges", "dense"}));
  add_common(diameter, c);

  auto* scheme = app.add_subcommand("scheme", "Build and certify a scheme");
  scheme->add_option("input", c.input, "Generators file, relation file or scheme JSON")
      ->required();
  scheme->add_option("--mode", c.mode, "orbit (generators), wl (relation) or json");
  scheme->add_option("--input-format", c.input_format, "auto, edges or dense")
      ->check(CLI::IsMember({"auto", "edges", "dense"}));
  add_common(scheme, c);

  auto* verify = app.add_subcommand("verify", "Check an inequality over generated instances");
  verify->add_option("suite", c.suite, "ruzsa, expand, commbound, mains, star, pigeonhole "
                                       "or girthex")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", c.n, "Point count (ruzsa) or largest point count (pigeonhole)");
  verify->add_option("--q", c.q, "Largest modulus");
  verify->add_option("--k", c.k, "Girth target (girthex)");
  verify->add_option("--trials", c.trials, "Instances, random subsets or search steps");
  verify->add_option("--max-t", c.max_t, "Largest exhaustively checked subset (expand)");
  verify->add_option("--mode", c.mode, "girthex route: auto, gap or cycle");
  add_common(verify, c);

  auto* search = app.add_subcommand("search-hr", "Search A in Z_q with A - A = Z_q, small kA");
  search->add_option("--q", c.q, "Prime modulus")->required();
  search->add_option("--k", c.k, "Fold parameter (default 2)");
  search->add_option("--trials", c.trials, "Hill-climbing steps (default 20000)");
  add_common(search, c);

  auto* girthex = app.add_subcommand(
      "girthex", "Cayley graph with undirected diameter <= 2 and girth >= k");
  girthex->add_option("--k", c.k, "Girth target (default 2)");
  girthex->add_option("--q", c.q, "Largest prime tried (default 10000)");
  girthex->add_option("--q-min", c.q_min, "Smallest prime tried");
  girthex->add_option("--trials", c.trials, "Search steps per modulus (default 20000)");
  girthex->add_option("--mode", c.mode, "auto, gap or cycle");
  girthex->add_option("--graph", c.graph_path, "Write Cay(V, 2B) as an edge list");
  add_common(girthex, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*diameter) return cmd_diameter(c, out, err);
    if (*scheme) return cmd_scheme(c, out, err);
    if (*verify) return cmd_verify(c, out, err);
    if (*search) return cmd_search_hr(c, out, err);
    return cmd_girthex(c, out, err);
  } catch (const ParseError& e) {
    err << c.input << ": " << e.what() << "\n";
  } catch (const NotConnectedError& e) {
    err << e.what() << "\n";
  } catch (const InputError& e) {
    err << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
  } catch (const std::out_of_range& e) {
    err << e.what() << "\n";
  }
  return exit_input;
}

}  // namespace schemes
