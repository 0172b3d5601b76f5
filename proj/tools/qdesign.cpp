// Command-line surface: exact q-binomials, orbit incidence matrices, the
// Borel family constructor, design verification, and the 0/1 selection
// solver, wired into reproducible pipelines (km -> solve -> verify).
//
// Exit codes: 0 success/balanced, 1 verification failure, 2 bad arguments,
// 3 size guard exceeded, 4 time limit exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdesign/qdesign.hpp"

namespace {

using namespace qdesign;

constexpr int kExitOk = 0;
constexpr int kExitUnbalanced = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitGuard = 3;
constexpr int kExitTimeout = 4;

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  std::string poly_file;
  std::uint64_t guard = kDefaultOrbitGuard;
  std::string format = "text";

  PolyTable polys() const { return poly_file.empty() ? PolyTable{} : PolyTable::load_file(poly_file); }
};

// Resolves the modulus for GF(q) against an override table, if any.
Gf make_field_with_overrides(unsigned q, const PolyTable& polys) {
  auto [p, m] = detail::prime_power_split(q);
  if (p != 0 && m > 1)
    if (const auto* coeffs = polys.find(q, m)) return Gf::make(q, *coeffs);
  return Gf::make(q);
}

unsigned long long pow_ull(unsigned long long b, unsigned e) {
  unsigned long long r = 1;
  while (e--) r *= b;
  return r;
}

GroupGens resolve_group(const std::string& kind, const Gf& field, unsigned n, const PolyTable& polys,
                        const std::string& gens_file) {
  if (kind == "borel") return borel_group(field, n);
  if (kind == "singer" || kind == "singer_frobenius") {
    const std::vector<Fe>* poly = polys.find(pow_ull(field.q(), n), n);
    return kind == "singer" ? singer_group(field, n, poly) : singer_frobenius_group(field, n, poly);
  }
  if (kind == "matrices") {
    std::vector<MatFq> gens;
    if (!gens_file.empty()) {
      std::ifstream in(gens_file);
      if (!in) throw std::invalid_argument("cannot open generator file: " + gens_file);
      while (true) {
        in >> std::ws;
        if (in.eof()) break;
        gens.push_back(parse_matrix(field, in));
      }
    }
    return matrix_group(field, n, std::move(gens));
  }
  throw std::invalid_argument("unknown group kind: " + kind);
}

GroupDesc describe_group(const GroupGens& g, const std::optional<std::vector<Fe>>& poly) {
  if (g.is_borel()) return GroupDesc{"borel", {}, std::nullopt};
  if (g.label == "singer" || g.label == "singer_frobenius") return GroupDesc{g.label, {}, poly};
  return GroupDesc{"matrices", g.gens, std::nullopt};
}

std::string render_km(const KMMatrix& m, const std::string& format) {
  if (format == "text") return km_text(m);
  if (format == "csv") return km_csv(m);
  if (format == "json") return km_to_json(m).dump(2) + "\n";
  throw std::invalid_argument("unknown format: " + format);
}

int cmd_km(unsigned n, unsigned q, unsigned t, std::vector<unsigned> K, const std::string& kind, bool family,
           const std::string& gens_file, const CommonOpts& common, const std::string& out) {
  PolyTable polys = common.polys();
  if (family) {
    if (kind != "borel") throw std::invalid_argument("--family requires the borel group");
    if (!K.empty() && K != std::vector<unsigned>{t + 1, t + 2})
      throw std::invalid_argument("--family fixes K = {t+1, t+2}");
    write_output(out, render_km(borel_family_matrix(n, q, t), common.format));
    return kExitOk;
  }
  if (K.empty()) throw std::invalid_argument("--K is required");
  KMMatrix m;
  if (kind == "borel") {
    m = borel_km_concat(n, q, t, K);
  } else {
    Gf field = make_field_with_overrides(q, polys);
    GroupGens g = resolve_group(kind, field, n, polys, gens_file);
    m = km_concat(g, t, K, common.guard);
    std::optional<std::vector<Fe>> poly;
    if (kind == "singer" || kind == "singer_frobenius")
      poly = singer_frobenius_gens(field, n, polys.find(pow_ull(q, n), n)).poly;
    m.group = describe_group(g, poly);
  }
  write_output(out, render_km(m, common.format));
  return kExitOk;
}

int cmd_qbinom(long n, long k, unsigned q) {
  std::cout << qbinom(n, k, q).get_str() << "\n";
  return kExitOk;
}

int cmd_construct(unsigned t, unsigned q, const std::string& out) {
  Design d;
  if (q == 1) {
    auto [sd, params] = q1_family(t);
    d.params = params;
    d.set_blocks = sd.blocks;
  } else {
    auto [sel, params] = borel_family_selection(t, q);
    d.params = params;
    d.group = sel.group;
    d.reps = sel.reps;
  }
  write_output(out, design_to_json(d).dump(2) + "\n");
  return kExitOk;
}

int report_verification(const VerifyResult& res) {
  if (res.balanced) {
    std::cout << "lambda=" << res.lambda.get_str() << "\n";
    return kExitOk;
  }
  std::cout << "unbalanced (reference count " << res.lambda.get_str() << "); counterexamples:\n";
  for (const Violation& v : res.violations)
    std::cout << "  " << v.what << " covered " << v.count.get_str() << " times\n";
  return kExitUnbalanced;
}

int cmd_verify(const std::string& path, std::optional<unsigned> t_override, const CommonOpts& common) {
  Json j = Json::parse(read_file(path));
  if (j.contains("designs")) {
    // solver output: verify every embedded design
    int rc = kExitOk;
    for (const auto& jd : j["designs"]) {
      Design d = design_from_json(jd);
      if (t_override) d.params.t = *t_override;
      if (report_verification(verify(d, common.guard)) != kExitOk) rc = kExitUnbalanced;
    }
    return rc;
  }
  Design d = design_from_json(j);
  if (t_override) d.params.t = *t_override;
  VerifyResult res = verify(d, common.guard);
  int rc = report_verification(res);
  if (rc == kExitOk && d.params.lambda && *d.params.lambda != res.lambda)
    std::cout << "note: declared lambda " << d.params.lambda->get_str() << " differs from verified lambda\n";
  return rc;
}

int cmd_solve(const std::string& matrix_path, const std::string& lambda_str, std::uint64_t max_solutions,
              double time_limit, const std::string& out) {
  // accepts either a bare matrix file or a full request
  // {"matrix": ..., "lambda": ..., "max_solutions": ..., "time_limit_s": ...};
  // flags override the file
  Json in = Json::parse(read_file(matrix_path));
  SolveOptions opt;
  opt.max_solutions = max_solutions;
  opt.time_limit_s = time_limit;
  BigInt lambda = 0;
  bool have_lambda = !lambda_str.empty();
  if (have_lambda) lambda = BigInt(lambda_str);
  KMMatrix m;
  if (in.contains("matrix")) {
    m = km_from_json(in["matrix"]);
    if (!have_lambda && in.contains("lambda")) {
      lambda = int_from_json(in["lambda"]);
      have_lambda = true;
    }
    if (in.contains("max_solutions") && max_solutions == 1'000'000)
      opt.max_solutions = in["max_solutions"].get<std::uint64_t>();
    if (in.contains("time_limit_s") && time_limit == 0) opt.time_limit_s = in["time_limit_s"].get<double>();
  } else {
    m = km_from_json(in);
  }
  if (!have_lambda) throw std::invalid_argument("solve: no lambda given (flag or request file)");
  SolveResult res = solve(m, lambda, opt);

  Json j = solve_result_to_json(m, lambda, res);
  // embed a design per solution so results verify without manual editing
  if (m.group) {
    Json designs = Json::array();
    for (const auto& sel : res.selections) {
      Design d;
      d.params.t = m.t;
      d.params.n = m.n;
      d.params.q = m.q;
      d.params.K = m.K;
      d.params.lambda = lambda;
      d.group = m.group;
      for (std::size_t c = 0; c < sel.size(); ++c)
        if (sel[c]) {
          if (!m.cols[c].rep) throw std::invalid_argument("matrix file lacks representatives for selected columns");
          d.reps.push_back(*m.cols[c].rep);
        }
      designs.push_back(design_to_json(d));
    }
    j["designs"] = std::move(designs);
  }
  write_output(out, j.dump(2) + "\n");
  std::cerr << "status: " << to_string(res.status) << ", solutions: " << res.selections.size() << "\n";
  return res.status == SolveStatus::timeout ? kExitTimeout : kExitOk;
}

// Seeded randomized self-checks of the core invariants.
int cmd_selfcheck(unsigned n, unsigned q, unsigned trials, std::uint64_t seed) {
  Gf field = Gf::make(q);
  std::mt19937_64 rng(seed);
  auto rand_elem = [&] { return static_cast<Fe>(rng() % q); };
  auto rand_subspace = [&](unsigned k) {
    for (;;) {
      MatFq g(field, n, k);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < k; ++j) g.at(i, j) = rand_elem();
      if (rank(g) == k) return canonicalize(g);
    }
  };
  auto rand_borel = [&] {
    MatFq b(field, n, n);
    for (unsigned i = 0; i < n; ++i) {
      b.at(i, i) = static_cast<Fe>(1 + rng() % (q - 1));
      for (unsigned j = i + 1; j < n; ++j) b.at(i, j) = rand_elem();
    }
    return b;
  };

  unsigned failures = 0;
  for (unsigned i = 0; i < trials; ++i) {
    unsigned k = 1 + static_cast<unsigned>(rng() % (n - 1));
    Subspace s = rand_subspace(k);
    MatFq b = rand_borel();
    if (class_of(apply(b, s)) != class_of(s)) ++failures;       // Borel keeps pivots
    MatFq b2 = rand_borel();
    if (apply(b * b2, s) != apply(b, apply(b2, s))) ++failures;  // action composes
    if (canonicalize(s.canon()) != s) ++failures;                // idempotence
  }
  std::cout << (failures ? "FAIL" : "ok") << " (" << trials << " trials, n=" << n << ", q=" << q
            << ", seed=" << seed << ")\n";
  return failures ? kExitUnbalanced : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for subspace designs over finite fields"};
  app.require_subcommand(1);

  CommonOpts common;

  unsigned q = 2, n = 6, t = 2;
  std::vector<unsigned> K;
  std::string group_kind = "borel", gens_file, out, matrix_path, design_path, lambda_str;
  bool family = false;
  long qb_n = 0, qb_k = 0;
  unsigned qb_q = 2;
  std::uint64_t max_solutions = 1'000'000, seed = 1;
  double time_limit = 0;
  unsigned trials = 1000;
  std::optional<unsigned> t_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--poly-file", common.poly_file, "primitive-polynomial override file")
        ->envname("QDESIGN_POLY_FILE");
    cmd->add_option("--guard-orbit-size", common.guard, "size guard for orbit/verification materialization")
        ->envname("QDESIGN_GUARD_ORBIT_SIZE");
  };

  CLI::App* c_qbinom = app.add_subcommand("qbinom", "number of k-subspaces of F_q^n (binomial at q=1)");
  c_qbinom->add_option("n", qb_n)->required();
  c_qbinom->add_option("k", qb_k)->required();
  c_qbinom->add_option("q", qb_q)->required();

  CLI::App* c_km = app.add_subcommand("km", "write an orbit incidence matrix");
  c_km->add_option("--n", n, "ambient dimension")->required()->envname("QDESIGN_N");
  c_km->add_option("--q", q, "field order")->required()->envname("QDESIGN_Q");
  c_km->add_option("--t", t, "row dimension")->required()->envname("QDESIGN_T");
  c_km->add_option("--K", K, "column dimensions, e.g. 3,4")->delimiter(',')->envname("QDESIGN_K");
  c_km->add_option("--group", group_kind, "borel | singer | singer_frobenius | matrices")
      ->envname("QDESIGN_GROUP");
  c_km->add_option("--gens-file", gens_file, "generator matrices for --group matrices");
  c_km->add_flag("--family", family, "restrict to the family selection layout (borel only)");
  c_km->add_option("--format", common.format, "text | csv | json")->envname("QDESIGN_FORMAT");
  c_km->add_option("-o,--output", out, "output file (default stdout)");
  add_common(c_km);

  CLI::App* c_construct = app.add_subcommand("construct", "construct the Borel-orbit family design");
  c_construct->add_option("t", t)->required();
  c_construct->add_option("q", q)->required();
  c_construct->add_option("-o,--output", out, "output file (default stdout)");

  CLI::App* c_verify = app.add_subcommand("verify", "verify a design file by brute force");
  c_verify->add_option("design", design_path, "design JSON (or solver output)")->required();
  c_verify->add_option("--t", t_override, "override the t parameter");
  add_common(c_verify);

  CLI::App* c_solve = app.add_subcommand("solve", "find 0/1 selections with A x = lambda 1");
  c_solve->add_option("--matrix", matrix_path, "matrix or request JSON written by km")->required();
  c_solve->add_option("--lambda", lambda_str, "target index (may come from a request file)");
  c_solve->add_option("--max-solutions", max_solutions)->envname("QDESIGN_MAX_SOLUTIONS");
  c_solve->add_option("--time-limit", time_limit, "wall-clock limit in seconds")->envname("QDESIGN_TIME_LIMIT");
  c_solve->add_option("-o,--output", out, "output file (default stdout)");

  CLI::App* c_selfcheck = app.add_subcommand("selfcheck", "seeded randomized invariant checks");
  c_selfcheck->add_option("--n", n)->envname("QDESIGN_N");
  c_selfcheck->add_option("--q", q)->envname("QDESIGN_Q");
  c_selfcheck->add_option("--trials", trials);
  c_selfcheck->add_option("--seed", seed)->envname("QDESIGN_SEED");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitBadArgs;
  }

  try {
    if (app.got_subcommand(c_qbinom)) return cmd_qbinom(qb_n, qb_k, qb_q);
    if (app.got_subcommand(c_km)) return cmd_km(n, q, t, K, group_kind, family, gens_file, common, out);
    if (app.got_subcommand(c_construct)) return cmd_construct(t, q, out);
    if (app.got_subcommand(c_verify)) return cmd_verify(design_path, t_override, common);
    if (app.got_subcommand(c_solve)) return cmd_solve(matrix_path, lambda_str, max_solutions, time_limit, out);
    if (app.got_subcommand(c_selfcheck)) return cmd_selfcheck(n, q, trials, seed);
  } catch (const guard_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  return kExitBadArgs;
}
