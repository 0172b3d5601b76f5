// Acceptance suite: one pass/fail line per criterion, exact integer
// comparisons throughout, wall-clock budgets asserted as stated.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace qdesign;

namespace {

struct Checker {
  std::ostringstream log;
  unsigned failures = 0;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      ++failures;
      log << "    FAILED: " << what << "\n";
    }
  }
  template <typename A, typename B>
  void equal(const A& a, const B& b, const std::string& what) {
    if (!(a == b)) {
      ++failures;
      log << "    FAILED: " << what << " (got " << a << ", want " << b << ")\n";
    }
  }
};

// --- criterion 1: lambda_max reference values ------------------------------

void lambda_max_values(Checker& c) {
  c.equal(lambda_max(6, {3, 4}, 2, 2), BigInt(50), "lambda_max 2-(6,{3,4};2)");
  c.equal(lambda_max(7, {3, 4}, 2, 2), BigInt(186), "lambda_max 2-(7,{3,4};2)");
  c.equal(lambda_max(8, {3, 4}, 2, 2), BigInt(714), "lambda_max 2-(8,{3,4};2)");
  c.equal(lambda_max(9, {3, 4}, 2, 2), BigInt(2794), "lambda_max 2-(9,{3,4};2)");
  c.equal(lambda_max(6, {3, 4, 5}, 2, 2), BigInt(65), "lambda_max 2-(6,{3,4,5};2)");
  c.equal(lambda_max(7, {3, 4, 5}, 2, 2), BigInt(341), "lambda_max 2-(7,{3,4,5};2)");
  c.equal(lambda_max(8, {4, 5, 6}, 3, 2), BigInt(341), "lambda_max 3-(8,{4,5,6};2)");
}

// --- criterion 2: the 15x15 family matrix over F_2^6 -----------------------

const int kFamilyMatrix[15][15] = {
    {8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 4, 0, 0},
    {0, 8, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 4, 0},
    {0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 4, 0},
    {0, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0, 1, 2, 4, 0},
    {0, 0, 0, 0, 8, 0, 0, 0, 0, 0, 1, 2, 0, 0, 4},
    {0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 1, 0, 2, 0, 4},
    {0, 0, 0, 0, 0, 0, 8, 0, 0, 0, 0, 1, 2, 0, 4},
    {0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 0, 0, 2, 4},
    {0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 0, 2, 4},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 8, 0, 0, 1, 2, 4},
    {1, 2, 4, 8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 0, 0, 0, 2, 4, 8, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 0, 0, 2, 0, 0, 4, 8, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 0, 0, 2, 0, 4, 0, 8, 0, 0, 0, 0, 0},
    {0, 0, 0, 1, 0, 0, 2, 0, 4, 8, 0, 0, 0, 0, 0},
};

void family_matrix_golden(Checker& c) {
  KMMatrix m = borel_family_matrix(6, 2, 2);
  c.equal(m.rows.size(), std::size_t(15), "row count");
  c.equal(m.cols.size(), std::size_t(15), "column count");
  for (std::size_t r = 0; r < 15; ++r) {
    for (std::size_t col = 0; col < 15; ++col)
      c.require(m.at(r, col) == kFamilyMatrix[r][col],
                "entry (" + m.rows[r].label + ", " + m.cols[col].label + ")");
    c.equal(m.row_sum(r), BigInt(15), "row sum " + m.rows[r].label);
  }
}

// --- criterion 3: family verification grid ---------------------------------

void family_grid(Checker& c) {
  struct Point {
    unsigned t, q;
    long lambda;
  };
  for (Point p : {Point{1, 2, 15}, Point{1, 3, 40}, Point{1, 4, 85}, Point{2, 2, 15}, Point{2, 3, 40},
                  Point{3, 2, 15}}) {
    auto [sel, params] = borel_family_selection(p.t, p.q);
    Gf field = Gf::make(p.q);
    BlockList blocks = expand(sel, field, params.n);
    VerifyResult res = verify_design(blocks, p.t);
    std::string tag = "t=" + std::to_string(p.t) + " q=" + std::to_string(p.q);
    c.require(res.balanced, tag + " balanced");
    c.equal(res.lambda, BigInt(p.lambda), tag + " lambda");
    c.require(res.lambda < lambda_max(params.n, params.K, p.t, p.q), tag + " nontrivial");
  }
}

// --- criterion 4: the q=1 family --------------------------------------------

void q1_family_check(Checker& c) {
  for (unsigned t = 1; t <= 6; ++t) {
    auto [d, params] = q1_family(t);
    VerifyResult res = verify_set_design(d, t);
    std::string tag = "t=" + std::to_string(t);
    c.require(res.balanced, tag + " balanced");
    c.equal(res.lambda, BigInt(4), tag + " lambda");
  }
}

// --- criterion 5: Kramer-Mesner reproduction at lambda 5 -------------------
//
// The stated target is the smallest published index, 5, for the full Singer
// cycle over F_2^6.  That system is provably infeasible: weighting the rows
// of A x = lambda 1 by their orbit sizes gives 7 b3 + 35 b4 = 651 lambda,
// and the sigma-orbit sizes (63 everywhere except one orbit of 9 on
// 3-subspaces and one of 21 on 4-subspaces, the subfield lines) force
// lambda = 0 or 1 (mod 7).  This holds for every Singer representation,
// since all Singer cycles are conjugate.  The criterion is therefore run
// exactly as stated and reported as failing, and the machinery is
// demonstrated at the nearest feasible index, 8.

void singer_lambda5(Checker& c) {
  Gf f = Gf::make(2);
  GroupGens g = singer_group(f, 6);
  KMMatrix m = km_concat(g, 2, {3, 4});

  auto solve_and_verify = [&](long lambda, const std::string& tag) {
    SolveOptions opt;
    opt.max_solutions = 1;
    SolveResult res = solve(m, lambda, opt);
    c.require(!res.selections.empty(), tag + ": at least one solution exists");
    if (res.selections.empty()) return;
    const auto& x = res.selections.front();
    c.require(check(m, x, lambda), tag + ": solution satisfies A x = lambda 1");
    OrbitSelection sel;
    sel.group = GroupDesc{"singer", {}, std::nullopt};
    for (std::size_t col = 0; col < x.size(); ++col)
      if (x[col]) sel.reps.push_back(*m.cols[col].rep);
    VerifyResult v = verify_design(expand(sel, f, 6), 2);
    c.require(v.balanced, tag + ": expanded design is balanced");
    c.equal(v.lambda, BigInt(lambda), tag + ": expanded design lambda");
  };

  solve_and_verify(5, "lambda=5 (as stated)");
  if (c.failures) {
    c.log << "    note: lambda=5 is infeasible for the full Singer cycle over F_2^6:\n"
             "    counting forces lambda = 0 or 1 (mod 7) for any selection of\n"
             "    sigma-orbits, independently of the primitive polynomial (all\n"
             "    Singer cycles are conjugate).  The complete search below proves\n"
             "    emptiness; the machinery is then demonstrated at the nearest\n"
             "    feasible index 8, whose failures would also count.\n";
    SolveResult refute = solve(m, 5);
    c.require(refute.status == SolveStatus::complete, "lambda=5 refutation search ran to completion");
    c.require(refute.selections.empty(), "lambda=5 complete search is empty");
    unsigned before = c.failures;
    solve_and_verify(8, "supplementary lambda=8");
    if (c.failures == before) c.log << "    supplementary lambda=8: solved and verified as a design\n";
  }
}

// --- criterion 6: structural property suite ---------------------------------

void structural_suite(Checker& c) {
  // (a) class sizes sum to the subspace count
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned n = 1; n <= 7; ++n)
      for (unsigned k = 0; k <= n; ++k) {
        BigInt total = 0;
        for (const PivotSet& pi : enum_pivot_sets(n, k)) total += class_size(pi, q);
        c.equal(total, qbinom(n, k, q),
                "(a) class sizes n=" + std::to_string(n) + " k=" + std::to_string(k) + " q=" + std::to_string(q));
      }

  // (b) Borel orbit BFS equals echelon class enumeration
  for (unsigned q : {2u, 3u}) {
    Gf f = Gf::make(q);
    for (unsigned n = 2; n <= 6; ++n) {
      GroupGens explicit_b = matrix_group(f, n, borel_generators(f, n), "borel-explicit");
      GroupGens symbolic = borel_group(f, n);
      for (unsigned k = 1; k <= std::min(3u, n); ++k)
        for (const PivotSet& pi : enum_pivot_sets(n, k)) {
          Subspace rep = standard_rep(pi, f);
          bool same = orbit(explicit_b, rep) == orbit(symbolic, rep);
          c.require(same, "(b) orbit " + pi.label() + " n=" + std::to_string(n) + " q=" + std::to_string(q));
        }
    }
  }

  // (c) 1000 random Borel elements preserve pivot sets
  {
    std::mt19937_64 rng(2024);
    Gf f2 = Gf::make(2);
    Gf f3 = Gf::make(3);
    unsigned bad = 0;
    for (int i = 0; i < 1000; ++i) {
      const Gf& f = (i % 2) ? f3 : f2;
      unsigned n = 4 + i % 3;
      unsigned k = 1 + static_cast<unsigned>(rng() % (n - 1));
      Subspace s = qtest::random_subspace(f, n, k, rng);
      MatFq b = qtest::random_borel_element(f, n, rng);
      if (class_of(apply(b, s)) != class_of(s)) ++bad;
    }
    c.equal(bad, 0u, "(c) Borel elements preserving pivot sets");
  }

  // (d) support iff subset and power-of-q entries, via the literal counting
  // path over F_3^6
  {
    Gf f3 = Gf::make(3);
    KMMatrix m = km_matrix(borel_group(f3, 6), 2, 3);
    auto taus = enum_pivot_sets(6, 2);
    auto pis = enum_pivot_sets(6, 3);
    bool support_ok = true, power_ok = true;
    for (std::size_t r = 0; r < taus.size(); ++r)
      for (std::size_t col = 0; col < pis.size(); ++col) {
        const BigInt& v = m.at(r, col);
        if ((v != 0) != taus[r].subset_of(pis[col])) support_ok = false;
        if (v != 0) {
          BigInt w = v;
          while (w % 3 == 0) w /= 3;
          if (w != 1) power_ok = false;
        }
      }
    c.require(support_ok, "(d) nonzero exactly on subset pairs");
    c.require(power_ok, "(d) nonzero entries are powers of q");
  }

  // (e) block decomposition
  for (auto [t, n, q] : {std::tuple{1u, 5u, 2u}, std::tuple{2u, 6u, 2u}}) {
    BorelBlockMatrix b = borel_block_matrix(n, q, t);
    const KMMatrix& m = b.full;
    const BigInt diag = big_pow(q, n - t - 1);
    std::string tag = "(e) t=" + std::to_string(t) + " n=" + std::to_string(n) + " q=" + std::to_string(q);
    bool ok = true;
    for (std::size_t r = 0; r < b.row_split; ++r)
      for (std::size_t col = 0; col < b.col_split_1; ++col)
        if (m.at(r, col) != (r == col ? diag : BigInt(0))) ok = false;
    c.require(ok, tag + " diagonal block");

    KMMatrix upper = borel_km_matrix(n - 1, q, t, t + 2);
    ok = true;
    for (std::size_t r = 0; r < b.row_split; ++r)
      for (std::size_t col = b.col_split_1; col < b.col_split_2; ++col)
        if (m.at(r, col) != upper.at(r, col - b.col_split_1)) ok = false;
    c.require(ok, tag + " upper-middle block");

    KMMatrix lower = borel_km_matrix(n - 1, q, t - 1, t);
    ok = true;
    for (std::size_t r = b.row_split; r < m.rows.size(); ++r)
      for (std::size_t col = 0; col < b.col_split_1; ++col)
        if (m.at(r, col) != lower.at(r - b.row_split, col)) ok = false;
    c.require(ok, tag + " lower-left block");

    ok = true;
    for (std::size_t r = b.row_split; r < m.rows.size(); ++r)
      for (std::size_t col = b.col_split_1; col < b.col_split_2; ++col)
        if (m.at(r, col) != 0) ok = false;
    c.require(ok, tag + " zero block");
  }

  // (f) q = 1 specialization equals subset incidence
  for (unsigned k : {3u, 4u}) {
    KMMatrix q1 = q1_specialize(borel_km_matrix(6, 2, 2, k));
    auto want = qtest::subset_incidence(6, 2, k);
    bool ok = true;
    for (std::size_t r = 0; r < q1.rows.size(); ++r)
      for (std::size_t col = 0; col < q1.cols.size(); ++col)
        if (q1.at(r, col) != want[r][col]) ok = false;
    c.require(ok, "(f) subset incidence k=" + std::to_string(k));
  }
}

// --- criterion 7: solver oracle equivalence ---------------------------------

void solver_oracle(Checker& c) {
  std::mt19937_64 rng(777);
  for (int instance = 0; instance < 50; ++instance) {
    unsigned nrows = 1 + static_cast<unsigned>(rng() % 6);
    unsigned ncols = 1 + static_cast<unsigned>(rng() % 10);
    KMMatrix m;
    m.group_label = "random";
    for (unsigned col = 0; col < ncols; ++col) {
      KMCol kc;
      kc.k = 0;
      kc.label = "c" + std::to_string(col);
      m.cols.push_back(std::move(kc));
    }
    for (unsigned r = 0; r < nrows; ++r) {
      KMRow kr;
      kr.label = "r" + std::to_string(r);
      m.rows.push_back(std::move(kr));
      std::vector<BigInt> row;
      for (unsigned col = 0; col < ncols; ++col) row.emplace_back(static_cast<long>(rng() % 9));
      m.a.push_back(std::move(row));
    }
    for (long lambda = 0; lambda <= 20; ++lambda) {
      SolveResult res = solve(m, lambda);
      if (res.status != SolveStatus::complete) {
        c.require(false, "instance " + std::to_string(instance) + " incomplete");
        continue;
      }
      if (res.selections != qtest::solve_exhaustive(m, lambda)) {
        c.require(false,
                  "instance " + std::to_string(instance) + " lambda " + std::to_string(lambda) + " differs");
      }
    }
  }
}

struct Criterion {
  std::string name;
  double budget_s;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 lambda_max reference values", 1.0, lambda_max_values},
      {"2 family incidence matrix over F_2^6", 5.0, family_matrix_golden},
      {"3 family verification grid", 600.0, family_grid},
      {"4 q=1 set family t=1..6", 1.0, q1_family_check},
      {"5 singer system solved at lambda 5", 300.0, singer_lambda5},
      {"6 structural property suite", 120.0, structural_suite},
      {"7 solver equals exhaustive enumeration", 60.0, solver_oracle},
  };

  unsigned failed = 0;
  for (Criterion& cr : criteria) {
    Checker c;
    auto start = std::chrono::steady_clock::now();
    cr.fn(c);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > cr.budget_s) c.require(false, "exceeded time budget");
    bool ok = c.failures == 0;
    if (!ok) ++failed;
    std::printf("[%s] criterion %s (%.2fs)\n", ok ? "PASS" : "FAIL", cr.name.c_str(), elapsed);
    if (!ok) std::fputs(c.log.str().c_str(), stdout);
  }
  if (failed) {
    std::printf("%u criteria failed\n", failed);
    return 1;
  }
  std::puts("all criteria passed");
  return 0;
}
