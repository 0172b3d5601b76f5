#pragma once

// Exact solver for the orbit-selection system A x = lambda * 1 over 0/1
// column vectors x.  Depth-first backtracking over columns with two exact
// pruning rules: a running row sum may never exceed lambda, and a row whose
// running sum plus the sum of all remaining column entries falls short of
// lambda can no longer be satisfied.  All arithmetic is exact.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qdesign/incidence.hpp"

namespace qdesign {

enum class SolveStatus { complete, truncated, timeout };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::complete: return "complete";
    case SolveStatus::truncated: return "truncated";
    case SolveStatus::timeout: return "timeout";
  }
  return "unknown";
}

struct SolveOptions {
  std::uint64_t max_solutions = 1'000'000;
  double time_limit_s = 0;  // 0 = no limit
};

struct SolveResult {
  SolveStatus status = SolveStatus::complete;
  // 0/1 selection per original column, sorted lexicographically
  std::vector<std::vector<std::uint8_t>> selections;

  std::vector<std::vector<std::string>> label_sets(const KMMatrix& m) const {
    std::vector<std::vector<std::string>> out;
    for (const auto& sel : selections) {
      std::vector<std::string> labels;
      for (std::size_t c = 0; c < sel.size(); ++c)
        if (sel[c]) labels.push_back(m.cols[c].label);
      out.push_back(std::move(labels));
    }
    return out;
  }
};

// Exact residual test A x == lambda * 1.
inline bool check(const KMMatrix& a, const std::vector<std::uint8_t>& x, const BigInt& lambda) {
  if (x.size() != a.cols.size()) throw std::invalid_argument("check: selection length mismatch");
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    BigInt s = 0;
    for (std::size_t c = 0; c < x.size(); ++c)
      if (x[c]) s += a.a[r][c];
    if (s != lambda) return false;
  }
  return true;
}

inline SolveResult solve(const KMMatrix& a, const BigInt& lambda, const SolveOptions& opt = {}) {
  if (lambda < 0) throw std::invalid_argument("solve: lambda must be nonnegative");
  if (opt.max_solutions == 0) throw std::invalid_argument("solve: max_solutions must be positive");
  const std::size_t nrows = a.rows.size(), ncols = a.cols.size();
  for (const auto& row : a.a)
    for (const BigInt& v : row)
      if (v < 0) throw std::invalid_argument("solve: entries must be nonnegative");

  // columns in decreasing order of their maximum entry; ties keep label order
  std::vector<std::size_t> order(ncols);
  std::iota(order.begin(), order.end(), 0);
  std::vector<BigInt> col_max(ncols, 0);
  for (std::size_t c = 0; c < ncols; ++c)
    for (std::size_t r = 0; r < nrows; ++r) col_max[c] = std::max(col_max[c], a.a[r][c]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return col_max[x] > col_max[y]; });

  // suffix[pos][r] = sum of entries of row r over columns order[pos..]
  std::vector<std::vector<BigInt>> suffix(ncols + 1, std::vector<BigInt>(nrows, 0));
  for (std::size_t pos = ncols; pos-- > 0;) {
    for (std::size_t r = 0; r < nrows; ++r) suffix[pos][r] = suffix[pos + 1][r] + a.a[r][order[pos]];
  }

  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                            std::chrono::duration<double>(opt.time_limit_s));
  const bool timed = opt.time_limit_s > 0;

  SolveResult res;
  std::vector<BigInt> rowsum(nrows, 0);
  std::vector<std::uint8_t> chosen(ncols, 0);
  bool stop_truncated = false, stop_timeout = false;
  std::uint64_t nodes = 0;

  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (stop_truncated || stop_timeout) return;
    if (timed && (++nodes & 1023u) == 0 && std::chrono::steady_clock::now() > deadline) {
      stop_timeout = true;
      return;
    }
    for (std::size_t r = 0; r < nrows; ++r) {
      if (rowsum[r] > lambda) return;
      if (rowsum[r] + suffix[pos][r] < lambda) return;
    }
    if (pos == ncols) {
      res.selections.emplace_back(chosen);
      if (res.selections.size() >= opt.max_solutions) stop_truncated = true;
      return;
    }
    const std::size_t col = order[pos];
    // include
    chosen[col] = 1;
    for (std::size_t r = 0; r < nrows; ++r) rowsum[r] += a.a[r][col];
    self(self, pos + 1);
    for (std::size_t r = 0; r < nrows; ++r) rowsum[r] -= a.a[r][col];
    chosen[col] = 0;
    // exclude
    self(self, pos + 1);
  };
  rec(rec, 0);

  if (stop_timeout)
    res.status = SolveStatus::timeout;
  else if (stop_truncated && res.selections.size() >= opt.max_solutions)
    res.status = SolveStatus::truncated;
  else
    res.status = SolveStatus::complete;

  std::sort(res.selections.begin(), res.selections.end());
  return res;
}

inline Json solve_result_to_json(const KMMatrix& m, const BigInt& lambda, const SolveResult& r) {
  Json j;
  j["lambda"] = json_int(lambda);
  j["status"] = to_string(r.status);
  Json sols = Json::array();
  for (const auto& labels : r.label_sets(m)) {
    Json js = Json::array();
    for (const std::string& l : labels) js.push_back(l);
    sols.push_back(std::move(js));
  }
  j["solutions"] = std::move(sols);
  return j;
}

}  // namespace qdesign
