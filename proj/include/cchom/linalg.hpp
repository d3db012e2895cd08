#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "cchom/numeric.hpp"
#include "cchom/sparse.hpp"

namespace cchom {

// ---------------------------------------------------------------------------
// Column echelon transform: W = A*C with C unimodular (cols x cols).
// Rows are processed in ascending order; after processing, each row is either
// a pivot row (exactly one active column kept a nonzero there, then retired)
// or a free row (all active columns vanish there).  Invariant: every active
// column is zero on all processed rows, so non-pivot columns of W end up
// identically zero and the matching columns of C are a saturated basis of
// ker A (saturated because C is unimodular).
// ---------------------------------------------------------------------------
struct ColumnEchelon {
  long long rows = 0, cols = 0;
  std::vector<std::map<long long, Int>> wcols;              // W by column
  std::vector<std::map<long long, Int>> ccols;              // C by column
  std::vector<std::pair<long long, long long>> pivots;      // (row, col), row ascending
  std::vector<long long> free_rows;                         // rows with no pivot
  std::vector<long long> free_cols;                         // never-pivot columns

  long long rank() const { return (long long)pivots.size(); }
};

namespace detail {

inline void col_axpy(std::vector<std::map<long long, Int>>& cols,
                     std::unordered_map<long long, std::set<long long>>* occ,
                     long long dst, long long src, const Int& m) {
  if (m == 0) return;
  auto& d = cols[dst];
  for (const auto& [r, v] : cols[src]) {
    auto it = d.find(r);
    if (it == d.end()) {
      d.emplace(r, m * v);
      if (occ) (*occ)[r].insert(dst);
    } else {
      it->second += m * v;
      if (it->second == 0) {
        d.erase(it);
        if (occ) (*occ)[r].erase(dst);
      }
    }
  }
}

// (cj, ck) <- (x*cj + y*ck, -(b/g)*cj + (a/g)*ck), where a,b are the row-r
// entries and g = gcd: puts g at (r,cj), 0 at (r,ck); det of the 2x2 is +1.
inline void col_gcd_op(std::vector<std::map<long long, Int>>& W,
                       std::vector<std::map<long long, Int>>& C,
                       std::unordered_map<long long, std::set<long long>>& occ,
                       long long r, long long cj, long long ck) {
  Int a = W[cj].at(r), b = W[ck].at(r);
  Int g, x, y;
  // extended gcd
  {
    Int old_r = a, rr = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (rr != 0) {
      Int q = old_r / rr;
      Int tmp = old_r - q * rr; old_r = rr; rr = tmp;
      tmp = old_s - q * s; old_s = s; s = tmp;
      tmp = old_t - q * t; old_t = t; t = tmp;
    }
    g = old_r; x = old_s; y = old_t;
    if (g < 0) { g = -g; x = -x; y = -y; }
  }
  Int p = a / g, q = b / g;  // x*a + y*b = g, p*g = a, q*g = b
  auto wj = W[cj], wk = W[ck];
  auto cjc = C[cj], ckc = C[ck];
  auto combine = [&](std::map<long long, Int>& out, const std::map<long long, Int>& u,
                     const Int& cu, const std::map<long long, Int>& v, const Int& cv,
                     bool track, long long colidx) {
    std::map<long long, Int> res;
    if (cu != 0)
      for (const auto& [i, val] : u) res[i] = cu * val;
    for (const auto& [i, val] : v) {
      if (cv == 0) break;
      auto it = res.find(i);
      if (it == res.end()) res[i] = cv * val;
      else {
        it->second += cv * val;
        if (it->second == 0) res.erase(it);
      }
    }
    if (track) {
      for (const auto& [i, val] : out) if (!res.count(i)) occ[i].erase(colidx);
      for (const auto& [i, val] : res) if (!out.count(i)) occ[i].insert(colidx);
    }
    out = std::move(res);
  };
  combine(W[cj], wj, x, wk, y, true, cj);
  combine(W[ck], wj, -q, wk, p, true, ck);
  combine(C[cj], cjc, x, ckc, y, false, 0);
  combine(C[ck], cjc, -q, ckc, p, false, 0);
}

}  // namespace detail

inline ColumnEchelon column_echelon(const SparseIntMatrix& A) {
  ColumnEchelon E;
  E.rows = A.rows;
  E.cols = A.cols;
  E.wcols.assign(A.cols, {});
  E.ccols.assign(A.cols, {});
  std::unordered_map<long long, std::set<long long>> occ;  // row -> active cols hit
  for (const auto& [rc, v] : A.entries) {
    E.wcols[rc.second][rc.first] = v;
    occ[rc.first].insert(rc.second);
  }
  for (long long j = 0; j < A.cols; ++j) E.ccols[j][j] = 1;

  std::vector<char> active(A.cols, 1);
  for (long long r = 0; r < A.rows; ++r) {
    auto oit = occ.find(r);
    std::vector<long long> hit;
    if (oit != occ.end())
      for (long long c : oit->second)
        if (active[c]) hit.push_back(c);
    if (hit.empty()) {
      E.free_rows.push_back(r);
      continue;
    }
    // Euclid across columns until a single nonzero remains in row r.
    while (hit.size() > 1) {
      std::sort(hit.begin(), hit.end(), [&](long long a, long long b) {
        Int va = abs_int(E.wcols[a].at(r)), vb = abs_int(E.wcols[b].at(r));
        if (va != vb) return va < vb;
        return a < b;
      });
      long long cj = hit[0];
      if (abs_int(E.wcols[cj].at(r)) == 1) {
        Int piv = E.wcols[cj].at(r);
        for (size_t t = 1; t < hit.size(); ++t) {
          Int m = -E.wcols[hit[t]].at(r) / piv;
          detail::col_axpy(E.wcols, &occ, hit[t], cj, m);
          detail::col_axpy(E.ccols, nullptr, hit[t], cj, m);
        }
        hit.resize(1);
      } else {
        detail::col_gcd_op(E.wcols, E.ccols, occ, r, hit[0], hit[1]);
        std::vector<long long> nh;
        for (long long c : hit)
          if (E.wcols[c].count(r)) nh.push_back(c);
        hit = std::move(nh);
      }
    }
    long long pc = hit[0];
    E.pivots.push_back({r, pc});
    active[pc] = 0;
  }
  for (long long j = 0; j < A.cols; ++j)
    if (active[j]) E.free_cols.push_back(j);
  return E;
}

// ---------------------------------------------------------------------------
// Integral solve.
// ---------------------------------------------------------------------------
struct NoIntegerSolution {
  enum class Reason { inconsistent, rational_not_integral } reason;
  std::string to_string() const {
    return reason == Reason::inconsistent ? "inconsistent" : "rational_not_integral";
  }
};

using SolveResult = std::variant<IntVector, NoIntegerSolution>;

inline SolveResult solve_integer_with(const ColumnEchelon& E, const IntVector& b) {
  // Forward substitution over pivot rows with exact rationals; the rational
  // solution on pivot coordinates is unique, so a failed division certifies
  // rational-not-integral and a nonzero free-row residual certifies
  // inconsistency.
  std::map<long long, Rat> resid;
  for (const auto& [i, v] : b.entries) resid[i] = Rat(v);
  auto rget = [&](long long i) -> Rat {
    auto it = resid.find(i);
    return it == resid.end() ? Rat(0) : it->second;
  };
  std::map<long long, Rat> y;
  bool integral = true;
  size_t pi = 0;
  for (long long r = 0; r < E.rows; ++r) {
    if (pi < E.pivots.size() && E.pivots[pi].first == r) {
      long long c = E.pivots[pi].second;
      ++pi;
      Rat val = rget(r) / Rat(E.wcols[c].at(r));
      if (denominator(val) != 1) integral = false;
      if (val != 0) {
        y[c] = val;
        for (const auto& [i, v] : E.wcols[c]) {
          Rat nv = rget(i) - val * Rat(v);
          if (nv == 0) resid.erase(i);
          else resid[i] = nv;
        }
      }
    } else {
      if (rget(r) != 0)
        return NoIntegerSolution{NoIntegerSolution::Reason::inconsistent};
    }
  }
  if (!integral)
    return NoIntegerSolution{NoIntegerSolution::Reason::rational_not_integral};
  IntVector x(E.cols);
  for (const auto& [c, val] : y) {
    Int iv = numerator(val);
    for (const auto& [i, cv] : E.ccols[c]) x.add(i, iv * cv);
  }
  return x;
}

inline SolveResult solve_integer(const SparseIntMatrix& A, const IntVector& b) {
  if (b.length != A.rows) throw std::invalid_argument("solve_integer: size mismatch");
  return solve_integer_with(column_echelon(A), b);
}

inline std::vector<IntVector> kernel_lattice_basis_with(const ColumnEchelon& E) {
  std::vector<IntVector> basis;
  for (long long c : E.free_cols) {
    IntVector v(E.cols);
    for (const auto& [i, cv] : E.ccols[c]) v.entries[i] = cv;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::vector<IntVector> kernel_lattice_basis(const SparseIntMatrix& A) {
  return kernel_lattice_basis_with(column_echelon(A));
}

inline long long rank(const SparseIntMatrix& A) { return column_echelon(A).rank(); }

// ---------------------------------------------------------------------------
// Smith normal form with unimodular certificates (dense; intended for small
// matrices — certificate checks cap at ~50x50).
// ---------------------------------------------------------------------------
struct SnfResult {
  SparseIntMatrix U, D, V;  // U*A*V = D
};

inline SnfResult smith_normal_form(const SparseIntMatrix& A) {
  long long m = A.rows, n = A.cols;
  std::vector<std::vector<Int>> a(m, std::vector<Int>(n, 0));
  for (const auto& [rc, v] : A.entries) a[rc.first][rc.second] = v;
  std::vector<std::vector<Int>> u(m, std::vector<Int>(m, 0)), v(n, std::vector<Int>(n, 0));
  for (long long i = 0; i < m; ++i) u[i][i] = 1;
  for (long long j = 0; j < n; ++j) v[j][j] = 1;

  auto row_axpy = [&](long long dst, long long src, const Int& c) {
    for (long long j = 0; j < n; ++j) a[dst][j] += c * a[src][j];
    for (long long j = 0; j < m; ++j) u[dst][j] += c * u[src][j];
  };
  auto col_axpy = [&](long long dst, long long src, const Int& c) {
    for (long long i = 0; i < m; ++i) a[i][dst] += c * a[i][src];
    for (long long i = 0; i < n; ++i) v[i][dst] += c * v[i][src];
  };
  auto row_swap = [&](long long i, long long j) {
    if (i != j) { std::swap(a[i], a[j]); std::swap(u[i], u[j]); }
  };
  auto col_swap = [&](long long i, long long j) {
    if (i == j) return;
    for (long long r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (long long r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
  };
  auto row_negate = [&](long long i) {
    for (long long j = 0; j < n; ++j) a[i][j] = -a[i][j];
    for (long long j = 0; j < m; ++j) u[i][j] = -u[i][j];
  };

  long long t = 0;
  while (true) {
    // locate minimal nonzero in the remaining region
    long long pr = -1, pc = -1;
    Int best = 0;
    for (long long i = t; i < m; ++i)
      for (long long j = t; j < n; ++j)
        if (a[i][j] != 0) {
          Int av = abs_int(a[i][j]);
          if (pr < 0 || av < best) { best = av; pr = i; pc = j; }
        }
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);
    bool clean = true;
    for (long long i = t + 1; i < m; ++i)
      if (a[i][t] != 0) {
        Int q = a[i][t] / a[t][t];
        row_axpy(i, t, -q);
        if (a[i][t] != 0) clean = false;  // remainder: smaller entry appeared
      }
    for (long long j = t + 1; j < n; ++j)
      if (a[t][j] != 0) {
        Int q = a[t][j] / a[t][t];
        col_axpy(j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
    if (!clean) continue;  // redo with the smaller pivot
    // divisibility: fold any non-multiple into column t and redo
    bool redo = false;
    for (long long i = t + 1; i < m && !redo; ++i)
      for (long long j = t + 1; j < n && !redo; ++j)
        if (a[i][j] % a[t][t] != 0) {
          col_axpy(t, j, 1);
          redo = true;
        }
    if (redo) continue;
    if (a[t][t] < 0) row_negate(t);
    ++t;
  }

  SnfResult r;
  r.U = SparseIntMatrix(m, m);
  r.V = SparseIntMatrix(n, n);
  r.D = SparseIntMatrix(m, n);
  for (long long i = 0; i < m; ++i)
    for (long long j = 0; j < m; ++j)
      if (u[i][j] != 0) r.U.entries[{i, j}] = u[i][j];
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      if (v[i][j] != 0) r.V.entries[{i, j}] = v[i][j];
  for (long long i = 0; i < m; ++i)
    for (long long j = 0; j < n; ++j)
      if (a[i][j] != 0) r.D.entries[{i, j}] = a[i][j];
  return r;
}

// Exact determinant (fraction-free Bareiss); small dense use only.
inline Int det_exact(const SparseIntMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("det: not square");
  long long n = A.rows;
  if (n == 0) return 1;
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n, 0));
  for (const auto& [rc, v] : A.entries) a[rc.first][rc.second] = v;
  Int sign = 1, prev = 1;
  for (long long k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      long long sw = -1;
      for (long long i = k + 1; i < n; ++i)
        if (a[i][k] != 0) { sw = i; break; }
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (long long i = k + 1; i < n; ++i)
      for (long long j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Invariant factors only (no certificates), sparse two-sided elimination with
// unit-pivot preference; any non-unit residue falls back to the dense SNF.
// Suits boundary matrices, whose eliminations stay unit-pivoted.
// ---------------------------------------------------------------------------
inline std::vector<Int> invariant_factors(const SparseIntMatrix& A) {
  std::unordered_map<long long, std::map<long long, Int>> row;  // r -> (c -> v)
  std::unordered_map<long long, std::set<long long>> colrows;   // c -> rows
  std::set<std::pair<long long, long long>> units;              // |v|=1 positions
  for (const auto& [rc, v] : A.entries) {
    row[rc.first][rc.second] = v;
    colrows[rc.second].insert(rc.first);
    if (abs_int(v) == 1) units.insert({rc.first, rc.second});
  }
  auto put = [&](long long r, long long c, const Int& v) {
    auto& m = row[r];
    auto it = m.find(c);
    Int nv = (it == m.end() ? Int(0) : it->second) + v;
    units.erase({r, c});
    if (nv == 0) {
      if (it != m.end()) m.erase(it);
      colrows[c].erase(r);
    } else {
      m[c] = nv;
      colrows[c].insert(r);
      if (abs_int(nv) == 1) units.insert({r, c});
    }
  };

  std::vector<Int> factors;
  while (!units.empty()) {
    // bounded scan for a low-fill unit pivot
    auto best = units.end();
    size_t best_cost = SIZE_MAX, scanned = 0;
    for (auto it = units.begin(); it != units.end() && scanned < 32; ++it, ++scanned) {
      size_t cost = (row[it->first].size() - 1) * (colrows[it->second].size() - 1);
      if (cost < best_cost) { best_cost = cost; best = it; }
    }
    auto [pr, pc] = *best;
    Int piv = row[pr][pc];
    // clear column pc by row ops
    std::vector<long long> rows_hit(colrows[pc].begin(), colrows[pc].end());
    auto prow = row[pr];  // copy: row pr is the pivot row
    for (long long r2 : rows_hit) {
      if (r2 == pr) continue;
      Int m = -row[r2][pc] / piv;
      for (const auto& [c2, v2] : prow) put(r2, c2, m * v2);
    }
    // row pr now the only one in column pc; drop the whole pivot row+col
    for (const auto& [c2, v2] : row[pr]) {
      colrows[c2].erase(pr);
      units.erase({pr, c2});
    }
    row.erase(pr);
    factors.push_back(1);
  }
  // dense residue
  std::map<long long, long long> rmap, cmap;
  for (const auto& [r, m] : row)
    if (!m.empty()) rmap.emplace(r, (long long)rmap.size());
  long long nc = 0;
  for (const auto& [r, m] : row)
    for (const auto& [c, v] : m)
      if (!cmap.count(c)) cmap[c] = nc++;
  if (!rmap.empty()) {
    SparseIntMatrix R((long long)rmap.size(), nc);
    for (const auto& [r, m] : row)
      for (const auto& [c, v] : m) R.entries[{rmap[r], cmap[c]}] = v;
    auto snf = smith_normal_form(R);
    for (long long i = 0; i < std::min(R.rows, R.cols); ++i) {
      Int d = snf.D.get(i, i);
      if (d != 0) factors.push_back(d);
    }
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

}  // namespace cchom
