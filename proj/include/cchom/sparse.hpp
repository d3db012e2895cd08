#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cchom/numeric.hpp"

namespace cchom {

// Sparse integer vector; no stored zeros.
struct IntVector {
  long long length = 0;
  std::map<long long, Int> entries;

  IntVector() = default;
  explicit IntVector(long long n) : length(n) {}

  static IntVector dense(const std::vector<long long>& v) {
    IntVector r((long long)v.size());
    for (long long i = 0; i < (long long)v.size(); ++i)
      if (v[i] != 0) r.entries[i] = v[i];
    return r;
  }

  Int get(long long i) const {
    auto it = entries.find(i);
    return it == entries.end() ? Int(0) : it->second;
  }

  void set(long long i, Int v) {
    if (i < 0 || i >= length) throw std::out_of_range("IntVector::set");
    if (v == 0)
      entries.erase(i);
    else
      entries[i] = std::move(v);
  }

  void add(long long i, const Int& v) {
    if (v == 0) return;
    auto [it, fresh] = entries.try_emplace(i, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries.erase(it);
    }
  }

  // this += c * other
  void add_scaled(const IntVector& other, const Int& c) {
    if (c == 0) return;
    for (const auto& [i, v] : other.entries) add(i, c * v);
  }

  Int l1() const {
    Int s = 0;
    for (const auto& [i, v] : entries) s += abs_int(v);
    return s;
  }

  bool is_zero() const { return entries.empty(); }

  bool operator==(const IntVector& o) const {
    return length == o.length && entries == o.entries;
  }
};

// Sparse integer matrix; no stored zeros; indices in bounds.
struct SparseIntMatrix {
  long long rows = 0, cols = 0;
  std::map<std::pair<long long, long long>, Int> entries;

  SparseIntMatrix() = default;
  SparseIntMatrix(long long r, long long c) : rows(r), cols(c) {}

  static SparseIntMatrix identity(long long n) {
    SparseIntMatrix m(n, n);
    for (long long i = 0; i < n; ++i) m.entries[{i, i}] = 1;
    return m;
  }

  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& d) {
    SparseIntMatrix m((long long)d.size(), d.empty() ? 0 : (long long)d[0].size());
    for (long long r = 0; r < m.rows; ++r)
      for (long long c = 0; c < m.cols; ++c)
        if (d[r][c] != 0) m.entries[{r, c}] = d[r][c];
    return m;
  }

  Int get(long long r, long long c) const {
    auto it = entries.find({r, c});
    return it == entries.end() ? Int(0) : it->second;
  }

  void set(long long r, long long c, Int v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
      throw std::out_of_range("SparseIntMatrix::set");
    if (v == 0)
      entries.erase({r, c});
    else
      entries[{r, c}] = std::move(v);
  }

  void add(long long r, long long c, const Int& v) {
    if (v == 0) return;
    auto [it, fresh] = entries.try_emplace({r, c}, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) entries.erase(it);
    }
  }

  IntVector apply(const IntVector& x) const {
    if (x.length != cols) throw std::invalid_argument("apply: size mismatch");
    IntVector y(rows);
    for (const auto& [rc, v] : entries) {
      auto it = x.entries.find(rc.second);
      if (it != x.entries.end()) y.add(rc.first, v * it->second);
    }
    return y;
  }

  SparseIntMatrix mul(const SparseIntMatrix& b) const {
    if (cols != b.rows) throw std::invalid_argument("mul: size mismatch");
    // row-major of this times col access of b via b's row-major walk
    SparseIntMatrix out(rows, b.cols);
    // group b by row
    std::map<long long, std::vector<std::pair<long long, Int>>> brow;
    for (const auto& [rc, v] : b.entries) brow[rc.first].push_back({rc.second, v});
    for (const auto& [rc, v] : entries) {
      auto it = brow.find(rc.second);
      if (it == brow.end()) continue;
      for (const auto& [c2, v2] : it->second) out.add(rc.first, c2, v * v2);
    }
    return out;
  }

  SparseIntMatrix transpose() const {
    SparseIntMatrix t(cols, rows);
    for (const auto& [rc, v] : entries) t.entries[{rc.second, rc.first}] = v;
    return t;
  }

  bool operator==(const SparseIntMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }

  // Exchange format: header "rows cols", then one "r c value" line per entry.
  std::string to_text() const {
    std::ostringstream os;
    os << rows << " " << cols << "\n";
    for (const auto& [rc, v] : entries)
      os << rc.first << " " << rc.second << " " << v.str() << "\n";
    return os.str();
  }

  static SparseIntMatrix parse_text(const std::string& text) {
    std::istringstream is(text);
    long long r = 0, c = 0;
    if (!(is >> r >> c)) throw std::invalid_argument("matrix text: bad header");
    SparseIntMatrix m(r, c);
    long long i, j;
    std::string val;
    while (is >> i >> j >> val) m.set(i, j, Int(val));
    return m;
  }
};

}  // namespace cchom
