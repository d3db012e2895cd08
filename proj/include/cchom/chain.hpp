#pragma once

#include <functional>
#include <map>
#include <string>

#include "cchom/numeric.hpp"
#include "cchom/simplex.hpp"

namespace cchom {

// Finitely supported integer combination of simplex keys.
struct Chain {
  std::map<SimplexKey, Int> terms;

  static Chain zero() { return Chain{}; }
  static Chain single(SimplexKey k, Int c = 1) {
    Chain r;
    if (c != 0) r.terms.emplace(std::move(k), std::move(c));
    return r;
  }

  void add(const SimplexKey& k, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  Chain& operator+=(const Chain& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  Chain& operator-=(const Chain& o) {
    for (const auto& [k, c] : o.terms) add(k, -c);
    return *this;
  }
  Chain& scale(const Int& c) {
    if (c == 0) {
      terms.clear();
    } else {
      for (auto& [k, v] : terms) v *= c;
    }
    return *this;
  }
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(const Int& c, Chain a) { return a.scale(c); }

  bool is_zero() const { return terms.empty(); }
  // number of distinct basis keys with nonzero coefficient
  long long support_size() const { return (long long)terms.size(); }
  Int l1() const {
    Int s = 0;
    for (const auto& [k, c] : terms) s += abs_int(c);
    return s;
  }
  bool operator==(const Chain& o) const { return terms == o.terms; }

  std::string to_string(const std::function<std::string(const SimplexKey&)>& pr) const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms) {
      std::string cs = c.str();
      if (!s.empty() && cs[0] != '-') s += "+";
      if (cs == "1")
        ;
      else if (cs == "-1")
        s += "-";
      else
        s += cs + "*";
      s += pr(k);
    }
    return s;
  }
};

// Degree-homogeneous linear map given on basis keys, extended linearly.
struct ChainMap {
  int degree_shift = 0;
  std::function<Chain(const SimplexKey&)> on_basis;

  Chain operator()(const SimplexKey& k) const { return on_basis(k); }
  Chain operator()(const Chain& x) const {
    Chain r;
    for (const auto& [k, c] : x.terms) {
      Chain img = on_basis(k);
      img.scale(c);
      r += img;
    }
    return r;
  }

  static ChainMap zero(int shift = 0) {
    return {shift, [](const SimplexKey&) { return Chain::zero(); }};
  }
  static ChainMap identity() {
    return {0, [](const SimplexKey& k) { return Chain::single(k); }};
  }
  // (outer ∘ inner)
  static ChainMap compose(const ChainMap& outer, const ChainMap& inner) {
    auto f = outer, g = inner;
    return {outer.degree_shift + inner.degree_shift,
            [f, g](const SimplexKey& k) { return f(g(k)); }};
  }
  static ChainMap sum(const ChainMap& a, const ChainMap& b) {
    if (a.degree_shift != b.degree_shift)
      throw std::invalid_argument("chain map sum: mismatched degree shifts");
    auto f = a.on_basis, g = b.on_basis;
    return {a.degree_shift, [f, g](const SimplexKey& k) { return f(k) + g(k); }};
  }
  static ChainMap scaled(const ChainMap& a, Int c) {
    auto f = a.on_basis;
    return {a.degree_shift, [f, c](const SimplexKey& k) {
              Chain r = f(k);
              r.scale(c);
              return r;
            }};
  }
  static ChainMap negated(const ChainMap& a) { return scaled(a, -1); }

  // max image support size over a key set (the delta/diameter statistic)
  template <typename Keys>
  long long diameter_over(const Keys& keys) const {
    long long d = 0;
    for (const auto& k : keys) d = std::max(d, on_basis(k).support_size());
    return d;
  }
};

struct CheckResult {
  bool ok = true;
  std::string detail;  // first failing key and residual, printable
};

// Checks boundary_cod(H(x)) + H(boundary_dom(x)) == psi(x) - phi(x) on the
// given basis keys (homotopy orientation: H goes from phi to psi).
template <typename Keys>
inline CheckResult verify_chain_homotopy(
    const std::function<Chain(const SimplexKey&)>& boundary_dom,
    const std::function<Chain(const SimplexKey&)>& boundary_cod,
    const ChainMap& H, const ChainMap& phi, const ChainMap& psi, const Keys& keys,
    const std::function<std::string(const SimplexKey&)>& pr = nullptr) {
  ChainMap bd{-1, boundary_dom}, bc{-1, boundary_cod};
  for (const auto& k : keys) {
    Chain lhs = bc(H(k)) + H(bd(k));
    Chain rhs = psi(k) - phi(k);
    if (!(lhs == rhs)) {
      CheckResult r;
      r.ok = false;
      auto p = pr ? pr : [](const SimplexKey&) { return std::string("<key>"); };
      r.detail = "homotopy identity fails at " + p(k) + ": residual " +
                 (lhs - rhs).to_string(p);
      return r;
    }
  }
  return {};
}

// Checks boundary_cod(f(x)) == f(boundary_dom(x)) on the given basis keys.
template <typename Keys>
inline CheckResult verify_chain_map(
    const std::function<Chain(const SimplexKey&)>& boundary_dom,
    const std::function<Chain(const SimplexKey&)>& boundary_cod, const ChainMap& f,
    const Keys& keys,
    const std::function<std::string(const SimplexKey&)>& pr = nullptr) {
  ChainMap bd{-1, boundary_dom}, bc{-1, boundary_cod};
  for (const auto& k : keys) {
    Chain lhs = bc(f(k));
    Chain rhs = f(bd(k));
    if (!(lhs == rhs)) {
      CheckResult r;
      r.ok = false;
      auto p = pr ? pr : [](const SimplexKey&) { return std::string("<key>"); };
      r.detail = "chain-map identity fails at " + p(k) + ": residual " +
                 (lhs - rhs).to_string(p);
      return r;
    }
  }
  return {};
}

}  // namespace cchom
