#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cchom/chain.hpp"
#include "cchom/linalg.hpp"
#include "cchom/simplex.hpp"

namespace cchom {

// ---------------------------------------------------------------------------
// Simplicial-set handles.  Keys carry the simplices; handles implement the
// structure maps.  Indices: face(k, i) for 0 <= i <= deg, degeneracy(k, i)
// for 0 <= i <= deg; in_si_image(k, i) asks whether k = s_i(something),
// 0 <= i <= deg-1.
// ---------------------------------------------------------------------------
class SSet {
 public:
  virtual ~SSet() = default;
  virtual std::string name() const = 0;
  virtual SimplexKey face(const SimplexKey& k, int i) const = 0;
  virtual SimplexKey degeneracy(const SimplexKey& k, int i) const = 0;
  virtual bool in_si_image(const SimplexKey& k, int i) const = 0;
  bool degenerate(const SimplexKey& k) const {
    for (int i = 0; i + 1 <= k.degree(); ++i)
      if (in_si_image(k, i)) return true;
    return false;
  }
  virtual std::vector<SimplexKey> list(int dim) const = 0;
  std::vector<SimplexKey> list_nondegenerate(int dim) const {
    std::vector<SimplexKey> r;
    for (auto& k : list(dim))
      if (!degenerate(k)) r.push_back(std::move(k));
    return r;
  }
  virtual SimplexKey sample(int dim, Rng& rng) const {
    auto all = list(dim);
    return all[(size_t)rng.uniform(0, (long long)all.size() - 1)];
  }
  virtual std::string print(const SimplexKey& k) const = 0;
  virtual SimplexKey parse(const std::string& s) const = 0;
  std::function<std::string(const SimplexKey&)> printer() const {
    return [this](const SimplexKey& k) { return print(k); };
  }
};
using SSetPtr = std::shared_ptr<const SSet>;

// L1 norm of the image of a chain in the normalized complex: degenerate keys
// project to zero, so only nondegenerate keys contribute.
inline Int cellular_l1(const SSet& X, const Chain& c) {
  Int s = 0;
  for (const auto& [k, v] : c.terms)
    if (!X.degenerate(k)) s += abs_int(v);
  return s;
}

namespace detail {

// split "x,y,z" at top-level commas, respecting (), [], <>
inline std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[' || ch == '<') ++depth;
    if (ch == ')' || ch == ']' || ch == '>') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline std::string expect_wrapped(const std::string& s, const std::string& head, char close) {
  if (s.rfind(head, 0) != 0 || s.empty() || s.back() != close)
    throw std::invalid_argument("key parse: expected " + head + "..." + close + " got " + s);
  return s.substr(head.size(), s.size() - head.size() - 1);
}

// all weakly increasing length-len sequences over values[0..m-1]
inline void gen_weakly_increasing(const std::vector<long long>& values, int len,
                                  std::vector<long long>& cur,
                                  std::vector<std::vector<long long>>& out, size_t from) {
  if ((int)cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (size_t i = from; i < values.size(); ++i) {
    cur.push_back(values[i]);
    gen_weakly_increasing(values, len, cur, out, i);
    cur.pop_back();
  }
}

}  // namespace detail

// ------------------------- standard simplex --------------------------------
// Delta^k: n-simplices are weakly increasing (n+1)-lists over {0,...,k}.
class StandardSimplexSet final : public SSet {
 public:
  explicit StandardSimplexSet(int k) : k_(k) {
    if (k < 0) throw std::invalid_argument("simplex dimension must be >= 0");
  }
  std::string name() const override { return "delta^" + std::to_string(k_); }
  SimplexKey face(const SimplexKey& k, int i) const override {
    std::vector<long long> v = k.verts;
    v.erase(v.begin() + i);
    return SimplexKey::delta_key(std::move(v));
  }
  SimplexKey degeneracy(const SimplexKey& k, int i) const override {
    std::vector<long long> v = k.verts;
    v.insert(v.begin() + i, v[(size_t)i]);
    return SimplexKey::delta_key(std::move(v));
  }
  bool in_si_image(const SimplexKey& k, int i) const override {
    return k.verts[(size_t)i] == k.verts[(size_t)i + 1];
  }
  std::vector<SimplexKey> list(int dim) const override {
    std::vector<long long> vals(k_ + 1);
    for (int i = 0; i <= k_; ++i) vals[(size_t)i] = i;
    std::vector<std::vector<long long>> lists;
    std::vector<long long> cur;
    detail::gen_weakly_increasing(vals, dim + 1, cur, lists, 0);
    std::vector<SimplexKey> r;
    for (auto& l : lists) r.push_back(SimplexKey::delta_key(std::move(l)));
    return r;
  }
  std::string print(const SimplexKey& k) const override {
    std::string s = "d:[";
    for (size_t i = 0; i < k.verts.size(); ++i)
      s += (i ? "," : "") + std::to_string(k.verts[i]);
    return s + "]";
  }
  SimplexKey parse(const std::string& s) const override {
    std::string body = detail::expect_wrapped(s, "d:[", ']');
    std::vector<long long> v;
    for (const auto& tok : detail::split_top(body)) v.push_back(std::stoll(tok));
    return SimplexKey::delta_key(std::move(v));
  }
  SimplexKey top() const {
    std::vector<long long> v(k_ + 1);
    for (int i = 0; i <= k_; ++i) v[(size_t)i] = i;
    return SimplexKey::delta_key(std::move(v));
  }
  int dim() const { return k_; }

 private:
  int k_;
};

// ------------------------- finite ordered complex ---------------------------
// Simplicial set generated by a finite downward-closed family of faces on
// ordered vertices: n-simplices are weakly increasing lists whose support is
// a face.
class FiniteComplexSet final : public SSet {
 public:
  explicit FiniteComplexSet(const std::vector<std::vector<long long>>& facets) {
    for (auto f : facets) {
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      add_downward(f);
    }
    for (const auto& f : faces_)
      for (long long v : f) verts_.insert(v);
  }
  std::string name() const override { return "complex"; }
  SimplexKey face(const SimplexKey& k, int i) const override {
    std::vector<long long> v = k.verts;
    v.erase(v.begin() + i);
    return SimplexKey::delta_key(std::move(v));
  }
  SimplexKey degeneracy(const SimplexKey& k, int i) const override {
    std::vector<long long> v = k.verts;
    v.insert(v.begin() + i, v[(size_t)i]);
    return SimplexKey::delta_key(std::move(v));
  }
  bool in_si_image(const SimplexKey& k, int i) const override {
    return k.verts[(size_t)i] == k.verts[(size_t)i + 1];
  }
  bool valid(const SimplexKey& k) const {
    std::vector<long long> s = k.verts;
    std::sort(s.begin(), s.end());
    if (!std::is_sorted(k.verts.begin(), k.verts.end())) return false;
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return faces_.count(s) > 0;
  }
  std::vector<SimplexKey> list(int dim) const override {
    std::vector<long long> vals(verts_.begin(), verts_.end());
    std::vector<std::vector<long long>> lists;
    std::vector<long long> cur;
    detail::gen_weakly_increasing(vals, dim + 1, cur, lists, 0);
    std::vector<SimplexKey> r;
    for (auto& l : lists) {
      std::vector<long long> supp = l;
      supp.erase(std::unique(supp.begin(), supp.end()), supp.end());
      if (faces_.count(supp)) r.push_back(SimplexKey::delta_key(std::move(l)));
    }
    return r;
  }
  std::string print(const SimplexKey& k) const override {
    std::string s = "d:[";
    for (size_t i = 0; i < k.verts.size(); ++i)
      s += (i ? "," : "") + std::to_string(k.verts[i]);
    return s + "]";
  }
  SimplexKey parse(const std::string& s) const override {
    std::string body = detail::expect_wrapped(s, "d:[", ']');
    std::vector<long long> v;
    for (const auto& tok : detail::split_top(body)) v.push_back(std::stoll(tok));
    return SimplexKey::delta_key(std::move(v));
  }
  const std::set<std::vector<long long>>& faces() const { return faces_; }
  const std::set<long long>& vertices() const { return verts_; }

 private:
  void add_downward(const std::vector<long long>& f) {
    if (f.empty() || !faces_.insert(f).second) return;
    for (size_t i = 0; i < f.size(); ++i) {
      std::vector<long long> g = f;
      g.erase(g.begin() + (long long)i);
      add_downward(g);
    }
  }
  std::set<std::vector<long long>> faces_;
  std::set<long long> verts_;
};

// ------------------------- nerve of a group --------------------------------
// One 0-simplex; n-simplices are n-tuples [g1,...,gn].  d_0 drops the front,
// d_n drops the back, inner d_i multiplies entries i-1 and i (0-indexed);
// s_i inserts the identity at slot i.
class NerveSet final : public SSet {
 public:
  explicit NerveSet(GroupPtr g) : g_(std::move(g)) {}
  std::string name() const override { return "nerve(" + g_->name() + ")"; }
  SimplexKey face(const SimplexKey& k, int i) const override {
    int n = k.degree();
    std::vector<GroupValue> w = k.entries;
    if (i == 0) {
      w.erase(w.begin());
    } else if (i == n) {
      w.pop_back();
    } else {
      w[(size_t)i - 1] = g_->mul(w[(size_t)i - 1], w[(size_t)i]);
      w.erase(w.begin() + i);
    }
    return SimplexKey::bar_key(std::move(w));
  }
  SimplexKey degeneracy(const SimplexKey& k, int i) const override {
    std::vector<GroupValue> w = k.entries;
    w.insert(w.begin() + i, g_->identity());
    return SimplexKey::bar_key(std::move(w));
  }
  bool in_si_image(const SimplexKey& k, int i) const override {
    return g_->is_identity(k.entries[(size_t)i]);
  }
  std::vector<SimplexKey> list(int dim) const override {
    if (!g_->finite()) throw std::logic_error("nerve of infinite group: cannot list");
    std::vector<GroupValue> els = g_->elements();
    Int count = 1;
    for (int i = 0; i < dim; ++i) {
      count *= (Int)els.size();
      if (count > 2000000) throw std::logic_error("nerve listing too large");
    }
    std::vector<SimplexKey> r;
    std::vector<GroupValue> cur;
    std::function<void()> rec = [&]() {
      if ((int)cur.size() == dim) {
        r.push_back(SimplexKey::bar_key(cur));
        return;
      }
      for (const auto& e : els) {
        cur.push_back(e);
        rec();
        cur.pop_back();
      }
    };
    rec();
    return r;
  }
  SimplexKey sample(int dim, Rng& rng) const override {
    std::vector<GroupValue> w;
    for (int i = 0; i < dim; ++i) w.push_back(g_->sample(rng));
    return SimplexKey::bar_key(std::move(w));
  }
  std::string print(const SimplexKey& k) const override {
    std::string s = "b:[";
    for (size_t i = 0; i < k.entries.size(); ++i)
      s += (i ? "," : "") + g_->print(k.entries[i]);
    return s + "]";
  }
  SimplexKey parse(const std::string& s) const override {
    std::string body = detail::expect_wrapped(s, "b:[", ']');
    std::vector<GroupValue> w;
    if (!body.empty())
      for (const auto& tok : detail::split_top(body)) w.push_back(g_->parse(tok));
    return SimplexKey::bar_key(std::move(w));
  }
  const GroupPtr& group() const { return g_; }

 private:
  GroupPtr g_;
};

// ------------------------- binary product -----------------------------------
class ProductSet final : public SSet {
 public:
  ProductSet(SSetPtr a, SSetPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override { return "prod(" + a_->name() + "," + b_->name() + ")"; }
  SimplexKey face(const SimplexKey& k, int i) const override {
    return SimplexKey::prod_key(a_->face(*k.left, i), b_->face(*k.right, i));
  }
  SimplexKey degeneracy(const SimplexKey& k, int i) const override {
    return SimplexKey::prod_key(a_->degeneracy(*k.left, i), b_->degeneracy(*k.right, i));
  }
  bool in_si_image(const SimplexKey& k, int i) const override {
    return a_->in_si_image(*k.left, i) && b_->in_si_image(*k.right, i);
  }
  std::vector<SimplexKey> list(int dim) const override {
    std::vector<SimplexKey> r;
    for (const auto& x : a_->list(dim))
      for (const auto& y : b_->list(dim))
        r.push_back(SimplexKey::prod_key(x, y));
    return r;
  }
  SimplexKey sample(int dim, Rng& rng) const override {
    return SimplexKey::prod_key(a_->sample(dim, rng), b_->sample(dim, rng));
  }
  std::string print(const SimplexKey& k) const override {
    return "p(" + a_->print(*k.left) + "," + b_->print(*k.right) + ")";
  }
  SimplexKey parse(const std::string& s) const override {
    std::string body = detail::expect_wrapped(s, "p(", ')');
    auto parts = detail::split_top(body);
    if (parts.size() != 2) throw std::invalid_argument("product key parse: need two parts");
    return SimplexKey::prod_key(a_->parse(parts[0]), b_->parse(parts[1]));
  }
  const SSetPtr& left() const { return a_; }
  const SSetPtr& right() const { return b_; }

 private:
  SSetPtr a_, b_;
};

// ---------------------------------------------------------------------------
// Structure-map evaluation on chains.
// ---------------------------------------------------------------------------

// alternating face sum; zero in degree 0
inline Chain moore_boundary(const SSet& X, const SimplexKey& k) {
  Chain r;
  int n = k.degree();
  if (n == 0) return r;
  for (int i = 0; i <= n; ++i) r.add(X.face(k, i), (i % 2 == 0) ? 1 : -1);
  return r;
}

// evaluate a weakly increasing vertex map a: [len(a)-1] -> [deg s] on s by
// factoring into faces (largest missing value first) and degeneracies
// (smallest duplicated position)
inline SimplexKey apply_vertex_map(const SSet& X, SimplexKey s, std::vector<long long> a) {
  if (a.empty()) throw std::invalid_argument("vertex map must be nonempty");
  for (size_t i = 0; i + 1 < a.size(); ++i)
    if (a[i] > a[i + 1]) throw std::invalid_argument("vertex map must be weakly increasing");
  while (true) {
    int m = s.degree();
    std::vector<char> hit((size_t)m + 1, 0);
    for (long long v : a) {
      if (v < 0 || v > m) throw std::invalid_argument("vertex map value out of range");
      hit[(size_t)v] = 1;
    }
    int miss = -1;
    for (int v = m; v >= 0; --v)
      if (!hit[(size_t)v]) {
        miss = v;
        break;
      }
    if (miss >= 0) {
      s = X.face(s, miss);
      for (auto& v : a)
        if (v > miss) --v;
      continue;
    }
    int p = -1;
    for (size_t i = 0; i + 1 < a.size(); ++i)
      if (a[i] == a[i + 1]) {
        p = (int)i;
        break;
      }
    if (p < 0) return s;  // bijective weakly increasing = identity
    std::vector<long long> a2 = a;
    a2.erase(a2.begin() + p + 1);
    return X.degeneracy(apply_vertex_map(X, std::move(s), std::move(a2)), p);
  }
}

// diagonal approximation (front face ⊗ back face): prod key -> tensor chain
inline Chain aw_on(const SSet& A, const SSet& B, const SimplexKey& k) {
  int n = k.degree();
  Chain r;
  for (int i = 0; i <= n; ++i) {
    SimplexKey front = *k.left;
    for (int j = n; j >= i + 1; --j) front = A.face(front, j);
    SimplexKey back = *k.right;
    for (int j = 0; j < i; ++j) back = B.face(back, 0);
    r.add(SimplexKey::tensor_key(std::move(front), std::move(back)), 1);
  }
  return r;
}

// shuffle product: tensor key (degrees p,q) -> prod chain with C(p+q,p) terms
inline Chain shuffle_on(const SSet& A, const SSet& B, const SimplexKey& k) {
  int p = k.left->degree(), q = k.right->degree();
  Chain r;
  std::vector<int> mu;  // ascending p-subset of {0..p+q-1}; complement drives A
  std::function<void(int)> rec = [&](int from) {
    if ((int)mu.size() == p) {
      std::vector<int> nu;
      std::vector<char> used((size_t)(p + q), 0);
      for (int x : mu) used[(size_t)x] = 1;
      for (int x = 0; x < p + q; ++x)
        if (!used[(size_t)x]) nu.push_back(x);
      long long inv = 0;
      for (int mi : mu)
        for (int nj : nu)
          if (mi > nj) ++inv;
      SimplexKey sa = *k.left;
      for (int j : nu) sa = A.degeneracy(sa, j);
      SimplexKey sb = *k.right;
      for (int j : mu) sb = B.degeneracy(sb, j);
      r.add(SimplexKey::prod_key(std::move(sa), std::move(sb)), (inv % 2 == 0) ? 1 : -1);
      return;
    }
    for (int x = from; x <= p + q - (p - (int)mu.size()); ++x) {
      mu.push_back(x);
      rec(x + 1);
      mu.pop_back();
    }
  };
  rec(0);
  return r;
}

// interior part of the diagonal approximation: drops the two extreme terms.
// In degree 0 all three coincide, so the result is minus the diagonal term.
inline Chain lambda_on(const SSet& A, const SSet& B, const SimplexKey& k) {
  int n = k.degree();
  Chain r = aw_on(A, B, k);
  SimplexKey front0 = *k.left;
  for (int j = n; j >= 1; --j) front0 = A.face(front0, j);
  SimplexKey backn = *k.right;
  for (int j = 0; j < n; ++j) backn = B.face(backn, 0);
  r.add(SimplexKey::tensor_key(front0, *k.right), -1);
  r.add(SimplexKey::tensor_key(*k.left, backn), -1);
  return r;
}

// ---------------------------------------------------------------------------
// Chain-complex views: a simplicial set's unnormalized complex, or the tensor
// product of two such.
// ---------------------------------------------------------------------------
struct Complex {
  enum class Kind { simplicial, tensor };
  Kind kind = Kind::simplicial;
  SSetPtr space;     // simplicial
  SSetPtr fa, fb;    // tensor factors

  static Complex of(SSetPtr x) {
    Complex c;
    c.kind = Kind::simplicial;
    c.space = std::move(x);
    return c;
  }
  static Complex tensor_of(SSetPtr a, SSetPtr b) {
    Complex c;
    c.kind = Kind::tensor;
    c.fa = std::move(a);
    c.fb = std::move(b);
    return c;
  }

  Chain boundary_key(const SimplexKey& k) const {
    if (kind == Kind::simplicial) return moore_boundary(*space, k);
    // Koszul rule on t(a,b)
    Chain r;
    int da = k.left->degree();
    for (const auto& [fk, c] : moore_boundary(*fa, *k.left).terms)
      r.add(SimplexKey::tensor_key(fk, *k.right), c);
    Int sign = (da % 2 == 0) ? 1 : -1;
    for (const auto& [fk, c] : moore_boundary(*fb, *k.right).terms)
      r.add(SimplexKey::tensor_key(*k.left, fk), sign * c);
    return r;
  }
  std::function<Chain(const SimplexKey&)> boundary() const {
    Complex self = *this;
    return [self](const SimplexKey& k) { return self.boundary_key(k); };
  }
  ChainMap boundary_map() const { return {-1, boundary()}; }

  bool degenerate(const SimplexKey& k) const {
    if (kind == Kind::simplicial) return space->degenerate(k);
    return fa->degenerate(*k.left) || fb->degenerate(*k.right);
  }
  // chain projection onto the normalized complex: kills degenerate keys
  ChainMap normalized_projection() const {
    Complex self = *this;
    return {0, [self](const SimplexKey& k) {
              return self.degenerate(k) ? Chain::zero() : Chain::single(k);
            }};
  }

  std::string print(const SimplexKey& k) const {
    if (kind == Kind::simplicial) return space->print(k);
    return "t(" + fa->print(*k.left) + "," + fb->print(*k.right) + ")";
  }
  std::function<std::string(const SimplexKey&)> printer() const {
    Complex self = *this;
    return [self](const SimplexKey& k) { return self.print(k); };
  }
  SimplexKey parse(const std::string& s) const {
    if (kind == Kind::simplicial) return space->parse(s);
    std::string body = detail::expect_wrapped(s, "t(", ')');
    auto parts = detail::split_top(body);
    if (parts.size() != 2) throw std::invalid_argument("tensor key parse: need two parts");
    return SimplexKey::tensor_key(fa->parse(parts[0]), fb->parse(parts[1]));
  }
  std::vector<SimplexKey> list(int dim) const {
    if (kind == Kind::simplicial) return space->list(dim);
    std::vector<SimplexKey> r;
    for (int da = 0; da <= dim; ++da)
      for (const auto& x : fa->list(da))
        for (const auto& y : fb->list(dim - da))
          r.push_back(SimplexKey::tensor_key(x, y));
    return r;
  }
};

// ---------------------------------------------------------------------------
// Homology of a finite simplicial set via the normalized complex.
// ---------------------------------------------------------------------------
struct HomologyResult {
  std::vector<long long> betti;             // per dimension 0..max_dim
  std::vector<std::vector<Int>> torsion;    // invariant factors > 1 per dim
};

inline SparseIntMatrix boundary_matrix(const SSet& X,
                                       const std::vector<SimplexKey>& lower,
                                       const std::vector<SimplexKey>& upper) {
  std::map<SimplexKey, long long> index;
  for (size_t i = 0; i < lower.size(); ++i) index.emplace(lower[i], (long long)i);
  SparseIntMatrix M((long long)lower.size(), (long long)upper.size());
  for (size_t j = 0; j < upper.size(); ++j) {
    for (const auto& [k, c] : moore_boundary(X, upper[j]).terms) {
      if (X.degenerate(k)) continue;  // normalized complex
      M.add(index.at(k), (long long)j, c);
    }
  }
  return M;
}

inline HomologyResult homology(const SSet& X, int max_dim) {
  std::vector<std::vector<SimplexKey>> basis((size_t)max_dim + 2);
  for (int n = 0; n <= max_dim + 1; ++n) basis[(size_t)n] = X.list_nondegenerate(n);
  std::vector<long long> rk((size_t)max_dim + 2, 0);
  std::vector<std::vector<Int>> invf((size_t)max_dim + 2);
  for (int n = 1; n <= max_dim + 1; ++n) {
    SparseIntMatrix M = boundary_matrix(X, basis[(size_t)n - 1], basis[(size_t)n]);
    invf[(size_t)n] = invariant_factors(M);
    rk[(size_t)n] = (long long)invf[(size_t)n].size();
  }
  HomologyResult res;
  for (int n = 0; n <= max_dim; ++n) {
    res.betti.push_back((long long)basis[(size_t)n].size() - rk[(size_t)n] - rk[(size_t)n + 1]);
    std::vector<Int> tors;
    for (const auto& d : invf[(size_t)n + 1])
      if (d != 1) tors.push_back(d);
    res.torsion.push_back(std::move(tors));
  }
  return res;
}

}  // namespace cchom
