#pragma once

#include <string>
#include <vector>

#include "cchom/chain.hpp"
#include "cchom/l1.hpp"
#include "cchom/linalg.hpp"
#include "cchom/simplicial.hpp"

namespace cchom {

// ---------------------------------------------------------------------------
// Explicit product-diagonal homotopy models.  Entry k is a degree-(k+1) chain
// x on Δᵏ×Δᵏ solving  ∂x = (−P_{k−1}∂ + ∇Δ − id)(top×top), the defining
// system for a natural homotopy ∇Δ ≃ id.
// ---------------------------------------------------------------------------

namespace detail {

struct RawTerm {
  int coeff;
  std::vector<long long> a, b;
};

inline Chain chain_from_raw(const std::vector<RawTerm>& raw) {
  Chain c;
  for (const auto& t : raw)
    c.add(SimplexKey::prod_key(SimplexKey::delta_key(t.a), SimplexKey::delta_key(t.b)),
          t.coeff);
  return c;
}

}  // namespace detail

// Shipped solutions for k = 0..4 (checked against the defining system by the
// test suite; entry 0 is the zero chain).
inline const Chain& builtin_model(int k) {
  static const std::vector<Chain> tables = [] {
    using detail::RawTerm;
    std::vector<Chain> t;
    t.push_back(Chain::zero());
    t.push_back(detail::chain_from_raw({{+1, {0, 0, 1}, {0, 1, 1}}}));
    t.push_back(detail::chain_from_raw({
        {-1, {0, 0, 0, 1}, {0, 1, 2, 2}},
        {+1, {0, 0, 1, 1}, {0, 1, 1, 2}},
        {+1, {0, 0, 1, 2}, {0, 2, 2, 2}},
        {-1, {0, 1, 1, 2}, {0, 1, 2, 2}},
    }));
    t.push_back(detail::chain_from_raw({
        {+1, {0, 0, 0, 0, 1}, {0, 1, 2, 3, 3}},
        {-1, {0, 0, 0, 1, 1}, {0, 1, 2, 2, 3}},
        {+1, {0, 0, 0, 1, 2}, {0, 2, 3, 3, 3}},
        {+1, {0, 0, 1, 1, 1}, {0, 1, 1, 2, 3}},
        {-1, {0, 0, 1, 1, 2}, {0, 2, 2, 3, 3}},
        {+1, {0, 0, 1, 2, 2}, {0, 2, 2, 2, 3}},
        {+1, {0, 0, 1, 2, 3}, {0, 3, 3, 3, 3}},
        {+1, {0, 1, 1, 1, 2}, {0, 1, 2, 3, 3}},
        {-1, {0, 1, 1, 2, 2}, {0, 1, 2, 2, 3}},
        {-1, {0, 1, 1, 2, 3}, {0, 1, 3, 3, 3}},
        {+1, {0, 1, 2, 2, 3}, {0, 1, 2, 3, 3}},
    }));
    t.push_back(detail::chain_from_raw({
        {-1, {0, 0, 0, 0, 0, 1}, {0, 1, 2, 3, 4, 4}},
        {+1, {0, 0, 0, 0, 1, 1}, {0, 1, 2, 3, 3, 4}},
        {+1, {0, 0, 0, 0, 1, 2}, {0, 2, 3, 4, 4, 4}},
        {-1, {0, 0, 0, 1, 1, 1}, {0, 1, 2, 2, 3, 4}},
        {-1, {0, 0, 0, 1, 1, 2}, {0, 2, 3, 3, 4, 4}},
        {+1, {0, 0, 0, 1, 2, 2}, {0, 2, 3, 3, 3, 4}},
        {-1, {0, 0, 0, 1, 2, 3}, {0, 3, 4, 4, 4, 4}},
        {+1, {0, 0, 1, 1, 1, 1}, {0, 1, 1, 2, 3, 4}},
        {+1, {0, 0, 1, 1, 1, 2}, {0, 2, 2, 3, 4, 4}},
        {-1, {0, 0, 1, 1, 2, 2}, {0, 2, 2, 3, 3, 4}},
        {+1, {0, 0, 1, 1, 2, 3}, {0, 3, 3, 4, 4, 4}},
        {+1, {0, 0, 1, 2, 2, 2}, {0, 2, 2, 2, 3, 4}},
        {-1, {0, 0, 1, 2, 2, 3}, {0, 3, 3, 3, 4, 4}},
        {+1, {0, 0, 1, 2, 3, 3}, {0, 3, 3, 3, 3, 4}},
        {+1, {0, 0, 1, 2, 3, 4}, {0, 4, 4, 4, 4, 4}},
        {-1, {0, 1, 1, 1, 1, 2}, {0, 1, 2, 3, 4, 4}},
        {+1, {0, 1, 1, 1, 2, 2}, {0, 1, 2, 3, 3, 4}},
        {-1, {0, 1, 1, 1, 2, 3}, {0, 1, 3, 4, 4, 4}},
        {-1, {0, 1, 1, 2, 2, 2}, {0, 1, 2, 2, 3, 4}},
        {+1, {0, 1, 1, 2, 2, 3}, {0, 1, 3, 3, 4, 4}},
        {-1, {0, 1, 1, 2, 3, 3}, {0, 1, 3, 3, 3, 4}},
        {-1, {0, 1, 1, 2, 3, 4}, {0, 1, 4, 4, 4, 4}},
        {-1, {0, 1, 2, 2, 2, 3}, {0, 1, 2, 3, 4, 4}},
        {+1, {0, 1, 2, 2, 3, 3}, {0, 1, 2, 3, 3, 4}},
        {+1, {0, 1, 2, 2, 3, 4}, {0, 1, 2, 4, 4, 4}},
        {-1, {0, 1, 2, 3, 3, 4}, {0, 1, 2, 3, 4, 4}},
    }));
    return t;
  }();
  if (k < 0 || k > 4) throw std::invalid_argument("builtin model defined for k = 0..4");
  return tables[(size_t)k];
}

inline int builtin_model_max_k() { return 4; }

// Model table: entry[k] solves the dimension-k system; provenance names how
// each entry was obtained.
struct EzModel {
  std::vector<Chain> entry;
  std::vector<std::string> provenance;
  int max_k() const { return (int)entry.size() - 1; }
};

inline EzModel builtin_table(int up_to_k) {
  EzModel m;
  for (int k = 0; k <= up_to_k; ++k) {
    m.entry.push_back(builtin_model(k));
    m.provenance.push_back("model-table");
  }
  return m;
}

// max over i <= k of the entry diameters
inline long long delta_ez(const EzModel& m, int k) {
  if (k > m.max_k()) throw std::invalid_argument("delta_ez: table not defined that far");
  long long d = 0;
  for (int i = 0; i <= k; ++i) d = std::max(d, m.entry[(size_t)i].support_size());
  return d;
}

// ---------------------------------------------------------------------------
// The defining system and its solvers.
// ---------------------------------------------------------------------------

// naturality extension: push a model entry through the classifying maps of a
// same-degree simplex pair
inline Chain ez_apply(const Chain& table_entry, const SSet& X, const SSet& Y,
                      const SimplexKey& prod_key) {
  Chain r;
  for (const auto& [k, c] : table_entry.terms) {
    r.add(SimplexKey::prod_key(apply_vertex_map(X, *prod_key.left, k.left->verts),
                               apply_vertex_map(Y, *prod_key.right, k.right->verts)),
          c);
  }
  return r;
}

// the homotopy as a chain map on product keys (degree +1)
inline ChainMap ez_homotopy(const EzModel& model, SSetPtr X, SSetPtr Y) {
  auto m = std::make_shared<EzModel>(model);
  return {+1, [m, X, Y](const SimplexKey& k) {
            int n = k.degree();
            if (n > m->max_k())
              throw std::invalid_argument("product homotopy: degree beyond model table");
            if (m->entry[(size_t)n].is_zero()) return Chain::zero();
            return ez_apply(m->entry[(size_t)n], *X, *Y, k);
          }};
}

// shuffle∘diagonal on a product chain
inline Chain nabla_delta(const SSet& A, const SSet& B, const SimplexKey& prod_key) {
  Chain r;
  for (const auto& [tk, c] : aw_on(A, B, prod_key).terms) {
    Chain s = shuffle_on(A, B, tk);
    s.scale(c);
    r += s;
  }
  return r;
}

// right-hand side (−P_{k−1}∂ + ∇Δ − id)(top×top); always a cycle when the
// lower entry solves its own system
inline Chain ez_system_rhs(int k, const Chain& lower_entry) {
  StandardSimplexSet D(k);
  SimplexKey tp = SimplexKey::prod_key(D.top(), D.top());
  Chain b = nabla_delta(D, D, tp);
  b.add(tp, -1);
  if (k >= 1 && !lower_entry.is_zero()) {
    for (const auto& [fk, c] : moore_boundary(ProductSet(std::make_shared<StandardSimplexSet>(k),
                                                         std::make_shared<StandardSimplexSet>(k)),
                                              tp)
                                   .terms) {
      Chain img = ez_apply(lower_entry, D, D, fk);
      img.scale(c);
      b -= img;
    }
  }
  return b;
}

// prepend the apex vertex to both factors of every term
inline Chain cone_of(const Chain& c) {
  Chain r;
  for (const auto& [k, v] : c.terms) {
    std::vector<long long> a = k.left->verts, b = k.right->verts;
    a.insert(a.begin(), 0);
    b.insert(b.begin(), 0);
    r.add(SimplexKey::prod_key(SimplexKey::delta_key(std::move(a)),
                               SimplexKey::delta_key(std::move(b))),
          v);
  }
  return r;
}

// does the given entry solve the dimension-k system over the given lower entry?
inline CheckResult verify_model_entry(int k, const Chain& entry_k, const Chain& lower_entry) {
  auto Dk = std::make_shared<StandardSimplexSet>(k);
  ProductSet P(Dk, Dk);
  Chain lhs;
  for (const auto& [key, c] : entry_k.terms) {
    Chain db = moore_boundary(P, key);
    db.scale(c);
    lhs += db;
  }
  Chain rhs = ez_system_rhs(k, lower_entry);
  if (lhs == rhs) return {};
  CheckResult r;
  r.ok = false;
  auto pr = [&P](const SimplexKey& key) { return P.print(key); };
  r.detail = "model entry " + std::to_string(k) + " fails its system: residual " +
             (lhs - rhs).to_string(pr);
  return r;
}

// pure cone table: every entry is the cone of its own system's right side
inline EzModel cone_table(int up_to_k) {
  EzModel m;
  m.entry.push_back(Chain::zero());
  m.provenance.push_back("cone-construction");
  for (int k = 1; k <= up_to_k; ++k) {
    Chain b = ez_system_rhs(k, m.entry.back());
    auto Dk = std::make_shared<StandardSimplexSet>(k);
    ProductSet P(Dk, Dk);
    Chain db;
    for (const auto& [key, c] : b.terms) {
      Chain t = moore_boundary(P, key);
      t.scale(c);
      db += t;
    }
    if (!db.is_zero())
      throw std::logic_error("cone solver: right side is not a cycle (upstream bug)");
    m.entry.push_back(cone_of(b));
    m.provenance.push_back("cone-construction");
  }
  return m;
}

inline Chain cone_solve(int k) { return cone_table(k).entry[(size_t)k]; }

// ---------------------------------------------------------------------------
// Matrix route: canonical basis order is the sorted key order per degree.
// ---------------------------------------------------------------------------
struct ProductBasis {
  std::shared_ptr<const ProductSet> set;
  std::vector<std::vector<SimplexKey>> dim;  // sorted keys per degree

  static ProductBasis of_simplex_square(int k, int max_dim) {
    ProductBasis b;
    auto D = std::make_shared<StandardSimplexSet>(k);
    b.set = std::make_shared<ProductSet>(D, D);
    for (int n = 0; n <= max_dim; ++n) {
      auto keys = b.set->list(n);
      std::sort(keys.begin(), keys.end());
      b.dim.push_back(std::move(keys));
    }
    return b;
  }
  long long index_of(int n, const SimplexKey& key) const {
    const auto& v = dim[(size_t)n];
    auto it = std::lower_bound(v.begin(), v.end(), key);
    if (it == v.end() || !(*it == key)) throw std::logic_error("basis: key not found");
    return (long long)(it - v.begin());
  }
  IntVector vector_of(int n, const Chain& c) const {
    IntVector x((long long)dim[(size_t)n].size());
    for (const auto& [k, v] : c.terms) x.set(index_of(n, k), v);
    return x;
  }
  Chain chain_of(int n, const IntVector& x) const {
    Chain c;
    for (const auto& [i, v] : x.entries) c.add(dim[(size_t)n][(size_t)i], v);
    return c;
  }
  SparseIntMatrix boundary(int n) const {  // C_n -> C_{n-1}
    SparseIntMatrix M((long long)dim[(size_t)n - 1].size(), (long long)dim[(size_t)n].size());
    for (size_t j = 0; j < dim[(size_t)n].size(); ++j)
      for (const auto& [fk, c] : moore_boundary(*set, dim[(size_t)n][j]).terms)
        M.add(index_of(n - 1, fk), (long long)j, c);
    return M;
  }
};

// H_i of the full simplex-square chain complex vanishes for 1 <= i <= k+1:
// integer ranks must tile each slice and the higher boundary must have
// unit invariant factors (no torsion).
inline bool simplex_square_acyclic(int k, std::string* detail = nullptr) {
  ProductBasis basis = ProductBasis::of_simplex_square(k, k + 2);
  std::vector<SparseIntMatrix> bd(1);  // bd[n]: C_n -> C_{n-1}
  std::vector<long long> rk(1, 0);
  for (int n = 1; n <= k + 2; ++n) {
    bd.push_back(basis.boundary(n));
    rk.push_back(rank(bd.back()));
  }
  for (int i = 1; i <= k + 1; ++i) {
    long long ci = (long long)basis.dim[(size_t)i].size();
    if (rk[(size_t)i] + rk[(size_t)i + 1] != ci) {
      if (detail)
        *detail = "slice " + std::to_string(i) + ": ranks " + std::to_string(rk[(size_t)i]) +
                  "+" + std::to_string(rk[(size_t)i + 1]) + " != dim " + std::to_string(ci);
      return false;
    }
    for (const Int& f : invariant_factors(bd[(size_t)i + 1]))
      if (f != 1 && f != -1) {
        if (detail) *detail = "slice " + std::to_string(i) + ": torsion factor " + f.str();
        return false;
      }
  }
  return true;
}

enum class EzMethod { builtin, cone, linear, reduce };

// Solve the canonical dimension-k system (lower entry = shipped table).
// linear: exact integer solve on the degreewise boundary matrix.
// reduce: L1-reduce the cone particular solution over the solution lattice,
//         with the next boundary's columns as extra kernel generators.
inline Chain solve_model(int k, EzMethod method, long long l1_budget = 200000) {
  switch (method) {
    case EzMethod::builtin:
      return builtin_model(k);
    case EzMethod::cone:
      return cone_solve(k);
    default:
      break;
  }
  if (k == 0) return Chain::zero();
  Chain lower = k - 1 <= builtin_model_max_k() ? builtin_model(k - 1) : cone_solve(k - 1);
  Chain b = ez_system_rhs(k, lower);
  ProductBasis basis = ProductBasis::of_simplex_square(k, k + 2);
  SparseIntMatrix A = basis.boundary(k + 1);
  IntVector bv = basis.vector_of(k, b);
  if (method == EzMethod::linear) {
    SolveResult res = solve_integer(A, bv);
    if (std::holds_alternative<NoIntegerSolution>(res))
      throw std::logic_error("integer solve failed: " +
                             std::get<NoIntegerSolution>(res).to_string());
    return basis.chain_of(k + 1, std::get<IntVector>(res));
  }
  // reduce
  IntVector x0 = basis.vector_of(k + 1, cone_of(b));
  SparseIntMatrix B2 = basis.boundary(k + 2);
  std::vector<IntVector> extras;
  for (long long j = 0; j < B2.cols; ++j) {
    IntVector col(B2.rows);
    for (const auto& [rc, v] : B2.entries)
      if (rc.second == j) col.set(rc.first, v);
    if (!col.is_zero()) extras.push_back(std::move(col));
  }
  L1Result red = reduce_l1(A, bv, x0, l1_budget, extras);
  return basis.chain_of(k + 1, red.x);
}

}  // namespace cchom
