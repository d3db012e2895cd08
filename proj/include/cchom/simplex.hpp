#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cchom/group.hpp"

namespace cchom {

// Basis element of a chain group.  Four kinds:
//   delta  d:[v0,...,vn]   vertex list, weakly increasing for simplex models
//   bar    b:[g1,...,gn]   group-element list (empty = the 0-simplex)
//   prod   p(key,key)      same-degree pair (product simplicial set)
//   tensor t(key,key)      any-degree pair (tensor of chain complexes)
struct SimplexKey {
  enum class Kind { delta, bar, prod, tensor };
  Kind kind = Kind::delta;
  std::vector<long long> verts;                 // delta
  std::vector<GroupValue> entries;              // bar
  std::shared_ptr<const SimplexKey> left, right; // prod / tensor

  static SimplexKey delta_key(std::vector<long long> v) {
    SimplexKey k;
    k.kind = Kind::delta;
    k.verts = std::move(v);
    if (k.verts.empty()) throw std::invalid_argument("delta key needs >= 1 vertex");
    return k;
  }
  static SimplexKey bar_key(std::vector<GroupValue> g) {
    SimplexKey k;
    k.kind = Kind::bar;
    k.entries = std::move(g);
    return k;
  }
  static SimplexKey prod_key(SimplexKey a, SimplexKey b) {
    if (a.degree() != b.degree())
      throw std::invalid_argument("product key needs equal degrees");
    SimplexKey k;
    k.kind = Kind::prod;
    k.left = std::make_shared<const SimplexKey>(std::move(a));
    k.right = std::make_shared<const SimplexKey>(std::move(b));
    return k;
  }
  static SimplexKey tensor_key(SimplexKey a, SimplexKey b) {
    SimplexKey k;
    k.kind = Kind::tensor;
    k.left = std::make_shared<const SimplexKey>(std::move(a));
    k.right = std::make_shared<const SimplexKey>(std::move(b));
    return k;
  }

  int degree() const {
    switch (kind) {
      case Kind::delta: return (int)verts.size() - 1;
      case Kind::bar: return (int)entries.size();
      case Kind::prod: return left->degree();
      default: return left->degree() + right->degree();
    }
  }
};

inline int cmp(const SimplexKey& a, const SimplexKey& b) {
  if (int c = cmp_ll((long long)a.kind, (long long)b.kind)) return c;
  if (int c = cmp_ll(a.degree(), b.degree())) return c;
  switch (a.kind) {
    case SimplexKey::Kind::delta: {
      for (size_t i = 0; i < a.verts.size(); ++i)
        if (int c = cmp_ll(a.verts[i], b.verts[i])) return c;
      return 0;
    }
    case SimplexKey::Kind::bar: {
      for (size_t i = 0; i < a.entries.size(); ++i)
        if (int c = cmp(a.entries[i], b.entries[i])) return c;
      return 0;
    }
    default: {
      if (int c = cmp_ll(a.left->degree(), b.left->degree())) return c;
      if (int c = cmp(*a.left, *b.left)) return c;
      return cmp(*a.right, *b.right);
    }
  }
}

inline bool operator<(const SimplexKey& a, const SimplexKey& b) { return cmp(a, b) < 0; }
inline bool operator==(const SimplexKey& a, const SimplexKey& b) { return cmp(a, b) == 0; }
inline bool operator!=(const SimplexKey& a, const SimplexKey& b) { return cmp(a, b) != 0; }

}  // namespace cchom
