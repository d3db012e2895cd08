#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cchom/group.hpp"

namespace cchom {

// Ambient group with chosen elements u, t and an embedding of the base such
// that, for all base g, h:
//   (1) embed(g)^u commutes with embed(h)
//   (2) embed(g)^t = embed(g) * embed(g)^u
struct MitosisWitness {
  GroupPtr base;
  GroupPtr ambient;
  Homomorphism embed;
  GroupValue u, t;
};

struct WitnessCheck {
  bool ok = true;
  std::string violation;  // first failure, human-readable
};

// Checks the two defining relations plus embed being an injective
// homomorphism.  Uses all base elements when the base is small enough to
// enumerate, otherwise the generator set.
inline WitnessCheck validate_mitosis_witness(const MitosisWitness& w,
                                             long long enumeration_cap = 64) {
  WitnessCheck out;
  const Group& B = *w.base;
  const Group& A = *w.ambient;
  std::vector<GroupValue> pts;
  if (B.finite() && B.order() <= enumeration_cap)
    pts = B.elements();
  else
    pts = B.generators();

  auto fail = [&out](std::string msg) {
    out.ok = false;
    out.violation = std::move(msg);
  };

  if (!A.equal(w.embed(B.identity()), A.identity())) {
    fail("embed does not send identity to identity");
    return out;
  }
  for (const auto& g : pts) {
    if (!out.ok) break;
    GroupValue eg = w.embed(g);
    if (!B.is_identity(g) && A.equal(eg, A.identity())) {
      fail("embed kills " + B.print(g));
      break;
    }
    if (!A.equal(A.conjugate(eg, w.t), A.mul(eg, A.conjugate(eg, w.u)))) {
      fail("doubling relation fails at " + B.print(g));
      break;
    }
    for (const auto& h : pts) {
      GroupValue eh = w.embed(h);
      if (!A.equal(w.embed(B.mul(g, h)), A.mul(eg, eh))) {
        fail("embed is not a homomorphism at (" + B.print(g) + "," + B.print(h) + ")");
        break;
      }
      GroupValue gu = A.conjugate(eg, w.u);
      if (!A.equal(A.mul(gu, eh), A.mul(eh, gu))) {
        fail("conjugate by u fails to commute at (" + B.print(g) + "," + B.print(h) + ")");
        break;
      }
    }
  }
  return out;
}

// Regular-action witness inside Sym(|G|^2): index pairs (x,y) of base
// elements as idx(x)*|G|+idx(y); then
//   embed(g): (x,y) -> (g x, y)
//   u:        (x,y) -> (y, x)
//   t:        (x,y) -> (x, x y)
inline MitosisWitness build_regular_mitosis(const GroupPtr& G,
                                            long long point_cap = 1000000) {
  if (!G->finite()) throw std::invalid_argument("regular witness needs a finite base");
  std::vector<GroupValue> els = G->elements();
  long long n = (long long)els.size();
  if (n * n > point_cap) throw std::invalid_argument("regular witness: |G|^2 exceeds cap");

  auto idx = std::make_shared<std::map<GroupValue, int>>();
  for (int i = 0; i < (int)n; ++i) idx->emplace(els[i], i);

  auto ambient = std::make_shared<PermGroup>((int)(n * n));
  auto elements = std::make_shared<std::vector<GroupValue>>(els);

  Homomorphism embed;
  embed.domain = G;
  embed.codomain = ambient;
  embed.map = [G, elements, idx, n](const GroupValue& g) {
    Perm p;
    p.img.resize((size_t)(n * n));
    for (long long x = 0; x < n; ++x) {
      GroupValue gx = G->mul(g, (*elements)[(size_t)x]);
      auto it = idx->find(gx);
      if (it == idx->end()) throw std::logic_error("regular witness: product left enumeration");
      long long gxi = it->second;
      for (long long y = 0; y < n; ++y) p.img[(size_t)(x * n + y)] = (int)(gxi * n + y);
    }
    return GroupValue(p);
  };

  Perm up;
  up.img.resize((size_t)(n * n));
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y) up.img[(size_t)(x * n + y)] = (int)(y * n + x);

  Perm tp;
  tp.img.resize((size_t)(n * n));
  std::vector<std::vector<int>> mul_table((size_t)n, std::vector<int>((size_t)n));
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y) {
      GroupValue xy = G->mul(els[(size_t)x], els[(size_t)y]);
      auto it = idx->find(xy);
      if (it == idx->end()) throw std::logic_error("regular witness: product left enumeration");
      mul_table[(size_t)x][(size_t)y] = it->second;
    }
  for (long long x = 0; x < n; ++x)
    for (long long y = 0; y < n; ++y)
      tp.img[(size_t)(x * n + y)] = (int)(x * n + mul_table[(size_t)x][(size_t)y]);

  return MitosisWitness{G, ambient, std::move(embed), GroupValue(up), GroupValue(tp)};
}

// Tower of regular witnesses over a finite base: ambient(0) = base and
// ambient(j) = Sym(|ambient(j-1)|^2).  project() evaluates a symbolic tower
// word in ambient(to_level) by pushing base letters through every embedding
// and level-j letters through the embeddings above j.
struct WitnessTower {
  GroupPtr base;
  std::shared_ptr<const TowerGroup> words;
  std::vector<MitosisWitness> levels;  // levels[j-1] embeds ambient(j-1) in ambient(j)

  const GroupPtr& ambient(int level) const {
    return level == 0 ? base : levels[(size_t)level - 1].ambient;
  }
  int depth() const { return (int)levels.size(); }

  GroupValue project(const GroupValue& word, int to_level) const {
    const Group& A = *ambient(to_level);
    GroupValue acc = A.identity();
    for (const auto& l : std::get<TowerWord>(word.v).w) {
      GroupValue x;
      int from;
      if (l.sym == 'g') {
        x = *l.base;
        from = 0;
      } else {
        if (l.level > to_level) throw std::invalid_argument("projection: letter above target level");
        const MitosisWitness& w = levels[(size_t)l.level - 1];
        x = w.ambient->power(l.sym == 'u' ? w.u : w.t, l.exp);
        from = l.level;
      }
      for (int j = from + 1; j <= to_level; ++j) x = levels[(size_t)j - 1].embed(x);
      acc = A.mul(acc, x);
    }
    return acc;
  }

  bool equal_at(const GroupValue& a, const GroupValue& b, int to_level) const {
    return ambient(to_level)->equal(project(a, to_level), project(b, to_level));
  }
};

inline WitnessTower build_witness_tower(const GroupPtr& base, int depth,
                                        long long point_cap = 1000000) {
  WitnessTower t;
  t.base = base;
  t.words = std::make_shared<TowerGroup>(base, depth);
  GroupPtr cur = base;
  for (int j = 1; j <= depth; ++j) {
    t.levels.push_back(build_regular_mitosis(cur, point_cap));
    cur = t.levels.back().ambient;
  }
  return t;
}

}  // namespace cchom
