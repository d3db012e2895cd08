#pragma once

#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cchom/chain.hpp"
#include "cchom/group.hpp"
#include "cchom/simplicial.hpp"

namespace cchom {

// ---------------------------------------------------------------------------
// Edge-labeled ordered complexes and the induced morphism into a group nerve.
//
// A labeling assigns a group value to each 1-simplex of a finite ordered
// complex.  Consistency means degenerate edges carry the identity and every
// 2-simplex sigma satisfies lab(d2.sigma) * lab(d0.sigma) = lab(d1.sigma) --
// the orientation matching d1[a,b] = [ab] in the nerve.  A consistent
// labeling induces a simplicial morphism into the nerve whose value on a
// simplex is the list of labels along its vertex spine.
// ---------------------------------------------------------------------------

struct LabeledComplex {
  std::shared_ptr<const FiniteComplexSet> space;
  GroupPtr group;
  // keyed by 1-simplices; degenerate edges may be omitted (implicitly e)
  std::map<SimplexKey, GroupValue> labels;

  GroupValue label(const SimplexKey& edge) const {
    auto it = labels.find(edge);
    if (it != labels.end()) return it->second;
    if (edge.verts.size() == 2 && edge.verts[0] == edge.verts[1])
      return group->identity();
    throw std::invalid_argument("unlabeled edge " + space->print(edge));
  }
};

struct LabelingReport {
  bool ok = true;
  std::vector<std::string> violations;
};

inline LabelingReport validate_labeling(const LabeledComplex& L) {
  LabelingReport rep;
  auto flag = [&rep](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  for (const auto& [k, v] : L.labels) {
    if (k.kind != SimplexKey::Kind::delta || k.degree() != 1 || !L.space->valid(k)) {
      flag("label on a key that is not a 1-simplex of the complex");
      continue;
    }
    if (k.verts[0] == k.verts[1] && !L.group->is_identity(v))
      flag("degenerate edge " + L.space->print(k) + " must carry the identity");
  }
  for (const auto& e : L.space->list(1))
    if (e.verts[0] != e.verts[1] && !L.labels.count(e))
      flag("unlabeled edge " + L.space->print(e));
  if (!rep.ok) return rep;  // relation checks need total labels
  for (const auto& s : L.space->list(2)) {
    GroupValue lhs =
        L.group->mul(L.label(L.space->face(s, 2)), L.label(L.space->face(s, 0)));
    if (!L.group->equal(lhs, L.label(L.space->face(s, 1))))
      flag("edge relation fails at " + L.space->print(s) +
           ": lab(d2)*lab(d0) != lab(d1)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The induced morphism, tabulated per degree up to `depth` (all simplices,
// degenerate ones included).  Images are nerve simplices of the same degree.
// ---------------------------------------------------------------------------
struct BGMorphism {
  std::shared_ptr<const FiniteComplexSet> space;
  std::shared_ptr<const NerveSet> nerve;
  GroupPtr group;
  int depth = 0;
  std::shared_ptr<const std::map<SimplexKey, SimplexKey>> images;

  const SimplexKey& operator()(const SimplexKey& s) const {
    auto it = images->find(s);
    if (it == images->end())
      throw std::out_of_range("morphism tabulated only through degree " +
                              std::to_string(depth));
    return it->second;
  }
  // induced map of Moore complexes; every basis key maps to a single key
  ChainMap chain() const {
    auto t = images;
    int d = depth;
    return {+1, [t, d](const SimplexKey& k) {
              auto it = t->find(k);
              if (it == t->end())
                throw std::out_of_range("morphism tabulated only through degree " +
                                        std::to_string(d));
              return Chain::single(it->second);
            }};
  }
};

struct MorphismReport {
  bool ok = true;
  std::string detail;
  long long faces_checked = 0;
  long long degeneracies_checked = 0;
  long long forms_checked = 0;
};

// Exhaustive structure check over every tabulated simplex: commutation with
// all faces and degeneracies, agreement of the two recursion forms
//   [f(d_n s), f(d_0^{n-1} s)]  and  [f(d_2...d_n s), f(d_0 s)]
// with the tabulated value, and the fixed values in degrees 0 and 1.
inline MorphismReport verify_morphism(const BGMorphism& F) {
  MorphismReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    if (rep.detail.empty()) rep.detail = std::move(msg);
  };
  auto concat = [](const SimplexKey& a, const SimplexKey& b) {
    std::vector<GroupValue> w = a.entries;
    w.insert(w.end(), b.entries.begin(), b.entries.end());
    return SimplexKey::bar_key(std::move(w));
  };
  for (int n = 0; n <= F.depth; ++n) {
    for (const auto& s : F.space->list(n)) {
      const SimplexKey& img = F(s);
      if (img.degree() != n) fail("image degree mismatch at " + F.space->print(s));
      for (int i = 0; i <= n && n >= 1; ++i) {
        ++rep.faces_checked;
        if (!(F.nerve->face(img, i) == F(F.space->face(s, i))))
          fail("face " + std::to_string(i) + " does not commute at " +
               F.space->print(s));
      }
      if (n < F.depth) {
        for (int i = 0; i <= n; ++i) {
          ++rep.degeneracies_checked;
          if (!(F.nerve->degeneracy(img, i) == F(F.space->degeneracy(s, i))))
            fail("degeneracy " + std::to_string(i) + " does not commute at " +
                 F.space->print(s));
        }
      }
      if (n >= 2) {
        ++rep.forms_checked;
        SimplexKey tail = s;
        for (int r = 0; r < n - 1; ++r) tail = F.space->face(tail, 0);
        SimplexKey head = s;
        for (int r = n; r >= 2; --r) head = F.space->face(head, r);
        SimplexKey form_a = concat(F(F.space->face(s, n)), F(tail));
        SimplexKey form_b = concat(F(head), F(F.space->face(s, 0)));
        if (!(form_a == img) || !(form_b == img))
          fail("recursion forms disagree at " + F.space->print(s));
      }
    }
  }
  return rep;
}

// Builds the morphism from a consistent labeling: f(vertex) = [], entry j of
// f([v0..vn]) is the label of the edge (v_{j-1}, v_j).  Tabulates through
// degree `depth` (default: complex dimension + 1) and verifies the result.
inline BGMorphism build_morphism(const LabeledComplex& L, int depth = -1) {
  LabelingReport val = validate_labeling(L);
  if (!val.ok)
    throw std::invalid_argument("inconsistent labeling (" +
                                std::to_string(val.violations.size()) +
                                " violations): " + val.violations.front());
  int dim = 0;
  for (const auto& f : L.space->faces()) dim = std::max(dim, (int)f.size() - 1);
  if (depth < 0) depth = dim + 1;

  BGMorphism F;
  F.space = L.space;
  F.nerve = std::make_shared<NerveSet>(L.group);
  F.group = L.group;
  F.depth = depth;
  auto table = std::make_shared<std::map<SimplexKey, SimplexKey>>();
  for (int n = 0; n <= depth; ++n) {
    for (const auto& s : L.space->list(n)) {
      std::vector<GroupValue> w;
      w.reserve((size_t)n);
      for (int j = 1; j <= n; ++j) {
        long long a = s.verts[(size_t)j - 1], b = s.verts[(size_t)j];
        w.push_back(a == b ? L.group->identity()
                           : L.label(SimplexKey::delta_key({a, b})));
      }
      table->emplace(s, SimplexKey::bar_key(std::move(w)));
    }
  }
  F.images = table;
  MorphismReport rep = verify_morphism(F);
  if (!rep.ok) throw std::logic_error("morphism construction failed: " + rep.detail);
  return F;
}

// ---------------------------------------------------------------------------
// Spanning-tree gauge: tree edges are labeled e, each non-tree edge carries
// the image of its tree loop.  Images missing from `hom_images` default to e;
// the result is returned unvalidated (images that violate a 2-simplex
// relation are reported by validate_labeling, not repaired here).
// ---------------------------------------------------------------------------
inline LabeledComplex labeling_from_tree(
    std::shared_ptr<const FiniteComplexSet> space, GroupPtr group,
    const std::vector<SimplexKey>& tree,
    const std::map<SimplexKey, GroupValue>& hom_images) {
  auto is_edge = [&space](const SimplexKey& e) {
    return e.kind == SimplexKey::Kind::delta && e.degree() == 1 &&
           e.verts[0] != e.verts[1] && space->valid(e);
  };
  std::map<long long, long long> parent;
  for (long long v : space->vertices()) parent[v] = v;
  std::function<long long(long long)> find = [&](long long v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  std::map<SimplexKey, GroupValue> labels;
  for (const auto& e : tree) {
    if (!is_edge(e))
      throw std::invalid_argument("non-spanning tree: not an edge of the complex");
    long long a = find(e.verts[0]), b = find(e.verts[1]);
    if (a == b)
      throw std::invalid_argument("non-spanning tree: cycle through " +
                                  space->print(e));
    parent[a] = b;
    labels.emplace(e, group->identity());
  }
  for (const auto& e : space->list(1))
    if (e.verts[0] != e.verts[1] && find(e.verts[0]) != find(e.verts[1]))
      throw std::invalid_argument("non-spanning tree: " + space->print(e) +
                                  " joins vertices in different tree components");
  for (const auto& [e, g] : hom_images) {
    if (!is_edge(e))
      throw std::invalid_argument("image assigned to a non-edge");
    if (labels.count(e))
      throw std::invalid_argument("image assigned to a tree edge " + space->print(e));
    labels.emplace(e, g);
  }
  for (const auto& e : space->list(1))
    if (e.verts[0] != e.verts[1]) labels.emplace(e, group->identity());
  return LabeledComplex{std::move(space), std::move(group), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Text format, one directive per line ('#' comments, blank lines ignored):
//   vertices N              -- must come first; ids then run in [0, N)
//   simplex v0 v1 ... vk    -- a face (closed downward automatically)
//   label v w <element>     -- v < w; <element> in the group's print syntax
// ---------------------------------------------------------------------------
inline LabeledComplex parse_labeled_complex(const std::string& text, GroupPtr group) {
  std::istringstream in(text);
  std::string line;
  long long nverts = -1;
  std::vector<std::vector<long long>> facets;
  std::vector<std::tuple<long long, long long, std::string>> raw_labels;
  int lineno = 0;
  auto bad = [&lineno](const std::string& msg) {
    return std::invalid_argument("labeled complex, line " + std::to_string(lineno) +
                                 ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "vertices") {
      if (nverts >= 0) throw bad("duplicate vertices directive");
      if (!(ls >> nverts) || nverts < 0) throw bad("vertices needs a count");
    } else if (word == "simplex") {
      if (nverts < 0) throw bad("vertices directive must come first");
      std::vector<long long> v;
      long long x;
      while (ls >> x) {
        if (x < 0 || x >= nverts) throw bad("vertex id out of range");
        v.push_back(x);
      }
      if (v.empty()) throw bad("simplex needs >= 1 vertex");
      facets.push_back(std::move(v));
    } else if (word == "label") {
      if (nverts < 0) throw bad("vertices directive must come first");
      long long v, w;
      if (!(ls >> v >> w)) throw bad("label needs two vertex ids");
      if (v < 0 || w < 0 || v >= nverts || w >= nverts)
        throw bad("vertex id out of range");
      if (v >= w) throw bad("label edge must be increasing: v < w");
      std::string rest;
      std::getline(ls, rest);
      size_t first = rest.find_first_not_of(" \t");
      if (first == std::string::npos) throw bad("label needs a group element");
      size_t last = rest.find_last_not_of(" \t");
      raw_labels.emplace_back(v, w, rest.substr(first, last - first + 1));
    } else {
      throw bad("unknown directive '" + word + "'");
    }
  }
  if (nverts < 0) throw std::invalid_argument("labeled complex: missing vertices directive");
  auto space = std::make_shared<FiniteComplexSet>(facets);
  LabeledComplex L{space, group, {}};
  for (auto& [v, w, s] : raw_labels) {
    SimplexKey e = SimplexKey::delta_key({v, w});
    if (!space->valid(e))
      throw std::invalid_argument("labeled complex: " + space->print(e) +
                                  " is not an edge of the complex");
    if (!L.labels.emplace(e, group->parse(s)).second)
      throw std::invalid_argument("labeled complex: duplicate label for " +
                                  space->print(e));
  }
  return L;
}

}  // namespace cchom
