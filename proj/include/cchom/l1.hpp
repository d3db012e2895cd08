#pragma once

#include <functional>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "cchom/linalg.hpp"
#include "cchom/sparse.hpp"

namespace cchom {

struct L1Result {
  IntVector x;
  Int l1 = 0;
  bool optimal = false;  // certified only for rank-0 kernels or |x|_1 = 0
  long long steps_used = 0;
};

namespace detail {

inline size_t vec_hash(const IntVector& v) {
  size_t h = 1469598103934665603ull;
  auto mix = [&](size_t x) { h ^= x; h *= 1099511628211ull; };
  for (const auto& [i, val] : v.entries) {
    mix((size_t)i);
    mix(std::hash<std::string>{}(val.str()));
  }
  return h;
}

// L1 delta of x + m*g without materializing the sum.
inline Int l1_delta(const IntVector& x, const IntVector& g, const Int& m) {
  Int d = 0;
  for (const auto& [i, gv] : g.entries) {
    Int xi = x.get(i);
    d += abs_int(xi + m * gv) - abs_int(xi);
  }
  return d;
}

}  // namespace detail

// Coset L1 descent: greedy first-improvement sweeps over kernel generators,
// then a bounded plateau walk (equal-norm moves) to escape local flats.
// Generators beyond the kernel basis may be supplied (each must lie in ker A);
// all moves stay inside the solution coset x0 + ker A.
inline L1Result reduce_l1(const SparseIntMatrix& A, const IntVector& b,
                          const IntVector& x0, long long budget,
                          const std::vector<IntVector>& extra_generators = {}) {
  if (!(A.apply(x0) == b)) throw std::invalid_argument("reduce_l1: A*x0 != b");
  std::vector<IntVector> gens = kernel_lattice_basis(A);
  const size_t kernel_rank = gens.size();
  for (const auto& g : extra_generators) {
    if (!A.apply(g).is_zero())
      throw std::invalid_argument("reduce_l1: extra generator not in kernel");
    if (!g.is_zero()) gens.push_back(g);
  }
  // pairwise size-reduction of the basis part (shorter moves descend better)
  for (int pass = 0; pass < 4; ++pass) {
    bool changed = false;
    for (size_t i = 0; i < kernel_rank; ++i)
      for (size_t j = 0; j < kernel_rank; ++j) {
        if (i == j) continue;
        for (Int m : {Int(1), Int(-1)}) {
          if (detail::l1_delta(gens[i], gens[j], m) < 0) {
            gens[i].add_scaled(gens[j], m);
            changed = true;
          }
        }
      }
    if (!changed) break;
  }

  L1Result res;
  res.x = x0;
  res.l1 = x0.l1();
  long long steps = 0;

  auto greedy = [&](IntVector& x, Int& cur) {
    bool improved = true;
    while (improved && steps < budget) {
      improved = false;
      for (const auto& g : gens) {
        for (Int m : {Int(1), Int(-1), Int(2), Int(-2)}) {
          if (steps++ >= budget) break;
          Int d = detail::l1_delta(x, g, m);
          if (d < 0) {
            x.add_scaled(g, m);
            cur += d;
            improved = true;
          }
        }
        if (cur == 0) return;
      }
    }
  };

  greedy(res.x, res.l1);

  // plateau walk: breadth-first over equal-norm neighbors, restart greedy on
  // any strict improvement
  if (res.l1 != 0 && !gens.empty()) {
    std::unordered_set<size_t> seen;
    std::queue<IntVector> frontier;
    auto restart = [&](const IntVector& from) {
      seen.clear();
      std::queue<IntVector>().swap(frontier);
      frontier.push(from);
      seen.insert(detail::vec_hash(from));
    };
    restart(res.x);
    while (!frontier.empty() && steps < budget && res.l1 != 0) {
      IntVector cur = frontier.front();
      frontier.pop();
      bool restarted = false;
      for (const auto& g : gens) {
        for (Int m : {Int(1), Int(-1)}) {
          if (steps++ >= budget) break;
          Int d = detail::l1_delta(cur, g, m);
          if (d > 0) continue;
          IntVector nxt = cur;
          nxt.add_scaled(g, m);
          if (d < 0) {
            res.x = std::move(nxt);
            res.l1 = res.x.l1();
            greedy(res.x, res.l1);
            restart(res.x);
            restarted = true;
            break;
          }
          size_t h = detail::vec_hash(nxt);
          if (seen.insert(h).second && seen.size() < 200000)
            frontier.push(std::move(nxt));
        }
        if (restarted || steps >= budget) break;
      }
    }
  }

  res.steps_used = steps;
  res.optimal = (kernel_rank == 0 && extra_generators.empty()) || res.l1 == 0;
  return res;
}

}  // namespace cchom
