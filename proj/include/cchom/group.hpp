#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cchom/numeric.hpp"
#include "cchom/rng.hpp"

namespace cchom {

// ---------------------------------------------------------------------------
// Element payloads.  All payloads are canonical: cyclic residues reduced,
// permutations stored as full image arrays, words freely reduced.
// ---------------------------------------------------------------------------

struct Perm {
  std::vector<int> img;

  static Perm id(int n) {
    Perm p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 0);
    return p;
  }
  int degree() const { return (int)img.size(); }
  int operator()(int x) const { return img[x]; }
  // right-to-left: (a*b)(x) = a(b(x))
  static Perm mul(const Perm& a, const Perm& b) {
    Perm r;
    r.img.resize(a.img.size());
    for (size_t i = 0; i < b.img.size(); ++i) r.img[i] = a.img[b.img[i]];
    return r;
  }
  Perm inverse() const {
    Perm r;
    r.img.resize(img.size());
    for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = (int)i;
    return r;
  }
  bool is_id() const {
    for (size_t i = 0; i < img.size(); ++i)
      if (img[i] != (int)i) return false;
    return true;
  }
  auto operator<=>(const Perm&) const = default;
};

// freely reduced word over an abstract alphabet: (letter index, exponent != 0)
struct FreeWord {
  std::vector<std::pair<int, long long>> syl;
  auto operator<=>(const FreeWord&) const = default;
};

struct GroupValue;
using GVPair = std::shared_ptr<const std::pair<GroupValue, GroupValue>>;

// Letter of an iterated-extension word: level 0 carries a base-group value
// ('g'); levels >= 1 carry the two extension symbols 'u' / 't' with exponents.
struct TowerLetter {
  int level = 0;
  char sym = 'g';
  std::shared_ptr<const GroupValue> base;  // sym == 'g' only
  long long exp = 1;                       // sym != 'g' only, != 0
};

struct TowerWord {
  std::vector<TowerLetter> w;
};

struct GroupValue {
  std::variant<long long, Perm, GVPair, FreeWord, TowerWord> v;

  GroupValue() : v(0ll) {}
  explicit GroupValue(long long x) : v(x) {}
  explicit GroupValue(Perm p) : v(std::move(p)) {}
  explicit GroupValue(GVPair p) : v(std::move(p)) {}
  explicit GroupValue(FreeWord w) : v(std::move(w)) {}
  explicit GroupValue(TowerWord w) : v(std::move(w)) {}
};

int cmp(const GroupValue& a, const GroupValue& b);

inline int cmp_ll(long long a, long long b) { return a < b ? -1 : a > b ? 1 : 0; }

inline int cmp(const TowerLetter& a, const TowerLetter& b) {
  if (int c = cmp_ll(a.level, b.level)) return c;
  if (int c = cmp_ll(a.sym, b.sym)) return c;
  if (int c = cmp_ll(a.exp, b.exp)) return c;
  bool ha = (bool)a.base, hb = (bool)b.base;
  if (ha != hb) return ha ? 1 : -1;
  if (!ha) return 0;
  return cmp(*a.base, *b.base);
}

inline int cmp(const GroupValue& a, const GroupValue& b) {
  if (int c = cmp_ll((long long)a.v.index(), (long long)b.v.index())) return c;
  switch (a.v.index()) {
    case 0:
      return cmp_ll(std::get<0>(a.v), std::get<0>(b.v));
    case 1: {
      const auto& pa = std::get<1>(a.v).img;
      const auto& pb = std::get<1>(b.v).img;
      if (int c = cmp_ll((long long)pa.size(), (long long)pb.size())) return c;
      for (size_t i = 0; i < pa.size(); ++i)
        if (int c = cmp_ll(pa[i], pb[i])) return c;
      return 0;
    }
    case 2: {
      const auto& pa = std::get<2>(a.v);
      const auto& pb = std::get<2>(b.v);
      if (int c = cmp(pa->first, pb->first)) return c;
      return cmp(pa->second, pb->second);
    }
    case 3: {
      const auto& wa = std::get<3>(a.v).syl;
      const auto& wb = std::get<3>(b.v).syl;
      if (int c = cmp_ll((long long)wa.size(), (long long)wb.size())) return c;
      for (size_t i = 0; i < wa.size(); ++i) {
        if (int c = cmp_ll(wa[i].first, wb[i].first)) return c;
        if (int c = cmp_ll(wa[i].second, wb[i].second)) return c;
      }
      return 0;
    }
    default: {
      const auto& wa = std::get<4>(a.v).w;
      const auto& wb = std::get<4>(b.v).w;
      if (int c = cmp_ll((long long)wa.size(), (long long)wb.size())) return c;
      for (size_t i = 0; i < wa.size(); ++i)
        if (int c = cmp(wa[i], wb[i])) return c;
      return 0;
    }
  }
}

inline bool operator<(const GroupValue& a, const GroupValue& b) { return cmp(a, b) < 0; }
inline bool operator==(const GroupValue& a, const GroupValue& b) { return cmp(a, b) == 0; }
inline bool operator!=(const GroupValue& a, const GroupValue& b) { return cmp(a, b) != 0; }

// ---------------------------------------------------------------------------
// Group handles: immutable value-semantics groups.
// ---------------------------------------------------------------------------
class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Group {
 public:
  virtual ~Group() = default;
  virtual std::string name() const = 0;
  virtual GroupValue identity() const = 0;
  virtual GroupValue mul(const GroupValue& a, const GroupValue& b) const = 0;
  virtual GroupValue inv(const GroupValue& a) const = 0;
  virtual bool equal(const GroupValue& a, const GroupValue& b) const { return a == b; }
  virtual bool is_identity(const GroupValue& a) const { return equal(a, identity()); }
  virtual bool finite() const = 0;
  virtual Int order() const = 0;  // finite() only
  virtual std::vector<GroupValue> elements() const {
    throw std::logic_error(name() + ": elements() unavailable");
  }
  virtual std::vector<GroupValue> generators() const = 0;
  virtual GroupValue sample(Rng& rng) const = 0;
  virtual std::string print(const GroupValue& a) const = 0;
  virtual GroupValue parse(const std::string& s) const = 0;

  GroupValue conjugate(const GroupValue& x, const GroupValue& g) const {
    return mul(mul(g, x), inv(g));  // x^g = g x g^-1
  }
  GroupValue commutator(const GroupValue& a, const GroupValue& b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));  // [a,b] = a b a^-1 b^-1
  }
  GroupValue power(const GroupValue& a, long long k) const {
    GroupValue base = k < 0 ? inv(a) : a;
    long long n = k < 0 ? -k : k;
    GroupValue r = identity();
    for (long long i = 0; i < n; ++i) r = mul(r, base);
    return r;
  }
};

inline GroupValue conjugate(const Group& G, const GroupValue& x, const GroupValue& g) {
  return G.conjugate(x, g);
}

// --------------------------- cyclic ---------------------------------------
class CyclicGroup final : public Group {
 public:
  explicit CyclicGroup(long long n) : n_(n) {
    if (n <= 0) throw std::invalid_argument("cyclic order must be positive");
  }
  std::string name() const override { return "cyclic:" + std::to_string(n_); }
  GroupValue identity() const override { return GroupValue(0ll); }
  GroupValue mul(const GroupValue& a, const GroupValue& b) const override {
    return GroupValue((std::get<long long>(a.v) + std::get<long long>(b.v)) % n_);
  }
  GroupValue inv(const GroupValue& a) const override {
    return GroupValue((n_ - std::get<long long>(a.v)) % n_);
  }
  bool finite() const override { return true; }
  Int order() const override { return n_; }
  std::vector<GroupValue> elements() const override {
    std::vector<GroupValue> r;
    for (long long i = 0; i < n_; ++i) r.push_back(GroupValue(i));
    return r;
  }
  std::vector<GroupValue> generators() const override {
    return {GroupValue(n_ == 1 ? 0ll : 1ll)};
  }
  GroupValue sample(Rng& rng) const override { return GroupValue(rng.uniform(0, n_ - 1)); }
  std::string print(const GroupValue& a) const override {
    return std::to_string(std::get<long long>(a.v));
  }
  GroupValue parse(const std::string& s) const override {
    long long x = std::stoll(s);
    return GroupValue(((x % n_) + n_) % n_);
  }
  long long modulus() const { return n_; }

 private:
  long long n_;
};

// --------------------------- permutation ----------------------------------
// Full symmetric group on `degree` points, or the subgroup generated by a
// given list of permutations (enumerated by closure, capped).
class PermGroup final : public Group {
 public:
  explicit PermGroup(int degree) : degree_(degree), full_(true) {}
  PermGroup(int degree, std::vector<Perm> gens)
      : degree_(degree), full_(false), gens_(std::move(gens)) {
    for (const auto& p : gens_) {
      if ((int)p.img.size() != degree_) throw std::invalid_argument("perm generator: wrong degree");
      std::vector<char> seen((size_t)degree_, 0);
      for (int x : p.img) {
        if (x < 0 || x >= degree_ || seen[(size_t)x])
          throw std::invalid_argument("perm generator: not a bijection");
        seen[(size_t)x] = 1;
      }
    }
  }

  std::string name() const override {
    if (full_) return "sym:" + std::to_string(degree_);
    std::string s = "perm:";
    for (size_t i = 0; i < gens_.size(); ++i)
      s += (i ? ";" : "") + print(GroupValue(gens_[i]));
    return s;
  }
  GroupValue identity() const override { return GroupValue(Perm::id(degree_)); }
  GroupValue mul(const GroupValue& a, const GroupValue& b) const override {
    return GroupValue(Perm::mul(std::get<Perm>(a.v), std::get<Perm>(b.v)));
  }
  GroupValue inv(const GroupValue& a) const override {
    return GroupValue(std::get<Perm>(a.v).inverse());
  }
  bool finite() const override { return true; }
  Int order() const override {
    if (full_) {
      Int f = 1;
      for (int i = 2; i <= degree_; ++i) f *= i;
      return f;
    }
    return (Int)closure().size();
  }
  std::vector<GroupValue> elements() const override {
    std::vector<GroupValue> r;
    if (full_) {
      if (degree_ > 8) throw std::logic_error("sym: degree too large to enumerate");
      Perm p = Perm::id(degree_);
      std::vector<int> img = p.img;
      std::sort(img.begin(), img.end());
      do {
        Perm q;
        q.img = img;
        r.push_back(GroupValue(q));
      } while (std::next_permutation(img.begin(), img.end()));
    } else {
      for (const auto& p : closure()) r.push_back(GroupValue(p));
    }
    return r;
  }
  std::vector<GroupValue> generators() const override {
    if (!full_) {
      std::vector<GroupValue> r;
      for (const auto& p : gens_) r.push_back(GroupValue(p));
      return r;
    }
    if (degree_ <= 1) return {identity()};
    Perm tr = Perm::id(degree_);
    std::swap(tr.img[0], tr.img[1]);
    Perm cyc;
    cyc.img.resize(degree_);
    for (int i = 0; i < degree_; ++i) cyc.img[i] = (i + 1) % degree_;
    if (degree_ == 2) return {GroupValue(tr)};
    return {GroupValue(tr), GroupValue(cyc)};
  }
  GroupValue sample(Rng& rng) const override {
    if (full_) {
      Perm p = Perm::id(degree_);
      for (int i = degree_ - 1; i > 0; --i)
        std::swap(p.img[i], p.img[rng.uniform(0, i)]);
      return GroupValue(p);
    }
    Perm p = Perm::id(degree_);
    long long len = rng.uniform(0, 8);
    for (long long i = 0; i < len; ++i) {
      const Perm& g = gens_[rng.uniform(0, (long long)gens_.size() - 1)];
      p = rng.uniform(0, 1) ? Perm::mul(p, g) : Perm::mul(p, g.inverse());
    }
    return GroupValue(p);
  }
  std::string print(const GroupValue& a) const override {
    const auto& img = std::get<Perm>(a.v).img;
    std::string s = "[";
    for (size_t i = 0; i < img.size(); ++i) s += (i ? "," : "") + std::to_string(img[i]);
    return s + "]";
  }
  GroupValue parse(const std::string& s) const override {
    Perm p;
    std::string t = s;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
      throw std::invalid_argument("perm parse: expected [i,j,...]");
    std::istringstream is(t.substr(1, t.size() - 2));
    std::string tok;
    while (std::getline(is, tok, ',')) p.img.push_back(std::stoi(tok));
    if ((int)p.img.size() != degree_) throw std::invalid_argument("perm parse: wrong degree");
    std::vector<char> seen(degree_, 0);
    for (int x : p.img) {
      if (x < 0 || x >= degree_ || seen[x]) throw std::invalid_argument("perm parse: not a bijection");
      seen[x] = 1;
    }
    return GroupValue(p);
  }
  int degree() const { return degree_; }

 private:
  std::vector<Perm> closure() const {
    std::vector<Perm> out{Perm::id(degree_)};
    std::map<std::vector<int>, bool> seen{{out[0].img, true}};
    for (size_t i = 0; i < out.size(); ++i) {
      for (const auto& g : gens_) {
        Perm nxt = Perm::mul(out[i], g);
        if (seen.emplace(nxt.img, true).second) {
          out.push_back(nxt);
          if (out.size() > 2000000) throw std::logic_error("perm closure cap exceeded");
        }
      }
    }
    return out;
  }
  int degree_;
  bool full_;
  std::vector<Perm> gens_;
};

// --------------------------- direct product --------------------------------
class ProductGroup final : public Group {
 public:
  ProductGroup(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::string name() const override {
    return "product(" + a_->name() + "," + b_->name() + ")";
  }
  GroupValue identity() const override {
    return GroupValue(std::make_shared<const std::pair<GroupValue, GroupValue>>(
        a_->identity(), b_->identity()));
  }
  GroupValue mul(const GroupValue& x, const GroupValue& y) const override {
    const auto& px = std::get<GVPair>(x.v);
    const auto& py = std::get<GVPair>(y.v);
    return GroupValue(std::make_shared<const std::pair<GroupValue, GroupValue>>(
        a_->mul(px->first, py->first), b_->mul(px->second, py->second)));
  }
  GroupValue inv(const GroupValue& x) const override {
    const auto& px = std::get<GVPair>(x.v);
    return GroupValue(std::make_shared<const std::pair<GroupValue, GroupValue>>(
        a_->inv(px->first), b_->inv(px->second)));
  }
  bool equal(const GroupValue& x, const GroupValue& y) const override {
    const auto& px = std::get<GVPair>(x.v);
    const auto& py = std::get<GVPair>(y.v);
    return a_->equal(px->first, py->first) && b_->equal(px->second, py->second);
  }
  bool finite() const override { return a_->finite() && b_->finite(); }
  Int order() const override { return a_->order() * b_->order(); }
  std::vector<GroupValue> elements() const override {
    std::vector<GroupValue> r;
    for (const auto& x : a_->elements())
      for (const auto& y : b_->elements())
        r.push_back(pair(x, y));
    return r;
  }
  std::vector<GroupValue> generators() const override {
    std::vector<GroupValue> r;
    for (const auto& x : a_->generators()) r.push_back(pair(x, b_->identity()));
    for (const auto& y : b_->generators()) r.push_back(pair(a_->identity(), y));
    return r;
  }
  GroupValue sample(Rng& rng) const override {
    return pair(a_->sample(rng), b_->sample(rng));
  }
  std::string print(const GroupValue& x) const override {
    const auto& px = std::get<GVPair>(x.v);
    return "(" + a_->print(px->first) + "," + b_->print(px->second) + ")";
  }
  GroupValue parse(const std::string& s) const override;
  GroupValue pair(const GroupValue& x, const GroupValue& y) const {
    return GroupValue(std::make_shared<const std::pair<GroupValue, GroupValue>>(x, y));
  }
  const GroupPtr& left() const { return a_; }
  const GroupPtr& right() const { return b_; }

 private:
  GroupPtr a_, b_;
};

// --------------------------- free group ------------------------------------
class FreeGroup final : public Group {
 public:
  explicit FreeGroup(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) throw std::invalid_argument("free group needs letters");
  }
  std::string name() const override {
    std::string s = "free:[";
    for (size_t i = 0; i < letters_.size(); ++i) s += (i ? "," : "") + letters_[i];
    return s + "]";
  }
  GroupValue identity() const override { return GroupValue(FreeWord{}); }
  GroupValue mul(const GroupValue& a, const GroupValue& b) const override {
    FreeWord r = std::get<FreeWord>(a.v);
    for (const auto& s : std::get<FreeWord>(b.v).syl) push(r, s.first, s.second);
    return GroupValue(r);
  }
  GroupValue inv(const GroupValue& a) const override {
    FreeWord r;
    const auto& w = std::get<FreeWord>(a.v).syl;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.syl.push_back({it->first, -it->second});
    return GroupValue(r);
  }
  bool finite() const override { return false; }
  Int order() const override { throw std::logic_error("free group is infinite"); }
  std::vector<GroupValue> generators() const override {
    std::vector<GroupValue> r;
    for (size_t i = 0; i < letters_.size(); ++i)
      r.push_back(GroupValue(FreeWord{{{(int)i, 1}}}));
    return r;
  }
  GroupValue sample(Rng& rng) const override {
    FreeWord r;
    long long len = rng.uniform(0, 4);
    for (long long i = 0; i < len; ++i) {
      int l = (int)rng.uniform(0, (long long)letters_.size() - 1);
      long long e = rng.uniform(0, 1) ? rng.uniform(1, 2) : -rng.uniform(1, 2);
      push(r, l, e);
    }
    return GroupValue(r);
  }
  std::string print(const GroupValue& a) const override {
    const auto& w = std::get<FreeWord>(a.v).syl;
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += ".";
      s += letters_[w[i].first];
      if (w[i].second != 1) s += "^" + std::to_string(w[i].second);
    }
    return s;
  }
  GroupValue parse(const std::string& s) const override {
    if (s == "1" || s.empty()) return identity();
    FreeWord r;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, '.')) {
      auto caret = tok.find('^');
      std::string letter = caret == std::string::npos ? tok : tok.substr(0, caret);
      long long e = caret == std::string::npos ? 1 : std::stoll(tok.substr(caret + 1));
      auto it = std::find(letters_.begin(), letters_.end(), letter);
      if (it == letters_.end()) throw std::invalid_argument("free parse: unknown letter " + letter);
      push(r, (int)(it - letters_.begin()), e);
    }
    return GroupValue(r);
  }

 private:
  static void push(FreeWord& w, int letter, long long exp) {
    if (exp == 0) return;
    if (!w.syl.empty() && w.syl.back().first == letter) {
      w.syl.back().second += exp;
      if (w.syl.back().second == 0) w.syl.pop_back();
    } else {
      w.syl.push_back({letter, exp});
    }
  }
  std::vector<std::string> letters_;
};

// --------------------------- iterated extension words -----------------------
// Words over base-group letters and level-tagged symbols u_j, t_j, freely
// reduced (free-product normal form).  Syntactic equality of reduced words is
// sound for every quotient satisfying the extension relations; it is not
// complete — semantic equality goes through a concrete witness projection.
class TowerGroup final : public Group {
 public:
  TowerGroup(GroupPtr base, int depth) : base_(std::move(base)), depth_(depth) {
    if (depth < 1) throw std::invalid_argument("tower depth must be >= 1");
  }
  std::string name() const override {
    return "tower(" + base_->name() + ",depth=" + std::to_string(depth_) + ")";
  }
  GroupValue identity() const override { return GroupValue(TowerWord{}); }
  GroupValue mul(const GroupValue& a, const GroupValue& b) const override {
    TowerWord r = std::get<TowerWord>(a.v);
    for (const auto& l : std::get<TowerWord>(b.v).w) push(r, l);
    return GroupValue(r);
  }
  GroupValue inv(const GroupValue& a) const override {
    TowerWord r;
    const auto& w = std::get<TowerWord>(a.v).w;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      TowerLetter l = *it;
      if (l.sym == 'g')
        l.base = std::make_shared<const GroupValue>(base_->inv(*l.base));
      else
        l.exp = -l.exp;
      push(r, l);
    }
    return GroupValue(r);
  }
  bool finite() const override { return false; }
  Int order() const override { throw std::logic_error("extension tower is infinite"); }
  std::vector<GroupValue> generators() const override {
    std::vector<GroupValue> r;
    for (const auto& g : base_->generators()) r.push_back(embed_base(g));
    for (int j = 1; j <= depth_; ++j) {
      r.push_back(letter_value(j, 'u', 1));
      r.push_back(letter_value(j, 't', 1));
    }
    return r;
  }
  GroupValue sample(Rng& rng) const override {
    TowerWord r;
    long long len = rng.uniform(0, 3);
    for (long long i = 0; i < len; ++i) {
      if (rng.uniform(0, 1)) {
        TowerLetter l;
        l.base = std::make_shared<const GroupValue>(base_->sample(rng));
        if (base_->is_identity(*l.base)) continue;
        push(r, l);
      } else {
        TowerLetter l;
        l.level = (int)rng.uniform(1, depth_);
        l.sym = rng.uniform(0, 1) ? 'u' : 't';
        l.exp = rng.uniform(0, 1) ? 1 : -1;
        push(r, l);
      }
    }
    return GroupValue(r);
  }
  std::string print(const GroupValue& a) const override {
    const auto& w = std::get<TowerWord>(a.v).w;
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) s += ".";
      const auto& l = w[i];
      if (l.sym == 'g') {
        s += "<" + base_->print(*l.base) + ">";
      } else {
        s += l.sym + std::to_string(l.level);
        if (l.exp != 1) s += "^" + std::to_string(l.exp);
      }
    }
    return s;
  }
  GroupValue parse(const std::string& s) const override {
    if (s == "1" || s.empty()) return identity();
    TowerWord r;
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] == '.') { ++i; continue; }
      if (s[i] == '<') {
        size_t depth = 0, j = i;
        for (; j < s.size(); ++j) {
          if (s[j] == '<') ++depth;
          if (s[j] == '>' && --depth == 0) break;
        }
        if (j >= s.size()) throw std::invalid_argument("tower parse: unbalanced <>");
        TowerLetter l;
        l.base = std::make_shared<const GroupValue>(base_->parse(s.substr(i + 1, j - i - 1)));
        if (!base_->is_identity(*l.base)) push(r, l);
        i = j + 1;
      } else if (s[i] == 'u' || s[i] == 't') {
        TowerLetter l;
        l.sym = s[i];
        size_t j = ++i;
        while (j < s.size() && isdigit(s[j])) ++j;
        l.level = std::stoi(s.substr(i, j - i));
        i = j;
        if (i < s.size() && s[i] == '^') {
          j = ++i;
          if (j < s.size() && s[j] == '-') ++j;
          while (j < s.size() && isdigit(s[j])) ++j;
          l.exp = std::stoll(s.substr(i, j - i));
          i = j;
        }
        if (l.level < 1 || l.level > depth_) throw std::invalid_argument("tower parse: bad level");
        if (l.exp != 0) push(r, l);
      } else {
        throw std::invalid_argument("tower parse: unexpected char");
      }
    }
    return GroupValue(r);
  }

  GroupValue embed_base(const GroupValue& g) const {
    if (base_->is_identity(g)) return identity();
    TowerLetter l;
    l.base = std::make_shared<const GroupValue>(g);
    return GroupValue(TowerWord{{l}});
  }
  GroupValue letter_value(int level, char sym, long long exp) const {
    if (level < 1 || level > depth_) throw std::invalid_argument("bad letter level");
    TowerLetter l;
    l.level = level;
    l.sym = sym;
    l.exp = exp;
    return exp == 0 ? identity() : GroupValue(TowerWord{{l}});
  }
  const GroupPtr& base() const { return base_; }
  int depth() const { return depth_; }

 private:
  void push(TowerWord& w, TowerLetter l) const {
    while (true) {
      if (w.w.empty()) {
        w.w.push_back(std::move(l));
        return;
      }
      TowerLetter& top = w.w.back();
      if (l.sym == 'g' && top.sym == 'g') {
        GroupValue m = base_->mul(*top.base, *l.base);
        w.w.pop_back();
        if (base_->is_identity(m)) return;
        l = TowerLetter{};
        l.base = std::make_shared<const GroupValue>(std::move(m));
        continue;  // may merge again with the new top
      }
      if (l.sym != 'g' && top.sym == l.sym && top.level == l.level) {
        long long e = top.exp + l.exp;
        w.w.pop_back();
        if (e == 0) return;
        l.exp = e;
        continue;
      }
      w.w.push_back(std::move(l));
      return;
    }
  }
  GroupPtr base_;
  int depth_;
};

// ---------------------------------------------------------------------------
// Group spec parsing: cyclic:n | sym:d | perm:[images] | product(spec,spec)
// | free:[letters]
// ---------------------------------------------------------------------------
inline GroupPtr parse_group_spec(const std::string& spec) {
  auto strip = [](std::string s) {
    while (!s.empty() && isspace((unsigned char)s.front())) s.erase(s.begin());
    while (!s.empty() && isspace((unsigned char)s.back())) s.pop_back();
    return s;
  };
  std::string s = strip(spec);
  if (s.rfind("cyclic:", 0) == 0) return std::make_shared<CyclicGroup>(std::stoll(s.substr(7)));
  if (s.rfind("sym:", 0) == 0) return std::make_shared<PermGroup>(std::stoi(s.substr(4)));
  if (s.rfind("perm:", 0) == 0) {
    std::string body = s.substr(5);
    std::vector<Perm> gens;
    std::istringstream is(body);
    std::string tok;
    int degree = -1;
    while (std::getline(is, tok, ';')) {
      tok = strip(tok);
      if (tok.size() < 2 || tok.front() != '[' || tok.back() != ']')
        throw std::invalid_argument("perm spec: expected [images]");
      Perm p;
      std::istringstream es(tok.substr(1, tok.size() - 2));
      std::string e;
      while (std::getline(es, e, ',')) p.img.push_back(std::stoi(e));
      if (degree < 0) degree = (int)p.img.size();
      if ((int)p.img.size() != degree) throw std::invalid_argument("perm spec: mixed degrees");
      gens.push_back(std::move(p));
    }
    if (gens.empty()) throw std::invalid_argument("perm spec: no generators");
    return std::make_shared<PermGroup>(degree, std::move(gens));
  }
  if (s.rfind("product(", 0) == 0 && s.back() == ')') {
    std::string body = s.substr(8, s.size() - 9);
    int depth = 0;
    for (size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(' || body[i] == '[') ++depth;
      if (body[i] == ')' || body[i] == ']') --depth;
      if (body[i] == ',' && depth == 0)
        return std::make_shared<ProductGroup>(parse_group_spec(body.substr(0, i)),
                                              parse_group_spec(body.substr(i + 1)));
    }
    throw std::invalid_argument("product spec: missing top-level comma");
  }
  if (s.rfind("free:[", 0) == 0 && s.back() == ']') {
    std::string body = s.substr(6, s.size() - 7);
    std::vector<std::string> letters;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) letters.push_back(strip(tok));
    return std::make_shared<FreeGroup>(std::move(letters));
  }
  throw std::invalid_argument("unrecognized group spec: " + spec);
}

inline GroupValue ProductGroup::parse(const std::string& s) const {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw std::invalid_argument("product parse: expected (x,y)");
  std::string body = s.substr(1, s.size() - 2);
  int depth = 0;
  for (size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(' || body[i] == '[' || body[i] == '<') ++depth;
    if (body[i] == ')' || body[i] == ']' || body[i] == '>') --depth;
    if (body[i] == ',' && depth == 0)
      return pair(a_->parse(body.substr(0, i)), b_->parse(body.substr(i + 1)));
  }
  throw std::invalid_argument("product parse: missing top-level comma");
}

// ---------------------------------------------------------------------------
// Homomorphisms as checked function tables.
// ---------------------------------------------------------------------------
struct Homomorphism {
  GroupPtr domain, codomain;
  std::function<GroupValue(const GroupValue&)> map;

  GroupValue operator()(const GroupValue& x) const { return map(x); }

  static Homomorphism identity(GroupPtr g) {
    return {g, g, [](const GroupValue& x) { return x; }};
  }
  static Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
    auto f = outer.map, g = inner.map;
    return {inner.domain, outer.codomain,
            [f, g](const GroupValue& x) { return f(g(x)); }};
  }
  // action(xy) = action(x) action(y) and action(e) = e on sampled pairs
  bool check(Rng& rng, int samples = 64) const {
    if (!codomain->equal(map(domain->identity()), codomain->identity())) return false;
    for (int i = 0; i < samples; ++i) {
      GroupValue x = domain->sample(rng), y = domain->sample(rng);
      if (!codomain->equal(map(domain->mul(x, y)), codomain->mul(map(x), map(y))))
        return false;
    }
    return true;
  }
};

}  // namespace cchom
