#include <catch2/catch_amalgamated.hpp>

#include "cchom/group.hpp"
#include "cchom/mitosis.hpp"

using namespace cchom;

namespace {

// associativity, identity, inverses on random triples
void check_axioms(const GroupPtr& G, Rng& rng, int triples) {
  GroupValue e = G->identity();
  REQUIRE(G->is_identity(e));
  for (int i = 0; i < triples; ++i) {
    GroupValue a = G->sample(rng), b = G->sample(rng), c = G->sample(rng);
    REQUIRE(G->equal(G->mul(G->mul(a, b), c), G->mul(a, G->mul(b, c))));
    REQUIRE(G->equal(G->mul(a, e), a));
    REQUIRE(G->equal(G->mul(e, a), a));
    REQUIRE(G->equal(G->mul(a, G->inv(a)), e));
    REQUIRE(G->equal(G->mul(G->inv(a), a), e));
    REQUIRE(G->equal(G->parse(G->print(a)), a));
  }
}

}  // namespace

TEST_CASE("permutations compose right-to-left and conjugate as x^g = g x g^-1") {
  // a = [1,2,0] sends 0->1; b = [1,0,2] swaps 0,1; (a*b)(0) = a(b(0)) = a(1) = 2
  Perm a{{1, 2, 0}}, b{{1, 0, 2}};
  REQUIRE(Perm::mul(a, b).img == std::vector<int>{2, 1, 0});
  REQUIRE(Perm::mul(b, a).img == std::vector<int>{0, 2, 1});

  // swap(0,1) conjugated by the 3-cycle 0->1->2->0 gives swap(1,2)
  auto S3 = std::make_shared<PermGroup>(3);
  GroupValue x = S3->parse("[1,0,2]");
  GroupValue g = S3->parse("[1,2,0]");
  REQUIRE(S3->print(S3->conjugate(x, g)) == "[0,2,1]");
}

TEST_CASE("group axioms hold on random samples across all group kinds") {
  Rng rng(11);
  std::vector<GroupPtr> groups = {
      std::make_shared<CyclicGroup>(1),
      std::make_shared<CyclicGroup>(7),
      std::make_shared<PermGroup>(4),
      parse_group_spec("perm:[1,2,0]"),
      parse_group_spec("product(cyclic:2,sym:3)"),
      parse_group_spec("free:[a,b]"),
      std::make_shared<TowerGroup>(std::make_shared<CyclicGroup>(3), 2),
  };
  for (const auto& G : groups) check_axioms(G, rng, 160);  // >= 10^3 triples total
}

TEST_CASE("spec strings parse to the expected groups") {
  REQUIRE(parse_group_spec("cyclic:7")->order() == 7);
  REQUIRE(parse_group_spec("sym:4")->order() == 24);
  REQUIRE(parse_group_spec("perm:[1,2,0]")->order() == 3);  // generated 3-cycle
  REQUIRE(parse_group_spec("product(cyclic:2,cyclic:3)")->order() == 6);
  REQUIRE_FALSE(parse_group_spec("free:[a,b]")->finite());
  REQUIRE(parse_group_spec("product(cyclic:2,product(sym:3,cyclic:5))")->order() == 60);
  REQUIRE_THROWS(parse_group_spec("nonsense:3"));
  REQUIRE_THROWS(parse_group_spec("perm:[1,1,0]"));
}

TEST_CASE("print/parse round-trips on every element of small groups") {
  for (const char* spec : {"cyclic:7", "sym:4", "perm:[1,2,0]", "product(cyclic:2,sym:3)"}) {
    GroupPtr G = parse_group_spec(spec);
    for (const auto& x : G->elements()) REQUIRE(G->equal(G->parse(G->print(x)), x));
  }
  GroupPtr F = parse_group_spec("free:[a,b]");
  GroupValue w = F->parse("a^2.b^-1.a");
  REQUIRE(F->print(w) == "a^2.b^-1.a");
  REQUIRE(F->print(F->inv(w)) == "a^-1.b.a^-2");
  REQUIRE(F->print(F->mul(w, F->inv(w))) == "1");
}

TEST_CASE("cyclic parse reduces modulo the order") {
  GroupPtr Z7 = parse_group_spec("cyclic:7");
  REQUIRE(Z7->print(Z7->parse("-3")) == "4");
  REQUIRE(Z7->print(Z7->parse("10")) == "3");
}

TEST_CASE("homomorphism checker accepts doubling on cyclic and rejects squaring") {
  Rng rng(5);
  GroupPtr Z5 = parse_group_spec("cyclic:5");
  Homomorphism dbl{Z5, Z5, [](const GroupValue& x) {
                     return GroupValue((std::get<long long>(x.v) * 2) % 5);
                   }};
  REQUIRE(dbl.check(rng));
  Homomorphism sq{Z5, Z5, [](const GroupValue& x) {
                    long long v = std::get<long long>(x.v);
                    return GroupValue((v * v) % 5);
                  }};
  REQUIRE_FALSE(sq.check(rng, 256));
}

TEST_CASE("free reduction cancels and merges across boundaries") {
  GroupPtr F = parse_group_spec("free:[a,b]");
  GroupValue w1 = F->parse("a.b");
  GroupValue w2 = F->parse("b^-1.a^3");
  REQUIRE(F->print(F->mul(w1, w2)) == "a^4");
  REQUIRE(F->print(F->mul(F->parse("a.b.a^-1"), F->parse("a.b^-1.a^-1"))) == "1");
}

TEST_CASE("tower words reduce to free-product normal form") {
  auto Z3 = std::make_shared<CyclicGroup>(3);
  auto T = std::make_shared<TowerGroup>(Z3, 2);

  GroupValue g1 = T->embed_base(GroupValue(1ll));
  GroupValue g2 = T->embed_base(GroupValue(2ll));
  GroupValue u1 = T->letter_value(1, 'u', 1);
  GroupValue t2 = T->letter_value(2, 't', 1);

  // base letters merge: <1><2> = identity in cyclic:3
  REQUIRE(T->is_identity(T->mul(g1, g2)));
  // cancellation across a vanished symbol: <1> u1 u1^-1 <2> = 1
  GroupValue w = T->mul(T->mul(g1, u1), T->mul(T->inv(u1), g2));
  REQUIRE(T->is_identity(w));
  // distinct levels and symbols stay apart
  GroupValue v = T->mul(T->mul(u1, t2), g1);
  REQUIRE(T->print(v) == "u1.t2.<1>");
  REQUIRE(T->equal(T->parse(T->print(v)), v));
  REQUIRE(T->print(T->inv(v)) == "<2>.t2^-1.u1^-1");
  // exponents accumulate
  REQUIRE(T->print(T->mul(u1, u1)) == "u1^2");
}

TEST_CASE("regular witness on cyclic:2 lives in the 24-element ambient group") {
  GroupPtr Z2 = parse_group_spec("cyclic:2");
  MitosisWitness w = build_regular_mitosis(Z2);
  REQUIRE(std::dynamic_pointer_cast<const PermGroup>(w.ambient)->degree() == 4);
  REQUIRE(w.ambient->order() == 24);
  WitnessCheck c = validate_mitosis_witness(w);
  INFO(c.violation);
  REQUIRE(c.ok);
  // u swaps coordinates, so it is an involution
  REQUIRE(w.ambient->is_identity(w.ambient->mul(w.u, w.u)));
}

TEST_CASE("regular witness relations hold exhaustively for small bases") {
  for (const char* spec : {"cyclic:2", "cyclic:3", "sym:3", "product(cyclic:2,cyclic:2)"}) {
    GroupPtr G = parse_group_spec(spec);
    MitosisWitness w = build_regular_mitosis(G);
    const Group& A = *w.ambient;
    WitnessCheck c = validate_mitosis_witness(w);
    INFO(spec << ": " << c.violation);
    REQUIRE(c.ok);
    // exhaustive re-check independent of the validator
    for (const auto& g : G->elements()) {
      GroupValue eg = w.embed(g);
      GroupValue gu = A.conjugate(eg, w.u);
      REQUIRE(A.equal(A.conjugate(eg, w.t), A.mul(eg, gu)));
      REQUIRE(A.equal(A.mul(eg, gu), A.mul(gu, eg)));  // doubled copies commute
      for (const auto& h : G->elements()) {
        GroupValue eh = w.embed(h);
        REQUIRE(A.equal(A.mul(gu, eh), A.mul(eh, gu)));
        REQUIRE(A.equal(w.embed(G->mul(g, h)), A.mul(eg, eh)));
      }
    }
  }
}

TEST_CASE("witness validation rejects u = t = identity on a nontrivial base") {
  GroupPtr Z2 = parse_group_spec("cyclic:2");
  MitosisWitness w = build_regular_mitosis(Z2);
  w.u = w.ambient->identity();
  w.t = w.ambient->identity();
  WitnessCheck c = validate_mitosis_witness(w);
  REQUIRE_FALSE(c.ok);
  REQUIRE_FALSE(c.violation.empty());
}

TEST_CASE("depth-2 witness tower projects words consistently") {
  GroupPtr Z2 = parse_group_spec("cyclic:2");
  WitnessTower tower = build_witness_tower(Z2, 2);
  REQUIRE(tower.ambient(1)->order() == 24);
  REQUIRE(std::dynamic_pointer_cast<const PermGroup>(tower.ambient(2))->degree() == 576);

  const TowerGroup& T = *tower.words;
  GroupValue g = T.embed_base(GroupValue(1ll));
  GroupValue u1 = T.letter_value(1, 'u', 1);
  GroupValue t1 = T.letter_value(1, 't', 1);

  // doubling relation under projection at both levels: t1 g t1^-1 = g * (u1 g u1^-1)
  GroupValue lhs = T.mul(T.mul(t1, g), T.inv(t1));
  GroupValue rhs = T.mul(g, T.mul(T.mul(u1, g), T.inv(u1)));
  REQUIRE_FALSE(T.equal(lhs, rhs));  // syntactically distinct words...
  REQUIRE(tower.equal_at(lhs, rhs, 1));
  REQUIRE(tower.equal_at(lhs, rhs, 2));

  // u1^2 is syntactically nontrivial but projects to the identity
  GroupValue uu = T.mul(u1, u1);
  REQUIRE_FALSE(T.is_identity(uu));
  REQUIRE(tower.equal_at(uu, T.identity(), 1));
  REQUIRE(tower.equal_at(uu, T.identity(), 2));

  // level-2 relation: t2 x t2^-1 = x * (u2 x u2^-1) for x = any level-<=1 word
  GroupValue u2 = T.letter_value(2, 'u', 1);
  GroupValue t2 = T.letter_value(2, 't', 1);
  GroupValue x = T.mul(t1, g);
  GroupValue l2 = T.mul(T.mul(t2, x), T.inv(t2));
  GroupValue r2 = T.mul(x, T.mul(T.mul(u2, x), T.inv(u2)));
  REQUIRE(tower.equal_at(l2, r2, 2));
  // and the doubled copy commutes with the original at level 2
  GroupValue xu = T.mul(T.mul(u2, x), T.inv(u2));
  REQUIRE(tower.equal_at(T.mul(x, xu), T.mul(xu, x), 2));
}

TEST_CASE("projection respects multiplication and inversion on random words") {
  Rng rng(99);
  GroupPtr Z2 = parse_group_spec("cyclic:2");
  WitnessTower tower = build_witness_tower(Z2, 1);
  const Group& T = *tower.words;
  const Group& A = *tower.ambient(1);
  for (int i = 0; i < 50; ++i) {
    GroupValue a = T.sample(rng), b = T.sample(rng);
    REQUIRE(A.equal(tower.project(T.mul(a, b), 1),
                    A.mul(tower.project(a, 1), tower.project(b, 1))));
    REQUIRE(A.equal(tower.project(T.inv(a), 1), A.inv(tower.project(a, 1))));
  }
}
