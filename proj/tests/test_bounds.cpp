#include <catch2/catch_amalgamated.hpp>

#include "cchom/bounds.hpp"

using namespace cchom;

TEST_CASE("constant chain reproduces every committed value") {
  REQUIRE(verify_constant_chain());
  auto chain = constant_chain();
  REQUIRE(chain.size() == 8);
  for (const auto& e : chain) {
    INFO(e.name << " = " << e.derivation);
    REQUIRE(e.value == e.expected);
  }
  REQUIRE(bordism_handle_coeff() == 181545);
  REQUIRE(simplicial_coeff() == 363090);
  REQUIRE(heegaard_coeff() == 251258280);
  REQUIRE(crossing_coeff() == 69713280);
  REQUIRE(framing_coeff() == 34856640);
  REQUIRE(complexity_lower_coeff() == 209139840);
  REQUIRE(lens_bracket_denominator() == 627419520);
}

TEST_CASE("linear bounds from complexity descriptors") {
  RhoBound s1 = rho_bound(ComplexityDescriptor::simplicial(1));
  REQUIRE(s1.value == 363090);
  REQUIRE(s1.derivation.front() == "181545 = 195 + 975*186");

  REQUIRE(rho_bound(ComplexityDescriptor::heegaard(0)).value == 0);
  REQUIRE(rho_bound(ComplexityDescriptor::heegaard(1)).value == 251258280);
  REQUIRE(rho_bound(ComplexityDescriptor::simplicial(7)).value == Int(363090) * 7);

  // surgery splits into a crossing part and a framing part
  RhoBound su = rho_bound(ComplexityDescriptor::surgery(8, {0}));
  REQUIRE(su.value == Int(69713280) * 8);
  REQUIRE(rho_bound(ComplexityDescriptor::surgery(8, {})).value == su.value);
  REQUIRE(rho_bound(ComplexityDescriptor::surgery(3, {-2, 5})).value ==
          Int(69713280) * 3 + Int(34856640) * 7);

  RhoBound bb = rho_bound(ComplexityDescriptor::blackboard(8));
  REQUIRE(bb.value == 278853120);
  REQUIRE_FALSE(bb.derivation.empty());

  REQUIRE_THROWS_AS(ComplexityDescriptor::simplicial(-1), std::invalid_argument);
}

TEST_CASE("framed link files parse into surgery descriptors") {
  ComplexityDescriptor d = parse_framed_link("# unknot, 8-crossing diagram\n"
                                             "crossings 8\n"
                                             "framing 0\n");
  REQUIRE(d.kind == ComplexityDescriptor::Kind::surgery);
  REQUIRE(d.count == 8);
  REQUIRE(d.framing_sum() == 0);
  REQUIRE(rho_bound(d).value == Int(69713280) * 8);

  ComplexityDescriptor two = parse_framed_link("framing -2\nframing 5\ncrossings 3\n");
  REQUIRE(two.framing_sum() == 7);

  REQUIRE_THROWS_WITH(parse_framed_link("framing 1\n"),
                      Catch::Matchers::ContainsSubstring("missing crossings"));
  REQUIRE_THROWS_WITH(parse_framed_link("crossing 8\n"),
                      Catch::Matchers::ContainsSubstring("unknown directive"));
  REQUIRE_THROWS_WITH(parse_framed_link("crossings\n"),
                      Catch::Matchers::ContainsSubstring("missing number"));
}

TEST_CASE("handle ledger accounting") {
  HandleLedger one = handle_ledger(1, 0);
  REQUIRE(one.n2 == 18);
  REQUIRE(one.n1 == 378);
  REQUIRE(one.step2_handles == 6);
  REQUIRE(one.step3_handles == 189);
  REQUIRE(one.total == 195);

  HandleLedger zero = handle_ledger(0, 0);
  REQUIRE(zero.n2 == 0);
  REQUIRE(zero.n1 == 0);
  REQUIRE(zero.total == 0);

  // capping du at 186*dz reproduces the tower coefficient
  HandleLedger tower = handle_ledger(1, 186);
  REQUIRE(tower.total == 181545);
  REQUIRE(tower.total == tower.tower_specialization);

  // total is exactly linear, and the two step counts exhaust it
  for (int dz = 0; dz <= 5; ++dz)
    for (int du = 0; du <= 5; ++du) {
      HandleLedger h = handle_ledger(dz, du);
      REQUIRE(h.total == Int(195) * dz + Int(975) * du);
      REQUIRE(h.total == h.step2_handles + h.step3_handles);
      REQUIRE(h.step2_handles * 3 == h.n2);
      REQUIRE(h.step3_handles * 2 == h.n1);
      if (dz > 0) REQUIRE(handle_ledger(dz - 1, du).total < h.total);
      if (du > 0) REQUIRE(handle_ledger(dz, du - 1).total < h.total);
    }

  REQUIRE_THROWS_AS(handle_ledger(-1, 0), std::invalid_argument);
}

TEST_CASE("lens rho equals the sawtooth oracle") {
  REQUIRE(lens_rho(1) == 0);
  REQUIRE(lens_rho(3) == Rat(2, 9));
  REQUIRE(lens_rho(5) == Rat(4, 5));
  REQUIRE(sawtooth_rho(3) == Rat(2, 9));
  for (Int n = 1; n <= 200; ++n) {
    REQUIRE(lens_rho(n) == sawtooth_rho(n));
    REQUIRE(lens_rho(n) == Rat(n * n - 3 * n + 2, 3 * n));
  }
  REQUIRE_THROWS_AS(lens_rho(0), std::invalid_argument);
  REQUIRE_THROWS_AS(sawtooth_rho(-2), std::invalid_argument);
}

TEST_CASE("lens complexity lower bounds") {
  LensComplexityRecord four = complexity_lower_bounds(4);
  REQUIRE(four.bracket_lower == Rat(1, 627419520));
  REQUIRE(four.bracket_upper == 1);
  REQUIRE(four.bracket_ok);
  REQUIRE(four.rho == lens_rho(4));
  REQUIRE(four.general_lower == four.middle);
  REQUIRE(four.simplicial_lower == abs(four.rho) / 363090);

  Int big = Int(3) * 627419520 + 3;
  REQUIRE(complexity_lower_bounds(big).bracket_lower == 3);

  for (Int n = 4; n <= 50; ++n) {
    LensComplexityRecord r = complexity_lower_bounds(n);
    REQUIRE(r.bracket_ok);
    REQUIRE(r.general_lower >= r.bracket_lower);
    REQUIRE(r.bracket_lower <= Rat(r.bracket_upper));
  }

  REQUIRE(torsion_log_bound(5, 0) == Catch::Approx(2.0));
  REQUIRE(torsion_log_bound(25, 0) == Catch::Approx(4.0));
  REQUIRE(torsion_log_bound(1, 3) == Catch::Approx(3.0));
  REQUIRE(complexity_lower_bounds(5).torsion_comparison == Catch::Approx(2.0));
  REQUIRE_FALSE(complexity_lower_bounds(5).disclaimer.empty());
  REQUIRE_THROWS_AS(complexity_lower_bounds(3), std::invalid_argument);
  REQUIRE_THROWS_AS(torsion_log_bound(0, 0), std::invalid_argument);
}

TEST_CASE("optimality instances re-verify per-n inequalities") {
  OptimalityInstances big = optimality_instances(288);
  REQUIRE(big.s_n == 27648);
  REQUIRE(big.sc_ratio_bound == Rat(1, 288) - Rat(1, 27648));
  REQUIRE(big.sc_identity_ok);
  REQUIRE(big.handle_chain_ok);

  REQUIRE(optimality_instances(4).genus_bound == 0);
  REQUIRE(optimality_instances(6).genus_bound == 1);
  REQUIRE(optimality_instances(1).genus_bound == -1);  // vacuous bound below genus 0

  OptimalityInstances unit = optimality_instances(1);
  REQUIRE(unit.k_bound == 17952);
  REQUIRE(unit.handle_chain_ok);

  REQUIRE(optimality_instances(6).handle_ratio_bound == Rat(1, 2));
  REQUIRE(optimality_instances(3).direct_ratio_bound == 0);
  for (int n = 1; n <= 40; ++n) {
    OptimalityInstances o = optimality_instances(n);
    REQUIRE(o.sc_identity_ok);
    REQUIRE(o.handle_chain_ok);
    REQUIRE(o.handle_ratio_bound == Rat(o.n, 6) - Rat(1, 2));
  }
  REQUIRE_THROWS_AS(optimality_instances(0), std::invalid_argument);
}
