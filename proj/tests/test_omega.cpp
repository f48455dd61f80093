#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "subord/generate.hpp"
#include "subord/omega.hpp"

using namespace subord;

namespace {

// brute-force oracle over an initial window: checks membership of every
// natural below the horizon plus the limit point
bool agrees_on_window(const OmegaSet& s, const RelationSpec& r, Image img, const OmegaSet& e,
                      Nat horizon) {
  for (Nat y = 0; y < horizon; ++y) {
    bool expect;
    OmegaPoint py = nat_point(y);
    if (img == Image::dia || img == Image::box) {
      expect = false;
      for (Nat z = 0; z < horizon && !expect; ++z)
        if (related(r, py, nat_point(z)) && e.contains(z)) expect = true;
      if (!expect && related(r, py, limit_point()) && e.omega) expect = true;
      if (img == Image::box) expect = !expect;  // oracle called with complemented e
    } else {
      expect = false;
      for (Nat z = 0; z < horizon && !expect; ++z)
        if (related(r, nat_point(z), py) && e.contains(z)) expect = true;
      if (!expect && related(r, limit_point(), py) && e.omega) expect = true;
      if (img == Image::bbox) expect = !expect;
    }
    if (s.contains(y) != expect) return false;
  }
  return true;
}

OmegaSet random_repr(Rng& rng, Nat window = 8) {
  std::vector<Nat> pts;
  for (Nat i = 0; i < window; ++i)
    if (rng_below(rng, 2)) pts.push_back(i);
  bool cof = rng_below(rng, 2);
  bool om = rng_below(rng, 2);
  return cof ? cofinite_set(pts, om) : finite_set(pts, om);
}

}  // namespace

TEST_CASE("set algebra: complement, meet, join, closure") {
  OmegaSet f01 = finite_set({0, 1});
  OmegaSet c = complement(f01);
  CHECK(c.cofinite);
  CHECK(c.omega);
  CHECK(!c.contains(0));
  CHECK(c.contains(5));

  OmegaSet evens_trace = finite_set({0, 2, 4});
  CHECK(meet(f01, evens_trace) == finite_set({0}));
  CHECK(join(f01, evens_trace) == finite_set({0, 1, 2, 4}));

  // closure adds the limit point to infinite sets only
  OmegaSet evens = cofinite_set({1, 3, 5}, false);  // cofinite stand-in for an infinite set
  OmegaSet cl = closure(evens);
  CHECK(cl.omega);
  CHECK(closure(f01) == f01);
}

TEST_CASE("Boolean laws on random representable sets") {
  auto rng = seeded_rng(101);
  for (int t = 0; t < 300; ++t) {
    OmegaSet a = random_repr(rng), b = random_repr(rng), c = random_repr(rng);
    REQUIRE(complement(complement(a)) == a);
    REQUIRE(meet(a, b) == meet(b, a));
    REQUIRE(join(a, meet(b, c)) == meet(join(a, b), join(a, c)));
    REQUIRE(meet(a, complement(a)).empty());
    REQUIRE(join(a, complement(a)).full());
  }
}

TEST_CASE("topology predicates") {
  CHECK(finite_set({0, 1}).is_clopen());
  OmegaSet evens_like = cofinite_set({1, 3, 5}, false);
  CHECK(evens_like.is_open());
  CHECK(!evens_like.is_closed());
  OmegaSet with_omega = finite_set({0}, true);
  CHECK(with_omega.is_closed());
  CHECK(!with_omega.is_open());
  CHECK(omega_full().is_clopen());
  CHECK(omega_empty().is_clopen());
}

TEST_CASE("relational images on the accumulation loop") {
  RelationSpec r = accumulation_loop();

  // predecessors of {0}: the point itself and the limit point
  CHECK(rel_dia(r, finite_set({0})) == finite_set({0}, true));

  // proper clopen containing the limit point is fixed by dia-box
  OmegaSet o = cofinite_set({0}, true);
  OmegaSet dbox = rel_image(r, Image::dia, rel_image(r, Image::box, o));
  CHECK(dbox == o);

  // proper nonempty clopen missing the limit point gains it
  OmegaSet o2 = finite_set({1, 2});
  OmegaSet dbox2 = rel_image(r, Image::dia, rel_image(r, Image::box, o2));
  OmegaSet expected = o2;
  expected.omega = true;
  CHECK(dbox2 == expected);
}

TEST_CASE("relational images on the star loop") {
  RelationSpec r = star_loop();
  OmegaSet e = finite_set({3}, true);  // contains the limit point
  CHECK(rel_bdia(r, e).full());
}

TEST_CASE("images agree with the pointwise oracle on random data") {
  auto rng = seeded_rng(202);
  std::vector<RelationSpec> specs{accumulation_loop(), star_loop()};
  for (int t = 0; t < 40; ++t) {
    RelationSpec r;
    r.diagonal = rng_below(rng, 2);
    r.omega_row = rng_below(rng, 2);
    r.omega_col = rng_below(rng, 2);
    r.omega_loop = rng_below(rng, 2);
    for (int p = 0; p < 3; ++p)
      r.base_pairs.emplace_back(static_cast<Nat>(rng_below(rng, 6)), static_cast<Nat>(rng_below(rng, 6)));
    specs.push_back(r);
  }
  for (auto& r : specs) {
    for (int t = 0; t < 30; ++t) {
      OmegaSet e = random_repr(rng);
      // the window must exceed every exception and base coordinate
      Nat horizon = 64;
      REQUIRE(agrees_on_window(rel_dia(r, e), r, Image::dia, e, horizon));
      REQUIRE(agrees_on_window(rel_bdia(r, e), r, Image::bdia, e, horizon));
      // box round-trips through complement
      REQUIRE(rel_image(r, Image::box, e) == complement(rel_dia(r, complement(e))));
      // limit-point membership of dia: the limit point must see something in e
      OmegaSet d = rel_dia(r, e);
      bool omega_expect = false;
      if (related(r, limit_point(), limit_point()) && e.omega) omega_expect = true;
      for (Nat z = 0; z < horizon && !omega_expect; ++z)
        if (related(r, limit_point(), nat_point(z)) && e.contains(z)) omega_expect = true;
      REQUIRE(d.omega == omega_expect);
    }
  }
}

TEST_CASE("representation closure under images") {
  // closure is structural: every image lands back in the class, so the
  // operations compose indefinitely; spot-check deep compositions
  auto rng = seeded_rng(303);
  for (int t = 0; t < 50; ++t) {
    RelationSpec r;
    r.diagonal = rng_below(rng, 2);
    r.omega_row = rng_below(rng, 2);
    r.omega_col = rng_below(rng, 2);
    OmegaSet e = random_repr(rng);
    for (int step = 0; step < 6; ++step) {
      Image img = static_cast<Image>(rng_below(rng, 4));
      e = rel_image(r, img, e);
    }
    // canonical representation invariants
    REQUIRE(std::is_sorted(e.exceptions.begin(), e.exceptions.end()));
    REQUIRE(std::adjacent_find(e.exceptions.begin(), e.exceptions.end()) == e.exceptions.end());
  }
}

TEST_CASE("clopen subordination satisfies the base axioms on random triples") {
  auto rng = seeded_rng(404);
  RelationSpec specs[] = {accumulation_loop(), star_loop()};
  for (auto& r : specs) {
    for (int t = 0; t < 200; ++t) {
      OmegaSet a = random_repr(rng), b = random_repr(rng), c = random_repr(rng);
      if (!a.is_clopen() || !b.is_clopen() || !c.is_clopen()) continue;
      // S1
      REQUIRE(subordination_holds(r, omega_empty(), omega_empty()));
      REQUIRE(subordination_holds(r, omega_full(), omega_full()));
      // S2
      if (subordination_holds(r, a, b) && subordination_holds(r, a, c))
        REQUIRE(subordination_holds(r, a, meet(b, c)));
      // S3
      if (subordination_holds(r, b, a) && subordination_holds(r, c, a))
        REQUIRE(subordination_holds(r, join(b, c), a));
      // S4
      if (subset(a, b) && subordination_holds(r, b, c)) {
        REQUIRE(subordination_holds(r, a, c));
        REQUIRE(subordination_holds(r, a, join(c, random_repr(rng)).is_clopen()
                                           ? join(c, omega_empty())
                                           : c));
      }
    }
  }
}

TEST_CASE("subordination_holds named cases") {
  RelationSpec r = accumulation_loop();
  CHECK(subordination_holds(r, omega_empty(), finite_set({4})));
  CHECK(!subordination_holds(r, finite_set({0}), finite_set({0})));
  CHECK(subordination_holds(r, finite_set({0}), cofinite_set({2}, true)));
  CHECK_THROWS_AS(subordination_holds(r, finite_set({0}, true), omega_full()),
                  std::invalid_argument);
}

TEST_CASE("principality of forward rows") {
  RelationSpec r = accumulation_loop();

  PrincipalityReport empty = nonprincipal_witness(r, omega_empty());
  CHECK(empty.principal);
  CHECK(empty.generator == omega_empty());

  PrincipalityReport at0 = nonprincipal_witness(r, finite_set({0}), 5);
  CHECK(!at0.principal);
  REQUIRE(at0.chain.size() == 5);
  for (std::size_t i = 0; i < at0.chain.size(); ++i) {
    REQUIRE(at0.chain[i].is_clopen());
    REQUIRE(subset(rel_dia(r, finite_set({0})), at0.chain[i]));
    if (i > 0) {
      REQUIRE(subset(at0.chain[i], at0.chain[i - 1]));
      REQUIRE(!(at0.chain[i] == at0.chain[i - 1]));
    }
  }

  OmegaSet with_omega = cofinite_set({1}, true);
  PrincipalityReport princ = nonprincipal_witness(r, with_omega);
  CHECK(princ.principal);
  CHECK(princ.generator == with_omega);
}

TEST_CASE("the defining formula of the non-normal space") {
  RelationSpec r = accumulation_loop();
  Formula phi = parse_formula("p -> <>[]p");

  // the formula holds under every clopen valuation from the bounded family
  OmegaValidityReport rep = omega_validity_sweep(r, phi, 6);
  CHECK(rep.valid);
  CHECK(rep.valuations_checked == 256);

  // the instance with p wedge not box p fails: the antecedent value is the
  // limit singleton and the consequent value is empty
  Formula psi = parse_formula("p & ~[]p");
  OmegaValuation v{{"p", cofinite_set({0}, true)}};
  OmegaSet psi_val = eval_omega_formula(r, psi, v);
  CHECK(psi_val == omega_point());
  OmegaSet dbox_psi = rel_image(r, Image::dia, rel_image(r, Image::box, psi_val));
  CHECK(dbox_psi == omega_empty());

  Formula instance = parse_formula("(p & ~[]p) -> <>[](p & ~[]p)");
  OmegaSet inst_val = eval_omega_formula(r, instance, v);
  CHECK(!inst_val.full());
  CHECK(!inst_val.omega);  // fails exactly at the limit point
}

TEST_CASE("validity sweeps are stable as the exception bound grows") {
  RelationSpec acc = accumulation_loop();
  RelationSpec star = star_loop();
  std::vector<Formula> formulas{
      parse_formula("p -> <>[]p"),
      parse_formula("(p & ~[]p) -> <>[](p & ~[]p)"),
      parse_formula("p -> <><+>p"),
      parse_formula("<>p -> <+>p"),
      parse_formula("[]p -> p"),
  };
  for (const RelationSpec& r : {acc, star}) {
    for (const Formula& f : formulas) {
      bool at4 = omega_validity_sweep(r, f, 4).valid;
      REQUIRE(omega_validity_sweep(r, f, 6).valid == at4);
      REQUIRE(omega_validity_sweep(r, f, 8).valid == at4);
    }
  }
  // with base pairs the window stretches to cover them
  RelationSpec with_base = accumulation_loop();
  with_base.base_pairs.emplace_back(9, 2);
  OmegaValidityReport rep = omega_validity_sweep(with_base, parse_formula("[]p -> p"), 2);
  CHECK(rep.exception_bound >= 10);
}

TEST_CASE("congruences on the star loop: the two good partitions") {
  RelationSpec r = star_loop();

  // classes {2i, 2i+1} and the limit singleton
  EquivSpec theta;
  theta.periodic = EquivSpec::Periodic{0, 2, {0, 1}};
  EquivCongruenceReport t = congruence_check(r, theta);
  REQUIRE(t.well_formed);
  CHECK(t.classes_closed);
  CHECK(t.separation);
  CHECK(t.zigzag);

  // classes {0,1}, {2}, {2i+3, 2i+4} and the limit singleton
  EquivSpec xi;
  xi.blocks = {{0, 1}, {2}};
  xi.periodic = EquivSpec::Periodic{3, 2, {0, 1}};
  EquivCongruenceReport x = congruence_check(r, xi);
  REQUIRE(x.well_formed);
  CHECK(x.zigzag);
}

TEST_CASE("the join of the two congruences fails the transfer condition") {
  RelationSpec r = star_loop();
  // Boolean join: classes {0,1} and its complement including the limit point
  EquivSpec join_spec;
  join_spec.blocks = {{0, 1}};
  join_spec.omega_rest = true;
  EquivCongruenceReport rep = congruence_check(r, join_spec);
  REQUIRE(rep.well_formed);
  CHECK(rep.classes_closed);
  CHECK(rep.separation);
  CHECK(!rep.zigzag);
  REQUIRE(rep.violation.size() == 3);
  CHECK(to_string(rep.violation[0]) == "2");
  CHECK(to_string(rep.violation[1]) == "omega");
  CHECK(to_string(rep.violation[2]) == "0");
}

TEST_CASE("limit-class criterion holds one way on the star loop instances") {
  // for the star loop, congruence implies the limit class is trivial or
  // everything; checked over the spec family with small parameters
  RelationSpec r = star_loop();
  for (int with_rest = 0; with_rest < 2; ++with_rest) {
    for (Nat period = 1; period <= 3; ++period) {
      EquivSpec e;
      e.periodic = EquivSpec::Periodic{0, period, {}};
      for (Nat s = 0; s < period; ++s) e.periodic->shape.push_back(s);
      e.omega_rest = with_rest;
      if (with_rest) e.periodic.reset();
      EquivCongruenceReport rep = congruence_check(r, e);
      if (!rep.well_formed) continue;
      if (rep.zigzag) {
        bool limit_singleton = !e.omega_rest;
        bool limit_everything = e.omega_rest && e.blocks.empty();
        REQUIRE((limit_singleton || limit_everything));
      }
    }
  }
}

TEST_CASE("partition checks are stable under wider windows") {
  auto rng = seeded_rng(607);
  for (int t = 0; t < 40; ++t) {
    RelationSpec r;
    r.diagonal = rng_below(rng, 2);
    r.omega_row = rng_below(rng, 2);
    r.omega_col = rng_below(rng, 2);
    if (rng_below(rng, 2))
      r.base_pairs.emplace_back(static_cast<Nat>(rng_below(rng, 5)),
                                static_cast<Nat>(rng_below(rng, 5)));
    EquivSpec e;
    Nat period = 1 + static_cast<Nat>(rng_below(rng, 3));
    e.periodic = EquivSpec::Periodic{static_cast<Nat>(rng_below(rng, 4)), period, {}};
    for (Nat s = 0; s < period; ++s) e.periodic->shape.push_back(s);
    for (Nat b = 0; b < e.periodic->offset; ++b) e.blocks.push_back({b});
    if (rng_below(rng, 3) == 0) {
      e.blocks.clear();
      e.periodic.reset();
      e.omega_rest = true;
    }
    EquivCongruenceReport base = congruence_check(r, e);
    for (Nat extra : {7u, 19u}) {
      EquivCongruenceReport wide = congruence_check(r, e, extra);
      REQUIRE(base.well_formed == wide.well_formed);
      if (!base.well_formed) continue;
      REQUIRE(base.zigzag == wide.zigzag);
      if (!base.zigzag) REQUIRE(base.violation == wide.violation);
    }
  }
}

TEST_CASE("ill-formed partition specs are rejected") {
  RelationSpec r = star_loop();
  EquivSpec overlap;
  overlap.blocks = {{0, 1}, {1, 2}};
  overlap.omega_rest = true;
  CHECK(congruence_check(r, overlap).problem == "blocks overlap");

  EquivSpec uncovered;
  uncovered.blocks = {{0}};
  CHECK(!congruence_check(r, uncovered).well_formed);

  EquivSpec bad_shape;
  bad_shape.periodic = EquivSpec::Periodic{0, 2, {2}};
  CHECK(congruence_check(r, bad_shape).problem == "shape outside the period");
}

TEST_CASE("smoothness over representable sets") {
  RelationSpec r = accumulation_loop();

  // clopen: all three trivially agree
  OmegaSet clop = finite_set({1, 2});
  CHECK(sigma_pi_symbolic(r, clop).smooth());

  // open, not closed
  OmegaSet open_set = cofinite_set({1, 3, 5}, false);
  OmegaSigmaPi rep = sigma_pi_symbolic(r, open_set);
  CHECK(rep.smooth());
  OmegaSet expect = open_set;
  expect.omega = true;  // the limit point sees the whole trace
  CHECK(rep.direct == expect);

  // closed, not open
  OmegaSet closed_set = finite_set({0, 2, 4}, true);
  CHECK(sigma_pi_symbolic(r, closed_set).smooth());

  auto rng = seeded_rng(505);
  for (int t = 0; t < 120; ++t) {
    RelationSpec rr;
    rr.diagonal = rng_below(rng, 2);
    rr.omega_row = rng_below(rng, 2);
    rr.omega_col = rng_below(rng, 2);
    for (int p = 0; p < 2; ++p)
      rr.base_pairs.emplace_back(static_cast<Nat>(rng_below(rng, 5)), static_cast<Nat>(rng_below(rng, 5)));
    OmegaSet e = random_repr(rng);
    OmegaSigmaPi sp = sigma_pi_symbolic(rr, e);
    REQUIRE(sp.smooth());
  }
}
