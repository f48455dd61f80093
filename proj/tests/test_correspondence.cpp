#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "subord/correspondence.hpp"

using namespace subord;

namespace {

// enumerate open formulas over the given variables, bounded by modal depth
// and node count; the dual closed family is obtained by negation
std::vector<Formula> open_formulas(const std::vector<std::string>& vars, int max_depth,
                                   std::size_t max_size) {
  std::vector<Formula> pool;
  pool.push_back(f_true());
  pool.push_back(f_false());
  for (auto& v : vars) {
    pool.push_back(f_var(v));
    pool.push_back(f_not(f_var(v)));
  }
  std::set<std::string> seen;
  for (auto& f : pool) seen.insert(print_formula(f));
  std::size_t frontier_start = 0;
  for (int round = 0; round < max_depth + 2; ++round) {
    std::size_t end = pool.size();
    std::vector<Formula> next;
    auto add = [&](Formula f) {
      if (modal_depth(f) > max_depth || formula_size(f) > max_size) return;
      std::string key = print_formula(f);
      if (seen.insert(key).second) next.push_back(std::move(f));
    };
    for (std::size_t i = frontier_start; i < end; ++i) {
      add(f_box(pool[i]));
      add(f_bbox(pool[i]));
      for (std::size_t j = 0; j < end; ++j) {
        add(f_and(pool[i], pool[j]));
        add(f_or(pool[i], pool[j]));
      }
    }
    frontier_start = end;
    for (auto& f : next) pool.push_back(std::move(f));
    if (next.empty()) break;
  }
  return pool;
}

}  // namespace

TEST_CASE("klmn instances: named cases") {
  // box p -> p corresponds to reflexivity
  CorrespondenceTriple refl = correspondent_klmn(0, 1, 0, 0);
  FrameCondition reflexive = parse_frame_condition("A x: x R x");
  for (const KripkeFrame& f : all_frames_up_to(3)) {
    bool expected = eval_frame_condition(reflexive, f);
    REQUIRE(eval_frame_condition(refl.frame_condition, f) == expected);
    REQUIRE(validity(of(f), *refl.white).valid == expected);
  }

  // dia p -> dia p is a tautology and its condition is universally true
  CorrespondenceTriple taut = correspondent_klmn(1, 0, 0, 1);
  for (const KripkeFrame& f : all_frames_up_to(3)) {
    REQUIRE(validity(of(f), *taut.white).valid);
    REQUIRE(eval_frame_condition(taut.frame_condition, f));
  }

  // p -> box dia p corresponds to symmetry
  CorrespondenceTriple sym = correspondent_klmn(0, 0, 1, 1);
  FrameCondition symmetric = parse_frame_condition("A x: A y: x R y -> y R x");
  for (const KripkeFrame& f : all_frames_up_to(3)) {
    REQUIRE(eval_frame_condition(sym.frame_condition, f) == eval_frame_condition(symmetric, f));
    REQUIRE(validity(of(f), *sym.white).valid == eval_frame_condition(symmetric, f));
  }
}

TEST_CASE("klmn family: full agreement for small exponents") {
  // formula, twin, frame condition and algebra condition agree on every
  // frame with up to 3 points; the acceptance suite extends the exponent
  // range to 2
  FamilySpec fam = parse_family("frames:3");
  for (int k = 0; k <= 1; ++k)
    for (int l = 0; l <= 1; ++l)
      for (int m = 0; m <= 1; ++m)
        for (int n = 0; n <= 1; ++n) {
          CorrespondenceTriple t = correspondent_klmn(k, l, m, n);
          EquivalenceReport rep = check_equivalence(t, fam);
          INFO(t.name << " first divergence: " << rep.first_divergence);
          REQUIRE(rep.ok());
          REQUIRE(rep.members_checked == 530);
        }
}

TEST_CASE("builtin triples certify on the exhaustive small family") {
  FamilySpec fam = parse_family("frames:3");
  for (const CorrespondenceTriple& t : builtin_library()) {
    if (t.name == "seriality") continue;  // black gap handled separately below
    EquivalenceReport rep = check_equivalence(t, fam);
    INFO(t.name << " first divergence: " << rep.first_divergence);
    CHECK(rep.ok());
  }
}

TEST_CASE("builtin triples certify on seeded random frames up to 5 points") {
  FamilySpec fam = parse_family("random:5:200:12345");
  for (const CorrespondenceTriple& t : builtin_library()) {
    EquivalenceReport rep = check_equivalence(t, fam);
    INFO(t.name << " first divergence: " << rep.first_divergence);
    CHECK(rep.ok());
    CHECK(rep.members_checked == 200);
  }
}

TEST_CASE("seriality: certified equivalences and the backward-language gap") {
  auto t = builtin_by_name("seriality");
  REQUIRE(t);
  CHECK(check_equivalence(*t, parse_family("frames:3")).ok());

  // the witness pair: the inclusion of {0} into the two-point frame is a
  // backward morphism, yet the subframe loses seriality
  KripkeFrame big = make_frame(2, {{0, 1}, {1, 1}});
  KripkeFrame sub = subframe(big, 0b01);
  FrameMorphismReport inc = check_frame_morphism(sub, big, {0});
  CHECK(inc.satisfies(MorphismKind::black));
  CHECK(eval_frame_condition(t->frame_condition, big));
  CHECK(!eval_frame_condition(t->frame_condition, sub));
}

TEST_CASE("unicolour gap: the five-point frame and its quotient") {
  auto t = builtin_by_name("unicolour-gap");
  REQUIRE(t);
  KripkeFrame x = make_frame(5, {{0, 1}, {2, 3}, {2, 4}});
  CHECK(eval_frame_condition(t->frame_condition, x));
  CHECK(validity(of(x), *t->bicolour).valid);

  PointPartition theta = partition_generated_by(5, {{1, 3}});
  KripkeFrame q = quotient_frame(x, theta);
  CHECK(!eval_frame_condition(t->frame_condition, q));
  CHECK(!validity(of(q), *t->bicolour).valid);
}

TEST_CASE("the scheme correspondent diverges on the accumulation space") {
  auto t = builtin_by_name("scheme-dcb");
  REQUIRE(t);
  OmegaTripleResult res = check_on_omega(*t, accumulation_loop(), 6);
  CHECK(res.formula_valid.at("white"));  // the formula itself holds
  CHECK(!res.condition_holds);           // its first-order correspondent fails
}

TEST_CASE("two printed correspondent forms are discriminated by brute force") {
  Formula phi = parse_formula("p -> <>[]p");
  FrameCondition containment =
      parse_frame_condition("A x: E y: x R y & (A z: y R z -> z = x)");
  FrameCondition equality =
      parse_frame_condition("A x: E y: x R y & y R x & (A z: y R z -> z = x)");
  FamilySpec fam = parse_family("frames:3");
  CHECK(check_equivalence(phi, containment, fam).ok());
  CHECK(check_equivalence(phi, equality, fam).ok());
}

TEST_CASE("two-variable example: named instance checks") {
  auto t = builtin_by_name("two-variable");
  REQUIRE(t);
  // a frame branching into two incomparable successors violates everything
  KripkeFrame branch = make_frame(3, {{0, 1}, {0, 2}});
  CHECK(!eval_frame_condition(t->frame_condition, branch));
  CHECK(!validity(of(branch), *t->white).valid);
  CHECK(!eval_sub_condition(*t->sub_condition, of(branch)));
  // ordering the successors (with loops, since the condition compares a
  // successor with itself) restores all three
  KripkeFrame chain = make_frame(3, {{0, 1}, {0, 2}, {1, 2}, {1, 1}, {2, 2}});
  CHECK(eval_frame_condition(t->frame_condition, chain));
  CHECK(validity(of(chain), *t->white).valid);
  CHECK(eval_sub_condition(*t->sub_condition, of(chain)));
}

TEST_CASE("translation of the guarded box is the atomic condition") {
  Translation tr = translate_geq(parse_formula("[]p"));
  CHECK(tr.target == "q");
  CHECK(print_condition(tr.condition) == "~p -< ~q");
  CHECK(tr.fresh.empty());

  Translation var = translate_geq(parse_formula("p"));
  CHECK(print_condition(var.condition) == "q <= p");

  Translation bb = translate_geq(parse_formula("[+]p"));
  CHECK(print_condition(bb.condition) == "q -< p");
}

TEST_CASE("translation introduces fresh split variables for disjunctions") {
  Translation tr = translate_geq(parse_formula("[]p | []q"));
  CHECK(tr.target == "q'");
  REQUIRE(tr.fresh.size() == 2);
  // shape: E r1: E r2: (~p -< ~r1 & (~q -< ~r2 & q' <= (r1 | r2)))
  CHECK(tr.condition.op == ScOp::exists);
  std::string printed = print_condition(tr.condition);
  CHECK(printed.find("~p -< ~r1") != std::string::npos);
  CHECK(printed.find("~q -< ~r2") != std::string::npos);
  CHECK(printed.find("q' <= (r1 | r2)") != std::string::npos);
}

TEST_CASE("geq translation is sound on every 2-atom structure") {
  // oracle: direct validity of q -> phi under every valuation, compared with
  // the translated first-order sentence under the same assignment
  auto structs = all_valid_subordinations(2);
  std::vector<Formula> opens = open_formulas({"p"}, 2, 5);
  int formulas_checked = 0;
  for (const Formula& phi : opens) {
    SyntaxClass c = classify(phi);
    REQUIRE(c.open);
    Translation tr = translate_geq(phi);
    Formula implication = f_imp(f_var(tr.target), phi);
    ++formulas_checked;
    for (auto& s : structs) {
      for (Elem p = 0; p < s.algebra.size(); ++p) {
        for (Elem q = 0; q < s.algebra.size(); ++q) {
          AlgebraValuation v{{"p", p}, {tr.target, q}};
          bool direct = satisfies(s, implication, v);
          bool translated = eval_sub_condition(tr.condition, s, {{"p", p}, {tr.target, q}});
          REQUIRE(direct == translated);
        }
      }
    }
  }
  CHECK(formulas_checked >= 25);
}

TEST_CASE("leq translation is sound on every 2-atom structure") {
  auto structs = all_valid_subordinations(2);
  std::vector<Formula> opens = open_formulas({"p"}, 2, 4);
  for (const Formula& phi : opens) {
    Translation tr = translate_leq(phi);
    Formula implication = f_imp(phi, f_var(tr.target));
    for (auto& s : structs) {
      for (Elem p = 0; p < s.algebra.size(); ++p)
        for (Elem q = 0; q < s.algebra.size(); ++q) {
          AlgebraValuation v{{"p", p}, {tr.target, q}};
          REQUIRE(satisfies(s, implication, v) ==
                  eval_sub_condition(tr.condition, s, {{"p", p}, {tr.target, q}}));
        }
    }
  }
}

TEST_CASE("translations of closed formulas go through the dual clause") {
  auto structs = all_valid_subordinations(2);
  std::vector<Formula> closed;
  for (const Formula& open : open_formulas({"p"}, 2, 4)) closed.push_back(nnf(open, true));
  for (const Formula& phi : closed) {
    REQUIRE(classify(phi).closed);
    Translation ge = translate_geq(phi);
    Translation le = translate_leq(phi);
    for (auto& s : structs) {
      for (Elem p = 0; p < s.algebra.size(); ++p)
        for (Elem q = 0; q < s.algebra.size(); ++q) {
          AlgebraValuation v{{"p", p}, {"q", q}};
          ElemEnv env{{"p", p}, {"q", q}};
          REQUIRE(satisfies(s, f_imp(f_var("q"), phi), v) == eval_sub_condition(ge.condition, s, env));
          REQUIRE(satisfies(s, f_imp(phi, f_var("q")), v) == eval_sub_condition(le.condition, s, env));
        }
    }
  }
}

TEST_CASE("negative polarity targets the complement") {
  Formula phi = parse_formula("[]p");
  Translation tr = translate_geq(phi, false);
  SubordinationAlgebra s = subordination_leq(powerset_algebra(2));
  for (Elem p = 0; p < s.algebra.size(); ++p)
    for (Elem q = 0; q < s.algebra.size(); ++q) {
      bool direct = satisfies(s, f_imp(f_not(f_var("q")), phi), {{"p", p}, {"q", q}});
      REQUIRE(direct == eval_sub_condition(tr.condition, s, {{"p", p}, {"q", q}}));
    }
}

TEST_CASE("g-closed translation: the box-diamond compound") {
  Formula xi = parse_formula("[]<>p");
  REQUIRE(classify(xi).g_closed);
  GClosedTranslation tr = translate_g_closed(xi);
  REQUIRE(tr.decomposition.size() == 1);
  CHECK(tr.decomposition[0].second == f_dia(f_var("p")));

  // soundness against direct validity on every 2-atom structure
  for (auto& s : all_valid_subordinations(2)) {
    for (Elem p = 0; p < s.algebra.size(); ++p)
      for (Elem q = 0; q < s.algebra.size(); ++q) {
        bool direct = satisfies(s, f_imp(f_var(tr.target), xi), {{"p", p}, {tr.target, q}});
        bool translated = eval_sub_condition(tr.condition, s, {{"p", p}, {tr.target, q}});
        REQUIRE(direct == translated);
      }
  }
}

TEST_CASE("g-closed translation of a closed formula matches the direct route") {
  Formula xi = parse_formula("<>p");
  GClosedTranslation via_g = translate_g_closed(xi);
  Translation direct = translate_geq(xi);
  REQUIRE(via_g.decomposition.size() == 1);  // the whole tree is the closed kernel
  for (auto& s : all_valid_subordinations(2)) {
    for (Elem p = 0; p < s.algebra.size(); ++p)
      for (Elem q = 0; q < s.algebra.size(); ++q) {
        ElemEnv env{{"p", p}, {"q", q}};
        REQUIRE(eval_sub_condition(via_g.condition, s, env) ==
                eval_sub_condition(direct.condition, s, env));
      }
  }
  CHECK_THROWS_AS(translate_g_closed(parse_formula("<>[]p")), std::invalid_argument);
}

TEST_CASE("on finite frames the closed slot of a monotone context is a meet of bounds") {
  // the discrete closure is the identity, so the value at a set equals the
  // intersection of the values at its supersets; checked literally for two
  // shapes of context
  for (const KripkeFrame& f : all_frames_up_to(3)) {
    for (PointMask a = 0; a <= f.all(); ++a) {
      for (const Formula& ctx : {parse_formula("[]p"), parse_formula("<>(p & q) | [+]p")}) {
        FrameValuation v{{"p", a}, {"q", static_cast<PointMask>(f.all() & ~a)}};
        PointMask at_set = eval_on_frame(f, ctx, v);
        PointMask meet = f.all();
        PointMask extra = f.all() & ~a;
        PointMask sub = extra;
        while (true) {
          FrameValuation vo{{"p", static_cast<PointMask>(a | sub)},
                            {"q", static_cast<PointMask>(f.all() & ~a)}};
          meet &= eval_on_frame(f, ctx, vo);
          if (sub == 0) break;
          sub = (sub - 1) & extra;
        }
        bool positive_in_p = classify(ctx).positive;
        if (positive_in_p) REQUIRE(at_set == meet);
      }
    }
  }
}

TEST_CASE("closed kernels intersect their clopen bounds") {
  // on the symbolic space, the box of a closed non-clopen set is the limit
  // of the boxes of its clopen bounds: every prefix of the shrinking chain
  // contains the direct value, and each natural outside the kernel is
  // eventually expelled
  RelationSpec r = accumulation_loop();
  OmegaSet closed_kernel = finite_set({0, 2}, true);
  OmegaSet direct = rel_image(r, Image::box, closed_kernel);
  CHECK(direct == finite_set({0, 2}));

  OmegaSet chain = omega_full();
  OmegaSet acc = omega_full();
  std::vector<OmegaSet> prefix;
  Nat drop = 0;
  for (int step = 0; step < 12; ++step) {
    while (closed_kernel.contains(drop)) ++drop;
    chain = meet(chain, cofinite_set({drop++}, true));
    OmegaSet bound = join(closed_kernel, chain);
    REQUIRE(bound.is_clopen());
    REQUIRE(subset(closed_kernel, bound));
    acc = meet(acc, rel_image(r, Image::box, bound));
    prefix.push_back(acc);
    REQUIRE(subset(direct, acc));
  }
  // strict descent and pointwise convergence on sample naturals
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    REQUIRE(subset(prefix[i], prefix[i - 1]));
    REQUIRE(!(prefix[i] == prefix[i - 1]));
  }
  for (Nat sample : {1u, 3u, 4u, 5u}) {
    CHECK(!direct.contains(sample));
    CHECK(!prefix.back().contains(sample));
  }
}

TEST_CASE("s-Sahlqvist builtins are preserved by the extension on finite structures") {
  auto rng = seeded_rng(404);
  for (const CorrespondenceTriple& t : builtin_library()) {
    for (const Formula& phi : t.formulas()) {
      if (!classify(phi).s_sahlqvist) continue;
      for (int i = 0; i < 10; ++i) {
        SubordinationAlgebra s = random_subordination(rng, 3);
        if (!validity(s, phi).valid) continue;
        CanonicalExtension ext = canonical_extension(s);
        REQUIRE(validity(ext.delta, phi).valid);
      }
    }
  }
}

TEST_CASE("the canonical non-example fails scheme extension on the accumulation space") {
  Formula phi = parse_formula("p -> <>[]p");
  CHECK(classify(phi).sahlqvist);
  CHECK(!classify(phi).s_sahlqvist);
  RelationSpec r = accumulation_loop();
  CHECK(omega_validity_sweep(r, phi, 6).valid);
  Formula instance = substitute(phi, {{"p", parse_formula("p & ~[]p")}});
  CHECK(!omega_validity_sweep(r, instance, 6).valid);
}

TEST_CASE("extension stability separates the stable fragment on the symbolic spaces") {
  // formulas in the stable fragment survive the passage from clopen
  // valuations to arbitrary representable ones; the canonical non-example
  // does not
  for (const RelationSpec& r : {accumulation_loop(), star_loop()}) {
    for (const CorrespondenceTriple& t : builtin_library()) {
      for (const Formula& phi : t.formulas()) {
        if (!classify(phi).s_sahlqvist) continue;
        bool clopen_valid = omega_validity_sweep(r, phi, 5).valid;
        if (clopen_valid) {
          INFO(t.name << ": " << print_formula(phi));
          REQUIRE(omega_extension_sweep(r, phi, 5).valid);
        }
      }
    }
  }
  // the non-example: clopen-valid yet refuted by a representable valuation
  RelationSpec acc = accumulation_loop();
  Formula dcb = parse_formula("p -> <>[]p");
  CHECK(omega_validity_sweep(acc, dcb, 5).valid);
  OmegaValidityReport ext = omega_extension_sweep(acc, dcb, 5);
  CHECK(!ext.valid);
  // the refuting value is the limit singleton, exactly the instance value
  REQUIRE(ext.counterexample.size() == 1);
  CHECK(ext.counterexample[0].second == omega_point());
}

TEST_CASE("the scheme correspondent's backward twin diverges at formula level only") {
  RelationSpec r = accumulation_loop();
  auto t = builtin_by_name("scheme-dcb");
  REQUIRE(t);
  // as formulas the two sides differ on the accumulation space
  CHECK(omega_validity_sweep(r, *t->white, 6).valid);
  CHECK(!omega_validity_sweep(r, *t->black, 6).valid);
  // as schemes both are refuted, so the scheme-level pairing stands
  Formula winst = substitute(*t->white, {{"p", parse_formula("p & ~[]p")}});
  CHECK(!omega_validity_sweep(r, winst, 6).valid);
}

namespace {

Formula mirror(const Formula& f) {
  Formula out{f.op, f.name, {}};
  switch (f.op) {
    case Fop::dia: out.op = Fop::bdia; break;
    case Fop::bdia: out.op = Fop::dia; break;
    case Fop::box: out.op = Fop::bbox; break;
    case Fop::bbox: out.op = Fop::box; break;
    default: break;
  }
  for (auto& k : f.kids) out.kids.push_back(mirror(k));
  return out;
}

RelationSpec converse_spec(const RelationSpec& r) {
  RelationSpec out = r;
  std::swap(out.omega_row, out.omega_col);
  out.base_pairs.clear();
  for (auto [x, y] : r.base_pairs) out.base_pairs.emplace_back(y, x);
  return out;
}

}  // namespace

TEST_CASE("symbolic validity commutes with taking the converse relation") {
  auto rng = seeded_rng(808);
  std::vector<Formula> formulas{
      parse_formula("p -> <>[]p"),    parse_formula("p -> <+>[+]p"), parse_formula("[]p -> <>p"),
      parse_formula("<>p -> <+>p"),   parse_formula("p -> <><+>p"),  parse_formula("<+><>p -> p"),
      parse_formula("(p & ~[]p) -> <>[](p & ~[]p)"),
  };
  for (int t = 0; t < 25; ++t) {
    RelationSpec r;
    r.diagonal = rng_below(rng, 2);
    r.omega_row = rng_below(rng, 2);
    r.omega_col = rng_below(rng, 2);
    r.omega_loop = rng_below(rng, 2);
    if (rng_below(rng, 2))
      r.base_pairs.emplace_back(static_cast<Nat>(rng_below(rng, 4)),
                                static_cast<Nat>(rng_below(rng, 4)));
    RelationSpec rc = converse_spec(r);
    for (const Formula& f : formulas) {
      REQUIRE(omega_validity_sweep(r, f, 4).valid == omega_validity_sweep(rc, mirror(f), 4).valid);
    }
  }
}

TEST_CASE("the exponent family's twin agrees with it on the symbolic spaces") {
  for (const RelationSpec& r : {accumulation_loop(), star_loop()}) {
    for (int k = 0; k <= 1; ++k)
      for (int l = 0; l <= 1; ++l)
        for (int m = 0; m <= 1; ++m)
          for (int n = 0; n <= 1; ++n) {
            CorrespondenceTriple t = correspondent_klmn(k, l, m, n);
            bool white = omega_validity_sweep(r, *t.white, 4).valid;
            bool twin = omega_validity_sweep(r, *t.bicolour, 4).valid;
            INFO(t.name);
            REQUIRE(white == twin);
          }
  }
}

TEST_CASE("builtin formulas transfer through finite products") {
  auto rng = seeded_rng(606);
  for (int t = 0; t < 8; ++t) {
    SubordinationAlgebra a = random_subordination(rng, 2);
    SubordinationAlgebra b = random_subordination(rng, 2);
    ProductResult prod = product({a, b});
    CanonicalProductMap cmap = canonical_product_map({a, b});
    REQUIRE(cmap.good);
    REQUIRE(cmap.s_good);
    for (const CorrespondenceTriple& triple : builtin_library()) {
      for (const Formula& phi : triple.formulas()) {
        bool each = validity(a, phi).valid && validity(b, phi).valid;
        REQUIRE(validity(prod.algebra, phi).valid == each);
      }
    }
  }
}

TEST_CASE("family parsing") {
  CHECK(parse_family("frames:3").points == 3);
  CHECK(parse_family("random:5:200:42").count == 200);
  CHECK(parse_family("random:5:200:42").seed == 42);
  CHECK(parse_family("omega-accumulation").kind == FamilySpec::Kind::omega);
  CHECK_THROWS_AS(parse_family("bogus"), std::invalid_argument);
}
