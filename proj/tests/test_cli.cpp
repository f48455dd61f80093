#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cli_app.hpp"

using namespace subord;
using namespace subord::cli;

namespace {

struct RunOutcome {
  int code;
  std::string out;
  std::string err;
};

RunOutcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/subord_cli_" + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("exit codes: pass, violation, input error") {
  std::string ok = write_temp("ok.json",
                              R"({"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]})");
  RunOutcome pass = run({"check", ok, "--axioms", "S1,S2,S3,S4"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("result: pass") != std::string::npos);

  std::string bad = write_temp("bad.json", R"({"algebra":{"atoms":1},"prec":[[[0],[0]]]})");
  RunOutcome fail = run({"check", bad, "--axioms", "S1"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("axiom S1: FAIL witness=([])") != std::string::npos);

  std::string garbage = write_temp("garbage.json", "{not json");
  RunOutcome err = run({"check", garbage});
  CHECK(err.code == 2);
  CHECK(err.err.find("error:") != std::string::npos);

  RunOutcome missing = run({"check", "/tmp/subord_definitely_missing.json"});
  CHECK(missing.code == 2);
}

TEST_CASE("byte-identical reports for identical invocations") {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"examples", "omega-congruences"},
        std::vector<std::string>{"correspond", "--builtin", "symmetry", "--family", "random:4:40:7"},
        std::vector<std::string>{"validate", "--structure", "omega-accumulation", "--formula",
                                 "p -> <>[]p", "--scheme"}}) {
    RunOutcome first = run(args);
    RunOutcome second = run(args);
    REQUIRE(first.out == second.out);
    REQUIRE(first.code == second.code);
  }
}

TEST_CASE("seed changes the random family deterministically") {
  RunOutcome a1 = run({"correspond", "--builtin", "symmetry", "--family", "random:4:40:7"});
  RunOutcome a2 = run({"correspond", "--builtin", "symmetry", "--family", "random:4:40:8"});
  CHECK(a1.code == 0);
  CHECK(a2.code == 0);  // verdicts agree even though the members differ
}

TEST_CASE("json format produces structured output") {
  std::string ok = write_temp("ok2.json",
                              R"({"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]})");
  RunOutcome rep = run({"--format", "json", "check", ok, "--axioms", "S1"});
  CHECK(rep.code == 0);
  Json j = Json::parse(rep.out);
  CHECK(j.at("result") == "pass");
  CHECK(j.at("axiom S1") == "ok");

  RunOutcome bad_format = run({"--format", "yaml", "check", ok});
  CHECK(bad_format.code == 2);
}

TEST_CASE("congruence and subalgebra checks through the CLI") {
  std::string cong = write_temp(
      "cong.json",
      R"({"structure":{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
          "partition":[[[]],[[0]]]})");
  RunOutcome c = run({"check", cong, "--kind", "white"});
  CHECK(c.code == 0);
  CHECK(c.out.find("white round ideal: ok") != std::string::npos);

  std::string sub = write_temp(
      "sub.json",
      R"({"structure":{"algebra":{"atoms":2},
                       "prec":[[[],[]],[[],[0]],[[],[1]],[[],[0,1]],[[0],[0]],[[0],[0,1]],
                               [[1],[1]],[[1],[0,1]],[[0,1],[0,1]]]},
          "generators":[[0]]})");
  RunOutcome s = run({"check", sub, "--kind", "white"});
  CHECK(s.code == 0);
  CHECK(s.out.find("generated subalgebra") != std::string::npos);
}

TEST_CASE("morphism check and filter check through the CLI") {
  std::string mor = write_temp(
      "mor.json",
      R"({"source":{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
          "target":{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
          "map":[[[],[]],[[0],[0]]],
          "kind":"strong"})");
  RunOutcome m = run({"check", mor, "--kind", "strong"});
  CHECK(m.code == 0);

  std::string filt = write_temp("filt.json",
                                R"({"algebra":{"atoms":2},"set":[[0],[0,1]],"tag":"filter"})");
  RunOutcome f = run({"check", filt});
  CHECK(f.code == 0);
  CHECK(f.out.find("generator: [0]") != std::string::npos);
  CHECK(f.out.find("principal: yes") != std::string::npos);
}

TEST_CASE("operator induction and tense checks through the CLI") {
  std::string op = write_temp("op.json",
                              R"({"algebra":{"atoms":1},"operator":[[],[0]],"colour":"white"})");
  RunOutcome o = run({"check", op, "--axioms", "S1,S2,S3,S4", "--multi"});
  CHECK(o.code == 0);
  CHECK(o.out.find("multi-operator meet law: ok") != std::string::npos);

  std::string tense = write_temp(
      "tense.json",
      R"({"frame":{"points":["a","b"],"edges":[["a","b"]]},
          "backward_frame":{"points":["a","b"],"edges":[["b","a"]]}})");
  RunOutcome t = run({"check", tense});
  CHECK(t.code == 0);

  std::string tense_bad = write_temp(
      "tense_bad.json",
      R"({"frame":{"points":["a","b"],"edges":[["a","b"]]},
          "backward_frame":{"points":["a","b"],"edges":[["a","b"]]}})");
  RunOutcome tb = run({"check", tense_bad});
  CHECK(tb.code == 1);
  CHECK(tb.out.find("tense T1: FAIL") != std::string::npos);
}

TEST_CASE("dualize round trips and the extension") {
  std::string frame = write_temp("frame.json",
                                 R"({"points":["a","b"],"edges":[["a","b"],["b","b"]]})");
  RunOutcome d = run({"dualize", frame});
  CHECK(d.code == 0);
  CHECK(d.out.find("round trip") != std::string::npos);

  std::string alg = write_temp("alg.json",
                               R"({"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]})");
  RunOutcome u = run({"dualize", alg, "--op", "ult"});
  CHECK(u.code == 0);
  CHECK(u.out.find("discrete agrees: ok") != std::string::npos);

  RunOutcome delta = run({"dualize", alg, "--op", "delta"});
  CHECK(delta.code == 0);
  CHECK(delta.out.find("natural map injective: ok") != std::string::npos);

  RunOutcome sp = run({"dualize", alg, "--op", "sigmapi", "--set", "[0]"});
  CHECK(sp.code == 0);
  CHECK(sp.out.find("smooth: ok") != std::string::npos);
}

TEST_CASE("quotient, product and modalize through the CLI") {
  std::string q = write_temp(
      "quot.json",
      R"({"structure":{"algebra":{"atoms":2},
                       "prec":[[[],[]],[[],[0]],[[],[1]],[[],[0,1]],[[0],[0]],[[0],[0,1]],
                               [[1],[1]],[[1],[0,1]],[[0,1],[0,1]]]},
          "partition":[[[],[0]],[[1],[0,1]]]})");
  // the congruence with zero class below atom 0: cosets {0,a0} and {a1,1}
  RunOutcome quo = run({"quotient", q, "--kind", "white", "--lattice", "--iso-theorems"});
  CHECK(quo.code == 0);
  CHECK(quo.out.find("projection kind: ok") != std::string::npos);
  CHECK(quo.out.find("isomorphism theorem 3: ok") != std::string::npos);

  std::string p = write_temp(
      "prod.json",
      R"({"factors":[{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
                     {"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]}]})");
  RunOutcome prod = run({"product", p});
  CHECK(prod.code == 0);
  CHECK(prod.out.find("good family: yes") != std::string::npos);

  std::string m = write_temp("mod.json",
                             R"({"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]})");
  RunOutcome mod = run({"modalize", m, "--colour", "bi"});
  CHECK(mod.code == 0);
  CHECK(mod.out.find("closure size: 2") != std::string::npos);
}

TEST_CASE("validate on finite structures and parse errors") {
  std::string alg = write_temp("val.json",
                               R"({"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]})");
  RunOutcome v = run({"validate", "--structure", alg, "--formula", "p -> <>p"});
  CHECK(v.code == 0);

  RunOutcome bad = run({"validate", "--structure", alg, "--formula", "p ->"});
  CHECK(bad.code == 2);

  std::string frame = write_temp("val_frame.json",
                                 R"({"points":["a","b","c"],"edges":[["a","b"],["b","c"],["c","a"]]})");
  RunOutcome serial = run({"validate", "--structure", frame, "--formula", "[]p -> <>p"});
  CHECK(serial.code == 0);
}

TEST_CASE("correspond against explicit conditions") {
  RunOutcome eq = run({"correspond", "--formula", "[]p -> p", "--condition", "A x: x R x",
                       "--family", "frames:3"});
  CHECK(eq.code == 0);
  CHECK(eq.out.find("divergences: 0") != std::string::npos);

  RunOutcome diverge = run({"correspond", "--formula", "[]p -> p", "--condition", "A x: E y: x R y",
                            "--family", "frames:2"});
  CHECK(diverge.code == 1);

  RunOutcome sub = run({"correspond", "--formula", "<>[]p -> p", "--sub-condition",
                        "A a: A b: a -< b -> ~b -< ~a", "--family", "frames:3"});
  CHECK(sub.code == 0);

  RunOutcome omega = run({"correspond", "--builtin", "scheme-dcb", "--family", "omega-accumulation"});
  CHECK(omega.code == 0);
  CHECK(omega.out.find("formula white: valid (bounded)") != std::string::npos);
  CHECK(omega.out.find("condition: fails") != std::string::npos);
}

TEST_CASE("unknown example is rejected") {
  RunOutcome r = run({"examples", "does-not-exist"});
  CHECK(r.code == 2);
}

TEST_CASE("bad bounds are rejected") {
  CHECK(run({"--max-atoms", "0", "examples", "klmn"}).code == 2);
  CHECK(run({"--max-atoms", "99", "examples", "klmn"}).code == 2);
}

TEST_CASE("symbolic partitions check through the CLI") {
  std::string good = write_temp(
      "equiv.json",
      R"({"relation":{"diagonal":true,"omega_row":true,"omega_col":true},
          "equivalence":{"blocks":[],"periodic":{"offset":0,"period":2,"shape":[0,1]},
                         "omega_class":"singleton"}})");
  RunOutcome g = run({"check", good});
  CHECK(g.code == 0);

  std::string join = write_temp(
      "equiv_join.json",
      R"({"relation":{"diagonal":true,"omega_row":true,"omega_col":true},
          "equivalence":{"blocks":[[0,1]],"omega_class":"rest"}})");
  RunOutcome j = run({"check", join});
  CHECK(j.code == 1);
  CHECK(j.out.find("FAIL at (2, omega, 0)") != std::string::npos);
}

TEST_CASE("formulas, conditions and relations are accepted as JSON") {
  std::string rel = write_temp(
      "rel.json", R"({"diagonal":true,"omega_row":true,"omega_col":false,"omega_loop":false})");
  RunOutcome v = run({"validate", "--structure", rel, "--formula",
                      R"({"op":"imp","args":[{"op":"var","name":"p"},
                          {"op":"dia","args":[{"op":"box","args":[{"op":"var","name":"p"}]}]}]})"});
  CHECK(v.code == 0);
  CHECK(v.out.find("formula: p -> <>[]p") != std::string::npos);

  RunOutcome c = run({"correspond", "--formula", "[]p -> p", "--condition",
                      R"({"op":"forall","var":"x","body":{"op":"rel","lhs":"x","rhs":"x"}})",
                      "--family", "frames:2"});
  CHECK(c.code == 0);
  CHECK(c.out.find("divergences: 0") != std::string::npos);

  RunOutcome s = run({"correspond", "--formula", "<>[]p -> p", "--sub-condition",
                      R"({"op":"forall","var":"a","body":{"op":"forall","var":"b","body":
                          {"op":"imp","args":[
                            {"op":"prec","power":1,"lhs":{"op":"var","name":"a"},"rhs":{"op":"var","name":"b"}},
                            {"op":"prec","power":1,"lhs":{"op":"not","args":[{"op":"var","name":"b"}]},
                             "rhs":{"op":"not","args":[{"op":"var","name":"a"}]}}]}}})",
                      "--family", "frames:2"});
  CHECK(s.code == 0);
}

TEST_CASE("environment variables supply the default flags") {
  // the symbolic sweep reports its exception bound, so the override shows
  setenv("SUBORD_K", "2", 1);
  RunOutcome env = run({"validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p"});
  unsetenv("SUBORD_K");
  CHECK(env.code == 0);
  CHECK(env.out.find("{0..2}") != std::string::npos);

  // an explicit flag wins over the environment
  setenv("SUBORD_K", "2", 1);
  RunOutcome flag =
      run({"--k", "3", "validate", "--structure", "omega-accumulation", "--formula", "p -> <>[]p"});
  unsetenv("SUBORD_K");
  CHECK(flag.out.find("{0..3}") != std::string::npos);

  setenv("SUBORD_FORMAT", "json", 1);
  RunOutcome json_out = run({"examples", "omega-congruences"});
  unsetenv("SUBORD_FORMAT");
  CHECK_NOTHROW(Json::parse(json_out.out));
}

TEST_CASE("every operation is reachable from a subcommand") {
  std::set<std::string> commands{"check", "dualize", "quotient", "product",
                                 "modalize", "validate", "correspond", "examples"};
  std::set<std::string> expected_ops{
      "powerset_algebra", "filter_ideal_check", "generated_boolean_subalgebra",
      "check_boolean_morphism", "check_axioms", "from_operator", "to_multi_operator",
      "check_morphism", "is_congruence", "congruence_lattice", "quotient", "isomorphism_theorems",
      "is_subalgebra", "product", "ult", "of", "dual_morphism", "discrete_duals",
      "canonical_extension", "factor_through_delta", "modalize", "canonical_product_map",
      "sigma_pi_extension", "set_ops", "rel_images", "subordination_holds", "nonprincipal_witness",
      "eval_formula", "congruence_check", "sigma_pi_symbolic", "parse", "eval", "validity",
      "scheme_validity", "classify", "tense_check", "eval_frame_condition", "eval_sub_condition",
      "builtin_library", "correspondent_klmn", "translate_leq", "translate_geq",
      "translate_g_closed", "check_equivalence"};
  std::set<std::string> covered;
  for (auto& [op, cmd] : operation_coverage()) {
    REQUIRE(commands.count(cmd) == 1);
    covered.insert(op);
  }
  for (auto& op : expected_ops) {
    INFO(op);
    REQUIRE(covered.count(op) == 1);
  }
}

TEST_CASE("JSON views are faithful on random structures") {
  auto rng = seeded_rng(137);
  for (int t = 0; t < 40; ++t) {
    SubordinationAlgebra s = random_subordination(rng, 1 + static_cast<int>(rng_below(rng, 3)));
    REQUIRE(subordination_from_json(subordination_to_json(s)) == s);

    KripkeFrame f = random_frame(rng, 1 + static_cast<int>(rng_below(rng, 4)));
    REQUIRE(frame_from_json(frame_to_json(f)) == f);

    std::vector<Nat> pts;
    for (Nat i = 0; i < 6; ++i)
      if (rng_below(rng, 2)) pts.push_back(i);
    OmegaSet o = rng_below(rng, 2) ? cofinite_set(pts, rng_below(rng, 2))
                                   : finite_set(pts, rng_below(rng, 2));
    REQUIRE(omega_set_from_json(omega_set_to_json(o)) == o);
  }
  // formulas and conditions
  Formula phi = parse_formula("p -> <>([]q & <+>p)");
  REQUIRE(formula_from_json(formula_to_json(phi)) == phi);
  FrameCondition fc = parse_frame_condition("A x: E y: x R2 y & ~(y = x)");
  REQUIRE(frame_condition_from_json(condition_to_json(fc)) == fc);
  SubCondition sc = parse_sub_condition("A a: E b: (a -<2 b) & (b _|_ ~a)");
  REQUIRE(sub_condition_from_json(condition_to_json(sc)) == sc);
}

TEST_CASE("the factor operation surfaces through dualize") {
  std::string f = write_temp(
      "factor.json",
      R"({"source":{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
          "target":{"algebra":{"atoms":1},"prec":[[[],[]],[[],[0]],[[0],[0]]]},
          "map":[[[],[]],[[0],[0]]]})");
  RunOutcome r = run({"dualize", f, "--op", "factor"});
  CHECK(r.code == 0);
  CHECK(r.out.find("unique: ok") != std::string::npos);
}
