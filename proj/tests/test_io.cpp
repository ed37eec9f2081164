#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "gen.hpp"
#include "laplace/io.hpp"
#include "laplace/normalize.hpp"
#include "laplace/one_dim.hpp"

using namespace laplace;

TEST_CASE("series JSON roundtrip") {
  gen::Gen g(3);
  for (int t = 0; t < 8; ++t) {
    int d = g.uniform(1, 3);
    TruncatedSeries s(d, 5);
    g.sprinkle(s, 0, 5, 3);
    auto back = series_from_json(series_to_json(s));
    CHECK(back.dim() == s.dim());
    CHECK(back.trunc() == s.trunc());
    CHECK(back.same_jet(s));
    // serialization is stable: dump(load(dump)) = dump
    CHECK(series_to_json(back).dump() == series_to_json(s).dump());
  }
}

TEST_CASE("series JSON validation") {
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"trunc":3,"terms":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      series_from_json(Json::parse(
          R"({"dim":2,"trunc":3,"terms":[{"alpha":[1],"coeff":"1"}]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      series_from_json(Json::parse(
          R"({"dim":1,"trunc":3,"terms":[{"alpha":[-1],"coeff":"1"}]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      series_from_json(Json::parse(
          R"({"dim":1,"trunc":3,"terms":[{"alpha":[1],"coeff":"x"}]})")),
      std::invalid_argument);
  // rationals must be strings, never JSON numbers
  auto j = series_to_json(TruncatedSeries::constant(1, 2, rat(1, 3)));
  CHECK(j["terms"][0]["coeff"].is_string());
  CHECK(j["terms"][0]["coeff"] == "1/3");
}

TEST_CASE("phylon JSON roundtrip") {
  gen::Gen g(5);
  for (int t = 0; t < 6; ++t) {
    int d = g.uniform(1, 3);
    auto psi = g.random_phylon(d, 5);
    auto back = phylon_from_json(phylon_to_json(psi));
    CHECK(back.dim() == d);
    for (int i = 1; i <= d; ++i)
      CHECK(back.component(i).same_jet(psi.component(i)));
  }
}

TEST_CASE("instance JSON roundtrip with and without psi") {
  gen::Gen g(7);
  auto pair = g.random_pair(2, 6, 5);
  ProblemInstance inst{pair, g.random_phylon(2, 6)};
  auto j = instance_to_json(inst);
  auto back = instance_from_json(j);
  CHECK(back.pair.f().same_jet(pair.f()));
  CHECK(back.pair.b().same_jet(pair.b()));
  REQUIRE(back.psi.has_value());
  CHECK(back.psi->component(1).same_jet(inst.psi->component(1)));
  CHECK(instance_to_json(back).dump() == j.dump());

  ProblemInstance plain{pair, std::nullopt};
  auto back2 = instance_from_json(instance_to_json(plain));
  CHECK(!back2.psi.has_value());

  // malformed pairs are rejected on load with the library's validation
  Json bad = j;
  bad["b"]["terms"] = Json::array();  // b(0) = 0
  CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
}

TEST_CASE("invariant and verdict serialization") {
  ScaledInvariant v{2, 2, Rat(4), rat(-3, 7)};
  auto j = invariant_to_json(v);
  CHECK(j["order"] == 2);
  CHECK(j["prefactor"]["two_pi_exp"] == "2/2");
  CHECK(j["prefactor"]["det_f"] == "4");
  CHECK(j["rational_part"] == "-3/7");

  EquivalenceVerdict no;
  no.equivalent = false;
  no.failure_order = 3;
  auto jn = verdict_to_json(no);
  CHECK(jn["equivalent"] == false);
  CHECK(jn["failure_order"] == 3);

  EquivalenceVerdict yes;
  yes.equivalent = true;
  yes.witness = EquivalenceWitness{PhylonMap::identity(2, 4), 4};
  auto jy = verdict_to_json(yes);
  CHECK(jy["equivalent"] == true);
  CHECK(jy["witness"]["verified_to"] == 4);
  auto w = witness_from_json(jy["witness"]);
  CHECK(w.verified_to == 4);
  CHECK(w.psi.is_identity_jet(4));
}

TEST_CASE("lambda sequence serialization") {
  LambdaSequence seq;
  seq.radicand = rat(3, 2);
  seq.values = {QuadExt(Rat(1)), QuadExt(Rat(0), rat(1, 2), rat(3, 2))};
  auto j = lambda_sequence_to_json(seq);
  CHECK(j["radicand"] == "3/2");
  CHECK(j["values"][0]["a"] == "1");
  CHECK(j["values"][0]["b"] == "0");
  CHECK(j["values"][1]["b"] == "1/2");
}

TEST_CASE("file load and save") {
  gen::Gen g(9);
  auto pair = g.random_pair(2, 5, 4);
  std::string path = "io_test_tmp.json";
  save_json_file(path, instance_to_json(ProblemInstance{pair, std::nullopt}));
  auto back = load_instance_file(path);
  CHECK(back.pair.f().same_jet(pair.f()));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_instance_file("does_not_exist.json"),
                  std::invalid_argument);
}
