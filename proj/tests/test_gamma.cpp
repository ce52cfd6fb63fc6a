#include <doctest.h>

#include "hlskit/consistency.hpp"
#include "hlskit/errors.hpp"
#include "hlskit/gamma.hpp"
#include "test_support.hpp"

using namespace hlskit;
using namespace hlskit::test;

using Chain = std::vector<std::string>;

TEST_CASE("single block in the open range is BASE") {
  auto r = gamma_member(spec({1}, {"2"}, {"4"}, "3/4"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"BASE"});
  CHECK(r.reason.empty());
}

TEST_CASE("first classical counterexample: q_1 = inf and p_2 = q_2") {
  auto r = gamma_member(spec({1, 1}, {"2", "3"}, {"inf", "3"}, "3/2"));
  CHECK_FALSE(r.member);
  // T5 drops the second block, the remaining one-block base fails at q_1 = inf
  CHECK(r.rules() == Chain{"T5", "FAIL"});
  CHECK(r.trace.back().depth == 1);
  CHECK(r.reason.find("base case") != std::string::npos);
}

TEST_CASE("T2 with witness i_1 = 1") {
  auto r = gamma_member(spec({1, 1}, {"2", "1"}, {"4", "2"}, "5/4"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T2"});
  REQUIRE(r.trace[0].witness.has_value());
  CHECK(*r.trace[0].witness == 1);
}

TEST_CASE("T4 drops a (1, inf) block") {
  auto r = gamma_member(spec({1, 1}, {"2", "1"}, {"4", "inf"}, "3/4"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T4", "BASE"});
}

TEST_CASE("T5 lowers the order by n_m") {
  auto r = gamma_member(spec({1, 1}, {"2", "2"}, {"4", "2"}, "7/4"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T5", "BASE"});
  CHECK(r.trace[1].depth == 1);
}

TEST_CASE("T3 mirrors T2") {
  // dual of the T2 example: p' and q' swapped
  auto r = gamma_member(spec({1, 1}, {"4/3", "2"}, {"2", "inf"}, "5/4"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T3"});
  CHECK(r.trace[0].witness == 1);
}

TEST_CASE("homogeneity is checked first") {
  auto r = gamma_member(spec({1}, {"2"}, {"4"}, "7/5"));
  CHECK_FALSE(r.member);
  CHECK(r.reason.find("homogeneity") != std::string::npos);
}

TEST_CASE("ordering requirement names the offending index") {
  // homogeneous (defect 0) but p_1 > q_1
  auto r = gamma_member(spec({1, 1}, {"4", "2"}, {"2", "4"}, "2"));
  CHECK_FALSE(r.member);
  CHECK(r.reason == "requires p_1 <= q_1");
  auto sub1 = gamma_member(spec({1}, {"1/2"}, {"2"}, "-1/2"));
  CHECK_FALSE(sub1.member);
  CHECK(sub1.reason == "requires p_1 >= 1");
}

TEST_CASE("T2 witness sits right before the p_m = 1 block") {
  // i_1 = 1 is ruled out: block 2 is neither p_2 = 1 nor p_2 = q_2
  IndexSpec s = spec({1, 1, 1}, {"2", "2", "1"}, {"4", "4", "2"});
  s.lambda = solve_lambda(s.dims, s.p, s.q);
  auto r = gamma_member(s);
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T2"});
  CHECK(r.trace[0].witness == 2);
}

TEST_CASE("a T2 candidate whose middle block breaks the chain is rejected") {
  // i_1 = 2 fails on q_3 = 3/2 < p_2 = 2, i_1 = 1 on the middle block
  IndexSpec s = spec({1, 1, 1}, {"2", "2", "1"}, {"4", "4", "3/2"});
  s.lambda = solve_lambda(s.dims, s.p, s.q);
  auto r = gamma_member(s);
  CHECK_FALSE(r.member);
  CHECK(r.reason.find("T2") != std::string::npos);
}

TEST_CASE("T2 reads q_{i_1} = inf literally") {
  // 1 < p_1 = 2 < q_1 = inf, p_2 = 1, q_2 = 2 >= p_1
  IndexSpec s = spec({1, 1}, {"2", "1"}, {"inf", "2"});
  s.lambda = solve_lambda(s.dims, s.p, s.q);
  CHECK(gamma_member(s).member);
}

TEST_CASE("riesz_bounded enforces the order range") {
  auto r = riesz_bounded(spec({1, 1}, {"2", "2"}, {"4", "4"}, "3/2"));
  CHECK(r.member);
  CHECK(r.rules() == Chain{"T1"});
  CHECK_THROWS_AS(riesz_bounded(spec({1}, {"2"}, {"2"}, "1")), precondition_error);
  CHECK_THROWS_WITH(riesz_bounded(spec({1}, {"2"}, {"2"}, "0")), doctest::Contains("order outside (0, N_m)"));
  auto r2 = riesz_bounded(spec({1}, {"1"}, {"2"}, "1/2"));
  CHECK_FALSE(r2.member);
  CHECK_THROWS_AS(gamma_member(spec({1}, {"2"}, {"4"})), input_error);
}

TEST_CASE("rule precedence never changes the verdict") {
  for (int m = 1; m <= 2; ++m) {
    for (const auto& point : enumerate(default_lattice(m))) {
      auto fwd = gamma_member(point.spec);
      auto rev = gamma_member(point.spec, GammaOptions{true});
      CHECK(fwd.member == rev.member);
    }
  }
}

TEST_CASE("members break when p_i drops below 1 or q_i below p_i") {
  std::size_t members = 0;
  for (const auto& point : enumerate(default_lattice(2))) {
    if (!gamma_member(point.spec).member) continue;
    ++members;
    for (std::size_t i = 0; i < 2; ++i) {
      IndexSpec s = point.spec;
      s.p[i] = Exponent(1, 2);
      CHECK_FALSE(gamma_member(s).member);
      if (s.q[i].is_finite() && point.spec.p[i] > 1) {
        IndexSpec t = point.spec;
        t.q[i] = Exponent(point.spec.p[i].value() - Rational(1, 100));
        CHECK_FALSE(gamma_member(t).member);
      }
    }
  }
  CHECK(members > 0);
}

TEST_CASE("one-block verdicts match the closed form on the default lattice") {
  for (const auto& point : enumerate(default_lattice(1))) {
    const auto& s = point.spec;
    CHECK(gamma_member(s).member == single_block_bounded(1, s.p[0], s.q[0], *s.lambda));
  }
  // and off-lattice, with n = 3 and explicit lambdas
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    IndexSpec s{{3}, {random_exponent_ge1(rng)}, {random_exponent_ge1(rng)}, random_rational(rng, -1, 4, 6)};
    if (trial % 2 == 0) s.lambda = solve_lambda(s.dims, s.p, s.q);
    CHECK(gamma_member(s).member == single_block_bounded(3, s.p[0], s.q[0], *s.lambda));
  }
}

TEST_CASE("report serializes to the verdict schema") {
  auto j = to_json(gamma_member(spec({1, 1}, {"2", "1"}, {"4", "2"}, "5/4")), "gamma");
  CHECK(j["member"] == true);
  CHECK(j["namespace"] == "gamma");
  CHECK(j["rules"] == nlohmann::json::array({"T2"}));
  CHECK(j["witnesses"] == nlohmann::json::array({1}));
}
