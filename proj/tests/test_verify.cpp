#include <algorithm>
#include <string>

#include "doctest.h"
#include "lsm/errors.hpp"
#include "lsm/json_io.hpp"
#include "lsm/verify.hpp"
#include "oracles.hpp"

using namespace lsm;

namespace {

const CheckResult& find_claim(const std::vector<CheckResult>& results,
                              const std::string& claim) {
  auto it = std::find_if(results.begin(), results.end(),
                         [&](const CheckResult& r) { return r.claim == claim; });
  REQUIRE(it != results.end());
  return *it;
}

VerifyConfig small_config() {
  VerifyConfig config;
  config.ps = {2, 3};
  config.max_n = 120;
  config.prefix_len = 20000;
  config.samples = 100;
  config.max_sample_len = 100;
  config.oracle_max_n = 16;
  config.oracle_prefix_len = 2000;
  config.max_preimage_iterate = 8;
  config.ac7_N = {1};
  config.threads = 2;
  return config;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("structure passes on genuine prefixes") {
    for (int p = 2; p <= 5; ++p) {
      CAPTURE(p);
      const auto results = check_structure(p, 200000);
      REQUIRE(results.size() == 4);
      for (const auto& r : results) {
        CAPTURE(r.claim);
        CHECK(r.status == CheckStatus::pass);
        CHECK(r.p == p);
      }
      const auto& gaps = find_claim(results, "m_gap");
      const auto q = static_cast<std::size_t>(p);
      CHECK(gaps.evidence["bounds"][0] == q * q + q - 1);
      CHECK(gaps.evidence["bounds"][1] == q * q + 2 * q);
      for (const auto& [len, count] : gaps.evidence["gap_lengths"].items()) {
        const auto value = std::stoul(len);
        CHECK(value >= q * q + q - 1);
        CHECK(value <= q * q + 2 * q);
        CHECK(count.get<std::size_t>() > 0);
      }
    }
  }

  TEST_CASE("structure negative controls") {
    Word u = prefix(2, 5000);
    SUBCASE("S doubled") {
      // Offset 2 holds S; turning offset 3 into S gives "SS".
      Word bad = Word::parse(u.to_string().replace(3, 1, "S"));
      const auto results = check_structure(2, bad);
      const auto& adj = find_claim(results, "adjacency");
      CHECK(adj.status == CheckStatus::fail);
      const auto where = adj.evidence["counterexample"]["letter_offset"]
                             .get<std::size_t>();
      CHECK((where == 2 || where == 3));
    }
    SUBCASE("M removed from the middle") {
      std::string s = u.to_string();
      const auto at = s.find('M', 2500);
      s[at] = 'L';
      const auto results = check_structure(2, Word::parse(s));
      const auto& gaps = find_claim(results, "m_gap");
      CHECK(gaps.status == CheckStatus::fail);
      const auto off = gaps.evidence["counterexample"]["offset"].get<std::size_t>();
      const auto letters =
          gaps.evidence["counterexample"]["letters"].get<std::string>();
      CHECK(off < at);
      CHECK(off + letters.size() > at);
      CHECK(letters == s.substr(off, letters.size()));
    }
    SUBCASE("extra M breaks density") {
      std::string s = u.to_string();
      const auto at = s.find("SL", 1000);
      s[at + 1] = 'M';
      const auto results = check_structure(2, Word::parse(s));
      CHECK(find_claim(results, "m_gap").status == CheckStatus::fail);
      CHECK(find_claim(results, "m_density").status == CheckStatus::fail);
    }
  }

  TEST_CASE("counting and preimage checks") {
    const Word u = prefix(3, 100000);
    const auto c = check_counting(3, u, 500, 200, 1);
    CHECK(c.status == CheckStatus::pass);
    CHECK(c.evidence["checked"] == 501);
    const auto pre = check_preimage(3, u, 200, 200, 2, 8);
    CHECK(pre.status == CheckStatus::pass);
    CHECK(pre.evidence["iterates_checked"].size() == 8);
    const auto capped = check_preimage(2, u, 10, 10, 2, 13, Limits{30000});
    CHECK(capped.status == CheckStatus::pass);
    CHECK(capped.evidence["iterates_over_cap"] == json::parse("[13]"));
  }

  TEST_CASE("balance and abelian checks") {
    const auto b = check_balance(2, 400);
    CHECK(b.status == CheckStatus::pass);
    CHECK(b.evidence["max_spread"]["L"] == 3);
    CHECK(b.evidence["first_n_attaining_bound"]["L"] == 37);
    CHECK(b.evidence["first_n_attaining_bound"]["M"] == 7);
    CHECK(b.evidence["first_n_attaining_bound"]["S"] == 10);
    const auto a = check_ac(2, 400);
    CHECK(a.status == CheckStatus::pass);
    CHECK(a.evidence["values_attained"] == json::parse("[3,4,5,6,7]"));
    CHECK(a.evidence["first_n_with_value"]["7"] == 52);
    CHECK(a.evidence["first_n_with_value"]["3"] == 1);
  }

  TEST_CASE("unstabilized spectra are not counted") {
    ScanPolicy fixed;
    fixed.auto_stabilize = false;
    fixed.prefix_len = 5000;
    CHECK(check_balance(2, 50, fixed).status == CheckStatus::unresolved);
  }

  TEST_CASE("oracle") {
    const auto o = oracle_spectrum(2, 2, 36);
    CHECK(o.vectors == spectrum(2, 2).vectors);
    for (int p = 2; p <= 4; ++p) {
      CHECK(oracle_spectrum(p, 1, 500).size() <= 3);
    }
    CHECK(check_oracle(2, 30, 3000).status == CheckStatus::pass);
    CHECK_THROWS_AS(oracle_spectrum(2, 2, 10, Limits{5}), ResourceLimitError);
  }

  TEST_CASE("witness checks") {
    const std::array<int, 1> N{1};
    const auto results = check_witnesses(2, 200, N);
    CHECK(find_claim(results, "balance_witness_formula_M").status ==
          CheckStatus::pass);
    CHECK(find_claim(results, "balance_witness_formula_L").status ==
          CheckStatus::pass);
    const auto& s = find_claim(results, "balance_witness_formula_S");
    CHECK(s.status == CheckStatus::fail);
    CHECK(s.flagged);
    CHECK(s.evidence["v_length"] == 11);
    CHECK(s.evidence["w_length"] == 13);
    CHECK(find_claim(results, "balance_witness_stated_length_L").status ==
          CheckStatus::pass);
    CHECK(find_claim(results, "balance_witness_search_S").status ==
          CheckStatus::pass);
    CHECK(find_claim(results, "ac_lower_bound_triple").status ==
          CheckStatus::pass);
    const auto three = check_witnesses(3, 200, N);
    const auto& len = find_claim(three, "balance_witness_stated_length_L");
    CHECK(len.status == CheckStatus::fail);
    CHECK(len.flagged);
    CHECK(len.evidence["v_length"] == 136);
  }

  TEST_CASE("configuration validation") {
    CHECK_NOTHROW(validate(VerifyConfig{}));
    VerifyConfig c = small_config();
    c.ps = {1};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.ps.clear();
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.prefix_len = c.max_n - 1;
    CHECK_THROWS_AS(run_all(c), ConfigError);
    c = small_config();
    c.samples = 0;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.ac7_N = {0};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_config();
    c.limits.max_word_len = 1000;
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(parse_check_kind("nonsense"), ConfigError);
    CHECK(parse_check_kind("oracle") == CheckKind::oracle);
  }

  TEST_CASE("empty check list gives an empty report") {
    VerifyConfig c = small_config();
    c.checks.clear();
    const auto report = run_all(c);
    CHECK(report.results.empty());
    CHECK(report.passed());
  }

  TEST_CASE("small run passes and is deterministic") {
    const VerifyConfig c = small_config();
    const auto first = run_all(c);
    const auto second = run_all(c);
    CHECK(first.passed());
    CHECK(first.tool_version == kToolVersion);
    CHECK(to_json(first, false).dump() == to_json(second, false).dump());
    const auto doc = to_json(first, false);
    CHECK(doc["configuration"]["seed"] == 20110101);
    CHECK_FALSE(doc["results"][0].contains("elapsed_ms"));
    CHECK(to_json(first, true)["results"][0].contains("elapsed_ms"));
    for (const auto& r : first.results) {
      CAPTURE(r.claim);
      CAPTURE(r.p);
      CHECK((r.status == CheckStatus::pass || r.flagged));
    }
  }

  TEST_CASE("one entry per enabled check") {
    VerifyConfig c = small_config();
    c.ps = {2};
    c.checks = {CheckKind::balance, CheckKind::abelian, CheckKind::counting};
    const auto report = run_all(c);
    REQUIRE(report.results.size() == 3);
    CHECK(report.results[0].claim == "balance_bounds");
    CHECK(report.results[1].claim == "abelian_complexity");
  }
}
