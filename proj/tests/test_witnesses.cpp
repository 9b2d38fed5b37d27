#include <set>
#include <stdexcept>

#include "doctest.h"
#include "lsm/errors.hpp"
#include "lsm/json_io.hpp"
#include "lsm/parikh.hpp"
#include "lsm/witnesses.hpp"
#include "oracles.hpp"

using namespace lsm;

TEST_SUITE("witnesses") {
  TEST_CASE("M pair at p=2") {
    const auto pair = balance_witness_pair(2, Letter::M);
    CHECK(pair.v.to_string() == "MLSLLSM");
    CHECK(pair.w.to_string() == "LSLLSLL");
    CHECK(pair.length == 7);
    CHECK(pair.count_difference == 2);
    REQUIRE(pair.v_offset.has_value());
    REQUIRE(pair.w_offset.has_value());
    const std::string u = oracle::fixed_point(2, 200);
    CHECK(u.substr(*pair.v_offset, 7) == "MLSLLSM");
    CHECK(u.substr(*pair.w_offset, 7) == "LSLLSLL");
  }

  TEST_CASE("M and L pairs validate for several p") {
    for (int p = 2; p <= 5; ++p) {
      CAPTURE(p);
      const auto m = balance_witness_pair(p, Letter::M);
      CHECK(m.length == static_cast<std::size_t>(p * p + p + 1));
      CHECK(m.count_difference == 2);
      const auto l = balance_witness_pair(p, Letter::L);
      CHECK(l.count_difference == 3);
      CHECK(l.v.size() == l.w.size());
    }
  }

  TEST_CASE("L pair length") {
    // The pair has length 37 at p=2, which is 5p^2+6p+5 only there.
    const std::array<std::size_t, 4> lengths{37, 136, 369, 826};
    for (int p = 2; p <= 5; ++p) {
      CHECK(balance_witness_pair(p, Letter::L).length == lengths[p - 2]);
    }
    CHECK(balance_witness_pair(2, Letter::L).length == 5 * 4 + 6 * 2 + 5);
  }

  TEST_CASE("S formula has unequal lengths") {
    const auto formula = balance_formula_pair(2, Letter::S);
    CHECK(formula.v.to_string() == "SLLSMLLSLLS");
    CHECK(formula.w.to_string() == "LLSMLLSLLSMLL");
    for (int p = 2; p <= 5; ++p) {
      CAPTURE(p);
      const auto f = balance_formula_pair(p, Letter::S);
      CHECK(f.v.size() == static_cast<std::size_t>(2 * p * p + p + 1));
      CHECK(f.w.size() == static_cast<std::size_t>(2 * p * p + 2 * p + 1));
      CHECK_THROWS_AS(balance_witness_pair(p, Letter::S), FormulaInvalidError);
    }
  }

  TEST_CASE("claimed differences") {
    CHECK(claimed_difference(Letter::L) == 3);
    CHECK(claimed_difference(Letter::S) == 2);
    CHECK(claimed_difference(Letter::M) == 2);
  }

  TEST_CASE("membership bound") {
    CHECK(membership_bound(2, 10, {}) == 16 * 3 * 10);
    WitnessOptions opts;
    opts.search_factor = 4;
    CHECK(membership_bound(2, 10, opts) == 40);
  }

  TEST_CASE("membership unresolved with a tiny bound") {
    WitnessOptions opts;
    opts.search_factor = 1;
    CHECK_THROWS_AS(balance_witness_pair(2, Letter::L, opts),
                    MembershipUnresolvedError);
  }

  TEST_CASE("search pairs") {
    const auto m = search_witness_pair(2, Letter::M, 2, 100);
    REQUIRE(m.has_value());
    CHECK(m->length == 7);
    CHECK(m->count_difference == 2);
    const auto l = search_witness_pair(2, Letter::L, 3, 100);
    REQUIRE(l.has_value());
    CHECK(l->length == 37);
    const auto s = search_witness_pair(2, Letter::S, 2, 100);
    REQUIRE(s.has_value());
    CHECK(s->length == 10);
    CHECK(s->v.count(Letter::S) - s->w.count(Letter::S) == 2);

    const std::string u = oracle::fixed_point(2, 5000);
    CHECK(u.substr(*s->v_offset, s->length) == s->v.to_string());
    CHECK(u.substr(*s->w_offset, s->length) == s->w.to_string());

    CHECK_FALSE(search_witness_pair(2, Letter::S, 3, 300).has_value());
    CHECK_FALSE(search_witness_pair(3, Letter::L, 4, 300).has_value());
    CHECK_FALSE(search_witness_pair(2, Letter::M, 3, 300).has_value());
  }

  TEST_CASE("first lengths attaining the bounds") {
    // Frozen: first n with spread L=3, S=2, M=2 for p = 2..5.
    const std::array<std::array<std::size_t, 3>, 4> first{{
        {37, 10, 7}, {14, 17, 13}, {22, 26, 21}, {32, 37, 31}}};
    for (int p = 2; p <= 5; ++p) {
      CAPTURE(p);
      const auto& f = first[p - 2];
      CHECK(search_witness_pair(p, Letter::L, 3, 100)->length == f[0]);
      CHECK(search_witness_pair(p, Letter::S, 2, 100)->length == f[1]);
      CHECK(search_witness_pair(p, Letter::M, 2, 100)->length == f[2]);
    }
  }

  TEST_CASE("AC7 family at p=2, N=1") {
    const auto fam = ac7_family(2, 1);
    CHECK(fam.length == 52);
    CHECK(fam.v.size() == 52);
    CHECK(fam.w.size() == 52);
    CHECK(parikh(fam.v) == parikh(fam.w));
    CHECK(fam.parikh_vectors[3] == parikh(fam.v));
    std::set<ParikhVector> distinct(fam.parikh_vectors.begin(),
                                    fam.parikh_vectors.end());
    CHECK(distinct.size() == 7);
    const auto spec = spectrum(2, 52);
    const std::string u = oracle::fixed_point(2, 20000);
    for (std::size_t i = 0; i < 7; ++i) {
      CHECK(fam.members[i].size() == 52);
      CHECK(spec.contains(fam.parikh_vectors[i]));
      REQUIRE(fam.offsets[i].has_value());
      CHECK(u.substr(*fam.offsets[i], 52) == fam.members[i].to_string());
    }
  }

  TEST_CASE("AC7 family lengths") {
    // n_N = |phi^{2N+2}(L)| + |phi^{2N+1}(L)|.
    CHECK(ac7_family(2, 2).length == 263);
    CHECK(ac7_family(3, 1).length == 177);
    CHECK(ac7_family(3, 2).length == 1829);
    CHECK(ac7_family(4, 1).length == 456);
    for (int p = 2; p <= 3; ++p) {
      for (int N = 1; N <= 2; ++N) {
        const auto fam = ac7_family(p, N);
        CHECK(abelian_complexity(p, fam.length) == 7);
      }
    }
  }

  TEST_CASE("AC7 family argument checks") {
    CHECK_THROWS_AS(ac7_family(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(ac7_family(1, 1), std::invalid_argument);
    WitnessOptions tight;
    tight.limits.max_word_len = 100;
    CHECK_THROWS_AS(ac7_family(2, 3, tight), ResourceLimitError);
  }

  TEST_CASE("lower-bound triples") {
    const auto t1 = ac_lower_bound_triple(2, 1);
    CHECK(t1[0].to_string() == "L");
    CHECK(t1[1].to_string() == "S");
    CHECK(t1[2].to_string() == "M");
    const auto t3 = ac_lower_bound_triple(2, 3);
    CHECK(t3[0].to_string() == "LLS");
    CHECK(t3[1].to_string() == "MLL");
    CHECK(t3[2].to_string() == "SML");
    CHECK(parikh(t3[0]) == ParikhVector{2, 1, 0});
    CHECK(parikh(t3[1]) == ParikhVector{2, 0, 1});
    CHECK(parikh(t3[2]) == ParikhVector{1, 1, 1});
    // Last letter M.
    const auto t7 = ac_lower_bound_triple(2, 7);
    CHECK(t7[1].to_string() == "SLLSLLS");
    CHECK(t7[2].to_string() == "LSLLSLL");
    CHECK_THROWS_AS(ac_lower_bound_triple(2, 0), std::invalid_argument);
  }

  TEST_CASE("lower-bound triples are distinct factors") {
    for (int p = 2; p <= 3; ++p) {
      const std::string u = oracle::fixed_point(p, 40000);
      for (std::size_t n = 1; n <= 150; ++n) {
        const auto t = ac_lower_bound_triple(p, n);
        std::set<ParikhVector> vs{parikh(t[0]), parikh(t[1]), parikh(t[2])};
        CHECK(vs.size() == 3);
        for (const auto& w : t) {
          CHECK(w.size() == n);
          CHECK(u.find(w.to_string()) != std::string::npos);
        }
      }
    }
  }

  TEST_CASE("witness JSON reports") {
    const auto pair = balance_witness_pair(2, Letter::M);
    const auto doc = witness_report(2, pair, WitnessStatus::validated);
    CHECK(doc["letter"] == "M");
    CHECK(doc["length"] == 7);
    CHECK(doc["difference"] == 2);
    CHECK(doc["status"] == "validated");
    CHECK(doc["v"] == "MLSLLSM");
    const auto fam = witness_report(ac7_family(2, 1), WitnessStatus::validated);
    CHECK(fam["N"] == 1);
    CHECK(fam["length"] == 52);
    CHECK(fam["words"].size() == 7);
    CHECK(fam["vectors"].size() == 7);
  }
}
