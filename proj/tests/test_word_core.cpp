#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lsm/errors.hpp"
#include "lsm/substitution.hpp"
#include "lsm/word.hpp"
#include "oracles.hpp"

using namespace lsm;

namespace {
Word W(const char* s) { return Word::parse(s); }
}  // namespace

TEST_SUITE("word-core") {
  TEST_CASE("letters and parsing") {
    CHECK(to_char(Letter::L) == 'L');
    CHECK(letter_from_char('M') == Letter::M);
    CHECK_FALSE(letter_from_char('x').has_value());
    CHECK(Letter::L < Letter::S);
    CHECK(Letter::S < Letter::M);
    CHECK(W("LSM").to_string() == "LSM");
    CHECK(W("").empty());
    CHECK_THROWS_AS(W("LSX"), ParseError);
    CHECK_THROWS_AS(parse_letter("LL"), ParseError);
  }

  TEST_CASE("substitution rejects p < 2") {
    CHECK_THROWS_AS(Substitution(1), std::invalid_argument);
    CHECK_THROWS_AS(Substitution(0), std::invalid_argument);
    CHECK_NOTHROW(Substitution(2));
  }

  TEST_CASE("images") {
    const Substitution sub(3);
    CHECK(sub.image(Letter::L) == W("LLLS"));
    CHECK(sub.image(Letter::S) == W("M"));
    CHECK(sub.image(Letter::M) == W("LLS"));
  }

  TEST_CASE("apply") {
    const Substitution two(2);
    CHECK(apply(two, W("L")) == W("LLS"));
    CHECK(apply(Substitution(3), Word{}).empty());
    CHECK(apply(two, W("LLS")) == W("LLSLLSM"));
    CHECK(apply(two, W("MS")) == W("LSM"));
  }

  TEST_CASE("apply length formula and morphism law") {
    std::mt19937 rng(7);
    for (int p = 2; p <= 6; ++p) {
      const Substitution sub(p);
      for (int trial = 0; trial < 50; ++trial) {
        std::string a, b;
        for (int i = 0; i < 20; ++i) {
          a += "LSM"[rng() % 3];
          b += "LSM"[rng() % 3];
        }
        const Word wa = W(a.c_str());
        const Word wb = W(b.c_str());
        const Word img = apply(sub, wa);
        CHECK(img.to_string() == oracle::rewrite(p, a));
        CHECK(static_cast<std::int64_t>(img.size()) ==
              (p + 1) * static_cast<std::int64_t>(wa.count(Letter::L)) +
                  static_cast<std::int64_t>(wa.count(Letter::S)) +
                  p * static_cast<std::int64_t>(wa.count(Letter::M)));
        CHECK(apply(sub, wa + wb) == apply(sub, wa) + apply(sub, wb));
      }
    }
  }

  TEST_CASE("iterate") {
    const Substitution two(2);
    CHECK(iterate(two, 0) == W("L"));
    CHECK(iterate(two, 2) == W("LLSLLSM"));
    CHECK(iterate(two, 4).size() == 36);
    CHECK(iterate_length(two, 4) == 36);
    CHECK(iterate_length(Substitution(3), 4) == 135);
    for (int p = 2; p <= 4; ++p) {
      for (int k = 0; k <= 6; ++k) {
        CHECK(iterate(Substitution(p), static_cast<unsigned>(k)).to_string() ==
              oracle::rewrite(p, "L", k));
      }
    }
  }

  TEST_CASE("iterate respects the cap") {
    const Substitution two(2);
    CHECK_THROWS_AS(iterate(two, 4, Limits{35}), ResourceLimitError);
    CHECK_NOTHROW(iterate(two, 4, Limits{36}));
    // Saturates rather than overflowing.
    CHECK(iterate_length(Substitution(9), 200) == UINT64_MAX);
    CHECK_THROWS_AS(iterate(Substitution(9), 200), ResourceLimitError);
  }

  TEST_CASE("prefix") {
    CHECK(prefix(2, 7) == W("LLSLLSM"));
    CHECK(prefix(2, 16) == W("LLSLLSMLLSLLSMLS"));
    CHECK(prefix(2, 16) == iterate(Substitution(2), 3));
    for (int p = 2; p <= 7; ++p) {
      CHECK(prefix(p, 1) == W("L"));
    }
    CHECK(prefix(3, 0).empty());
    CHECK_THROWS_AS(prefix(2, 100, Limits{99}), ResourceLimitError);
  }

  TEST_CASE("prefix agrees with full rewriting") {
    for (int p = 2; p <= 5; ++p) {
      CHECK(prefix(p, 5000).to_string() == oracle::fixed_point(p, 5000));
    }
  }

  TEST_CASE("fixed-point stream") {
    FixedPointStream stream(2);
    std::string got;
    for (int i = 0; i < 16; ++i) {
      got += to_char(stream.next());
    }
    CHECK(got == "LLSLLSMLLSLLSMLS");
    CHECK(stream.emitted() == 16);
    CHECK(to_string(stream.ensure(7)) == "LLSLLSM");
    CHECK(stream.emitted() == 16);
    stream.reset();
    CHECK(stream.emitted() == 0);
    CHECK(stream.next() == Letter::L);
    FixedPointStream capped(2, Limits{3});
    CHECK_THROWS_AS(capped.ensure(4), ResourceLimitError);
  }

  TEST_CASE("fixed-point consistency") {
    for (int p = 2; p <= 4; ++p) {
      const Substitution sub(p);
      const Word big = prefix(p, static_cast<std::size_t>(p + 1) * 400);
      for (std::size_t n = 0; n <= 400; n += 7) {
        const Word img = apply(sub, prefix(p, n));
        CHECK(big.starts_with(img));
        CHECK(prefix(p, n + 10).starts_with(prefix(p, n)));
      }
    }
  }

  TEST_CASE("preimage") {
    const Substitution two(2);
    CHECK(preimage(two, W("LLS")) == W("L"));
    CHECK(preimage(two, W("M")) == W("S"));
    CHECK(preimage(two, W("LSM")) == W("MS"));
    CHECK(preimage(two, Word{}).empty());
    CHECK_THROWS_AS(preimage(two, W("LLLS")), NotAnImageError);
    CHECK_THROWS_AS(preimage(two, W("S")), NotAnImageError);
    CHECK_THROWS_AS(preimage(two, W("LL")), NotAnImageError);
    CHECK_THROWS_AS(preimage(Substitution(3), W("LS")), NotAnImageError);
    CHECK(preimage(Substitution(3), W("LLSM")) == W("MS"));
  }

  TEST_CASE("preimage of iterates") {
    for (int p = 2; p <= 4; ++p) {
      const Substitution sub(p);
      for (unsigned k = 1; k <= 8; ++k) {
        CHECK(preimage(sub, iterate(sub, k)) == iterate(sub, k - 1));
      }
    }
  }

  TEST_CASE("strip powers") {
    CHECK(strip_prefix_power(W("L"), W("LLSLL"), 2) == W("SLL"));
    CHECK(strip_suffix_power(W("MLSLLSM"), W("SM"), 1) == W("MLSLL"));
    CHECK_THROWS_AS(strip_prefix_power(W("M"), W("SLL"), 1), NotPresentError);
    CHECK_THROWS_AS(strip_suffix_power(W("SLL"), W("L"), 3), NotPresentError);
    // Empty powers and empty blocks are allowed.
    CHECK(strip_prefix_power(W("LS"), W("LSM"), 0) == W("LSM"));
    CHECK(strip_suffix_power(W("LSM"), Word{}, 5) == W("LSM"));
    CHECK(strip_suffix_power(W("LSM"), W("LSM"), 1).empty());
  }

  TEST_CASE("inverse counts") {
    const Substitution two(2);
    auto inv = inverse_counts(two, {2, 1, 0});
    CHECK(inv.counts == ParikhVector{1, 0, 0});
    CHECK(inv.length == 1);
    CHECK(inverse_counts(two, {0, 0, 1}).counts == ParikhVector{0, 1, 0});
    const Substitution three(3);
    const auto up = inverse_counts(three, parikh(iterate(three, 3)));
    CHECK(up.counts == parikh(iterate(three, 2)));
    CHECK(up.counts == ParikhVector{9, 3, 1});
    CHECK(up.length == 13);
    CHECK_THROWS_AS(inverse_counts(two, {5, 1, 0}), InconsistentCountsError);
    CHECK_THROWS_AS(inverse_counts(two, {0, 1, 0}), InconsistentCountsError);
  }

  TEST_CASE("find factor") {
    const Word u = prefix(2, 100);
    CHECK(find_factor(u, W("LLSLLSM")) == 0);
    CHECK(find_factor(u, W("MLSLLSM")).has_value());
    CHECK_FALSE(find_factor(u, W("SS")).has_value());
    CHECK(find_factor(u, Word{}) == 0);
  }
}
