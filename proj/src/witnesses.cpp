#include "lsm/witnesses.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "lsm/errors.hpp"

namespace lsm {

namespace {

Word letters(std::string_view text) { return Word::parse(text); }

Word l_power(int k) {
  return Word{Letter::L}.power(static_cast<std::size_t>(std::max(k, 0)));
}

// Formula steps that strip a factor raise NotPresentError; inside a
// witness construction that means the formula itself is wrong.
template <class F>
auto formula_step(const char* what, F&& f) {
  try {
    return f();
  } catch (const NotPresentError& e) {
    throw FormulaInvalidError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(WitnessStatus status) noexcept {
  switch (status) {
    case WitnessStatus::validated:
      return "validated";
    case WitnessStatus::formula_invalid:
      return "formula_invalid";
    case WitnessStatus::membership_unresolved:
      return "membership_unresolved";
  }
  return "unknown";
}

std::size_t membership_bound(int p, std::size_t word_len,
                             const WitnessOptions& options) {
  const std::size_t factor = options.search_factor != 0
                                 ? options.search_factor
                                 : 16 * static_cast<std::size_t>(p + 1);
  return std::min(factor * word_len, options.limits.max_word_len);
}

std::int64_t claimed_difference(Letter letter) noexcept {
  return letter == Letter::L ? 3 : 2;
}

FormulaPair balance_formula_pair(int p, Letter letter, const Limits& limits) {
  const Substitution sub(p);
  auto phi = [&](unsigned k, std::string_view seed) {
    return iterate(sub, k, letters(seed), limits);
  };
  // L^{p-2} S M; at p = 2 this is just SM.
  const Word tail = l_power(p - 2) + letters("SM");

  FormulaPair out;
  switch (letter) {
    case Letter::M:
      out.v = letters("M") + phi(2, "SM");
      out.w = formula_step("w(M)", [&] {
        return strip_suffix_power(phi(2, "SL"), tail);
      });
      break;
    case Letter::S:
      out.v = formula_step("v(S)", [&] {
        return strip_suffix_power(
            strip_prefix_power(letters("L"), phi(2, "LL"),
                               static_cast<std::size_t>(p)),
            letters("M"));
      });
      out.w = phi(2, "ML") + l_power(p);
      break;
    case Letter::L: {
      const Word head =
          iterate(sub, 3, letters("M") + l_power(p - 1), limits);
      out.v = head + formula_step("v(L)", [&] {
                return strip_suffix_power(phi(2, "LL"), tail);
              });
      out.w = letters("SM") + phi(2, "SM") + phi(4, "SM");
      break;
    }
  }
  return out;
}

WitnessPair balance_witness_pair(int p, Letter letter,
                                 const WitnessOptions& options) {
  FormulaPair formula = balance_formula_pair(p, letter, options.limits);
  const char name = to_char(letter);
  if (formula.v.size() != formula.w.size()) {
    throw FormulaInvalidError(
        std::string("pair for ") + name + " at p=" + std::to_string(p) +
        " has unequal lengths " + std::to_string(formula.v.size()) + " and " +
        std::to_string(formula.w.size()));
  }
  WitnessPair pair;
  pair.letter = letter;
  pair.length = formula.v.size();
  pair.count_difference =
      std::abs(static_cast<std::int64_t>(formula.v.count(letter)) -
               static_cast<std::int64_t>(formula.w.count(letter)));
  if (pair.count_difference != claimed_difference(letter)) {
    throw FormulaInvalidError(
        std::string("pair for ") + name + " at p=" + std::to_string(p) +
        " differs by " + std::to_string(pair.count_difference) +
        ", expected " + std::to_string(claimed_difference(letter)));
  }
  pair.v = std::move(formula.v);
  pair.w = std::move(formula.w);

  const Word haystack =
      prefix(p, membership_bound(p, pair.length, options), options.limits);
  pair.v_offset = find_factor(haystack, pair.v);
  pair.w_offset = find_factor(haystack, pair.w);
  if (!pair.v_offset || !pair.w_offset) {
    throw MembershipUnresolvedError(
        std::string("pair for ") + name + " at p=" + std::to_string(p) +
        " not found within the first " + std::to_string(haystack.size()) +
        " letters");
  }
  return pair;
}

std::optional<WitnessPair> search_witness_pair(int p, Letter letter,
                                               std::int64_t target_diff,
                                               std::size_t max_n,
                                               const ScanPolicy& policy,
                                               const Limits& limits) {
  if (target_diff < 1) {
    throw std::invalid_argument("target difference must be at least 1");
  }
  std::size_t len = policy.auto_stabilize
                        ? 2 * initial_scan_length(policy, max_n)
                        : policy.prefix_len;
  len = std::min(len, limits.max_word_len);
  const Word u = prefix(p, len, limits);

  std::vector<std::uint32_t> cum(u.size() + 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum[i + 1] = cum[i] + (u[i] == letter ? 1u : 0u);
  }

  for (std::size_t n = 1; n <= std::min(max_n, u.size()); ++n) {
    std::size_t lo_at = 0;
    std::size_t hi_at = 0;
    std::uint32_t lo = cum[n];
    std::uint32_t hi = cum[n];
    for (std::size_t i = 1; i + n <= u.size(); ++i) {
      const std::uint32_t c = cum[i + n] - cum[i];
      if (c < lo) {
        lo = c;
        lo_at = i;
      } else if (c > hi) {
        hi = c;
        hi_at = i;
      }
    }
    if (static_cast<std::int64_t>(hi - lo) >= target_diff) {
      WitnessPair pair;
      pair.letter = letter;
      pair.length = n;
      pair.v = u.slice(hi_at, n);
      pair.w = u.slice(lo_at, n);
      pair.count_difference = hi - lo;
      pair.v_offset = hi_at;
      pair.w_offset = lo_at;
      return pair;
    }
  }
  return std::nullopt;
}

AC7Family ac7_family(int p, int N, const WitnessOptions& options) {
  if (N < 1) {
    throw std::invalid_argument("ac7_family needs N >= 1");
  }
  const Substitution sub(p);
  const auto k = static_cast<unsigned>(2 * N);
  const Limits& limits = options.limits;

  const Word a = iterate(sub, k + 2, limits);  // phi^{2N+2}(L)
  const Word b = iterate(sub, k + 1, limits);  // phi^{2N+1}(L)
  const Word c = iterate(sub, k, limits);      // phi^{2N}(L)

  const Word lp_s_m = l_power(p) + letters("SM");
  const Word s_m_lp1_s = letters("SM") + l_power(p - 1) + letters("S");

  AC7Family fam;
  fam.p = p;
  fam.N = N;
  fam.v = a + b;
  fam.w = formula_step("w(N)", [&] {
            return strip_prefix_power(b, iterate(sub, k + 2, letters("LS"),
                                                 limits));
          }) +
          b + c;

  auto fail = [&](const std::string& why) {
    throw FormulaInvalidError("AC7 family p=" + std::to_string(p) +
                              " N=" + std::to_string(N) + ": " + why);
  };
  if (fam.v.size() != fam.w.size()) {
    fail("|v| = " + std::to_string(fam.v.size()) +
         " but |w| = " + std::to_string(fam.w.size()));
  }
  if (parikh(fam.v) != parikh(fam.w)) {
    fail("Psi(v) != Psi(w)");
  }
  if (!c.ends_with(lp_s_m)) {
    fail("phi^{2N}(L) does not end with L^p S M");
  }
  if (!b.ends_with(s_m_lp1_s)) {
    fail("phi^{2N+1}(L) does not end with S M L^{p-1} S");
  }
  if (!fam.v.ends_with(s_m_lp1_s) || !fam.w.ends_with(lp_s_m)) {
    fail("suffixes of v or w are not as required");
  }
  fam.length = fam.v.size();

  fam.members = formula_step("f-words", [&] {
    return std::array<Word, 7>{
        strip_suffix_power(lp_s_m + fam.v, s_m_lp1_s),
        strip_suffix_power(letters("M") + fam.v, letters("S")),
        strip_suffix_power(letters("LS") + fam.w, letters("SM")),
        fam.v,
        strip_suffix_power(letters("SM") + fam.v, letters("LS")),
        strip_suffix_power(letters("S") + fam.w, letters("M")),
        strip_suffix_power(s_m_lp1_s + fam.w, lp_s_m),
    };
  });
  for (std::size_t i = 0; i < 7; ++i) {
    if (fam.members[i].size() != fam.length) {
      fail("f" + std::to_string(i + 1) + " has length " +
           std::to_string(fam.members[i].size()));
    }
    fam.parikh_vectors[i] = parikh(fam.members[i]);
  }
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = i + 1; j < 7; ++j) {
      if (fam.parikh_vectors[i] == fam.parikh_vectors[j]) {
        fail("f" + std::to_string(i + 1) + " and f" + std::to_string(j + 1) +
             " share a Parikh vector");
      }
    }
  }

  const Word haystack =
      prefix(p, membership_bound(p, fam.length, options), limits);
  for (std::size_t i = 0; i < 7; ++i) {
    fam.offsets[i] = find_factor(haystack, fam.members[i]);
    if (!fam.offsets[i]) {
      throw MembershipUnresolvedError(
          "f" + std::to_string(i + 1) + " for p=" + std::to_string(p) +
          " N=" + std::to_string(N) + " not found within the first " +
          std::to_string(haystack.size()) + " letters");
    }
  }
  return fam;
}

std::array<Word, 3> ac_lower_bound_triple(int p, std::size_t n,
                                          const Limits& limits) {
  if (n == 0) {
    throw std::invalid_argument("ac_lower_bound_triple needs n >= 1");
  }
  const Word u = prefix(p, n, limits);
  const Word head1 = u.slice(0, n - 1);
  const Word head2 = u.slice(0, n >= 2 ? n - 2 : 0);
  switch (u.back()) {
    case Letter::L:
      return {u, letters("S") + head1, letters("M") + head1};
    case Letter::S:
      return {u, letters("M") + head1, letters("SM") + head2};
    case Letter::M:
      return {u, letters("S") + head1, letters("LS") + head2};
  }
  return {u, u, u};
}

}  // namespace lsm
