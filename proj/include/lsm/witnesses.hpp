#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "lsm/parikh.hpp"
#include "lsm/parikh_vector.hpp"
#include "lsm/substitution.hpp"
#include "lsm/word.hpp"

namespace lsm {

enum class WitnessStatus { validated, formula_invalid, membership_unresolved };

std::string_view to_string(WitnessStatus status) noexcept;

struct WitnessOptions {
  // A word of length l is searched for in the first factor*l letters of
  // u^(p). 0 selects the default 16(p+1).
  std::size_t search_factor = 0;
  Limits limits;
};

std::size_t membership_bound(int p, std::size_t word_len,
                             const WitnessOptions& options);

// Two equal-length factors whose counts of `letter` differ by
// count_difference. Offsets locate v and w in u^(p).
struct WitnessPair {
  Letter letter = Letter::L;
  Word v;
  Word w;
  std::size_t length = 0;
  std::int64_t count_difference = 0;
  std::optional<std::size_t> v_offset;
  std::optional<std::size_t> w_offset;
};

// The explicit pair for a letter, before any validation:
//   M: ( M phi^2(SM),                     phi^2(SL) (L^{p-2}SM)^{-1} )
//   S: ( L^{-p} phi^2(LL) M^{-1},         phi^2(ML) L^p )
//   L: ( phi^3(ML^{p-1}) phi^2(LL) (L^{p-2}SM)^{-1},  SM phi^2(SM) phi^4(SM) )
struct FormulaPair {
  Word v;
  Word w;
};

FormulaPair balance_formula_pair(int p, Letter letter,
                                 const Limits& limits = {});

// The count difference the explicit pair is meant to realize: 3 for L,
// 2 for S and M.
std::int64_t claimed_difference(Letter letter) noexcept;

// Builds the explicit pair and checks equal length, the claimed count
// difference and membership in u^(p).
// Throws FormulaInvalidError or MembershipUnresolvedError.
WitnessPair balance_witness_pair(int p, Letter letter,
                                 const WitnessOptions& options = {});

// Scans window lengths 1..max_n and returns the first pair of windows
// whose counts of `letter` differ by at least target_diff, or nullopt.
// The prefix scanned per n follows the first doubled scan of `policy`.
std::optional<WitnessPair> search_witness_pair(int p, Letter letter,
                                               std::int64_t target_diff,
                                               std::size_t max_n,
                                               const ScanPolicy& policy = {},
                                               const Limits& limits = {});

// Seven factors of common length whose Parikh vectors are pairwise
// distinct, built from
//   v = phi^{2N+2}(L) phi^{2N+1}(L),
//   w = phi^{2N+1}(L)^{-1} phi^{2N+2}(LS) phi^{2N+1}(L) phi^{2N}(L).
struct AC7Family {
  int p = 0;
  int N = 0;
  std::size_t length = 0;
  Word v;
  Word w;
  std::array<Word, 7> members;
  std::array<ParikhVector, 7> parikh_vectors{};
  std::array<std::optional<std::size_t>, 7> offsets{};
};

// Requires N >= 1. Throws FormulaInvalidError when a validation step
// fails, MembershipUnresolvedError when a member is not found within the
// membership bound, ResourceLimitError for oversized N.
AC7Family ac7_family(int p, int N, const WitnessOptions& options = {});

// The length-n prefix of u^(p) together with the two words obtained by
// the case rule on its last letter. All three are factors of u^(p) with
// pairwise distinct Parikh vectors.
std::array<Word, 3> ac_lower_bound_triple(int p, std::size_t n,
                                          const Limits& limits = {});

}  // namespace lsm
