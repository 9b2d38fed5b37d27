#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lsm/parikh.hpp"
#include "lsm/substitution.hpp"
#include "lsm/word.hpp"

namespace lsm {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, unresolved };

std::string_view to_string(CheckStatus status) noexcept;

// Outcome of one claim checked for one p. A fail carries a counterexample
// in `evidence` (absolute offsets plus the offending letters); a pass
// carries the scanned range. `flagged` marks a known, documented
// discrepancy whose failure does not count against the aggregate.
struct CheckResult {
  std::string claim;
  int p = 0;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  CheckStatus status = CheckStatus::pass;
  bool flagged = false;
  nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
  double elapsed_ms = 0.0;
};

enum class CheckKind {
  structure,
  counting,
  preimage,
  balance,
  abelian,
  oracle,
  witnesses,
};

std::string_view to_string(CheckKind kind) noexcept;
CheckKind parse_check_kind(std::string_view name);
std::vector<CheckKind> all_check_kinds();

struct VerifyConfig {
  std::vector<int> ps{2, 3, 4, 5};
  std::size_t max_n = 2000;
  std::size_t prefix_len = 1'000'000;
  std::size_t samples = 1000;
  std::size_t max_sample_len = 500;
  std::uint64_t seed = 20110101;
  std::size_t oracle_max_n = 64;
  std::size_t oracle_prefix_len = 10'000;
  unsigned max_preimage_iterate = 12;
  std::vector<int> ac7_N{1, 2};
  std::vector<CheckKind> checks = all_check_kinds();
  ScanPolicy policy;
  Limits limits;
  unsigned threads = 0;
};

// Throws ConfigError on an invalid configuration.
void validate(const VerifyConfig& config);

nlohmann::ordered_json to_json(const VerifyConfig& config);

struct VerificationReport {
  std::string tool_version{kToolVersion};
  nlohmann::ordered_json configuration = nlohmann::ordered_json::object();
  std::vector<CheckResult> results;

  // Every result that is not flagged has status pass.
  bool passed() const noexcept;
};

// Claims: "adjacency", "s_gap", "m_gap", "m_density". The prefix need not
// be a prefix of u^(p); mutated inputs are how negative controls run.
std::vector<CheckResult> check_structure(int p,
                                         std::span<const Letter> prefix);
std::vector<CheckResult> check_structure(int p, std::size_t prefix_len,
                                         const Limits& limits = {});

// Counting identities on `samples` seeded random factors of the prefix
// with lengths in [1, max_len].
CheckResult check_counting(int p, std::span<const Letter> prefix,
                           std::size_t samples, std::size_t max_len,
                           std::uint64_t seed);

// apply(preimage(v)) == v on images of seeded random factors, and
// preimage(phi^k(L)) == phi^{k-1}(L) for every k <= max_k whose iterate
// fits the cap.
CheckResult check_preimage(int p, std::span<const Letter> prefix,
                           std::size_t samples, std::size_t max_len,
                           std::uint64_t seed, unsigned max_k,
                           const Limits& limits = {});

// `spectra` ordered by n and computed over `snapshot`, which is used to
// locate counterexample windows.
CheckResult check_balance(int p, std::span<const Letter> snapshot,
                          std::span<const WindowSpectrum> spectra);
CheckResult check_balance(int p, std::size_t max_n,
                          const ScanPolicy& policy = {},
                          const Limits& limits = {});

CheckResult check_ac(int p, std::span<const Letter> snapshot,
                     std::span<const WindowSpectrum> spectra);
CheckResult check_ac(int p, std::size_t max_n, const ScanPolicy& policy = {},
                     const Limits& limits = {});

// Recounts every window from scratch over a prefix built by repeated
// application of the substitution. Shares no code path with the rolling
// scan or the fixed-point stream.
WindowSpectrum oracle_spectrum(int p, std::size_t n, std::size_t prefix_len,
                               const Limits& limits = {});

// Rolling spectrum vs. oracle_spectrum for every n <= max_n.
CheckResult check_oracle(int p, std::size_t max_n, std::size_t prefix_len,
                         const Limits& limits = {});

// Explicit balance pairs, search-based pairs and the AC7 families.
std::vector<CheckResult> check_witnesses(int p, std::size_t max_n,
                                         std::span<const int> ac7_N,
                                         const ScanPolicy& policy = {},
                                         const Limits& limits = {});

using ProgressFn = std::function<void(std::string_view)>;

VerificationReport run_all(const VerifyConfig& config,
                           const ProgressFn& progress = {});

nlohmann::ordered_json to_json(const CheckResult& result,
                               bool include_timing = true);
nlohmann::ordered_json to_json(const VerificationReport& report,
                               bool include_timing = true);

}  // namespace lsm
