#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lsm/parikh_vector.hpp"
#include "lsm/substitution.hpp"
#include "lsm/word.hpp"

namespace lsm {

// How much of u^(p) a window scan looks at.
//
// With auto_stabilize, the first scan covers max(min_initial, per_length*n)
// letters and the prefix is then doubled until two consecutive scans give
// the same vector set, at most max_doublings times. Otherwise exactly
// prefix_len letters are scanned and the result is never marked stabilized.
struct ScanPolicy {
  bool auto_stabilize = true;
  std::size_t prefix_len = 0;
  std::size_t min_initial = 1000;
  std::size_t per_length = 50;
  int max_doublings = 6;
};

std::size_t initial_scan_length(const ScanPolicy& policy, std::size_t n);

// Smallest snapshot that lets every spectrum with window length <= max_n
// run its full doubling schedule.
std::size_t required_snapshot_length(const ScanPolicy& policy,
                                     std::size_t max_n);

// The set of Parikh vectors of the length-n windows of a scanned prefix.
// When stabilized is false the set is only a lower bound on P_u(n).
struct WindowSpectrum {
  int p = 0;
  std::size_t n = 0;
  std::vector<ParikhVector> vectors;  // sorted, distinct
  std::size_t scanned_prefix_len = 0;
  bool stabilized = false;

  std::size_t size() const noexcept { return vectors.size(); }
  bool contains(const ParikhVector& v) const noexcept;
};

// Rolling-count spectrum over a caller-owned prefix snapshot. If the
// snapshot is shorter than the policy needs, the scan stops at the
// snapshot's end and the result is not stabilized.
WindowSpectrum spectrum(std::span<const Letter> snapshot, int p,
                        std::size_t n, const ScanPolicy& policy = {});

// Same, generating u^(p) lazily as the doubling schedule demands.
WindowSpectrum spectrum(int p, std::size_t n, const ScanPolicy& policy = {},
                        const Limits& limits = {});

// Spectra for n in [first, last] over one shared snapshot, computed on up
// to `threads` workers (0 = hardware concurrency). Ordered by n.
std::vector<WindowSpectrum> spectra(std::span<const Letter> snapshot, int p,
                                    std::size_t first, std::size_t last,
                                    const ScanPolicy& policy = {},
                                    unsigned threads = 0);

std::size_t abelian_complexity(int p, std::size_t n,
                               const ScanPolicy& policy = {},
                               const Limits& limits = {});

// max - min of the letter's count over the spectrum; 0 for an empty one.
std::int64_t spread(const WindowSpectrum& spec, Letter a) noexcept;

std::int64_t balance_spread(int p, Letter a, std::size_t n,
                            const ScanPolicy& policy = {},
                            const Limits& limits = {});

struct BalanceProfile {
  int p = 0;
  Letter letter = Letter::L;
  std::vector<std::size_t> lengths;
  std::vector<std::int64_t> spreads;
  std::vector<std::int64_t> cumulative_max;
};

// `spectra` must be ordered by n.
BalanceProfile balance_profile(std::span<const WindowSpectrum> spectra,
                               Letter a);

// The nine candidates around a centre (n - s_n - m_n, s_n, m_n). Index k
// in `candidates` holds Psi_{k+1}. Components may be formally negative.
struct CandidateFrame {
  std::size_t n = 0;
  std::int64_t s_n = 0;
  std::int64_t m_n = 0;
  std::array<ParikhVector, 9> candidates{};

  // 1-based candidate index of v, if v is one of the nine.
  std::optional<int> index_of(const ParikhVector& v) const noexcept;
};

CandidateFrame make_candidate_frame(std::size_t n, std::int64_t s_n,
                                    std::int64_t m_n) noexcept;

// Centres the frame at s_n = min S-count + 1, m_n = min M-count + 1 and
// checks that every realized vector is a candidate (FrameViolationError
// otherwise). Throws std::invalid_argument for an empty spectrum.
CandidateFrame candidate_frame(const WindowSpectrum& spec);

// First ordered pair (v, w) of the set with v - w = (3, -2, -1).
std::optional<std::pair<ParikhVector, ParikhVector>> find_excluded_difference(
    std::span<const ParikhVector> vectors) noexcept;

// True iff no ordered pair differs by exactly (3, -2, -1).
inline bool excluded_difference_check(
    std::span<const ParikhVector> vectors) noexcept {
  return !find_excluded_difference(vectors).has_value();
}

}  // namespace lsm
