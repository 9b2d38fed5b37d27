#include "lsm/parikh.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <sstream>
#include <thread>

#include "lsm/errors.hpp"

namespace lsm {

namespace {

// Distinct (|w|_S, |w|_M) pairs seen so far. |w|_L is implied by the
// window length. The sets involved hold at most nine entries, so a flat
// vector with a last-hit shortcut beats any hashed container.
class SmallKeySet {
 public:
  void insert(std::uint64_t key) {
    if (key == last_ && !keys_.empty()) {
      return;
    }
    last_ = key;
    if (std::find(keys_.begin(), keys_.end(), key) == keys_.end()) {
      keys_.push_back(key);
    }
  }
  std::size_t size() const noexcept { return keys_.size(); }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::uint64_t> keys_;
  std::uint64_t last_ = 0;
};

// Slides a width-n window over a growing prefix, updating the S and M
// counts in O(1) per step. The window starting at pos_ is always recorded.
class RollingScan {
 public:
  explicit RollingScan(std::size_t n) : n_(n) {}

  void extend(std::span<const Letter> data) {
    if (data.size() < n_) {
      return;
    }
    if (!primed_) {
      for (std::size_t i = 0; i < n_; ++i) {
        add(data[i]);
      }
      primed_ = true;
      record();
    }
    while (pos_ + n_ < data.size()) {
      remove(data[pos_]);
      add(data[pos_ + n_]);
      ++pos_;
      record();
    }
  }

  std::size_t size() const noexcept { return set_.size(); }

  std::vector<ParikhVector> vectors() const {
    std::vector<ParikhVector> out;
    out.reserve(set_.size());
    const auto n = static_cast<std::int64_t>(n_);
    for (std::uint64_t key : set_.keys()) {
      const auto s = static_cast<std::int64_t>(key >> 32);
      const auto m = static_cast<std::int64_t>(key & 0xffffffffu);
      out.push_back({n - s - m, s, m});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void add(Letter a) {
    s_ += a == Letter::S;
    m_ += a == Letter::M;
  }
  void remove(Letter a) {
    s_ -= a == Letter::S;
    m_ -= a == Letter::M;
  }
  void record() { set_.insert((s_ << 32) | m_); }

  std::size_t n_;
  std::size_t pos_ = 0;
  std::uint64_t s_ = 0;
  std::uint64_t m_ = 0;
  bool primed_ = false;
  SmallKeySet set_;
};

// `ensure(len)` returns the first min(len, available) letters.
template <class Ensure>
WindowSpectrum scan_with_policy(Ensure&& ensure, int p, std::size_t n,
                                const ScanPolicy& policy) {
  if (n == 0) {
    throw std::invalid_argument("window length must be at least 1");
  }
  WindowSpectrum out;
  out.p = p;
  out.n = n;
  RollingScan scan(n);

  if (!policy.auto_stabilize) {
    auto data = ensure(policy.prefix_len);
    scan.extend(data);
    out.scanned_prefix_len = data.size();
    out.vectors = scan.vectors();
    return out;
  }

  std::size_t len = initial_scan_length(policy, n);
  auto data = ensure(len);
  scan.extend(data);
  out.scanned_prefix_len = data.size();
  if (data.size() == len) {
    for (int d = 0; d < policy.max_doublings; ++d) {
      len *= 2;
      const std::size_t before = scan.size();
      data = ensure(len);
      scan.extend(data);
      out.scanned_prefix_len = data.size();
      if (data.size() < len) {
        break;
      }
      if (scan.size() == before) {
        out.stabilized = true;
        break;
      }
    }
  }
  out.vectors = scan.vectors();
  return out;
}

}  // namespace

std::size_t initial_scan_length(const ScanPolicy& policy, std::size_t n) {
  return std::max(policy.min_initial, policy.per_length * n);
}

std::size_t required_snapshot_length(const ScanPolicy& policy,
                                     std::size_t max_n) {
  if (!policy.auto_stabilize) {
    return policy.prefix_len;
  }
  return initial_scan_length(policy, max_n)
         << static_cast<unsigned>(std::max(policy.max_doublings, 0));
}

bool WindowSpectrum::contains(const ParikhVector& v) const noexcept {
  return std::binary_search(vectors.begin(), vectors.end(), v);
}

WindowSpectrum spectrum(std::span<const Letter> snapshot, int p,
                        std::size_t n, const ScanPolicy& policy) {
  require_valid_p(p);
  ScanPolicy effective = policy;
  if (!policy.auto_stabilize && policy.prefix_len == 0) {
    effective.prefix_len = snapshot.size();
  }
  return scan_with_policy(
      [snapshot](std::size_t len) {
        return snapshot.first(std::min(len, snapshot.size()));
      },
      p, n, effective);
}

WindowSpectrum spectrum(int p, std::size_t n, const ScanPolicy& policy,
                        const Limits& limits) {
  FixedPointStream stream(p, limits);
  const std::size_t first = policy.auto_stabilize
                                ? initial_scan_length(policy, n)
                                : policy.prefix_len;
  if (first > limits.max_word_len) {
    throw ResourceLimitError("scan of " + std::to_string(first) +
                             " letters exceeds cap " +
                             std::to_string(limits.max_word_len));
  }
  if (!policy.auto_stabilize && policy.prefix_len == 0) {
    throw std::invalid_argument("a fixed scan needs a prefix length");
  }
  return scan_with_policy(
      [&stream, &limits](std::size_t len) {
        return stream.ensure(std::min(len, limits.max_word_len));
      },
      p, n, policy);
}

std::vector<WindowSpectrum> spectra(std::span<const Letter> snapshot, int p,
                                    std::size_t first, std::size_t last,
                                    const ScanPolicy& policy,
                                    unsigned threads) {
  if (first == 0 || last < first) {
    throw std::invalid_argument("invalid window length range");
  }
  std::vector<WindowSpectrum> out(last - first + 1);
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, out.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      out[i] = spectrum(snapshot, p, first + i, policy);
    }
  };
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  return out;
}

std::size_t abelian_complexity(int p, std::size_t n, const ScanPolicy& policy,
                               const Limits& limits) {
  return spectrum(p, n, policy, limits).size();
}

std::int64_t spread(const WindowSpectrum& spec, Letter a) noexcept {
  if (spec.vectors.empty()) {
    return 0;
  }
  auto [lo, hi] = std::minmax_element(
      spec.vectors.begin(), spec.vectors.end(),
      [a](const ParikhVector& x, const ParikhVector& y) { return x[a] < y[a]; });
  return (*hi)[a] - (*lo)[a];
}

std::int64_t balance_spread(int p, Letter a, std::size_t n,
                            const ScanPolicy& policy, const Limits& limits) {
  return spread(spectrum(p, n, policy, limits), a);
}

BalanceProfile balance_profile(std::span<const WindowSpectrum> spectra,
                               Letter a) {
  BalanceProfile out;
  out.letter = a;
  std::int64_t best = 0;
  for (const auto& spec : spectra) {
    out.p = spec.p;
    const std::int64_t value = spread(spec, a);
    best = std::max(best, value);
    out.lengths.push_back(spec.n);
    out.spreads.push_back(value);
    out.cumulative_max.push_back(best);
  }
  return out;
}

CandidateFrame make_candidate_frame(std::size_t n, std::int64_t s_n,
                                    std::int64_t m_n) noexcept {
  CandidateFrame frame;
  frame.n = n;
  frame.s_n = s_n;
  frame.m_n = m_n;
  const std::int64_t centre_l = static_cast<std::int64_t>(n) - s_n - m_n;
  std::size_t k = 0;
  for (std::int64_t ds = -1; ds <= 1; ++ds) {
    for (std::int64_t dm = -1; dm <= 1; ++dm) {
      frame.candidates[k++] = {centre_l - ds - dm, s_n + ds, m_n + dm};
    }
  }
  return frame;
}

std::optional<int> CandidateFrame::index_of(
    const ParikhVector& v) const noexcept {
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (candidates[k] == v) {
      return static_cast<int>(k) + 1;
    }
  }
  return std::nullopt;
}

CandidateFrame candidate_frame(const WindowSpectrum& spec) {
  if (spec.vectors.empty()) {
    throw std::invalid_argument("candidate frame of an empty spectrum");
  }
  std::int64_t min_s = spec.vectors.front().s;
  std::int64_t min_m = spec.vectors.front().m;
  for (const auto& v : spec.vectors) {
    min_s = std::min(min_s, v.s);
    min_m = std::min(min_m, v.m);
  }
  CandidateFrame frame = make_candidate_frame(spec.n, min_s + 1, min_m + 1);
  for (const auto& v : spec.vectors) {
    if (!frame.index_of(v)) {
      std::ostringstream msg;
      msg << "vector " << v << " at n=" << spec.n
          << " lies outside the candidate frame centred at (s,m)=("
          << frame.s_n << "," << frame.m_n << ")";
      throw FrameViolationError(msg.str());
    }
  }
  return frame;
}

std::optional<std::pair<ParikhVector, ParikhVector>> find_excluded_difference(
    std::span<const ParikhVector> vectors) noexcept {
  constexpr ParikhVector kExcluded{3, -2, -1};
  for (const auto& v : vectors) {
    for (const auto& w : vectors) {
      if (v - w == kExcluded) {
        return std::pair{v, w};
      }
    }
  }
  return std::nullopt;
}

}  // namespace lsm
