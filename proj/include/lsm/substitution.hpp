#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lsm/parikh_vector.hpp"
#include "lsm/word.hpp"

namespace lsm {

// Upper bound on the length of any word the library materializes.
// Exceeding it raises ResourceLimitError; nothing is silently truncated.
struct Limits {
  std::size_t max_word_len = std::size_t{1} << 27;
};

// Throws std::invalid_argument if p < 2.
void require_valid_p(int p);

// The substitution phi_p on {L, S, M}:
//   L -> L^p S,   S -> M,   M -> L^{p-1} S,   p >= 2.
class Substitution {
 public:
  // Throws std::invalid_argument if p < 2.
  explicit Substitution(int p);

  int p() const noexcept { return p_; }
  const Word& image(Letter a) const noexcept { return images_[index_of(a)]; }

  // Parikh vector of phi_p(v) computed from the Parikh vector of v.
  ParikhVector image_counts(const ParikhVector& v) const noexcept;

  // |phi_p(z)| = (p+1)|z| - p|z|_S - |z|_M.
  std::int64_t image_length(const ParikhVector& z) const noexcept;

  Word apply(std::span<const Letter> w, const Limits& limits = {}) const;

 private:
  int p_;
  std::array<Word, 3> images_;
};

inline Word apply(const Substitution& sub, std::span<const Letter> w,
                  const Limits& limits = {}) {
  return sub.apply(w, limits);
}

// |phi_p^n(seed)|, saturating at UINT64_MAX.
std::uint64_t iterate_length(const Substitution& sub, unsigned n,
                             const ParikhVector& seed = {1, 0, 0});

// phi_p^n(seed); seed defaults to "L". The length is checked against the
// cap before anything is materialized.
Word iterate(const Substitution& sub, unsigned n, const Limits& limits = {});
Word iterate(const Substitution& sub, unsigned n, const Word& seed,
             const Limits& limits = {});

// Generates u^(p) letter by letter. The buffer reads its own output: each
// letter u_j, once emitted, is expanded to phi_p(u_j) at the tail. This is
// valid because phi_p(L) starts with L, so the buffer is seeded with
// phi_p(u_0) and never runs dry. Single owner; not thread safe.
class FixedPointStream {
 public:
  explicit FixedPointStream(int p, Limits limits = {});

  int p() const noexcept { return sub_.p(); }
  std::size_t emitted() const noexcept { return emitted_; }

  Letter next();

  // Materializes and returns the first n letters of u^(p). Letters are
  // counted as emitted. The returned span is invalidated by later calls.
  std::span<const Letter> ensure(std::size_t n);

  void reset();

 private:
  void grow_to(std::size_t n);

  Substitution sub_;
  Limits limits_;
  std::vector<Letter> buffer_;
  std::size_t read_ = 0;
  std::size_t emitted_ = 0;
};

// The first n letters of u^(p).
Word prefix(int p, std::size_t n, const Limits& limits = {});

// The unique x with phi_p(x) = v, reading v as a concatenation of the
// blocks L^p S -> L, L^{p-1} S -> M, M -> S. Throws NotAnImageError when
// no such decomposition exists. The empty word maps to the empty word.
Word preimage(const Substitution& sub, std::span<const Letter> v);

struct InverseCounts {
  ParikhVector counts;
  std::int64_t length = 0;
};

// Recovers Psi(v) and |v| from Psi(phi_p(v)) = (a, b, c):
//   (a - (p-1) b, c, -a + p b),  |v| = b + c.
// Throws InconsistentCountsError if a component comes out negative.
InverseCounts inverse_counts(const Substitution& sub,
                             const ParikhVector& image);

}  // namespace lsm
