#include "lsm/substitution.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "lsm/errors.hpp"

namespace lsm {

namespace {

void check_cap(std::uint64_t len, const Limits& limits, const char* what) {
  if (len > limits.max_word_len) {
    throw ResourceLimitError(std::string(what) + " needs " +
                             std::to_string(len) +
                             " letters, cap is " +
                             std::to_string(limits.max_word_len));
  }
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b
             ? std::numeric_limits<std::uint64_t>::max()
             : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

}  // namespace

void require_valid_p(int p) {
  if (p < 2) {
    throw std::invalid_argument("p must be at least 2, got " +
                                std::to_string(p));
  }
}

Substitution::Substitution(int p) : p_(p) {
  require_valid_p(p);
  const auto q = static_cast<std::size_t>(p);
  images_[index_of(Letter::L)] = Word{Letter::L}.power(q) + Word{Letter::S};
  images_[index_of(Letter::S)] = Word{Letter::M};
  images_[index_of(Letter::M)] =
      Word{Letter::L}.power(q - 1) + Word{Letter::S};
}

ParikhVector Substitution::image_counts(const ParikhVector& v) const noexcept {
  return {p_ * v.l + (p_ - 1) * v.m, v.l + v.m, v.s};
}

std::int64_t Substitution::image_length(const ParikhVector& z) const noexcept {
  return (p_ + 1) * z.total() - p_ * z.s - z.m;
}

Word Substitution::apply(std::span<const Letter> w,
                         const Limits& limits) const {
  check_cap(static_cast<std::uint64_t>(image_length(parikh(w))), limits,
            "phi_p(w)");
  Word out;
  out.reserve(static_cast<std::size_t>(image_length(parikh(w))));
  for (Letter a : w) {
    out.append(image(a));
  }
  return out;
}

std::uint64_t iterate_length(const Substitution& sub, unsigned n,
                             const ParikhVector& seed) {
  const auto p = static_cast<std::uint64_t>(sub.p());
  auto l = static_cast<std::uint64_t>(seed.l);
  auto s = static_cast<std::uint64_t>(seed.s);
  auto m = static_cast<std::uint64_t>(seed.m);
  for (unsigned k = 0; k < n; ++k) {
    const std::uint64_t nl = sat_add(sat_mul(p, l), sat_mul(p - 1, m));
    const std::uint64_t ns = sat_add(l, m);
    const std::uint64_t nm = s;
    l = nl;
    s = ns;
    m = nm;
  }
  return sat_add(sat_add(l, s), m);
}

Word iterate(const Substitution& sub, unsigned n, const Limits& limits) {
  return iterate(sub, n, Word{Letter::L}, limits);
}

Word iterate(const Substitution& sub, unsigned n, const Word& seed,
             const Limits& limits) {
  check_cap(iterate_length(sub, n, parikh(seed)), limits, "phi_p^n");
  Word w = seed;
  for (unsigned k = 0; k < n; ++k) {
    w = sub.apply(w, limits);
  }
  return w;
}

FixedPointStream::FixedPointStream(int p, Limits limits)
    : sub_(p), limits_(limits) {
  reset();
}

void FixedPointStream::reset() {
  const Word& first = sub_.image(Letter::L);
  buffer_.assign(first.begin(), first.end());
  read_ = 1;
  emitted_ = 0;
}

void FixedPointStream::grow_to(std::size_t n) {
  while (buffer_.size() < n) {
    const Word& img = sub_.image(buffer_[read_++]);
    buffer_.insert(buffer_.end(), img.begin(), img.end());
  }
}

Letter FixedPointStream::next() {
  check_cap(emitted_ + 1, limits_, "fixed-point prefix");
  grow_to(emitted_ + 1);
  return buffer_[emitted_++];
}

std::span<const Letter> FixedPointStream::ensure(std::size_t n) {
  check_cap(n, limits_, "fixed-point prefix");
  if (n > buffer_.size()) {
    buffer_.reserve(n + static_cast<std::size_t>(sub_.p()) + 1);
    grow_to(n);
  }
  emitted_ = std::max(emitted_, n);
  return std::span<const Letter>(buffer_).first(n);
}

Word prefix(int p, std::size_t n, const Limits& limits) {
  FixedPointStream stream(p, limits);
  return Word(stream.ensure(n));
}

Word preimage(const Substitution& sub, std::span<const Letter> v) {
  const auto p = static_cast<std::size_t>(sub.p());
  Word x;
  std::size_t i = 0;
  while (i < v.size()) {
    if (v[i] == Letter::M) {
      x.push_back(Letter::S);
      ++i;
      continue;
    }
    std::size_t run = 0;
    while (i + run < v.size() && v[i + run] == Letter::L) {
      ++run;
    }
    if (i + run == v.size() || v[i + run] != Letter::S ||
        (run != p && run != p - 1)) {
      throw NotAnImageError("no block decomposition at offset " +
                            std::to_string(i) + " of " + to_string(v));
    }
    x.push_back(run == p ? Letter::L : Letter::M);
    i += run + 1;
  }
  return x;
}

InverseCounts inverse_counts(const Substitution& sub,
                             const ParikhVector& image) {
  const std::int64_t p = sub.p();
  InverseCounts out;
  out.counts = {image.l - (p - 1) * image.s, image.m, -image.l + p * image.s};
  out.length = image.s + image.m;
  if (!out.counts.nonnegative() || !image.nonnegative()) {
    throw InconsistentCountsError("counts (" + std::to_string(image.l) + "," +
                                  std::to_string(image.s) + "," +
                                  std::to_string(image.m) +
                                  ") are not those of an image");
  }
  return out;
}

}  // namespace lsm
