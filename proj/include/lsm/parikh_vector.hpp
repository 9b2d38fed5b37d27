#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>

#include "lsm/word.hpp"

namespace lsm {

// Letter counts (|w|_L, |w|_S, |w|_M). Components are signed so that the
// formal candidates of a CandidateFrame can be represented; every vector
// obtained by counting a real word is nonnegative.
struct ParikhVector {
  std::int64_t l = 0;
  std::int64_t s = 0;
  std::int64_t m = 0;

  constexpr std::int64_t operator[](Letter a) const noexcept {
    switch (a) {
      case Letter::L:
        return l;
      case Letter::S:
        return s;
      case Letter::M:
        return m;
    }
    return 0;
  }

  constexpr std::int64_t total() const noexcept { return l + s + m; }
  constexpr bool nonnegative() const noexcept {
    return l >= 0 && s >= 0 && m >= 0;
  }

  friend constexpr ParikhVector operator+(ParikhVector a, ParikhVector b) {
    return {a.l + b.l, a.s + b.s, a.m + b.m};
  }
  friend constexpr ParikhVector operator-(ParikhVector a, ParikhVector b) {
    return {a.l - b.l, a.s - b.s, a.m - b.m};
  }
  friend constexpr bool operator==(const ParikhVector&,
                                   const ParikhVector&) = default;
  friend constexpr auto operator<=>(const ParikhVector&,
                                    const ParikhVector&) = default;
};

ParikhVector parikh(std::span<const Letter> w) noexcept;

std::ostream& operator<<(std::ostream& os, const ParikhVector& v);

}  // namespace lsm
