#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lsm {

// The ternary alphabet. The numeric order L < S < M is the canonical
// order used for Parikh vectors and serialization.
enum class Letter : std::uint8_t { L = 0, S = 1, M = 2 };

inline constexpr std::array<Letter, 3> kAlphabet{Letter::L, Letter::S,
                                                 Letter::M};

constexpr char to_char(Letter a) noexcept {
  switch (a) {
    case Letter::L:
      return 'L';
    case Letter::S:
      return 'S';
    case Letter::M:
      return 'M';
  }
  return '?';
}

constexpr std::optional<Letter> letter_from_char(char c) noexcept {
  switch (c) {
    case 'L':
      return Letter::L;
    case 'S':
      return Letter::S;
    case 'M':
      return Letter::M;
    default:
      return std::nullopt;
  }
}

constexpr std::size_t index_of(Letter a) noexcept {
  return static_cast<std::size_t>(a);
}

// Throws ParseError on anything other than 'L', 'S', 'M'.
Letter parse_letter(std::string_view text);

// A finite word over {L, S, M}. Letters are stored one per byte so that
// window scans and factor searches run over plain contiguous memory.
class Word {
 public:
  using value_type = Letter;
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  explicit Word(std::span<const Letter> letters)
      : letters_(letters.begin(), letters.end()) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  // Throws ParseError on characters outside the alphabet.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  const_iterator begin() const noexcept { return letters_.begin(); }
  const_iterator end() const noexcept { return letters_.end(); }

  std::span<const Letter> view() const noexcept { return letters_; }
  operator std::span<const Letter>() const noexcept { return letters_; }

  std::size_t count(Letter a) const noexcept;

  bool starts_with(std::span<const Letter> w) const noexcept;
  bool ends_with(std::span<const Letter> w) const noexcept;

  // Clamped to the word's bounds.
  Word slice(std::size_t pos, std::size_t len) const;

  // w^k; w^0 is the empty word.
  Word power(std::size_t k) const;

  void push_back(Letter a) { letters_.push_back(a); }
  void reserve(std::size_t n) { letters_.reserve(n); }
  Word& append(std::span<const Letter> w);
  Word& operator+=(std::span<const Letter> w) { return append(w); }

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

Word operator+(Word lhs, std::span<const Letter> rhs);
inline Word operator+(Word lhs, const Word& rhs) {
  return std::move(lhs) + rhs.view();
}

std::ostream& operator<<(std::ostream& os, const Word& w);

// w^{-k} v: v with k leading copies of w removed. Throws NotPresentError
// when w^k is not a prefix of v. k = 0 or an empty w is allowed.
Word strip_prefix_power(const Word& w, const Word& v, std::size_t k = 1);

// v w^{-k}: v with k trailing copies of w removed.
Word strip_suffix_power(const Word& v, const Word& w, std::size_t k = 1);

// Offset of the first occurrence of needle in haystack.
std::optional<std::size_t> find_factor(std::span<const Letter> haystack,
                                       std::span<const Letter> needle);

std::string to_string(std::span<const Letter> letters);

}  // namespace lsm
