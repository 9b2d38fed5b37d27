#include "lsm/word.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "lsm/errors.hpp"
#include "lsm/parikh_vector.hpp"

namespace lsm {

Letter parse_letter(std::string_view text) {
  if (text.size() == 1) {
    if (auto a = letter_from_char(text.front())) {
      return *a;
    }
  }
  throw ParseError("not a letter of {L,S,M}: '" + std::string(text) + "'");
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto a = letter_from_char(text[i]);
    if (!a) {
      throw ParseError("invalid character '" + std::string(1, text[i]) +
                       "' at offset " + std::to_string(i));
    }
    letters.push_back(*a);
  }
  return Word(std::move(letters));
}

std::size_t Word::count(Letter a) const noexcept {
  return static_cast<std::size_t>(
      std::count(letters_.begin(), letters_.end(), a));
}

bool Word::starts_with(std::span<const Letter> w) const noexcept {
  return w.size() <= size() &&
         std::equal(w.begin(), w.end(), letters_.begin());
}

bool Word::ends_with(std::span<const Letter> w) const noexcept {
  return w.size() <= size() &&
         std::equal(w.begin(), w.end(), letters_.end() - w.size());
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, size());
  len = std::min(len, size() - pos);
  return Word(std::span<const Letter>(letters_).subspan(pos, len));
}

Word Word::power(std::size_t k) const {
  Word out;
  out.reserve(size() * k);
  for (std::size_t i = 0; i < k; ++i) {
    out.append(letters_);
  }
  return out;
}

Word& Word::append(std::span<const Letter> w) {
  letters_.insert(letters_.end(), w.begin(), w.end());
  return *this;
}

std::string Word::to_string() const { return lsm::to_string(letters_); }

Word operator+(Word lhs, std::span<const Letter> rhs) {
  lhs.append(rhs);
  return lhs;
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << w.to_string();
}

std::string to_string(std::span<const Letter> letters) {
  std::string out(letters.size(), '?');
  std::transform(letters.begin(), letters.end(), out.begin(), to_char);
  return out;
}

Word strip_prefix_power(const Word& w, const Word& v, std::size_t k) {
  const Word block = w.power(k);
  if (!v.starts_with(block)) {
    throw NotPresentError("(" + w.to_string() + ")^" + std::to_string(k) +
                          " is not a prefix of " + v.to_string());
  }
  return v.slice(block.size(), v.size() - block.size());
}

Word strip_suffix_power(const Word& v, const Word& w, std::size_t k) {
  const Word block = w.power(k);
  if (!v.ends_with(block)) {
    throw NotPresentError("(" + w.to_string() + ")^" + std::to_string(k) +
                          " is not a suffix of " + v.to_string());
  }
  return v.slice(0, v.size() - block.size());
}

std::optional<std::size_t> find_factor(std::span<const Letter> haystack,
                                       std::span<const Letter> needle) {
  if (needle.empty()) {
    return 0;
  }
  auto it = std::search(
      haystack.begin(), haystack.end(),
      std::boyer_moore_horspool_searcher(needle.begin(), needle.end()));
  if (it == haystack.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - haystack.begin());
}

ParikhVector parikh(std::span<const Letter> w) noexcept {
  std::array<std::int64_t, 3> counts{};
  for (Letter a : w) {
    ++counts[index_of(a)];
  }
  return {counts[0], counts[1], counts[2]};
}

std::ostream& operator<<(std::ostream& os, const ParikhVector& v) {
  return os << '(' << v.l << ',' << v.s << ',' << v.m << ')';
}

}  // namespace lsm
