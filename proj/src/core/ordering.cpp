#include "fabula/core/ordering.hpp"

#include <stdexcept>
#include <string>

namespace fabula {

Ordering::Ordering(std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) add_step();
}

void Ordering::regrow(std::size_t words) {
  std::vector<std::uint64_t> next(size_ * words, 0);
  for (std::size_t r = 0; r < size_; ++r) {
    for (std::size_t w = 0; w < words_; ++w) next[r * words + w] = bits_[r * words_ + w];
  }
  bits_ = std::move(next);
  words_ = words;
}

StepId Ordering::add_step() {
  std::size_t needed = (size_ + 1 + 63) / 64;
  if (needed > words_) regrow(needed);
  bits_.resize((size_ + 1) * words_, 0);
  return static_cast<StepId>(size_++);
}

void Ordering::check(StepId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= size_) {
    throw std::out_of_range("unknown step id " + std::to_string(id));
  }
}

bool Ordering::precedes(StepId a, StepId b) const {
  check(a);
  check(b);
  return bit(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

bool Ordering::possibly_precedes(StepId a, StepId b) const {
  check(a);
  check(b);
  return a != b && !bit(static_cast<std::size_t>(b), static_cast<std::size_t>(a));
}

bool Ordering::add(StepId before, StepId after) {
  check(before);
  check(after);
  auto a = static_cast<std::size_t>(before);
  auto b = static_cast<std::size_t>(after);
  if (a == b || bit(b, a)) {
    consistent_ = false;
    return false;
  }
  if (bit(a, b)) return true;
  // Everything at or before `a` now precedes everything at or after `b`.
  std::vector<std::uint64_t> successors(bits_.begin() + static_cast<std::ptrdiff_t>(b * words_),
                                        bits_.begin() + static_cast<std::ptrdiff_t>((b + 1) * words_));
  successors[b / 64] |= std::uint64_t{1} << (b % 64);
  for (std::size_t x = 0; x < size_; ++x) {
    if (x != a && !bit(x, a)) continue;
    for (std::size_t w = 0; w < words_; ++w) bits_[x * words_ + w] |= successors[w];
  }
  return true;
}

std::vector<std::pair<StepId, StepId>> Ordering::closed_pairs() const {
  std::vector<std::pair<StepId, StepId>> out;
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = 0; b < size_; ++b) {
      if (bit(a, b)) out.emplace_back(static_cast<StepId>(a), static_cast<StepId>(b));
    }
  }
  return out;
}

std::vector<std::pair<StepId, StepId>> Ordering::reduced_pairs() const {
  std::vector<std::pair<StepId, StepId>> out;
  for (std::size_t a = 0; a < size_; ++a) {
    for (std::size_t b = 0; b < size_; ++b) {
      if (!bit(a, b)) continue;
      bool implied = false;
      for (std::size_t m = 0; m < size_ && !implied; ++m) implied = bit(a, m) && bit(m, b);
      if (!implied) out.emplace_back(static_cast<StepId>(a), static_cast<StepId>(b));
    }
  }
  return out;
}

}  // namespace fabula
