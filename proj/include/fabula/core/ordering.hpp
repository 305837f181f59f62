#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace fabula {

using StepId = std::int32_t;

// Strict partial order over step ids, kept transitively closed as a bit
// matrix. A failed add() leaves the order marked inconsistent.
class Ordering {
 public:
  Ordering() = default;
  explicit Ordering(std::size_t steps);

  std::size_t size() const { return size_; }
  // Appends a step id (== previous size()).
  StepId add_step();

  // Adds before < after and closes transitively. Returns false and marks the
  // order inconsistent when that would create a cycle.
  bool add(StepId before, StepId after);

  bool precedes(StepId a, StepId b) const;
  // True iff a < b can be added without a cycle. Throws on unknown ids.
  bool possibly_precedes(StepId a, StepId b) const;
  bool consistent() const { return consistent_; }

  // Every pair (a, b) with a < b in the closure, lexicographically sorted.
  std::vector<std::pair<StepId, StepId>> closed_pairs() const;
  // Closed pairs not implied by any other pair (transitive reduction).
  std::vector<std::pair<StepId, StepId>> reduced_pairs() const;

  friend bool operator==(const Ordering& a, const Ordering& b) {
    return a.size_ == b.size_ && a.consistent_ == b.consistent_ && a.closed_pairs() == b.closed_pairs();
  }

 private:
  void check(StepId id) const;
  void regrow(std::size_t words);
  bool bit(std::size_t row, std::size_t col) const {
    return (bits_[row * words_ + col / 64] >> (col % 64)) & 1U;
  }

  std::size_t size_ = 0;
  std::size_t words_ = 1;
  std::vector<std::uint64_t> bits_;  // row a, bit b set <=> a < b
  bool consistent_ = true;
};

}  // namespace fabula
