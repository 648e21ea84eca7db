#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "aut/error.hpp"

namespace aut::inv {

// A finite union of a finite set and arithmetic progressions {b, b+d, ...}
// over the nonnegative integers, kept in a unique normal form:
//   period L  : minimal eventual period (1 when the set is finite),
//   residues  : residue classes mod L active from the threshold on,
//   threshold : minimal T such that membership of every n >= T is decided by
//               n mod L,
//   explicit_ : the members below T.
// Equal sets have identical normal forms, so equality, membership and
// symmetric-difference questions are table lookups.
class SemilinearSet {
 public:
  SemilinearSet() = default;  // empty set

  static SemilinearSet make(std::vector<std::uint64_t> finite_part,
                            std::vector<std::pair<std::uint64_t, std::uint64_t>> progressions);

  bool member(std::uint64_t n) const;
  bool empty() const { return explicit_.empty() && residues_.empty(); }
  bool finite() const { return residues_.empty(); }

  std::uint64_t period() const { return period_; }
  std::uint64_t threshold() const { return threshold_; }
  const std::vector<std::uint64_t>& explicit_members() const { return explicit_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  // k-th smallest member, 0-based.  Requires k < size for finite sets.
  std::uint64_t nth_member(std::uint64_t k) const;
  // Number of members when finite.
  std::uint64_t finite_size() const;

  SemilinearSet unite(const SemilinearSet& o) const;
  SemilinearSet minus_finite(const std::vector<std::uint64_t>& remove) const;
  SemilinearSet add_finite(const std::vector<std::uint64_t>& extra) const;
  // The eventually periodic part alone: {n >= threshold : n mod L in residues}.
  SemilinearSet tail_part() const;

  bool operator==(const SemilinearSet& o) const = default;

 private:
  std::uint64_t period_ = 1;
  std::uint64_t threshold_ = 0;
  std::vector<std::uint64_t> explicit_;  // sorted, all < threshold_
  std::vector<std::uint64_t> residues_;  // sorted, all < period_

  void normalize();
};

struct SymdiffResult {
  bool finite = true;
  // Residue class (r, L) eventually contained in exactly one of the sets.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

// Decides whether the symmetric difference of two sets is finite.
SymdiffResult symdiff_finite(const SemilinearSet& a, const SemilinearSet& b);

}  // namespace aut::inv
