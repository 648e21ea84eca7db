#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "aut/gf.hpp"
#include "aut/preorder.hpp"
#include "aut/semilinear.hpp"

namespace aut::inv {

// The set of class sizes of a preorder, split into the sizes occurring at
// all and those occurring infinitely often (coming from the periodic pattern
// or the enumeration tail; exceptions and coarsenings only perturb `sizes`
// by a finite set).
struct SharpInvariant {
  SemilinearSet sizes;
  SemilinearSet recurring;  // subset of sizes

  bool operator==(const SharpInvariant&) const = default;
};

SharpInvariant sharp_of(const pre::PreorderSpec& spec);

// Existence of a continuous surjection U_[Q](F) -> PGL_n(F): true iff n is
// an occurring class size.  Hypotheses: n > 1, and n > 2 when |F| = 3.
bool pgl_quotient_exists(const pre::PreorderSpec& spec, std::uint32_t n, const gf::Field& field);

struct LocalIsoResult {
  bool passes = true;  // necessary condition holds; never asserts isomorphism
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;  // residue/period
};

// Necessary condition for local isomorphism: the symmetric difference of the
// two size sets must be finite.  "fails" certifies the groups are NOT
// locally isomorphic.
LocalIsoResult locally_isomorphic_necessary(const pre::PreorderSpec& a,
                                            const pre::PreorderSpec& b);

}  // namespace aut::inv
