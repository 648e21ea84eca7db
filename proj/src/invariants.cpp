#include "aut/invariants.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace aut::inv {

namespace {

// Class sizes of a finite preordered block.
std::vector<std::uint64_t> block_class_sizes(const pre::BlockSpec& b) {
  std::vector<std::uint64_t> out;
  std::vector<std::uint8_t> seen(b.size(), 0);
  for (std::int32_t i = 0; i < b.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t count = 0;
    for (std::int32_t j = 0; j < b.size(); ++j)
      if (b.leq(i, j) && b.leq(j, i)) {
        ++count;
        seen[j] = 1;
      }
    out.push_back(count);
  }
  return out;
}

// Block coordinates whose classes differ from the undisturbed description:
// exception coordinates plus the coarsening window.
std::set<std::int64_t> disturbed_coords(const pre::PreorderSpec& spec) {
  std::set<std::int64_t> d;
  for (const auto& [b, blk] : spec.exceptions()) {
    (void)blk;
    d.insert(b);
  }
  if (auto w = spec.window_range())
    for (std::int64_t b = w->first; b <= w->second; ++b)
      if (spec.block_coord_valid(b)) d.insert(b);
  return d;
}

// Sizes realized on the disturbed coordinates: coarsened window classes plus
// exceptional blocks outside the window.
std::vector<std::uint64_t> disturbed_sizes(const pre::PreorderSpec& spec) {
  std::vector<std::uint64_t> out;
  auto w = spec.window_range();
  for (const auto& cls : spec.window_classes()) out.push_back(cls.size());
  for (const auto& [b, blk] : spec.exceptions()) {
    if (w && b >= w->first && b <= w->second) continue;  // counted via the window
    for (std::uint64_t s : block_class_sizes(blk)) out.push_back(s);
  }
  return out;
}

}  // namespace

SharpInvariant sharp_of(const pre::PreorderSpec& spec) {
  SharpInvariant sharp;
  const std::set<std::int64_t> disturbed = disturbed_coords(spec);

  if (!spec.size_enumeration()) {
    // Pattern blocks tile the base infinitely, so every pattern class size
    // recurs regardless of the finitely many disturbed coordinates.
    std::vector<std::uint64_t> pat;
    for (const auto& blk : spec.pattern())
      for (std::uint64_t s : block_class_sizes(blk)) pat.push_back(s);
    sharp.recurring = SemilinearSet::make(pat, {});
    sharp.sizes = sharp.recurring.add_finite(disturbed_sizes(spec));
    return sharp;
  }

  const SemilinearSet& members = *spec.size_enumeration();

  // Realization coordinates of the k-th member (0-based): 2k on N, -2k on
  // -N, and +-2k on Z (k = 0 only once).  A member's size drops out of the
  // preorder only when every realization is disturbed.
  std::vector<std::uint64_t> removed;
  for (std::int64_t c : disturbed) {
    if (c % 2 != 0) continue;
    const std::uint64_t k = static_cast<std::uint64_t>(c >= 0 ? c : -c) / 2;
    if (members.finite() && k >= members.finite_size()) continue;
    bool all_disturbed = true;
    if (spec.base() == pre::Base::Z && k > 0) {
      const std::int64_t mirror = -c;
      all_disturbed = disturbed.contains(mirror);
    }
    if (all_disturbed) removed.push_back(members.nth_member(k));
  }
  std::sort(removed.begin(), removed.end());
  removed.erase(std::unique(removed.begin(), removed.end()), removed.end());

  // A removed value stays realized when its twin coordinate is undisturbed;
  // the twin check above already filtered that, so subtract directly.
  SemilinearSet sizes = members.minus_finite(removed);
  // Singleton spacers occur at infinitely many undisturbed coordinates.
  sizes = sizes.add_finite({1});
  sizes = sizes.unite(SemilinearSet::make(disturbed_sizes(spec), {}));

  SemilinearSet recurring = members.tail_part().minus_finite(removed).add_finite({1});

  sharp.sizes = std::move(sizes);
  sharp.recurring = std::move(recurring);
  return sharp;
}

bool pgl_quotient_exists(const pre::PreorderSpec& spec, std::uint32_t n, const gf::Field& field) {
  if (n <= 1)
    fail(Err::HypothesisViolated, "PGL quotient criterion requires n > 1");
  if (field.q() == 3 && n <= 2)
    fail(Err::HypothesisViolated, "PGL quotient criterion requires n > 2 when |F| = 3");
  return sharp_of(spec).sizes.member(n);
}

LocalIsoResult locally_isomorphic_necessary(const pre::PreorderSpec& a,
                                            const pre::PreorderSpec& b) {
  const SymdiffResult diff = symdiff_finite(sharp_of(a).sizes, sharp_of(b).sizes);
  LocalIsoResult out;
  out.passes = diff.finite;
  out.witness = diff.witness;
  return out;
}

}  // namespace aut::inv
