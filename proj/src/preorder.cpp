#include "aut/preorder.hpp"

#include <algorithm>
#include <string>

namespace aut::pre {

namespace {

std::string idx_str(Index i) {
  return std::to_string(i.block) + ":" + std::to_string(i.slot);
}

// Dense bit matrix used for closure tables on the coarsening window.
class BitMat {
 public:
  explicit BitMat(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * stride_, 0) {}

  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(std::size_t i, std::size_t j) { bits_[i * stride_ + j / 64] |= 1ull << (j % 64); }

  void close_transitively() {
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i)
        if (get(i, k))
          for (std::size_t w = 0; w < stride_; ++w)
            bits_[i * stride_ + w] |= bits_[k * stride_ + w];
  }

  std::size_t size() const { return n_; }

 private:
  std::size_t n_, stride_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

// ---------------------------------------------------------------- IndexSet

IndexSet IndexSet::of(std::vector<Index> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  IndexSet s;
  s.v_ = std::move(v);
  return s;
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(v_.begin(), v_.end(), i);
}

std::optional<std::size_t> IndexSet::position_of(Index i) const {
  auto it = std::lower_bound(v_.begin(), v_.end(), i);
  if (it == v_.end() || *it != i) return std::nullopt;
  return static_cast<std::size_t>(it - v_.begin());
}

bool IndexSet::subset_of(const IndexSet& o) const {
  return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
}

IndexSet IndexSet::unite(const IndexSet& o) const {
  std::vector<Index> merged = v_;
  merged.insert(merged.end(), o.v_.begin(), o.v_.end());
  return of(std::move(merged));
}

// ---------------------------------------------------------------- BlockSpec

BlockSpec BlockSpec::chain(std::int32_t n) {
  if (n < 1) fail(Err::InvalidSpec, "block size must be positive");
  std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
  for (std::int32_t a = 0; a < n; ++a)
    for (std::int32_t b = a; b < n; ++b) rel[a * n + b] = 1;
  return BlockSpec(n, std::move(rel));
}

BlockSpec BlockSpec::full(std::int32_t n) {
  if (n < 1) fail(Err::InvalidSpec, "block size must be positive");
  return BlockSpec(n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 1));
}

BlockSpec BlockSpec::antichain(std::int32_t n) {
  if (n < 1) fail(Err::InvalidSpec, "block size must be positive");
  std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
  for (std::int32_t a = 0; a < n; ++a) rel[a * n + a] = 1;
  return BlockSpec(n, std::move(rel));
}

BlockSpec BlockSpec::from_pairs(
    std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& related) {
  if (n < 1) fail(Err::InvalidSpec, "block size must be positive");
  std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) * n, 0);
  for (std::int32_t a = 0; a < n; ++a) rel[a * n + a] = 1;
  for (auto [a, b] : related) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(Err::InvalidSpec, "relation pair out of block range");
    rel[a * n + b] = 1;
  }
  // transitive closure
  for (std::int32_t k = 0; k < n; ++k)
    for (std::int32_t a = 0; a < n; ++a)
      if (rel[a * n + k])
        for (std::int32_t b = 0; b < n; ++b)
          if (rel[k * n + b]) rel[a * n + b] = 1;
  return BlockSpec(n, std::move(rel));
}

bool BlockSpec::is_preorder() const {
  for (std::int32_t a = 0; a < n_; ++a)
    if (!leq(a, a)) return false;
  for (std::int32_t a = 0; a < n_; ++a)
    for (std::int32_t k = 0; k < n_; ++k)
      if (leq(a, k))
        for (std::int32_t b = 0; b < n_; ++b)
          if (leq(k, b) && !leq(a, b)) return false;
  return true;
}

BlockSpec::Kind BlockSpec::classify() const {
  if (*this == chain(n_)) return Kind::Chain;
  if (*this == full(n_)) return Kind::Full;
  if (*this == antichain(n_)) return Kind::Antichain;
  return Kind::Pairs;
}

std::vector<std::pair<std::int32_t, std::int32_t>> BlockSpec::strict_pairs_listed() const {
  std::vector<std::pair<std::int32_t, std::int32_t>> out;
  for (std::int32_t a = 0; a < n_; ++a)
    for (std::int32_t b = 0; b < n_; ++b)
      if (a != b && leq(a, b)) out.emplace_back(a, b);
  return out;
}

// ------------------------------------------------------------ PreorderSpec

struct PreorderSpec::Impl {
  Base base = Base::Z;
  std::vector<BlockSpec> pattern;
  std::optional<inv::SemilinearSet> sizes;
  std::map<std::int64_t, BlockSpec> exceptions;
  std::vector<FinitaryPartition> coarsenings;

  // Coarsening window: whole blocks [win_lo, win_hi] with an explicit
  // closure relation; empty when there are no coarsening parts.
  bool has_window = false;
  std::int64_t win_lo = 0, win_hi = -1;
  std::vector<Index> win_idx;  // canonical order
  std::unique_ptr<BitMat> win_rel;

  bool coord_valid(std::int64_t b) const {
    switch (base) {
      case Base::Z: return true;
      case Base::N: return b >= 0;
      case Base::NegN: return b <= 0;
    }
    return false;
  }

  std::int32_t sized_block_size(std::int64_t b) const {
    const std::int64_t k = (b >= 0 ? b : -b);
    if (k % 2 != 0) return 1;
    const std::uint64_t member_idx = static_cast<std::uint64_t>(k / 2);
    if (sizes->finite() && member_idx >= sizes->finite_size()) return 1;
    const std::uint64_t sz = sizes->nth_member(member_idx);
    if (sz > (1u << 20)) fail(Err::Overflow, "enumerated block size too large");
    return static_cast<std::int32_t>(sz);
  }

  std::int32_t block_size_of(std::int64_t b) const {
    auto it = exceptions.find(b);
    if (it != exceptions.end()) return it->second.size();
    if (sizes) return sized_block_size(b);
    const std::int64_t period = static_cast<std::int64_t>(pattern.size());
    const std::int64_t idx = ((b % period) + period) % period;
    return pattern[static_cast<std::size_t>(idx)].size();
  }

  bool same_block_leq(std::int64_t b, std::int32_t s, std::int32_t t) const {
    auto it = exceptions.find(b);
    if (it != exceptions.end()) return it->second.leq(s, t);
    if (sizes) return true;  // enumerated blocks are full (or singletons)
    const std::int64_t period = static_cast<std::int64_t>(pattern.size());
    const std::int64_t idx = ((b % period) + period) % period;
    return pattern[static_cast<std::size_t>(idx)].leq(s, t);
  }

  BlockSpec block_of(std::int64_t b) const {
    auto it = exceptions.find(b);
    if (it != exceptions.end()) return it->second;
    if (sizes) {
      const std::int32_t sz = sized_block_size(b);
      return sz == 1 ? BlockSpec::chain(1) : BlockSpec::full(sz);
    }
    const std::int64_t period = static_cast<std::int64_t>(pattern.size());
    const std::int64_t idx = ((b % period) + period) % period;
    return pattern[static_cast<std::size_t>(idx)];
  }

  bool in_window(Index i) const {
    return has_window && i.block >= win_lo && i.block <= win_hi;
  }

  std::size_t win_pos(Index i) const {
    auto it = std::lower_bound(win_idx.begin(), win_idx.end(), i);
    return static_cast<std::size_t>(it - win_idx.begin());
  }

  bool base_leq(Index i, Index j) const {
    if (i.block != j.block) return i.block < j.block;
    return same_block_leq(i.block, i.slot, j.slot);
  }

  bool leq(Index i, Index j) const {
    if (in_window(i) && in_window(j)) return win_rel->get(win_pos(i), win_pos(j));
    return base_leq(i, j);
  }

  void build_window() {
    std::int64_t lo = 0, hi = -1;
    bool any = false;
    for (const auto& c : coarsenings)
      for (const auto& part : c.parts)
        for (Index i : part) {
          if (!any) {
            lo = hi = i.block;
            any = true;
          } else {
            lo = std::min(lo, i.block);
            hi = std::max(hi, i.block);
          }
        }
    if (!any) return;

    has_window = true;
    win_lo = lo;
    win_hi = hi;
    for (std::int64_t b = lo; b <= hi; ++b) {
      const std::int32_t sz = block_size_of(b);
      for (std::int32_t s = 0; s < sz; ++s) win_idx.push_back({b, s});
    }
    const std::size_t n = win_idx.size();
    win_rel = std::make_unique<BitMat>(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (base_leq(win_idx[a], win_idx[b])) win_rel->set(a, b);
    for (const auto& c : coarsenings) {
      for (const auto& part : c.parts)
        for (Index x : part)
          for (Index y : part) {
            win_rel->set(win_pos(x), win_pos(y));
            win_rel->set(win_pos(y), win_pos(x));
          }
      win_rel->close_transitively();
    }
  }
};

PreorderSpec PreorderSpec::blocks(Base base, std::vector<BlockSpec> pattern,
                                  std::map<std::int64_t, BlockSpec> exceptions) {
  if (pattern.empty()) fail(Err::InvalidSpec, "pattern must be nonempty");
  auto impl = std::make_shared<Impl>();
  impl->base = base;
  impl->pattern = std::move(pattern);
  impl->exceptions = std::move(exceptions);
  for (const auto& [b, blk] : impl->exceptions) {
    (void)blk;
    if (!impl->coord_valid(b))
      fail(Err::InvalidSpec, "exception coordinate " + std::to_string(b) + " outside base shape");
  }
  return PreorderSpec(std::move(impl));
}

PreorderSpec PreorderSpec::sized(Base base, inv::SemilinearSet sizes,
                                 std::map<std::int64_t, BlockSpec> exceptions) {
  if (sizes.member(0)) fail(Err::InvalidSpec, "size enumeration contains 0");
  auto impl = std::make_shared<Impl>();
  impl->base = base;
  impl->sizes = std::move(sizes);
  impl->exceptions = std::move(exceptions);
  for (const auto& [b, blk] : impl->exceptions) {
    (void)blk;
    if (!impl->coord_valid(b))
      fail(Err::InvalidSpec, "exception coordinate " + std::to_string(b) + " outside base shape");
  }
  return PreorderSpec(std::move(impl));
}

PreorderSpec PreorderSpec::plain(Base base) { return blocks(base, {BlockSpec::chain(1)}); }

PreorderSpec PreorderSpec::coarsen(const FinitaryPartition& p) const {
  FinitaryPartition norm;
  for (const auto& part : p.parts) {
    if (part.size() < 2) continue;  // implicit singleton parts carry nothing
    for (Index i : part) require_valid(i);
    norm.parts.push_back(part);
  }
  for (std::size_t a = 0; a < norm.parts.size(); ++a)
    for (std::size_t b = a + 1; b < norm.parts.size(); ++b)
      for (Index i : norm.parts[a])
        if (norm.parts[b].contains(i))
          fail(Err::PartsOverlap, "parts share index " + idx_str(i));
  for (const auto& part : norm.parts)
    if (!is_convex(part)) fail(Err::PartNotConvex, "part is not convex in the current preorder");

  auto impl = std::make_shared<Impl>();
  impl->base = impl_->base;
  impl->pattern = impl_->pattern;
  impl->sizes = impl_->sizes;
  impl->exceptions = impl_->exceptions;
  impl->coarsenings = impl_->coarsenings;
  if (!norm.parts.empty()) impl->coarsenings.push_back(std::move(norm));
  impl->build_window();
  return PreorderSpec(std::move(impl));
}

bool PreorderSpec::valid(Index i) const {
  if (!impl_->coord_valid(i.block)) return false;
  return i.slot >= 0 && i.slot < impl_->block_size_of(i.block);
}

void PreorderSpec::require_valid(Index i) const {
  if (!valid(i)) fail(Err::InvalidIndex, "index " + idx_str(i) + " not in the index set");
}

bool PreorderSpec::leq(Index i, Index j) const {
  require_valid(i);
  require_valid(j);
  return impl_->leq(i, j);
}

namespace {

// Whole blocks lo..hi clamped to the base shape, canonical order.
std::vector<Index> block_range(const PreorderSpec& spec, std::int64_t lo, std::int64_t hi) {
  std::vector<Index> out;
  for (std::int64_t b = lo; b <= hi; ++b) {
    if (!spec.block_coord_valid(b)) continue;
    const std::int32_t sz = spec.block_size(b);
    for (std::int32_t s = 0; s < sz; ++s) out.push_back({b, s});
  }
  return out;
}

// Candidate region for hull/convexity questions touching blocks [lo, hi]:
// the coarsening window joins whenever it overlaps the touched range.
std::vector<Index> candidate_region(const PreorderSpec& spec, std::int64_t lo, std::int64_t hi) {
  if (auto w = spec.window_range()) {
    if (!(w->second < lo || w->first > hi)) {
      lo = std::min(lo, w->first);
      hi = std::max(hi, w->second);
    }
  }
  return block_range(spec, lo, hi);
}

}  // namespace

IndexSet PreorderSpec::interval(Index i, Index j) const {
  require_valid(i);
  require_valid(j);
  if (!impl_->leq(i, j)) return {};
  std::vector<Index> out;
  for (Index k : candidate_region(*this, std::min(i.block, j.block), std::max(i.block, j.block)))
    if (impl_->leq(i, k) && impl_->leq(k, j)) out.push_back(k);
  return IndexSet::of(std::move(out));
}

IndexSet PreorderSpec::cls(Index k) const {
  require_valid(k);
  std::vector<Index> out;
  if (impl_->in_window(k)) {
    const std::size_t kp = impl_->win_pos(k);
    for (std::size_t a = 0; a < impl_->win_idx.size(); ++a)
      if (impl_->win_rel->get(kp, a) && impl_->win_rel->get(a, kp))
        out.push_back(impl_->win_idx[a]);
  } else {
    const BlockSpec blk = impl_->block_of(k.block);
    for (std::int32_t s = 0; s < blk.size(); ++s)
      if (blk.leq(k.slot, s) && blk.leq(s, k.slot)) out.push_back({k.block, s});
  }
  return IndexSet::of(std::move(out));
}

IndexSet PreorderSpec::hull(const IndexSet& s) const {
  if (s.empty()) fail(Err::EmptySet, "hull of the empty set");
  for (Index i : s) require_valid(i);

  std::int64_t lo = s[0].block, hi = s[0].block;
  for (Index i : s) {
    lo = std::min(lo, i.block);
    hi = std::max(hi, i.block);
  }
  const std::vector<Index> cand = candidate_region(*this, lo, hi);

  std::vector<Index> current = s.items();
  std::vector<std::uint8_t> member(cand.size(), 0);
  for (std::size_t c = 0; c < cand.size(); ++c)
    if (std::binary_search(current.begin(), current.end(), cand[c])) member[c] = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < cand.size(); ++c) {
      if (member[c]) continue;
      bool below_all = true, above_all = true;
      for (std::size_t a = 0; a < cand.size() && (below_all || above_all); ++a) {
        if (!member[a]) continue;
        if (below_all && !strictly_less(cand[c], cand[a])) below_all = false;
        if (above_all && !strictly_less(cand[a], cand[c])) above_all = false;
      }
      if (!below_all && !above_all) {
        member[c] = 1;
        changed = true;
      }
    }
  }

  std::vector<Index> out;
  for (std::size_t c = 0; c < cand.size(); ++c)
    if (member[c]) out.push_back(cand[c]);
  return IndexSet::of(std::move(out));
}

bool PreorderSpec::is_convex(const IndexSet& s) const {
  for (Index i : s) require_valid(i);
  for (Index i : s)
    for (Index j : s) {
      if (!impl_->leq(i, j)) continue;
      for (Index k : interval(i, j))
        if (!s.contains(k)) return false;
    }
  return true;
}

bool PreorderSpec::is_strongly_convex(const IndexSet& s) const {
  if (s.empty()) return true;
  for (Index i : s) require_valid(i);
  std::int64_t lo = s[0].block, hi = s[0].block;
  for (Index i : s) {
    lo = std::min(lo, i.block);
    hi = std::max(hi, i.block);
  }
  for (Index x : candidate_region(*this, lo, hi)) {
    if (s.contains(x)) continue;
    bool below_all = true, above_all = true;
    for (Index a : s) {
      if (below_all && !strictly_less(x, a)) below_all = false;
      if (above_all && !strictly_less(a, x)) above_all = false;
      if (!below_all && !above_all) return false;
    }
  }
  return true;
}

Index PreorderSpec::from_flat(std::int64_t n) const {
  if (n >= 0) {
    std::int64_t offset = 0, b = 0;
    while (true) {
      if (!impl_->coord_valid(b))
        fail(Err::InvalidIndex, "flat position " + std::to_string(n) + " outside base shape");
      const std::int32_t sz = impl_->block_size_of(b);
      if (n < offset + sz) return {b, static_cast<std::int32_t>(n - offset)};
      offset += sz;
      ++b;
    }
  }
  std::int64_t offset = 0, b = -1;
  while (true) {
    if (!impl_->coord_valid(b))
      fail(Err::InvalidIndex, "flat position " + std::to_string(n) + " outside base shape");
    const std::int32_t sz = impl_->block_size_of(b);
    offset -= sz;
    if (n >= offset) return {b, static_cast<std::int32_t>(n - offset)};
    --b;
  }
}

std::int64_t PreorderSpec::to_flat(Index i) const {
  require_valid(i);
  if (i.block >= 0) {
    std::int64_t offset = 0;
    for (std::int64_t b = 0; b < i.block; ++b) offset += impl_->block_size_of(b);
    return offset + i.slot;
  }
  std::int64_t offset = 0;
  for (std::int64_t b = -1; b >= i.block; --b) offset -= impl_->block_size_of(b);
  return offset + i.slot;
}

Base PreorderSpec::base() const { return impl_->base; }
bool PreorderSpec::block_coord_valid(std::int64_t b) const { return impl_->coord_valid(b); }
std::int32_t PreorderSpec::block_size(std::int64_t b) const {
  if (!impl_->coord_valid(b)) fail(Err::InvalidIndex, "block coordinate outside base shape");
  return impl_->block_size_of(b);
}
BlockSpec PreorderSpec::block_at(std::int64_t b) const {
  if (!impl_->coord_valid(b)) fail(Err::InvalidIndex, "block coordinate outside base shape");
  return impl_->block_of(b);
}
bool PreorderSpec::all_blocks_singletons() const {
  if (impl_->sizes && !impl_->sizes->empty()) return false;
  if (!impl_->sizes)
    for (const auto& blk : impl_->pattern)
      if (blk.size() != 1) return false;
  for (const auto& [b, blk] : impl_->exceptions) {
    (void)b;
    if (blk.size() != 1) return false;
  }
  return true;
}

const std::vector<BlockSpec>& PreorderSpec::pattern() const { return impl_->pattern; }
const std::optional<inv::SemilinearSet>& PreorderSpec::size_enumeration() const {
  return impl_->sizes;
}
const std::map<std::int64_t, BlockSpec>& PreorderSpec::exceptions() const {
  return impl_->exceptions;
}
const std::vector<FinitaryPartition>& PreorderSpec::coarsenings() const {
  return impl_->coarsenings;
}

std::optional<std::pair<std::int64_t, std::int64_t>> PreorderSpec::window_range() const {
  if (!impl_->has_window) return std::nullopt;
  return std::make_pair(impl_->win_lo, impl_->win_hi);
}

std::vector<IndexSet> PreorderSpec::window_classes() const {
  std::vector<IndexSet> out;
  if (!impl_->has_window) return out;
  std::vector<std::uint8_t> seen(impl_->win_idx.size(), 0);
  for (std::size_t a = 0; a < impl_->win_idx.size(); ++a) {
    if (seen[a]) continue;
    std::vector<Index> members;
    for (std::size_t b = 0; b < impl_->win_idx.size(); ++b)
      if (impl_->win_rel->get(a, b) && impl_->win_rel->get(b, a)) {
        members.push_back(impl_->win_idx[b]);
        seen[b] = 1;
      }
    out.push_back(IndexSet::of(std::move(members)));
  }
  return out;
}

bool PreorderSpec::operator==(const PreorderSpec& o) const {
  if (impl_ == o.impl_) return true;
  return impl_->base == o.impl_->base && impl_->pattern == o.impl_->pattern &&
         impl_->sizes == o.impl_->sizes && impl_->exceptions == o.impl_->exceptions &&
         impl_->coarsenings == o.impl_->coarsenings;
}

}  // namespace aut::pre
