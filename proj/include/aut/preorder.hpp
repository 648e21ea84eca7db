#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "aut/error.hpp"
#include "aut/semilinear.hpp"

namespace aut::pre {

// A point of the index set: (block coordinate, slot within the block).
// Canonical order is lexicographic; it drives serialization and matrix row
// order, never the semantic comparisons.
struct Index {
  std::int64_t block = 0;
  std::int32_t slot = 0;

  auto operator<=>(const Index&) const = default;
};

// Sorted duplicate-free set of indices.
class IndexSet {
 public:
  IndexSet() = default;
  static IndexSet of(std::vector<Index> v);

  bool contains(Index i) const;
  std::optional<std::size_t> position_of(Index i) const;
  bool subset_of(const IndexSet& o) const;
  IndexSet unite(const IndexSet& o) const;

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Index operator[](std::size_t i) const { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Index>& items() const { return v_; }

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<Index> v_;
};

// A finite preordered set: the relation matrix is reflexive and transitive.
class BlockSpec {
 public:
  enum class Kind { Chain, Full, Antichain, Pairs };

  static BlockSpec chain(std::int32_t n);
  static BlockSpec full(std::int32_t n);
  static BlockSpec antichain(std::int32_t n);
  // Reflexive-transitive closure of the listed (a, b) pairs.
  static BlockSpec from_pairs(std::int32_t n,
                              const std::vector<std::pair<std::int32_t, std::int32_t>>& related);

  std::int32_t size() const { return n_; }
  bool leq(std::int32_t a, std::int32_t b) const { return rel_[a * n_ + b]; }
  bool is_preorder() const;
  Kind classify() const;
  std::vector<std::pair<std::int32_t, std::int32_t>> strict_pairs_listed() const;

  bool operator==(const BlockSpec&) const = default;

 private:
  BlockSpec(std::int32_t n, std::vector<std::uint8_t> rel) : n_(n), rel_(std::move(rel)) {}
  std::int32_t n_ = 0;
  std::vector<std::uint8_t> rel_;
};

// Finitely many finite parts; every index not listed is implicitly its own
// minimal interval.  Parts of size < 2 carry no information and are dropped.
struct FinitaryPartition {
  std::vector<IndexSet> parts;

  bool operator==(const FinitaryPartition&) const = default;
};

enum class Base { Z, N, NegN };

// A finitely-described Z-like preordered set: a periodic pattern of blocks
// over Z, N or -N (or a block-size enumeration driven by a semilinear set),
// finitely many exceptional blocks, and a sequence of finitary-partition
// coarsenings.  Immutable; copies share the representation.
class PreorderSpec {
 public:
  static PreorderSpec blocks(Base base, std::vector<BlockSpec> pattern,
                             std::map<std::int64_t, BlockSpec> exceptions = {});
  static PreorderSpec sized(Base base, inv::SemilinearSet sizes,
                            std::map<std::int64_t, BlockSpec> exceptions = {});
  static PreorderSpec plain(Base base);  // all blocks size 1

  PreorderSpec coarsen(const FinitaryPartition& p) const;

  bool valid(Index i) const;
  void require_valid(Index i) const;

  bool leq(Index i, Index j) const;
  bool equiv(Index i, Index j) const { return leq(i, j) && leq(j, i); }
  bool strictly_less(Index i, Index j) const { return leq(i, j) && !leq(j, i); }

  IndexSet interval(Index i, Index j) const;
  IndexSet cls(Index k) const;  // the equivalence class [k,k]
  IndexSet hull(const IndexSet& s) const;
  bool is_convex(const IndexSet& s) const;
  bool is_strongly_convex(const IndexSet& s) const;

  // Bijection between the index set and a contiguous integer ruler anchored
  // at (0,0) <-> 0, following canonical order.
  Index from_flat(std::int64_t n) const;
  std::int64_t to_flat(Index i) const;

  Base base() const;
  bool block_coord_valid(std::int64_t b) const;
  std::int32_t block_size(std::int64_t b) const;
  BlockSpec block_at(std::int64_t b) const;
  bool all_blocks_singletons() const;

  const std::vector<BlockSpec>& pattern() const;
  const std::optional<inv::SemilinearSet>& size_enumeration() const;
  const std::map<std::int64_t, BlockSpec>& exceptions() const;
  const std::vector<FinitaryPartition>& coarsenings() const;

  // Block-coordinate range whose relations are affected by coarsenings;
  // nullopt when there is none.
  std::optional<std::pair<std::int64_t, std::int64_t>> window_range() const;
  // Equivalence classes inside the window, canonical order.
  std::vector<IndexSet> window_classes() const;

  bool operator==(const PreorderSpec& o) const;
  bool operator!=(const PreorderSpec& o) const { return !(*this == o); }

 private:
  struct Impl;
  explicit PreorderSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace aut::pre
