#include "aut/semilinear.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace aut::inv {

namespace {

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t g = std::gcd(a, b);
  const std::uint64_t x = a / g;
  if (b != 0 && x > ~0ull / b) fail(Err::Overflow, "lcm of progression periods overflows");
  return x * b;
}

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SemilinearSet SemilinearSet::make(
    std::vector<std::uint64_t> finite_part,
    std::vector<std::pair<std::uint64_t, std::uint64_t>> progressions) {
  for (const auto& [b, d] : progressions) {
    (void)b;
    if (d == 0) fail(Err::InvalidArgument, "progression period must be positive");
  }

  SemilinearSet s;
  std::uint64_t L = 1;
  for (const auto& [b, d] : progressions) L = checked_lcm(L, d);

  std::uint64_t top = 0;
  for (std::uint64_t x : finite_part) top = std::max(top, x);
  for (const auto& [b, d] : progressions) {
    (void)d;
    top = std::max(top, b);
  }
  if (top > ~0ull - 2 * L) fail(Err::Overflow, "semilinear threshold overflows");
  const std::uint64_t T = top + L;

  // Beyond T every progression is a full residue class mod L.
  std::vector<std::uint64_t> res;
  for (std::uint64_t r = 0; r < L; ++r) {
    bool active = false;
    for (const auto& [b, d] : progressions) {
      if (r % d == b % d) {
        active = true;
        break;
      }
    }
    if (active) res.push_back(r);
  }

  std::vector<std::uint64_t> expl;
  for (std::uint64_t x : finite_part)
    if (x < T) expl.push_back(x);
  for (const auto& [b, d] : progressions)
    for (std::uint64_t x = b; x < T; x += d) expl.push_back(x);
  sort_unique(expl);

  s.period_ = L;
  s.threshold_ = T;
  s.explicit_ = std::move(expl);
  s.residues_ = std::move(res);
  s.normalize();
  return s;
}

void SemilinearSet::normalize() {
  // Minimal period: smallest divisor of period_ under which the residue set
  // is shift-invariant.
  for (std::uint64_t d = 1; d <= period_; ++d) {
    if (period_ % d != 0) continue;
    bool ok = true;
    for (std::uint64_t r : residues_) {
      if (!std::binary_search(residues_.begin(), residues_.end(), (r + d) % period_)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<std::uint64_t> reduced;
      for (std::uint64_t r : residues_)
        if (r < d) reduced.push_back(r);
      period_ = d;
      residues_ = std::move(reduced);
      break;
    }
  }

  // Minimal threshold: walk down while the explicit tail agrees with the
  // periodic description.
  auto periodic = [&](std::uint64_t n) {
    return std::binary_search(residues_.begin(), residues_.end(), n % period_);
  };
  while (threshold_ > 0) {
    const std::uint64_t n = threshold_ - 1;
    const bool in_explicit =
        std::binary_search(explicit_.begin(), explicit_.end(), n);
    if (in_explicit != periodic(n)) break;
    if (in_explicit) explicit_.pop_back();
    --threshold_;
  }
}

bool SemilinearSet::member(std::uint64_t n) const {
  if (n < threshold_) return std::binary_search(explicit_.begin(), explicit_.end(), n);
  return std::binary_search(residues_.begin(), residues_.end(), n % period_);
}

std::uint64_t SemilinearSet::finite_size() const {
  if (!finite()) fail(Err::InvalidArgument, "set is infinite");
  return explicit_.size();
}

std::uint64_t SemilinearSet::nth_member(std::uint64_t k) const {
  if (k < explicit_.size()) return explicit_[k];
  if (residues_.empty())
    fail(Err::InvalidArgument, "nth_member beyond the end of a finite set");
  // First occurrence of each residue class at or past the threshold, in
  // ascending value order; members then repeat with stride period_.
  std::vector<std::uint64_t> first;
  for (std::uint64_t r : residues_) {
    std::uint64_t v = threshold_ + ((r + period_ - threshold_ % period_) % period_);
    first.push_back(v);
  }
  std::sort(first.begin(), first.end());
  const std::uint64_t j = k - explicit_.size();
  return first[j % first.size()] + (j / first.size()) * period_;
}

SemilinearSet SemilinearSet::unite(const SemilinearSet& o) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> progs;
  auto push_tail = [&progs](const SemilinearSet& s) {
    for (std::uint64_t r : s.residues_) {
      std::uint64_t v = s.threshold_ + ((r + s.period_ - s.threshold_ % s.period_) % s.period_);
      progs.emplace_back(v, s.period_);
    }
  };
  push_tail(*this);
  push_tail(o);
  std::vector<std::uint64_t> fin = explicit_;
  fin.insert(fin.end(), o.explicit_.begin(), o.explicit_.end());
  return make(std::move(fin), std::move(progs));
}

SemilinearSet SemilinearSet::minus_finite(const std::vector<std::uint64_t>& remove) const {
  if (remove.empty()) return *this;
  std::uint64_t top = 0;
  for (std::uint64_t x : remove) top = std::max(top, x);

  // Re-express with a threshold beyond every removed value, then drop them.
  SemilinearSet s = *this;
  while (s.threshold_ <= top) {
    if (s.member(s.threshold_)) s.explicit_.push_back(s.threshold_);
    ++s.threshold_;
  }
  std::vector<std::uint64_t> kept;
  for (std::uint64_t x : s.explicit_)
    if (std::find(remove.begin(), remove.end(), x) == remove.end()) kept.push_back(x);
  s.explicit_ = std::move(kept);
  s.normalize();
  return s;
}

SemilinearSet SemilinearSet::add_finite(const std::vector<std::uint64_t>& extra) const {
  if (extra.empty()) return *this;
  SemilinearSet other = make(extra, {});
  return unite(other);
}

SemilinearSet SemilinearSet::tail_part() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> progs;
  for (std::uint64_t r : residues_) {
    std::uint64_t v = threshold_ + ((r + period_ - threshold_ % period_) % period_);
    progs.emplace_back(v, period_);
  }
  return make({}, std::move(progs));
}

SymdiffResult symdiff_finite(const SemilinearSet& a, const SemilinearSet& b) {
  const std::uint64_t L = checked_lcm(a.period(), b.period());
  SymdiffResult out;
  for (std::uint64_t r = 0; r < L; ++r) {
    const bool in_a = std::binary_search(a.residues().begin(), a.residues().end(), r % a.period());
    const bool in_b = std::binary_search(b.residues().begin(), b.residues().end(), r % b.period());
    if (in_a != in_b) {
      out.finite = false;
      out.witness = {r, L};
      return out;
    }
  }
  return out;
}

}  // namespace aut::inv
