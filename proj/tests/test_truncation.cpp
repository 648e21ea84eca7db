#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "aut/rng.hpp"
#include "aut/truncation.hpp"

using namespace aut;
using namespace aut::trunc;
using namespace aut::pre;

namespace {

IndexSet flat_range(const PreorderSpec& s, long a, long b) {
  std::vector<Index> v;
  for (long k = a; k <= b; ++k) v.push_back(s.from_flat(k));
  return IndexSet::of(v);
}

PreorderSpec coarse_pair() {
  auto z = PreorderSpec::plain(Base::Z);
  FinitaryPartition p;
  p.parts.push_back(flat_range(z, 0, 1));
  return z.coarsen(p);
}

// Independent enumeration oracle: walk ALL matrices over the region whose
// non-pattern entries vanish and count the invertible ones.  Unlike the
// production path this never builds GL block lists.
std::uint64_t oracle_count_U(const Truncation& t) {
  const std::uint32_t n = static_cast<std::uint32_t>(t.size());
  const std::uint64_t q = t.field().q();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (t.leq(i, j)) slots.emplace_back(i, j);
  std::uint64_t count = 0;
  std::vector<std::uint16_t> vals(slots.size(), 0);
  while (true) {
    mat::Mat m = mat::Mat::zero(n);
    for (std::size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = vals[s];
    if (mat::invertible(t.field(), m)) ++count;
    std::size_t pos = 0;
    for (; pos < slots.size(); ++pos) {
      if (++vals[pos] < q) break;
      vals[pos] = 0;
    }
    if (pos == slots.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("order formula vs the independent oracle") {
  auto z = PreorderSpec::plain(Base::Z);
  auto zc = coarse_pair();

  struct Config {
    PreorderSpec spec;
    IndexSet region;
    std::uint32_t q;
    std::uint64_t expect;
  };
  std::vector<Config> configs = {
      {z, flat_range(z, 1, 3), 2, 8},
      {zc, flat_range(zc, 0, 1), 2, 6},
      {z, flat_range(z, 0, 1), 3, 12},
  };
  for (const auto& cfg : configs) {
    auto t = Truncation::make(cfg.spec, cfg.region, gf::Field::make(cfg.q));
    CHECK(order_U(t) == cfg.expect);
    CHECK(oracle_count_U(t) == cfg.expect);
    CHECK(enumerate_U(t, 1 << 20).size() == cfg.expect);
  }

  // wider sweep: formula == streaming count == oracle
  for (std::uint32_t q : {2u, 3u, 4u}) {
    for (long len : {1L, 2L, 3L}) {
      auto t = Truncation::make(z, flat_range(z, 0, len), gf::Field::make(q));
      if (order_U(t) > 4096) continue;
      CHECK(order_U(t) == oracle_count_U(t));
      CHECK(static_cast<Count>(enumerate_U(t, 1 << 20).size()) == order_U(t));
    }
    auto tc = Truncation::make(zc, flat_range(zc, -1, 2), gf::Field::make(q));
    if (order_U(tc) <= 65536) {
      CHECK(order_U(tc) == oracle_count_U(tc));
      CHECK(static_cast<Count>(enumerate_U(tc, 1 << 20).size()) == order_U(tc));
    }
  }
}

TEST_CASE("orders over a region with incomparable indices") {
  // antichain block flanked by singletons: the two middle indices are
  // incomparable, so their cross entries vanish in both triangles
  auto spec = PreorderSpec::blocks(
      Base::Z, {BlockSpec::antichain(2), BlockSpec::chain(1)});
  std::vector<Index> region{{0, 0}, {0, 1}, {1, 0}, {-1, 0}};
  auto r = IndexSet::of(region);
  for (std::uint32_t q : {2u, 3u}) {
    auto t = Truncation::make(spec, r, gf::Field::make(q));
    // classes all singletons; strict pairs: (-1,0)->each of the others,
    // each antichain slot -> (1,0): 3 + 2 = 5
    CHECK(t.strict_pair_count() == 5);
    CHECK(order_U(t) == checked_pow(q - 1, 4) * checked_pow(q, 5));
    CHECK(order_U(t) == oracle_count_U(t));
    CHECK(static_cast<Count>(enumerate_U(t, 1 << 16).size()) == order_U(t));
  }
}

TEST_CASE("GL orders") {
  CHECK(gl_order(gf::Field::make(5), 1) == 4);
  CHECK(gl_order(gf::Field::make(2), 2) == 6);
  CHECK(gl_order(gf::Field::make(2), 3) == 168);
  CHECK(gl_order(gf::Field::make(4), 2) == 180);
  CHECK(gl_order(gf::Field::make(5), 2) == 480);
  CHECK(gl_order(gf::Field::make(3), 3) == 11232);
  CHECK(gl_elements(gf::Field::make(2), 3, 1 << 20).size() == 168);
}

TEST_CASE("enumeration lists the expected small groups") {
  auto z = PreorderSpec::plain(Base::Z);
  auto t = Truncation::make(z, flat_range(z, 0, 1), gf::Field::make(2));
  auto u = enumerate_U(t, 100);
  REQUIRE(u.size() == 2);
  CHECK(u.contains(mat::Mat::identity(2)));
  mat::Mat e12 = mat::Mat::identity(2);
  e12.at(0, 1) = 1;
  CHECK(u.contains(e12));

  auto zc = coarse_pair();
  auto tc = Truncation::make(zc, flat_range(zc, 0, 1), gf::Field::make(2));
  CHECK(enumerate_U(tc, 100).size() == 6);  // all of GL_2(F_2)
}

TEST_CASE("budget guard") {
  auto z = PreorderSpec::plain(Base::Z);
  auto t = Truncation::make(z, flat_range(z, 0, 5), gf::Field::make(5));
  CHECK_THROWS_AS(enumerate_U(t, 100), Error);
}

TEST_CASE("closure examples") {
  auto z = PreorderSpec::plain(Base::Z);
  auto f3 = gf::Field::make(3);
  auto t = Truncation::make(z, flat_range(z, 0, 1), f3);

  CHECK(closure(t, {}, 100).size() == 1);

  mat::Mat tv = mat::Mat::identity(2);
  tv.at(0, 1) = 1;
  CHECK(closure(t, {tv}, 100).size() == 3);  // (I+e)^3 = I in characteristic 3

  auto f5 = gf::Field::make(5);
  auto t5 = Truncation::make(z, flat_range(z, 0, 1), f5);
  auto sl = closure(t5, sl_generators(f5, 2), 1 << 16);
  CHECK(sl.size() == 120);
  CHECK(contains_SL(t5, sl));
  for (std::size_t i = 0; i < sl.size(); ++i) CHECK(mat::det(f5, sl.member(i)) == 1);
}

TEST_CASE("closure outputs are verified closed on sampled pairs") {
  auto z = PreorderSpec::plain(Base::Z);
  auto f5 = gf::Field::make(5);
  auto t = Truncation::make(z, flat_range(z, 0, 1), f5);
  auto sl = closure(t, sl_generators(f5, 2), 1 << 16);
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const mat::Mat& a = sl.member(rng.below(sl.size()));
    const mat::Mat& b = sl.member(rng.below(sl.size()));
    REQUIRE(sl.contains(mat::mul(f5, a, b)));
    REQUIRE(sl.contains(*mat::inverse(f5, a)));
  }
}

TEST_CASE("normal closure examples") {
  auto z = PreorderSpec::plain(Base::Z);
  auto f5 = gf::Field::make(5);
  auto t = Truncation::make(z, flat_range(z, 0, 1), f5);
  auto gl = enumerate_GL(t, 1 << 16);
  REQUIRE(gl.size() == 480);

  CHECK(normal_closure(t, mat::Mat::identity(2), gl, 1 << 16).size() == 1);

  mat::Mat two = mat::Mat::identity(2);
  two.at(0, 0) = two.at(1, 1) = 2;
  auto central = normal_closure(t, two, gl, 1 << 16);
  CHECK(central.size() == 4);  // powers of 2 mod 5

  mat::Mat tv = mat::Mat::identity(2);
  tv.at(0, 1) = 1;
  auto nc = normal_closure(t, tv, gl, 1 << 16);
  CHECK(nc.size() % 120 == 0);
  CHECK(contains_SL(t, nc));
}

TEST_CASE("noncentral normal closures contain SL over the admissible (n, q) pairs") {
  auto z = PreorderSpec::plain(Base::Z);
  struct NQ {
    std::uint32_t n, q;
  };
  for (NQ c : {NQ{2, 4}, NQ{2, 5}, NQ{3, 2}}) {
    auto f = gf::Field::make(c.q);
    auto t = Truncation::make(z, flat_range(z, 0, c.n - 1), f);
    const auto& all = gl_elements(f, c.n, 1 << 16);
    const auto gens = gl_generators(f, c.n);
    std::uint32_t noncentral = 0;
    for (const mat::Mat& g : all) {
      bool scalar = true;
      for (std::uint32_t i = 0; i < c.n && scalar; ++i)
        for (std::uint32_t j = 0; j < c.n; ++j)
          if (g.at(i, j) != (i == j ? g.at(0, 0) : 0)) {
            scalar = false;
            break;
          }
      if (scalar) continue;
      ++noncentral;
      auto nc = normal_closure_by_generators(t, g, gens, 1 << 21);
      REQUIRE(contains_SL(t, nc));
    }
    CHECK(noncentral == all.size() - (c.q - 1));
  }
}

TEST_CASE("proper normal subgroups of SL are central over the stated (n, q) pairs") {
  auto z = PreorderSpec::plain(Base::Z);
  struct NQ {
    std::uint32_t n, q;
    bool exhaustive;
  };
  for (NQ c : {NQ{2, 4, true}, NQ{2, 5, true}, NQ{3, 2, true}, NQ{3, 3, false}}) {
    auto f = gf::Field::make(c.q);
    auto t = Truncation::make(z, flat_range(z, 0, c.n - 1), f);
    auto sl_gens = sl_generators(f, c.n);
    auto sl = closure(t, sl_gens, 1 << 16);
    REQUIRE(static_cast<Count>(sl.size()) == order_GL(t) / (c.q - 1));
    const Count sl_order = sl.size();
    auto is_scalar = [&](const mat::Mat& g) {
      for (std::uint32_t a = 0; a < c.n; ++a)
        for (std::uint32_t b = 0; b < c.n; ++b)
          if (g.at(a, b) != (a == b ? g.at(0, 0) : 0)) return false;
      return true;
    };
    Rng rng(c.n * 10 + c.q);
    std::size_t done = 0;
    for (std::size_t step = 0; step < sl.size() && done < (c.exhaustive ? sl.size() : 25);
         ++step) {
      const mat::Mat& g = c.exhaustive ? sl.member(step) : sl.member(rng.below(sl.size()));
      if (is_scalar(g)) continue;
      ++done;
      auto nc = normal_closure_by_generators(t, g, sl_gens, 1 << 16);
      REQUIRE(static_cast<Count>(nc.size()) == sl_order);
    }
  }
}

TEST_CASE("centralizers") {
  auto z = PreorderSpec::plain(Base::Z);
  auto f2 = gf::Field::make(2);
  auto f5 = gf::Field::make(5);

  auto t2 = Truncation::make(z, flat_range(z, 0, 1), f2);
  auto gl2 = enumerate_GL(t2, 100);
  std::vector<mat::Mat> all2;
  for (std::size_t i = 0; i < gl2.size(); ++i) all2.push_back(gl2.member(i));
  CHECK(centralizer(t2, all2, gl2).size() == 1);
  CHECK(centralizer(t2, {mat::Mat::identity(2)}, gl2).size() == gl2.size());
  CHECK(centralizer(t2, {}, gl2).size() == gl2.size());

  auto t5 = Truncation::make(z, flat_range(z, 0, 1), f5);
  auto gl5 = enumerate_GL(t5, 1 << 16);
  std::vector<mat::Mat> all5;
  for (std::size_t i = 0; i < gl5.size(); ++i) all5.push_back(gl5.member(i));
  auto centre = centralizer(t5, all5, gl5);
  CHECK(centre.size() == 4);
  for (std::size_t i = 0; i < centre.size(); ++i) {
    const mat::Mat& m = centre.member(i);
    CHECK(m.at(0, 1) == 0);
    CHECK(m.at(1, 0) == 0);
    CHECK(m.at(0, 0) == m.at(1, 1));
  }
}

TEST_CASE("determinants") {
  auto f2 = gf::Field::make(2);
  CHECK(mat::det(f2, mat::Mat::identity(3)) == 1);
  mat::Mat anti = mat::Mat::zero(2);
  anti.at(0, 1) = 1;
  anti.at(1, 0) = 1;
  CHECK(mat::det(f2, anti) == 1);  // -1 = 1 in characteristic 2

  for (std::uint32_t q : {4u, 7u, 9u}) {
    auto f = gf::Field::make(q);
    Rng rng(q);
    for (int trial = 0; trial < 1000; ++trial) {
      mat::Mat a = mat::Mat::zero(3), b = mat::Mat::zero(3);
      for (auto& v : a.a) v = static_cast<std::uint16_t>(rng.below(q));
      for (auto& v : b.a) v = static_cast<std::uint16_t>(rng.below(q));
      REQUIRE(mat::det(f, mat::mul(f, a, b)) == f.mul(mat::det(f, a), mat::det(f, b)));
    }
  }
}

TEST_CASE("congruence subgroup index") {
  auto z = PreorderSpec::plain(Base::Z);
  auto f2 = gf::Field::make(2);
  auto outer = Truncation::make(z, flat_range(z, -1, 3), f2);
  CHECK(index_congruence(outer, IndexSet{}) == 1);
  CHECK(index_congruence(outer, flat_range(z, 0, 1)) == 2);

  auto zc = coarse_pair();
  auto outer_c = Truncation::make(zc, flat_range(zc, -1, 2), f2);
  CHECK(index_congruence(outer_c, flat_range(zc, 0, 1)) == 6);

  CHECK_THROWS_AS(index_congruence(outer, flat_range(z, 2, 5)), Error);
}

TEST_CASE("truncation region must be convex") {
  auto z = PreorderSpec::plain(Base::Z);
  CHECK_THROWS_AS(
      Truncation::make(z, IndexSet::of({z.from_flat(0), z.from_flat(2)}), gf::Field::make(2)),
      Error);
}
