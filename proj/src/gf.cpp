#include "aut/gf.hpp"

#include <algorithm>
#include <string>

namespace aut::gf {

namespace {

constexpr std::uint32_t kMaxQ = 1u << 16;
// Full add/mul tables are kept when q*q stays this small.
constexpr std::uint32_t kTableQ = 256;

using Poly = std::vector<std::uint16_t>;  // coefficients, constant term first

// Digits of v base p, constant term first, padded to m.
Poly unpack(std::uint32_t v, std::uint32_t p, std::uint32_t m) {
  Poly c(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    c[i] = static_cast<std::uint16_t>(v % p);
    v /= p;
  }
  return c;
}

std::uint32_t pack(const Poly& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

int degree(const Poly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<int>(i);
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  Poly r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint16_t>((r[i + j] + a[i] * b[j]) % p);
  }
  return r;
}

// In-place remainder of a by monic divisor d.
void poly_mod(Poly& a, const Poly& d, std::uint32_t p) {
  const int dd = degree(d);
  if (dd < 0) return;
  for (int i = degree(a); i >= dd; i = degree(a)) {
    const std::uint32_t c = a[i];
    for (int j = 0; j <= dd; ++j) {
      const std::uint32_t sub = (c * d[j]) % p;
      a[i - dd + j] = static_cast<std::uint16_t>((a[i - dd + j] + p * p - sub) % (p));
    }
  }
}

// Monic polynomial of degree deg whose non-leading coefficients are the
// base-p digits of k with the CONSTANT term as the most significant digit;
// ascending k therefore walks the lex order used for the canonical modulus.
Poly monic_from_rank(std::uint64_t k, std::uint32_t deg, std::uint32_t p) {
  Poly f(deg + 1, 0);
  f[deg] = 1;
  for (std::uint32_t i = 0; i < deg; ++i) {
    const std::uint32_t digit_pos = deg - 1 - i;  // c0 is the top digit
    std::uint64_t div = 1;
    for (std::uint32_t t = 0; t < digit_pos; ++t) div *= p;
    f[i] = static_cast<std::uint16_t>((k / div) % p);
  }
  return f;
}

bool divides(const Poly& d, Poly f, std::uint32_t p) {
  poly_mod(f, d, p);
  return degree(f) < 0;
}

bool irreducible(const Poly& f, std::uint32_t p, std::uint32_t m) {
  if (f[0] == 0) return false;  // divisible by x
  for (std::uint32_t dd = 1; 2 * dd <= m; ++dd) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < dd; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly d(dd + 1, 0);
      d[dd] = 1;
      std::uint64_t kk = k;
      for (std::uint32_t i = 0; i < dd; ++i) {
        d[i] = static_cast<std::uint16_t>(kk % p);
        kk /= p;
      }
      if (divides(d, f, p)) return false;
    }
  }
  return true;
}

Poly canonical_modulus(std::uint32_t p, std::uint32_t m) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) count *= p;
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f = monic_from_rank(k, m, p);
    if (irreducible(f, p, m)) return f;
  }
  fail(Err::InvalidSpec, "no irreducible polynomial found (unreachable)");
}

}  // namespace

struct Field::Impl {
  std::uint32_t p = 0, m = 0, q = 0;
  Poly modulus;  // empty when m == 1
  std::uint16_t generator = 0;

  std::vector<std::uint16_t> add_table;  // q*q when q <= kTableQ
  std::vector<std::uint16_t> mul_table;
  std::vector<std::uint16_t> inv_table;  // size q, inv_table[0] unused
  std::vector<std::uint16_t> exp_table;  // m > 1: generator powers, size 2(q-1)
  std::vector<std::uint32_t> log_table;

  std::uint16_t slow_add(std::uint16_t a, std::uint16_t b) const {
    if (m == 1) return static_cast<std::uint16_t>((a + b) % p);
    std::uint32_t r = 0, mult = 1, x = a, y = b;
    for (std::uint32_t i = 0; i < m; ++i) {
      r += mult * ((x % p + y % p) % p);
      x /= p;
      y /= p;
      mult *= p;
    }
    return static_cast<std::uint16_t>(r);
  }

  std::uint16_t slow_neg(std::uint16_t a) const {
    if (m == 1) return static_cast<std::uint16_t>((p - a) % p);
    std::uint32_t r = 0, mult = 1, x = a;
    for (std::uint32_t i = 0; i < m; ++i) {
      r += mult * ((p - x % p) % p);
      x /= p;
      mult *= p;
    }
    return static_cast<std::uint16_t>(r);
  }

  std::uint16_t slow_mul(std::uint16_t a, std::uint16_t b) const {
    if (m == 1) return static_cast<std::uint16_t>((static_cast<std::uint32_t>(a) * b) % p);
    Poly prod = poly_mul(unpack(a, p, m), unpack(b, p, m), p);
    poly_mod(prod, modulus, p);
    prod.resize(m);
    return static_cast<std::uint16_t>(pack(prod, p));
  }

  std::uint16_t fast_mul(std::uint16_t a, std::uint16_t b) const {
    if (!mul_table.empty()) return mul_table[static_cast<std::uint32_t>(a) * q + b];
    if (m == 1) return static_cast<std::uint16_t>((static_cast<std::uint32_t>(a) * b) % p);
    if (a == 0 || b == 0) return 0;
    return exp_table[log_table[a] + log_table[b]];
  }
};

Field Field::make(std::uint32_t q) {
  if (q > kMaxQ) fail(Err::FieldTooLarge, "q = " + std::to_string(q) + " exceeds 2^16");
  if (q < 2) fail(Err::NotAPrimePower, std::to_string(q) + " is not a prime power");

  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) p = q;  // q itself prime
  std::uint32_t m = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) fail(Err::NotAPrimePower, std::to_string(q) + " is not a prime power");

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->m = m;
  impl->q = q;
  if (m > 1) impl->modulus = canonical_modulus(p, m);

  if (m > 1) {
    // exp/log tables from a generator of the unit group
    for (std::uint32_t g = 1; g < q; ++g) {
      std::uint32_t ord = 1;
      std::uint16_t x = static_cast<std::uint16_t>(g);
      while (x != 1) {
        x = impl->slow_mul(x, static_cast<std::uint16_t>(g));
        ++ord;
      }
      if (ord == q - 1) {
        impl->generator = static_cast<std::uint16_t>(g);
        break;
      }
    }
    impl->exp_table.resize(2 * (q - 1));
    impl->log_table.assign(q, 0);
    std::uint16_t x = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      impl->exp_table[i] = x;
      impl->exp_table[i + (q - 1)] = x;
      impl->log_table[x] = i;
      x = impl->slow_mul(x, impl->generator);
    }
  } else {
    // smallest generator of (Z/p)^*
    for (std::uint32_t g = 1; g < q; ++g) {
      std::uint32_t ord = 1;
      std::uint32_t x = g;
      while (x != 1) {
        x = (x * g) % p;
        ++ord;
      }
      if (ord == q - 1) {
        impl->generator = static_cast<std::uint16_t>(g);
        break;
      }
    }
  }

  if (q <= kTableQ) {
    impl->add_table.resize(static_cast<std::size_t>(q) * q);
    impl->mul_table.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        impl->add_table[a * q + b] = impl->slow_add(static_cast<std::uint16_t>(a),
                                                    static_cast<std::uint16_t>(b));
        impl->mul_table[a * q + b] = impl->slow_mul(static_cast<std::uint16_t>(a),
                                                    static_cast<std::uint16_t>(b));
      }
  }

  impl->inv_table.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) {
    // a^(q-2) = a^(-1) in the unit group
    std::uint16_t r = 1, base = static_cast<std::uint16_t>(a);
    std::uint64_t e = q - 2;
    while (e) {
      if (e & 1) r = impl->fast_mul(r, base);
      base = impl->fast_mul(base, base);
      e >>= 1;
    }
    impl->inv_table[a] = r;
  }

  return Field(std::move(impl));
}

std::uint32_t Field::q() const { return impl_->q; }
std::uint32_t Field::p() const { return impl_->p; }
std::uint32_t Field::m() const { return impl_->m; }
const std::vector<std::uint16_t>& Field::modulus() const { return impl_->modulus; }

std::uint16_t Field::add(std::uint16_t a, std::uint16_t b) const {
  if (!impl_->add_table.empty())
    return impl_->add_table[static_cast<std::uint32_t>(a) * impl_->q + b];
  return impl_->slow_add(a, b);
}

std::uint16_t Field::neg(std::uint16_t a) const { return impl_->slow_neg(a); }

std::uint16_t Field::sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }

std::uint16_t Field::mul(std::uint16_t a, std::uint16_t b) const { return impl_->fast_mul(a, b); }

std::uint16_t Field::inv(std::uint16_t a) const {
  if (a == 0) fail(Err::DivisionByZero, "inverse of 0");
  return impl_->inv_table[a];
}

std::uint16_t Field::div(std::uint16_t a, std::uint16_t b) const { return mul(a, inv(b)); }

std::uint16_t Field::pow(std::uint16_t a, std::uint64_t e) const {
  std::uint16_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint16_t Field::primitive() const { return impl_->generator; }

std::uint16_t Field::element(std::uint64_t v) const {
  if (v >= impl_->q)
    fail(Err::InvalidArgument,
         "field literal " + std::to_string(v) + " out of range for q = " + std::to_string(impl_->q));
  return static_cast<std::uint16_t>(v);
}

namespace {
void require_same(const FieldElem& a, const FieldElem& b) {
  if (a.field != b.field) fail(Err::FieldMismatch, "operands from different fields");
}
}  // namespace

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return {a.field, a.field.add(a.v, b.v)};
}
FieldElem operator-(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return {a.field, a.field.sub(a.v, b.v)};
}
FieldElem operator*(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return {a.field, a.field.mul(a.v, b.v)};
}
FieldElem operator/(const FieldElem& a, const FieldElem& b) {
  require_same(a, b);
  return {a.field, a.field.div(a.v, b.v)};
}
FieldElem operator-(const FieldElem& a) { return {a.field, a.field.neg(a.v)}; }
FieldElem inverse(const FieldElem& a) { return {a.field, a.field.inv(a.v)}; }

FieldElem arith(const FieldElem& a, const FieldElem& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    case ArithOp::Inv: return inverse(a);
    case ArithOp::Neg: return -a;
  }
  fail(Err::InvalidArgument, "unknown arithmetic op");
}

std::vector<FieldElem> enumerate(const Field& f) {
  std::vector<FieldElem> out;
  out.reserve(f.q());
  for (std::uint32_t v = 0; v < f.q(); ++v)
    out.push_back({f, static_cast<std::uint16_t>(v)});
  return out;
}

}  // namespace aut::gf
