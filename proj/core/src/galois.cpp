#include "hermcap/galois.hpp"

#include <sstream>

#include "hermcap/errors.hpp"

namespace hermcap {

namespace {

using Poly = std::vector<unsigned>;

unsigned ipow(unsigned base, unsigned exp) {
  unsigned r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

Poly digits(unsigned value, unsigned p, unsigned n) {
  Poly d(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    d[i] = value % p;
    value /= p;
  }
  return d;
}

unsigned encode(const Poly& d, unsigned p, unsigned n) {
  unsigned v = 0;
  for (unsigned i = n; i-- > 0;) v = v * p + d[i];
  return v;
}

// Remainder of a modulo the monic polynomial m; both in ascending-coefficient form.
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const unsigned c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[i - dm + j] = (a[i - dm + j] + p * p - c * m[j] % p) % p;
    }
  }
  a.resize(std::min(a.size(), dm));
  return a;
}

bool is_zero(const Poly& a) {
  for (unsigned c : a)
    if (c != 0) return false;
  return true;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= deg / 2; ++d) {
    const unsigned count = ipow(p, d);
    for (unsigned code = 0; code < count; ++code) {
      Poly g = digits(code, p, d);
      g.push_back(1);
      if (is_zero(poly_mod(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned FieldSpec::q() const { return ipow(p, k); }

unsigned FieldSpec::order2() const { return ipow(p, 2 * k); }

FieldSpec FieldSpec::from_q(unsigned q) {
  if (q < 2) throw ConfigError("q must be a prime power >= 2, got " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  unsigned rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1) throw ConfigError("q = " + std::to_string(q) + " is not a prime power");
  return FieldSpec{p, k};
}

std::vector<unsigned> smallest_irreducible(unsigned p, unsigned degree) {
  const unsigned count = ipow(p, degree);
  for (unsigned code = 0; code < count; ++code) {
    Poly f = digits(code, p, degree);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw ConfigError("no irreducible polynomial found");  // unreachable for prime p
}

FieldTables::FieldTables(FieldSpec spec) : spec_(spec) {
  if (!is_prime(spec.p)) throw ConfigError("characteristic " + std::to_string(spec.p) + " is not prime");
  if (spec.k == 0) throw ConfigError("extension degree k must be >= 1");
  const unsigned n = 2 * spec.k;
  // Guard the power before computing it to avoid overflow on absurd inputs.
  {
    unsigned long long o = 1;
    for (unsigned i = 0; i < n; ++i) {
      o *= spec.p;
      if (o > kMaxFieldOrder)
        throw ConfigError("GF(" + std::to_string(spec.p) + "^" + std::to_string(n) +
                          ") exceeds the supported field order " + std::to_string(kMaxFieldOrder));
    }
  }
  const unsigned p = spec.p;
  q_ = spec.q();
  order_ = spec.order2();
  modulus_ = smallest_irreducible(p, n);

  std::vector<Poly> elems(order_);
  for (unsigned a = 0; a < order_; ++a) elems[a] = digits(a, p, n);

  add_.resize(static_cast<std::size_t>(order_) * order_);
  mul_.resize(static_cast<std::size_t>(order_) * order_);
  neg_.resize(order_);
  for (unsigned a = 0; a < order_; ++a) {
    Poly na(n);
    for (unsigned i = 0; i < n; ++i) na[i] = (p - elems[a][i]) % p;
    neg_[a] = static_cast<Elem>(encode(na, p, n));
    for (unsigned b = 0; b < order_; ++b) {
      Poly s(n);
      for (unsigned i = 0; i < n; ++i) s[i] = (elems[a][i] + elems[b][i]) % p;
      add_[index(a, b)] = static_cast<Elem>(encode(s, p, n));

      Poly prod(2 * n - 1, 0);
      for (unsigned i = 0; i < n; ++i) {
        if (elems[a][i] == 0) continue;
        for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + elems[a][i] * elems[b][j]) % p;
      }
      mul_[index(a, b)] = static_cast<Elem>(encode(poly_mod(std::move(prod), modulus_, p), p, n));
    }
  }

  inv_.assign(order_, 0);
  for (unsigned a = 1; a < order_; ++a) {
    for (unsigned b = 1; b < order_; ++b) {
      if (mul_[index(a, b)] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
    }
  }

  conj_.resize(order_);
  for (unsigned a = 0; a < order_; ++a) {
    Elem r = 1;
    for (unsigned i = 0; i < q_; ++i) r = mul(r, static_cast<Elem>(a));
    conj_[a] = r;
  }

  const unsigned group = order_ - 1;
  exp_.assign(group, 0);
  log_.assign(order_, 0);
  // order_ >= 4, so the generator search starts past 0 and 1.
  for (unsigned g = 2; g < order_; ++g) {
    const Elem gen = static_cast<Elem>(g);
    Elem x = 1;
    unsigned ord = 0;
    do {
      x = mul(x, gen);
      ++ord;
    } while (x != 1);
    if (ord == group) {
      x = 1;
      for (unsigned i = 0; i < group; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = mul(x, gen);
      }
      break;
    }
  }
}

std::string FieldTables::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    if (modulus_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (modulus_[i] != 1 || i == 0) os << modulus_[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

FieldTables build_field(FieldSpec spec) { return FieldTables(spec); }

}  // namespace hermcap
