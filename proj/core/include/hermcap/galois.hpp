#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hermcap {

/// Element of GF(q^2). The value is the coefficient vector of the element's
/// polynomial representative read as a base-p integer (constant term is the
/// least significant digit), so 0 is zero and 1 is one.
using Elem = std::uint16_t;

struct FieldSpec {
  unsigned p = 0;  ///< characteristic
  unsigned k = 0;  ///< q = p^k

  unsigned q() const;
  /// Order of the ambient field GF(q^2) = p^(2k).
  unsigned order2() const;

  /// Splits a prime power q into (p, k). Throws ConfigError otherwise.
  static FieldSpec from_q(unsigned q);

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Largest supported order of GF(q^2); add/mul tables are order2^2 entries.
inline constexpr unsigned kMaxFieldOrder = 1024;

bool is_prime(unsigned n);

/// Lookup-table arithmetic for GF(q^2) together with the Frobenius
/// conjugation x -> x^q fixing the subfield GF(q).
///
/// The field is GF(p)[t]/(m(t)) where m is the lexicographically smallest
/// monic irreducible polynomial of degree 2k over GF(p); monic polynomials
/// are ordered by the base-p integer formed by their lower coefficients.
/// Immutable once built.
class FieldTables {
 public:
  explicit FieldTables(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  unsigned q() const { return q_; }
  unsigned order() const { return order_; }

  Elem add(Elem a, Elem b) const { return add_[index(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add_[index(a, neg_[b])]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[index(a, b)]; }
  /// Multiplicative inverse; inv(0) is defined as 0 and callers must not rely on it.
  Elem inv(Elem a) const { return inv_[a]; }
  Elem div(Elem a, Elem b) const { return mul(a, inv_[b]); }
  Elem conj(Elem a) const { return conj_[a]; }
  /// a * conj(a) = a^(q+1), always in GF(q).
  Elem norm(Elem a) const { return mul(a, conj_[a]); }
  bool in_subfield(Elem a) const { return conj_[a] == a; }

  /// Smallest-encoded generator of the multiplicative group.
  Elem primitive() const { return exp_[1]; }
  /// primitive()^i for i taken mod order-1.
  Elem exp(unsigned i) const { return exp_[i % (order_ - 1)]; }
  /// Discrete log base primitive(); undefined at 0.
  unsigned log(Elem a) const { return log_[a]; }

  /// Coefficients m_0..m_{2k} of the modulus (m_{2k} = 1).
  std::span<const unsigned> modulus() const { return modulus_; }
  std::string modulus_string() const;

 private:
  std::size_t index(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * order_ + b;
  }

  FieldSpec spec_;
  unsigned q_ = 0;
  unsigned order_ = 0;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> conj_;
  std::vector<Elem> exp_;
  std::vector<unsigned> log_;
};

/// Throws ConfigError for a non-prime p, k == 0, or an order beyond kMaxFieldOrder.
FieldTables build_field(FieldSpec spec);

/// Smallest monic irreducible polynomial of the given degree over GF(p),
/// returned as coefficients c_0..c_degree.
std::vector<unsigned> smallest_irreducible(unsigned p, unsigned degree);

}  // namespace hermcap
