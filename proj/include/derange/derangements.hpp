#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace derange {

/// Which ambient group a derangement proportion refers to.
enum class Variant { Symmetric, Alternating };

inline std::string_view to_string(Variant v) {
  return v == Variant::Symmetric ? "sym" : "alt";
}

inline Variant parse_variant(std::string_view s) {
  if (s == "sym" || s == "symmetric") return Variant::Symmetric;
  if (s == "alt" || s == "alternating") return Variant::Alternating;
  throw std::invalid_argument("unknown variant '" + std::string(s) + "' (expected sym|alt)");
}

inline int sign_power(std::int64_t exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// D_n: the number of fixed-point-free permutations of n points.
/// Uses D_n = n*D_{n-1} + (-1)^n, which never builds factorial-sized terms.
inline BigInt derangement_count(unsigned n) {
  BigInt d = 1;
  for (unsigned i = 1; i <= n; ++i) {
    d *= i;
    d += sign_power(i);
  }
  return d;
}

/// E_n = D_n + (-1)^(n-1) (n-1); E_n/2 counts the derangements in A_n (n >= 2).
inline BigInt alt_derangement_count(unsigned n) {
  if (n == 0) throw std::invalid_argument("alt_derangement_count: n must be >= 1");
  return derangement_count(n) + sign_power(n - 1) * BigInt(n - 1);
}

/// Precomputed D_n and E_n for n = 0..max_n.
class DerangementTable {
 public:
  explicit DerangementTable(unsigned max_n) : max_n_(max_n) {
    d_.reserve(max_n + 1);
    e_.reserve(max_n + 1);
    d_.emplace_back(1);
    e_.emplace_back(0);  // E_0 is undefined; slot kept so indices line up
    for (unsigned n = 1; n <= max_n; ++n) {
      d_.push_back(d_.back() * n + sign_power(n));
      e_.push_back(d_.back() + sign_power(n - 1) * BigInt(n - 1));
    }
  }

  unsigned max_n() const { return max_n_; }
  const BigInt& d(unsigned n) const { return d_.at(n); }
  const BigInt& e(unsigned n) const {
    if (n == 0) throw std::invalid_argument("DerangementTable: E_0 is undefined");
    return e_.at(n);
  }

 private:
  unsigned max_n_;
  std::vector<BigInt> d_;
  std::vector<BigInt> e_;
};

/// D_n/n! (Symmetric) or E_n/n! (Alternating), reduced.
inline ExactRational derangement_proportion(unsigned n, Variant variant) {
  const BigInt count = variant == Variant::Symmetric ? derangement_count(n) : alt_derangement_count(n);
  return ExactRational(count, factorial(n));
}

/// d_n or e_n: the reduced denominator of the proportion above.
inline BigInt reduced_denominator(unsigned n, Variant variant) {
  if (n == 0) throw std::invalid_argument("reduced_denominator: n must be >= 1");
  return derangement_proportion(n, variant).denominator();
}

/// A residue reported two ways: canonical in [0, modulus), and the signed
/// closed form (e.g. -1, +2, -48).
struct Residue {
  BigInt modulus;
  BigInt canonical;
  BigInt signed_form;
};

inline BigInt reduce_mod(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// D_n mod (n - m), evaluated as (-1)^(n-m) D_m mod (n - m); D_n is never formed.
inline Residue derangement_mod(unsigned n, unsigned m) {
  if (m >= n) throw std::invalid_argument("derangement_mod: need m < n");
  const unsigned modulus = n - m;
  // D_m mod modulus through the recurrence, in machine words.
  std::uint64_t dm = 1 % modulus;
  for (unsigned i = 1; i <= m; ++i) {
    dm = (dm * (i % modulus)) % modulus;
    dm = sign_power(i) > 0 ? (dm + 1) % modulus : (dm + modulus - 1) % modulus;
  }
  const int sign = sign_power(n - m);
  Residue r;
  r.modulus = modulus;
  r.canonical = sign > 0 ? dm : (modulus - dm) % modulus;
  r.signed_form = sign * derangement_count(m);
  return r;
}

/// D_n mod n = (-1)^n.
inline int derangement_mod_n(unsigned n) { return sign_power(n); }
/// D_n mod (n-2) = (-1)^n.
inline int derangement_mod_n_minus_2(unsigned n) { return sign_power(n); }
/// D_n mod (n-3) = 2 (-1)^(n-3).
inline int derangement_mod_n_minus_3(unsigned n) { return 2 * sign_power(n + 1); }

/// E_n mod (n - shift) for shift in {0, 3, 4, 5}:
/// 2(-1)^n, 4(-1)^(n-1), 6(-1)^n and 48(-1)^(n-1) respectively.
inline Residue alt_derangement_mod(unsigned n, unsigned shift) {
  long base = 0;
  int sign = 0;
  switch (shift) {
    case 0: base = 2; sign = sign_power(n); break;
    case 3: base = 4; sign = sign_power(n - 1); break;
    case 4: base = 6; sign = sign_power(n); break;
    case 5: base = 48; sign = sign_power(n - 1); break;
    default:
      throw std::invalid_argument("alt_derangement_mod: shift must be one of 0, 3, 4, 5");
  }
  if (n <= shift) throw std::invalid_argument("alt_derangement_mod: need n > shift");
  Residue r;
  r.modulus = n - shift;
  r.signed_form = sign * base;
  r.canonical = reduce_mod(r.signed_form, r.modulus);
  return r;
}

}  // namespace derange
