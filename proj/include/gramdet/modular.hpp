#pragma once

#include <cstdint>
#include <vector>

namespace gramdet {

// Arithmetic modulo an odd prime p < 2^62 in Montgomery form (R = 2^64).
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t to_mont(std::uint64_t a) const { return mul(a % p_, r2_); }
  std::uint64_t from_mont(std::uint64_t a) const { return reduce(a); }
  std::uint64_t one() const { return one_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return reduce(static_cast<unsigned __int128>(a) * b);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // a must be nonzero.
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  // Plain residue of a signed integer.
  std::uint64_t residue(long long v) const;

 private:
  std::uint64_t reduce(unsigned __int128 t) const {
    std::uint64_t m = static_cast<std::uint64_t>(t) * ninv_;
    unsigned __int128 u = (t + static_cast<unsigned __int128>(m) * p_) >> 64;
    std::uint64_t r = static_cast<std::uint64_t>(u);
    return r >= p_ ? r - p_ : r;
  }

  std::uint64_t p_;
  std::uint64_t ninv_;  // -p^{-1} mod 2^64
  std::uint64_t r2_;    // R^2 mod p
  std::uint64_t one_;   // R mod p
};

// The largest primes below 2^62, in decreasing order.
const std::vector<std::uint64_t>& large_primes(std::size_t count);

inline constexpr std::uint64_t kDefaultPrime = 0x3fffffffffffffc7ULL;  // 2^62 - 57

// Determinant of a dim x dim matrix of Montgomery residues (row-major,
// consumed). Result in Montgomery form.
std::uint64_t det_mod_p(std::vector<std::uint64_t>& a, std::size_t dim, const PrimeField& f);

}  // namespace gramdet
