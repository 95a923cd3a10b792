#include "gramdet/modular.hpp"

#include <gmpxx.h>

#include <mutex>
#include <utility>

#include "gramdet/error.hpp"

namespace gramdet {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0 || p >= (std::uint64_t{1} << 62)) throw Error("modulus must be an odd prime below 2^62");
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;  // Newton iteration for p^{-1} mod 2^64
  ninv_ = ~inv + 1;
  unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
  one_ = static_cast<std::uint64_t>(r);
  r2_ = static_cast<std::uint64_t>((r * r) % p);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = one_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::residue(long long v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) + 1;
  m %= p_;
  return m == 0 ? 0 : p_ - m;
}

const std::vector<std::uint64_t>& large_primes(std::size_t count) {
  static std::mutex mu;
  static std::vector<std::uint64_t> primes;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t c = primes.empty() ? (std::uint64_t{1} << 62) - 1 : primes.back() - 2;
  while (primes.size() < count) {
    mpz_class z(static_cast<unsigned long>(c));
    if (mpz_probab_prime_p(z.get_mpz_t(), 40)) primes.push_back(c);
    c -= 2;
  }
  return primes;
}

std::uint64_t det_mod_p(std::vector<std::uint64_t>& a, std::size_t n, const PrimeField& f) {
  std::uint64_t det = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(a[piv * n + j], a[c * n + j]);
      det = f.neg(det);
    }
    std::uint64_t p = a[c * n + c];
    det = f.mul(det, p);
    std::uint64_t inv = f.inv(p);
    for (std::size_t r = c + 1; r < n; ++r) {
      std::uint64_t factor = a[r * n + c];
      if (factor == 0) continue;
      factor = f.mul(factor, inv);
      std::uint64_t* row = &a[r * n];
      const std::uint64_t* top = &a[c * n];
      for (std::size_t j = c + 1; j < n; ++j) row[j] = f.sub(row[j], f.mul(factor, top[j]));
    }
  }
  return det;
}

}  // namespace gramdet
