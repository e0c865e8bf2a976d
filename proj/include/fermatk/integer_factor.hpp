#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fermatk {

bool is_prime(std::int64_t n);
bool is_prime(const mpz_class& n);

// Prime factorisation of |n| (n != 0) by trial division followed by
// Pollard-Brent on any composite cofactor. Primes ascending.
std::vector<std::pair<mpz_class, int>> factor_integer(const mpz_class& n);

// Distinct prime divisors of |n|, ascending.
std::vector<mpz_class> prime_divisors(const mpz_class& n);

// Smallest prime strictly greater than n.
std::int64_t next_prime(std::int64_t n);

// (q = p^k) -> (p, k), or (0, 0) if q is not a prime power.
std::pair<std::int64_t, int> prime_power_decomposition(std::int64_t q);

} // namespace fermatk
