#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fermatk/error.hpp"

namespace fermatk {

/*
 * Rings of integers of Q(i), Q(sqrt(-2)) and Q(sqrt(-7)), all of class
 * number one and norm-Euclidean. Elements are a + b*w with
 *
 *   w = sqrt(d)            for d = -1, -2       (w^2 = d)
 *   w = (1 + sqrt(d)) / 2  for d = -7           (w^2 = w - 2)
 *
 * In both cases w^2 = t*w - n with t = Tr(w), n = N(w), so
 *
 *   (a + b w)(c + e w) = (ac - n be) + (ae + bc + t be) w
 *   N(a + b w)         = a^2 + t ab + n b^2
 *   conj(a + b w)      = (a + t b) - b w
 */

enum class OmegaKind { sqrt_d, half_one_plus_sqrt_d };

inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

bool is_supported_field(int d) noexcept;

class AlgInt {
public:
    AlgInt(int d, mpz_class a, mpz_class b);

    int d() const noexcept { return d_; }
    const mpz_class& a() const noexcept { return a_; }
    const mpz_class& b() const noexcept { return b_; }

    int omega_trace() const noexcept;
    int omega_norm() const noexcept;

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_unit() const { return norm() == 1; }

    mpz_class norm() const;
    AlgInt conj() const;
    AlgInt pow(unsigned long e) const;

    AlgInt operator-() const;
    AlgInt& operator+=(const AlgInt& o);
    AlgInt& operator-=(const AlgInt& o);
    AlgInt& operator*=(const AlgInt& o);

    friend AlgInt operator+(AlgInt x, const AlgInt& y) { return x += y; }
    friend AlgInt operator-(AlgInt x, const AlgInt& y) { return x -= y; }
    friend AlgInt operator*(AlgInt x, const AlgInt& y) { return x *= y; }
    friend AlgInt operator*(const mpz_class& k, const AlgInt& x) { return AlgInt(x.d_, k * x.a_, k * x.b_); }

    friend bool operator==(const AlgInt& x, const AlgInt& y)
    {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    // (a, b) lexicographic; only meaningful inside one field
    friend bool operator<(const AlgInt& x, const AlgInt& y)
    {
        if (x.a_ != y.a_)
            return x.a_ < y.a_;
        return x.b_ < y.b_;
    }

    // Human form, e.g. "1+i", "-2+sqrt(-2)", "1-w" (w = (1+sqrt(-7))/2).
    std::string to_string() const;
    // Coordinate form "a,b" used by the data files.
    std::string coords() const;

private:
    void require_same_field(const AlgInt& o) const;

    int d_;
    mpz_class a_;
    mpz_class b_;
};

std::ostream& operator<<(std::ostream& os, const AlgInt& x);

class QuadraticField {
public:
    // Throws Error(unsupported_field) unless d is -1, -2 or -7.
    static QuadraticField make(int d);

    int d() const noexcept { return d_; }
    int discriminant() const noexcept { return disc_; }
    OmegaKind omega_kind() const noexcept { return kind_; }
    int omega_trace() const noexcept { return kind_ == OmegaKind::sqrt_d ? 0 : 1; }
    int omega_norm() const noexcept;
    const std::vector<AlgInt>& units() const noexcept { return units_; }
    std::string name() const;

    AlgInt element(mpz_class a, mpz_class b = 0) const { return AlgInt(d_, std::move(a), std::move(b)); }
    AlgInt zero() const { return element(0, 0); }
    AlgInt one() const { return element(1, 0); }
    AlgInt omega() const { return element(0, 1); }

    friend bool operator==(const QuadraticField& x, const QuadraticField& y) { return x.d_ == y.d_; }

private:
    QuadraticField(int d, int disc, OmegaKind kind, std::vector<AlgInt> units);

    int d_;
    int disc_;
    OmegaKind kind_;
    std::vector<AlgInt> units_;
};

// Canonical associate: the one with a > 0 and b >= 0 when there is one
// (always in Z[i]), otherwise the one with a > 0, or a = 0 and b > 0.
AlgInt canonical(const AlgInt& x);
bool associates(const AlgInt& x, const AlgInt& y);

// True iff y divides x in O_K.
bool divides(const AlgInt& y, const AlgInt& x);
// x / y, which must be exact.
AlgInt divexact(const AlgInt& x, const AlgInt& y);

struct DivisionStep {
    AlgInt quotient;
    AlgInt remainder;
};

// x = q y + r with q the lattice point nearest to x / y in the complex
// embedding, hence N(r) < N(y). Ties go to the smaller (a, b).
DivisionStep nearest_division(const AlgInt& x, const AlgInt& y);

// Canonical generator of the ideal (x, y). Throws Error(both_zero).
AlgInt gcd(const AlgInt& x, const AlgInt& y);

struct PrimeIdeal {
    AlgInt generator;
    std::int64_t residue_char;
    int residue_degree;
    int ram_index;
    std::int64_t norm;

    friend bool operator==(const PrimeIdeal& x, const PrimeIdeal& y) { return x.generator == y.generator; }
};

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& P);

// Primes of O_K above the rational prime p with their multiplicities in
// pO_K, ordered by canonical generator.
std::vector<std::pair<PrimeIdeal, int>> split_prime(const QuadraticField& K, std::int64_t p);

// The prime ideal generated by pi (which must generate a prime ideal).
PrimeIdeal prime_ideal_of(const QuadraticField& K, const AlgInt& pi);

// All prime ideals with norm <= bound, ordered by (norm, generator).
std::vector<PrimeIdeal> primes_up_to(const QuadraticField& K, std::int64_t norm_bound);

// Primes above 2.
std::vector<PrimeIdeal> primes_over_two(const QuadraticField& K);

// Largest k with P^k | x. Throws Error(zero_element) for x = 0.
int valuation(const AlgInt& x, const PrimeIdeal& P);

// Prime factorisation of a nonzero element, primes ordered as above.
std::vector<std::pair<PrimeIdeal, int>> factor(const QuadraticField& K, const AlgInt& x);

} // namespace fermatk
