#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fermatk/abelian_group.hpp"
#include "fermatk/quadint.hpp"

namespace fermatk {

/*
 * O_K / (m) realised by explicit enumeration. The ideal (m) is a lattice
 * in Z^2 = {(a, b) : a + b w} with Hermite basis (alpha, 0), (beta, gamma),
 * alpha * gamma = N(m), so every class has a unique representative
 * a + b w with 0 <= a < alpha, 0 <= b < gamma. Elements are handled as
 * indices a + alpha * b.
 */
class ResidueRing {
public:
    using Elem = std::uint32_t;

    // Throws Error(cap_exceeded) if N(m) > cap, Error(zero_element) if m = 0.
    ResidueRing(const QuadraticField& K, const AlgInt& modulus, std::uint64_t cap = kDefaultEnumerationCap);

    const QuadraticField& field() const noexcept { return field_; }
    const AlgInt& modulus() const noexcept { return modulus_; }
    std::uint64_t size() const noexcept { return size_; }
    // Primes dividing the modulus.
    const std::vector<PrimeIdeal>& prime_divisors() const noexcept { return primes_; }

    Elem reduce(const AlgInt& x) const;
    Elem reduce(std::int64_t a, std::int64_t b) const;
    AlgInt lift(Elem x) const;

    Elem zero() const noexcept { return 0; }
    Elem one() const { return reduce(1, 0); }
    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const;
    Elem pow(Elem x, std::uint64_t e) const;

    bool is_unit(Elem x) const;
    // Units in increasing index order.
    std::vector<Elem> units() const;

private:
    std::int64_t coord_a(Elem x) const { return static_cast<std::int64_t>(x % alpha_); }
    std::int64_t coord_b(Elem x) const { return static_cast<std::int64_t>(x / alpha_); }

    QuadraticField field_;
    AlgInt modulus_;
    std::int64_t alpha_ = 1, beta_ = 0, gamma_ = 1;
    std::int64_t t_ = 0, n_ = 0;
    std::uint64_t size_ = 1;
    std::vector<PrimeIdeal> primes_;
};

// O_K / P^k.
ResidueRing residue_ring(const PrimeIdeal& P, int k, std::uint64_t cap = kDefaultEnumerationCap);

// Subgroup of the unit group generated by the given units (closure under
// multiplication). Returned as a membership mask over ring indices.
std::vector<bool> generated_subgroup(const ResidueRing& R, std::span<const ResidueRing::Elem> generators);

/*
 * Quotient of the unit group (O_K/m)* by a subgroup H (membership mask).
 * Cosets are numbered in order of their smallest member.
 */
class UnitQuotient {
public:
    UnitQuotient(const ResidueRing& R, std::vector<bool> subgroup);

    std::uint64_t unit_count() const noexcept { return unit_count_; }
    std::uint64_t subgroup_order() const noexcept { return subgroup_order_; }
    std::uint64_t order() const noexcept { return coset_reps_.size(); }
    // Coset index of a unit, -1 for non-units.
    std::int64_t coset_of(ResidueRing::Elem x) const { return coset_[x]; }
    const std::vector<ResidueRing::Elem>& coset_representatives() const noexcept { return coset_reps_; }
    AbelianGroupStructure structure() const;

private:
    const ResidueRing* ring_;
    std::vector<bool> subgroup_;
    std::vector<std::int64_t> coset_;
    std::vector<ResidueRing::Elem> coset_reps_;
    std::uint64_t unit_count_ = 0;
    std::uint64_t subgroup_order_ = 0;
};

AbelianGroupStructure unit_group_structure(const ResidueRing& R);

// (O_K/m)* modulo the image of the global units: the ray class group of
// modulus m, since h_K = 1 and K has no real places.
AbelianGroupStructure ray_class_group(const QuadraticField& K, const AlgInt& modulus,
                                      std::uint64_t cap = kDefaultEnumerationCap);

} // namespace fermatk
