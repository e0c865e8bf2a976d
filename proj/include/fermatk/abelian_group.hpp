#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fermatk {

// Finite abelian group Z/d1 x ... x Z/dk with 1 < d1 | d2 | ... | dk.
// The trivial group has no divisors.
struct AbelianGroupStructure {
    std::vector<std::uint64_t> elementary_divisors;

    std::uint64_t order() const;
    std::uint64_t exponent() const;
    bool is_trivial() const { return elementary_divisors.empty(); }
    int rank() const { return static_cast<int>(elementary_divisors.size()); }
    std::string to_string() const;

    friend bool operator==(const AbelianGroupStructure&, const AbelianGroupStructure&) = default;
};

AbelianGroupStructure cyclic_product(std::vector<std::uint64_t> orders);

// Structure of a finite abelian group from the orders of all its elements.
// For every prime l, the counts #{x : x^(l^j) = 1} fix the l-primary part.
AbelianGroupStructure structure_from_element_orders(std::span<const std::uint64_t> orders);

} // namespace fermatk
