#pragma once

#include <optional>
#include <vector>

#include "fermatk/abelian_group.hpp"
#include "fermatk/quadint.hpp"

namespace fermatk {

struct SquareClassData {
    PrimeIdeal prime;
    int level;
    std::uint64_t unit_count;
    // canonical lifts of the squares of units mod P^level
    std::vector<AlgInt> squares;
    // structure of (O_K/P^level)* / squares
    AbelianGroupStructure quotient;
};

SquareClassData square_classes(const PrimeIdeal& P, int k, std::uint64_t cap = kDefaultEnumerationCap);

/*
 * Conductor exponent at P | 2 of the character of K_P(sqrt(lambda))/K_P.
 * u is a local norm iff z^2 = lambda x^2 + u y^2 has a primitive solution
 * modulo P^(2e+1), e = e(P/2): the partial derivative in z has valuation
 * e, so such a solution lifts. The exponent is the least n such that every
 * unit congruent to 1 mod P^n is a norm. working_level overrides 2e+1
 * (used to check that the answer is stable).
 * Throws Error(non_unit) if P divides lambda.
 */
int quad_char_conductor_exponent(const AlgInt& lambda, const PrimeIdeal& P,
                                 std::optional<int> working_level = std::nullopt);

// True iff lambda is a square modulo P^(2e+1).
bool is_local_square(const AlgInt& lambda, const PrimeIdeal& P);

// prod over P | 2 of P^(2 e_P + 1): the modulus at which unit square
// classes of the completions at 2 are detected.
AlgInt two_adic_square_modulus(const QuadraticField& K);

struct CokernelReport {
    AlgInt modulus;
    AbelianGroupStructure codomain; // (O_K/b)* / squares
    std::uint64_t image_order;      // image of the global units
    std::vector<AlgInt> representatives;
};

/*
 * Cokernel of the global units in (O_K/b)* / squares. Representatives are
 * the first elements of each coset in the order (norm, -a, -b), which puts
 * 1 on the trivial coset.
 */
CokernelReport unit_square_cokernel(const QuadraticField& K, const AlgInt& b,
                                    std::uint64_t cap = kDefaultEnumerationCap);

// True iff every element is a unit mod b and no two lie in the same
// coset of (units * squares) in (O_K/b)*.
bool distinct_cokernel_cosets(const QuadraticField& K, const AlgInt& b, const std::vector<AlgInt>& elements,
                              std::uint64_t cap = kDefaultEnumerationCap);

// Published cokernel representatives for Q(i) modulo (1+i)^5:
// 1, 2+i, -3, -2+i. Empty for the other fields.
std::vector<AlgInt> reference_cokernel_representatives(const QuadraticField& K);

} // namespace fermatk
