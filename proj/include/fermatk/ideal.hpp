#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fermatk/quadint.hpp"

namespace fermatk {

// A nonzero ideal of O_K, held as its canonical generator together with
// its norm and factorisation.
struct Ideal {
    AlgInt generator;
    mpz_class norm;
    std::vector<std::pair<PrimeIdeal, int>> factors;

    static Ideal of(const QuadraticField& K, const AlgInt& generator);
    static Ideal from_factors(const QuadraticField& K, std::vector<std::pair<PrimeIdeal, int>> factors);

    int exponent_at(const PrimeIdeal& P) const;
    bool divides(const Ideal& other) const;
    // "(1+i)^8", "(w)^4*(1-w)", "(1)"
    std::string to_string() const;

    friend bool operator==(const Ideal& x, const Ideal& y) { return x.generator == y.generator; }
};

// All divisors of I, ordered by (norm, generator).
std::vector<Ideal> ideal_divisors(const QuadraticField& K, const Ideal& I);

} // namespace fermatk
