#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermatk/ellcurve.hpp"
#include "fermatk/ideal.hpp"
#include "fermatk/localfields.hpp"

namespace fermatk {

/*
 * A triple (a, b, c) with exponent p. Exact triples satisfy
 * a^p + b^p + c^p = 0; synthetic ones need not, and wherever a formula
 * involves c^p it is replaced by -(a^p + b^p).
 */
struct FermatTriple {
    AlgInt a, b, c;
    int p;
    bool exact;

    // Throws Error(trivial_triple) if abc = 0, Error(invalid_argument) if p
    // is not an odd prime, or if an exact triple fails the identity.
    static FermatTriple make(AlgInt a, AlgInt b, AlgInt c, int p, bool exact);

    bool is_coprime() const;
    std::string to_string() const;
};

// Divide through by gcd(a, b, c).
FermatTriple normalize_solution(const FermatTriple& t);

// Y^2 = X (X - a^p) (X + b^p). Throws Error(singular_curve) when two roots
// coincide (which for synthetic triples includes a^p + b^p = 0).
EllipticCurve frey_curve(const FermatTriple& t);

struct FreyClosedForms {
    AlgInt c4;           // 16 (b^2p - a^p C)
    AlgInt discriminant; // 16 (a^p b^p C)^2
};

// Closed forms with C = -(a^p + b^p) (equal to c^p for exact triples).
FreyClosedForms frey_closed_forms(const FermatTriple& t);

struct SemistabilityEntry {
    PrimeIdeal prime;
    ReductionKind kind;
    int v_delta;
    int v_c4;
    bool divisibility_checked; // p | v(Delta) is only claimed where it follows
    bool divisible;
};

struct SemistabilityReport {
    std::vector<SemistabilityEntry> entries;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

// Reduction at every odd prime dividing the discriminant.
SemistabilityReport semistability_report(const FermatTriple& t, const EllipticCurve& E);

struct ConductorAuditEntry {
    AlgInt lambda;
    PrimeIdeal prime;
    int exponent;
};

struct LocalAudit {
    CokernelReport cokernel;
    std::vector<ConductorAuditEntry> conductor_exponents;
    int max_exponent;
    // validation of the published Q(i) representatives, when there are any
    std::optional<bool> reference_representatives_valid;
    std::vector<AlgInt> reference_representatives;
};

struct LevelPrediction {
    int d;
    std::vector<PrimeIdeal> primes_over_two;
    std::vector<Ideal> levels;
    LocalAudit audit;
};

// Conductor valuations at the primes over 2 keyed on the field:
// Q(i), Q(sqrt(-2)): (pi)^8; Q(sqrt(-7)): a1^4 a2 and a1 a2^4.
LevelPrediction predicted_levels(const QuadraticField& K);

// v -> exponent of the character conductor at a prime with v_P(level) = v.
// Throws Error(odd_wild_part) when v - 2 is odd and positive.
int character_conductor_exponent(int v);

Ideal character_conductor(const QuadraticField& K, const Ideal& level);

// Distinct character conductors over all predicted levels.
std::vector<Ideal> character_conductor_candidates(const QuadraticField& K, const std::vector<Ideal>& levels);

} // namespace fermatk
