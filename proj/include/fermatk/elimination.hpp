#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fermatk/forms.hpp"
#include "fermatk/frey.hpp"

namespace fermatk {

struct IrreducibilityCase {
    std::string id;
    std::string detail;
    std::int64_t bound; // largest prime the case does not exclude
    std::string citation;
};

struct IrreducibilityResult {
    std::int64_t threshold; // least prime above every case bound
    std::vector<IrreducibilityCase> cases;
};

// Throws Error(unsupported_exponent) for a ray class group exponent other
// than 1, 2 or 4.
IrreducibilityResult irreducibility_threshold(const QuadraticField& K);

enum class CmOutcome { eliminated, not_applicable };

struct CmDecision {
    CmOutcome outcome;
    std::string reason;
};

// Eliminated when the record carries the CM flag or its matched curve has
// a CM j-invariant; otherwise not_applicable with the reason.
CmDecision eliminate_by_cm(const NewformRecord& f);

struct PrimeElimination {
    PrimeIdeal prime;
    std::int64_t a_p;
    std::set<std::int64_t> full_2torsion_traces;
    mpz_class bound; // B
    bool no_information;
    std::vector<std::int64_t> survivors;
};

/*
 * B = q ((q + 1)^2 - a_P^2) prod_{a in T(q)} (a_P - a), T(q) the traces of
 * curves with full 2-torsion over F_q. The Frey curve has either good
 * reduction at P (trace in T(q), congruent to a_P mod p), multiplicative
 * reduction (a_P = +-(q + 1) mod p), or P | p. Survivors are the primes
 * dividing B; B = 0 gives no information.
 * Throws Error(missing_eigenvalue), Error(invalid_argument) if P lies over
 * 2 or divides the level.
 */
PrimeElimination eliminate_at_prime(const NewformRecord& f, const PrimeIdeal& P,
                                    std::int64_t count_cap = kDefaultCountCap);

struct PipelineConfig {
    std::int64_t aux_bound = 50;
    std::int64_t count_cap = kDefaultCountCap;
};

enum class FormOutcomeKind { eliminated_by_cm, survivors, no_information };

std::string_view form_outcome_name(FormOutcomeKind k) noexcept;

struct FormOutcome {
    std::string label;
    Ideal level;
    FormOutcomeKind kind;
    std::string cm_reason;
    std::vector<PrimeElimination> steps;
    std::vector<std::string> skipped; // auxiliary primes without data
    std::vector<std::int64_t> survivors;
    bool eliminated; // CM, or every survivor below the irreducibility threshold
};

struct LevelCheck {
    Ideal level;
    int cuspidal;
    int newforms;
};

struct SmallPrimeCitation {
    std::int64_t p;
    std::string source;
};

struct EliminationReport {
    int d;
    std::string field_name;
    std::vector<std::string> provenance;
    std::vector<Ideal> predicted_levels;
    std::vector<Ideal> character_conductors;
    int local_max_conductor_exponent;
    std::vector<LevelCheck> levels_checked;
    std::int64_t aux_bound;
    IrreducibilityResult irreducibility;
    std::vector<FormOutcome> forms;
    std::vector<std::int64_t> surviving_obstructions;
    std::int64_t final_threshold;
    bool all_eliminated;
    bool conditional;
    std::string conditionality;
    std::vector<SmallPrimeCitation> small_primes;
    std::string statement;
};

// Throws Error(field_mismatch), Error(incomplete_dataset).
EliminationReport run_pipeline(const QuadraticField& K, const NewformDataset& dataset,
                               const PipelineConfig& config = {});

// 19, 19, 17 for d = -1, -2, -7.
std::int64_t expected_final_threshold(int d);

} // namespace fermatk
