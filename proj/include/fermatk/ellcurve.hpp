#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>

#include "fermatk/quadint.hpp"

namespace fermatk {

inline constexpr std::int64_t kDefaultCountCap = 10000;

// j as an exact fraction num / den of algebraic integers.
struct JInvariant {
    AlgInt num;
    AlgInt den;

    bool is_rational() const;
    // Throws Error(non_rational_j).
    mpq_class rational_value() const;
    std::string to_string() const;
};

/*
 * y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over O_K.
 */
class EllipticCurve {
public:
    // Throws Error(singular_curve) when the discriminant vanishes.
    EllipticCurve(const QuadraticField& K, std::array<AlgInt, 5> a);

    // Rational integer coefficients (a1, a2, a3, a4, a6).
    static EllipticCurve from_integers(const QuadraticField& K, std::array<long, 5> a);

    const QuadraticField& field() const noexcept { return field_; }
    const std::array<AlgInt, 5>& coefficients() const noexcept { return a_; }
    const AlgInt& a1() const { return a_[0]; }
    const AlgInt& a2() const { return a_[1]; }
    const AlgInt& a3() const { return a_[2]; }
    const AlgInt& a4() const { return a_[3]; }
    const AlgInt& a6() const { return a_[4]; }

    const AlgInt& b2() const { return b2_; }
    const AlgInt& b4() const { return b4_; }
    const AlgInt& b6() const { return b6_; }
    const AlgInt& b8() const { return b8_; }
    const AlgInt& c4() const { return c4_; }
    const AlgInt& c6() const { return c6_; }
    const AlgInt& discriminant() const { return disc_; }
    JInvariant j() const { return JInvariant{c4_.pow(3), disc_}; }

    std::string to_string() const;

private:
    QuadraticField field_;
    std::array<AlgInt, 5> a_;
    AlgInt b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

struct Invariants {
    AlgInt c4, c6, discriminant;
    JInvariant j;
};

Invariants invariants(const EllipticCurve& E);

enum class ReductionKind { good, multiplicative, additive, additive_or_unknown };

std::string_view reduction_kind_name(ReductionKind k) noexcept;

struct ReductionInfo {
    PrimeIdeal prime;
    ReductionKind kind;
    int v_delta_min;
    std::optional<int> v_c4_min; // empty when c4 = 0
    std::optional<std::int64_t> trace;
};

// Reduction type at P after u-scaling to a P-minimal model. The trace is
// filled in for good reduction when N(P) <= count_cap and a model with
// good reduction is at hand (always, except for scaled models in
// characteristic 3). Throws Error(unsupported_prime) for P over 2.
ReductionInfo reduction_type(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t count_cap = kDefaultCountCap);

// #E(O_K/P) including the point at infinity, by enumeration of the given
// model. Throws Error(bad_reduction) if P divides the model discriminant,
// Error(cap_exceeded) if N(P) > cap.
std::int64_t count_points(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t cap = kDefaultCountCap);

std::int64_t trace_of_frobenius(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t cap = kDefaultCountCap);

// {q + 1 - #C(F_q)} over y^2 = x(x - A)(x + B) with 0, A, -B distinct.
// Throws Error(even_q), Error(cap_exceeded), Error(invalid_argument).
std::set<std::int64_t> possible_traces_full_2torsion(std::int64_t q, std::int64_t cap = kDefaultCountCap);

// Twist by K(sqrt(lambda))/K. Throws Error(zero_twist).
EllipticCurve quadratic_twist(const EllipticCurve& E, const AlgInt& lambda);

// The 13 rational j-invariants with complex multiplication, ascending.
const std::array<mpz_class, 13>& cm_j_invariants();

bool has_cm_j(const mpz_class& j);
// Throws Error(non_rational_j) for j outside Q. Non-integral rational j
// never has CM.
bool has_cm_j(const JInvariant& j);

enum class CmStatus { cm, no_cm, unknown };

std::string_view cm_status_name(CmStatus s) noexcept;

CmStatus cm_status(const EllipticCurve& E);

} // namespace fermatk
