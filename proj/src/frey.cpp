#include "fermatk/frey.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fermatk/integer_factor.hpp"

namespace fermatk {

FermatTriple FermatTriple::make(AlgInt a, AlgInt b, AlgInt c, int p, bool exact)
{
    if (a.d() != b.d() || a.d() != c.d())
        throw Error(Errc::field_mismatch, "triple entries from different fields");
    if (a.is_zero() || b.is_zero() || c.is_zero())
        throw Error(Errc::trivial_triple, "abc = 0");
    if (p < 3 || !is_prime(std::int64_t{p}))
        throw Error(Errc::invalid_argument, "exponent " + std::to_string(p) + " is not an odd prime");
    FermatTriple t{std::move(a), std::move(b), std::move(c), p, exact};
    if (exact && !(t.a.pow(p) + t.b.pow(p) + t.c.pow(p)).is_zero())
        throw Error(Errc::invalid_argument, "a^p + b^p + c^p != 0 for " + t.to_string());
    return t;
}

bool FermatTriple::is_coprime() const
{
    return gcd(a, gcd(b, c)).is_unit();
}

std::string FermatTriple::to_string() const
{
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << "; p = " << p << (exact ? ")" : ", synthetic)");
    return os.str();
}

FermatTriple normalize_solution(const FermatTriple& t)
{
    AlgInt g = gcd(t.a, gcd(t.b, t.c));
    return FermatTriple::make(divexact(t.a, g), divexact(t.b, g), divexact(t.c, g), t.p, t.exact);
}

EllipticCurve frey_curve(const FermatTriple& t)
{
    const QuadraticField K = QuadraticField::make(t.a.d());
    AlgInt A = t.a.pow(t.p), B = t.b.pow(t.p);
    return EllipticCurve(K, {K.zero(), B - A, K.zero(), -(A * B), K.zero()});
}

FreyClosedForms frey_closed_forms(const FermatTriple& t)
{
    AlgInt A = t.a.pow(t.p), B = t.b.pow(t.p);
    AlgInt C = -(A + B);
    AlgInt abc = A * B * C;
    return FreyClosedForms{mpz_class(16) * (B * B - A * C), mpz_class(16) * abc * abc};
}

SemistabilityReport semistability_report(const FermatTriple& t, const EllipticCurve& E)
{
    SemistabilityReport out;
    if (!t.is_coprime()) {
        out.violations.push_back("precondition: " + t.to_string() + " is not coprime");
        return out;
    }
    const QuadraticField& K = E.field();
    const AlgInt A = t.a.pow(t.p), B = t.b.pow(t.p);

    // Odd part of the discriminant comes from A, B and A + B.
    std::set<mpz_class> rational_primes;
    for (const AlgInt* x : {&t.a, &t.b}) {
        for (const mpz_class& q : prime_divisors(x->norm()))
            if (q != 2)
                rational_primes.insert(q);
    }
    for (const mpz_class& q : prime_divisors((A + B).norm()))
        if (q != 2)
            rational_primes.insert(q);

    for (const mpz_class& q : rational_primes) {
        for (auto& [P, e] : split_prime(K, q.get_si())) {
            int vd = valuation(E.discriminant(), P);
            if (vd == 0)
                continue;
            ReductionInfo info = reduction_type(E, P, 0);
            SemistabilityEntry entry{P, info.kind, vd, info.v_c4_min.value_or(-1), false, false};
            bool at_ab = valuation(t.a, P) > 0 || valuation(t.b, P) > 0;
            if (t.exact || at_ab) {
                entry.divisibility_checked = true;
                entry.divisible = vd % t.p == 0;
            }
            if (info.kind != ReductionKind::multiplicative)
                out.violations.push_back("reduction at " + P.generator.to_string() + " is "
                                         + std::string(reduction_kind_name(info.kind)));
            if (entry.divisibility_checked && !entry.divisible)
                out.violations.push_back("p = " + std::to_string(t.p) + " does not divide v(Delta) = "
                                         + std::to_string(vd) + " at " + P.generator.to_string());
            out.entries.push_back(entry);
        }
    }
    return out;
}

LevelPrediction predicted_levels(const QuadraticField& K)
{
    std::vector<PrimeIdeal> S = primes_over_two(K);
    std::vector<Ideal> levels;
    if (S.size() == 1) {
        levels.push_back(Ideal::from_factors(K, {{S[0], 8}}));
    } else {
        levels.push_back(Ideal::from_factors(K, {{S[0], 4}, {S[1], 1}}));
        levels.push_back(Ideal::from_factors(K, {{S[0], 1}, {S[1], 4}}));
    }

    const AlgInt b = two_adic_square_modulus(K);
    LocalAudit audit{unit_square_cokernel(K, b), {}, 0, std::nullopt, reference_cokernel_representatives(K)};
    for (const AlgInt& lambda : audit.cokernel.representatives) {
        for (const PrimeIdeal& P : S) {
            int n = quad_char_conductor_exponent(lambda, P);
            audit.conductor_exponents.push_back({lambda, P, n});
            audit.max_exponent = std::max(audit.max_exponent, n);
        }
    }
    if (!audit.reference_representatives.empty()) {
        const auto& ref = audit.reference_representatives;
        bool valid = ref.size() == audit.cokernel.representatives.size() && distinct_cokernel_cosets(K, b, ref);
        int ref_max = 0;
        for (const AlgInt& lambda : ref)
            for (const PrimeIdeal& P : S)
                ref_max = std::max(ref_max, quad_char_conductor_exponent(lambda, P));
        audit.reference_representatives_valid = valid && ref_max == audit.max_exponent;
    }
    return LevelPrediction{K.d(), std::move(S), std::move(levels), std::move(audit)};
}

int character_conductor_exponent(int v)
{
    if (v < 0)
        throw Error(Errc::invalid_argument, "negative valuation");
    if (v <= 2)
        return 0;
    if ((v - 2) % 2 != 0)
        throw Error(Errc::odd_wild_part, "v = " + std::to_string(v) + " leaves an odd wild part");
    return (v - 2) / 2 + 1;
}

Ideal character_conductor(const QuadraticField& K, const Ideal& level)
{
    std::vector<std::pair<PrimeIdeal, int>> f;
    for (auto& [P, v] : level.factors) {
        int n = character_conductor_exponent(v);
        if (n > 0)
            f.emplace_back(P, n);
    }
    return Ideal::from_factors(K, f);
}

std::vector<Ideal> character_conductor_candidates(const QuadraticField& K, const std::vector<Ideal>& levels)
{
    std::vector<Ideal> out;
    for (const Ideal& N : levels) {
        Ideal c = character_conductor(K, N);
        if (std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    }
    return out;
}

} // namespace fermatk
