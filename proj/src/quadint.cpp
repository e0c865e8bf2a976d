#include "fermatk/quadint.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "fermatk/integer_factor.hpp"

namespace fermatk {

std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::unsupported_field: return "UnsupportedField";
    case Errc::both_zero: return "BothZero";
    case Errc::zero_element: return "ZeroElement";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::singular_curve: return "SingularCurve";
    case Errc::unsupported_prime: return "UnsupportedPrime";
    case Errc::bad_reduction: return "BadReduction";
    case Errc::even_q: return "EvenQ";
    case Errc::zero_twist: return "ZeroTwist";
    case Errc::non_rational_j: return "NonRationalJ";
    case Errc::non_unit: return "NonUnit";
    case Errc::trivial_triple: return "TrivialTriple";
    case Errc::odd_wild_part: return "OddWildPart";
    case Errc::malformed_record: return "MalformedRecord";
    case Errc::eigenvalue_bound_violation: return "EigenvalueBoundViolation";
    case Errc::duplicate_label: return "DuplicateLabel";
    case Errc::non_integral_level: return "NonIntegralLevel";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::unsupported_exponent: return "UnsupportedExponent";
    case Errc::not_applicable: return "NotApplicable";
    case Errc::missing_eigenvalue: return "MissingEigenvalue";
    case Errc::incomplete_dataset: return "IncompleteDataset";
    case Errc::field_mismatch: return "FieldMismatch";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_supported_field(int d) noexcept
{
    return d == -1 || d == -2 || d == -7;
}

namespace {

int trace_of_omega(int d) { return d == -7 ? 1 : 0; }
int norm_of_omega(int d) { return d == -7 ? 2 : -d; }

std::vector<AlgInt> unit_list(int d)
{
    std::vector<AlgInt> u{AlgInt(d, 1, 0), AlgInt(d, -1, 0)};
    if (d == -1) {
        u.emplace_back(d, 0, 1);
        u.emplace_back(d, 0, -1);
    }
    return u;
}

mpz_class sqrt_mod_prime(const mpz_class& a, const mpz_class& p)
{
    // Tonelli-Shanks; a must be a nonzero square mod the odd prime p.
    mpz_class q = p - 1, z = 2, c, t, r, b;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    mpz_class half = (q + 1) / 2;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), half.get_mpz_t(), p.get_mpz_t());
    mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    unsigned long mm = s;
    while (t != 1) {
        unsigned long i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        b = c;
        for (unsigned long j = 0; j + i + 1 < mm; ++j)
            b = b * b % p;
        mm = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

std::vector<std::int64_t> omega_roots_mod(const QuadraticField& K, std::int64_t p)
{
    const std::int64_t t = K.omega_trace(), n = K.omega_norm();
    std::vector<std::int64_t> roots;
    if (p == 2) {
        for (std::int64_t r = 0; r < 2; ++r)
            if ((r * r - t * r + n) % 2 == 0)
                roots.push_back(r);
        return roots;
    }
    const mpz_class P = static_cast<long>(p);
    mpz_class disc = K.discriminant(); // t^2 - 4n
    mpz_class inv2 = (P + 1) / 2;
    mpz_class dm;
    mpz_mod(dm.get_mpz_t(), disc.get_mpz_t(), P.get_mpz_t());
    if (dm == 0) {
        mpz_class r = t * inv2 % P;
        roots.push_back(r.get_si());
        return roots;
    }
    if (mpz_legendre(dm.get_mpz_t(), P.get_mpz_t()) != 1)
        return roots;
    mpz_class s = sqrt_mod_prime(dm, P);
    for (const mpz_class& v : {mpz_class(t + s), mpz_class(t - s)}) {
        mpz_class r;
        mpz_class w = v * inv2;
        mpz_mod(r.get_mpz_t(), w.get_mpz_t(), P.get_mpz_t());
        roots.push_back(r.get_si());
    }
    return roots;
}

} // namespace

// ---------------------------------------------------------------------------
// AlgInt

AlgInt::AlgInt(int d, mpz_class a, mpz_class b)
    : d_(d), a_(std::move(a)), b_(std::move(b))
{
    if (!is_supported_field(d))
        throw Error(Errc::unsupported_field, "d = " + std::to_string(d));
}

int AlgInt::omega_trace() const noexcept { return trace_of_omega(d_); }
int AlgInt::omega_norm() const noexcept { return norm_of_omega(d_); }

void AlgInt::require_same_field(const AlgInt& o) const
{
    if (d_ != o.d_)
        throw Error(Errc::field_mismatch, "elements of Q(sqrt(" + std::to_string(d_) + ")) and Q(sqrt("
                                              + std::to_string(o.d_) + "))");
}

mpz_class AlgInt::norm() const
{
    return a_ * a_ + omega_trace() * a_ * b_ + omega_norm() * b_ * b_;
}

AlgInt AlgInt::conj() const
{
    return AlgInt(d_, a_ + omega_trace() * b_, -b_);
}

AlgInt AlgInt::pow(unsigned long e) const
{
    AlgInt result(d_, 1, 0), base = *this;
    while (e) {
        if (e & 1)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

AlgInt AlgInt::operator-() const
{
    return AlgInt(d_, -a_, -b_);
}

AlgInt& AlgInt::operator+=(const AlgInt& o)
{
    require_same_field(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

AlgInt& AlgInt::operator-=(const AlgInt& o)
{
    require_same_field(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

AlgInt& AlgInt::operator*=(const AlgInt& o)
{
    require_same_field(o);
    mpz_class bd = b_ * o.b_;
    mpz_class a = a_ * o.a_ - omega_norm() * bd;
    mpz_class b = a_ * o.b_ + b_ * o.a_ + omega_trace() * bd;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

std::string AlgInt::to_string() const
{
    const char* sym = d_ == -1 ? "i" : d_ == -2 ? "sqrt(-2)" : "w";
    const bool glue = d_ == -1;
    auto coeff = [&](const mpz_class& c) -> std::string {
        if (c == 1)
            return "";
        if (c == -1)
            return "-";
        return c.get_str() + (glue ? "" : "*");
    };
    if (b_ == 0)
        return a_.get_str();
    std::string tail = coeff(b_) + sym;
    if (a_ == 0)
        return tail;
    if (b_ > 0)
        return a_.get_str() + "+" + tail;
    return a_.get_str() + tail;
}

std::string AlgInt::coords() const
{
    return a_.get_str() + "," + b_.get_str();
}

std::ostream& operator<<(std::ostream& os, const AlgInt& x)
{
    return os << x.to_string();
}

// ---------------------------------------------------------------------------
// QuadraticField

QuadraticField::QuadraticField(int d, int disc, OmegaKind kind, std::vector<AlgInt> units)
    : d_(d), disc_(disc), kind_(kind), units_(std::move(units))
{
}

QuadraticField QuadraticField::make(int d)
{
    if (!is_supported_field(d))
        throw Error(Errc::unsupported_field,
                    "only d in {-1, -2, -7} is supported, got d = " + std::to_string(d));
    // d mod 4 with the mathematical (nonnegative) remainder
    int r = ((d % 4) + 4) % 4;
    OmegaKind kind = r == 1 ? OmegaKind::half_one_plus_sqrt_d : OmegaKind::sqrt_d;
    int disc = r == 1 ? d : 4 * d;
    return QuadraticField(d, disc, kind, unit_list(d));
}

int QuadraticField::omega_norm() const noexcept
{
    return norm_of_omega(d_);
}

std::string QuadraticField::name() const
{
    switch (d_) {
    case -1: return "Q(i)";
    case -2: return "Q(sqrt(-2))";
    default: return "Q(sqrt(-7))";
    }
}

// ---------------------------------------------------------------------------
// Divisibility and Euclid

AlgInt canonical(const AlgInt& x)
{
    if (x.is_zero())
        return x;
    std::vector<AlgInt> good;
    for (const AlgInt& u : unit_list(x.d())) {
        AlgInt y = u * x;
        if (y.a() > 0 && y.b() >= 0)
            return y; // unique in Z[i]
        if (y.a() > 0 || (y.a() == 0 && y.b() > 0))
            good.push_back(std::move(y));
    }
    return *std::min_element(good.begin(), good.end());
}

bool associates(const AlgInt& x, const AlgInt& y)
{
    return canonical(x) == canonical(y);
}

bool divides(const AlgInt& y, const AlgInt& x)
{
    if (y.is_zero())
        return x.is_zero();
    AlgInt t = x * y.conj();
    mpz_class n = y.norm();
    return mpz_divisible_p(t.a().get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.b().get_mpz_t(), n.get_mpz_t());
}

AlgInt divexact(const AlgInt& x, const AlgInt& y)
{
    if (y.is_zero())
        throw Error(Errc::zero_element, "division by zero");
    AlgInt t = x * y.conj();
    mpz_class n = y.norm();
    if (!mpz_divisible_p(t.a().get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(t.b().get_mpz_t(), n.get_mpz_t()))
        throw Error(Errc::invalid_argument, y.to_string() + " does not divide " + x.to_string());
    mpz_class a, b;
    mpz_divexact(a.get_mpz_t(), t.a().get_mpz_t(), n.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), t.b().get_mpz_t(), n.get_mpz_t());
    return AlgInt(x.d(), a, b);
}

DivisionStep nearest_division(const AlgInt& x, const AlgInt& y)
{
    if (y.is_zero())
        throw Error(Errc::zero_element, "division by zero");
    AlgInt t = x * y.conj();
    mpz_class n = y.norm();
    mpz_class fa, fb;
    mpz_fdiv_q(fa.get_mpz_t(), t.a().get_mpz_t(), n.get_mpz_t());
    mpz_fdiv_q(fb.get_mpz_t(), t.b().get_mpz_t(), n.get_mpz_t());

    std::optional<DivisionStep> best;
    mpz_class best_norm;
    for (int db = 0; db <= 1; ++db) {
        for (int da = -1; da <= 2; ++da) {
            AlgInt q(x.d(), fa + da, fb + db);
            AlgInt r = x - q * y;
            mpz_class rn = r.norm();
            bool better = !best || rn < best_norm || (rn == best_norm && q < best->quotient);
            if (better) {
                best_norm = rn;
                best = DivisionStep{q, r};
            }
        }
    }
    return *best;
}

AlgInt gcd(const AlgInt& x, const AlgInt& y)
{
    if (x.is_zero() && y.is_zero())
        throw Error(Errc::both_zero, "gcd(0, 0) is undefined");
    AlgInt u = x, v = y;
    while (!v.is_zero()) {
        AlgInt r = nearest_division(u, v).remainder;
        u = std::move(v);
        v = std::move(r);
    }
    return canonical(u);
}

// ---------------------------------------------------------------------------
// Prime ideals

std::ostream& operator<<(std::ostream& os, const PrimeIdeal& P)
{
    return os << "(" << P.generator << ")";
}

PrimeIdeal prime_ideal_of(const QuadraticField& K, const AlgInt& pi)
{
    AlgInt g = canonical(pi);
    mpz_class n = g.norm();
    if (is_prime(n)) {
        std::int64_t p = n.get_si();
        bool ramified = K.discriminant() % p == 0;
        return PrimeIdeal{g, p, 1, ramified ? 2 : 1, p};
    }
    mpz_class r;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        r = sqrt(n);
        if (is_prime(r) && associates(g, K.element(r)) && omega_roots_mod(K, r.get_si()).empty()) {
            std::int64_t p = r.get_si();
            return PrimeIdeal{g, p, 2, 1, p * p};
        }
    }
    throw Error(Errc::invalid_argument, g.to_string() + " does not generate a prime ideal");
}

std::vector<std::pair<PrimeIdeal, int>> split_prime(const QuadraticField& K, std::int64_t p)
{
    if (!is_prime(p))
        throw Error(Errc::invalid_argument, std::to_string(p) + " is not prime");
    // Roots of the minimal polynomial x^2 - t x + n of w modulo p. For a
    // root r, w - r lies in a prime above p and gcd(p, w - r) generates it.
    std::vector<std::int64_t> roots = omega_roots_mod(K, p);
    std::vector<std::pair<PrimeIdeal, int>> out;
    if (roots.empty()) {
        out.emplace_back(PrimeIdeal{K.element(p), p, 2, 1, p * p}, 1);
        return out;
    }
    std::set<AlgInt> gens;
    for (std::int64_t r : roots)
        gens.insert(gcd(K.element(p), K.element(-r, 1)));
    if (gens.size() == 1) {
        const AlgInt& g = *gens.begin();
        out.emplace_back(PrimeIdeal{g, p, 1, 2, p}, 2);
    } else {
        for (const AlgInt& g : gens)
            out.emplace_back(PrimeIdeal{g, p, 1, 1, p}, 1);
    }
    return out;
}

std::vector<PrimeIdeal> primes_up_to(const QuadraticField& K, std::int64_t norm_bound)
{
    std::vector<PrimeIdeal> out;
    for (std::int64_t p = 2; p <= norm_bound; ++p) {
        if (!is_prime(p))
            continue;
        for (auto& [P, e] : split_prime(K, p))
            if (P.norm <= norm_bound)
                out.push_back(P);
    }
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& x, const PrimeIdeal& y) {
        return std::tie(x.norm, x.generator) < std::tie(y.norm, y.generator);
    });
    return out;
}

std::vector<PrimeIdeal> primes_over_two(const QuadraticField& K)
{
    std::vector<PrimeIdeal> out;
    for (auto& [P, e] : split_prime(K, 2))
        out.push_back(P);
    return out;
}

int valuation(const AlgInt& x, const PrimeIdeal& P)
{
    if (x.is_zero())
        throw Error(Errc::zero_element, "valuation of 0");
    int v = 0;
    AlgInt y = x;
    while (divides(P.generator, y)) {
        y = divexact(y, P.generator);
        ++v;
    }
    return v;
}

std::vector<std::pair<PrimeIdeal, int>> factor(const QuadraticField& K, const AlgInt& x)
{
    if (x.is_zero())
        throw Error(Errc::zero_element, "factorisation of 0");
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (const mpz_class& q : prime_divisors(x.norm())) {
        if (!q.fits_slong_p())
            throw Error(Errc::cap_exceeded, "prime factor " + q.get_str() + " too large");
        for (auto& [P, e] : split_prime(K, q.get_si())) {
            int v = valuation(x, P);
            if (v > 0)
                out.emplace_back(P, v);
        }
    }
    return out;
}

} // namespace fermatk
