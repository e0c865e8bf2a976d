#include "fermatk/ellcurve.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "fermatk/finite_field.hpp"
#include "fermatk/integer_factor.hpp"
#include "fermatk/residue_ring.hpp"

namespace fermatk {

bool JInvariant::is_rational() const
{
    return (num * den.conj()).is_rational();
}

mpq_class JInvariant::rational_value() const
{
    if (!is_rational())
        throw Error(Errc::non_rational_j, "j = " + to_string() + " is not rational");
    mpq_class q((num * den.conj()).a(), den.norm());
    q.canonicalize();
    return q;
}

std::string JInvariant::to_string() const
{
    if (is_rational())
        return rational_value().get_str();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

EllipticCurve::EllipticCurve(const QuadraticField& K, std::array<AlgInt, 5> a)
    : field_(K), a_(std::move(a)), b2_(K.zero()), b4_(K.zero()), b6_(K.zero()), b8_(K.zero()), c4_(K.zero()),
      c6_(K.zero()), disc_(K.zero())
{
    for (const AlgInt& x : a_)
        if (x.d() != K.d())
            throw Error(Errc::field_mismatch, "coefficient from another field");
    const AlgInt &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3], &a6 = a_[4];
    b2_ = a1 * a1 + mpz_class(4) * a2;
    b4_ = mpz_class(2) * a4 + a1 * a3;
    b6_ = a3 * a3 + mpz_class(4) * a6;
    b8_ = a1 * a1 * a6 + mpz_class(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - mpz_class(24) * b4_;
    c6_ = -(b2_ * b2_ * b2_) + mpz_class(36) * b2_ * b4_ - mpz_class(216) * b6_;
    disc_ = -(b2_ * b2_ * b8_) - mpz_class(8) * b4_.pow(3) - mpz_class(27) * b6_ * b6_
            + mpz_class(9) * b2_ * b4_ * b6_;
    if (disc_.is_zero())
        throw Error(Errc::singular_curve, "discriminant vanishes for " + to_string());
}

EllipticCurve EllipticCurve::from_integers(const QuadraticField& K, std::array<long, 5> a)
{
    return EllipticCurve(K, {K.element(a[0]), K.element(a[1]), K.element(a[2]), K.element(a[3]), K.element(a[4])});
}

std::string EllipticCurve::to_string() const
{
    std::ostringstream os;
    os << "[" << a_[0] << ", " << a_[1] << ", " << a_[2] << ", " << a_[3] << ", " << a_[4] << "]";
    return os.str();
}

Invariants invariants(const EllipticCurve& E)
{
    return Invariants{E.c4(), E.c6(), E.discriminant(), E.j()};
}

std::string_view reduction_kind_name(ReductionKind k) noexcept
{
    switch (k) {
    case ReductionKind::good: return "good";
    case ReductionKind::multiplicative: return "multiplicative";
    case ReductionKind::additive: return "additive";
    case ReductionKind::additive_or_unknown: return "additive_or_unknown";
    }
    return "?";
}

namespace {

constexpr int kInfinite = 1 << 30;

int val_or_inf(const AlgInt& x, const PrimeIdeal& P)
{
    return x.is_zero() ? kInfinite : valuation(x, P);
}

} // namespace

ReductionInfo reduction_type(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t count_cap)
{
    if (P.residue_char == 2)
        throw Error(Errc::unsupported_prime, "reduction type at a prime over 2");
    int vc4 = val_or_inf(E.c4(), P);
    int vc6 = val_or_inf(E.c6(), P);
    int vd = valuation(E.discriminant(), P);
    int scalings = 0;
    while (vc4 >= 4 && vc6 >= 6 && vd >= 12) {
        if (vc4 != kInfinite)
            vc4 -= 4;
        if (vc6 != kInfinite)
            vc6 -= 6;
        vd -= 12;
        ++scalings;
    }

    ReductionInfo info{P, ReductionKind::good, vd, std::nullopt, std::nullopt};
    if (vc4 != kInfinite)
        info.v_c4_min = vc4;
    if (vd == 0) {
        info.kind = ReductionKind::good;
        if (P.norm <= count_cap) {
            if (scalings == 0) {
                info.trace = trace_of_frobenius(E, P, count_cap);
            } else if (P.residue_char > 3) {
                const QuadraticField& K = E.field();
                AlgInt u4 = P.generator.pow(4 * scalings), u6 = P.generator.pow(6 * scalings);
                AlgInt c4m = divexact(E.c4(), u4), c6m = divexact(E.c6(), u6);
                EllipticCurve short_model(K, {K.zero(), K.zero(), K.zero(), mpz_class(-27) * c4m,
                                              mpz_class(-54) * c6m});
                info.trace = trace_of_frobenius(short_model, P, count_cap);
            }
        }
    } else if (vc4 == 0) {
        info.kind = ReductionKind::multiplicative;
    } else {
        info.kind = P.residue_char > 3 ? ReductionKind::additive : ReductionKind::additive_or_unknown;
    }
    return info;
}

std::int64_t count_points(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t cap)
{
    if (P.norm > cap)
        throw Error(Errc::cap_exceeded, "N(P) = " + std::to_string(P.norm) + " exceeds point-count cap "
                                            + std::to_string(cap));
    if (valuation(E.discriminant(), P) > 0)
        throw Error(Errc::bad_reduction, E.to_string() + " has bad reduction at " + P.generator.to_string());

    ResidueRing F(E.field(), P.generator, static_cast<std::uint64_t>(cap));
    using El = ResidueRing::Elem;
    const auto q = static_cast<El>(F.size());
    std::int64_t count = 1;

    if (P.residue_char != 2) {
        // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
        std::vector<std::int64_t> roots(q, 0);
        for (El z = 0; z < q; ++z)
            ++roots[F.mul(z, z)];
        const El four = F.reduce(4, 0), b2 = F.reduce(E.b2()), b4x2 = F.reduce(mpz_class(2) * E.b4()),
                 b6 = F.reduce(E.b6());
        for (El x = 0; x < q; ++x) {
            El r = F.add(F.mul(F.add(F.mul(F.add(F.mul(four, x), b2), x), b4x2), x), b6);
            count += roots[r];
        }
        return count;
    }

    const El a1 = F.reduce(E.a1()), a2 = F.reduce(E.a2()), a3 = F.reduce(E.a3()), a4 = F.reduce(E.a4()),
             a6 = F.reduce(E.a6());
    for (El x = 0; x < q; ++x) {
        El rhs = F.add(F.mul(F.add(F.mul(F.add(x, a2), x), a4), x), a6);
        El lin = F.add(F.mul(a1, x), a3);
        for (El y = 0; y < q; ++y)
            if (F.mul(F.add(y, lin), y) == rhs)
                ++count;
    }
    return count;
}

std::int64_t trace_of_frobenius(const EllipticCurve& E, const PrimeIdeal& P, std::int64_t cap)
{
    return P.norm + 1 - count_points(E, P, cap);
}

std::set<std::int64_t> possible_traces_full_2torsion(std::int64_t q, std::int64_t cap)
{
    if (q % 2 == 0)
        throw Error(Errc::even_q, "q = " + std::to_string(q) + " is even");
    FiniteField F = FiniteField::make(q, cap);
    using El = FiniteField::Elem;
    const auto n = static_cast<El>(q);

    // Rescaling x by u sends (A, B) to (uA, uB) and multiplies the trace by
    // chi(u), so A = 1 together with the sign flip covers every pair.
    std::set<std::int64_t> out;
    std::vector<std::int64_t> xx1(n);
    for (El x = 0; x < n; ++x)
        xx1[x] = F.mul(x, F.sub(x, 1));
    for (El B = 1; B < n; ++B) {
        if (F.add(1, B) == 0)
            continue;
        std::int64_t s = 0;
        for (El x = 0; x < n; ++x)
            s += F.chi(F.mul(static_cast<El>(xx1[x]), F.add(x, B)));
        // #C = q + 1 + s, trace = -s
        out.insert(-s);
        out.insert(s);
    }
    return out;
}

EllipticCurve quadratic_twist(const EllipticCurve& E, const AlgInt& lambda)
{
    if (lambda.is_zero())
        throw Error(Errc::zero_twist, "twist by 0");
    const QuadraticField& K = E.field();
    const AlgInt l2 = lambda * lambda, l3 = l2 * lambda;
    if (E.a1().is_zero() && E.a3().is_zero())
        return EllipticCurve(K, {K.zero(), lambda * E.a2(), K.zero(), l2 * E.a4(), l3 * E.a6()});
    // Y^2 = X^3 + b2 X^2 + 8 b4 X + 16 b6 is isomorphic to E (X = 4x).
    return EllipticCurve(K, {K.zero(), lambda * E.b2(), K.zero(), mpz_class(8) * l2 * E.b4(),
                             mpz_class(16) * l3 * E.b6()});
}

const std::array<mpz_class, 13>& cm_j_invariants()
{
    static const std::array<mpz_class, 13> list = {
        mpz_class("-262537412640768000"),
        mpz_class("-147197952000"),
        mpz_class("-884736000"),
        mpz_class("-12288000"),
        mpz_class("-884736"),
        mpz_class("-32768"),
        mpz_class("-3375"),
        mpz_class("0"),
        mpz_class("1728"),
        mpz_class("8000"),
        mpz_class("54000"),
        mpz_class("287496"),
        mpz_class("16581375"),
    };
    return list;
}

bool has_cm_j(const mpz_class& j)
{
    const auto& list = cm_j_invariants();
    return std::find(list.begin(), list.end(), j) != list.end();
}

bool has_cm_j(const JInvariant& j)
{
    mpq_class v = j.rational_value();
    if (v.get_den() != 1)
        return false;
    return has_cm_j(v.get_num());
}

std::string_view cm_status_name(CmStatus s) noexcept
{
    switch (s) {
    case CmStatus::cm: return "cm";
    case CmStatus::no_cm: return "no_cm";
    case CmStatus::unknown: return "unknown";
    }
    return "?";
}

CmStatus cm_status(const EllipticCurve& E)
{
    JInvariant j = E.j();
    if (!j.is_rational())
        return CmStatus::unknown;
    return has_cm_j(j) ? CmStatus::cm : CmStatus::no_cm;
}

} // namespace fermatk
