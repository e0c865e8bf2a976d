#include "fermatk/elimination.hpp"

#include <algorithm>
#include <tuple>

#include "fermatk/integer_factor.hpp"
#include "fermatk/residue_ring.hpp"

namespace fermatk {

namespace {

constexpr const char* kKamienny = "Kamienny: prime torsion of elliptic curves over quadratic fields is at most 13";
constexpr const char* kQuartic =
    "Derickx, Kamienny, Stein, Stoll: prime torsion of elliptic curves over quartic fields is at most 17";
constexpr const char* kKraus = "Kraus, Lemme 1: an inert p divides only one of the two character conductors";

std::int64_t largest_prime_factor(std::int64_t n)
{
    auto f = factor_integer(mpz_class(static_cast<long>(n)));
    return f.empty() ? 1 : f.back().first.get_si();
}

} // namespace

IrreducibilityResult irreducibility_threshold(const QuadraticField& K)
{
    IrreducibilityResult out{0, {}};
    LevelPrediction pred = predicted_levels(K);

    for (const Ideal& N : character_conductor_candidates(K, pred.levels)) {
        AbelianGroupStructure G = ray_class_group(K, N.generator);
        std::uint64_t e = G.exponent();
        std::string detail = "theta has conductor " + N.to_string() + ", ray class group " + G.to_string()
                             + ", so theta has order dividing " + std::to_string(e);
        if (e == 1) {
            out.cases.push_back({"ray class order 1", detail + "; E has a point of order p over K", 13, kKamienny});
        } else if (e == 2) {
            out.cases.push_back({"ray class order 2",
                                 detail + "; E has a point of order p over a quadratic extension of K", 17,
                                 kQuartic});
        } else if (e == 4) {
            out.cases.push_back({"ray class order 4",
                                 detail + "; a quadratic twist of E has a point of order p over a quartic field", 17,
                                 kQuartic});
        } else {
            throw Error(Errc::unsupported_exponent,
                        "ray class group of " + N.to_string() + " has exponent " + std::to_string(e));
        }
    }

    out.cases.push_back({"p ramified in K",
                         "p | disc(K) = " + std::to_string(K.discriminant()) + " is excluded by the threshold",
                         largest_prime_factor(-K.discriminant()), "assumption of the inert/split case analysis"});
    out.cases.push_back({"p inert, divides both conductors", "contradiction without a bound on p", 2, kKraus});
    for (const PrimeIdeal& P : pred.primes_over_two) {
        if (P.residue_degree != 1)
            continue;
        std::int64_t n2 = P.norm * P.norm - 1;
        out.cases.push_back({"p split, divides both conductors",
                             "theta^2 is unramified outside p1, and at (" + P.generator.to_string() + ")"
                                 + " this forces p | N(P)^2 - 1 = " + std::to_string(n2) + ", so p | "
                                 + std::to_string(n2),
                             largest_prime_factor(n2), "class field theory at the primes over 2"});
    }

    std::int64_t m = 2;
    for (auto& c : out.cases)
        m = std::max(m, c.bound);
    out.threshold = next_prime(m);
    return out;
}

CmDecision eliminate_by_cm(const NewformRecord& f)
{
    if (f.cm)
        return {CmOutcome::eliminated, "record carries the CM flag; the image of rho-bar is then not surjective"};
    auto E = f.matched_curve();
    if (!E)
        return {CmOutcome::not_applicable, "no CM flag and no matched curve"};
    switch (cm_status(*E)) {
    case CmStatus::cm:
        return {CmOutcome::eliminated,
                "matched curve has CM j = " + E->j().to_string() + "; the image of rho-bar is then not surjective"};
    case CmStatus::no_cm:
        return {CmOutcome::not_applicable, "matched curve has j = " + E->j().to_string() + ", not a CM j-invariant"};
    case CmStatus::unknown:
        break;
    }
    return {CmOutcome::not_applicable, "j = " + E->j().to_string() + " is not rational, CM status unknown"};
}

PrimeElimination eliminate_at_prime(const NewformRecord& f, const PrimeIdeal& P, std::int64_t count_cap)
{
    if (P.residue_char == 2)
        throw Error(Errc::invalid_argument, "auxiliary prime over 2");
    if (divides(P.generator, f.level))
        throw Error(Errc::invalid_argument, P.generator.to_string() + " divides the level of " + f.label);
    auto a = f.eigenvalue(P.generator);
    if (!a)
        throw Error(Errc::missing_eigenvalue, f.label + " has no eigenvalue at " + P.generator.to_string());

    const std::int64_t q = P.norm;
    PrimeElimination out{P, *a, possible_traces_full_2torsion(q, count_cap), 0, false, {}};
    mpz_class B = mpz_class(static_cast<long>(q)) * (mpz_class(static_cast<long>((q + 1) * (q + 1) - *a * *a)));
    for (std::int64_t t : out.full_2torsion_traces)
        B *= mpz_class(static_cast<long>(*a - t));
    out.bound = B;
    if (B == 0) {
        out.no_information = true;
        return out;
    }
    for (const mpz_class& l : prime_divisors(B))
        out.survivors.push_back(l.get_si());
    return out;
}

std::string_view form_outcome_name(FormOutcomeKind k) noexcept
{
    switch (k) {
    case FormOutcomeKind::eliminated_by_cm: return "eliminated_by_cm";
    case FormOutcomeKind::survivors: return "survivors";
    case FormOutcomeKind::no_information: return "no_information";
    }
    return "?";
}

std::int64_t expected_final_threshold(int d)
{
    switch (d) {
    case -1:
    case -2: return 19;
    case -7: return 17;
    default: throw Error(Errc::unsupported_field, "d = " + std::to_string(d));
    }
}

EliminationReport run_pipeline(const QuadraticField& K, const NewformDataset& dataset, const PipelineConfig& config)
{
    if (dataset.d != K.d())
        throw Error(Errc::field_mismatch,
                    "dataset is for d=" + std::to_string(dataset.d) + ", field is " + K.name());
    if (config.aux_bound < 3)
        throw Error(Errc::invalid_argument, "auxiliary bound must be at least 3");

    LevelPrediction pred = predicted_levels(K);
    EliminationReport rep;
    rep.d = K.d();
    rep.field_name = K.name();
    rep.provenance = dataset.provenance;
    rep.predicted_levels = pred.levels;
    rep.character_conductors = character_conductor_candidates(K, pred.levels);
    rep.local_max_conductor_exponent = pred.audit.max_exponent;
    rep.aux_bound = config.aux_bound;
    rep.irreducibility = irreducibility_threshold(K);

    // every divisor of a predicted level, each once
    std::vector<Ideal> levels;
    for (const Ideal& N : pred.levels)
        for (Ideal& M : ideal_divisors(K, N))
            if (std::find(levels.begin(), levels.end(), M) == levels.end())
                levels.push_back(std::move(M));
    std::sort(levels.begin(), levels.end(), [](const Ideal& x, const Ideal& y) {
        return std::tie(x.norm, x.generator) < std::tie(y.norm, y.generator);
    });

    std::vector<const NewformRecord*> todo;
    for (const Ideal& M : levels) {
        const DimensionDeclaration* dim = dataset.dimension_at(M.generator);
        if (!dim)
            throw Error(Errc::incomplete_dataset, "no dimension declared at level " + M.to_string());
        rep.levels_checked.push_back({M, dim->cuspidal, dim->newforms});
        for (const NewformRecord* r : dataset.records_at(M.generator))
            todo.push_back(r);
    }
    std::sort(todo.begin(), todo.end(), [](const NewformRecord* x, const NewformRecord* y) {
        return std::tie(x->level_norm, x->label) < std::tie(y->level_norm, y->label);
    });

    const std::int64_t threshold = rep.irreducibility.threshold;
    std::vector<PrimeIdeal> aux;
    for (const PrimeIdeal& P : primes_up_to(K, config.aux_bound))
        if (P.residue_char != 2)
            aux.push_back(P);

    std::set<std::int64_t> obstructions;
    rep.all_eliminated = true;
    for (const NewformRecord* f : todo) {
        FormOutcome out{f->label, Ideal::of(K, f->level), FormOutcomeKind::no_information, {}, {}, {}, {}, false};
        CmDecision cm = eliminate_by_cm(*f);
        out.cm_reason = cm.reason;
        if (cm.outcome == CmOutcome::eliminated) {
            out.kind = FormOutcomeKind::eliminated_by_cm;
            out.eliminated = true;
        } else {
            std::optional<std::set<std::int64_t>> surv;
            for (const PrimeIdeal& P : aux) {
                if (divides(P.generator, f->level))
                    continue;
                if (!f->eigenvalue(P.generator)) {
                    out.skipped.push_back(P.generator.to_string());
                    continue;
                }
                PrimeElimination step = eliminate_at_prime(*f, P, config.count_cap);
                if (!step.no_information) {
                    std::set<std::int64_t> s(step.survivors.begin(), step.survivors.end());
                    if (surv) {
                        std::set<std::int64_t> both;
                        std::set_intersection(surv->begin(), surv->end(), s.begin(), s.end(),
                                              std::inserter(both, both.end()));
                        surv = std::move(both);
                    } else {
                        surv = std::move(s);
                    }
                }
                out.steps.push_back(std::move(step));
            }
            if (surv) {
                out.kind = FormOutcomeKind::survivors;
                out.survivors.assign(surv->begin(), surv->end());
                out.eliminated = std::all_of(out.survivors.begin(), out.survivors.end(),
                                             [&](std::int64_t l) { return l < threshold; });
                obstructions.insert(surv->begin(), surv->end());
            }
        }
        rep.all_eliminated = rep.all_eliminated && out.eliminated;
        rep.forms.push_back(std::move(out));
    }
    rep.surviving_obstructions.assign(obstructions.begin(), obstructions.end());

    std::int64_t p0 = threshold;
    while (!is_prime(p0) || (!obstructions.empty() && p0 <= *obstructions.rbegin()))
        ++p0;
    rep.final_threshold = p0;

    rep.conditional = true;
    rep.conditionality = "conditional on Serre's modularity conjecture over K";
    rep.small_primes = {{5, "Gross, Rohrlich, Theorem 5.1"},
                        {7, "Gross, Rohrlich, Theorem 5.1"},
                        {11, "Gross, Rohrlich, Theorem 5.1"},
                        {13, "Tzermias"}};
    if (p0 > 17)
        rep.small_primes.push_back({17, "Hao, Parry, Theorem 4"});

    if (rep.all_eliminated) {
        rep.statement = "a^p + b^p + c^p = 0 has no solution with a, b, c in " + rep.field_name
                        + " nonzero for every prime p >= " + std::to_string(p0) + ", " + rep.conditionality
                        + "; the exponents 5 <= p < " + std::to_string(p0)
                        + " are covered unconditionally by the cited results";
    } else {
        rep.statement = "inconclusive: some newform at a predicted level is not eliminated for all p >= "
                        + std::to_string(p0);
    }
    return rep;
}

} // namespace fermatk
