#include <doctest.h>

#include "fermatk/elimination.hpp"
#include "fermatk/report.hpp"
#include "support.hpp"

using namespace fermatk;
using fermatk::test::fixture_path;
using fermatk::test::Gen;

namespace {

NewformDataset bundled(int d) { return load_newform_file(bundled_newform_path(d)); }

bool has_case(const IrreducibilityResult& r, const std::string& id, std::int64_t bound)
{
    for (auto& c : r.cases)
        if (c.id == id && c.bound == bound)
            return true;
    return false;
}

} // namespace

TEST_CASE("irreducibility thresholds")
{
    auto a = irreducibility_threshold(QuadraticField::make(-1));
    auto b = irreducibility_threshold(QuadraticField::make(-2));
    auto c = irreducibility_threshold(QuadraticField::make(-7));
    CHECK(a.threshold == 19);
    CHECK(b.threshold == 19);
    CHECK(c.threshold == 17);
    CHECK(has_case(a, "ray class order 2", 17));
    CHECK(has_case(b, "ray class order 4", 17));
    CHECK(has_case(c, "ray class order 1", 13));
    CHECK(has_case(c, "p split, divides both conductors", 3));
    CHECK(has_case(c, "p ramified in K", 7));
    CHECK(has_case(a, "p split, divides both conductors", 3));
    for (auto& r : {a, b, c})
        for (auto& cs : r.cases)
            CHECK(cs.bound < r.threshold);
}

TEST_CASE("CM rule")
{
    NewformDataset ds = bundled(-2);
    CHECK(eliminate_by_cm(ds.records[0]).outcome == CmOutcome::eliminated);
    CHECK(eliminate_by_cm(ds.records[1]).outcome == CmOutcome::not_applicable);
    NewformRecord r = ds.records[0];
    r.cm = false;
    CmDecision via_curve = eliminate_by_cm(r);
    CHECK(via_curve.outcome == CmOutcome::eliminated);
    CHECK(via_curve.reason.find("1728") != std::string::npos);
    r.curve.reset();
    CHECK(eliminate_by_cm(r).outcome == CmOutcome::not_applicable);
}

TEST_CASE("elimination at (1+sqrt(-2))")
{
    auto K = QuadraticField::make(-2);
    NewformDataset ds = bundled(-2);
    PrimeIdeal m1 = prime_ideal_of(K, K.element(1, 1));
    PrimeElimination a = eliminate_at_prime(ds.records[1], m1);
    CHECK(a.a_p == -2);
    CHECK(a.full_2torsion_traces == std::set<std::int64_t>{0});
    CHECK(a.bound == -72);
    CHECK(a.survivors == std::vector<std::int64_t>{2, 3});
    PrimeElimination b = eliminate_at_prime(ds.records[2], m1);
    CHECK(b.bound == 72);
    CHECK(b.survivors == std::vector<std::int64_t>{2, 3});
    PrimeElimination c = eliminate_at_prime(ds.records[0], m1);
    CHECK(c.a_p == 0);
    CHECK(c.no_information);
    CHECK(c.survivors.empty());
    CHECK_ERRC(eliminate_at_prime(ds.records[1], primes_over_two(K)[0]), Errc::invalid_argument);
    NewformRecord r = ds.records[1];
    r.eigenvalues.clear();
    CHECK_ERRC(eliminate_at_prime(r, m1), Errc::missing_eigenvalue);
}

TEST_CASE("pipeline over Q(sqrt(-2))")
{
    auto K = QuadraticField::make(-2);
    EliminationReport r = run_pipeline(K, bundled(-2));
    CHECK(r.final_threshold == 19);
    CHECK(r.all_eliminated);
    CHECK(r.conditional);
    CHECK(r.conditionality.find("Serre") != std::string::npos);
    REQUIRE(r.forms.size() == 3);
    CHECK(r.forms[0].kind == FormOutcomeKind::eliminated_by_cm);
    for (int i : {1, 2}) {
        CHECK(r.forms[i].kind == FormOutcomeKind::survivors);
        for (auto l : r.forms[i].survivors)
            CHECK((l == 2 || l == 3));
        CHECK(r.forms[i].skipped.empty());
    }
    CHECK(r.levels_checked.size() == 9);
    CHECK(r.small_primes.size() == 5);
    CHECK(r.small_primes.back().p == 17);
    CHECK(r.statement.find("p >= 19") != std::string::npos);
}

TEST_CASE("pipeline over Q(i) and Q(sqrt(-7)) has no forms to process")
{
    EliminationReport a = run_pipeline(QuadraticField::make(-1), bundled(-1));
    CHECK(a.forms.empty());
    CHECK(a.final_threshold == 19);
    CHECK(a.all_eliminated);
    EliminationReport c = run_pipeline(QuadraticField::make(-7), bundled(-7));
    CHECK(c.forms.empty());
    CHECK(c.final_threshold == 17);
    CHECK(c.levels_checked.size() == 16);
    CHECK(c.small_primes.size() == 4);
    CHECK(c.all_eliminated);
}

TEST_CASE("pipeline input errors")
{
    auto K = QuadraticField::make(-2);
    CHECK_ERRC(run_pipeline(QuadraticField::make(-1), bundled(-2)), Errc::field_mismatch);
    PipelineConfig small;
    small.aux_bound = 2;
    CHECK_ERRC(run_pipeline(K, bundled(-2), small), Errc::invalid_argument);
    NewformDataset ds = bundled(-2);
    ds.dimensions.pop_back();
    CHECK_ERRC(run_pipeline(K, ds), Errc::incomplete_dataset);
    CHECK(expected_final_threshold(-7) == 17);
    CHECK_ERRC(expected_final_threshold(-3), Errc::unsupported_field);
}

TEST_CASE("a form that is not ruled out leaves the pipeline inconclusive")
{
    auto K = QuadraticField::make(-2);
    NewformDataset ds = bundled(-2);
    // every a_P in T(N(P)) makes B depend only on q and (q+1)^2 - a^2
    NewformRecord& f = ds.records[1];
    for (Eigenvalue& e : f.eigenvalues) {
        auto T = possible_traces_full_2torsion(e.norm, 1000000);
        e.value = *T.begin();
    }
    f.curve.reset();
    EliminationReport r = run_pipeline(K, ds);
    CHECK(!r.all_eliminated);
    CHECK(r.forms[1].kind == FormOutcomeKind::no_information);
    CHECK(r.statement.rfind("inconclusive", 0) == 0);
}

TEST_CASE("property: survivor sets shrink as the auxiliary bound grows")
{
    auto K = QuadraticField::make(-2);
    NewformDataset ds = bundled(-2);
    std::vector<std::int64_t> prev;
    bool first = true;
    for (std::int64_t X : {3, 11, 17, 19, 25, 50, 100}) {
        PipelineConfig c;
        c.aux_bound = X;
        EliminationReport r = run_pipeline(K, ds, c);
        const auto& s = r.forms[1].survivors;
        if (!first)
            CHECK(std::includes(prev.begin(), prev.end(), s.begin(), s.end()));
        prev = s;
        first = false;
    }
}

TEST_CASE("property: conjugating the data does not change the outcome")
{
    auto K = QuadraticField::make(-2);
    NewformDataset ds = bundled(-2);
    NewformDataset conj = ds;
    for (NewformRecord& f : conj.records)
        for (Eigenvalue& e : f.eigenvalues)
            e.prime = canonical(e.prime.conj());
    EliminationReport a = run_pipeline(K, ds), b = run_pipeline(K, conj);
    REQUIRE(a.forms.size() == b.forms.size());
    for (std::size_t i = 0; i < a.forms.size(); ++i)
        CHECK(a.forms[i].survivors == b.forms[i].survivors);
    CHECK(a.final_threshold == b.final_threshold);
}

TEST_CASE("property: the pipeline is deterministic and its JSON round-trips")
{
    for (int d : {-1, -2, -7}) {
        auto K = QuadraticField::make(d);
        EliminationReport r = run_pipeline(K, bundled(d));
        std::string j = report_to_json(r);
        CHECK(report_to_json(run_pipeline(K, bundled(d))) == j);
        CHECK(report_to_json(report_from_json(j)) == j);
        CHECK(report_to_text(r, true) == report_to_text(report_from_json(j), true));
    }
    CHECK_ERRC(report_from_json("[]"), Errc::malformed_record);
}

TEST_CASE("property: B vanishes exactly when a_P is an obstruction")
{
    Gen g(501);
    auto K = QuadraticField::make(-2);
    NewformDataset ds = bundled(-2);
    auto ps = primes_up_to(K, 60);
    for (int i = 0; i < 200; ++i) {
        NewformRecord f = ds.records[1];
        const PrimeIdeal& P = ps[g.range(1, static_cast<long>(ps.size()) - 1)];
        if (P.residue_char == 2)
            continue;
        long bound = static_cast<long>(2 * std::sqrt(static_cast<double>(P.norm)));
        std::int64_t a = g.range(-bound, bound);
        for (Eigenvalue& e : f.eigenvalues)
            if (e.prime == P.generator)
                e.value = a;
        PrimeElimination s = eliminate_at_prime(f, P);
        bool in_T = s.full_2torsion_traces.count(a) > 0;
        bool edge = (P.norm + 1) * (P.norm + 1) == a * a;
        REQUIRE(s.no_information == (in_T || edge));
        for (std::int64_t l : s.survivors)
            REQUIRE(s.bound % l == 0);
    }
}
