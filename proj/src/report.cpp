#include "fermatk/report.hpp"

#include <sstream>

#include <json.hpp>

namespace fermatk {

using ordered_json = nlohmann::ordered_json;

namespace {

template <class T>
std::string join(const std::vector<T>& xs, const std::string& sep = ", ")
{
    std::ostringstream os;
    bool first = true;
    for (const auto& x : xs) {
        if (!first)
            os << sep;
        os << x;
        first = false;
    }
    return os.str();
}

std::string set_string(const std::vector<std::int64_t>& xs)
{
    return "{" + join(xs) + "}";
}

std::string exponent_vector(const Ideal& N, const std::vector<PrimeIdeal>& S)
{
    if (S.size() == 1)
        return "v(N) = " + std::to_string(N.exponent_at(S[0])) + " at (" + S[0].generator.to_string() + ")";
    std::vector<std::string> e, g;
    for (const PrimeIdeal& P : S) {
        e.push_back(std::to_string(N.exponent_at(P)));
        g.push_back("(" + P.generator.to_string() + ")");
    }
    return "exponents (" + join(e, ",") + ") at " + join(g, ", ");
}

ordered_json ideal_json(const Ideal& I)
{
    ordered_json j;
    j["generator"] = I.generator.coords();
    j["norm"] = I.norm.get_str();
    j["display"] = I.to_string();
    return j;
}

Ideal ideal_from_json(const QuadraticField& K, const ordered_json& j)
{
    std::string g = j.at("generator").get<std::string>();
    auto comma = g.find(',');
    return Ideal::of(K, K.element(mpz_class(g.substr(0, comma)), mpz_class(g.substr(comma + 1))));
}

AlgInt element_from_coords(const QuadraticField& K, const std::string& g)
{
    auto comma = g.find(',');
    if (comma == std::string::npos)
        throw Error(Errc::invalid_argument, "bad coordinates " + g);
    return K.element(mpz_class(g.substr(0, comma)), mpz_class(g.substr(comma + 1)));
}

} // namespace

std::string levels_to_text(const LevelPrediction& pred)
{
    QuadraticField K = QuadraticField::make(pred.d);
    std::ostringstream os;
    os << "Field " << K.name() << "\n";
    os << "Primes over 2:";
    for (const PrimeIdeal& P : pred.primes_over_two)
        os << " (" << P.generator << ") [norm " << P.norm << ", e=" << P.ram_index << ", f=" << P.residue_degree
           << "]";
    os << "\nPredicted Serre levels:\n";
    for (const Ideal& N : pred.levels)
        os << "  " << N.to_string() << "  " << exponent_vector(N, pred.primes_over_two) << "  norm " << N.norm
           << "\n";
    const LocalAudit& a = pred.audit;
    os << "Audit: unit square classes modulo b = " << Ideal::of(K, a.cokernel.modulus).to_string() << "\n";
    os << "  (O_K/b)*/squares: " << a.cokernel.codomain.to_string() << " (order " << a.cokernel.codomain.order()
       << ")\n";
    os << "  image of global units: order " << a.cokernel.image_order << "\n";
    os << "  cokernel representatives: " << join(a.cokernel.representatives) << "\n";
    for (const ConductorAuditEntry& c : a.conductor_exponents)
        os << "  conductor exponent of K(sqrt(" << c.lambda << ")) at (" << c.prime.generator
           << "): " << c.exponent << "\n";
    os << "  max conductor exponent: " << a.max_exponent << "\n";
    if (a.reference_representatives_valid)
        os << "  published representatives " << join(a.reference_representatives) << ": "
           << (*a.reference_representatives_valid ? "valid (distinct cosets, same maximum)" : "NOT valid") << "\n";
    return os.str();
}

std::string irreducibility_to_text(const QuadraticField& K, const IrreducibilityResult& r, bool explain)
{
    std::ostringstream os;
    os << "Field " << K.name() << "\n";
    os << "Irreducibility threshold: p >= " << r.threshold << "\n";
    if (explain) {
        for (const IrreducibilityCase& c : r.cases) {
            os << "  case: " << c.id << "\n";
            os << "    " << c.detail << "\n";
            os << "    bound: " << c.bound << "\n";
            os << "    source: " << c.citation << "\n";
        }
    }
    return os.str();
}

std::string report_to_text(const EliminationReport& r, bool explain)
{
    QuadraticField K = QuadraticField::make(r.d);
    std::ostringstream os;
    os << "Field " << r.field_name << "\n";
    for (const std::string& p : r.provenance)
        os << "Data: " << p << "\n";
    std::vector<std::string> lv, cc;
    for (const Ideal& N : r.predicted_levels)
        lv.push_back(N.to_string());
    for (const Ideal& N : r.character_conductors)
        cc.push_back(N.to_string());
    os << "Predicted levels: " << join(lv) << "\n";
    os << "Character conductors: " << join(cc) << "\n";
    os << "Local audit: max conductor exponent " << r.local_max_conductor_exponent << "\n";
    os << "Irreducibility threshold: " << r.irreducibility.threshold << "\n";
    if (explain)
        for (const IrreducibilityCase& c : r.irreducibility.cases)
            os << "  " << c.id << ": bound " << c.bound << " (" << c.citation << ")\n";
    os << "Levels checked (all divisors of the predicted levels):\n";
    for (const LevelCheck& l : r.levels_checked)
        os << "  " << l.level.to_string() << "  norm " << l.level.norm << "  cuspidal " << l.cuspidal
           << "  newforms " << l.newforms << "\n";
    os << "Newforms processed: " << r.forms.size() << " (auxiliary primes of norm <= " << r.aux_bound << ")\n";
    for (const FormOutcome& f : r.forms) {
        os << "  " << f.label << " at " << f.level.to_string() << ": " << form_outcome_name(f.kind);
        if (f.kind == FormOutcomeKind::survivors)
            os << " " << set_string(f.survivors);
        os << (f.eliminated ? " [eliminated]" : " [NOT eliminated]") << "\n";
        if (f.kind == FormOutcomeKind::eliminated_by_cm || explain)
            os << "    cm: " << f.cm_reason << "\n";
        if (explain) {
            for (const PrimeElimination& s : f.steps) {
                std::vector<std::int64_t> t(s.full_2torsion_traces.begin(), s.full_2torsion_traces.end());
                os << "    (" << s.prime.generator << ") q=" << s.prime.norm << " a_P=" << s.a_p
                   << " T(q)=" << set_string(t) << " B=" << s.bound.get_str() << " -> "
                   << (s.no_information ? "no information" : set_string(s.survivors)) << "\n";
            }
            if (!f.skipped.empty())
                os << "    no eigenvalue stored at: " << join(f.skipped) << "\n";
        }
    }
    os << "Surviving obstructions: " << set_string(r.surviving_obstructions) << "\n";
    os << "Final threshold p0 = " << r.final_threshold << "\n";
    os << "Small exponents:\n";
    for (const SmallPrimeCitation& c : r.small_primes)
        os << "  p = " << c.p << ": " << c.source << "\n";
    os << "Conclusion: " << r.statement << "\n";
    return os.str();
}

std::string report_to_json(const EliminationReport& r)
{
    ordered_json j;
    j["field"] = r.d;
    j["field_name"] = r.field_name;
    j["provenance"] = r.provenance;
    j["predicted_levels"] = ordered_json::array();
    for (const Ideal& N : r.predicted_levels)
        j["predicted_levels"].push_back(ideal_json(N));
    j["character_conductors"] = ordered_json::array();
    for (const Ideal& N : r.character_conductors)
        j["character_conductors"].push_back(ideal_json(N));
    j["local_max_conductor_exponent"] = r.local_max_conductor_exponent;
    j["levels_checked"] = ordered_json::array();
    for (const LevelCheck& l : r.levels_checked)
        j["levels_checked"].push_back(
            {{"level", ideal_json(l.level)}, {"cuspidal", l.cuspidal}, {"newforms", l.newforms}});
    j["aux_bound"] = r.aux_bound;
    ordered_json irr;
    irr["threshold"] = r.irreducibility.threshold;
    irr["cases"] = ordered_json::array();
    for (const IrreducibilityCase& c : r.irreducibility.cases)
        irr["cases"].push_back({{"id", c.id}, {"detail", c.detail}, {"bound", c.bound}, {"citation", c.citation}});
    j["irreducibility"] = irr;
    j["forms"] = ordered_json::array();
    for (const FormOutcome& f : r.forms) {
        ordered_json fj;
        fj["label"] = f.label;
        fj["level"] = ideal_json(f.level);
        fj["outcome"] = form_outcome_name(f.kind);
        fj["eliminated"] = f.eliminated;
        fj["cm_reason"] = f.cm_reason;
        fj["survivors"] = f.survivors;
        fj["skipped"] = f.skipped;
        fj["steps"] = ordered_json::array();
        for (const PrimeElimination& s : f.steps)
            fj["steps"].push_back({{"prime", s.prime.generator.coords()},
                                   {"norm", s.prime.norm},
                                   {"a_p", s.a_p},
                                   {"traces", s.full_2torsion_traces},
                                   {"bound", s.bound.get_str()},
                                   {"no_information", s.no_information},
                                   {"survivors", s.survivors}});
        j["forms"].push_back(std::move(fj));
    }
    j["surviving_obstructions"] = r.surviving_obstructions;
    j["final_threshold"] = r.final_threshold;
    j["all_eliminated"] = r.all_eliminated;
    j["conditional"] = r.conditional;
    j["conditionality"] = r.conditionality;
    j["small_primes"] = ordered_json::array();
    for (const SmallPrimeCitation& c : r.small_primes)
        j["small_primes"].push_back({{"p", c.p}, {"source", c.source}});
    j["statement"] = r.statement;
    return j.dump(2) + "\n";
}

EliminationReport report_from_json(const std::string& text)
{
    try {
        ordered_json j = ordered_json::parse(text);
        EliminationReport r;
        r.d = j.at("field").get<int>();
        QuadraticField K = QuadraticField::make(r.d);
        r.field_name = j.at("field_name").get<std::string>();
        r.provenance = j.at("provenance").get<std::vector<std::string>>();
        for (auto& x : j.at("predicted_levels"))
            r.predicted_levels.push_back(ideal_from_json(K, x));
        for (auto& x : j.at("character_conductors"))
            r.character_conductors.push_back(ideal_from_json(K, x));
        r.local_max_conductor_exponent = j.at("local_max_conductor_exponent").get<int>();
        for (auto& x : j.at("levels_checked"))
            r.levels_checked.push_back(
                {ideal_from_json(K, x.at("level")), x.at("cuspidal").get<int>(), x.at("newforms").get<int>()});
        r.aux_bound = j.at("aux_bound").get<std::int64_t>();
        r.irreducibility.threshold = j.at("irreducibility").at("threshold").get<std::int64_t>();
        for (auto& c : j.at("irreducibility").at("cases"))
            r.irreducibility.cases.push_back({c.at("id").get<std::string>(), c.at("detail").get<std::string>(),
                                              c.at("bound").get<std::int64_t>(),
                                              c.at("citation").get<std::string>()});
        for (auto& fj : j.at("forms")) {
            std::string kind = fj.at("outcome").get<std::string>();
            FormOutcomeKind k = kind == "eliminated_by_cm" ? FormOutcomeKind::eliminated_by_cm
                                : kind == "survivors"      ? FormOutcomeKind::survivors
                                : kind == "no_information" ? FormOutcomeKind::no_information
                                                           : throw Error(Errc::invalid_argument, "outcome " + kind);
            FormOutcome f{fj.at("label").get<std::string>(),
                          ideal_from_json(K, fj.at("level")),
                          k,
                          fj.at("cm_reason").get<std::string>(),
                          {},
                          fj.at("skipped").get<std::vector<std::string>>(),
                          fj.at("survivors").get<std::vector<std::int64_t>>(),
                          fj.at("eliminated").get<bool>()};
            for (auto& s : fj.at("steps")) {
                PrimeIdeal P = prime_ideal_of(K, element_from_coords(K, s.at("prime").get<std::string>()));
                f.steps.push_back({P, s.at("a_p").get<std::int64_t>(), s.at("traces").get<std::set<std::int64_t>>(),
                                   mpz_class(s.at("bound").get<std::string>()), s.at("no_information").get<bool>(),
                                   s.at("survivors").get<std::vector<std::int64_t>>()});
            }
            r.forms.push_back(std::move(f));
        }
        r.surviving_obstructions = j.at("surviving_obstructions").get<std::vector<std::int64_t>>();
        r.final_threshold = j.at("final_threshold").get<std::int64_t>();
        r.all_eliminated = j.at("all_eliminated").get<bool>();
        r.conditional = j.at("conditional").get<bool>();
        r.conditionality = j.at("conditionality").get<std::string>();
        for (auto& c : j.at("small_primes"))
            r.small_primes.push_back({c.at("p").get<std::int64_t>(), c.at("source").get<std::string>()});
        r.statement = j.at("statement").get<std::string>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::malformed_record, std::string("bad report document: ") + e.what());
    }
}

} // namespace fermatk
