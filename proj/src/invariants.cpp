#include "gentle/invariants.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gentle {

namespace {

long long gcd_of(const std::vector<long long>& values) {
    long long g = 0;
    for (long long v : values) g = std::gcd(g, v < 0 ? -v : v);
    return g;
}

int mod4(long long v) { return static_cast<int>(((v % 4) + 4) % 4); }

nlohmann::json opt_json(const std::optional<int>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json opt_json(const std::optional<long long>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

} // namespace

std::vector<long long> InvariantRecord::windings() const {
    std::vector<long long> w;
    for (const auto& [marked, winding] : boundary) w.push_back(winding);
    w.insert(w.end(), basis_windings.begin(), basis_windings.end());
    return w;
}

std::string InvariantRecord::to_json() const {
    nlohmann::json j;
    j["genus"] = genus;
    j["boundaries"] = nlohmann::json::array();
    for (const auto& [marked, winding] : boundary)
        j["boundaries"].push_back({{"marked", marked}, {"winding", winding}});
    j["sigma"] = opt_json(sigma);
    j["atilde"] = opt_json(atilde);
    j["arf"] = opt_json(arf);
    j["W"] = windings();
    return j.dump();
}

std::string InvariantRecord::to_text() const {
    std::ostringstream out;
    out << "genus " << genus << ", boundaries " << boundary_count << "\n";
    for (size_t i = 0; i < boundary.size(); ++i)
        out << "  boundary " << i << ": marked " << boundary[i].first << ", winding "
            << boundary[i].second << "\n";
    out << "  basis windings:";
    for (long long w : basis_windings) out << " " << w;
    out << "\n";
    out << "  sigma " << (sigma ? std::to_string(*sigma) : "-") << ", atilde "
        << (atilde ? std::to_string(*atilde) : "-") << ", arf "
        << (arf ? std::to_string(*arf) : "-") << "\n";
    return out.str();
}

namespace {

InvariantRecord record_from_model(const SurfaceModel& model, int max_len, uint64_t seed) {
    InvariantRecord rec;
    rec.genus = model.genus;
    rec.boundary_count = static_cast<int>(model.boundaries.size());
    for (const auto& c : model.boundaries) rec.boundary.emplace_back(c.marked, c.winding);

    if (model.genus >= 1) {
        auto basis = find_symplectic_basis(model, max_len, seed);
        for (const auto& [ws, wt] : basis.windings) rec.basis_windings.push_back(ws);
        for (const auto& [ws, wt] : basis.windings) rec.basis_windings.push_back(wt);
    }
    if (rec.genus > 1) {
        rec.sigma = sigma(rec);
        bool all_two = true;
        for (const auto& [marked, w] : rec.boundary)
            if (mod4(w) != 2) all_two = false;
        if (*rec.sigma == 0 && all_two) rec.arf = arf(rec);
    } else if (rec.genus == 1) {
        rec.atilde = atilde(rec);
    }
    return rec;
}

} // namespace

InvariantRecord compute_invariants(const GentleAlgebra& alg, int max_len, uint64_t seed) {
    if (!check_proper(alg)) fail(ErrorCode::NotProper, "invariants require a proper algebra");
    if (!check_smooth(alg)) fail(ErrorCode::NotSmooth, "invariants require a smooth algebra");
    SurfaceModel model = build_surface(alg);
    return record_from_model(model, max_len, seed);
}

int sigma(const InvariantRecord& record) {
    if (record.genus <= 1) fail(ErrorCode::GenusOutOfRange, "sigma is defined for genus > 1");
    for (long long w : record.windings())
        if (w % 2 != 0) return 1;
    return 0;
}

long long atilde(const InvariantRecord& record) {
    if (record.genus != 1) fail(ErrorCode::GenusOutOfRange, "atilde is defined for genus 1");
    std::vector<long long> values;
    for (const auto& [marked, w] : record.boundary) values.push_back(w + 2);
    values.insert(values.end(), record.basis_windings.begin(), record.basis_windings.end());
    return gcd_of(values);
}

int arf(const InvariantRecord& record) {
    if (record.genus <= 1) fail(ErrorCode::ArfUndefined, "arf is defined for genus > 1");
    for (long long w : record.windings())
        if (w % 2 != 0) fail(ErrorCode::ArfUndefined, "arf needs every winding even");
    for (const auto& [marked, w] : record.boundary)
        if (mod4(w) != 2) fail(ErrorCode::ArfUndefined, "arf needs boundary windings 2 mod 4");
    const int g = record.genus;
    long long total = 0;
    for (int i = 0; i < g; ++i) {
        long long ws = record.basis_windings[i];
        long long wt = record.basis_windings[g + i];
        total += (ws / 2 + 1) * (wt / 2 + 1);
    }
    return static_cast<int>(((total % 2) + 2) % 2);
}

// ---------------------------------------------------------------------------
// Derived equivalence
// ---------------------------------------------------------------------------

namespace {

std::string pairs_to_string(std::vector<std::pair<int, long long>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::ostringstream out;
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (i) out << " ";
        out << "(" << pairs[i].first << "," << pairs[i].second << ")";
    }
    return out.str();
}

} // namespace

std::string EquivalenceCertificate::to_text() const {
    std::ostringstream out;
    out << (equivalent ? "true" : "false") << "\n";
    for (const auto& c : checks)
        out << "  " << c.name << ": " << c.lhs << " vs " << c.rhs << " -> "
            << (c.matched ? "match" : "differ") << "\n";
    return out.str();
}

std::string EquivalenceCertificate::to_json() const {
    nlohmann::json j;
    j["equivalent"] = equivalent;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
        j["checks"].push_back(
            {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"matched", c.matched}});
    return j.dump();
}

EquivalenceCertificate derived_equivalent(const GentleAlgebra& a, const GentleAlgebra& b,
                                          int max_len, uint64_t seed) {
    InvariantRecord ra = compute_invariants(a, max_len, seed);
    InvariantRecord rb = compute_invariants(b, max_len, seed);

    EquivalenceCertificate cert;
    auto check = [&](const std::string& name, const std::string& lhs, const std::string& rhs) {
        cert.checks.push_back({name, lhs, rhs, lhs == rhs});
        return lhs == rhs;
    };
    bool ok = check("genus", std::to_string(ra.genus), std::to_string(rb.genus));
    ok &= check("boundary count", std::to_string(ra.boundary_count), std::to_string(rb.boundary_count));
    ok &= check("boundary (marked, winding) multiset", pairs_to_string(ra.boundary),
                pairs_to_string(rb.boundary));
    if (ok && ra.genus == 1) {
        ok &= check("atilde", std::to_string(*ra.atilde), std::to_string(*rb.atilde));
    } else if (ok && ra.genus > 1) {
        bool star = false;
        std::string why_a, why_b;
        if (*ra.sigma == 1 && *rb.sigma == 1) {
            star = true;
            why_a = why_b = "sigma=1";
        } else if (*ra.sigma == 0 && *rb.sigma == 0) {
            bool any0 = false, all2 = true;
            for (const auto& [marked, w] : ra.boundary) {
                if (mod4(w) == 0) any0 = true;
                if (mod4(w) != 2) all2 = false;
            }
            if (any0) {
                star = true;
                why_a = why_b = "sigma=0, a boundary winding is 0 mod 4";
            } else if (all2) {
                star = (*ra.arf == *rb.arf);
                why_a = "sigma=0, arf=" + std::to_string(*ra.arf);
                why_b = "sigma=0, arf=" + std::to_string(*rb.arf);
            }
        } else {
            why_a = "sigma=" + std::to_string(*ra.sigma);
            why_b = "sigma=" + std::to_string(*rb.sigma);
        }
        cert.checks.push_back({"line field class", why_a, why_b, star});
        ok &= star;
    }
    cert.equivalent = ok;
    return cert;
}

// ---------------------------------------------------------------------------
// Silting existence and partial silting
// ---------------------------------------------------------------------------

namespace {

bool record_is_the_siltingless_class(const InvariantRecord& rec) {
    return rec.genus == 1 && rec.boundary_count == 1 && rec.boundary.size() == 1 &&
           rec.boundary[0] == std::make_pair(1, -2LL) && rec.atilde && *rec.atilde == 0;
}

// Silting existence for one connected algebra; nullopt when undecidable.
std::optional<bool> component_has_silting(const GentleAlgebra& alg, int max_len, uint64_t seed,
                                          ComponentReport* report) {
    if (report) {
        std::ostringstream names;
        for (int v = 0; v < alg.vertex_count(); ++v) {
            if (v) names << ",";
            names << alg.vertex_name(v);
        }
        report->vertices = names.str();
        report->an_form = an_form_of(alg);
    }
    if (alg.vertex_count() == 1 && alg.arrow_count() == 0) {
        if (report) report->kind = "point";
        return true;
    }
    if (alg.vertex_count() == 1 && alg.arrow_count() == 1 && alg.relations().empty()) {
        // A free loop generator: non-positive degree makes the algebra itself
        // silting; degree one is the classical counterexample.
        if (report) report->kind = "free-loop";
        long long d = alg.arrow(0).deg;
        if (d <= 0) return true;
        if (d == 1) return false;
        return std::nullopt;
    }
    bool non_positive = true;
    for (int a = 0; a < alg.arrow_count(); ++a)
        if (alg.arrow(a).deg > 0) non_positive = false;
    if (check_proper(alg) && check_smooth(alg) && !alg.has_loops()) {
        if (report) report->kind = "surface";
        InvariantRecord rec = compute_invariants(alg, max_len, seed);
        return !record_is_the_siltingless_class(rec);
    }
    if (non_positive) {
        // A non-positively graded algebra is itself a silting object.
        if (report) report->kind = "non-positive";
        return true;
    }
    if (report) report->kind = "unsupported";
    return std::nullopt;
}

} // namespace

bool has_silting(const GentleAlgebra& alg, int max_len, uint64_t seed) {
    if (!check_proper(alg)) fail(ErrorCode::NotProper, "silting decision requires a proper algebra");
    if (!check_smooth(alg)) fail(ErrorCode::NotSmooth, "silting decision requires a smooth algebra");
    for (const auto& comp : connected_components(alg)) {
        auto s = component_has_silting(comp, max_len, seed, nullptr);
        if (!s)
            fail(ErrorCode::InternalInconsistency, "undecidable component in a smooth proper algebra");
        if (!*s) return false;
    }
    return true;
}

const char* verdict_name(PartialSiltingVerdict verdict) {
    switch (verdict) {
        case PartialSiltingVerdict::NotPreSilting: return "NotPreSilting";
        case PartialSiltingVerdict::NotPartialSilting: return "NotPartialSilting";
        case PartialSiltingVerdict::PartialSilting: return "PartialSilting";
        case PartialSiltingVerdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string PartialSiltingReport::to_text() const {
    std::ostringstream out;
    out << "presilting: " << (presilting ? "true" : "false") << "\n";
    out << "verdict: " << verdict_name(verdict) << "\n";
    for (const auto& c : reduction) {
        out << "  component {" << c.vertices << "}: " << c.kind;
        if (c.an_form) out << ", form " << print_an_form(*c.an_form);
        if (c.silting) out << ", silting " << (*c.silting ? "true" : "false");
        else out << ", silting undecided";
        out << "\n";
    }
    if (!note.empty()) out << "note: " << note << "\n";
    return out.str();
}

std::string PartialSiltingReport::to_json() const {
    nlohmann::json j;
    j["presilting"] = presilting;
    j["verdict"] = verdict_name(verdict);
    j["reduction"] = nlohmann::json::array();
    for (const auto& c : reduction) {
        nlohmann::json cj;
        cj["vertices"] = c.vertices;
        cj["kind"] = c.kind;
        cj["an_form"] = c.an_form ? nlohmann::json(print_an_form(*c.an_form)) : nlohmann::json(nullptr);
        cj["silting"] = c.silting ? nlohmann::json(*c.silting) : nlohmann::json(nullptr);
        j["reduction"].push_back(cj);
    }
    j["note"] = note;
    return j.dump();
}

PartialSiltingReport partial_silting_analysis(const GentleAlgebra& alg, const std::vector<int>& kept,
                                              int max_len, uint64_t seed) {
    if (!check_proper(alg)) fail(ErrorCode::NotProper, "analysis requires a proper algebra");
    if (!check_smooth(alg)) fail(ErrorCode::NotSmooth, "analysis requires a smooth algebra");

    PartialSiltingReport report;
    report.presilting = is_presilting_idempotent(alg, kept);
    if (!report.presilting) {
        report.verdict = PartialSiltingVerdict::NotPreSilting;
        report.note = "the corner algebra has positive-degree entries";
        return report;
    }

    const int complement = alg.vertex_count() - static_cast<int>(kept.size());
    if (complement == 0) {
        // e = 1: the summand is the whole algebra, which generates.
        report.verdict = PartialSiltingVerdict::PartialSilting;
        report.note = "eA is the algebra itself";
        return report;
    }
    GentleAlgebra reduced = reduce_idempotent(alg, kept);
    auto components = connected_components(reduced);
    for (const auto& comp : components) {
        ComponentReport cr;
        cr.silting = component_has_silting(comp, max_len, seed, &cr);
        report.reduction.push_back(std::move(cr));
    }

    // An almost complete pre-silting object always completes: the reduction is
    // a point or a free loop of non-positive degree.
    if (complement == 1) {
        report.verdict = PartialSiltingVerdict::PartialSilting;
        report.note = "almost complete pre-silting objects are partial silting";
        return report;
    }

    // The reduction argument needs the corner algebra to be smooth.
    bool corner_smooth = false;
    try {
        GentleAlgebra corner = validate_gentle(corner_presentation(alg, kept));
        corner_smooth = check_smooth(corner);
    } catch (const DomainError&) {
        corner_smooth = false;
    }
    if (!corner_smooth) {
        report.verdict = PartialSiltingVerdict::Unknown;
        report.note = "the corner algebra is not smooth; the reduction criterion does not apply";
        return report;
    }

    bool any_false = false, any_unknown = false;
    for (const auto& c : report.reduction) {
        if (!c.silting) any_unknown = true;
        else if (!*c.silting) any_false = true;
    }
    if (any_false) report.verdict = PartialSiltingVerdict::NotPartialSilting;
    else if (any_unknown) report.verdict = PartialSiltingVerdict::Unknown;
    else report.verdict = PartialSiltingVerdict::PartialSilting;
    return report;
}

} // namespace gentle
