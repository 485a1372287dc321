#include "gentle/invariants.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

struct Options {
    std::string format = "text";
    int max_cycle_len = 0;
    uint64_t seed = 0;
    bool json() const { return format == "json"; }
};

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) gentle::fail(gentle::ErrorCode::ParseError, "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

gentle::GentleAlgebra load_algebra(const std::string& path) {
    return gentle::validate_gentle(gentle::parse_presentation_auto(read_input(path)));
}

std::vector<int> resolve_vertices(const gentle::GentleAlgebra& alg, const std::string& list) {
    std::vector<int> out;
    std::istringstream in(list);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (name.empty()) continue;
        int v = alg.quiver().vertex_index(name);
        if (v < 0) gentle::fail(gentle::ErrorCode::ParseError, "unknown vertex '" + name + "'");
        out.push_back(v);
    }
    return out;
}

std::string error_output(const gentle::DomainError& e, bool json) {
    if (json) {
        nlohmann::json j;
        j["error"] = {{"code", gentle::error_code_name(e.code())}, {"message", e.what()}};
        return j.dump() + "\n";
    }
    return std::string("error: ") + gentle::error_code_name(e.code()) + ": " + e.what() + "\n";
}

std::string an_output(const gentle::AnForm& form, const Options& opt, bool with_presentation) {
    if (opt.json()) {
        nlohmann::json j;
        j["pairs"] = nlohmann::json::array();
        for (const auto& [a, b] : form.pairs) j["pairs"].push_back({a, b});
        return j.dump() + "\n";
    }
    std::string out = "# an-form: " + gentle::print_an_form(form) + "\n";
    if (with_presentation) out += gentle::print_presentation_text(gentle::make_an(form).presentation());
    return out;
}

gentle::AnForm form_from_input(const std::string& pairs, const std::string& file) {
    if (!pairs.empty()) return gentle::parse_an_form(pairs);
    auto alg = load_algebra(file);
    auto form = gentle::an_form_of(alg);
    if (!form)
        gentle::fail(gentle::ErrorCode::ParseError,
                     "the input algebra is not of the chain form (a1,b1;...)");
    return *form;
}

// Per-subcommand workers, each returning the full output text.

std::string run_validate(const std::string& file, const Options& opt) {
    auto alg = load_algebra(file);
    bool proper = gentle::check_proper(alg);
    bool smooth = gentle::check_smooth(alg);
    if (opt.json()) {
        nlohmann::json j;
        j["ok"] = true;
        j["vertices"] = alg.vertex_count();
        j["arrows"] = alg.arrow_count();
        j["relations"] = alg.relations().size();
        j["proper"] = proper;
        j["smooth"] = smooth;
        return j.dump() + "\n";
    }
    std::ostringstream out;
    out << "valid gentle presentation: " << alg.vertex_count() << " vertices, " << alg.arrow_count()
        << " arrows, " << alg.relations().size() << " relations; proper=" << (proper ? "yes" : "no")
        << ", smooth=" << (smooth ? "yes" : "no") << "\n";
    return out.str();
}

std::string run_invariants(const std::string& file, const Options& opt) {
    auto rec = gentle::compute_invariants(load_algebra(file), opt.max_cycle_len, opt.seed);
    return opt.json() ? rec.to_json() + "\n" : rec.to_text();
}

std::string run_silting(const std::string& file, const Options& opt) {
    bool s = gentle::has_silting(load_algebra(file), opt.max_cycle_len, opt.seed);
    if (opt.json()) {
        nlohmann::json j;
        j["silting"] = s;
        return j.dump() + "\n";
    }
    return s ? "true\n" : "false\n";
}

std::string run_presilting(const std::string& file, const std::string& keep, const Options& opt) {
    auto alg = load_algebra(file);
    auto report =
        gentle::partial_silting_analysis(alg, resolve_vertices(alg, keep), opt.max_cycle_len, opt.seed);
    return opt.json() ? report.to_json() + "\n" : report.to_text();
}

std::string run_reduce(const std::string& file, const std::string& drop, const Options& opt) {
    auto alg = load_algebra(file);
    auto reduced = gentle::reduce_idempotent(alg, resolve_vertices(alg, drop));
    return opt.json() ? gentle::print_presentation_json(reduced.presentation())
                      : gentle::print_presentation_text(reduced.presentation());
}

std::string run_emit_dot(const std::string& file, const Options&) {
    return gentle::emit_dot(gentle::build_surface(load_algebra(file)));
}

std::string run_equiv(const std::string& file_a, const std::string& file_b, const Options& opt) {
    auto cert =
        gentle::derived_equivalent(load_algebra(file_a), load_algebra(file_b), opt.max_cycle_len, opt.seed);
    return opt.json() ? cert.to_json() + "\n" : cert.to_text();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gentle-topo: surface models, line-field invariants and silting decisions "
                 "for graded gentle algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    std::string batch;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* len_opt = app.add_option("--max-cycle-len", opt.max_cycle_len,
                                   "Cap on basis curve length (default: number of arcs)");
    app.add_option("--seed", opt.seed, "Permutation seed for the basis search");
    app.add_option("--batch", batch, "File with one input path per line");

    std::string file, file_b, keep, drop, pairs;

    auto* validate = app.add_subcommand("validate", "Check the gentleness conditions");
    validate->add_option("file", file, "Presentation file (default: stdin)");
    auto* invariants = app.add_subcommand("invariants", "Compute the derived invariant record");
    invariants->add_option("file", file);
    auto* equiv = app.add_subcommand("equiv", "Decide derived equivalence of two algebras");
    equiv->add_option("fileA", file)->required();
    equiv->add_option("fileB", file_b)->required();
    auto* silting = app.add_subcommand("silting", "Decide whether a silting object exists");
    silting->add_option("file", file);
    auto* presilting = app.add_subcommand("presilting", "Analyse the idempotent summand eA");
    presilting->add_option("--keep", keep, "Vertices spanning eA, comma separated")->required();
    presilting->add_option("file", file);
    auto* reduce = app.add_subcommand("reduce", "Print the reduction at an idempotent");
    reduce->add_option("--drop", drop, "Vertices to drop, comma separated")->required();
    reduce->add_option("file", file);
    auto* an = app.add_subcommand("an", "Print the chain-form algebra for given pairs");
    an->add_option("--pairs", pairs, "a1,b1;a2,b2;...")->required();
    auto* move = app.add_subcommand("move", "Apply the derived-equivalence rewrite move");
    move->add_option("--pairs", pairs);
    move->add_option("file", file);
    auto* koszul = app.add_subcommand("koszul", "Apply the length-two Koszul dual");
    koszul->add_option("--pairs", pairs);
    koszul->add_option("file", file);
    auto* emit_dot = app.add_subcommand("emit-dot", "Render the model as DOT graphs");
    emit_dot->add_option("file", file);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (len_opt->count() == 0) {
        if (const char* env = std::getenv("GENTLE_TOPO_MAX_CYCLE_LEN")) opt.max_cycle_len = std::atoi(env);
    }

    auto dispatch_single = [&](const std::string& input) -> std::string {
        if (validate->parsed()) return run_validate(input, opt);
        if (invariants->parsed()) return run_invariants(input, opt);
        if (silting->parsed()) return run_silting(input, opt);
        if (presilting->parsed()) return run_presilting(input, keep, opt);
        if (reduce->parsed()) return run_reduce(input, drop, opt);
        if (emit_dot->parsed()) return run_emit_dot(input, opt);
        if (move->parsed()) return an_output(gentle::an_rewrite_move(form_from_input(pairs, input)), opt, true);
        if (koszul->parsed()) return an_output(gentle::koszul_dual_a2(form_from_input(pairs, input)), opt, true);
        gentle::fail(gentle::ErrorCode::InternalInconsistency, "unhandled subcommand");
    };

    try {
        if (equiv->parsed()) {
            std::cout << run_equiv(file, file_b, opt);
            return 0;
        }
        if (an->parsed()) {
            auto form = gentle::parse_an_form(pairs);
            if (opt.json())
                std::cout << gentle::print_presentation_json(gentle::make_an(form).presentation());
            else
                std::cout << "# an-form: " << gentle::print_an_form(form) << "\n"
                          << gentle::print_presentation_text(gentle::make_an(form).presentation());
            return 0;
        }
        if (!batch.empty()) {
            std::ifstream list(batch);
            if (!list) gentle::fail(gentle::ErrorCode::ParseError, "cannot open batch list '" + batch + "'");
            std::vector<std::string> inputs;
            std::string line;
            while (std::getline(list, line))
                if (!line.empty()) inputs.push_back(line);
            std::vector<std::future<std::pair<bool, std::string>>> jobs;
            for (const auto& input : inputs)
                jobs.push_back(std::async(std::launch::async, [&, input] {
                    try {
                        return std::make_pair(true, dispatch_single(input));
                    } catch (const gentle::DomainError& e) {
                        return std::make_pair(false, error_output(e, opt.json()));
                    }
                }));
            bool all_ok = true;
            for (size_t i = 0; i < inputs.size(); ++i) {
                auto [ok, text] = jobs[i].get();
                all_ok &= ok;
                std::cout << "== " << inputs[i] << "\n" << text;
            }
            return all_ok ? 0 : 1;
        }
        std::cout << dispatch_single(file);
        return 0;
    } catch (const gentle::DomainError& e) {
        std::cout << error_output(e, opt.json());
        return 1;
    }
}
