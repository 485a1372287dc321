#include "gentle/algebra.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace gentle {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::NotGentle: return "NotGentle";
        case ErrorCode::RelationNotComposable: return "RelationNotComposable";
        case ErrorCode::NotProper: return "NotProper";
        case ErrorCode::NotSmooth: return "NotSmooth";
        case ErrorCode::UnsupportedLoop: return "UnsupportedLoop";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::InvalidIdempotent: return "InvalidIdempotent";
        case ErrorCode::NotAnForm2: return "NotAnForm2";
        case ErrorCode::NotAnFormGe2: return "NotAnFormGe2";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InconsistentWalk: return "InconsistentWalk";
        case ErrorCode::NotEmbedded: return "NotEmbedded";
        case ErrorCode::SymplecticBasisNotFound: return "SymplecticBasisNotFound";
        case ErrorCode::GenusOutOfRange: return "GenusOutOfRange";
        case ErrorCode::ArfUndefined: return "ArfUndefined";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    }
    return "UnknownError";
}

int GradedQuiver::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    return -1;
}

int GradedQuiver::arrow_index(const std::string& id) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].id == id) return static_cast<int>(i);
    return -1;
}

// ---------------------------------------------------------------------------
// Parsing / printing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

bool parse_int(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stoll(tok, &pos);
    } catch (...) {
        return false;
    }
    return pos == tok.size();
}

} // namespace

Presentation parse_presentation_text(std::istream& in) {
    Presentation pres;
    std::unordered_map<std::string, int> vmap, amap;
    std::set<std::pair<int, int>> seen_rel;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            std::string name, extra;
            if (!(ls >> name)) parse_fail(lineno, "vertex declaration needs a name");
            if (ls >> extra) parse_fail(lineno, "unexpected token '" + extra + "' after vertex name");
            if (vmap.count(name)) parse_fail(lineno, "duplicate vertex id '" + name + "'");
            vmap[name] = static_cast<int>(pres.quiver.vertices.size());
            pres.quiver.vertices.push_back(name);
        } else if (kw == "arrow") {
            std::string id, src, tgt, deg, extra;
            if (!(ls >> id >> src >> tgt >> deg))
                parse_fail(lineno, "arrow declaration needs: arrow <id> <src> <tgt> <deg>");
            if (ls >> extra) parse_fail(lineno, "unexpected token '" + extra + "' after arrow degree");
            if (amap.count(id)) parse_fail(lineno, "duplicate arrow id '" + id + "'");
            if (!vmap.count(src)) parse_fail(lineno, "unknown source vertex '" + src + "'");
            if (!vmap.count(tgt)) parse_fail(lineno, "unknown target vertex '" + tgt + "'");
            long long d = 0;
            if (!parse_int(deg, d)) parse_fail(lineno, "bad degree '" + deg + "'");
            amap[id] = static_cast<int>(pres.quiver.arrows.size());
            pres.quiver.arrows.push_back({id, vmap[src], vmap[tgt], d});
        } else if (kw == "rel") {
            std::string a, b, extra;
            if (!(ls >> a >> b)) parse_fail(lineno, "relation needs two arrow ids");
            if (ls >> extra) parse_fail(lineno, "unexpected token '" + extra + "' after relation");
            if (!amap.count(a)) parse_fail(lineno, "unknown arrow '" + a + "' in relation");
            if (!amap.count(b)) parse_fail(lineno, "unknown arrow '" + b + "' in relation");
            auto r = std::make_pair(amap[a], amap[b]);
            if (seen_rel.insert(r).second) pres.relations.push_back(r);
        } else {
            parse_fail(lineno, "unknown declaration '" + kw + "'");
        }
    }
    return pres;
}

Presentation parse_presentation_text(const std::string& text) {
    std::istringstream in(text);
    return parse_presentation_text(in);
}

Presentation parse_presentation_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    Presentation pres;
    std::unordered_map<std::string, int> vmap, amap;
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
        fail(ErrorCode::ParseError, "expected object with 'vertices' and 'arrows'");
    for (size_t i = 0; i < j["vertices"].size(); ++i) {
        const auto& v = j["vertices"][i];
        if (!v.is_string()) fail(ErrorCode::ParseError, "vertices[" + std::to_string(i) + "]: expected string");
        std::string name = v.get<std::string>();
        if (vmap.count(name)) fail(ErrorCode::ParseError, "vertices[" + std::to_string(i) + "]: duplicate vertex id '" + name + "'");
        vmap[name] = static_cast<int>(pres.quiver.vertices.size());
        pres.quiver.vertices.push_back(name);
    }
    for (size_t i = 0; i < j["arrows"].size(); ++i) {
        const auto& a = j["arrows"][i];
        std::string at = "arrows[" + std::to_string(i) + "]";
        if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("tgt") || !a.contains("deg"))
            fail(ErrorCode::ParseError, at + ": expected {id, src, tgt, deg}");
        std::string id = a["id"].get<std::string>();
        std::string src = a["src"].get<std::string>();
        std::string tgt = a["tgt"].get<std::string>();
        if (!a["deg"].is_number_integer()) fail(ErrorCode::ParseError, at + ": 'deg' must be an integer");
        if (amap.count(id)) fail(ErrorCode::ParseError, at + ": duplicate arrow id '" + id + "'");
        if (!vmap.count(src)) fail(ErrorCode::ParseError, at + ": unknown source vertex '" + src + "'");
        if (!vmap.count(tgt)) fail(ErrorCode::ParseError, at + ": unknown target vertex '" + tgt + "'");
        amap[id] = static_cast<int>(pres.quiver.arrows.size());
        pres.quiver.arrows.push_back({id, vmap[src], vmap[tgt], a["deg"].get<long long>()});
    }
    std::set<std::pair<int, int>> seen_rel;
    if (j.contains("relations")) {
        for (size_t i = 0; i < j["relations"].size(); ++i) {
            const auto& r = j["relations"][i];
            std::string at = "relations[" + std::to_string(i) + "]";
            if (!r.is_array() || r.size() != 2) fail(ErrorCode::ParseError, at + ": expected [a, b]");
            std::string a = r[0].get<std::string>(), b = r[1].get<std::string>();
            if (!amap.count(a)) fail(ErrorCode::ParseError, at + ": unknown arrow '" + a + "'");
            if (!amap.count(b)) fail(ErrorCode::ParseError, at + ": unknown arrow '" + b + "'");
            auto rel = std::make_pair(amap[a], amap[b]);
            if (seen_rel.insert(rel).second) pres.relations.push_back(rel);
        }
    }
    return pres;
}

Presentation parse_presentation_auto(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_presentation_json(text);
        break;
    }
    return parse_presentation_text(text);
}

std::string print_presentation_text(const Presentation& pres) {
    std::ostringstream out;
    for (const auto& v : pres.quiver.vertices) out << "vertex " << v << "\n";
    for (const auto& a : pres.quiver.arrows)
        out << "arrow " << a.id << " " << pres.quiver.vertices[a.src] << " "
            << pres.quiver.vertices[a.tgt] << " " << a.deg << "\n";
    for (const auto& [a, b] : pres.relations)
        out << "rel " << pres.quiver.arrows[a].id << " " << pres.quiver.arrows[b].id << "\n";
    return out.str();
}

std::string print_presentation_json(const Presentation& pres) {
    nlohmann::json j;
    j["vertices"] = pres.quiver.vertices;
    j["arrows"] = nlohmann::json::array();
    for (const auto& a : pres.quiver.arrows)
        j["arrows"].push_back({{"id", a.id},
                               {"src", pres.quiver.vertices[a.src]},
                               {"tgt", pres.quiver.vertices[a.tgt]},
                               {"deg", a.deg}});
    j["relations"] = nlohmann::json::array();
    for (const auto& [a, b] : pres.relations)
        j["relations"].push_back({pres.quiver.arrows[a].id, pres.quiver.arrows[b].id});
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

bool GentleAlgebra::has_relation(int a, int b) const {
    return rel_succ_[a] == b && b >= 0;
}

bool GentleAlgebra::has_loops() const {
    for (const auto& a : pres_.quiver.arrows)
        if (a.src == a.tgt) return true;
    return false;
}

GentleAlgebra validate_gentle(const Presentation& pres) {
    const auto& q = pres.quiver;
    const int nv = static_cast<int>(q.vertices.size());
    const int na = static_cast<int>(q.arrows.size());

    GentleAlgebra alg;
    alg.pres_ = pres;
    std::sort(alg.pres_.relations.begin(), alg.pres_.relations.end());
    alg.pres_.relations.erase(std::unique(alg.pres_.relations.begin(), alg.pres_.relations.end()),
                              alg.pres_.relations.end());

    alg.out_.assign(nv, {});
    alg.in_.assign(nv, {});
    for (int a = 0; a < na; ++a) {
        alg.out_[q.arrows[a].src].push_back(a);
        alg.in_[q.arrows[a].tgt].push_back(a);
    }
    for (int v = 0; v < nv; ++v) {
        if (alg.out_[v].size() > 2)
            fail(ErrorCode::NotGentle, "vertex '" + q.vertices[v] + "' is the source of more than two arrows");
        if (alg.in_[v].size() > 2)
            fail(ErrorCode::NotGentle, "vertex '" + q.vertices[v] + "' is the target of more than two arrows");
    }

    alg.rel_succ_.assign(na, -1);
    alg.rel_pred_.assign(na, -1);
    for (const auto& [a, b] : alg.pres_.relations) {
        if (q.arrows[a].tgt != q.arrows[b].src)
            fail(ErrorCode::RelationNotComposable,
                 "relation " + q.arrows[a].id + "*" + q.arrows[b].id + " is not a composable path");
        if (alg.rel_succ_[a] != -1)
            fail(ErrorCode::NotGentle, "arrow '" + q.arrows[a].id + "' has two relation successors");
        if (alg.rel_pred_[b] != -1)
            fail(ErrorCode::NotGentle, "arrow '" + q.arrows[b].id + "' has two relation predecessors");
        alg.rel_succ_[a] = b;
        alg.rel_pred_[b] = a;
    }

    alg.comp_succ_.assign(na, -1);
    alg.comp_pred_.assign(na, -1);
    for (int a = 0; a < na; ++a) {
        for (int b : alg.out_[q.arrows[a].tgt]) {
            if (alg.rel_succ_[a] == b) continue;
            if (alg.comp_succ_[a] != -1)
                fail(ErrorCode::NotGentle, "arrow '" + q.arrows[a].id + "' has two nonzero compositions on the right");
            alg.comp_succ_[a] = b;
        }
        for (int b : alg.in_[q.arrows[a].src]) {
            if (alg.rel_pred_[a] == b) continue;
            if (alg.comp_pred_[a] != -1)
                fail(ErrorCode::NotGentle, "arrow '" + q.arrows[a].id + "' has two nonzero compositions on the left");
            alg.comp_pred_[a] = b;
        }
    }
    return alg;
}

// ---------------------------------------------------------------------------
// Properness / smoothness
// ---------------------------------------------------------------------------

namespace {

// Cycle detection in a functional graph given by succ(arrow) (-1 = none).
bool successor_graph_has_cycle(int n, const std::vector<int>& succ) {
    std::vector<int> state(n, 0); // 0 unseen, 1 on stack, 2 done
    for (int start = 0; start < n; ++start) {
        if (state[start]) continue;
        int a = start;
        std::vector<int> chain;
        while (a != -1 && state[a] == 0) {
            state[a] = 1;
            chain.push_back(a);
            a = succ[a];
        }
        if (a != -1 && state[a] == 1) return true;
        for (int c : chain) state[c] = 2;
    }
    return false;
}

} // namespace

bool check_proper(const GentleAlgebra& alg) {
    std::vector<int> succ(alg.arrow_count());
    for (int a = 0; a < alg.arrow_count(); ++a) succ[a] = alg.comp_succ(a);
    return !successor_graph_has_cycle(alg.arrow_count(), succ);
}

bool check_smooth(const GentleAlgebra& alg) {
    std::vector<int> succ(alg.arrow_count());
    for (int a = 0; a < alg.arrow_count(); ++a) succ[a] = alg.rel_succ(a);
    return !successor_graph_has_cycle(alg.arrow_count(), succ);
}

// ---------------------------------------------------------------------------
// Path basis and corner data
// ---------------------------------------------------------------------------

std::vector<PathBasisEntry> path_basis(const GentleAlgebra& alg) {
    if (!check_proper(alg)) fail(ErrorCode::NotProper, "path basis is infinite: algebra is not proper");
    std::vector<PathBasisEntry> basis;
    for (int v = 0; v < alg.vertex_count(); ++v) {
        PathBasisEntry e;
        e.source = v;
        e.target = v;
        basis.push_back(e);
    }
    // Every nonzero path is a prefix of the unique maximal chain from its
    // first arrow, so enumeration is linear in the output.
    for (int a0 = 0; a0 < alg.arrow_count(); ++a0) {
        PathBasisEntry e;
        e.source = alg.arrow(a0).src;
        int a = a0;
        while (a != -1) {
            e.arrows.push_back(a);
            e.degree += alg.arrow(a).deg;
            e.target = alg.arrow(a).tgt;
            basis.push_back(e);
            a = alg.comp_succ(a);
        }
    }
    return basis;
}

std::map<long long, int> corner_algebra(const GentleAlgebra& alg, const std::vector<int>& kept) {
    std::vector<char> in_kept(alg.vertex_count(), 0);
    for (int v : kept) {
        if (v < 0 || v >= alg.vertex_count()) fail(ErrorCode::IndexOutOfRange, "vertex index out of range");
        in_kept[v] = 1;
    }
    std::map<long long, int> dims;
    for (const auto& p : path_basis(alg))
        if (in_kept[p.source] && in_kept[p.target]) dims[p.degree]++;
    return dims;
}

bool is_presilting_idempotent(const GentleAlgebra& alg, const std::vector<int>& kept) {
    auto dims = corner_algebra(alg, kept);
    for (const auto& [deg, dim] : dims)
        if (deg > 0 && dim > 0) return false;
    return true;
}

Presentation corner_presentation(const GentleAlgebra& alg, const std::vector<int>& kept) {
    std::vector<char> in_kept(alg.vertex_count(), 0);
    for (int v : kept) in_kept[v] = 1;

    Presentation pres;
    std::vector<int> vmap(alg.vertex_count(), -1);
    for (int v = 0; v < alg.vertex_count(); ++v) {
        if (!in_kept[v]) continue;
        vmap[v] = static_cast<int>(pres.quiver.vertices.size());
        pres.quiver.vertices.push_back(alg.vertex_name(v));
    }

    // Generators: relation-avoiding paths between kept vertices with all
    // interior vertices dropped. The first arrow determines the path.
    struct Gen { std::vector<int> arrows; };
    std::vector<Gen> gens;
    std::vector<int> gen_of_first(alg.arrow_count(), -1), gen_of_last(alg.arrow_count(), -1);
    for (int a0 = 0; a0 < alg.arrow_count(); ++a0) {
        if (!in_kept[alg.arrow(a0).src]) continue;
        Gen g;
        int a = a0;
        bool ok = false;
        std::vector<char> used(alg.arrow_count(), 0);
        while (a != -1 && !used[a]) {
            used[a] = 1;
            g.arrows.push_back(a);
            if (in_kept[alg.arrow(a).tgt]) { ok = true; break; }
            a = alg.comp_succ(a);
        }
        if (!ok) continue;
        gen_of_first[a0] = static_cast<int>(gens.size());
        gen_of_last[g.arrows.back()] = static_cast<int>(gens.size());
        gens.push_back(std::move(g));
    }
    for (const auto& g : gens) {
        long long deg = 0;
        std::string id;
        for (int a : g.arrows) {
            deg += alg.arrow(a).deg;
            if (!id.empty()) id += "*";
            id += alg.arrow(a).id;
        }
        if (g.arrows.size() > 1) id = "[" + id + "]";
        pres.quiver.arrows.push_back({id, vmap[alg.arrow(g.arrows.front()).src],
                                      vmap[alg.arrow(g.arrows.back()).tgt], deg});
    }
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int last = gens[gi].arrows.back();
        int next = alg.rel_succ(last);
        if (next != -1 && gen_of_first[next] != -1)
            pres.relations.emplace_back(static_cast<int>(gi), gen_of_first[next]);
    }
    return pres;
}

// ---------------------------------------------------------------------------
// The chain-of-double-arrows family
// ---------------------------------------------------------------------------

AnForm parse_an_form(const std::string& text) {
    AnForm form;
    std::string chunk;
    std::istringstream in(text);
    while (std::getline(in, chunk, ';')) {
        auto comma = chunk.find(',');
        if (comma == std::string::npos)
            fail(ErrorCode::ParseError, "bad pair '" + chunk + "' (expected a,b)");
        long long a = 0, b = 0;
        auto trim = [](std::string s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
            return s;
        };
        if (!parse_int(trim(chunk.substr(0, comma)), a) || !parse_int(trim(chunk.substr(comma + 1)), b))
            fail(ErrorCode::ParseError, "bad pair '" + chunk + "' (expected integers)");
        form.pairs.emplace_back(a, b);
    }
    if (form.pairs.empty()) fail(ErrorCode::ParseError, "empty pair list");
    return form;
}

std::string print_an_form(const AnForm& form) {
    std::ostringstream out;
    for (size_t i = 0; i < form.pairs.size(); ++i) {
        if (i) out << ";";
        out << form.pairs[i].first << "," << form.pairs[i].second;
    }
    return out.str();
}

GentleAlgebra make_an(const AnForm& form) {
    const int n = form.n();
    Presentation pres;
    for (int v = 1; v <= 2 * n; ++v) pres.quiver.vertices.push_back(std::to_string(v));
    auto add = [&](const std::string& id, int src1, int tgt1, long long deg) {
        pres.quiver.arrows.push_back({id, src1 - 1, tgt1 - 1, deg});
        return static_cast<int>(pres.quiver.arrows.size()) - 1;
    };
    std::vector<int> ai(n), bi(n), gi(n), di(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) {
        ai[i] = add("a" + std::to_string(i + 1), 2 * i + 1, 2 * i + 2, form.pairs[i].first);
        bi[i] = add("b" + std::to_string(i + 1), 2 * i + 2, 2 * i + 1, 0);
        gi[i] = add("g" + std::to_string(i + 1), 2 * i + 1, 2 * i + 2, form.pairs[i].second);
        if (i + 1 < n) di[i] = add("d" + std::to_string(i + 1), 2 * i + 2, 2 * i + 3, 0);
    }
    for (int i = 0; i < n; ++i) {
        pres.relations.emplace_back(ai[i], bi[i]);
        pres.relations.emplace_back(bi[i], gi[i]);
        if (i + 1 < n) {
            pres.relations.emplace_back(gi[i], di[i]);
            pres.relations.emplace_back(di[i], ai[i + 1]);
        }
    }
    return validate_gentle(pres);
}

std::optional<AnRoles> an_roles_of(const GentleAlgebra& alg) {
    const int nv = alg.vertex_count();
    if (nv < 2 || nv % 2 != 0) return std::nullopt;
    const int n = nv / 2;
    if (alg.arrow_count() != 4 * n - 1) return std::nullopt;
    if (static_cast<int>(alg.relations().size()) != 4 * n - 2) return std::nullopt;

    // The start vertex is the only one with two outgoing arrows and exactly
    // one incoming arrow (indegree 1 singles it out among the odd positions).
    int start = -1;
    for (int v = 0; v < nv; ++v) {
        if (alg.out_arrows(v).size() == 2 && alg.in_arrows(v).size() == 1) {
            if (start != -1) return std::nullopt;
            start = v;
        }
    }
    if (start == -1) {
        // n = 1 special case never reaches here (vertex 1 has indegree 1), so
        // any failure means the shape is wrong.
        return std::nullopt;
    }

    AnRoles roles;
    roles.n = n;
    std::vector<char> seen(nv, 0);
    int odd = start;
    for (int i = 0; i < n; ++i) {
        if (odd < 0 || seen[odd]) return std::nullopt;
        seen[odd] = 1;
        const auto& outs = alg.out_arrows(odd);
        if (outs.size() != 2) return std::nullopt;
        int even = alg.arrow(outs[0]).tgt;
        if (alg.arrow(outs[1]).tgt != even || even == odd || seen[even]) return std::nullopt;
        seen[even] = 1;
        // The return arrow pins the roles: alpha is the parallel arrow whose
        // composition with it vanishes.
        int beta = -1;
        for (int b : alg.out_arrows(even))
            if (alg.arrow(b).tgt == odd) beta = b;
        if (beta == -1) return std::nullopt;
        int alpha = -1, gamma = -1;
        for (int x : outs) {
            if (alg.has_relation(x, beta)) alpha = x;
            else gamma = x;
        }
        if (alpha == -1 || gamma == -1) return std::nullopt;
        if (!alg.has_relation(beta, gamma)) return std::nullopt;
        if (alg.has_relation(gamma, beta) || alg.has_relation(beta, alpha)) return std::nullopt;
        roles.alpha.push_back(alpha);
        roles.beta.push_back(beta);
        roles.gamma.push_back(gamma);
        roles.odd_vertex.push_back(odd);
        roles.even_vertex.push_back(even);
        if (i + 1 < n) {
            int delta = -1;
            for (int d : alg.out_arrows(even))
                if (d != beta) delta = d;
            if (delta == -1) return std::nullopt;
            if (!alg.has_relation(gamma, delta)) return std::nullopt;
            roles.delta.push_back(delta);
            int next_odd = alg.arrow(delta).tgt;
            const auto& next_outs = alg.out_arrows(next_odd);
            if (next_outs.size() != 2) return std::nullopt;
            bool rel_found = false;
            for (int x : next_outs)
                if (alg.has_relation(delta, x)) rel_found = true;
            if (!rel_found) return std::nullopt;
            odd = next_odd;
        } else {
            if (alg.out_arrows(even).size() != 1) return std::nullopt;
        }
    }
    // Exactly the stated relations and nothing else.
    size_t expected = 0;
    for (int i = 0; i < n; ++i) {
        expected += 2;
        if (i + 1 < n) expected += 2;
    }
    if (alg.relations().size() != expected) return std::nullopt;
    return roles;
}

std::optional<AnForm> an_form_of(const GentleAlgebra& alg) {
    auto roles = an_roles_of(alg);
    if (!roles) return std::nullopt;
    AnForm form;
    for (int i = 0; i < roles->n; ++i)
        form.pairs.emplace_back(alg.arrow(roles->alpha[i]).deg + alg.arrow(roles->beta[i]).deg,
                                alg.arrow(roles->beta[i]).deg + alg.arrow(roles->gamma[i]).deg);
    return form;
}

AnForm koszul_dual_a2(const AnForm& form) {
    if (form.n() != 2) fail(ErrorCode::NotAnForm2, "koszul dual is only defined for two pairs");
    AnForm out;
    out.pairs.emplace_back(2 - form.pairs[1].first, 2 - form.pairs[1].second);
    out.pairs.emplace_back(2 - form.pairs[0].first, 2 - form.pairs[0].second);
    return out;
}

AnForm an_rewrite_move(const AnForm& form) {
    if (form.n() < 2) fail(ErrorCode::NotAnFormGe2, "rewrite move needs at least two pairs");
    auto [a1, b1] = form.pairs[0];
    auto [a2, b2] = form.pairs[1];
    AnForm out = form;
    out.pairs[0] = {a1 + a2 + b1 - 4, b1};
    out.pairs[1] = {a2, 3 - b1 + b2};
    return out;
}

// ---------------------------------------------------------------------------
// Idempotent reduction and components
// ---------------------------------------------------------------------------

GentleAlgebra reduce_idempotent(const GentleAlgebra& alg, const std::vector<int>& dropped) {
    std::vector<char> drop(alg.vertex_count(), 0);
    for (int v : dropped) {
        if (v < 0 || v >= alg.vertex_count()) fail(ErrorCode::IndexOutOfRange, "vertex index out of range");
        drop[v] = 1;
    }
    int kept_count = 0;
    for (int v = 0; v < alg.vertex_count(); ++v)
        if (!drop[v]) ++kept_count;
    if (kept_count == 0)
        fail(ErrorCode::InvalidIdempotent, "cannot drop every vertex");

    Presentation pres;
    std::vector<int> vmap(alg.vertex_count(), -1);
    for (int v = 0; v < alg.vertex_count(); ++v) {
        if (drop[v]) continue;
        vmap[v] = static_cast<int>(pres.quiver.vertices.size());
        pres.quiver.vertices.push_back(alg.vertex_name(v));
    }

    // New arrows: paths a_1...a_k with every consecutive pair a relation,
    // endpoints kept, interior dropped. The relation successor is unique, so
    // each such path is determined by its first arrow.
    struct Gen { std::vector<int> arrows; };
    std::vector<Gen> gens;
    std::vector<int> gen_of_first(alg.arrow_count(), -1);
    for (int a0 = 0; a0 < alg.arrow_count(); ++a0) {
        if (drop[alg.arrow(a0).src]) continue;
        Gen g;
        int a = a0;
        bool ok = false;
        std::vector<char> used(alg.arrow_count(), 0);
        while (a != -1 && !used[a]) {
            used[a] = 1;
            g.arrows.push_back(a);
            if (!drop[alg.arrow(a).tgt]) { ok = true; break; }
            a = alg.rel_succ(a);
        }
        if (!ok) continue;
        gen_of_first[a0] = static_cast<int>(gens.size());
        gens.push_back(std::move(g));
    }
    for (const auto& g : gens) {
        long long deg = 1 - static_cast<long long>(g.arrows.size());
        std::string id;
        for (int a : g.arrows) {
            deg += alg.arrow(a).deg;
            if (!id.empty()) id += "*";
            id += alg.arrow(a).id;
        }
        if (g.arrows.size() > 1) id = "[" + id + "]";
        pres.quiver.arrows.push_back({id, vmap[alg.arrow(g.arrows.front()).src],
                                      vmap[alg.arrow(g.arrows.back()).tgt], deg});
    }
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        int last = gens[gi].arrows.back();
        int next = alg.rel_succ(last);
        if (next != -1 && gen_of_first[next] != -1)
            pres.relations.emplace_back(static_cast<int>(gi), gen_of_first[next]);
    }
    return validate_gentle(pres);
}

std::vector<GentleAlgebra> connected_components(const GentleAlgebra& alg) {
    const int nv = alg.vertex_count();
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int v0 = 0; v0 < nv; ++v0) {
        if (comp[v0] != -1) continue;
        std::vector<int> stack{v0};
        comp[v0] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            auto visit = [&](int w) {
                if (comp[w] == -1) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            };
            for (int a : alg.out_arrows(v)) visit(alg.arrow(a).tgt);
            for (int a : alg.in_arrows(v)) visit(alg.arrow(a).src);
        }
        ++ncomp;
    }
    std::vector<GentleAlgebra> parts;
    for (int c = 0; c < ncomp; ++c) {
        Presentation pres;
        std::vector<int> vmap(nv, -1), amap(alg.arrow_count(), -1);
        for (int v = 0; v < nv; ++v) {
            if (comp[v] != c) continue;
            vmap[v] = static_cast<int>(pres.quiver.vertices.size());
            pres.quiver.vertices.push_back(alg.vertex_name(v));
        }
        for (int a = 0; a < alg.arrow_count(); ++a) {
            if (comp[alg.arrow(a).src] != c) continue;
            amap[a] = static_cast<int>(pres.quiver.arrows.size());
            pres.quiver.arrows.push_back({alg.arrow(a).id, vmap[alg.arrow(a).src],
                                          vmap[alg.arrow(a).tgt], alg.arrow(a).deg});
        }
        for (const auto& [a, b] : alg.relations())
            if (amap[a] != -1 && amap[b] != -1) pres.relations.emplace_back(amap[a], amap[b]);
        parts.push_back(validate_gentle(pres));
    }
    return parts;
}

bool is_connected(const GentleAlgebra& alg) {
    if (alg.vertex_count() == 0) return true;
    return connected_components(alg).size() == 1;
}

} // namespace gentle
