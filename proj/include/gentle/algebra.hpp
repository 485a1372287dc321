#pragma once

#include "gentle/errors.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct Arrow {
    std::string id;
    int src = -1;
    int tgt = -1;
    long long deg = 0;
};

// Finite graded quiver. Vertices and arrows are addressed by index; names are
// kept for I/O. Degrees are arbitrary integers.
struct GradedQuiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const;
    int arrow_index(const std::string& id) const;
};

// Raw parsed presentation, prior to the gentleness checks.
struct Presentation {
    GradedQuiver quiver;
    std::vector<std::pair<int, int>> relations; // (a, b) meaning the path "a then b" is zero
};

// Text format: one declaration per line, `#` starts a comment.
//   vertex <name>
//   arrow <id> <src> <tgt> <deg>
//   rel <arrow1> <arrow2>
Presentation parse_presentation_text(std::istream& in);
Presentation parse_presentation_text(const std::string& text);

// JSON format: {"vertices":[...], "arrows":[{"id","src","tgt","deg"}], "relations":[[a,b],...]}
Presentation parse_presentation_json(const std::string& text);

// Sniffs JSON vs text by the first non-space byte.
Presentation parse_presentation_auto(const std::string& text);

std::string print_presentation_text(const Presentation& pres);
std::string print_presentation_json(const Presentation& pres);

// A validated gentle presentation. Immutable after construction; all lookup
// tables are precomputed. For each arrow there is at most one relation
// successor/predecessor and at most one nonzero-composition successor/
// predecessor, so paths extend deterministically in both regimes.
class GentleAlgebra {
public:
    GentleAlgebra() = default; // the empty algebra

    const GradedQuiver& quiver() const { return pres_.quiver; }
    const std::vector<std::pair<int, int>>& relations() const { return pres_.relations; }
    const Presentation& presentation() const { return pres_; }

    int vertex_count() const { return static_cast<int>(pres_.quiver.vertices.size()); }
    int arrow_count() const { return static_cast<int>(pres_.quiver.arrows.size()); }
    const Arrow& arrow(int a) const { return pres_.quiver.arrows[a]; }
    const std::string& vertex_name(int v) const { return pres_.quiver.vertices[v]; }

    bool has_relation(int a, int b) const;
    int rel_succ(int a) const { return rel_succ_[a]; }   // b with ab in I, or -1
    int rel_pred(int a) const { return rel_pred_[a]; }
    int comp_succ(int a) const { return comp_succ_[a]; } // b with t(a)=s(b), ab not in I, or -1
    int comp_pred(int a) const { return comp_pred_[a]; }
    const std::vector<int>& out_arrows(int v) const { return out_[v]; }
    const std::vector<int>& in_arrows(int v) const { return in_[v]; }

    bool has_loops() const;

    friend GentleAlgebra validate_gentle(const Presentation& pres);

private:
    Presentation pres_;
    std::vector<int> rel_succ_, rel_pred_, comp_succ_, comp_pred_;
    std::vector<std::vector<int>> out_, in_;
};

// Checks the four gentleness conditions and builds the lookup tables.
// Throws NotGentle / RelationNotComposable with the offending vertex or arrow.
GentleAlgebra validate_gentle(const Presentation& pres);

// Finite dimensionality: true iff there is no cycle of arrows whose every
// consecutive composition (including the wrap-around) avoids the relations.
bool check_proper(const GentleAlgebra& alg);

// Homological smoothness criterion: true iff there is no cycle of arrows whose
// every consecutive pair (including the wrap-around) is a relation.
bool check_smooth(const GentleAlgebra& alg);

struct PathBasisEntry {
    int source = -1;         // start vertex; trivial paths have an empty arrow list
    int target = -1;
    std::vector<int> arrows; // relation-avoiding arrow sequence
    long long degree = 0;    // sum of arrow degrees
};

// Complete basis of relation-avoiding paths, trivial paths included.
// Requires check_proper. Deterministic order: trivial paths by vertex, then by
// (first arrow, length).
std::vector<PathBasisEntry> path_basis(const GentleAlgebra& alg);

// Graded dimensions of the corner algebra eAe for e = sum of `kept` vertex
// idempotents: degree -> number of relation-avoiding paths with both endpoints
// in `kept`. Requires check_proper.
std::map<long long, int> corner_algebra(const GentleAlgebra& alg, const std::vector<int>& kept);

// True iff eA has no positive self-extensions, i.e. (eAe)_d = 0 for d > 0.
bool is_presilting_idempotent(const GentleAlgebra& alg, const std::vector<int>& kept);

// The corner algebra eAe presented as a quiver with relations: vertices are
// the kept ones, arrows are relation-avoiding paths between kept vertices with
// all interior vertices dropped, a product is zero iff its junction is a
// relation. May fail validate_gentle for exotic inputs; callers decide.
Presentation corner_presentation(const GentleAlgebra& alg, const std::vector<int>& kept);

// Grading data (a_1,b_1;...;a_n,b_n) of a chain-of-double-arrows algebra.
struct AnForm {
    std::vector<std::pair<long long, long long>> pairs;

    int n() const { return static_cast<int>(pairs.size()); }
    bool operator==(const AnForm&) const = default;
};

AnForm parse_an_form(const std::string& text); // "a1,b1;a2,b2;..."
std::string print_an_form(const AnForm& form);

// Builds the canonical algebra with this form: quiver 1 => 2 -> 3 => 4 -> ...
// with double arrows a_i, g_i: 2i-1 -> 2i, returns b_i: 2i -> 2i-1 and chain
// arrows d_j: 2j -> 2j+1; relations a_i b_i, b_i g_i, g_j d_j, d_j a_{j+1}.
// Degree realization: |a_i| = a_i, |g_i| = b_i, |b_i| = |d_j| = 0.
GentleAlgebra make_an(const AnForm& form);

// Arrow roles of an algebra isomorphic (ungraded, relations included) to the
// chain quiver above. Roles are pinned by the relation structure.
struct AnRoles {
    int n = 0;
    std::vector<int> alpha, beta, gamma; // arrow index per block
    std::vector<int> delta;              // size n-1
    std::vector<int> odd_vertex, even_vertex;
};

std::optional<AnRoles> an_roles_of(const GentleAlgebra& alg);

// Reads off (a_1,b_1;...) when the underlying quiver-with-relations matches;
// std::nullopt otherwise.
std::optional<AnForm> an_form_of(const GentleAlgebra& alg);

// Derived-equivalent partner (2-a_2, 2-b_2; 2-a_1, 2-b_1). Requires n = 2.
AnForm koszul_dual_a2(const AnForm& form);

// Derived-equivalent rewrite (a1+a2+b1-4, b1; a2, 3-b1+b2; rest unchanged).
// Requires n >= 2.
AnForm an_rewrite_move(const AnForm& form);

// The reduction A_e at the idempotent supported on `dropped`: vertices are the
// complement, arrows are paths whose consecutive pairs are all relations, with
// endpoints kept and interior vertices dropped; the degree of such an arrow is
// (sum of degrees) - (length) + 1. Throws InvalidIdempotent when every vertex
// is dropped.
GentleAlgebra reduce_idempotent(const GentleAlgebra& alg, const std::vector<int>& dropped);

// Partition into connected components of the underlying graph, relations
// restricted. Vertex and arrow names are preserved.
std::vector<GentleAlgebra> connected_components(const GentleAlgebra& alg);

bool is_connected(const GentleAlgebra& alg);

} // namespace gentle
