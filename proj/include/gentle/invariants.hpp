#pragma once

#include "gentle/curves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gentle {

// The complete derived invariant of a connected smooth proper gentle algebra:
// genus, boundary data, and the line-field invariants computed from the
// windings of a symplectic basis of simple closed curves.
struct InvariantRecord {
    int genus = 0;
    int boundary_count = 0;
    std::vector<std::pair<int, long long>> boundary; // (marked count, winding) per component
    std::vector<long long> basis_windings;           // w(s_1..s_g), then w(t_1..t_g)
    std::optional<int> sigma;                        // genus > 1 only
    std::optional<long long> atilde;                 // genus = 1 only
    std::optional<int> arf;                          // genus > 1, sigma = 0, all w(d_i) = 2 mod 4

    // The full winding list: boundary windings then basis windings.
    std::vector<long long> windings() const;
    std::string to_json() const;
    std::string to_text() const;
};

// Builds the surface, finds a symplectic basis when the genus is positive and
// assembles the record. max_len <= 0 uses the arc count; the seed only
// permutes the basis search order.
InvariantRecord compute_invariants(const GentleAlgebra& alg, int max_len = 0, uint64_t seed = 0);

// 0 iff every winding in the record is even. Defined for genus > 1.
int sigma(const InvariantRecord& record);

// gcd of {boundary windings + 2} and the two basis windings; gcd of an all
// zero set is 0. Defined for genus 1.
long long atilde(const InvariantRecord& record);

// sum over handles of (w(s_i)/2 + 1)(w(t_i)/2 + 1) mod 2. Defined for
// genus > 1 when sigma = 0 and every boundary winding is 2 mod 4.
int arf(const InvariantRecord& record);

struct EquivalenceCheck {
    std::string name;
    std::string lhs, rhs;
    bool matched = false;
};

struct EquivalenceCertificate {
    bool equivalent = false;
    std::vector<EquivalenceCheck> checks;
    std::string to_text() const;
    std::string to_json() const;
};

// Decides derived equivalence: equal genus and boundary count, matching
// multisets of (marked count, winding) pairs, and the genus-conditional
// clause (nothing extra for genus 0; equal atilde for genus 1; for higher
// genus one of: both sigma 1, both sigma 0 with a boundary winding divisible
// by 4, or both sigma 0 with all boundary windings 2 mod 4 and equal Arf).
EquivalenceCertificate derived_equivalent(const GentleAlgebra& a, const GentleAlgebra& b,
                                          int max_len = 0, uint64_t seed = 0);

// False exactly for the derived class with genus 1, one boundary component,
// one marked point and vanishing atilde. Disconnected algebras are decided
// componentwise.
bool has_silting(const GentleAlgebra& alg, int max_len = 0, uint64_t seed = 0);

enum class PartialSiltingVerdict { NotPreSilting, NotPartialSilting, PartialSilting, Unknown };

const char* verdict_name(PartialSiltingVerdict verdict);

struct ComponentReport {
    std::string vertices;                  // vertex names, comma separated
    std::optional<AnForm> an_form;         // chain-form detection
    std::string kind;                      // "point", "free-loop", "surface", "unsupported"
    std::optional<bool> silting;           // nullopt when undecidable
};

struct PartialSiltingReport {
    bool presilting = false;
    PartialSiltingVerdict verdict = PartialSiltingVerdict::Unknown;
    std::vector<ComponentReport> reduction; // components of the reduced algebra
    std::string note;
    std::string to_text() const;
    std::string to_json() const;
};

// Analyses whether the projective eA attached to the kept vertices is a
// pre-silting object that completes to a silting object. Requires a smooth
// proper algebra.
PartialSiltingReport partial_silting_analysis(const GentleAlgebra& alg, const std::vector<int>& kept,
                                              int max_len = 0, uint64_t seed = 0);

} // namespace gentle
