#pragma once

#include <string>
#include <vector>

#include "chu/family.hpp"

namespace chu {

/// Per-factor evidence for the dual-neighborhood tail collapse at degree n:
/// a simple non-abelian factor maps trivially into U(n) exactly when its
/// minimal nontrivial irreducible degree exceeds n.
struct CollapseEvidence {
    int position = 0;
    std::string factor;
    int min_nontrivial_degree = 0;
    bool trivial_on_un = false;
};

struct CollapseWitness {
    int degree = 0;         // n
    int collapse_index = 0; // m: every factor at position >= m is trivial on U(n)
    std::vector<CollapseEvidence> evidence;
    std::string tail_note; // how unmaterialized tail positions are covered
};

/// Exact per-factor replacement for the Jordan bound: computes the first
/// position after which every factor's minimal nontrivial degree exceeds n.
/// Requires all factors simple non-abelian (throws NotSimpleFamily).
CollapseWitness tail_collapse_index(const FamilySpec& spec, int degree,
                                    const FamilyOptions& opt = {});

struct BohrTestedRep {
    std::vector<int> support;   // factors with a nontrivial component
    std::vector<int> rows;      // character row per factor (whole prefix)
    long long degree = 1;
    int eventual_identity = 0;  // least M with D(g_m) = I exactly for m >= M
};

struct BohrNullWitness {
    int truncation = 0; // K
    int degree_bound = 0;
    std::vector<std::string> elements; // labels of g_0 .. g_{K-1}
    std::vector<BohrTestedRep> reps;
    // residuals[r][m] = ||D_r(g_m) - I||_max; exact 0.0 outside the support
    std::vector<std::vector<double>> residuals;
};

/// A nontrivial sequence g_m (one element per factor) that every tested
/// representation of degree <= n_max eventually maps to the identity:
/// irreducibles of the truncated sum are outer tensor products, and the
/// degree bound confines their support to finitely many factors.
BohrNullWitness bohr_null_sequence(const FamilySpec& spec, int truncation, int degree_bound,
                                   std::uint64_t seed = 0, const FamilyOptions& opt = {});

} // namespace chu
