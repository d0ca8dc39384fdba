#pragma once

#include "tessiso/curvature.hpp"
#include "tessiso/families.hpp"
#include "tessiso/graph.hpp"
#include "tessiso/subgraph.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tessiso {

struct Budget {
    int max_edges = 6;
    int max_generators = 4;
    long long max_yield = 20'000'000;
    int workers = 1;
};

/// Lengths rescaled to integers by the lcm of their denominators so that the
/// enumeration can compare ratios without allocating.
class LengthScale {
public:
    explicit LengthScale(const MetricGraph& g);
    __int128 scaled(int e) const { return scaled_[e]; }
    const Integer& denominator() const { return lcm_; }
    Rational to_measure(__int128 scaled_sum) const;

private:
    std::vector<__int128> scaled_;
    Integer lcm_;
};

/// Current state handed to enumeration visitors. `edges` is in insertion order.
struct EdgeSetView {
    std::span<const int> edges;
    long long boundary_degree = 0;
    __int128 scaled_measure = 0;
};

/// Visits every connected edge set of size <= max_edges whose vertices all
/// have a known true degree, each exactly once. Roots are the minimum edge of
/// each set, and sets grow only above their root.
/// Throws BudgetExceeded after budget.max_yield sets.
void for_each_connected_subgraph(const MetricGraph& g, const Budget& budget,
                                 const std::function<void(const EdgeSetView&)>& visit);

/// All such sets, each sorted, in lexicographic order.
std::vector<std::vector<int>> enumerate_connected_subgraphs(const MetricGraph& g, const Budget& budget);

struct StarlikeEnumeration {
    std::vector<SubgraphSelection> subgraphs;  ///< sorted by edge set
    long long generator_sets = 0;
    long long skipped_frontier = 0;
    long long skipped_indeterminate = 0;
};

/// Closures of ∪_{v∈U} E_v over connected frontier-free U with |U| <= max_generators.
StarlikeEnumeration enumerate_starlike_complete(const MetricGraph& g, const Budget& budget);

struct RatioWitness {
    Rational ratio;
    long long boundary_degree = 0;
    Rational measure;
    std::vector<Label> edges;  ///< sorted labels
};

struct BruteforceResult {
    std::optional<RatioWitness> best;
    /// Best among sets with nonempty boundary; differs from `best` only on
    /// finite graphs, where the whole graph has ratio 0.
    std::optional<RatioWitness> restricted;
    long long visited = 0;
};

/// Throws BudgetExceeded.
BruteforceResult alpha_upper_bruteforce(const MetricGraph& g, const Budget& budget);

struct CombWitness {
    Rational ratio;
    long long boundary_edges = 0;
    long long degree_sum = 0;
    std::vector<Label> vertices;
};

struct CombBruteforceResult {
    std::optional<CombWitness> best;
    std::optional<CombWitness> restricted;
    long long visited = 0;
};

/// min over connected U (|U| <= max_generators, known true degrees) of
/// #∂U / Σ deg. Throws BudgetExceeded.
CombBruteforceResult alpha_comb_upper_bruteforce(const MetricGraph& g, const Budget& budget);

/// A value that is exact when rational and real otherwise.
struct BoundValue {
    std::optional<Rational> exact;
    double approx = 0;
    static BoundValue of(const Rational& r);
    static BoundValue real(double x);
};

struct Bound {
    BoundValue value;
    std::string provenance;
    bool certified = false;
    bool applicable = true;
    std::string note;
    std::vector<Label> witness;
};

struct CheegerInterval {
    std::optional<Rational> lower_exact;
    double lower = 0;
    double upper = 0;
};

/// (α²/4, π²α/(2 ell_min)). Throws NonPositiveEllMin or OutOfRange for α < 0.
CheegerInterval cheeger_interval(double alpha, const Rational& ell_min);
CheegerInterval cheeger_interval(const BoundValue& lower, const BoundValue& upper, const Rational& ell_min);

struct AlphaBracket {
    std::vector<Bound> lower_bounds;
    std::vector<Bound> upper_bounds;
    std::optional<BoundValue> best_lower;
    std::optional<BoundValue> best_upper;
    std::optional<BoundValue> exact;  ///< set by the reduction rule or a closed form
    std::optional<CheegerInterval> cheeger;
    std::optional<RatioWitness> restricted;  ///< finite graphs only
    bool finite = false;
};

/// The c*/K, c*, est01 and estvol bounds.
std::vector<Bound> lower_bounds(const MetricGraph& g, const CurvatureReport& report,
                                const std::optional<FamilyFacts>& facts, const StarlikeEnumeration* sample);

/// Assembles every bound; runs both enumerations within the budget.
AlphaBracket alpha_bracket(const MetricGraph& g, const Budget& budget);

/// Same, with the brute-force results supplied by the caller.
AlphaBracket assemble_bracket(const MetricGraph& g, const CurvatureReport& report, const BruteforceResult& brute,
                              const StarlikeEnumeration& sample);

/// Orders bound values; both exact compares exactly, otherwise by approx.
int compare_values(const BoundValue& a, const BoundValue& b);

}  // namespace tessiso
