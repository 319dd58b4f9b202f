#pragma once

#include "eigenbond/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace eigenbond {

// How the two look-ahead terms are compared against the running sum.
//   DualCondition: |t_{N+1}| <= eps |S_N|  and  |t_{N+1} + t_{N+2}| <= eps |S_N|
//   SingleRatio:   |t_{N+1} + t_{N+2}| <= eps |S_N|
enum class TruncationReading { DualCondition, SingleRatio };

struct TruncationRule {
    double eps = 1e-7;
    TruncationReading reading = TruncationReading::DualCondition;
    int min_terms = 3;
    int max_terms = 2000;
};

/// Stop decision after `terms_included` terms with running sum `partial_sum`,
/// given the next two terms. Never stops before rule.min_terms terms.
inline bool should_stop(const TruncationRule& rule, double partial_sum, double next, double next2,
                        int terms_included)
{
    if (terms_included < rule.min_terms) {
        return false;
    }
    if (next == 0.0 && next2 == 0.0) {
        return true;
    }
    const double bound = rule.eps * std::abs(partial_sum);
    const bool pair_small = std::abs(next + next2) <= bound;
    if (rule.reading == TruncationReading::SingleRatio) {
        return pair_small;
    }
    return pair_small && std::abs(next) <= bound;
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v)
    {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Result of a truncated series: the sum and N, the highest index included.
struct SeriesSum {
    double value = 0.0;
    int n = 0;
};

/// Sums term(0) + term(1) + ... until the truncation rule fires.
template <class Term>
SeriesSum adaptive_series(Term&& term, const TruncationRule& rule)
{
    KahanSum sum;
    int included = 0;
    for (; included < rule.min_terms; ++included) {
        sum.add(term(included));
    }
    double next = term(included);
    double next2 = term(included + 1);
    while (!should_stop(rule, sum.value(), next, next2, included)) {
        sum.add(next);
        ++included;
        if (included + 1 >= rule.max_terms) {
            throw ConvergenceError("series did not meet the truncation rule within "
                                   + std::to_string(rule.max_terms) + " terms");
        }
        next = next2;
        next2 = term(included + 1);
    }
    if (!std::isfinite(sum.value())) {
        throw ConvergenceError("series evaluation produced a non-finite value");
    }
    return {sum.value(), included - 1};
}

} // namespace eigenbond
