#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace expertkm {

// One right-censored, possibly contaminated claim. delta = 1 means the claim
// looks settled at w; eta is a crude expert judgment in [0,1] of whether it
// really is. The *_true fields carry hidden simulation truth and may be
// +infinity (improper laws never realize some events).
struct Observation {
    std::int64_t id = 0;
    double w = 0.0;
    int delta = 0;
    std::optional<double> eta;
    std::optional<double> x_true;
    std::optional<double> y_true;
    std::optional<double> c_true;
};

enum class SortDirection { event_first, censor_first };

// Sample ordered by ascending w. Within a tie group delta = 1 entries precede
// delta = 0 ones; the censoring-side convention ("closed claims precede") is
// the same physical ordering, so both directions sort identically and the
// requested direction is only recorded. tie_rank is the 1-based rank, order[i]
// the pre-sort index of rank i+1.
struct SortedSample {
    std::vector<Observation> obs;
    std::vector<int> tie_rank;
    std::vector<std::size_t> order;
    SortDirection direction = SortDirection::event_first;

    std::size_t size() const { return obs.size(); }
    double max_w() const { return obs.empty() ? 0.0 : obs.back().w; }
};

// Throws ValidationError when an observation breaks the type invariants.
void validate_observation(const Observation& o, std::size_t index);

SortedSample sort_sample(const std::vector<Observation>& sample,
                         SortDirection direction = SortDirection::event_first);

}  // namespace expertkm
