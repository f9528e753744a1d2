#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "ratenet/types.hpp"

namespace ratenet {

// Deterministic synthetic rating-stream generator. Items appear over the
// configured span; interest decays with exponential inter-rating gaps.
struct SynthConfig {
    std::uint64_t seed = 0;
    std::uint32_t users = 200;
    std::uint32_t items = 50;
    std::int64_t start_time = 1'000'000'000;
    std::int64_t release_span = 90 * 24 * 3600;  // item first ratings spread over this span
    double gap_scale = 6.0 * 3600;               // mean inter-rating gap, seconds
    double mean_ratings_per_item = 20.0;
    double min_rating = 1.0;
    double max_rating = 5.0;
    double rating_step = 0.5;

    void validate() const;
};

// Same seed, same config -> identical event sequence.
std::vector<RatingEvent> generate_events(const SynthConfig& config);

// MovieLens-format lines; byte-identical for identical inputs.
void write_movielens(const std::vector<RatingEvent>& events, std::ostream& out);

}  // namespace ratenet
