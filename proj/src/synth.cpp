#include "ratenet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ratenet {

namespace {

double unit(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0, 1); avoids distribution objects so output
    // is identical across standard library implementations
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential(std::mt19937_64& rng, double scale) {
    return -scale * std::log1p(-unit(rng));
}

}  // namespace

void SynthConfig::validate() const {
    if (users == 0) throw ConfigError("users must be positive");
    if (release_span <= 0) throw ConfigError("release_span must be positive");
    if (gap_scale <= 0.0) throw ConfigError("gap_scale must be positive");
    if (mean_ratings_per_item < 1.0) throw ConfigError("mean_ratings_per_item must be >= 1");
    if (min_rating > max_rating) throw ConfigError("rating scale inverted");
    if (rating_step <= 0.0) throw ConfigError("rating_step must be positive");
}

std::vector<RatingEvent> generate_events(const SynthConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    const std::uint32_t steps =
        static_cast<std::uint32_t>(std::floor((config.max_rating - config.min_rating) /
                                              config.rating_step)) + 1;
    std::vector<RatingEvent> events;
    for (std::uint32_t item = 0; item < config.items; ++item) {
        const std::int64_t t0 =
            config.start_time +
            static_cast<std::int64_t>(unit(rng) * static_cast<double>(config.release_span));
        std::uint32_t count = 1 + static_cast<std::uint32_t>(
                                      exponential(rng, config.mean_ratings_per_item - 1.0 + 1e-9));
        count = std::min(count, config.users);

        // distinct raters, first come first served
        std::vector<std::uint32_t> raters;
        std::vector<bool> used(config.users, false);
        while (raters.size() < count) {
            const std::uint32_t u =
                static_cast<std::uint32_t>(unit(rng) * static_cast<double>(config.users));
            if (u >= config.users || used[u]) continue;
            used[u] = true;
            raters.push_back(u);
        }

        std::int64_t t = t0;
        for (std::uint32_t k = 0; k < count; ++k) {
            if (k > 0) t += 1 + static_cast<std::int64_t>(exponential(rng, config.gap_scale));
            const std::uint32_t step = std::min(
                steps - 1, static_cast<std::uint32_t>(unit(rng) * static_cast<double>(steps)));
            RatingEvent ev;
            ev.user_id = std::to_string(raters[k] + 1);
            ev.item_id = std::to_string(item + 1);
            ev.rating = config.min_rating + config.rating_step * step;
            ev.timestamp = t;
            events.push_back(std::move(ev));
        }
    }
    return events;
}

void write_movielens(const std::vector<RatingEvent>& events, std::ostream& out) {
    for (const RatingEvent& ev : events) {
        out << ev.user_id << "::" << ev.item_id << "::";
        // ratings are multiples of the step; print minimally (5 or 3.5)
        const double r = ev.rating;
        if (r == std::floor(r)) out << static_cast<long long>(r);
        else out << r;
        out << "::" << ev.timestamp << "\n";
    }
}

}  // namespace ratenet
