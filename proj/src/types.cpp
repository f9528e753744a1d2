#include "ratenet/types.hpp"

namespace ratenet {

namespace {
constexpr std::int64_t kHour = 3600;
constexpr std::int64_t kDay = 24 * kHour;
}  // namespace

void DatasetProfile::validate() const {
    if (critical_window <= 0) throw ConfigError("critical_window must be positive");
    if (lookback_window <= 0) throw ConfigError("lookback_window must be positive");
    if (popular_min_ratings < 1) throw ConfigError("popular_min_ratings must be >= 1");
    if (min_rating > max_rating) throw ConfigError("rating scale inverted");
    if (popular_min_avg < min_rating || popular_min_avg > max_rating)
        throw ConfigError("popular_min_avg outside rating scale");
    if (implicit_rating &&
        (*implicit_rating < min_rating || *implicit_rating > max_rating))
        throw ConfigError("implicit_rating outside rating scale");
}

DatasetProfile DatasetProfile::movielens() {
    DatasetProfile p;
    p.name = "movielens";
    p.min_rating = 1.0;
    p.max_rating = 5.0;
    p.critical_window = 30 * kDay;
    p.lookback_window = 10 * kDay;
    p.popular_min_ratings = 29;
    p.popular_min_avg = 4.0;
    return p;
}

DatasetProfile DatasetProfile::digg() {
    DatasetProfile p;
    p.name = "digg";
    p.min_rating = 1.0;
    p.max_rating = 5.0;
    p.implicit_rating = 5.0;
    p.critical_window = 48 * kHour;
    p.lookback_window = 6 * kHour;
    p.popular_min_ratings = 6;
    p.popular_min_avg = 5.0;
    return p;
}

}  // namespace ratenet
