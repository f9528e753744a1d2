#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ratenet {

// One rating of an item by a user at a point in time.
struct RatingEvent {
    std::string user_id;
    std::string item_id;
    double rating = 0.0;
    std::int64_t timestamp = 0;  // seconds since Unix epoch
};

// Dataset-level constants: rating scale, critical/lookback windows and the
// popularity thresholds used for calibration.
struct DatasetProfile {
    std::string name;
    double min_rating = 1.0;
    double max_rating = 5.0;
    std::optional<double> implicit_rating;  // fixed rating for ratingless datasets
    std::int64_t critical_window = 0;       // W, seconds
    std::int64_t lookback_window = 0;       // L, seconds
    std::uint32_t popular_min_ratings = 1;  // n*
    double popular_min_avg = 4.0;           // mu*
    double baseline_score = 5e-4;           // epsilon

    void validate() const;

    static DatasetProfile movielens();
    static DatasetProfile digg();
};

// Half-open interval [start, end) over edge timestamps.
struct TimeWindow {
    std::int64_t start = 0;
    std::int64_t end = 0;

    bool contains(std::int64_t t) const { return start <= t && t < end; }

    static TimeWindow all();
};

struct ParseError : std::runtime_error {
    std::uint64_t line = 0;
    ParseError(std::uint64_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when motif enumeration exceeds its candidate-set budget.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ratenet
