#pragma once

#include <istream>
#include <string>
#include <vector>

#include "ratenet/types.hpp"

namespace ratenet {

enum class ParseMode { strict, lenient };

struct ParseStats {
    std::uint64_t data_lines = 0;
    std::uint64_t skipped = 0;
};

// MovieLens distribution format: `UserID::MovieID::Rating::Timestamp` per line.
std::vector<RatingEvent> parse_movielens(std::istream& in, const DatasetProfile& profile,
                                         ParseMode mode = ParseMode::strict,
                                         ParseStats* stats = nullptr);

// KONECT edge lists: `%` comments, whitespace-separated
// `user item [weight] [timestamp]` with the timestamp in the last column.
// The profile's implicit_rating replaces the weight column when set.
std::vector<RatingEvent> parse_konect(std::istream& in, const DatasetProfile& profile,
                                      ParseMode mode = ParseMode::strict,
                                      ParseStats* stats = nullptr);

struct ColumnMap {
    std::string user = "user";
    std::string item = "item";
    std::string rating = "rating";
    std::string timestamp = "timestamp";
};

// CSV with a header row naming the mapped columns.
std::vector<RatingEvent> parse_generic_csv(std::istream& in, const ColumnMap& columns,
                                           const DatasetProfile& profile,
                                           ParseMode mode = ParseMode::strict,
                                           ParseStats* stats = nullptr);

}  // namespace ratenet
